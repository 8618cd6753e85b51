"""Closed-form secrecy outage probabilities and their high-SNR behaviour.

With ``t = 2**R - 1`` every case shares the survival factor
``exp(-t/gamma_r - t/gamma_d)``; an overheard hop multiplies it by
``1 / (1 + 2**R * gamma_e / gamma_hop)``. Probabilities are computed as
``-expm1(log survival)`` so values far below machine epsilon keep full
relative precision.

Two high-SNR regimes are covered, both with ``gamma_r = alpha * gamma_d``:

* fixed eavesdropper (``gamma_e`` constant): ``P ~ M / gamma_d``;
* scaled eavesdropper (``gamma_r = beta * gamma_e``): ``P ~ P_lim + M_hat / gamma_d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    THEOREM_CASES,
    CaseId,
    RateThreshold,
    ScenarioScaling,
    SnrTriple,
    ValidationError,
    snrs_from_scenario,
)


def _theorem_case(case) -> CaseId:
    case = CaseId.parse(case)
    if case not in THEOREM_CASES:
        raise ValidationError(
            f"case {case} has no closed form; estimate it by Monte Carlo instead"
        )
    return case


def _rate_terms(r) -> tuple[float, float]:
    """Return ``(2**R - 1, 2**R)``."""
    rate = RateThreshold.coerce(r).r
    t = math.expm1(rate * math.log(2.0))
    return t, t + 1.0


def _eve_exposure(case: CaseId) -> tuple[bool, bool]:
    """Whether the (S-R, R-D) hops are overheard."""
    return {
        CaseId.CASE1: (False, True),
        CaseId.CASE2: (True, False),
        CaseId.CASE3: (True, True),
    }[case]


def log_survival(case, snrs: SnrTriple, r) -> float:
    """Natural log of ``1 - P_i``, the probability of *no* secrecy outage."""
    case = _theorem_case(case)
    t, two_r = _rate_terms(r)
    exposed_sr, exposed_rd = _eve_exposure(case)
    out = -t / snrs.gamma_r - t / snrs.gamma_d
    if exposed_sr:
        out -= math.log1p(two_r * snrs.gamma_e / snrs.gamma_r)
    if exposed_rd:
        out -= math.log1p(two_r * snrs.gamma_e / snrs.gamma_d)
    return out


def sop_closed_form(case, snrs: SnrTriple, r) -> float:
    """Exact secrecy outage probability of Case I, II or III under Rayleigh fading.

    >>> round(sop_closed_form("1", SnrTriple(10, 10, 1), 1), 5)
    0.31772
    """
    return -math.expm1(log_survival(case, snrs, r))


def _common_slope(alpha: float, t: float) -> float:
    return t * (1.0 + 1.0 / alpha)


def slope_fixed_eve(case, alpha: float, gamma_e: float, r) -> float:
    """Coefficient ``M_i`` of ``1/gamma_d`` when ``gamma_e`` stays fixed."""
    case = _theorem_case(case)
    scaling = ScenarioScaling(alpha)
    if not (math.isfinite(gamma_e) and gamma_e >= 0):
        raise ValidationError(f"gamma_e must be finite and >= 0, got {gamma_e}")
    t, two_r = _rate_terms(r)
    a = scaling.alpha
    eve_weight = {
        CaseId.CASE1: 1.0,
        CaseId.CASE2: 1.0 / a,
        CaseId.CASE3: 1.0 + 1.0 / a,
    }[case]
    return _common_slope(a, t) + two_r * gamma_e * eve_weight


def _scaled_denominators(alpha: float, beta: float, two_r: float) -> tuple[float, float]:
    # 1 + 2^R gamma_e/gamma_d and 1 + 2^R gamma_e/gamma_r along gamma_r = alpha gamma_d = beta gamma_e
    return 1.0 + alpha * two_r / beta, 1.0 + two_r / beta


def _scaled_denominator(case: CaseId, alpha: float, beta: float, r) -> float:
    _, two_r = _rate_terms(r)
    d_rd, d_sr = _scaled_denominators(alpha, beta, two_r)
    return {CaseId.CASE1: d_rd, CaseId.CASE2: d_sr, CaseId.CASE3: d_rd * d_sr}[case]


def sop_limit(case, alpha: float, beta: float, r) -> float:
    """Outage floor ``P_i^lim`` reached when the eavesdropper SNR scales with the links."""
    case = _theorem_case(case)
    s = ScenarioScaling(alpha, beta)
    d = _scaled_denominator(case, s.alpha, s.beta, r)
    return (d - 1.0) / d


def slope_scaled_eve(case, alpha: float, beta: float, r) -> float:
    """Coefficient ``M_hat_i`` of the ``1/gamma_d`` approach to the floor."""
    case = _theorem_case(case)
    s = ScenarioScaling(alpha, beta)
    t, _ = _rate_terms(r)
    return _common_slope(s.alpha, t) / _scaled_denominator(case, s.alpha, s.beta, r)


@dataclass(frozen=True)
class AsymptoticResult:
    """High-SNR approximation ``approx = limit + slope / gamma_d``."""

    limit: float
    slope: float
    approx: float
    gamma_d: float
    scaled_eve: bool


def sop_asymptotic(
    case,
    gamma_d: float,
    scaling: ScenarioScaling,
    gamma_e_fixed: Optional[float] = None,
    r=1.0,
) -> AsymptoticResult:
    """First-order high-SNR approximation at ``gamma_d`` on the given trajectory.

    Higher-order terms in ``1/gamma_d`` are dropped, so accuracy improves as
    ``gamma_d`` grows.
    """
    case = _theorem_case(case)
    snrs = snrs_from_scenario(gamma_d, scaling, gamma_e_fixed)
    if scaling.scaled_eve:
        limit = sop_limit(case, scaling.alpha, scaling.beta, r)
        slope = slope_scaled_eve(case, scaling.alpha, scaling.beta, r)
    else:
        limit = 0.0
        slope = slope_fixed_eve(case, scaling.alpha, snrs.gamma_e, r)
    return AsymptoticResult(limit, slope, limit + slope / snrs.gamma_d,
                            snrs.gamma_d, scaling.scaled_eve)


@dataclass
class OrderingReport:
    """Verdicts on the case orderings implied by the closed forms.

    ``checks`` holds orderings derived directly from the formulas and must all
    be true for valid inputs (strict inequalities on ``M_i`` and ``P_i``
    additionally need ``gamma_e > 0``). ``published_ordering`` evaluates the
    outage ordering in the form commonly quoted alongside these results,
    which swaps the two SNR branches; it is informational only.
    """

    alpha: float
    beta: float
    snrs: SnrTriple
    rate: float
    values: dict[str, float] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    published_ordering: bool = False

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def ordering_predicates(snrs: SnrTriple, alpha: float, beta: float, r) -> OrderingReport:
    """Evaluate every pairwise ordering among ``P_i``, ``M_i``, ``P_i^lim`` and ``M_hat_i``.

    ``P_i`` come from ``snrs``; ``M_i`` use ``alpha`` with ``snrs.gamma_e``;
    the scaled-regime quantities use ``alpha`` and ``beta``.
    """
    rate = RateThreshold.coerce(r).r
    cases = THEOREM_CASES
    P = [sop_closed_form(c, snrs, rate) for c in cases]
    M = [slope_fixed_eve(c, alpha, snrs.gamma_e, rate) for c in cases]
    L = [sop_limit(c, alpha, beta, rate) for c in cases]
    H = [slope_scaled_eve(c, alpha, beta, rate) for c in cases]
    values = {}
    for name, vec in (("P", P), ("M", M), ("P_lim", L), ("M_hat", H)):
        for i, v in enumerate(vec, start=1):
            values[f"{name}{i}"] = v

    p1, p2, p3 = P
    m1, m2, m3 = M
    l1, l2, l3 = L
    h1, h2, h3 = H
    eve = snrs.gamma_e > 0
    checks: dict[str, bool] = {
        "P3 >= max(P1, P2)": p3 >= max(p1, p2),
        "M3 >= max(M1, M2)": m3 >= max(m1, m2),
        "P3_lim > max(P1_lim, P2_lim)": l3 > max(l1, l2),
        "M3_hat < min(M1_hat, M2_hat)": h3 < min(h1, h2),
    }
    if eve:
        if snrs.gamma_d > snrs.gamma_r:
            checks["P3 > P2 > P1 (gamma_d > gamma_r)"] = p3 > p2 > p1
        else:
            checks["P3 > P1 >= P2 (gamma_d <= gamma_r)"] = p3 > p1 >= p2
        if alpha > 1:
            checks["M3 > M1 > M2 (alpha > 1)"] = m3 > m1 > m2
        else:
            # At alpha == 1 the two slopes coincide exactly.
            checks["M3 > M2 >= M1 (alpha <= 1)"] = m3 > m2 >= m1
    if alpha > 1:
        checks["P3_lim > P1_lim > P2_lim (alpha > 1)"] = l3 > l1 > l2
        checks["M2_hat > M1_hat > M3_hat (alpha > 1)"] = h2 > h1 > h3
    else:
        checks["P3_lim > P2_lim >= P1_lim (alpha <= 1)"] = l3 > l2 >= l1
        checks["M1_hat >= M2_hat > M3_hat (alpha <= 1)"] = h1 >= h2 > h3

    if snrs.gamma_d > snrs.gamma_r:
        as_written = p3 > p1 > p2
    else:
        as_written = p3 > p2 >= p1
    return OrderingReport(alpha, beta, snrs, rate, values, checks, as_written)
