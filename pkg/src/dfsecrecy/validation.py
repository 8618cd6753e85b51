"""Self-check suite: every formula-derived property, evaluated on parameter grids.

:func:`run_validation` returns a :class:`ValidationReport`; the CLI exits
non-zero when any gating check fails. ``closed_form`` may be replaced to
confirm that a corrupted formula is caught.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import analytic
from .capacity import capacity_case1, capacity_case1_conventional, capacity_case2, capacity_case3
from .channel import SampleStream
from .core import (
    THEOREM_CASES,
    CaseId,
    ScenarioScaling,
    SnrTriple,
    db_to_linear,
    snrs_from_scenario,
)
from .montecarlo import estimate_sop_paired
from .sweep import FIXED_EVE, SweepSpec, fit_diversity_order, run_sweep

ClosedForm = Callable[[CaseId, SnrTriple, float], float]

GRID_GAMMA_D = (1.0, 10.0, 100.0)
GRID_ALPHA = (0.5, 1.0, 2.0)
GRID_GAMMA_E = (0.1, 1.0, 10.0)
GRID_RATE = (0.5, 1.0, 2.0)
MC_Z = 4.0


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)
    published_ordering: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def render(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.name}" + (f"  ({c.detail})" if c.detail else ""))
        lines.append("")
        lines.append("Published outage-ordering claim vs closed forms (informational, not gating):")
        lines.extend("  " + s for s in self.published_ordering)
        lines.append("")
        n = len(self.checks)
        if self.ok:
            lines.append(f"all {n} checks passed")
        else:
            lines.append(f"{len(self.failures)} of {n} checks FAILED")
        return "\n".join(lines)


def _random_snrs(
    rng: np.random.Generator, size: int, min_survival: float = 1e-2,
) -> list[tuple[SnrTriple, float]]:
    """Random points whose Case III no-outage probability is at least ``min_survival``.

    Near-certain outage leaves ``1 - P`` with too few significant digits for
    the exact comparisons made here.
    """
    floor = math.log(min_survival)
    out = []
    while len(out) < size:
        gr, gd, ge = 10 ** rng.uniform(-1, 4, 3)
        pt = (SnrTriple(gr, gd, ge), float(rng.uniform(0.1, 4.0)))
        if analytic.log_survival(CaseId.CASE3, *pt) >= floor:
            out.append(pt)
    return out


def _first_failure(items, predicate) -> Optional[str]:
    for item in items:
        if not predicate(item):
            return repr(item)
    return None


def _check_closed_form(report: ValidationReport, cf: ClosedForm, rng) -> None:
    points = _random_snrs(rng, 300)

    def in_range(pt):
        snrs, r = pt
        return all(0.0 <= cf(c, snrs, r) < 1.0 for c in THEOREM_CASES)

    bad = _first_failure(points, in_range)
    report.add("closed-form SOP lies in [0, 1)", bad is None, bad or "")

    def monotone(pt):
        snrs, r = pt
        up = 1.05
        for c in THEOREM_CASES:
            p = cf(c, snrs, r)
            if not cf(c, snrs, r * up) > p:
                return False
            if not cf(c, SnrTriple(snrs.gamma_r, snrs.gamma_d, snrs.gamma_e * up), r) > p:
                return False
            if not cf(c, SnrTriple(snrs.gamma_r, snrs.gamma_d * up, snrs.gamma_e), r) < p:
                return False
            if not cf(c, SnrTriple(snrs.gamma_r * up, snrs.gamma_d, snrs.gamma_e), r) < p:
                return False
        return True

    bad = _first_failure(points, monotone)
    report.add("SOP increases in R and gamma_e, decreases in gamma_r and gamma_d",
               bad is None, bad or "")

    bad = _first_failure(points, lambda pt: cf(CaseId.CASE1, pt[0], pt[1])
                         == cf(CaseId.CASE2, pt[0].swapped(), pt[1]))
    report.add("Case I/II symmetry under gamma_r <-> gamma_d (exact)", bad is None, bad or "")

    def factorizes(pt):
        snrs, r = pt
        s1 = 1 - cf(CaseId.CASE1, snrs, r)
        s2 = 1 - cf(CaseId.CASE2, snrs, r)
        s3 = 1 - cf(CaseId.CASE3, snrs, r)
        s0 = 1 - cf(CaseId.CASE1, SnrTriple(snrs.gamma_r, snrs.gamma_d, 0.0), r)
        return math.isclose(s3, s1 * s2 / s0, rel_tol=1e-12, abs_tol=0.0)

    bad = _first_failure(points, factorizes)
    report.add("Case III factorization 1-P3 = (1-P1)(1-P2)/(1-P0) to 1e-12",
               bad is None, bad or "")

    bad = _first_failure(points, lambda pt: cf(CaseId.CASE3, *pt)
                         >= max(cf(CaseId.CASE1, *pt), cf(CaseId.CASE2, *pt)))
    report.add("dominance P3 >= max(P1, P2)", bad is None, bad or "")


def _check_orderings(report: ValidationReport, rng) -> None:
    failures = []
    n_hi = n_lo = 0
    floor = math.log(1e-2)
    alphas = list(10 ** rng.uniform(-1.5, 1.5, 200)) + [1.0, 1.0]
    for alpha in alphas:
        while True:
            beta = float(10 ** rng.uniform(-1.5, 1.5))
            r = float(rng.uniform(0.1, 4.0))
            gd = float(10 ** rng.uniform(-1, 4))
            ge = float(10 ** rng.uniform(-1, 2))
            snrs = SnrTriple(alpha * gd, gd, ge)
            if analytic.log_survival(CaseId.CASE3, snrs, r) >= floor:
                break
        rep = analytic.ordering_predicates(snrs, float(alpha), beta, r)
        if alpha > 1:
            n_hi += 1
        else:
            n_lo += 1
        if not rep.ok:
            bad = [k for k, v in rep.checks.items() if not v]
            failures.append(f"alpha={alpha:.4g} beta={beta:.4g} R={r:.4g}: {bad}")
        if alpha == 1.0:
            v = rep.values
            if v["M1"] != v["M2"] or v["M_hat1"] != v["M_hat2"]:
                failures.append(f"alpha=1 slope symmetry broken at beta={beta}, R={r}")
    report.add(f"slope and floor ordering chains ({n_hi} cells alpha>1, {n_lo} cells alpha<=1)",
               not failures, "; ".join(failures[:3]))


def _check_asymptotics(report: ValidationReport, cf: ClosedForm) -> None:
    worst = 0.0
    for case in THEOREM_CASES:
        for alpha, ge, r in itertools.product(GRID_ALPHA, GRID_GAMMA_E, GRID_RATE):
            gd = 1e4
            asym = analytic.sop_asymptotic(case, gd, ScenarioScaling(alpha), ge, r)
            exact = cf(case, snrs_from_scenario(gd, ScenarioScaling(alpha), ge), r)
            worst = max(worst, abs(asym.approx - exact) / exact)
    report.add("fixed-eve asymptote within 1% of exact at gamma_d = 1e4",
               worst < 1e-2, f"worst rel. err {worst:.3g}")

    worst = 0.0
    for case in THEOREM_CASES:
        for alpha, beta, r in itertools.product(GRID_ALPHA, (0.5, 1.0, 2.0), GRID_RATE):
            scaling = ScenarioScaling(alpha, beta)
            lim = analytic.sop_limit(case, alpha, beta, r)
            mhat = analytic.slope_scaled_eve(case, alpha, beta, r)
            for gd in (1e4, 1e5):
                exact = cf(case, snrs_from_scenario(gd, scaling), r)
                worst = max(worst, abs((exact - lim) * gd - mhat) / mhat)
    report.add("(P - P_lim) * gamma_d within 2% of M_hat at gamma_d >= 1e4",
               worst < 2e-2, f"worst rel. err {worst:.3g}")

    ok = True
    detail = ""
    gd = 100.0
    for case in THEOREM_CASES:
        for alpha in GRID_ALPHA:
            gaps = []
            for beta_ in (1e2, 1e3, 1e4, 1e5, 1e6):
                ge = alpha * gd / beta_
                a3 = analytic.sop_asymptotic(case, gd, ScenarioScaling(alpha, beta_), None, 1.0)
                a2 = analytic.sop_asymptotic(case, gd, ScenarioScaling(alpha), ge, 1.0)
                gaps.append(abs(a3.approx - a2.approx) / a2.approx)
            if not (all(b < a for a, b in zip(gaps, gaps[1:])) and gaps[-1] < 1e-3):
                ok = False
                detail = f"case {case} alpha={alpha}: gaps {gaps}"
    report.add("scaled-eve approximation tends to fixed-eve one as beta grows", ok, detail)

    orders = {}
    for case in THEOREM_CASES:
        spec = SweepSpec(scenario=FIXED_EVE, cases=(case,), alpha=0.5,
                         gamma_e_fixed=db_to_linear(1.0), rate=1.0,
                         gamma_d_db_start=30.0, gamma_d_db_stop=50.0, gamma_d_db_step=2.0)
        rows = run_sweep(spec)
        if cf is not analytic.sop_closed_form:
            rows = [dataclasses.replace(row, sop_analytic=cf(case, snrs_from_scenario(
                db_to_linear(row.gamma_d_db), spec.scaling, spec.gamma_e_fixed), 1.0))
                for row in rows]
        orders[str(case)] = fit_diversity_order(rows, (30.0, 50.0))
    ok = all(abs(v - 1.0) <= 0.05 for v in orders.values())
    report.add("secrecy diversity order 1 +/- 0.05 over 30-50 dB (fixed-eve)", ok,
               ", ".join(f"case {k}: {v:.4f}" for k, v in orders.items()))


def _check_capacities(report: ValidationReport, n: int, seed: int) -> None:
    draws = SampleStream(seed, 0).draws(n)
    rng = np.random.default_rng(seed)
    ok_neg = ok_dom = ok_conv = ok_zero = True
    for _ in range(5):
        gr, gd, ge = 10 ** rng.uniform(-1, 3, 3)
        snrs = SnrTriple(gr, gd, ge)
        c1 = capacity_case1(draws, snrs).end_to_end
        c2 = capacity_case2(draws, snrs).end_to_end
        c3 = capacity_case3(draws, snrs).end_to_end
        cv = capacity_case1_conventional(draws, snrs)
        ok_neg &= bool(min(c1.min(), c2.min(), c3.min(), cv.min()) >= 0)
        ok_dom &= bool(np.all(c3 <= np.minimum(c1, c2)))
        ok_conv &= bool(np.all(cv <= c1))
        quiet = SnrTriple(gr, gd, 0.0)
        plain = np.maximum(np.minimum(np.log2(1 + gr * draws.g_sr),
                                      np.log2(1 + gd * draws.g_rd)), 0)
        for fn in (capacity_case1, capacity_case2, capacity_case3):
            ok_zero &= bool(np.allclose(fn(draws, quiet).end_to_end, plain,
                                         rtol=1e-12, atol=1e-12))
    report.add(f"capacities non-negative ({n} draws)", ok_neg)
    report.add(f"pointwise R3 <= min(R1, R2) ({n} draws)", ok_dom)
    report.add(f"pointwise conventional R1_hat <= R1 ({n} draws)", ok_conv)
    report.add("gamma_e = 0 collapses all cases to the plain DF capacity", ok_zero)


def _check_monte_carlo(report: ValidationReport, cf: ClosedForm, n: int, seed: int) -> None:
    cells = 0
    bad = []
    conv_bad = []
    cases = list(THEOREM_CASES) + [CaseId.CASE1_CONV]
    for gd, alpha, ge, r in itertools.product(GRID_GAMMA_D, GRID_ALPHA, GRID_GAMMA_E, GRID_RATE):
        snrs = SnrTriple(alpha * gd, gd, ge)
        est = estimate_sop_paired(cases, snrs, r, n, seed)
        for case in THEOREM_CASES:
            cells += 1
            lo, hi = est[case].interval(MC_Z)
            p = cf(case, snrs, r)
            if not lo <= p <= hi:
                bad.append(f"case {case} gd={gd} alpha={alpha} ge={ge} R={r}: "
                           f"mc={est[case].value:.5g} exact={p:.5g}")
        if est[CaseId.CASE1_CONV].count < est[CaseId.CASE1].count:
            conv_bad.append(f"gd={gd} alpha={alpha} ge={ge} R={r}")
    report.add(f"Monte Carlo within {MC_Z:g} Wilson std. errors of closed form "
               f"({cells} cells, n={n})", not bad, "; ".join(bad[:3]))
    report.add("paired conventional-Case-I SOP >= Case I SOP on every cell",
               not conv_bad, "; ".join(conv_bad[:3]))

    snrs = SnrTriple(5.0, 10.0, 1.0)
    m = 5 * 2**16 + 123
    vals = {w: estimate_sop_paired(THEOREM_CASES, snrs, 1.0, m, seed, workers=w)
            for w in (1, 4, 16)}
    same = all(vals[w][c].count == vals[1][c].count for w in (4, 16) for c in THEOREM_CASES)
    report.add("Monte Carlo identical for 1, 4 and 16 workers", same)


def _published_ordering_section(report: ValidationReport, cf: ClosedForm, rng) -> None:
    agree = disagree = 0
    for snrs, r in _random_snrs(rng, 300):
        if snrs.gamma_d == snrs.gamma_r:
            continue
        p1, p2 = cf(CaseId.CASE1, snrs, r), cf(CaseId.CASE2, snrs, r)
        derived = (p2 > p1) if snrs.gamma_d > snrs.gamma_r else (p1 >= p2)
        as_written = (p1 > p2) if snrs.gamma_d > snrs.gamma_r else (p2 >= p1)
        agree += derived
        disagree += as_written
    fig2 = SnrTriple(0.5 * 100.0, 100.0, db_to_linear(1.0))
    p = [cf(c, fig2, 1.0) for c in THEOREM_CASES]
    report.published_ordering = [
        "as written: gamma_d > gamma_r => P3 > P1 > P2; gamma_d <= gamma_r => P3 > P2 >= P1",
        "from the closed forms: gamma_d > gamma_r => P3 > P2 > P1; "
        "gamma_d <= gamma_r => P3 > P1 >= P2",
        f"random grid: derived ordering holds at {agree}/300 points, "
        f"as-written ordering at {disagree}/300",
        f"example point (gamma_r = 0.5 gamma_d = 20 dB, gamma_e = 1 dB, R = 1): "
        f"P1={p[0]:.5g} P2={p[1]:.5g} P3={p[2]:.5g} -> P3 > P2 > P1 is {p[2] > p[1] > p[0]}",
    ]


def run_validation(
    mc_samples: int = 1_000_000,
    seed: int = 20240601,
    closed_form: ClosedForm = analytic.sop_closed_form,
    capacity_draws: int = 100_000,
) -> ValidationReport:
    """Run all property checks; ``mc_samples = 0`` skips the Monte Carlo grid."""
    report = ValidationReport()
    rng = np.random.default_rng(seed)
    _check_closed_form(report, closed_form, rng)
    _check_orderings(report, rng)
    _check_asymptotics(report, closed_form)
    _check_capacities(report, capacity_draws, seed)
    if mc_samples > 0:
        _check_monte_carlo(report, closed_form, mc_samples, seed)
    _published_ordering_section(report, closed_form, rng)
    return report
