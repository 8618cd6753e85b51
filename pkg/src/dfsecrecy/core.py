"""System parameterization for the DF relay wiretap model.

Everything downstream works on linear-scale average SNRs held in an
:class:`SnrTriple`. Inputs are validated here once, so the capacity,
analytic and Monte Carlo modules can assume well-formed values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional


class ValidationError(ValueError):
    """Raised when a parameter violates its documented precondition."""


class CaseId(str, enum.Enum):
    """Which wiretap topology is analyzed.

    ``CASE1``: E overhears R only. ``CASE2``: E overhears S only.
    ``CASE3``: E overhears both hops. ``CASE1_CONV`` is the commonly used
    (but non-rigorous) Case I expression, available to Monte Carlo only.
    """

    CASE1 = "1"
    CASE2 = "2"
    CASE3 = "3"
    CASE1_CONV = "1conv"

    @classmethod
    def parse(cls, value: "CaseId | str | int") -> "CaseId":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"i": "1", "ii": "2", "iii": "3", "1c": "1conv", "conv": "1conv"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValidationError(f"unknown case {value!r}") from None

    def __str__(self) -> str:
        return self.value


THEOREM_CASES = (CaseId.CASE1, CaseId.CASE2, CaseId.CASE3)


def _finite(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value}")
    return value


def _positive(name: str, value: float) -> float:
    value = _finite(name, value)
    if value <= 0:
        raise ValidationError(f"{name} must be > 0, got {value}")
    return value


def _non_negative(name: str, value: float) -> float:
    value = _finite(name, value)
    if value < 0:
        raise ValidationError(f"{name} must be >= 0, got {value}")
    return value


def db_to_linear(x_db: float) -> float:
    """Convert a power ratio from dB to linear scale."""
    x_db = _finite("x_db", x_db)
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a positive linear power ratio to dB."""
    x = _positive("x", x)
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SnrTriple:
    """Linear average SNRs of the S-R, R-D and eavesdropper links.

    ``gamma_e = 0`` models an absent eavesdropper; it is accepted so that
    degenerate cases can be checked, and every formula stays defined there.
    """

    gamma_r: float
    gamma_d: float
    gamma_e: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma_r", _positive("gamma_r", self.gamma_r))
        object.__setattr__(self, "gamma_d", _positive("gamma_d", self.gamma_d))
        object.__setattr__(self, "gamma_e", _non_negative("gamma_e", self.gamma_e))

    @classmethod
    def from_db(cls, gamma_r_db: float, gamma_d_db: float, gamma_e_db: float) -> "SnrTriple":
        return cls(db_to_linear(gamma_r_db), db_to_linear(gamma_d_db), db_to_linear(gamma_e_db))

    def to_db(self) -> tuple[float, float, float]:
        """Return ``(gamma_r_db, gamma_d_db, gamma_e_db)``; -inf for an absent eavesdropper."""
        e_db = linear_to_db(self.gamma_e) if self.gamma_e > 0 else -math.inf
        return linear_to_db(self.gamma_r), linear_to_db(self.gamma_d), e_db

    def swapped(self) -> "SnrTriple":
        """Exchange the roles of the two legitimate hops."""
        return SnrTriple(self.gamma_d, self.gamma_r, self.gamma_e)


@dataclass(frozen=True)
class RateThreshold:
    """Target secrecy rate in bits per channel use."""

    r: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", _positive("rate", self.r))

    @classmethod
    def coerce(cls, value: "RateThreshold | float") -> "RateThreshold":
        return value if isinstance(value, cls) else cls(value)


@dataclass(frozen=True)
class ScenarioScaling:
    """High-SNR scaling: ``gamma_r = alpha * gamma_d`` and, if set, ``gamma_r = beta * gamma_e``.

    Leaving ``beta`` unset selects the fixed-eavesdropper regime.
    """

    alpha: float
    beta: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))
        if self.beta is not None:
            object.__setattr__(self, "beta", _positive("beta", self.beta))

    @property
    def scaled_eve(self) -> bool:
        return self.beta is not None


def snr_from_power(p: float, sigma2_r: float, sigma2_d: float, sigma2_e: float) -> SnrTriple:
    """Build SNRs from total power ``p`` split equally between S and R."""
    p = _positive("p", p)
    noises = [_positive(n, v) for n, v in
              (("sigma2_r", sigma2_r), ("sigma2_d", sigma2_d), ("sigma2_e", sigma2_e))]
    return SnrTriple(*(p / (2.0 * s) for s in noises))


def snrs_from_scenario(
    gamma_d: float,
    scaling: ScenarioScaling,
    gamma_e_fixed: Optional[float] = None,
) -> SnrTriple:
    """Place a point on one of the two high-SNR trajectories.

    Exactly one eavesdropper specification must be given: ``scaling.beta``
    (scaled regime) or ``gamma_e_fixed`` (fixed regime).
    """
    gamma_d = _positive("gamma_d", gamma_d)
    if scaling.scaled_eve == (gamma_e_fixed is not None):
        raise ValidationError("give exactly one of scaling.beta or gamma_e_fixed")
    gamma_r = scaling.alpha * gamma_d
    if scaling.scaled_eve:
        gamma_e = gamma_r / scaling.beta
    else:
        gamma_e = _non_negative("gamma_e_fixed", gamma_e_fixed)
    return SnrTriple(gamma_r, gamma_d, gamma_e)
