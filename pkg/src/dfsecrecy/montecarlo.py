"""Monte Carlo estimation of secrecy outage probabilities.

Sample ``k`` is always drawn from substream ``(seed, k // BATCH_SIZE)`` at
offset ``k % BATCH_SIZE``. Work is split along those batches and the outage
indicators are summed as integers, so the estimate does not depend on the
number of workers or on completion order. One draw feeds every requested
case, which makes paired comparisons between cases exact on common draws.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .capacity import end_to_end_capacity
from .channel import SampleStream
from .core import CaseId, RateThreshold, SnrTriple, ValidationError

BATCH_SIZE = 2**16


def wilson_interval(count: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion ``count / n``."""
    if n <= 0:
        raise ValidationError("n must be positive")
    p = count / n
    z2 = z * z
    denom = 1.0 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n))
    lo = max(0.0, center - half)
    hi = min(1.0, center + half)
    # Guard the ordering lo <= p <= hi against rounding at the endpoints.
    return min(lo, p), max(hi, p)


@dataclass(frozen=True)
class SopEstimate:
    """Fraction of draws whose end-to-end secrecy capacity fell below the rate."""

    case: CaseId
    value: float
    count: int
    n: int
    ci_low: float
    ci_high: float
    seed: int
    confidence: float = 0.95
    target_met: Optional[bool] = None

    @property
    def half_width(self) -> float:
        return 0.5 * (self.ci_high - self.ci_low)

    @property
    def std_error(self) -> float:
        return math.sqrt(self.value * (1.0 - self.value) / self.n)

    def interval(self, z: float) -> tuple[float, float]:
        """Wilson interval at an arbitrary ``z`` (e.g. 4 for a 4-sigma band)."""
        return wilson_interval(self.count, self.n, z)


def _batch_counts(
    cases: Sequence[CaseId], snrs: SnrTriple, rate: float, seed: int,
    batch: int, lo: int, hi: int,
) -> np.ndarray:
    draws = SampleStream(seed, batch).draws(hi)
    if lo:
        draws = draws[lo:hi]
    return np.array(
        [np.count_nonzero(end_to_end_capacity(c, draws, snrs) < rate) for c in cases],
        dtype=np.int64,
    )


def _segments(start: int, stop: int) -> list[tuple[int, int, int]]:
    """Split sample indices ``[start, stop)`` into ``(batch, lo, hi)`` pieces."""
    out = []
    k = start
    while k < stop:
        b = k // BATCH_SIZE
        hi = min(stop, (b + 1) * BATCH_SIZE)
        out.append((b, k - b * BATCH_SIZE, hi - b * BATCH_SIZE))
        k = hi
    return out


def count_outages(
    cases: Sequence[CaseId], snrs: SnrTriple, rate: float, seed: int,
    start: int, stop: int, workers: int = 1,
) -> np.ndarray:
    """Outage counts per case over sample indices ``[start, stop)``."""
    segs = _segments(start, stop)
    total = np.zeros(len(cases), dtype=np.int64)
    if workers <= 1 or len(segs) <= 1:
        for seg in segs:
            total += _batch_counts(cases, snrs, rate, seed, *seg)
        return total
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for counts in pool.map(lambda s: _batch_counts(cases, snrs, rate, seed, *s), segs):
            total += counts
    return total


def _make_estimate(case, count, n, seed, target_met=None) -> SopEstimate:
    lo, hi = wilson_interval(int(count), n)
    return SopEstimate(case, count / n, int(count), n, lo, hi, seed, target_met=target_met)


def _check_common(n: int, seed: int) -> None:
    if int(n) != n or n < 1:
        raise ValidationError(f"sample count must be a positive integer, got {n}")
    if not 0 <= int(seed) < 2**64:
        raise ValidationError(f"seed must fit in 64 unsigned bits, got {seed}")


def estimate_sop_paired(
    cases: Iterable, snrs: SnrTriple, r, n: int, seed: int = 0, workers: int = 1,
) -> dict[CaseId, SopEstimate]:
    """Estimate several cases on the same ``n`` channel draws."""
    cases = [CaseId.parse(c) for c in cases]
    rate = RateThreshold.coerce(r).r
    _check_common(n, seed)
    counts = count_outages(cases, snrs, rate, int(seed), 0, int(n), workers)
    return {c: _make_estimate(c, k, int(n), int(seed)) for c, k in zip(cases, counts)}


def estimate_sop(case, snrs: SnrTriple, r, n: int, seed: int = 0, workers: int = 1) -> SopEstimate:
    """Estimate ``Pr(C_case < R)`` from ``n`` independent Rayleigh draws."""
    case = CaseId.parse(case)
    return estimate_sop_paired([case], snrs, r, n, seed, workers)[case]


def estimate_sop_adaptive(
    case, snrs: SnrTriple, r, target_rel_halfwidth: float, max_n: int,
    seed: int = 0, workers: int = 1,
) -> SopEstimate:
    """Double the sample count until the 95% half-width is within target of the estimate.

    Stops at ``max_n`` at the latest; ``target_met`` records the outcome. The
    value for a final count ``n`` equals ``estimate_sop(..., n, seed)``.
    """
    case = CaseId.parse(case)
    rate = RateThreshold.coerce(r).r
    if not 0 < target_rel_halfwidth < 1:
        raise ValidationError("target_rel_halfwidth must lie in (0, 1)")
    _check_common(max_n, seed)
    max_n = int(max_n)
    count, n = 0, 0
    while True:
        n_next = min(max(2 * n, BATCH_SIZE), max_n)
        count += int(count_outages([case], snrs, rate, int(seed), n, n_next, workers)[0])
        n = n_next
        lo, hi = wilson_interval(count, n)
        met = count > 0 and 0.5 * (hi - lo) <= target_rel_halfwidth * (count / n)
        if met or n >= max_n:
            return _make_estimate(case, count, n, int(seed), target_met=met)

