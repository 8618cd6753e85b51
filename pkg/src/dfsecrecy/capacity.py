"""Instantaneous secrecy capacities of the two-hop DF relay for one realization.

The end-to-end secrecy capacity is ``max(min(C_sr, C_rd), 0)`` where a hop
overheard by the eavesdropper contributes its clamped secrecy capacity and an
unobserved hop its plain Shannon capacity. All functions broadcast over
batched :class:`~dfsecrecy.channel.ChannelDraw` fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .channel import ChannelDraw
from .core import CaseId, SnrTriple

ArrayLike = Union[float, np.ndarray]

_LN2 = np.log(2.0)


@dataclass(frozen=True)
class CapacityBreakdown:
    """Per-hop rates and the clamped end-to-end secrecy capacity (bits/use)."""

    hop_sr: ArrayLike
    hop_rd: ArrayLike
    end_to_end: ArrayLike


def _ln_capacity(gamma: float, g: ArrayLike) -> np.ndarray:
    return np.log1p(gamma * np.asarray(g, dtype=float))


def _ln_secrecy(gamma: float, g: ArrayLike, gamma_e: float, g_e: ArrayLike) -> np.ndarray:
    return np.maximum(_ln_capacity(gamma, g) - _ln_capacity(gamma_e, g_e), 0.0)


def _scalarize(x: np.ndarray) -> ArrayLike:
    return float(x) if np.ndim(x) == 0 else x


def _combine(ln_sr: np.ndarray, ln_rd: np.ndarray) -> CapacityBreakdown:
    # The outer clamp is redundant once each hop is non-negative; kept for uniformity.
    e2e = np.maximum(np.minimum(ln_sr, ln_rd), 0.0)
    return CapacityBreakdown(
        _scalarize(ln_sr / _LN2), _scalarize(ln_rd / _LN2), _scalarize(e2e / _LN2)
    )


def capacity_case1(draw: ChannelDraw, snrs: SnrTriple) -> CapacityBreakdown:
    """Eavesdropper hears the relay only: the S-R hop needs no secrecy coding."""
    ln_sr = _ln_capacity(snrs.gamma_r, draw.g_sr)
    ln_rd = _ln_secrecy(snrs.gamma_d, draw.g_rd, snrs.gamma_e, draw.g_re)
    return _combine(ln_sr, ln_rd)


def capacity_case1_conventional(draw: ChannelDraw, snrs: SnrTriple) -> ArrayLike:
    """The widely used Case I formula ``log2((1 + min(SNR_rd, SNR_sr)) / (1 + SNR_re))^+``.

    It treats the S-R/R-E capacity difference as a secrecy term and is never
    larger than :func:`capacity_case1`'s end-to-end value.
    """
    legit = np.minimum(snrs.gamma_d * np.asarray(draw.g_rd, dtype=float),
                       snrs.gamma_r * np.asarray(draw.g_sr, dtype=float))
    ln = np.maximum(np.log1p(legit) - _ln_capacity(snrs.gamma_e, draw.g_re), 0.0)
    return _scalarize(ln / _LN2)


def capacity_case2(draw: ChannelDraw, snrs: SnrTriple) -> CapacityBreakdown:
    """Eavesdropper hears the source only: the R-D hop needs no secrecy coding."""
    ln_sr = _ln_secrecy(snrs.gamma_r, draw.g_sr, snrs.gamma_e, draw.g_se)
    ln_rd = _ln_capacity(snrs.gamma_d, draw.g_rd)
    return _combine(ln_sr, ln_rd)


def capacity_case3(draw: ChannelDraw, snrs: SnrTriple) -> CapacityBreakdown:
    """Eavesdropper hears both hops; S and R use independent secrecy codebooks."""
    ln_sr = _ln_secrecy(snrs.gamma_r, draw.g_sr, snrs.gamma_e, draw.g_se)
    ln_rd = _ln_secrecy(snrs.gamma_d, draw.g_rd, snrs.gamma_e, draw.g_re)
    return _combine(ln_sr, ln_rd)


def end_to_end_capacity(case: CaseId | str, draw: ChannelDraw, snrs: SnrTriple) -> ArrayLike:
    """End-to-end secrecy capacity for any :class:`CaseId`, conventional variant included."""
    case = CaseId.parse(case)
    if case is CaseId.CASE1_CONV:
        return capacity_case1_conventional(draw, snrs)
    fn = {CaseId.CASE1: capacity_case1, CaseId.CASE2: capacity_case2,
          CaseId.CASE3: capacity_case3}[case]
    return fn(draw, snrs).end_to_end
