"""Rayleigh-fading channel draws from splittable, counter-based streams.

Squared magnitudes of CN(0, 1) gains are unit-mean exponentials, so they are
sampled directly. Each :class:`SampleStream` wraps a Philox generator keyed by
``(seed, stream_index)`` through :class:`numpy.random.SeedSequence`; the whole
sequence is therefore a pure function of that pair, and distinct indices give
independent substreams.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

# Number of exponential variates consumed per channel draw, in field order.
GAINS_PER_DRAW = 4


@dataclass(frozen=True)
class ChannelDraw:
    """Squared channel-gain magnitudes of the four links.

    Fields hold scalars for a single realization or equally shaped arrays for
    a batch; every capacity function accepts either.
    """

    g_sr: ArrayLike
    g_rd: ArrayLike
    g_se: ArrayLike
    g_re: ArrayLike

    def __len__(self) -> int:
        return int(np.size(self.g_sr))

    def __getitem__(self, idx) -> "ChannelDraw":
        return ChannelDraw(*(np.asarray(g)[idx] for g in self.as_tuple()))

    def as_tuple(self) -> tuple:
        return (self.g_sr, self.g_rd, self.g_se, self.g_re)

    def swapped(self) -> "ChannelDraw":
        """Mirror the relay: S-R <-> R-D and S-E <-> R-E."""
        return ChannelDraw(self.g_rd, self.g_sr, self.g_re, self.g_se)


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
    return seed


@dataclass
class SampleStream:
    """Deterministic substream ``stream_index`` of the family rooted at ``seed``.

    A stream is stateful (successive calls advance it) and must be used by one
    worker at a time. Re-creating it with the same pair replays the sequence.
    """

    seed: int
    stream_index: int = 0
    _gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.seed = _check_seed(self.seed)
        if self.stream_index < 0:
            raise ValueError("stream_index must be non-negative")
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(int(self.stream_index),))
        self._gen = np.random.Generator(np.random.Philox(ss))

    def exponential(self, size=None):
        return self._gen.standard_exponential(size)

    def draws(self, m: int) -> ChannelDraw:
        """Next ``m`` channel realizations as one batched :class:`ChannelDraw`.

        Values are laid out row-major, so the first ``k`` realizations of any
        request for ``m >= k`` are the same.
        """
        block = self.exponential((m, GAINS_PER_DRAW))
        return ChannelDraw(block[:, 0], block[:, 1], block[:, 2], block[:, 3])


def sample_exponential_unit(stream: SampleStream) -> float:
    """One unit-mean exponential variate (|h|^2 for h ~ CN(0, 1))."""
    return float(stream.exponential())


def sample_draw(stream: SampleStream) -> ChannelDraw:
    """One realization of all four squared gains, mutually independent."""
    g = stream.exponential(GAINS_PER_DRAW)
    return ChannelDraw(float(g[0]), float(g[1]), float(g[2]), float(g[3]))
