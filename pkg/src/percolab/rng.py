"""Counter-based random streams.

Every random bit in the package is a pure function of a key
``(master seed, stream id)`` and a counter (usually an edge index), computed
with the SplitMix64 mixer.  This makes percolation order-independent: the
coin attached to edge ``e`` is the same whether it is revealed by a DFS
query, by a full exposure pass, or by a worker process on another core.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 finalizer on a Python int."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * _M1) & _MASK64
    x = ((x ^ (x >> 27)) * _M2) & _MASK64
    return x ^ (x >> 31)


def _mix64_array(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> np.uint64(30))
    x = x * np.uint64(_M1)
    x = x ^ (x >> np.uint64(27))
    x = x * np.uint64(_M2)
    return x ^ (x >> np.uint64(31))


@dataclass(frozen=True)
class RngStream:
    """A reproducible stream of uniforms addressed by counter.

    Distinct ``(seed, stream)`` pairs give independent-behaving sequences.
    ``child(tag)`` derives a sub-stream, e.g. one per exposure round.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.seed <= _MASK64 and 0 <= self.stream <= _MASK64):
            raise ValueError("seed and stream must be 64-bit unsigned integers")

    @cached_property
    def key(self) -> int:
        return mix64(mix64(self.seed ^ 0x5851F42D4C957F2D) ^ mix64(self.stream + _GAMMA))

    def child(self, tag: int) -> "RngStream":
        return RngStream(self.seed, mix64(self.stream * _GAMMA + tag + 1))

    def raw(self, index) -> np.ndarray:
        """64-bit outputs at the given counter positions."""
        idx = np.asarray(index, dtype=np.uint64)
        with np.errstate(over="ignore"):
            state = np.uint64(self.key) + (idx + np.uint64(1)) * np.uint64(_GAMMA)
            return _mix64_array(state)

    def uniform(self, index) -> np.ndarray:
        """Uniform doubles in [0, 1) at the given counter positions."""
        return (self.raw(index) >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)

    def bernoulli(self, index, p: float) -> np.ndarray:
        """Boolean coins with success probability ``p``."""
        return self.uniform(index) < p

    def generator(self) -> np.random.Generator:
        """A sequential numpy Generator seeded from this stream's key."""
        return np.random.default_rng([self.seed, self.stream])


def as_stream(rng) -> RngStream:
    if isinstance(rng, RngStream):
        return rng
    if isinstance(rng, (int, np.integer)):
        return RngStream(int(rng))
    if isinstance(rng, tuple) and len(rng) == 2:
        return RngStream(int(rng[0]), int(rng[1]))
    raise TypeError(f"cannot interpret {rng!r} as an RngStream")
