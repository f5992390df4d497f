"""Deterministic random number generation.

The generator is SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter
advanced by the golden-ratio increment 0x9E3779B97F4A7C15, scrambled by two
xor-shift-multiply rounds with the constants 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB and a final 31-bit xor-shift.  Doubles are produced as
(output >> 11) * 2**-53, uniform on [0, 1).  The algorithm is pinned here so
trial streams reproduce exactly on any implementation of this toolkit.

Independent per-trial streams come from `child_seed(seed, index)`, defined as
one SplitMix64 scramble of (seed XOR (index + 1) * 0x9E3779B97F4A7C15); the
streams are order-independent, so trials can run in any order or in parallel.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _scramble(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def child_seed(seed: int, index: int) -> int:
    """Seed for the index-th independent substream of `seed`."""
    return _scramble((seed ^ ((index + 1) * _GOLDEN)) & _MASK)


class SplitMix64:
    """Deterministic 64-bit generator; see module docstring for the algorithm."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return _scramble(self._state)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.u64() >> 11) * 2.0 ** -53

    def runif(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def rint(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.u64() % n

    def rcomplex(self, scale: float = 1.0) -> complex:
        """Complex number with independent uniform parts in [-scale, scale]."""
        re = self.runif(-scale, scale)
        im = self.runif(-scale, scale)
        return complex(re, im)

    def rbool(self, p: float = 0.5) -> bool:
        return self.uniform() < p

    def sample(self, items: list, k: int) -> list:
        """k distinct items, order deterministic in the draw sequence."""
        pool = list(items)
        picked = []
        for _ in range(min(k, len(pool))):
            picked.append(pool.pop(self.rint(len(pool))))
        return picked
