"""Deterministic randomness for the whole package.

Everything random here flows from a single 64-bit seed through a
splitmix64 stream: state advances by the golden-ratio constant and each
output is the standard avalanche mix of the new state.  The generator is
tiny, portable across languages, and fully specified by the constants
below, so any run can be reproduced from its seed alone.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer: avalanche a 64-bit value."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def keyed_u64(seed: int, index: int) -> int:
    """The index-th output of the splitmix64 stream seeded with seed.

    Pure function of (seed, index); used where the contract is one draw
    per position, e.g. the sequential engine's random policy keyed by
    (seed, move index).
    """
    return mix64((seed + (index + 1) * _GOLDEN) & _MASK)


class SplitMix64:
    """Sequential form of the same stream: next_u64() yields output i on call i."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return mix64(self._state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection sampling.

        Works for arbitrarily large n by concatenating 64-bit words, so
        it can draw uniform ranks over huge composition spaces.
        """
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        if n == 1:
            return 0
        bits = (n - 1).bit_length()
        words = (bits + 63) // 64
        while True:
            v = 0
            for _ in range(words):
                v = (v << 64) | self.next_u64()
            v &= (1 << bits) - 1
            if v < n:
                return v

    def chance(self, p: float) -> bool:
        """Bernoulli draw with probability p, using one 53-bit draw."""
        return (self.next_u64() >> 11) < p * (1 << 53)


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministically derive an independent sub-seed from seed and keys.

    Used to hand each trial / instance its own stream without the streams
    overlapping: derive_seed(s, i) != derive_seed(s, j) for i != j in
    practice (full-avalanche mixing of every key).
    """
    s = mix64(seed)
    for k in keys:
        s = mix64(s ^ mix64(k & _MASK) ^ _GOLDEN)
    return s
