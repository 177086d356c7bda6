"""Seeded, portable random streams and the distribution primitives.

The generator is xoshiro256** seeded through splitmix64, implemented directly
so the byte-for-byte output sequence is fixed by this module alone and does
not depend on interpreter version or platform. Substreams are derived from
(master seed, column name, family tag) with FNV-1a, which makes every
contamination independent of the order in which specs run.
"""

from __future__ import annotations

import math

from .errors import CapacityError

_MASK64 = (1 << 64) - 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _fnv1a(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return z, state


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class RandomStream:
    """xoshiro256** stream, single-owner; identical seed gives identical draws."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        state = seed & _MASK64
        self._s0, state = _splitmix64(state)
        self._s1, state = _splitmix64(state)
        self._s2, state = _splitmix64(state)
        self._s3, state = _splitmix64(state)
        if self._s0 == self._s1 == self._s2 == self._s3 == 0:
            self._s0 = 1  # all-zero state is the one forbidden xoshiro state

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def random(self) -> float:
        """Uniform in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randint_below(self, n: int) -> int:
        """Unbiased uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("randint_below requires n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def choice(self, seq):
        return seq[self.randint_below(len(seq))]


def derive_seed(master_seed: int, column: str, family: str) -> int:
    """Stable 64-bit seed for the (column, family) substream of master_seed."""
    payload = (
        (master_seed & _MASK64).to_bytes(8, "big")
        + b"\x00"
        + column.encode("utf-8")
        + b"\x00"
        + family.encode("utf-8")
    )
    return _fnv1a(payload)


def derive_substream(master_seed: int, column: str, family: str) -> RandomStream:
    return RandomStream(derive_seed(master_seed, column, family))


def sample_rows(n_total: int, k: int, exclude: set[int], stream: RandomStream) -> set[int]:
    """Exactly k distinct indices in [0, n_total), disjoint from exclude, uniform.

    Partial Fisher-Yates over the ascending eligible list, so the result is a
    pure function of (n_total, k, exclude, stream state).
    """
    eligible = [i for i in range(n_total) if i not in exclude]
    if k > len(eligible):
        raise CapacityError(
            f"requested {k} rows but only {len(eligible)} eligible",
            requested=k,
            eligible=len(eligible),
        )
    m = len(eligible)
    for j in range(k):
        swap = j + stream.randint_below(m - j)
        eligible[j], eligible[swap] = eligible[swap], eligible[j]
    return set(eligible[:k])


def normal(stream: RandomStream, mean: float, sd: float) -> float:
    """One draw from Normal(mean, sd) via Box-Muller (two uniforms per call)."""
    if sd < 0:
        raise ValueError("sd must be >= 0")
    if sd == 0:
        return mean
    u1 = 1.0 - stream.random()  # (0, 1], keeps log finite
    u2 = stream.random()
    z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
    return mean + sd * z


def clamped_normal(
    stream: RandomStream, mean: float, sd: float, lo: float, hi: float
) -> float:
    """Normal(mean, sd) draw snapped into [lo, hi]."""
    if lo > hi:
        raise ValueError("lo must be <= hi")
    v = normal(stream, mean, sd)
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v
