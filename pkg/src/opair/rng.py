"""Reproducible sampling of exact rational test data.

The generator is SplitMix64 (Steele, Lea & Flood), chosen because it is a
handful of 64-bit operations that any language can reproduce bit for bit:

    state  <- state + 0x9E3779B97F4A7C15            (mod 2**64)
    z      <- state
    z      <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9 (mod 2**64)
    z      <- (z xor (z >> 27)) * 0x94D049BB133111EB (mod 2**64)
    output <- z xor (z >> 31)

An integer in [lo, hi] is ``lo + output mod (hi - lo + 1)``.  Matrix
entries are drawn row by row.  Independent sample streams are derived with
``substream(seed, index)``: a fresh generator seeded with
``seed xor ((index + 1) * 0x9E3779B97F4A7C15 mod 2**64)`` produces one
output, and that output seeds the stream.
"""
from __future__ import annotations

from fractions import Fraction

from .exact import Mat

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
DEFAULT_RANGE = 9


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def integer(self, lo: int, hi: int) -> int:
        return lo + self.next_u64() % (hi - lo + 1)

    def rational(self, r: int = DEFAULT_RANGE) -> Fraction:
        """p/q with p uniform in [-r, r] and q uniform in [1, r]."""
        p = self.integer(-r, r)
        q = self.integer(1, max(r, 1))
        return Fraction(p, q)

    def nonzero_rational(self, r: int = DEFAULT_RANGE) -> Fraction:
        while True:
            x = self.rational(r)
            if x:
                return x

    def matrix(self, n: int, r: int = DEFAULT_RANGE) -> Mat:
        return Mat([[self.integer(-r, r) for _ in range(n)] for _ in range(n)])

    def invertible_matrix(self, n: int, r: int = DEFAULT_RANGE) -> Mat:
        while True:
            m = self.matrix(n, r)
            if m.is_invertible():
                return m


def substream(seed: int, index: int) -> SplitMix64:
    g = SplitMix64(seed ^ (((index + 1) * GOLDEN) & MASK64))
    return SplitMix64(g.next_u64())
