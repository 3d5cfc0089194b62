"""Portable pseudo-random generator for reproducible simulations.

xorshift64* (Vigna 2016): state update ``x ^= x >> 12; x ^= x << 25;
x ^= x >> 27`` on a nonzero 64-bit state, output ``x * 0x2545F4914F6CDD1D``
mod 2^64.  States are seeded through one splitmix64 step so that nearby
seeds (``seed + trial``) give unrelated streams.  Bounded draws use
rejection sampling, so the same seed yields the same integers on every
platform and in every language that follows these three rules.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        state = splitmix64(seed & MASK64)
        self.state = state or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def sample(self, n: int, t: int) -> list[int]:
        """``t`` distinct values from ``range(n)`` by a partial Fisher-Yates shuffle."""
        if not 0 <= t <= n:
            raise ValueError(f"cannot draw {t} distinct values from {n}")
        pool = list(range(n))
        for i in range(t):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:t]
