"""Deterministic 64-bit sampling generator (splitmix64).

The whole algorithm is these few lines, so runs are reproducible from the
seed alone, independent of platform or interpreter version.  Per-point
streams are derived by mixing the global seed with the point index.
"""

from __future__ import annotations

MASK = (1 << 64) - 1


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK
    return z ^ (z >> 31)


class SplitMix64:
    """state_{k+1} = state_k + 0x9E3779B97F4A7C15; output = mix(state)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        return _mix(self.state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform in [lo, hi] (by rejection on the top range)."""
        span = hi - lo + 1
        limit = (MASK + 1) - (MASK + 1) % span
        while True:
            v = self.next_u64()
            if v < limit:
                return lo + v % span


def derived(seed: int, index: int) -> SplitMix64:
    """Independent stream for (seed, index): deterministic fan-out."""
    return SplitMix64(_mix((seed & MASK) ^ _mix(index & MASK)))


def sample_field_element(rng: SplitMix64, field, spread: int = 101):
    """A 'random' scalar: full range for prime fields, small ints for Q."""
    from .field import PrimeField
    if isinstance(field, PrimeField):
        return rng.randint(0, field.p - 1)
    return field.coerce(rng.randint(-spread, spread))
