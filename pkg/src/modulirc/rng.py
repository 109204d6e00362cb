"""Seeded deterministic random numbers for the verification suites.

SplitMix64: a 64-bit counter-based generator with a fixed, documented
algorithm, so random suites reproduce byte-for-byte from (seed, bounds)
alone on any platform.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    """Counter-based 64-bit generator (Steele, Lea & Flood's splitmix64)."""

    def __init__(self, seed):
        self._state = seed & _MASK

    def next_u64(self):
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        """Uniform-ish integer in [lo, hi] inclusive (modulo reduction; the
        tiny bias is irrelevant for identity testing and keeps the stream
        reproducible)."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.next_u64() % (hi - lo + 1)
