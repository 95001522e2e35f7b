"""Deterministic 64-bit PRNG (splitmix64).

Every randomized component in this package draws from these streams so that
a run is reproducible bit-for-bit from its seed, independent of Python
version or platform.  The generator is the standard splitmix64 mixer: state
advances by a fixed odd constant and the output is a finalizer over the new
state.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """splitmix64 stream; any int seed is accepted (reduced mod 2^64)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix(self._state)

    def uniform(self) -> float:
        """Uniform float in [0, 1)."""
        return self.next_u64() / 2.0**64

    def randrange(self, n: int) -> int:
        """Uniform int in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, a: int, b: int) -> int:
        """Uniform int in [a, b], both ends included."""
        return a + self.randrange(b - a + 1)

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def coin(self) -> bool:
        return bool(self.next_u64() & 1)


def derive_seed(*parts: int) -> int:
    """Fold integers into one 64-bit seed.  Order-sensitive; used to give
    independent sub-streams to edges, adversaries, and generators."""
    s = 0
    for p in parts:
        s = _mix(((s ^ (p & _MASK)) + _GAMMA) & _MASK)
    return s
