"""
Reproducible random instances.

The generator is SplitMix64 so that any implementation can rebuild the same
instance from a seed:

    state = state + 0x9E3779B97F4A7C15                    (mod 2^64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9             (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB             (mod 2^64)
    output z ^ (z >> 31)

An integer uniform in ``[0, k)`` is drawn by rejecting outputs at or above
the largest multiple of ``k`` below ``2^64`` and reducing the rest mod ``k``.
Item values are drawn row by row: agent 1 items 1..m, then agent 2, ...
"""

from pathdiv.exceptions import InputError
from pathdiv.logging import get_logger
from pathdiv.models.instance import Instance

logger = get_logger("generator")

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 pseudo-random generator over unsigned 64-bit integers."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound < 1:
            raise InputError(f"Bound must be positive, got {bound}")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            draw = self.next()
            if draw < limit:
                return draw % bound


def generate_instance(seed: int, n: int, m: int, max_value: int) -> Instance:
    """Additive instance with item values uniform in ``[0, max_value]``."""
    if n < 1 or m < 1:
        raise InputError(f"Need n >= 1 and m >= 1, got n={n}, m={m}")
    if max_value < 0:
        raise InputError(f"max_value must be >= 0, got {max_value}")
    rng = SplitMix64(seed)
    values = [[rng.below(max_value + 1) for _ in range(m)] for _ in range(n)]
    logger.debug(f"Generated instance seed={seed} n={n} m={m} max_value={max_value}")
    return Instance.additive(values)
