"""Deterministic 64-bit PRNG (SplitMix64) for reproducible noise synthesis.

The generator is fixed to the SplitMix64 schedule so that a given seed
produces the same byte-exact stream on every platform and language that
implements the same recurrence.  ``numpy``'s generators are deliberately not
used here: their streams are implementation-defined across versions.
"""

from __future__ import annotations

_MASK = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# 2**-53, the spacing used to map 53 random bits onto [0, 1)
_U53 = 1.0 / (1 << 53)


def _mix(x: int) -> int:
    x ^= x >> 30
    x = (x * _MIX1) & _MASK
    x ^= x >> 27
    x = (x * _MIX2) & _MASK
    x ^= x >> 31
    return x


class SplitMix64:
    """SplitMix64 stream: state advances by the golden gamma, output is mixed.

    Instances are single-owner; one stream must never be shared across
    concurrent tasks.
    """

    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        return _mix(self.state)

    def uniform(self) -> float:
        """Uniform deviate in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * _U53


def hash_string(text: str) -> int:
    """Stable 64-bit hash of a string via iterated SplitMix64 mixing.

    Each UTF-8 byte is folded into the running state, which is then advanced
    by one SplitMix64 step.  Used to derive benchmark seeds from cell labels
    so results do not depend on directory enumeration order.
    """
    state = 0
    for byte in text.encode("utf-8"):
        state = _mix(((state ^ byte) + _GOLDEN) & _MASK)
    return state
