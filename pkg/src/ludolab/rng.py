"""Deterministic 64-bit randomness for game simulation.

Every game is driven by a single 64-bit seed. Seeds for game i of a batch are
derived from the batch master seed with a splitmix64-style avalanche, so any
subset of games can be replayed bit-identically without running the rest.
"""
from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    # splitmix64 finalizer (Stafford mix13 constants)
    z &= _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


def derive_game_seed(master_seed: int, game_index: int) -> int:
    """Seed for game ``game_index`` (0-based) under ``master_seed``.

    Computed as ``finalize(master XOR ((i + 1) * golden))`` so that
    ``derive_game_seed(0, i)`` reproduces the plain splitmix64 output stream.
    """
    if game_index < 0:
        raise ValueError("game_index must be >= 0")
    return _finalize((master_seed & _MASK64) ^ ((game_index + 1) * _GOLDEN & _MASK64))


class SplitMix64:
    """Minimal splitmix64 generator; one instance drives one game."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        return _finalize(self.state)

    def roll_die(self) -> int:
        """Uniform die value in 1..6 via double-width multiply (bit-exact)."""
        # finalizer unrolled; this is the innermost call of every simulation
        z = self.state = (self.state + _GOLDEN) & _MASK64
        z ^= z >> 30
        z = (z * 0xBF58476D1CE4E5B9) & _MASK64
        z ^= z >> 27
        z = (z * 0x94D049BB133111EB) & _MASK64
        z ^= z >> 31
        return 1 + (z * 6 >> 64)


def die_value(u64: int) -> int:
    """Map a raw 64-bit draw to a die value in 1..6."""
    return 1 + ((u64 & _MASK64) * 6 >> 64)
