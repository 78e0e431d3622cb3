"""Bit-string helpers shared by the function families and the simulator.

Bit strings are plain Python ints, little-endian: bit i of x is (x >> i) & 1.
"""

from __future__ import annotations


def bit(x: int, i: int) -> int:
    return (x >> i) & 1


def parity(x: int) -> int:
    """Parity of the set bits of x."""
    return x.bit_count() & 1


def dot(a: int, b: int) -> int:
    """Inner product of two bit strings mod 2."""
    return (a & b).bit_count() & 1


def mask(width: int) -> int:
    return (1 << width) - 1


def to_bytes(x: int, width_bits: int) -> bytes:
    return x.to_bytes((width_bits + 7) // 8, "little")


def from_bytes(data: bytes) -> int:
    return int.from_bytes(data, "little")
