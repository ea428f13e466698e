"""Plain-int bitmask helpers shared by the whole package.

Sets of objects/attributes are Python ints, bit i = element i.  All
operations below are pure; callers own the width bookkeeping.
"""
from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_count(mask: int) -> int:
    return mask.bit_count()


def lowest_bit(mask: int) -> int:
    """Index of the least set bit; mask must be nonzero."""
    return (mask & -mask).bit_length() - 1


def highest_bit(mask: int) -> int:
    """Index of the greatest set bit; mask must be nonzero."""
    return mask.bit_length() - 1


def full_mask(width: int) -> int:
    return (1 << width) - 1


def to_frozenset(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def lectic_key(mask: int, width: int) -> int:
    """Sort key realizing the lectic order: index 0 is the smallest element.

    A is lectically below B iff the least index where they differ is in B,
    i.e. comparing bit-reversed masks numerically.
    """
    key = 0
    for i in range(width):
        if mask >> i & 1:
            key |= 1 << (width - 1 - i)
    return key
