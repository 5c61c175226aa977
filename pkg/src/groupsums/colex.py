"""Colexicographic indexing of fixed-size index combinations.

A combination c_1 < c_2 < ... < c_k of nonnegative integers has rank

    rank(c) = C(c_1, 1) + C(c_2, 2) + ... + C(c_k, k)

and ranks enumerate combinations in colexicographic order, which coincides
with the numeric order of their bitmasks.  The searches in `groupsums.verify`
split work into contiguous rank windows, so results are independent of how
many workers process them.

>>> [rank(c) for c in [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]]
[0, 1, 2, 3, 4, 5]
>>> unrank(4, 2)
(1, 3)
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence


def rank(combo: Sequence[int]) -> int:
    r = 0
    for i, c in enumerate(combo, start=1):
        r += comb(c, i)
    return r


def unrank(r: int, k: int) -> tuple[int, ...]:
    if r < 0 or k < 0:
        raise ValueError("rank and size must be nonnegative")
    out = [0] * k
    for i in range(k, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= r:
            c += 1
        out[i - 1] = c
        r -= comb(c, i)
    if r != 0:
        raise ValueError("rank is not consistent with the combination size")
    return tuple(out)


def mask_of(combo: Iterable[int]) -> int:
    bits = 0
    for c in combo:
        bits |= 1 << c
    return bits


def windows(total: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous half-open windows."""
    if parts < 1:
        raise ValueError("need at least one window")
    parts = min(parts, total) or 1
    step, extra = divmod(total, parts)
    out = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out
