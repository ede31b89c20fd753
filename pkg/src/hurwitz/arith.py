"""Representations of integers by the binary forms ``x^2 + y^2`` and
``x^2 + xy + y^2``.

Whether 0 counts as a natural number matters here (9 = 3^2 + 0^2, but 9 is
not a sum of two positive squares). The monodromy search settles it: the
degree-9 candidate of the ``(2,4,4)`` family is realizable, so zero is
admitted by default.
"""
from __future__ import annotations

from math import isqrt
from typing import Optional

ALLOW_ZERO = True


def is_sum_of_two_squares(d: int, allow_zero: Optional[bool] = None) -> Optional[tuple[int, int]]:
    """Return ``(x, y)`` with ``x >= y`` and ``x^2 + y^2 == d``, or None.

    >>> is_sum_of_two_squares(5)
    (2, 1)
    >>> is_sum_of_two_squares(21) is None
    True
    """
    if d < 1:
        raise ValueError(f"expected a positive integer, got {d}")
    lo = 0 if (ALLOW_ZERO if allow_zero is None else allow_zero) else 1
    for x in range(isqrt(d), -1, -1):
        rest = d - x * x
        y = isqrt(rest)
        if y > x:
            break
        if y * y == rest and y >= lo:
            return x, y
    return None


def is_loeschian(d: int, allow_zero: Optional[bool] = None) -> Optional[tuple[int, int]]:
    """Return ``(x, y)`` with ``x >= y`` and ``x^2 + xy + y^2 == d``, or None.

    >>> is_loeschian(7)
    (2, 1)
    """
    if d < 1:
        raise ValueError(f"expected a positive integer, got {d}")
    lo = 0 if (ALLOW_ZERO if allow_zero is None else allow_zero) else 1
    for x in range(isqrt(d), -1, -1):
        # y^2 + xy + (x^2 - d) = 0, want the non-negative root
        disc = 4 * d - 3 * x * x
        if disc < 0:
            continue
        r = isqrt(disc)
        if r * r != disc or (r - x) % 2:
            continue
        y = (r - x) // 2
        if y > x:
            break
        if y >= lo:
            return x, y
    return None
