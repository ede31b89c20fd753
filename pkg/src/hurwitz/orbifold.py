"""Induced 2-orbifold covers and their geometry.

A candidate with branch data ``(d_ij)`` induces the orbifold cover
``X~ --> X`` where the i-th branching point becomes a cone point of order
``p_i = lcm_j d_ij`` downstairs and each of its preimages a cone point of
order ``p_i / d_ij`` upstairs. Orders equal to 1 are not cone points.

Bad orbifolds are recognized from Thurston's list for closed orientable
2-orbifolds: the bad ones are exactly the teardrops ``S2(p)`` and the
spindles ``S2(p,q)`` with ``p != q``.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import is_loeschian, is_sum_of_two_squares
from .core import (
    Applies,
    CandidateCover,
    Exceptional,
    HurwitzError,
    ParseError,
    Realizable,
    Surface,
    euler_characteristic,
)


class UnsupportedNonOrientable(HurwitzError, ValueError):
    pass


class Geometry(enum.Enum):
    BAD = "Bad"
    SPHERICAL = "Spherical"
    EUCLIDEAN = "Euclidean"
    HYPERBOLIC = "Hyperbolic"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Orbifold:
    surface: Surface
    cone_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(sorted((p for p in self.cone_orders if p != 1)))
        if any(p < 1 for p in orders):
            raise ValueError(f"cone orders must be positive, got {self.cone_orders}")
        object.__setattr__(self, "cone_orders", orders)

    @property
    def chi_orb(self) -> Fraction:
        return chi_orb(self)

    @property
    def geometry(self) -> Geometry:
        return classify_geometry(self)

    def __str__(self):
        name = _SURFACE_NAMES.get(self.surface, str(self.surface))
        if not self.cone_orders:
            return name if self.surface.genus == 0 else f"{name}()"
        return f"{name}({','.join(map(str, self.cone_orders))})"

    def to_json(self) -> dict:
        x = self.chi_orb
        return {
            "surface": str(self.surface),
            "cone_orders": list(self.cone_orders),
            "chi_orb": {"num": x.numerator, "den": x.denominator},
            "geometry": str(self.geometry) if self.surface.orientable else None,
        }

    @classmethod
    def parse(cls, text: str) -> "Orbifold":
        """Parse ``S2(2,2,3)``, ``S2``, ``T()`` or ``o2(3)``."""
        m = re.fullmatch(r"\s*(S2|T|[on]\d+)\s*(?:\(([\d,\s]*)\))?\s*", text)
        if not m:
            raise ParseError(f"bad orbifold {text!r}", text)
        name = m.group(1)
        surface = {"S2": Surface(True, 0), "T": Surface(True, 1)}.get(name) or Surface.parse(name)
        body = (m.group(2) or "").strip()
        orders = tuple(int(x) for x in body.split(",")) if body else ()
        return cls(surface, orders)


_SURFACE_NAMES = {Surface(True, 0): "S2", Surface(True, 1): "T"}


def chi_orb(x: Orbifold) -> Fraction:
    """Orbifold Euler characteristic, exactly.

    >>> chi_orb(Orbifold.parse("S2(2,2,3)"))
    Fraction(1, 3)
    """
    return euler_characteristic(x.surface) - sum((1 - Fraction(1, p) for p in x.cone_orders), Fraction(0))


def classify_geometry(x: Orbifold) -> Geometry:
    if not x.surface.orientable:
        raise UnsupportedNonOrientable("geometry is only classified for orientable orbifolds")
    chi = chi_orb(x)
    if chi < 0:
        return Geometry.HYPERBOLIC
    if chi == 0:
        return Geometry.EUCLIDEAN
    orders = x.cone_orders
    if x.surface.genus == 0 and (len(orders) == 1 or (len(orders) == 2 and orders[0] != orders[1])):
        return Geometry.BAD
    return Geometry.SPHERICAL


def induced_orbifold_cover(c: CandidateCover) -> tuple[Orbifold, Orbifold]:
    """Return ``(X~, X)``, the orbifold cover induced by ``c``.

    >>> from hurwitz.validation import parse_candidate
    >>> up, down = induced_orbifold_cover(parse_candidate("o0 <-[4]- o0 : 2,2|2,2|3,1"))
    >>> print(up, down)
    S2(3) S2(2,2,3)
    """
    down, up = [], []
    for part in c.partitions:
        p = math.lcm(*part.parts)
        down.append(p)
        up.extend(p // dij for dij in part.parts)
    return Orbifold(c.cover, tuple(up)), Orbifold(c.base, tuple(down))


def _is_family(c: CandidateCover, k: int, shapes) -> bool:
    want = sorted(((v,) * (m * k) + (1,) for v, m in shapes), reverse=True)
    return sorted((p.parts for p in c.partitions), reverse=True) == want


def _family_k(c: CandidateCover, step: int) -> Optional[int]:
    if c.degree % step != 1 or c.degree < step + 1:
        return None
    return (c.degree - 1) // step


def criterion_orbifold(c: CandidateCover) -> Optional[Applies]:
    """Geometric criteria on the induced orbifold cover.

    * ``chi_orb(X) > 0``: exceptional exactly when ``X~`` is bad and ``X``
      spherical.
    * ``X = S2(2,4,4)`` with data ``(2^2k,1), (4^k,1), (4^k,1)`` and
      ``d = 4k+1``: realizable iff ``d = x^2 + y^2``.
    * ``X = S2(2,3,6)`` with data ``(2^3k,1), (3^2k,1), (6^k,1)`` and
      ``d = 6k+1``: realizable iff ``d = x^2 + xy + y^2``.

    Returns None when none of these applies.
    """
    if not (c.base.is_sphere() and c.cover.orientable):
        return None
    up, down = induced_orbifold_cover(c)
    if chi_orb(down) > 0:
        bad_over_spherical = (
            classify_geometry(up) is Geometry.BAD and classify_geometry(down) is Geometry.SPHERICAL
        )
        detail = f"{up} [{chi_orb(up)}, {classify_geometry(up)}] over {down} [{chi_orb(down)}, {classify_geometry(down)}]"
        if bad_over_spherical:
            return Applies(Exceptional("thm.orbifold-positive"), "thm.orbifold-positive", detail)
        return Applies(Realizable("thm.orbifold-positive"), "thm.orbifold-positive", detail)

    k = _family_k(c, 4)
    if down.cone_orders == (2, 4, 4) and k and _is_family(c, k, [(2, 2), (4, 1), (4, 1)]):
        xy = is_sum_of_two_squares(c.degree)
        if xy:
            return Applies(Realizable("thm.244"), "thm.244", f"{c.degree} = {xy[0]}^2 + {xy[1]}^2")
        return Applies(Exceptional("thm.244"), "thm.244", f"{c.degree} is not a sum of two squares")

    k = _family_k(c, 6)
    if down.cone_orders == (2, 3, 6) and k and _is_family(c, k, [(2, 3), (3, 2), (6, 1)]):
        xy = is_loeschian(c.degree)
        if xy:
            x, y = xy
            return Applies(Realizable("thm.236"), "thm.236", f"{c.degree} = {x}^2 + {x}*{y} + {y}^2")
        return Applies(Exceptional("thm.236"), "thm.236", f"{c.degree} is not of the form x^2 + xy + y^2")
    return None
