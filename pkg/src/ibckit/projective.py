"""The projective line over GF(q): points, Moebius maps, and the cross-ratio.

Moebius maps z -> (az+b)/(cz+d) with ad - bc != 0 act bijectively on
P^1 = GF(q) u {oo} and preserve the cross-ratio exactly, which is what the
masking layer of the cross-ratio scheme relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DegenerateDenominator,
    DegenerateQuadruple,
    DistinctnessViolation,
)
from .field import FieldElement


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^1: a field element, or the distinguished point at
    infinity (value None)."""

    value: FieldElement | None

    @classmethod
    def finite(cls, x: FieldElement) -> ProjPoint:
        return cls(x)

    @classmethod
    def at_infinity(cls) -> ProjPoint:
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __repr__(self):
        return "ProjPoint(oo)" if self.is_infinity else f"ProjPoint({self.value!r})"


INFINITY = ProjPoint(None)


def _as_point(z) -> ProjPoint:
    if isinstance(z, ProjPoint):
        return z
    if isinstance(z, FieldElement):
        return ProjPoint(z)
    raise TypeError(f"expected ProjPoint or FieldElement, got {type(z).__name__}")


@dataclass(frozen=True)
class MobiusMap:
    """Class representative (a, b, c, d) of a fractional linear map.

    The determinant ad - bc must be nonzero; representatives differing by a
    scalar act identically.
    """

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    def __post_init__(self):
        if self.determinant().is_zero():
            raise ValueError("map is singular: ad - bc = 0")

    def determinant(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> MobiusMap:
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def __call__(self, z) -> ProjPoint:
        return apply_mask(self, z)


def apply_mask(f: MobiusMap, z) -> ProjPoint:
    """Evaluate f on P^1: the pole -d/c maps to infinity and infinity maps
    to a/c (or stays at infinity when c = 0)."""
    z = _as_point(z)
    if z.is_infinity:
        if f.c.is_zero():
            return INFINITY
        return ProjPoint(f.a * f.c.inverse())
    den = f.c * z.value + f.d
    if den.is_zero():
        return INFINITY
    return ProjPoint((f.a * z.value + f.b) * den.inverse())


def invert_mask(f: MobiusMap, w) -> ProjPoint:
    """Apply f^-1, the map (d, -b, -c, a); undoes apply_mask on every point."""
    return apply_mask(f.inverse(), w)


def cross_ratio(z1, z2, z3, z4) -> FieldElement:
    """CR(z1, z2; z3, z4) = ((z1-z3)(z2-z4)) / ((z1-z4)(z2-z3)).

    Infinity follows the standard limit convention: each difference is the
    determinant of homogeneous representatives ((x : 1) for finite points,
    (1 : 0) for infinity), so the two factors containing a single infinite
    point cancel, and repeated infinite points zero out their factor.  A
    vanishing denominator raises DegenerateQuadruple; a vanishing numerator
    is a legitimate zero value.
    """
    pts = [_as_point(z) for z in (z1, z2, z3, z4)]
    finite = [p for p in pts if not p.is_infinity]
    if not finite:
        raise DegenerateQuadruple("cross-ratio denominator vanishes")
    params = finite[0].value.params
    one = params.one()
    zero = params.zero()

    def det(a: ProjPoint, b: ProjPoint) -> FieldElement:
        if a.is_infinity:
            return zero if b.is_infinity else one
        if b.is_infinity:
            return -one
        return a.value - b.value

    z1, z2, z3, z4 = pts
    num = det(z1, z3) * det(z2, z4)
    den = det(z1, z4) * det(z2, z3)
    if den.is_zero():
        raise DegenerateQuadruple("cross-ratio denominator vanishes")
    return num * den.inverse()


def solve_fourth(z1: FieldElement, z2: FieldElement, z3: FieldElement,
                 invariant: FieldElement) -> FieldElement:
    """The unique finite z4 with CR(z1, z2; z3, z4) = invariant:

        z4 = ((z1-z3) z2 - I (z2-z3) z1) / ((z1-z3) - I (z2-z3)).

    Requires z1, z2, z3 pairwise distinct and a nonzero invariant (a zero
    cross-ratio would force z4 = z2).  Raises DegenerateDenominator when the
    displayed denominator vanishes.
    """
    if z1 == z2 or z1 == z3 or z2 == z3:
        raise DistinctnessViolation("known points must be pairwise distinct")
    if invariant.is_zero():
        raise DistinctnessViolation("invariant must be nonzero")
    A = z1 - z3
    B = z2 - z3
    den = A - invariant * B
    if den.is_zero():
        raise DegenerateDenominator("fourth-point equation is unsolvable here")
    return (A * z2 - invariant * B * z1) * den.inverse()
