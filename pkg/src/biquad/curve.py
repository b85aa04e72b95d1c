"""The cubic E(h): Y^2 = X^3 - 3h^2 X^2 + 3h(h^3-h) X - (h^3-h)^2 and its group law.

The curve is kept in this non-reduced Weierstrass shape so coefficients and
points can be compared against published values verbatim.  Points are affine
pairs of Fractions plus a distinguished point at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DegenerateParameter, DomainError
from .numeric import is_perfect_square


@dataclass(frozen=True)
class CurveContext:
    h: Fraction
    k: Fraction  # h^3 - h
    F: Fraction
    G: Fraction
    H: Fraction

    def rhs(self, x: Fraction) -> Fraction:
        return ((x + self.F) * x + self.G) * x + self.H

    @property
    def discriminant(self) -> Fraction:
        F, G, H = self.F, self.G, self.H
        return 18 * F * G * H - 4 * F**3 * H + F**2 * G**2 - 4 * G**3 - 27 * H**2

    @property
    def scale(self) -> int:
        """Smallest u with u^2 F, u^4 G, u^6 H all integral; equals den(h)."""
        return self.h.denominator

    def __str__(self):
        def term(c, mono):
            sign = "-" if c < 0 else "+"
            return f"{sign}{abs(c)}{mono}"

        return "Y^2=X^3" + term(self.F, "X^2") + term(self.G, "X") + term(self.H, "")


@dataclass(frozen=True)
class CurvePoint:
    """Affine point, or the point at infinity when ``x`` is None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = CurvePoint()


def point(x, y) -> CurvePoint:
    return CurvePoint(Fraction(x), Fraction(y))


def build_curve(h) -> CurveContext:
    h = Fraction(h)
    if h == 0:
        raise DegenerateParameter(h, "h = 0 gives h^3 - h = 0")
    if h in (1, -1):
        raise DegenerateParameter(h, "h = +-1 gives h^3 - h = 0")
    k = h**3 - h
    ctx = CurveContext(h=h, k=k, F=-3 * h * h, G=3 * h * k, H=-k * k)
    if ctx.discriminant == 0:
        raise DegenerateParameter(h, "cubic has a repeated root")
    return ctx


def on_curve(ctx: CurveContext, pt: CurvePoint) -> bool:
    if pt.is_infinity:
        return True
    return pt.y * pt.y == ctx.rhs(pt.x)


def _require(ctx, *pts):
    for p in pts:
        if not on_curve(ctx, p):
            raise DomainError(f"point {p} is not on {ctx}")


def negate(ctx: CurveContext, pt: CurvePoint) -> CurvePoint:
    _require(ctx, pt)
    if pt.is_infinity:
        return pt
    return CurvePoint(pt.x, -pt.y)


def _add(ctx, p1, p2):
    # chord-tangent on y^2 = x^3 + F x^2 + G x + H, inputs assumed on the curve
    if p1.is_infinity:
        return p2
    if p2.is_infinity:
        return p1
    if p1.x == p2.x:
        if p1.y != p2.y or p1.y == 0:
            return INFINITY
        slope = (3 * p1.x * p1.x + 2 * ctx.F * p1.x + ctx.G) / (2 * p1.y)
    else:
        slope = (p2.y - p1.y) / (p2.x - p1.x)
    x3 = slope * slope - ctx.F - p1.x - p2.x
    y3 = slope * (p1.x - x3) - p1.y
    return CurvePoint(x3, y3)


def add(ctx: CurveContext, p1: CurvePoint, p2: CurvePoint) -> CurvePoint:
    _require(ctx, p1, p2)
    return _add(ctx, p1, p2)


def scalar_mul(ctx: CurveContext, n: int, pt: CurvePoint) -> CurvePoint:
    """n*pt by left-to-right double-and-add; negative n negates the result."""
    _require(ctx, pt)
    if n < 0:
        return negate(ctx, scalar_mul(ctx, -n, pt))
    result = INFINITY
    for bit in bin(n)[2:]:
        result = _add(ctx, result, result)
        if bit == "1":
            result = _add(ctx, result, pt)
    return result


def to_rst(ctx: CurveContext, pt: CurvePoint) -> tuple[int, int, int]:
    """Integers (r, s, t), s > 0, with X = r/s^2 and Y = t/s^3.

    Rational points satisfy X = x/u^2 with x a point of the integral model
    (u = den(h)), whose X-denominator is a square e^2; then s = u*e.
    """
    _require(ctx, pt)
    if pt.is_infinity:
        raise DomainError("the point at infinity has no affine (r, s, t) form")
    u = ctx.scale
    e = is_perfect_square((pt.x * u * u).denominator)
    if e is None:  # pragma: no cover - impossible for points on the curve
        raise DomainError(f"{pt} has no square-denominator form on {ctx}")
    s = u * e
    r, t = pt.x * s**2, pt.y * s**3
    if r.denominator != 1 or t.denominator != 1:  # pragma: no cover
        raise DomainError(f"{pt} has no integral (r, s, t) form on {ctx}")
    return int(r), s, int(t)


def from_rst(r: int, s: int, t: int) -> CurvePoint:
    return CurvePoint(Fraction(r, s * s), Fraction(t, s**3))
