"""Curve points to solutions of A^4 + h B^4 = C^4 + h D^4.

With A = m - q, B = m + p, C = m + q, D = m - p the quartic collapses (after
dropping the factor m) to m^2 (h p - q) = q^3 - h p^3.  Fixing h p - q = 1 gives
m^2 = (h^3-h) p^3 - 3h^2 p^2 + 3h p - 1, and X = (h^3-h) p, Y = (h^3-h) m maps
that onto E(h).  This module runs the map backwards.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Any, Callable, Iterator, Optional, Union

from .compose import Identity
from .curve import CurveContext, CurvePoint, build_curve, on_curve, scalar_mul
from .errors import (
    DegenerateParameter,
    DegeneratePoint,
    DomainError,
    InconsistentWeights,
    PointNotFound,
    TrivialQuadruple,
)
from .numeric import clear_to_primitive, rational_fourth_root, small_height_rationals
from .pointsearch import GeneratorRegistry, SearchBounds, load_registry, search_points

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PMQTriple:
    h: Fraction
    p: Fraction
    m: Fraction
    q: Fraction

    def __post_init__(self):
        h, p, m, q = self.h, self.p, self.m, self.q
        if q != h * p - 1:
            raise DomainError(f"q != h p - 1 for {self}")
        if m == 0:
            raise DegeneratePoint("m = 0")
        if m * m != (h**3 - h) * p**3 - 3 * h * h * p * p + 3 * h * p - 1:
            raise DomainError(f"(p, m) is not on the quartic model for h={h}")

    def __iter__(self):
        return iter((self.p, self.m, self.q))


@dataclass(frozen=True)
class ScalePlan:
    """Solve for h*t^4 and absorb t into B and D."""

    h: Fraction
    t: Fraction

    def __post_init__(self):
        if self.t == 0:
            raise DomainError("scale t must be nonzero")

    @property
    def effective_h(self) -> Fraction:
        return self.h * self.t**4


@dataclass(frozen=True)
class SolutionQuadruple:
    """A^4 + h B^4 = C^4 + h D^4.

    ``raw`` keeps the signed rationals; with scale t it is (A, tB, C, tD) so
    A + C = (B + D) / t.  ``integral`` is the primitive positive integer form.
    """

    h: Fraction
    raw: tuple[Fraction, Fraction, Fraction, Fraction]
    t: Fraction = Fraction(1)
    provenance: dict[str, Any] = field(default_factory=dict, compare=False)
    integral: tuple[int, int, int, int] = field(init=False)

    def __post_init__(self):
        raw = tuple(Fraction(v) for v in self.raw)
        object.__setattr__(self, "raw", raw)
        if any(v == 0 for v in raw):
            raise TrivialQuadruple(f"zero component in {raw}")
        A, B, C, D = raw
        if (A + C) * self.t != B + D:
            raise DomainError("A + C = (B + D)/t violated")
        if A**4 + self.h * B**4 != C**4 + self.h * D**4:
            raise DomainError(f"{raw} does not satisfy the quartic for h={self.h}")
        integral = tuple(abs(v) for v in clear_to_primitive(raw))
        a, b, c, d = integral
        if a**4 + self.h * b**4 != c**4 + self.h * d**4:  # pragma: no cover
            raise DomainError("integral form lost the identity")
        object.__setattr__(self, "integral", integral)

    @property
    def is_trivial(self) -> bool:
        """True when the two sides agree term by term (a permutation, no content)."""
        a, b, c, d = self.integral
        if (a, b) == (c, d):
            return True
        root = rational_fourth_root(self.h)
        if root is not None:
            return sorted((a, root * b)) == sorted((c, root * d))
        return False

    def equation(self) -> str:
        a, b, c, d = self.integral
        h = self.h
        if h == 1:
            return f"{a}^4+{b}^4={c}^4+{d}^4"
        coeff = str(abs(h)) if h.denominator == 1 else f"({abs(h)})"
        op = "-" if h < 0 else "+"
        return f"{a}^4 {op} {coeff}*{b}^4 = {c}^4 {op} {coeff}*{d}^4"


def point_to_pmq(ctx: CurveContext, pt: CurvePoint) -> PMQTriple:
    if pt.is_infinity:
        raise DegeneratePoint("the point at infinity has no (p, m, q)")
    if not on_curve(ctx, pt):
        raise DomainError(f"{pt} is not on {ctx}")
    if pt.y == 0:
        raise DegeneratePoint(f"{pt} has Y = 0, which forces m = 0")
    p = pt.x / ctx.k
    m = pt.y / ctx.k
    return PMQTriple(ctx.h, p, m, ctx.h * p - 1)


def pmq_to_quadruple(triple: PMQTriple, provenance: Optional[dict] = None) -> SolutionQuadruple:
    p, m, q = triple
    raw = (m - q, m + p, m + q, m - p)
    return SolutionQuadruple(triple.h, raw, provenance=dict(provenance or {}))


PointSource = Union[CurvePoint, Callable[[CurveContext], Optional[CurvePoint]]]


def solve_with_scaling(h, t, point_source: PointSource) -> SolutionQuadruple:
    """Solution for ``h`` built from a point on E(h t^4)."""
    plan = ScalePlan(Fraction(h), Fraction(t))
    ctx = build_curve(plan.effective_h)
    pt = point_source(ctx) if callable(point_source) else point_source
    if pt is None:
        raise PointNotFound(f"no point on E({plan.effective_h})")
    base = pmq_to_quadruple(point_to_pmq(ctx, pt))
    A, B, C, D = base.raw
    t = plan.t
    return SolutionQuadruple(
        plan.h,
        (A, t * B, C, t * D),
        t=t,
        provenance={**base.provenance, "point": pt, "t": t, "effective_h": plan.effective_h},
    )


def candidate_points(
    ctx: CurveContext,
    registry: Optional[GeneratorRegistry] = None,
    bounds: Optional[SearchBounds] = None,
    workers: int = 1,
) -> list[CurvePoint]:
    """Registry generators first, then searched points; 2-torsion dropped."""
    reg = registry if registry is not None else load_registry()
    points = [p for p in reg.get(ctx.h)]
    if bounds is not None:
        xs = {p.x for p in points}
        points += [p for p in search_points(ctx, bounds, workers) if p.x not in xs]
    return [p for p in points if p.y != 0]


def iter_solutions(
    h,
    t=None,
    multiple: Optional[int] = None,
    bounds: Optional[SearchBounds] = SearchBounds(),
    registry: Optional[GeneratorRegistry] = None,
    max_t: int = 12,
    max_multiple: int = 6,
    workers: int = 1,
) -> Iterator[SolutionQuadruple]:
    """Quadruples for ``h`` in a fixed order: t, then generator, then multiple.

    Without an explicit t the scales 1, 2, 1/2, 3, 1/3, 3/2, ... are tried.
    Trivial quadruples are skipped unless ``multiple`` was given explicitly.
    """
    h = Fraction(h)
    if h == 0:
        raise DegenerateParameter(h, "h = 0 stays degenerate under every scale t")
    scales = [Fraction(t)] if t is not None else list(islice(small_height_rationals(), max_t))
    multiples = [multiple] if multiple is not None else range(1, max_multiple + 1)
    for scale in scales:
        eff = h * scale**4
        try:
            ctx = build_curve(eff)
        except DegenerateParameter:
            if t is not None:
                raise
            continue
        gens = candidate_points(ctx, registry, bounds, workers)
        log.debug("E(%s): %d candidate generators", eff, len(gens))
        for gen in gens:
            for n in multiples:
                pt = scalar_mul(ctx, n, gen)
                if pt.is_infinity or pt.y == 0:
                    continue
                try:
                    quad = solve_with_scaling(h, scale, pt)
                except (TrivialQuadruple, DegeneratePoint):
                    continue
                if quad.is_trivial and multiple is None:
                    continue
                quad.provenance.update(generator=gen, multiple=n)
                yield quad


def find_solution(h, **kwargs) -> SolutionQuadruple:
    for quad in iter_solutions(h, **kwargs):
        return quad
    raise PointNotFound(f"no usable point found for h={h}")


def as_weighted(quadruple: SolutionQuadruple, u: int, v: int) -> Identity:
    """u A^4 + v B^4 = u C^4 + v D^4 for a quadruple solved with h = v/u."""
    if u == 0:
        raise DomainError("u must be nonzero")
    if Fraction(v, u) != quadruple.h:
        raise InconsistentWeights(f"v/u = {Fraction(v, u)} but quadruple has h={quadruple.h}")
    if u < 0:
        u, v = -u, -v
    a, b, c, d = quadruple.integral
    if v > 0:
        left, right, lw, rw = (a, b), (c, d), (u, v), (u, v)
    else:
        # move the negative weight across so all weights stay positive
        left, right, lw, rw = (a, d), (c, b), (u, -v), (u, -v)
    return Identity(left, right, lw, rw, h=quadruple.h, provenance=dict(quadruple.provenance))
