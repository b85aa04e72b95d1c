from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biquad.curve import INFINITY, add, build_curve, from_rst, negate, on_curve, point, scalar_mul, to_rst
from biquad.errors import DegenerateParameter, DomainError

from conftest import CURVES

E16 = build_curve(16)
E10 = build_curve(10)
P16 = point(340, 680)
P10 = point(165, 495)


def test_builds_printed_coefficients():
    for h, coeffs in CURVES.items():
        ctx = build_curve(h)
        assert (ctx.F, ctx.G, ctx.H) == coeffs
        assert ctx.k == h**3 - h


def test_build_h2_and_printing():
    ctx = build_curve(2)
    assert (ctx.F, ctx.G, ctx.H) == (-12, 36, -36)
    assert str(E16) == "Y^2=X^3-768X^2+195840X-16646400"
    assert str(E10) == "Y^2=X^3-300X^2+29700X-980100"


@pytest.mark.parametrize("h", [0, 1, -1, F(2, 2)])
def test_degenerate_parameters(h):
    with pytest.raises(DegenerateParameter):
        build_curve(h)


@given(st.fractions(max_denominator=50).filter(lambda h: h not in (0, 1, -1)))
def test_discriminant_closed_form(h):
    ctx = build_curve(h)
    assert ctx.discriminant == -27 * h**4 * (h - 1) ** 2 * (h + 1) ** 2
    # E(h) = E(-h)
    neg = build_curve(-h)
    assert (neg.F, neg.G, neg.H) == (ctx.F, ctx.G, ctx.H)


def test_on_curve():
    assert on_curve(E16, P16)
    assert on_curve(E16, INFINITY)
    assert not on_curve(E16, point(0, 0))


def test_negate():
    assert negate(E16, P16) == point(340, -680)
    assert negate(E16, INFINITY) == INFINITY
    assert negate(E10, P10) == point(165, -495)


def test_add_and_double():
    assert add(E16, P16, P16) == point(313, -275)
    assert add(E10, P10, P10) == point(F(505, 4), F(-85, 8))
    assert add(E16, P16, INFINITY) == P16
    assert add(E16, P16, negate(E16, P16)) == INFINITY


def test_scalar_mul():
    assert scalar_mul(E16, 3, P16) == point(F(995860, 729), F(-727724440, 19683))
    assert scalar_mul(build_curve(23), 2, point(880, 6512)) == point(F(3424933, 5476), F(275924489, 405224))
    assert scalar_mul(E16, 1, P16) == P16
    assert scalar_mul(E16, 0, P16) == INFINITY
    assert scalar_mul(E16, -2, P16) == point(313, 275)


@pytest.mark.parametrize("op", [lambda p: negate(E16, p), lambda p: add(E16, p, P16), lambda p: scalar_mul(E16, 2, p)])
def test_off_curve_input_rejected(op):
    with pytest.raises(DomainError):
        op(point(1, 1))


def _collinear_or_tangent(ctx, p, q, r):
    """Independent check of the chord rule: p, q and -r lie on one line
    which meets the cubic with multiplicities summing to three."""
    x1, y1, x2, y2, x3, y3 = p.x, p.y, q.x, q.y, r.x, -r.y
    if x1 != x2:
        slope = (y2 - y1) / (x2 - x1)
    else:
        # tangent: implicit derivative of Y^2 = f(X)
        slope = (3 * x1**2 + 2 * ctx.F * x1 + ctx.G) / (2 * y1)
    if y3 - y1 != slope * (x3 - x1):
        return False
    # the line's X-roots sum to slope^2 - F (Vieta)
    return x1 + x2 + x3 == slope**2 - ctx.F


def _multiples(ctx, gen, top=4):
    return [scalar_mul(ctx, n, gen) for n in range(-top, top + 1)]


def test_chord_rule_against_collinearity(registry):
    for h in CURVES:
        ctx = build_curve(h)
        pts = [p for g in registry.get(h) for p in _multiples(ctx, g, 3) if not p.is_infinity]
        for p in pts:
            for q in pts:
                r = add(ctx, p, q)
                if r.is_infinity:
                    assert p.x == q.x
                    continue
                assert on_curve(ctx, r)
                assert _collinear_or_tangent(ctx, p, q, r)


def _registered_points(registry):
    out = []
    for h in CURVES:
        ctx = build_curve(h)
        for g in registry.get(h):
            out.append((ctx, g))
    return out


@st.composite
def curve_triples(draw, registry):
    ctx, g = draw(st.sampled_from(_registered_points(registry)))
    gens = registry.get(ctx.h)
    pick = lambda: scalar_mul(ctx, draw(st.integers(-4, 4)), draw(st.sampled_from(gens)))  # noqa: E731
    return ctx, pick(), pick(), pick()


def test_group_laws_property(registry):
    @given(curve_triples(registry))
    def check(triple):
        ctx, p, q, r = triple
        assert add(ctx, p, q) == add(ctx, q, p)
        assert add(ctx, add(ctx, p, q), r) == add(ctx, p, add(ctx, q, r))
        assert add(ctx, p, INFINITY) == p
        assert add(ctx, p, negate(ctx, p)) == INFINITY
        assert on_curve(ctx, add(ctx, p, q))

    check()


def test_scalar_mul_additive_property(registry):
    @given(st.sampled_from(_registered_points(registry)), st.integers(-5, 5), st.integers(-5, 5))
    def check(cg, m, n):
        ctx, g = cg
        assert scalar_mul(ctx, m + n, g) == add(ctx, scalar_mul(ctx, m, g), scalar_mul(ctx, n, g))

    check()


def test_rst_canonical_form(registry):
    for ctx, g in _registered_points(registry):
        for n in range(1, 5):
            p = scalar_mul(ctx, n, g)
            r, s, t = to_rst(ctx, p)
            assert s > 0
            assert from_rst(r, s, t) == p
            assert (p.x * s * s).denominator == 1 and (p.y * s**3).denominator == 1


def test_rst_known_values():
    assert to_rst(E16, point(F(995860, 729), F(-727724440, 19683))) == (995860, 27, -727724440)
    ctx = build_curve(F(21, 8))
    assert to_rst(ctx, point(F(163241, 11552), F(46525193, 3511808))) == (326482, 152, 46525193)
    with pytest.raises(DomainError):
        to_rst(E16, INFINITY)
