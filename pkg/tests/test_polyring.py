import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosetpp import ZERO, Poly
from cosetpp import polyring as pr
from cosetpp.errors import BothZero, ZeroPoly
from conftest import field


def _polys(q, max_deg=6):
    coeff = st.integers(min_value=-1, max_value=q * q - 2)
    return st.lists(coeff, min_size=0, max_size=max_deg + 1).map(Poly)


def _points(q):
    return st.integers(min_value=-1, max_value=q * q - 2)


def test_poly_basics():
    p = Poly([3, ZERO, 0, ZERO])  # trailing zero trimmed
    assert p.degree() == 2
    assert p.coeffs == [3, ZERO, 0]
    assert p.support() == [0, 2]
    assert Poly.zero().is_zero() and Poly.zero().degree() == -1
    assert Poly.monomial(3, 5).coeffs == [ZERO, ZERO, ZERO, 5]
    assert Poly.one() == Poly([0])
    assert hash(Poly([1, 2])) == hash(Poly([1, 2]))


@given(f=_polys(5), g=_polys(5), x=_points(5))
@settings(max_examples=150, deadline=None)
def test_ring_laws_by_evaluation(f, g, x):
    ctx = field(5)
    assert pr.eval_poly(ctx, pr.add(ctx, f, g), x) == ctx.add(
        pr.eval_poly(ctx, f, x), pr.eval_poly(ctx, g, x)
    )
    assert pr.eval_poly(ctx, pr.mul(ctx, f, g), x) == ctx.mul(
        pr.eval_poly(ctx, f, x), pr.eval_poly(ctx, g, x)
    )
    assert pr.add(ctx, f, pr.neg(ctx, f)).is_zero()
    assert pr.sub(ctx, f, g) == pr.add(ctx, f, pr.neg(ctx, g))


@given(f=_polys(4), g=_polys(4))
@settings(max_examples=100, deadline=None)
def test_divmod(f, g):
    ctx = field(4)
    if g.is_zero():
        with pytest.raises(ZeroPoly):
            pr.divmod_poly(ctx, f, g)
        return
    quo, rem = pr.divmod_poly(ctx, f, g)
    assert rem.degree() < g.degree() or rem.is_zero()
    assert pr.add(ctx, pr.mul(ctx, quo, g), rem) == f


def test_gcd():
    ctx = field(5)
    f = pr.mul(ctx, Poly([0, 0]), Poly([1, ZERO, 0]))  # (1+X)(g + X^2)
    g = pr.mul(ctx, Poly([0, 0]), Poly([2, 0]))
    assert pr.gcd(ctx, f, g) == pr.monic(ctx, Poly([0, 0]))
    assert pr.gcd(ctx, f, Poly.zero()) == pr.monic(ctx, f)
    with pytest.raises(BothZero):
        pr.gcd(ctx, Poly.zero(), Poly.zero())


@given(f=_polys(5))
@settings(max_examples=100, deadline=None)
def test_conj_dual_involutions(f):
    ctx = field(5)
    assert pr.conj(ctx, pr.conj(ctx, f)) == f
    if f.is_zero():
        with pytest.raises(ZeroPoly):
            pr.dual(ctx, f)
    elif f.coeff(0) != ZERO:
        assert pr.dual(ctx, pr.dual(ctx, f)) == f


@given(f=_polys(5), i=st.integers(min_value=0, max_value=24))
@settings(max_examples=100, deadline=None)
def test_dual_eval_identity(f, i):
    # on mu_{q+1}: dual(f)(x) = x^deg(f) * f(x)^q
    ctx = field(5)
    if f.is_zero():
        return
    x = ctx.N // (ctx.q + 1) * (i % (ctx.q + 1))
    lhs = pr.eval_poly(ctx, pr.dual(ctx, f), x)
    fx = pr.eval_poly(ctx, f, x)
    rhs = ZERO if fx == ZERO else (x * f.degree() + fx * ctx.q) % ctx.N
    assert lhs == rhs


def test_self_dual_factor():
    ctx = field(5)
    # 1 + X is self-dual with factor 1
    assert pr.self_dual_factor(ctx, Poly([0, 0])) == ctx.one
    # factor must lie in mu_{q+1}
    for f in [Poly([0, 3, 0]), Poly([5, ZERO, 1])]:
        c = pr.self_dual_factor(ctx, f)
        if c is not None:
            assert ctx.in_mu(c, ctx.q + 1)
            assert pr.dual(ctx, f) == pr.scale(ctx, c, f)
    assert pr.self_dual_factor(ctx, Poly([ZERO, 0])) is None  # f(0) = 0
    # X + u has a factor exactly when u lies in mu_{q+1}
    for u in range(ctx.N):
        c = pr.self_dual_factor(ctx, Poly([u, 0]))
        assert (c is not None) == ctx.in_mu(u, ctx.q + 1)


def test_shift_and_reduce_cyclic():
    ctx = field(5)
    f = Poly([0, ZERO, 1])
    assert pr.shift(f, 2).coeffs == [ZERO, ZERO, 0, ZERO, 1]
    g = pr.reduce_cyclic(ctx, pr.shift(f, 3), 4)
    for i in range(4):  # agree at every 4th root of unity
        x = ctx.N // 4 * i
        assert pr.eval_poly(ctx, g, x) == pr.eval_poly(ctx, pr.shift(f, 3), x)
    assert g.degree() < 4


def test_text_and_json_round_trip():
    ctx = field(7)
    f = Poly([3, ZERO, 0, 17])
    assert pr.parse_poly(ctx, pr.format_poly(ctx, f)) == f
    assert pr.poly_from_json(pr.poly_to_json(f)) == f
    assert pr.poly_to_json(f) == [3, None, 0, 17]
    assert pr.format_poly(ctx, Poly.zero()) == "0"
    assert pr.parse_poly(ctx, "0") == Poly.zero()
