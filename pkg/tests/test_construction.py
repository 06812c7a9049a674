import itertools
import math
import random

import pytest

from cosetpp import ZERO, Poly, coset_system
from cosetpp import construction as con
from cosetpp import oracle
from cosetpp import polyring as pr
from cosetpp.errors import CosetPPError, DegreeMismatch, EmptyFamily, InvalidTau
from conftest import admissible_r, field


def test_tau_choices():
    assert con.tau_choices(8, 0) == [0]
    assert con.tau_choices(8, 5) == [0, 3, 4, 5]
    assert con.tau_choices(8, 8) == [0, 1, 2, 3, 4, 5, 6, 7, 8]
    assert con.tau_choices(2, 1) == [0, 1]


def test_omega_and_m_count():
    q, d, r = 5, 2, 3
    omega = con.omega_set(q, d, r)
    c = (q + 1) // d
    assert all(s + t < c for s, t, _ in omega)
    assert all(math.gcd(r - 2 * s - t + tau, c) == 1 for s, t, tau in omega)
    for t in range(c):
        for tau in con.tau_choices(c, t):
            assert con.m_count(q, d, r, t, tau) == sum(
                1 for s, tt, tt2 in omega if (tt, tt2) == (t, tau)
            )


@pytest.mark.parametrize("q,d", [(3, 2), (4, 1), (5, 2), (5, 3), (7, 4), (8, 3)])
def test_family_counts_match_enumeration(q, d):
    ctx = field(q)
    sys = coset_system(ctx, d)
    c = sys.csize
    for k in range(min(d, 2)):
        for t in range(min(c, 3)):
            for tau in con.tau_choices(c, t):
                for lam in (sys.cosets[k % d][0], sys.cosets[(k + 1) % d][0]):
                    members = list(con.enumerate_L(sys, k, t, tau, lam))
                    assert len(members) == con.count_L(sys, k, t, tau, lam)
                    assert len(members) <= con.family_size(sys, k, t, tau, lam)
                    for L in members[:20]:
                        assert con.membership(sys, k, t, tau, lam, L)


def test_membership_structure():
    ctx = field(5)
    sys = coset_system(ctx, 2)  # c = 3
    lam = sys.cosets[0][0]
    members = list(con.enumerate_L(sys, 0, 2, 0, lam))
    assert members
    for L in members:
        # tau = 0: dual(L) = lam * L and no root in A_0
        assert pr.dual(ctx, L) == pr.scale(ctx, lam, L)
        assert all(pr.eval_poly(ctx, L, x) != ZERO for x in sys.cosets[0])
    # perturbing the top coefficient breaks the duality relation
    L = members[0]
    bad = Poly(L.coeffs[:-1] + [ctx.mul(1, L.coeffs[-1])])
    assert not con.membership(sys, 0, 2, 0, lam, bad)
    with pytest.raises(DegreeMismatch):
        con.membership(sys, 0, 1, 0, lam, L)
    with pytest.raises(InvalidTau):
        con.membership(sys, 0, 2, 5, lam, L)


def test_interior_tau_split():
    ctx = field(5)
    sys = coset_system(ctx, 2)  # c = 3
    lam = sys.cosets[0][0]
    k = 1
    for L in con.enumerate_L(sys, k, 2, 1, lam):
        P = Poly(L.coeffs[:2])
        Q = Poly(L.coeffs[2:])
        assert pr.dual(ctx, P) == pr.scale(ctx, lam, P)
        mu = (lam + sys.epsilon_pow(k)) % ctx.N
        assert pr.dual(ctx, Q) == pr.scale(ctx, mu, Q)


def test_sample_L_deterministic_and_member():
    ctx = field(7)
    sys = coset_system(ctx, 2)
    lam = sys.cosets[1][0]
    a = con.sample_L(sys, 0, 3, 0, lam, random.Random(42))
    b = con.sample_L(sys, 0, 3, 0, lam, random.Random(42))
    assert a == b
    assert con.membership(sys, 0, 3, 0, lam, a)
    with pytest.raises(EmptyFamily):
        con.sample_L(sys, 0, 1, 0, 1, random.Random(0))  # lam not in mu_{q+1}


def test_lift_exponents():
    ctx = field(5)
    h = Poly([0, ZERO, 7])  # 1 + g^7 X^2
    f = con.lift(ctx, 3, h)
    assert f.support() == sorted({3 % ctx.N, (3 + 2 * 4) % ctx.N})
    assert f.coeff(3) == 0 and f.coeff(11) == 7


def _random_inputs(q, d, r, n, seed=0):
    ctx = field(q)
    sys = coset_system(ctx, d)
    rng = random.Random(seed)
    return ctx, sys, [con.random_input(ctx, sys, r, rng) for _ in range(n)]


def test_assemble_round_trip():
    ctx, sys, inputs = _random_inputs(7, 4, 5, 10)
    for inp in inputs:
        assert con.validate_input(ctx, sys, inp) == []
        cert = con.assemble(ctx, sys, inp)
        # the coefficient matrix transforms back to the M columns X^s L
        mat = con.h_matrix(sys, cert.h)
        for row in inp.rows:
            col = [
                sum_col for sum_col in _forward_column(ctx, sys, mat, row.k)
            ]
            expected = [ZERO] * sys.csize
            for i in range(row.t + 1):
                expected[row.s + i] = row.L.coeff(i)
            assert col == expected
        prof = con.monomial_profile(ctx, sys, cert.h, inp.r)
        assert prof is not None
        for got, row in zip(prof, inp.rows):
            assert (got.s, got.t, got.tau, got.lam) == (
                row.s, row.t, row.tau, row.lam
            )
            assert got.pi == row.pi and got.e == inp.e(row.k)


def _forward_column(ctx, sys, mat, k):
    col = []
    for i in range(sys.csize):
        acc = ZERO
        for j in range(sys.d):
            acc = ctx.add(acc, ctx.mul(mat[i][j], sys.epsilon_pow(j * k)))
        col.append(acc)
    return col


def test_assemble_outputs_are_permutations():
    for q, d in [(5, 2), (5, 3), (8, 3), (9, 5)]:
        for r in admissible_r(q)[:2]:
            ctx, sys, inputs = _random_inputs(q, d, r, 5, seed=q * 100 + d)
            for inp in inputs:
                cert = con.assemble(ctx, sys, inp)
                assert oracle.is_permutation(ctx, cert.f).is_permutation


def test_validate_rejects_corruption():
    ctx, sys, inputs = _random_inputs(7, 4, 5, 1)
    inp = inputs[0]
    good = con.validate_input(ctx, sys, inp)
    assert good == []

    bad = con.AlgoInput(r=2, d=inp.d, rows=inp.rows)  # gcd(2, 6) != 1
    assert any("gcd(r" in e for e in con.validate_input(ctx, sys, bad))
    with pytest.raises(CosetPPError):
        con.assemble(ctx, sys, bad)

    row0 = inp.rows[0]
    rows = [con.InputRow(k=0, s=row0.s, t=row0.t, tau=row0.tau,
                         pi=(row0.pi + 1) % sys.d, lam=row0.lam, L=row0.L)]
    rows += inp.rows[1:]
    bad = con.AlgoInput(r=inp.r, d=inp.d, rows=rows)
    errs = con.validate_input(ctx, sys, bad)
    assert any("not in A_" in e for e in errs)


def test_scalar_rescaling_preserves_pp():
    # replacing L_k by w*L_k with w in the small subgroup keeps every
    # per-coset invariant, so the assembled f is still a permutation
    ctx = field(5)
    sys = coset_system(ctx, 2)
    rng = random.Random(5)
    inp = con.random_input(ctx, sys, 3, rng)
    w = sys.cosets[0][1]  # mu_{(q+1)/d} elements sit in A_0
    rows = []
    for row in inp.rows:
        # w*L stays in the same family when w^{q+1} = 1 and dual scales match
        scaled = pr.scale(ctx, w, row.L)
        # dual(w*L) = w^{q-1} * dual(L), so lambda picks up the factor w^{q-1}
        lam2 = (row.lam + (ctx.q - 1) * w) % ctx.N
        assert con.membership(sys, row.k, row.t, row.tau, lam2, scaled)
        rows.append(
            con.InputRow(k=row.k, s=row.s, t=row.t, tau=row.tau,
                         pi=row.pi, lam=lam2, L=scaled)
        )
    inp2 = con.AlgoInput(r=inp.r, d=inp.d, rows=rows)
    assert con.validate_input(ctx, sys, inp2) == []
    cert = con.assemble(ctx, sys, inp2)
    assert oracle.is_permutation(ctx, cert.f).is_permutation


def test_random_input_determinism():
    ctx = field(9)
    sys = coset_system(ctx, 2)
    a = con.random_input(ctx, sys, 3, random.Random(7))
    b = con.random_input(ctx, sys, 3, random.Random(7))
    assert a.to_json(ctx) == b.to_json(ctx)


def test_input_json_round_trip():
    ctx, sys, inputs = _random_inputs(5, 3, 3, 3)
    for inp in inputs:
        again = con.AlgoInput.from_json(ctx, inp.to_json(ctx))
        assert again.to_json(ctx) == inp.to_json(ctx)


def _pointwise_member(ctx, sys, k, tau, lam, L):
    # the defining relation: L nonvanishing on A_k and dual(L) = lambda X^tau L there
    dL = pr.dual(ctx, L)
    for x in sys.cosets[k]:
        Lx = pr.eval_poly(ctx, L, x)
        if Lx == ZERO:
            return False
        if pr.eval_poly(ctx, dL, x) != (lam + tau * x + Lx) % ctx.N:
            return False
    return True


@pytest.mark.parametrize("q,d", [(3, 2), (5, 2)])
def test_membership_equals_pointwise_relation(q, d):
    # the structural description of L_k(t, tau; lambda) (self-dual P/Q blocks
    # with a zero gap) matches the pointwise relation on the coset, scanned
    # over every polynomial of degree t with nonzero constant term
    ctx = field(q)
    sys = coset_system(ctx, d)
    c = sys.csize
    k = d - 1
    lams = [(q - 1) * j % ctx.N for j in (0, 1, 3)][: 3 if q == 5 else 2]
    for t in range(c):
        for tau in con.tau_choices(c, t):
            for lam in lams:
                for mid in itertools.product(range(-1, ctx.N),
                                             repeat=max(t - 1, 0)):
                    for c0 in range(ctx.N):
                        if t == 0:
                            cands = [Poly([c0])]
                        else:
                            cands = [Poly([c0, *mid, lead])
                                     for lead in range(ctx.N)]
                        for L in cands:
                            assert con.membership(sys, k, t, tau, lam, L) == \
                                _pointwise_member(ctx, sys, k, tau, lam, L)


def _h_from_columns(ctx, sys, cols):
    # the interpolation step of the assembly, starting from raw columns
    c, d = sys.csize, sys.d
    inv_d = ctx.inv(ctx.from_int(d))
    coeffs = [ZERO] * (c * d)
    for i in range(c):
        for j in range(d):
            acc = ZERO
            for k in range(d):
                acc = ctx.add(acc, ctx.mul(cols[k][i], sys.epsilon_pow(-k * j)))
            coeffs[i + j * c] = ctx.mul(inv_d, acc)
    return Poly(coeffs)


def test_h_roots_track_column_roots():
    # gcd(h, X^{q+1} - 1) = 1 iff no column vanishes on its coset, because
    # h restricted to A_k is x^{s_k} L_k(x)
    ctx = field(7)
    sys = coset_system(ctx, 4)
    cert = con.assemble(ctx, sys, con.random_input(ctx, sys, 5, random.Random(5)))
    for row in cert.profile:
        for x in sys.cosets[row.k]:
            assert pr.eval_poly(ctx, cert.h, x) == ctx.mul(
                (row.s * x) % ctx.N, pr.eval_poly(ctx, row.L, x))
    xq1 = Poly([ctx.neg_one] + [ZERO] * ctx.q + [ctx.one])
    assert pr.gcd(ctx, cert.h, xq1).degree() == 0
    # force a root: column 0 becomes X - x0 with x0 in A_0
    x0 = sys.cosets[0][0]
    cols = [[ZERO] * sys.csize for _ in range(sys.d)]
    cols[0][0] = ctx.neg(x0)
    cols[0][1] = ctx.one
    for k in range(1, sys.d):
        cols[k][0] = ctx.one
    h_bad = _h_from_columns(ctx, sys, cols)
    assert pr.eval_poly(ctx, h_bad, x0) == ZERO
    assert pr.gcd(ctx, h_bad, xq1).degree() >= 1


def test_coset_criterion_both_directions():
    # constant columns a_k give the coset map k -> (a_k mod 2) + r*k at
    # q = 5, d = 2, r = 1; pick constants that make it a permutation and
    # constants that make it collide, and check criterion = brute force
    ctx = field(5)
    sys = coset_system(ctx, 2)
    for a0, a1, want in [(2, 4, True), (2, 3, False)]:
        profile = [{"e": 1, "pi": a0 % 2}, {"e": 1, "pi": a1 % 2}]
        ok, breakdown = oracle.coset_criterion(sys, profile)
        assert ok is want
        h = _h_from_columns(ctx, sys, [[a0, ZERO, ZERO], [a1, ZERO, ZERO]])
        f = con.lift(ctx, 1, h)
        assert oracle.is_permutation(ctx, f).is_permutation is want
        if not want:
            assert not breakdown["map_permutes"]
