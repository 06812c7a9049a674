"""Sparse permutation polynomials X^r h(X^{q-1}) with h a binomial/trinomial.

The coefficient matrix [a_ij] of h has two or three nonzero entries; the
position of the extra entries routes the analysis into a small number of
cases, each either delegated to an exhaustive subgroup check, reduced to a
previously known family, or matched against one of four condition blocks
("Class 1".."Class 4").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import construction, oracle, polyring
from .errors import BadResidue, ShapeMismatch, UndefinedValue
from .fieldcore import ZERO, CosetSystem, FieldCtx
from .polyring import Poly


@dataclass
class SparseSpec:
    shape: str  # "binomial" | "trinomial"
    r: int
    d: int
    # binomial: h = 1 + a X^{u + v(q+1)/d}
    u: int = 0
    v: int = 0
    # trinomial: h = 1 + a X^{i1 + j1(q+1)/d} + b X^{i2 + j2(q+1)/d}
    i1: int = 0
    j1: int = 0
    i2: int = 0
    j2: int = 0
    a: int = ZERO
    b: int = ZERO

    def to_json(self, ctx: FieldCtx) -> dict:
        out = {"shape": self.shape, "r": self.r, "d": self.d}
        if self.shape == "binomial":
            out.update(u=self.u, v=self.v, a=ctx.format_elem(self.a))
        else:
            out.update(
                i1=self.i1, j1=self.j1, i2=self.i2, j2=self.j2,
                a=ctx.format_elem(self.a), b=ctx.format_elem(self.b),
            )
        return out

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: dict) -> "SparseSpec":
        if data["shape"] == "binomial":
            return cls(
                shape="binomial", r=data["r"], d=data["d"],
                u=data["u"], v=data["v"], a=ctx.parse_elem(data["a"]),
            )
        return cls(
            shape="trinomial", r=data["r"], d=data["d"],
            i1=data["i1"], j1=data["j1"], i2=data["i2"], j2=data["j2"],
            a=ctx.parse_elem(data["a"]), b=ctx.parse_elem(data["b"]),
        )


@dataclass
class ClassVerdict:
    tags: list[str]
    conditions: dict
    witnesses: dict
    is_pp: Optional[bool]
    notes: list[str] = field(default_factory=list)

    @property
    def tag(self) -> str:
        return self.tags[0] if self.tags else "NotApplicable"

    def to_json(self, ctx: FieldCtx) -> dict:
        wit = {
            key: (ctx.format_elem(val) if key.endswith("_elem") else val)
            for key, val in self.witnesses.items()
        }
        return {
            "tags": self.tags,
            "conditions": self.conditions,
            "witnesses": wit,
            "is_pp": self.is_pp,
            "notes": self.notes,
        }


# -- shared helpers --------------------------------------------------------


def h_of_spec(ctx: FieldCtx, sys: CosetSystem, spec: SparseSpec) -> Poly:
    c = sys.csize
    coeffs = {0: 0}
    if spec.shape == "binomial":
        coeffs[spec.u + spec.v * c] = spec.a
    else:
        coeffs[spec.i1 + spec.j1 * c] = spec.a
        coeffs[spec.i2 + spec.j2 * c] = spec.b
    top = max(coeffs)
    out = [ZERO] * (top + 1)
    for e, val in coeffs.items():
        out[e] = ctx.add(out[e], val)
    return Poly(out)


def _h_root_free(ctx: FieldCtx, h: Poly) -> bool:
    """gcd(h, X^{q+1} - 1) = 1, decided by scanning mu_{q+1} for roots."""
    step = ctx.N // (ctx.q + 1)
    return all(
        polyring.eval_poly(ctx, h, step * i % ctx.N) != ZERO
        for i in range(ctx.q + 1)
    )


def _mu_index(ctx: FieldCtx, sys: CosetSystem, x: int) -> Optional[int]:
    """The j with x = eps^j, or None if x is not in mu_d."""
    if x < 0 or x % (ctx.N // sys.d):
        return None
    return (x // (ctx.N // sys.d)) % sys.d


def _permutes(values: list[int], d: int) -> bool:
    return sorted(v % d for v in values) == list(range(d))


def _delegate_mu(ctx: FieldCtx, r: int, hsmall: Poly, power: int, n: int) -> bool:
    """Does x -> x^r hsmall(x)^power permute mu_n?  Roots of hsmall refute."""

    def g(x: int) -> int:
        v = polyring.eval_poly(ctx, hsmall, x)
        if v == ZERO:
            raise UndefinedValue("root inside the subgroup")
        return (x * r + v * power) % ctx.N

    try:
        return oracle.permutes_mu(ctx, g, n)
    except UndefinedValue:
        return False


def _framework_pp(ctx: FieldCtx, sys: CosetSystem, h: Poly, r: int) -> Optional[bool]:
    """PP verdict from the per-coset monomial profile, when one exists.

    False when gcd(r, q-1) > 1 or h has a root in mu_{q+1} (both force a
    collision); None when the induced map is not monomial on every coset,
    which puts the polynomial outside this framework.
    """
    if math.gcd(r, ctx.q - 1) != 1:
        return False
    if not _h_root_free(ctx, h):
        return False
    profile = construction.monomial_profile(ctx, sys, h, r)
    if profile is None:
        return None
    ok, _ = oracle.coset_criterion(sys, profile)
    return ok


# -- binomials -------------------------------------------------------------


def binomial_criterion(ctx: FieldCtx, r: int, l: int, a: int) -> dict:
    """The closed-form test for X^r(1 + aX^{l(q-1)}) with a in mu_{q+1}.

    Returns per-condition booleans; the polynomial permutes GF(q^2) iff all
    three hold.
    """
    q = ctx.q
    neg_a = ctx.neg(a)
    k = (q + 1) // math.gcd(q + 1, l)
    return {
        "gcd_r_qm1": math.gcd(r, q - 1) == 1,
        "gcd_rl_qp1": math.gcd(r - l, q + 1) == 1,
        "neg_a_power": ctx.power(neg_a, k) != ctx.one,
    }


def binomial_check(ctx: FieldCtx, sys: CosetSystem, spec: SparseSpec) -> ClassVerdict:
    if spec.shape != "binomial":
        raise ShapeMismatch("binomial spec required")
    c = sys.csize
    d = sys.d
    if not (0 <= spec.u < c and 0 <= spec.v < d) or (spec.u, spec.v) == (0, 0):
        raise ShapeMismatch(f"(u, v) = ({spec.u}, {spec.v}) out of range")
    if spec.a == ZERO:
        raise ShapeMismatch("a must be nonzero")
    q = ctx.q
    r = spec.r
    a = spec.a

    if spec.u == 0:
        # pure mu_d factor: delegate to the subgroup
        hs = Poly([0] + [ZERO] * (spec.v - 1) + [a])
        conds = {
            "gcd_r": math.gcd(r, ctx.N // d) == 1,
            "mu_d_permutes": _delegate_mu(ctx, r, hs, ctx.N // d, d),
        }
        return ClassVerdict(
            tags=["Binomial-Case1"],
            conditions=conds,
            witnesses={},
            is_pp=all(conds.values()),
        )

    l = spec.u + spec.v * c
    if ctx.in_mu(a, q + 1):
        conds = binomial_criterion(ctx, r, l, a)
        return ClassVerdict(
            tags=["Binomial-Case2-SelfDual"],
            conditions=conds,
            witnesses={"l": l},
            is_pp=all(conds.values()),
        )

    if c % 2 == 0 and spec.u == c // 2:
        hs = Poly([0] + [ZERO] * (2 * spec.v) + [a])  # 1 + a X^{1+2v}
        conds = {
            "gcd_r": math.gcd(r, ctx.N // (2 * d)) == 1,
            "mu_2d_permutes": _delegate_mu(ctx, r, hs, ctx.N // (2 * d), 2 * d),
        }
        return ClassVerdict(
            tags=["Binomial-Case2-Half"],
            conditions=conds,
            witnesses={"l": l},
            is_pp=all(conds.values()),
        )

    # h is outside the framework: a not in mu_{q+1} and u != (q+1)/2d
    return ClassVerdict(
        tags=["NotApplicable"],
        conditions={},
        witnesses={"l": l},
        is_pp=_framework_pp(ctx, sys, h_of_spec(ctx, sys, spec), r),
        notes=["binomial shape admits no per-coset decomposition"],
    )


# -- trinomial class condition blocks --------------------------------------


def _delta(k: int) -> int:
    return k % 2


def class1_check(ctx: FieldCtx, sys: CosetSystem, spec: SparseSpec) -> ClassVerdict:
    q, d, c, r = ctx.q, sys.d, sys.csize, spec.r
    a, b, i2, j2 = spec.a, spec.b, spec.i2, spec.j2
    conds = {
        "shape": spec.i1 == 0 and 0 < i2 < c and 0 <= j2 < d,
        "j1_is_half_d": d % 2 == 0 and spec.j1 == d // 2,
    }
    wit: dict = {}
    conds["a_pow_qm1_is_minus1"] = a != ZERO and ctx.power(a, q - 1) == ctx.neg_one
    one_minus_a = ctx.sub(0, a)
    ratio_ok = False
    if one_minus_a != ZERO and b != ZERO:
        quot = ctx.div(one_minus_a, b)
        ratio_ok = ctx.in_mu(quot, q + 1)
        if ratio_ok:
            wit["u"] = _mu_index(ctx, sys, ctx.power(quot, c))
    conds["quotient_in_mu"] = ratio_ok
    h = h_of_spec(ctx, sys, spec)
    conds["h_coprime"] = _h_root_free(ctx, h)
    conds["gcd_r_qm1"] = math.gcd(r, q - 1) == 1
    conds["gcd_e"] = math.gcd(r - i2, c) == 1
    map_ok = False
    if conds["a_pow_qm1_is_minus1"] and one_minus_a != ZERO:
        vv = _mu_index(ctx, sys, ctx.power(ctx.div(ctx.add(0, a), one_minus_a), c))
        if vv is not None:
            wit["v"] = vv
            u = wit.get("u", 0)
            values = [(-j2 * c + r - i2) * k + _delta(k) * vv + u for k in range(d)]
            wit["map_values"] = [v % d for v in values]
            map_ok = _permutes(values, d)
    conds["map_permutes"] = map_ok
    return ClassVerdict(
        tags=["Class1"], conditions=conds, witnesses=wit, is_pp=all(conds.values())
    )


def class2_check(ctx: FieldCtx, sys: CosetSystem, spec: SparseSpec) -> ClassVerdict:
    q, d, c, r = ctx.q, sys.d, sys.csize, spec.r
    b, i2, j2 = spec.b, spec.i2, spec.j2
    conds = {
        "shape": spec.i1 == 0 and 0 < i2 < c and 0 <= j2 < d,
        "j1_is_half_d": d % 2 == 0 and spec.j1 == d // 2,
        "a_is_minus1": spec.a == ctx.neg_one,
    }
    wit: dict = {}
    theta = None
    if b != ZERO:
        two_over_b = ctx.div(ctx.from_int(2), b)
        theta = _mu_index(ctx, sys, ctx.power(two_over_b, c))
    conds["theta_exists"] = theta is not None
    if theta is not None:
        wit["theta"] = theta
    h = h_of_spec(ctx, sys, spec)
    conds["h_coprime"] = _h_root_free(ctx, h)
    conds["gcd_r_qm1"] = math.gcd(r, q - 1) == 1
    conds["gcd_e"] = math.gcd(r - i2, c) == 1 and math.gcd(r - 2 * i2, c) == 1
    map_ok = False
    if theta is not None:
        values = [
            (-2 * j2 * c + r - 2 * i2) * k + 2 * theta
            if k % 2 == 0
            else (-j2 * c + r - i2) * k + theta
            for k in range(d)
        ]
        wit["map_values"] = [v % d for v in values]
        map_ok = _permutes(values, d)
    conds["map_permutes"] = map_ok
    return ClassVerdict(
        tags=["Class2"], conditions=conds, witnesses=wit, is_pp=all(conds.values())
    )


def class3_check(ctx: FieldCtx, sys: CosetSystem, spec: SparseSpec) -> ClassVerdict:
    q, d, c, r = ctx.q, sys.d, sys.csize, spec.r
    b, i2, j1, j2 = spec.b, spec.i2, spec.j1, spec.j2
    conds = {
        "shape": spec.i1 == 0 and 0 < i2 < c and 0 <= j2 < d,
        "j1_third_d": d % 3 == 0 and j1 in (d // 3, 2 * d // 3),
        "a_is_minus1": spec.a == ctx.neg_one,
    }
    wit: dict = {}
    eta = None
    if b != ZERO and conds["j1_third_d"]:
        val = ctx.sub(0, sys.epsilon_pow(j1))
        if val != ZERO:
            eta = _mu_index(ctx, sys, ctx.power(ctx.div(val, b), c))
    conds["eta_exists"] = eta is not None
    if eta is not None:
        wit["eta"] = eta
    h = h_of_spec(ctx, sys, spec)
    conds["h_coprime"] = _h_root_free(ctx, h)
    conds["gcd_r_qm1"] = math.gcd(r, q - 1) == 1
    conds["gcd_e"] = math.gcd(r - i2, c) == 1 and math.gcd(r - 2 * i2, c) == 1
    map_ok = False
    if eta is not None:
        shift = -j1 * c + (q + 1) // math.gcd(2, d)
        values = [
            (-2 * j2 * c + r - 2 * i2) * k + shift + 2 * eta
            if k % 3 == 0
            else (-j2 * c + r - i2) * k + shift + eta
            for k in range(d)
        ]
        wit["map_values"] = [v % d for v in values]
        map_ok = _permutes(values, d)
    conds["map_permutes"] = map_ok
    return ClassVerdict(
        tags=["Class3"], conditions=conds, witnesses=wit, is_pp=all(conds.values())
    )


def classN_check(ctx: FieldCtx, sys: CosetSystem, spec: SparseSpec, N: int) -> ClassVerdict:
    if spec.shape != "trinomial":
        raise ShapeMismatch("trinomial spec required")
    if spec.a == ZERO or spec.b == ZERO:
        raise ShapeMismatch("a and b must be nonzero")
    if N == 1:
        return class1_check(ctx, sys, spec)
    if N == 2:
        return class2_check(ctx, sys, spec)
    if N == 3:
        return class3_check(ctx, sys, spec)
    raise ValueError("N must be 1, 2 or 3")


# -- the Class-4 table ------------------------------------------------------


def _cube_roots(ctx: FieldCtx, target: int) -> list[int]:
    return ctx.root_exps(3, target)


def _spec_from_terms(ctx: FieldCtx, sys: CosetSystem, r: int, term_a, term_b) -> SparseSpec:
    """Build a trinomial spec from two (exponent, coefficient) terms of h."""
    (ea, ca), (eb, cb) = sorted([term_a, term_b], key=lambda tc: tc[0] % sys.csize)
    c = sys.csize
    return SparseSpec(
        shape="trinomial", r=r, d=sys.d,
        i1=ea % c, j1=ea // c, i2=eb % c, j2=eb // c, a=ca, b=cb,
    )


def class4_generate(ctx: FieldCtx, q: int, r: int) -> list[SparseSpec]:
    """All trinomial specs of the six-row family for the given (q, r).

    q must be 5 or 11 mod 18; the row is selected by r mod 3.  Root and sign
    choices are expanded, roots in increasing exponent order.
    """
    if q % 18 not in (5, 11):
        raise BadResidue(f"q = {q} is not 5 or 11 mod 18")
    if q != ctx.q:
        raise BadResidue("field context does not match q")
    d = (q + 1) // 3
    sys = CosetSystem(ctx, d)
    l = (q + 1) // 6
    rr = r % 3
    out = []
    if q % 18 == 5:
        ea0, eb0 = l, 5 * l  # r = 0 mod 3 row: exponents of a and b terms
        ea1, eb1 = 4 * l, 5 * l
        ea2, eb2 = l, 2 * l
    else:
        ea0, eb0 = 5 * l, l
        ea1, eb1 = 2 * l, l
        ea2, eb2 = 5 * l, 4 * l
    if rr == 0:
        for a in _cube_roots(ctx, ctx.one) + _cube_roots(ctx, ctx.neg_one):
            b = ctx.neg(ctx.inv(a))
            out.append(_spec_from_terms(ctx, sys, r, (ea0, a), (eb0, b)))
    elif rr == 1:
        for a in _cube_roots(ctx, ctx.neg_one):
            for sign in (0, ctx.neg_one):
                b = ctx.mul(sign, ctx.power(a, 2))
                out.append(_spec_from_terms(ctx, sys, r, (ea1, a), (eb1, b)))
    else:
        for b in _cube_roots(ctx, ctx.neg_one):
            for sign in (0, ctx.neg_one):
                a = ctx.mul(sign, ctx.power(b, 2))
                out.append(_spec_from_terms(ctx, sys, r, (ea2, a), (eb2, b)))
    return out


def class4_normal_form(ctx: FieldCtx, f: Poly) -> Optional[dict]:
    """Match f against u*X^s*(1 + c*X^m - c^2*X^{2m}), m = (q^2-1)/6.

    Returns {u, s, c} (u, c as exponents) or None.  s is reported as the
    smallest matching exponent.
    """
    if ctx.N % 6:
        return None
    m = ctx.N // 6
    terms = {e: v for e, v in enumerate(f.coeffs) if v != ZERO}
    if len(terms) != 3:
        return None
    for s in sorted(terms):
        e1, e2 = (s + m) % ctx.N, (s + 2 * m) % ctx.N
        if e1 not in terms or e2 not in terms:
            continue
        u = terms[s]
        c = ctx.div(terms[e1], u)
        if not ctx.in_mu(c, 6):
            continue
        if terms[e2] == ctx.mul(u, ctx.neg(ctx.power(c, 2))):
            return {"u": u, "s": s, "c": c}
    return None


# -- the full trinomial decision tree --------------------------------------


def trinomial_classify(ctx: FieldCtx, sys: CosetSystem, spec: SparseSpec) -> ClassVerdict:
    if spec.shape != "trinomial":
        raise ShapeMismatch("trinomial spec required")
    q, d, c, r = ctx.q, sys.d, sys.csize, spec.r
    i1, j1, i2, j2, a, b = spec.i1, spec.j1, spec.i2, spec.j2, spec.a, spec.b
    if a == ZERO or b == ZERO:
        raise ShapeMismatch("a and b must be nonzero")
    if not (0 <= i1 <= i2 < c and 0 <= j1 < d and 0 <= j2 < d):
        raise ShapeMismatch("indices out of range")
    positions = {(0, 0), (i1, j1), (i2, j2)}
    if len(positions) != 3:
        raise ShapeMismatch("the three entries must occupy distinct positions")

    h = h_of_spec(ctx, sys, spec)
    tags: list[str] = []
    notes: list[str] = []
    wit: dict = {}
    conds: dict = {}

    if i1 == 0 and i2 == 0:
        hs_coeffs = [ZERO] * (max(j1, j2) + 1)
        hs_coeffs[0] = 0
        hs_coeffs[j1] = ctx.add(hs_coeffs[j1], a)
        hs_coeffs[j2] = ctx.add(hs_coeffs[j2], b)
        hs = Poly(hs_coeffs)
        conds = {
            "gcd_r": math.gcd(r, ctx.N // d) == 1,
            "mu_d_permutes": _delegate_mu(ctx, r, hs, ctx.N // d, d),
        }
        return ClassVerdict(
            tags=["Trinomial-Case1"], conditions=conds, witnesses=wit,
            is_pp=all(conds.values()),
        )

    if i1 == 0:
        # Case 2: is 1 + a*eps^{j1 k} ever zero?
        degenerate = [
            k for k in range(d)
            if ctx.add(0, ctx.mul(a, sys.epsilon_pow(j1 * k))) == ZERO
        ]
        if not degenerate:
            tags.append("Trinomial-Case2.1")
            sub = class1_check(ctx, sys, spec)
            if sub.is_pp:
                tags.insert(0, "Class1")
                wit.update(sub.witnesses)
                conds.update(sub.conditions)
        else:
            tags.append("Trinomial-Case2.2")
            wit["degenerate_k"] = degenerate
            if a != ctx.neg_one:
                notes.append(
                    "a != -1; substituting X -> lambda*X normalizes to a = -1"
                )
            order = d // math.gcd(j1, d)
            wit["order_eps_j1"] = order
            if order == 2:
                sub = class2_check(ctx, sys, spec)
                if sub.is_pp:
                    tags.insert(0, "Class2")
                    wit.update(sub.witnesses)
                    conds.update(sub.conditions)
            elif order == 3:
                sub = class3_check(ctx, sys, spec)
                if sub.is_pp:
                    tags.insert(0, "Class3")
                    wit.update(sub.witnesses)
                    conds.update(sub.conditions)
        if c % 2 == 0 and i2 == c // 2:
            # boundary: interior tau forces t = tau = i2 = (q+1)/2d
            hs_coeffs = [ZERO] * (max(2 * j1, 2 * j2 + 1) + 1)
            hs_coeffs[0] = 0
            hs_coeffs[2 * j1] = ctx.add(hs_coeffs[2 * j1], a)
            hs_coeffs[2 * j2 + 1] = ctx.add(hs_coeffs[2 * j2 + 1], b)
            hs = Poly(hs_coeffs)
            conds["gcd_r_half"] = math.gcd(r, ctx.N // (2 * d)) == 1
            conds["mu_2d_permutes"] = _delegate_mu(
                ctx, r, hs, ctx.N // (2 * d), 2 * d
            )
            tags.append("Trinomial-Case2-Half")
            return ClassVerdict(
                tags=tags, conditions=conds, witnesses=wit,
                is_pp=conds["gcd_r_half"] and conds["mu_2d_permutes"],
                notes=notes,
            )
    else:
        tags.append("Trinomial-Case3")
        # previously known reductions (self-dual quadratic-in-X^l forms)
        if 2 * i1 == i2 and (2 * j1 - j2) % d == 0 and b == ctx.power(a, 1 - q):
            tags.append("PreviouslyKnown")
            notes.append("reduces to a self-dual 1 + aX^l + bX^{2l}")
        if (
            c % 2 == 1
            and i1 == (c - 1) // 2
            and i2 == (c + 1) // 2
            and (j1 + j2 + 1) % d == 0
            and a == ctx.frobenius(b)
        ):
            tags.append("PreviouslyKnown")
            notes.append("reduces to a self-dual b + X^l + aX^{2l} shift")
        if (
            c % 2 == 1
            and i1 == 1
            and i2 == (c + 1) // 2
            and (2 * j2 - j1 + 1) % d == 0
            and a == ctx.power(b, 1 - q)
        ):
            tags.append("PreviouslyKnown")
            notes.append("reduces to a self-dual 1 + bX^l + aX^{2l}")
        if c == 3 and i1 == 1 and i2 == 2 and q % 18 in (5, 11):
            for cand in class4_generate(ctx, q, r):
                if (cand.i1, cand.j1, cand.i2, cand.j2, cand.a, cand.b) == (
                    i1, j1, i2, j2, a, b,
                ):
                    tags.insert(0, "Class4")
                    break

    verdict = _framework_pp(ctx, sys, h, r)
    if verdict is None:
        tags.append("NotApplicable")
        notes.append("induced map is not monomial on every coset")
    profile = construction.monomial_profile(ctx, sys, h, r)
    if profile is not None:
        wit["e"] = [row.e for row in profile]
        wit["pi"] = [row.pi for row in profile]
    return ClassVerdict(
        tags=tags, conditions=conds, witnesses=wit, is_pp=verdict, notes=notes
    )
