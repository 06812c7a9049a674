"""Dense polynomials over GF(q^2) in discrete-log coefficient form.

A Poly wraps a list of coefficient exponents (``fieldcore.ZERO`` = -1 for a
zero coefficient), index = exponent of X.  Trailing zeros are never stored,
so ``len(coeffs) - 1`` is the degree; the zero polynomial has an empty list
and degree() reports -1.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import BothZero, ZeroPoly
from .fieldcore import ZERO, FieldCtx


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == ZERO:
            c.pop()
        self.coeffs = c

    @classmethod
    def zero(cls) -> "Poly":
        return cls([])

    @classmethod
    def one(cls) -> "Poly":
        return cls([0])

    @classmethod
    def monomial(cls, e: int, coeff: int = 0) -> "Poly":
        if coeff == ZERO:
            return cls([])
        return cls([ZERO] * e + [coeff])

    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c != ZERO]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        return f"Poly({self.coeffs})"


def add(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    n = max(len(f.coeffs), len(g.coeffs))
    return Poly([ctx.add(f.coeff(i), g.coeff(i)) for i in range(n)])


def neg(ctx: FieldCtx, f: Poly) -> Poly:
    return Poly([ctx.neg(c) for c in f.coeffs])


def sub(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    return add(ctx, f, neg(ctx, g))


def scale(ctx: FieldCtx, c: int, f: Poly) -> Poly:
    if c == ZERO:
        return Poly.zero()
    return Poly([ctx.mul(c, a) for a in f.coeffs])


def shift(f: Poly, s: int) -> Poly:
    """Multiply by X^s."""
    if f.is_zero():
        return Poly.zero()
    return Poly([ZERO] * s + f.coeffs)


def mul(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        return Poly.zero()
    out = [ZERO] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a == ZERO:
            continue
        for j, b in enumerate(g.coeffs):
            if b == ZERO:
                continue
            out[i + j] = ctx.add(out[i + j], (a + b) % ctx.N)
    return Poly(out)


def divmod_poly(ctx: FieldCtx, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if g.is_zero():
        raise ZeroPoly("polynomial division by zero")
    rem = list(f.coeffs)
    dg = g.degree()
    lead_inv = ctx.inv(g.coeffs[-1])
    quot = [ZERO] * max(len(rem) - dg, 0)
    while len(rem) - 1 >= dg:
        if rem[-1] == ZERO:
            rem.pop()
            continue
        c = ctx.mul(rem[-1], lead_inv)
        k = len(rem) - 1 - dg
        quot[k] = c
        for i, b in enumerate(g.coeffs):
            if b != ZERO:
                rem[k + i] = ctx.sub(rem[k + i], ctx.mul(c, b))
        rem.pop()
    return Poly(quot), Poly(rem)


def monic(ctx: FieldCtx, f: Poly) -> Poly:
    if f.is_zero():
        return f
    return scale(ctx, ctx.inv(f.coeffs[-1]), f)


def gcd(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not g.is_zero():
        _, r = divmod_poly(ctx, f, g)
        f, g = g, r
    return monic(ctx, f)


def eval_poly(ctx: FieldCtx, f: Poly, x: int) -> int:
    """Horner evaluation; x and the result are discrete-log elements."""
    acc = ZERO
    for c in reversed(f.coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def conj(ctx: FieldCtx, f: Poly) -> Poly:
    """Coefficient-wise a -> a^q; an involution."""
    return Poly([ctx.frobenius(c) for c in f.coeffs])


def dual(ctx: FieldCtx, f: Poly) -> Poly:
    """X^{deg f} * conj(f)(1/X): the conjugated reversal of f."""
    if f.is_zero():
        raise ZeroPoly("dual of the zero polynomial")
    return Poly([ctx.frobenius(c) for c in reversed(f.coeffs)])


def self_dual_factor(ctx: FieldCtx, f: Poly) -> Optional[int]:
    """The c with dual(f) = c*f, or None.  Any such c lies in mu_{q+1}."""
    if f.is_zero():
        raise ZeroPoly("self-duality of the zero polynomial")
    # leading coefficient of dual(f) is conj(f[0]); if f[0] = 0 then
    # deg dual(f) < deg f and no factor can exist
    if f.coeffs[0] == ZERO:
        return None
    c = ctx.div(ctx.frobenius(f.coeffs[0]), f.coeffs[-1])
    if dual(ctx, f) == scale(ctx, c, f):
        return c
    return None


def reduce_cyclic(ctx: FieldCtx, f: Poly, n: int) -> Poly:
    """f mod X^n - 1: fold exponents mod n, accumulating coefficients."""
    out = [ZERO] * n
    for i, c in enumerate(f.coeffs):
        if c != ZERO:
            out[i % n] = ctx.add(out[i % n], c)
    return Poly(out)


# -- text / JSON encodings -------------------------------------------------


def format_poly(ctx: FieldCtx, f: Poly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(f.coeffs):
        if c == ZERO:
            continue
        s = ctx.format_elem(c)
        parts.append(s if i == 0 else f"{s}*X^{i}")
    return " + ".join(parts)


def parse_poly(ctx: FieldCtx, s: str) -> Poly:
    s = s.strip()
    if s == "0":
        return Poly.zero()
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        term = term.strip()
        if "*" in term:
            cpart, xpart = term.split("*")
            e = int(xpart.strip().removeprefix("X^"))
        elif term.startswith("X^"):
            cpart, e = "g^0", int(term[2:])
        else:
            cpart, e = term, 0
        c = ctx.parse_elem(cpart.strip())
        coeffs[e] = ctx.add(coeffs.get(e, ZERO), c)
    top = max(coeffs) if coeffs else -1
    return Poly([coeffs.get(i, ZERO) for i in range(top + 1)])


def poly_to_json(f: Poly) -> list:
    """JSON form: list of exponents, null for a zero coefficient."""
    return [None if c == ZERO else c for c in f.coeffs]


def poly_from_json(data) -> Poly:
    return Poly([ZERO if c is None else int(c) for c in data])
