"""Ground truth by exhaustion: permutation tests and coset-monomial probes.

Everything here is independent of the construction machinery; it only
evaluates polynomials and maps pointwise, so the rest of the package can be
tested against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import polyring
from .errors import NotDivisor, UndefinedValue
from .fieldcore import ZERO, CosetSystem, FieldCtx
from .polyring import Poly


@dataclass
class VerifyReport:
    is_permutation: bool
    first_collision: Optional[tuple[int, int, int]] = None  # (x, y, f(x)) exponents
    coset_profile: Optional[list] = None
    criterion_breakdown: Optional[dict] = None

    def to_json(self, ctx: FieldCtx) -> dict:
        out = {"is_permutation": self.is_permutation}
        if self.first_collision is not None:
            x, y, v = self.first_collision
            out["first_collision"] = {
                "x": ctx.format_elem(x),
                "y": ctx.format_elem(y),
                "value": ctx.format_elem(v),
            }
        if self.coset_profile is not None:
            out["coset_profile"] = [
                {"k": row["k"], "lambda": ctx.format_elem(row["lambda"]), "e": row["e"]}
                for row in self.coset_profile
            ]
        if self.criterion_breakdown is not None:
            out["criterion_breakdown"] = self.criterion_breakdown
        return out


def _eval_codes(ctx: FieldCtx, f: Poly) -> np.ndarray:
    """f evaluated at all of GF(q^2); entry i is the code of f(elem_i) where
    elem_0 = 0 and elem_{1+e} = gamma^e."""
    N = ctx.N
    add_code = ctx.np_add_code()
    vals = np.zeros(ctx.qq, dtype=np.int64)
    c0 = f.coeff(0)
    vals[0] = 0 if c0 == ZERO else c0 + 1
    e = np.arange(N, dtype=np.int64)
    acc = np.zeros(N, dtype=np.int64)
    for i, ci in enumerate(f.coeffs):
        if ci == ZERO:
            continue
        term = (ci + i * e) % N + 1
        acc = add_code[acc, term]
    vals[1:] = acc
    return vals


def is_permutation(ctx: FieldCtx, f: Poly) -> VerifyReport:
    """Evaluate f on all q^2 elements and look for a repeated value."""
    vals = _eval_codes(ctx, f)
    if len(np.unique(vals)) == ctx.qq:
        return VerifyReport(is_permutation=True)
    order = np.argsort(vals, kind="stable")
    sv = vals[order]
    dup = np.nonzero(sv[1:] == sv[:-1])[0][0]
    i, j = int(order[dup]), int(order[dup + 1])
    to_exp = lambda idx: ZERO if idx == 0 else idx - 1
    return VerifyReport(
        is_permutation=False,
        first_collision=(to_exp(i), to_exp(j), to_exp(int(sv[dup])) if sv[dup] else ZERO),
    )


def rh_map(ctx: FieldCtx, r: int, h: Poly) -> Callable[[int], int]:
    """x -> x^r h(x)^{q-1} on nonzero x, raising UndefinedValue at roots of h."""

    def g(x: int) -> int:
        hx = polyring.eval_poly(ctx, h, x)
        if hx == ZERO:
            raise UndefinedValue(f"h({ctx.format_elem(x)}) = 0")
        return (x * r + hx * (ctx.q - 1)) % ctx.N

    return g


def permutes_mu(ctx: FieldCtx, g: Callable[[int], int], n: int) -> bool:
    """Does the map g permute mu_n?  g takes and returns element exponents."""
    if n < 1 or ctx.N % n != 0:
        raise NotDivisor(f"{n} does not divide q^2 - 1")
    step = ctx.N // n
    image = set()
    for i in range(n):
        y = g(step * i % ctx.N)
        if y < 0 or y % step != 0:
            return False
        image.add(y)
    return len(image) == n


def extract_coset_monomial(
    ctx: FieldCtx, sys: CosetSystem, h: Poly, r: int
) -> Optional[list[dict]]:
    """Per-coset (lambda_k, e_k) with x^r h(x)^{q-1} = lambda_k x^{e_k} on A_k.

    e_k is only observable mod q+1; each row reports the canonical residue in
    [0, q+1) plus every consistent (e, lambda) pair.  None if h vanishes
    somewhere on mu_{q+1} or some coset is not monomial.
    """
    g = rh_map(ctx, r, h)
    q = ctx.q
    out = []
    for k in range(sys.d):
        points = sys.cosets[k]
        try:
            values = [g(x) for x in points]
        except UndefinedValue:
            return None
        consistent = []
        for e in range(q + 1):
            lam = (values[0] - points[0] * e) % ctx.N
            if all((points[i] * e + lam) % ctx.N == values[i] for i in range(len(points))):
                consistent.append((e, lam))
        if not consistent:
            return None
        e0, lam0 = consistent[0]
        out.append({"k": k, "e": e0, "lambda": lam0, "consistent": consistent})
    return out


def coset_criterion(sys: CosetSystem, profile) -> tuple[bool, dict]:
    """The two permutation conditions on a per-coset profile.

    profile rows need fields/keys e and pi; checks gcd(e_k, (q+1)/d) = 1 for
    every k and that k -> pi(k) + e_k*k permutes Z/dZ.
    """
    d = sys.d
    c = sys.csize
    rows = []
    for row in profile:
        if isinstance(row, dict):
            rows.append((row["e"], row["pi"]))
        else:
            rows.append((row.e, row.pi))
    gcd_ok = [math.gcd(e, c) == 1 for e, _ in rows]
    values = [(pi + e * k) % d for k, (e, pi) in enumerate(rows)]
    permutes = sorted(values) == list(range(d))
    breakdown = {
        "gcd_ok": gcd_ok,
        "coset_map": values,
        "map_permutes": permutes,
    }
    return all(gcd_ok) and permutes, breakdown
