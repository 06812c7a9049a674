"""Counting: self-dual families, the L-family sizes, and total output counts."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from . import construction
from .errors import BadR, CapExceeded, EvenQ, NotDivisor, RangeError
from .fieldcore import ZERO, CosetSystem, FieldCtx, build_field


@dataclass
class CountReport:
    params: dict
    closed_form: Optional[int]
    brute_force: int

    @property
    def agree(self) -> bool:
        return self.closed_form is None or self.closed_form == self.brute_force

    def to_json(self) -> dict:
        return {
            **self.params,
            "closed": self.closed_form,
            "brute": self.brute_force,
            "agree": self.agree,
        }


def lambda_count(q: int, t: int) -> int:
    """Number of monic self-dual polynomials of degree t over GF(q^2)."""
    if t < 0:
        raise RangeError("t must be >= 0")
    return 1 if t == 0 else (q + 1) * q ** (t - 1)


def l_closed(q: int, d: int, t: int) -> int:
    """Closed form for |L_0(t, 0; 1)|."""
    if (q + 1) % d:
        raise NotDivisor(f"{d} does not divide q + 1")
    c = (q + 1) // d
    if not 0 <= t < c:
        raise RangeError(f"t = {t} not in [0, (q+1)/d = {c})")
    total = sum(
        (-1) ** i * (q * q - 1) * math.comb(c, i) * q ** (t - i - 1) for i in range(t)
    )
    return total + (-1) ** t * (q - 1) * math.comb(c, t)


def l_brute(ctx: FieldCtx, sys: CosetSystem, t: int, tau: int,
            max_family: int = 1 << 26) -> int:
    """|L_0(t, tau; 1)| by full enumeration of the structured family."""
    c = sys.csize
    if not 0 <= t < c:
        raise RangeError(f"t = {t} not in [0, {c})")
    if tau != 0 and not (c - t <= tau <= t):
        raise RangeError(f"tau = {tau} not in {{0}} U [{c - t}, {t}]")
    size = construction.family_size(sys, 0, t, tau, 0)
    if size > max_family:
        raise CapExceeded(f"family size {size} exceeds brute-force cap {max_family}")
    return construction.count_L(sys, 0, t, tau, 0)


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            qq = q
            while qq % p == 0:
                qq //= p
                m += 1
            if qq != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, m
    raise ValueError(f"{q} is not a prime power")


def total_count(q: int, d: int, r: int) -> int:
    """Number of valid input tuples the assembly accepts, for given (q, d, r).

    Uses the closed form for tau = 0 and brute enumeration for interior tau;
    d! and the d-th power make this grow fast, hence a plain Python int.
    """
    if (q + 1) % d:
        raise NotDivisor(f"{d} does not divide q + 1")
    if math.gcd(r, q - 1) != 1:
        raise BadR(f"gcd(r = {r}, q - 1) != 1")
    c = (q + 1) // d
    ctx = None
    sys = None
    inner = 0
    for t in range(c):
        for tau in construction.tau_choices(c, t):
            m = construction.m_count(q, d, r, t, tau)
            if m == 0:
                continue
            if tau == 0:
                l = l_closed(q, d, t)
            else:
                if ctx is None:
                    p, mm = _prime_power(q)
                    ctx = build_field(p, mm)
                    sys = CosetSystem(ctx, d)
                l = l_brute(ctx, sys, t, tau)
            inner += m * l
    return math.factorial(d) * c**d * inner**d


def input_census(ctx: FieldCtx, sys: CosetSystem, r: int,
                 cap: int = 1 << 20) -> tuple[int, int]:
    """(valid input tuples, distinct h) by exhaustive enumeration.

    Whether distinct inputs can share an h is open; this reports both counts
    without asserting a relation. Only feasible for tiny parameters, hence
    the cap on the predicted tuple count.
    """
    q = ctx.q
    d = sys.d
    c = sys.csize
    predicted = total_count(q, d, r)
    if predicted > cap:
        raise CapExceeded(f"{predicted} input tuples exceed the cap {cap}")
    per_coset = []
    for k in range(d):
        rows = []
        for t in range(c):
            for tau in construction.tau_choices(c, t):
                for s in range(c - t):
                    for pi in range(d):
                        for j in range(c):
                            lam = (q - 1) * (pi + d * j) % ctx.N
                            for L in construction.enumerate_L(sys, k, t, tau, lam):
                                rows.append(construction.InputRow(
                                    k=k, s=s, t=t, tau=tau, pi=pi,
                                    lam=lam, L=L,
                                ))
        per_coset.append(rows)
    tuples = 0
    hs = set()
    for combo in itertools.product(*per_coset):
        inp = construction.AlgoInput(r=r, d=d, rows=list(combo))
        if construction.validate_input(ctx, sys, inp):
            continue
        tuples += 1
        hs.add(tuple(construction.assemble(ctx, sys, inp).h.coeffs))
    return tuples, len(hs)


def set_A_count(ctx: FieldCtx) -> CountReport:
    """Count of a with (1+a)^{(q^2-1)/2} = (1-a)^{(q^2-1)/2} = (-1)^{(q-1)/2}.

    The closed form is (q^2 - 1)/4.
    """
    q = ctx.q
    if q % 2 == 0:
        raise EvenQ("defined for odd q only")
    half = ctx.N // 2
    target = 0 if (q - 1) // 2 % 2 == 0 else ctx.neg_one

    def half_power(x: int) -> int:
        return ZERO if x == ZERO else x * half % ctx.N

    count = 0
    for a in range(ctx.N):
        plus = ctx.add(0, a)
        minus = ctx.sub(0, a)
        if half_power(plus) == target and half_power(minus) == target:
            count += 1
    return CountReport(
        params={"q": q}, closed_form=(q * q - 1) // 4, brute_force=count
    )


def set_A_members(ctx: FieldCtx) -> list[int]:
    """The elements counted by set_A_count, in ascending exponent order."""
    q = ctx.q
    if q % 2 == 0:
        raise EvenQ("defined for odd q only")
    half = ctx.N // 2
    target = 0 if (q - 1) // 2 % 2 == 0 else ctx.neg_one
    out = []
    for a in range(ctx.N):
        plus = ctx.add(0, a)
        minus = ctx.sub(0, a)
        if plus == ZERO or minus == ZERO:
            continue
        if plus * half % ctx.N == target and minus * half % ctx.N == target:
            out.append(a)
    return out
