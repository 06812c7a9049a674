"""Forward assembly of coset-monomial permutation polynomials and its inverse.

The forward direction takes, for each coset A_k of mu_{(q+1)/d} in mu_{q+1},
a shift s_k, a structured polynomial L_k of degree t_k drawn from the family
L_k(t, tau; lambda), and a target coset index pi(k); it interpolates the
coefficient matrix [a_ij] and emits h with

    x^r h(x)^{q-1} = lambda_k x^{e_k}   on A_k,   e_k = r - 2s_k - t_k + tau_k.

The backward direction (monomial_profile) recovers the per-coset data from h.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from . import polyring
from .errors import (
    CosetPPError,
    DegreeMismatch,
    EmptyFamily,
    InvalidTau,
)
from .fieldcore import ZERO, CosetSystem, FieldCtx, coset_index
from .polyring import Poly


# -- admissible parameter triples ------------------------------------------


def tau_choices(c: int, t: int) -> list[int]:
    """{0} plus the interior window [c - t, t], c = (q+1)/d."""
    return [0] + [tau for tau in range(c - t, t + 1) if tau >= 1]


def omega_set(q: int, d: int, r: int) -> set[tuple[int, int, int]]:
    """All (s, t, tau) with s+t < (q+1)/d and gcd(r-2s-t+tau, (q+1)/d) = 1."""
    c = (q + 1) // d
    out = set()
    for t in range(c):
        for tau in tau_choices(c, t):
            for s in range(c - t):
                if math.gcd(r - 2 * s - t + tau, c) == 1:
                    out.add((s, t, tau))
    return out


def m_count(q: int, d: int, r: int, t: int, tau: int) -> int:
    c = (q + 1) // d
    return sum(1 for s in range(c - t) if math.gcd(r - 2 * s - t + tau, c) == 1)


# -- structured families ----------------------------------------------------
#
# The building block is {A : deg A = n, dual(A) = mu*A}, whose coefficients
# satisfy conj(a_{n-i}) = mu*a_i.  Free data: a_0 nonzero, a_i arbitrary for
# 0 < i < n/2, and (n even) a middle coefficient solving a^{q-1} = mu.
# Nonempty only for mu in mu_{q+1}.


@dataclass
class _Slot:
    free: int  # absolute coefficient index chosen freely
    det: Optional[int]  # mirrored index fixed by the duality relation, if any
    choices: np.ndarray  # admissible element codes (code = exp+1, 0 = zero)
    mu: int  # duality factor, as an exponent


def _pair_slots(ctx: FieldCtx, n: int, mu: int, offset: int) -> Optional[list[_Slot]]:
    """Slots for the family of degree n at positions offset..offset+n."""
    if not ctx.in_mu(mu, ctx.q + 1):
        return None
    N = ctx.N
    mid_codes = np.array([0] + [e + 1 for e in ctx.root_exps(ctx.q - 1, mu)], dtype=np.int64)
    if n == 0:
        return [_Slot(offset, None, mid_codes[1:], mu)]
    nonzero = np.arange(1, N + 1, dtype=np.int64)
    anyc = np.arange(0, N + 1, dtype=np.int64)
    slots = [_Slot(offset, offset + n, nonzero, mu)]
    for i in range(1, (n + 1) // 2):
        slots.append(_Slot(offset + i, offset + n - i, anyc, mu))
    if n % 2 == 0:
        slots.append(_Slot(offset + n // 2, None, mid_codes, mu))
    return slots


def _det_perm(ctx: FieldCtx, mu: int) -> np.ndarray:
    """Code map c -> code of (mu * elem(c))^q, vectorized mirror rule."""
    perm = np.zeros(ctx.N + 1, dtype=np.int64)
    perm[1:] = (np.arange(ctx.N, dtype=np.int64) + mu) * ctx.q % ctx.N + 1
    return perm


def structural_slots(
    sys: CosetSystem, k: int, t: int, tau: int, lam: int
) -> Optional[list[_Slot]]:
    """Slot description of the structured part of L in L_k(t, tau; lambda).

    None means the family is empty.  Coefficient positions not covered by any
    slot (the gap between the low and high blocks for interior tau) are zero.
    """
    ctx = sys.ctx
    c = sys.csize
    if t >= c:
        raise DegreeMismatch(f"t = {t} must be < (q+1)/d = {c}")
    if tau == 0:
        return _pair_slots(ctx, t, lam, 0)
    if not (c - t <= tau <= t):
        raise InvalidTau(f"tau = {tau} outside {{0}} U [{c - t}, {t}]")
    lo = _pair_slots(ctx, t - tau, lam, 0)
    hi = _pair_slots(ctx, tau + t - c, (lam + sys.epsilon_pow(k)) % ctx.N, c - tau)
    if lo is None or hi is None:
        return None
    return lo + hi


def family_size(sys: CosetSystem, k: int, t: int, tau: int, lam: int) -> int:
    """Size of the structured family, before the no-root-in-A_k filter."""
    slots = structural_slots(sys, k, t, tau, lam)
    if slots is None:
        return 0
    n = 1
    for s in slots:
        n *= len(s.choices)
    return n


def _member_from_digits(sys: CosetSystem, slots: list[_Slot], t: int, digits) -> Poly:
    ctx = sys.ctx
    coeffs = [ZERO] * (t + 1)
    for slot, digit in zip(slots, digits):
        code = int(slot.choices[digit])
        e = code - 1 if code else ZERO
        coeffs[slot.free] = e
        if slot.det is not None:
            coeffs[slot.det] = ZERO if e == ZERO else (e + slot.mu) * ctx.q % ctx.N
    return Poly(coeffs)


def _no_root_in_coset(sys: CosetSystem, k: int, L: Poly) -> bool:
    ctx = sys.ctx
    return all(polyring.eval_poly(ctx, L, x) != ZERO for x in sys.cosets[k])


def membership(sys: CosetSystem, k: int, t: int, tau: int, lam: int, L: Poly) -> bool:
    """Is L in L_k(t, tau; lambda)?"""
    ctx = sys.ctx
    c = sys.csize
    if L.degree() != t or (t >= 0 and L.coeff(0) == ZERO):
        raise DegreeMismatch("L must have degree t and a nonzero constant term")
    if tau != 0 and not (c - t <= tau <= t):
        raise InvalidTau(f"tau = {tau} outside {{0}} U [{c - t}, {t}]")
    if tau == 0:
        if not _dual_rel(ctx, L, lam):
            return False
    else:
        P = Poly(L.coeffs[: t - tau + 1])
        gap = L.coeffs[t - tau + 1 : c - tau]
        Q = Poly(L.coeffs[c - tau :])
        if any(g != ZERO for g in gap):
            return False
        if P.degree() != t - tau or Q.degree() != tau + t - c:
            return False
        if not _dual_rel(ctx, P, lam):
            return False
        if not _dual_rel(ctx, Q, (lam + sys.epsilon_pow(k)) % ctx.N):
            return False
    return _no_root_in_coset(sys, k, L)


def _dual_rel(ctx: FieldCtx, A: Poly, mu: int) -> bool:
    """dual(A) = mu * A, checked coefficient-wise."""
    if A.is_zero():
        return False
    n = A.degree()
    for i in range(n + 1):
        if ctx.frobenius(A.coeff(n - i)) != ctx.mul(mu, A.coeff(i)):
            return False
    return True


def enumerate_L(sys: CosetSystem, k: int, t: int, tau: int, lam: int) -> Iterator[Poly]:
    """All members of L_k(t, tau; lambda), each exactly once."""
    slots = structural_slots(sys, k, t, tau, lam)
    if slots is None:
        return
    ranges = [range(len(s.choices)) for s in slots]
    for digits in itertools.product(*ranges):
        L = _member_from_digits(sys, slots, t, digits)
        if _no_root_in_coset(sys, k, L):
            yield L


def count_L(sys: CosetSystem, k: int, t: int, tau: int, lam: int, chunk: int = 1 << 19) -> int:
    """|L_k(t, tau; lambda)| by vectorized scan of the structured family."""
    slots = structural_slots(sys, k, t, tau, lam)
    if slots is None:
        return 0
    total = family_size(sys, k, t, tau, lam)
    if t == 0:
        return total  # constants have no roots
    ctx = sys.ctx
    add_code = ctx.np_add_code()
    sizes = [len(s.choices) for s in slots]
    strides = []
    acc = 1
    for n in sizes:
        strides.append(acc)
        acc *= n
    det_perms = {s.mu: _det_perm(ctx, s.mu) for s in slots}
    points = sys.cosets[k]
    mul_perms = [ctx.np_mul_perm(x).astype(np.int64) for x in points]
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        cols = [np.zeros(len(idx), dtype=np.int64) for _ in range(t + 1)]
        for slot, size, stride in zip(slots, sizes, strides):
            codes = slot.choices[(idx // stride) % size]
            cols[slot.free] = codes
            if slot.det is not None:
                cols[slot.det] = det_perms[slot.mu][codes]
        ok = np.ones(len(idx), dtype=bool)
        for mp in mul_perms:
            val = cols[t]
            for i in range(t - 1, -1, -1):
                val = add_code[mp[val], cols[i]]
            ok &= val != 0
        count += int(ok.sum())
    return count


def sample_L(
    sys: CosetSystem,
    k: int,
    t: int,
    tau: int,
    lam: int,
    rng: random.Random,
    attempts: int = 200,
    small: int = 4096,
) -> Poly:
    """Uniform draw from L_k(t, tau; lambda).

    Rejection-samples the structured family against the no-root condition;
    for small families it enumerates exactly, so emptiness is decided rather
    than guessed.
    """
    slots = structural_slots(sys, k, t, tau, lam)
    if slots is None:
        raise EmptyFamily(f"L_{k}({t},{tau};g^{lam}) is empty")
    sizes = [len(s.choices) for s in slots]
    for _ in range(attempts):
        digits = [rng.randrange(n) for n in sizes]
        L = _member_from_digits(sys, slots, t, digits)
        if _no_root_in_coset(sys, k, L):
            return L
    # rejection failed; decide emptiness exactly when that is affordable
    if family_size(sys, k, t, tau, lam) <= small:
        members = list(enumerate_L(sys, k, t, tau, lam))
        if not members:
            raise EmptyFamily(f"L_{k}({t},{tau};g^{lam}) is empty")
        return members[rng.randrange(len(members))]
    raise EmptyFamily(
        f"no member of L_{k}({t},{tau};g^{lam}) found in {attempts} draws"
    )


# -- algorithm input and output --------------------------------------------


@dataclass
class InputRow:
    k: int
    s: int
    t: int
    tau: int
    pi: int
    lam: int  # element exponent
    L: Poly


@dataclass
class AlgoInput:
    r: int
    d: int
    rows: list[InputRow]

    def e(self, k: int) -> int:
        row = self.rows[k]
        return self.r - 2 * row.s - row.t + row.tau

    def to_json(self, ctx: FieldCtx) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "rows": [
                {
                    "k": row.k,
                    "s": row.s,
                    "t": row.t,
                    "tau": row.tau,
                    "pi": row.pi,
                    "lambda": ctx.format_elem(row.lam),
                    "L": polyring.poly_to_json(row.L),
                }
                for row in self.rows
            ],
        }

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: dict) -> "AlgoInput":
        rows = [
            InputRow(
                k=rd["k"],
                s=rd["s"],
                t=rd["t"],
                tau=rd["tau"],
                pi=rd["pi"],
                lam=ctx.parse_elem(rd["lambda"]),
                L=polyring.poly_from_json(rd["L"]),
            )
            for rd in data["rows"]
        ]
        rows.sort(key=lambda row: row.k)
        return cls(r=data["r"], d=data["d"], rows=rows)


@dataclass
class ProfileRow:
    k: int
    s: int
    t: int
    tau: int
    lam: int
    e: int
    pi: int
    L: Poly


@dataclass
class PPCertificate:
    r: int
    d: int
    h: Poly
    f: Poly
    profile: list[ProfileRow]

    def to_json(self, ctx: FieldCtx) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "h": polyring.poly_to_json(self.h),
            "f": polyring.poly_to_json(self.f),
            "profile": [
                {"k": row.k, "lambda": ctx.format_elem(row.lam), "e": row.e}
                for row in self.profile
            ],
        }


def lift(ctx: FieldCtx, r: int, h: Poly) -> Poly:
    """X^r h(X^{q-1}) reduced mod X^{q^2-1} - 1.

    The exponents r + e(q-1) for 0 <= e <= q are distinct mod q^2-1, so no
    coefficient accumulation happens for deg h <= q.
    """
    f_coeffs = [ZERO] * ctx.N
    for e, coeff in enumerate(h.coeffs):
        if coeff != ZERO:
            idx = (r + e * (ctx.q - 1)) % ctx.N
            f_coeffs[idx] = ctx.add(f_coeffs[idx], coeff)
    return Poly(f_coeffs)


def validate_input(ctx: FieldCtx, sys: CosetSystem, inp: AlgoInput) -> list[str]:
    """Every violated precondition of the assembly, as diagnostics."""
    q = ctx.q
    d = sys.d
    c = sys.csize
    errs = []
    if math.gcd(inp.r, q - 1) != 1:
        errs.append(f"gcd(r, q-1) = {math.gcd(inp.r, q - 1)} != 1")
    if inp.d != d or len(inp.rows) != d:
        errs.append(f"input is for d = {inp.d} with {len(inp.rows)} rows, expected {d}")
        return errs
    coset_map = []
    for row in inp.rows:
        k = row.k
        if row.s < 0 or row.t < 0 or row.s + row.t >= c:
            errs.append(f"k={k}: s+t = {row.s + row.t} not in [0, {c})")
            continue
        if row.tau != 0 and not (c - row.t <= row.tau <= row.t):
            errs.append(f"k={k}: tau = {row.tau} not in {{0}} U [{c - row.t}, {row.t}]")
            continue
        e = inp.e(k)
        if math.gcd(e, c) != 1:
            errs.append(f"k={k}: gcd(e_k = {e}, (q+1)/d) != 1")
        if not (0 <= row.pi < d):
            errs.append(f"k={k}: pi = {row.pi} not in [0, {d})")
            continue
        if not ctx.in_mu(row.lam, q + 1) or coset_index(sys, row.lam) != row.pi:
            errs.append(f"k={k}: lambda = {ctx.format_elem(row.lam)} not in A_{row.pi}")
        try:
            if not membership(sys, k, row.t, row.tau, row.lam, row.L):
                errs.append(f"k={k}: L_k not in L_{k}({row.t},{row.tau};lambda)")
        except (DegreeMismatch, InvalidTau) as exc:
            errs.append(f"k={k}: {exc}")
        coset_map.append((row.pi + e * k) % d)
    if len(coset_map) == d and sorted(coset_map) != list(range(d)):
        errs.append(f"k -> pi(k) + e_k*k = {coset_map} does not permute Z/{d}Z")
    return errs


def assemble(ctx: FieldCtx, sys: CosetSystem, inp: AlgoInput) -> PPCertificate:
    """Interpolate [a_ij] from the per-coset data and emit h and f."""
    errs = validate_input(ctx, sys, inp)
    if errs:
        raise CosetPPError("; ".join(errs))
    d = sys.d
    c = sys.csize
    # column k of M is X^{s_k} L_k, padded to length (q+1)/d
    M = [[ZERO] * d for _ in range(c)]
    for row in inp.rows:
        for i in range(row.t + 1):
            M[row.s + i][row.k] = row.L.coeff(i)
    q = ctx.q
    inv_d = ctx.inv(ctx.from_int(d))
    h_coeffs = [ZERO] * (c * d)
    for i in range(c):
        for j in range(d):
            acc = ZERO
            for k in range(d):
                acc = ctx.add(acc, ctx.mul(M[i][k], sys.epsilon_pow(-k * j)))
            h_coeffs[i + j * c] = ctx.mul(inv_d, acc)
    h = Poly(h_coeffs)
    f = lift(ctx, inp.r, h)
    profile = [
        ProfileRow(
            k=row.k, s=row.s, t=row.t, tau=row.tau,
            lam=row.lam, e=inp.e(row.k), pi=row.pi, L=row.L,
        )
        for row in inp.rows
    ]
    return PPCertificate(r=inp.r, d=d, h=h, f=f, profile=profile)


def h_matrix(sys: CosetSystem, h: Poly) -> list[list[int]]:
    """The (q+1)/d x d coefficient matrix [a_ij] with h = sum a_ij X^{i+jc}."""
    c = sys.csize
    return [[h.coeff(i + j * c) for j in range(sys.d)] for i in range(c)]


def monomial_profile(
    ctx: FieldCtx, sys: CosetSystem, h: Poly, r: int
) -> Optional[list[ProfileRow]]:
    """Invert the assembly: per-coset (s, t, tau, lambda) from h, or None.

    Tries tau = 0 first, then interior tau ascending; the decomposition is
    unique when it exists, so the order only fixes tie-breaking that never
    actually fires.
    """
    if h.is_zero() or h.degree() > ctx.q:
        return None
    d = sys.d
    c = sys.csize
    a = h_matrix(sys, h)
    out = []
    for k in range(d):
        col = [ZERO] * c
        for i in range(c):
            acc = ZERO
            for j in range(d):
                acc = ctx.add(acc, ctx.mul(a[i][j], sys.epsilon_pow(j * k)))
            col[i] = acc
        deg = max((i for i, v in enumerate(col) if v != ZERO), default=-1)
        if deg < 0:
            return None
        s = next(i for i, v in enumerate(col) if v != ZERO)
        t = deg - s
        L = Poly(col[s : deg + 1])
        found = None
        for tau in tau_choices(c, t):
            split = t - tau if tau else t
            lead = L.coeff(split)
            if lead == ZERO:
                continue
            lam = ctx.div(ctx.frobenius(L.coeff(0)), lead)
            if not ctx.in_mu(lam, ctx.q + 1):
                continue
            try:
                if membership(sys, k, t, tau, lam, L):
                    found = (tau, lam)
                    break
            except (DegreeMismatch, InvalidTau):
                continue
        if found is None:
            return None
        tau, lam = found
        out.append(
            ProfileRow(
                k=k, s=s, t=t, tau=tau, lam=lam,
                e=r - 2 * s - t + tau, pi=coset_index(sys, lam), L=L,
            )
        )
    return out


def random_input(
    ctx: FieldCtx, sys: CosetSystem, r: int, rng: random.Random
) -> AlgoInput:
    """A uniform-ish valid AlgoInput: triples from Omega, a random target
    permutation of the cosets, and sampled lambda_k and L_k."""
    d = sys.d
    c = sys.csize
    omega = sorted(omega_set(ctx.q, d, r))
    if not omega:
        raise EmptyFamily(f"Omega is empty for q={ctx.q}, d={d}, r={r}")
    sigma = list(range(d))
    rng.shuffle(sigma)
    rows = []
    for k in range(d):
        row = None
        for attempt in range(30):
            s, t, tau = omega[rng.randrange(len(omega))]
            e = r - 2 * s - t + tau
            pi = (sigma[k] - e * k) % d
            lam = (ctx.q - 1) * (pi + d * rng.randrange(c)) % ctx.N
            try:
                L = sample_L(sys, k, t, tau, lam, rng)
            except EmptyFamily:
                continue
            row = InputRow(k=k, s=s, t=t, tau=tau, pi=pi, lam=lam, L=L)
            break
        if row is None:
            # deterministic fallback: tau = 0 triples in ascending order
            for s, t, tau in omega:
                if tau != 0:
                    continue
                e = r - 2 * s - t + tau
                pi = (sigma[k] - e * k) % d
                lam = (ctx.q - 1) * (pi + d * rng.randrange(c)) % ctx.N
                try:
                    L = sample_L(sys, k, t, tau, lam, rng)
                except EmptyFamily:
                    continue
                row = InputRow(k=k, s=s, t=t, tau=tau, pi=pi, lam=lam, L=L)
                break
        if row is None:
            raise EmptyFamily(f"no usable (s,t,tau) for coset {k}")
        rows.append(row)
    return AlgoInput(r=r, d=d, rows=rows)
