"""Arithmetic contexts for GF(p) < GF(q) < GF(q^2).

Elements of GF(q^2) are handled in discrete-log form: an element is either
the sentinel ``ZERO`` (= -1) or an integer exponent e in [0, q^2-2] standing
for gamma^e, where gamma is a fixed primitive element.  Multiplication and
powering are exponent arithmetic mod q^2-1; addition goes through a Zech
logarithm table.

Elements of the subfield GF(q) appear only as integer encodings: the
polynomial c_0 + c_1*y + ... + c_{m-1}*y^{m-1} over GF(p) is encoded as the
base-p integer c_0 + c_1*p + ... .  For m = 1 this is just a residue mod p.
"""

from __future__ import annotations

import math
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    NotDivisor,
    NotInMu,
    NotPrime,
    NotPrimitive,
    ReducibleModulus,
)

#: Zero element of GF(q^2) in discrete-log representation.
ZERO = -1

#: Default cap on q^2; keeps every table comfortably in memory.
DEFAULT_CAP = 1 << 22


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


class Subfield:
    """GF(q) = GF(p^m) with elements encoded as base-p integers in [0, q)."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.q = p**m
        if m == 1:
            self.modulus = None
        else:
            self.modulus = self._find_modulus()
        self._build_log_tables()

    # -- polynomial helpers over GF(p), coefficient lists ------------------

    def _decode(self, a: int) -> list[int]:
        digits = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            digits.append(r)
        return digits

    def _encode(self, digits: Sequence[int]) -> int:
        a = 0
        for c in reversed(digits):
            a = a * self.p + c
        return a

    def _find_modulus(self) -> list[int]:
        # smallest monic irreducible of degree m over GF(p), ordered by the
        # integer encoding of the non-leading coefficients
        for code in range(self.p**self.m):
            g = self._decode(code) + [1]
            if self._poly_irreducible(g):
                return g
        raise AssertionError("no irreducible polynomial found")

    def _poly_divmod(self, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
        p = self.p
        a = list(a)
        binv = pow(b[-1], -1, p)
        quot = [0] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b) and any(a):
            while a and a[-1] == 0:
                a.pop()
            if len(a) < len(b):
                break
            c = a[-1] * binv % p
            shift = len(a) - len(b)
            quot[shift] = c
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
        while a and a[-1] == 0:
            a.pop()
        return quot, a

    def _poly_irreducible(self, g: list[int]) -> bool:
        deg = len(g) - 1
        if deg < 1:
            return False
        # brute: no monic divisor of degree 1..deg//2
        for ddeg in range(1, deg // 2 + 1):
            for code in range(self.p**ddeg):
                div = self._decode(code)[:ddeg] + [1]
                _, rem = self._poly_divmod(list(g), div)
                if not rem:
                    return False
        return True

    # -- field operations --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        da, db = self._decode(a), self._decode(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return a * b % p
        da, db = self._decode(a), self._decode(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        _, rem = self._poly_divmod(prod, self.modulus)
        rem += [0] * (self.m - len(rem))
        return self._encode(rem)

    def _build_log_tables(self) -> None:
        q = self.q
        if self.m == 1 and q == 2:
            self.exp = [1]
            self.log = [None, 0]
            return
        factors = _prime_factors(q - 1)
        gen = None
        for cand in range(2, q):
            if all(self._pow_poly(cand, (q - 1) // f) != 1 for f in factors):
                gen = cand
                break
        assert gen is not None
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._mul_poly(exp[i - 1], gen)
        log: list[Optional[int]] = [None] * q
        for i, v in enumerate(exp):
            log[v] = i
        self.exp = exp
        self.log = log

    def _pow_poly(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._mul_poly(r, a)
            a = self._mul_poly(a, a)
            k >>= 1
        return r

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def trace_to_prime(self, a: int) -> int:
        """Trace from GF(p^m) down to GF(p) (encoded as an int < p)."""
        t = 0
        x = a
        for _ in range(self.m):
            t = self.add(t, x)
            x = self._pow_poly(x, self.p)
        return t


class FieldCtx:
    """Immutable arithmetic context for GF(q^2); see :func:`build_field`."""

    def __init__(self, p, m, subfield, modulus2, gamma_pair, exp_pairs, log, zech):
        self.p = p
        self.m = m
        self.q = p**m
        self.qq = self.q * self.q
        self.N = self.qq - 1
        self.subfield = subfield
        self.modulus2 = modulus2  # (c0, c1): gamma_root^2 + c1*gamma_root + c0 = 0
        self.gamma_pair = gamma_pair
        self.exp_pairs = exp_pairs  # exp_pairs[e] = code of gamma^e
        self.log = log  # log[code] = e, None for code 0
        self.zech = zech  # zech[e] = log(1 + gamma^e), -1 if the sum is 0
        self.neg_one = self.N // 2 if self.q % 2 else 0
        self.one = 0
        self._np_cache: dict = {}

    # -- scalar operations (exponent representation) -----------------------

    def mul(self, x: int, y: int) -> int:
        if x < 0 or y < 0:
            return ZERO
        return (x + y) % self.N

    def inv(self, x: int) -> int:
        if x < 0:
            raise ZeroDivisionError("inverse of 0 in GF(q^2)")
        return (-x) % self.N

    def div(self, x: int, y: int) -> int:
        if y < 0:
            raise ZeroDivisionError("division by 0 in GF(q^2)")
        if x < 0:
            return ZERO
        return (x - y) % self.N

    def power(self, x: int, k: int) -> int:
        if x < 0:
            if k == 0:
                return self.one
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return ZERO
        return (x * k) % self.N

    def neg(self, x: int) -> int:
        if x < 0:
            return ZERO
        return (x + self.neg_one) % self.N

    def add(self, x: int, y: int) -> int:
        if x < 0:
            return y
        if y < 0:
            return x
        z = self.zech[(y - x) % self.N]
        if z < 0:
            return ZERO
        return (x + z) % self.N

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def frobenius(self, x: int) -> int:
        if x < 0:
            return ZERO
        return (x * self.q) % self.N

    def in_mu(self, x: int, n: int) -> bool:
        return x >= 0 and (x * n) % self.N == 0

    def order(self, x: int) -> int:
        if x < 0:
            raise ZeroDivisionError("order of 0")
        return self.N // math.gcd(x, self.N)

    # -- conversions -------------------------------------------------------

    def to_pair(self, x: int) -> tuple[int, int]:
        """Coordinates (c0, c1) with x = c0 + c1*gamma_root, c_i in GF(q)."""
        if x < 0:
            return (0, 0)
        code = self.exp_pairs[x]
        return (code % self.q, code // self.q)

    def from_pair(self, c0: int, c1: int) -> int:
        code = c0 + c1 * self.q
        if code == 0:
            return ZERO
        e = self.log[code]
        if e is None:
            raise ValueError("pair encoding out of range")
        return e

    def from_subfield(self, c: int) -> int:
        return self.from_pair(c % self.q if self.m > 1 else c % self.p, 0)

    def from_int(self, n: int) -> int:
        """Image of the rational integer n in GF(q^2)."""
        return self.from_pair(n % self.p, 0)

    def root_exps(self, k: int, target: int) -> list[int]:
        """All exponents x with (gamma^x)^k = target, ascending."""
        if target < 0:
            return []
        g = math.gcd(k, self.N)
        if target % g:
            return []
        nn = self.N // g
        x0 = (target // g) * pow(k // g, -1, nn) % nn
        return sorted((x0 + i * nn) % self.N for i in range(g))

    # -- numpy helpers (lazy; element codes are exp+1, 0 for zero) ---------

    def np_add_code(self) -> np.ndarray:
        """(qq, qq) table: add_code[c1, c2] = code of elem(c1) + elem(c2)."""
        tab = self._np_cache.get("add_code")
        if tab is None:
            N = self.N
            zech = np.asarray(self.zech, dtype=np.int64)
            e1 = np.arange(N, dtype=np.int64)[:, None]
            e2 = np.arange(N, dtype=np.int64)[None, :]
            z = zech[(e2 - e1) % N]
            r = (e1 + z) % N + 1
            r[z < 0] = 0
            tab = np.zeros((self.qq, self.qq), dtype=np.int32)
            tab[1:, 1:] = r
            tab[0, :] = np.arange(self.qq, dtype=np.int32)
            tab[:, 0] = np.arange(self.qq, dtype=np.int32)
            self._np_cache["add_code"] = tab
        return tab

    def np_mul_perm(self, x: int) -> np.ndarray:
        """Code permutation c -> code of elem(c) * gamma^x."""
        perm = np.zeros(self.qq, dtype=np.int32)
        perm[1:] = (np.arange(self.N, dtype=np.int64) + x) % self.N + 1
        return perm

    def np_affine_conj_perm(self, lam: int) -> np.ndarray:
        """Code permutation c -> code of conj(lam * elem(c))."""
        perm = np.zeros(self.qq, dtype=np.int32)
        perm[1:] = (np.arange(self.N, dtype=np.int64) + lam) * self.q % self.N + 1
        return perm

    # -- text encoding -----------------------------------------------------

    def format_elem(self, x: int) -> str:
        return "0" if x < 0 else f"g^{x}"

    def parse_elem(self, s: str) -> int:
        s = s.strip()
        if s == "0":
            return ZERO
        if s in ("1", "g^0"):
            return 0
        if s.startswith("g^"):
            return int(s[2:]) % self.N
        if s == "g":
            return 1 % self.N
        raise ValueError(f"bad element literal: {s!r}")

    def format_basis(self, x: int) -> str:
        """Human form 'a+bg' in the basis (1, gamma_root), e.g. '11+37g'."""
        c0, c1 = self.to_pair(x)
        if c1 == 0:
            return str(c0)
        gpart = "g" if c1 == 1 else f"{c1}g"
        if c0 == 0:
            return gpart
        return f"{c0}+{gpart}"

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, q={self.q})"


def _pair_mul(sub: Subfield, mod2, a, b):
    c0, c1 = mod2
    a0, a1 = a
    b0, b1 = b
    t = sub._mul_poly(a1, b1)
    r0 = sub.sub(sub._mul_poly(a0, b0), sub._mul_poly(c0, t))
    r1 = sub.sub(sub.add(sub._mul_poly(a0, b1), sub._mul_poly(a1, b0)), sub._mul_poly(c1, t))
    return (r0, r1)


def _pair_pow(sub, mod2, a, k):
    r = (1, 0)
    while k:
        if k & 1:
            r = _pair_mul(sub, mod2, r, a)
        a = _pair_mul(sub, mod2, a, a)
        k >>= 1
    return r


def _quadratic_irreducible(sub: Subfield, c0: int, c1: int) -> bool:
    """Is X^2 + c1*X + c0 irreducible over GF(q)?"""
    q = sub.q
    if q % 2:
        # odd characteristic: irreducible iff the discriminant is a non-square
        disc = sub.sub(sub._mul_poly(c1, c1), sub._mul_poly(sub.add(sub.add(1, 1), sub.add(1, 1)) if sub.m > 1 else 4 % sub.p, c0))
        if disc == 0:
            return False
        return sub.log[disc] % 2 == 1
    # char 2: irreducible iff c1 != 0 and Tr(c0 / c1^2) = 1
    if c1 == 0:
        return False
    u = sub.mul(c0, sub.inv(sub.mul(c1, c1)))
    return sub.trace_to_prime(u) == 1


def build_field(
    p: int,
    m: int = 1,
    modulus2: Optional[Sequence[int]] = None,
    gamma: Optional[Sequence[int]] = None,
    cap: int = DEFAULT_CAP,
) -> FieldCtx:
    """Build the GF(q^2) context, q = p^m.

    modulus2, if given, is [c0, c1, 1] for X^2 + c1*X + c0 over GF(q)
    (coefficients as base-p integer encodings).  gamma, if given, is a pair
    (a0, a1) meaning a0 + a1*root where root is the declared root of
    modulus2; it must be primitive.  By default the modulus is the first
    monic irreducible quadratic, in lexicographic (c0, c1) order, whose root
    is primitive, and gamma is that root.
    """
    if not _is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if m < 1:
        raise ValueError("m must be >= 1")
    q = p**m
    if q * q > cap:
        raise CapExceeded(f"q^2 = {q*q} exceeds cap {cap}")

    sub = Subfield(p, m)
    N = q * q - 1
    factors = _prime_factors(N)

    def primitive_pair(mod2, pair) -> bool:
        if pair == (0, 0):
            return False
        return all(_pair_pow(sub, mod2, pair, N // f) != (1, 0) for f in factors)

    if modulus2 is not None:
        mlist = list(modulus2)
        if len(mlist) != 3 or mlist[2] != 1:
            raise ReducibleModulus("modulus2 must be [c0, c1, 1]")
        mod2 = (mlist[0] % q, mlist[1] % q)
        if not _quadratic_irreducible(sub, *mod2):
            raise ReducibleModulus(f"X^2 + {mod2[1]}X + {mod2[0]} is reducible over GF({q})")
        gpair = (0, 1) if gamma is None else (gamma[0] % q, gamma[1] % q)
        if not primitive_pair(mod2, gpair):
            raise NotPrimitive(f"gamma = {gpair} is not primitive in GF({q}^2)")
    else:
        if gamma is not None:
            raise ValueError("gamma override requires an explicit modulus2")
        found = None
        for c0 in range(q):
            for c1 in range(q):
                if not _quadratic_irreducible(sub, c0, c1):
                    continue
                if primitive_pair((c0, c1), (0, 1)):
                    found = (c0, c1)
                    break
            if found:
                break
        if found is None:
            raise NotPrimitive("no primitive quadratic found")  # cannot happen
        mod2 = found
        gpair = (0, 1)

    # discrete-log tables w.r.t. gamma
    exp_pairs = [0] * N
    log: list[Optional[int]] = [None] * (q * q)
    cur = (1, 0)
    for e in range(N):
        code = cur[0] + cur[1] * q
        exp_pairs[e] = code
        if log[code] is not None:
            raise NotPrimitive("gamma has order < q^2 - 1")
        log[code] = e
        cur = _pair_mul(sub, mod2, cur, gpair)
    if cur != (1, 0):
        raise NotPrimitive("gamma does not generate the unit group")

    zech = [0] * N
    for e in range(N):
        code = exp_pairs[e]
        s0 = sub.add(1, code % q)
        scode = s0 + (code // q) * q
        zech[e] = -1 if scode == 0 else log[scode]

    return FieldCtx(p, m, sub, mod2, gpair, exp_pairs, log, zech)


def frobenius(ctx: FieldCtx, x: int) -> int:
    """x -> x^q; an involution on GF(q^2), identity exactly on GF(q)."""
    return ctx.frobenius(x)


def mu_subgroup(ctx: FieldCtx, n: int) -> list[int]:
    """The multiplicative subgroup of order n, as a list of exponents."""
    if n < 1 or ctx.N % n != 0:
        raise NotDivisor(f"{n} does not divide q^2 - 1 = {ctx.N}")
    step = ctx.N // n
    return [step * i % ctx.N for i in range(n)]


class CosetSystem:
    """The cosets A_0..A_{d-1} of mu_{(q+1)/d} inside mu_{q+1}.

    A_k = {x in mu_{q+1} : x^{(q+1)/d} = epsilon^k} with
    epsilon = gamma^{(q^2-1)/d}.
    """

    def __init__(self, ctx: FieldCtx, d: int):
        if d < 1 or (ctx.q + 1) % d != 0:
            raise NotDivisor(f"{d} does not divide q + 1 = {ctx.q + 1}")
        self.ctx = ctx
        self.d = d
        self.csize = (ctx.q + 1) // d  # (q+1)/d = |A_k|
        self.eps = ctx.N // d  # exponent of epsilon
        qm1 = ctx.q - 1
        self.cosets = [
            [(qm1 * (k + d * j)) % ctx.N for j in range(self.csize)] for k in range(d)
        ]

    def epsilon_pow(self, j: int) -> int:
        return self.eps * (j % self.d) % self.ctx.N

    def __repr__(self):
        return f"CosetSystem(q={self.ctx.q}, d={self.d})"


def coset_system(ctx: FieldCtx, d: int) -> CosetSystem:
    return CosetSystem(ctx, d)


def coset_index(sys: CosetSystem, x: int) -> int:
    """The k with x in A_k; raises NotInMu if x is not in mu_{q+1}."""
    ctx = sys.ctx
    if x < 0 or (x * (ctx.q + 1)) % ctx.N != 0:
        raise NotInMu(f"element g^{x} is not in mu_{ctx.q + 1}")
    return (x // (ctx.q - 1)) % sys.d
