"""Parameter validation and table-driven arithmetic in F_{p^n}.

A :class:`ParamSet` carries one admissible instance ``(p, n, k, t)`` and
everything derived from it.

A field element is an ``int`` code in ``[0, q)``: the base-p digits of the
code are its coordinates in the polynomial basis ``1, pi, ..., pi^{n-1}``,
where ``pi`` is a root of the chosen primitive modulus.  Zero is code 0 and
the prime field F_p is exactly the codes ``0..p-1``.  Multiplication goes
through log/exp tables, addition through a digit-wise addition table, so
both a scalar API and a numpy (vectorized) API are available.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Optional

import numpy as np

from .errors import ExcludedK, JNotDividingN, NotOddPrime, TNotDividingD, TooLarge, ValidationError

D_ODD = "D_ODD"
D_EVEN = "D_EVEN"
DD = "DD"


def is_prime(n: int) -> bool:
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


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class ParamSet:
    """One admissible instance together with everything derived from it.

    ``d = gcd(n, k)``, ``dprime = gcd(n, 2k)``, ``s = n/d``, ``q0 = p^d``.
    ``m`` and ``mu`` are only defined when they make sense (``n`` even, and
    ``dprime == 2d`` respectively) and are ``None`` otherwise.
    """

    p: int
    n: int
    k: int
    t: int
    d: int = field(init=False)
    dprime: int = field(init=False)
    s: int = field(init=False)
    q0: int = field(init=False)
    q: int = field(init=False)
    n0: int = field(init=False)
    m: Optional[int] = field(init=False)
    mu: Optional[int] = field(init=False)
    case_tag: str = field(init=False)
    k_sixth: bool = field(init=False)
    k_quarter: bool = field(init=False)

    def __post_init__(self):
        p, n, k, t = self.p, self.n, self.k, self.t
        d = gcd(n, k)
        dprime = gcd(n, 2 * k)
        s = n // d
        m = n // 2 if n % 2 == 0 else None
        mu = (-1) ** (m // d) if dprime == 2 * d else None
        if dprime == 2 * d:
            tag = DD
        elif n % 2:
            tag = D_ODD
        else:
            tag = D_EVEN
        put = object.__setattr__
        put(self, "d", d)
        put(self, "dprime", dprime)
        put(self, "s", s)
        put(self, "q0", p**d)
        put(self, "q", p**n)
        put(self, "n0", n // t)
        put(self, "m", m)
        put(self, "mu", mu)
        put(self, "case_tag", tag)
        put(self, "k_sixth", 6 * k in (n, 5 * n))
        put(self, "k_quarter", 4 * k in (n, 2 * n, 3 * n))

    @property
    def e1(self) -> int:
        """Exponent ``p^{3k} + 1`` of the first Dembowski-Ostrom monomial."""
        return self.p ** (3 * self.k) + 1

    @property
    def e2(self) -> int:
        """Exponent ``p^k + 1`` of the second monomial."""
        return self.p**self.k + 1

    def cases(self) -> dict[str, Optional[str]]:
        """Which closed-form table case applies to each result (None = n/a)."""
        odd_dt = (self.d // self.t) % 2 == 1
        if self.case_tag == DD:
            t_case, s_case = "ii", "iii"
            c1 = "iv" if self.k_sixth else "iii"
            c2 = None if self.k_sixth else "iii"
        else:
            t_case = "i"
            s_case = "i" if self.case_tag == D_ODD else "ii"
            c1 = "i" if odd_dt else "ii"
            c2 = c1
        corr = None if self.k_sixth else s_case
        return {
            "t_distribution": t_case,
            "s_distribution": s_case,
            "c1_weights": c1,
            "correlation": corr,
            "c2_weights": c2,
        }

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "derived": {
                "d": self.d,
                "dprime": self.dprime,
                "s": self.s,
                "q0": self.q0,
                "q": self.q,
                "n0": self.n0,
                "m": self.m,
                "mu": self.mu,
                "case_tag": self.case_tag,
                "k_sixth": self.k_sixth,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str | dict) -> "ParamSet":
        obj = json.loads(text) if isinstance(text, str) else text
        # derived values are recomputed, never trusted
        return derive_params(obj["p"], obj["n"], obj["k"], obj.get("t", 1))


def derive_params(p: int, n: int, k: int, t: int = 1) -> ParamSet:
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise NotOddPrime(f"p={p} is not an odd prime")
    if n < 2:
        raise ValidationError(f"n={n} must be at least 2")
    if not 1 <= k <= n - 1:
        raise ValidationError(f"k={k} must satisfy 1 <= k <= n-1")
    if 4 * k in (n, 2 * n, 3 * n):
        raise ExcludedK(f"k={k} is one of n/4, n/2, 3n/4 for n={n}")
    if t < 1:
        raise ValidationError(f"t={t} must be positive")
    ps = ParamSet(p, n, k, t)
    if ps.d % t:
        raise TNotDividingD(f"t={t} does not divide d={ps.d}")
    assert ps.dprime in (ps.d, 2 * ps.d)
    assert (ps.dprime == 2 * ps.d) == (ps.s % 2 == 0)
    if ps.dprime == 2 * ps.d:
        assert (k // ps.d) % 2 == 1
    return ps

DEFAULT_GUARD = 2**26
_CHUNK_TABLE_LIMIT = 2**20


def _poly_mulmod(a, b, f, p):
    # a, b: coefficient lists (constant first) of degree < n; f monic of degree n
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    for deg in range(len(prod) - 1, n - 1, -1):
        c = prod[deg]
        if c:
            for i in range(n):
                prod[deg - n + i] = (prod[deg - n + i] - c * f[i]) % p
            prod[deg] = 0
    return prod[:n]


def _poly_powmod_x(e, f, p):
    n = len(f) - 1
    result = [1] + [0] * (n - 1)
    if n == 1:
        base = [(-f[0]) % p]
    else:
        base = [0, 1] + [0] * (n - 2)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive_poly(coeffs, p: int) -> bool:
    """True when the monic polynomial ``coeffs`` (constant first) is primitive."""
    f = [c % p for c in coeffs]
    n = len(f) - 1
    if n < 1 or f[-1] != 1 or f[0] == 0:
        return False
    order = p**n - 1
    one = [1] + [0] * (n - 1)
    if _poly_powmod_x(order, f, p) != one:
        return False
    return all(_poly_powmod_x(order // r, f, p) != one for r in prime_factors(order))


def smallest_primitive_poly(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of degree ``n``.

    Candidates are ordered by their coefficient tuple read constant term
    first, so ``c0`` is the most significant key.
    """
    # cheap necessary conditions first: (-1)^n c0 is the norm of a generator,
    # so it must be a primitive root mod p; and f has no root in F_p
    roots = {g for g in range(1, p) if all(pow(g, (p - 1) // r, p) != 1 for r in prime_factors(p - 1))}
    for low in itertools.product(range(p), repeat=n):
        if ((-1) ** n * low[0]) % p not in roots:
            continue
        coeffs = list(low) + [1]
        if n > 1 and any(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0 for x in range(p)):
            continue
        if is_primitive_poly(coeffs, p):
            return tuple(coeffs)
    raise AssertionError(f"no primitive polynomial of degree {n} over F_{p}")


class FieldCtx:
    """A concrete, immutable realization of F_{p^n}."""

    def __init__(self, p: int, n: int, modulus=None):
        self.p = p
        self.n = n
        self.q = q = p**n
        self.order = q - 1
        if modulus is None:
            modulus = smallest_primitive_poly(p, n)
        self.modulus = tuple(int(c) for c in modulus)
        self.powers = np.array([p**i for i in range(n)], dtype=np.int64)

        codes = np.arange(q, dtype=np.int64)
        self.digits = ((codes[:, None] // self.powers[None, :]) % p).astype(np.int8)
        self.neg_table = (((-self.digits.astype(np.int64)) % p) @ self.powers).astype(np.int64)
        self._neg = self.neg_table.tolist()

        # digit-wise addition works chunk by chunk with one shared table
        L = 1
        while L < n and p ** (2 * (L + 1)) <= _CHUNK_TABLE_LIMIT:
            L += 1
        L = min(L, n)
        self._chunk_len = L
        self._chunk = P = p**L
        self._nchunks = -(-n // L)
        cd = (np.arange(P)[:, None] // (p ** np.arange(L))[None, :]) % p
        summed = (cd[:, None, :] + cd[None, :, :]) % p
        self.add_chunk = (summed @ (p ** np.arange(L))).astype(np.int64)
        self._add_chunk = self.add_chunk.tolist()

        self._build_log_exp()
        Q1 = self.order
        self.frob_tables = np.empty((n, q), dtype=np.int64)
        nz = codes[1:]
        for j in range(n):
            tab = np.zeros(q, dtype=np.int64)
            tab[1:] = self.exp[(self.log[nz] * (p**j)) % Q1]
            self.frob_tables[j] = tab
        self._frob = [row.tolist() for row in self.frob_tables]
        self._trace_tables: dict[int, np.ndarray] = {}
        self._trace_lists: dict[int, list] = {}

    def _build_log_exp(self):
        p, n, q = self.p, self.n, self.q
        top_w = p ** (n - 1)
        red = [self._from_digit_list([(-c * t) % p for c in self.modulus[:n]]) for t in range(p)]
        exp = [0] * (q - 1)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            top = cur // top_w
            cur = (cur - top * top_w) * p
            if top:
                cur = self.add(cur, red[top])
        if cur != 1:
            raise AssertionError("modulus is not primitive")
        self.exp = np.array(exp, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[self.exp] = np.arange(q - 1, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("exp table does not cover the multiplicative group")
        self.log = log
        self._exp = exp
        self._log = log.tolist()

    def _from_digit_list(self, ds) -> int:
        return int(sum(int(c) * self.p**i for i, c in enumerate(ds)))

    # ------------------------------------------------------------------
    # scalar API
    # ------------------------------------------------------------------
    @property
    def pi(self) -> int:
        return self._exp[1 % self.order] if self.order > 1 else self._exp[0]

    def from_int(self, c: int) -> int:
        return c % self.p

    def from_digits(self, ds) -> int:
        return self._from_digit_list(ds)

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.digits[a])

    def add(self, a: int, b: int) -> int:
        P = self._chunk
        if self._nchunks == 1:
            return self._add_chunk[a][b]
        out, w = 0, 1
        tab = self._add_chunk
        while a or b:
            out += tab[a % P][b % P] * w
            a //= P
            b //= P
            w *= P
        return out

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self.order]

    def power_of_pi(self, e: int) -> int:
        return self._exp[e % self.order]

    def frob(self, a: int, j: int) -> int:
        """``a^{p^j}``; ``j`` is taken mod ``n`` (negative allowed)."""
        return self._frob[j % self.n][a]

    def _check_div(self, j: int):
        if j < 1 or self.n % j:
            raise JNotDividingN(f"j={j} does not divide n={self.n}")

    def trace_table(self, j: int = 1) -> np.ndarray:
        """Table of ``Tr^n_j`` indexed by code (values are codes in F_{p^j})."""
        self._check_div(j)
        tab = self._trace_tables.get(j)
        if tab is None:
            codes = np.arange(self.q, dtype=np.int64)
            acc = codes.copy()
            for i in range(1, self.n // j):
                acc = self.vadd(acc, self.frob_tables[j * i])
            tab = acc
            self._trace_tables[j] = tab
            self._trace_lists[j] = tab.tolist()
        return tab

    def trace(self, a: int, j: int = 1) -> int:
        if j not in self._trace_lists:
            self.trace_table(j)
        return self._trace_lists[j][a]

    def in_subfield(self, a: int, j: int) -> bool:
        return self._frob[j % self.n][a] == a

    def subfield(self, j: int) -> np.ndarray:
        """Sorted codes of the subfield F_{p^j}."""
        self._check_div(j)
        codes = np.arange(self.q, dtype=np.int64)
        return codes[self.frob_tables[j % self.n] == codes]

    def subfield_generator(self, j: int) -> int:
        """Primitive element ``pi^{(q-1)/(p^j-1)}`` of F_{p^j}."""
        self._check_div(j)
        return self._exp[(self.order // (self.p**j - 1)) % self.order]

    def quad_char(self, a: int, j: int | None = None) -> int:
        """Quadratic character of F_{p^j} (``j = n`` by default) at ``a``."""
        if j is None:
            j = self.n
        self._check_div(j)
        if not self.in_subfield(a, j):
            raise ValueError(f"element {a} is not in F_{self.p}^{j}")
        if a == 0:
            return 0
        y = self.pow(a, (self.p**j - 1) // 2)
        if y == 1:
            return 1
        assert y == self.p - 1
        return -1

    # ------------------------------------------------------------------
    # vectorized API (numpy int64 code arrays, broadcasting allowed)
    # ------------------------------------------------------------------
    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        P = self._chunk
        tab = self.add_chunk
        if self._nchunks == 1:
            return tab[a, b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        for _ in range(self._nchunks):
            out += tab[a % P, b % P] * w
            a = a // P
            b = b // P
            w *= P
        return out

    def vneg(self, a):
        return self.neg_table[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.log[a] * e) % self.order]
        zero_val = 1 if e == 0 else 0
        return np.where(a == 0, zero_val, out)

    def vfrob(self, a, j: int):
        return self.frob_tables[j % self.n][np.asarray(a, dtype=np.int64)]

    def vtrace(self, a, j: int = 1):
        return self.trace_table(j)[np.asarray(a, dtype=np.int64)]

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def _cached_ctx(p: int, n: int) -> FieldCtx:
    return FieldCtx(p, n)


def build_ctx(p: int, n: int, guard: int = DEFAULT_GUARD) -> FieldCtx:
    """Field context for F_{p^n} with the canonical primitive modulus.

    Contexts are cached per ``(p, n)``; they are immutable, so sharing is safe.
    """
    if not (p > 2 and is_prime(p)):
        raise NotOddPrime(f"p={p} is not an odd prime")
    if n < 1:
        raise ValueError("n must be positive")
    if p**n > guard:
        raise TooLarge(f"q = {p}^{n} exceeds the table guard {guard}")
    return _cached_ctx(p, n)
