"""Exact arithmetic in the cyclotomic integers Z[zeta_p].

Elements are stored in the basis ``1, zeta, ..., zeta^{p-2}``; ``zeta^{p-1}``
is rewritten as ``-(1 + zeta + ... + zeta^{p-2})``.  The representation is
unique, so equality and hashing are plain tuple operations.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Sequence

from .errors import PrimeMismatch

INT_POWER = "INT_POWER"
SQRT_PSTAR_POWER = "SQRT_PSTAR_POWER"

_JSON_SAFE = 2**53


def canon(p: int, raw: Iterable[int]) -> "CycInt":
    """Reduce coefficients indexed by exponent (taken mod ``p``) to canonical form."""
    acc = [0] * p
    for j, c in enumerate(raw):
        acc[j % p] += c
    top = acc[p - 1]
    return CycInt._make(p, tuple(c - top for c in acc[: p - 1]))


@total_ordering
class CycInt:
    """An element ``sum c_j zeta_p^j`` of Z[zeta_p] in canonical coordinates."""

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, p: int, coeffs: Sequence[int] = ()):
        coeffs = list(coeffs)
        if len(coeffs) > p - 1:
            other = canon(p, coeffs)
            coeffs = list(other.coeffs)
        coeffs += [0] * (p - 1 - len(coeffs))
        self.p = p
        self.coeffs = tuple(int(c) for c in coeffs)
        self._hash = None

    @classmethod
    def _make(cls, p, coeffs):
        obj = cls.__new__(cls)
        obj.p = p
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_int(cls, p: int, c: int) -> "CycInt":
        return cls._make(p, (int(c),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, j: int = 1) -> "CycInt":
        """``zeta_p^j`` for any integer ``j``."""
        raw = [0] * p
        raw[j % p] = 1
        return canon(p, raw)

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Sequence[int]) -> "CycInt":
        """``sum_j counts[j] * zeta^j`` (``counts`` has length ``p``)."""
        return canon(p, counts)

    # -- structure ---------------------------------------------------------
    def _check(self, other: "CycInt"):
        if other.p != self.p:
            raise PrimeMismatch(f"cannot combine elements of Z[zeta_{self.p}] and Z[zeta_{other.p}]")

    def _coerce(self, other):
        if isinstance(other, CycInt):
            self._check(other)
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return NotImplemented

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt._make(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt._make(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt._make(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "CycInt":
        return CycInt._make(self.p, tuple(a * c for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        raw = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        raw[(i + j) % p] += a * b
        return canon(p, raw)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = CycInt.from_int(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def mul_zeta(self, j: int) -> "CycInt":
        """Multiply by ``zeta^j`` (a cyclic shift followed by reduction)."""
        p = self.p
        raw = [0] * p
        for i, a in enumerate(self.coeffs):
            raw[(i + j) % p] += a
        return canon(p, raw)

    def galois(self, a: int) -> "CycInt":
        """Image under the automorphism ``zeta -> zeta^a`` (``p`` does not divide ``a``)."""
        if a % self.p == 0:
            raise ValueError("a must be prime to p")
        p = self.p
        raw = [0] * p
        for i, c in enumerate(self.coeffs):
            raw[(i * a) % p] += c
        return canon(p, raw)

    # -- comparison / hashing ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __lt__(self, other):
        if not isinstance(other, CycInt):
            return NotImplemented
        return (self.p, self.coeffs) < (other.p, other.coeffs)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.p, self.coeffs))
        return h

    # -- conversions ---------------------------------------------------------
    def evaluate(self) -> complex:
        """Numeric value at ``zeta = exp(2 pi i / p)`` (for sanity checks only)."""
        w = cmath.exp(2j * cmath.pi / self.p)
        return sum(c * w**j for j, c in enumerate(self.coeffs))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "coeffs": [c if abs(c) < _JSON_SAFE else str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CycInt":
        return cls(int(obj["p"]), [int(c) for c in obj["coeffs"]])

    def __repr__(self):
        return f"CycInt({self.p}, {list(self.coeffs)})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            if j == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


@lru_cache(maxsize=None)
def gauss_sum(p: int, t: int = 1) -> CycInt:
    """Quadratic Gauss sum ``sum_{x != 0} eta'(x) zeta^{Tr(x)}`` over F_{p^t}.

    For ``t = 1`` this is the principal square root of ``p* = (-1)^{(p-1)/2} p``.
    """
    if t == 1:
        raw = [0] * p
        for x in range(1, p):
            raw[x] += 1 if pow(x, (p - 1) // 2, p) == 1 else -1
        return canon(p, raw)
    from .gf_core import build_ctx

    ctx = build_ctx(p, t)
    tr = ctx.trace_table(1)
    raw = [0] * p
    for x in range(1, ctx.q):
        raw[int(tr[x])] += ctx.quad_char(x)
    return canon(p, raw)


def pstar(p: int) -> int:
    return p if p % 4 == 1 else -p


def closed_value(p, kind: str, eps: int, e: int, j: int = 0) -> CycInt:
    """``eps * p^e`` or ``eps * p^e * sqrt(p*)``, optionally times ``zeta^j``.

    ``p`` may be a prime or any object with a ``p`` attribute (a ParamSet).
    ``sqrt(p*)`` is the Gauss sum over F_p.
    """
    p = getattr(p, "p", p)
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if kind == INT_POWER:
        v = CycInt.from_int(p, eps * p**e)
    elif kind == SQRT_PSTAR_POWER:
        v = gauss_sum(p, 1).scale(eps * p**e)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return v.mul_zeta(j) if j % p else v


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def ppow(p: int, e) -> Fraction:
    """``p^e`` as an exact fraction; ``e`` may be negative but must be an integer."""
    e = Fraction(e)
    if e.denominator != 1:
        raise ValueError(f"non-integral exponent {e}")
    return Fraction(p) ** int(e)


def exact_count(x, what: str = "count") -> int:
    """Convert a formula result to a nonnegative int, insisting on exactness."""
    x = Fraction(x)
    if x.denominator != 1 or x < 0:
        raise ArithmeticError(f"{what} evaluates to {x}, not a nonnegative integer")
    return int(x)
