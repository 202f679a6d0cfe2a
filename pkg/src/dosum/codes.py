"""The trace codes C1 and C2 over F_{p^t} and their weight distributions.

C1 consists of the words ``(Tr^n_t(alpha pi^{(p^{3k}+1)i} + beta pi^{(p^k+1)i}))_i``
of length ``q - 1``; C2 adds ``gamma pi^i`` inside the trace.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .budget import check_budget
from .cyclo import CycInt, exact_count, ppow
from .errors import InapplicableCase, NonIntegerWeight
from .expsum import (
    FAST,
    _count_rows,
    _full_trace_tables,
    _monomials,
    _phi_linear,
    _row_hist,
    s_fast,
    t_fast,
    full_t_values,
)
from .gf_core import DD, FieldCtx, ParamSet

C1 = "C1"
C2 = "C2"
ENUM = "ENUM"
FROM_DIST = "FROM_DIST"


class WeightTable(Counter):
    """``weight -> number of codewords``."""

    def mass(self) -> int:
        return sum(self.values())

    def clean(self) -> "WeightTable":
        for w in [w for w, c in self.items() if c == 0]:
            del self[w]
        return self

    def to_csv(self) -> str:
        return "weight,count\n" + "".join(f"{w},{c}\n" for w, c in sorted(self.items()))

    def to_json(self) -> list:
        return [{"weight": w, "count": str(c)} for w, c in sorted(self.items())]

    @classmethod
    def from_json(cls, rows) -> "WeightTable":
        return cls({int(r["weight"]): int(r["count"]) for r in rows})

    @classmethod
    def merged(cls, tables) -> "WeightTable":
        out = cls()
        for t in tables:
            out.update(t)
        return out.clean()


def code_exponents(params: ParamSet, which: str) -> tuple:
    e1, e2 = params.e1, params.e2
    if which == C1:
        return (e1, e2)
    if which == C2:
        return (1, e1, e2)
    raise ValueError(f"unknown code {which!r}")


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------
def cyclotomic_coset(e: int, step: int, modulus: int) -> list:
    """Orbit of ``e`` under multiplication by ``step`` modulo ``modulus``."""
    e %= modulus
    out, x = [], e
    while True:
        out.append(x)
        x = (x * step) % modulus
        if x == e:
            return out


def poly_mul(ctx: FieldCtx, f, g) -> list:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return out


def poly_divmod(ctx: FieldCtx, f, g):
    """Quotient and remainder of ``f`` by ``g`` (coefficient lists, low degree first)."""
    f = list(f)
    dg = len(g) - 1
    lead_inv = ctx.inv(g[-1])
    quo = [0] * max(1, len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            c = ctx.mul(c, lead_inv)
            quo[i - dg] = c
            for j, b in enumerate(g):
                f[i - dg + j] = ctx.sub(f[i - dg + j], ctx.mul(c, b))
    rem = f[:dg] if dg else [0]
    return quo, rem


def minimal_poly(ctx: FieldCtx, params: ParamSet, e: int) -> list:
    """Minimal polynomial of ``pi^{-e}`` over F_{p^t}, low degree first."""
    if e % ctx.order == 0:
        raise ValueError("exponent 0 gives the degenerate factor x - 1")
    coset = cyclotomic_coset(-e, params.p**params.t, ctx.order)
    poly = [1]
    for c in coset:
        root = int(ctx.exp[c])
        poly = poly_mul(ctx, poly, [ctx.neg(root), 1])
    for c in poly:
        if not ctx.in_subfield(c, params.t):
            raise AssertionError("minimal polynomial has a coefficient outside F_{p^t}")
    return poly


@dataclass
class CodeSpec:
    params: ParamSet
    which: str
    exponents: tuple
    cosets: list
    polys: list
    dimension: int
    length: int

    def describe(self) -> str:
        lines = [f"code {self.which}: length {self.length}, dimension {self.dimension} over F_{self.params.p}^{self.params.t}"]
        for e, cos, h in zip(self.exponents, self.cosets, self.polys):
            lines.append(f"  exponent {e}: coset of -e {cos}; h = {h}")
        return "\n".join(lines)

    def claimed_dimension(self) -> int:
        n0 = self.params.n0
        if self.which == C1:
            return 3 * n0 // 2 if (self.params.case_tag == DD and self.params.k_sixth) else 2 * n0
        return 5 * n0 // 2 if (self.params.case_tag == DD and self.params.k_sixth) else 3 * n0


def build_code(ctx: FieldCtx, params: ParamSet, which: str) -> CodeSpec:
    """Parity-check data of C1 or C2; the dimension comes from the cosets."""
    exps = code_exponents(params, which)
    step = params.p**params.t
    cosets = [cyclotomic_coset(-e, step, ctx.order) for e in exps]
    keys = {min(c) for c in cosets}
    if len(keys) != len(cosets):
        raise AssertionError("two defining exponents share a cyclotomic coset")
    spec = CodeSpec(
        params=params,
        which=which,
        exponents=exps,
        cosets=cosets,
        polys=[minimal_poly(ctx, params, e) for e in exps],
        dimension=sum(len(c) for c in cosets),
        length=ctx.order,
    )
    if spec.dimension != spec.claimed_dimension():
        raise AssertionError(f"dimension {spec.dimension} differs from the expected {spec.claimed_dimension()}")
    return spec


def punctured_gcd(params: ParamSet) -> int:
    """``gcd(q - 1, p^k + 1)``, checked against ``p^d + 1`` or 2."""
    g = gcd(params.q - 1, params.p**params.k + 1)
    expected = params.q0 + 1 if params.case_tag == DD else 2
    if g != expected:
        raise AssertionError(f"gcd(q-1, p^k+1) = {g}, expected {expected}")
    return g


# ----------------------------------------------------------------------
# single codewords
# ----------------------------------------------------------------------
def codeword(ctx: FieldCtx, params: ParamSet, which: str, alpha: int, beta: int, gamma: int = 0) -> np.ndarray:
    """Symbols ``c_0 .. c_{q-2}`` (codes of F_{p^t})."""
    i = np.arange(ctx.order, dtype=np.int64)
    coeffs = (alpha, beta) if which == C1 else (gamma, alpha, beta)
    acc = np.zeros(ctx.order, dtype=np.int64)
    for c, e in zip(coeffs, code_exponents(params, which)):
        if c:
            acc = ctx.vadd(acc, ctx.vmul(c, ctx.exp[(e * i) % ctx.order]))
    return ctx.trace_table(params.t)[acc]


def codeword_weight(ctx: FieldCtx, params: ParamSet, which: str, alpha: int, beta: int, gamma: int = 0) -> int:
    return int(np.count_nonzero(codeword(ctx, params, which, alpha, beta, gamma)))


def _weight_from_R(params: ParamSet, R: CycInt) -> int:
    if not R.is_rational():
        raise NonIntegerWeight(f"R = {R} is not rational")
    r = R.to_int()
    pt = params.p**params.t
    if r % pt:
        raise NonIntegerWeight(f"R = {r} is not divisible by p^t")
    return (pt - 1) * params.p ** (params.n - params.t) - r // pt


def weight_from_sums(ctx: FieldCtx, params: ParamSet, which: str, alpha: int, beta: int, gamma: int = 0) -> int:
    """Hamming weight from the scaled character sums ``R``."""
    R = CycInt.from_int(ctx.p, 0)
    for w in ctx.subfield(params.t)[1:].tolist():
        a, b = ctx.mul(w, alpha), ctx.mul(w, beta)
        if which == C1:
            R = R + t_fast(ctx, params, a, b)
        else:
            R = R + s_fast(ctx, params, a, b, ctx.mul(w, gamma))
    return _weight_from_R(params, R)


# ----------------------------------------------------------------------
# full distributions
# ----------------------------------------------------------------------
class _SubfieldArith:
    """Local tables for F_{p^t}, indexed ``0 .. p^t - 1`` with 0 the zero element."""

    def __init__(self, ctx: FieldCtx, t: int):
        self.codes = ctx.subfield(t)
        assert self.codes[0] == 0
        self.size = self.codes.size
        self.local = np.full(ctx.q, -1, dtype=np.int64)
        self.local[self.codes] = np.arange(self.size)
        c = self.codes
        self.add = self.local[ctx.vadd(c[:, None], c[None, :])]
        self.mul = self.local[ctx.vmul(c[:, None], c[None, :])]
        self.neg = self.local[ctx.vneg(c)]
        self.inv = np.zeros(self.size, dtype=np.int64)
        self.inv[1:] = self.local[[ctx.inv(int(x)) for x in c[1:]]]


def _generator_rows(ctx: FieldCtx, params: ParamSet, which: str, F: _SubfieldArith) -> np.ndarray:
    """A basis over F_{p^t} of the code, as local-index rows."""
    i = np.arange(ctx.order, dtype=np.int64)
    trt = ctx.trace_table(params.t)
    rows = []
    for e in code_exponents(params, which):
        mono = ctx.exp[(e * i) % ctx.order]
        for j in range(ctx.n):
            rows.append(F.local[trt[ctx.vmul(int(ctx.powers[j]), mono)]])
    M = np.array(rows, dtype=np.int64)
    # row reduction over F_{p^t}
    r = 0
    for c in range(M.shape[1]):
        if r == M.shape[0]:
            break
        piv = np.nonzero(M[r:, c])[0]
        if piv.size == 0:
            continue
        pr = r + piv[0]
        M[[r, pr]] = M[[pr, r]]
        M[r] = F.mul[F.inv[M[r, c]], M[r]]
        for rr in range(M.shape[0]):
            if rr != r and M[rr, c]:
                f = F.neg[M[rr, c]]
                M[rr] = F.add[M[rr], F.mul[f, M[r]]]
        r += 1
    return M[:r]


def _span_table(rows: np.ndarray, F: _SubfieldArith, length: int) -> np.ndarray:
    """All F_{p^t}-combinations of ``rows`` (one per output row)."""
    words = np.zeros((1, length), dtype=np.int64)
    for g in rows:
        scaled = F.mul[:, g]  # (size, L)
        words = F.add[words[None, :, :], scaled[:, None, :]].reshape(-1, length)
    return words


def weight_distribution_enum(ctx: FieldCtx, params: ParamSet, which: str) -> WeightTable:
    """Weights of all ``(p^t)^dim`` codewords, enumerated from a generator basis."""
    F = _SubfieldArith(ctx, params.t)
    G = _generator_rows(ctx, params, which, F)
    dim = G.shape[0]
    check_budget(F.size**dim * ctx.order, f"{which} enumeration")
    low = 0
    while low < dim and F.size ** (low + 1) * ctx.order <= 2**23:
        low += 1
    low_words = _span_table(G[:low], F, ctx.order)
    hist = np.zeros(ctx.order + 1, dtype=np.int64)
    high_words = _span_table(G[low:], F, ctx.order)
    for v in high_words:
        words = F.add[low_words, v[None, :]]
        hist += np.bincount(np.count_nonzero(words, axis=1), minlength=ctx.order + 1)
    out = WeightTable({w: int(c) for w, c in enumerate(hist.tolist()) if c})
    assert out.mass() == F.size**dim
    return out


def _cyc_array(values) -> np.ndarray:
    return np.array([v.coeffs for v in values], dtype=object if any(abs(c) > 2**62 for v in values for c in v.coeffs) else np.int64)


def weight_distribution_from_sums(ctx: FieldCtx, params: ParamSet, which: str, alphas=None) -> WeightTable:
    """Weights of every message via the sums ``R``, tallied over all messages.

    The message map is ``q^{#coefficients} / (p^t)^{dim}``-to-one, and the
    counts are divided by that factor.  ``alphas`` restricts to a shard
    (no division then; merge shards and call :func:`normalize_message_counts`).
    """
    full = alphas is None
    q, p, t = ctx.q, ctx.p, params.t
    alphas = np.arange(q) if full else np.asarray(alphas, dtype=np.int64)
    ids, values = full_t_values(params, FAST)
    vals = _cyc_array(values)
    scalers = [ctx.vmul(int(w), np.arange(q)) for w in ctx.subfield(t)[1:].tolist()]
    pt = p**t
    base = (pt - 1) * p ** (params.n - t)
    out = WeightTable()
    if which == C1:
        check_budget(alphas.size * q * (pt - 1), "C1 weights from sums")
        step = max(1, 2**20 // q)
        for lo in range(0, alphas.size, step):
            blk = alphas[lo : lo + step]
            R = 0
            for sc in scalers:
                R = R + vals[ids[sc[blk]][:, sc]]
            if np.any(R[..., 1:] != 0):
                raise NonIntegerWeight("irrational R in C1 sweep")
            r = R[..., 0]
            if np.any(r % pt):
                raise NonIntegerWeight("R not divisible by p^t in C1 sweep")
            w = base - r // pt
            u, c = np.unique(w, return_counts=True)
            for wi, ci in zip(u.tolist(), c.tolist()):
                out[int(wi)] += ci
    else:
        out = _c2_weights_from_sums(ctx, params, ids, values, alphas)
    out.clean()
    return normalize_message_counts(ctx, params, which, out) if full else out


def normalize_message_counts(ctx: FieldCtx, params: ParamSet, which: str, table: WeightTable) -> WeightTable:
    ncoef = 2 if which == C1 else 3
    dim = build_code(ctx, params, which).dimension
    ratio = Fraction(ctx.q**ncoef, (params.p**params.t) ** dim)
    assert ratio.denominator == 1
    ratio = int(ratio)
    if any(c % ratio for c in table.values()):
        raise AssertionError("message counts not divisible by the fibre size of the message map")
    return WeightTable({w: c // ratio for w, c in table.items()})


def _sub_trace_table(ctx: FieldCtx, t: int) -> dict:
    """``Tr^t_1`` on the codes of F_{p^t}."""
    out = {}
    for y in ctx.subfield(t).tolist():
        acc = 0
        for j in range(t):
            acc = ctx.add(acc, ctx.frob(y, j))
        out[y] = acc
    return out


def _c2_weights_from_sums(ctx: FieldCtx, params: ParamSet, ids, values, alphas) -> WeightTable:
    """C2 weights: per pair, bucket ``x0`` by ``Tr^n_t f(x0)`` and convert to ``gamma`` counts."""
    q, p, t = ctx.q, ctx.p, params.t
    check_budget(alphas.size * q * q, "C2 weights from sums")
    F = _SubfieldArith(ctx, t)
    trt = ctx.trace_table(t)
    X1, X2 = _monomials(params)
    codes = np.arange(q)
    if t == 1:
        Wt, Vt, _ = _full_trace_tables(params)
    else:
        Wt = None
        Vt = np.empty((q, q), dtype=np.int64)
        step = max(1, 2**22 // q)
        for lo in range(0, q, step):
            Vt[lo : lo + step] = trt[ctx.vmul(codes[lo : lo + step, None], X2[None, :])]
    pl = _phi_linear(params)
    omegas = ctx.subfield(t)[1:]
    scalers = [ctx.vmul(int(w), codes) for w in omegas.tolist()]
    keys: Counter = Counter()
    for a in alphas.tolist():
        if t == 1:
            theta = F.local[(Wt[a][None, :].astype(np.int64) + Vt) % p]
        else:
            theta = F.local[ctx.vadd(trt[ctx.vmul(a, X1)][None, :], Vt)]
        hist = _row_hist(theta, F.size)
        w = pl.kernel_dims(np.full(q, a), codes)
        tids = np.stack([ids[sc[a], sc] for sc in scalers], axis=1)
        _count_rows(np.hstack([w[:, None], tids.astype(np.int64), hist]), keys)
    subtr = _sub_trace_table(ctx, t)
    nw = len(omegas)
    pt = p**t
    base = (pt - 1) * p ** (params.n - t)
    out = WeightTable()
    for key, mult in keys.items():
        w, tid, hist = key[0], key[1 : 1 + nw], key[1 + nw :]
        c0 = params.q0**w
        images = 0
        for li, h in enumerate(hist):
            if not h:
                continue
            if h % c0:
                raise AssertionError("x0 fibre not divisible by kernel size")
            theta = int(F.codes[li])
            R = CycInt.from_int(p, 0)
            for om, ti in zip(omegas.tolist(), tid):
                R = R + values[ti].mul_zeta(-subtr[ctx.mul(om, theta)])
            out[_weight_from_R(params, R)] += mult * (h // c0)
            images += h // c0
        out[base] += mult * (q - images)
    return out


def weight_distribution(ctx: FieldCtx, params: ParamSet, which: str, method: str = ENUM) -> WeightTable:
    if method == ENUM:
        return weight_distribution_enum(ctx, params, which)
    if method == FROM_DIST:
        return weight_distribution_from_sums(ctx, params, which)
    raise ValueError(f"unknown method {method!r}")


# ----------------------------------------------------------------------
# closed-form tables
# ----------------------------------------------------------------------
def _finish(rows, params: ParamSet, which: str) -> WeightTable:
    out = WeightTable()
    for wt, cnt in rows:
        w = exact_count(wt, "weight")
        c = exact_count(cnt, f"multiplicity of weight {w}")
        if c:
            out[w] += c
    return out


def theorem_c1_weights(params: ParamSet, as_printed: bool = False) -> WeightTable:
    """Closed-form weight distribution of C1.

    ``as_printed`` keeps a sign slip in one multiplicity of the ``d' = 2d``
    table (``+mu p^{m+4d}`` instead of ``-mu p^{m+4d}``).
    """
    p, n, d, t = params.p, params.n, params.d, params.t
    P = lambda e: ppow(p, e)  # noqa: E731
    half = Fraction(1, 2)
    u = p**t - 1
    B = P(n - t)
    q1 = P(n) - 1
    case = params.cases()["c1_weights"]
    if case in ("i", "ii"):
        h = Fraction(n - d, 2)
        r_plus = half * P(h) * (P(h) + 1) * q1
        r_minus = half * P(h) * (P(h) - 1) * q1
    if case == "i":
        rows = [
            (u * (B - P(Fraction(n + d, 2) - t)), r_plus),
            (u * B, q1 * (P(n) - P(n - d) + 1)),
            (u * (B + P(Fraction(n + d, 2) - t)), r_minus),
        ]
    elif case == "ii":
        a2 = half * q1 * (P(n - d) - 1) / (P(2 * d) - 1)
        a0 = half * P(2 * d) * (P(n) - P(n - d) - P(n - 2 * d) + 1) * q1 / (P(2 * d) - 1)
        rows = [
            (u * (B - P(Fraction(n, 2) + d - t)), a2),
            (u * (B - P(Fraction(n + d, 2) - t)), r_plus),
            (u * (B - P(Fraction(n, 2) - t)), a0),
            (u * (B + P(Fraction(n, 2) - t)), a0),
            (u * (B + P(Fraction(n + d, 2) - t)), r_minus),
            (u * (B + P(Fraction(n, 2) + d - t)), a2),
        ]
    elif case == "iii":
        m, mu = params.m, params.mu
        sign4 = 1 if as_printed else -1
        rows = [
            (u * (B + mu * P(m + 3 * d - t)), (P(m - 2 * d) - mu) * (P(m - d) + mu) * q1 / ((P(d) + 1) * (P(2 * d) - 1) * (P(3 * d) + 1))),
            (
                u * (B - mu * P(m + 2 * d - t)),
                (P(m - d) + mu) * (P(m + d) + P(m) - P(m - 2 * d) - mu * P(d)) * q1 / ((P(d) + 1) ** 3 * (P(d) - 1)),
            ),
            (
                u * (B + mu * P(m + d - t)),
                q1
                * (P(n + 3 * d) + P(n + 2 * d) - P(n) - P(n - d) - P(n - 2 * d) - mu * P(m + 3 * d) + mu * P(m) + P(3 * d))
                / ((P(d) + 1) ** 2 * (P(2 * d) - 1)),
            ),
            (
                u * (B - mu * P(m - t)),
                q1
                * (P(n + 6 * d) - P(n + 4 * d) - P(n + d) + mu * P(m + 5 * d) + sign4 * mu * P(m + 4 * d) + P(6 * d))
                / ((P(d) + 1) * (P(2 * d) - 1) * (P(3 * d) + 1)),
            ),
        ]
    elif case == "iv":
        rows = [
            (u * (B + P(Fraction(5 * n, 6) - t)), q1 / (P(Fraction(n, 6)) + 1)),
            (u * (B - P(Fraction(2 * n, 3) - t)), P(Fraction(n, 6)) * (P(Fraction(n, 3)) + 1) * q1 / (P(Fraction(n, 6)) + 1)),
            (u * (B + P(Fraction(n, 2) - t)), P(Fraction(n, 2)) * (P(Fraction(n, 2)) - 1) * (P(Fraction(2 * n, 3)) - 1) / (P(Fraction(n, 6)) + 1)),
        ]
    else:
        raise InapplicableCase("no closed form for C1 at these parameters")
    rows.append((0, 1))
    return _finish(rows, params, C1)


def theorem_c2_weights(params: ParamSet, as_printed: bool = False) -> WeightTable:
    """Closed-form weight distribution of C2.

    ``as_printed`` reproduces slips in the published tables: weights
    ``(p^t-1)(p^{n-d} -+ ...)`` in place of ``(p^t-1)(p^{n-t} -+ ...)`` when
    ``d/t`` is odd; when ``d/t`` is even, a factor ``p^m - 1`` in place of
    ``p^n - 1`` and a last nonzero row with the exponents ``n/2 - d - t`` and
    ``n/2 + d - t`` interchanged; and a row ``p^n`` (count 1) in place of
    weight 0 when ``d' = 2d``.
    """
    p, n, d, t = params.p, params.n, params.d, params.t
    if params.k_sixth or params.k_quarter:
        raise InapplicableCase("the C2 table excludes k in {n/6, 5n/6}")
    if n < 3:
        raise InapplicableCase("the C2 table needs n >= 3")
    P = lambda e: ppow(p, e)  # noqa: E731
    F = Fraction
    half = F(1, 2)
    u = p**t - 1
    B = P(n - t)
    q1 = P(n) - 1
    case = params.cases()["c2_weights"]
    if case == "i":
        Bd = P(n - d) if as_printed else B
        X = (P(n) - P(n - d) - P(n - 2 * d) + 1) * q1 / (P(2 * d) - 1)
        g = F(n - 2 * d - t, 2)
        r = F(n - d, 2)
        rows = [
            (u * B - P(F(n + 2 * d - t, 2)), half * P(g) * u * (P(g) + 1) * (P(n - d) - 1) * q1 / (P(2 * d) - 1)),
            (u * (Bd - P(F(n + d - 2 * t, 2))), half * P(n - d - t) * (P(r) + 1) * (P(r) + u) * q1),
            (u * B - P(F(n + d - 2 * t, 2)), half * P(n - d - t) * u * (P(n - d) - 1) * q1),
            (u * B - P(F(n - t, 2)), half * P(F(n - t, 2) + 2 * d) * u * (P(F(n - t, 2)) + 1) * X),
            (
                u * B,
                q1
                * (
                    P(2 * n - t) + P(2 * n - d) - P(2 * n - d - t) - P(2 * n - 2 * d) + P(2 * n - 3 * d)
                    - P(2 * n - 3 * d - t) + P(n - t) - P(n - 2 * d) + P(n - 2 * d - t) + 1
                ),
            ),
            (u * B + P(F(n - t, 2)), half * P(F(n - t, 2) + 2 * d) * u * (P(F(n - t, 2)) - 1) * X),
            (u * B + P(F(n + d - 2 * t, 2)), half * P(n - d - t) * u * (P(n - d) - 1) * q1),
            (u * (Bd + P(F(n + d - 2 * t, 2))), half * P(n - d - t) * (P(r) - 1) * (P(r) - u) * q1),
            (u * B + P(F(n + 2 * d - t, 2)), half * P(g) * u * (P(g) - 1) * (P(n - d) - 1) * q1 / (P(2 * d) - 1)),
            (0, 1),
        ]
    elif case == "ii":
        Y = (P(n) - P(n - d) - P(n - 2 * d) + 1) / (P(2 * d) - 1)
        Z = (P(n - d) - 1) / (P(2 * d) - 1)
        h = F(n, 2)
        r = F(n - d, 2)
        q1_row9 = (P(params.m) - 1) if as_printed else q1
        rows = [
            (u * (B - P(h + d - t)), half * P(h - d - t) * (P(h - d) + u) * Z * q1),
            (u * B - P(h + d - t), half * P(h - d - t) * u * (P(h - d) + 1) * Z * q1),
            (u * (B - P(F(n + d, 2) - t)), half * P(n - d - t) * (P(r) + 1) * (P(r) + u) * q1),
            (u * B - P(F(n + d, 2) - t), half * P(n - d - t) * u * (P(n - d) - 1) * q1),
            (u * (B - P(h - t)), half * P(h + 2 * d - t) * (P(h) + u) * Y * q1),
            (u * B - P(h - t), half * P(h + 2 * d - t) * u * (P(h) + 1) * Y * q1),
            (u * B, q1 * (P(2 * n - d) - P(2 * n - 2 * d) + P(2 * n - 3 * d) - P(n - 2 * d) + 1)),
            (u * B + P(h - t), half * P(h + 2 * d - t) * u * (P(h) - 1) * Y * q1),
            (u * (B + P(h - t)), half * P(h + 2 * d - t) * (P(h) - u) * Y * q1_row9),
            (u * B + P(F(n + d, 2) - t), half * P(n - d - t) * u * (P(n - d) - 1) * q1),
            (u * (B + P(F(n + d, 2) - t)), half * P(n - d - t) * (P(r) - 1) * (P(r) - u) * q1),
            (u * B + P(h + d - t), half * P(h - d - t) * u * (P(h - d) - 1) * Z * q1),
            (
                u * (B + P(h - d - t)) if as_printed else u * (B + P(h + d - t)),
                half * P((h + d - t) if as_printed else (h - d - t)) * (P(h - d) - u) * Z * q1,
            ),
            (0, 1),
        ]
    elif case == "iii":
        m, mu = params.m, params.mu
        D0 = (P(d) + 1) * (P(2 * d) - 1) * (P(3 * d) + 1)
        K0 = q1 * (P(n + 6 * d) - P(n + 4 * d) - P(n + d) + mu * P(m + 5 * d) - mu * P(m + 4 * d) + P(6 * d)) / D0
        K2 = (
            q1
            * (P(n + 3 * d) + P(n + 2 * d) - P(n) - P(n - d) - P(n - 2 * d) - mu * P(m + 3 * d) + mu * P(m) + P(3 * d))
            / ((P(d) + 1) ** 2 * (P(2 * d) - 1))
        )
        K4 = (P(m - d) + mu) * (P(m + d) + P(m) - P(m - 2 * d) - mu * P(d)) * q1 / ((P(d) + 1) ** 3 * (P(d) - 1))
        K6 = (P(m - 2 * d) - mu) * (P(m - d) + mu) * q1 / D0
        zero_row = (
            P(2 * n) + P(2 * n - 9 * d) - mu * P(3 * m) + mu * P(3 * m - d) + mu * P(3 * m - 3 * d) - mu * P(3 * m - 5 * d)
            - mu * P(3 * m - 7 * d) + mu * P(3 * m - 8 * d) + P(n) - P(n - d) - P(n - 4 * d) - P(n - 6 * d) + P(d) + 1
        ) * q1 / (P(d) + 1)
        rows = [
            (u * (B - mu * P(m - t)), (P(n - t) + mu * u * P(m - t)) * K0),
            (u * B + mu * P(m - t), u * (P(n - t) - mu * P(m - t)) * K0),
            (u * (B + mu * P(m + d - t)), (P(n - 2 * d - t) - mu * u * P(m - d - t)) * K2),
            (u * B - mu * P(m + d - t), u * (P(n - 2 * d - t) + mu * P(m - d - t)) * K2),
            (u * (B - mu * P(m + 2 * d - t)), (P(n - 4 * d - t) + mu * u * P(m - 2 * d - t)) * K4),
            (u * B + mu * P(m + 2 * d - t), u * (P(n - 4 * d - t) - mu * P(m - 2 * d - t)) * K4),
            (u * (B + mu * P(m + 3 * d - t)), (P(n - 6 * d - t) - mu * u * P(m - 3 * d - t)) * K6),
            (u * B - mu * P(m + 3 * d - t), u * (P(n - 6 * d - t) + mu * P(m - 3 * d - t)) * K6),
            (u * B, zero_row),
            (P(n) if as_printed else 0, 1),
        ]
    else:
        raise InapplicableCase("no closed form for C2 at these parameters")
    return _finish(rows, params, C2)
