"""The sequence family ``a_{alpha,beta}`` and its correlation distribution.

``a_{alpha,beta}(lambda) = Tr(alpha pi^{lambda(p^{3k}+1)} + beta pi^{lambda(p^k+1)} + pi^lambda)``
for ``0 <= lambda <= q - 2``; the family has ``p^{2n}`` members.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cyclo import CycInt, canon, legendre, ppow
from .errors import InapplicableCase
from .expsum import (
    FAST,
    PAIR_SWEEP,
    DistTable,
    _table,
    class_value,
    s_distribution,
    s_oracle,
    t_distribution,
)
from .gf_core import DD, D_ODD, FieldCtx, ParamSet


def seq_symbols(ctx: FieldCtx, params: ParamSet, seq_id, lambdas) -> np.ndarray:
    """Symbols ``a_{alpha,beta}(lambda)`` in F_p for an array of ``lambda``."""
    alpha, beta = seq_id
    lam = np.asarray(lambdas, dtype=np.int64) % ctx.order
    x1 = ctx.exp[(lam * params.e1) % ctx.order]
    x2 = ctx.exp[(lam * params.e2) % ctx.order]
    acc = ctx.vadd(ctx.vadd(ctx.vmul(alpha, x1), ctx.vmul(beta, x2)), ctx.exp[lam])
    return ctx.trace_table(1)[acc]


def seq_symbol(ctx: FieldCtx, params: ParamSet, seq_id, lam: int) -> int:
    return int(seq_symbols(ctx, params, seq_id, [lam])[0])


def reduced_triple(ctx: FieldCtx, params: ParamSet, id1, id2, tau: int) -> tuple:
    """``(alpha', beta', gamma')`` with correlation equal to ``S(alpha', beta', gamma') - 1``."""
    (a1, b1), (a2, b2) = id1, id2
    o = ctx.order
    a = ctx.sub(a1, ctx.mul(a2, int(ctx.exp[(tau * params.e1) % o])))
    b = ctx.sub(b1, ctx.mul(b2, int(ctx.exp[(tau * params.e2) % o])))
    g = ctx.sub(1, int(ctx.exp[tau % o]))
    return a, b, g


def correlation_direct(ctx: FieldCtx, params: ParamSet, id1, id2, tau: int) -> CycInt:
    lam = np.arange(ctx.order)
    diff = (seq_symbols(ctx, params, id1, lam) - seq_symbols(ctx, params, id2, lam + tau)) % ctx.p
    return canon(ctx.p, np.bincount(diff, minlength=ctx.p).tolist())


def correlation(ctx: FieldCtx, params: ParamSet, id1, id2, tau: int) -> CycInt:
    """Periodic correlation at shift ``tau``, checked against ``S(alpha', beta', gamma') - 1``."""
    direct = correlation_direct(ctx, params, id1, id2, tau)
    via_s = s_oracle(ctx, params, *reduced_triple(ctx, params, id1, id2, tau)) - 1
    if direct != via_s:
        raise AssertionError(f"correlation {direct} differs from the reduced sum {via_s}")
    return direct


def sample_correlations(ctx: FieldCtx, params: ParamSet, count: int, seed: int = 0) -> DistTable:
    """Literal correlations of ``count`` random ``(id1, id2, tau)``, tallied."""
    rng = np.random.default_rng(seed)
    q, o, p = ctx.q, ctx.order, ctx.p
    out = DistTable()
    lam = np.arange(o)
    tr = ctx.trace_table(1)
    E1 = ctx.exp[(lam * params.e1) % o]
    E2 = ctx.exp[(lam * params.e2) % o]
    E0 = ctx.exp[lam]
    step = max(1, 2**21 // o)
    done = 0
    while done < count:
        b = min(step, count - done)
        ids = rng.integers(0, q, size=(b, 4))
        tau = rng.integers(0, o, size=b)
        s1 = tr[ctx.vadd(ctx.vadd(ctx.vmul(ids[:, 0:1], E1[None, :]), ctx.vmul(ids[:, 1:2], E2[None, :])), E0[None, :])]
        sh = (lam[None, :] + tau[:, None]) % o
        s2 = tr[ctx.vadd(ctx.vadd(ctx.vmul(ids[:, 2:3], E1[sh]), ctx.vmul(ids[:, 3:4], E2[sh])), E0[sh])]
        diff = (s1.astype(np.int64) - s2) % p
        flat = diff + p * np.arange(b)[:, None]
        hist = np.bincount(flat.ravel(), minlength=b * p).reshape(b, p)
        uniq, cnt = np.unique(hist, axis=0, return_counts=True)
        for h, c in zip(uniq.tolist(), cnt.tolist()):
            out[canon(p, h)] += c
        done += b
    return out.clean()


def gamma_coverage(ctx: FieldCtx, params: ParamSet, id2) -> bool:
    """Whether ``(alpha', beta', gamma')`` hits every point of ``F_q^2 x (F_q - {1})`` exactly once
    as ``id1`` runs over ``F_q^2`` and ``tau`` over ``0 .. q-2``."""
    q, o = ctx.q, ctx.order
    a2, b2 = id2
    tau = np.arange(o)
    sa = ctx.vmul(a2, ctx.exp[(tau * params.e1) % o])
    sb = ctx.vmul(b2, ctx.exp[(tau * params.e2) % o])
    g = ctx.vsub(1, ctx.exp[tau])
    a1 = np.arange(q)
    A = ctx.vsub(a1[:, None], sa[None, :])  # (a1, tau)
    B = ctx.vsub(a1[:, None], sb[None, :])  # (b1, tau)
    # key over (a1, b1, tau)
    key = (A[:, None, :] * q + B[None, :, :]) * q + g[None, None, :]
    counts = np.bincount(key.ravel(), minlength=q**3).reshape(q, q, q)
    expected = np.ones((q, q, q), dtype=np.int64)
    expected[:, :, 1] = 0
    return bool(np.array_equal(counts, expected))


def mix(params: ParamSet, s_dist: DistTable, t_dist: DistTable) -> DistTable:
    """Correlation tally ``p^{2n}((q-2) s_k + t_k) / (q-1)`` at values ``k - 1``."""
    q = params.q
    scale = params.p ** (2 * params.n)
    out = DistTable()
    for v in set(s_dist) | set(t_dist):
        s, t = s_dist.get(v, 0), t_dist.get(v, 0)
        if (s - t) % (q - 1):
            raise AssertionError(f"S and T counts at {v} differ by a non-multiple of q-1")
        num = (q - 2) * s + t
        if num % (q - 1):
            raise AssertionError("mixing count is not integral")
        c = scale * (num // (q - 1))
        if c:
            out[v - 1] += c
    return out.clean()


def correlation_distribution_enum(ctx: FieldCtx, params: ParamSet, s_dist=None, t_dist=None) -> DistTable:
    """Correlation tally from computed S and T distributions."""
    if t_dist is None:
        t_dist = t_distribution(ctx, params, FAST)
    if s_dist is None:
        s_dist = s_distribution(ctx, params, PAIR_SWEEP)
    out = mix(params, s_dist, t_dist)
    assert out.mass() == params.p ** (4 * params.n) * (params.q - 1)
    return out


def theorem_correlation_distribution(params: ParamSet, as_printed: bool = False) -> DistTable:
    """Closed-form correlation distribution over all ``(id1, id2, tau)``.

    ``as_printed`` keeps the published forms of rows that contain slips: two
    exponents in the even ``d' = d`` table, and in the ``d' = 2d`` table the
    placement of the ``(p^n - 2)(...) + 1`` factor in two rows and the zero
    count inherited from the S table.  The printed version is returned
    unchecked.
    """
    if params.k_sixth or params.k_quarter:
        raise InapplicableCase("the correlation table excludes k in {n/6, 5n/6}")
    p, n, d, q = params.p, params.n, params.d, params.q
    P = lambda e: ppow(p, e)  # noqa: E731
    F = Fraction
    half = F(1, 2)
    N2 = P(2 * n)
    q2 = P(n) - 2
    rows = []
    js = range(1, p)
    if params.case_tag == DD:
        m, mu = params.m, params.mu
        den0 = (P(d) + 1) * (P(2 * d) - 1) * (P(3 * d) + 1)
        den2 = (P(d) + 1) ** 2 * (P(2 * d) - 1)
        C0 = P(n + 6 * d) - P(n + 4 * d) - P(n + d) + mu * P(m + 5 * d) - mu * P(m + 4 * d) + P(6 * d)
        C2 = P(n + 3 * d) + P(n + 2 * d) - P(n) - P(n - d) - P(n - 2 * d) - mu * P(m + 3 * d) + mu * P(m) + P(3 * d)
        X4 = P(m + d) + P(m) - P(m - 2 * d) - mu * P(d)
        a4 = P(n - 4 * d - 1) + mu * (p - 1) * P(m - 2 * d - 1)
        a6 = P(n - 6 * d - 1) - mu * (p - 1) * P(m - 3 * d - 1)
        rows.append((class_value(params, mu, 0), N2 * (q2 * (P(n - 1) + mu * (p - 1) * P(m - 1)) + 1) * C0 / den0))
        for j in js:
            rows.append((class_value(params, mu, 0, j), N2 * q2 * (P(n - 1) - mu * P(m - 1)) * C0 / den0))
        rows.append((class_value(params, -mu, 2), N2 * ((P(n - 2 * d - 1) - mu * (p - 1) * P(m - d - 1)) * q2 + 1) * C2 / den2))
        for j in js:
            rows.append((class_value(params, -mu, 2, j), N2 * (P(n - 2 * d - 1) + mu * P(m - d - 1)) * q2 * C2 / den2))
        if as_printed:
            r5 = N2 * ((P(m - d) + mu) * q2 + 1) * X4 * a4 / den2
            r7 = N2 * ((P(m - 2 * d) - mu) * q2 + 1) * (P(m - d) + mu) * a6 / den0
        else:
            r5 = N2 * (P(m - d) + mu) * X4 * (q2 * a4 + 1) / den2
            r7 = N2 * (P(m - 2 * d) - mu) * (P(m - d) + mu) * (q2 * a6 + 1) / den0
        rows.append((class_value(params, mu, 4), r5))
        for j in js:
            rows.append((class_value(params, mu, 4, j), N2 * (P(m - d) + mu) * X4 * (P(n - 4 * d - 1) - mu * P(m - 2 * d - 1)) * q2 / den2))
        rows.append((class_value(params, -mu, 6), r7))
        for j in js:
            rows.append(
                (class_value(params, -mu, 6, j), N2 * (P(m - 2 * d) - mu) * (P(m - d) + mu) * (P(n - 6 * d - 1) + mu * P(m - 3 * d - 1)) * q2 / den0)
            )
        inner = P(2 * n) + P(2 * n - 9 * d) + mu * P(3 * m - 3 * d) - mu * P(3 * m - 5 * d) - P(n - 4 * d) - P(n - 6 * d)
        if as_printed:
            bracket = 1 - mu * P(3 * m - d) - mu * P(3 * m - 8 * d) + P(n - d) + inner / (P(d) + 1)
        else:
            extra = -mu * P(3 * m) + mu * P(3 * m - d) - mu * P(3 * m - 7 * d) + mu * P(3 * m - 8 * d) + P(n) - P(n - d)
            bracket = 1 + (inner + extra) / (P(d) + 1)
        zero_count = N2 * q2 * bracket
    else:
        Y = (P(n) - P(n - d) - P(n - 2 * d) + 1) / (P(2 * d) - 1)
        Z = (P(n - d) - 1) / (P(2 * d) - 1)
        h = F(n - d, 2)
        A = P(h)
        for eps in (1, -1):
            if params.case_tag == D_ODD:
                rows.append((class_value(params, eps, 0), half * P(2 * n + 2 * d) * (P(2 * n - 1) - 2 * P(n - 1) + 1) * Y))
                for j in js:
                    lj = legendre(-j, p)
                    rows.append((class_value(params, eps, 0, j), half * P(2 * n + 2 * d) * (P(n - 1) + eps * lj * P(F(n - 1, 2))) * q2 * Y))
                r3_inner = P(h - 1)
                r4_exp = 3 * n - d - 1
            else:
                rows.append(
                    (class_value(params, eps, 0), half * P(2 * n + 2 * d) * ((P(n - 1) + eps * (p - 1) * P(F(n, 2) - 1)) * q2 + 1) * Y)
                )
                for j in js:
                    rows.append((class_value(params, eps, 0, j), half * P(2 * n + 2 * d) * (P(n - 1) - eps * P(F(n, 2) - 1)) * q2 * Y))
                r3_inner = P(h) if as_printed else P(h - 1)
                r4_exp = 5 * n - d - 1 if as_printed else 3 * n - d - 1
            rows.append((class_value(params, eps, 1), half * P(F(5 * n - d, 2)) * (A + eps) * (r3_inner * (A + eps * (p - 1)) * q2 + 1)))
            for j in js:
                rows.append((class_value(params, eps, 1, j), half * P(r4_exp) * (A - eps) * (A + eps) * q2))
            if params.case_tag == D_ODD:
                rows.append((class_value(params, eps, 2), half * N2 * (P(2 * n - 2 * d - 1) - 2 * P(n - 2 * d - 1) + 1) * Z))
                for j in js:
                    lj = legendre(-j, p)
                    rows.append(
                        (class_value(params, eps, 2, j), half * N2 * (P(n - 2 * d - 1) + eps * lj * P(F(n - 2 * d - 1, 2))) * q2 * Z)
                    )
            else:
                rows.append(
                    (class_value(params, eps, 2), half * N2 * ((P(n - 2 * d - 1) + eps * (p - 1) * P(F(n - 2 * d, 2) - 1)) * q2 + 1) * Z)
                )
                for j in js:
                    rows.append((class_value(params, eps, 2, j), half * N2 * (P(n - 2 * d - 1) - eps * P(F(n - 2 * d, 2) - 1)) * q2 * Z))
        zero_count = N2 * q2 * (P(2 * n - d) - P(2 * n - 2 * d) + P(2 * n - 3 * d) - P(n - 2 * d) + 1)
    rows = [(v - 1, c) for v, c in rows]
    rows.append((CycInt.from_int(p, -1), zero_count))
    rows.append((CycInt.from_int(p, q - 1), N2))
    mass = p ** (4 * n) * (q - 1)
    if as_printed:
        return _table(rows, p, None, strict=False)
    return _table(rows, p, mass)
