"""Quadratic forms over F_{q0} attached to ``Tr^n_d(alpha x^{p^{3k}+1} + beta x^{p^k+1})``.

Elements of the subfield F_{q0} are kept as codes of the ambient context, so
all matrix arithmetic reuses :class:`~dosum.gf_core.FieldCtx`.

Two independent routes to the rank are provided: congruence diagonalization
of the symmetric matrix ``H`` and the kernel of the linearized polynomial
``phi(x) = alpha^{p^{3k}} x^{p^{6k}} + beta^{p^{3k}} x^{p^{4k}}
+ beta^{p^{2k}} x^{p^{2k}} + alpha x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclo import CycInt, canon, gauss_sum
from .gf_core import FieldCtx, ParamSet, build_ctx


# ----------------------------------------------------------------------
# linear algebra over F_p on digit vectors
# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def _inv_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def rref_mod_p(M, p: int, ncols: int | None = None):
    """Reduced row echelon form over F_p.  Returns ``(R, pivot_columns)``.

    Pivots are only searched among the first ``ncols`` columns, so extra
    columns act as right-hand sides carried along by the row operations.
    """
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    if ncols is not None:
        cols = ncols
    inv = _inv_table(p)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * inv[R[r, c]]) % p
        f = R[:, c].copy()
        f[r] = 0
        R = (R - f[:, None] * R[r][None, :]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod_p(M, p: int) -> int:
    return len(rref_mod_p(M, p)[1])


def nullspace_mod_p(M, p: int) -> np.ndarray:
    """Basis of ``{v : M v = 0}`` as rows of an array."""
    M = np.asarray(M, dtype=np.int64)
    R, piv = rref_mod_p(M, p)
    ncols = M.shape[1]
    free = [c for c in range(ncols) if c not in piv]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for r, c in enumerate(piv):
            basis[b, c] = (-R[r, f]) % p
    return basis


def batched_rank_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a stack of matrices with shape ``(B, rows, cols)``."""
    M = np.array(M, dtype=np.int16 if p < 128 else np.int64) % p
    B, R, C = M.shape
    inv = _inv_table(p).astype(M.dtype)
    rank = np.zeros(B, dtype=np.int64)
    row_ids = np.arange(R)
    for c in range(C):
        cand = (M[:, :, c] != 0) & (row_ids[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = np.argmax(cand[b], axis=1)
        r = rank[b]
        top = M[b, r].copy()
        M[b, r] = M[b, piv]
        M[b, piv] = top
        prow = (M[b, r] * inv[M[b, r, c]][:, None]) % p
        sub = M[b]
        f = sub[:, :, c].copy()
        f[np.arange(b.size), r] = 0
        sub = (sub - f[:, :, None] * prow[:, None, :]) % p
        sub[np.arange(b.size), r] = prow
        M[b] = sub
        rank[b] += 1
    return rank


# ----------------------------------------------------------------------
# bases of F_q over F_{q0}
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SubfieldBasis:
    """An F_{q0}-basis ``v_1..v_s`` of F_q with coordinate maps both ways."""

    ctx: FieldCtx
    d: int
    vectors: tuple
    _to_coords: np.ndarray  # (q, s) table of F_{q0} codes

    @property
    def s(self) -> int:
        return len(self.vectors)

    @property
    def q0(self) -> int:
        return self.ctx.p**self.d

    def coords(self, x: int) -> tuple:
        return tuple(int(c) for c in self._to_coords[x])

    def coords_many(self, xs) -> np.ndarray:
        return self._to_coords[np.asarray(xs, dtype=np.int64)]

    def element(self, X) -> int:
        ctx = self.ctx
        acc = 0
        for xi, v in zip(X, self.vectors):
            acc = ctx.add(acc, ctx.mul(int(xi), v))
        return acc


def _fp_span_rows(ctx: FieldCtx, d: int, vectors) -> np.ndarray:
    g = ctx.subfield_generator(d) if d < ctx.n else ctx.pi
    sub_basis = [ctx.pow(g, a) for a in range(d)]
    rows = [ctx.digits[ctx.mul(w, v)] for v in vectors for w in sub_basis]
    return np.array(rows, dtype=np.int64).reshape(-1, ctx.n)


def _independent(ctx: FieldCtx, d: int, vectors) -> bool:
    if not vectors:
        return True
    return rank_mod_p(_fp_span_rows(ctx, d, vectors), ctx.p) == d * len(vectors)


def _complete(ctx: FieldCtx, d: int, start, candidates):
    s = ctx.n // d
    chosen = list(start)
    for c in candidates:
        if len(chosen) == s:
            break
        if c and _independent(ctx, d, chosen + [c]):
            chosen.append(c)
    assert len(chosen) == s
    return chosen


def make_basis(ctx: FieldCtx, d: int, variant: int = 0) -> SubfieldBasis:
    """Deterministic F_{q0}-basis of F_q.

    ``variant=0`` is the polynomial basis ``1, pi, ..., pi^{s-1}`` (verified
    independent, otherwise completed greedily along powers of ``pi``).
    ``variant=1`` is a deliberately different basis for invariance checks.
    """
    if ctx.n % d:
        raise ValueError(f"d={d} does not divide n={ctx.n}")
    s = ctx.n // d
    if variant == 0:
        poly = [ctx.power_of_pi(i) for i in range(s)]
        if _independent(ctx, d, poly):
            vectors = poly
        else:
            vectors = _complete(ctx, d, [], (ctx.power_of_pi(e) for e in range(ctx.order)))
    else:
        # elements 1 + pi^(7e+3) in order; differs from the polynomial basis
        cands = (ctx.add(1, ctx.power_of_pi(7 * e + 3 + variant)) for e in range(ctx.order))
        vectors = _complete(ctx, d, [], cands)

    # coordinate table: solve digits(x) = sum_{i,a} c_{i,a} digits(g^a v_i)
    p = ctx.p
    span = _fp_span_rows(ctx, d, vectors)  # row (i*d + a)
    inv = _inverse_mod_p(span.T, p)  # maps digits -> coefficients c_{i,a}
    coeffs = (ctx.digits.astype(np.int64) @ inv.T) % p  # (q, s*d)
    g = ctx.subfield_generator(d) if d < ctx.n else ctx.pi
    sub_basis = np.array([ctx.pow(g, a) for a in range(d)], dtype=np.int64)
    # code of sum_a c_a g^a, for every coefficient vector in F_p^d
    sub_code = np.zeros(p**d, dtype=np.int64)
    for idx, cvec in enumerate(itertools.product(range(p), repeat=d)):
        cvec = cvec[::-1]  # itertools varies the last slot fastest
        key = sum(c * p**a for a, c in enumerate(cvec))
        acc = 0
        for a, c in enumerate(cvec):
            acc = ctx.add(acc, ctx.mul(c, int(sub_basis[a])))
        sub_code[key] = acc
    weights = p ** np.arange(d)
    coeffs = coeffs.reshape(ctx.q, s, d)
    to_coords = sub_code[(coeffs * weights).sum(axis=2)]
    basis = SubfieldBasis(ctx, d, tuple(int(v) for v in vectors), to_coords)
    for i, v in enumerate(basis.vectors):
        unit = [0] * s
        unit[i] = 1
        assert basis.coords(v) == tuple(unit)
    return basis


def _inverse_mod_p(A, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    R, piv = rref_mod_p(np.hstack([A, np.eye(n, dtype=np.int64)]), p, ncols=n)
    if piv != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return R[:, n:]


# ----------------------------------------------------------------------
# the symmetric matrix H and the linear form A
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SymMatrix:
    """Symmetric ``s x s`` matrix with entries in F_{q0} (stored as F_q codes)."""

    ctx: FieldCtx
    d: int
    rows: tuple

    @property
    def s(self) -> int:
        return len(self.rows)

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            for j, h in enumerate(row):
                assert h == self.rows[j][i], "matrix is not symmetric"

    def quad(self, X) -> int:
        """``X H X^T`` in F_{q0}."""
        ctx = self.ctx
        acc = 0
        for i, xi in enumerate(X):
            if not xi:
                continue
            for j, xj in enumerate(X):
                if xj:
                    acc = ctx.add(acc, ctx.mul(ctx.mul(xi, xj), self.rows[i][j]))
        return acc

    def scaled(self, w: int) -> "SymMatrix":
        ctx = self.ctx
        return SymMatrix(ctx, self.d, tuple(tuple(ctx.mul(w, h) for h in row) for row in self.rows))

    def __str__(self):
        return "\n".join(" ".join(f"{h:>5d}" for h in row) for row in self.rows)


def _half(ctx: FieldCtx) -> int:
    return ctx.inv(2 % ctx.p)


def _h_coefficients(ctx: FieldCtx, params: ParamSet, basis: SubfieldBasis):
    """Per-entry multipliers ``(a_ij, b_ij)`` with ``h_ij = Tr_d(alpha a_ij + beta b_ij)/2``."""
    k3, k1 = 3 * params.k, params.k
    v = basis.vectors
    s = len(v)
    A = [[0] * s for _ in range(s)]
    B = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(s):
            A[i][j] = ctx.add(ctx.mul(ctx.frob(v[i], k3), v[j]), ctx.mul(v[i], ctx.frob(v[j], k3)))
            B[i][j] = ctx.add(ctx.mul(ctx.frob(v[i], k1), v[j]), ctx.mul(v[i], ctx.frob(v[j], k1)))
    return A, B


def build_H(ctx: FieldCtx, params: ParamSet, basis: SubfieldBasis, alpha: int, beta: int) -> SymMatrix:
    """Matrix of the quadratic form ``Tr^n_d(alpha x^{p^{3k}+1} + beta x^{p^k+1})``."""
    A, B = _h_coefficients(ctx, params, basis)
    half = _half(ctx)
    d = params.d
    s = basis.s
    rows = []
    for i in range(s):
        row = []
        for j in range(s):
            val = ctx.add(ctx.mul(alpha, A[i][j]), ctx.mul(beta, B[i][j]))
            row.append(ctx.mul(half, ctx.trace(val, d)))
        rows.append(tuple(row))
    return SymMatrix(ctx, d, tuple(rows))


class HBuilder:
    """Precomputes ``H`` for all ``alpha`` and all ``beta`` separately.

    ``H_{alpha,beta} = H_{alpha,0} + H_{0,beta}`` entrywise, so a pair costs
    ``s^2`` additions instead of ``s^2`` traces.
    """

    def __init__(self, ctx: FieldCtx, params: ParamSet, basis: SubfieldBasis):
        self.ctx, self.params, self.basis = ctx, params, basis
        A, B = _h_coefficients(ctx, params, basis)
        s = basis.s
        half = _half(ctx)
        codes = np.arange(ctx.q, dtype=np.int64)
        tr = ctx.trace_table(params.d)
        ha = np.empty((ctx.q, s, s), dtype=np.int64)
        hb = np.empty((ctx.q, s, s), dtype=np.int64)
        for i in range(s):
            for j in range(s):
                ha[:, i, j] = ctx.vmul(half, tr[ctx.vmul(codes, A[i][j])])
                hb[:, i, j] = ctx.vmul(half, tr[ctx.vmul(codes, B[i][j])])
        self.ha, self.hb = ha, hb
        self._ha = ha.tolist()
        self._hb = hb.tolist()

    def rows(self, alpha: int, beta: int):
        add = self.ctx.add
        ra, rb = self._ha[alpha], self._hb[beta]
        return [[add(x, y) for x, y in zip(ar, br)] for ar, br in zip(ra, rb)]

    def H(self, alpha: int, beta: int) -> SymMatrix:
        return SymMatrix(self.ctx, self.params.d, tuple(tuple(r) for r in self.rows(alpha, beta)))


def build_A(ctx: FieldCtx, params: ParamSet, basis: SubfieldBasis, gamma: int) -> tuple:
    """Row ``(Tr^n_d(gamma v_1), ..., Tr^n_d(gamma v_s))``."""
    return tuple(ctx.trace(ctx.mul(gamma, v), params.d) for v in basis.vectors)


# ----------------------------------------------------------------------
# diagonalization and the Gauss-type evaluation
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class RankProfile:
    rank: int
    eta: int  # quadratic character of the discriminant, +1 when rank is 0


def diagonalize_rows(ctx: FieldCtx, d: int, rows) -> RankProfile:
    """Symmetric congruence elimination on a mutable list of rows."""
    M = [list(r) for r in rows]
    s = len(M)
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    disc = 1
    r = 0
    for k in range(s):
        piv = next((i for i in range(k, s) if M[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, s) for j in range(i + 1, s) if M[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # x_i -> x_i + x_j makes the (i, i) entry 2 h_ij != 0
            for c in range(s):
                M[i][c] = add(M[i][c], M[j][c])
            for c in range(s):
                M[c][i] = add(M[c][i], M[c][j])
            piv = i
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            for row in M:
                row[k], row[piv] = row[piv], row[k]
        a = M[k][k]
        ainv = ctx.inv(a)
        rowk = M[k]
        for i in range(k + 1, s):
            if M[i][k]:
                c = neg(mul(M[i][k], ainv))
                rowi = M[i]
                for j in range(k, s):
                    rowi[j] = add(rowi[j], mul(c, rowk[j]))
                for j in range(k, s):
                    M[j][i] = M[i][j]
        disc = mul(disc, a)
        r += 1
    return RankProfile(r, ctx.quad_char(disc, d) if r else 1)


def diagonalize(H: SymMatrix) -> RankProfile:
    """Rank and ``eta0(Delta)`` of a symmetric matrix over F_{q0}."""
    return diagonalize_rows(H.ctx, H.d, H.rows)


@lru_cache(maxsize=None)
def sqrt_q0_star(p: int, d: int) -> CycInt:
    """The square root of ``q0* = (-1)^{(q0-1)/2} q0`` realized by the quadratic Gauss sum.

    Computed as ``+-G^d`` with ``G`` the Gauss sum over F_p; the sign is fixed
    by one direct evaluation of ``sum_{x in F_{q0}} zeta^{Tr(x^2)}``.
    """
    cand = gauss_sum(p, 1) ** d
    ctx = build_ctx(p, d)
    tr = ctx.trace_table(1)
    sq = ctx.vmul(np.arange(ctx.q), np.arange(ctx.q))
    direct = canon(p, np.bincount(tr[sq], minlength=p).tolist())
    if direct == cand:
        return cand
    assert direct == -cand, "direct quadratic sum is not +-G^d"
    return -cand


def form_sum(p: int, d: int, s: int, profile: RankProfile) -> CycInt:
    """``sum_{X in F_{q0}^s} zeta^{Tr^d_1(X H X^T)}`` from the rank profile of ``H``."""
    q0 = p**d
    r, eta = profile.rank, profile.eta
    e0 = -1 if q0 % 4 == 3 else 1  # quadratic character of -1
    if r % 2 == 0:
        return CycInt.from_int(p, eta * e0 ** (r // 2) * q0 ** (s - r // 2))
    g = sqrt_q0_star(p, d)
    return g.scale(eta * e0 ** ((r - 1) // 2) * q0 ** (s - (r + 1) // 2))


def quadratic_form_sum(params: ParamSet, profile: RankProfile) -> CycInt:
    return form_sum(params.p, params.d, params.s, profile)


def brute_form_sum(H: SymMatrix, A=None) -> CycInt:
    """Direct ``sum_X zeta^{Tr(X H X^T + A X^T)}`` (exponential in ``s``)."""
    ctx = H.ctx
    sub = ctx.subfield(H.d).tolist()
    raw = [0] * ctx.p
    for X in itertools.product(sub, repeat=H.s):
        v = H.quad(X)
        if A is not None:
            for a, x in zip(A, X):
                v = ctx.add(v, ctx.mul(a, x))
        raw[ctx.trace(v, 1)] += 1
    return canon(ctx.p, raw)


def solve_coordinate_shift(H: SymMatrix, A) -> bool:
    """Whether ``2 Y H + A = 0`` has a solution ``Y`` over F_{q0}."""
    ctx = H.ctx
    s = H.s
    sub = ctx.subfield(H.d).tolist()
    two = 2 % ctx.p
    target = tuple(ctx.neg(a) for a in A)
    for Y in itertools.product(sub, repeat=s):
        lhs = []
        for j in range(s):
            acc = 0
            for i in range(s):
                acc = ctx.add(acc, ctx.mul(Y[i], H.rows[i][j]))
            lhs.append(ctx.mul(two, acc))
        if tuple(lhs) == target:
            return True
    return False


# ----------------------------------------------------------------------
# the linearized polynomial phi
# ----------------------------------------------------------------------
def phi_eval(ctx: FieldCtx, params: ParamSet, alpha: int, beta: int, x: int) -> int:
    k = params.k
    f = ctx.frob
    terms = (
        ctx.mul(f(alpha, 3 * k), f(x, 6 * k)),
        ctx.mul(f(beta, 3 * k), f(x, 4 * k)),
        ctx.mul(f(beta, 2 * k), f(x, 2 * k)),
        ctx.mul(alpha, x),
    )
    acc = 0
    for t in terms:
        acc = ctx.add(acc, t)
    return acc


def phi_eval_many(ctx: FieldCtx, params: ParamSet, alpha, beta, x):
    """Vectorized ``phi``; arguments broadcast."""
    k = params.k
    f = ctx.vfrob
    acc = ctx.vmul(f(alpha, 3 * k), f(x, 6 * k))
    acc = ctx.vadd(acc, ctx.vmul(f(beta, 3 * k), f(x, 4 * k)))
    acc = ctx.vadd(acc, ctx.vmul(f(beta, 2 * k), f(x, 2 * k)))
    return ctx.vadd(acc, ctx.vmul(alpha, x))


def phi_matrix(ctx: FieldCtx, params: ParamSet, alpha: int, beta: int) -> np.ndarray:
    """``n x n`` matrix over F_p of ``phi`` acting on polynomial-basis digits."""
    unit = ctx.powers  # codes of 1, pi, ..., pi^{n-1}
    images = phi_eval_many(ctx, params, alpha, beta, unit)
    return ctx.digits[images].T.astype(np.int64)


@dataclass
class Kernel:
    w: int  # dimension over F_{q0}
    basis_fp: np.ndarray  # rows: F_p-basis as digit vectors
    elements: np.ndarray  # all kernel elements (codes)


def _span_codes(ctx: FieldCtx, rows: np.ndarray) -> np.ndarray:
    p = ctx.p
    if rows.shape[0] == 0:
        return np.zeros(1, dtype=np.int64)
    combos = np.array(list(itertools.product(range(p), repeat=rows.shape[0])), dtype=np.int64)
    digits = (combos @ rows) % p
    return np.sort(digits @ ctx.powers)


def kernel(ctx: FieldCtx, params: ParamSet, alpha: int, beta: int, with_elements: bool = True) -> Kernel:
    """Zeros of ``phi_{alpha,beta}``; ``w`` is the dimension over F_{q0}.

    The null space is computed over F_p and its F_{q0}-linearity is checked.
    """
    M = phi_matrix(ctx, params, alpha, beta)
    ns = nullspace_mod_p(M, ctx.p)
    dim_p = ns.shape[0]
    d = params.d
    if dim_p % d:
        raise AssertionError(f"kernel F_p-dimension {dim_p} is not a multiple of d={d}")
    codes = ns @ ctx.powers
    if d > 1 and dim_p:
        g = ctx.subfield_generator(d)
        scaled = ctx.vmul(g, codes)
        moved = ctx.digits[scaled].astype(np.int64)
        if rank_mod_p(np.vstack([ns, moved]), ctx.p) != dim_p:
            raise AssertionError("kernel of phi is not F_{q0}-linear")
    elems = _span_codes(ctx, ns) if with_elements else None
    return Kernel(dim_p // d, ns, elems)


def kernel_dim(ctx: FieldCtx, params: ParamSet, alpha: int, beta: int) -> int:
    return (ctx.n - rank_mod_p(phi_matrix(ctx, params, alpha, beta), ctx.p)) // params.d


class PhiLinear:
    """``phi_{alpha,beta}`` as an F_p-matrix that is linear in ``(alpha, beta)``.

    ``matrices(alphas, betas)`` returns the stacked F_p matrices for many
    pairs at once, which is what the large rank sweeps use.
    """

    def __init__(self, ctx: FieldCtx, params: ParamSet):
        self.ctx, self.params = ctx, params
        n = ctx.n
        unit = [int(u) for u in ctx.powers]
        ma = np.stack([phi_matrix(ctx, params, u, 0) for u in unit])  # (n, n, n)
        mb = np.stack([phi_matrix(ctx, params, 0, u) for u in unit])
        dig = ctx.digits.astype(np.int64)
        self.La = np.tensordot(dig, ma, axes=(1, 0)) % ctx.p  # (q, n, n)
        self.Lb = np.tensordot(dig, mb, axes=(1, 0)) % ctx.p
        self.La = self.La.astype(np.int16)
        self.Lb = self.Lb.astype(np.int16)
        self.n = n

    def matrices(self, alphas, betas) -> np.ndarray:
        return (self.La[np.asarray(alphas)] + self.Lb[np.asarray(betas)]) % self.ctx.p

    def kernel_dims(self, alphas, betas) -> np.ndarray:
        ranks = batched_rank_mod_p(self.matrices(alphas, betas), self.ctx.p)
        dim_p = self.n - ranks
        d = self.params.d
        assert not (dim_p % d).any()
        return dim_p // d


def shift_target(ctx: FieldCtx, params: ParamSet, gamma):
    """Right-hand side ``-gamma^{p^{3k}}`` of the shift equation (vectorized)."""
    return ctx.vneg(ctx.vfrob(gamma, 3 * params.k))


def solve_shift(ctx: FieldCtx, params: ParamSet, alpha: int, beta: int, gamma: int):
    """Some ``x0`` with ``phi(x0) = -gamma^{p^{3k}}``, or ``None``.

    For such ``x0`` the substitution ``x -> x + x0`` removes the linear term
    ``gamma x`` from ``Tr(alpha x^{p^{3k}+1} + beta x^{p^k+1} + gamma x)``.
    """
    out = solve_shift_many(ctx, params, alpha, beta, np.array([gamma]))
    x0 = int(out[0])
    return None if x0 < 0 else x0


def solve_shift_many(ctx: FieldCtx, params: ParamSet, alpha: int, beta: int, gammas) -> np.ndarray:
    """Vectorized :func:`solve_shift`; ``-1`` marks an unsolvable shift."""
    p, n = ctx.p, ctx.n
    gammas = np.asarray(gammas, dtype=np.int64)
    rhs = ctx.digits[shift_target(ctx, params, gammas)].astype(np.int64).T  # (n, G)
    M = phi_matrix(ctx, params, alpha, beta)
    aug = np.hstack([M, rhs])
    R, piv = rref_mod_p(aug, p, ncols=n)
    r = len(piv)
    consistent = ~(R[r:, n:] != 0).any(axis=0)
    sol = np.zeros((n, gammas.size), dtype=np.int64)
    for i, c in enumerate(piv):
        sol[c] = R[i, n:]
    x0 = sol.T @ ctx.powers
    return np.where(consistent, x0, -1)
