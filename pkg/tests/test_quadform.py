from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dosum.gf_core import build_ctx, derive_params
from dosum.quadform import (
    RankProfile,
    SymMatrix,
    brute_form_sum,
    build_A,
    build_H,
    diagonalize,
    form_sum,
    kernel,
    kernel_dim,
    make_basis,
    phi_eval,
    PhiLinear,
    rank_mod_p,
    solve_coordinate_shift,
    solve_shift,
)

PROFILES = [(3, 3, 1), (5, 3, 1), (3, 5, 1), (3, 6, 2), (3, 6, 1), (3, 8, 1)]


def _sym(ctx, d, M):
    return SymMatrix(ctx, d, tuple(tuple(int(x) for x in row) for row in M))


def test_basis_examples():
    ctx = build_ctx(3, 3)
    B = make_basis(ctx, 3)
    assert B.s == 1
    B = make_basis(ctx, 1)
    assert B.s == 3
    M = np.array([ctx.coords(v) for v in B.vectors])
    assert rank_mod_p(M, 3) == 3
    B6 = make_basis(build_ctx(3, 6), 2)
    assert B6.s == 3 and B6.q0 == 9


@pytest.mark.parametrize("p,n,d", [(3, 3, 1), (3, 6, 2), (3, 6, 3), (5, 2, 1)])
def test_basis_coordinates_roundtrip(p, n, d):
    ctx = build_ctx(p, n)
    for variant in (0, 1):
        B = make_basis(ctx, d, variant)
        for x in range(ctx.q):
            assert B.element(B.coords(x)) == x


def test_two_bases_differ():
    ctx = build_ctx(3, 6)
    assert make_basis(ctx, 2, 0).vectors != make_basis(ctx, 2, 1).vectors


def test_diagonalize_edge_cases():
    ctx = build_ctx(3, 1)
    assert diagonalize(_sym(ctx, 1, np.zeros((3, 3), int))) == RankProfile(0, 1)
    assert diagonalize(_sym(ctx, 1, np.eye(4, dtype=int))) == RankProfile(4, 1)


def test_form_sum_example():
    # q0 = 3, s = 3, r = 2, eta = +1: i^2 * 3^2
    assert form_sum(3, 1, 3, RankProfile(2, 1)) == -9
    assert form_sum(3, 1, 3, RankProfile(0, 1)) == 27


@given(entries=st.lists(st.integers(0, 2), min_size=10, max_size=10))
def test_random_form_matches_brute_force(entries):
    ctx = build_ctx(3, 1)
    M = np.zeros((4, 4), dtype=int)
    M[np.triu_indices(4)] = entries
    M = M + np.triu(M, 1).T
    H = _sym(ctx, 1, M % 3)
    prof = diagonalize(H)
    assert prof.rank == rank_mod_p(M % 3, 3)
    assert form_sum(3, 1, 4, prof) == brute_form_sum(H)


@given(entries=st.lists(st.integers(0, 8), min_size=6, max_size=6))
def test_form_over_f9(entries):
    ctx = build_ctx(3, 2)
    M = np.zeros((3, 3), dtype=int)
    M[np.triu_indices(3)] = entries
    M = M + np.triu(M, 1).T
    H = _sym(ctx, 2, M)
    assert form_sum(3, 2, 3, diagonalize(H)) == brute_form_sum(H)


def test_quadratic_evaluation_identity():
    ctx = build_ctx(3, 3)
    P = derive_params(3, 3, 1)
    B = make_basis(ctx, P.d)
    a, b = ctx.pi, 0
    H = build_H(ctx, P, B, a, b)
    for x in range(ctx.q):
        fx = ctx.add(ctx.mul(a, ctx.pow(x, P.e1)), ctx.mul(b, ctx.pow(x, P.e2)))
        assert H.quad(B.coords(x)) == ctx.trace(fx, P.d)


def test_linear_form_rows():
    ctx = build_ctx(3, 3)
    P = derive_params(3, 3, 1)
    B = make_basis(ctx, 1)
    assert build_A(ctx, P, B, 0) == (0, 0, 0)
    assert tuple(build_A(ctx, P, B, 1)) == tuple(ctx.trace(v) for v in B.vectors)


@pytest.mark.parametrize("p,n,k", PROFILES)
def test_rank_classes_and_basis_invariance(p, n, k):
    ctx = build_ctx(p, n)
    P = derive_params(p, n, k)
    rng = np.random.default_rng(7)
    B0, B1 = make_basis(ctx, P.d, 0), make_basis(ctx, P.d, 1)
    allowed = {0, 2, 4, 6} if P.dprime == 2 * P.d else {0, 1, 2}
    for a, b in rng.integers(0, ctx.q, size=(25, 2)).tolist():
        if a == b == 0:
            continue
        w = kernel_dim(ctx, P, a, b)
        assert w in allowed
        p0 = diagonalize(build_H(ctx, P, B0, a, b))
        assert p0 == diagonalize(build_H(ctx, P, B1, a, b))
        assert p0.rank == P.s - w
    assert kernel_dim(ctx, P, 0, 0) == P.s


def test_phi_example_n8():
    ctx = build_ctx(3, 8)
    P = derive_params(3, 8, 1)
    w = kernel_dim(ctx, P, ctx.pi, 1)
    assert w in (0, 2, 4, 6)
    assert diagonalize(build_H(ctx, P, make_basis(ctx, 1), ctx.pi, 1)).rank == P.s - w


def test_batched_kernel_dims_agree():
    ctx = build_ctx(3, 5)
    P = derive_params(3, 5, 1)
    pl = PhiLinear(ctx, P)
    rng = np.random.default_rng(3)
    pr = rng.integers(0, ctx.q, size=(60, 2))
    got = pl.kernel_dims(pr[:, 0], pr[:, 1])
    assert got.tolist() == [kernel_dim(ctx, P, int(a), int(b)) for a, b in pr]


def test_kernel_elements_are_zeros():
    ctx = build_ctx(3, 6)
    P = derive_params(3, 6, 1)
    for a, b in [(1, 0), (ctx.pi, 2), (5, 77)]:
        K = kernel(ctx, P, a, b)
        assert K.elements.size == P.q0**K.w
        assert all(phi_eval(ctx, P, a, b, int(x)) == 0 for x in K.elements)


def test_shift_examples():
    ctx = build_ctx(3, 3)
    P = derive_params(3, 3, 1)
    assert all(solve_shift(ctx, P, a, 7, 0) == 0 for a in range(ctx.q))
    assert solve_shift(ctx, P, 0, 0, 4) is None


@given(data=st.data(), prof=st.sampled_from([(3, 3, 1), (3, 5, 1), (5, 3, 1)]))
def test_shift_solution_cancels(data, prof):
    ctx = build_ctx(prof[0], prof[1])
    P = derive_params(*prof)
    a, b, g = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
    x0 = solve_shift(ctx, P, a, b, g)
    if x0 is None:
        return
    # phi(x0) + gamma^{p^{3k}} = 0
    assert ctx.add(phi_eval(ctx, P, a, b, x0), ctx.frob(g, 3 * P.k)) == 0


def test_solvability_equivalence_exhaustive():
    ctx = build_ctx(3, 3)
    P = derive_params(3, 3, 1)
    B = make_basis(ctx, 1)
    for a, b in itertools.product(range(ctx.q), repeat=2):
        H = build_H(ctx, P, B, a, b)
        for g in range(ctx.q):
            assert (solve_shift(ctx, P, a, b, g) is not None) == solve_coordinate_shift(H, build_A(ctx, P, B, g))
