from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dosum.errors import ExcludedK, JNotDividingN, NotOddPrime, TNotDividingD, TooLarge
from dosum.gf_core import DD, D_EVEN, D_ODD, build_ctx, derive_params, is_primitive_poly

SMALL = [(3, 1), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (3, 4)]


def test_param_examples():
    P = derive_params(3, 8, 1, 1)
    assert (P.d, P.dprime, P.s, P.m, P.mu, P.case_tag) == (1, 2, 8, 4, 1, DD)
    P = derive_params(3, 3, 1, 1)
    assert (P.d, P.dprime, P.s, P.case_tag) == (1, 1, 3, D_ODD)
    assert P.m is None and P.mu is None
    assert derive_params(3, 6, 2, 2).case_tag == D_EVEN
    assert derive_params(3, 10, 1).mu == -1


@pytest.mark.parametrize(
    "args, exc",
    [
        ((3, 4, 1, 1), ExcludedK),
        ((3, 8, 2, 1), ExcludedK),
        ((3, 8, 6, 1), ExcludedK),
        ((4, 3, 1, 1), NotOddPrime),
        ((2, 3, 1, 1), NotOddPrime),
        ((3, 6, 2, 4), TNotDividingD),
        ((3, 3, 3, 1), ValueError),
    ],
)
def test_param_rejections(args, exc):
    with pytest.raises(exc):
        derive_params(*args)


@given(
    p=st.sampled_from([3, 5, 7, 11]),
    n=st.integers(2, 14),
    k=st.integers(1, 13),
)
def test_dichotomy(p, n, k):
    if k >= n or 4 * k in (n, 2 * n, 3 * n):
        return
    P = derive_params(p, n, k)
    assert P.dprime in (P.d, 2 * P.d)
    assert (P.dprime == 2 * P.d) == (P.s % 2 == 0)
    if P.case_tag == DD:
        assert P.mu == (-1) ** (P.m // P.d)


def test_primitive_examples():
    F3 = build_ctx(3, 1)
    assert F3.pi == 2
    F9 = build_ctx(3, 2)
    assert F9.pow(F9.pi, 8) == 1 and F9.pow(F9.pi, 4) != 1
    F27 = build_ctx(3, 3)
    assert is_primitive_poly(F27.modulus, 3)
    orders = [e for e in range(1, 27) if F27.pow(F27.pi, e) == 1]
    assert orders[0] == 26


def test_guard():
    with pytest.raises(TooLarge):
        build_ctx(3, 17)
    with pytest.raises(NotOddPrime):
        build_ctx(9, 2)


def test_trace_is_power_sum():
    ctx = build_ctx(3, 3)
    pi = ctx.pi
    direct = ctx.add(ctx.add(pi, ctx.pow(pi, 3)), ctx.pow(pi, 9))
    assert ctx.trace(pi) == direct
    assert direct < 3


def test_trace_requires_divisor():
    with pytest.raises(JNotDividingN):
        build_ctx(3, 6).trace_table(4)


@pytest.mark.parametrize("p,n", SMALL)
def test_field_axioms_exhaustive(p, n):
    ctx = build_ctx(p, n)
    q = ctx.q
    a = np.arange(q)
    S = ctx.vadd(a[:, None], a[None, :])
    assert (np.sort(S, axis=1) == a).all()  # each row a permutation
    assert (ctx.vadd(S, ctx.vneg(a)[None, :]) == a[:, None]).all()
    M = ctx.vmul(a[1:, None], a[None, 1:])
    assert (np.sort(M, axis=1) == a[1:]).all()
    # Frobenius is additive and multiplicative
    assert (ctx.vfrob(S, 1) == ctx.vadd(ctx.vfrob(a, 1)[:, None], ctx.vfrob(a, 1)[None, :])).all()
    # traces land in the prime field and are onto
    tr = ctx.trace_table(1)
    assert set(np.unique(tr).tolist()) == set(range(p))


fields = st.sampled_from(SMALL).map(lambda pn: build_ctx(*pn))


@given(data=st.data(), ctx=fields)
def test_ring_laws(data, ctx):
    el = st.integers(0, ctx.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
    assert ctx.sub(ctx.add(a, b), b) == a
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1
        assert ctx.div(ctx.mul(a, b), a) == b
    assert ctx.frob(ctx.frob(a, 1), ctx.n - 1) == a


@given(data=st.data(), ctx=fields)
def test_coords_roundtrip(data, ctx):
    a = data.draw(st.integers(0, ctx.q - 1))
    assert ctx.from_digits(ctx.coords(a)) == a


@given(data=st.data())
def test_quadratic_character(data):
    ctx = build_ctx(3, 4)
    j = data.draw(st.sampled_from([1, 2, 4]))
    sub = ctx.subfield(j).tolist()
    a, b = data.draw(st.sampled_from(sub)), data.draw(st.sampled_from(sub))
    assert ctx.quad_char(ctx.mul(a, b), j) == ctx.quad_char(a, j) * ctx.quad_char(b, j)
    if a:
        assert ctx.quad_char(ctx.mul(a, a), j) == 1


def test_subfield_sizes():
    ctx = build_ctx(3, 6)
    for j in (1, 2, 3, 6):
        assert ctx.subfield(j).size == 3**j


def test_params_json_roundtrip():
    P = derive_params(3, 6, 2, 2)
    from dosum.gf_core import ParamSet

    assert ParamSet.from_json(P.to_json()) == P
