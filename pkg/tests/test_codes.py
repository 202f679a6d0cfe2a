from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dosum.codes import (
    C1,
    C2,
    ENUM,
    FROM_DIST,
    WeightTable,
    build_code,
    codeword,
    codeword_weight,
    cyclotomic_coset,
    punctured_gcd,
    theorem_c1_weights,
    theorem_c2_weights,
    weight_distribution,
    weight_from_sums,
)
from dosum.errors import InapplicableCase
from dosum.gf_core import build_ctx, derive_params

# tests/_reference.py, full enumeration with its own field arithmetic
C1_3_3_1 = {0: 1, 12: 156, 18: 494, 24: 78}
C2_3_3_1 = {0: 1, 9: 52, 12: 780, 15: 6240, 18: 9100, 21: 3432, 24: 78}


def ctx_params(p, n, k, t=1):
    return build_ctx(p, n), derive_params(p, n, k, t)


def test_dimensions():
    ctx, P = ctx_params(3, 3, 1)
    assert build_code(ctx, P, C1).dimension == 6
    assert build_code(ctx, P, C2).dimension == 9
    ctx, P = ctx_params(3, 6, 1)
    assert build_code(ctx, P, C1).dimension == 9
    ctx, P = ctx_params(3, 6, 2, 2)
    assert build_code(ctx, P, C1).dimension == 6


def test_cosets():
    assert sorted(cyclotomic_coset(1, 3, 26)) == [1, 3, 9]
    assert cyclotomic_coset(0, 3, 26) == [0]


def test_punctured_gcd():
    assert punctured_gcd(derive_params(3, 8, 1)) == 4
    assert punctured_gcd(derive_params(3, 3, 1)) == 2


def test_frozen_small_tables():
    ctx, P = ctx_params(3, 3, 1)
    assert dict(weight_distribution(ctx, P, C1, ENUM)) == C1_3_3_1
    assert dict(theorem_c1_weights(P)) == C1_3_3_1
    assert dict(weight_distribution(ctx, P, C2, ENUM)) == C2_3_3_1
    assert dict(theorem_c2_weights(P)) == C2_3_3_1
    assert dict(weight_distribution(ctx, P, C1, FROM_DIST)) == C1_3_3_1
    assert dict(weight_distribution(ctx, P, C2, FROM_DIST)) == C2_3_3_1


@pytest.mark.parametrize("prof", [(5, 3, 1, 1), (3, 5, 1, 1), (3, 5, 2, 1)])
def test_enum_matches_theorem(prof):
    ctx, P = ctx_params(*prof)
    assert weight_distribution(ctx, P, C1, ENUM) == theorem_c1_weights(P)
    assert weight_distribution(ctx, P, C1, FROM_DIST) == theorem_c1_weights(P)
    assert weight_distribution(ctx, P, C2, FROM_DIST) == theorem_c2_weights(P)


def test_k_sixth():
    ctx, P = ctx_params(3, 6, 1)
    assert weight_distribution(ctx, P, C1, ENUM) == theorem_c1_weights(P)
    assert P.cases()["c1_weights"] == "iv"
    with pytest.raises(InapplicableCase):
        theorem_c2_weights(P)


def test_d_even_case_selection():
    assert derive_params(3, 6, 2, 2).cases()["c1_weights"] == "i"
    assert derive_params(3, 6, 2, 1).cases()["c1_weights"] == "ii"


def test_zero_message():
    ctx, P = ctx_params(3, 3, 1)
    assert codeword_weight(ctx, P, C1, 0, 0) == 0
    assert weight_from_sums(ctx, P, C2, 0, 0, 0) == 0


def test_weight_from_sums_exhaustive_small():
    ctx, P = ctx_params(3, 3, 1)
    for a in range(ctx.q):
        for b in range(ctx.q):
            assert weight_from_sums(ctx, P, C1, a, b) == codeword_weight(ctx, P, C1, a, b)


def test_codeword_is_trace_evaluation():
    ctx, P = ctx_params(3, 3, 1)
    a, b = 5, 11
    c = codeword(ctx, P, C1, a, b)
    for lam in (0, 1, 7, 25):
        x = ctx.power_of_pi(lam)
        v = ctx.add(ctx.mul(a, ctx.pow(x, P.e1)), ctx.mul(b, ctx.pow(x, P.e2)))
        assert c[lam] == ctx.trace(v)


@given(data=st.data(), prof=st.sampled_from([(3, 3, 1, 1), (5, 3, 1, 1), (3, 6, 2, 1), (3, 6, 2, 2), (3, 6, 1, 1)]))
def test_weight_formula_agrees(data, prof):
    ctx, P = ctx_params(*prof)
    a, b, g = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
    for which in (C1, C2):
        assert weight_from_sums(ctx, P, which, a, b, g) == codeword_weight(ctx, P, which, a, b, g)


@given(data=st.data())
def test_codes_are_linear(data):
    ctx, P = ctx_params(3, 6, 2, 2)
    el = st.integers(0, ctx.q - 1)
    a1, b1, a2, b2 = (data.draw(el) for _ in range(4))
    w = data.draw(st.sampled_from(ctx.subfield(2).tolist()))
    c1 = codeword(ctx, P, C1, a1, b1)
    c2 = codeword(ctx, P, C1, a2, b2)
    comb = codeword(ctx, P, C1, ctx.add(ctx.mul(w, a1), a2), ctx.add(ctx.mul(w, b1), b2))
    assert (comb == ctx.vadd(ctx.vmul(w, c1), c2)).all()


@pytest.mark.parametrize(
    "prof", [(3, 3, 1, 1), (5, 3, 1, 1), (3, 5, 1, 1), (3, 6, 2, 1), (3, 6, 2, 2), (3, 6, 1, 1), (3, 8, 1, 1), (3, 10, 1, 1), (5, 5, 1, 1), (3, 9, 3, 3)]
)
def test_theorem_tables_mass(prof):
    P = derive_params(*prof)
    for which, fn in ((C1, theorem_c1_weights), (C2, theorem_c2_weights)):
        try:
            table = fn(P)
        except InapplicableCase:
            continue
        dim = build_code(build_ctx(P.p, P.n), P, which).dimension if P.q <= 6561 else (2 if which == C1 else 3) * P.n0
        assert table.mass() == (P.p**P.t) ** dim
        assert table[0] == 1
        assert all(c > 0 for c in table.values())


def test_printed_c2_row_misprint_detected():
    P = derive_params(3, 6, 2, 1)
    fixed = theorem_c2_weights(P)
    assert fixed[648] == 364
    printed = theorem_c2_weights(P, as_printed=True)
    assert printed != fixed


def test_weight_table_serialization():
    t = WeightTable(C1_3_3_1)
    assert t.to_csv().splitlines() == ["weight,count", "0,1", "12,156", "18,494", "24,78"]
    assert WeightTable.from_json(t.to_json()) == t


def test_sampled_n8_weights_in_support():
    ctx, P = ctx_params(3, 8, 1)
    rng = np.random.default_rng(11)
    sup1, sup2 = set(theorem_c1_weights(P)), set(theorem_c2_weights(P))
    for a, b, g in rng.integers(0, ctx.q, size=(15, 3)).tolist():
        assert codeword_weight(ctx, P, C1, a, b) in sup1
        assert codeword_weight(ctx, P, C2, a, b, g) in sup2
