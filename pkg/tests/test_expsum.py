from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dosum.cyclo import CycInt
from dosum.errors import InapplicableCase
from dosum.expsum import (
    FAST,
    ORACLE,
    PAIR_SWEEP,
    STRUCTURAL,
    DistTable,
    artin_count,
    artin_fibre_criterion,
    count_gamma_all,
    count_gamma_theorem,
    dd_value,
    moment_system_counts,
    moments,
    s_distribution,
    s_fast,
    s_oracle,
    s_tally_by_gamma,
    t_class,
    t_distribution,
    t_fast,
    t_oracle,
    theorem_s_distribution,
    theorem_t_distribution,
)
from dosum.gf_core import build_ctx, derive_params
from dosum.quadform import kernel, solve_shift

# tables from tests/_reference.py (independent brute force), keyed by
# canonical coefficient pairs (c0, c1) of c0 + c1 z
T_3_3_1 = {(-9, -18): 13, (-9, 0): 78, (-3, -6): 234, (3, 6): 234, (9, 0): 156, (9, 18): 13, (27, 0): 1}
S_3_3_1 = {
    (-9, -18): 13, (-9, -9): 312, (-9, 0): 78, (-6, -3): 1404, (-3, -6): 2106, (-3, 3): 1404,
    (0, -9): 312, (0, 0): 4862, (0, 9): 312, (3, -3): 2808, (3, 6): 2106, (6, 3): 2808,
    (9, -9): 26, (9, 0): 780, (9, 9): 312, (9, 18): 13, (18, 9): 26, (27, 0): 1,
}  # fmt: skip

SMALL = [(3, 3, 1), (5, 3, 1), (3, 5, 1), (3, 5, 2)]


def _as_pairs(table):
    return {v.coeffs: c for v, c in table.items()}


def ctx_params(p, n, k, t=1):
    return build_ctx(p, n), derive_params(p, n, k, t)


def test_frozen_t_table():
    ctx, P = ctx_params(3, 3, 1)
    assert _as_pairs(t_distribution(ctx, P, ORACLE)) == T_3_3_1
    assert _as_pairs(t_distribution(ctx, P, FAST)) == T_3_3_1
    assert _as_pairs(theorem_t_distribution(P)) == T_3_3_1


def test_frozen_s_table():
    ctx, P = ctx_params(3, 3, 1)
    assert _as_pairs(theorem_s_distribution(P)) == S_3_3_1
    assert _as_pairs(s_distribution(ctx, P, ORACLE)) == S_3_3_1
    assert _as_pairs(s_distribution(ctx, P, PAIR_SWEEP)) == S_3_3_1


@pytest.mark.parametrize("prof", SMALL)
def test_t_fast_matches_oracle(prof):
    ctx, P = ctx_params(*prof)
    assert t_distribution(ctx, P, FAST) == t_distribution(ctx, P, ORACLE) == theorem_t_distribution(P)


def test_t_examples():
    ctx, P = ctx_params(3, 3, 1)
    assert t_oracle(ctx, P, 0, 0) == 27
    assert t_oracle(ctx, P, ctx.pi, 0) in theorem_t_distribution(P)


def test_dd_values():
    P = derive_params(3, 8, 1)
    assert dd_value(P, 0) == 81  # mu p^m
    assert dd_value(P, 6) == -(3 ** (4 + 3))


def test_d_even_sweep_against_oracle_sample():
    ctx, P = ctx_params(3, 6, 2)
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, ctx.q, size=(20, 2)).tolist():
        assert t_fast(ctx, P, a, b) == t_oracle(ctx, P, a, b)


@given(data=st.data(), prof=st.sampled_from(SMALL + [(3, 6, 1), (3, 6, 2)]))
def test_t_class_roundtrip(data, prof):
    ctx, P = ctx_params(*prof)
    a, b = data.draw(st.integers(0, ctx.q - 1)), data.draw(st.integers(1, ctx.q - 1))
    T = t_fast(ctx, P, a, b)
    eps, i = t_class(P, T)
    assert eps in (1, -1) and 0 <= i <= 6


def test_s_examples():
    ctx, P = ctx_params(3, 3, 1)
    assert s_oracle(ctx, P, 0, 0, 0) == 27
    assert s_oracle(ctx, P, 0, 0, 5) == 0
    assert s_fast(ctx, P, 4, 9, 0) == t_fast(ctx, P, 4, 9)


@given(data=st.data(), prof=st.sampled_from(SMALL + [(3, 6, 1)]))
def test_s_fast_matches_oracle(data, prof):
    ctx, P = ctx_params(*prof)
    a, b, g = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
    assert s_fast(ctx, P, a, b, g) == s_oracle(ctx, P, a, b, g)


def test_s_well_defined_across_shift_solutions():
    ctx, P = ctx_params(3, 6, 1)
    rng = np.random.default_rng(5)
    checked = 0
    for a, b, g in rng.integers(0, ctx.q, size=(200, 3)).tolist():
        x0 = solve_shift(ctx, P, a, b, g)
        K = kernel(ctx, P, a, b)
        if x0 is None or K.w == 0:
            continue
        other = ctx.add(x0, int(K.elements[-1]))
        assert s_fast(ctx, P, a, b, g, x0=x0) == s_fast(ctx, P, a, b, g, x0=other)
        checked += 1
    assert checked


@pytest.mark.parametrize("prof", [(3, 3, 1), (5, 3, 1), (3, 5, 1)])
def test_s_distribution_matches_theorem(prof):
    ctx, P = ctx_params(*prof)
    assert s_distribution(ctx, P, PAIR_SWEEP) == theorem_s_distribution(P)


@pytest.mark.parametrize("prof", [(3, 3, 1), (5, 3, 1)])
def test_gamma_independence_oracle(prof):
    ctx, P = ctx_params(*prof)
    tallies = s_tally_by_gamma(ctx, P, ORACLE)
    assert all(tallies[g] == tallies[1] for g in range(2, ctx.q))
    assert s_tally_by_gamma(ctx, P, STRUCTURAL) == tallies


def test_gamma_independence_243():
    ctx, P = ctx_params(3, 5, 1)
    tallies = s_tally_by_gamma(ctx, P, STRUCTURAL)
    assert all(tallies[g] == tallies[1] for g in range(2, ctx.q))


@pytest.mark.parametrize("prof", SMALL + [(3, 6, 2), (3, 6, 1)])
def test_moments(prof):
    ctx, P = ctx_params(*prof)
    assert moments(P, theorem_t_distribution(P)).ok
    if P.q <= 243:
        assert moments(P, t_distribution(ctx, P, FAST)).ok


def test_second_moment_p_one_mod_four():
    P = derive_params(3, 6, 2)
    rep = moments(P, theorem_t_distribution(P))
    assert rep.second == (2 * P.q - 1) * P.q**2


def test_third_moment_dd():
    P = derive_params(3, 8, 1)
    rep = moments(P, theorem_t_distribution(P))
    assert rep.third == (3**11 + 3**8 - 3**3) * 3**16


def test_moment_system_small_dd():
    ctx, P = ctx_params(3, 6, 1)
    c = moment_system_counts(ctx, P)
    assert c["M2"] == c["M2_expected"] and c["Tprime"] == c["Tprime_expected"] and c["M3_relation"]


def test_artin():
    ctx, P = ctx_params(3, 6, 1)
    assert artin_count(ctx, P, 0, 0) == ctx.q * P.q0
    rng = np.random.default_rng(2)
    for a, b in rng.integers(0, ctx.q, size=(10, 2)).tolist():
        artin_count(ctx, P, a, b)
    assert artin_fibre_criterion(ctx, 1)
    with pytest.raises(InapplicableCase):
        artin_count(*ctx_params(3, 3, 1), 1, 1)


def test_gamma_counts_exhaustive_small():
    ctx, P = ctx_params(3, 3, 1)
    for a in range(ctx.q):
        for b in range(ctx.q):
            if a == b == 0:
                continue
            eps, i = t_class(P, t_fast(ctx, P, a, b))
            for av, cnt in count_gamma_all(ctx, P, a, b).items():
                ac = 0 if av == 0 else ctx.quad_char(av, 1)
                assert cnt == count_gamma_theorem(P, i, eps, ac)


def test_gamma_count_example_rows():
    P = derive_params(3, 3, 1)
    # s - i odd, d/t odd, a = 0
    assert count_gamma_theorem(P, 0, 1, 0) == 3 ** (3 - 1)
    # s - i even, a = 0
    assert count_gamma_theorem(P, 1, 1, 0) == 3 ** (3 - 1 - 1) + 2 * 3 ** ((3 - 1) // 2 - 1)


def test_zero_row_corrected_vs_printed():
    P = derive_params(3, 8, 1)
    fixed = theorem_s_distribution(P)
    assert fixed.mass() == P.q**3
    printed = theorem_s_distribution(P, as_printed=True)
    assert printed.mass() - P.q**3 == -574134480


def test_dist_table_json_roundtrip():
    P = derive_params(3, 5, 1)
    t = theorem_s_distribution(P)
    assert DistTable.from_json(t.to_json()) == t
    assert t.to_csv().splitlines()[0].startswith("value")
    assert DistTable.merged([t, t]).mass() == 2 * t.mass()


def test_sharded_sweep_merges():
    ctx, P = ctx_params(3, 5, 1)
    full = t_distribution(ctx, P, FAST)
    halves = [t_distribution(ctx, P, FAST, list(range(0, 100))), t_distribution(ctx, P, FAST, list(range(100, 243)))]
    assert DistTable.merged(halves) == full
    s_full = s_distribution(ctx, P, PAIR_SWEEP)
    s_parts = [s_distribution(ctx, P, PAIR_SWEEP, list(r)) for r in (range(0, 121), range(121, 243))]
    assert DistTable.merged(s_parts) == s_full


def test_mass_of_every_theorem_table():
    for prof in [(3, 3, 1), (5, 3, 1), (3, 5, 1), (3, 6, 2), (3, 6, 1), (3, 8, 1), (3, 10, 1), (5, 5, 1), (3, 7, 2), (3, 9, 3)]:
        P = derive_params(*prof)
        assert theorem_t_distribution(P).mass() == P.q**2
        assert theorem_s_distribution(P).mass() == P.q**3
        assert CycInt.from_int(P.p, P.q) in theorem_t_distribution(P)
