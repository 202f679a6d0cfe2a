from __future__ import annotations

import cmath

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dosum.cyclo import INT_POWER, SQRT_PSTAR_POWER, CycInt, canon, closed_value, gauss_sum, pstar
from dosum.errors import PrimeMismatch


def test_canonical_examples():
    assert canon(3, [1, 1, 1]).is_zero()
    assert CycInt.zeta(3, 2).coeffs == (-1, -1)
    assert canon(5, [2, 0, 0, 0, 0]).coeffs == (2, 0, 0, 0)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gauss_square(p):
    g = gauss_sum(p, 1)
    assert g * g == pstar(p)


def test_gauss_three():
    assert gauss_sum(3, 1) == CycInt.zeta(3, 1) - CycInt.zeta(3, 2)


@pytest.mark.parametrize("p,t", [(3, 2), (3, 3), (5, 2)])
def test_gauss_over_extension(p, t):
    # Davenport-Hasse: G_t = (-1)^{t-1} G_1^t
    assert gauss_sum(p, t) == (gauss_sum(p, 1) ** t).scale((-1) ** (t - 1))


def test_closed_values():
    assert closed_value(3, INT_POWER, 1, 4) == 81
    assert closed_value(3, SQRT_PSTAR_POWER, 1, 1) == CycInt.zeta(3, 1).scale(3) - CycInt.zeta(3, 2).scale(3)
    assert closed_value(3, INT_POWER, -1, 2, 1).coeffs == (0, -9)


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        CycInt.from_int(3, 1) + CycInt.from_int(5, 1)


def cyc(p):
    return st.lists(st.integers(-50, 50), min_size=p - 1, max_size=p - 1).map(lambda c: CycInt(p, c))


primes = st.sampled_from([3, 5, 7])


@given(data=st.data(), p=primes)
def test_ring_axioms(data, p):
    a, b, c = (data.draw(cyc(p)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0
    assert hash(a + 0) == hash(a)


@given(data=st.data(), p=primes)
def test_numeric_evaluation(data, p):
    a, b = data.draw(cyc(p)), data.draw(cyc(p))
    assert abs((a * b).evaluate() - a.evaluate() * b.evaluate()) < 1e-6 * (1 + abs(a.evaluate() * b.evaluate()))


@given(data=st.data(), p=primes)
def test_zeta_shift_and_galois(data, p):
    a = data.draw(cyc(p))
    j = data.draw(st.integers(-20, 20))
    assert a.mul_zeta(j) == a * CycInt.zeta(p, j)
    s = data.draw(st.integers(1, p - 1))
    w = cmath.exp(2j * cmath.pi * s / p)
    assert abs(a.galois(s).evaluate() - sum(c * w**i for i, c in enumerate(a.coeffs))) < 1e-6


@given(data=st.data(), p=primes)
def test_json_roundtrip(data, p):
    a = data.draw(cyc(p)).scale(10**20)
    assert CycInt.from_json(a.to_json()) == a


@given(raw=st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_representation_unique(raw):
    # adding a multiple of 1 + z + z^2 does not change the element
    assert canon(3, raw) == canon(3, [c + 4 for c in raw])
