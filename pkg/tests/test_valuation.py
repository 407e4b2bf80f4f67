import pytest
from hypothesis import given
from hypothesis import strategies as st

from regsub.valuation import INFINITY, extnat_add, is_unit, valuation

primes = st.sampled_from([2, 3, 5, 7])
nonzero = st.integers(-10**6, 10**6).filter(bool)


def test_valuation_examples():
    assert valuation(2, 0) is INFINITY
    assert valuation(2, 12) == 2
    assert valuation(3, 5) == 0
    assert valuation(5, -250) == 3


@pytest.mark.parametrize("p", [0, 1, 4, 9, -3, 2.0])
def test_valuation_rejects_bad_prime(p):
    with pytest.raises(ValueError):
        valuation(p, 6)


def test_extnat_add():
    assert extnat_add(2, 3) == 5
    assert extnat_add(INFINITY, 0) is INFINITY
    assert extnat_add(7, INFINITY) is INFINITY
    assert 7 + INFINITY is INFINITY


def test_is_unit():
    assert is_unit(2, 3)
    assert not is_unit(2, 4)
    assert not is_unit(5, 0)


def test_infinity_order():
    assert 0 < INFINITY and 10**9 < INFINITY
    assert INFINITY > 3 and INFINITY >= INFINITY and not INFINITY < INFINITY
    assert min(4, INFINITY) == 4
    assert sorted([INFINITY, 3, 0]) == [0, 3, INFINITY]
    assert INFINITY != 10**9


@given(primes, nonzero, nonzero)
def test_valuation_multiplicative(p, a, b):
    assert valuation(p, a * b) == valuation(p, a) + valuation(p, b)


@given(primes, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_valuation_ultrametric(p, a, b):
    va, vb = valuation(p, a), valuation(p, b)
    assert valuation(p, a + b) >= min(va, vb)
    if va != vb:
        assert valuation(p, a + b) == min(va, vb)


@given(primes, nonzero)
def test_valuation_is_largest_dividing_power(p, a):
    v = valuation(p, a)
    assert a % p**v == 0 and a % p ** (v + 1) != 0


ext = st.one_of(st.integers(0, 50), st.just(INFINITY))


@given(ext, ext, ext)
def test_extnat_add_monotone(a, b, c):
    if a <= b:
        assert extnat_add(a, c) <= extnat_add(b, c)
        assert extnat_add(c, a) <= extnat_add(c, b)
    assert (a <= b) or (b <= a)
