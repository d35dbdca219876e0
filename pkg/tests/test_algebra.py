from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendrian_aug.algebra import LaurentPoly, field_make, prime_power, rhs_exact
from legendrian_aug.errors import DegreeZero, DivByZero, NotPrime, ParityError, NegativeExponentError

from conftest import gf

QS = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)


def test_prime_power_split():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 12, 0):
        with pytest.raises(NotPrime):
            prime_power(bad)


def test_field_constructor_errors():
    with pytest.raises(DegreeZero):
        field_make(2, 0)
    with pytest.raises(NotPrime):
        field_make(4, 2)


def test_small_field_facts():
    assert gf(2).add(1, 1) == 0
    f4 = gf(4)
    x = 2  # the class of x
    assert f4.format(f4.mul(x, x)) == "x+1"
    assert gf(5).inv(2) == 3


def test_inverse_of_zero():
    with pytest.raises(DivByZero):
        gf(7).inv(0)


@pytest.mark.parametrize("q", QS)
def test_unit_group_is_cyclic_of_order_q_minus_1(q):
    f = gf(q)
    for a in f.units():
        assert f.pow(a, q - 1) == 1
    assert any(len({f.pow(a, i) for i in range(q - 1)}) == q - 1 for a in f.units())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(QS), st.data())
def test_field_axioms(q, data):
    f = gf(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.add(a, f.neg(a)) == 0
    assert f.sub(a, b) == f.add(a, f.neg(b))
    if a:
        assert f.mul(a, f.inv(a)) == 1
    assert f.from_int(q) == 0


def test_field_elements_wrapper():
    f = gf(9)
    a, b = f.elem(4), f.elem(7)
    assert (a * b).code == f.mul(4, 7)
    assert (a + b - b).code == 4
    assert (a * a.inv()).code == 1


laurent = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(LaurentPoly)


@settings(max_examples=60, deadline=None)
@given(laurent, laurent, laurent)
def test_laurent_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    assert a * b == b * a


def test_laurent_json_and_products():
    zi = LaurentPoly.monomial(-1)
    assert (zi * zi).to_json() == {"terms": [[-2, 1]]}
    R = LaurentPoly({1: 1, -1: 2})
    assert R.to_json() == {"terms": [[-1, 2], [1, 1]]}
    assert LaurentPoly.from_json(R.to_json()) == R


@pytest.mark.parametrize(
    "R, c, q, want",
    [
        ({-1: 1}, 1, 5, Fraction(1)),
        ({1: 1, -1: 2}, 1, 2, Fraction(5, 4)),
        ({0: 1, -2: 1}, 2, 3, Fraction(7, 9)),
    ],
)
def test_rhs_exact_examples(R, c, q, want):
    assert rhs_exact(LaurentPoly(R), c, q) == want


def test_rhs_exact_rejects_bad_polynomials():
    with pytest.raises(NegativeExponentError):
        rhs_exact(LaurentPoly({-3: 1}), 1, 2)
    with pytest.raises(ParityError):
        rhs_exact(LaurentPoly({0: 1, 1: 1}), 1, 2)


def test_rhs_of_zero_polynomial_is_zero():
    assert rhs_exact(LaurentPoly(), 1, 3) == 0
