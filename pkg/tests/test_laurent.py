import pytest
import sympy
from hypothesis import given, strategies as st

from krystal import UsageError
from krystal.laurent import ONE, ZERO, LaurentPoly, q_fact, q_int

v = sympy.Symbol("v")


def to_sympy(p):
    return sum((sympy.Rational(c.numerator, c.denominator) * v ** k for k, c in p.terms.items()),
               sympy.Integer(0))


polys = st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=4).map(LaurentPoly)


def test_quantum_integers():
    assert q_int(0) == ZERO and q_int(1) == ONE
    assert q_int(2) == LaurentPoly({1: 1, -1: 1})
    assert q_int(2, 2) == LaurentPoly({2: 1, -2: 1})
    assert q_fact(3) == q_int(1) * q_int(2) * q_int(3)
    for k in range(1, 6):
        expected = sympy.cancel((v ** k - v ** -k) / (v - 1 / v))
        assert sympy.simplify(to_sympy(q_int(k)) - expected) == 0
    with pytest.raises(UsageError):
        q_int(-1)


def test_units_and_bar():
    m = LaurentPoly.mono(3, 2)
    assert m.is_unit and m * m.inverse() == ONE
    assert q_int(3).bar() == q_int(3)
    with pytest.raises(UsageError):
        q_int(2).inverse()
    assert LaurentPoly.mono(2) ** -2 == LaurentPoly.mono(-4)


def test_divexact():
    assert (q_int(2) * q_int(3)).divexact(q_int(3)) == q_int(2)
    assert q_fact(4).divexact(q_fact(2)) == q_int(3) * q_int(4)
    with pytest.raises(UsageError):
        q_int(3).divexact(q_int(2))
    with pytest.raises(ZeroDivisionError):
        ONE.divexact(ZERO)


def test_repr_is_readable():
    assert repr(ZERO) == "0"
    assert repr(LaurentPoly({1: 1, -1: -2})) == "v^1 - 2*v^-1"


@given(polys, polys)
def test_ring_operations_match_sympy(a, b):
    assert sympy.expand(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0


@given(polys, polys)
def test_division_recovers_factor(a, b):
    if not b:
        return
    assert (a * b).divexact(b) == a


@given(polys)
def test_hash_respects_equality(a):
    assert hash(a + ZERO) == hash(a) and a + ZERO == a
