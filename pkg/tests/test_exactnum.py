from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from covertwist.exactnum import (
    CycloNumber,
    cyclo_arith,
    cyclotomic_polynomial,
    divisors,
    embed,
    totient,
    upoly_mul,
)

X = sympy.Symbol("x")


def sympy_phi(n):
    # independent oracle: sympy's cyclotomic polynomial, low degree first
    return tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, X), X).all_coeffs()))


@pytest.mark.parametrize("n, expected", [(1, (-1, 1)), (2, (1, 1)), (6, (1, -1, 1))])
def test_cyclotomic_examples(n, expected):
    assert cyclotomic_polynomial(n) == expected


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_matches_sympy(n):
    assert cyclotomic_polynomial(n) == sympy_phi(n)
    assert len(cyclotomic_polynomial(n)) - 1 == totient(n)


@pytest.mark.parametrize("n", range(1, 31))
def test_product_of_cyclotomics_is_xn_minus_1(n):
    prod = [1]
    for d in divisors(n):
        prod = upoly_mul(prod, cyclotomic_polynomial(d))
    assert prod == [-1] + [0] * (n - 1) + [1]


def test_cyclotomic_rejects_zero():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


def test_cyclo_examples():
    z3, z4 = CycloNumber.zeta(3), CycloNumber.zeta(4)
    assert cyclo_arith(z3, z3 ** 2, "mul") == 1
    assert cyclo_arith(1 + z4, 1 - z4, "mul") == 2
    for n in (2, 3, 5, 8, 12):
        assert cyclo_arith(1, CycloNumber.zeta(n), "div") == CycloNumber.zeta(n, n - 1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        cyclo_arith(CycloNumber.zeta(5), CycloNumber(5), "div")


def test_embed_examples():
    assert embed(CycloNumber.zeta(2), 4) == -1
    assert embed(CycloNumber.zeta(2), 4) == CycloNumber.zeta(4, 2)
    assert embed(CycloNumber.zeta(3), 6).coeffs == CycloNumber.zeta(6, 2).coeffs
    assert embed(CycloNumber.zeta(4), 4) is not None and embed(CycloNumber.zeta(4), 4).coeffs == CycloNumber.zeta(4).coeffs


def test_embed_requires_divisibility():
    with pytest.raises(ValueError):
        embed(CycloNumber.zeta(3), 4)


def test_mixed_orders_go_to_lcm():
    s = CycloNumber.zeta(3) * CycloNumber.zeta(4)
    assert s.order == 12
    assert s == CycloNumber.zeta(12, 4 + 3)


def test_zeta_sum_vanishes():
    # 1 + zeta + ... + zeta^(n-1) = 0 for n > 1
    for n in (2, 3, 7, 9, 10):
        total = sum((CycloNumber.zeta(n, k) for k in range(n)), CycloNumber(n))
        assert total == 0


def test_equality_and_hash_across_orders():
    a = CycloNumber.zeta(3)
    b = a.embed(12)
    assert a == b and hash(a) == hash(b)
    assert CycloNumber.zeta(4, 2) == Fraction(-1) and hash(CycloNumber.zeta(4, 2)) == hash(Fraction(-1))


def test_project_roundtrip():
    a = CycloNumber(5, [1, Fraction(2, 3), 0, -4])
    assert a.embed(15).project(5) == a
    assert a.embed(15).project(5).order == 5
    with pytest.raises(ValueError):
        CycloNumber.zeta(15).project(5)


def test_minimal_order():
    assert CycloNumber.zeta(6, 2).minimal().order == 3
    assert CycloNumber.zeta(4).minimal().order == 4


ORDERS = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12])
COEF = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))


@st.composite
def cyclos(draw, order=None):
    n = draw(ORDERS) if order is None else order
    return CycloNumber(n, draw(st.lists(COEF, min_size=totient(n), max_size=totient(n))))


@given(cyclos(), cyclos(), cyclos())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0
    if a != 0:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(st.data())
def test_embed_is_ring_homomorphism(data):
    m = data.draw(st.sampled_from([2, 3, 4, 6]))
    n = m * data.draw(st.sampled_from([1, 2, 3, 5]))
    a, b = data.draw(cyclos(m)), data.draw(cyclos(m))
    assert embed(a * b, n) == embed(a, n) * embed(b, n)
    assert embed(a + b, n) == embed(a, n) + embed(b, n)
    assert embed(a, n).project(m) == a


def test_immutable():
    a = CycloNumber.zeta(3)
    with pytest.raises(AttributeError):
        a.order = 4
