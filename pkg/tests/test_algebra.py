import pytest

from valforge.algebra import (Element, FreeAlgebra, PolynomialRing,
                              SemigroupAlgebra, parse_polynomial)
from valforge.coefficients import QQ, QV, QHalf
from valforge.orderkeys import DegLexOrder, LexOrder, WordDegLexOrder
from valforge.semigroups import (FreeWordMonoid, IntegerVectorMonoid,
                                 MatrixGroupoid)


def test_stanley_reisner_product_vanishes():
    P = IntegerVectorMonoid(2, DegLexOrder(2), ideal_generators=[(1, 1)])
    A = SemigroupAlgebra(QQ, P)
    x = A.basis_element((1, 0))
    y = A.basis_element((0, 1))
    assert x * y == A.zero()
    assert x * x == A.basis_element((2, 0))


def test_matrix_semigroup_algebra():
    A = SemigroupAlgebra(QQ, MatrixGroupoid(3))
    e12 = A.basis_element((1, 2))
    e23 = A.basis_element((2, 3))
    assert e12 * e23 == A.basis_element((1, 3))
    assert e23 * e12 == A.zero()


def test_unit_acts_trivially():
    P = IntegerVectorMonoid(2, DegLexOrder(2))
    A = SemigroupAlgebra(QQ, P)
    one = A.basis_element((0, 0))
    u = A.basis_element((2, 1)) * 3 + A.basis_element((0, 1))
    assert one * u == u


def test_polynomial_arithmetic():
    R = PolynomialRing(QQ, ["x", "y"], DegLexOrder(2))
    x, y = R.gens()
    f = (x + y) ** 2
    assert f == x**2 + 2 * x * y + y**2
    assert f.leading_monomial() == (2, 0)


def test_free_algebra_noncommutative():
    F = FreeAlgebra(QQ, ["a", "b"], WordDegLexOrder(2))
    a, b = F.gens()
    assert a * b != b * a
    assert (a * b - b * a).terms == {(0, 1): 1, (1, 0): -1}


def test_free_algebra_bar():
    F = FreeAlgebra(QV, ["a", "b"], WordDegLexOrder(2))
    a, b = F.gens()
    x = QHalf.v_power(1) * (a * b)
    bx = F.bar(x)
    assert bx == QHalf.v_power(-1) * (b * a)


def test_parse_round_trip_rational():
    R = PolynomialRing(QQ, ["x", "y"], DegLexOrder(2, priority=[0, 1]))
    f = parse_polynomial(R, "2/3 * x^2 y + -1 * y^3 + 5 * 1")
    assert R.to_string(f) == "2/3 * x^2 y + -1 * y^3 + 5 * 1"
    again = parse_polynomial(R, R.to_string(f))
    assert again == f


def test_parse_round_trip_qhalf():
    F = FreeAlgebra(QV, ["E1", "E2"], WordDegLexOrder(2))
    f = parse_polynomial(F, "(1 + -1*v^2) * E1 E2 + (v^-3) * E2")
    s = F.to_string(f)
    assert parse_polynomial(F, s) == f


def test_parse_rejects_scalar_in_semigroup_algebra():
    A = SemigroupAlgebra(QQ, MatrixGroupoid(2))
    with pytest.raises(TypeError):
        A.coerce(1)
