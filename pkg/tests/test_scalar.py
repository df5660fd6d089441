import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logcardy.scalar import (QQ, Field, FieldMismatch, MissingRoot, approximate, conjugate,
                             cyclotomic_polynomial, euler_phi, parse, primitive_root, roots_in_field,
                             sqrt, to_str)

ORDERS = [3, 4, 5, 8, 12, 16]


def elements(order):
    f = Field(order)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(coeff, min_size=f.degree, max_size=f.degree).map(f.from_coefficients)


@st.composite
def field_and_elements(draw, n=3):
    order = draw(st.sampled_from(ORDERS))
    return tuple(draw(elements(order)) for _ in range(n))


def test_rational_sum():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)


def test_zeta4_squared():
    f = Field(4)
    assert f.zeta * f.zeta == -1


def test_zeta3_root_sum():
    f = Field(3)
    z = f.zeta
    assert not (1 + z + z * z)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert [euler_phi(n) for n in (1, 5, 8, 12)] == [1, 4, 4, 4]


def test_conjugate_examples():
    f = Field(8)
    assert conjugate(f.zeta) == f.zeta ** 7
    assert conjugate(Fraction(3, 7)) == Fraction(3, 7)


def test_approximate_examples():
    assert approximate(Fraction(1, 2), 10) == (0.5, 0.0)
    re, im = approximate(Field(4).zeta, 10)
    assert abs(re) < 1e-12 and abs(im - 1) < 1e-12
    f = Field(8)
    re, im = approximate(f.zeta + f.zeta ** 7, 10)
    assert abs(re - 2 * math.cos(math.pi / 4)) < 1e-10 and abs(im) < 1e-12


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Field(3).zeta + Field(4).zeta


@given(field_and_elements())
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0
    if x:
        assert x * (1 / x) == 1


@given(field_and_elements(2))
def test_conjugation_is_involutive_automorphism(xy):
    x, y = xy
    assert conjugate(conjugate(x)) == x
    assert conjugate(x * y) == conjugate(x) * conjugate(y)
    re, im = approximate(x * conjugate(x))
    assert im == pytest.approx(0, abs=1e-9) and re >= -1e-9


@given(field_and_elements(1))
def test_string_round_trip(x):
    (x,) = x
    assert parse(to_str(x), x.field) == x


@given(field_and_elements(2))
def test_embedding_is_a_homomorphism(xy):
    x, y = xy
    a, b = complex(*approximate(x)), complex(*approximate(y))
    assert complex(*approximate(x * y)) == pytest.approx(a * b, abs=1e-8)


def test_sqrt_closed_forms():
    assert sqrt(Field(8)(2)) ** 2 == 2
    assert sqrt(Field(5)(5)) ** 2 == 5
    assert sqrt(Field(12)(3)) ** 2 == 3
    assert sqrt(Field(3)(-3)) ** 2 == -3
    with pytest.raises(MissingRoot):
        sqrt(QQ(2))
    with pytest.raises(MissingRoot):
        sqrt(Field(3)(3))


def test_sqrt_principal_branch():
    r = sqrt(Field(8)(2))
    assert approximate(r)[0] > 0


def test_primitive_root():
    assert primitive_root(QQ, 2) == -1
    f = Field(3)
    w = primitive_root(f, 6)
    assert w ** 6 == 1 and w ** 3 == -1 and w ** 2 != 1


def test_roots_in_field_exact():
    f = Field(4)
    roots = roots_in_field([1, 0, 1], f)
    assert sorted(map(to_str, roots)) == sorted([to_str(f.zeta), to_str(-f.zeta)])
    assert roots_in_field([-2, 0, 1], Field(3)) == []
