import math
from fractions import Fraction

import pytest
from hypothesis import given

from lorsol.exactfield import ONE, SQRT2, ZERO, QuadScalar, arith, as_quad, parse_quad, sign, to_float

from conftest import nonzero_quads, quads


def test_conjugate_product():
    assert arith(QuadScalar(1, 1), QuadScalar(1, -1), "mul") == QuadScalar(-1, 0)


def test_sqrt2_squared():
    assert SQRT2 * SQRT2 == 2
    assert (SQRT2 * SQRT2).is_rational


def test_half_plus_half():
    h = QuadScalar(Fraction(1, 2))
    assert arith(h, h, "add") == ONE


@pytest.mark.parametrize("x, s", [(ZERO, 0), (QuadScalar(1, -1), -1), (QuadScalar(3, -2), 1),
                                  (QuadScalar(-3, 2), -1), (QuadScalar(0, 5), 1), (QuadScalar(-1, -1), -1)])
def test_sign_examples(x, s):
    assert sign(x) == s


def test_to_float_examples():
    assert to_float(SQRT2) == pytest.approx(1.4142135623730951, abs=0)
    assert to_float(QuadScalar(Fraction(-1, 2))) == -0.5
    assert to_float(QuadScalar(1, 1)) == pytest.approx(2.414213562373095, rel=1e-16)


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        arith(ONE, ZERO, "div")
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_reduced_representation():
    x = QuadScalar(Fraction(6, 4), Fraction(-10, 15))
    assert (x.a_num, x.a_den, x.b_num, x.b_den) == (3, 2, -2, 3)
    assert x == QuadScalar("3/2", "-2/3")
    assert hash(QuadScalar(Fraction(2, 4))) == hash(Fraction(1, 2))


@pytest.mark.parametrize("text, value", [
    ("1/2+1r2", QuadScalar(Fraction(1, 2), 1)),
    ("sqrt2", SQRT2),
    ("-3*sqrt2", QuadScalar(0, -3)),
    ("1+√2", QuadScalar(1, 1)),
    ("-7/3", QuadScalar(Fraction(-7, 3))),
    ("2-1/2*sqrt2", QuadScalar(2, Fraction(-1, 2))),
])
def test_parse(text, value):
    assert parse_quad(text) == value


def test_parse_rejects_garbage():
    for bad in ("", "1+", "x", "sqrt3", "1//2"):
        with pytest.raises(ValueError):
            parse_quad(bad)


def test_json_roundtrip():
    x = QuadScalar(Fraction(-1, 3), Fraction(5, 7))
    assert x.to_json() == {"a": [-1, 3], "b": [5, 7]}
    assert as_quad(x.to_json()) == x
    with pytest.raises(ValueError):
        as_quad({"a": [1, 1], "b": [0, 1], "c": [0, 1]})


def test_str_forms():
    assert str(QuadScalar(1, 1)) == "1+sqrt2"
    assert str(QuadScalar(Fraction(-1, 2))) == "-1/2"
    assert str(QuadScalar(3, -2)) == "3-2*sqrt2"
    assert parse_quad(str(QuadScalar(Fraction(2, 3), Fraction(-5, 4)))) == QuadScalar(Fraction(2, 3), Fraction(-5, 4))


@given(quads, quads, quads)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ZERO and x * ONE == x


@given(nonzero_quads, quads)
def test_inverse(x, y):
    assert x * x.inverse() == ONE
    assert (y / x) * x == y


@given(quads, quads)
def test_sign_multiplicative(x, y):
    assert sign(x * y) == sign(x) * sign(y)


@given(quads)
def test_sign_matches_float(x):
    f = to_float(x)
    if abs(f) > 1e-12:
        assert sign(x) == (1 if f > 0 else -1)
    assert math.isclose(f, float(x.a) + float(x.b) * math.sqrt(2), rel_tol=1e-12, abs_tol=1e-12)


@given(quads, quads)
def test_order_consistent_with_sign(x, y):
    assert (x < y) == (sign(y - x) == 1)
    assert (x == y) == (sign(x - y) == 0)


@given(quads)
def test_norm_is_conjugate_product(x):
    assert x * x.conjugate() == x.norm()
