"""Field arithmetic in Q[t]/(t^8 - q)."""

import math
import random
from fractions import Fraction

import pytest

from periodic_hall.errors import ParseError, UsageError
from periodic_hall.scalar import ScalarField, parse_scalar


def random_scalar(field, rng, max_terms=4):
    coeffs = {}
    for _ in range(rng.randint(0, max_terms)):
        coeffs[rng.randrange(8)] = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
    return field.scalar(coeffs)


def test_requires_prime():
    with pytest.raises(UsageError):
        ScalarField(6)
    with pytest.raises(UsageError):
        ScalarField(1)
    ScalarField(13)


def test_v_power_basics():
    f = ScalarField(2)
    assert f.v_power(0) == f.one
    # v^2 = q: v_power takes quarter units, so v = v_power(4)
    assert f.v_power(8) == f.from_rational(2)
    assert f.v_power(-4) * f.v_power(4) == f.one
    assert f.v_power(4) * f.v_power(4) == f.q_power(1)


def test_v_power_additive_on_grid():
    f = ScalarField(3)
    powers = {n: f.v_power(n) for n in range(-128, 129)}
    for a in range(-64, 65):
        for b in range(-64, 65):
            assert powers[a] * powers[b] == powers[a + b]


def test_field_axioms_random():
    f = ScalarField(5)
    rng = random.Random(20240)
    for _ in range(150):
        a = random_scalar(f, rng)
        b = random_scalar(f, rng)
        c = random_scalar(f, rng)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == f.one


def test_invert_zero_fails():
    f = ScalarField(2)
    with pytest.raises(ZeroDivisionError):
        f.zero.inverse()


def test_invert_t():
    f = ScalarField(7)
    t = f.v_power(1)
    assert t.inverse() * t == f.one
    # t^-1 = t^7 / q
    assert t.inverse() == f.scalar({7: Fraction(1, 7)})


def test_eval_real():
    f = ScalarField(2)
    assert f.one.eval_real() == 1.0
    assert abs(f.v_power(4).eval_real() - math.sqrt(2)) < 1e-12
    assert abs(f.v_power(1).eval_real() - 2 ** 0.125) < 1e-12


def test_eval_real_multiplicative():
    f = ScalarField(3)
    rng = random.Random(7)
    for _ in range(60):
        a = random_scalar(f, rng)
        b = random_scalar(f, rng)
        assert abs((a * b).eval_real() - a.eval_real() * b.eval_real()) < 1e-9 * (
            1 + abs(a.eval_real()) + abs(b.eval_real())
        ) * (1 + abs(a.eval_real() * b.eval_real()))


def test_serialization_roundtrip():
    f = ScalarField(3)
    rng = random.Random(99)
    for _ in range(40):
        a = random_scalar(f, rng)
        assert f.from_strings(a.to_strings()) == a
    assert f.v_power(-4).to_strings() == ["0", "0", "0", "0", "1/3", "0", "0", "0"]
    with pytest.raises(ParseError):
        f.from_strings(["1"] * 7)


def test_pretty_printing():
    f = ScalarField(2)
    assert str(f.v_power(-4)) == "v^-1"
    assert str(f.v_power(4)) == "v"
    assert str(f.v_power(3)) == "t^3"
    assert str(f.from_rational(Fraction(3, 4) * 4)) == "3"
    assert str(f.zero) == "0"
    # q-powers fold into the t-exponent: (1/2) t^4 is t^-4 = v^-1
    assert str(f.scalar({4: Fraction(1, 2)})) == "v^-1"


def test_parse_scalar_roundtrip():
    f = ScalarField(3)
    rng = random.Random(5)
    cases = [f.v_power(k) for k in range(-9, 10)]
    for _ in range(30):
        cases.append(random_scalar(f, rng))
    for a in cases:
        assert parse_scalar(f, str(a)) == a
    assert parse_scalar(f, "2*v^-1") == f.from_rational(2) * f.v_power(-4)
    assert parse_scalar(f, "q^2") == f.from_rational(9)
    with pytest.raises(ParseError):
        parse_scalar(f, "v^")
    with pytest.raises(ParseError):
        parse_scalar(f, "(1 + v")
