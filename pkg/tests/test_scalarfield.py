"""Expression core: parsing, printing, differentiation, evaluation."""
from __future__ import annotations

import math

import pytest

from cartan_contact.scalarfield import (
    Const,
    DomainError,
    ExpressionSyntaxError,
    Point,
    UnknownIdentifier,
    differentiate,
    evaluate,
    parse,
)
from helpers import fd_partial, rand_points, rand_smooth_field


ORIGIN = (0.0, 0.0, 0.0)


class TestParse:
    def test_literal_reading(self):
        assert parse("-y").evaluate((0, 1, 0)) == -1.0

    def test_sqrt_of_sum(self):
        assert parse("sqrt(1+y^2)").evaluate((0, 1, 0)) == pytest.approx(
            1.4142135623730951, abs=0)

    def test_plain_arithmetic(self):
        assert parse("2+3*x^2+3*y^2").evaluate((1, 1, 0)) == 8.0

    def test_precedence_power_over_unary_minus(self):
        # ^ binds tighter than unary minus
        assert parse("-x^2").evaluate((2, 0, 0)) == -4.0
        assert parse("(-x)^2").evaluate((2, 0, 0)) == 4.0

    def test_precedence_mul_over_add(self):
        assert parse("2+3*4").evaluate(ORIGIN) == 14.0
        assert parse("(2+3)*4").evaluate(ORIGIN) == 20.0

    def test_left_associative_sub_div(self):
        assert parse("8-3-2").evaluate(ORIGIN) == 3.0
        assert parse("16/4/2").evaluate(ORIGIN) == 2.0

    def test_power_right_associative(self):
        assert parse("2^3^2").evaluate(ORIGIN) == 512.0

    def test_negative_and_folded_exponents(self):
        assert parse("2^-2").evaluate(ORIGIN) == 0.25
        assert parse("x^(1+1)").evaluate((3, 0, 0)) == 9.0

    def test_fractional_exponent_rejected(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("x^0.5")
        with pytest.raises(ExpressionSyntaxError):
            parse("x^y")

    def test_coordinate_aliases(self):
        f = parse("x1 + 2*x2 + 3*x3")
        g = parse("x + 2*y + 3*z")
        for p in [(1, 2, 3), (-1, 0.5, 4)]:
            assert f.evaluate(p) == g.evaluate(p)

    def test_float_literals(self):
        assert parse("0.5 + 1.25e1").evaluate(ORIGIN) == 13.0

    def test_empty_input(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("")
        with pytest.raises(ExpressionSyntaxError):
            parse("   ")

    def test_unknown_identifier_offset(self):
        with pytest.raises(UnknownIdentifier) as err:
            parse("x + w")
        assert err.value.offset == 4
        assert err.value.name == "w"

    def test_unknown_function_call(self):
        with pytest.raises(UnknownIdentifier):
            parse("foo(x)")

    def test_function_requires_parentheses(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("sqrt 2")

    def test_trailing_garbage(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse("1 + 2 3")
        assert err.value.offset == 6

    def test_dangling_operator(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("x +")

    def test_unbalanced_parens(self):
        with pytest.raises(ExpressionSyntaxError):
            parse("(1+2")

    def test_unexpected_character(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse("1 $ 2")
        assert err.value.offset == 2

    def test_non_ascii_identifier(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse("α + 1")
        assert err.value.offset == 0


class TestEvaluate:
    def test_unit_normaliser(self):
        assert parse("1/sqrt(1+y^2)").evaluate(ORIGIN) == 1.0

    def test_division_by_zero(self):
        with pytest.raises(DomainError) as err:
            parse("x/y").evaluate((1, 0, 0))
        assert err.value.point == (1.0, 0.0, 0.0)
        assert "division by zero" in str(err.value)
        assert "x/y" in err.value.where

    def test_halved_normaliser_value(self):
        assert parse("y/(2*sqrt(1+y^2))").evaluate((0, 1, 0)) == pytest.approx(
            0.3535533905932738, rel=1e-15)

    def test_sqrt_of_negative(self):
        with pytest.raises(DomainError) as err:
            parse("sqrt(x)").evaluate((-4, 0, 0))
        assert "square root" in str(err.value)

    def test_zero_to_negative_power(self):
        with pytest.raises(DomainError):
            parse("x^-1").evaluate(ORIGIN)

    def test_overflow_is_a_domain_error(self):
        with pytest.raises(DomainError):
            parse("exp(x)").evaluate((1000, 0, 0))

    def test_deterministic(self, rng):
        f = rand_smooth_field(rng)
        p = (0.25, -0.75, 0.5)
        assert f.evaluate(p) == f.evaluate(p)

    def test_accepts_point_and_tuple(self):
        f = parse("x + y*z")
        assert f.evaluate(Point(1, 2, 3)) == f.evaluate((1, 2, 3)) == 7.0

    def test_point_requires_finite_coordinates(self):
        with pytest.raises(ValueError):
            Point(math.nan, 0, 0)
        with pytest.raises(ValueError):
            Point(0, math.inf, 0)


class TestDifferentiate:
    def test_product_of_coordinates(self, rng):
        d = parse("x*y").diff("x")
        for p in rand_points(rng, 5):
            assert d.evaluate(p) == p[1]

    def test_chain_rule_sqrt(self):
        d = parse("sqrt(1+y^2)").diff("y")
        assert d.evaluate((0, 1, 0)) == pytest.approx(0.7071067811865476, rel=1e-15)

    def test_constant_slope(self):
        d = parse("-y").diff("y")
        assert isinstance(d, Const)
        assert d.value == -1.0

    def test_absent_coordinate(self):
        d = parse("x*y").diff("z")
        assert isinstance(d, Const) and d.value == 0.0

    def test_alias_and_index_forms(self):
        f = parse("x*y^2")
        assert f.diff("x2").evaluate((1, 3, 0)) == f.diff(1).evaluate((1, 3, 0)) == 6.0

    def test_quotient_rule(self, rng):
        f = parse("x/(2+y^2)")
        d = f.diff("y")
        for p in rand_points(rng, 5):
            want = -2.0 * p[1] * p[0] / (2 + p[1] ** 2) ** 2
            assert d.evaluate(p) == pytest.approx(want, rel=1e-12)

    def test_trig_and_exp(self, rng):
        f = parse("sin(x)*cos(y) + exp(z)")
        for p in rand_points(rng, 5):
            assert f.diff("x").evaluate(p) == pytest.approx(
                math.cos(p[0]) * math.cos(p[1]), rel=1e-12)
            assert f.diff("z").evaluate(p) == pytest.approx(math.exp(p[2]), rel=1e-12)

    def test_derivative_cache_returns_same_object(self):
        f = parse("sin(x*y)")
        assert f.diff("x") is f.diff("x")

    def test_finite_difference_agreement(self, rng):
        # 20 random smooth fields, 20 random points, all three axes
        for _ in range(20):
            f = rand_smooth_field(rng)
            ds = [f.diff(k) for k in range(3)]
            for p in rand_points(rng, 20):
                for k in range(3):
                    sym = ds[k].evaluate(p)
                    fd = fd_partial(f, p, k)
                    assert abs(sym - fd) <= 1e-5 * max(1.0, abs(sym)), (
                        f"{f!r} axis {k} at {p}: {sym} vs {fd}")

    def test_linearity(self, rng):
        f = rand_smooth_field(rng)
        g = rand_smooth_field(rng)
        a, b = 1.5, -2.25
        d = (a * f + b * g).diff("y")
        df, dg = f.diff("y"), g.diff("y")
        for p in rand_points(rng, 10):
            want = a * df.evaluate(p) + b * dg.evaluate(p)
            assert abs(d.evaluate(p) - want) <= 1e-12 * max(1.0, abs(want))

    def test_leibniz(self, rng):
        f = rand_smooth_field(rng)
        g = rand_smooth_field(rng)
        d = (f * g).diff("x")
        for p in rand_points(rng, 10):
            want = f.diff("x").evaluate(p) * g.evaluate(p) + f.evaluate(p) * g.diff("x").evaluate(p)
            assert abs(d.evaluate(p) - want) <= 1e-12 * max(1.0, abs(want))


class TestPrinting:
    ROUND_TRIP_CASES = [
        "-y",
        "sqrt(1+y^2)",
        "2+3*x^2+3*y^2",
        "x - (y - z)",
        "(x+y)*(x-y)",
        "x/(y+2)/(z+3)",
        "-(x*y) + x*-0.5",
        "2^3^2 + x^-2",
        "sin(cos(exp(x*y)))",
        "x*y/(2+sqrt(1+z^2))",
    ]

    @pytest.mark.parametrize("text", ROUND_TRIP_CASES)
    def test_round_trip_evaluates_identically(self, text, rng):
        f = parse(text)
        g = parse(f.to_text())
        for p in rand_points(rng, 10, lo=0.5, hi=2.0):
            assert f.evaluate(p) == g.evaluate(p)  # identical operations: exact

    def test_round_trip_random_fields(self, rng):
        for _ in range(25):
            f = rand_smooth_field(rng)
            g = parse(f.to_text())
            for p in rand_points(rng, 5):
                assert f.evaluate(p) == g.evaluate(p)

    def test_canonical_names(self):
        assert parse("x1+x2+x3").to_text() == "x + y + z"

    def test_derivatives_stay_in_grammar(self, rng):
        for _ in range(10):
            f = rand_smooth_field(rng)
            d = f.diff("x")
            g = parse(d.to_text())
            for p in rand_points(rng, 3):
                assert d.evaluate(p) == g.evaluate(p)


class TestSimplification:
    def test_neutral_elements_fold(self):
        x = parse("x")
        assert (x + 0).to_text() == "x"
        assert (x * 1).to_text() == "x"
        assert (x * 0).to_text() == "0"
        assert (0 + x).to_text() == "x"

    def test_constants_fold(self):
        assert parse("2*3 + 4").to_text() == "10"

    def test_module_level_wrappers(self):
        f = parse("x^2")
        assert evaluate(f, (3, 0, 0)) == 9.0
        assert evaluate(differentiate(f, "x"), (3, 0, 0)) == 6.0
