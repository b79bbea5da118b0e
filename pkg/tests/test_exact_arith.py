"""Exact polynomial and combinatorial primitives."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from psi_ehrhart.errors import DomainError, NotIntegerValuedError
from psi_ehrhart.exact_arith import (
    POLY_ONE,
    POLY_ZERO,
    binomial_poly,
    double_factorial,
    from_fstar,
    multinomial,
    poly_add,
    poly_degree,
    poly_eval,
    poly_from_coeffs,
    poly_mul,
    poly_render,
    poly_scale,
    poly_shift,
    to_fstar,
)

F = Fraction


class TestDoubleFactorial:
    def test_small_values(self):
        assert double_factorial(-1) == 1
        assert double_factorial(0) == 1
        assert double_factorial(1) == 1
        assert double_factorial(2) == 2
        assert double_factorial(3) == 3
        assert double_factorial(5) == 15
        assert double_factorial(7) == 105
        assert double_factorial(6) == 48

    def test_below_minus_one_rejected(self):
        with pytest.raises(DomainError):
            double_factorial(-2)

    def test_odd_even_product_is_factorial(self):
        # (2k+1)!! * (2k)!! = (2k+1)!
        for k in range(21):
            assert (double_factorial(2 * k + 1) * double_factorial(2 * k)
                    == math.factorial(2 * k + 1))


class TestMultinomial:
    def test_basic(self):
        assert multinomial(0, ()) == 1
        assert multinomial(3, (1, 1, 1)) == 6
        assert multinomial(4, (2, 2)) == 6
        assert multinomial(5, (5,)) == 1

    def test_sum_mismatch_rejected(self):
        with pytest.raises(DomainError):
            multinomial(4, (1, 1))

    def test_negative_part_rejected(self):
        with pytest.raises(DomainError):
            multinomial(0, (1, -1))


class TestPolyBasics:
    def test_trailing_zeros_stripped(self):
        assert poly_from_coeffs([1, 2, 0, 0]) == (F(1), F(2))
        assert poly_from_coeffs([0, 0]) == POLY_ZERO

    def test_degree(self):
        assert poly_degree(POLY_ZERO) == -1
        assert poly_degree(POLY_ONE) == 0
        assert poly_degree(poly_from_coeffs([0, 1])) == 1

    def test_add_cancels(self):
        p = poly_from_coeffs([1, 2])
        q = poly_from_coeffs([-1, -2])
        assert poly_add(p, q) == POLY_ZERO

    def test_scale_by_zero(self):
        assert poly_scale(poly_from_coeffs([3, 4]), 0) == POLY_ZERO

    def test_mul(self):
        # (g + 1)(g - 1) = g^2 - 1
        p = poly_from_coeffs([1, 1])
        q = poly_from_coeffs([-1, 1])
        assert poly_mul(p, q) == poly_from_coeffs([-1, 0, 1])
        assert poly_mul(p, POLY_ZERO) == POLY_ZERO

    def test_eval(self):
        p = poly_from_coeffs([-3, 6])  # 6g - 3
        assert poly_eval(p, 2) == 9
        assert poly_eval(p, F(1, 2)) == 0
        assert poly_eval(POLY_ZERO, 5) == 0


class TestPolyShift:
    def test_linear(self):
        # p(g) = 6g - 3 shifted by 1 is p(g+1) = 6g + 3
        p = poly_from_coeffs([-3, 6])
        assert poly_shift(p, 1) == poly_from_coeffs([3, 6])

    def test_square_negative_shift(self):
        # g^2 shifted by -1 is (g-1)^2 = g^2 - 2g + 1
        p = poly_from_coeffs([0, 0, 1])
        assert poly_shift(p, -1) == poly_from_coeffs([1, -2, 1])

    def test_zero_shift_identity(self):
        p = poly_from_coeffs([2, -7, 5])
        assert poly_shift(p, 0) == p

    def test_fractional_shift(self):
        p = poly_from_coeffs([0, 1])
        assert poly_shift(p, F(1, 2)) == poly_from_coeffs([F(1, 2), 1])


class TestBinomialPoly:
    def test_k0_is_one(self):
        assert binomial_poly(0, 0) == POLY_ONE

    def test_k1_is_g(self):
        assert binomial_poly(0, 1) == poly_from_coeffs([0, 1])

    def test_k2(self):
        # C(g, 2) = (g^2 - g)/2
        assert binomial_poly(0, 2) == poly_from_coeffs([0, F(-1, 2), F(1, 2)])

    def test_shifted_agrees_with_comb(self):
        for shift in (-1, 0, 2):
            for k in range(5):
                p = binomial_poly(shift, k)
                for g in range(k + 3, k + 9):
                    assert poly_eval(p, g) == math.comb(g + shift, k)

    def test_negative_k_rejected(self):
        with pytest.raises(DomainError):
            binomial_poly(0, -1)


class TestFStar:
    def test_constant(self):
        assert to_fstar(POLY_ONE) == (1,)
        assert to_fstar(POLY_ZERO) == ()

    def test_square(self):
        # g^2 takes values 1, 4, 9 at g = 1, 2, 3 -> differences (1, 3, 2)
        assert to_fstar(poly_from_coeffs([0, 0, 1])) == (1, 3, 2)

    def test_linear_examples(self):
        assert to_fstar(poly_from_coeffs([-3, 6])) == (3, 6)
        assert to_fstar(poly_from_coeffs([1, -1])) == (0, -1)

    def test_half_square_not_integer_valued(self):
        with pytest.raises(NotIntegerValuedError):
            to_fstar(poly_from_coeffs([0, 0, F(1, 2)]))

    def test_from_fstar_round_trip(self):
        for coeffs in ([1], [0, 6], [15, -36, 36], [1, 3, 3, 1]):
            p = poly_from_coeffs(coeffs)
            assert from_fstar(to_fstar(p)) == p

    def test_basis_recurrence(self):
        # C(g, k) = C(g-1, k) + C(g-1, k-1)
        for k in range(1, 11):
            lhs = binomial_poly(0, k)
            rhs = poly_add(binomial_poly(-1, k), binomial_poly(-1, k - 1))
            assert lhs == rhs

    @settings(deadline=None, max_examples=60)
    @given(st.lists(st.integers(-50, 50), min_size=0, max_size=7))
    def test_round_trip_integer_basis(self, fstar):
        p = from_fstar(fstar)
        trimmed = tuple(fstar)
        while trimmed and trimmed[-1] == 0:
            trimmed = trimmed[:-1]
        assert to_fstar(p) == trimmed

    @settings(deadline=None, max_examples=60)
    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=5))
    def test_integer_coefficients_always_integer_valued(self, coeffs):
        p = poly_from_coeffs(coeffs)
        fstar = to_fstar(p)
        assert all(f == int(f) for f in fstar)


class TestRender:
    def test_examples(self):
        assert poly_render(poly_from_coeffs([-3, 6])) == "6*g - 3"
        assert poly_render(poly_from_coeffs([0, -18, 36])) == "36*g^2 - 18*g"
        assert poly_render(poly_from_coeffs([15, -36, 36])) == "36*g^2 - 36*g + 15"
        assert poly_render(POLY_ZERO) == "0"
        assert poly_render(POLY_ONE) == "1"

    def test_unit_coefficients_elided(self):
        assert poly_render(poly_from_coeffs([0, 0, 1])) == "g^2"
        assert poly_render(poly_from_coeffs([0, -1])) == "-g"

    def test_fraction_coefficients(self):
        p = poly_from_coeffs([1, F(3, 2), F(1, 2)])
        assert poly_render(p) == "1/2*g^2 + 3/2*g + 1"

    def test_custom_variable(self):
        assert poly_render(poly_from_coeffs([-3, 6]), var="t") == "6*t - 3"
