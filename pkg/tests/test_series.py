"""Series recursion: seeds, closed-form coefficients, termination, P_n."""

import math
import random
from fractions import Fraction

import pytest

from nlosc import (
    NoPolynomialSolutionError,
    Polynomial,
    f_equation_residual,
    is_polynomial_mode,
    polynomial_solution,
    real_root_count,
    series_coefficients,
)

from reference_tables import POLYNOMIAL_TABLE


def _closed_form_even(e: Fraction) -> dict[int, Fraction]:
    """Factored forms of the first even coefficients (p0 = 1)."""
    return {
        2: -e,
        4: Fraction(2**2, math.factorial(4)) * (e - 10) * e,
        6: -Fraction(2**3, math.factorial(6)) * (e - 26) * (e - 4) * e,
        8: Fraction(2**4, math.factorial(8)) * (e - 50) * (e - 6) * (e - 4) * e,
        10: -Fraction(2**5, math.factorial(10))
        * (e - 82) * (e - 8) * (e - 6) * (e - 4) * e,
    }


def _closed_form_odd(e: Fraction) -> dict[int, Fraction]:
    """Factored forms of the first odd coefficients (p1 = 1)."""
    return {
        3: -Fraction(2, math.factorial(3)) * (e - 5),
        5: Fraction(2**2, math.factorial(5)) * (e - 17) * (e - 3),
        7: -Fraction(2**3, math.factorial(7)) * (e - 37) * (e - 5) * (e - 3),
        9: Fraction(2**4, math.factorial(9))
        * (e - 65) * (e - 7) * (e - 5) * (e - 3),
        11: -Fraction(2**5, math.factorial(11))
        * (e - 101) * (e - 9) * (e - 7) * (e - 5) * (e - 3),
    }


class TestSeriesCoefficients:
    def test_even_example_e4(self):
        sol = series_coefficients(4, "even", 8)
        assert sol.coefficient(0) == 1
        assert sol.coefficient(2) == -4
        assert sol.coefficient(4) == -4
        assert sol.coefficient(6) == 0
        assert sol.coefficient(8) == 0

    def test_odd_example_e3(self):
        sol = series_coefficients(3, "odd", 9)
        assert sol.coefficient(1) == 1
        assert sol.coefficient(3) == Fraction(2, 3)
        assert all(sol.coefficient(i) == 0 for i in (5, 7, 9))

    def test_even_example_e0(self):
        sol = series_coefficients(0, "even", 10)
        assert sol.coefficient(0) == 1
        assert all(sol.coefficient(i) == 0 for i in range(1, 11))
        assert sol.terminated_at == 0

    def test_seed_relations_hold_for_generic_e(self):
        e = Fraction(7, 3)
        even = series_coefficients(e, "even", 6)
        assert even.coefficient(2) == -e * even.coefficient(0)
        odd = series_coefficients(e, "odd", 7)
        assert 3 * odd.coefficient(3) == -(e - 5) * odd.coefficient(1)

    def test_parity_purity(self):
        e = Fraction(9, 7)
        even = series_coefficients(e, "even", 21)
        assert all(even.coefficient(i) == 0 for i in range(1, 22, 2))
        odd = series_coefficients(e, "odd", 21)
        assert all(odd.coefficient(i) == 0 for i in range(0, 22, 2))

    def test_closed_forms_at_random_rational_e(self):
        rng = random.Random(20240517)
        for _ in range(20):
            e = Fraction(rng.randint(-400, 400), rng.randint(1, 40))
            even = series_coefficients(e, "even", 11)
            for idx, value in _closed_form_even(e).items():
                assert even.coefficient(idx) == value, (e, idx)
            odd = series_coefficients(e, "odd", 11)
            for idx, value in _closed_form_odd(e).items():
                assert odd.coefficient(idx) == value, (e, idx)

    def test_count_validation(self):
        with pytest.raises(ValueError):
            series_coefficients(1, "even", 3)
        with pytest.raises(ValueError):
            series_coefficients(1, "sideways", 10)


class TestTerminationDetection:
    def test_polynomial_mode_examples(self):
        assert is_polynomial_mode(4, "even", 30) == 4
        assert is_polynomial_mode(1, "odd", 60) is None
        assert is_polynomial_mode(2, "even", 60) is None

    def test_missing_levels_have_no_termination_either_parity(self):
        for e in (1, 2):
            for parity in ("even", "odd"):
                assert is_polynomial_mode(e, parity, 60) is None

    def test_termination_matches_level_for_integers(self):
        for n in [0] + list(range(3, 21)):
            parity = "even" if n % 2 == 0 else "odd"
            assert is_polynomial_mode(n, parity, 60) == n

    def test_opposite_parity_never_terminates(self):
        for n in range(3, 16):
            opposite = "odd" if n % 2 == 0 else "even"
            assert is_polynomial_mode(n, opposite, 60) is None

    def test_generic_rational_e_never_terminates(self):
        assert is_polynomial_mode(Fraction(7, 2), "even", 40) is None
        assert is_polynomial_mode(Fraction(22, 7), "odd", 40) is None

    def test_horizon_validation(self):
        with pytest.raises(ValueError):
            is_polynomial_mode(4, "even", 11)


class TestPolynomialSolution:
    def test_reproduces_all_table_rows(self):
        for n, expected in POLYNOMIAL_TABLE.items():
            assert polynomial_solution(n) == expected, f"P_{n} mismatch"

    def test_missing_levels_rejected(self):
        for n in (1, 2):
            with pytest.raises(NoPolynomialSolutionError):
                polynomial_solution(n)

    def test_invalid_levels_rejected(self):
        with pytest.raises(ValueError):
            polynomial_solution(-3)

    def test_degree_and_normalization(self):
        for n in [0] + list(range(3, 31)):
            p = polynomial_solution(n)
            assert p.degree == n
            anchor = p.coefficient(0) if n % 2 == 0 else p.coefficient(1)
            assert anchor == 1

    def test_direct_substitution_into_the_equation(self):
        for n in [0] + list(range(3, 31)):
            residual = f_equation_residual(polynomial_solution(n), n)
            assert residual.is_zero, f"P_{n} does not solve the equation"

    def test_root_structure(self):
        for n in range(3, 11):
            assert real_root_count(polynomial_solution(n)) == n - 2

    def test_residual_is_nonzero_off_spectrum(self):
        p = polynomial_solution(4)
        assert not f_equation_residual(p, 5).is_zero
