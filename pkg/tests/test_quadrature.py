"""Gauss-Hermite rules and weighted inner products."""

import math

import numpy as np
import pytest
from numpy.polynomial.hermite import hermgauss

from nlosc import (
    NoPolynomialSolutionError,
    QuadratureConvergenceError,
    gauss_hermite_rule,
    hermite,
    norm_squared,
    orthogonality_matrix,
    script_p_dense,
    weighted_inner_product,
)

SQRT_PI = math.sqrt(math.pi)


class TestRuleConstruction:
    def test_size_one(self):
        rule = gauss_hermite_rule(1)
        assert rule.nodes.tolist() == [0.0]
        assert rule.weights[0] == pytest.approx(SQRT_PI, rel=1e-15)

    def test_size_two(self):
        rule = gauss_hermite_rule(2)
        assert rule.nodes == pytest.approx(
            [-1 / math.sqrt(2), 1 / math.sqrt(2)], rel=1e-14
        )
        assert rule.weights == pytest.approx([SQRT_PI / 2] * 2, rel=1e-14)

    def test_weights_sum_to_sqrt_pi(self):
        rule = gauss_hermite_rule(20)
        assert abs(rule.weights.sum() - SQRT_PI) < 1e-13 * SQRT_PI

    def test_nodes_increase_and_weights_positive(self):
        for n in (1, 2, 3, 7, 16, 33, 64, 256):
            rule = gauss_hermite_rule(n)
            assert rule.size == n
            assert np.all(np.diff(rule.nodes) > 0)
            assert np.all(rule.weights > 0)
            assert rule.kind == "gauss-hermite"

    def test_matches_reference_implementation(self):
        # numpy's hermgauss is an independent construction (Golub-Welsch)
        for n in (5, 20, 64):
            rule = gauss_hermite_rule(n)
            nodes, weights = hermgauss(n)
            assert np.max(np.abs(rule.nodes - nodes)) < 1e-13
            assert np.max(np.abs(rule.weights - weights)) < 1e-13 * weights.max()

    def test_odd_rule_contains_origin(self):
        assert 0.0 in gauss_hermite_rule(7).nodes.tolist()

    def test_invalid_size(self):
        with pytest.raises(ValueError):
            gauss_hermite_rule(0)

    def test_moment_exactness(self):
        # x^k against exp(-x^2): odd moments vanish, even are Gamma((k+1)/2)
        for n in (1, 2, 3, 5, 8, 13, 20, 40):
            rule = gauss_hermite_rule(n)
            for k in range(2 * n):
                estimate = float(np.sum(rule.weights * rule.nodes**k))
                if k % 2 == 1:
                    scale = float(np.sum(rule.weights * np.abs(rule.nodes) ** k))
                    assert abs(estimate) <= 1e-12 * max(scale, 1.0), (n, k)
                else:
                    exact = math.gamma((k + 1) / 2)
                    assert abs(estimate - exact) <= 1e-12 * exact, (n, k)


class TestInnerProducts:
    def test_odd_pair_is_zero(self):
        value = weighted_inner_product(
            script_p_dense(3), script_p_dense(4), "modified-weight"
        )
        assert abs(value) < 1e-12

    def test_norm_of_level_three(self):
        value = weighted_inner_product(
            script_p_dense(3), script_p_dense(3), "modified-weight"
        )
        assert value == pytest.approx(24 * SQRT_PI, rel=1e-12)

    def test_hermite_weight_norm(self):
        value = weighted_inner_product(hermite(2), hermite(2), "hermite-weight")
        assert value == pytest.approx(8 * SQRT_PI, rel=1e-13)

    def test_modified_norms_match_closed_form(self):
        for n in [0] + list(range(3, 21)):
            p = script_p_dense(n)
            value = weighted_inner_product(p, p, "modified-weight", tol=1e-10)
            exact = float(norm_squared(n))
            assert abs(value - exact) <= 1e-9 * exact, n

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            weighted_inner_product(hermite(1), hermite(1), "lebesgue")

    def test_unreachable_tolerance_raises_with_estimates(self):
        p = script_p_dense(20)
        with pytest.raises(QuadratureConvergenceError) as info:
            weighted_inner_product(p, p, "modified-weight", tol=1e-16)
        err = info.value
        exact = float(norm_squared(20))
        # the attached estimates are the last two ladder values
        assert err.previous == pytest.approx(exact, rel=1e-9)
        assert err.last == pytest.approx(exact, rel=1e-11)
        assert err.previous != err.last


class TestOrthogonalityMatrix:
    def test_small_family(self):
        result = orthogonality_matrix([0, 3, 4, 5], 1e-9)
        assert result.passed
        expected = [
            SQRT_PI / 2,
            24 * SQRT_PI,
            64 * SQRT_PI,
            320 * SQRT_PI,
        ]
        assert np.allclose(result.matrix.diagonal(), expected, rtol=1e-12)
        assert result.max_offdiagonal < 1e-12

    def test_single_index_is_trivially_orthogonal(self):
        result = orthogonality_matrix([3], 1e-300)
        assert result.passed
        assert result.matrix.shape == (1, 1)
        assert result.max_offdiagonal == 0.0

    def test_full_run_through_twelve(self):
        indices = [0] + list(range(3, 13))
        result = orthogonality_matrix(indices, 1e-9)
        assert result.passed
        assert np.allclose(
            result.matrix.diagonal(), result.expected_norms, rtol=1e-10
        )

    def test_missing_levels_rejected(self):
        with pytest.raises(NoPolynomialSolutionError):
            orthogonality_matrix([0, 2, 3], 1e-9)

    def test_symmetry(self):
        result = orthogonality_matrix([0, 3, 4], 1e-9)
        assert np.array_equal(result.matrix, result.matrix.T)
