"""Gauss-Hermite quadrature and weighted inner products.

Rules integrate against the Gaussian weight exp(-x^2).  The modified
weight r(x) = exp(-x^2) / (1 + 2x^2)^2 of the oscillator family is handled
by folding the bounded rational factor into the integrand and doubling the
rule size until two successive estimates agree; the doubling gives an a
posteriori error certificate.

Nodes are the roots of H_n.  Each root is bracketed on a dyadic grid whose
endpoint signs are confirmed in *exact* integer arithmetic, then polished
in floating point with the numerically stable scaled-recurrence evaluation
(plain Hermite values overflow double precision near n ~ 300; the scaled
Hermite functions stay bounded).  This module is the independent numerical
cross-check of the exact-arithmetic norm results, so it deliberately
shares no code path with them beyond the Hermite coefficients themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import hermite
from .hermite_family import norm_squared, script_p_dense
from .series import NoPolynomialSolutionError

__all__ = [
    "QuadratureRule",
    "QuadratureConvergenceError",
    "OrthogonalityResult",
    "gauss_hermite_rule",
    "weighted_inner_product",
    "orthogonality_matrix",
    "MAX_RULE_SIZE",
]

#: Hard cap on the adaptive doubling; beyond this the outermost weights
#: underflow float64 anyway.
MAX_RULE_SIZE = 512

#: Dyadic bracketing grid denominator.  Step 1/64 is below half the
#: minimal root spacing pi/sqrt(2n+1) for every n up to well past the cap.
_GRID_DENOM = 64

_RULE_CACHE: dict[int, "QuadratureRule"] = {}
_SIGN_COEFF_CACHE: dict[int, list[int]] = {}


class QuadratureConvergenceError(RuntimeError):
    """Doubling hit the size cap without two estimates agreeing."""

    def __init__(self, message: str, previous: float, last: float):
        super().__init__(f"{message} (last two estimates: {previous!r}, {last!r})")
        self.previous = previous
        self.last = last


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable quadrature rule: strictly increasing nodes, weights > 0.

    At sizes near the cap the outermost mathematically positive weights
    can underflow to 0.0 in float64; their true magnitude is below 1e-400.
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str

    @property
    def size(self) -> int:
        return len(self.nodes)


def _scaled_sign_coefficients(n: int) -> list[int]:
    """Integer coefficients of H_n(x) * DENOM^n with x scaled by 1/DENOM.

    sign(H_n(j / DENOM)) equals the sign of the integer Horner evaluation
    of these coefficients at j, which is how brackets get certified.
    """
    if n not in _SIGN_COEFF_CACHE:
        coeffs = hermite(n).coefficients
        _SIGN_COEFF_CACHE[n] = [
            int(c) * _GRID_DENOM ** (n - i) for i, c in enumerate(coeffs)
        ]
    return _SIGN_COEFF_CACHE[n]


def _exact_hermite_sign(n: int, j: int) -> int:
    """Exact sign of H_n at the dyadic point j / DENOM."""
    acc = 0
    for c in reversed(_scaled_sign_coefficients(n)):
        acc = acc * j + c
    return (acc > 0) - (acc < 0)


def _scaled_hermite_pair(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal Hermite-function values (phi_n, phi_{n-1}) at ``x``.

    phi_k(x) = H_k(x) exp(-x^2/2) / sqrt(2^k k! sqrt(pi)); the three-term
    recurrence in this scaling is bounded and overflow-free.
    """
    prev = np.pi ** (-0.25) * np.exp(-0.5 * x * x)
    if n == 0:
        return prev, np.zeros_like(prev)
    cur = math.sqrt(2.0) * x * prev
    for k in range(1, n):
        cur, prev = (
            x * math.sqrt(2.0 / (k + 1)) * cur
            - math.sqrt(k / (k + 1.0)) * prev,
            cur,
        )
    return cur, prev


def _certified_brackets(n: int) -> tuple[list[tuple[int, int]], list[float]]:
    """Dyadic brackets around every positive root of H_n.

    A float sign scan proposes the cells; exact integer evaluation at the
    cell endpoints certifies each sign change.  Returns the certified
    (j_lo, j_hi) cells plus any grid points that happen to be exact roots.
    """
    expected = n // 2
    if expected == 0:
        return [], []
    j_max = int(math.ceil(_GRID_DENOM * (math.sqrt(2.0 * n + 1.0) + 0.5)))
    grid = np.arange(j_max + 1, dtype=np.float64) / _GRID_DENOM
    values, _ = _scaled_hermite_pair(n, grid)
    signs = np.sign(values)
    if n % 2 == 1:
        signs[0] = 0.0  # x = 0 is a root, handled separately
    flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if len(flips) != expected:
        raise AssertionError(
            f"sign scan found {len(flips)} brackets for H_{n}, "
            f"expected {expected}"
        )
    brackets: list[tuple[int, int]] = []
    exact_roots: list[float] = []
    for j in flips:
        s_lo = _exact_hermite_sign(n, int(j))
        s_hi = _exact_hermite_sign(n, int(j) + 1)
        if s_lo == 0:
            exact_roots.append(j / _GRID_DENOM)
        elif s_hi == 0:
            exact_roots.append((j + 1) / _GRID_DENOM)
        elif s_lo * s_hi < 0:
            brackets.append((int(j), int(j) + 1))
        else:
            raise AssertionError(
                f"float scan proposed a bracket for H_{n} that exact "
                f"arithmetic rejects at cell {j}"
            )
    return brackets, exact_roots


def _positive_roots(n: int) -> np.ndarray:
    brackets, roots = _certified_brackets(n)
    if brackets:
        lo = np.array([b[0] / _GRID_DENOM for b in brackets])
        hi = np.array([b[1] / _GRID_DENOM for b in brackets])
        sign_lo = np.array(
            [float(_exact_hermite_sign(n, b[0])) for b in brackets]
        )
        for _ in range(62):
            mid = 0.5 * (lo + hi)
            val, _ = _scaled_hermite_pair(n, mid)
            same = np.sign(val) == sign_lo
            lo = np.where(same, mid, lo)
            hi = np.where(same, hi, mid)
        x = 0.5 * (lo + hi)
        # Newton polish: phi_n' = -x phi_n + sqrt(2n) phi_{n-1}
        for _ in range(2):
            phi, phi_prev = _scaled_hermite_pair(n, x)
            slope = -x * phi + math.sqrt(2.0 * n) * phi_prev
            safe = np.where(slope == 0.0, 1.0, slope)
            x = np.clip(x - phi / safe, lo, hi)
        roots = sorted(roots + list(x))
    return np.asarray(roots, dtype=np.float64)


def gauss_hermite_rule(n: int) -> QuadratureRule:
    """Gauss-Hermite rule of size n for the weight exp(-x^2).

    Exact (to working precision) on polynomials of degree <= 2n - 1.
    Rules are cached; construction is deterministic.
    """
    if n < 1:
        raise ValueError("rule size must be at least 1")
    if n in _RULE_CACHE:
        return _RULE_CACHE[n]
    positive = _positive_roots(n)
    if n % 2 == 1:
        nodes = np.concatenate([-positive[::-1], [0.0], positive])
    else:
        nodes = np.concatenate([-positive[::-1], positive])
    _, phi_prev = _scaled_hermite_pair(n, nodes)
    weights = np.exp(-nodes * nodes) / (n * phi_prev * phi_prev)
    if not np.all(np.diff(nodes) > 0):
        raise AssertionError("nodes are not strictly increasing")
    if np.any(weights < 0) or not np.any(weights > 0):
        raise AssertionError("weights are not positive")
    rule = QuadratureRule(nodes=nodes, weights=weights, kind="gauss-hermite")
    _RULE_CACHE[n] = rule
    return rule


def _polyval(coeffs: tuple[float, ...], x: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _integrate(f_coeffs, g_coeffs, size: int, modified: bool):
    # f and g are evaluated separately and multiplied pointwise: Horner on
    # the expanded product f*g loses digits to coefficient cancellation at
    # the outer nodes.  The second return value is the L1 magnitude of the
    # weighted integrand, the natural scale for convergence tests (an
    # orthogonal pair integrates to zero while its integrand does not).
    rule = gauss_hermite_rule(size)
    values = _polyval(f_coeffs, rule.nodes) * _polyval(g_coeffs, rule.nodes)
    if modified:
        u = 1.0 + 2.0 * rule.nodes * rule.nodes
        values = values / (u * u)
    weighted = rule.weights * values
    return float(np.sum(weighted)), float(np.sum(np.abs(weighted)))


def weighted_inner_product(f, g, mode: str, tol: float = 1e-10) -> float:
    """Inner product of two polynomials under the chosen weight.

    ``hermite-weight`` integrates f g exp(-x^2) with a single rule large
    enough to be exact.  ``modified-weight`` divides the integrand by
    (1 + 2x^2)^2 and doubles the rule size until two successive estimates
    agree within ``tol`` relative to the integrand's L1 magnitude (so an
    orthogonal pair, whose integral is zero at a nonzero scale, converges
    honestly), capped at MAX_RULE_SIZE.
    """
    if mode not in ("hermite-weight", "modified-weight"):
        raise ValueError(f"unknown weight mode {mode!r}")
    fc = f.float_coefficients()
    gc = g.float_coefficients()
    degree = max(f.degree, 0) + max(g.degree, 0)
    if mode == "hermite-weight":
        return _integrate(fc, gc, degree // 2 + 2, modified=False)[0]
    size = max(8, degree // 2 + 2)
    size = 1 << (size - 1).bit_length()  # next power of two, cache-friendly
    if size >= MAX_RULE_SIZE:
        raise ValueError(
            f"degree {degree} integrand leaves no room for doubling "
            f"below the size cap {MAX_RULE_SIZE}"
        )
    previous, _ = _integrate(fc, gc, size, modified=True)
    current = previous
    while size < MAX_RULE_SIZE:
        size *= 2
        current, magnitude = _integrate(fc, gc, size, modified=True)
        gap = abs(current - previous)
        if gap <= tol * max(abs(current), abs(previous), magnitude):
            return current
        if size < MAX_RULE_SIZE:
            previous = current
    raise QuadratureConvergenceError(
        f"modified-weight quadrature did not converge to {tol:g} "
        f"by size {MAX_RULE_SIZE}",
        previous,
        current,
    )


@dataclass(frozen=True)
class OrthogonalityResult:
    """Gram matrix of the family under the modified weight, with verdict."""

    indices: tuple[int, ...]
    matrix: np.ndarray
    expected_norms: np.ndarray
    passed: bool
    max_offdiagonal: float
    max_norm_error: float


def orthogonality_matrix(indices, tol: float) -> OrthogonalityResult:
    """Pairwise modified-weight inner products of the scaled family.

    Off-diagonal entries are flagged against tol * sqrt(G_ii G_jj); the
    diagonal is compared to the exact closed-form norms at tol, floored
    by the quadrature's own achievable precision.
    """
    order = [int(i) for i in indices]
    for i in order:
        if i in (1, 2) or i < 0:
            raise NoPolynomialSolutionError(
                f"index {i} is not a valid level; valid levels are 0 and n >= 3"
            )
    polys = {i: script_p_dense(i) for i in order}
    # the quadrature itself runs at its achievable float64 precision; the
    # caller's tol governs the flags below
    quad_tol = min(max(tol, 1e-11), 1e-10)
    size = len(order)
    gram = np.zeros((size, size))
    for row in range(size):
        for col in range(row, size):
            value = weighted_inner_product(
                polys[order[row]], polys[order[col]],
                "modified-weight", tol=quad_tol,
            )
            gram[row, col] = value
            gram[col, row] = value
    expected = np.array([float(norm_squared(i)) for i in order])
    diag = np.diag(gram)
    scale = np.sqrt(np.outer(diag, diag))
    off = np.abs(gram / scale)
    np.fill_diagonal(off, 0.0)
    max_off = float(off.max()) if size > 1 else 0.0
    max_norm_err = float(np.max(np.abs(diag - expected) / expected))
    # norms cannot be certified below the quadrature's own precision
    norm_tol = max(tol, quad_tol)
    return OrthogonalityResult(
        indices=tuple(order),
        matrix=gram,
        expected_norms=expected,
        passed=(max_off <= tol) and (max_norm_err <= norm_tol),
        max_offdiagonal=max_off,
        max_norm_error=max_norm_err,
    )
