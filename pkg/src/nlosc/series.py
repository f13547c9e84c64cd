"""Power-series solutions of the shifted-energy oscillator equation.

The bound-state factor F of the a**2 = 1/2 oscillator satisfies

    (1 + 2x**2) F'' - 2x (5 + 2x**2) F' + 2e (1 + 2x**2) F = 0,

where the energy enters as E = -3/2 + e.  Substituting a power series
F = sum p_m x^m splits the problem by parity and yields the seed relations

    p2 + e p0 = 0,        3 p3 + (e - 5) p1 = 0,

followed by the three-term recursion

    (m+4)(m+3) p_{m+4} + 2[(m+2)(m-4) + e] p_{m+2} + 4(e - m) p_m = 0.

For integer e = n (n = 0 or n >= 3) the same-parity series terminates and
the truncated series is the degree-n polynomial solution P_n, normalized
to p0 = 1 (even) or p1 = 1 (odd).  No termination occurs at e = 1 or
e = 2: those two levels are missing from the point spectrum.

Everything here is exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import Polynomial, Scalar

__all__ = [
    "SeriesSolution",
    "NoPolynomialSolutionError",
    "series_coefficients",
    "is_polynomial_mode",
    "polynomial_solution",
    "f_equation_residual",
    "PARITIES",
]

PARITIES = ("even", "odd")

#: Radius of convergence of the non-terminating series, 1/sqrt(2); recorded
#: for reference, the package never sums a non-terminating series.
CONVERGENCE_RADIUS_SQUARED = Fraction(1, 2)


class NoPolynomialSolutionError(ValueError):
    """Raised for the missing levels n = 1, 2 where no series terminates."""


@dataclass(frozen=True)
class SeriesSolution:
    """Exact series coefficients for one parity sector at one energy shift.

    ``terminated_at`` is the polynomial degree when termination is provable
    from the computed window (all coefficients beyond it vanish), else None.
    """

    e: Fraction
    parity: str
    coefficients: tuple[Fraction, ...]
    terminated_at: Optional[int]

    def coefficient(self, index: int) -> Fraction:
        if 0 <= index < len(self.coefficients):
            return self.coefficients[index]
        if self.terminated_at is not None:
            return Fraction(0)
        raise IndexError(f"coefficient {index} was not computed")


def _check_parity(parity: str) -> None:
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}, got {parity!r}")


def series_coefficients(e: Scalar, parity: str, count: int) -> SeriesSolution:
    """Run the seed relations and three-term recursion up to index ``count``.

    Normalization is p0 = 1 for the even sector, p1 = 1 for the odd one;
    all opposite-parity coefficients are identically zero.
    """
    _check_parity(parity)
    if count < 4:
        raise ValueError("count must be at least 4")
    e = Fraction(e)
    p = [Fraction(0)] * (count + 1)
    if parity == "even":
        start = 0
        p[0] = Fraction(1)
        p[2] = -e
    else:
        start = 1
        p[1] = Fraction(1)
        p[3] = -(e - 5) / 3
    for m in range(start, count - 3, 2):
        p[m + 4] = -(
            2 * ((m + 2) * (m - 4) + e) * p[m + 2] + 4 * (e - m) * p[m]
        ) / ((m + 4) * (m + 3))
    return SeriesSolution(
        e=e,
        parity=parity,
        coefficients=tuple(p),
        terminated_at=_detect_termination(p, start),
    )


def _detect_termination(p: list[Fraction], start: int) -> Optional[int]:
    """Degree at which the series provably terminates, if visible.

    Two consecutive same-parity zeros force every later coefficient to
    vanish, because the recursion writes p_{m+4} as a combination of
    p_{m+2} and p_m.  The test is therefore rigorous, not heuristic.
    """
    indices = range(start, len(p), 2)
    for m in indices:
        if m + 2 < len(p) and p[m] == 0 and p[m + 2] == 0:
            nonzero = [i for i in indices if i < m and p[i] != 0]
            return max(nonzero) if nonzero else start
    return None


def is_polynomial_mode(e: Scalar, parity: str, horizon: int) -> Optional[int]:
    """Termination degree of the series, or None within the horizon.

    The series is computed past the horizon so that termination exactly at
    the horizon is still detected.
    """
    if horizon < 12:
        raise ValueError("horizon must be at least 12")
    solution = series_coefficients(e, parity, horizon + 4)
    if solution.terminated_at is not None and solution.terminated_at <= horizon:
        return solution.terminated_at
    return None


def polynomial_solution(n: int) -> Polynomial:
    """The degree-n polynomial solution P_n, for n = 0 or n >= 3.

    Runs the recursion at e = n with the parity of n and returns the
    terminated series.  Levels n = 1 and n = 2 have no terminating series
    and are rejected.
    """
    if n != int(n) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    n = int(n)
    if n in (1, 2):
        raise NoPolynomialSolutionError(
            f"no polynomial solution exists for n={n}; "
            "the series never terminates at e=1 or e=2"
        )
    if n == 0:
        return Polynomial([1])
    parity = "even" if n % 2 == 0 else "odd"
    solution = series_coefficients(n, parity, 2 * n + 16)
    if solution.terminated_at != n:
        raise AssertionError(
            f"series at e={n} terminated at {solution.terminated_at}, "
            f"expected {n}"
        )
    return Polynomial(solution.coefficients[: n + 1])


def f_equation_residual(p: Polynomial, e: Scalar) -> Polynomial:
    """Exact residual (1+2x^2) p'' - 2x (5+2x^2) p' + 2e (1+2x^2) p.

    The zero polynomial certifies that ``p`` solves the equation at shift
    ``e``.
    """
    one_plus = Polynomial([1, 0, 2])
    damping = Polynomial([0, 10, 0, 4])  # 2x (5 + 2x^2)
    e = Fraction(e)
    return (
        one_plus * p.derivative().derivative()
        - damping * p.derivative()
        + (2 * e) * one_plus * p
    )
