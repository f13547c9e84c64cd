"""Exact rational scalars and dense polynomial algebra.

The scalar type is ``fractions.Fraction`` (re-exported as ``Rational``):
arbitrary precision, automatically reduced to lowest terms with a positive
denominator.  Polynomials store dense coefficient tuples over that scalar,
so every identity check built on top of this module is exact, not a
floating-point approximation.  Hermite polynomials and Sturm-sequence root
counting live here because the rest of the package leans on them.

All values are immutable after construction and safe to share freely
between threads.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "Polynomial",
    "X",
    "hermite",
    "poly_diff",
    "poly_eval",
    "real_root_count",
]


class Polynomial:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficients are indexed by power, lowest first.  The leading stored
    coefficient is nonzero; the zero polynomial stores nothing and reports
    degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Scalar] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def monomial(cls, power: int, coefficient: Scalar = 1) -> "Polynomial":
        """Return ``coefficient * x**power``."""
        if power < 0:
            raise ValueError("power must be nonnegative")
        return cls([0] * power + [coefficient])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial, or -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of ``x**power`` (zero where nothing is stored)."""
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return Fraction(0)

    def derivative(self) -> "Polynomial":
        return Polynomial(
            (i * c for i, c in enumerate(self._coeffs) if i > 0)
        )

    def __call__(self, x: Scalar) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        acc = Fraction(0)
        x = Fraction(x)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def float_coefficients(self) -> tuple[float, ...]:
        """Coefficients converted to float, for numerical consumers."""
        return tuple(float(c) for c in self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial((-c for c in self._coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial()
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
            return Polynomial(out)
        if isinstance(other, (int, Fraction)):
            return Polynomial((c * other for c in self._coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        out = Polynomial([1])
        for _ in range(exponent):
            out = out * self
        return out

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                var = "x" if i == 1 else f"x^{i}"
                term = f"{mag}{var}"
                if c < 0:
                    term = "-" + term
            if not parts:
                parts.append(term)
            elif term.startswith("-"):
                parts.append(f"- {term[1:]}")
            else:
                parts.append(f"+ {term}")
        return " ".join(parts)


#: The monomial x, convenient for building expressions in closed form.
X = Polynomial([0, 1])

_HERMITE_CACHE: list[Polynomial] = [Polynomial([1]), Polynomial([0, 2])]
_HERMITE_LOCK = threading.Lock()


def hermite(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n, leading coefficient 2**n.

    Generated by the recurrence H_{m+1} = 2x H_m - 2m H_{m-1} and
    memoized; repeated calls return the identical immutable object.
    Cache growth is locked so concurrent callers cannot interleave
    appends out of degree order.
    """
    if n < 0:
        raise ValueError("Hermite index must be nonnegative")
    if len(_HERMITE_CACHE) <= n:
        with _HERMITE_LOCK:
            while len(_HERMITE_CACHE) <= n:
                m = len(_HERMITE_CACHE) - 1
                nxt = (
                    2 * X * _HERMITE_CACHE[m]
                    - (2 * m) * _HERMITE_CACHE[m - 1]
                )
                _HERMITE_CACHE.append(nxt)
    return _HERMITE_CACHE[n]


def poly_diff(p: Polynomial) -> Polynomial:
    """Exact term-by-term derivative."""
    return p.derivative()


def poly_eval(p: Polynomial, x: Scalar) -> Fraction:
    """Exact Horner evaluation of ``p`` at the rational point ``x``."""
    return p(x)


def _poly_remainder(a: Polynomial, b: Polynomial) -> Polynomial:
    """Remainder of the exact Euclidean division a = q*b + r."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coefficients)
    db, lead = b.degree, b.leading_coefficient
    while len(rem) - 1 >= db and rem:
        # strip any exact zero that floated to the top
        if rem[-1] == 0:
            rem.pop()
            continue
        factor = rem[-1] / lead
        shift = len(rem) - 1 - db
        for i, c in enumerate(b.coefficients):
            rem[shift + i] -= factor * c
        rem.pop()
    return Polynomial(rem)


def _sign_variations(signs: list[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(
        1 for prev, cur in zip(nonzero, nonzero[1:]) if prev * cur < 0
    )


def real_root_count(p: Polynomial) -> int:
    """Number of distinct real roots of ``p``, via a Sturm sequence.

    The chain is computed entirely over exact rationals, so the count is
    an exact integer fact, not a numerical estimate.  Multiple roots are
    counted once.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no well-defined root count")
    if p.degree == 0:
        return 0
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        rem = _poly_remainder(chain[-2], chain[-1])
        if rem.is_zero:
            break
        chain.append(-rem)

    def sign(c: Fraction) -> int:
        return (c > 0) - (c < 0)

    at_plus = [sign(q.leading_coefficient) for q in chain]
    at_minus = [
        sign(q.leading_coefficient) * (-1 if q.degree % 2 else 1)
        for q in chain
    ]
    return _sign_variations(at_minus) - _sign_variations(at_plus)
