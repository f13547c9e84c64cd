"""Verification toolkit for a solvable nonlinear oscillator.

The potential omega^2 x^2 / 2 + g_a (x^2 - a^2) / (x^2 + a^2)^2 with
g_a = 2 omega a^2 (1 + 2 omega a^2) sits between the harmonic and isotonic
oscillators and is exactly solvable at a^2 = 1/2.  This package builds the
polynomial eigensolutions and the associated orthogonal family in exact
rational arithmetic, proves the family's closed-form identities
symbolically, and confirms the spectra and orthogonality numerically with
quadrature and an independent finite-difference eigensolver.
"""

from .exact import Polynomial, Rational, hermite, poly_diff, poly_eval, real_root_count
from .series import (
    NoPolynomialSolutionError,
    SeriesSolution,
    f_equation_residual,
    is_polynomial_mode,
    polynomial_solution,
    series_coefficients,
)
from .hermite_family import (
    HermiteCombo,
    NormValue,
    energy_level,
    harmonic_wavefunction,
    hermite_decompose,
    norm_squared,
    proportionality_constant,
    rodrigues_script_p,
    schrodinger_residual,
    script_p,
    script_p_dense,
    verify_derivative_identity,
    verify_proposition,
    wavefunction,
)
from .quadrature import (
    QuadratureConvergenceError,
    QuadratureRule,
    gauss_hermite_rule,
    orthogonality_matrix,
    weighted_inner_product,
)
from .spectra import (
    EigenResult,
    GridTooCoarseError,
    PotentialSpec,
    eigen_spectrum,
    general_a_ground,
    potential_value,
    richardson_pair,
    spectral_gap_scan,
)
from .classical import (
    Trajectory,
    TrajectoryParams,
    closed_form_x,
    closed_form_velocity,
    measure_period,
    ode_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "Polynomial",
    "Rational",
    "hermite",
    "poly_diff",
    "poly_eval",
    "real_root_count",
    "NoPolynomialSolutionError",
    "SeriesSolution",
    "f_equation_residual",
    "is_polynomial_mode",
    "polynomial_solution",
    "series_coefficients",
    "HermiteCombo",
    "NormValue",
    "energy_level",
    "harmonic_wavefunction",
    "hermite_decompose",
    "norm_squared",
    "proportionality_constant",
    "rodrigues_script_p",
    "schrodinger_residual",
    "script_p",
    "script_p_dense",
    "verify_derivative_identity",
    "verify_proposition",
    "wavefunction",
    "QuadratureConvergenceError",
    "QuadratureRule",
    "gauss_hermite_rule",
    "orthogonality_matrix",
    "weighted_inner_product",
    "EigenResult",
    "GridTooCoarseError",
    "PotentialSpec",
    "eigen_spectrum",
    "general_a_ground",
    "potential_value",
    "richardson_pair",
    "spectral_gap_scan",
    "Trajectory",
    "TrajectoryParams",
    "closed_form_x",
    "closed_form_velocity",
    "measure_period",
    "ode_oracle",
    "__version__",
]
