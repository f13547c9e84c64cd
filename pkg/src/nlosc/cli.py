"""Command-line surface: polynomials, identity checks, spectra, figures.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification failure (a closed-form identity or orthogonality bound was
falsified), 2 usage error.  All commands are deterministic: identical
flags produce byte-identical output.

Exact rationals serialize as "numerator/denominator" strings in json and
latex-table output; csv output carries floats with 15 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import classical, hermite_family, quadrature, series, spectra
from .exact import poly_eval
from .series import NoPolynomialSolutionError

__all__ = ["main"]

#: Figure id -> (primary curve, comparison curve) column labels.
FIGURE_COLUMNS = {
    "1": ("nonlinear_potential", "harmonic_potential"),
    "2a": ("scriptP3", "scriptP4"),
    "2b": ("scriptP5", "scriptP6"),
    "3": ("psi0", "harmonic_phi0"),
    "4": ("psi3", "harmonic_phi1"),
    "5": ("psi4", "harmonic_phi2"),
}

IDENTITY_FAMILIES = ("derivative", "proposition", "rodrigues", "schrodinger")


def _fmt(value: float) -> str:
    return f"{value:.15g}"


def _combo_json(combo) -> dict[str, str]:
    return {str(d): str(c) for d, c in sorted(combo.terms.items())}


def _poly_json(poly) -> dict[str, str]:
    return {
        str(i): str(c)
        for i, c in enumerate(poly.coefficients)
        if c != 0
    }


def _print_err(message: str) -> None:
    print(message, file=sys.stderr)


# ---------------------------------------------------------------------------
# poly
# ---------------------------------------------------------------------------

def cmd_poly(args) -> int:
    try:
        p_n = series.polynomial_solution(args.n)
        combo = hermite_family.script_p(args.n)
    except NoPolynomialSolutionError as exc:
        _print_err(f"error: {exc}")
        return 2
    dense = combo.to_polynomial()
    decomposition = hermite_family.hermite_decompose(p_n)
    if args.n >= 3:
        scale = hermite_family.proportionality_constant(args.n)
    else:
        scale = Fraction(1)

    if args.format == "json":
        payload = {
            "n": args.n,
            "energy": str(hermite_family.energy_level(args.n)),
            "coefficients": _poly_json(p_n),
            "script_p": _poly_json(dense),
            "script_p_hermite": _combo_json(combo),
            "hermite": _combo_json(decomposition),
            "proportionality": str(scale),
            "norm_squared": {
                "sqrt_pi_coefficient": str(
                    hermite_family.norm_squared(args.n).sqrt_pi_coefficient
                )
            },
        }
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        print("component,degree,value")
        for label, poly in (("P", p_n), ("scriptP", dense)):
            for i, c in enumerate(poly.coefficients):
                if c != 0:
                    print(f"{label},{i},{_fmt(float(c))}")
        for d, c in sorted(decomposition.terms.items()):
            print(f"hermite,{d},{_fmt(float(c))}")
    else:  # latex-table
        degrees = sorted(
            {i for i, c in enumerate(p_n.coefficients) if c != 0}
            | {i for i, c in enumerate(dense.coefficients) if c != 0}
            | set(decomposition.terms)
        )
        print(r"\begin{tabular}{rrrr}")
        print(r"degree & $P$ & $\mathcal{P}$ & Hermite \\ \hline")
        for d in degrees:
            row = [
                str(d),
                str(p_n.coefficient(d)),
                str(dense.coefficient(d)),
                str(decomposition.terms.get(d, "")),
            ]
            print(" & ".join(row) + r" \\")
        print(r"\end{tabular}")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _run_identity(family: str, n: int):
    """Run one identity family at one level; returns (passed, witness)."""
    if family == "derivative":
        res = hermite_family.verify_derivative_identity(n)
        witness = (
            res.residual_factored
            if not res.residual_factored.is_zero
            else res.residual_bracket
        )
        return res.passed, witness
    if family == "proposition":
        res = hermite_family.verify_proposition(n)
        return res.passed, res.residual
    if family == "rodrigues":
        residual = (
            hermite_family.rodrigues_script_p(n)
            - hermite_family.script_p_dense(n)
        )
        return residual.is_zero, residual
    residual = hermite_family.schrodinger_residual(n)
    return residual.is_zero, residual


def cmd_verify(args) -> int:
    if args.max_n < 3:
        _print_err("error: --max-n must be at least 3")
        return 2
    checks = []
    failures = 0
    for n in range(3, args.max_n + 1):
        for family in IDENTITY_FAMILIES:
            passed, witness = _run_identity(family, n)
            record = {"n": n, "family": family, "passed": passed}
            if not passed:
                failures += 1
                record["witness"] = _poly_json(witness)
                _print_err(
                    f"FALSIFIED {family} at n={n}: residual {witness}"
                )
            checks.append(record)
    report = {
        "max_n": args.max_n,
        "total": len(checks),
        "passed": len(checks) - failures,
        "failed": failures,
        "checks": checks,
    }
    print(json.dumps(report, indent=2))
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def _build_spec(args) -> spectra.PotentialSpec:
    if args.potential == "nonlinear":
        if args.a2 <= 0:
            raise ValueError("--a2 must be positive")
        return spectra.PotentialSpec(
            kind="nonlinear", omega=args.omega, a=math.sqrt(args.a2)
        )
    if args.potential == "isotonic":
        return spectra.PotentialSpec(
            kind="isotonic", omega=args.omega, m=args.m
        )
    return spectra.PotentialSpec(kind="harmonic", omega=args.omega)


def _analytic_targets(spec: spectra.PotentialSpec, k: int):
    if spec.kind == "harmonic":
        return [(i + 0.5) * spec.omega for i in range(k)]
    if spec.kind == "isotonic":
        return [(1.5 + spec.m + 2 * i) * spec.omega for i in range(k)]
    solved_case = (
        abs(spec.omega - 1.0) < 1e-12 and abs(spec.a**2 - 0.5) < 1e-12
    )
    ground = 0.5 * spec.omega - (2.0 * spec.omega * spec.a) ** 2
    if solved_case:
        return [ground] + [(i + 2) - 1.5 for i in range(1, k)]
    return [ground] + [None] * (k - 1)


def cmd_spectrum(args) -> int:
    try:
        spec = _build_spec(args)
        L = args.half_width or spectra.default_half_width(spec)
        if args.raw:
            states = spectra.eigen_spectrum(spec, L, args.points, args.levels)
            energies = [s.energy for s in states]
        else:
            pair = spectra.richardson_pair(spec, L, args.points, args.levels)
            states = list(pair.fine_states)
            energies = list(pair.energies)
    except (ValueError, spectra.GridTooCoarseError) as exc:
        _print_err(f"error: {exc}")
        return 2

    if args.eigenvector is not None:
        if not 0 <= args.eigenvector < len(states):
            _print_err("error: --eigenvector index out of range")
            return 2
        state = states[args.eigenvector]
        xs, _ = spectra.grid_points(spec, L, state.points)
        print("x,psi")
        for x, v in zip(xs, state.eigenvector):
            print(f"{_fmt(x)},{_fmt(v)}")
        return 0

    targets = _analytic_targets(spec, args.levels)
    rows = []
    for i, (energy, state) in enumerate(zip(energies, states)):
        row = {"level": i, "energy": energy, "nodes": state.nodes}
        if targets[i] is not None:
            row["analytic_target"] = targets[i]
            row["abs_error"] = abs(energy - targets[i])
        rows.append(row)
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        print("level,energy,nodes,analytic_target,abs_error")
        for row in rows:
            target = row.get("analytic_target")
            err = row.get("abs_error")
            print(
                f"{row['level']},{_fmt(row['energy'])},{row['nodes']},"
                f"{_fmt(target) if target is not None else ''},"
                f"{_fmt(err) if err is not None else ''}"
            )
    return 0


# ---------------------------------------------------------------------------
# figure
# ---------------------------------------------------------------------------

def _figure_curves(figure_id: str, xs: np.ndarray):
    if figure_id == "1":
        nonlinear = spectra.PotentialSpec(
            kind="nonlinear", omega=1.0, a=math.sqrt(0.5)
        )
        harmonic = spectra.PotentialSpec(kind="harmonic", omega=1.0)
        return (
            spectra.potential_on_grid(nonlinear, xs),
            spectra.potential_on_grid(harmonic, xs),
        )
    if figure_id in ("2a", "2b"):
        lo, hi = (3, 4) if figure_id == "2a" else (5, 6)
        p_lo = hermite_family.script_p_dense(lo)
        p_hi = hermite_family.script_p_dense(hi)
        left = [float(poly_eval(p_lo, Fraction(x))) for x in xs]
        right = [float(poly_eval(p_hi, Fraction(x))) for x in xs]
        return np.array(left), np.array(right)
    level, harmonic_level = {"3": (0, 0), "4": (3, 1), "5": (4, 2)}[figure_id]
    left = [hermite_family.wavefunction(level, x) for x in xs]
    right = [hermite_family.harmonic_wavefunction(harmonic_level, x) for x in xs]
    return np.array(left), np.array(right)


def cmd_figure(args) -> int:
    if args.id not in FIGURE_COLUMNS:
        _print_err(
            f"error: unknown figure id {args.id!r}; "
            f"choose from {', '.join(FIGURE_COLUMNS)}"
        )
        return 2
    if args.samples < 2 or not args.xmin < args.xmax:
        _print_err("error: need xmin < xmax and at least 2 samples")
        return 2
    xs = np.linspace(args.xmin, args.xmax, args.samples)
    primary, comparison = _figure_curves(args.id, xs)
    left_label, right_label = FIGURE_COLUMNS[args.id]
    print(f"x,{left_label},{right_label}")
    for x, a, b in zip(xs, primary, comparison):
        print(f"{_fmt(x)},{_fmt(a)},{_fmt(b)}")
    return 0


# ---------------------------------------------------------------------------
# orthogonality
# ---------------------------------------------------------------------------

def cmd_orthogonality(args) -> int:
    if args.max_n < 3:
        _print_err("error: --max-n must be at least 3")
        return 2
    indices = [0] + list(range(3, args.max_n + 1))
    result = quadrature.orthogonality_matrix(indices, args.tol)
    print("n," + ",".join(str(i) for i in result.indices))
    for label, row in zip(result.indices, result.matrix):
        print(f"{label}," + ",".join(_fmt(v) for v in row))
    _print_err(
        f"max normalized off-diagonal: {result.max_offdiagonal:.3e}; "
        f"max norm error: {result.max_norm_error:.3e}"
    )
    if not result.passed:
        _print_err(f"orthogonality FAILED at tolerance {args.tol:g}")
        return 1
    return 0


# ---------------------------------------------------------------------------
# ground
# ---------------------------------------------------------------------------

def cmd_ground(args) -> int:
    try:
        result = spectra.general_a_ground(args.omega, args.a, N=args.points)
    except (ValueError, spectra.GridTooCoarseError) as exc:
        _print_err(f"error: {exc}")
        return 2
    payload = {
        "omega": result.omega,
        "a": result.a,
        "energy": result.energy,
        "nodes": result.nodes,
        "analytic_energy": result.analytic_energy,
        "abs_error": result.abs_error,
    }
    print(json.dumps(payload, indent=2))
    return 0


# ---------------------------------------------------------------------------
# classical
# ---------------------------------------------------------------------------

def cmd_classical(args) -> int:
    try:
        params = classical.TrajectoryParams(
            omega=args.omega, A=args.amplitude, g=args.g, phi=args.phi
        )
        t_max = args.tmax if args.tmax is not None else 10.0 * params.period
        trajectory = classical.ode_oracle(params, t_max, dt=args.dt)
    except (ValueError, classical.PoleApproachError) as exc:
        _print_err(f"error: {exc}")
        return 2
    print("t,x,v,energy")
    for t, x, v, e in zip(
        trajectory.t, trajectory.x, trajectory.v, trajectory.energy
    ):
        print(f"{_fmt(t)},{_fmt(x)},{_fmt(v)},{_fmt(e)}")
    try:
        period = classical.measure_period(trajectory)
        _print_err(
            f"measured period: {period:.12g} (pi/omega = {params.period:.12g})"
        )
    except ValueError as exc:
        _print_err(f"period not measured: {exc}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlosc",
        description=(
            "Exact and numerical toolkit for the solvable nonlinear "
            "oscillator between the harmonic and isotonic oscillators."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    poly = sub.add_parser(
        "poly", help="polynomial level: series, scaled family, Hermite split"
    )
    poly.add_argument("--n", type=int, required=True)
    poly.add_argument(
        "--format", choices=("json", "csv", "latex-table"), default="json"
    )
    poly.set_defaults(func=cmd_poly)

    verify = sub.add_parser(
        "verify", help="run the exact identity suite up to a level"
    )
    verify.add_argument("--max-n", type=int, default=12)
    verify.set_defaults(func=cmd_verify)

    spectrum = sub.add_parser(
        "spectrum", help="finite-difference bound-state energies"
    )
    spectrum.add_argument(
        "--potential",
        choices=("nonlinear", "harmonic", "isotonic"),
        default="nonlinear",
    )
    spectrum.add_argument("--omega", type=float, default=1.0)
    spectrum.add_argument(
        "--a2", type=float, default=0.5, help="a^2 for the nonlinear kind"
    )
    spectrum.add_argument(
        "--m", type=float, default=1.0, help="barrier index for isotonic"
    )
    spectrum.add_argument("--levels", type=int, default=4)
    spectrum.add_argument("--half-width", type=float, default=None)
    spectrum.add_argument("--points", type=int, default=4000)
    spectrum.add_argument(
        "--raw", action="store_true",
        help="single-grid energies without Richardson extrapolation",
    )
    spectrum.add_argument(
        "--eigenvector", type=int, default=None,
        help="emit CSV (x, psi) of this level instead of the energy table",
    )
    spectrum.add_argument("--format", choices=("json", "csv"), default="json")
    spectrum.set_defaults(func=cmd_spectrum)

    figure = sub.add_parser("figure", help="plot-ready CSV for figures 1-5")
    figure.add_argument("--id", required=True)
    figure.add_argument("--xmin", type=float, default=-4.0)
    figure.add_argument("--xmax", type=float, default=4.0)
    figure.add_argument("--samples", type=int, default=801)
    figure.set_defaults(func=cmd_figure)

    ortho = sub.add_parser(
        "orthogonality", help="Gram matrix under the modified weight"
    )
    ortho.add_argument("--max-n", type=int, default=12)
    ortho.add_argument("--tol", type=float, default=1e-9)
    ortho.set_defaults(func=cmd_orthogonality)

    ground = sub.add_parser(
        "ground", help="general-a ground level vs the closed formula"
    )
    ground.add_argument("--omega", type=float, default=1.0)
    ground.add_argument("--a", type=float, required=True)
    ground.add_argument("--points", type=int, default=4000)
    ground.set_defaults(func=cmd_ground)

    classical_cmd = sub.add_parser(
        "classical", help="classical isotonic trajectory and period"
    )
    classical_cmd.add_argument("--omega", type=float, default=1.0)
    classical_cmd.add_argument("--amplitude", type=float, default=2.0)
    classical_cmd.add_argument("--g", type=float, default=1.0)
    classical_cmd.add_argument("--phi", type=float, default=0.0)
    classical_cmd.add_argument("--tmax", type=float, default=None)
    classical_cmd.add_argument("--dt", type=float, default=None)
    classical_cmd.set_defaults(func=cmd_classical)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
