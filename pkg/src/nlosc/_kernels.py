"""Hot numeric inner loops, compiled with numba when available.

Backend selection is driven by the ``NLOSC_BACKEND`` environment variable:

* ``auto`` (default): compile the loop kernels with numba, fall back to
  the pure-NumPy implementations if numba is not importable.
* ``numba``: require numba, raise if missing.
* ``numpy``: skip numba entirely and use the NumPy fallbacks.

The two paths are algorithmically identical and are compared against each
other in the test suite and in ``benchmarks/bench_kernels.py``.  Exact
rational computation elsewhere in the package is untouched by any of
this; only the finite-difference eigensolver and the classical integrator
run hot enough to matter.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "BACKEND",
    "sturm_counts",
    "tridiag_solve",
    "rk4_radial",
]

_ENV_VAR = "NLOSC_BACKEND"
_TINY = np.finfo(np.float64).tiny


def _select_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise RuntimeError(
            f"{_ENV_VAR} must be 'auto', 'numba' or 'numpy', got {choice!r}"
        )
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise RuntimeError(
                f"{_ENV_VAR}=numba requested but numba is not installed"
            ) from None
        return "numpy"
    return "numba"


BACKEND = _select_backend()


# ---------------------------------------------------------------------------
# Loop implementations (numba-compilable; also runnable as plain Python).
# ---------------------------------------------------------------------------

def _sturm_counts_loops(diag, off2, shifts, pivmin, out):
    """Eigenvalue counts below each shift for a symmetric tridiagonal matrix.

    Classic LDL^T inertia sweep: q_1 = d_1 - s, q_j = d_j - s - e_{j-1}^2/q_{j-1};
    the count is the number of negative q_j.  ``pivmin`` guards division by
    a vanishing pivot (a zero pivot counts as negative, so an eigenvalue
    exactly at the shift lands below it, deterministically).
    """
    n = diag.shape[0]
    for i in range(shifts.shape[0]):
        sigma = shifts[i]
        count = 0
        q = diag[0] - sigma
        if q == 0.0:
            q = -pivmin
        if q < 0.0:
            count += 1
        for j in range(1, n):
            q = diag[j] - sigma - off2[j - 1] / q
            if q == 0.0:
                q = -pivmin
            if q < 0.0:
                count += 1
        out[i] = count
    return out


def _tridiag_solve_loops(lower, diag, upper, rhs, pivmin, x):
    """Solve a tridiagonal system with partial pivoting (two superdiagonals).

    ``lower[j]`` couples row j to column j-1 (lower[0] unused).  Row swaps
    keep the elimination stable even when the matrix is nearly singular,
    which is exactly the regime inverse iteration operates in.
    """
    n = diag.shape[0]
    d = diag.copy()
    u1 = np.zeros(n)
    u1[: n - 1] = upper[: n - 1]
    u2 = np.zeros(n)
    low = lower.copy()
    y = rhs.copy()
    for j in range(n - 1):
        if abs(d[j]) >= abs(low[j + 1]):
            if d[j] == 0.0:
                d[j] = pivmin
            factor = low[j + 1] / d[j]
            d[j + 1] -= factor * u1[j]
            y[j + 1] -= factor * y[j]
        else:
            factor = d[j] / low[j + 1]
            # swap rows j and j+1, then eliminate
            d[j] = low[j + 1]
            tmp_diag = d[j + 1]
            tmp_upper = u1[j + 1]
            d[j + 1] = u1[j] - factor * tmp_diag
            u1[j] = tmp_diag
            u1[j + 1] = -factor * tmp_upper
            u2[j] = tmp_upper
            tmp_rhs = y[j]
            y[j] = y[j + 1]
            y[j + 1] = tmp_rhs - factor * y[j]
    if d[n - 1] == 0.0:
        d[n - 1] = pivmin
    x[n - 1] = y[n - 1] / d[n - 1]
    if n > 1:
        x[n - 2] = (y[n - 2] - u1[n - 2] * x[n - 1]) / d[n - 2]
    for j in range(n - 3, -1, -1):
        x[j] = (y[j] - u1[j] * x[j + 1] - u2[j] * x[j + 2]) / d[j]
    return x


def _rk4_radial_loops(x0, v0, omega2, g, dt, nsteps, xs, vs):
    """Fixed-step RK4 for x'' = -omega^2 x + g / x^3.

    Returns 0 on success, 1 if the trajectory approached the centrifugal
    pole at x = 0 (impossible for valid parameters; flags a bug upstream).
    """
    guard = 1e-12
    x = x0
    v = v0
    xs[0] = x
    vs[0] = v
    for i in range(nsteps):
        if x <= guard:
            return 1
        k1x = v
        k1v = -omega2 * x + g / (x * x * x)
        x2 = x + 0.5 * dt * k1x
        v2 = v + 0.5 * dt * k1v
        if x2 <= guard:
            return 1
        k2x = v2
        k2v = -omega2 * x2 + g / (x2 * x2 * x2)
        x3 = x + 0.5 * dt * k2x
        v3 = v + 0.5 * dt * k2v
        if x3 <= guard:
            return 1
        k3x = v3
        k3v = -omega2 * x3 + g / (x3 * x3 * x3)
        x4 = x + dt * k3x
        v4 = v + dt * k3v
        if x4 <= guard:
            return 1
        k4x = v4
        k4v = -omega2 * x4 + g / (x4 * x4 * x4)
        x = x + dt * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
        v = v + dt * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        xs[i + 1] = x
        vs[i + 1] = v
    return 0


# ---------------------------------------------------------------------------
# Pure-NumPy fallbacks.
# ---------------------------------------------------------------------------

def sturm_counts_numpy(diag, off2, shifts):
    """NumPy fallback: the inertia sweep vectorized across shifts."""
    diag = np.asarray(diag, dtype=np.float64)
    off2 = np.asarray(off2, dtype=np.float64)
    shifts = np.asarray(shifts, dtype=np.float64)
    pivmin = _pivmin(off2)
    q = diag[0] - shifts
    q = np.where(q == 0.0, -pivmin, q)
    counts = (q < 0.0).astype(np.int64)
    for j in range(1, diag.shape[0]):
        q = diag[j] - shifts - off2[j - 1] / q
        q = np.where(q == 0.0, -pivmin, q)
        counts += q < 0.0
    return counts


def tridiag_solve_numpy(lower, diag, upper, rhs):
    """NumPy fallback: the pivoted elimination run as a Python loop.

    The recurrence is inherently sequential in the row index, so the
    fallback cannot vectorize it; it exists for correctness, not speed.
    """
    x = np.empty_like(np.asarray(rhs, dtype=np.float64))
    return _tridiag_solve_loops(
        np.asarray(lower, dtype=np.float64),
        np.asarray(diag, dtype=np.float64),
        np.asarray(upper, dtype=np.float64),
        np.asarray(rhs, dtype=np.float64),
        _TINY,
        x,
    )


def rk4_radial_numpy(x0, v0, omega2, g, dt, nsteps):
    """NumPy fallback: the RK4 stepper run as a Python loop."""
    xs = np.empty(nsteps + 1)
    vs = np.empty(nsteps + 1)
    status = _rk4_radial_loops(
        float(x0), float(v0), float(omega2), float(g), float(dt),
        int(nsteps), xs, vs,
    )
    return xs, vs, status


def _pivmin(off2) -> float:
    return _TINY * max(1.0, float(np.max(off2)) if len(off2) else 1.0)


# ---------------------------------------------------------------------------
# Numba-compiled variants and dispatch.
# ---------------------------------------------------------------------------

if BACKEND == "numba":
    from numba import njit

    _sturm_counts_jit = njit(cache=True)(_sturm_counts_loops)
    _tridiag_solve_jit = njit(cache=True)(_tridiag_solve_loops)
    _rk4_radial_jit = njit(cache=True)(_rk4_radial_loops)

    def sturm_counts_numba(diag, off2, shifts):
        diag = np.ascontiguousarray(diag, dtype=np.float64)
        off2 = np.ascontiguousarray(off2, dtype=np.float64)
        shifts = np.ascontiguousarray(shifts, dtype=np.float64)
        out = np.empty(shifts.shape[0], dtype=np.int64)
        return _sturm_counts_jit(diag, off2, shifts, _pivmin(off2), out)

    def tridiag_solve_numba(lower, diag, upper, rhs):
        diag = np.ascontiguousarray(diag, dtype=np.float64)
        x = np.empty(diag.shape[0])
        return _tridiag_solve_jit(
            np.ascontiguousarray(lower, dtype=np.float64),
            diag,
            np.ascontiguousarray(upper, dtype=np.float64),
            np.ascontiguousarray(rhs, dtype=np.float64),
            _TINY,
            x,
        )

    def rk4_radial_numba(x0, v0, omega2, g, dt, nsteps):
        xs = np.empty(nsteps + 1)
        vs = np.empty(nsteps + 1)
        status = _rk4_radial_jit(
            float(x0), float(v0), float(omega2), float(g), float(dt),
            int(nsteps), xs, vs,
        )
        return xs, vs, status

    sturm_counts = sturm_counts_numba
    tridiag_solve = tridiag_solve_numba
    rk4_radial = rk4_radial_numba
else:
    sturm_counts = sturm_counts_numpy
    tridiag_solve = tridiag_solve_numpy
    rk4_radial = rk4_radial_numpy
