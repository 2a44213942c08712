"""Cyclic Jacobi eigensolver for complex Hermitian matrices.

The sweep kernel exists twice: a numba @njit version (default) and a pure
numpy version.  Set ``CARFOCK_DISABLE_NUMBA=1`` to force the numpy path;
``bench/bench_eig.py`` compares the two.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, HermiticityError, SizeError

OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 100
MAX_DIM = 4096

_DISABLE_NUMBA = os.environ.get("CARFOCK_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")


def _jacobi_sweep_numpy(a: np.ndarray) -> None:
    """One cyclic sweep of two-sided Jacobi rotations, in place."""
    n = a.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            alpha = abs(apq)
            if alpha < 1e-300:
                continue
            u = apq / alpha
            tau = (a[q, q].real - a[p, p].real) / (2.0 * alpha)
            if tau >= 0.0:
                t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
            else:
                t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = t * c
            app = a[p, p].real
            aqq = a[q, q].real
            col_p = a[:, p].copy()
            col_q = a[:, q].copy()
            a[:, p] = c * col_p - s * np.conj(u) * col_q
            a[:, q] = s * u * col_p + c * col_q
            a[p, :] = np.conj(a[:, p])
            a[q, :] = np.conj(a[:, q])
            a[p, p] = c * c * app - 2.0 * c * s * alpha + s * s * aqq
            a[q, q] = s * s * app + 2.0 * c * s * alpha + c * c * aqq
            a[p, q] = 0.0
            a[q, p] = 0.0


if not _DISABLE_NUMBA:
    try:
        import numba

        @numba.njit(cache=True)
        def _jacobi_sweep_jit(a):  # pragma: no cover - exercised via eig_hermitian
            n = a.shape[0]
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    alpha = abs(apq)
                    if alpha < 1e-300:
                        continue
                    u = apq / alpha
                    tau = (a[q, q].real - a[p, p].real) / (2.0 * alpha)
                    if tau >= 0.0:
                        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = t * c
                    app = a[p, p].real
                    aqq = a[q, q].real
                    for i in range(n):
                        if i == p or i == q:
                            continue
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = c * aip - s * np.conj(u) * aiq
                        a[i, q] = s * u * aip + c * aiq
                        a[p, i] = np.conj(a[i, p])
                        a[q, i] = np.conj(a[i, q])
                    a[p, p] = c * c * app - 2.0 * c * s * alpha + s * s * aqq
                    a[q, q] = s * s * app + 2.0 * c * s * alpha + c * c * aqq
                    a[p, q] = 0.0
                    a[q, p] = 0.0

        _SWEEP = _jacobi_sweep_jit
        BACKEND = "numba"
    except ImportError:
        _SWEEP = _jacobi_sweep_numpy
        BACKEND = "numpy"
else:
    _SWEEP = _jacobi_sweep_numpy
    BACKEND = "numpy"


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues, sorted descending."""

    eigenvalues: tuple[float, ...]

    def __iter__(self):
        return iter(self.eigenvalues)


def jacobi_eigenvalues(m: np.ndarray, sweep=None) -> tuple[np.ndarray, int]:
    """Run cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops
    below ``OFFDIAG_TOL``.  Returns (unsorted eigenvalues, sweeps used).

    ``sweep`` overrides the backend kernel (used by the benchmark).
    """
    sweep = sweep or _SWEEP
    a = np.array(m, dtype=np.complex128, order="C")
    if _offdiag_norm(a) < OFFDIAG_TOL:
        return np.diag(a).real.copy(), 0
    for n_sweeps in range(1, MAX_SWEEPS + 1):
        sweep(a)
        if _offdiag_norm(a) < OFFDIAG_TOL:
            return np.diag(a).real.copy(), n_sweeps
    raise ConvergenceError(
        f"Jacobi did not reach off-diagonal norm {OFFDIAG_TOL} in {MAX_SWEEPS} sweeps"
    )


def eig_hermitian(m: np.ndarray) -> Spectrum:
    """Eigenvalues of a Hermitian matrix via cyclic Jacobi rotations.

    The input must be Hermitian within 1e-8 and at most 4096 x 4096; the
    eigenvalue sum is guaranteed to match the trace to 1e-9 by construction
    (rotations preserve the trace exactly up to roundoff).
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise HermiticityError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise SizeError(f"dimension {m.shape[0]} exceeds cap {MAX_DIM}")
    if np.max(np.abs(m - m.conj().T)) > 1e-8:
        raise HermiticityError("matrix is not Hermitian within 1e-8")
    vals, _ = jacobi_eigenvalues((m + m.conj().T) / 2.0)
    return Spectrum(tuple(sorted(vals.tolist(), reverse=True)))
