"""Density matrices, partial-trace pipelines and entanglement diagnostics.

Three trace conventions coexist:

* ``CANONICAL`` -- the oracle: fermionically reorder so kept modes sit in the
  leftmost slots, then take the ordinary slot diagonal.
* ``SKIP_SIGN`` -- slot-by-slot tracing in the given presentation, with the
  sign flips incurred when a traced occupied mode skips other occupied modes
  plus the adjoint-weight conversion.  Must agree with CANONICAL.
* ``NAIVE`` -- qubit-style slot diagonal with no signs anywhere; the
  intentionally flawed comparison arm whose output depends on mode order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .algebra import FERMIONIC_PHASE, adjoint_sign
from .eig import Spectrum, eig_hermitian
from .errors import (
    KeepSetError,
    ModeSetError,
    NormError,
    PartitionError,
    PositivityError,
)
from .fock import FockKet, ModeOrder, canonicalize


class TraceConvention(Enum):
    CANONICAL = "canonical"
    SKIP_SIGN = "skip-sign"
    NAIVE = "naive"


@dataclass(frozen=True)
class DensityMatrix:
    """Dense Hermitian matrix over the occupation basis of ``order``.

    Row/column index of a bit string is its binary value (first mode slot =
    most significant bit).
    """

    order: ModeOrder
    mat: np.ndarray

    @property
    def width(self) -> int:
        return len(self.order)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def basis(self) -> list[str]:
        return [format(i, f"0{self.width}b") for i in range(self.dim)]

    def entry(self, row_bits: str, col_bits: str) -> complex:
        return complex(self.mat[int(row_bits, 2), int(col_bits, 2)])

    def trace(self) -> float:
        return float(np.trace(self.mat).real)

    def validate(self, atol: float = 1e-10) -> None:
        """Assert the Hermiticity / unit-trace / positivity invariants."""
        if np.max(np.abs(self.mat - self.mat.conj().T)) > atol:
            raise PositivityError("density matrix is not Hermitian")
        if abs(self.trace() - 1.0) > atol:
            raise NormError(f"trace {self.trace()} is not 1")
        low = min(eig_hermitian(self.mat).eigenvalues)
        if low < -atol:
            raise PositivityError(f"eigenvalue {low} below -{atol}")


def _ket_vector(ket: FockKet) -> np.ndarray:
    v = np.zeros(2**ket.width, dtype=np.complex128)
    for bits, amp in ket.terms.items():
        v[int(bits, 2)] = amp
    return v


def density_matrix(ket: FockKet, canonical: bool = True) -> DensityMatrix:
    """Outer product |k><k| in the orthonormal occupation basis.

    By default the ket is canonicalized first; pass ``canonical=False`` to
    keep the ket's own presentation order (used by the trace pipelines that
    exercise non-canonical orderings).
    """
    if abs(ket.squared_norm() - 1.0) > 1e-12:
        raise NormError(f"squared norm {ket.squared_norm()} is not 1")
    if canonical:
        ket = canonicalize(ket)
    v = _ket_vector(ket)
    return DensityMatrix(ket.order, np.outer(v, v.conjugate()))


def _popcounts(size: int) -> np.ndarray:
    return np.array([bin(i).count("1") for i in range(size)], dtype=np.int64)


def reorder_dm(dm: DensityMatrix, target: Iterable[str], phase: float = FERMIONIC_PHASE) -> DensityMatrix:
    """Signed basis permutation taking a density matrix to a new mode order.

    phase = pi applies the fermionic occupied-pair sign per basis string on
    both indices; phase = 0 is the plain (naive) relabeling.
    """
    target = tuple(target)
    if set(target) != set(dm.order) or len(target) != len(dm.order):
        raise ModeSetError(f"{target} is not a permutation of {dm.order}")
    n = dm.width
    fermionic = abs(phase - math.pi) < 1e-12
    if not fermionic and phase != 0.0:
        raise ModeSetError("density-matrix reorder supports phases 0 and pi only")
    # bits[i, s] = occupation of source slot s in basis string i (MSB = slot 0)
    shifts = n - 1 - np.arange(n)
    bits = (np.arange(dm.dim)[:, None] >> shifts[None, :]) & 1
    src_slot = [dm.order.index(m) for m in target]
    new_index = np.zeros(dm.dim, dtype=np.int64)
    for k, s in enumerate(src_slot):
        new_index |= bits[:, s] << (n - 1 - k)
    sign = np.ones(dm.dim)
    if fermionic:
        pos = {m: k for k, m in enumerate(target)}
        inversions = np.zeros(dm.dim, dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                if pos[dm.order[i]] > pos[dm.order[j]]:
                    inversions += bits[:, i] * bits[:, j]
        sign = np.where(inversions % 2 == 1, -1.0, 1.0)
    signed = sign[:, None] * sign[None, :] * dm.mat
    out = np.empty_like(dm.mat)
    out[np.ix_(new_index, new_index)] = signed
    return DensityMatrix(target, out)


def _trace_slot_naive(mat: np.ndarray, n: int, p: int) -> np.ndarray:
    left, right = 2**p, 2 ** (n - 1 - p)
    a = mat.reshape(left, 2, right, left, 2, right)
    out = a[:, 0, :, :, 0, :] + a[:, 1, :, :, 1, :]
    return out.reshape(left * right, left * right)


def _trace_slot_skip_sign(mat: np.ndarray, n: int, p: int) -> np.ndarray:
    # Occupied-slot factor (-1)^(r_ket + r_bra + w_bra - 1): the skip signs
    # past occupied modes to the right, plus the adjoint weight conversion.
    left, right = 2**p, 2 ** (n - 1 - p)
    a = mat.reshape(left, 2, right, left, 2, right)
    pop_l = _popcounts(left)
    pop_r = _popcounts(right)
    r_ket = pop_r[None, :, None, None]
    r_bra = pop_r[None, None, None, :]
    w_bra = pop_l[None, None, :, None] + 1 + pop_r[None, None, None, :]
    factor = np.where((r_ket + r_bra + w_bra - 1) % 2 == 1, -1.0, 1.0)
    out = a[:, 0, :, :, 0, :] + factor * a[:, 1, :, :, 1, :]
    return out.reshape(left * right, left * right)


def _check_keep(dm: DensityMatrix, keep: Iterable[str]) -> set[str]:
    keep = set(keep)
    unknown = keep - set(dm.order)
    if unknown:
        raise ModeSetError(f"unknown modes {sorted(unknown)}")
    if not keep or keep == set(dm.order):
        raise KeepSetError("kept set must be a non-empty proper subset")
    return keep


def partial_trace(
    dm: DensityMatrix, keep: Iterable[str], convention: TraceConvention
) -> DensityMatrix:
    """Trace out all modes not in ``keep`` under the chosen convention.

    CANONICAL returns the kept modes in canonical (sorted) order; the other
    two keep the presentation's relative order of the kept modes.
    """
    keep = _check_keep(dm, keep)
    traced = [m for m in dm.order if m not in keep]

    if convention is TraceConvention.CANONICAL:
        target = tuple(sorted(keep)) + tuple(sorted(traced))
        arranged = reorder_dm(dm, target, FERMIONIC_PHASE)
        k, t = 2 ** len(keep), 2 ** len(traced)
        a = arranged.mat.reshape(k, t, k, t)
        return DensityMatrix(tuple(sorted(keep)), np.einsum("itjt->ij", a))

    if convention is TraceConvention.NAIVE:
        # The flawed qubit identification is positional: slot i is taken to be
        # canonical mode i regardless of the presentation, so the traced slots
        # are the canonical positions of the traced labels.
        canon = tuple(sorted(dm.order))
        slots = sorted((canon.index(m) for m in traced), reverse=True)
        mat = dm.mat
        n = dm.width
        for p in slots:
            mat = _trace_slot_naive(mat, n, p)
            n -= 1
        return DensityMatrix(tuple(sorted(keep)), mat)

    kept_order = tuple(m for m in dm.order if m in keep)
    order = list(dm.order)
    mat = dm.mat

    # SKIP_SIGN: fold the braided-adjoint sign into the bra index, trace slot
    # by slot with the skip factors (which keep the folded form consistent at
    # each intermediate weight), then unfold.
    sigma = np.array([adjoint_sign(w) for w in _popcounts(dm.dim)], dtype=np.float64)
    mat = mat * sigma[None, :]
    for mode in reversed(traced):
        p = order.index(mode)
        mat = _trace_slot_skip_sign(mat, len(order), p)
        order.pop(p)
    sigma_out = np.array(
        [adjoint_sign(w) for w in _popcounts(mat.shape[0])], dtype=np.float64
    )
    return DensityMatrix(kept_order, mat * sigma_out[None, :])


def spectrum(dm: DensityMatrix) -> Spectrum:
    return eig_hermitian(dm.mat)


def von_neumann_entropy(dm: DensityMatrix) -> float:
    """- sum(lam * log2 lam) over the spectrum, in bits.

    Eigenvalues in [-1e-10, 0) are clamped to zero; anything lower raises.
    """
    total = 0.0
    for lam in eig_hermitian(dm.mat).eigenvalues:
        if lam < -1e-10:
            raise PositivityError(f"eigenvalue {lam} below -1e-10")
        if lam > 0.0:
            total -= lam * math.log2(lam)
    return total


def purity(dm: DensityMatrix) -> float:
    """Tr(rho^2); 1 for pure states, 1/dim for maximally mixed."""
    return float(np.trace(dm.mat @ dm.mat).real)


def negativity(dm: DensityMatrix, partition: tuple[Iterable[str], Iterable[str]]) -> float:
    """Sum of |negative eigenvalues| after qubit-style partial transposition
    of the second part's slots, in the canonicalized basis.

    Zero for product states; 1/2 for a Bell-type projector.
    """
    part_a, part_b = set(partition[0]), set(partition[1])
    if not part_a or not part_b or part_a & part_b or part_a | part_b != set(dm.order):
        raise PartitionError(
            f"parts {sorted(part_a)} | {sorted(part_b)} do not disjointly cover {dm.order}"
        )
    canon = reorder_dm(dm, tuple(sorted(dm.order)), FERMIONIC_PHASE)
    n = canon.width
    slots_b = [i for i, m in enumerate(canon.order) if m in part_b]
    a = canon.mat.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for s in slots_b:
        axes[s], axes[n + s] = axes[n + s], axes[s]
    pt = np.transpose(a, axes).reshape(canon.dim, canon.dim)
    return float(sum(-lam for lam in eig_hermitian(pt).eigenvalues if lam < 0.0))
