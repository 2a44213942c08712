"""Ladder operators, anticommutators, braided reordering and the braided adjoint.

Creation/annihilation act with the Jordan-Wigner sign (-1)^(occupied slots to
the left) in the canonical order.  ``reorder`` carries a configurable exchange
phase: pi is the fermionic convention, 0 the deliberately naive qubit one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ModeSetError, SizeError
from .fock import (
    FockKet,
    ModeOrder,
    PRUNE_TOL,
    canonicalize,
    mode_order,
    occupied_inversions,
    permute_bits,
    weight,
)

#: Exchange phase of the fermionic convention.
FERMIONIC_PHASE = math.pi
#: Exchange phase of the naive qubit convention (no signs).
NAIVE_PHASE = 0.0

MAX_MATRIX_MODES = 12


class Kind(Enum):
    CREATE = "create"
    ANNIHILATE = "annihilate"


@dataclass(frozen=True)
class LadderLetter:
    mode: str
    kind: Kind


def create(mode: str) -> LadderLetter:
    return LadderLetter(mode, Kind.CREATE)


def annihilate(mode: str) -> LadderLetter:
    return LadderLetter(mode, Kind.ANNIHILATE)


LadderWord = Sequence[LadderLetter]


def adjoint_sign(w: int) -> int:
    """Sign (-1)^(w(w-1)/2) the braided adjoint puts on a weight-w string."""
    return -1 if (w * (w - 1) // 2) % 2 else 1


def _apply_letter(letter: LadderLetter, ket: FockKet) -> FockKet:
    # ket assumed canonical; Jordan-Wigner sign from slots left of the target
    try:
        slot = ket.order.index(letter.mode)
    except ValueError:
        raise ModeSetError(f"mode {letter.mode!r} not in order {ket.order}") from None
    out: dict[str, complex] = {}
    for bits, amp in ket.terms.items():
        occupied = bits[slot] == "1"
        if letter.kind is Kind.ANNIHILATE and not occupied:
            continue
        if letter.kind is Kind.CREATE and occupied:
            continue
        sign = -1.0 if bits[:slot].count("1") % 2 else 1.0
        new = "1" if letter.kind is Kind.CREATE else "0"
        target = bits[:slot] + new + bits[slot + 1 :]
        out[target] = out.get(target, 0j) + sign * amp
    return FockKet(ket.order, {s: a for s, a in out.items() if abs(a) >= PRUNE_TOL})


def apply_ladder(word: LadderWord, ket: FockKet) -> FockKet:
    """Apply a product of ladder operators (rightmost letter first).

    The ket is canonicalized before the word acts, so one sign convention
    covers every presentation.  The zero state is a legal result.
    """
    out = canonicalize(ket)
    for letter in reversed(list(word)):
        out = _apply_letter(letter, out)
    return out


def _basis_bits(n: int) -> list[str]:
    return [format(i, f"0{n}b") for i in range(2**n)]


def operator_matrix(letter: LadderLetter, order: Iterable[str]) -> np.ndarray:
    """Dense matrix of one ladder operator over the 2^N occupation basis.

    Columns are indexed by the input string (first mode slot = most
    significant bit).  The matrix realizes the operator in the *given*
    presentation order.
    """
    order = mode_order(order)
    n = len(order)
    if n > MAX_MATRIX_MODES:
        raise SizeError(f"{n} modes exceeds the {MAX_MATRIX_MODES}-mode matrix cap")
    if letter.mode not in order:
        raise ModeSetError(f"mode {letter.mode!r} not in order {order}")
    dim = 2**n
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for col, bits in enumerate(_basis_bits(n)):
        out = apply_ladder([letter], FockKet(order, {bits: 1.0 + 0j}))
        out = reorder(out, order, FERMIONIC_PHASE)
        for obits, amp in out.terms.items():
            mat[int(obits, 2), col] = amp
    return mat


def anticommutator(x: LadderLetter, y: LadderLetter, order: Iterable[str]) -> np.ndarray:
    """XY + YX as a dense matrix over the occupation basis of ``order``."""
    mx = operator_matrix(x, order)
    my = operator_matrix(y, order)
    return mx @ my + my @ mx


def reorder(ket: FockKet, target: Iterable[str], phase: float) -> FockKet:
    """Re-present a ket in a permuted mode order under an exchange phase.

    Each term's amplitude picks up exp(i * phase * k), k = occupied-pair
    inversions between source and target.  phase = pi reproduces the
    fermionic sign; phase = 0 leaves amplitudes untouched.
    """
    target = mode_order(target)
    if set(target) != set(ket.order) or len(target) != len(ket.order):
        raise ModeSetError(f"{target} is not a permutation of {ket.order}")
    terms: dict[str, complex] = {}
    for bits, amp in ket.terms.items():
        k = occupied_inversions(bits, ket.order, target)
        if abs(phase - math.pi) < 1e-12:
            factor: complex = -1.0 if k % 2 else 1.0
        elif phase == 0.0:
            factor = 1.0
        else:
            factor = cmath.exp(1j * phase * k)
        terms[permute_bits(bits, ket.order, target)] = factor * amp
    return FockKet(target, {s: a for s, a in terms.items() if abs(a) >= PRUNE_TOL})


@dataclass(frozen=True)
class BraidedBra:
    """Bra-side coefficients with the adjoint signs already folded in."""

    order: ModeOrder
    terms: Mapping[str, complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", MappingProxyType(dict(self.terms)))


def braided_adjoint(ket: FockKet) -> BraidedBra:
    """Braided dagger: coefficient conj(amp) * (-1)^(w(w-1)/2) per string.

    The sign generalizes the two-particle rule (adjoint of a two-creation
    product flips sign) to arbitrary weight; applying it twice returns the
    original coefficients.
    """
    terms = {
        bits: amp.conjugate() * adjoint_sign(weight(bits))
        for bits, amp in ket.terms.items()
    }
    return BraidedBra(ket.order, terms)


def braided_norm(ket: FockKet) -> float:
    """Pair the braided adjoint with the ket; equals <k|k> and is >= 0."""
    from .fock import braided_pairing

    bra = braided_adjoint(ket)
    total = 0j
    for bits, amp in ket.terms.items():
        total += bra.terms[bits] * braided_pairing(bits, bits) * amp
    return total.real
