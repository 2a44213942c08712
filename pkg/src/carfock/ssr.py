"""Parity sector analysis: the fermionic Fock space splits into even- and
odd-occupation subspaces, and coherent superpositions across the two are
forbidden by superselection.

Validators only report; nothing in the library rejects violating states
(the CLI can opt in to enforcement with --enforce-ssr).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import NormError
from .fock import FockKet, PRUNE_TOL, weight
from .reduce import DensityMatrix


class ParitySector(Enum):
    EVEN = "even"
    ODD = "odd"


class SsrStatus(Enum):
    PURE = "pure"
    MIXTURE = "mixture"
    VIOLATION = "violation"


@dataclass(frozen=True)
class SsrVerdict:
    status: SsrStatus
    sector: Optional[ParitySector]
    even_weight: float
    odd_weight: float

    @property
    def is_violation(self) -> bool:
        return self.status is SsrStatus.VIOLATION


def parity(bits: str) -> ParitySector:
    """Sector of one occupation string: weight mod 2."""
    return ParitySector.ODD if weight(bits) % 2 else ParitySector.EVEN


def _pure_verdict(even_weight: float, odd_weight: float) -> Optional[SsrVerdict]:
    if min(even_weight, odd_weight) < 1e-12:
        sector = ParitySector.EVEN if even_weight >= odd_weight else ParitySector.ODD
        return SsrVerdict(SsrStatus.PURE, sector, even_weight, odd_weight)
    return None


def validate_ket(ket: FockKet) -> SsrVerdict:
    """Sector weights of a normalized ket; any genuine superposition across
    sectors is a Violation."""
    if abs(ket.squared_norm() - 1.0) > 1e-12:
        raise NormError(f"squared norm {ket.squared_norm()} is not 1")
    even = sum(abs(a) ** 2 for s, a in ket.terms.items() if parity(s) is ParitySector.EVEN)
    odd = ket.squared_norm() - even
    verdict = _pure_verdict(even, odd)
    if verdict is not None:
        return verdict
    return SsrVerdict(SsrStatus.VIOLATION, None, even, odd)


def validate_dm(dm: DensityMatrix) -> SsrVerdict:
    """Violation iff any even-odd coherence exceeds 1e-12 in modulus.

    Both sectors populated without coherence is a valid classical mixture,
    not a violation: superselection forbids superpositions, not mixtures.
    """
    par = np.array([weight(b) % 2 for b in dm.basis()])
    cross = dm.mat[np.ix_(par == 0, par == 1)]
    diag = np.diag(dm.mat).real
    even = float(diag[par == 0].sum())
    odd = float(diag[par == 1].sum())
    if cross.size and np.max(np.abs(cross)) > 1e-12:
        return SsrVerdict(SsrStatus.VIOLATION, None, even, odd)
    verdict = _pure_verdict(even, odd)
    if verdict is not None:
        return verdict
    return SsrVerdict(SsrStatus.MIXTURE, None, even, odd)


def project_sector(ket: FockKet, sector: ParitySector) -> FockKet:
    """Keep only the terms of the requested parity.  Not renormalized; the
    result may be the zero state."""
    terms = {
        s: a for s, a in ket.terms.items() if parity(s) is sector and abs(a) >= PRUNE_TOL
    }
    return FockKet(ket.order, terms)
