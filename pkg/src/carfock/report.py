"""Ordering-sweep reports and their JSON serialization (schema car-fock/1).

A sweep re-presents one input state in every permutation of its mode order,
reduces it under each requested convention, and records the diagnostics.
Fermionic conventions must come out identical across orderings; the naive
convention is expected to disagree with itself.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Sequence

import numpy as np

from .algebra import FERMIONIC_PHASE, NAIVE_PHASE, reorder
from .errors import SizeError, SsrError
from .fock import FockKet, canonicalize
from .grammar import render_state
from .reduce import (
    DensityMatrix,
    TraceConvention,
    density_matrix,
    negativity,
    partial_trace,
    purity,
    reorder_dm,
    von_neumann_entropy,
)
from .ssr import SsrVerdict, validate_dm, validate_ket

SCHEMA = "car-fock/1"
MAX_SWEEP_MODES = 8
INVARIANCE_TOL = 1e-10

#: CLI spelling -> trace convention.  "fermionic" is the canonical oracle.
CONVENTION_NAMES = {
    "fermionic": TraceConvention.CANONICAL,
    "canonical": TraceConvention.CANONICAL,
    "skip-sign": TraceConvention.SKIP_SIGN,
    "naive": TraceConvention.NAIVE,
}


def complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def matrix_json(dm: DensityMatrix) -> dict:
    basis = dm.basis()
    return {
        row: {col: complex_pair(dm.entry(row, col)) for col in basis} for row in basis
    }


def verdict_json(v: SsrVerdict) -> dict:
    return {
        "status": v.status.value,
        "sector": v.sector.value if v.sector is not None else None,
        "even_weight": v.even_weight,
        "odd_weight": v.odd_weight,
    }


def _aligned_reduced(
    ket: FockKet, ordering: tuple[str, ...], keep: set[str], convention: TraceConvention
) -> DensityMatrix:
    phase = NAIVE_PHASE if convention is TraceConvention.NAIVE else FERMIONIC_PHASE
    presented = reorder(ket, ordering, phase)
    dm = density_matrix(presented, canonical=False)
    reduced = partial_trace(dm, keep, convention)
    target = tuple(sorted(keep))
    if reduced.order != target:
        reduced = reorder_dm(reduced, target, phase)
    return reduced


def run_sweep(
    ket: FockKet,
    keep: Iterable[str],
    conventions: Sequence[str],
    enforce_ssr: bool = False,
) -> dict:
    """Reduce ``ket`` under every mode ordering and convention.

    Returns the report as a plain dict (see ``render_report``).  Raises
    ``SsrError`` when ``enforce_ssr`` is set and the input violates parity
    superselection, and ``SizeError`` beyond the 8-mode factorial cap.
    """
    ket = canonicalize(ket)
    keep = set(keep)
    if len(ket.order) > MAX_SWEEP_MODES:
        raise SizeError(
            f"{len(ket.order)} modes exceeds the {MAX_SWEEP_MODES}-mode sweep cap"
        )
    input_verdict = validate_ket(ket)
    if enforce_ssr and input_verdict.is_violation:
        raise SsrError(
            "input violates parity superselection "
            f"(even {input_verdict.even_weight:.6g}, odd {input_verdict.odd_weight:.6g})"
        )

    kinds = []
    for name in conventions:
        if name not in CONVENTION_NAMES:
            raise SizeError(f"unknown convention {name!r}")
        kinds.append((name, CONVENTION_NAMES[name]))

    records = []
    by_convention: dict[str, list[DensityMatrix]] = {name: [] for name, _ in kinds}
    for ordering in itertools.permutations(ket.order):
        for name, kind in kinds:
            reduced = _aligned_reduced(ket, ordering, keep, kind)
            neg = None
            if len(keep) >= 2:
                first = sorted(keep)[0]
                neg = negativity(reduced, ({first}, keep - {first}))
            records.append(
                {
                    "ordering": "".join(ordering),
                    "convention": name,
                    "reduced": matrix_json(reduced),
                    "entropy_bits": von_neumann_entropy(reduced),
                    "purity": purity(reduced),
                    "negativity": neg,
                    "ssr": verdict_json(validate_dm(reduced)),
                }
            )
            by_convention[name].append(reduced)

    summary = {}
    for name, mats in by_convention.items():
        max_dist = 0.0
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                max_dist = max(
                    max_dist, float(np.max(np.abs(mats[i].mat - mats[j].mat)))
                )
        summary[name] = {
            "invariant_under_reordering": max_dist < INVARIANCE_TOL,
            "max_pairwise_distance": max_dist,
        }

    return {
        "schema": SCHEMA,
        "input": {
            "state": render_state(ket),
            "order": "".join(ket.order),
            "ssr": verdict_json(input_verdict),
        },
        "keep": "".join(sorted(keep)),
        "records": records,
        "summary": summary,
    }


def fermionic_invariance_holds(report: dict) -> bool:
    """True unless a fermionic convention failed to be ordering-invariant."""
    for name, stats in report["summary"].items():
        if CONVENTION_NAMES[name] is not TraceConvention.NAIVE:
            if not stats["invariant_under_reordering"]:
                return False
    return True


def render_report(report: dict) -> str:
    """Serialize a report dict with stable key order."""
    return json.dumps(report, indent=2, sort_keys=False, allow_nan=False)
