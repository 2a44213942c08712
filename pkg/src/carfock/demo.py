"""Turnkey walkthrough of the worked three-mode example.

Runs six checks in order and stops at the first deviation:

1. operator-ordering-sign   -- creating two modes in opposite orders flips the sign
2. braided-norm             -- the braided adjoint makes multi-particle norms positive
3. parity-superselection    -- the demo states superpose even and odd sectors
4. fermionic-partial-trace  -- tracing the third mode yields the Bell-type projector
5. reordered-partial-trace  -- the same projector after fermionic mode reordering
6. naive-trace-ambiguity    -- the unsigned convention gives order-dependent results

For negative-control testing, the fermionic adjoint / reorder / trace steps can
be replaced with deliberately broken variants (``bug=`` argument).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import (
    FERMIONIC_PHASE,
    NAIVE_PHASE,
    BraidedBra,
    apply_ladder,
    braided_adjoint,
    create,
    reorder,
)
from .errors import DemoFailure
from .fock import FockKet, braided_pairing, make_ket, vacuum
from .reduce import (
    DensityMatrix,
    TraceConvention,
    density_matrix,
    negativity,
    partial_trace,
    purity,
)
from .report import SCHEMA, complex_pair, matrix_json, verdict_json
from .ssr import SsrStatus, validate_ket

TOL = 1e-10

#: ½(|100> + |010> + |101> + |011>) on modes a,b,c -- the disputed state.
PHI_TERMS = [("100", 0.5), ("010", 0.5), ("101", 0.5), ("011", 0.5)]
#: ½(|00> + |01> + |10> + |11>) on modes a,b -- the "factorizable" state.
PSI_TERMS = [("00", 0.5), ("01", 0.5), ("10", 0.5), ("11", 0.5)]

#: Reduced matrix on modes a,b after a correct fermionic trace of mode c:
#: the projector onto (|10> + |01>)/sqrt(2).
BELL_HALF = {("10", "10"): 0.5, ("10", "01"): 0.5, ("01", "10"): 0.5, ("01", "01"): 0.5}
#: What the naive pipeline produces from the reordered presentation:
#: the separable state (I_a/2) (x) |+><+|_b.
SEPARABLE = {
    (r, c): 0.25 for r in ("00", "01", "10", "11") for c in ("00", "01", "10", "11")
    if r[0] == c[0]
}


@dataclass
class DemoOps:
    """The fermionic-path operations the walkthrough exercises; replaceable
    with broken variants for negative-control runs."""

    adjoint: Callable[[FockKet], BraidedBra]
    reorder: Callable[[FockKet, tuple[str, ...]], FockKet]
    trace: Callable[[DensityMatrix, set[str]], DensityMatrix]


def _correct_ops() -> DemoOps:
    return DemoOps(
        adjoint=braided_adjoint,
        reorder=lambda k, order: reorder(k, order, FERMIONIC_PHASE),
        trace=lambda dm, keep: partial_trace(dm, keep, TraceConvention.SKIP_SIGN),
    )


def _buggy_ops(bug: str) -> DemoOps:
    ops = _correct_ops()
    if bug == "naive-adjoint":
        ops.adjoint = lambda k: BraidedBra(
            k.order, {s: a.conjugate() for s, a in k.terms.items()}
        )
    elif bug == "unsigned-reorder":
        ops.reorder = lambda k, order: reorder(k, order, NAIVE_PHASE)
    elif bug == "unsigned-trace":
        ops.trace = lambda dm, keep: partial_trace(dm, keep, TraceConvention.NAIVE)
    else:
        raise ValueError(f"unknown bug {bug!r}")
    return ops


def _expect(check: str, condition: bool, message: str) -> None:
    if not condition:
        raise DemoFailure(check, message)


def _matrix_close(dm: DensityMatrix, expected: dict, tol: float = TOL) -> float:
    """Max deviation of dm entries from a sparse expected-entry map."""
    worst = 0.0
    for row in dm.basis():
        for col in dm.basis():
            want = expected.get((row, col), 0.0)
            worst = max(worst, abs(dm.entry(row, col) - want))
    return worst


def run_demo(bug: str | None = None) -> dict:
    """Run all six checks; returns the JSON-ready transcript.

    Raises DemoFailure naming the first check that deviates beyond 1e-10.
    """
    ops = _correct_ops() if bug is None else _buggy_ops(bug)
    checks: list[dict] = []

    def record(name: str, **details) -> None:
        checks.append({"name": name, "passed": True, **details})

    # 1. creating a then b vs b then a from the vacuum
    name = "operator-ordering-sign"
    ab = apply_ladder([create("a"), create("b")], vacuum("ab"))
    ba = apply_ladder([create("b"), create("a")], vacuum("ab"))
    _expect(name, abs(ab.amplitude("11") - 1.0) < TOL, f"a-then-b gave {ab.terms}")
    _expect(name, abs(ba.amplitude("11") + 1.0) < TOL, f"b-then-a gave {ba.terms}")
    record(name, amplitude_ab=complex_pair(ab.amplitude("11")),
           amplitude_ba=complex_pair(ba.amplitude("11")))

    # 2. braided adjoint and the positive norm it produces
    name = "braided-norm"
    pair = make_ket("ab", [("11", 1.0)])
    phi = make_ket("abc", PHI_TERMS)

    def norm_via(ket: FockKet) -> float:
        bra = ops.adjoint(ket)
        return sum(
            (bra.terms[s] * braided_pairing(s, s) * a).real
            for s, a in ket.terms.items()
        )

    _expect(name, abs(norm_via(pair) - 1.0) < TOL,
            f"norm of the doubly occupied pair came out {norm_via(pair)}")
    phi_bra = ops.adjoint(phi)
    expected_bra = {"100": 0.5, "010": 0.5, "101": -0.5, "011": -0.5}
    for bits, want in expected_bra.items():
        _expect(name, abs(phi_bra.terms[bits] - want) < TOL,
                f"bra coefficient of {bits} is {phi_bra.terms[bits]}, expected {want}")
    _expect(name, abs(norm_via(phi) - 1.0) < TOL, f"norm came out {norm_via(phi)}")
    record(name, pair_norm=norm_via(pair), state_norm=norm_via(phi),
           bra_coefficients={k: complex_pair(v) for k, v in phi_bra.terms.items()})

    # 3. both demo states superpose the parity sectors
    name = "parity-superselection"
    psi = make_ket("ab", PSI_TERMS)
    for label, ket in (("two-mode", psi), ("three-mode", phi)):
        v = validate_ket(ket)
        _expect(name, v.status is SsrStatus.VIOLATION,
                f"{label} state was not flagged as a violation")
        _expect(name, abs(v.even_weight - 0.5) < TOL and abs(v.odd_weight - 0.5) < TOL,
                f"{label} sector weights ({v.even_weight}, {v.odd_weight})")
    bell = make_ket("ab", [("00", 1.0), ("11", 1.0)], normalize=True)
    _expect(name, validate_ket(bell).status is SsrStatus.PURE,
            "even-sector state was not reported pure")
    record(name, two_mode=verdict_json(validate_ket(psi)),
           three_mode=verdict_json(validate_ket(phi)))

    # 4. fermionic trace of the third mode in the original presentation
    name = "fermionic-partial-trace"
    reduced = ops.trace(density_matrix(phi, canonical=False), {"a", "b"})
    dev = _matrix_close(reduced, BELL_HALF)
    _expect(name, dev < TOL, f"reduced matrix deviates by {dev}")
    record(name, reduced=matrix_json(reduced))

    # 5. the same trace after fermionically reordering modes b and c
    name = "reordered-partial-trace"
    phi_acb = ops.reorder(phi, ("a", "c", "b"))
    expected_acb = {"100": 0.5, "001": 0.5, "110": 0.5, "011": -0.5}
    for bits, want in expected_acb.items():
        got = phi_acb.amplitude(bits)
        _expect(name, abs(got - want) < TOL,
                f"reordered coefficient of {bits} is {got}, expected {want}")
    reduced2 = ops.trace(density_matrix(phi_acb, canonical=False), {"a", "b"})
    dev2 = _matrix_close(reduced2, BELL_HALF)
    _expect(name, dev2 < TOL, f"reduced matrix deviates by {dev2}")
    record(name, reduced=matrix_json(reduced2))

    # 6. the unsigned convention contradicts itself across orderings
    name = "naive-trace-ambiguity"
    phi_naive = reorder(phi, ("a", "c", "b"), NAIVE_PHASE)
    naive_abc = partial_trace(density_matrix(phi, canonical=False), {"a", "b"},
                              TraceConvention.NAIVE)
    naive_acb = partial_trace(density_matrix(phi_naive, canonical=False), {"a", "b"},
                              TraceConvention.NAIVE)
    _expect(name, _matrix_close(naive_abc, BELL_HALF) < TOL,
            "naive trace in the original order should reproduce the projector")
    _expect(name, _matrix_close(naive_acb, SEPARABLE) < TOL,
            "naive trace after reordering should give the separable state")
    gap = float(np.max(np.abs(naive_abc.mat - naive_acb.mat)))
    _expect(name, gap > 0.1, f"naive results differ only by {gap}")
    record(
        name,
        max_entry_gap=gap,
        original={"negativity": negativity(naive_abc, ({"a"}, {"b"})),
                  "purity": purity(naive_abc)},
        reordered={"negativity": negativity(naive_acb, ({"a"}, {"b"})),
                   "purity": purity(naive_acb)},
    )

    return {"schema": SCHEMA, "checks": checks, "all_passed": True}


def format_transcript(transcript: dict) -> str:
    lines = []
    for check in transcript["checks"]:
        lines.append(f"[pass] {check['name']}")
    lines.append("all checks passed")
    return "\n".join(lines)
