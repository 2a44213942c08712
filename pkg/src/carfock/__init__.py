"""carfock: fermionic Fock-space algebra with full sign bookkeeping."""

from .algebra import (
    FERMIONIC_PHASE,
    NAIVE_PHASE,
    BraidedBra,
    Kind,
    LadderLetter,
    annihilate,
    anticommutator,
    apply_ladder,
    braided_adjoint,
    braided_norm,
    create,
    operator_matrix,
    reorder,
)
from .eig import Spectrum, eig_hermitian
from .fock import (
    FockKet,
    braided_pairing,
    canonical_order,
    canonicalize,
    inner_product,
    make_ket,
    mode_order,
    vacuum,
)
from .grammar import parse_state, render_state
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
from .report import render_report, run_sweep
from .ssr import (
    ParitySector,
    SsrStatus,
    SsrVerdict,
    parity,
    project_sector,
    validate_dm,
    validate_ket,
)

__version__ = "0.1.0"
