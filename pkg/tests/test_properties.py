"""Property-based checks of the algebraic invariants."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carfock import (
    ParitySector,
    TraceConvention,
    braided_norm,
    canonicalize,
    density_matrix,
    inner_product,
    make_ket,
    partial_trace,
    project_sector,
    reorder,
    reorder_dm,
)
from carfock.algebra import FERMIONIC_PHASE
from carfock.fock import FockKet

ORDERS = ["ab", "abc", "abcd"]


@st.composite
def kets(draw, normalized=True):
    order = draw(st.sampled_from(ORDERS))
    n = len(order)
    dim = 2**n
    n_terms = draw(st.integers(min_value=1, max_value=dim))
    indices = draw(
        st.lists(st.integers(0, dim - 1), min_size=n_terms, max_size=n_terms,
                 unique=True)
    )
    amps = draw(
        st.lists(
            st.complex_numbers(
                min_magnitude=0.1, max_magnitude=2.0, allow_nan=False,
                allow_infinity=False,
            ),
            min_size=n_terms,
            max_size=n_terms,
        )
    )
    terms = [(format(i, f"0{n}b"), a) for i, a in zip(indices, amps)]
    return make_ket(order, terms, normalize=normalized)


@st.composite
def ket_and_permutation(draw, normalized=True):
    ket = draw(kets(normalized=normalized))
    perm = draw(st.permutations(ket.order))
    return ket, tuple(perm)


@given(kets(normalized=False))
def test_canonicalize_idempotent(k):
    once = canonicalize(k)
    twice = canonicalize(once)
    assert once.order == twice.order
    assert dict(once.terms) == dict(twice.terms)


@given(kets(normalized=False))
def test_canonicalize_preserves_norm_exactly(k):
    assert canonicalize(k).squared_norm() == pytest.approx(
        k.squared_norm(), rel=1e-12
    )


@given(ket_and_permutation(normalized=False))
def test_fermionic_reorder_preserves_inner_product(kp):
    k, sigma = kp
    moved = reorder(k, sigma, FERMIONIC_PHASE)
    assert inner_product(moved, moved).real == pytest.approx(
        inner_product(k, k).real, rel=1e-10
    )


@given(ket_and_permutation(normalized=False))
def test_reorder_then_canonicalize_is_canonicalize(kp):
    k, sigma = kp
    a = canonicalize(reorder(k, sigma, FERMIONIC_PHASE))
    b = canonicalize(k)
    assert set(a.terms) == set(b.terms)
    for bits in a.terms:
        assert a.terms[bits] == pytest.approx(b.terms[bits], rel=1e-9, abs=1e-12)


@given(kets())
def test_braided_norm_equals_inner_product(k):
    assert braided_norm(k) == pytest.approx(inner_product(k, k).real, abs=1e-12)


@given(kets(normalized=False))
def test_sector_projections_recompose(k):
    even = project_sector(k, ParitySector.EVEN)
    odd = project_sector(k, ParitySector.ODD)
    combined = {**dict(even.terms), **dict(odd.terms)}
    assert combined == dict(k.terms)
    assert not set(even.terms) & set(odd.terms)


@given(kets(normalized=False))
def test_braided_adjoint_is_involutive(k):
    from carfock import braided_adjoint

    bra = braided_adjoint(k)
    back = braided_adjoint(FockKet(bra.order, dict(bra.terms)))
    for bits, amp in k.terms.items():
        assert back.terms[bits] == pytest.approx(amp, rel=1e-12)


@settings(deadline=None, max_examples=40)
@given(ket_and_permutation())
def test_reduced_state_ordering_invariance(kp):
    k, sigma = kp
    keep = set(list(k.order)[: len(k.order) - 1])
    base = partial_trace(density_matrix(k), keep, TraceConvention.CANONICAL)
    moved = reorder(canonicalize(k), sigma, FERMIONIC_PHASE)
    red = partial_trace(
        density_matrix(moved, canonical=False), keep, TraceConvention.CANONICAL
    )
    assert np.allclose(red.mat, base.mat, atol=1e-12)


@settings(deadline=None, max_examples=40)
@given(ket_and_permutation())
def test_skip_sign_trace_matches_canonical(kp):
    k, sigma = kp
    keep = {sorted(k.order)[0]}
    moved = reorder(canonicalize(k), sigma, FERMIONIC_PHASE)
    dm = density_matrix(moved, canonical=False)
    a = partial_trace(dm, keep, TraceConvention.CANONICAL)
    b = partial_trace(dm, keep, TraceConvention.SKIP_SIGN)
    b = reorder_dm(b, a.order, FERMIONIC_PHASE)
    assert np.allclose(a.mat, b.mat, atol=1e-12)


@settings(deadline=None, max_examples=30)
@given(kets())
def test_all_conventions_preserve_trace(k):
    dm = density_matrix(k, canonical=False)
    keep = {k.order[0]}
    for conv in TraceConvention:
        red = partial_trace(dm, keep, conv)
        assert red.trace() == pytest.approx(1.0, abs=1e-10)
