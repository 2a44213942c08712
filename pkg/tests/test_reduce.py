import itertools

import numpy as np
import pytest

from carfock import (
    DensityMatrix,
    TraceConvention,
    density_matrix,
    make_ket,
    negativity,
    partial_trace,
    purity,
    reorder,
    reorder_dm,
    von_neumann_entropy,
)
from carfock.algebra import FERMIONIC_PHASE, NAIVE_PHASE
from carfock.errors import (
    KeepSetError,
    ModeSetError,
    NormError,
    PartitionError,
    PositivityError,
)
from conftest import random_ket

BELL_HALF = np.zeros((4, 4))
for r, c in itertools.product((int("10", 2), int("01", 2)), repeat=2):
    BELL_HALF[r, c] = 0.5

SEPARABLE = np.zeros((4, 4))
for r, c in itertools.product(range(4), repeat=2):
    if r >> 1 == c >> 1:
        SEPARABLE[r, c] = 0.25


def brute_slot_trace(terms, n, slots):
    """Independent oracle: plain outer product of the term map, then a plain
    slot-diagonal sum over the given positions.  No library code."""
    dim = 2**n
    v = np.zeros(dim, dtype=complex)
    for bits, amp in terms.items():
        v[int(bits, 2)] = amp
    rho = np.outer(v, v.conjugate())
    for p in sorted(slots, reverse=True):
        left, right = 2**p, 2 ** (n - 1 - p)
        a = rho.reshape(left, 2, right, left, 2, right)
        rho = (a[:, 0, :, :, 0, :] + a[:, 1, :, :, 1, :]).reshape(
            left * right, left * right
        )
        n -= 1
    return rho


class TestDensityMatrix:
    def test_demo_state_is_rank_one(self, phi):
        dm = density_matrix(phi)
        assert dm.mat.shape == (8, 8)
        assert dm.trace() == pytest.approx(1.0, abs=1e-12)
        assert purity(dm) == pytest.approx(1.0, abs=1e-12)

    def test_vacuum(self):
        dm = density_matrix(make_ket("ab", [("00", 1.0)]))
        assert dm.entry("00", "00") == 1.0
        assert np.count_nonzero(dm.mat) == 1

    def test_presentation_independent_after_canonicalization(self, phi):
        moved = reorder(phi, ("c", "a", "b"), FERMIONIC_PHASE)
        assert np.allclose(
            density_matrix(moved).mat, density_matrix(phi).mat, atol=1e-14
        )

    def test_rejects_unnormalized(self):
        with pytest.raises(NormError):
            density_matrix(make_ket("a", [("1", 2.0)]))

    def test_invariant_validation(self, phi):
        density_matrix(phi).validate()


class TestPartialTrace:
    def test_canonical_oracle_reproduces_projector(self, phi):
        red = partial_trace(density_matrix(phi), {"a", "b"}, TraceConvention.CANONICAL)
        assert red.order == ("a", "b")
        assert np.allclose(red.mat, BELL_HALF, atol=1e-12)

    def test_skip_sign_from_reordered_presentation(self, phi):
        phi_acb = reorder(phi, ("a", "c", "b"), FERMIONIC_PHASE)
        dm = density_matrix(phi_acb, canonical=False)
        red = partial_trace(dm, {"a", "b"}, TraceConvention.SKIP_SIGN)
        assert np.allclose(red.mat, BELL_HALF, atol=1e-12)

    def test_naive_from_reordered_presentation_is_separable(self, phi):
        phi_naive = reorder(phi, ("a", "c", "b"), NAIVE_PHASE)
        dm = density_matrix(phi_naive, canonical=False)
        red = partial_trace(dm, {"a", "b"}, TraceConvention.NAIVE)
        assert np.allclose(red.mat, SEPARABLE, atol=1e-12)
        # matches the brute-force positional oracle
        oracle = brute_slot_trace(dict(phi_naive.terms), 3, [2])
        assert np.allclose(red.mat, oracle, atol=1e-12)

    def test_vacuum_factorizes_under_every_convention(self):
        dm = density_matrix(make_ket("ab", [("00", 1.0)]))
        for conv in TraceConvention:
            red = partial_trace(dm, {"a"}, conv)
            assert np.allclose(red.mat, np.diag([1.0, 0.0]), atol=1e-14)

    def test_keep_set_errors(self, phi):
        dm = density_matrix(phi)
        with pytest.raises(KeepSetError):
            partial_trace(dm, set(), TraceConvention.CANONICAL)
        with pytest.raises(KeepSetError):
            partial_trace(dm, {"a", "b", "c"}, TraceConvention.CANONICAL)
        with pytest.raises(ModeSetError):
            partial_trace(dm, {"z"}, TraceConvention.CANONICAL)

    def test_trace_preserved_all_conventions(self, rng):
        for _ in range(5):
            k = random_ket(rng, "abcd")
            dm = density_matrix(k, canonical=False)
            for conv in TraceConvention:
                red = partial_trace(dm, {"a", "c"}, conv)
                assert red.trace() == pytest.approx(1.0, abs=1e-10)

    def test_skip_sign_equals_canonical_on_random_suite(self, rng):
        for n in (2, 3, 4):
            order = "abcd"[:n]
            for _ in range(10):
                k = random_ket(rng, order)
                for sigma in itertools.permutations(order):
                    moved = reorder(k, sigma, FERMIONIC_PHASE)
                    dm = density_matrix(moved, canonical=False)
                    for r in range(1, n):
                        for keep in itertools.combinations(order, r):
                            a = partial_trace(dm, set(keep), TraceConvention.CANONICAL)
                            b = partial_trace(dm, set(keep), TraceConvention.SKIP_SIGN)
                            b = reorder_dm(b, a.order, FERMIONIC_PHASE)
                            assert np.allclose(a.mat, b.mat, atol=1e-12)

    def test_ordering_invariance_parity_pure_and_mixing(self, rng):
        for parity in (None, 0, 1):
            k = random_ket(rng, "abcd", parity_pure=parity)
            base = partial_trace(
                density_matrix(k), {"b", "d"}, TraceConvention.CANONICAL
            )
            for sigma in itertools.permutations(k.order):
                moved = reorder(k, sigma, FERMIONIC_PHASE)
                red = partial_trace(
                    density_matrix(moved, canonical=False),
                    {"b", "d"},
                    TraceConvention.CANONICAL,
                )
                assert np.allclose(red.mat, base.mat, atol=1e-12)

    def test_naive_non_invariance_witness(self, phi):
        abc = partial_trace(
            density_matrix(phi, canonical=False), {"a", "b"}, TraceConvention.NAIVE
        )
        acb = partial_trace(
            density_matrix(reorder(phi, ("a", "c", "b"), NAIVE_PHASE), canonical=False),
            {"a", "b"},
            TraceConvention.NAIVE,
        )
        assert np.max(np.abs(abc.mat - acb.mat)) > 0.1

    def test_traced_mode_internal_order_is_irrelevant(self, rng):
        # CANONICAL puts traced modes rightmost in sorted order; any relative
        # order of the traced block must give the same answer.
        from carfock.reduce import DensityMatrix

        k = random_ket(rng, "abcd")
        dm = density_matrix(k)
        base = partial_trace(dm, {"a"}, TraceConvention.CANONICAL)
        for traced_perm in itertools.permutations("bcd"):
            target = ("a",) + traced_perm
            arranged = reorder_dm(dm, target, FERMIONIC_PHASE)
            a = arranged.mat.reshape(2, 8, 2, 8)
            manual = np.einsum("itjt->ij", a)
            assert np.allclose(manual, base.mat, atol=1e-12)


class TestEntropyPurityNegativity:
    def test_projector_entropy_zero(self, phi):
        red = partial_trace(density_matrix(phi), {"a", "b"}, TraceConvention.CANONICAL)
        assert von_neumann_entropy(red) == pytest.approx(0.0, abs=1e-9)
        assert purity(red) == pytest.approx(1.0, abs=1e-10)

    def test_separable_mixture_entropy_one_bit(self):
        dm = DensityMatrix(("a", "b"), SEPARABLE.astype(complex))
        assert von_neumann_entropy(dm) == pytest.approx(1.0, abs=1e-9)
        assert purity(dm) == pytest.approx(0.5, abs=1e-12)

    def test_reduction_to_single_mode_is_maximally_mixed(self, phi):
        red = partial_trace(density_matrix(phi), {"a"}, TraceConvention.CANONICAL)
        assert np.allclose(red.mat, np.eye(2) / 2, atol=1e-12)
        assert von_neumann_entropy(red) == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed_purity(self):
        dm = DensityMatrix(("a", "b"), np.eye(4, dtype=complex) / 4)
        assert purity(dm) == pytest.approx(0.25, abs=1e-12)

    def test_positivity_error(self):
        dm = DensityMatrix(("a",), np.diag([1.5, -0.5]).astype(complex))
        with pytest.raises(PositivityError):
            von_neumann_entropy(dm)

    def test_entropy_additive_on_products(self, rng):
        for _ in range(5):
            pa = rng.dirichlet(np.ones(2))
            pb = rng.dirichlet(np.ones(4))
            rho_a = np.diag(pa).astype(complex)
            rho_b = np.diag(pb).astype(complex)
            prod = DensityMatrix(("a", "b", "c"), np.kron(rho_a, rho_b))
            sa = von_neumann_entropy(DensityMatrix(("a",), rho_a))
            sb = von_neumann_entropy(DensityMatrix(("b", "c"), rho_b))
            assert von_neumann_entropy(prod) == pytest.approx(sa + sb, abs=1e-9)

    def test_bell_projector_negativity(self):
        dm = DensityMatrix(("a", "b"), BELL_HALF.astype(complex))
        assert negativity(dm, ({"a"}, {"b"})) == pytest.approx(0.5, abs=1e-10)
        # partial-transpose spectrum {1/2, 1/2, 1/2, -1/2} by direct check
        pt = BELL_HALF.copy()
        pt[int("11", 2), int("00", 2)] = pt[int("10", 2), int("01", 2)]
        pt[int("00", 2), int("11", 2)] = pt[int("01", 2), int("10", 2)]
        pt[int("10", 2), int("01", 2)] = 0.0
        pt[int("01", 2), int("10", 2)] = 0.0
        assert sorted(np.linalg.eigvalsh(pt)) == pytest.approx(
            [-0.5, 0.5, 0.5, 0.5], abs=1e-12
        )

    def test_product_state_negativity_zero(self):
        dm = DensityMatrix(("a", "b"), SEPARABLE.astype(complex))
        assert negativity(dm, ({"a"}, {"b"})) == pytest.approx(0.0, abs=1e-10)
        vac = density_matrix(make_ket("ab", [("00", 1.0)]))
        assert negativity(vac, ({"a"}, {"b"})) == pytest.approx(0.0, abs=1e-12)

    def test_partition_errors(self, phi):
        dm = density_matrix(phi)
        with pytest.raises(PartitionError):
            negativity(dm, ({"a"}, {"b"}))
        with pytest.raises(PartitionError):
            negativity(dm, ({"a", "b"}, {"b", "c"}))

    def test_spectrum_invariant_across_orderings(self, rng):
        from carfock import eig_hermitian

        k = random_ket(rng, "abcd")
        spectra = []
        for sigma in itertools.permutations(k.order):
            red = partial_trace(
                density_matrix(reorder(k, sigma, FERMIONIC_PHASE), canonical=False),
                {"a", "b"},
                TraceConvention.CANONICAL,
            )
            spectra.append(eig_hermitian(red.mat).eigenvalues)
        for s in spectra[1:]:
            assert np.allclose(s, spectra[0], atol=1e-10)
