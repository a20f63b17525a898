import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohwit import (
    DensityMatrix,
    IncoherentState,
    InvalidStateError,
    NotHermitianError,
    OutOfIntervalError,
    Witness,
    canonical_coherent,
    canonical_witness,
    generator_witness,
    incoherent_with_value,
    l1_coherence,
    sample_ginibre,
    sample_hermitian,
    sample_incoherent,
    trace_product,
)


class TestDensityMatrix:
    def test_valid_state(self):
        rho = DensityMatrix(np.eye(2, dtype=complex) / 2)
        assert rho.dim == 2
        assert rho.min_eigenvalue == pytest.approx(0.5)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))

    def test_rejects_bad_trace(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.eye(2, dtype=complex))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.diag([1.5, -0.5]).astype(complex))

    def test_matrix_is_read_only(self):
        rho = DensityMatrix(np.eye(2, dtype=complex) / 2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0

    def test_accepts_roundoff_negative_eigenvalue_and_clamps(self):
        rho = DensityMatrix(np.diag([1.0 + 5e-10, -5e-10]).astype(complex))
        assert rho.min_eigenvalue == 0.0


class TestIncoherentState:
    def test_valid(self):
        delta = IncoherentState(np.array([0.25, 0.75]))
        assert delta.dim == 2
        assert l1_coherence(delta.as_density_matrix()) == 0.0

    def test_rejects_negative(self):
        with pytest.raises(InvalidStateError):
            IncoherentState(np.array([1.2, -0.2]))

    def test_rejects_bad_sum(self):
        with pytest.raises(InvalidStateError):
            IncoherentState(np.array([0.5, 0.6]))


def test_l1_maximally_mixed_is_zero():
    for d in (2, 3, 5):
        assert l1_coherence(DensityMatrix(np.eye(d, dtype=complex) / d)) == 0.0


def test_l1_plus_state():
    assert l1_coherence(DensityMatrix(np.full((2, 2), 0.5, dtype=complex))) == pytest.approx(1.0)


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_l1_canonical_coherent(d):
    assert l1_coherence(canonical_coherent(d)) == pytest.approx(2.0 / d, abs=1e-15)


def test_canonical_coherent_matrices():
    assert np.allclose(canonical_coherent(2).matrix, np.full((2, 2), 0.5))
    want = np.eye(3) / 3
    want[0, 1] = want[1, 0] = 1 / 3
    assert np.allclose(canonical_coherent(3).matrix, want)


def test_canonical_coherent_valid_up_to_64():
    for d in range(2, 65):
        canonical_coherent(d)  # construction validates


class TestGinibre:
    def test_satisfies_state_invariants(self):
        for d in (2, 3, 5):
            sample_ginibre(d, 123)  # construction validates

    def test_deterministic_per_seed(self):
        a = sample_ginibre(3, 42)
        b = sample_ginibre(3, 42)
        assert np.array_equal(a.matrix, b.matrix)
        c = sample_ginibre(3, 43)
        assert not np.array_equal(a.matrix, c.matrix)

    def test_almost_surely_coherent(self):
        n = sum(1 for t in range(1000) if l1_coherence(sample_ginibre(3, 50_000 + t)) > 1e-6)
        assert n == 1000


class TestSampleIncoherent:
    def test_simplex(self):
        for t in range(50):
            delta = sample_incoherent(4, t)
            assert abs(delta.probs.sum() - 1.0) <= 1e-12
            assert np.all(delta.probs >= 0)

    def test_deterministic_per_seed(self):
        assert np.array_equal(sample_incoherent(5, 9).probs, sample_incoherent(5, 9).probs)

    def test_diagonal_embedding_has_zero_l1(self):
        assert l1_coherence(sample_incoherent(3, 1).as_density_matrix()) == 0.0


class TestIncoherentWithValue:
    def test_two_point_weights(self):
        w = canonical_witness(2, 0.0, 1.0)
        delta = incoherent_with_value(w, 0.25)
        # diagonal of the witness is (1, 0): minimizer at index 1, maximizer at 0
        assert delta.probs[1] == pytest.approx(0.75)
        assert delta.probs[0] == pytest.approx(0.25)
        value = trace_product(w.matrix, delta.as_density_matrix().matrix).real
        assert value == pytest.approx(0.25, abs=1e-12)

    def test_degenerate_interval_uses_uniform(self):
        w = generator_witness(4, 2.0, [0.0] * 15)  # all diagonals K/d = 0.5
        delta = incoherent_with_value(w, 0.5)
        assert np.allclose(delta.probs, 0.25)
        value = trace_product(w.matrix, delta.as_density_matrix().matrix).real
        assert value == pytest.approx(0.5, abs=1e-12)

    def test_endpoint_target_concentrates_on_maximizer(self):
        w = Witness(np.diag([3.0, -2.0, 5.0]).astype(complex))
        delta = incoherent_with_value(w, 5.0)
        assert np.array_equal(delta.probs, [0.0, 0.0, 1.0])

    def test_out_of_interval_rejected(self):
        w = canonical_witness(2, 0.0, 1.0)
        with pytest.raises(OutOfIntervalError):
            incoherent_with_value(w, 1.5)

    def test_contract_over_random_witnesses(self):
        for t in range(100):
            d = 2 + t % 4
            w = Witness(sample_hermitian(d, 60_000 + t))
            lo, hi = w.interval
            for f in np.linspace(0.0, 1.0, 10):
                target = min(lo + f * (hi - lo), hi)  # guard the f=1 ulp overshoot
                delta = incoherent_with_value(w, target)
                value = trace_product(w.matrix, delta.as_density_matrix().matrix).real
                assert abs(value - target) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**64 - 1),
    f=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
)
def test_incoherent_with_value_property(seed, f):
    d = 2 + seed % 4
    w = Witness(sample_hermitian(d, seed))
    lo, hi = w.interval
    target = min(lo + f * (hi - lo), hi)
    delta = incoherent_with_value(w, target)
    value = trace_product(w.matrix, delta.as_density_matrix().matrix).real
    assert abs(value - target) <= 1e-12
