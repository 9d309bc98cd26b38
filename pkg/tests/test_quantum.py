import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbio.errors import DegenerateInput, DimensionError, InvalidState
from qbio.quantum import (
    HADAMARD,
    X,
    Y,
    DensityMatrix,
    StateVector,
    apply_unitary,
    basis_state,
    bell_state,
    concurrence,
    normalize,
    partial_trace,
    purity,
    random_density,
    random_state,
    random_unitary,
    tensor,
)

S = 1 / np.sqrt(2)


class TestNormalize:
    def test_already_normalized(self):
        assert np.allclose(normalize(StateVector([1, 0])).amplitudes, [1, 0])

    def test_symmetric(self):
        assert np.allclose(normalize(StateVector([1, 1])).amplitudes, [S, S], atol=1e-15)

    def test_zero_vector(self):
        with pytest.raises(DegenerateInput):
            normalize(StateVector([0, 0]))

    @given(st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False), min_size=1, max_size=16))
    def test_unit_norm_and_direction(self, amps):
        v = np.array(amps)
        if np.linalg.norm(v) < 1e-100:
            return
        out = normalize(StateVector(v)).amplitudes
        assert abs(np.linalg.norm(out) - 1) < 1e-10
        # same ray: |<v|out>| = |v|
        assert abs(abs(np.vdot(v, out)) - np.linalg.norm(v)) <= 1e-9 * np.linalg.norm(v)


class TestApplyUnitary:
    def test_identity(self, rng):
        psi = random_state(5, rng)
        assert np.allclose(apply_unitary(np.eye(5), psi).amplitudes, psi.amplitudes)

    def test_hadamard(self):
        assert np.allclose(apply_unitary(HADAMARD, basis_state(2, 0)).amplitudes, [S, S])

    def test_pauli_x(self):
        assert np.allclose(apply_unitary(X, basis_state(2, 0)).amplitudes, [0, 1])

    def test_dim_mismatch(self):
        with pytest.raises(DimensionError):
            apply_unitary(np.eye(3), basis_state(2, 0))

    def test_norm_and_purity_preserved(self, rng):
        for _ in range(100):
            d = int(rng.integers(2, 9))
            U = random_unitary(d, rng)
            psi = random_state(d, rng)
            out = apply_unitary(U, psi)
            assert abs(out.norm() - 1) < 1e-10
            rho = DensityMatrix(U @ np.asarray(random_density(d, rng)) @ U.conj().T)
            assert rho.dim == d
            rho0 = random_density(d, rng)
            rho1 = DensityMatrix(U @ np.asarray(rho0) @ U.conj().T)
            assert abs(purity(rho1) - purity(rho0)) < 1e-9


class TestTensor:
    def test_zero_zero(self):
        assert np.allclose(tensor(basis_state(2, 0), basis_state(2, 0)).amplitudes, [1, 0, 0, 0])

    def test_index_convention(self):
        assert np.allclose(tensor(basis_state(2, 0), basis_state(2, 1)).amplitudes, [0, 1, 0, 0])

    def test_purity_multiplies(self, rng):
        for _ in range(20):
            a = random_density(2, rng)
            b = random_density(3, rng)
            ab = tensor(a, b)
            assert ab.dim == 6
            assert abs(purity(ab) - purity(a) * purity(b)) < 1e-12

    def test_mixed_kinds_rejected(self, rng):
        with pytest.raises(TypeError):
            tensor(basis_state(2, 0), random_density(2, rng))


class TestPartialTrace:
    def test_product_state(self, rng):
        a, b = random_density(2, rng), random_density(3, rng)
        red = partial_trace(tensor(a, b), [2, 3], keep="A")
        assert np.allclose(red.elements, a.elements, atol=1e-12)
        red_b = partial_trace(tensor(a, b), [2, 3], keep="B")
        assert np.allclose(red_b.elements, b.elements, atol=1e-12)

    def test_bell_reduces_to_maximally_mixed(self):
        red = partial_trace(bell_state("phi+").to_density(), [2, 2], keep="A")
        assert np.allclose(red.elements, np.eye(2) / 2)

    def test_bad_dims(self, rng):
        with pytest.raises(DimensionError):
            partial_trace(random_density(4, rng), [3, 2])

    def test_trace_and_positivity_random(self, rng):
        for _ in range(100):
            da, db = (int(x) for x in rng.integers(1, 5, size=2))
            rho = random_density(da * db, rng)
            for keep in ("A", "B"):
                red = partial_trace(rho, [da, db], keep)
                assert abs(red.trace() - rho.trace()) < 1e-12
                assert red.eigenvalues()[-1] >= -1e-12
                assert np.max(np.abs(red.elements - red.elements.conj().T)) < 1e-12


class TestPurity:
    def test_pure(self):
        assert purity(basis_state(2, 0).to_density()) == pytest.approx(1.0, abs=1e-12)

    def test_qubit_mixed(self):
        assert purity(DensityMatrix(np.eye(2) / 2)) == pytest.approx(0.5)

    @pytest.mark.parametrize("d", [1, 3, 7, 16])
    def test_maximally_mixed(self, d):
        assert purity(DensityMatrix(np.eye(d) / d)) == pytest.approx(1 / d)


def werner(p):
    phi = bell_state("phi+").amplitudes
    return p * np.outer(phi, phi.conj()) + (1 - p) * np.eye(4) / 4


def concurrence_direct(rho):
    """Square roots of the eigenvalues of ρ·(Y⊗Y)ρ*(Y⊗Y), from a non-Hermitian eig."""
    yy = np.kron(Y, Y)
    lam = np.sqrt(np.abs(np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)))
    lam = np.sort(lam)[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


class TestConcurrence:
    def test_bell(self):
        assert concurrence(bell_state("phi+").to_density()) == pytest.approx(1.0, abs=1e-12)

    def test_product(self):
        assert concurrence(basis_state(4, 0).to_density()) == pytest.approx(0.0, abs=1e-12)

    def test_werner_half(self):
        rho = DensityMatrix(werner(0.5))
        assert concurrence(rho) == pytest.approx(0.25, abs=1e-12)
        assert concurrence_direct(werner(0.5)) == pytest.approx(0.25, abs=1e-10)

    @pytest.mark.parametrize("p", np.linspace(0, 1, 11))
    def test_werner_closed_form(self, p):
        assert concurrence(DensityMatrix(werner(p))) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-10)

    def test_matches_direct_on_random_states(self, rng):
        for _ in range(50):
            rho = random_density(4, rng, rank=int(rng.integers(1, 5)))
            assert concurrence(rho) == pytest.approx(concurrence_direct(np.asarray(rho)), abs=1e-7)

    def test_local_unitary_invariance(self, rng):
        for _ in range(100):
            rho = random_density(4, rng, rank=int(rng.integers(1, 3)))
            U = np.kron(random_unitary(2, rng), random_unitary(2, rng))
            rotated = DensityMatrix(U @ np.asarray(rho) @ U.conj().T)
            assert abs(concurrence(rotated) - concurrence(rho)) < 1e-8

    def test_wrong_dim(self, rng):
        with pytest.raises(DimensionError):
            concurrence(random_density(3, rng))


class TestDensityMatrixInvariants:
    def test_snaps_small_drift(self):
        rho = np.eye(2, dtype=complex) / 2
        rho[0, 1] = 1e-10
        dm = DensityMatrix(rho)
        assert np.max(np.abs(dm.elements - dm.elements.conj().T)) == 0.0

    def test_rejects_large_drift(self):
        rho = np.eye(2, dtype=complex) / 2
        rho[0, 1] = 1e-6
        with pytest.raises(InvalidState):
            DensityMatrix(rho)

    def test_rejects_bad_trace(self):
        with pytest.raises(InvalidState):
            DensityMatrix(np.eye(2))

    def test_rejects_negative(self):
        with pytest.raises(InvalidState):
            DensityMatrix(np.diag([1.5, -0.5]))

    def test_immutable(self, rng):
        rho = random_density(2, rng)
        with pytest.raises(ValueError):
            rho.elements[0, 0] = 0
        with pytest.raises(AttributeError):
            rho.elements = None

    def test_dimension_caps(self):
        with pytest.raises(DimensionError):
            DensityMatrix(np.eye(257) / 257)
        with pytest.raises(DimensionError):
            StateVector(np.ones(65537))

    def test_eigenvalues_descending(self, rng):
        ev = random_density(6, rng).eigenvalues()
        assert np.all(np.diff(ev) <= 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_density_valid(seed):
    r = np.random.default_rng(seed)
    rho = random_density(int(r.integers(1, 9)), r)
    assert abs(rho.trace() - 1) < 1e-9
    assert rho.eigenvalues()[-1] >= -1e-8
