"""Dense finite-dimensional states and operators.

Everything here works on plain complex numpy arrays wrapped in two small
immutable containers, :class:`StateVector` and :class:`DensityMatrix`.
Index ordering for composite systems follows ``numpy.kron``: the left
factor is the most significant index.
"""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from .errors import DegenerateInput, DimensionError, InvalidState

MAX_STATE_DIM = 65536
MAX_DENSITY_DIM = 256

HERMITIAN_SNAP = 1e-12
HERMITIAN_MAX_DRIFT = 1e-8
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-8
UNITARY_TOL = 1e-10

# single-qubit constants
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


class StateVector:
    """Pure state amplitudes. Not normalized automatically; see :func:`normalize`."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes):
        amps = np.asarray(amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 1:
            raise DimensionError(f"state vector must be 1-d and nonempty, got shape {amps.shape}")
        if amps.size > MAX_STATE_DIM:
            raise DimensionError(f"state dimension {amps.size} exceeds cap {MAX_STATE_DIM}")
        if not np.all(np.isfinite(amps)):
            raise InvalidState("non-finite amplitude")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def to_density(self) -> "DensityMatrix":
        psi = normalize(self).amplitudes
        return DensityMatrix(np.outer(psi, psi.conj()))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim})"


class DensityMatrix:
    """Validated density matrix.

    On construction the Hermitian part is snapped back when floating-point
    drift lies in (1e-12, 1e-8]; larger drift, trace error above 1e-9 or an
    eigenvalue below -1e-8 raises :class:`InvalidState`.
    """

    __slots__ = ("elements",)

    def __init__(self, elements, check: bool = True):
        rho = np.array(elements, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 1:
            raise DimensionError(f"density matrix must be square, got shape {rho.shape}")
        if rho.shape[0] > MAX_DENSITY_DIM:
            raise DimensionError(f"density dimension {rho.shape[0]} exceeds cap {MAX_DENSITY_DIM}")
        if not np.all(np.isfinite(rho)):
            raise InvalidState("non-finite density-matrix element")
        rho = enforce_hermitian(rho)
        if check:
            tr = np.trace(rho).real
            if abs(tr - 1.0) > TRACE_TOL:
                raise InvalidState(f"trace {tr!r} differs from 1 by more than {TRACE_TOL}")
            lmin = np.linalg.eigvalsh(rho)[0]
            if lmin < -POSITIVITY_TOL:
                raise InvalidState(f"minimum eigenvalue {lmin!r} below -{POSITIVITY_TOL}")
        object.__setattr__(self, "elements", _frozen(rho))

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    @property
    def dim(self) -> int:
        return self.elements.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.elements).real)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues sorted descending (stable on ties)."""
        return sorted_descending(np.linalg.eigvalsh(self.elements))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.elements, dtype=dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


State = Union[StateVector, DensityMatrix]


def sorted_descending(values) -> np.ndarray:
    values = np.asarray(values)
    return values[np.argsort(-values, kind="stable")]


def hermitian_drift(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def enforce_hermitian(a: np.ndarray) -> np.ndarray:
    drift = hermitian_drift(a)
    if drift > HERMITIAN_MAX_DRIFT:
        raise InvalidState(f"Hermiticity drift {drift:.3e} exceeds {HERMITIAN_MAX_DRIFT}")
    if drift > HERMITIAN_SNAP:
        a = 0.5 * (a + a.conj().T)
    return a


def hermitian_op(matrix) -> np.ndarray:
    """Return ``matrix`` as a complex array after checking it is Hermitian."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"operator must be square, got shape {m.shape}")
    if hermitian_drift(m) > UNITARY_TOL:
        raise InvalidState("operator is not Hermitian")
    return m


def unitary_op(matrix) -> np.ndarray:
    """Return ``matrix`` as a complex array after checking U†U = I."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"operator must be square, got shape {m.shape}")
    err = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
    if err > UNITARY_TOL:
        raise InvalidState(f"operator is not unitary (|U†U - I| = {err:.3e})")
    return m


def basis_state(dim: int, index: int) -> StateVector:
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def normalize(psi: StateVector) -> StateVector:
    amps = np.asarray(psi, dtype=complex)
    nrm = np.linalg.norm(amps)
    if nrm == 0.0:
        raise DegenerateInput("cannot normalize the zero vector")
    return StateVector(amps / nrm)


def apply_unitary(U, psi: StateVector) -> StateVector:
    U = np.asarray(U, dtype=complex)
    amps = np.asarray(psi)
    if U.shape != (amps.size, amps.size):
        raise DimensionError(f"operator shape {U.shape} does not act on dimension {amps.size}")
    return StateVector(U @ amps)


def tensor(a: State, b: State) -> State:
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(np.kron(a.elements, b.elements))
    raise TypeError("tensor operands must both be StateVector or both DensityMatrix")


def partial_trace(rho: DensityMatrix, dims: Sequence[int], keep: str = "A") -> DensityMatrix:
    """Reduce a bipartite state to subsystem ``keep`` ('A' = left factor)."""
    d_a, d_b = (int(d) for d in dims)
    r = np.asarray(rho)
    if d_a < 1 or d_b < 1 or d_a * d_b != r.shape[0]:
        raise DimensionError(f"dims {dims} do not factor dimension {r.shape[0]}")
    t = r.reshape(d_a, d_b, d_a, d_b)
    key = keep.upper()
    if key == "A":
        out = np.einsum("ijkj->ik", t)
    elif key == "B":
        out = np.einsum("ijil->jl", t)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityMatrix(out)


def purity(rho: DensityMatrix) -> float:
    r = np.asarray(rho)
    # Tr(ρ²) = Σ|ρ_ij|² for Hermitian ρ
    return float(np.sum(np.abs(r) ** 2))


def fidelity_pure(rho: DensityMatrix, psi: StateVector) -> float:
    """⟨ψ|ρ|ψ⟩ for a normalized pure reference state."""
    v = normalize(psi).amplitudes
    return float(np.real(v.conj() @ np.asarray(rho) @ v))


_YY = np.kron(Y, Y)


def _psd_sqrt(a: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(a)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit state.

    The square roots of the eigenvalues of ρ·ρ̃, with ρ̃ = (Y⊗Y)ρ*(Y⊗Y), are
    the singular values of √ρ·√ρ̃. Taking singular values directly avoids the
    square root of near-zero eigenvalues, which would turn 1e-16 roundoff into
    1e-8 errors for rank-deficient states.
    """
    r = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4):
        raise DimensionError(f"concurrence needs a two-qubit (4x4) state, got {r.shape}")
    s = _psd_sqrt(r)
    s_flipped = _YY @ s.conj() @ _YY
    lam = sorted_descending(np.linalg.svd(s @ s_flipped, compute_uv=False))
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def bell_state(kind: str = "phi+") -> StateVector:
    s = 1 / np.sqrt(2)
    table = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    try:
        return StateVector(table[kind])
    except KeyError:
        raise ValueError(f"unknown Bell state {kind!r}") from None


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Random valid density matrix A†A / Tr(A†A) with complex Gaussian A."""
    k = dim if rank is None else rank
    a = rng.normal(size=(k, dim)) + 1j * rng.normal(size=(k, dim))
    rho = a.conj().T @ a
    return DensityMatrix(rho / np.trace(rho).real)


def random_state(dim: int, rng: np.random.Generator) -> StateVector:
    return normalize(StateVector(rng.normal(size=dim) + 1j * rng.normal(size=dim)))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
