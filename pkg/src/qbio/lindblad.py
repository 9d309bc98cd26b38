"""Markovian open-system dynamics and environment-assisted coherence.

The generator is the GKSL form with explicit rates,

    dρ/dt = −i[H, ρ] + Σ_k γ_k (L_k ρ L_k† − ½{L_k† L_k, ρ}),

in model units with ħ = 1. With this convention a single jump L = σ_z at
rate γ damps qubit coherence as e^{−2γt}.

Integration is classical fixed-step RK4. For a time-independent linear
generator one RK4 step is the polynomial 1 + hℒ + (hℒ)²/2 + (hℒ)³/6 + (hℒ)⁴/24
of the Liouvillian, so for small systems the step is built once as a
superoperator and raised to the recording stride. Both paths produce the
same RK4 iterate.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import ConfigError, DimensionError, IntegrationError
from .quantum import (
    DensityMatrix,
    StateVector,
    X,
    Z,
    I2,
    concurrence,
    enforce_hermitian,
    hermitian_op,
    normalize,
)

TRACE_FAIL = 1e-6
MAX_STEPS = 10**7
SUPEROP_MAX_DIM = 16
DEFAULT_SAMPLES = 1000


@dataclass(frozen=True)
class LindbladModel:
    H: np.ndarray
    jumps: tuple = ()

    def __post_init__(self):
        Hm = hermitian_op(self.H)
        d = Hm.shape[0]
        clean = []
        for op, rate in self.jumps:
            L = np.asarray(op, dtype=complex)
            if L.shape != (d, d):
                raise DimensionError(f"jump operator shape {L.shape} does not match H ({d}x{d})")
            rate = float(rate)
            if not (math.isfinite(rate) and rate >= 0):
                raise ConfigError(f"jump rates must be finite and nonnegative, got {rate!r}")
            clean.append((L, rate))
        object.__setattr__(self, "H", Hm)
        object.__setattr__(self, "jumps", tuple(clean))

    @property
    def dim(self) -> int:
        return self.H.shape[0]

    def rhs(self, rho: np.ndarray) -> np.ndarray:
        out = -1j * (self.H @ rho - rho @ self.H)
        for L, g in self.jumps:
            if g == 0.0:
                continue
            Ld = L.conj().T
            LdL = Ld @ L
            out += g * (L @ rho @ Ld - 0.5 * (LdL @ rho + rho @ LdL))
        return out

    def liouvillian(self) -> np.ndarray:
        """Superoperator acting on row-major vec(ρ): vec(AρB) = (A ⊗ Bᵀ) vec(ρ)."""
        d = self.dim
        eye = np.eye(d)
        sup = -1j * (np.kron(self.H, eye) - np.kron(eye, self.H.T))
        for L, g in self.jumps:
            if g == 0.0:
                continue
            LdL = L.conj().T @ L
            sup += g * (np.kron(L, L.conj()) - 0.5 * (np.kron(LdL, eye) + np.kron(eye, LdL.T)))
        return sup

    def frequency_scale(self) -> float:
        w = np.linalg.eigvalsh(self.H)
        return float(w[-1] - w[0])

    def rate_scale(self) -> float:
        """Largest γ_k·‖L_k‖², the fastest dissipative rate in the model."""
        rates = [g * np.linalg.norm(L, 2) ** 2 for L, g in self.jumps]
        return float(max(rates, default=0.0))


def default_dt(model: LindbladModel, t_end: float) -> float:
    scales = [s for s in (model.frequency_scale(), model.rate_scale()) if s > 0]
    if not scales:
        return t_end / 1000.0
    return min(t_end, 0.01 / max(scales))


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid on [0, t_end]; ``record_every`` steps between samples."""

    t_end: float
    dt: float
    record_every: int | None = None

    def __post_init__(self):
        if not (self.t_end > 0 and self.dt > 0):
            raise ConfigError("t_end and dt must be positive")
        if self.dt > self.t_end * (1 + 1e-12):
            raise ConfigError(f"dt={self.dt} exceeds t_end={self.t_end}")
        if self.t_end / self.dt > MAX_STEPS * (1 + 1e-9):
            raise ConfigError(f"t_end/dt exceeds {MAX_STEPS} steps")
        if self.record_every is not None and self.record_every < 1:
            raise ConfigError("record_every must be at least 1")

    @property
    def n_steps(self) -> int:
        return max(1, math.ceil(self.t_end / self.dt - 1e-9))

    @property
    def step(self) -> float:
        """Effective step, adjusted so the grid lands exactly on t_end."""
        return self.t_end / self.n_steps

    @property
    def stride(self) -> int:
        if self.record_every is not None:
            return self.record_every
        return max(1, math.ceil(self.n_steps / DEFAULT_SAMPLES))

    def sample_steps(self) -> list[int]:
        steps = list(range(0, self.n_steps, self.stride))
        steps.append(self.n_steps)
        return steps


Observable = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    diagnostics: Mapping[str, np.ndarray] = field(default_factory=dict)
    labels: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for a in (self.times, self.states, *self.diagnostics.values()):
            a.setflags(write=False)

    def __len__(self) -> int:
        return self.times.size

    def state(self, i: int) -> DensityMatrix:
        return DensityMatrix(self.states[i])

    @property
    def final(self) -> DensityMatrix:
        return self.state(-1)

    def columns(self) -> list[str]:
        return ["t", *self.diagnostics]

    def to_csv(self, target=None, header: Sequence[str] = ()) -> str:
        """Write ``t, trace, purity, min_eig, <observables>`` as CSV.

        Lines in ``header`` are emitted first as ``# `` comments. Returns the
        CSV text; also written to ``target`` (path or file object) if given.
        """
        buf = io.StringIO()
        for line in header:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        cols = self.columns()
        w.writerow(cols)
        data = [self.times, *self.diagnostics.values()]
        for row in zip(*data):
            w.writerow([format_number(v) for v in row])
        text = buf.getvalue()
        if isinstance(target, (str, bytes)) or hasattr(target, "__fspath__"):
            with open(target, "w", newline="") as fh:
                fh.write(text)
        elif target is not None:
            target.write(text)
        return text


def format_number(v: float) -> str:
    return f"{float(v):.8e}"


def rk4_step(model: LindbladModel, rho: np.ndarray, h: float) -> np.ndarray:
    k1 = model.rhs(rho)
    k2 = model.rhs(rho + 0.5 * h * k1)
    k3 = model.rhs(rho + 0.5 * h * k2)
    k4 = model.rhs(rho + h * k3)
    return rho + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_propagator(model: LindbladModel, h: float) -> np.ndarray:
    """One RK4 step as a d²×d² matrix acting on row-major vec(ρ)."""
    A = h * model.liouvillian()
    n = A.shape[0]
    term = np.eye(n, dtype=complex)
    P = term.copy()
    for k in range(1, 5):
        term = term @ A / k
        P = P + term
    return P


def _as_rho(rho0) -> np.ndarray:
    if isinstance(rho0, StateVector):
        return np.asarray(rho0.to_density())
    return np.asarray(DensityMatrix(rho0))


def _observable_fn(obs) -> Observable:
    if callable(obs):
        return obs
    O = np.asarray(obs, dtype=complex)
    return lambda rho: float(np.real(np.trace(rho @ O)))


def evolve_lindblad(
    model: LindbladModel,
    rho0,
    grid: TimeGrid | None = None,
    *,
    t_end: float | None = None,
    observables: Mapping[str, object] | None = None,
    method: str = "auto",
) -> Trajectory:
    """Integrate the master equation with fixed-step RK4.

    ``grid`` may be omitted in favour of ``t_end`` with the default step
    (0.01 over the fastest coherent or dissipative scale). ``observables``
    maps column names to operators (recorded as Re Tr(ρO)) or to callables
    on the density-matrix array. ``method`` is ``"auto"``, ``"propagator"``
    or ``"stepwise"``.
    """
    if grid is None:
        if t_end is None:
            raise ConfigError("either grid or t_end is required")
        grid = TimeGrid(t_end, default_dt(model, t_end))
    rho = _as_rho(rho0)
    d = model.dim
    if rho.shape != (d, d):
        raise DimensionError(f"initial state dim {rho.shape[0]} does not match model dim {d}")
    if method == "auto":
        method = "propagator" if d <= SUPEROP_MAX_DIM else "stepwise"
    if method not in ("propagator", "stepwise"):
        raise ConfigError(f"unknown integration method {method!r}")

    obs = {name: _observable_fn(o) for name, o in (observables or {}).items()}
    h = grid.step
    samples = grid.sample_steps()

    states = [rho]
    if method == "propagator":
        P = rk4_propagator(model, h)
        cache: dict[int, np.ndarray] = {}
        v = rho.reshape(-1)
        for prev, cur in zip(samples[:-1], samples[1:]):
            k = cur - prev
            if k not in cache:
                cache[k] = np.linalg.matrix_power(P, k)
            v = cache[k] @ v
            r = _checked(v.reshape(d, d), cur * h)
            v = r.reshape(-1)
            states.append(r)
    else:
        r = rho
        targets = set(samples[1:])
        for n in range(1, grid.n_steps + 1):
            r = _checked(rk4_step(model, r, h), n * h)
            if n in targets:
                states.append(r)

    times = np.array(samples, dtype=float) * h
    times[-1] = grid.t_end
    arr = np.array(states)
    return Trajectory(times, arr, _diagnostics(arr, obs))


def _checked(r: np.ndarray, t: float) -> np.ndarray:
    if not np.all(np.isfinite(r)):
        raise IntegrationError(f"non-finite state at t={t:.6g}; reduce dt")
    tr = np.trace(r).real
    if abs(tr - 1.0) > TRACE_FAIL:
        raise IntegrationError(f"trace drift {abs(tr - 1.0):.3e} at t={t:.6g}; reduce dt")
    # a valid density matrix has |ρ_ij| ≤ 1; growth beyond that is a runaway
    # step even when the trace happens to be conserved (pure dephasing)
    peak = np.max(np.abs(r))
    if peak > 1.0 + TRACE_FAIL:
        raise IntegrationError(f"element magnitude {peak:.3e} exceeds 1 at t={t:.6g}; reduce dt")
    try:
        return enforce_hermitian(r)
    except ValueError as exc:
        raise IntegrationError(f"{exc} at t={t:.6g}; reduce dt") from None


def _diagnostics(states: np.ndarray, obs: Mapping[str, Observable]) -> dict[str, np.ndarray]:
    diag = {
        "trace": np.einsum("nii->n", states).real,
        "purity": np.sum(np.abs(states) ** 2, axis=(1, 2)),
        "min_eig": np.linalg.eigvalsh(states)[:, 0],
    }
    for name, fn in obs.items():
        diag[name] = np.array([fn(r) for r in states], dtype=float)
    return diag


# ---------------------------------------------------------------------------
# qubit dephasing baseline

def dephasing_model(gamma: float, omega: float = 0.0) -> LindbladModel:
    """Qubit with H = (ω/2)σ_z and a single σ_z jump at rate γ."""
    return LindbladModel(0.5 * omega * Z, ((Z, gamma),))


def coherence_abs(rho: np.ndarray) -> float:
    return float(abs(rho[0, 1]))


def dephasing_run(gamma: float, t_end: float, omega: float = 0.0, dt: float | None = None) -> Trajectory:
    """Dephase |+⟩⟨+|; analytically |ρ01(t)| = ½·e^{−2γt}."""
    model = dephasing_model(gamma, omega)
    grid = TimeGrid(t_end, dt or default_dt(model, t_end))
    return evolve_lindblad(
        model,
        normalize(StateVector([1, 1])),
        grid,
        observables={"coherence": coherence_abs},
    )


# ---------------------------------------------------------------------------
# double well

L0, R0, L1, R1 = range(4)
BASIS_LABELS = ("L0", "R0", "L1", "R1")


@dataclass(frozen=True)
class DoubleWellSpec:
    """Two tunnelling doublets split by ``gap``; ``gamma`` couples the bath to position."""

    omega1: float = 1.0
    omega2: float = 1.5
    gap: float = 5.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("omega1", "omega2", "gap", "gamma"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ConfigError(f"{name} must be finite")
        if self.gamma < 0:
            raise ConfigError("gamma must be nonnegative")

    def with_gamma(self, gamma: float) -> "DoubleWellSpec":
        return DoubleWellSpec(self.omega1, self.omega2, self.gap, gamma)


def _proj(i: int, j: int) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[i, j] = 1.0
    return m


POSITION_POINTER = np.diag([1.0, -1.0, 1.0, -1.0]).astype(complex)
BAND_COHERENCE = _proj(L0, L1) + _proj(R0, R1)
BAND_COHERENCE = BAND_COHERENCE + BAND_COHERENCE.conj().T
LEFT_PROJECTOR = np.diag([1.0, 0.0, 1.0, 0.0]).astype(complex)


def double_well_model(spec: DoubleWellSpec) -> LindbladModel:
    """Four-level double well in the basis (L0, R0, L1, R1).

    Each band tunnels between wells at its own flip-flop frequency; the bath
    monitors which well the particle is in, not which band.
    """
    H = (
        -0.5 * spec.omega1 * (_proj(L0, R0) + _proj(R0, L0))
        - 0.5 * spec.omega2 * (_proj(L1, R1) + _proj(R1, L1))
        + spec.gap * (_proj(L1, L1) + _proj(R1, R1))
    )
    return LindbladModel(H, ((POSITION_POINTER, spec.gamma),))


def left_population(rho: np.ndarray) -> float:
    return float(rho[L0, L0].real + rho[L1, L1].real)


def band_coherence(rho: np.ndarray) -> float:
    """2·|ρ_{L0,L1} + ρ_{R0,R1}|: inter-band coherence with the band phase removed."""
    return float(2.0 * abs(rho[L0, L1] + rho[R0, R1]))


def pointer_coherence(rho: np.ndarray) -> float:
    """Left/right coherence summed over both bands."""
    return float(2.0 * (abs(rho[L0, R0]) + abs(rho[L1, R1])))


DOUBLE_WELL_OBSERVABLES = {
    "left_population": left_population,
    "band_coherence": band_coherence,
    "pointer_coherence": pointer_coherence,
}

SYNCHRONY_LABEL = (
    "synchrony index: time-averaged inter-band coherence 2|rho_L0L1 + rho_R0R1| "
    "(an operationalization; the model itself defines no synchrony measure)"
)


def synchronized_state() -> StateVector:
    s = 1 / math.sqrt(2)
    return StateVector([s, 0, s, 0])


def double_well_run(spec: DoubleWellSpec, t_end: float, dt: float | None = None, rho0=None) -> Trajectory:
    model = double_well_model(spec)
    grid = TimeGrid(t_end, dt or default_dt(model, t_end))
    return evolve_lindblad(
        model,
        synchronized_state() if rho0 is None else rho0,
        grid,
        observables=DOUBLE_WELL_OBSERVABLES,
    )


def synchrony_series(traj: Trajectory) -> np.ndarray:
    if traj.states.shape[1:] != (4, 4):
        raise DimensionError("synchrony needs a double-well (4-level) trajectory")
    return np.array([band_coherence(r) for r in traj.states])


def synchrony_index(
    traj: Trajectory,
    spec: DoubleWellSpec | None = None,
    window: tuple[float, float] | None = None,
) -> float:
    """Time-averaged inter-band coherence over ``window`` (default: whole run).

    Normalized so the ideal initial superposition (|L0⟩+|L1⟩)/√2 scores 1.
    Values near 1 mean the two flip-flop oscillations stay in phase.
    """
    s = synchrony_series(traj)
    t = traj.times
    if window is not None:
        mask = (t >= window[0]) & (t <= window[1])
        t, s = t[mask], s[mask]
    if t.size < 2:
        return float(s[0]) if s.size else float("nan")
    return float(np.trapezoid(s, t) / (t[-1] - t[0]))


def beat_window(spec: DoubleWellSpec, level: float = 0.5) -> tuple[float, float]:
    """First interval where the γ=0 index |cos(Δω·t/2)| drops below ``level``."""
    dw = abs(spec.omega1 - spec.omega2)
    if dw == 0:
        raise ConfigError("equal flip-flop frequencies never dephase")
    a = math.acos(level)
    return 2 * a / dw, 2 * (math.pi - a) / dw


def zeno_survival(
    gamma: float,
    spec: DoubleWellSpec,
    t: float,
    dt: float | None = None,
) -> float:
    """⟨L0|ρ(t)|L0⟩ starting from |L0⟩ with bath coupling ``gamma``."""
    if not t > 0:
        raise ConfigError("t must be positive")
    model = double_well_model(spec.with_gamma(gamma))
    h = dt or default_dt(model, t)
    grid = TimeGrid(t, h, record_every=TimeGrid(t, h).n_steps)
    ground_left = np.zeros(4)
    ground_left[L0] = 1.0
    traj = evolve_lindblad(model, StateVector(ground_left), grid)
    return float(traj.states[-1][L0, L0].real)


def zeno_run(gamma: float, spec: DoubleWellSpec, t_end: float, dt: float | None = None) -> Trajectory:
    model = double_well_model(spec.with_gamma(gamma))
    grid = TimeGrid(t_end, dt or default_dt(model, t_end))
    start = np.zeros(4)
    start[L0] = 1.0
    return evolve_lindblad(
        model,
        StateVector(start),
        grid,
        observables={"survival": lambda r: float(r[L0, L0].real), **DOUBLE_WELL_OBSERVABLES},
    )


# ---------------------------------------------------------------------------
# decoherence-free subspace

SINGLET = StateVector(np.array([0, 1, -1, 0]) / math.sqrt(2))
COLLECTIVE_Z = np.kron(Z, I2) + np.kron(I2, Z)


def dfs_model(gamma: float, omega: float, collective: bool) -> LindbladModel:
    H = 0.5 * omega * (np.kron(X, I2) + np.kron(I2, X))
    if collective:
        jumps = ((COLLECTIVE_Z, gamma),)
    else:
        jumps = ((np.kron(Z, I2), gamma), (np.kron(I2, Z), gamma))
    return LindbladModel(H, jumps)


def singlet_fidelity(rho: np.ndarray) -> float:
    v = SINGLET.amplitudes
    return float(np.real(v.conj() @ rho @ v))


@dataclass(frozen=True)
class ConcurrenceSeries:
    times: np.ndarray
    concurrence: np.ndarray
    trajectory: Trajectory


def dfs_entanglement_demo(
    gamma: float,
    omega: float,
    t_end: float,
    collective: bool,
    dt: float | None = None,
) -> ConcurrenceSeries:
    """Concurrence of an initially singlet pair of left/right qubits over time.

    Collective dephasing (one Z⊗I + I⊗Z channel) leaves the singlet in the
    kernel of the jump operator; independent dephasing does not.
    """
    if gamma < 0 or t_end < 0:
        raise ConfigError("gamma and t_end must be nonnegative")
    model = dfs_model(gamma, omega, collective)
    if t_end == 0:
        rho = np.asarray(SINGLET.to_density())
        traj = Trajectory(np.zeros(1), rho[None], {"concurrence": np.array([concurrence(rho)])})
        return ConcurrenceSeries(traj.times, traj.diagnostics["concurrence"], traj)
    grid = TimeGrid(t_end, dt or default_dt(model, t_end))
    traj = evolve_lindblad(
        model,
        SINGLET,
        grid,
        observables={"concurrence": concurrence, "singlet_fidelity": singlet_fidelity},
    )
    return ConcurrenceSeries(traj.times, traj.diagnostics["concurrence"], traj)
