"""Search for rare replicators in a toy sequence space.

Four models are compared on the same space of M = b^n sequences with a
marked replicator subset R:

* classical chance: i.i.d. uniform draws until a replicator turns up;
* Grover amplitude amplification using the shared solver in
  :mod:`qbio.grover`;
* a decoherence-triggered walk: the uniform superposition hops between
  sequences one mutation apart and leaks norm wherever a replicator sits,
  modelling detection by the environment;
* pre/post-selected measurement probabilities (the ABL rule).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np
from scipy import sparse

from .errors import ConfigError, DegenerateInput, DimensionError, InconsistentSelection
from .grover import GroverProblem, optimal_iterations, run_grover
from .quantum import MAX_STATE_DIM, StateVector, hermitian_op, normalize


@dataclass(frozen=True)
class SequenceSpace:
    alphabet_size: int = 2
    length: int = 8

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise ConfigError("alphabet_size must be at least 2")
        if self.length < 1:
            raise ConfigError("length must be at least 1")
        if self.size > MAX_STATE_DIM:
            raise DimensionError(f"M = {self.alphabet_size}^{self.length} exceeds cap {MAX_STATE_DIM}")

    @property
    def size(self) -> int:
        return self.alphabet_size**self.length


class ReplicatorSet(frozenset):
    """Marked sequence indices; use :meth:`lowest` or :meth:`everything` to build."""

    @classmethod
    def of(cls, space: SequenceSpace, indices: Iterable[int]) -> "ReplicatorSet":
        r = cls(int(i) for i in indices)
        if not r:
            raise DegenerateInput("replicator set is empty")
        if min(r) < 0 or max(r) >= space.size:
            raise DegenerateInput(f"replicator indices must lie in [0, {space.size})")
        return r

    @classmethod
    def lowest(cls, space: SequenceSpace, count: int) -> "ReplicatorSet":
        if not 1 <= count <= space.size:
            raise DegenerateInput(f"need 1 <= count <= {space.size}, got {count}")
        return cls.of(space, range(count))

    @classmethod
    def everything(cls, space: SequenceSpace) -> "ReplicatorSet":
        return cls.of(space, range(space.size))

    def mask(self, space: SequenceSpace) -> np.ndarray:
        m = np.zeros(space.size, dtype=bool)
        m[sorted(self)] = True
        return m


# ---------------------------------------------------------------------------
# classical baseline

def task_rng(seed: int, task: int) -> np.random.Generator:
    """Counter-based Philox stream keyed by (seed, task index)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(task)])))


class ClassicalResult(NamedTuple):
    hit_count: int
    mean_hitting_time: float
    std_error: float
    hitting_times: np.ndarray


TRIALS_PER_TASK = 1000


def _draw_until_hit(rng: np.random.Generator, mask: np.ndarray, n: int, p_hit: float, max_draws):
    M = mask.size
    times = np.zeros(n, dtype=np.int64)
    pending = np.arange(n)
    offset = 0
    block = int(min(max(16, math.ceil(2.0 / p_hit)), max(16, 4_000_000 // max(n, 1))))
    while pending.size and (max_draws is None or offset < max_draws):
        draws = rng.integers(0, M, size=(pending.size, block))
        hits = mask[draws]
        found = hits.any(axis=1)
        first = hits.argmax(axis=1) + 1
        times[pending[found]] = offset + first[found]
        pending = pending[~found]
        offset += block
    if max_draws is not None:
        times[times > max_draws] = 0
    return times


def classical_search(
    space: SequenceSpace,
    R: ReplicatorSet,
    trials: int,
    seed: int = 0,
    *,
    max_draws: int | None = None,
    workers: int = 1,
) -> ClassicalResult:
    """Repeat uniform random sampling until the first replicator is drawn.

    Trials are split into fixed-size tasks, each with its own RNG stream
    derived from (seed, task index), so results do not depend on
    ``workers``. With ``max_draws`` set, unsuccessful trials are censored and
    excluded from the mean.
    """
    if trials < 1:
        raise DegenerateInput("trials must be at least 1")
    mask = R.mask(space)
    p_hit = len(R) / space.size
    sizes = [TRIALS_PER_TASK] * (trials // TRIALS_PER_TASK)
    if trials % TRIALS_PER_TASK:
        sizes.append(trials % TRIALS_PER_TASK)

    def task(i):
        return _draw_until_hit(task_rng(seed, i), mask, sizes[i], p_hit, max_draws)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(task, range(len(sizes))))
    else:
        parts = [task(i) for i in range(len(sizes))]
    times = np.concatenate(parts)
    hit = times[times > 0]
    if hit.size == 0:
        return ClassicalResult(0, float("nan"), float("nan"), times)
    mean = float(hit.mean())
    se = float(hit.std(ddof=1) / math.sqrt(hit.size)) if hit.size > 1 else 0.0
    return ClassicalResult(int(hit.size), mean, se, times)


# ---------------------------------------------------------------------------
# Grover

class GroverSearchResult(NamedTuple):
    queries: int
    success_probability: float


def grover_search(space: SequenceSpace, R: ReplicatorSet) -> GroverSearchResult:
    queries = optimal_iterations(space.size / len(R)).q_int
    p = run_grover(GroverProblem(space.size, R, queries))
    return GroverSearchResult(queries, p)


# ---------------------------------------------------------------------------
# decoherence-triggered quantum walk

@dataclass(frozen=True)
class McFaddenParams:
    hop_rate: float = 1.0
    detect_rate: float = 1.0
    t_max: float = 50.0
    rng_seed: int = 0
    dt: float | None = None
    samples: int = 500

    def __post_init__(self):
        if not (self.hop_rate > 0 and self.detect_rate > 0):
            raise ConfigError("hop_rate and detect_rate must be positive")
        if not (self.t_max > 0 and math.isfinite(self.t_max)):
            raise ConfigError("t_max must be positive and finite")
        if self.dt is not None and not self.dt > 0:
            raise ConfigError("dt must be positive")


def hamming_adjacency_apply(psi: np.ndarray, space: SequenceSpace) -> np.ndarray:
    """A·ψ for the Hamming graph: sequences adjacent iff they differ in one letter."""
    b, n = space.alphabet_size, space.length
    t = psi.reshape((b,) * n)
    out = np.zeros_like(t)
    for k in range(n):
        out += t.sum(axis=k, keepdims=True) - t
    return out.reshape(-1)


def hamming_neighbors(space: SequenceSpace) -> np.ndarray:
    """Neighbour table of shape (n·(b−1), M): row j lists one neighbour of every sequence."""
    b, n, M = space.alphabet_size, space.length, space.size
    idx = np.arange(M)
    rows = []
    for k in range(n):
        place = b ** (n - 1 - k)
        digit = (idx // place) % b
        for shift in range(1, b):
            rows.append(idx + (((digit + shift) % b) - digit) * place)
    return np.array(rows)


def hamming_adjacency_sparse(space: SequenceSpace) -> sparse.csr_matrix:
    nbr = hamming_neighbors(space)
    M = space.size
    cols = np.tile(np.arange(M), nbr.shape[0])
    data = np.ones(cols.size)
    return sparse.csr_matrix((data, (nbr.reshape(-1), cols)), shape=(M, M))


def hamming_adjacency(space: SequenceSpace) -> np.ndarray:
    """Dense adjacency matrix (small spaces only)."""
    return hamming_adjacency_sparse(space).toarray()


def effective_hamiltonian(space: SequenceSpace, R: ReplicatorSet, params: McFaddenParams) -> np.ndarray:
    """Dense H_eff = −J·A − i(κ/2)·P_R."""
    H = -params.hop_rate * hamming_adjacency(space).astype(complex)
    idx = sorted(R)
    H[idx, idx] -= 0.5j * params.detect_rate
    return H


@dataclass(frozen=True)
class McFaddenResult:
    times: np.ndarray
    detection_cdf: np.ndarray
    norm_sq: np.ndarray
    flux_detection: np.ndarray
    replicator_share: np.ndarray
    mean_detection_time: float
    tail_truncated: bool
    half_reached: bool
    norm_accounting_error: float
    replicator_amplified: bool
    params: McFaddenParams

    def warnings(self) -> list[str]:
        out = []
        if not self.half_reached:
            out.append("t_max too small: detection probability never reached 0.5")
        if self.tail_truncated:
            out.append("D(t_max) < 0.99: mean detection time truncated at t_max")
        return out


def mcfadden_search(space: SequenceSpace, R: ReplicatorSet, params: McFaddenParams | None = None) -> McFaddenResult:
    """Evolve the uniform superposition under H_eff and track detection.

    D(t) = 1 − ‖ψ(t)‖² is the probability that the environment has
    registered a replicator by time t. The detection flux κ‖P_Rψ‖² is
    integrated alongside as an independent account of the same quantity.
    ``replicator_share`` is the replicator weight of the undetected,
    renormalized state; ``replicator_amplified`` reports whether it ever
    exceeds the uniform share |R|/M.
    """
    params = params or McFaddenParams()
    M = space.size
    J, kappa = params.hop_rate, params.detect_rate
    mask = R.mask(space)
    scale = max(J * space.length * (space.alphabet_size - 1), kappa)
    dt = params.dt or 0.01 / scale
    n_steps = max(1, math.ceil(params.t_max / dt - 1e-9))
    if n_steps > 10**7:
        raise ConfigError("t_max/dt exceeds 10^7 steps")
    h = params.t_max / n_steps
    stride = max(1, math.ceil(n_steps / params.samples))

    idx = np.flatnonzero(mask)
    # dψ/dt = −i·H_eff·ψ = (iJ·A − (κ/2)·P_R)ψ
    gen = (1j * J * hamming_adjacency_sparse(space)).astype(complex).tolil()
    gen[idx, idx] = -0.5 * kappa
    gen = gen.tocsr()

    def deriv(psi):
        return gen @ psi

    def flux(psi):
        v = psi[idx]
        return kappa * float(np.vdot(v, v).real)

    psi = np.full(M, 1.0 / math.sqrt(M), dtype=complex)
    det = 0.0
    # ∫‖ψ‖² dt by the trapezoid rule on every step
    survival_integral = 0.0
    nsq_prev = 1.0
    rec_t, rec_nsq, rec_flux, rec_share = [0.0], [1.0], [0.0], [len(R) / M]
    max_err = 0.0
    prev_D = 0.0
    monotone = True
    for step in range(1, n_steps + 1):
        k1 = deriv(psi)
        y2 = psi + 0.5 * h * k1
        k2 = deriv(y2)
        y3 = psi + 0.5 * h * k2
        k3 = deriv(y3)
        y4 = psi + h * k3
        k4 = deriv(y4)
        f1, f2, f3, f4 = flux(psi), flux(y2), flux(y3), flux(y4)
        psi = psi + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        det += (h / 6.0) * (f1 + 2 * f2 + 2 * f3 + f4)
        nsq = float(np.vdot(psi, psi).real)
        survival_integral += 0.5 * h * (nsq_prev + nsq)
        nsq_prev = nsq
        max_err = max(max_err, abs(nsq + det - 1.0))
        D = 1.0 - nsq
        if D < prev_D - 1e-14:
            monotone = False
        prev_D = D
        if step % stride == 0 or step == n_steps:
            rec_t.append(step * h)
            rec_nsq.append(nsq)
            rec_flux.append(det)
            w = float(np.sum(np.abs(psi[mask]) ** 2))
            rec_share.append(w / nsq if nsq > 0 else float("nan"))
    if not monotone:
        raise ConfigError("detection probability decreased; reduce dt")

    times = np.array(rec_t)
    times[-1] = params.t_max
    nsq_arr = np.array(rec_nsq)
    cdf = 1.0 - nsq_arr
    share = np.array(rec_share)
    arrays = (times, cdf, nsq_arr, np.array(rec_flux), share)
    for a in arrays:
        a.setflags(write=False)
    return McFaddenResult(
        times=times,
        detection_cdf=cdf,
        norm_sq=nsq_arr,
        flux_detection=arrays[3],
        replicator_share=share,
        mean_detection_time=survival_integral,
        tail_truncated=bool(cdf[-1] < 0.99),
        half_reached=bool(cdf.max() >= 0.5),
        norm_accounting_error=max_err,
        replicator_amplified=bool(np.nanmax(share) > len(R) / M * (1 + 1e-9)),
        params=params,
    )


def sample_detection_times(result: McFaddenResult, count: int, seed: int | None = None) -> np.ndarray:
    """Draw first-detection times by inverting the recorded CDF.

    Draws beyond D(t_max) are returned as ``inf`` (undetected by t_max).
    """
    rng = task_rng(result.params.rng_seed if seed is None else seed, 0)
    u = rng.random(count)
    cdf = np.maximum.accumulate(result.detection_cdf)
    out = np.interp(u, cdf, result.times)
    out[u > cdf[-1]] = np.inf
    return out


# ---------------------------------------------------------------------------
# pre- and post-selection

@dataclass(frozen=True)
class PrePostSpec:
    pre: StateVector
    post: StateVector
    observable: np.ndarray


class ABLResult(NamedTuple):
    eigenvalues: np.ndarray
    probabilities: np.ndarray

    def probability(self, value: float, tol: float = 1e-9) -> float:
        hit = np.abs(self.eigenvalues - value) <= tol
        if not hit.any():
            raise KeyError(f"{value!r} is not an eigenvalue of the observable")
        return float(self.probabilities[hit][0])


def abl_probabilities(spec: PrePostSpec) -> ABLResult:
    """Aharonov–Bergmann–Lebowitz outcome probabilities for an intermediate measurement.

    P(a_k) ∝ |⟨post|a_k⟩⟨a_k|pre⟩|², normalized over the eigenbasis of a
    non-degenerate observable. Eigenvalues are returned in descending order.
    """
    O = hermitian_op(spec.observable)
    pre = normalize(spec.pre).amplitudes
    post = normalize(spec.post).amplitudes
    if O.shape[0] != pre.size or pre.size != post.size:
        raise DimensionError("pre, post and observable dimensions differ")
    w, v = np.linalg.eigh(O)
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    if w.size > 1 and np.min(np.abs(np.diff(w))) < 1e-9:
        raise ConfigError("observable spectrum is degenerate")
    amps = (post.conj() @ v) * (v.conj().T @ pre)
    weights = np.abs(amps) ** 2
    total = weights.sum()
    if total <= 1e-20:
        raise InconsistentSelection("every intermediate outcome has zero weight")
    return ABLResult(w, weights / total)


def spin_state(axis: str, sign: int = +1) -> StateVector:
    """Spin-1/2 eigenstate along x, y or z with eigenvalue ``sign``."""
    s = 1 / math.sqrt(2)
    table = {
        ("x", 1): [s, s],
        ("x", -1): [s, -s],
        ("y", 1): [s, 1j * s],
        ("y", -1): [s, -1j * s],
        ("z", 1): [1, 0],
        ("z", -1): [0, 1],
    }
    try:
        return StateVector(table[(axis, int(sign))])
    except KeyError:
        raise ValueError(f"unknown spin state {axis!r}, {sign!r}") from None
