"""Grover search: the iteration-count condition and a statevector simulator.

The condition (2Q+1)·arcsin(1/√N) = π/2 links the number of oracle
queries Q to the database size N that a single marked item can be found in
with certainty. Q=1 gives N=4 and Q=3 gives N≈20.2, the numbers of
nucleotide bases and amino acids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import DegenerateInput, DimensionError
from .quantum import MAX_STATE_DIM


class Iterations(NamedTuple):
    q_real: float
    q_int: int


def round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def optimal_iterations(N: float) -> Iterations:
    """Solve (2Q+1)·arcsin(1/√N) = π/2 for Q; also return the rounded count."""
    if not N >= 1:
        raise DegenerateInput(f"N must be at least 1, got {N!r}")
    q_real = math.pi / (4.0 * math.asin(1.0 / math.sqrt(N))) - 0.5
    return Iterations(q_real, round_half_away(q_real))


def items_for_iterations(Q: int) -> float:
    """Database size searched with certainty after exactly Q queries."""
    if Q < 0:
        raise DegenerateInput(f"Q must be nonnegative, got {Q!r}")
    return 1.0 / math.sin(math.pi / (2 * (2 * Q + 1))) ** 2


@dataclass(frozen=True)
class GroverProblem:
    num_items: int
    marked: frozenset
    iterations: int

    def __init__(self, num_items: int, marked: Iterable[int], iterations: int):
        marked = frozenset(int(i) for i in marked)
        if num_items < 1:
            raise DegenerateInput("num_items must be at least 1")
        if not marked:
            raise DegenerateInput("marked set is empty")
        if min(marked) < 0 or max(marked) >= num_items:
            raise DegenerateInput(f"marked indices must lie in [0, {num_items})")
        if iterations < 0:
            raise DegenerateInput("iterations must be nonnegative")
        object.__setattr__(self, "num_items", int(num_items))
        object.__setattr__(self, "marked", marked)
        object.__setattr__(self, "iterations", int(iterations))


class GroverPrediction(NamedTuple):
    theta: float
    success_probability: float


def predict(problem: GroverProblem) -> GroverPrediction:
    """Closed-form success probability sin²((2Q+1)θ), θ = arcsin(√(k/M))."""
    theta = math.asin(math.sqrt(len(problem.marked) / problem.num_items))
    return GroverPrediction(theta, math.sin((2 * problem.iterations + 1) * theta) ** 2)


def grover_states(problem: GroverProblem) -> Iterator[np.ndarray]:
    """Yield the statevector before the first and after every iteration."""
    M = problem.num_items
    if M > MAX_STATE_DIM:
        raise DimensionError(f"M={M} exceeds the statevector cap {MAX_STATE_DIM}")
    idx = np.fromiter(sorted(problem.marked), dtype=np.int64)
    psi = np.full(M, 1.0 / math.sqrt(M), dtype=complex)
    yield psi.copy()
    for _ in range(problem.iterations):
        psi[idx] *= -1.0
        # inversion about the mean: (2|s⟩⟨s| − I)ψ
        psi = 2.0 * psi.mean() - psi
        yield psi.copy()


def run_grover(problem: GroverProblem) -> float:
    """Simulate the oracle/diffusion sequence and return Σ_{marked}|ψ_i|²."""
    for psi in grover_states(problem):
        pass
    idx = np.fromiter(sorted(problem.marked), dtype=np.int64)
    return float(np.sum(np.abs(psi[idx]) ** 2))


class SamplingEfficiency(NamedTuple):
    classical_expected_trials: float
    quantum_queries: int
    speedup_factor: float
    trials_per_query: float


def sampling_efficiency(N: int) -> SamplingEfficiency:
    """Classical and quantum sampling costs for finding one item among N.

    Two speedup readings are reported side by side: √N (the conventional
    Grover factor, 2 for N=4) and expected classical trials per quantum
    query (4 for N=4).
    """
    if N < 2:
        raise DegenerateInput(f"N must be at least 2, got {N!r}")
    queries = optimal_iterations(N).q_int
    return SamplingEfficiency(
        classical_expected_trials=float(N),
        quantum_queries=queries,
        speedup_factor=math.sqrt(N),
        trials_per_query=N / queries,
    )
