import math

import numpy as np
import pytest

from qbio.errors import DegenerateInput, DimensionError
from qbio.grover import (
    GroverProblem,
    grover_states,
    items_for_iterations,
    optimal_iterations,
    predict,
    round_half_away,
    run_grover,
    sampling_efficiency,
)


class TestIterationCondition:
    def test_four_items(self):
        assert optimal_iterations(4).q_real == pytest.approx(1.0, abs=1e-12)
        assert items_for_iterations(1) == pytest.approx(4.0, abs=1e-12)

    def test_twenty(self):
        assert optimal_iterations(20.2).q_real == pytest.approx(3.0, abs=0.01)
        assert items_for_iterations(3) == pytest.approx(20.2, abs=0.05)

    def test_single_item(self):
        assert optimal_iterations(1) == (0.0, 0)
        assert items_for_iterations(0) == pytest.approx(1.0)

    def test_two_queries(self):
        assert items_for_iterations(2) == pytest.approx(1 / math.sin(math.pi / 10) ** 2, rel=1e-14)
        assert items_for_iterations(2) == pytest.approx(10.47, abs=0.01)

    @pytest.mark.parametrize("Q", range(0, 40))
    def test_round_trip(self, Q):
        assert optimal_iterations(items_for_iterations(Q)).q_real == pytest.approx(Q, abs=1e-9)

    def test_monotone(self):
        ns = [items_for_iterations(Q) for Q in range(60)]
        assert np.all(np.diff(ns) > 0)

    def test_invalid(self):
        with pytest.raises(DegenerateInput):
            optimal_iterations(0.5)
        with pytest.raises(DegenerateInput):
            items_for_iterations(-1)

    def test_rounding(self):
        assert round_half_away(2.5) == 3 and round_half_away(-2.5) == -3 and round_half_away(2.49) == 2


class TestSimulator:
    def test_exact_case(self):
        assert run_grover(GroverProblem(4, [2], 1)) == pytest.approx(1.0, abs=1e-12)

    def test_twenty(self):
        p = run_grover(GroverProblem(20, [0], 3))
        assert p == pytest.approx(math.sin(7 * math.asin(1 / math.sqrt(20))) ** 2, abs=1e-12)
        # closed form evaluates to 0.999939, just under the quoted 0.99997
        assert 0.9999 < p < 0.99995

    def test_two_items(self):
        assert run_grover(GroverProblem(2, [1], 1)) == pytest.approx(0.5, abs=1e-12)

    def test_randomized_grid(self, rng):
        for _ in range(200):
            M = int(rng.integers(2, 1025))
            k = int(rng.integers(1, max(2, M // 4)))
            marked = rng.choice(M, size=k, replace=False)
            Q = int(rng.integers(0, 51))
            prob = GroverProblem(M, marked, Q)
            assert run_grover(prob) == pytest.approx(predict(prob).success_probability, abs=1e-10)

    def test_norm_preserved_every_step(self):
        for psi in grover_states(GroverProblem(37, [3, 9], 20)):
            assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)

    def test_iteration_is_unitary(self):
        M = 16
        D = 2 * np.full((M, M), 1 / M) - np.eye(M)
        O = np.eye(M)
        O[5, 5] = -1
        G = D @ O
        assert np.allclose(G.conj().T @ G, np.eye(M), atol=1e-12)
        psi = next(grover_states(GroverProblem(M, [5], 0)))
        states = list(grover_states(GroverProblem(M, [5], 3)))
        for s in states[1:]:
            psi = G @ psi
            assert np.allclose(s, psi, atol=1e-12)

    def test_empty_marked(self):
        with pytest.raises(DegenerateInput):
            GroverProblem(4, [], 1)

    def test_out_of_range(self):
        with pytest.raises(DegenerateInput):
            GroverProblem(4, [4], 1)

    def test_cap(self):
        with pytest.raises(DimensionError):
            run_grover(GroverProblem(2**17, [0], 1))


class TestSamplingEfficiency:
    def test_four(self):
        s = sampling_efficiency(4)
        assert s.speedup_factor == pytest.approx(2.0)
        assert s.classical_expected_trials == pytest.approx(4.0)
        assert s.quantum_queries == 1

    def test_twenty(self):
        assert sampling_efficiency(20).speedup_factor == pytest.approx(4.47, abs=0.005)

    def test_too_small(self):
        with pytest.raises(DegenerateInput):
            sampling_efficiency(1)
