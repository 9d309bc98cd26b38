import math

import numpy as np
import pytest
from scipy.linalg import expm

from qbio.errors import ConfigError, DegenerateInput, DimensionError, InconsistentSelection
from qbio.quantum import X, Y, Z, random_state
from qbio.replicator import (
    McFaddenParams,
    PrePostSpec,
    ReplicatorSet,
    SequenceSpace,
    abl_probabilities,
    classical_search,
    effective_hamiltonian,
    grover_search,
    hamming_adjacency,
    hamming_adjacency_apply,
    hamming_adjacency_sparse,
    mcfadden_search,
    sample_detection_times,
    spin_state,
)


class TestSpace:
    def test_size_and_cap(self):
        assert SequenceSpace(4, 3).size == 64
        with pytest.raises(DimensionError):
            SequenceSpace(2, 17)
        with pytest.raises(ConfigError):
            SequenceSpace(1, 4)

    def test_replicator_sets(self):
        sp = SequenceSpace(2, 4)
        assert ReplicatorSet.lowest(sp, 3) == {0, 1, 2}
        assert len(ReplicatorSet.everything(sp)) == 16
        with pytest.raises(DegenerateInput):
            ReplicatorSet.of(sp, [])
        with pytest.raises(DegenerateInput):
            ReplicatorSet.of(sp, [16])


class TestHamming:
    @pytest.mark.parametrize("b, n", [(2, 1), (2, 5), (3, 3), (4, 2)])
    def test_three_constructions_agree(self, b, n, rng):
        sp = SequenceSpace(b, n)
        A = hamming_adjacency(sp)
        assert np.array_equal(A, A.T)
        assert np.all(A.sum(axis=1) == n * (b - 1))
        psi = rng.normal(size=sp.size) + 1j * rng.normal(size=sp.size)
        assert np.allclose(hamming_adjacency_apply(psi, sp), A @ psi)
        assert np.allclose(hamming_adjacency_sparse(sp) @ psi, A @ psi)

    def test_hypercube_spectrum(self):
        ev = np.linalg.eigvalsh(hamming_adjacency(SequenceSpace(2, 4)))
        want = sorted(4 - 2 * k for k in range(5) for _ in range(math.comb(4, k)))
        assert np.allclose(ev, want)


class TestClassical:
    def test_all_marked(self):
        sp = SequenceSpace(2, 6)
        r = classical_search(sp, ReplicatorSet.everything(sp), 500, seed=1)
        assert r.mean_hitting_time == 1.0 and r.hit_count == 500

    def test_geometric_mean(self):
        sp = SequenceSpace(2, 8)
        r = classical_search(sp, ReplicatorSet.lowest(sp, 2), 5000, seed=3)
        assert abs(r.mean_hitting_time - 128) < 3 * r.std_error

    def test_deterministic(self):
        sp = SequenceSpace(2, 7)
        R = ReplicatorSet.lowest(sp, 1)
        a = classical_search(sp, R, 2500, seed=11)
        b = classical_search(sp, R, 2500, seed=11)
        c = classical_search(sp, R, 2500, seed=12)
        assert np.array_equal(a.hitting_times, b.hitting_times)
        assert not np.array_equal(a.hitting_times, c.hitting_times)

    def test_workers_do_not_change_result(self):
        sp = SequenceSpace(2, 7)
        R = ReplicatorSet.lowest(sp, 1)
        a = classical_search(sp, R, 3500, seed=5, workers=1)
        b = classical_search(sp, R, 3500, seed=5, workers=4)
        assert np.array_equal(a.hitting_times, b.hitting_times)

    def test_censoring(self):
        sp = SequenceSpace(2, 10)
        r = classical_search(sp, ReplicatorSet.lowest(sp, 1), 400, seed=2, max_draws=50)
        assert r.hit_count < 400
        assert np.all(r.hitting_times[r.hitting_times > 0] <= 50)

    def test_invalid_trials(self):
        sp = SequenceSpace(2, 3)
        with pytest.raises(DegenerateInput):
            classical_search(sp, ReplicatorSet.lowest(sp, 1), 0)


class TestGroverSearch:
    def test_examples(self):
        sp = SequenceSpace(2, 2)
        r = grover_search(sp, ReplicatorSet.lowest(sp, 1))
        assert r.queries == 1 and r.success_probability == pytest.approx(1.0, abs=1e-12)
        sp = SequenceSpace(2, 10)
        r = grover_search(sp, ReplicatorSet.lowest(sp, 1))
        assert r.queries == 25 and r.success_probability >= 0.999
        assert r.success_probability == pytest.approx(math.sin(51 * math.asin(1 / 32)) ** 2, abs=1e-10)

    def test_multiple_marked(self):
        sp = SequenceSpace(4, 4)
        r = grover_search(sp, ReplicatorSet.lowest(sp, 4))
        assert r.queries == 6 and r.success_probability > 0.99


def dense_detection_cdf(space, R, params, times):
    H = effective_hamiltonian(space, R, params)
    psi0 = np.full(space.size, 1 / math.sqrt(space.size), dtype=complex)
    return np.array([1 - np.linalg.norm(expm(-1j * H * t) @ psi0) ** 2 for t in times])


class TestMcFadden:
    def test_all_marked_uniform_decay(self):
        sp = SequenceSpace(2, 5)
        res = mcfadden_search(sp, ReplicatorSet.everything(sp), McFaddenParams(t_max=8.0))
        assert np.allclose(res.detection_cdf, 1 - np.exp(-res.times), atol=1e-6)
        assert res.mean_detection_time == pytest.approx(1 - math.exp(-8), rel=1e-6)

    def test_dense_oracle_small(self):
        sp = SequenceSpace(3, 3)
        R = ReplicatorSet.of(sp, [4, 17])
        params = McFaddenParams(hop_rate=0.6, detect_rate=2.0, t_max=10.0)
        res = mcfadden_search(sp, R, params)
        idx = np.arange(0, res.times.size, 25)
        ref = dense_detection_cdf(sp, R, params, res.times[idx])
        assert np.max(np.abs(res.detection_cdf[idx] - ref)) < 1e-8

    def test_norm_accounting_and_monotone(self):
        sp = SequenceSpace(2, 6)
        res = mcfadden_search(sp, ReplicatorSet.lowest(sp, 1), McFaddenParams(t_max=30.0))
        assert res.norm_accounting_error < 1e-8
        assert np.all(np.diff(res.detection_cdf) >= -1e-14)
        assert np.allclose(res.norm_sq + res.flux_detection, 1.0, atol=1e-8)

    def test_vanishing_detection(self):
        sp = SequenceSpace(2, 5)
        res = mcfadden_search(sp, ReplicatorSet.lowest(sp, 1), McFaddenParams(detect_rate=1e-9, t_max=5.0))
        assert res.detection_cdf.max() < 1e-8
        assert not res.half_reached
        assert any("t_max" in w for w in res.warnings())

    def test_hopping_spreads_walker(self):
        sp = SequenceSpace(2, 6)
        res = mcfadden_search(sp, ReplicatorSet.lowest(sp, 1), McFaddenParams(t_max=20.0))
        assert res.detection_cdf[-1] > 1 / sp.size

    def test_sampling(self):
        sp = SequenceSpace(2, 4)
        res = mcfadden_search(sp, ReplicatorSet.everything(sp), McFaddenParams(t_max=10.0))
        t = sample_detection_times(res, 20000, seed=4)
        assert np.all(t[np.isfinite(t)] <= 10.0)
        assert np.mean(t[np.isfinite(t)]) == pytest.approx(1.0, rel=0.05)
        assert np.array_equal(t, sample_detection_times(res, 20000, seed=4))

    def test_bad_params(self):
        with pytest.raises(ConfigError):
            McFaddenParams(detect_rate=0.0)
        with pytest.raises(ConfigError):
            McFaddenParams(t_max=-1)


def abl_oracle(pre, post, O):
    w, v = np.linalg.eigh(O)
    weights = []
    for k in range(w.size):
        proj = np.outer(v[:, k], v[:, k].conj())
        weights.append(abs(post.conj() @ proj @ pre) ** 2)
    weights = np.array(weights)
    order = np.argsort(-w)
    return w[order], (weights / weights.sum())[order]


class TestABL:
    def test_spin_x(self):
        r = abl_probabilities(PrePostSpec(spin_state("x"), spin_state("y"), X))
        assert r.probability(1) == pytest.approx(1.0, abs=1e-12)
        assert r.probability(-1) == pytest.approx(0.0, abs=1e-12)

    def test_spin_z(self):
        r = abl_probabilities(PrePostSpec(spin_state("x"), spin_state("y"), Z))
        assert r.probabilities == pytest.approx([0.5, 0.5], abs=1e-12)

    def test_consistency(self):
        r = abl_probabilities(PrePostSpec(spin_state("z"), spin_state("z"), Z))
        assert r.probability(1) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_selection(self):
        with pytest.raises(InconsistentSelection):
            abl_probabilities(PrePostSpec(spin_state("z", 1), spin_state("z", -1), Z))

    def test_degenerate_observable(self):
        with pytest.raises(ConfigError):
            abl_probabilities(PrePostSpec(spin_state("z"), spin_state("x"), np.eye(2)))

    def test_random_against_projector_oracle(self, rng):
        for _ in range(100):
            d = int(rng.integers(2, 6))
            A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            O = A + A.conj().T
            pre, post = random_state(d, rng), random_state(d, rng)
            r = abl_probabilities(PrePostSpec(pre, post, O))
            w, p = abl_oracle(pre.amplitudes, post.amplitudes, O)
            assert abs(r.probabilities.sum() - 1) < 1e-12
            assert np.allclose(r.eigenvalues, w)
            assert np.allclose(r.probabilities, p, atol=1e-12)

    def test_unknown_value(self):
        r = abl_probabilities(PrePostSpec(spin_state("x"), spin_state("y"), Y))
        with pytest.raises(KeyError):
            r.probability(0.3)
