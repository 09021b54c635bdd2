import numpy as np
import pytest

import parconcord as pc


def _assert_positive_definite(om):
    np.linalg.cholesky(om)  # raises LinAlgError when not PD


# === two-band truth ===


def test_ar2_band_structure():
    truth = pc.ar2_precision(6)
    om = truth.omega_true.omega
    assert np.array_equal(np.diag(om), np.ones(6))
    for i in range(6):
        for j in range(6):
            gap = abs(i - j)
            if gap == 1:
                assert om[i, j] == 0.45
            elif gap == 2:
                assert om[i, j] == 0.40
            elif gap > 2:
                assert om[i, j] == 0.0
    assert truth.kind == "ar2"
    assert truth.edge_total == 2 * 6 - 3
    _assert_positive_definite(om)


def test_ar2_support_and_small_sizes():
    truth = pc.ar2_precision(4)
    assert truth.edge_total == 5
    assert pc.IndexPair(1, 3) in truth.support
    assert pc.IndexPair(1, 4) not in truth.support
    with pytest.raises(pc.DimensionError):
        pc.ar2_precision(2)
    _assert_positive_definite(pc.ar2_precision(500).omega_true.omega)


# === hub-forming truth ===


def _tree_components(p, support):
    parent = list(range(p + 1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for pair in support:
        parent[find(pair.r)] = find(pair.s)
    return len({find(i) for i in range(1, p + 1)})


def test_scale_free_support_is_spanning_tree():
    for p in (3, 10, 80):
        truth = pc.scale_free_precision(p, seed=5)
        assert truth.edge_total == p - 1
        assert _tree_components(p, truth.support) == 1


def test_scale_free_entry_invariants():
    truth = pc.scale_free_precision(60, seed=9)
    om = truth.omega_true.omega
    assert np.array_equal(om, om.T)
    assert np.array_equal(np.diag(om), np.ones(60))
    off = om[np.triu_indices(60, k=1)]
    nonzero = off[off != 0.0]
    assert nonzero.size == truth.edge_total
    assert np.min(np.abs(nonzero)) >= 0.1
    _assert_positive_definite(om)


def test_scale_free_positive_definite_many_seeds():
    for seed in range(25):
        om = pc.scale_free_precision(120, seed=seed).omega_true.omega
        _assert_positive_definite(om)


def test_scale_free_determinism_and_seed_sensitivity():
    a = pc.scale_free_precision(40, seed=3).omega_true.omega
    b = pc.scale_free_precision(40, seed=3).omega_true.omega
    c = pc.scale_free_precision(40, seed=4).omega_true.omega
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_scale_free_argument_validation():
    with pytest.raises(pc.DimensionError):
        pc.scale_free_precision(2)
    with pytest.raises(ValueError):
        pc.scale_free_precision(10, alpha=1.0)


def test_scale_free_hub_degree_is_capped():
    from parconcord.datagen import MAX_HUB_DEGREE

    truth = pc.scale_free_precision(400, seed=0)
    deg = np.zeros(401, dtype=int)
    for pair in truth.support:
        deg[pair.r] += 1
        deg[pair.s] += 1
    assert deg.max() <= MAX_HUB_DEGREE


# === sampler ===


def test_sample_mvn_shape_and_determinism():
    truth = pc.ar2_precision(5)
    a = pc.sample_mvn(truth, 17, seed=2)
    b = pc.sample_mvn(truth, 17, seed=2)
    c = pc.sample_mvn(truth, 17, seed=3)
    assert a.n == 17 and a.p == 5 and not a.centered
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)
    with pytest.raises(pc.DimensionError):
        pc.sample_mvn(truth, 0)


def test_sample_mvn_covariance_matches_identity_truth():
    om = pc.PrecisionEstimate.identity(3)
    truth = pc.TruthModel(kind="ar2", p=3, omega_true=om, support=frozenset())
    x = pc.sample_mvn(truth, 40000, seed=0).values
    cov = x.T @ x / 40000.0
    assert np.max(np.abs(cov - np.eye(3))) < 0.05


def test_sample_mvn_covariance_matches_banded_truth():
    truth = pc.ar2_precision(5)
    x = pc.sample_mvn(truth, 100000, seed=1).values
    cov = x.T @ x / 100000.0
    want = np.linalg.inv(truth.omega_true.omega)
    assert np.max(np.abs(cov - want)) < 0.1


def test_sample_mvn_rejects_indefinite_truth():
    om = np.eye(3)
    om[0, 1] = om[1, 0] = 5.0  # symmetric with positive diagonal but indefinite
    bad = pc.TruthModel(
        kind="ar2",
        p=3,
        omega_true=pc.PrecisionEstimate(om),
        support=frozenset({pc.IndexPair(1, 2)}),
    )
    with pytest.raises(pc.NotPositiveDefinite):
        pc.sample_mvn(bad, 10)
