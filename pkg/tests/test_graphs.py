import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from qnet_epidemic.errors import InvalidArgumentError, MalformedFileError
from qnet_epidemic.graphio import load_graph, save_graph
from qnet_epidemic.graphs import (
    BINARY,
    SAMPLED,
    WEIGHTED,
    GeoParams,
    PhotonicParams,
    SpatialGraph,
    WeightedAdjacency,
    apply_quantum_weights,
    degree_stats,
    expected_adjacency,
    from_edges,
    generate_er,
    generate_waxman,
    photon_success_prob,
    quantum_link_prob,
    ring_lattice,
    sample_link_realization,
    star_graph,
    waxman_probability,
)
from qnet_epidemic.seeding import derive_seed


def assert_symmetric_zero_diag(w):
    w = np.asarray(w)
    assert np.array_equal(w, w.T)
    assert not np.any(np.diag(w))


# ---------------------------------------------------------------- parameters


@pytest.mark.parametrize(
    "kwargs",
    [dict(r_max=0), dict(alpha_l=-1), dict(beta_l=0), dict(beta_l=1.5), dict(n_nodes=0)],
)
def test_geo_params_rejects_invalid(kwargs):
    with pytest.raises(InvalidArgumentError):
        GeoParams(**kwargs)


@pytest.mark.parametrize("kwargs", [dict(gamma=-0.1), dict(n_photons=0), dict(n_photons=2.5)])
def test_photonic_params_rejects_invalid(kwargs):
    with pytest.raises(InvalidArgumentError):
        PhotonicParams(**kwargs)


def test_geo_defaults_use_main_text_values():
    geo = GeoParams()
    assert (geo.r_max, geo.alpha_l, geo.beta_l) == (1600.0, 226.0, 1.0)
    ph = PhotonicParams()
    assert (ph.gamma, ph.n_photons) == (0.2, 1000)


# ---------------------------------------------------------------- ER


def test_er_zero_probability_is_edgeless():
    g = generate_er(5, 0.0, seed=1)
    assert g.n_edges == 0


def test_er_certain_probability_is_complete():
    g = generate_er(5, 1.0, seed=1)
    assert g.n_edges == 10
    assert_symmetric_zero_diag(g.adjacency)


@pytest.mark.parametrize("n,p", [(0, 0.5), (5, -0.1), (5, 1.1)])
def test_er_rejects_bad_arguments(n, p):
    with pytest.raises(InvalidArgumentError):
        generate_er(n, p, seed=0)


def test_er_mean_degree_matches_p_times_n_minus_one():
    means = [degree_stats(generate_er(101, 0.1, seed=s).to_weighted()).mean_degree for s in range(300)]
    # per-graph <k> = 2E/N with E ~ Binomial(N(N-1)/2, p): var = 2 (N-1) p (1-p) / N
    se = math.sqrt(2 * 100 * 0.1 * 0.9 / 101 / len(means))
    assert np.mean(means) == pytest.approx(10.0, abs=3 * se)


def test_er_degree_distribution_is_binomial():
    n, p, m = 200, 0.05, 500
    degrees = np.concatenate([generate_er(n, p, seed=derive_seed(3, "er", i)).adjacency.sum(axis=1) for i in range(m)])
    observed = np.bincount(degrees, minlength=n)
    expected = stats.binom.pmf(np.arange(n), n - 1, p) * degrees.size
    # pool tails so every bin expects >= 5 counts
    lo, hi = 3, 18
    obs = np.concatenate(([observed[: lo + 1].sum()], observed[lo + 1 : hi], [observed[hi:].sum()]))
    exp = np.concatenate(([expected[: lo + 1].sum()], expected[lo + 1 : hi], [expected[hi:].sum()]))
    assert exp.min() >= 5
    exp *= obs.sum() / exp.sum()
    # degrees of one graph are weakly dependent; the pooled chi-square is still the stated check
    _, pvalue = stats.chisquare(obs, exp)
    assert pvalue > 0.01


# ---------------------------------------------------------------- Waxman


def test_waxman_probability_examples():
    geo = GeoParams(beta_l=0.7)
    assert waxman_probability(0.0, geo) == 0.7
    geo = GeoParams(alpha_l=226.0, beta_l=1.0)
    assert waxman_probability(226.0, geo) == pytest.approx(math.exp(-1))
    assert math.exp(-1) == pytest.approx(0.36788, abs=1e-5)


def test_waxman_positions_lie_in_disk_and_graph_is_valid():
    geo = GeoParams(n_nodes=300)
    g = generate_waxman(geo, seed=11)
    r = np.hypot(g.positions[:, 0], g.positions[:, 1])
    assert r.max() <= geo.r_max
    assert_symmetric_zero_diag(g.adjacency)
    assert np.allclose(g.distances, np.hypot(*(g.positions[:, None, :] - g.positions[None, :, :]).transpose(2, 0, 1)))


def test_waxman_disk_sampling_is_area_uniform():
    # fraction of points inside r_max/2 should be 1/4 for area-uniform sampling
    geo = GeoParams(n_nodes=2000)
    pos = generate_waxman(geo, seed=3).positions
    r = np.hypot(pos[:, 0], pos[:, 1])
    frac = np.mean(r < geo.r_max / 2)
    assert frac == pytest.approx(0.25, abs=3 * math.sqrt(0.25 * 0.75 / 2000))


def test_waxman_edge_frequency_matches_formula():
    # two nodes at a fixed distance: rebuild the link decision many times
    geo = GeoParams(n_nodes=2, r_max=1600.0, alpha_l=226.0)
    hits, dist = [], []
    for s in range(4000):
        g = generate_waxman(geo, seed=s)
        hits.append(g.adjacency[0, 1])
        dist.append(g.distances[0, 1])
    expected = np.mean(np.exp(-np.asarray(dist) / 226.0))
    m = len(hits)
    assert np.mean(hits) == pytest.approx(expected, abs=3 * math.sqrt(expected * (1 - expected) / m))


def test_degree_peak_moves_right_with_n():
    geo = GeoParams()
    peaks = []
    for n in (200, 400, 800):
        deg = np.concatenate([generate_waxman(geo.with_nodes(n), seed=s).adjacency.sum(axis=1) for s in range(5)])
        peaks.append(np.bincount(deg).argmax())
    assert peaks[0] < peaks[1] < peaks[2]


def test_generators_are_bit_deterministic():
    geo = GeoParams(n_nodes=150)
    a, b = generate_waxman(geo, 42), generate_waxman(geo, 42)
    assert np.array_equal(a.positions, b.positions) and np.array_equal(a.adjacency, b.adjacency)
    c = generate_waxman(geo, 43)
    assert not np.array_equal(a.adjacency, c.adjacency)
    assert np.array_equal(generate_er(50, 0.2, 9).adjacency, generate_er(50, 0.2, 9).adjacency)


# ---------------------------------------------------------------- photonic links


def test_photon_success_examples():
    ph = PhotonicParams(gamma=0.2, n_photons=1)
    assert photon_success_prob(0.0, ph) == 1.0
    assert photon_success_prob(50.0, ph) == pytest.approx(0.1, rel=1e-14)
    assert photon_success_prob(100.0, ph) == pytest.approx(0.01, rel=1e-14)


def test_negative_distance_rejected():
    with pytest.raises(InvalidArgumentError):
        photon_success_prob(-1.0, PhotonicParams())
    with pytest.raises(InvalidArgumentError):
        quantum_link_prob(-1.0, PhotonicParams())


def test_quantum_link_single_photon_equals_single_success():
    ph = PhotonicParams(0.2, 1)
    d = np.linspace(0, 500, 11)
    assert np.allclose(quantum_link_prob(d, ph), photon_success_prob(d, ph), rtol=1e-14, atol=0)


def test_quantum_link_two_photons():
    # P = 0.1 at d = 50 km, gamma = 0.2
    assert quantum_link_prob(50.0, PhotonicParams(0.2, 2)) == pytest.approx(0.19, rel=1e-13)


def test_quantum_link_many_photons_high_precision():
    # 1 - 0.99**1000 evaluated with 40-digit mpmath arithmetic
    expected = 0.99995682875258934175
    assert quantum_link_prob(100.0, PhotonicParams(0.2, 1000)) == pytest.approx(expected, rel=1e-13)


def test_quantum_link_tiny_single_probability_keeps_precision():
    # P ~ 1e-40: naive 1 - (1 - P)**n gives 0
    val = quantum_link_prob(2000.0, PhotonicParams(0.2, 1000))
    assert val == pytest.approx(1000 * 1e-40, rel=1e-9)


@settings(max_examples=200, deadline=None)
@given(
    d=st.floats(0, 3000),
    dd=st.floats(0, 500),
    gamma=st.floats(0, 1),
    dg=st.floats(0, 0.5),
    n=st.integers(1, 10**6),
    dn=st.integers(0, 10**6),
)
def test_quantum_link_monotonicity(d, dd, gamma, dg, n, dn):
    base = quantum_link_prob(d, PhotonicParams(gamma, n))
    assert 0.0 <= base <= 1.0
    assert quantum_link_prob(d, PhotonicParams(gamma, n + dn)) >= base
    assert quantum_link_prob(d + dd, PhotonicParams(gamma, n)) <= base
    assert quantum_link_prob(d, PhotonicParams(gamma + dg, n)) <= base


def test_apply_quantum_weights_examples():
    ph = PhotonicParams(0.2, 1)
    empty = SpatialGraph(np.zeros((3, 2)), np.zeros((3, 3)))
    assert not np.any(apply_quantum_weights(empty, ph).weights)

    lossless = SpatialGraph([[0, 0], [0, 0]], [[0, 1], [1, 0]])
    assert apply_quantum_weights(lossless, ph).weights[0, 1] == 1.0

    path = SpatialGraph([[0, 0], [50, 0], [150, 0]], [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    w = apply_quantum_weights(path, ph)
    assert w.kind == WEIGHTED
    assert w.weights[0, 1] == pytest.approx(0.1, rel=1e-14)
    assert w.weights[1, 2] == pytest.approx(0.01, rel=1e-14)
    assert w.weights[0, 2] == 0


def test_apply_quantum_weights_never_exceeds_fiber_adjacency():
    g = generate_waxman(GeoParams(n_nodes=200), seed=5)
    w = apply_quantum_weights(g, PhotonicParams())
    assert np.all(w.weights <= g.adjacency)
    assert_symmetric_zero_diag(w.weights)


def test_expected_adjacency_examples():
    ph = PhotonicParams(0.2, 1)
    pos = np.array([[0.0, 0.0], [226.0, 0.0]])
    m = expected_adjacency(GeoParams(alpha_l=226.0, beta_l=1.0), ph, pos)
    # exp(-1) * 10**-4.52, 20-digit mpmath value
    assert m.weights[0, 1] == pytest.approx(0.000011109781512662295485, rel=1e-12)

    same = expected_adjacency(GeoParams(beta_l=1.0), ph, np.zeros((2, 2)))
    assert same.weights[0, 1] == 1.0
    assert not np.any(np.diag(same.weights))


def test_expected_adjacency_zero_when_fibers_impossible():
    # beta_l = 0 is outside GeoParams' domain; the product vanishes with the fiber factor
    pos = np.random.default_rng(0).random((5, 2)) * 100
    geo = object.__new__(GeoParams)
    object.__setattr__(geo, "r_max", 1600.0)
    object.__setattr__(geo, "alpha_l", 226.0)
    object.__setattr__(geo, "beta_l", 0.0)
    object.__setattr__(geo, "n_nodes", 5)
    assert not np.any(expected_adjacency(geo, PhotonicParams(), pos).weights)


# ---------------------------------------------------------------- link sampling


def test_sample_link_realization_certain_and_impossible():
    ones = WeightedAdjacency(np.ones((4, 4)) - np.eye(4), WEIGHTED)
    s = sample_link_realization(ones, seed=1)
    assert s.kind == SAMPLED
    assert np.array_equal(s.weights, ones.weights)
    zeros = WeightedAdjacency(np.zeros((4, 4)), WEIGHTED)
    assert sample_link_realization(zeros, seed=1).n_edges == 0


def test_sample_link_realization_requires_weighted_kind():
    with pytest.raises(InvalidArgumentError):
        sample_link_realization(star_graph(3), seed=0)


def test_sample_link_retention_frequency():
    w = from_edges(2, [(0, 1)], weights=[0.5])
    m = 10_000
    kept = np.mean([sample_link_realization(w, seed=s).weights[0, 1] for s in range(m)])
    assert abs(kept - 0.5) <= 3 * math.sqrt(0.25 / m)


def test_sample_link_retention_per_edge():
    g = generate_waxman(GeoParams(n_nodes=40, r_max=300.0), seed=2)
    w = apply_quantum_weights(g, PhotonicParams(0.2, 3))
    m = 2000
    total = sum(np.asarray(sample_link_realization(w, derive_seed(0, "t", s)).weights) for s in range(m))
    freq = total / m
    p = np.asarray(w.weights)
    mask = (p > 0) & (p < 1)
    bound = 3 * np.sqrt(p * (1 - p) / m)
    # 3-sigma per edge; allow the expected ~0.27% of outliers
    outside = np.mean(np.abs(freq - p)[mask] > bound[mask])
    assert outside < 0.02
    assert np.all(sample_link_realization(w, 1).weights <= (p > 0))


# ---------------------------------------------------------------- degree statistics


def test_degree_stats_regular_and_star():
    ring = degree_stats(ring_lattice(10, 4))
    assert ring.mean_degree == 4 and ring.second_moment == 16
    assert ring.histogram == {4: 1.0}

    star = degree_stats(star_graph(4))
    assert star.mean_degree == pytest.approx(1.6)
    assert star.second_moment == pytest.approx(4.0)
    assert sum(star.histogram.values()) == pytest.approx(1.0, abs=1e-12)


def test_degree_stats_weighted_uses_expected_degrees():
    w = from_edges(3, [(0, 1), (1, 2)], weights=[0.25, 0.5])
    s = degree_stats(w)
    assert np.allclose(s.degrees, [0.25, 0.75, 0.5])
    assert s.histogram == {0: 1.0}
    assert s.mean_degree == pytest.approx(0.5)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(1, 60), p=st.floats(0, 1))
def test_degree_stats_invariants(seed, n, p):
    s = degree_stats(generate_er(n, p, seed).to_weighted())
    assert sum(s.histogram.values()) == pytest.approx(1.0, abs=1e-12)
    assert s.second_moment >= s.mean_degree**2 - 1e-9


# ---------------------------------------------------------------- adjacency validation


@pytest.mark.parametrize(
    "w,kind",
    [
        ([[0, 1], [0, 0]], BINARY),
        ([[1, 0], [0, 0]], BINARY),
        ([[0, 0.5], [0.5, 0]], BINARY),
        ([[0, 2.0], [2.0, 0]], WEIGHTED),
        ([[0, -0.1], [-0.1, 0]], WEIGHTED),
    ],
)
def test_weighted_adjacency_validation(w, kind):
    with pytest.raises(InvalidArgumentError):
        WeightedAdjacency(np.array(w, dtype=float), kind)


def test_weighted_adjacency_is_immutable():
    w = star_graph(2)
    with pytest.raises(ValueError):
        w.weights[0, 1] = 0.0


# ---------------------------------------------------------------- file format


def test_round_trip_empty_graph(tmp_path):
    w = WeightedAdjacency(np.zeros((0, 0)), BINARY)
    save_graph(w, np.zeros((0, 2)), tmp_path / "g.qnet")
    w2, pos = load_graph(tmp_path / "g.qnet")
    assert w2 == w and pos.shape == (0, 2)


def test_round_trip_weighted_graph_is_bit_exact(tmp_path):
    w = from_edges(3, [(0, 1), (1, 2)], weights=[0.1 + 0.2, 1 / 3])
    pos = np.array([[0.1, -2.0 / 3.0], [1e-300, 123456.789], [math.pi, math.e]])
    save_graph(w, pos, tmp_path / "g.qnet")
    w2, pos2 = load_graph(tmp_path / "g.qnet")
    assert w2 == w
    assert np.array_equal(pos, pos2)
    text = (tmp_path / "g.qnet").read_text()
    assert text.splitlines()[:2] == ["qnet-graph v1", "n=3 kind=weighted"]


def test_round_trip_quantum_waxman(tmp_path):
    g = generate_waxman(GeoParams(n_nodes=120), seed=8)
    w = apply_quantum_weights(g, PhotonicParams())
    save_graph(w, g.positions, tmp_path / "q.qnet")
    w2, pos = load_graph(tmp_path / "q.qnet")
    assert w2 == w and np.array_equal(pos, g.positions)


def test_truncated_file_names_line(tmp_path):
    w = star_graph(3)
    save_graph(w, None, tmp_path / "g.qnet")
    lines = (tmp_path / "g.qnet").read_text().splitlines()
    (tmp_path / "t.qnet").write_text("\n".join(lines[:4]) + "\n")
    with pytest.raises(MalformedFileError) as info:
        load_graph(tmp_path / "t.qnet")
    assert info.value.line == 5
    assert "line 5" in str(info.value)


@pytest.mark.parametrize(
    "body,line",
    [
        ("nope\n", 1),
        ("qnet-graph v1\nn=2\n", 2),
        ("qnet-graph v1\nn=2 kind=binary\n0 0 0\n1 0 x\n", 4),
        ("qnet-graph v1\nn=2 kind=binary\n0 0 0\n1 0 0\n1 0 1\n", 5),
        ("qnet-graph v1\nn=2 kind=binary\n0 0 0\n1 0 0\n0 1 1.5\n", 5),
    ],
)
def test_malformed_files(tmp_path, body, line):
    (tmp_path / "bad.qnet").write_text(body)
    with pytest.raises(MalformedFileError) as info:
        load_graph(tmp_path / "bad.qnet")
    assert info.value.line == line
