"""Classical and photonic-quantum network models.

Classical topologies are Erdos-Renyi or Waxman graphs whose nodes sit in a
disk of radius ``r_max`` (km).  A quantum network reuses the fiber topology
and weights every fiber by the probability that at least one of ``n_photons``
photons survives the fiber attenuation.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .errors import InvalidArgumentError
from .seeding import make_rng

BINARY = "binary"
WEIGHTED = "weighted"
SAMPLED = "sampled"
KINDS = (BINARY, WEIGHTED, SAMPLED)


@dataclass(frozen=True)
class GeoParams:
    """Waxman geometry: disk radius, link-length scale and link-probability scale (km)."""

    r_max: float = 1600.0
    alpha_l: float = 226.0
    beta_l: float = 1.0
    n_nodes: int = 500

    def __post_init__(self):
        if not self.r_max > 0:
            raise InvalidArgumentError(f"r_max must be > 0, got {self.r_max}")
        if not self.alpha_l > 0:
            raise InvalidArgumentError(f"alpha_l must be > 0, got {self.alpha_l}")
        if not 0 < self.beta_l <= 1:
            raise InvalidArgumentError(f"beta_l must lie in (0, 1], got {self.beta_l}")
        if int(self.n_nodes) != self.n_nodes or self.n_nodes < 1:
            raise InvalidArgumentError(f"n_nodes must be a positive integer, got {self.n_nodes}")

    def with_nodes(self, n):
        return GeoParams(self.r_max, self.alpha_l, self.beta_l, int(n))


@dataclass(frozen=True)
class PhotonicParams:
    """Fiber attenuation ``gamma`` (dB/km) and photons sent per attempt."""

    gamma: float = 0.2
    n_photons: int = 1000

    def __post_init__(self):
        if not self.gamma >= 0:
            raise InvalidArgumentError(f"gamma must be >= 0, got {self.gamma}")
        if int(self.n_photons) != self.n_photons or self.n_photons < 1:
            raise InvalidArgumentError(f"n_photons must be an integer >= 1, got {self.n_photons}")


def _readonly(a):
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class WeightedAdjacency:
    """Symmetric matrix of link weights in [0, 1] with zero diagonal.

    ``kind`` is one of ``"binary"`` (classical fiber adjacency), ``"weighted"``
    (probability adjacency: fiber present times link success probability) or
    ``"sampled"`` (a Bernoulli realization of a weighted matrix).
    """

    weights: np.ndarray
    kind: str = BINARY

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise InvalidArgumentError(f"weights must be a square matrix, got shape {w.shape}")
        if self.kind not in KINDS:
            raise InvalidArgumentError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if not np.array_equal(w, w.T):
            raise InvalidArgumentError("weights must be symmetric")
        if np.any(np.diag(w) != 0):
            raise InvalidArgumentError("diagonal must be zero")
        if w.size and (np.nanmin(w) < 0 or np.nanmax(w) > 1 or np.isnan(w).any()):
            raise InvalidArgumentError("weights must lie in [0, 1]")
        if self.kind != WEIGHTED and not np.all((w == 0) | (w == 1)):
            raise InvalidArgumentError(f"kind={self.kind} requires 0/1 entries")
        object.__setattr__(self, "weights", _readonly(w))

    @property
    def n(self):
        return self.weights.shape[0]

    @property
    def n_edges(self):
        return int(np.count_nonzero(np.triu(self.weights, 1)))

    @cached_property
    def csr(self):
        return sp.csr_matrix(self.weights)

    def __eq__(self, other):
        if not isinstance(other, WeightedAdjacency):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.weights, other.weights)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class SpatialGraph:
    """Node positions (km) plus the binary fiber adjacency."""

    positions: np.ndarray
    adjacency: np.ndarray
    r_max: float = None

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float).reshape(-1, 2)
        adj = np.asarray(self.adjacency)
        n = pos.shape[0]
        if adj.shape != (n, n):
            raise InvalidArgumentError(f"adjacency shape {adj.shape} does not match {n} positions")
        if not np.array_equal(adj, adj.T) or np.any(np.diag(adj) != 0):
            raise InvalidArgumentError("adjacency must be symmetric with zero diagonal")
        if not np.all((adj == 0) | (adj == 1)):
            raise InvalidArgumentError("adjacency must be binary")
        if self.r_max is not None and n and np.hypot(pos[:, 0], pos[:, 1]).max() > self.r_max * (1 + 1e-12):
            raise InvalidArgumentError("positions must lie inside the disk of radius r_max")
        object.__setattr__(self, "positions", _readonly(pos))
        object.__setattr__(self, "adjacency", _readonly(adj.astype(np.uint8)))

    @property
    def n(self):
        return self.positions.shape[0]

    @property
    def n_edges(self):
        return int(np.count_nonzero(np.triu(self.adjacency, 1)))

    @cached_property
    def distances(self):
        d = pairwise_distances(self.positions)
        d.setflags(write=False)
        return d

    def to_weighted(self):
        return WeightedAdjacency(self.adjacency.astype(float), BINARY)


@dataclass(frozen=True)
class DegreeStats:
    """Per-graph degree histogram ``{k: p_k}`` and the first two moments."""

    histogram: dict
    mean_degree: float
    second_moment: float
    degrees: np.ndarray = field(default=None, repr=False, compare=False)

    @classmethod
    def from_degrees(cls, degrees):
        degrees = np.asarray(degrees, dtype=float)
        if degrees.size == 0:
            return cls({}, 0.0, 0.0, degrees)
        bins = np.floor(degrees).astype(np.int64)
        values, counts = np.unique(bins, return_counts=True)
        hist = {int(k): c / degrees.size for k, c in zip(values, counts)}
        return cls(hist, float(degrees.mean()), float(np.mean(degrees * degrees)), degrees)

    @property
    def variance(self):
        return self.second_moment - self.mean_degree**2


def pairwise_distances(positions):
    pos = np.asarray(positions, dtype=float)
    dx = pos[:, 0][:, None] - pos[:, 0][None, :]
    dy = pos[:, 1][:, None] - pos[:, 1][None, :]
    return np.hypot(dx, dy)


def sample_disk(n, r_max, rng):
    """Area-uniform points in a disk: radius r_max*sqrt(u), uniform angle."""
    radius = r_max * np.sqrt(rng.random(n))
    angle = 2.0 * np.pi * rng.random(n)
    return np.column_stack((radius * np.cos(angle), radius * np.sin(angle)))


def _bernoulli_upper(prob, rng):
    """Symmetric 0/1 matrix with independent draws on the strict upper triangle."""
    n = prob.shape[0]
    u = rng.random((n, n))
    upper = np.triu(u < prob, 1)
    return (upper | upper.T).astype(np.uint8)


def generate_er(n, p, seed):
    """Erdos-Renyi G(n, p); positions in the unit disk are decorative."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n}")
    if not 0 <= p <= 1:
        raise InvalidArgumentError(f"p must lie in [0, 1], got {p}")
    rng = make_rng(seed)
    positions = sample_disk(int(n), 1.0, rng)
    adjacency = _bernoulli_upper(np.full((int(n), int(n)), float(p)), rng)
    return SpatialGraph(positions, adjacency, r_max=1.0)


def waxman_probability(d, geo):
    return geo.beta_l * np.exp(-np.asarray(d, dtype=float) / geo.alpha_l)


def generate_waxman(geo, seed):
    """Waxman graph: positions first, then one Bernoulli draw per node pair.

    Positions are drawn before edges from the same stream, so the positions
    for a given seed can be recovered with :func:`waxman_positions`.
    """
    rng = make_rng(seed)
    positions = sample_disk(geo.n_nodes, geo.r_max, rng)
    d = pairwise_distances(positions)
    adjacency = _bernoulli_upper(waxman_probability(d, geo), rng)
    return SpatialGraph(positions, adjacency, r_max=geo.r_max)


def waxman_positions(geo, seed):
    return sample_disk(geo.n_nodes, geo.r_max, make_rng(seed))


def _check_distance(d):
    d = np.asarray(d, dtype=float)
    if np.any(d < 0) or np.isnan(d).any():
        raise InvalidArgumentError("distance must be >= 0")
    return d


def _maybe_scalar(x, like):
    return float(x) if np.ndim(like) == 0 else x


def photon_success_prob(d, ph):
    """Single-photon survival probability ``10**(-gamma*d/10)``."""
    d = _check_distance(d)
    return _maybe_scalar(10.0 ** (-ph.gamma * d / 10.0), d)


def quantum_link_prob(d, ph):
    """Probability that at least one of ``n_photons`` photons arrives.

    Evaluated as ``-expm1(n * log1p(-P))`` so neither P -> 0 nor large n loses
    precision.
    """
    d = _check_distance(d)
    single = np.asarray(10.0 ** (-ph.gamma * d / 10.0))
    with np.errstate(divide="ignore"):
        p = -np.expm1(ph.n_photons * np.log1p(-single))
    return _maybe_scalar(p, d)


def apply_quantum_weights(g, ph):
    """Probability adjacency of a fiber graph: link success probability on each fiber."""
    w = np.zeros(g.adjacency.shape)
    rows, cols = np.nonzero(g.adjacency)
    w[rows, cols] = quantum_link_prob(g.distances[rows, cols], ph)
    return WeightedAdjacency(w, WEIGHTED)


def expected_adjacency(geo, ph, positions):
    """Fiber probability times link probability for every pair; no sampling."""
    d = pairwise_distances(positions)
    w = waxman_probability(d, geo) * np.asarray(quantum_link_prob(d, ph))
    np.fill_diagonal(w, 0.0)
    return WeightedAdjacency(w, WEIGHTED)


def sample_link_realization(w, seed):
    """Keep each weighted edge independently with its weight as probability."""
    if w.kind != WEIGHTED:
        raise InvalidArgumentError(f"link sampling needs a weighted matrix, got kind={w.kind}")
    b = _bernoulli_upper(np.asarray(w.weights), make_rng(seed))
    return WeightedAdjacency(b.astype(float), SAMPLED)


def degree_stats(w):
    """Degrees are neighbor counts, or expected degrees (row sums) for weighted kinds."""
    return DegreeStats.from_degrees(np.asarray(w.weights).sum(axis=1))


def from_edges(n, edges, weights=None, kind=None):
    """Build an adjacency from an edge list; weights default to 1."""
    w = np.zeros((n, n))
    for idx, (i, j) in enumerate(edges):
        val = 1.0 if weights is None else float(weights[idx])
        w[i, j] = w[j, i] = val
    if kind is None:
        kind = BINARY if weights is None else WEIGHTED
    return WeightedAdjacency(w, kind)


def path_graph(n):
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n):
    w = np.ones((n, n)) - np.eye(n)
    return WeightedAdjacency(w, BINARY)


def star_graph(leaves):
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def ring_lattice(n, k):
    """k-regular ring: each node joined to its k/2 nearest neighbors on each side."""
    if k % 2 or k >= n:
        raise InvalidArgumentError("ring lattice needs even k < n")
    edges = [(i, (i + s) % n) for i in range(n) for s in range(1, k // 2 + 1)]
    return from_edges(n, edges)
