"""SIS infection dynamics on (weighted) networks.

Four views of the same discrete-time process:

* ``kw_solution`` -- homogeneous mean-degree ODE (continuous time),
* ``run_mnlds`` -- per-node infection probabilities under the independence
  assumption, with weighted adjacency entries scaling each contact,
* ``run_direct_sim`` -- Monte Carlo over binary node states,
* ``exact_markov_expectation`` -- the full 2**N-state chain (tiny graphs only).
"""

import math
from dataclasses import dataclass
from functools import partial

import numpy as np
import scipy.sparse as sp

from .errors import InvalidArgumentError, TooLargeError
from .graphs import WeightedAdjacency
from .parallel import ordered_map
from .seeding import derive_seed, make_rng
from .thresholds import largest_eigenvalue

EXACT_MAX_NODES = 12
DIRECT_CHUNK = 256
# exp(-1e3) underflows to 0.0; keeps 0 * log(0) out of sparse products
_LOG_FLOOR = -1e3


@dataclass(frozen=True)
class EpidemicParams:
    beta: float
    delta: float
    initial_infection: object = 0.5

    def __post_init__(self):
        if not 0 <= self.beta <= 1:
            raise InvalidArgumentError(f"beta must lie in [0, 1], got {self.beta}")
        if not 0 <= self.delta <= 1:
            raise InvalidArgumentError(f"delta must lie in [0, 1], got {self.delta}")
        p0 = np.asarray(self.initial_infection, dtype=float)
        if np.any(p0 < 0) or np.any(p0 > 1) or np.isnan(p0).any():
            raise InvalidArgumentError("initial infection probabilities must lie in [0, 1]")

    @property
    def tau(self):
        return self.beta / self.delta if self.delta > 0 else math.inf

    def initial_vector(self, n):
        p0 = np.asarray(self.initial_infection, dtype=float)
        if p0.ndim == 0:
            return np.full(n, float(p0))
        if p0.shape != (n,):
            raise InvalidArgumentError(f"initial infection vector has shape {p0.shape}, expected ({n},)")
        return p0.copy()


@dataclass
class InfectionTrajectory:
    """Infected fraction over time.

    ``eta[t]`` for t = 0..steps.  ``eta_std`` is the run-to-run spread for
    Monte Carlo trajectories.  ``node_probs`` (optional) holds per-node
    infection probabilities, one row per recorded time.
    """

    eta: np.ndarray
    steps: int
    converged: bool
    eta_final: float
    method: str
    eta_std: np.ndarray = None
    node_probs: np.ndarray = None
    times: np.ndarray = None

    @property
    def eta0(self):
        return float(self.eta[0])


def _csr(w):
    if isinstance(w, WeightedAdjacency):
        return w.csr
    if sp.issparse(w):
        return sp.csr_matrix(w)
    return sp.csr_matrix(np.asarray(w, dtype=float))


def _check_contact(m, beta):
    top = float(m.data.max()) if m.nnz else 0.0
    if beta * top > 1:
        raise InvalidArgumentError(f"beta * max(A) = {beta * top} exceeds 1")


# ---------------------------------------------------------------- KW model


def kw_solution(params, mean_degree, eta0, t_grid):
    """Logistic solution of d(eta)/dt = beta<k> eta (1 - eta) - delta eta.

    Written as eta0 / (a*eta0*g(t) + exp(-r t)) with a = beta<k>,
    r = a - delta and g(t) = (1 - exp(-r t))/r (g = t when r = 0); this is the
    usual eta0*eta_inf / (eta0 + (eta_inf - eta0) exp(-r t)) without the
    cancellation near r = 0.
    """
    if not mean_degree > 0:
        raise InvalidArgumentError("mean degree must be > 0")
    if not 0 <= eta0 <= 1:
        raise InvalidArgumentError("eta0 must lie in [0, 1]")
    t = np.asarray(t_grid, dtype=float)
    a = params.beta * mean_degree
    r = a - params.delta
    with np.errstate(over="ignore", invalid="ignore"):
        if r == 0:
            g = t
        else:
            g = -np.expm1(-r * t) / r
        eta = eta0 / (a * eta0 * g + np.exp(-r * t)) if eta0 > 0 else np.zeros_like(t)
    eta = np.nan_to_num(eta, nan=0.0)
    eta_inf = max(0.0, 1.0 - params.delta / a) if a > 0 else 0.0
    return InfectionTrajectory(
        eta=eta,
        steps=len(t) - 1,
        converged=True,
        eta_final=eta_inf,
        method="kw",
        times=t,
    )


def kw_rk4(params, mean_degree, eta0, t_grid, dt=1e-2):
    """Fixed-step RK4 integration of the KW ODE, sampled on ``t_grid``."""
    a, d = params.beta * mean_degree, params.delta

    def f(y):
        return a * y * (1.0 - y) - d * y

    t = np.asarray(t_grid, dtype=float)
    out = np.empty_like(t)
    y, now = float(eta0), float(t[0])
    out[0] = y
    for idx in range(1, len(t)):
        span = t[idx] - now
        nsub = max(1, math.ceil(span / dt - 1e-9))
        h = span / nsub
        for _ in range(nsub):
            k1 = f(y)
            k2 = f(y + 0.5 * h * k1)
            k3 = f(y + 0.5 * h * k2)
            k4 = f(y + h * k3)
            y += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
        now = t[idx]
        out[idx] = y
    return out


# ---------------------------------------------------------------- mNLDS


class _Mnlds:
    def __init__(self, w, params):
        m = _csr(w)
        _check_contact(m, params.beta)
        self.n = m.shape[0]
        self.rows = np.repeat(np.arange(self.n), np.diff(m.indptr))
        self.cols = m.indices
        self.bw = params.beta * m.data
        self.delta = params.delta

    def step(self, p):
        with np.errstate(divide="ignore"):
            log_xi = np.bincount(self.rows, np.log1p(-self.bw * p[self.cols]), minlength=self.n)
        xi = np.exp(log_xi)
        new = 1.0 - (1.0 - p + self.delta * p) * xi
        # only round-off may leave [0, 1]
        return np.clip(new, 0.0, 1.0)


def mnlds_step(w, p_prev, params):
    """One update of the per-node infection probabilities.

    xi_i = prod_j (1 - beta A_ij p_j) is the chance node i escapes all
    neighbours; a node ends up healthy if it was healthy and escaped, or was
    infected, escaped and was cured.
    """
    p = np.asarray(p_prev, dtype=float)
    if np.any(p < 0) or np.any(p > 1):
        raise InvalidArgumentError("probabilities must lie in [0, 1]")
    return _Mnlds(w, params).step(p)


def run_mnlds(w, params, t_max=10_000, conv_tol=1e-8, record_nodes=False):
    if t_max < 1:
        raise InvalidArgumentError("t_max must be >= 1")
    op = _Mnlds(w, params)
    p = params.initial_vector(op.n)
    eta = [p.mean()]
    snaps = [p.copy()] if record_nodes else None
    converged = False
    for _ in range(t_max):
        new = op.step(p)
        change = float(np.max(np.abs(new - p))) if op.n else 0.0
        p = new
        eta.append(p.mean())
        if record_nodes:
            snaps.append(p.copy())
        if change < conv_tol:
            converged = True
            break
    eta = np.asarray(eta)
    return InfectionTrajectory(
        eta=eta,
        steps=len(eta) - 1,
        converged=converged,
        eta_final=float(eta[-1]),
        method="mnlds",
        node_probs=np.asarray(snaps) if record_nodes else p[None, :],
    )


# ---------------------------------------------------------------- binary states


class _Direct:
    def __init__(self, w, params):
        m = _csr(w)
        _check_contact(m, params.beta)
        self.n = m.shape[0]
        logs = m.copy()
        with np.errstate(divide="ignore"):
            logs.data = np.maximum(np.log1p(-params.beta * m.data), _LOG_FLOOR)
        self.log_escape = logs
        self.delta = params.delta

    def step(self, sigma, rng):
        sigma = np.asarray(sigma, dtype=bool)
        p_inf = -np.expm1(self.log_escape @ sigma.astype(float))
        infected = rng.random(sigma.shape) < p_inf
        cured = sigma & (rng.random(sigma.shape) < self.delta)
        # an infected node recovers only if cured and not reinfected in the same step
        return np.where(sigma, ~(cured & ~infected), infected)


def direct_sim_step(w, state, params, rng):
    """Advance binary states one step; ``state`` is (N,) or (N, runs)."""
    return _Direct(w, params).step(state, rng)


def _direct_chunk(chunk, w, params, t_max, n_runs, master_seed):
    op = _Direct(w, params)
    size = min(DIRECT_CHUNK, n_runs - chunk * DIRECT_CHUNK)
    rng = make_rng(derive_seed(master_seed, "direct", chunk))
    p0 = params.initial_vector(op.n)
    sigma = rng.random((op.n, size)) < p0[:, None]
    frac = np.zeros((t_max + 1, size))
    frac[0] = sigma.mean(axis=0) if op.n else 0.0
    absorbed_at = None
    for t in range(1, t_max + 1):
        sigma = op.step(sigma, rng)
        frac[t] = sigma.mean(axis=0)
        if not sigma.any():
            absorbed_at = t
            break
    return frac, absorbed_at


def run_direct_sim(w, params, t_max, n_runs=20, master_seed=0, workers=1, window=None):
    """Average of ``n_runs`` binary-state realizations.

    Runs are grouped in fixed chunks of ``DIRECT_CHUNK`` columns, each chunk
    with its own derived stream, so results do not depend on ``workers``.
    ``eta_final`` averages the mean trajectory over the last ``window`` steps
    (default: last 10%).  ``converged`` means every run hit the all-healthy
    absorbing state.
    """
    if n_runs < 1:
        raise InvalidArgumentError("n_runs must be >= 1")
    if t_max < 1:
        raise InvalidArgumentError("t_max must be >= 1")
    n_chunks = -(-n_runs // DIRECT_CHUNK)
    fn = partial(_direct_chunk, w=w, params=params, t_max=t_max, n_runs=n_runs, master_seed=master_seed)
    parts = ordered_map(fn, range(n_chunks), workers)
    frac = np.concatenate([p[0] for p in parts], axis=1)
    absorbed = all(p[1] is not None for p in parts)
    mean = frac.mean(axis=1)
    std = frac.std(axis=1, ddof=1) if n_runs > 1 else np.zeros_like(mean)
    if window is None:
        window = max(1, (t_max + 1) // 10)
    return InfectionTrajectory(
        eta=mean,
        steps=t_max,
        converged=absorbed,
        eta_final=float(mean[-window:].mean()),
        method="direct",
        eta_std=std,
    )


# ---------------------------------------------------------------- exact chain


def _state_bits(n):
    states = np.arange(2**n)
    return ((states[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)


def transition_matrix(w, params):
    """Row-stochastic kernel over all 2**N configurations (bit i = node i infected)."""
    m = _csr(w)
    n = m.shape[0]
    if n > EXACT_MAX_NODES:
        raise TooLargeError(f"exact chain limited to N <= {EXACT_MAX_NODES}, got N={n}")
    _check_contact(m, params.beta)
    bits = _state_bits(n)
    dense = m.toarray()
    with np.errstate(divide="ignore"):
        log_escape = np.maximum(np.log1p(-params.beta * dense), _LOG_FLOOR)
    p_inf = -np.expm1(bits.astype(float) @ log_escape.T)
    stay = 1.0 - params.delta * (1.0 - p_inf)
    q = np.where(bits, stay, p_inf)
    kernel = np.ones((len(bits), len(bits)))
    for i in range(n):
        kernel *= np.where(bits[None, :, i], q[:, i][:, None], 1.0 - q[:, i][:, None])
    return kernel


def exact_markov_expectation(w, params, p0=None, t_max=10):
    """Exact expected infected fraction by evolving the full state distribution."""
    m = _csr(w)
    n = m.shape[0]
    if n > EXACT_MAX_NODES:
        raise TooLargeError(f"exact chain limited to N <= {EXACT_MAX_NODES}, got N={n}")
    kernel = transition_matrix(m, params)
    if p0 is None:
        p0 = params.initial_infection
    p0 = EpidemicParams(params.beta, params.delta, p0).initial_vector(n)
    bits = _state_bits(n)
    dist = np.prod(np.where(bits, p0[None, :], 1.0 - p0[None, :]), axis=1)
    frac = bits.sum(axis=1) / n
    marginals = [dist @ bits]
    eta = [dist @ frac]
    for _ in range(t_max):
        dist = dist @ kernel
        eta.append(dist @ frac)
        marginals.append(dist @ bits)
    eta = np.asarray(eta)
    return InfectionTrajectory(
        eta=eta,
        steps=t_max,
        converged=False,
        eta_final=float(eta[-1]),
        method="exact",
        node_probs=np.asarray(marginals),
    )


def critical_delta(w, beta):
    """Curing rate at which beta/delta equals the spectral threshold: beta * lambda_1."""
    return beta * largest_eigenvalue(w).lambda_1
