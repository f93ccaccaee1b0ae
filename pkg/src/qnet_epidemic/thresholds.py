"""Epidemic thresholds: degree-based (KW, MFA) and spectral (AM / pAM).

Spectral thresholds are ``1/lambda_1`` of the (possibly weighted) adjacency.
Quantum ensembles can be built three ways, differing in which randomness is
averaged before the eigenvalue is taken:

* method 1 -- expected adjacency (fiber probability x link probability),
* method 2 -- sampled fiber topology weighted by link probability,
* method 3 -- sampled fiber topology and sampled photonic links.
"""

import math
from dataclasses import dataclass
from functools import partial

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import DegenerateGraphError, InsufficientDataError, InvalidArgumentError, NoConvergenceError
from .graphs import (
    WEIGHTED,
    WeightedAdjacency,
    apply_quantum_weights,
    expected_adjacency,
    generate_waxman,
    sample_link_realization,
    waxman_positions,
)
from .parallel import ordered_map
from .seeding import derive_seed, make_rng

KW, MFA, AM, PAM = "KW", "MFA", "AM", "pAM"
METHOD_NAMES = {1: "annealed-1", 2: "quenched-2", 3: "fully-sampled-3"}


@dataclass(frozen=True)
class SpectralResult:
    lambda_1: float
    iterations: int
    residual: float
    solver: str = "power"


@dataclass(frozen=True)
class ThresholdEstimate:
    value: float
    estimator: str
    method: int = None
    ensemble_mean: float = None
    ensemble_std: float = 0.0
    n_instances: int = 1
    n_excluded: int = 0

    def __post_init__(self):
        if self.ensemble_mean is None:
            object.__setattr__(self, "ensemble_mean", self.value)

    @property
    def stderr(self):
        ok = self.n_instances - self.n_excluded
        return self.ensemble_std / math.sqrt(ok) if ok > 0 else float("nan")

    @property
    def method_name(self):
        return METHOD_NAMES.get(self.method, "")


@dataclass(frozen=True)
class ScalingFit:
    c: float
    c_err: float
    model: str = "c-over-N"
    slope: float = None
    slope_err: float = None


def _as_csr(w):
    if isinstance(w, WeightedAdjacency):
        return w.csr
    if sp.issparse(w):
        return sp.csr_matrix(w)
    return sp.csr_matrix(np.asarray(w, dtype=float))


DENSE_FALLBACK_MAX = 500


def _direct_eigenpair(m):
    """Largest eigenpair by a direct solver: dense for small N, Lanczos otherwise."""
    n = m.shape[0]
    if n <= DENSE_FALLBACK_MAX:
        vals, vecs = np.linalg.eigh(m.toarray())
        return float(vals[-1]), vecs[:, -1], "dense"
    vals, vecs = spla.eigsh(m, k=1, which="LA", v0=np.ones(n), tol=0)
    return float(vals[0]), vecs[:, 0], "lanczos"


def largest_eigenvalue(w, tol=1e-10, max_iter=None, seed=0, fallback=True):
    """Dominant eigenvalue of a symmetric nonnegative matrix by power iteration.

    Iterates on ``M + s*I`` with ``s`` half the mean row sum.  The shift makes
    the Perron root the unique eigenvalue of largest modulus, so bipartite
    graphs (spectrum symmetric about zero) converge too.  Start vector is
    all-ones; a seeded random restart is tried once if the residual stalls.

    Disconnected graphs whose two largest components have nearly equal
    spectral radii can need far more than ``max_iter`` steps.  With
    ``fallback`` the eigenvalue is then taken from a direct solver
    (``solver`` says which); without it :class:`NoConvergenceError` is raised.
    """
    if not tol > 0:
        raise InvalidArgumentError("tol must be > 0")
    m = _as_csr(w)
    n = m.shape[0]
    if max_iter is None:
        max_iter = max(100 * n, 1000)
    if n == 0 or m.nnz == 0 or not np.any(m.data):
        return SpectralResult(0.0, 0, 0.0)
    shift = float(m.sum()) / n / 2.0

    def run(v):
        v = v / np.linalg.norm(v)
        lam_old = None
        lam = 0.0
        for it in range(1, max_iter + 1):
            mv = m @ v
            z = mv + shift * v
            lam = float(v @ z)
            norm = np.linalg.norm(z)
            if norm == 0:
                return 0.0, it, 0.0, True
            if lam_old is not None and abs(lam - lam_old) <= tol * abs(lam):
                res = float(np.linalg.norm(mv - (lam - shift) * v)) / max(abs(lam - shift), 1e-300)
                return lam - shift, it, res, True
            lam_old = lam
            v = z / norm
        res = float(np.linalg.norm(m @ v - (lam - shift) * v)) / max(abs(lam - shift), 1e-300)
        return lam - shift, max_iter, res, False

    lam, it, res, ok = run(np.ones(n))
    if not ok or res > 1e-3:
        lam2, it2, res2, ok2 = run(np.abs(make_rng(seed).standard_normal(n)) + 1e-3)
        it += it2
        if ok2 and (not ok or res2 < res):
            lam, res, ok = lam2, res2, True
    if not ok and fallback:
        lam, vec, solver = _direct_eigenpair(m)
        res = float(np.linalg.norm(m @ vec - lam * vec)) / max(abs(lam), 1e-300)
        return SpectralResult(max(lam, 0.0), it, res, solver)
    if not ok:
        raise NoConvergenceError(
            f"power iteration did not converge in {max_iter} iterations (residual {res:.3g})",
            residual=res,
            iterations=it,
        )
    return SpectralResult(max(lam, 0.0), it, res)


def tau_kw(stats):
    if not stats.mean_degree > 0:
        raise DegenerateGraphError("KW threshold undefined: mean degree is zero", estimator=KW)
    return ThresholdEstimate(1.0 / stats.mean_degree, KW)


def tau_mfa(stats):
    if not stats.second_moment > 0:
        raise DegenerateGraphError("MFA threshold undefined: second degree moment is zero", estimator=MFA)
    return ThresholdEstimate(stats.mean_degree / stats.second_moment, MFA)


def tau_spectral(w, tol=1e-10, max_iter=None):
    """``1/lambda_1``; labelled pAM for probability-weighted matrices, AM otherwise."""
    estimator = PAM if getattr(w, "kind", None) == WEIGHTED else AM
    lam = largest_eigenvalue(w, tol=tol, max_iter=max_iter).lambda_1
    if lam <= 0:
        raise DegenerateGraphError(f"{estimator} threshold undefined: lambda_1 = 0", estimator=estimator)
    return ThresholdEstimate(1.0 / lam, estimator)


def summarize(values, estimator, method=None, n_excluded=0):
    """Ensemble mean/std of per-instance thresholds, reduced in index order."""
    vals = np.asarray([v for v in values if v is not None], dtype=float)
    total = len(vals) + n_excluded
    if len(vals) == 0:
        raise DegenerateGraphError(f"all {total} {estimator} instances are degenerate", estimator=estimator)
    mean = float(np.mean(vals))
    std = float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0
    return ThresholdEstimate(mean, estimator, method, mean, std, total, n_excluded)


def _safe_tau(w, tol):
    try:
        return tau_spectral(w, tol=tol).value
    except DegenerateGraphError:
        return None


def waxman_seed(master_seed, n, k):
    return derive_seed(master_seed, "waxman", n, k)


def link_seed(master_seed, n, k, j):
    return derive_seed(master_seed, "links", n, k, j)


def _outer_instance(k, geo, ph, method, n_inner, master_seed, tol):
    seed = waxman_seed(master_seed, geo.n_nodes, k)
    if method == 1:
        m1 = expected_adjacency(geo, ph, waxman_positions(geo, seed))
        return [(k, None, seed, _safe_tau(m1, tol))]
    w = apply_quantum_weights(generate_waxman(geo, seed), ph)
    if method == 2:
        return [(k, None, seed, _safe_tau(w, tol))]
    out = []
    for j in range(n_inner):
        s = link_seed(master_seed, geo.n_nodes, k, j)
        out.append((k, j, s, _safe_tau(sample_link_realization(w, s), tol)))
    return out


def ensemble_instances(geo, ph, method, n_outer, n_inner=1, master_seed=0, workers=1, tol=1e-10):
    """Per-instance spectral thresholds as ``(outer, inner, seed, tau_or_None)`` tuples.

    Method 1 resamples only node positions (the same positions method 2 uses
    for the same outer index); method 3 draws ``n_inner`` link realizations
    per fiber topology.
    """
    if method not in (1, 2, 3):
        raise InvalidArgumentError(f"method must be 1, 2 or 3, got {method}")
    if n_outer < 1:
        raise InvalidArgumentError("n_outer must be >= 1")
    if method == 3 and n_inner < 1:
        raise InvalidArgumentError("method 3 needs n_inner >= 1")
    fn = partial(_outer_instance, geo=geo, ph=ph, method=method, n_inner=n_inner, master_seed=master_seed, tol=tol)
    rows = []
    for chunk in ordered_map(fn, range(n_outer), workers):
        rows.extend(chunk)
    return rows


def ensemble_threshold(geo, ph, method, n_outer, n_inner=1, master_seed=0, workers=1, tol=1e-10):
    rows = ensemble_instances(geo, ph, method, n_outer, n_inner, master_seed, workers, tol)
    taus = [r[3] for r in rows]
    excluded = sum(t is None for t in taus)
    estimator = AM if method == 3 else PAM
    return summarize(taus, estimator, method, excluded)


def fit_scaling(points, variances=None, mean_degrees=None):
    """Fit ``tau = c/N`` through the origin (regression of tau on 1/N).

    Inverse-variance weights are used when ``variances`` are given and all
    positive.  ``c_err`` is the residual-based standard error.  If
    ``mean_degrees`` is supplied the log-log slope of tau against <k> is
    attached as well.
    """
    pts = [(float(n), float(t)) for n, t in points]
    if len(pts) < 3:
        raise InsufficientDataError(f"need at least 3 points, got {len(pts)}")
    ns = np.array([p[0] for p in pts])
    if len(set(ns.tolist())) != len(ns):
        raise InsufficientDataError("N values must be distinct")
    taus = np.array([p[1] for p in pts])
    x = 1.0 / ns
    wts = np.ones_like(x)
    if variances is not None:
        var = np.asarray(variances, dtype=float)
        if np.all(var > 0):
            wts = 1.0 / var
    sxx = float(np.sum(wts * x * x))
    c = float(np.sum(wts * x * taus)) / sxx
    resid = taus - c * x
    s2 = float(np.sum(wts * resid * resid)) / (len(x) - 1)
    c_err = math.sqrt(max(s2, 0.0) / sxx)
    slope = slope_err = None
    if mean_degrees is not None:
        ll = fit_loglog(mean_degrees, taus)
        slope, slope_err = ll.slope, ll.slope_err
    return ScalingFit(c, c_err, "c-over-N", slope, slope_err)


def fit_loglog(mean_degrees, taus):
    """Ordinary least squares of log(tau) on log(<k>); ``c`` is exp(intercept)."""
    k = np.asarray(mean_degrees, dtype=float)
    t = np.asarray(taus, dtype=float)
    if len(k) < 3 or len(k) != len(t):
        raise InsufficientDataError("need at least 3 (<k>, tau) pairs")
    if np.any(k <= 0) or np.any(t <= 0):
        raise InvalidArgumentError("log-log fit needs positive <k> and tau")
    lx, ly = np.log(k), np.log(t)
    design = np.column_stack((lx, np.ones_like(lx)))
    coef, _, rank, _ = np.linalg.lstsq(design, ly, rcond=None)
    if rank < 2:
        raise InsufficientDataError("log-log fit needs at least two distinct <k> values")
    resid = ly - design @ coef
    dof = len(lx) - 2
    s2 = float(resid @ resid) / dof if dof > 0 else 0.0
    cov = s2 * np.linalg.inv(design.T @ design)
    slope, intercept = float(coef[0]), float(coef[1])
    c = math.exp(intercept)
    return ScalingFit(c, c * math.sqrt(cov[1, 1]), "loglog-slope", slope, math.sqrt(cov[0, 0]))
