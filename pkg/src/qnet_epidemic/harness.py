"""Config-driven experiment pipelines producing plot-ready CSV files.

Each pipeline takes an :class:`ExperimentConfig` and returns an
:class:`ExperimentReport`; :func:`write_report` turns the report into CSV
files plus a ``report.txt`` summary.  All randomness is derived from
``master_seed`` so any row can be regenerated on its own, and output does not
depend on the number of workers.
"""

import csv
import io
import math
import time
from dataclasses import asdict, dataclass, field
from functools import partial
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .dynamics import EpidemicParams, run_direct_sim, run_mnlds
from .errors import ConfigError, DegenerateGraphError, InvalidArgumentError, QNetError
from .graphs import (
    GeoParams,
    PhotonicParams,
    apply_quantum_weights,
    degree_stats,
    generate_waxman,
    sample_link_realization,
)
from .parallel import ordered_map
from .seeding import derive_seed
from .thresholds import (
    AM,
    KW,
    MFA,
    PAM,
    METHOD_NAMES,
    ensemble_instances,
    fit_loglog,
    fit_scaling,
    largest_eigenvalue,
    link_seed,
    summarize,
    tau_kw,
    tau_mfa,
    tau_spectral,
    waxman_seed,
)

EXPERIMENTS = (
    "degree-dist",
    "threshold-scaling",
    "loglog-asymptote",
    "dynamics-sweep",
    "method-compare",
    "photon-sweep",
    "radius-sweep",
)
MODELS = ("classical", "quantum")
ENSEMBLE_HEADER = ["N", "method", "estimator", "mean_tau", "std_tau", "n_instances", "n_excluded"]
TRAJ_HEADER = ["t", "eta_mean", "eta_std", "method"]


@dataclass
class ExperimentConfig:
    experiment: str
    geo: GeoParams = field(default_factory=GeoParams)
    photonic: PhotonicParams = field(default_factory=PhotonicParams)
    epidemic: EpidemicParams = field(default_factory=lambda: EpidemicParams(0.05, 0.0, 0.5))
    n_values: list = field(default_factory=lambda: [500])
    delta_ratios: list = field(default_factory=lambda: [0.1, 0.3, 0.5, 1.0])
    ensemble_size: int = 50
    inner_samples: int = 20
    master_seed: int = 0
    output_dir: str = "results"
    # pipeline-specific extras
    models: list = field(default_factory=lambda: list(MODELS))
    photon_values: list = field(default_factory=lambda: [1, 10, 100, 1000, 10_000, 100_000, 1_000_000])
    gamma_values: list = field(default_factory=lambda: [0.1, 0.15, 0.2])
    r_max_values: list = field(default_factory=lambda: [200.0, 400.0, 800.0, 1600.0])
    fit_min_n: int = 0
    fit_points: int = 3
    t_max: int = 10_000
    conv_tol: float = 1e-8
    direct_runs: int = 20
    direct_t_max: int = 2000
    workers: int = 1

    def to_dict(self):
        d = asdict(self)
        d["epidemic"]["initial_infection"] = np.asarray(self.epidemic.initial_infection).tolist()
        return d


@dataclass
class Table:
    header: list
    rows: list = field(default_factory=list)

    def add(self, *values):
        self.rows.append(list(values))


@dataclass
class ExperimentReport:
    experiment: str
    tables: dict
    fits: dict = field(default_factory=dict)
    summary: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    wall_time: float = 0.0
    config: dict = field(default_factory=dict)
    version: str = __version__

    @property
    def ok(self):
        return not self.failures


# ---------------------------------------------------------------- config


_SECTIONS = {
    "geo": ("r_max", "alpha_l", "beta_l", "n_nodes"),
    "photonic": ("gamma", "n_photons"),
    "epidemic": ("beta", "delta", "initial_infection"),
}
_LIST_KEYS = ("n_values", "delta_ratios", "models", "photon_values", "gamma_values", "r_max_values")
_SCALAR_KEYS = {
    "experiment": str,
    "ensemble_size": int,
    "inner_samples": int,
    "master_seed": int,
    "output_dir": str,
    "fit_min_n": int,
    "fit_points": int,
    "t_max": int,
    "conv_tol": float,
    "direct_runs": int,
    "direct_t_max": int,
    "workers": int,
}


def _key_lines(text):
    """Map dotted key paths to 1-based line numbers."""
    lines = {}
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return lines

    def walk(node, prefix):
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                path = f"{prefix}{k.value}"
                lines[path] = k.start_mark.line + 1
                walk(v, path + ".")

    walk(root, "")
    return lines


def parse_config(text):
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"cannot parse config: {getattr(exc, 'problem', exc)}", line=mark.line + 1 if mark else None) from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping of keys to values")
    return config_from_dict(data, _key_lines(text))


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def config_from_dict(data, lines=None):
    lines = lines or {}

    def err(msg, key):
        return ConfigError(msg, key=key, line=lines.get(key))

    known = set(_SECTIONS) | set(_LIST_KEYS) | set(_SCALAR_KEYS)
    for key in data:
        if key not in known:
            raise err("unknown key", key)
    if "experiment" not in data:
        raise ConfigError("missing required key", key="experiment")
    if data["experiment"] not in EXPERIMENTS:
        raise err(f"unknown experiment {data['experiment']!r}; expected one of {EXPERIMENTS}", "experiment")

    kwargs = {}
    for key, typ in _SCALAR_KEYS.items():
        if key in data:
            val = data[key]
            if typ is int and (isinstance(val, bool) or not isinstance(val, int)):
                raise err(f"expected an integer, got {val!r}", key)
            if typ is float and not isinstance(val, (int, float)):
                raise err(f"expected a number, got {val!r}", key)
            if typ is str and not isinstance(val, str):
                raise err(f"expected a string, got {val!r}", key)
            kwargs[key] = typ(val)
    for key in _LIST_KEYS:
        if key in data:
            val = data[key]
            if not isinstance(val, list) or not val:
                raise err("expected a nonempty list", key)
            kwargs[key] = list(val)

    builders = {"geo": GeoParams, "photonic": PhotonicParams}
    for section, fields in _SECTIONS.items():
        if section not in data:
            continue
        sub = data[section]
        if not isinstance(sub, dict):
            raise err("expected a mapping", section)
        for key in sub:
            if key not in fields:
                raise err("unknown key", f"{section}.{key}")
        try:
            if section == "epidemic":
                kwargs[section] = EpidemicParams(
                    float(sub.get("beta", 0.05)),
                    float(sub.get("delta", 0.0)),
                    sub.get("initial_infection", 0.5),
                )
            else:
                kwargs[section] = builders[section](**sub)
        except (InvalidArgumentError, TypeError) as exc:
            bad = next((f"{section}.{k}" for k in sub if k in str(exc)), section)
            raise err(str(exc), bad) from None

    cfg = ExperimentConfig(**kwargs)
    if cfg.ensemble_size < 1:
        raise err("must be >= 1", "ensemble_size")
    if cfg.inner_samples < 1:
        raise err("must be >= 1", "inner_samples")
    if any(int(n) != n or n < 1 for n in cfg.n_values):
        raise err("node counts must be positive integers", "n_values")
    if any(not r > 0 for r in cfg.delta_ratios):
        raise err("ratios must be > 0", "delta_ratios")
    if any(m not in MODELS for m in cfg.models):
        raise err(f"models must be drawn from {MODELS}", "models")
    if any(int(n) != n or n < 1 for n in cfg.photon_values):
        raise err("photon counts must be integers >= 1", "photon_values")
    if cfg.fit_points < 3:
        raise err("need at least 3 points", "fit_points")
    return cfg


# ---------------------------------------------------------------- output


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if v is None:
        return ""
    return str(v)


def table_to_csv(table):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_report(report, output_dir=None):
    out = Path(output_dir if output_dir is not None else report.config.get("output_dir", "results"))
    out.mkdir(parents=True, exist_ok=True)
    for name, table in report.tables.items():
        (out / name).write_text(table_to_csv(table), encoding="utf-8")
    lines = [
        f"experiment: {report.experiment}",
        f"version: {report.version}",
        f"wall_time_s: {report.wall_time:.3f}",
        "",
    ]
    if report.fits:
        lines.append("fits:")
        for name, fit in report.fits.items():
            extra = f" slope={fit.slope!r} slope_err={fit.slope_err!r}" if fit.slope is not None else ""
            lines.append(f"  {name}: model={fit.model} c={fit.c!r} c_err={fit.c_err!r}{extra}")
        lines.append("")
    lines += report.summary
    if report.failures:
        lines.append("")
        lines.append("failures:")
        lines += [f"  {f}" for f in report.failures]
    lines += ["", "config:", yaml.safe_dump(report.config, sort_keys=True).rstrip()]
    (out / "report.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return out


# ---------------------------------------------------------------- threshold scaling


def _scaling_instance(k, geo, ph, models, master_seed):
    seed = waxman_seed(master_seed, geo.n_nodes, k)
    g = generate_waxman(geo, seed)
    rows = []
    mats = []
    if "classical" in models:
        mats.append(("classical", g.to_weighted()))
    if "quantum" in models:
        mats.append(("quantum", apply_quantum_weights(g, ph)))
    for model, w in mats:
        stats = degree_stats(w)
        for estimator, fn in ((KW, tau_kw), (MFA, tau_mfa), ("spectral", tau_spectral)):
            try:
                est = fn(w) if estimator == "spectral" else fn(stats)
                rows.append((model, k, seed, est.estimator, est.value, stats.mean_degree))
            except DegenerateGraphError as exc:
                name = exc.estimator or estimator
                rows.append((model, k, seed, name, None, stats.mean_degree))
    return rows


def _threshold_table(cfg):
    """Per-instance thresholds for every N; shared by the scaling and log-log pipelines."""
    inst = Table(["N", "model", "instance", "seed", "estimator", "tau", "mean_degree"])
    per_n = {}
    for n in cfg.n_values:
        geo = cfg.geo.with_nodes(n)
        fn = partial(_scaling_instance, geo=geo, ph=cfg.photonic, models=tuple(cfg.models), master_seed=cfg.master_seed)
        rows = [r for chunk in ordered_map(fn, range(cfg.ensemble_size), cfg.workers) for r in chunk]
        per_n[n] = rows
        for model, k, seed, est, tau, kmean in rows:
            inst.add(n, model, k, seed, est, tau, kmean)
    return inst, per_n


def _aggregate(per_n, cfg):
    """{(model, estimator): {N: ThresholdEstimate}} plus {(model): {N: mean <k>}}."""
    agg, degrees, failures = {}, {}, []
    for n, rows in per_n.items():
        for model in cfg.models:
            mine = [r for r in rows if r[0] == model]
            kvals = {r[1]: r[5] for r in mine}
            degrees.setdefault(model, {})[n] = float(np.mean([kvals[i] for i in sorted(kvals)]))
            for est in sorted({r[3] for r in mine}):
                taus = [r[4] for r in mine if r[3] == est]
                excluded = sum(t is None for t in taus)
                try:
                    agg.setdefault((model, est), {})[n] = summarize(taus, est, 2 if model == "quantum" else None, excluded)
                except DegenerateGraphError as exc:
                    failures.append(f"N={n} model={model} estimator={est}: {exc}")
    return agg, degrees, failures


def _method_label(model):
    return METHOD_NAMES[2] if model == "quantum" else "classical"


def run_threshold_scaling(cfg):
    t0 = time.perf_counter()
    inst, per_n = _threshold_table(cfg)
    agg, degrees, failures = _aggregate(per_n, cfg)
    table = Table(list(ENSEMBLE_HEADER) + ["stderr_tau"])
    fits, summary = {}, []
    for (model, est), by_n in agg.items():
        for n in sorted(by_n):
            e = by_n[n]
            table.add(n, _method_label(model), est, e.ensemble_mean, e.ensemble_std, e.n_instances, e.n_excluded,
                      e.stderr)
        pts = [(n, by_n[n].ensemble_mean) for n in sorted(by_n) if n >= cfg.fit_min_n]
        if len(pts) >= 3:
            var = [by_n[n].stderr ** 2 for n in sorted(by_n) if n >= cfg.fit_min_n]
            kk = [degrees[model][n] for n in sorted(by_n) if n >= cfg.fit_min_n]
            fit = fit_scaling(pts, variances=var, mean_degrees=kk)
            fits[f"{model}/{est}"] = fit
            summary.append(f"{model} {est}: tau ~ c/N with c = {fit.c:.4f} +- {fit.c_err:.4f}")
    table.rows.sort(key=lambda r: (r[1], r[2], r[0]))
    fit_table = Table(["model", "estimator", "c", "c_err", "slope", "slope_err"])
    for name, fit in fits.items():
        model, est = name.split("/")
        fit_table.add(model, est, fit.c, fit.c_err, fit.slope, fit.slope_err)
    return ExperimentReport(
        "threshold-scaling",
        {"thresholds.csv": table, "instances.csv": inst, "fits.csv": fit_table},
        fits,
        summary,
        failures,
        time.perf_counter() - t0,
        cfg.to_dict(),
    )


def run_loglog_asymptote(cfg):
    t0 = time.perf_counter()
    inst, per_n = _threshold_table(cfg)
    agg, degrees, failures = _aggregate(per_n, cfg)
    table = Table(["N", "model", "estimator", "mean_degree", "tau", "log_k", "log_tau", "tau_times_k"])
    fits, summary = {}, []
    for model in cfg.models:
        est = PAM if model == "quantum" else AM
        by_n = agg.get((model, est), {})
        ns = sorted(by_n)
        for n in ns:
            k, tau = degrees[model][n], by_n[n].ensemble_mean
            table.add(n, model, est, k, tau, math.log(k), math.log(tau), tau * k)
        top = ns[-cfg.fit_points:]
        if len(top) >= 3:
            fit = fit_loglog([degrees[model][n] for n in top], [by_n[n].ensemble_mean for n in top])
            fits[f"{model}/loglog"] = fit
            tk = [by_n[n].ensemble_mean * degrees[model][n] for n in ns]
            summary.append(
                f"{model} {est}: slope {fit.slope:.4f} (deviation from -1: {fit.slope + 1:+.4f}); "
                f"tau*<k> - 1 ranges {min(tk) - 1:+.4f} .. {max(tk) - 1:+.4f}"
            )
    return ExperimentReport(
        "loglog-asymptote",
        {"loglog.csv": table, "instances.csv": inst},
        fits,
        summary,
        failures,
        time.perf_counter() - t0,
        cfg.to_dict(),
    )


# ---------------------------------------------------------------- degree distributions


def _degree_instance(k, geo, ph, models, master_seed):
    seed = waxman_seed(master_seed, geo.n_nodes, k)
    g = generate_waxman(geo, seed)
    out = {"seeds": {}}
    if "classical" in models:
        out["classical"] = g.adjacency.sum(axis=1).astype(np.int64)
        out["seeds"]["classical"] = (seed, None)
    if "quantum" in models:
        w = apply_quantum_weights(g, ph)
        lseed = link_seed(master_seed, geo.n_nodes, k, 0)
        b = sample_link_realization(w, lseed)
        out["quantum"] = np.asarray(b.weights).sum(axis=1).astype(np.int64)
        out["seeds"]["quantum"] = (seed, lseed)
    return out


def run_degree_dist(cfg):
    """Pooled degree histograms; quantum degrees come from sampled link realizations."""
    t0 = time.perf_counter()
    hist = Table(["N", "model", "k", "p_k"])
    moments = Table(["N", "model", "mean_degree", "second_moment", "n_instances"])
    inst = Table(["N", "model", "instance", "seed", "link_seed", "mean_degree"])
    for n in cfg.n_values:
        geo = cfg.geo.with_nodes(n)
        fn = partial(_degree_instance, geo=geo, ph=cfg.photonic, models=tuple(cfg.models), master_seed=cfg.master_seed)
        parts = ordered_map(fn, range(cfg.ensemble_size), cfg.workers)
        for model in cfg.models:
            for k, p in enumerate(parts):
                seed, lseed = p["seeds"][model]
                inst.add(n, model, k, seed, lseed, float(p[model].mean()))
            deg = np.concatenate([p[model] for p in parts])
            counts = np.bincount(deg)
            for k, c in enumerate(counts):
                if c:
                    hist.add(n, model, k, c / deg.size)
            moments.add(n, model, float(deg.mean()), float(np.mean(deg.astype(float) ** 2)), cfg.ensemble_size)
    return ExperimentReport(
        "degree-dist",
        {"degree_dist.csv": hist, "degree_moments.csv": moments, "instances.csv": inst},
        wall_time=time.perf_counter() - t0,
        config=cfg.to_dict(),
    )


# ---------------------------------------------------------------- method comparison


def combined_std(a, b):
    """Pooled standard deviation of two equally weighted ensembles."""
    return math.sqrt((a * a + b * b) / 2.0)


def run_method_compare(cfg):
    t0 = time.perf_counter()
    table = Table(list(ENSEMBLE_HEADER) + ["stderr_tau"])
    inst = Table(["N", "method", "outer", "inner", "seed", "tau"])
    summary, failures = [], []
    results = {}
    for n in cfg.n_values:
        geo = cfg.geo.with_nodes(n)
        for method in (1, 2, 3):
            rows = ensemble_instances(
                geo, cfg.photonic, method, cfg.ensemble_size, cfg.inner_samples, cfg.master_seed, cfg.workers
            )
            for outer, inner, seed, tau in rows:
                inst.add(n, METHOD_NAMES[method], outer, inner, seed, tau)
            taus = [r[3] for r in rows]
            try:
                est = summarize(taus, AM if method == 3 else PAM, method, sum(t is None for t in taus))
            except DegenerateGraphError as exc:
                failures.append(f"N={n} method={method}: {exc}")
                continue
            results[(n, method)] = est
            table.add(n, METHOD_NAMES[method], est.estimator, est.ensemble_mean, est.ensemble_std,
                      est.n_instances, est.n_excluded, est.stderr)
        if all((n, m) in results for m in (1, 2, 3)):
            m1, m2, m3 = (results[(n, m)] for m in (1, 2, 3))
            band = combined_std(m2.ensemble_std, m3.ensemble_std)
            summary.append(
                f"N={n}: |M2-M3| = {abs(m2.ensemble_mean - m3.ensemble_mean):.5g}, "
                f"|M1-M2| = {abs(m1.ensemble_mean - m2.ensemble_mean):.5g}, band = {band:.5g}"
            )
    return ExperimentReport("method-compare", {"methods.csv": table, "instances.csv": inst}, {}, summary,
                            failures, time.perf_counter() - t0, cfg.to_dict())


# ---------------------------------------------------------------- photon / radius sweeps


def _sweep_instance(k, geo, gammas, photons, master_seed):
    seed = waxman_seed(master_seed, geo.n_nodes, k)
    g = generate_waxman(geo, seed)
    out = {"seed": seed}
    try:
        out["classical"] = tau_spectral(g.to_weighted()).value
    except DegenerateGraphError:
        out["classical"] = None
    for gamma in gammas:
        for n_p in photons:
            w = apply_quantum_weights(g, PhotonicParams(gamma, int(n_p)))
            try:
                out[(gamma, n_p)] = tau_spectral(w).value
            except DegenerateGraphError:
                out[(gamma, n_p)] = None
    return out


def _sweep(cfg, points):
    header = ["N", "r_max", "model", "gamma", "n_photons", "mean_tau", "std_tau", "stderr_tau",
              "n_instances", "n_excluded"]
    table = Table(header)
    inst = Table(["N", "r_max", "instance", "seed", "model", "gamma", "n_photons", "tau"])
    failures = []
    for geo in points:
        fn = partial(_sweep_instance, geo=geo, gammas=tuple(cfg.gamma_values),
                     photons=tuple(int(x) for x in cfg.photon_values), master_seed=cfg.master_seed)
        parts = ordered_map(fn, range(cfg.ensemble_size), cfg.workers)
        keys = [("classical", None, None)] + [
            ("quantum", g, int(n)) for g in cfg.gamma_values for n in cfg.photon_values
        ]
        for model, gamma, n_p in keys:
            key = "classical" if model == "classical" else (gamma, n_p)
            taus = [p[key] for p in parts]
            for k, (p, tau) in enumerate(zip(parts, taus)):
                inst.add(geo.n_nodes, geo.r_max, k, p["seed"], model, gamma, n_p, tau)
            excluded = sum(t is None for t in taus)
            try:
                e = summarize(taus, AM, None, excluded)
            except DegenerateGraphError as exc:
                failures.append(f"N={geo.n_nodes} r_max={geo.r_max} {model} gamma={gamma} n_p={n_p}: {exc}")
                continue
            table.add(geo.n_nodes, geo.r_max, model, gamma, n_p, e.ensemble_mean, e.ensemble_std, e.stderr,
                      e.n_instances, e.n_excluded)
    return table, inst, failures


def run_photon_sweep(cfg):
    t0 = time.perf_counter()
    points = [cfg.geo.with_nodes(n) for n in cfg.n_values]
    table, inst, failures = _sweep(cfg, points)
    return ExperimentReport("photon-sweep", {"photon_sweep.csv": table, "instances.csv": inst}, {}, [],
                            failures, time.perf_counter() - t0, cfg.to_dict())


def run_radius_sweep(cfg):
    t0 = time.perf_counter()
    g = cfg.geo
    points = [GeoParams(float(r), g.alpha_l, g.beta_l, g.n_nodes) for r in cfg.r_max_values]
    table, inst, failures = _sweep(cfg, points)
    return ExperimentReport("radius-sweep", {"radius_sweep.csv": table, "instances.csv": inst}, {}, [],
                            failures, time.perf_counter() - t0, cfg.to_dict())


# ---------------------------------------------------------------- dynamics


def ratio_label(ratio):
    return f"{float(ratio):g}"


def run_dynamics_sweep(cfg):
    """One fixed quantum Waxman instance; mNLDS and direct simulation per delta/delta_c."""
    t0 = time.perf_counter()
    geo = cfg.geo
    seed = waxman_seed(cfg.master_seed, geo.n_nodes, 0)
    w = apply_quantum_weights(generate_waxman(geo, seed), cfg.photonic)
    beta = cfg.epidemic.beta
    lam = largest_eigenvalue(w).lambda_1
    if lam <= 0:
        raise DegenerateGraphError("dynamics instance has no links", estimator=PAM)
    delta_c = beta * lam
    tables = {}
    summary_tab = Table(["ratio", "delta", "delta_c", "method", "eta0", "eta_final", "steps", "converged", "seed"])
    failures, summary = [], [f"instance seed {seed}: lambda_1 = {lam!r}, delta_c = {delta_c!r}"]
    for idx, ratio in enumerate(cfg.delta_ratios):
        delta = ratio * delta_c
        try:
            params = EpidemicParams(beta, delta, cfg.epidemic.initial_infection)
        except InvalidArgumentError as exc:
            failures.append(f"ratio={ratio}: {exc}")
            continue
        mn = run_mnlds(w, params, cfg.t_max, cfg.conv_tol)
        dseed = derive_seed(cfg.master_seed, "dynamics", idx)
        di = run_direct_sim(w, params, cfg.direct_t_max, cfg.direct_runs, dseed, cfg.workers)
        for tr, s in ((mn, seed), (di, dseed)):
            tab = Table(list(TRAJ_HEADER))
            std = tr.eta_std if tr.eta_std is not None else np.zeros_like(tr.eta)
            for t, (m, sd) in enumerate(zip(tr.eta, std)):
                tab.add(t, float(m), float(sd), tr.method)
            tables[f"traj_{tr.method}_delta{ratio_label(ratio)}.csv"] = tab
            summary_tab.add(ratio, delta, delta_c, tr.method, tr.eta0, tr.eta_final, tr.steps, tr.converged, s)
        summary.append(
            f"delta = {ratio_label(ratio)} delta_c: mnlds eta_final {mn.eta_final:.5f} "
            f"(converged={mn.converged}, {mn.steps} steps), direct {di.eta_final:.5f}"
        )
    tables["dynamics.csv"] = summary_tab
    return ExperimentReport("dynamics-sweep", tables, {}, summary, failures, time.perf_counter() - t0, cfg.to_dict())


PIPELINES = {
    "degree-dist": run_degree_dist,
    "threshold-scaling": run_threshold_scaling,
    "loglog-asymptote": run_loglog_asymptote,
    "dynamics-sweep": run_dynamics_sweep,
    "method-compare": run_method_compare,
    "photon-sweep": run_photon_sweep,
    "radius-sweep": run_radius_sweep,
}


def run_experiment(cfg):
    try:
        return PIPELINES[cfg.experiment](cfg)
    except QNetError as exc:
        return ExperimentReport(cfg.experiment, {}, failures=[str(exc)], config=cfg.to_dict())
