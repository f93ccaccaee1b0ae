"""Command-line front end: ``qnet-epi <subcommand>``.

Exit codes: 0 success, 1 I/O failure, 2 usage or config error,
3 degenerate input, 4 capability exceeded.
"""

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .dynamics import (
    EpidemicParams,
    exact_markov_expectation,
    kw_solution,
    run_direct_sim,
    run_mnlds,
)
from .errors import ConfigError, DegenerateGraphError, InvalidArgumentError, MalformedFileError, TooLargeError
from .graphio import load_graph, save_graph
from .graphs import (
    GeoParams,
    PhotonicParams,
    apply_quantum_weights,
    complete_graph,
    degree_stats,
    generate_er,
    generate_waxman,
    path_graph,
)
from .harness import ENSEMBLE_HEADER, TRAJ_HEADER, Table, load_config, ratio_label, run_experiment, table_to_csv, write_report
from .thresholds import ensemble_threshold, largest_eigenvalue, tau_kw, tau_mfa, tau_spectral

OUTPUT_ENV = "QNET_OUTPUT_DIR"
EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_DEGENERATE, EXIT_CAPABILITY = 0, 1, 2, 3, 4


def _default_dir():
    return Path(os.environ.get(OUTPUT_ENV, "."))


def _add_source_flags(p, required_model=False):
    p.add_argument("--model", choices=["er", "waxman", "quantum-waxman", "path", "complete"], required=required_model)
    p.add_argument("--n", type=int, nargs="+", help="node count (several allowed with --ensemble)")
    p.add_argument("--p", type=float, help="ER edge probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r-max", type=float, default=1600.0)
    p.add_argument("--alpha-l", type=float, default=226.0)
    p.add_argument("--beta-l", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=0.2)
    p.add_argument("--n-photons", type=int, default=1000)


def build_parser():
    parser = argparse.ArgumentParser(prog="qnet-epi", description="Epidemics on classical and quantum networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a graph file")
    _add_source_flags(gen, required_model=True)
    gen.add_argument("--out", type=Path)

    thr = sub.add_parser("threshold", help="epidemic thresholds of a graph or ensemble")
    thr.add_argument("--graph", type=Path)
    _add_source_flags(thr)
    thr.add_argument("--estimator", choices=["kw", "mfa", "am", "all"], default="all")
    thr.add_argument("--ensemble", action="store_true", help="Waxman ensemble threshold (CSV output)")
    thr.add_argument("--method", type=int, choices=[1, 2, 3], default=2)
    thr.add_argument("--instances", type=int, default=50)
    thr.add_argument("--inner", type=int, default=20)
    thr.add_argument("--workers", type=int, default=1)
    thr.add_argument("--out", type=Path)

    sim = sub.add_parser("simulate", help="simulate SIS dynamics on a graph")
    sim.add_argument("--graph", type=Path)
    _add_source_flags(sim)
    sim.add_argument("--method", choices=["mnlds", "direct", "kw", "exact"], default="mnlds")
    sim.add_argument("--beta", type=float, default=0.05)
    group = sim.add_mutually_exclusive_group()
    group.add_argument("--delta", type=float)
    group.add_argument("--delta-ratio", type=float, help="curing rate in units of beta * lambda_1")
    sim.add_argument("--p0", type=float, default=0.5)
    sim.add_argument("--t-max", type=int, default=None)
    sim.add_argument("--conv-tol", type=float, default=1e-8)
    sim.add_argument("--runs", type=int, default=20)
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--out", type=Path)

    exp = sub.add_parser("experiment", help="run a configured experiment pipeline")
    exp.add_argument("config", type=Path)
    exp.add_argument("--workers", type=int)
    exp.add_argument("--output-dir", type=Path)

    val = sub.add_parser("validate-config", help="check an experiment config")
    val.add_argument("config", type=Path)
    return parser


class UsageError(Exception):
    pass


def _single_n(args):
    if not args.n or len(args.n) != 1:
        raise UsageError("--n takes exactly one value here")
    return args.n[0]


def _geo(args, n):
    return GeoParams(args.r_max, args.alpha_l, args.beta_l, n)


def _build_graph(args):
    """Return (WeightedAdjacency, positions) from --graph or generator flags."""
    if getattr(args, "graph", None) is not None:
        if args.model is not None:
            raise UsageError("--graph and --model are mutually exclusive")
        return load_graph(args.graph)
    if args.model is None:
        raise UsageError("need --graph or --model")
    n = _single_n(args)
    if args.model == "er":
        if args.p is None:
            raise UsageError("--model er needs --p")
        g = generate_er(n, args.p, args.seed)
        return g.to_weighted(), g.positions
    if args.model in ("waxman", "quantum-waxman"):
        g = generate_waxman(_geo(args, n), args.seed)
        if args.model == "waxman":
            return g.to_weighted(), g.positions
        return apply_quantum_weights(g, PhotonicParams(args.gamma, args.n_photons)), g.positions
    w = path_graph(n) if args.model == "path" else complete_graph(n)
    return w, None


def cmd_generate(args):
    w, pos = _build_graph(args)
    out = args.out or _default_dir() / f"{args.model}_n{_single_n(args)}_seed{args.seed}.qnet"
    save_graph(w, pos, out)
    stats = degree_stats(w)
    print(f"wrote {out}")
    print(f"nodes {w.n}")
    print(f"edges {w.n_edges}")
    print(f"mean_degree {stats.mean_degree!r}")
    return EXIT_OK


def cmd_threshold(args):
    if args.ensemble:
        if args.graph is not None or args.model not in (None, "quantum-waxman"):
            raise UsageError("--ensemble samples quantum Waxman graphs; drop --graph/--model")
        if not args.n:
            raise UsageError("--ensemble needs --n")
        ph = PhotonicParams(args.gamma, args.n_photons)
        table = Table(list(ENSEMBLE_HEADER))
        for n in args.n:
            est = ensemble_threshold(_geo(args, n), ph, args.method, args.instances, args.inner, args.seed, args.workers)
            table.add(n, est.method_name, est.estimator, est.ensemble_mean, est.ensemble_std, est.n_instances, est.n_excluded)
            print(f"N={n} method={est.method_name} {est.estimator} mean_tau {est.ensemble_mean!r} "
                  f"std_tau {est.ensemble_std!r} n_excluded {est.n_excluded}")
        text = table_to_csv(table)
        if args.out:
            args.out.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return EXIT_OK

    w, _ = _build_graph(args)
    stats = degree_stats(w)
    wanted = ["kw", "mfa", "am"] if args.estimator == "all" else [args.estimator]
    for name in wanted:
        est = {"kw": lambda: tau_kw(stats), "mfa": lambda: tau_mfa(stats), "am": lambda: tau_spectral(w)}[name]()
        print(f"{est.estimator} tau {est.value!r}")
    return EXIT_OK


def cmd_simulate(args):
    w, _ = _build_graph(args)
    if args.method == "exact" and w.n > 12:
        raise TooLargeError(f"exact method supports N <= 12, graph has N={w.n}")
    if args.delta is None and args.delta_ratio is None:
        raise UsageError("need --delta or --delta-ratio")
    lam = largest_eigenvalue(w).lambda_1
    delta_c = args.beta * lam
    if args.delta_ratio is not None:
        if delta_c == 0:
            raise DegenerateGraphError("delta_c undefined on an edgeless graph", estimator="AM")
        delta, ratio = args.delta_ratio * delta_c, args.delta_ratio
    else:
        delta = args.delta
        ratio = delta / delta_c if delta_c > 0 else float("inf")
    params = EpidemicParams(args.beta, delta, args.p0)

    if args.method == "mnlds":
        tr = run_mnlds(w, params, args.t_max or 10_000, args.conv_tol)
    elif args.method == "direct":
        tr = run_direct_sim(w, params, args.t_max or 2000, args.runs, args.seed, args.workers)
    elif args.method == "exact":
        tr = exact_markov_expectation(w, params, args.p0, args.t_max or 100)
    else:
        t_max = args.t_max or 100
        tr = kw_solution(params, degree_stats(w).mean_degree, args.p0, np.arange(t_max + 1, dtype=float))

    table = Table(list(TRAJ_HEADER))
    std = tr.eta_std if tr.eta_std is not None else np.zeros_like(tr.eta)
    for t, (m, s) in enumerate(zip(tr.eta, std)):
        table.add(t, float(m), float(s), tr.method)
    out = args.out or _default_dir() / f"traj_{tr.method}_delta{ratio_label(ratio)}.csv"
    Path(out).write_text(table_to_csv(table), encoding="utf-8")
    print(f"wrote {out}")
    print(f"delta {delta!r} delta_c {delta_c!r}")
    print(f"eta0 {tr.eta0!r}")
    print(f"eta_final {tr.eta_final!r}")
    print(f"steps {tr.steps}")
    print(f"converged {tr.converged}")
    return EXIT_OK


def _config_path(path):
    """Accept ``configs/name`` for ``configs/name.yaml``."""
    if path.exists() or path.suffix:
        return path
    for ext in (".yaml", ".yml"):
        if path.with_suffix(ext).exists():
            return path.with_suffix(ext)
    return path


def cmd_experiment(args):
    cfg = load_config(_config_path(args.config))
    if args.workers is not None:
        cfg.workers = args.workers
    report = run_experiment(cfg)
    out = write_report(report, args.output_dir or _resolve_output(cfg.output_dir))
    for line in report.summary:
        print(line)
    for name, fit in report.fits.items():
        print(f"fit {name}: c {fit.c!r} c_err {fit.c_err!r}" + (f" slope {fit.slope!r}" if fit.slope is not None else ""))
    print(f"wrote {out}")
    if report.failures:
        for f in report.failures:
            print(f"failed point: {f}", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def _resolve_output(path):
    p = Path(path)
    return p if p.is_absolute() or OUTPUT_ENV not in os.environ else _default_dir() / p


def cmd_validate(args):
    cfg = load_config(_config_path(args.config))
    print(f"ok: {cfg.experiment}")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "threshold": cmd_threshold,
    "simulate": cmd_simulate,
    "experiment": cmd_experiment,
    "validate-config": cmd_validate,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateGraphError as exc:
        print(f"error: degenerate input for estimator {exc.estimator}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except (OSError, MalformedFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
