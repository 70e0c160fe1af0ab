"""Command-line front end.

Subcommands: simulate, montecarlo, stability, sweep-fit, analytic.
Exit codes: 0 success, 1 usage or validation error, 2 undetermined run.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from . import __version__, analytic, monte_carlo, records
from .dynamics import SimParams, default_dt, from_angles
from .order_param import track
from .steady_state import run_full, run_to_classification

EXIT_OK, EXIT_USAGE, EXIT_UNDETERMINED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, fmt_default: str) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dt", type=float, default=None,
                   help="time step (default min(0.01, pi/(2N)))")
    p.add_argument("--t-max", type=float, default=100.0)
    p.add_argument("--check-every", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default=fmt_default)
    p.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circlepursuit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="run one trajectory")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--angles", help="comma-separated initial angles in radians")
    src.add_argument("--n", type=int, help="random initial condition with N bugs")
    p.add_argument("--trajectory-stride", type=int, default=None,
                   help="record every k-th step")
    p.add_argument("--order-param", action="store_true",
                   help="emit the (t, r, psi) series")
    p.add_argument("--full", action="store_true",
                   help="run past classification to full coalescence / one revolution")
    _common(p, "json")

    p = sub.add_parser("montecarlo", help="estimate the cycle probability for N bugs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=10_000)
    _common(p, "json")

    p = sub.add_parser("stability", help="three-bug perturbation-stability curve")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--alphas", type=int, default=20,
                   help="number of alphas spaced uniformly in (0, pi]")
    p.add_argument("--alpha-values", default=None,
                   help="explicit comma-separated alphas (overrides --alphas)")
    _common(p, "csv")

    p = sub.add_parser("sweep-fit", help="coalescence sweep over N plus power-law fit")
    p.add_argument("--n-grid", default="2:100:2", help="start:stop:step, stop inclusive")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--synthetic", default=None, metavar="A,P",
                   help="skip simulation; rows are exactly A*N**P (for checking the fit)")
    _common(p, "csv")

    p = sub.add_parser("analytic", help="closed-form values")
    p.add_argument("query", nargs="+",
                   help="p N | stab ALPHA | classify3 W1 W2 | classify4 T2 T3 T4 | quad RES")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    return parser


def _provenance(args, **extra) -> dict:
    prov = {"tool": "circlepursuit", "version": __version__, "command": args.command,
            "seed": args.seed, "t_max": args.t_max, "check_every": args.check_every}
    prov.update(extra)
    return prov


def _params(args, n: int) -> SimParams:
    dt = default_dt(n) if args.dt is None else args.dt
    if not dt < math.pi / n:
        raise UsageError(
            f"dt={dt} violates the rule dt < pi/N (pi/{n} = {math.pi / n:.6g}); "
            "larger steps let a bug pass several others in one step"
        )
    try:
        return SimParams(dt=dt, t_max=args.t_max, check_every=args.check_every)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _parse_floats(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None
    if not vals or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"bad number list {text!r}")
    return vals


def cmd_simulate(args) -> tuple[str, int]:
    if args.angles is not None:
        angles = _parse_floats(args.angles)
        if len(angles) < 2:
            raise UsageError("need at least two angles")
        cfg = from_angles(angles)
        init = {"init": "angles"}
    else:
        if args.n is None or args.n < 2:
            raise UsageError("--n must be >= 2")
        cfg = monte_carlo.sample_initial(args.n, monte_carlo.trial_rng(args.seed, args.n, 0))
        init = {"init": "random"}
    params = _params(args, cfg.n_bugs)
    want_traj = args.trajectory_stride is not None or args.order_param
    stride = args.trajectory_stride or 1
    if stride < 1:
        raise UsageError("--trajectory-stride must be >= 1")
    if args.full:
        res = run_full(cfg, params, stride=stride)
    else:
        res = run_to_classification(cfg, params, stride=stride if want_traj else None)
    code = EXIT_UNDETERMINED if res.outcome.kind == "undetermined" else EXIT_OK
    prov = _provenance(args, dt=params.dt, n_bugs=cfg.n_bugs, stride=stride, **init)
    series = track(res.trajectory) if args.order_param else None

    if args.format == "csv":
        if series is not None:
            rows = [(s.t, s.r, s.psi, s.psi_defined) for s in series]
            return records.write_csv(records.ORDER_COLUMNS, rows, prov), code
        traj = res.trajectory or [(0.0, cfg), (res.t_classified, res.final)]
        rows = [(t, *c.angles) for t, c in traj]
        return records.write_csv(records.trajectory_columns(cfg.n_bugs), rows, prov), code

    body = records.trial_to_dict(res)
    if not want_traj:
        body["trajectory"] = None
    body["initial"] = records.config_to_dict(cfg)
    body["provenance"] = prov
    body["order_parameter"] = None if series is None else [records.order_to_dict(s) for s in series]
    return records.dump_json(body), code


def cmd_montecarlo(args) -> tuple[str, int]:
    if args.n < 2 or args.trials < 1:
        raise UsageError("need --n >= 2 and --trials >= 1")
    params = _params(args, args.n)
    est = monte_carlo.estimate_cycle_probability(args.n, args.trials, params, args.seed, args.workers)
    coal = est.complement()
    prov = _provenance(args, dt=params.dt, trials=args.trials, n_bugs=args.n)
    if args.format == "csv":
        row = (args.n, est.m_trials, est.p_hat, est.std_err, est.ci95_low, est.ci95_high,
               coal.p_hat, coal.ci95_low, coal.ci95_high, est.undetermined_count, est.reliable)
        return records.write_csv(records.ESTIMATE_COLUMNS, [row], prov), EXIT_OK
    body = {"provenance": prov, "n_bugs": args.n,
            "cycle": records.estimate_to_dict(est),
            "coalesce": records.estimate_to_dict(coal),
            "reliable": est.reliable}
    return records.dump_json(body), EXIT_OK


def cmd_stability(args) -> tuple[str, int]:
    if args.alpha_values is not None:
        alphas = _parse_floats(args.alpha_values)
    else:
        if args.alphas < 1:
            raise UsageError("--alphas must be >= 1")
        alphas = monte_carlo.default_alphas(args.alphas).tolist()
    if any(not 0 < a <= math.pi for a in alphas):
        raise UsageError("every alpha must lie in (0, pi]")
    params = _params(args, 3)
    curve = monte_carlo.stability_experiment(alphas, args.trials, params, args.seed, args.workers)
    prov = _provenance(args, dt=params.dt, trials=args.trials, n_alphas=len(alphas))
    rows = []
    for a, est in curve:
        exact = analytic.stability_probability_3(a)
        rows.append((a, est.p_hat, est.std_err, est.ci95_low, est.ci95_high, exact,
                     est.covers(exact), est.m_trials, est.undetermined_count))
    if args.format == "csv":
        return records.write_csv(records.STABILITY_COLUMNS, rows, prov), EXIT_OK
    body = {"provenance": prov,
            "curve": [dict(zip(records.STABILITY_COLUMNS, r)) for r in rows]}
    return records.dump_json(body), EXIT_OK


def _parse_grid(text: str) -> list[int]:
    try:
        start, stop, step = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--n-grid must be start:stop:step, got {text!r}") from None
    if start < 2 or step < 1 or stop < start:
        raise UsageError("--n-grid needs start >= 2, step >= 1, stop >= start")
    return list(range(start, stop + 1, step))


def cmd_sweep_fit(args) -> tuple[str, int]:
    grid = _parse_grid(args.n_grid)
    if args.synthetic is not None:
        a, p = _parse_floats(args.synthetic)[:2]
        rows = [monte_carlo.SweepRow(n, monte_carlo.ProbabilityEstimate(
                    a * n**p, args.trials, 0.0, a * n**p, a * n**p, 0), args.seed, 0.0)
                for n in grid]
        prov = _provenance(args, trials=args.trials, n_grid=args.n_grid, synthetic=args.synthetic)
    else:
        for n in grid:
            _params(args, n)
        rows = monte_carlo.sweep(grid, args.trials, args.dt, args.seed, args.workers, args.t_max)
        prov = _provenance(args, trials=args.trials, n_grid=args.n_grid,
                           dt=args.dt if args.dt is not None else "min(0.01,pi/(2N))")
    try:
        fit = monte_carlo.fit_power_law(rows)
    except ValueError as e:
        raise UsageError(f"cannot fit: {e}") from None
    prov.update(fit_prefactor=repr(fit.prefactor), fit_exponent=repr(fit.exponent),
                fit_rms_log_residual=repr(fit.rms_log_residual))
    table = [(r.n_bugs, r.estimate.p_hat, r.estimate.std_err, r.estimate.ci95_low,
              r.estimate.ci95_high, r.estimate.m_trials, r.estimate.undetermined_count,
              float(fit(r.n_bugs))) for r in rows]
    if args.format == "csv":
        return records.write_csv(records.SWEEP_COLUMNS, table, prov), EXIT_OK
    body = {"provenance": prov, "rows": [records.sweep_row_to_dict(r) for r in rows],
            "fit": records.fit_to_dict(fit)}
    return records.dump_json(body), EXIT_OK


def cmd_analytic(args) -> tuple[str, int]:
    q, rest = args.query[0], args.query[1:]
    try:
        vals = [float(x) for x in rest]
    except ValueError:
        raise UsageError(f"non-numeric argument in {args.query}") from None

    def need(k):
        if len(vals) != k:
            raise UsageError(f"'{q}' takes {k} argument(s)")

    try:
        if q == "p":
            need(1)
            frac = analytic.exact_cycle_probability(int(vals[0]))
            value, text = float(frac), f"{frac.numerator}/{frac.denominator} = {float(frac):g}"
        elif q == "stab":
            need(1)
            value = analytic.stability_probability_3(vals[0])
            text = f"{value:.5f}"
        elif q == "classify3":
            need(2)
            value = text = analytic.classify_3(*vals)
        elif q == "classify4":
            need(3)
            value = text = analytic.classify_4(*vals)
        elif q == "quad":
            need(1)
            value = analytic.four_bug_probability_by_quadrature(int(vals[0]))
            text = f"{value:.6f}"
        else:
            raise UsageError(f"unknown query {q!r}")
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.format == "json":
        return records.dump_json({"query": args.query, "value": value,
                                  "version": __version__}), EXIT_OK
    return text + "\n", EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "montecarlo": cmd_montecarlo,
    "stability": cmd_stability,
    "sweep-fit": cmd_sweep_fit,
    "analytic": cmd_analytic,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"circlepursuit {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
