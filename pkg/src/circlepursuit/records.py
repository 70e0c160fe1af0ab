"""JSON and CSV serialization of results.

JSON floats use Python's shortest round-trip repr, so every record parses
back to an equal object. CSV tables write angles and statistics with 12
significant digits and carry provenance as leading ``# key=value`` lines.
Nothing time- or host-dependent is ever written.
"""

from __future__ import annotations

import io
import json
from dataclasses import asdict
from typing import Any, Iterable, Sequence

import numpy as np

from .dynamics import BugConfiguration
from .monte_carlo import PowerLawFit, ProbabilityEstimate, SweepRow
from .order_param import OrderParameterSample
from .steady_state import Outcome, TrialResult

# column layouts; changing any of these is a format break
ESTIMATE_COLUMNS = (
    "n_bugs", "trials", "p_cycle", "std_err", "ci95_low", "ci95_high",
    "p_coalesce", "coalesce_ci95_low", "coalesce_ci95_high", "undetermined", "reliable",
)
STABILITY_COLUMNS = (
    "alpha", "p_hat", "std_err", "ci95_low", "ci95_high", "analytic", "covers",
    "trials", "undetermined",
)
SWEEP_COLUMNS = (
    "n_bugs", "p_coalesce", "std_err", "ci95_low", "ci95_high", "trials",
    "undetermined", "fit",
)
ORDER_COLUMNS = ("t", "r", "psi", "psi_defined")


def fmt(x: Any) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def trajectory_columns(n: int) -> tuple[str, ...]:
    return ("t",) + tuple(f"theta_{j}" for j in range(1, n + 1))


def write_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]], provenance: dict) -> str:
    buf = io.StringIO()
    for key in sorted(provenance):
        buf.write(f"# {key}={provenance[key]}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        if len(row) != len(columns):
            raise ValueError("row length does not match the column layout")
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def read_csv(text: str) -> tuple[dict, list[str], list[list[str]]]:
    """Split a CSV written by :func:`write_csv` into (provenance, header, rows)."""
    prov, lines = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            k, _, v = line[2:].partition("=")
            prov[k] = v
        elif line:
            lines.append(line.split(","))
    return prov, lines[0], lines[1:]


def dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def config_to_dict(cfg: BugConfiguration) -> dict:
    return {"angles": cfg.angles.tolist(), "clusters": [list(c) for c in cfg.clusters]}


def config_from_dict(d: dict) -> BugConfiguration:
    starts = sorted(c[0] - 1 for c in d["clusters"])
    return BugConfiguration(np.array(d["angles"], dtype=float), np.array(starts, dtype=np.int64))


def trial_to_dict(res: TrialResult) -> dict:
    out = {
        "outcome": asdict(res.outcome),
        "t_classified": res.t_classified,
        "steps": res.steps,
        "winding": res.winding,
        "final": config_to_dict(res.final),
        "trajectory": None,
    }
    if res.trajectory is not None:
        out["trajectory"] = [{"t": t, **config_to_dict(c)} for t, c in res.trajectory]
    return out


def trial_from_dict(d: dict) -> TrialResult:
    traj = d.get("trajectory")
    if traj is not None:
        traj = [(p["t"], config_from_dict(p)) for p in traj]
    return TrialResult(
        outcome=Outcome(**d["outcome"]),
        t_classified=d["t_classified"],
        steps=d["steps"],
        final=config_from_dict(d["final"]),
        winding=d["winding"],
        trajectory=traj,
    )


def estimate_to_dict(est: ProbabilityEstimate) -> dict:
    return asdict(est)


def estimate_from_dict(d: dict) -> ProbabilityEstimate:
    return ProbabilityEstimate(**d)


def fit_to_dict(fit: PowerLawFit) -> dict:
    return asdict(fit)


def fit_from_dict(d: dict) -> PowerLawFit:
    return PowerLawFit(**d)


def sweep_row_to_dict(row: SweepRow) -> dict:
    return {"n_bugs": row.n_bugs, "seed": row.seed, "dt": row.dt,
            "estimate": estimate_to_dict(row.estimate)}


def sweep_row_from_dict(d: dict) -> SweepRow:
    return SweepRow(d["n_bugs"], estimate_from_dict(d["estimate"]), d["seed"], d["dt"])


def order_to_dict(s: OrderParameterSample) -> dict:
    return asdict(s)


def order_from_dict(d: dict) -> OrderParameterSample:
    return OrderParameterSample(**d)
