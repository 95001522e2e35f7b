"""Run loop, transcripts, CSV reporting.

A run drives one online algorithm either over a fixed instance or against an
adaptive adversary (a duel).  Every run verifies the final graph against all
emitted constraints and fails loudly otherwise.  The optimum comes from the
exact oracle when the instance fits its caps, else from the adversary's
certificate; when neither applies the ratio is simply omitted.
"""

from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass, field
from typing import Optional

from .adversaries import AdversaryScript, ObliviousScript
from .model import (
    EdgeSet,
    Instance,
    OrderedConstraint,
    all_satisfied,
    cost_of,
)
from .online_general import GeneralSolver
from .online_path import PathSolver
from .online_star import StarSolver
from .oracle import OracleCapacityError, brute_force_opt

ONLINE_ALGS = ("general", "star", "path")
OFFLINE_ALGS = ("offline-opt", "offline-approx")

CSV_COLUMNS = [
    "instance_id", "family", "n", "r", "alg", "seed", "c_param", "t",
    "alg_edges", "alg_cost", "opt_cost", "ratio", "frac_cost", "repairs_used",
]


class InfeasibleResult(Exception):
    """A run finished with a graph violating some emitted constraint."""


@dataclass(frozen=True)
class Round:
    constraint: OrderedConstraint
    edges_added: tuple[tuple[int, int], ...]
    cumulative_edges: int
    cumulative_cost: float


@dataclass
class Transcript:
    instance_id: str
    family: str
    alg: str
    n: int
    seed: int
    c_param: Optional[float]
    t: Optional[int]
    rounds: list[Round] = field(default_factory=list)
    built: Optional[EdgeSet] = None
    alg_cost: float = 0.0
    opt_cost: Optional[float] = None
    opt_source: str = "none"
    frac_cost: Optional[float] = None
    repairs: int = 0

    @property
    def r(self) -> int:
        return len(self.rounds)

    @property
    def alg_edges(self) -> int:
        return len(self.built) if self.built is not None else 0

    @property
    def ratio(self) -> Optional[float]:
        if self.opt_cost is None or self.opt_cost <= 0:
            return None
        return self.alg_cost / self.opt_cost


@dataclass
class RunConfig:
    alg: str
    instance: Optional[Instance] = None
    adversary: Optional[AdversaryScript] = None
    n: Optional[int] = None
    seed: int = 0
    c_param: float = 1.5
    r_estimate: Optional[int] = None
    family: str = "file"
    instance_id: str = "-"


def _make_solver(cfg: RunConfig, n: int, costs):
    if cfg.alg == "path":
        return PathSolver(n)
    if cfg.alg == "star":
        return StarSolver(n)
    if cfg.alg in ("general", "offline-approx"):
        r_est = cfg.r_estimate
        if r_est is None and cfg.instance is not None:
            r_est = max(1, cfg.instance.r)
        return GeneralSolver(n, c_param=cfg.c_param, r_estimate=r_est,
                             seed=cfg.seed, costs=costs)
    raise ValueError(f"unknown algorithm {cfg.alg!r}")


def execute(cfg: RunConfig) -> Transcript:
    """Run one config to completion, verify feasibility, and price the result."""
    if (cfg.instance is None) == (cfg.adversary is None):
        raise ValueError("exactly one of instance/adversary must be given")

    if cfg.alg == "offline-opt":
        return _execute_offline_opt(cfg)

    if cfg.instance is not None:
        n = cfg.instance.n
        costs = cfg.instance.costs
        source = ObliviousScript(n, cfg.instance.constraints)
    else:
        n = cfg.adversary.n
        costs = None
        source = cfg.adversary

    solver = _make_solver(cfg, n, costs)
    transcript = Transcript(
        instance_id=cfg.instance_id, family=cfg.family, alg=cfg.alg, n=n,
        seed=cfg.seed, c_param=cfg.c_param if cfg.alg in ("general", "offline-approx") else None,
        t=None)

    while True:
        constraint = source.next(solver.built)
        if constraint is None:
            break
        added = solver.process(constraint)
        transcript.rounds.append(Round(
            constraint=constraint,
            edges_added=tuple(sorted(added)),
            cumulative_edges=len(solver.built),
            cumulative_cost=cost_of(solver.built, costs),
        ))

    emitted = list(source.emitted)
    transcript.built = solver.built.copy()
    transcript.alg_cost = cost_of(solver.built, costs)
    if not all_satisfied(emitted, solver.built):
        raise InfeasibleResult("final graph violates an emitted constraint")

    if isinstance(solver, GeneralSolver):
        transcript.t = solver.t
        transcript.frac_cost = solver.fractional_total()
        transcript.repairs = solver.repairs

    opt, source_name = _optimum(Instance(n, tuple(emitted), costs), source)
    transcript.opt_cost = opt
    transcript.opt_source = source_name
    return transcript


def _execute_offline_opt(cfg: RunConfig) -> Transcript:
    if cfg.instance is None:
        raise ValueError("offline-opt needs an instance file")
    edges, value = brute_force_opt(cfg.instance)  # may raise OracleCapacityError
    transcript = Transcript(
        instance_id=cfg.instance_id, family=cfg.family, alg="offline-opt",
        n=cfg.instance.n, seed=cfg.seed, c_param=None, t=None)
    transcript.rounds = [Round(o, (), len(edges), float(value))
                         for o in cfg.instance.constraints]
    transcript.built = edges
    transcript.alg_cost = float(value)
    transcript.opt_cost = float(value)
    transcript.opt_source = "brute-force"
    return transcript


def _optimum(inst: Instance, source) -> tuple[Optional[float], str]:
    try:
        _, value = brute_force_opt(inst)
        return float(value), "brute-force"
    except OracleCapacityError:
        pass
    known = source.known_opt() if hasattr(source, "known_opt") else None
    if known is not None:
        edges, size = known
        if not all_satisfied(inst.constraints, edges):
            raise InfeasibleResult("adversary certificate violates its own constraints")
        return float(cost_of(edges, inst.costs)), "certificate"
    return None, "none"


# -- CSV ----------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def transcript_row(t: Transcript) -> dict[str, str]:
    return {
        "instance_id": t.instance_id,
        "family": t.family,
        "n": str(t.n),
        "r": str(t.r),
        "alg": t.alg,
        "seed": str(t.seed),
        "c_param": _fmt(t.c_param),
        "t": _fmt(t.t),
        "alg_edges": str(t.alg_edges),
        "alg_cost": _fmt(t.alg_cost),
        "opt_cost": _fmt(t.opt_cost),
        "ratio": _fmt(t.ratio),
        "frac_cost": _fmt(t.frac_cost),
        "repairs_used": str(t.repairs),
    }


def append_csv(path: str, transcripts, deterministic: bool = False) -> None:
    """Append transcript rows; a timestamp column is added unless the run is
    flagged deterministic (byte-identical output for identical invocations)."""
    columns = list(CSV_COLUMNS) + ([] if deterministic else ["timestamp"])
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
        if fresh:
            writer.writeheader()
        for t in transcripts:
            row = transcript_row(t)
            if not deterministic:
                row["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
            writer.writerow(row)


def report(paths) -> list[dict[str, str]]:
    """Aggregate CSVs into per-family run counts and mean/max ratios."""
    buckets: dict[str, list[float]] = {}
    counts: dict[str, int] = {}
    for path in paths:
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                family = row.get("family", "?")
                counts[family] = counts.get(family, 0) + 1
                ratio = row.get("ratio", "")
                if ratio:
                    buckets.setdefault(family, []).append(float(ratio))
    out = []
    for family in sorted(counts):
        ratios = buckets.get(family, [])
        out.append({
            "family": family,
            "runs": str(counts[family]),
            "mean_ratio": f"{sum(ratios) / len(ratios):.6f}" if ratios else "",
            "max_ratio": f"{max(ratios):.6f}" if ratios else "",
        })
    return out
