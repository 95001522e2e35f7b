"""Online algorithm for arbitrary graphs: fractional updates per prefix, then
randomized threshold rounding, then a deterministic repair pass.

Each edge e gets a fixed threshold T(e) = min of t independent uniforms,
with t = ceil(c * (ln n + ln r_estimate)) and c > 1.  After the fractional
weights of a prefix are pushed to min-cut >= 1, every in-prefix pair with
w_e >= T(e) joins the graph.  Weights only grow and thresholds never change,
so the rounded graph grows monotonically.

Rounding alone fails with probability at most r*n*e^(-t); the repair pass
makes the output unconditionally feasible by linking each still-uncovered
position to its maximum-weight earlier vertex.  Repairs are counted
separately so the pure-rounding behavior stays observable.

Per-edge thresholds are derived from (seed, generation, edge, t) through
splitmix64, so transcripts are reproducible and independent of query order.
When r_estimate is not supplied it starts at 1 and doubles once exceeded;
a doubling resamples thresholds (new generation) but keeps every built edge.

replay_rounding() reruns the rounding and repair of a recorded fractional
trajectory without redoing any max-flow work.  The fractional side is
seed-independent, so threshold experiments over many seeds reuse one
trajectory; tests pin replay equality against the full solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .fractional import WeightMap, fractional_cost, fractional_satisfy
from .model import (
    EdgeSet,
    Instance,
    OrderedConstraint,
    ValidationError,
    check_constraint_range,
    edge_key,
    expand_to_connectivity,
    is_ordered_satisfied,
)
from .rng import SplitMix64, derive_seed


def threshold_count(n: int, c_param: float, r_estimate: int) -> int:
    """t = ceil(c * (ln n + ln r)); natural logs."""
    return math.ceil(c_param * (math.log(n) + math.log(r_estimate)))


def threshold_value(seed: int, generation: int, u: int, v: int, t: int) -> float:
    """Minimum of t uniforms on a per-edge splitmix64 stream."""
    a, b = edge_key(u, v)
    rng = SplitMix64(derive_seed(seed, generation, a, b))
    return min(rng.uniform() for _ in range(t))


class GeneralSolver:
    def __init__(
        self,
        n: int,
        c_param: float = 1.5,
        r_estimate: Optional[int] = None,
        seed: int = 0,
        costs: Optional[dict] = None,
    ):
        if n < 2:
            raise ValidationError("general solver needs n >= 2")
        if c_param <= 1:
            raise ValidationError("c_param must be > 1")
        if r_estimate is not None and r_estimate < 1:
            raise ValidationError("r_estimate must be >= 1")
        self.n = n
        self.c_param = c_param
        self.seed = seed
        self.costs = costs
        self._r_dynamic = r_estimate is None
        self.r_estimate = r_estimate if r_estimate is not None else 1
        self.generation = 0
        self.w = WeightMap(n)
        self.built = EdgeSet(n)
        self.rounds = 0
        self.repairs = 0
        self.rounding_violations = 0
        self._thresholds: dict[tuple[int, int], float] = {}

    @property
    def t(self) -> int:
        return threshold_count(self.n, self.c_param, self.r_estimate)

    def sample_threshold(self, u: int, v: int) -> float:
        key = edge_key(u, v)
        if key not in self._thresholds:
            self._thresholds[key] = threshold_value(
                self.seed, self.generation, key[0], key[1], self.t)
        return self._thresholds[key]

    def process(self, o: OrderedConstraint) -> set[tuple[int, int]]:
        if not isinstance(o, OrderedConstraint):
            o = OrderedConstraint(tuple(o))
        check_constraint_range(o, self.n)
        self.rounds += 1
        if self._r_dynamic and self.rounds > self.r_estimate:
            # Estimate exceeded: double it and restart thresholds; built
            # edges are kept.
            self.r_estimate *= 2
            self.generation += 1
            self._thresholds.clear()

        added: set[tuple[int, int]] = set()
        for prefix in expand_to_connectivity(o):
            fractional_satisfy(self.w, prefix.members, self.costs)
            verts = sorted(prefix.members)
            for i, a in enumerate(verts):
                for b in verts[i + 1:]:
                    if self.w.get(a, b) >= self.sample_threshold(a, b):
                        if self.built.add(a, b):
                            added.add((a, b))

        if not is_ordered_satisfied(o, self.built):
            self.rounding_violations += 1
        added |= self._repair(o)
        if not is_ordered_satisfied(o, self.built):
            raise RuntimeError("constraint left unsatisfied after repair")
        return added

    def _repair(self, o: OrderedConstraint) -> set[tuple[int, int]]:
        """Give every uncovered position an edge to its max-weight earlier
        vertex (ties to the smallest vertex id)."""
        verts = o.vertices
        added: set[tuple[int, int]] = set()
        for i in range(1, len(verts)):
            v = verts[i]
            if any(self.built.has(u, v) for u in verts[:i]):
                continue
            partner = max(verts[:i], key=lambda u: (self.w.get(u, v), -u))
            self.built.add(partner, v)
            added.add(edge_key(partner, v))
            self.repairs += 1
        return added

    def fractional_total(self) -> float:
        return fractional_cost(self.w, self.costs)


# -- recorded fractional trajectory and fast rounding replay -----------------


@dataclass(frozen=True)
class PrefixWeights:
    """Weights of all in-prefix pairs right after the prefix was satisfied."""

    members: tuple[int, ...]
    weights: dict[tuple[int, int], float]


@dataclass(frozen=True)
class FractionalTrajectory:
    n: int
    per_constraint: tuple[tuple[PrefixWeights, ...], ...]
    final: WeightMap
    updates: int


def fractional_trajectory(inst: Instance) -> FractionalTrajectory:
    """Run the fractional pipeline over every prefix of every constraint,
    recording the weight snapshots the rounding step reads.  Seed-free."""
    w = WeightMap(inst.n)
    updates = 0
    recorded: list[tuple[PrefixWeights, ...]] = []
    for o in inst.constraints:
        snaps: list[PrefixWeights] = []
        for prefix in expand_to_connectivity(o):
            _, done = fractional_satisfy(w, prefix.members, inst.costs)
            updates += done
            verts = tuple(sorted(prefix.members))
            weights = {
                (a, b): w.get(a, b)
                for i, a in enumerate(verts)
                for b in verts[i + 1:]
            }
            snaps.append(PrefixWeights(verts, weights))
        recorded.append(tuple(snaps))
    return FractionalTrajectory(inst.n, tuple(recorded), w.copy(), updates)


@dataclass(frozen=True)
class ReplayResult:
    built: EdgeSet
    repairs: int
    rounding_violations: int


def replay_rounding(
    traj: FractionalTrajectory,
    inst: Instance,
    seed: int,
    c_param: float,
    r_estimate: Optional[int] = None,
) -> ReplayResult:
    """Re-run rounding + repair against a recorded trajectory.

    Matches GeneralSolver exactly when r_estimate covers the instance (no
    threshold restarts happen in that regime).
    """
    if c_param <= 1:
        raise ValidationError("c_param must be > 1")
    r_est = r_estimate if r_estimate is not None else max(1, inst.r)
    if r_est < inst.r:
        raise ValidationError("replay does not model threshold restarts")
    t = threshold_count(inst.n, c_param, r_est)
    thresholds: dict[tuple[int, int], float] = {}

    def thr(a: int, b: int) -> float:
        key = (a, b)
        if key not in thresholds:
            thresholds[key] = threshold_value(seed, 0, a, b, t)
        return thresholds[key]

    built = EdgeSet(inst.n)
    repairs = 0
    violations = 0
    for k, o in enumerate(inst.constraints):
        snaps = traj.per_constraint[k]
        for snap in snaps:
            for (a, b), weight in sorted(snap.weights.items()):
                if weight >= thr(a, b):
                    built.add(a, b)
        if not is_ordered_satisfied(o, built):
            violations += 1
        final_weights = snaps[-1].weights
        verts = o.vertices
        for i in range(1, len(verts)):
            v = verts[i]
            if any(built.has(u, v) for u in verts[:i]):
                continue
            partner = max(
                verts[:i],
                key=lambda u: (final_weights.get(edge_key(u, v), 0.0), -u))
            built.add(partner, v)
            repairs += 1
        if not is_ordered_satisfied(o, built):
            raise RuntimeError("constraint left unsatisfied after repair")
    return ReplayResult(built=built, repairs=repairs, rounding_violations=violations)
