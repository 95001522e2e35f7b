"""Exact offline optimum and the hitting-set reduction.

brute_force_opt finds a minimum-cardinality (or minimum-cost) edge set
satisfying every ordered constraint, by branch and bound over candidate
edges.  Candidate pruning is what keeps this tractable: an edge can only help
a constraint position i when it joins o[i] to some o[j] with j < i, so any
edge that is not an (earlier, later) pair within some constraint can be
dropped from any solution without breaking any position.  The search is
exact; instances beyond the candidate cap or the node budget raise
OracleCapacityError rather than approximating.

The reduction maps a hitting-set instance (U, family) onto a construction
instance over U plus w_size extra vertices: all ordered pairs of U, plus one
constraint per (family set, extra vertex) listing the set in index order and
ending at the extra vertex.  Any feasible network yields a hitting set per
extra vertex: the U-neighbors of that vertex.  The exact-optimum identity

    OPT = C(|U|, 2) + w_size * OPT_H

holds for every w_size >= 1 at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


from .model import (
    EdgeSet,
    Instance,
    OrderedConstraint,
    ValidationError,
    all_satisfied,
    edge_key,
)

CANDIDATE_CAP = 40
NODE_BUDGET = 2_000_000


class OracleCapacityError(Exception):
    """The instance exceeds the exact solver's desk-scale limits."""


def candidate_edges(inst: Instance) -> list[tuple[int, int]]:
    """All (earlier, later) pairs within some constraint, sorted."""
    cands: set[tuple[int, int]] = set()
    for o in inst.constraints:
        verts = o.vertices
        for i in range(1, len(verts)):
            for j in range(i):
                cands.add(edge_key(verts[j], verts[i]))
    return sorted(cands)


def brute_force_opt(inst: Instance) -> tuple[EdgeSet, float]:
    """Minimum edge set satisfying all constraints, with its total cost.

    Cost is the edge count when the instance carries no costs.
    """
    cands = candidate_edges(inst)
    if len(cands) > CANDIDATE_CAP:
        raise OracleCapacityError(
            f"{len(cands)} candidate edges exceed the cap of {CANDIDATE_CAP}")
    index = {e: k for k, e in enumerate(cands)}
    cost = [
        inst.costs.get(e, 1.0) if inst.costs else 1.0
        for e in cands
    ]

    # One coverage set per constraint position: the candidate indices able to
    # satisfy it.  Duplicates are dropped; positions are tried fewest-options
    # first, which keeps the branching factor low.
    positions: list[frozenset[int]] = []
    seen = set()
    for o in inst.constraints:
        verts = o.vertices
        for i in range(1, len(verts)):
            cover = frozenset(index[edge_key(verts[j], verts[i])] for j in range(i))
            if cover not in seen:
                seen.add(cover)
                positions.append(cover)
    positions.sort(key=len)

    if not positions:
        return EdgeSet(inst.n), 0.0 if inst.costs else 0

    # Greedy incumbent: repeatedly take the cheapest-per-coverage candidate.
    def greedy() -> set[int]:
        chosen: set[int] = set()
        uncovered = [p for p in positions]
        while uncovered:
            scores: dict[int, int] = {}
            for p in uncovered:
                for c in p:
                    scores[c] = scores.get(c, 0) + 1
            best = min(scores, key=lambda c: (cost[c] / scores[c], c))
            chosen.add(best)
            uncovered = [p for p in uncovered if best not in p]
        return chosen

    incumbent = greedy()
    best_cost = sum(cost[c] for c in incumbent)
    best_set = set(incumbent)
    nodes = 0

    def lower_bound(chosen: set[int]) -> float:
        # Positions with pairwise-disjoint candidate sets each demand their
        # own edge; summing the cheapest option per such position is
        # admissible.
        bound = 0.0
        blocked: set[int] = set()
        for p in positions:
            if chosen & p or blocked & p:
                continue
            bound += min(cost[c] for c in p)
            blocked |= p
        return bound

    def search(pos_idx: int, chosen: set[int], spent: float) -> None:
        nonlocal best_cost, best_set, nodes
        nodes += 1
        if nodes > NODE_BUDGET:
            raise OracleCapacityError("search node budget exhausted")
        while pos_idx < len(positions) and chosen & positions[pos_idx]:
            pos_idx += 1
        if pos_idx == len(positions):
            if spent < best_cost - 1e-12:
                best_cost = spent
                best_set = set(chosen)
            return
        if spent + lower_bound(chosen) >= best_cost - 1e-12:
            return
        for c in sorted(positions[pos_idx]):
            chosen.add(c)
            search(pos_idx + 1, chosen, spent + cost[c])
            chosen.remove(c)

    search(0, set(), 0.0)

    edges = EdgeSet(inst.n, (cands[c] for c in best_set))
    total = best_cost if inst.costs else int(round(best_cost))
    assert all_satisfied(inst.constraints, edges)
    return edges, total


@dataclass(frozen=True)
class HittingSetInstance:
    """Universe 0..universe_size-1 and a family of non-empty subsets."""

    universe_size: int
    family: tuple[frozenset[int], ...]

    def __post_init__(self):
        family = tuple(frozenset(s) for s in self.family)
        object.__setattr__(self, "family", family)
        if self.universe_size < 1:
            raise ValidationError("universe must be non-empty")
        for s in family:
            if not s:
                raise ValidationError("family sets must be non-empty")
            if any(v < 0 or v >= self.universe_size for v in s):
                raise ValidationError(f"set {sorted(s)} leaves the universe")


@dataclass(frozen=True)
class ReducedInstance:
    """Construction instance produced from a hitting-set instance."""

    instance: Instance
    universe_size: int
    w_size: int

    def w_vertex(self, l: int) -> int:
        if not 0 <= l < self.w_size:
            raise ValidationError(f"extra-vertex index {l} out of range")
        return self.universe_size + l


def hitting_set_reduction(hs: HittingSetInstance, w_size: int) -> ReducedInstance:
    """Build the construction instance whose optimum encodes OPT_H."""
    if w_size < 1:
        raise ValidationError("w_size must be >= 1")
    n = hs.universe_size + w_size
    constraints: list[OrderedConstraint] = []
    for i, j in combinations(range(hs.universe_size), 2):
        constraints.append(OrderedConstraint((i, j)))
    for subset in hs.family:
        ordered = tuple(sorted(subset))  # "ordered arbitrarily" fixed to index order
        for l in range(w_size):
            constraints.append(OrderedConstraint(ordered + (hs.universe_size + l,)))
    return ReducedInstance(Instance(n, tuple(constraints)), hs.universe_size, w_size)


def extract_hitting_set(e: EdgeSet, red: ReducedInstance, l: int) -> set[int]:
    """U-vertices adjacent to the l-th extra vertex; hits every family set."""
    if not all_satisfied(red.instance.constraints, e):
        raise ValidationError("edge set does not satisfy the reduced instance")
    wl = red.w_vertex(l)
    return {u for u in range(red.universe_size) if e.has(u, wl)}


def brute_force_hitting_set(hs: HittingSetInstance) -> int:
    """Minimum hitting-set size by subset enumeration (universe <= 20)."""
    if hs.universe_size > 20:
        raise OracleCapacityError("hitting-set enumeration capped at universe 20")
    if not hs.family:
        return 0
    universe = range(hs.universe_size)
    for size in range(1, hs.universe_size + 1):
        for combo in combinations(universe, size):
            chosen = set(combo)
            if all(chosen & s for s in hs.family):
                return size
    raise ValidationError("family cannot be hit")  # unreachable for valid input
