"""Fractional network construction: edge weights in [0, 1] driven up by
multiplicative updates until every vertex pair of a constraint set has an
induced min cut (equivalently, max flow) of at least 1.

Flows are confined to the complete graph induced on the constraint set: only
edges with both endpoints inside the set carry flow.  That confinement is
what makes each prefix-isolating cut of an ordered constraint carry weight 1
after the constraint's prefixes have been processed.

The update rule, applied to every edge of a violated cut C:

    w_e <- min(1, w_e * (1 + 1/|C|) + 1 / (|C| * n^2 * c_e))

with c_e = 1 in the unweighted case.  Weights only grow, so rounding against
fixed thresholds stays monotone.  Graphs are tiny; max flow is plain
Edmonds-Karp on float capacities with cut extraction from the final residual
reachability.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .model import ValidationError, edge_key

_EPS = 1e-12
_VIOLATION_TOL = 1e-9
_MAX_UPDATES = 200_000  # safety net; the cap at 1 bounds real update counts


class WeightMap:
    """Fractional edge weights on vertices 0..n-1; absent pairs weigh 0."""

    __slots__ = ("n", "_w")

    def __init__(self, n: int, weights: Optional[Mapping] = None):
        if n < 1:
            raise ValidationError("weight map needs n >= 1")
        self.n = n
        self._w: dict[tuple[int, int], float] = {}
        if weights:
            for (u, v), value in weights.items():
                self.set(u, v, value)

    def get(self, u: int, v: int) -> float:
        return self._w.get(edge_key(u, v), 0.0)

    def set(self, u: int, v: int, value: float) -> None:
        key = edge_key(u, v)
        if key[1] >= self.n:
            raise ValidationError(f"pair {key} out of range for n={self.n}")
        if not 0.0 <= value <= 1.0:
            raise ValidationError(f"weight {value} outside [0, 1]")
        self._w[key] = value

    def items(self):
        return self._w.items()

    def copy(self) -> "WeightMap":
        return WeightMap(self.n, self._w)

    def __len__(self) -> int:
        return len(self._w)


@dataclass(frozen=True)
class CutCertificate:
    """A u-v cut of the complete graph induced on a vertex set.

    cut_edges lists every pair crossing the bipartition (weight-0 pairs
    included); removing them disconnects the pair inside the induced
    complete graph, and their total weight equals the max-flow value.
    """

    pair: tuple[int, int]
    cut_edges: frozenset[tuple[int, int]]
    weight: float


def min_cut_induced(w: WeightMap, members: Iterable[int], u: int, v: int) -> CutCertificate:
    """Minimum-weight u-v cut of the complete weighted graph on `members`."""
    verts = sorted(set(members))
    if u == v:
        raise ValidationError("cut endpoints must differ")
    if u not in verts or v not in verts:
        raise ValidationError(f"cut endpoints {u},{v} must lie in the member set")

    # Undirected capacities as symmetric directed arcs.
    cap: dict[tuple[int, int], float] = {}
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            weight = w.get(a, b)
            cap[(a, b)] = weight
            cap[(b, a)] = weight
    flow: dict[tuple[int, int], float] = {arc: 0.0 for arc in cap}

    def bfs_path() -> Optional[list[tuple[int, int]]]:
        prev: dict[int, tuple[int, int]] = {}
        seen = {u}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            for b in verts:
                if b in seen or b == a:
                    continue
                if cap[(a, b)] - flow[(a, b)] > _EPS:
                    prev[b] = (a, b)
                    if b == v:
                        path = []
                        cur = b
                        while cur != u:
                            arc = prev[cur]
                            path.append(arc)
                            cur = arc[0]
                        return path
                    seen.add(b)
                    queue.append(b)
        return None

    while True:
        path = bfs_path()
        if path is None:
            break
        push = min(cap[arc] - flow[arc] for arc in path)
        for a, b in path:
            flow[(a, b)] += push
            flow[(b, a)] -= push

    reachable = {u}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        for b in verts:
            if b not in reachable and b != a and cap[(a, b)] - flow[(a, b)] > _EPS:
                reachable.add(b)
                queue.append(b)

    cut = frozenset(
        edge_key(a, b)
        for a in reachable
        for b in verts
        if b not in reachable
    )
    weight = sum(w.get(a, b) for a, b in cut)
    return CutCertificate(pair=(u, v), cut_edges=cut, weight=weight)


def fractional_satisfy(
    w: WeightMap,
    members: Iterable[int],
    costs: Optional[Mapping] = None,
) -> tuple[WeightMap, int]:
    """Raise weights until every pair in `members` has induced min cut >= 1.

    Mutates and returns w (weights only increase), plus the number of cut
    updates performed.  Pairs are examined in lexicographic order and the
    scan restarts after every update, so runs are deterministic.
    """
    verts = sorted(set(members))
    if len(verts) < 2:
        raise ValidationError("constraint set needs at least 2 vertices")
    if verts[-1] >= w.n:
        raise ValidationError(f"vertex {verts[-1]} out of range for n={w.n}")
    pairs = [(a, b) for i, a in enumerate(verts) for b in verts[i + 1:]]
    n_sq = w.n * w.n
    updates = 0
    while True:
        violated = None
        for a, b in pairs:
            cert = min_cut_induced(w, verts, a, b)
            if cert.weight < 1.0 - _VIOLATION_TOL:
                violated = cert
                break
        if violated is None:
            return w, updates
        k = len(violated.cut_edges)
        for x, y in sorted(violated.cut_edges):
            c_e = costs.get((x, y), 1.0) if costs else 1.0
            bumped = w.get(x, y) * (1.0 + 1.0 / k) + 1.0 / (k * n_sq * c_e)
            w.set(x, y, min(1.0, bumped))
        updates += 1
        if updates > _MAX_UPDATES:
            raise RuntimeError("fractional update loop exceeded its safety cap")


def fractional_cost(w: WeightMap, costs: Optional[Mapping] = None) -> float:
    """Sum of c_e * w_e (c_e = 1 when no cost map)."""
    if costs is None:
        return sum(value for _, value in w.items())
    return sum(costs.get(key, 1.0) * value for key, value in w.items())
