"""Problem vocabulary: ordered constraints, connectivity constraints, edge sets.

An ordered constraint is a sequence of distinct vertices; it is satisfied by a
graph when every vertex after the first is adjacent to at least one vertex
appearing earlier in the sequence.  Each ordered constraint of length s is
equivalent to the s-1 connectivity constraints given by its prefix sets, each
of which must induce a connected subgraph.

Vertices are dense 0-based integers.  Validation is eager: constructing a
constraint or instance checks its invariants, so operations may assume valid
inputs apart from the vertex-count bound, which is only known per graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional


class ValidationError(ValueError):
    """An input violates a structural invariant (bad vertex, duplicate, range)."""


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Normalize an unordered vertex pair; self-loops are rejected."""
    if u == v:
        raise ValidationError(f"self-loop on vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class OrderedConstraint:
    """A sequence of at least two distinct vertices."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise ValidationError("ordered constraint needs at least 2 vertices")
        if len(set(verts)) != len(verts):
            raise ValidationError(f"duplicate vertex in ordered constraint {verts}")
        for v in verts:
            if not isinstance(v, int) or v < 0:
                raise ValidationError(f"bad vertex {v!r} in ordered constraint")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __getitem__(self, i: int) -> int:
        return self.vertices[i]


@dataclass(frozen=True)
class ConnectivityConstraint:
    """A set of at least two vertices whose induced subgraph must be connected."""

    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        if len(members) < 2:
            raise ValidationError("connectivity constraint needs at least 2 vertices")
        for v in members:
            if not isinstance(v, int) or v < 0:
                raise ValidationError(f"bad vertex {v!r} in connectivity constraint")


class EdgeSet:
    """A growing undirected simple graph on vertices 0..n-1.

    Mutable, but confined to one solver at a time; use copy() to hand a
    snapshot elsewhere.
    """

    __slots__ = ("n", "_edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValidationError("edge set needs n >= 1")
        self.n = n
        self._edges: set[tuple[int, int]] = set()
        self._adj: dict[int, set[int]] = {}
        for u, v in edges:
            self.add(u, v)

    def add(self, u: int, v: int) -> bool:
        """Insert {u, v}; returns True if the edge was new."""
        key = edge_key(u, v)
        if not (0 <= key[0] and key[1] < self.n):
            raise ValidationError(f"edge {key} out of range for n={self.n}")
        if key in self._edges:
            return False
        self._edges.add(key)
        self._adj.setdefault(key[0], set()).add(key[1])
        self._adj.setdefault(key[1], set()).add(key[0])
        return True

    def has(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return (min(u, v), max(u, v)) in self._edges

    def neighbors(self, v: int) -> set[int]:
        return self._adj.get(v, set())

    def copy(self) -> "EdgeSet":
        return EdgeSet(self.n, self._edges)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __contains__(self, pair) -> bool:
        u, v = pair
        return self.has(u, v)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._edges))

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeSet) and self.n == other.n and self._edges == other._edges

    def __repr__(self) -> str:
        return f"EdgeSet(n={self.n}, edges={self.sorted_edges()})"


@dataclass
class Instance:
    """A problem instance: n vertices, a constraint sequence, optional edge costs.

    Costs default to 1 for every pair; a partial cost map means "1 unless
    listed".  r (the number of constraints) is len(constraints).
    """

    n: int
    constraints: tuple[OrderedConstraint, ...] = ()
    costs: Optional[dict[tuple[int, int], float]] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("instance needs n >= 1")
        self.constraints = tuple(
            c if isinstance(c, OrderedConstraint) else OrderedConstraint(tuple(c))
            for c in self.constraints
        )
        for c in self.constraints:
            check_constraint_range(c, self.n)
        if self.costs is not None:
            normalized = {}
            for (u, v), cost in self.costs.items():
                key = edge_key(u, v)
                if key[1] >= self.n:
                    raise ValidationError(f"cost pair {key} out of range")
                if cost <= 0:
                    raise ValidationError(f"cost for {key} must be positive")
                normalized[key] = float(cost)
            self.costs = normalized

    @property
    def r(self) -> int:
        return len(self.constraints)


def check_constraint_range(o: OrderedConstraint, n: int) -> None:
    for v in o.vertices:
        if v >= n:
            raise ValidationError(f"vertex {v} out of range for n={n}")


def is_ordered_satisfied(o: OrderedConstraint, e: EdgeSet) -> bool:
    """True iff every non-first vertex of o has an earlier neighbor in e."""
    check_constraint_range(o, e.n)
    for i in range(1, len(o.vertices)):
        v = o.vertices[i]
        if not any(e.has(u, v) for u in o.vertices[:i]):
            return False
    return True


def expand_to_connectivity(o: OrderedConstraint) -> list[ConnectivityConstraint]:
    """The s-1 prefix sets of o, in order of increasing length."""
    return [
        ConnectivityConstraint(frozenset(o.vertices[:i]))
        for i in range(2, len(o.vertices) + 1)
    ]


def is_connectivity_satisfied(s: ConnectivityConstraint, e: EdgeSet) -> bool:
    """True iff the subgraph of e induced on s.members is connected."""
    members = s.members
    for v in members:
        if v >= e.n:
            raise ValidationError(f"vertex {v} out of range for n={e.n}")
    start = next(iter(members))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in e.neighbors(u):
            if w in members and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(members)


def all_satisfied(constraints: Iterable[OrderedConstraint], e: EdgeSet) -> bool:
    return all(is_ordered_satisfied(o, e) for o in constraints)


def cost_of(edges: Iterable[tuple[int, int]], costs: Optional[Mapping] = None) -> float:
    """Total cost of an edge collection; unit cost when no map is given."""
    if costs is None:
        return float(sum(1 for _ in edges))
    return float(sum(costs.get(edge_key(u, v), 1.0) for u, v in edges))
