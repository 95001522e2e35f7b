"""Online algorithm for inputs known to be satisfiable by a path.

A pq-tree over the n vertices plus one padding leaf is reduced by the prefix
sets of every incoming constraint, in order.  After each reduction the solver
adds, in this order:

  * every forced adjacency of the tree (a pair adjacent in all remaining
    orderings) that is still missing, skipping pairs touching the padding
    leaf; then
  * the fallback edge {new vertex, previous constraint vertex}, but only
    when the ordered prefix is still unsatisfied.  Sweeping first matters:
    a freshly pinned adjacency may already serve the new vertex through a
    different earlier vertex, and the fallback edge would then be waste
    that can push a run past the 2n-3 budget.

Edges are never removed.  On path-consistent inputs the built graph stays at
most 2n-3 edges: every structural rewrite pays for its edges out of the
potential 2*sum_cp - 3*num_p + num_q, which starts at 2n-1.

The padding leaf exists purely for that accounting; because it stays an empty
child of the root forever, the root survives every rewrite as a p-node.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    EdgeSet,
    OrderedConstraint,
    ValidationError,
    check_constraint_range,
    edge_key,
    is_ordered_satisfied,
)
from .pqtree import (
    DUMMY,
    Infeasible,
    PQTree,
    TraceStep,
    forced_adjacencies,
    new_universal,
    potential,
    reduce,
    special_form_violations,
)


class NotPathConsistent(Exception):
    """The constraints seen so far admit no path; the run is aborted."""


@dataclass(frozen=True)
class PathStep:
    """One prefix reduction: what fired and what was added."""

    members: frozenset[int]
    trace: tuple[TraceStep, ...]
    edges_added: frozenset[tuple[int, int]]
    potential_after: int

    @property
    def potential_drop(self) -> int:
        return sum(s.potential_drop for s in self.trace)


@dataclass(frozen=True)
class PathCall:
    constraint: OrderedConstraint
    steps: tuple[PathStep, ...]


class PathSolver:
    def __init__(self, n: int):
        if n < 2:
            raise ValidationError("path solver needs n >= 2")
        self.n = n
        self.tree: PQTree = new_universal(n, with_dummy=True)
        self.built = EdgeSet(n)
        self.log: list[PathCall] = []

    def process(self, o: OrderedConstraint) -> set[tuple[int, int]]:
        """Satisfy o, returning the set of edges added by this call."""
        if not isinstance(o, OrderedConstraint):
            o = OrderedConstraint(tuple(o))
        check_constraint_range(o, self.n)
        verts = o.vertices
        added_total: set[tuple[int, int]] = set()
        steps: list[PathStep] = []
        for i in range(2, len(verts) + 1):
            members = frozenset(verts[:i])
            try:
                self.tree, trace = reduce(self.tree, members)
            except Infeasible as exc:
                raise NotPathConsistent(
                    f"prefix {sorted(members)} admits no path given earlier constraints"
                ) from exc
            self._guard(trace)
            step_added: set[tuple[int, int]] = set()
            # Learned edges first: a freshly pinned adjacency may already give
            # the new vertex its earlier neighbor, in which case the fallback
            # edge to the previous constraint vertex would be pure waste.
            for a, b in sorted(forced_adjacencies(self.tree)):
                if a == DUMMY or b == DUMMY:
                    continue
                if self.built.add(a, b):
                    step_added.add((a, b))
            v_new, v_prev = verts[i - 1], verts[i - 2]
            if not any(self.built.has(u, v_new) for u in verts[:i - 1]):
                self.built.add(v_new, v_prev)
                step_added.add(edge_key(v_new, v_prev))
            steps.append(PathStep(members, tuple(trace), frozenset(step_added),
                                  potential(self.tree)))
            added_total |= step_added
        self.log.append(PathCall(o, tuple(steps)))
        if not is_ordered_satisfied(o, self.built):
            raise RuntimeError("constraint left unsatisfied after processing")
        return added_total

    def edge_count(self) -> int:
        return len(self.built)

    def _guard(self, trace) -> None:
        # Facts that hold on any prefix-driven run; their failure means the
        # input was not fed through nested prefixes or the reducer broke.
        for step in trace:
            if step.template == "Q3":
                raise RuntimeError("Q3 fired during a prefix-driven reduction")
        problems = special_form_violations(self.tree)
        if problems:
            raise RuntimeError("; ".join(problems))
