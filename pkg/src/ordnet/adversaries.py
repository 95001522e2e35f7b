"""Lower-bound constructions, as instance generators and interactive opponents.

Three constructions are provided:

  * general_lb_instance: an oblivious script over U (size ceil(sqrt(n))) and
    V (the rest).  It forces a clique on U, then per v in V runs through the
    constraints (pi_v(1..i), v) for i = |U| down to 1, so an algorithm keeps
    guessing which U-vertex v really hangs off.  Its certificate (clique on U
    plus one edge per v) satisfies every constraint it will ever emit.

  * star_lb_adversary: emits (v1, v2, v_i) for all i, counts which of v1, v2
    the algorithm favored, declares the *other* one the center, and demands
    one missing center edge.  Certificate: that star.

  * path_lb_adversary: emits the identity ordering, then forces every vertex
    beyond the second to reach pre-degree 2 (neighbors among lower-indexed
    vertices).  For a deficient vertex v it demands the edge {v, u} where u
    is a lower-indexed vertex that can still sit at the boundary of the
    window holding v's predecessors in some consistent path.  Such a u
    always exists: the predecessor window has two distinct reachable ends
    and a deficient v holds an edge to at most one of them.  Consistency is
    tracked with a shadow pq-tree; the demanded adjacency is always checked
    feasible against it before being emitted.  Certificate: any final
    consistent path (n-1 edges).

Adaptive adversaries see exactly the algorithm's public edge set through
next(edges) and return None when done; they never see internal randomness.
"""

from __future__ import annotations

import math
from typing import Optional

from .model import EdgeSet, OrderedConstraint, ValidationError, all_satisfied, edge_key
from .pqtree import Infeasible, Node, PQTree, LEAF, PNODE, new_universal, reduce
from .rng import SplitMix64, derive_seed


class AdversaryScript:
    """Base interaction contract: next(edges) -> constraint or None."""

    mode = "adaptive"

    def __init__(self, n: int):
        self.n = n
        self.emitted: list[OrderedConstraint] = []

    def next(self, edges: EdgeSet) -> Optional[OrderedConstraint]:
        raise NotImplementedError

    def known_opt(self) -> Optional[tuple[EdgeSet, int]]:
        return None

    def _emit(self, verts) -> OrderedConstraint:
        o = OrderedConstraint(tuple(verts))
        self.emitted.append(o)
        return o


class ObliviousScript(AdversaryScript):
    """A fixed constraint list replayed one round at a time."""

    mode = "oblivious"

    def __init__(self, n: int, constraints, known: Optional[tuple[EdgeSet, int]] = None):
        super().__init__(n)
        self.constraints = [
            c if isinstance(c, OrderedConstraint) else OrderedConstraint(tuple(c))
            for c in constraints
        ]
        self._known = known
        self._cursor = 0

    def next(self, edges: EdgeSet) -> Optional[OrderedConstraint]:
        if self._cursor >= len(self.constraints):
            return None
        o = self.constraints[self._cursor]
        self._cursor += 1
        self.emitted.append(o)
        return o

    def known_opt(self) -> Optional[tuple[EdgeSet, int]]:
        return self._known


def general_lb_instance(n: int, seed: int) -> ObliviousScript:
    """Oblivious guessing-game instance over U = first ceil(sqrt(n)) vertices."""
    if n < 4:
        raise ValidationError("general lower-bound instance needs n >= 4")
    m = math.isqrt(n)
    if m * m < n:
        m += 1
    constraints: list[tuple[int, ...]] = []
    for i in range(m):
        for j in range(i + 1, m):
            constraints.append((i, j))
    opt_edges = [(i, j) for i in range(m) for j in range(i + 1, m)]
    for v in range(m, n):
        rng = SplitMix64(derive_seed(seed, v, 0xA11CE))
        perm = list(range(m))
        rng.shuffle(perm)
        for i in range(m, 0, -1):
            constraints.append(tuple(perm[:i]) + (v,))
        opt_edges.append(edge_key(perm[0], v))
    known = EdgeSet(n, opt_edges)
    script = ObliviousScript(n, constraints, known=(known, len(known)))
    assert all_satisfied(script.constraints, known)
    return script


class StarLowerBound(AdversaryScript):
    def __init__(self, n: int):
        if n < 4:
            raise ValidationError("star adversary needs n >= 4")
        super().__init__(n)
        self._round = 0
        self._final_done = False
        self._center: Optional[int] = None

    def next(self, edges: EdgeSet) -> Optional[OrderedConstraint]:
        if self._round < self.n - 2:
            v = self._round + 2
            self._round += 1
            return self._emit((0, 1, v))
        if not self._final_done:
            self._final_done = True
            others = range(2, self.n)
            deg0 = sum(1 for v in others if edges.has(0, v))
            deg1 = sum(1 for v in others if edges.has(1, v))
            self._center = 0 if deg0 <= deg1 else 1  # tie favors v1
            for v in others:
                if not edges.has(self._center, v):
                    return self._emit((self._center, v))
        return None

    def known_opt(self) -> Optional[tuple[EdgeSet, int]]:
        if self._center is None:
            return None
        star = EdgeSet(self.n, ((self._center, v) for v in range(self.n) if v != self._center))
        return star, len(star)


class PathLowerBound(AdversaryScript):
    def __init__(self, n: int, seed: int):
        if n < 3:
            raise ValidationError("path adversary needs n >= 3")
        super().__init__(n)
        self._rng = SplitMix64(derive_seed(seed, n, 0x9A7D))
        self._opt_rng_seed = derive_seed(seed, n, 0x0CE4)
        self.shadow: PQTree = new_universal(n, with_dummy=False)
        self._started = False
        self._i = 2  # next vertex whose pre-degree gets inspected

    def next(self, edges: EdgeSet) -> Optional[OrderedConstraint]:
        if not self._started:
            self._started = True
            full = tuple(range(self.n))
            self._absorb(full)
            return self._emit(full)
        while self._i < self.n:
            v = self._i
            pre_degree = sum(1 for u in edges.neighbors(v) if u < v)
            if pre_degree >= 2:
                self._i += 1
                continue
            u = self._pick_partner(edges, v)
            self._i += 1
            constraint = (v, u)
            self._absorb(constraint)
            return self._emit(constraint)
        return None

    def known_opt(self) -> Optional[tuple[EdgeSet, int]]:
        path = _linearize(self.shadow, SplitMix64(self._opt_rng_seed))
        opt = EdgeSet(self.n, (edge_key(a, b) for a, b in zip(path, path[1:])))
        return opt, len(opt)

    def _absorb(self, constraint: tuple[int, ...]) -> None:
        for i in range(2, len(constraint) + 1):
            self.shadow, _ = reduce(self.shadow, frozenset(constraint[:i]))

    def _pick_partner(self, edges: EdgeSet, v: int) -> int:
        # Lower-indexed vertices that some consistent path puts next to v and
        # that the algorithm has not connected to v yet.  Demanding {v, u}
        # keeps a consistent path alive and forces pre-degree(v) up by one.
        options = []
        for u in range(v):
            if edges.has(u, v):
                continue
            try:
                reduce(self.shadow, frozenset((u, v)))
            except Infeasible:
                continue
            options.append(u)
        if not options:
            raise RuntimeError(
                f"no consistent adjacency left to demand at vertex {v}")
        return self._rng.choice(options)


def _linearize(tree: PQTree, rng: SplitMix64) -> tuple[int, ...]:
    """One uniform frontier ordering: shuffle p-children, flip q-nodes."""

    def emit(node: Node) -> list[int]:
        if node.kind == LEAF:
            return [node.leaf]
        children = list(node.children)
        if node.kind == PNODE:
            rng.shuffle(children)
        elif rng.coin():
            children.reverse()
        out: list[int] = []
        for c in children:
            out.extend(emit(c))
        return out

    return tuple(emit(tree.root))


def star_lb_adversary(n: int) -> StarLowerBound:
    return StarLowerBound(n)


def path_lb_adversary(n: int, seed: int) -> PathLowerBound:
    return PathLowerBound(n, seed)
