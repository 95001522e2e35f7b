"""Online algorithm for inputs known to be satisfiable by a star.

The first two vertices of any constraint must form an edge of every
satisfying star, so the star's center always lies in their pair.  The solver
keeps the intersection of those pairs as its candidate centers:

  * two candidates: keep their shared edge, and split each constraint's
    remaining unconnected vertices between the two candidates, alternating
    so the halves differ by at most one;
  * one candidate (the center got revealed): connect the center to every
    vertex seen so far, then serve later constraints directly from it;
  * no candidates: the input was not star-consistent.

Wrong-half edges before the reveal are the algorithm's entire regret, which
is what pins its competitive ratio near 3/2.
"""

from __future__ import annotations

from .model import (
    EdgeSet,
    OrderedConstraint,
    ValidationError,
    check_constraint_range,
    edge_key,
    is_ordered_satisfied,
)


class NotStarConsistent(Exception):
    """The constraints seen so far admit no star; the run is aborted."""


class StarSolver:
    def __init__(self, n: int):
        if n < 2:
            raise ValidationError("star solver needs n >= 2")
        self.n = n
        self.built = EdgeSet(n)
        self.candidates: frozenset[int] | None = None  # None = unconstrained
        self.touched: set[int] = set()
        self._next_side = 0  # index into sorted(candidates) for the next split vertex

    @property
    def center(self) -> int | None:
        if self.candidates is not None and len(self.candidates) == 1:
            return next(iter(self.candidates))
        return None

    def process(self, o: OrderedConstraint) -> set[tuple[int, int]]:
        if not isinstance(o, OrderedConstraint):
            o = OrderedConstraint(tuple(o))
        check_constraint_range(o, self.n)
        verts = o.vertices
        added: set[tuple[int, int]] = set()
        self.touched.update(verts)

        first_pair = frozenset(verts[:2])
        previous = self.candidates
        narrowed = first_pair if previous is None else previous & first_pair
        if not narrowed:
            raise NotStarConsistent(
                f"constraint {verts} cannot share a center with earlier constraints")
        self.candidates = narrowed

        if len(narrowed) == 2:
            c1, c2 = sorted(narrowed)
            self._ensure(verts[0], verts[1], added)
            for v in verts[2:]:
                if self.built.has(v, c1) or self.built.has(v, c2):
                    continue
                target = (c1, c2)[self._next_side]
                self._next_side ^= 1
                self._ensure(target, v, added)
        else:
            center = next(iter(narrowed))
            if previous is not None and len(previous) == 2:
                # Reveal round: reconnect everything seen so far.
                for v in sorted(self.touched):
                    if v != center:
                        self._ensure(center, v, added)
            else:
                for v in verts:
                    if v != center:
                        self._ensure(center, v, added)

        if not is_ordered_satisfied(o, self.built):
            raise RuntimeError("constraint left unsatisfied after processing")
        return added

    def _ensure(self, u: int, v: int, added: set[tuple[int, int]]) -> None:
        if self.built.add(u, v):
            added.add(edge_key(u, v))
