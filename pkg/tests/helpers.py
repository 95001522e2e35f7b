"""Independent brute-force oracles shared across the test suite.

Everything here recomputes answers from definitions (permutation filters,
bipartition enumeration, simulation) so the tested code paths never verify
themselves.
"""

from itertools import combinations, permutations

from ordnet.model import EdgeSet, OrderedConstraint, is_ordered_satisfied


def contiguous(perm, members) -> bool:
    idx = sorted(perm.index(v) for v in members)
    return idx[-1] - idx[0] + 1 == len(idx)


def filter_frontier(perms, members):
    return {p for p in perms if contiguous(p, members)}


def adjacency_pairs(perm):
    return {tuple(sorted((perm[i], perm[i + 1]))) for i in range(len(perm) - 1)}


def forced_from_frontier(perms):
    return set.intersection(*(adjacency_pairs(p) for p in perms))


def path_edge_set(order, n) -> EdgeSet:
    return EdgeSet(n, ((order[i], order[i + 1]) for i in range(len(order) - 1)))


def consistent_paths(n, constraints):
    """All vertex orderings whose path graph satisfies every constraint."""
    out = []
    for perm in permutations(range(n)):
        edges = path_edge_set(perm, n)
        if all(is_ordered_satisfied(o, edges) for o in constraints):
            out.append(perm)
    return out


def brute_min_cut(weights, members, s, t):
    """Minimum s-t cut weight over all bipartitions of `members`."""
    verts = sorted(members)
    rest = [v for v in verts if v not in (s, t)]
    best = None
    for k in range(len(rest) + 1):
        for side in combinations(rest, k):
            a = set(side) | {s}
            value = sum(
                weights.get(u, v)
                for u in a
                for v in verts
                if v not in a
            )
            best = value if best is None else min(best, value)
    return best


def brute_min_edges(n, constraints, max_edges=None):
    """Smallest edge count satisfying all constraints, by subset enumeration
    over candidate pairs.  Exponential; keep candidate sets tiny."""
    cands = set()
    for o in constraints:
        verts = o.vertices if isinstance(o, OrderedConstraint) else tuple(o)
        for i in range(1, len(verts)):
            for j in range(i):
                cands.add(tuple(sorted((verts[j], verts[i]))))
    cands = sorted(cands)
    limit = max_edges if max_edges is not None else len(cands)
    objs = [o if isinstance(o, OrderedConstraint) else OrderedConstraint(tuple(o))
            for o in constraints]
    for k in range(limit + 1):
        for picked in combinations(cands, k):
            edges = EdgeSet(n, picked)
            if all(is_ordered_satisfied(o, edges) for o in objs):
                return k
    return None
