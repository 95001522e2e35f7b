from itertools import combinations, permutations

import pytest

from ordnet.model import (
    ConnectivityConstraint,
    EdgeSet,
    Instance,
    OrderedConstraint,
    ValidationError,
    all_satisfied,
    cost_of,
    expand_to_connectivity,
    is_connectivity_satisfied,
    is_ordered_satisfied,
)
from ordnet.rng import SplitMix64


def edges(n, *pairs):
    return EdgeSet(n, pairs)


def test_ordered_satisfaction_examples():
    assert is_ordered_satisfied(OrderedConstraint((0, 1)), edges(2, (0, 1)))
    # vertex 1 has no earlier neighbor
    assert not is_ordered_satisfied(OrderedConstraint((0, 1, 2)), edges(3, (0, 2), (1, 2)))
    assert is_ordered_satisfied(OrderedConstraint((0, 1, 2)), edges(3, (0, 1), (1, 2)))


def test_constraint_validation():
    with pytest.raises(ValidationError):
        OrderedConstraint((0,))
    with pytest.raises(ValidationError):
        OrderedConstraint((0, 0))
    with pytest.raises(ValidationError):
        ConnectivityConstraint(frozenset({1}))
    with pytest.raises(ValidationError):
        is_ordered_satisfied(OrderedConstraint((0, 5)), edges(3))


def test_expand_to_connectivity():
    assert [set(c.members) for c in expand_to_connectivity(OrderedConstraint((0, 1)))] == [{0, 1}]
    assert [set(c.members) for c in expand_to_connectivity(OrderedConstraint((3, 1, 4)))] == [
        {3, 1}, {3, 1, 4}]
    assert [set(c.members) for c in expand_to_connectivity(OrderedConstraint((0, 1, 2, 3)))] == [
        {0, 1}, {0, 1, 2}, {0, 1, 2, 3}]


def test_connectivity_satisfaction_examples():
    assert is_connectivity_satisfied(ConnectivityConstraint(frozenset({0, 1})), edges(2, (0, 1)))
    # path through an outside vertex does not make the induced subgraph connected
    assert not is_connectivity_satisfied(
        ConnectivityConstraint(frozenset({0, 1, 2})), edges(4, (0, 3), (3, 1), (1, 2)))
    assert is_connectivity_satisfied(
        ConnectivityConstraint(frozenset({0, 1, 2})), edges(3, (0, 1), (1, 2)))


def test_all_satisfied():
    assert all_satisfied([], edges(2))
    assert not all_satisfied([OrderedConstraint((0, 1))], edges(2))
    assert all_satisfied(
        [OrderedConstraint((0, 1)), OrderedConstraint((1, 2, 0))],
        edges(3, (0, 1), (1, 2)))


def test_edge_set_semantics():
    e = edges(4)
    assert e.add(2, 1) and not e.add(1, 2)
    assert e.has(1, 2) and (1, 2) in e and (2, 1) in e
    assert len(e) == 1
    with pytest.raises(ValidationError):
        e.add(1, 1)
    with pytest.raises(ValidationError):
        e.add(0, 4)
    snap = e.copy()
    e.add(0, 1)
    assert len(snap) == 1 and len(e) == 2


def test_instance_validation_and_costs():
    inst = Instance(3, (OrderedConstraint((0, 1)),), costs={(1, 0): 2.5})
    assert inst.r == 1 and inst.costs == {(0, 1): 2.5}
    with pytest.raises(ValidationError):
        Instance(2, (OrderedConstraint((0, 2)),))
    with pytest.raises(ValidationError):
        Instance(3, (), costs={(0, 1): 0.0})
    assert cost_of([(0, 1), (1, 2)]) == 2.0
    assert cost_of([(0, 1), (1, 2)], {(0, 1): 3.0}) == 4.0


def _random_edge_set(rng, n):
    e = EdgeSet(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.uniform() < 0.4:
                e.add(u, v)
    return e


def _random_constraint(rng, n):
    k = rng.randint(2, n)
    verts = list(range(n))
    rng.shuffle(verts)
    return OrderedConstraint(tuple(verts[:k]))


def test_equivalence_with_prefix_connectivity_exhaustive_small():
    # ordered satisfaction <=> all prefix sets induce connected subgraphs
    for n in (2, 3, 4):
        all_pairs = list(combinations(range(n), 2))
        for size in range(2, n + 1):
            for subset in combinations(range(n), size):
                for perm in permutations(subset):
                    o = OrderedConstraint(perm)
                    prefixes = expand_to_connectivity(o)
                    for mask in range(1 << len(all_pairs)):
                        e = EdgeSet(n, (all_pairs[i] for i in range(len(all_pairs))
                                        if mask >> i & 1))
                        lhs = is_ordered_satisfied(o, e)
                        rhs = all(is_connectivity_satisfied(p, e) for p in prefixes)
                        assert lhs == rhs


def test_equivalence_with_prefix_connectivity_random():
    rng = SplitMix64(2024)
    for _ in range(2000):
        n = rng.randint(3, 8)
        o = _random_constraint(rng, n)
        e = _random_edge_set(rng, n)
        lhs = is_ordered_satisfied(o, e)
        rhs = all(is_connectivity_satisfied(p, e) for p in expand_to_connectivity(o))
        assert lhs == rhs


def test_monotone_under_edge_additions():
    rng = SplitMix64(55)
    for _ in range(300):
        n = rng.randint(3, 8)
        o = _random_constraint(rng, n)
        e = _random_edge_set(rng, n)
        if not is_ordered_satisfied(o, e):
            continue
        e2 = e.copy()
        for _ in range(3):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                e2.add(u, v)
        assert is_ordered_satisfied(o, e2)


def test_invariant_under_nonincident_edges():
    rng = SplitMix64(56)
    for _ in range(300):
        n = rng.randint(4, 8)
        verts = list(range(n))
        rng.shuffle(verts)
        o = OrderedConstraint(tuple(verts[:rng.randint(2, n - 1)]))
        e = _random_edge_set(rng, n)
        before = is_ordered_satisfied(o, e)
        e2 = e.copy()
        members = set(o.vertices)
        for u in range(n):
            for v in range(u + 1, n):
                if u not in members and v not in members and rng.uniform() < 0.5:
                    e2.add(u, v)
        assert is_ordered_satisfied(o, e2) == before
