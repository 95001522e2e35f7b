from itertools import permutations

import pytest

from helpers import filter_frontier, forced_from_frontier
from ordnet.model import ValidationError
from ordnet.pqtree import (
    DUMMY,
    Infeasible,
    RELABEL_TEMPLATES,
    TEMPLATE_POTENTIAL_DROP,
    forced_adjacencies,
    frontier,
    new_universal,
    potential,
    reduce,
    stats,
    tree_from_text,
)
from ordnet.rng import SplitMix64, derive_seed


def test_new_universal():
    t = new_universal(3)
    assert t.to_text() == "P(0, 1, 2)"
    t = new_universal(3, with_dummy=True)
    assert t.to_text() == "P(0, 1, 2, D)"
    assert t.leaf_count == 4
    with pytest.raises(ValidationError):
        new_universal(1)


def test_potential_and_stats():
    for n in (3, 5, 9):
        assert potential(new_universal(n, with_dummy=True)) == 2 * n - 1
    assert stats(new_universal(5)) == (5, 1, 0)
    assert stats(tree_from_text("Q(0, 1, 2, 3)")) == (0, 0, 1)
    assert potential(tree_from_text("Q(0, 1, 2, 3)")) == 1
    assert stats(tree_from_text("P(0, Q(1, 2, 3))")) == (2, 1, 1)
    assert potential(tree_from_text("P(0, Q(1, 2, 3))")) == 2


def test_frontier_examples():
    assert frontier(new_universal(3)) == set(permutations(range(3)))
    assert frontier(tree_from_text("Q(0, 1, 2)")) == {(0, 1, 2), (2, 1, 0)}
    assert frontier(tree_from_text("P(0, Q(1, 2, 3))")) == {
        (0, 1, 2, 3), (0, 3, 2, 1), (1, 2, 3, 0), (3, 2, 1, 0)}
    with pytest.raises(ValidationError):
        frontier(new_universal(9))


def test_forced_adjacency_examples():
    assert forced_adjacencies(new_universal(4)) == set()
    assert forced_adjacencies(tree_from_text("Q(0, 1, 2)")) == {(0, 1), (1, 2)}
    assert forced_adjacencies(tree_from_text("P(0, Q(1, 2, 3))")) == {(1, 2), (2, 3)}
    assert forced_adjacencies(tree_from_text("P(0, 1)")) == {(0, 1)}


def test_reduce_pair_on_universal():
    t, trace = reduce(new_universal(4), {0, 1})
    expect = filter_frontier(set(permutations(range(4))), {0, 1})
    assert frontier(t) == expect and len(expect) == 12
    assert [s.template for s in trace] == ["P2"]


def test_reduce_by_all_leaves_is_relabel_only():
    t = new_universal(5)
    before = t.to_text()
    t2, trace = reduce(t, set(range(5)))
    assert t2.to_text() == before
    assert [s.template for s in trace] == ["P1"]


def test_reduce_infeasible_chain():
    t, _ = reduce(new_universal(3), {0, 1})
    t, _ = reduce(t, {0, 2})
    # both pairs pinned: {1,2} can no longer be contiguous
    with pytest.raises(Infeasible):
        reduce(t, {1, 2})


def test_reduce_validation():
    with pytest.raises(ValidationError):
        reduce(new_universal(3), {0, 7})
    with pytest.raises(ValidationError):
        reduce(new_universal(3, with_dummy=True), {0, DUMMY})
    with pytest.raises(ValidationError):
        reduce(new_universal(3), {0})


def test_serialization_round_trip():
    text = "P(0, Q(1, 2, P(3, 4)), D)"
    assert tree_from_text(text).to_text() == text
    with pytest.raises(ValidationError):
        tree_from_text("Q(0, 1)")
    with pytest.raises(ValidationError):
        tree_from_text("P(0, 0)")


def test_reduce_golden_text():
    # serialization pins the exact structural outcome of a reduce chain
    t = new_universal(4)
    t, _ = reduce(t, {0, 1})
    assert t.to_text() == "P(2, 3, P(0, 1))"
    t, _ = reduce(t, {0, 2})
    assert t.to_text() == "P(3, Q(1, 0, 2))"
    t, _ = reduce(t, {2, 3})
    assert t.to_text() == "Q(1, 0, 2, 3)"


def test_reduce_is_nondestructive():
    t = new_universal(4)
    before = t.to_text()
    reduce(t, {0, 1})
    assert t.to_text() == before


def _random_members(rng, leaves):
    k = rng.randint(2, len(leaves))
    pool = list(leaves)
    rng.shuffle(pool)
    return frozenset(pool[:k])


def test_randomized_frontier_equivalence_and_traces():
    # reducer vs the brute-force permutation filter, plus trace-delta and
    # reversal-closure checks along the way
    for trial in range(150):
        rng = SplitMix64(derive_seed(trial, 0xF0))
        n = rng.randint(3, 7)
        tree = new_universal(n)
        fr = frontier(tree)
        for _ in range(rng.randint(1, 4)):
            members = _random_members(rng, range(n))
            filtered = filter_frontier(fr, members)
            try:
                tree2, trace = reduce(tree, members)
            except Infeasible:
                assert not filtered
                break
            assert filtered, "reducer accepted an unsatisfiable constraint"
            before, after = stats(tree), stats(tree2)
            total = tuple(sum(s) for s in zip(*(
                (st.d_sum_cp, st.d_num_p, st.d_num_q) for st in trace)))
            assert total == tuple(a - b for a, b in zip(after, before))
            fr2 = frontier(tree2)
            assert fr2 == filtered
            assert fr2 == {tuple(reversed(p)) for p in fr2}
            assert forced_adjacencies(tree2) == forced_from_frontier(fr2)
            for step in trace:
                if step.template not in RELABEL_TEMPLATES:
                    assert step.template in TEMPLATE_POTENTIAL_DROP
            tree, fr = tree2, fr2
