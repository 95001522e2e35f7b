import itertools

import pytest

from helpers import brute_min_cut
from ordnet.fractional import (
    WeightMap,
    fractional_cost,
    fractional_satisfy,
    min_cut_induced,
)
from ordnet.model import ValidationError
from ordnet.rng import SplitMix64


def test_weight_map_bounds():
    w = WeightMap(3)
    assert w.get(0, 1) == 0.0
    w.set(1, 0, 0.5)
    assert w.get(0, 1) == 0.5
    with pytest.raises(ValidationError):
        w.set(0, 1, 1.5)
    with pytest.raises(ValidationError):
        w.set(0, 3, 0.5)


def test_min_cut_examples():
    w = WeightMap(2)
    w.set(0, 1, 0.4)
    cert = min_cut_induced(w, {0, 1}, 0, 1)
    assert cert.cut_edges == frozenset({(0, 1)}) and abs(cert.weight - 0.4) < 1e-9

    w = WeightMap(3)
    w.set(0, 1, 1.0)
    w.set(1, 2, 1.0)
    assert abs(min_cut_induced(w, {0, 1, 2}, 0, 2).weight - 1.0) < 1e-9

    w = WeightMap(4)
    for a, b in itertools.combinations(range(4), 2):
        w.set(a, b, 0.5)
    assert abs(min_cut_induced(w, {0, 1, 2, 3}, 0, 3).weight - 1.5) < 1e-9


def test_min_cut_validation():
    w = WeightMap(3)
    with pytest.raises(ValidationError):
        min_cut_induced(w, {0, 1}, 0, 0)
    with pytest.raises(ValidationError):
        min_cut_induced(w, {0, 1}, 0, 2)


def test_min_cut_matches_bipartition_enumeration():
    rng = SplitMix64(99)
    for _ in range(120):
        n = rng.randint(3, 6)
        w = WeightMap(n)
        for a, b in itertools.combinations(range(n), 2):
            if rng.uniform() < 0.7:
                w.set(a, b, round(rng.uniform(), 3))
        members = set(range(n))
        u, v = 0, n - 1
        cert = min_cut_induced(w, members, u, v)
        assert abs(cert.weight - brute_min_cut(w, members, u, v)) < 1e-6
        # certificate validity: removing the cut pairs separates u from v in
        # the complete graph on the members
        remaining = {frozenset(p) for p in itertools.combinations(sorted(members), 2)}
        remaining -= {frozenset(p) for p in cert.cut_edges}
        seen, stack = {u}, [u]
        while stack:
            x = stack.pop()
            for y in members:
                if y not in seen and frozenset((x, y)) in remaining:
                    seen.add(y)
                    stack.append(y)
        assert v not in seen


def test_satisfy_single_pair_caps_at_one():
    w = WeightMap(5)
    w, updates = fractional_satisfy(w, {0, 1})
    assert w.get(0, 1) == 1.0 and updates >= 1
    _, again = fractional_satisfy(w, {0, 1})
    assert again == 0


def test_satisfy_triangle():
    w = WeightMap(3)
    w, _ = fractional_satisfy(w, {0, 1, 2})
    for a, b in itertools.combinations(range(3), 2):
        assert min_cut_induced(w, {0, 1, 2}, a, b).weight >= 1 - 1e-9
    total = fractional_cost(w)
    assert 1.5 - 1e-9 <= total <= 3.0 + 1e-9


def test_satisfy_never_decreases_weights():
    rng = SplitMix64(123)
    for _ in range(25):
        n = rng.randint(3, 7)
        w = WeightMap(n)
        members = set()
        while len(members) < 3:
            members.add(rng.randrange(n))
        snapshots = {k: v for k, v in w.items()}
        w, _ = fractional_satisfy(w, members)
        snap2 = dict(w.items())
        for key, value in snapshots.items():
            assert snap2.get(key, 0.0) >= value - 1e-12
        more = set(members) | {rng.randrange(n)}
        if len(more) >= 2:
            before = dict(w.items())
            w, _ = fractional_satisfy(w, more)
            for key, value in before.items():
                assert dict(w.items()).get(key, 0.0) >= value - 1e-12


def test_cost_examples():
    w = WeightMap(3)
    assert fractional_cost(w) == 0.0
    w.set(0, 1, 0.5)
    assert fractional_cost(w) == 0.5
    assert fractional_cost(w, {(0, 1): 3.0}) == 1.5


def test_weighted_updates_still_satisfy():
    costs = {(0, 1): 5.0, (1, 2): 0.5}
    w = WeightMap(3)
    w, _ = fractional_satisfy(w, {0, 1, 2}, costs)
    for a, b in itertools.combinations(range(3), 2):
        assert min_cut_induced(w, {0, 1, 2}, a, b).weight >= 1 - 1e-9


def test_satisfy_is_deterministic():
    def run():
        w = WeightMap(5)
        for members in ({0, 1, 2}, {1, 2, 3, 4}, {0, 4}):
            fractional_satisfy(w, members)
        return sorted(w.items())

    assert run() == run()
