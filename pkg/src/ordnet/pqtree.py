"""pq-trees over integer leaves, with traced reductions.

A pq-tree represents a set of leaf orderings (its *frontier*): children of a
p-node may appear in any order, children of a q-node only in the stored order
or its reversal.  Reducing a tree by a vertex set keeps exactly the frontier
orderings in which that set is contiguous, or fails (Infeasible) when no
ordering remains.

The reduction is the classic bottom-up template rewriting over the pertinent
subtree (the minimal subtree spanning the constrained leaves).  Each node is
labelled empty / full / partial from its children and rewritten by the
matching template:

  P1, Q1      relabel an all-full node (no structure change)
  Q0          relabel a q-node whose full block needs no rewrite
  P2          pertinent root p-node, no partial children: group the full
              children under a fresh p-node
  P3          interior p-node, full and empty children: becomes a partial
              q-node [empty-group, full-group] (transiently 2 children)
  P4(1)/(2)   pertinent root p-node with one partial child: push the grouped
              full children into the partial child's full end; (2) when the
              root is left with a single child and is deleted
  P5          interior p-node with one partial child: fold empties, the
              partial child's children, and fulls into one q-node
  P6(1)/(2)   pertinent root p-node with two partial children: concatenate
              them (fulls inward) into one q-node; (2) as in P4(2)
  Q2          q-node with one partial child: splice the partial child's
              children into place
  Q3          pertinent root q-node with two partial children: splice both

Partial nodes keep their children oriented empty-side first.  Every template
application is logged as a TraceStep carrying the change to the tree
statistics (sum of p-node child counts, number of p-nodes, number of
q-nodes), which drive the potential function

    phi(T) = 2 * sum_cp - 3 * num_p + num_q.

Trees here are tiny (tens of leaves), so the implementation favors clarity
over the linear-time bookkeeping of production recognizers: parent maps are
rebuilt per reduction and statistics are recomputed around each rewrite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Optional

from .model import ValidationError, edge_key

LEAF = "leaf"
PNODE = "p"
QNODE = "q"

#: Leaf id of the padding leaf added by new_universal(with_dummy=True).  It is
#: an ordinary leaf that simply never occurs in constraints.
DUMMY = -1

_SIDE_PATTERN = re.compile(r"(e*)(p?)(f*)")
_ROOT_PATTERN = re.compile(r"(e*)(p?)(f*)(p?)(e*)")

RELABEL_TEMPLATES = frozenset({"P0", "P1", "Q0", "Q1"})

#: Potential drop (-delta phi) of each structural template in the special
#: forms produced by nested prefix reductions, under coefficients (2, -3, 1).
TEMPLATE_POTENTIAL_DROP = {
    "P2": 1,
    "P3": 0,
    "P4(1)": 2,
    "P4(2)": 1,
    "P5": 1,
    "P6(1)": 3,
    "P6(2)": 2,
    "Q2": 1,
    "Q3": 2,
}


class Infeasible(Exception):
    """No frontier ordering keeps the requested set contiguous."""


class Node:
    __slots__ = ("kind", "leaf", "children")

    def __init__(self, kind: str, leaf: Optional[int] = None, children: Optional[list] = None):
        self.kind = kind
        self.leaf = leaf
        self.children: list[Node] = children if children is not None else []

    def clone(self) -> "Node":
        if self.kind == LEAF:
            return Node(LEAF, leaf=self.leaf)
        return Node(self.kind, children=[c.clone() for c in self.children])


class PQTree:
    """Immutable-by-convention wrapper around a node tree; reduce() returns a
    rewritten copy and never touches the original."""

    __slots__ = ("root",)

    def __init__(self, root: Node):
        self.root = root

    def copy(self) -> "PQTree":
        return PQTree(self.root.clone())

    def leaf_ids(self) -> set[int]:
        out: set[int] = set()
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.kind == LEAF:
                out.add(node.leaf)
            else:
                stack.extend(node.children)
        return out

    @property
    def leaf_count(self) -> int:
        return len(self.leaf_ids())

    def to_text(self) -> str:
        return _to_text(self.root)

    def __repr__(self) -> str:
        return f"PQTree({self.to_text()})"


@dataclass(frozen=True)
class TraceStep:
    """One template application and the statistics delta it caused."""

    template: str
    d_sum_cp: int
    d_num_p: int
    d_num_q: int

    @property
    def potential_drop(self) -> int:
        return -(2 * self.d_sum_cp - 3 * self.d_num_p + self.d_num_q)

    @property
    def is_relabel(self) -> bool:
        return self.template in RELABEL_TEMPLATES


def new_universal(n: int, with_dummy: bool = False) -> PQTree:
    """Tree admitting every ordering of leaves 0..n-1 (plus the dummy leaf)."""
    if n < 2:
        raise ValidationError("universal pq-tree needs n >= 2")
    children = [Node(LEAF, leaf=i) for i in range(n)]
    if with_dummy:
        children.append(Node(LEAF, leaf=DUMMY))
    return PQTree(Node(PNODE, children=children))


def stats(tree: PQTree) -> tuple[int, int, int]:
    """(sum of p-node child counts, number of p-nodes, number of q-nodes)."""
    sum_cp = num_p = num_q = 0
    stack = [tree.root]
    while stack:
        node = stack.pop()
        if node.kind == PNODE:
            sum_cp += len(node.children)
            num_p += 1
        elif node.kind == QNODE:
            num_q += 1
        stack.extend(node.children)
    return sum_cp, num_p, num_q


def potential(tree: PQTree) -> int:
    sum_cp, num_p, num_q = stats(tree)
    return 2 * sum_cp - 3 * num_p + num_q


def reduce(tree: PQTree, members: Iterable[int]) -> tuple[PQTree, list[TraceStep]]:
    """Restrict tree to orderings where `members` is contiguous.

    Returns a rewritten copy plus the trace of template applications, in
    application order (bottom-up).  Raises Infeasible when the constraint is
    incompatible with the tree, and ValidationError when members are not
    leaves of the tree (the dummy leaf may never be constrained).
    """
    member_set = frozenset(members)
    if len(member_set) < 2:
        raise ValidationError("reduction needs at least 2 members")
    if DUMMY in member_set:
        raise ValidationError("the dummy leaf cannot appear in a constraint")
    work = tree.copy()
    reducer = _Reducer(work.root, member_set)
    reducer.run()
    return PQTree(reducer.root), reducer.trace


class _Reducer:
    def __init__(self, root: Node, members: frozenset[int]):
        self.root = root
        self.members = members
        # Keyed by node object (identity hash); the dicts also keep detached
        # nodes alive so identities stay unambiguous for the whole run.
        self.parent: dict[Node, Optional[Node]] = {}
        self.label: dict[Node, str] = {}
        self.trace: list[TraceStep] = []

    def _lab(self, node: Node) -> str:
        return self.label.get(node, "e")

    def _set_lab(self, node: Node, value: str) -> None:
        self.label[node] = value

    def run(self) -> None:
        depth: dict[Node, int] = {}
        leaf_nodes: dict[int, Node] = {}

        def index(node: Node, parent: Optional[Node], d: int) -> None:
            self.parent[node] = parent
            depth[node] = d
            if node.kind == LEAF:
                leaf_nodes[node.leaf] = node
            for child in node.children:
                index(child, node, d + 1)

        index(self.root, None, 0)
        missing = self.members - set(leaf_nodes)
        if missing:
            raise ValidationError(f"constrained vertices {sorted(missing)} are not leaves")

        chains = []
        for m in sorted(self.members):
            node = leaf_nodes[m]
            self._set_lab(node, "f")
            chain = []
            cur = self.parent[node]
            while cur is not None:
                chain.append(cur)
                cur = self.parent[cur]
            chains.append(chain)

        common = set(chains[0])
        for chain in chains[1:]:
            common &= set(chain)
        lca = max(common, key=depth.get)

        pertinent: list[Node] = []
        seen: set[Node] = set()
        for chain in chains:
            for node in chain:
                if node in seen:
                    break
                seen.add(node)
                pertinent.append(node)
                if node is lca:
                    break

        order = sorted(pertinent, key=depth.get, reverse=True)
        for node in order:
            if node.kind == PNODE:
                self._process_p(node, node is lca)
            else:
                self._process_q(node, node is lca)
        self._check_structure()

    # -- bookkeeping --------------------------------------------------------

    def _stats(self) -> tuple[int, int, int]:
        return stats(PQTree(self.root))

    def _emit(self, template: str, before: tuple[int, int, int]) -> None:
        after = self._stats()
        self.trace.append(TraceStep(template, *(a - b for a, b in zip(after, before))))

    def _emit_relabel(self, template: str) -> None:
        self.trace.append(TraceStep(template, 0, 0, 0))

    def _replace(self, old: Node, new: Node) -> None:
        parent = self.parent[old]
        if parent is None:
            self.root = new
        else:
            parent.children[parent.children.index(old)] = new
        self.parent[new] = parent

    def _group(self, nodes: list[Node]) -> Node:
        """A single node stands for itself; two or more get a fresh p-node."""
        if len(nodes) == 1:
            return nodes[0]
        grouped = Node(PNODE, children=list(nodes))
        for c in nodes:
            self.parent[c] = grouped
        return grouped

    def _adopt(self, parent: Node, children: Iterable[Node]) -> None:
        for c in children:
            self.parent[c] = parent

    # -- p-node templates ----------------------------------------------------

    def _process_p(self, x: Node, is_root: bool) -> None:
        empties, fulls, partials = [], [], []
        for c in x.children:
            lab = self._lab(c)
            (empties if lab == "e" else fulls if lab == "f" else partials).append(c)

        if not partials:
            if not empties:
                self._set_lab(x, "f")
                self._emit_relabel("P1")
                return
            if not fulls:
                raise Infeasible("pertinent p-node without full descendants")
            if is_root:
                # The pertinent root sees at least two non-empty children.
                assert len(fulls) >= 2, "pertinent root cannot have a lone full child"
                before = self._stats()
                grouped = self._group(fulls)
                x.children = empties + [grouped]
                self.parent[grouped] = x
                self._emit("P2", before)
            else:
                before = self._stats()
                ge = self._group(empties)
                gf = self._group(fulls)
                qn = Node(QNODE, children=[ge, gf])
                self._adopt(qn, [ge, gf])
                self._replace(x, qn)
                self._set_lab(qn, "p")
                self._emit("P3", before)
            return

        if len(partials) == 1:
            qn = partials[0]  # children oriented empty..full
            if is_root:
                assert fulls, "pertinent root with a partial child must see other fulls"
                before = self._stats()
                gf = self._group(fulls)
                qn.children.append(gf)
                self.parent[gf] = qn
                x.children = empties + [qn]
                if len(x.children) == 1:
                    self._replace(x, qn)
                    self._emit("P4(2)", before)
                else:
                    self._emit("P4(1)", before)
            else:
                before = self._stats()
                merged: list[Node] = []
                if empties:
                    merged.append(self._group(empties))
                merged.extend(qn.children)
                if fulls:
                    merged.append(self._group(fulls))
                qn.children = merged
                self._adopt(qn, merged)
                self._replace(x, qn)
                self._set_lab(qn, "p")
                self._emit("P5", before)
            return

        if len(partials) == 2 and is_root:
            q1, q2 = partials
            before = self._stats()
            merged = list(q1.children)
            if fulls:
                merged.append(self._group(fulls))
            merged.extend(reversed(q2.children))
            q1.children = merged
            self._adopt(q1, merged)
            x.children = empties + [q1]
            if len(x.children) == 1:
                self._replace(x, q1)
                self._emit("P6(2)", before)
            else:
                self._emit("P6(1)", before)
            return

        raise Infeasible(f"p-node with {len(partials)} partial children "
                         f"({'root' if is_root else 'interior'})")

    # -- q-node templates ----------------------------------------------------

    def _process_q(self, x: Node, is_root: bool) -> None:
        labels = "".join(self._lab(c) for c in x.children)
        if "e" not in labels and "p" not in labels:
            self._set_lab(x, "f")
            self._emit_relabel("Q1")
            return
        if is_root:
            self._q_root(x, labels)
        else:
            self._q_side(x, labels)

    def _q_side(self, x: Node, labels: str) -> None:
        m = _SIDE_PATTERN.fullmatch(labels)
        if m is None:
            m = _SIDE_PATTERN.fullmatch(labels[::-1])
            if m is None:
                raise Infeasible(f"q-node labels {labels} not reducible off-root")
            x.children.reverse()
            labels = labels[::-1]
        if "p" in labels:
            i = labels.index("p")
            partial = x.children[i]
            before = self._stats()
            x.children[i:i + 1] = partial.children
            self._adopt(x, partial.children)
            self._emit("Q2", before)
        else:
            self._emit_relabel("Q0")
        self._set_lab(x, "p")  # children now oriented empty..full

    def _q_root(self, x: Node, labels: str) -> None:
        m = _ROOT_PATTERN.fullmatch(labels)
        if m is None:
            raise Infeasible(f"q-node labels {labels} not reducible at the pertinent root")
        left_partial = bool(m.group(2))
        right_partial = bool(m.group(4))
        if not (left_partial or right_partial):
            self._emit_relabel("Q0")
            return
        before = self._stats()
        # Splice right-to-left so earlier indices stay valid.  The left
        # partial keeps its empty..full orientation; the right one reverses
        # so its full side faces the full block.
        if right_partial:
            i = m.start(4)
            partial = x.children[i]
            replacement = list(reversed(partial.children))
            x.children[i:i + 1] = replacement
            self._adopt(x, replacement)
        if left_partial:
            i = m.start(2)
            partial = x.children[i]
            x.children[i:i + 1] = partial.children
            self._adopt(x, partial.children)
        self._emit("Q3" if (left_partial and right_partial) else "Q2", before)

    # -- invariants ----------------------------------------------------------

    def _check_structure(self) -> None:
        seen_leaves: set[int] = set()
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.kind == LEAF:
                if node.leaf in seen_leaves:
                    raise RuntimeError(f"leaf {node.leaf} duplicated after reduction")
                seen_leaves.add(node.leaf)
            elif node.kind == PNODE:
                if len(node.children) < 2:
                    raise RuntimeError("p-node left with fewer than 2 children")
            else:
                if len(node.children) < 3:
                    raise RuntimeError("q-node left with fewer than 3 children")
            stack.extend(node.children)


def frontier(tree: PQTree) -> set[tuple[int, ...]]:
    """Every leaf ordering the tree admits.  Exponential; capped at 8 leaves."""
    if tree.leaf_count > 8:
        raise ValidationError("frontier enumeration is capped at 8 leaves")

    def arrangements(node: Node) -> list[tuple[int, ...]]:
        if node.kind == LEAF:
            return [(node.leaf,)]
        out = []
        if node.kind == PNODE:
            orders = permutations(node.children)
        else:
            orders = (tuple(node.children), tuple(reversed(node.children)))
        for order in orders:
            for combo in product(*(arrangements(c) for c in order)):
                out.append(tuple(v for part in combo for v in part))
        return out

    return set(arrangements(tree.root))


def forced_adjacencies(tree: PQTree) -> set[tuple[int, int]]:
    """Leaf pairs adjacent in every frontier ordering.

    Structurally: two leaves that are consecutive children of a q-node, or
    the two sole children of a 2-child p-node.  Any internal subtree can show
    at least two different leaves at an end of its segment (its own frontier
    is closed under reversal), so no other pair can be pinned together.
    """
    forced: set[tuple[int, int]] = set()
    stack = [tree.root]
    while stack:
        node = stack.pop()
        if node.kind == QNODE:
            for a, b in zip(node.children, node.children[1:]):
                if a.kind == LEAF and b.kind == LEAF:
                    forced.add(edge_key(a.leaf, b.leaf))
        elif node.kind == PNODE and len(node.children) == 2:
            a, b = node.children
            if a.kind == LEAF and b.kind == LEAF:
                forced.add(edge_key(a.leaf, b.leaf))
        stack.extend(node.children)
    return forced


def special_form_violations(tree: PQTree) -> list[str]:
    """Structural facts that hold in trees driven purely by nested prefix
    reductions; an online path run asserts these after every step."""
    problems: list[str] = []

    def walk(node: Node, is_root: bool) -> None:
        if node.kind == PNODE:
            if not is_root and len(node.children) > 2:
                problems.append("non-root p-node with more than 2 children")
            if not is_root and not any(c.kind == LEAF for c in node.children):
                problems.append("non-root p-node without a leaf child")
        elif node.kind == QNODE:
            for a, b in zip(node.children, node.children[1:]):
                if a.kind != LEAF and b.kind != LEAF:
                    problems.append("adjacent q-node children that are both internal")
        for c in node.children:
            walk(c, False)

    walk(tree.root, True)
    return problems


def _to_text(node: Node) -> str:
    if node.kind == LEAF:
        return "D" if node.leaf == DUMMY else str(node.leaf)
    tag = "P" if node.kind == PNODE else "Q"
    return f"{tag}({', '.join(_to_text(c) for c in node.children)})"


def tree_from_text(text: str) -> PQTree:
    """Parse the debug serialization: P(...), Q(...), integer leaves, D."""
    tokens = re.findall(r"[PQD()\,]|\d+", text.replace(" ", ""))
    pos = 0

    def parse() -> Node:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == "D":
            return Node(LEAF, leaf=DUMMY)
        if tok.isdigit():
            return Node(LEAF, leaf=int(tok))
        if tok in ("P", "Q"):
            if tokens[pos] != "(":
                raise ValidationError("expected '(' in tree text")
            pos += 1
            children = [parse()]
            while tokens[pos] == ",":
                pos += 1
                children.append(parse())
            if tokens[pos] != ")":
                raise ValidationError("expected ')' in tree text")
            pos += 1
            kind = PNODE if tok == "P" else QNODE
            if kind == PNODE and len(children) < 2:
                raise ValidationError("p-node needs at least 2 children")
            if kind == QNODE and len(children) < 3:
                raise ValidationError("q-node needs at least 3 children")
            return Node(kind, children=children)
        raise ValidationError(f"unexpected token {tok!r} in tree text")

    root = parse()
    if pos != len(tokens):
        raise ValidationError("trailing tokens in tree text")
    tree = PQTree(root)
    leaves = []
    stack = [root]
    while stack:
        node = stack.pop()
        if node.kind == LEAF:
            leaves.append(node.leaf)
        stack.extend(node.children)
    if len(set(leaves)) != len(leaves):
        raise ValidationError("duplicate leaf in tree text")
    return tree
