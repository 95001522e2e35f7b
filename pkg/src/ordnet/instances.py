"""Instance generators and the flat-file formats.

Instance files are line-oriented text: `#` starts a comment, the first data
line is `n <int>`, an optional `costs <file>` line points at a cost file
(relative to the instance file), and every other non-empty line is one
ordered constraint as whitespace-separated 0-based vertex ids.  Edge files
hold one `u v` pair per line; cost files one `u v cost` triple per line.
"""

from __future__ import annotations

import os
from typing import Optional

from .model import EdgeSet, Instance, OrderedConstraint, ValidationError, edge_key
from .oracle import CANDIDATE_CAP, candidate_edges
from .rng import SplitMix64, derive_seed


class ParseError(ValueError):
    """A flat file does not follow the documented format."""


# -- generators ---------------------------------------------------------------


def random_path_instance(n: int, r: int, seed: int) -> tuple[Instance, list[int]]:
    """r constraints consistent with one hidden random path.

    Each constraint grows a random window of the hidden path one endpoint at
    a time, so every non-first vertex is path-adjacent to an earlier one.
    Returns the instance and the hidden path as a vertex sequence.
    """
    if n < 2 or r < 1:
        raise ValidationError("random path instance needs n >= 2, r >= 1")
    rng = SplitMix64(derive_seed(seed, n, r, 0x9A70))
    path = list(range(n))
    rng.shuffle(path)
    constraints = []
    for _ in range(r):
        length = rng.randint(2, n)
        lo = hi = rng.randrange(n)
        seq = [path[lo]]
        while len(seq) < length:
            moves = []
            if lo > 0:
                moves.append(-1)
            if hi < n - 1:
                moves.append(1)
            if rng.choice(moves) < 0:
                lo -= 1
                seq.append(path[lo])
            else:
                hi += 1
                seq.append(path[hi])
        constraints.append(OrderedConstraint(tuple(seq)))
    return Instance(n, tuple(constraints)), path


def random_star_instance(n: int, r: int, seed: int) -> tuple[Instance, int]:
    """r constraints consistent with one hidden star; returns its center."""
    if n < 2 or r < 1:
        raise ValidationError("random star instance needs n >= 2, r >= 1")
    rng = SplitMix64(derive_seed(seed, n, r, 0x57A2))
    center = rng.randrange(n)
    constraints = []
    for _ in range(r):
        length = rng.randint(2, n)
        others = [v for v in range(n) if v != center]
        rng.shuffle(others)
        seq = [center, others[0]]
        if rng.coin():
            seq.reverse()
        seq.extend(others[1:length - 1])
        constraints.append(OrderedConstraint(tuple(seq)))
    return Instance(n, tuple(constraints)), center


def random_ordered_instance(
    n: int,
    r: int,
    seed: int,
    max_len: int = 5,
    candidate_cap: int = CANDIDATE_CAP,
) -> Instance:
    """Unstructured random constraints, resampled until the exact oracle's
    candidate-edge cap is respected (so OPT stays computable)."""
    if n < 2 or r < 1:
        raise ValidationError("random instance needs n >= 2, r >= 1")
    rng = SplitMix64(derive_seed(seed, n, r, 0x6E4E))
    for _ in range(200):
        constraints = []
        for _ in range(r):
            length = rng.randint(2, min(max_len, n))
            verts = list(range(n))
            rng.shuffle(verts)
            constraints.append(OrderedConstraint(tuple(verts[:length])))
        inst = Instance(n, tuple(constraints))
        if len(candidate_edges(inst)) <= candidate_cap:
            return inst
    raise ValidationError(
        f"could not sample an instance under {candidate_cap} candidate edges")


# -- file formats -------------------------------------------------------------


def write_instance(path: str, inst: Instance, header: Optional[str] = None,
                   costs_filename: Optional[str] = None) -> None:
    lines = []
    if header:
        for line in header.splitlines():
            lines.append(f"# {line}")
    lines.append(f"n {inst.n}")
    if inst.costs is not None:
        if costs_filename is None:
            raise ValidationError("instance has costs; pass costs_filename")
        lines.append(f"costs {costs_filename}")
        write_costs(os.path.join(os.path.dirname(path) or ".", costs_filename), inst.costs)
    for o in inst.constraints:
        lines.append(" ".join(str(v) for v in o.vertices))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_instance(path: str) -> Instance:
    n: Optional[int] = None
    costs = None
    constraints: list[OrderedConstraint] = []
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read instance file: {exc}") from exc
    for lineno, line in enumerate(raw.splitlines(), 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if n is None:
            if parts[0] != "n" or len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"{path}:{lineno}: expected 'n <int>' first")
            n = int(parts[1])
            continue
        if parts[0] == "costs":
            if len(parts) != 2:
                raise ParseError(f"{path}:{lineno}: expected 'costs <file>'")
            costs = read_costs(os.path.join(os.path.dirname(path) or ".", parts[1]))
            continue
        try:
            verts = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: bad vertex id") from exc
        try:
            constraints.append(OrderedConstraint(verts))
        except ValidationError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    if n is None:
        raise ParseError(f"{path}: missing 'n <int>' line")
    try:
        return Instance(n, tuple(constraints), costs)
    except ValidationError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_edges(path: str, edges: EdgeSet) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in edges.sorted_edges():
            fh.write(f"{u} {v}\n")


def read_edges(path: str, n: int) -> EdgeSet:
    out = EdgeSet(n)
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read edge file: {exc}") from exc
    for lineno, line in enumerate(raw.splitlines(), 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected 'u v'")
        try:
            out.add(int(parts[0]), int(parts[1]))
        except (ValueError, ValidationError) as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    return out


def write_costs(path: str, costs: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for (u, v), cost in sorted(costs.items()):
            fh.write(f"{u} {v} {cost:.10g}\n")


def read_costs(path: str) -> dict:
    costs: dict[tuple[int, int], float] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read cost file: {exc}") from exc
    for lineno, line in enumerate(raw.splitlines(), 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 3:
            raise ParseError(f"{path}:{lineno}: expected 'u v cost'")
        try:
            key = edge_key(int(parts[0]), int(parts[1]))
            value = float(parts[2])
        except (ValueError, ValidationError) as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
        if value <= 0:
            raise ParseError(f"{path}:{lineno}: cost must be positive")
        costs[key] = value
    return costs
