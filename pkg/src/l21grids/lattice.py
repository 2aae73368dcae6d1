"""Finite patches of the square, triangular and hexagonal tilings.

Coordinates are integer pairs:

* square: ``(x, y)`` adjacent iff ``|dx| + |dy| == 1``
* triangular: axial coordinates, six neighbours
  ``(x±1, y), (x, y±1), (x+1, y-1), (x-1, y+1)``
* hexagonal: brick-wall embedding, ``(x±1, y)`` plus ``(x, y+1)`` when
  ``x + y`` is even, otherwise ``(x, y-1)``

Custom graphs carry an explicit edge list over nodes ``0..n-1``.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

Coord = tuple[int, int]
Edge = tuple[int, int]


class GridError(ValueError):
    """Invalid grid input. ``where`` holds the offending coordinate or index."""

    def __init__(self, message: str, where=None):
        super().__init__(message)
        self.where = where


class TilingKind(str, Enum):
    SQUARE = "square"
    TRIANGULAR = "triangular"
    HEXAGONAL = "hexagonal"
    CUSTOM = "custom"

    @property
    def degree(self) -> int | None:
        return _TILING_DEGREE.get(self)


_TILING_DEGREE = {
    TilingKind.SQUARE: 4,
    TilingKind.TRIANGULAR: 6,
    TilingKind.HEXAGONAL: 3,
}

_SQUARE_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))
_TRI_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


def neighbors(kind: TilingKind | str, c: Coord) -> set[Coord]:
    """Full lattice neighbourhood of ``c``."""
    kind = TilingKind(kind)
    x, y = c
    if kind is TilingKind.SQUARE:
        steps = _SQUARE_STEPS
    elif kind is TilingKind.TRIANGULAR:
        steps = _TRI_STEPS
    elif kind is TilingKind.HEXAGONAL:
        steps = ((1, 0), (-1, 0), (0, 1) if (x + y) % 2 == 0 else (0, -1))
    else:
        raise GridError("custom graphs have no lattice neighbourhood", where=c)
    return {(x + dx, y + dy) for dx, dy in steps}


@dataclass(frozen=True)
class Grid:
    """An undirected connected simple graph, usually a lattice patch.

    ``nodes`` are coordinates for lattice kinds and ``0..n-1`` for custom
    graphs. ``edges`` are index pairs ``(i, j)`` with ``i < j``, sorted; this
    is the canonical edge order used by orientation bitstrings.
    """

    kind: TilingKind
    nodes: tuple
    edges: tuple[Edge, ...]
    name: str | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for a in adj:
            a.sort()
        return adj

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def is_lattice(self) -> bool:
        return self.kind is not TilingKind.CUSTOM

    def index(self, c) -> int:
        return self.nodes.index(tuple(c) if self.is_lattice else c)

    def to_doc(self) -> dict:
        if self.is_lattice:
            return {"kind": self.kind.value, "nodes": [list(c) for c in self.nodes]}
        return {"kind": "custom", "n": self.n, "edges": [list(e) for e in self.edges]}

    def __repr__(self) -> str:
        label = self.name or self.kind.value
        return f"Grid({label}, n={self.n}, m={self.m})"


def _check_connected(n: int, edges: Sequence[Edge], nodes: Sequence) -> None:
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    if not all(seen):
        bad = seen.index(False)
        raise GridError(f"grid is disconnected: node {nodes[bad]} unreachable", where=nodes[bad])


def build_grid(kind: TilingKind | str, nodes: Iterable[Coord], name: str | None = None) -> Grid:
    """Induced subgraph of a tiling on the given coordinates.

    Node order is preserved; the edge set does not depend on it.
    """
    kind = TilingKind(kind)
    if kind is TilingKind.CUSTOM:
        raise GridError("use build_custom for custom graphs")
    coords: list[Coord] = []
    for c in nodes:
        try:
            x, y = c
        except (TypeError, ValueError):
            raise GridError(f"bad coordinate {c!r}", where=c) from None
        if not (isinstance(x, int) and isinstance(y, int)) or isinstance(x, bool) or isinstance(y, bool):
            raise GridError(f"coordinates must be integers, got {c!r}", where=c)
        coords.append((x, y))
    if not coords:
        raise GridError("grid needs at least one node")
    position = {}
    for i, c in enumerate(coords):
        if c in position:
            raise GridError(f"duplicate coordinate {c}", where=c)
        position[c] = i
    edges = set()
    for i, c in enumerate(coords):
        for nb in neighbors(kind, c):
            j = position.get(nb)
            if j is not None:
                edges.add((min(i, j), max(i, j)))
    edges_t = tuple(sorted(edges))
    _check_connected(len(coords), edges_t, coords)
    return Grid(kind, tuple(coords), edges_t, name=name)


def build_custom(n: int, edges: Iterable[Sequence[int]], name: str | None = None) -> Grid:
    if not isinstance(n, int) or n < 1:
        raise GridError(f"node count must be a positive integer, got {n!r}", where=n)
    es = set()
    for e in edges:
        try:
            i, j = e
        except (TypeError, ValueError):
            raise GridError(f"bad edge {e!r}", where=e) from None
        for k in (i, j):
            if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k < n:
                raise GridError(f"edge {e!r} has out-of-range index {k!r}", where=k)
        if i == j:
            raise GridError(f"self-loop at node {i}", where=i)
        key = (min(i, j), max(i, j))
        if key in es:
            raise GridError(f"duplicate edge {key}", where=key)
        es.add(key)
    edges_t = tuple(sorted(es))
    nodes = tuple(range(n))
    _check_connected(n, edges_t, nodes)
    return Grid(TilingKind.CUSTOM, nodes, edges_t, name=name)


def grid_from_doc(doc: dict) -> Grid:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise GridError("grid document must be an object with a 'kind' field")
    try:
        kind = TilingKind(doc["kind"])
    except ValueError:
        raise GridError(f"unknown kind {doc['kind']!r}", where=doc["kind"]) from None
    if kind is TilingKind.CUSTOM:
        if "n" not in doc or "edges" not in doc:
            raise GridError("custom grid needs 'n' and 'edges'")
        return build_custom(doc["n"], doc["edges"])
    if "nodes" not in doc:
        raise GridError("lattice grid needs 'nodes'")
    return build_grid(kind, [tuple(c) if isinstance(c, list) else c for c in doc["nodes"]])


def dumps(doc: dict) -> str:
    """Canonical JSON text used by every writer in the package."""
    return json.dumps(doc, separators=(",", ":"))


# -- named patches ----------------------------------------------------------

# rim of the wheel in cyclic order (a..f are indices 0..5), centre g is index 6
TRI_RIM = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def square_rect(w: int, h: int) -> Grid:
    """``w`` x ``h`` block, rows listed top to bottom, left to right."""
    if w < 1 or h < 1:
        raise GridError(f"squareRect needs w, h >= 1, got {w}x{h}")
    return build_grid(TilingKind.SQUARE, [(x, y) for y in range(h) for x in range(w)],
                      name=f"squareRect({w},{h})")


def tri_wheel() -> Grid:
    return build_grid(TilingKind.TRIANGULAR, [*TRI_RIM, (0, 0)], name="triWheel()")


def tri_diamond() -> Grid:
    # order x (top), w, y (middle), z (bottom); shared edge is w-y
    return build_grid(TilingKind.TRIANGULAR, [(0, 0), (1, 0), (0, 1), (1, 1)], name="triDiamond()")


def tri_triangle() -> Grid:
    return build_grid(TilingKind.TRIANGULAR, [(0, 0), (1, 0), (0, 1)], name="triTriangle()")


def tri_flag() -> Grid:
    """Triangle with a pendant node: the smallest triangular patch with a P4."""
    return build_grid(TilingKind.TRIANGULAR, [(0, 0), (1, 0), (0, 1), (2, 0)], name="triFlag()")


# cells added around the wheel, in rim order: each is adjacent to two
# consecutive rim nodes and nothing else of the wheel
_WHEEL_EXTRAS = ((1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1))


def tri_wheel_plus(k: int) -> Grid:
    """Wheel with ``k`` extra nodes hugging the rim (k <= 6)."""
    if not 0 <= k <= 6:
        raise GridError(f"triWheelPlus needs 0 <= k <= 6, got {k}")
    return build_grid(TilingKind.TRIANGULAR, [*TRI_RIM, (0, 0), *_WHEEL_EXTRAS[:k]],
                      name=f"triWheelPlus({k})")


def tri_rows(*lengths: int) -> Grid:
    """Rows of consecutive triangular nodes; row ``r`` starts at x=0, y=r."""
    if not lengths or any(k < 1 for k in lengths):
        raise GridError("triRows needs positive row lengths")
    nodes = [(x, y) for y, k in enumerate(lengths) for x in range(k)]
    return build_grid(TilingKind.TRIANGULAR, nodes,
                      name=f"triRows({','.join(map(str, lengths))})")


def hex_cycle(k: int) -> Grid:
    """``k`` hexagons fused in a row (brick-wall, two rows, 2k+1 columns)."""
    if k < 1:
        raise GridError(f"hexCycle needs k >= 1, got {k}")
    nodes = [(x, y) for y in range(2) for x in range(2 * k + 1)]
    return build_grid(TilingKind.HEXAGONAL, nodes, name=f"hexCycle({k})")


def hex_star() -> Grid:
    return build_grid(TilingKind.HEXAGONAL, [(0, 0), (1, 0), (-1, 0), (0, 1)], name="hexStar()")


def hex_path(k: int) -> Grid:
    """Straight horizontal run of ``k`` hexagonal-lattice nodes."""
    return build_grid(TilingKind.HEXAGONAL, [(x, 0) for x in range(k)], name=f"hexPath({k})")


# -- custom families --------------------------------------------------------

def path_graph(n: int) -> Grid:
    return build_custom(n, [(i, i + 1) for i in range(n - 1)], name=f"path({n})")


def cycle_graph(n: int) -> Grid:
    if n < 3:
        raise GridError(f"cycle needs n >= 3, got {n}")
    return build_custom(n, [(i, (i + 1) % n) for i in range(n)], name=f"cycle({n})")


def complete_graph(n: int) -> Grid:
    return build_custom(n, [(i, j) for i in range(n) for j in range(i + 1, n)], name=f"complete({n})")


def petersen() -> Grid:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_custom(10, outer + spokes + inner, name="petersen()")


def dodecahedron() -> Grid:
    """Planar, cubic, girth 5, 20 nodes."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    to_mid = [(i, 5 + 2 * i) for i in range(5)]
    mid = [(5 + i, 5 + (i + 1) % 10) for i in range(10)]
    to_inner = [(6 + 2 * i, 15 + i) for i in range(5)]
    inner = [(15 + i, 15 + (i + 1) % 5) for i in range(5)]
    return build_custom(20, outer + to_mid + mid + to_inner + inner, name="dodecahedron()")


_PATCHES = {
    "squarerect": (square_rect, TilingKind.SQUARE),
    "triwheel": (tri_wheel, TilingKind.TRIANGULAR),
    "tridiamond": (tri_diamond, TilingKind.TRIANGULAR),
    "tritriangle": (tri_triangle, TilingKind.TRIANGULAR),
    "triflag": (tri_flag, TilingKind.TRIANGULAR),
    "triwheelplus": (tri_wheel_plus, TilingKind.TRIANGULAR),
    "trirows": (tri_rows, TilingKind.TRIANGULAR),
    "hexcycle": (hex_cycle, TilingKind.HEXAGONAL),
    "hexstar": (hex_star, TilingKind.HEXAGONAL),
    "hexpath": (hex_path, TilingKind.HEXAGONAL),
    "path": (path_graph, TilingKind.CUSTOM),
    "cycle": (cycle_graph, TilingKind.CUSTOM),
    "complete": (complete_graph, TilingKind.CUSTOM),
    "petersen": (petersen, TilingKind.CUSTOM),
    "dodecahedron": (dodecahedron, TilingKind.CUSTOM),
}

_SPEC_RE = re.compile(r"^\s*([A-Za-z]+)\s*(?:\(\s*([-\d\s,]*)\s*\))?\s*$")


def patch(spec: str, kind: TilingKind | str | None = None) -> Grid:
    """Build a named patch from a spec string such as ``"squareRect(3,3)"``.

    When ``kind`` is given it must agree with the patch's tiling.
    """
    m = _SPEC_RE.match(spec)
    if not m:
        raise GridError(f"cannot parse patch spec {spec!r}", where=spec)
    name, args = m.group(1).lower(), m.group(2)
    if name not in _PATCHES:
        raise GridError(f"unknown patch {m.group(1)!r}", where=spec)
    builder, patch_kind = _PATCHES[name]
    if kind is not None and TilingKind(kind) is not patch_kind:
        raise GridError(f"patch {m.group(1)} is {patch_kind.value}, not {TilingKind(kind).value}", where=spec)
    ints = [int(a) for a in args.split(",") if a.strip()] if args else []
    try:
        return builder(*ints)
    except TypeError:
        raise GridError(f"wrong number of arguments for {m.group(1)}", where=spec) from None
