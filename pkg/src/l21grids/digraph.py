"""Oriented graphs over grids: distances, dipaths, girth and symmetry."""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .lattice import Grid, GridError, build_custom, dumps

Pair = tuple[int, int]

MAX_AUTOMORPHISM_NODES = 16


class CapacityError(RuntimeError):
    """Instance too large for an exhaustive routine."""


@dataclass(frozen=True)
class OrientedGraph:
    n: int
    arcs: tuple[Pair, ...]
    grid: Grid | None = None

    def __post_init__(self):
        seen = set()
        for u, v in self.arcs:
            if u == v:
                raise GridError(f"self-loop at {u}", where=u)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GridError(f"arc {(u, v)} out of range", where=(u, v))
            if (v, u) in seen:
                raise GridError(f"opposite arcs between {u} and {v}", where=(u, v))
            if (u, v) in seen:
                raise GridError(f"duplicate arc {(u, v)}", where=(u, v))
            seen.add((u, v))
        if self.grid is not None:
            if self.grid.n != self.n:
                raise GridError("arc set and grid disagree on node count")
            if {(min(a), max(a)) for a in self.arcs} != set(self.grid.edges):
                raise GridError("arcs must orient every grid edge exactly once")

    @cached_property
    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        for s in out:
            s.sort()
        return out

    @cached_property
    def predecessors(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            inc[v].append(u)
        for s in inc:
            s.sort()
        return inc

    @property
    def bits(self) -> str:
        """Direction bitstring over the grid's canonical edge order."""
        if self.grid is None:
            raise GridError("orientation bits need an underlying grid")
        arcset = set(self.arcs)
        return "".join("0" if e in arcset else "1" for e in self.grid.edges)

    @property
    def code(self) -> int:
        return int(self.bits, 2) if self.bits else 0

    def underlying(self) -> Grid:
        if self.grid is not None:
            return self.grid
        return build_custom(self.n, [(min(a), max(a)) for a in self.arcs])

    def to_doc(self) -> dict:
        doc = self.underlying().to_doc()
        doc["arcs"] = [list(a) for a in self.arcs]
        return doc

    def to_json(self) -> str:
        return dumps(self.to_doc())


def orient(grid: Grid, directions: Sequence[int] | str | int) -> OrientedGraph:
    """Orient edge ``i`` low->high when bit ``i`` is 0 and high->low when 1.

    ``directions`` may be a bit sequence, a '0'/'1' string, or an int whose
    most significant of ``grid.m`` bits belongs to edge 0.
    """
    m = grid.m
    if isinstance(directions, (int, np.integer)) and not isinstance(directions, bool):
        code = int(directions)
        if not 0 <= code < (1 << m) or (m == 0 and code):
            raise GridError(f"orientation code {code} out of range for {m} edges")
        bits = [(code >> (m - 1 - i)) & 1 for i in range(m)]
    else:
        if isinstance(directions, str):
            if set(directions) - {"0", "1"}:
                raise GridError(f"bitstring may hold only 0/1: {directions!r}")
            bits = [int(ch) for ch in directions]
        else:
            bits = [int(b) for b in directions]
        if len(bits) != m:
            raise GridError(f"need {m} direction bits, got {len(bits)}")
    arcs = tuple((j, i) if b else (i, j) for (i, j), b in zip(grid.edges, bits))
    return OrientedGraph(grid.n, arcs, grid)


def random_orientation(grid: Grid, rng: random.Random) -> OrientedGraph:
    return orient(grid, [rng.getrandbits(1) for _ in range(grid.m)])


def from_doc(doc: dict) -> OrientedGraph:
    from .lattice import grid_from_doc

    grid = grid_from_doc(doc)
    arcs = doc.get("arcs")
    if arcs is None:
        raise GridError("document has no 'arcs' field")
    try:
        arcs_t = tuple((int(u), int(v)) for u, v in arcs)
    except (TypeError, ValueError):
        raise GridError("arcs must be [u, v] pairs") from None
    return OrientedGraph(grid.n, arcs_t, grid)


def reverse(d: OrientedGraph) -> OrientedGraph:
    return OrientedGraph(d.n, tuple((v, u) for u, v in d.arcs), d.grid)


def directed_path(n: int) -> OrientedGraph:
    """0 -> 1 -> ... -> n-1 over a custom path grid."""
    from .lattice import path_graph

    return orient(path_graph(n), "0" * (n - 1))


# -- distances --------------------------------------------------------------

@dataclass(frozen=True)
class ConstraintPairs:
    """Unordered pairs at directed distance 1 (``p1``) and exactly 2 (``p2``)."""

    n: int
    p1: frozenset[Pair]
    p2: frozenset[Pair]

    def neighbours(self) -> tuple[list[list[int]], list[list[int]]]:
        a1: list[list[int]] = [[] for _ in range(self.n)]
        a2: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.p1:
            a1[u].append(v)
            a1[v].append(u)
        for u, v in self.p2:
            a2[u].append(v)
            a2[v].append(u)
        return a1, a2

    def related(self, u: int, v: int) -> bool:
        """True when the pair is within directed distance 2 either way."""
        key = (min(u, v), max(u, v))
        return key in self.p1 or key in self.p2


def constraint_pairs(d: OrientedGraph) -> ConstraintPairs:
    p1 = frozenset((min(u, v), max(u, v)) for u, v in d.arcs)
    p2 = set()
    succ = d.successors
    for u in range(d.n):
        for w in succ[u]:
            for v in succ[w]:
                # u -> w -> u would need opposite arcs
                assert v != u, "closed dipath of length 2"
                key = (min(u, v), max(u, v))
                if key not in p1:
                    p2.add(key)
    return ConstraintPairs(d.n, p1, frozenset(p2))


def undirected_pairs(g: Grid) -> ConstraintPairs:
    """Edges and pairs at undirected distance exactly 2."""
    return edge_pairs(g.n, g.edges)


def edge_pairs(n: int, edges) -> ConstraintPairs:
    adj: list[set[int]] = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    p1 = frozenset((min(e), max(e)) for e in edges)
    p2 = set()
    for w in range(n):
        for a in adj[w]:
            for b in adj[w]:
                if a < b and (a, b) not in p1:
                    p2.add((a, b))
    return ConstraintPairs(n, p1, frozenset(p2))


def distance_matrix(d: OrientedGraph) -> list[list[float]]:
    """All-pairs shortest directed distance; ``math.inf`` if unreachable."""
    out = []
    for s in range(d.n):
        dist = [math.inf] * d.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in d.successors[u]:
                if dist[v] == math.inf:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        out.append(dist)
    return out


# -- metrics ----------------------------------------------------------------

def longest_dipath(d: OrientedGraph) -> tuple[int, list[int]]:
    """Longest simple directed path, as (arc count, node sequence).

    Exhaustive DFS over simple paths; meant for the small graphs used here.
    """
    if d.n == 0:
        return 0, []
    succ = d.successors
    best_len = 0
    best_path = [0]
    path: list[int] = []
    on_path = [False] * d.n
    limit = d.n - 1

    def dfs(u: int) -> bool:
        nonlocal best_len, best_path
        path.append(u)
        on_path[u] = True
        if len(path) - 1 > best_len:
            best_len = len(path) - 1
            best_path = list(path)
        done = best_len == limit
        if not done:
            for v in succ[u]:
                if not on_path[v] and dfs(v):
                    done = True
                    break
        on_path[u] = False
        path.pop()
        return done

    for s in range(d.n):
        if dfs(s):
            break
    return best_len, best_path


def girth(g: Grid) -> float:
    """Shortest cycle length of the underlying graph, ``math.inf`` for forests."""
    adj = g.adjacency
    best = math.inf
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def is_bipartite(g: Grid) -> bool:
    adj = g.adjacency
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    queue.append(v)
                elif side[v] == side[u]:
                    return False
    return True


@dataclass(frozen=True)
class DigraphMetrics:
    longest_dipath: int
    witness_path: tuple[int, ...]
    girth: float
    bipartite: bool


def metrics(d: OrientedGraph) -> DigraphMetrics:
    length, path = longest_dipath(d)
    u = d.underlying()
    return DigraphMetrics(length, tuple(path), girth(u), is_bipartite(u))


# -- symmetry ---------------------------------------------------------------

def automorphisms(g: Grid) -> list[tuple[int, ...]]:
    """All adjacency-preserving permutations ``p`` (node ``i`` maps to ``p[i]``)."""
    if g.n > MAX_AUTOMORPHISM_NODES:
        raise CapacityError(f"automorphism search capped at {MAX_AUTOMORPHISM_NODES} nodes, got {g.n}")
    adj = g.adjacency
    adjset = [set(a) for a in adj]
    deg = [len(a) for a in adj]
    # invariant refinement: degree plus sorted neighbour degrees
    sig = [(deg[v], tuple(sorted(deg[u] for u in adj[v]))) for v in range(g.n)]
    # map nodes in BFS order so each new node has an already-mapped neighbour
    order: list[int] = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
    image = [-1] * g.n
    used = [False] * g.n
    found: list[tuple[int, ...]] = []

    def extend(k: int) -> None:
        if k == g.n:
            found.append(tuple(image))
            return
        v = order[k]
        mapped_nbrs = [u for u in adj[v] if image[u] >= 0]
        candidates = adj[image[mapped_nbrs[0]]] if mapped_nbrs else range(g.n)
        for c in candidates:
            if used[c] or sig[c] != sig[v]:
                continue
            ok = True
            for u in range(g.n):
                iu = image[u]
                if iu >= 0 and ((u in adjset[v]) != (iu in adjset[c])):
                    ok = False
                    break
            if ok:
                image[v] = c
                used[c] = True
                extend(k + 1)
                image[v] = -1
                used[c] = False

    extend(0)
    found.sort()
    return found


@dataclass(frozen=True)
class EdgeAction:
    """How a node permutation moves edges: edge ``e`` lands on ``target[e]``,
    with its low->high direction flipped when ``flip[e]`` is set."""

    target: tuple[int, ...]
    flip: tuple[int, ...]


def edge_actions(g: Grid, group: Sequence[Sequence[int]]) -> list[EdgeAction]:
    index = {e: i for i, e in enumerate(g.edges)}
    out = []
    for p in group:
        target, flip = [], []
        for i, j in g.edges:
            a, b = p[i], p[j]
            key = (min(a, b), max(a, b))
            if key not in index:
                raise GridError(f"permutation {tuple(p)} is not an automorphism")
            target.append(index[key])
            flip.append(1 if a > b else 0)
        out.append(EdgeAction(tuple(target), tuple(flip)))
    return out


def _apply(action: EdgeAction, bits: str) -> str:
    out = ["0"] * len(bits)
    for e, b in enumerate(bits):
        out[action.target[e]] = "1" if (b == "1") ^ action.flip[e] else "0"
    return "".join(out)


def orbit(d: OrientedGraph, group: Sequence[Sequence[int]], include_reversal: bool) -> set[str]:
    bits = d.bits
    images = set()
    for act in edge_actions(d.grid, group):
        img = _apply(act, bits)
        images.add(img)
        if include_reversal:
            images.add("".join("1" if ch == "0" else "0" for ch in img))
    return images


def canonical_form(d: OrientedGraph, group: Sequence[Sequence[int]], include_reversal: bool = True) -> str:
    """Lexicographically smallest direction bitstring in the orbit of ``d``."""
    if d.grid is None:
        raise GridError("canonical form needs an underlying grid")
    return min(orbit(d, group, include_reversal))


def canonical_codes(g: Grid, group: Sequence[Sequence[int]], include_reversal: bool = True) -> np.ndarray:
    """Canonical code for every one of the ``2**m`` orientations at once.

    Entry ``c`` is the smallest code in the orbit of orientation code ``c``
    (edge 0 is the most significant bit, so integer order is bitstring order).
    """
    m = g.m
    if m > 24:
        raise CapacityError(f"vectorised orbit computation capped at 24 edges, got {m}")
    codes = np.arange(1 << m, dtype=np.int64)
    bits = [(codes >> (m - 1 - e)) & 1 for e in range(m)]
    best = None
    full = (1 << m) - 1
    for act in edge_actions(g, group):
        img = np.zeros_like(codes)
        for e in range(m):
            b = bits[e] ^ act.flip[e] if act.flip[e] else bits[e]
            img |= b << (m - 1 - act.target[e])
        best = img if best is None else np.minimum(best, img)
        if include_reversal:
            best = np.minimum(best, img ^ full)
    return best
