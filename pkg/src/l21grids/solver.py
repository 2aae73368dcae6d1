"""Exact oriented L(2,1)-labeling number by iterative deepening on the span.

For each candidate span ``sigma`` (from the lower bound up) a backtracking
search with forward checking decides whether colours ``0..sigma`` suffice.
Variables are visited in a fixed order (decreasing ``2*|P1| + |P2|``
incidence, then index) and values ascend, so the first labeling found is
the lexicographically smallest one in that order.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .digraph import (
    CapacityError,
    ConstraintPairs,
    OrientedGraph,
    constraint_pairs,
    edge_pairs,
    longest_dipath,
    undirected_pairs,
)
from .lattice import Grid, GridError

BRUTE_FORCE_LIMIT = 10**7


class BudgetExceeded(RuntimeError):
    """Node-expansion budget ran out; ``lower``/``upper`` bracket the answer."""

    def __init__(self, lower: int, upper: int, expanded: int):
        super().__init__(f"budget exhausted after {expanded} expansions; lambda in [{lower}, {upper}]")
        self.lower = lower
        self.upper = upper
        self.expanded = expanded


@dataclass(frozen=True)
class Labeling:
    colors: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.colors):
            raise ValueError("colours must be nonnegative")

    @property
    def span(self) -> int:
        return max(self.colors, default=0)


class ViolationKind(str, Enum):
    ADJACENT_TOO_CLOSE = "AdjacentTooClose"
    DISTANCE2_EQUAL = "Distance2Equal"


@dataclass(frozen=True)
class Violation:
    pair: tuple[int, int]
    kind: ViolationKind
    colors: tuple[int, int]


@dataclass
class SolveResult:
    lam: int
    witness: Labeling
    lower: int
    upper: int
    nodes_expanded: int
    elapsed: float = field(default=0.0, compare=False)

    def to_doc(self) -> dict:
        return {
            "lambda": self.lam,
            "labels": list(self.witness.colors),
            "nodesExpanded": self.nodes_expanded,
            "lower": self.lower,
            "upper": self.upper,
        }


def verify(d: OrientedGraph, f: Labeling | Sequence[int], pairs: ConstraintPairs | None = None) -> list[Violation]:
    colors = tuple(f.colors if isinstance(f, Labeling) else f)
    if len(colors) != d.n:
        raise GridError(f"labeling has {len(colors)} colours for {d.n} nodes")
    pairs = pairs or constraint_pairs(d)
    bad = []
    for u, v in sorted(pairs.p1):
        if abs(colors[u] - colors[v]) < 2:
            bad.append(Violation((u, v), ViolationKind.ADJACENT_TOO_CLOSE, (colors[u], colors[v])))
    for u, v in sorted(pairs.p2):
        if colors[u] == colors[v]:
            bad.append(Violation((u, v), ViolationKind.DISTANCE2_EQUAL, (colors[u], colors[v])))
    return bad


# -- bounds -----------------------------------------------------------------

def dipath_bound(length: int) -> int:
    """Span forced by a dipath of ``length`` arcs alone."""
    if length <= 0:
        return 0
    if length == 1:
        return 2
    if length <= 3:
        return 3
    return 4


def _has_hamiltonian_path(nodes: Sequence[int], allowed: set[tuple[int, int]]) -> bool:
    k = len(nodes)
    if k <= 1:
        return True
    ok = [[(min(a, b), max(a, b)) in allowed for b in nodes] for a in nodes]
    # reach[mask] = bitset of end nodes of paths covering mask
    reach = [0] * (1 << k)
    for i in range(k):
        reach[1 << i] = 1 << i
    for mask in range(1, 1 << k):
        ends = reach[mask]
        if not ends:
            continue
        for i in range(k):
            if ends >> i & 1:
                for j in range(k):
                    if not mask >> j & 1 and ok[i][j]:
                        reach[mask | 1 << j] |= 1 << j
    return reach[(1 << k) - 1] != 0


def clique_bound(pairs: ConstraintPairs) -> int:
    """Span forced by a greedily grown set of mutually constrained nodes.

    ``k`` such nodes need ``k`` distinct colours, so span >= k-1. Span k-1
    uses every colour 0..k-1; sorted by colour, consecutive nodes then differ
    by exactly 1 and must not be a P1 pair. So if the P2 pairs inside the set
    admit no Hamiltonian path, span >= k.
    """
    if pairs.n == 0:
        return 0
    a1, a2 = pairs.neighbours()
    related = [set(x) | set(y) for x, y in zip(a1, a2)]
    best = 0
    for v in range(pairs.n):
        clique = [v]
        cand = sorted(related[v], key=lambda u: (-len(related[u]), u))
        for u in cand:
            if all(u in related[w] for w in clique):
                clique.append(u)
        k = len(clique)
        if k <= best:
            continue
        bound = k - 1
        if k <= 12 and not _has_hamiltonian_path(clique, set(pairs.p2)):
            bound = k
        best = max(best, bound)
    return best


def lower_bound(d: OrientedGraph, pairs: ConstraintPairs | None = None) -> int:
    if not d.arcs:
        return 0
    pairs = pairs or constraint_pairs(d)
    length, _ = longest_dipath(d)
    return max(dipath_bound(length), clique_bound(pairs))


def trivial_upper(n: int) -> int:
    # 0, 2, 4, ... is always valid
    return 2 * (n - 1) if n > 0 else 0


def upper_bound(d: OrientedGraph) -> int:
    """Lattice patches: degree + 2 of the tiling. Other small graphs: the
    undirected number of the underlying graph. Otherwise 2(n-1)."""
    if not d.arcs:
        return 0
    g = d.grid
    if g is not None and g.kind.degree is not None:
        return g.kind.degree + 2
    if d.n <= 10:
        pairs = edge_pairs(d.n, [(min(a), max(a)) for a in d.arcs])
        return solve_pairs(pairs, _undirected_lower(pairs), trivial_upper(d.n)).lam
    return trivial_upper(d.n)


# -- search -----------------------------------------------------------------

class _Engine:
    def __init__(self, pairs: ConstraintPairs, budget: int | None):
        self.n = pairs.n
        a1, a2 = pairs.neighbours()
        weight = [2 * len(a1[v]) + len(a2[v]) for v in range(self.n)]
        self.order = sorted(range(self.n), key=lambda v: (-weight[v], v))
        self.a1 = a1
        self.a2 = a2
        self.budget = budget
        self.expanded = 0

    def feasible(self, sigma: int) -> tuple[int, ...] | None:
        n = self.n
        if n == 0:
            return ()
        full = (1 << (sigma + 1)) - 1
        domains = [full] * n
        colors = [-1] * n
        order, a1, a2 = self.order, self.a1, self.a2
        # colour reversal f -> sigma - f maps solutions to solutions, so the
        # first variable can stay in the lower half without losing the
        # lexicographically smallest labeling
        half = (1 << (sigma // 2 + 1)) - 1

        def search(k: int) -> bool:
            if k == n:
                return True
            v = order[k]
            dom = domains[v] & half if k == 0 else domains[v]
            while dom:
                low = dom & -dom
                c = low.bit_length() - 1
                dom ^= low
                self.expanded += 1
                if self.budget is not None and self.expanded > self.budget:
                    raise _OutOfBudget
                near = (7 << c >> 1) & full
                saved = []
                ok = True
                for u in a1[v]:
                    if colors[u] < 0:
                        old = domains[u]
                        new = old & ~near
                        if new != old:
                            saved.append((u, old))
                            domains[u] = new
                            if not new:
                                ok = False
                                break
                if ok:
                    for u in a2[v]:
                        if colors[u] < 0:
                            old = domains[u]
                            new = old & ~low
                            if new != old:
                                saved.append((u, old))
                                domains[u] = new
                                if not new:
                                    ok = False
                                    break
                if ok:
                    colors[v] = c
                    if search(k + 1):
                        return True
                    colors[v] = -1
                for u, old in reversed(saved):
                    domains[u] = old
            return False

        return tuple(colors) if search(0) else None


class _OutOfBudget(Exception):
    pass


def solve_pairs(pairs: ConstraintPairs, lower: int, upper: int, budget: int | None = None) -> SolveResult:
    """Smallest feasible span at or above ``lower`` for the given constraints."""
    start = time.perf_counter()
    engine = _Engine(pairs, budget)
    top = max(upper, trivial_upper(pairs.n))
    sigma = lower
    while sigma <= top:
        try:
            colors = engine.feasible(sigma)
        except _OutOfBudget:
            raise BudgetExceeded(sigma, upper, engine.expanded) from None
        if colors is not None:
            return SolveResult(sigma, Labeling(colors), lower, max(upper, sigma),
                               engine.expanded, time.perf_counter() - start)
        sigma += 1
    raise AssertionError("no labeling within the trivial bound")  # unreachable


def feasible(d: OrientedGraph, sigma: int, pairs: ConstraintPairs | None = None) -> tuple[int, ...] | None:
    """A labeling with span at most ``sigma``, or None."""
    if sigma < 0:
        return None
    return _Engine(pairs or constraint_pairs(d), None).feasible(sigma)


def solve_lambda(d: OrientedGraph, budget: int | None = None) -> SolveResult:
    pairs = constraint_pairs(d)
    return solve_pairs(pairs, lower_bound(d, pairs), upper_bound(d), budget)


def _undirected_lower(pairs: ConstraintPairs) -> int:
    if not pairs.p1:
        return 0
    a1, _ = pairs.neighbours()
    return max(max(len(a) for a in a1) + 1, clique_bound(pairs))


def solve_lambda_undirected(g: Grid, budget: int | None = None) -> SolveResult:
    pairs = undirected_pairs(g)
    upper = trivial_upper(g.n)
    if g.kind.degree is not None:
        upper = min(upper, g.kind.degree + 2)
    return solve_pairs(pairs, _undirected_lower(pairs), upper, budget)


# -- oracle -----------------------------------------------------------------

def brute_force_lambda(d: OrientedGraph, sigma_max: int) -> int | None:
    """Smallest span <= ``sigma_max`` by trying every colouring; None if none.

    Checks the definition directly (arcs and two-arc walks), independent of
    :func:`constraint_pairs`.
    """
    n = d.n
    if (sigma_max + 1) ** n > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"{sigma_max + 1}^{n} labelings exceed the brute-force limit")
    if n == 0:
        return 0
    arcs = list(d.arcs)
    twos = [(u, v) for u, w in arcs for w2, v in arcs if w == w2]
    for sigma in range(sigma_max + 1):
        size = (sigma + 1) ** n
        grid = np.stack(np.unravel_index(np.arange(size), (sigma + 1,) * n), axis=1)
        ok = np.ones(len(grid), dtype=bool)
        for u, v in arcs:
            ok &= np.abs(grid[:, u] - grid[:, v]) >= 2
        for u, v in twos:
            ok &= grid[:, u] != grid[:, v]
        if ok.any():
            return sigma
    return None
