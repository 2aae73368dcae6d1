import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l21grids import lattice as L
from l21grids.digraph import (
    CapacityError,
    OrientedGraph,
    constraint_pairs,
    directed_path,
    longest_dipath,
    orient,
    reverse,
)
from l21grids.lattice import GridError
from l21grids.solver import (
    BudgetExceeded,
    Labeling,
    ViolationKind,
    brute_force_lambda,
    clique_bound,
    feasible,
    lower_bound,
    solve_lambda,
    solve_lambda_undirected,
    upper_bound,
    verify,
)

import oracles
from conftest import SMALL_PATCHES

SINGLE = OrientedGraph(1, ())
ARC = directed_path(2)
TRIANGLE = OrientedGraph(3, ((0, 1), (1, 2), (2, 0)))


def both_ways(edges):
    return [(u, v) for u, v in edges] + [(v, u) for u, v in edges]


# -- verify -----------------------------------------------------------------

def test_verify_p4_optimal_labeling():
    assert verify(directed_path(4), Labeling((1, 3, 0, 2))) == []


@pytest.mark.parametrize("closing", [(3, 0), (0, 3)])
def test_verify_square_closes_the_path(closing):
    # a -> b -> c -> d around a square; a and d become adjacent
    d = OrientedGraph(4, ((0, 1), (1, 2), (2, 3), closing))
    bad = verify(d, (1, 3, 0, 2))
    assert [(v.pair, v.kind) for v in bad] == [((0, 3), ViolationKind.ADJACENT_TOO_CLOSE)]
    assert bad[0].colors == (1, 2)


def test_verify_single_node_and_errors():
    assert verify(SINGLE, (0,)) == []
    with pytest.raises(GridError):
        verify(directed_path(3), (0, 2))
    with pytest.raises(ValueError):
        Labeling((0, -1))


def test_verify_reports_distance_two():
    bad = verify(directed_path(3), (0, 2, 0))
    assert [(v.pair, v.kind) for v in bad] == [((0, 2), ViolationKind.DISTANCE2_EQUAL)]


# -- bounds -----------------------------------------------------------------

@pytest.mark.parametrize("d,bound", [
    (SINGLE, 0), (ARC, 2), (directed_path(3), 3), (directed_path(4), 3), (directed_path(5), 4),
])
def test_lower_bound_examples(d, bound):
    assert lower_bound(d) == bound


@pytest.mark.parametrize("spec,bound", [("squareRect(3,3)", 6), ("hexCycle(2)", 5), ("triWheel", 8)])
def test_upper_bound_lattices(spec, bound):
    g = L.patch(spec)
    rng = random.Random(0)
    for _ in range(5):
        assert upper_bound(orient(g, rng.getrandbits(g.m))) == bound


def test_upper_bound_custom_uses_undirected():
    assert upper_bound(orient(L.path_graph(4), "000")) == 3
    assert upper_bound(orient(L.cycle_graph(5), "00000")) == 4


def test_clique_bound_wheel_lemma():
    # a qualifying wheel: centre plus a rim in mutual distance <= 2
    d = orient(L.tri_wheel(), "000000001011")
    pairs = constraint_pairs(d)
    assert all(pairs.related(a, b) for a, b in itertools.combinations(range(6), 2))
    assert clique_bound(pairs) == 7


# -- exact solver -----------------------------------------------------------

CYCLIC_C4 = OrientedGraph(4, ((0, 1), (1, 2), (2, 3), (3, 0)))


@pytest.mark.parametrize("d,lam", [
    (directed_path(4), 3), (TRIANGLE, 4), (SINGLE, 0), (CYCLIC_C4, 4), (ARC, 2),
])
def test_solve_examples(d, lam):
    res = solve_lambda(d)
    assert res.lam == lam
    assert verify(d, res.witness) == []
    assert res.witness.span == lam
    assert res.lower <= res.lam <= res.upper


def test_cyclic_c4_by_exhaustion():
    assert brute_force_lambda(CYCLIC_C4, 4) == 4
    assert not any(oracles.is_labeling(f, CYCLIC_C4.arcs) for f in itertools.product(range(4), repeat=4))


def test_no_arcs_isolated_nodes():
    assert solve_lambda(OrientedGraph(3, ())).lam == 0


def test_undirected_examples():
    assert solve_lambda_undirected(L.path_graph(4)).lam == 3
    c6 = L.hex_cycle(1)
    assert oracles.naive_undirected_lambda(c6.n, c6.edges) == 4
    assert solve_lambda_undirected(c6).lam == 4
    sq = L.square_rect(3, 3)
    assert oracles.naive_lambda(sq.n, both_ways(sq.edges)) == 6
    assert solve_lambda_undirected(sq).lam == 6


@pytest.mark.parametrize("spec", ["triWheel", "triDiamond", "hexCycle(2)", "squareRect(3,2)", "petersen", "cycle(5)"])
def test_undirected_matches_naive(spec):
    g = L.patch(spec)
    assert solve_lambda_undirected(g).lam == oracles.naive_lambda(g.n, both_ways(g.edges))


def test_budget_exhaustion():
    d = orient(L.square_rect(3, 3), "001011110010")
    with pytest.raises(BudgetExceeded) as exc:
        solve_lambda(d, budget=5)
    assert exc.value.lower <= 6 <= exc.value.upper
    assert solve_lambda(d, budget=10**6).lam == 6


def test_deterministic_witness():
    g = L.tri_wheel()
    for code in (0, 1234, 4095):
        d = orient(g, code)
        assert solve_lambda(d).witness == solve_lambda(d).witness


@pytest.mark.parametrize("make", [L.tri_diamond, lambda: L.square_rect(2, 2), L.tri_flag])
def test_witness_is_lexicographically_smallest(make):
    from l21grids.solver import _Engine

    g = make()
    for code in range(1 << g.m):
        d = orient(g, code)
        res = solve_lambda(d)
        order = _Engine(constraint_pairs(d), None).order
        valid = [f for f in itertools.product(range(res.lam + 1), repeat=d.n) if oracles.is_labeling(f, d.arcs)]
        best = min(valid, key=lambda f: [f[v] for v in order])
        assert res.witness.colors == best


def test_feasible():
    assert feasible(directed_path(4), 2) is None
    assert feasible(directed_path(4), 3) is not None
    assert feasible(directed_path(4), -1) is None


# -- brute-force oracle -----------------------------------------------------

def test_brute_force_examples():
    assert brute_force_lambda(directed_path(3), 8) == 3
    assert brute_force_lambda(ARC, 8) == 2
    assert brute_force_lambda(directed_path(3), 2) is None
    with pytest.raises(CapacityError):
        brute_force_lambda(orient(L.square_rect(3, 3), 0), 8)


def test_brute_force_matches_naive():
    g = L.tri_diamond()
    for code in range(1 << g.m):
        d = orient(g, code)
        assert brute_force_lambda(d, 8) == oracles.naive_lambda(d.n, d.arcs)


# -- properties -------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(SMALL_PATCHES))
def test_minimality_exhaustive(name):
    g = SMALL_PATCHES[name]()
    for code in range(1 << g.m):
        d = orient(g, code)
        res = solve_lambda(d)
        assert res.lam == brute_force_lambda(d, 10)
        assert lower_bound(d) <= res.lam <= upper_bound(d)


oriented_patches = st.sampled_from([
    L.tri_wheel(), L.square_rect(3, 3), L.hex_cycle(2), L.tri_wheel_plus(2), L.petersen(), L.tri_rows(3, 3, 3),
])


@settings(max_examples=100)
@given(oriented_patches, st.randoms(use_true_random=False))
def test_soundness_and_bounds(g, rnd):
    d = orient(g, [rnd.getrandbits(1) for _ in range(g.m)])
    res = solve_lambda(d)
    assert verify(d, res.witness) == []
    assert res.witness.span == res.lam
    assert lower_bound(d) <= res.lam <= upper_bound(d)
    assert feasible(d, res.lam - 1) is None


@settings(max_examples=60)
@given(st.sampled_from([L.tri_diamond(), L.square_rect(3, 2), L.hex_cycle(1), L.tri_flag()]),
       st.randoms(use_true_random=False))
def test_lower_bound_sound_against_oracle(g, rnd):
    d = orient(g, [rnd.getrandbits(1) for _ in range(g.m)])
    assert lower_bound(d) <= oracles.naive_lambda(d.n, d.arcs)


def _random_subdigraph(d: OrientedGraph, rng: random.Random) -> OrientedGraph:
    keep = sorted(rng.sample(range(d.n), rng.randint(1, d.n)))
    index = {v: i for i, v in enumerate(keep)}
    arcs = [(index[u], index[v]) for u, v in d.arcs if u in index and v in index and rng.random() < 0.8]
    return OrientedGraph(len(keep), tuple(arcs))


def test_monotonicity_random_pairs():
    rng = random.Random(11)
    grids = [L.tri_wheel(), L.square_rect(3, 3), L.hex_cycle(2), L.tri_diamond()]
    for _ in range(200):
        g = rng.choice(grids)
        d = orient(g, rng.getrandbits(g.m))
        h = _random_subdigraph(d, rng)
        assert solve_lambda(h).lam <= solve_lambda(d).lam


def test_reversal_invariance_wheel(wheel):
    for code in range(1 << wheel.m):
        d = orient(wheel, code)
        assert solve_lambda(reverse(d)).lam == solve_lambda(d).lam


@pytest.mark.parametrize("make", [lambda: L.square_rect(2, 2), lambda: L.hex_cycle(1)])
def test_bipartite_theorems(make):
    g = make()
    for code in range(1 << g.m):
        d = orient(g, code)
        length, _ = longest_dipath(d)
        lam = solve_lambda(d).lam
        if length == 2:
            assert lam == 3
        if length == 3:
            assert lam in (3, 4)


@pytest.mark.parametrize("make", [L.tri_triangle, L.tri_wheel])
def test_non_bipartite_dipath_two(make):
    g = make()
    for code in range(1 << g.m):
        d = orient(g, code)
        if longest_dipath(d)[0] == 2:
            assert solve_lambda(d).lam == 4


def random_tree(n: int, rng: random.Random) -> OrientedGraph:
    arcs = []
    for v in range(1, n):
        u = rng.randrange(v)
        arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return OrientedGraph(n, tuple(arcs))


def test_ditree_bound():
    rng = random.Random(5)
    for _ in range(500):
        t = random_tree(rng.randint(1, 10), rng)
        assert solve_lambda(t).lam <= 4
