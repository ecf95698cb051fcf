import itertools
import random

import pytest
from hypothesis import given, strategies as st

from bipramsey.bigraph import BLUE, RED, X, Y, build, complete
from bipramsey.errors import PreconditionError, SearchCapExceeded
from bipramsey.families import gen_cycle_extremal, gen_large_deg, gen_small_deg
from bipramsey.routes import (CycleResult, PathResult, SimpleGraphView, berge_check,
                              erdos_gallai_cycle, ham_path_between, hamiltonian_path,
                              longest_mono_cycle_exact, longest_mono_path_exact)

from conftest import bipartite_cycle, brute_longest_cycle, brute_longest_path


@st.composite
def small_graphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    cells = draw(st.lists(st.integers(0, 3), min_size=n * n, max_size=n * n))
    red = [(i // n, i % n) for i, c in enumerate(cells) if c & 1]
    blue = [(i // n, i % n) for i, c in enumerate(cells) if c & 2]
    return build(n, red, blue)


def test_path_examples():
    assert longest_mono_path_exact(complete(2, RED)).order == 4
    g, _ = gen_small_deg(6, 2)
    assert longest_mono_path_exact(g).order == 3  # stated order is 2; see test_families
    g, _ = gen_cycle_extremal(5)
    assert longest_mono_path_exact(g).order == 9


def test_cycle_examples():
    assert longest_mono_cycle_exact(gen_cycle_extremal(5)[0]).length == 4
    assert longest_mono_cycle_exact(gen_large_deg(5)[0]).length == 6
    assert longest_mono_cycle_exact(build(3)) is None
    assert longest_mono_path_exact(build(3)).order == 0


def test_cap():
    g, _ = gen_large_deg(13)
    with pytest.raises(SearchCapExceeded):
        longest_mono_path_exact(g)
    assert longest_mono_path_exact(g, cap=13).order == 14


def test_state_budget():
    rnd = random.Random(3)
    n = 9
    g = build(n, [(x, y) for x in range(n) for y in range(n) if rnd.random() < 0.5])
    with pytest.raises(SearchCapExceeded):
        longest_mono_path_exact(g, max_states=5)


@given(small_graphs())
def test_exact_matches_brute_force(g):
    p = longest_mono_path_exact(g)
    c = longest_mono_cycle_exact(g)
    assert p.order == brute_longest_path(g)
    assert (c.length if c else 0) == brute_longest_cycle(g)
    if p.order:
        assert p.is_valid(g)
    if c:
        assert c.is_valid(g)
        assert c.length <= p.order


def test_results_validate_themselves():
    g = bipartite_cycle(3)
    assert PathResult(RED, (X(0), Y(0), X(1))).is_valid(g)
    assert "not blue" in PathResult(BLUE, (X(0), Y(0))).problem(g)
    assert "repeated" in PathResult(RED, (X(0), Y(0), X(0))).problem(g)
    assert "same side" in PathResult(RED, (X(0), X(1))).problem(g)
    assert CycleResult(RED, (X(0), Y(0), X(1), Y(1), X(2), Y(2))).is_valid(g)
    assert not CycleResult(RED, (X(0), Y(0), X(1), Y(1))).is_valid(g)


# -- Erdős–Gallai ----------------------------------------------------------

def test_eg_k4():
    k4 = SimpleGraphView.from_edges(4, itertools.combinations(range(4), 2))
    cyc = erdos_gallai_cycle(k4, 3)
    assert len(cyc) == 4 and k4.is_cycle(cyc)


def test_eg_c5():
    c5 = SimpleGraphView.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    cyc = erdos_gallai_cycle(c5, 2)
    assert len(cyc) >= 3 and c5.is_cycle(cyc)


def test_eg_boundary():
    k4 = SimpleGraphView.from_edges(4, itertools.combinations(range(4), 2))
    with pytest.raises(PreconditionError):
        erdos_gallai_cycle(k4, 4)
    with pytest.raises(PreconditionError):
        erdos_gallai_cycle(k4, 1)


def test_eg_exact_fallback():
    # two triangles sharing a vertex plus a long pendant path: the greedy pass
    # can wander into the path, the exhaustive pass must still succeed
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
    h = SimpleGraphView.from_edges(5, edges)
    cyc = erdos_gallai_cycle(h, 2)
    assert len(cyc) >= 3 and h.is_cycle(cyc)


# -- Berge / Hamiltonian paths -------------------------------------------

def _complete_bip(m):
    return SimpleGraphView.bipartite(m, [(i, j) for i in range(m) for j in range(m)])


def test_berge_examples():
    assert berge_check(_complete_bip(2))
    assert berge_check(_complete_bip(3))
    minus_pm = SimpleGraphView.bipartite(3, [(i, j) for i in range(3) for j in range(3) if i != j])
    assert not berge_check(minus_pm)


def test_berge_errors():
    with pytest.raises(PreconditionError):
        berge_check(_complete_bip(1))
    with pytest.raises(PreconditionError):
        berge_check(SimpleGraphView.from_edges(4, [(0, 1)], parts=(0b1, 0b1110)))


def test_ham_path_examples():
    k22 = _complete_bip(2)
    p = ham_path_between(k22, 0, 3)
    assert len(p) == 4 and p[0] == 0 and p[-1] == 3
    # 6-cycle x0 y0 x1 y1 x2 y2 as a bipartite view
    c6 = SimpleGraphView.bipartite(3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)])
    assert ham_path_between(c6, 0, 5) == [0, 3, 1, 4, 2, 5]
    two_edges = SimpleGraphView.bipartite(2, [(0, 0), (1, 1)])
    assert ham_path_between(two_edges, 0, 3) is None
    with pytest.raises(PreconditionError):
        ham_path_between(k22, 0, 1)


def test_ham_path_labels_from_color_view():
    g, _ = gen_large_deg(6)
    h = SimpleGraphView.from_color(g, BLUE, 0b111, 0b111)
    p = ham_path_between(h, X(0), Y(2))
    assert p[0] == X(0) and p[-1] == Y(2) and len(p) == 6
    assert PathResult(BLUE, tuple(p)).is_valid(g)


def _brute_ham(adj, n, s, t):
    for perm in itertools.permutations([v for v in range(n) if v not in (s, t)]):
        seq = [s, *perm, t]
        if all(adj[a] >> b & 1 for a, b in zip(seq, seq[1:])):
            return True
    return False


def test_hamiltonian_path_matches_permutation_oracle():
    rnd = random.Random(11)
    for _ in range(150):
        m = rnd.randint(2, 4)
        h = SimpleGraphView.bipartite(m, [(i, j) for i in range(m) for j in range(m) if rnd.random() < 0.6])
        for s in range(m):
            for t in range(m, 2 * m):
                got = hamiltonian_path(h.adj, (1 << 2 * m) - 1, s, t)
                assert (got is not None) == _brute_ham(h.adj, 2 * m, s, t)
                if got:
                    assert sorted(got) == list(range(2 * m))
