import pytest

from bipramsey.bigraph import BLUE, RED, color_edge_count, min_degree, serialize
from bipramsey.errors import PreconditionError
from bipramsey.families import (FamilySpec, gen_cycle_extremal, gen_large_deg, gen_medium_deg,
                                gen_small_deg, valid_specs)
from bipramsey.routes import longest_mono_cycle_exact, longest_mono_path_exact

from conftest import brute_longest_cycle, brute_longest_path

# Oracle values frozen from brute_longest_path / brute_longest_cycle (plain DFS).
FROZEN = {
    ("large-deg", 2, 0): (2, 0),
    ("large-deg", 4, 0): (4, 4),
    ("large-deg", 5, 0): (6, 6),
    ("medium-deg", 4, 0): (4, 4),
    ("medium-deg", 8, 0): (8, 8),
    ("small-deg", 3, 1): (3, 0),
    ("small-deg", 6, 2): (3, 0),
    ("small-deg", 6, 0): (0, 0),
    ("cycle-extremal", 3, 0): (5, 0),
    ("cycle-extremal", 5, 0): (9, 4),
}


def _oracle(g):
    c = longest_mono_cycle_exact(g)
    return longest_mono_path_exact(g).order, (c.length if c else 0)


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_against_brute_force(key):
    g, _ = FamilySpec(*key).generate()
    assert (brute_longest_path(g), brute_longest_cycle(g)) == FROZEN[key]
    assert _oracle(g) == FROZEN[key]


def test_large_deg_examples():
    g, c = gen_large_deg(5)
    assert (c.min_degree, c.longest_mono_path, c.longest_mono_cycle) == (5, 6, 6)
    assert min_degree(g) == 5 and g.num_edges() == 25
    assert gen_large_deg(2)[1].longest_mono_cycle == 0
    assert gen_large_deg(4)[1].to_dict() == {"min_degree": 4, "longest_mono_path": 4,
                                              "longest_mono_cycle": 4}


def test_large_deg_blocks():
    g, _ = gen_large_deg(7)
    x1, y1, y2 = range(4), range(4), range(4, 7)
    assert color_edge_count(g, x1, y1, RED) == 0
    assert color_edge_count(g, x1, y2, BLUE) == 0


def test_medium_deg_examples():
    g, c = gen_medium_deg(8, 0)
    assert (c.min_degree, c.longest_mono_cycle) == (6, 8)
    g, c = gen_medium_deg(12, 1)
    assert min_degree(g) == 8 and c.longest_mono_cycle == 8
    assert _oracle(g)[1] == 8
    with pytest.raises(PreconditionError):
        gen_medium_deg(8, 1)
    with pytest.raises(PreconditionError):
        gen_medium_deg(10, 0)


def test_medium_deg_path_exceeds_stated_order():
    # the blue block [X1 u X2, Y1 u Y2] is unbalanced when k >= 1, so a path
    # can start and end on the larger side: one vertex beyond n - 4k
    g, c = gen_medium_deg(12, 1)
    assert c.longest_mono_path == 8
    assert _oracle(g)[0] == 9


def test_small_deg_examples():
    g, c = gen_small_deg(6, 2)
    assert min_degree(g) == 2 and c.longest_mono_path == 2
    g, c = gen_small_deg(9, 3)
    assert min_degree(g) == 3 and c.longest_mono_path == 4
    g, c = gen_small_deg(6, 0)
    assert g.num_edges() == 0 and c.longest_mono_path == 0
    with pytest.raises(PreconditionError):
        gen_small_deg(6, 3)


@pytest.mark.parametrize("n,k", [(3, 1), (6, 2), (9, 3), (12, 4), (7, 2)])
def test_small_deg_true_path_order(n, k):
    # a red star from X1 into the n-k vertices of Y3 gives 2*ceil(k/2)+1 vertices
    g, _ = gen_small_deg(n, k)
    assert _oracle(g)[0] == 2 * (-(-k // 2)) + 1


def test_cycle_extremal_examples():
    g, c = gen_cycle_extremal(5)
    assert c.longest_mono_cycle == 4 and c.longest_mono_path >= 6
    assert c.longest_mono_path == brute_longest_path(g)
    with pytest.raises(PreconditionError, match="n must be odd"):
        gen_cycle_extremal(4)


def test_min_degree_claims_hold_on_grid():
    for spec in valid_specs(12):
        g, c = spec.generate()
        assert min_degree(g) == c.min_degree, spec


def test_deterministic():
    for spec in valid_specs(8):
        assert serialize(spec.generate()[0]) == serialize(spec.generate()[0])


def test_unknown_family():
    with pytest.raises(PreconditionError):
        FamilySpec("huge-deg", 4)
