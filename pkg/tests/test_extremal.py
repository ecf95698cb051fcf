import random
from fractions import Fraction as F

import pytest

from bipramsey.bigraph import BLUE, RED, Side, X, Y, build, complete, full_mask, mask_of
from bipramsey.errors import BelowRegimeError, PreconditionError
from bipramsey.extremal import (BiConnectedPair, RouteParams, big_part_prop, extract_ham_path,
                                extremal_route, find_witness, long_path_prop, separator_partition,
                                verify_witness, witness_eta)
from bipramsey.families import gen_large_deg
from bipramsey.harness import check_certificate
from bipramsey.routes import longest_mono_cycle_exact
from bipramsey.structure import ExtremalWitness

Q = F(1, 4)


def blocks(n, spec):
    red, blue = [], []
    for xs, ys, c in spec:
        for x in xs:
            for y in ys:
                (red if c == "R" else blue).append((x, y))
    return build(n, red, blue)


def two_block(n, a, b=None, extra=()):
    """Blue [X1,Y1] and [X2,Y2], red across; |X1| = a, |Y1| = b."""
    b = n // 2 if b is None else b
    X1, X2, Y1, Y2 = range(a), range(a, n), range(b), range(b, n)
    return blocks(n, [(X1, Y1, "B"), (X1, Y2, "R"), (X2, Y1, "R"), (X2, Y2, "B"), *extra])


def canonical(n, a=None, b=None, eta=0):
    a = -(-n // 2) if a is None else a
    b = -(-n // 2) if b is None else b
    return ExtremalWitness(Side.X, full_mask(a), full_mask(b), full_mask(n) & ~full_mask(b), F(eta))


# -- witnesses -------------------------------------------------------------

def test_verify_witness_examples():
    g, _ = gen_large_deg(6)
    w = canonical(6)
    assert verify_witness(g, w)
    swapped = ExtremalWitness(Side.X, w.xprime, w.y2, w.y1)
    assert not verify_witness(g, swapped)
    small = ExtremalWitness(Side.X, 0b11, w.y1, w.y2)
    assert not verify_witness(g, small)


def test_verify_witness_malformed():
    g, _ = gen_large_deg(6)
    with pytest.raises(PreconditionError, match="witness invalid"):
        verify_witness(g, ExtremalWitness(Side.X, 0b111, 0b111, 0b110000))
    with pytest.raises(PreconditionError, match="witness invalid"):
        verify_witness(g, ExtremalWitness(Side.X, 0b111, 0b111, 0b111111))


def test_witness_monotone_in_eta():
    rnd = random.Random(4)
    for _ in range(100):
        n = rnd.randint(2, 8)
        g = build(n, [(rnd.randrange(n), rnd.randrange(n)) for _ in range(n * n // 2)],
                  [(rnd.randrange(n), rnd.randrange(n)) for _ in range(n * n // 2)])
        y1 = rnd.getrandbits(n)
        w = ExtremalWitness(Side.X, rnd.getrandbits(n), y1, full_mask(n) & ~y1)
        eta = witness_eta(g, w)
        assert verify_witness(g, w.with_eta(eta))
        assert verify_witness(g, w.with_eta(eta + F(1, 7)))
        if eta > 0:
            assert not verify_witness(g, w.with_eta(eta - F(1, 10**6)))


def test_find_witness_examples():
    g, _ = gen_large_deg(8)
    w = find_witness(g, 0)
    assert w is not None and verify_witness(g, w)
    assert find_witness(complete(4), F(1, 100)) is None
    w = find_witness(build(4), Q)
    assert w is not None and verify_witness(build(4), w)


def test_find_witness_self_consistent():
    rnd = random.Random(9)
    for _ in range(60):
        n = rnd.randint(4, 10)
        a = rnd.randint(1, n - 1)
        g = two_block(n, a, rnd.randint(1, n - 1))
        for eta in (0, F(1, 20), F(1, 8)):
            w = find_witness(g, eta)
            if w is not None:
                assert verify_witness(g, w)


def test_witness_json_roundtrip():
    w = canonical(12, eta=F(1, 50))
    assert ExtremalWitness.from_dict(w.to_dict(), 12) == w
    with pytest.raises(PreconditionError, match="witness invalid"):
        ExtremalWitness.from_dict({"orientation": "x", "xprime": [0], "y1": [99], "y2": []}, 12)


# -- lemmas ----------------------------------------------------------------

def test_long_path_prop_examples():
    g, _ = gen_large_deg(12)
    pair = long_path_prop(g, full_mask(6), full_mask(6), RouteParams(Q), BLUE)
    assert pair.excluded_x == pair.excluded_y == 0
    assert pair.xs == pair.ys == full_mask(6)
    with pytest.raises(PreconditionError, match="e_blue"):
        long_path_prop(g, full_mask(6), full_mask(6), RouteParams(Q), RED)
    g8, _ = gen_large_deg(8)
    with pytest.raises(PreconditionError, match="3/gamma"):
        long_path_prop(g8, full_mask(4), full_mask(4), RouteParams(Q), BLUE)


def test_extract_ham_path_examples():
    g, _ = gen_large_deg(12)
    pair = long_path_prop(g, full_mask(6), full_mask(6), RouteParams(Q))
    p = extract_ham_path(pair, full_mask(6), full_mask(6), X(2), Y(4))
    assert p.order == 12 and p.is_valid(g) and p.vertices[0] == X(2) and p.vertices[-1] == Y(4)
    h = g.with_edge_colors(0, 0, [RED])
    pair = long_path_prop(h, full_mask(6), full_mask(6), RouteParams(Q, theta=F(1, 144)).with_theta(0),
                          check_hypotheses=False)
    p = extract_ham_path(pair, full_mask(6), full_mask(6), X(1), Y(2))
    assert p.order == 12 and p.is_valid(h)
    with pytest.raises(PreconditionError):
        extract_ham_path(pair, full_mask(6), full_mask(5), X(1), Y(2))


def test_big_part_prop_synthetic():
    n = 12
    g = blocks(n, [(range(9), range(6), "B"), (range(9), range(6, 12), "R"),
                   (range(9, 12), range(12), "R")])
    cyc = big_part_prop(g, full_mask(9), full_mask(6), RouteParams(Q))
    assert cyc.color is BLUE and cyc.length == 12 and cyc.is_valid(g)


def test_big_part_prop_preconditions():
    g, _ = gen_large_deg(16)
    with pytest.raises(PreconditionError):
        big_part_prop(g, full_mask(16), full_mask(8), RouteParams(Q))
    n = 12
    g = blocks(n, [(range(9), range(6), "B"), (range(9), range(6, 12), "R"),
                   (range(9, 12), range(12), "R")])
    with pytest.raises(PreconditionError, match="theta"):
        big_part_prop(g, full_mask(9), full_mask(6), RouteParams(Q, theta=F(1, 1024)))


# -- separator -------------------------------------------------------------

def _pairs(n=6):
    P = RouteParams(Q)
    A = BiConnectedPair(None, RED, mask_of([0, 1]), mask_of([0, 1]), 0, 0, P)
    B = BiConnectedPair(None, RED, mask_of([3, 4]), mask_of([3, 4]), 0, 0, P)
    red = [(x, y) for x in (0, 1) for y in (0, 1)] + [(x, y) for x in (3, 4) for y in (3, 4)]
    return A, B, red


def _no_red_across(g, res):
    x1, x2, y1, y2 = res.hats
    cut_x = mask_of(v.index for v in res.separator if v.side is Side.X)
    cut_y = mask_of(v.index for v in res.separator if v.side is Side.Y)
    for x, y in g.edges(RED):
        if cut_x >> x & 1 or cut_y >> y & 1:
            continue
        a_side = bool(x1 >> x & 1), bool(y2 >> y & 1)
        assert a_side[0] == a_side[1], (x, y)


def test_separator_empty():
    A, B, red = _pairs()
    g = build(6, red)
    res = separator_partition(g, A, B)
    assert res.flow == 0 and res.separator == ()
    assert res.hats == (0b11, 0b111100, 0b111100, 0b11)
    _no_red_across(g, res)


def test_separator_single_vertex():
    A, B, red = _pairs()
    g = build(6, red + [(1, 2), (3, 2)])
    res = separator_partition(g, A, B)
    assert res.flow == 1 and len(res.separator) == 1
    _no_red_across(g, res)


def test_separator_two_paths():
    A, B, red = _pairs()
    g = build(6, red + [(1, 2), (3, 2), (2, 0), (2, 4)])
    res = separator_partition(g, A, B)
    assert res.flow == 2 and len(res.paths) == 2
    used = [v for p in res.paths for v in p]
    assert len(used) == len(set(used))


def test_separator_overlap():
    A, _, red = _pairs()
    with pytest.raises(PreconditionError, match="overlap"):
        separator_partition(build(6, red), A, A)


def test_separator_property_random():
    rnd = random.Random(21)
    for _ in range(200):
        A, B, red = _pairs()
        extra = [(rnd.randrange(6), rnd.randrange(6)) for _ in range(rnd.randint(0, 6))]
        extra = [(x, y) for x, y in extra if not (x in (0, 1) and y in (3, 4)) and not (x in (3, 4) and y in (0, 1))]
        g = build(6, red + extra)
        res = separator_partition(g, A, B)
        if res.flow < 2:
            assert len(res.separator) == res.flow
            _no_red_across(g, res)


# -- routing ---------------------------------------------------------------

def _check(g, cert):
    assert check_certificate(g, cert.to_dict()) is None
    assert cert.cycle.length >= 2 * (g.n // 2)
    assert cert.path.order >= 2 * -(-g.n // 2)


def test_route_large_deg_12():
    g, _ = gen_large_deg(12)
    cert = extremal_route(g, canonical(12), RouteParams(Q))
    _check(g, cert)
    assert cert.cycle.length == 12 and cert.path.order == 12
    assert any(t.startswith("b:") for t in cert.branch_trace)
    assert longest_mono_cycle_exact(g).length >= cert.cycle.length


def test_route_large_deg_13_needs_positive_eta():
    # |Y1| + |Y2| = 13 forces one part below n/2, so no witness verifies at eta = 0
    g, _ = gen_large_deg(13)
    w = canonical(13)
    assert witness_eta(g, w) == F(1, 26)
    with pytest.raises(PreconditionError, match="witness does not verify"):
        extremal_route(g, w, RouteParams(Q))
    cert = extremal_route(g, w, RouteParams(Q), check_hypotheses=False)
    _check(g, cert)
    assert cert.cycle.length >= 12 and cert.path.order >= 14


def test_route_param_precondition():
    g, _ = gen_large_deg(12)
    with pytest.raises(PreconditionError, match="16\\*sqrt"):
        extremal_route(g, canonical(12), RouteParams(Q, eta=F(1, 4096)))


def test_route_degree_precondition():
    g = two_block(12, 6).with_edge_colors(0, 0, [])
    with pytest.raises(PreconditionError, match="deficit"):
        extremal_route(g, canonical(12), RouteParams(Q))


def test_route_branch_a_orientations():
    g = two_block(12, 9, 6)
    w = ExtremalWitness(Side.X, full_mask(9), full_mask(6), full_mask(12) & ~full_mask(6))
    for h, wit in ((g, w),
                   (g.transpose(), ExtremalWitness(Side.Y, w.xprime, w.y1, w.y2)),
                   (g.swap_colors(), ExtremalWitness(Side.X, w.xprime, w.y2, w.y1))):
        cert = extremal_route(h, wit, RouteParams(Q))
        _check(h, cert)
        assert any(t.startswith("a:") for t in cert.branch_trace)


def test_route_branch_c():
    g = two_block(12, 5, extra=[(range(5, 12), range(6), "B")])
    cert = extremal_route(g, canonical(12, 5, 6), RouteParams(Q), check_hypotheses=False)
    _check(g, cert)
    assert "c:eg-cycle" in cert.branch_trace


def test_route_branch_d():
    g = two_block(12, 4)
    w = canonical(12, 4, 6, eta=F(1, 6))
    assert verify_witness(g, w)
    cert = extremal_route(g, w, RouteParams(Q, F(1, 6)), check_hypotheses=False)
    _check(g, cert)
    assert "d:red-pairs" in cert.branch_trace


def test_route_color_swap():
    g = two_block(12, 6, 5)
    cert = extremal_route(g, canonical(12, 6, 5), RouteParams(Q), check_hypotheses=False)
    _check(g, cert)
    assert "swap-colors" in cert.branch_trace


def test_route_relaxed_never_crashes():
    rnd = random.Random(1)
    outcomes = set()
    for _ in range(120):
        n = rnd.randint(6, 12)
        a, b = rnd.randint(n // 3, 2 * n // 3 + 1), rnd.randint(n // 3, 2 * n // 3 + 1)
        red, blue = [], []
        for x in range(n):
            for y in range(n):
                same = (x < a) == (y < b)
                p = rnd.random()
                if p < 0.08:
                    red.append((x, y))
                    blue.append((x, y))
                elif p < 0.12:
                    (red if same else blue).append((x, y))
                else:
                    (blue if same else red).append((x, y))
        g = build(n, red, blue)
        try:
            cert = extremal_route(g, canonical(n, a, b), RouteParams(Q), check_hypotheses=False)
        except BelowRegimeError:
            outcomes.add("below")
            continue
        _check(g, cert)
        outcomes.add(cert.branch_trace[-1].split(":")[0])
    assert {"a", "b", "d"} <= outcomes
