"""Monochromatic components, connected matchings, covers and the stability dichotomy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .bigraph import (BLUE, RED, Color, ColoredBigraph, Side, VertexRef, as_mask,
                      full_mask, lowest, members, min_degree, popcount)
from .errors import BelowRegimeError, InternalError, PreconditionError
from .routes import color_components


@dataclass(frozen=True)
class MonoComponent:
    color: Color
    xs: int
    ys: int
    id: int

    @property
    def size(self) -> int:
        return popcount(self.xs) + popcount(self.ys)

    @property
    def min_side(self) -> int:
        return min(popcount(self.xs), popcount(self.ys))

    def contains(self, v: VertexRef) -> bool:
        mask = self.xs if v.side is Side.X else self.ys
        return bool(mask >> v.index & 1)


@dataclass(frozen=True)
class ConnectedMatching:
    color: Color
    component_id: int
    edges: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class VertexCover:
    sx: int
    sy: int

    @property
    def size(self) -> int:
        return popcount(self.sx) + popcount(self.sy)

    def covers(self, edges) -> bool:
        return all(self.sx >> x & 1 or self.sy >> y & 1 for x, y in edges)


@dataclass(frozen=True)
class ExtremalWitness:
    """Sets certifying an η-extremal coloring.

    With ``orientation`` X, ``xprime`` is an X-subset and ``y1``/``y2``
    partition Y; with orientation Y the roles of the two sides are exchanged.
    ``y1`` is the part with few red edges to ``xprime`` and ``y2`` the part
    with few blue edges.
    """

    orientation: Side
    xprime: int
    y1: int
    y2: int
    eta: Fraction = Fraction(0)

    def with_eta(self, eta) -> "ExtremalWitness":
        return ExtremalWitness(self.orientation, self.xprime, self.y1, self.y2, Fraction(eta))

    def to_dict(self) -> dict:
        return {
            "orientation": self.orientation.value,
            "xprime": members(self.xprime),
            "y1": members(self.y1),
            "y2": members(self.y2),
            "eta": str(self.eta),
        }

    @classmethod
    def from_dict(cls, d: dict, n: int) -> "ExtremalWitness":
        try:
            side = Side(d["orientation"])
            return cls(side, as_mask(d["xprime"], n), as_mask(d["y1"], n), as_mask(d["y2"], n),
                       Fraction(d.get("eta", "0")))
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"witness invalid: {exc}") from None


@dataclass(frozen=True)
class StabilityOutcome:
    matching: Optional[ConnectedMatching] = None
    witness: Optional[ExtremalWitness] = None

    def __post_init__(self):
        if (self.matching is None) == (self.witness is None):
            raise InternalError("exactly one of matching/witness must be set")

    @property
    def kind(self) -> str:
        return "matching" if self.matching is not None else "witness"


# -- components ------------------------------------------------------------

def mono_components(g: ColoredBigraph, c: Color) -> list[MonoComponent]:
    """Components of the color-c subgraph, ordered by their lowest X index."""
    comps = sorted(color_components(g, c), key=lambda p: lowest(p[0]))
    return [MonoComponent(c, xs, ys, i) for i, (xs, ys) in enumerate(comps)]


def large_double_star(g: ColoredBigraph, c: Color) -> tuple[VertexRef, VertexRef, int]:
    rx, ry = g.rows(c, Side.X), g.rows(c, Side.Y)
    best = None
    for x, y in g.edges(c):
        size = popcount(rx[x]) + popcount(ry[y])
        if best is None or size > best[2]:
            best = (VertexRef(Side.X, x), VertexRef(Side.Y, y), size)
    if best is None:
        raise PreconditionError(f"no {c} edges")
    return best


def _component_key(comp: MonoComponent):
    return (comp.min_side, comp.size, -lowest(comp.xs), comp.color is RED)


def best_balanced_component(g: ColoredBigraph) -> MonoComponent:
    """Component (either color) with the largest smaller side.

    Ties go to the larger component, then to the one containing the lower X
    index, then to red.
    """
    comps = mono_components(g, RED) + mono_components(g, BLUE)
    if not comps:
        raise PreconditionError("graph has no edges")
    return max(comps, key=_component_key)


# -- matchings and covers -------------------------------------------------

def max_matching(rows, xs: int, ys: int) -> dict[int, int]:
    """Maximum matching of the bipartite graph [xs, ys] (Kuhn's augmenting paths).

    ``rows[x]`` is the Y-mask of x.  Returns a map y -> x.
    """
    match_y: dict[int, int] = {}

    def augment(x, seen):
        for y in members(rows[x] & ys & ~seen[0]):
            seen[0] |= 1 << y
            if y not in match_y or augment(match_y[y], seen):
                match_y[y] = x
                return True
        return False

    for x in members(xs):
        augment(x, [0])
    return match_y


def max_connected_matching(g: ColoredBigraph, c: Color) -> ConnectedMatching:
    """Largest matching inside a single color-c component (exact)."""
    rows = g.rows(c)
    best = ConnectedMatching(c, -1, ())
    for comp in mono_components(g, c):
        m = max_matching(rows, comp.xs, comp.ys)
        if len(m) > best.size:
            best = ConnectedMatching(c, comp.id, tuple(sorted((x, y) for y, x in m.items())))
    return best


def best_connected_matching(g: ColoredBigraph) -> ConnectedMatching:
    red, blue = max_connected_matching(g, RED), max_connected_matching(g, BLUE)
    return blue if blue.size > red.size else red


def _koenig_cover(rows, rows_t, xs: int, ys: int, match_y: dict[int, int]) -> VertexCover:
    matched_x = {x: y for y, x in match_y.items()}
    mask = 0
    for x in members(xs):
        if x not in matched_x:
            mask |= 1 << x
    z_x, z_y = mask, 0
    frontier = mask
    while frontier:
        reach_y = 0
        for x in members(frontier):
            reach_y |= rows[x] & ys
        reach_y &= ~z_y
        z_y |= reach_y
        nxt = 0
        for y in members(reach_y):
            if y in match_y:
                nxt |= 1 << match_y[y]
        frontier = nxt & ~z_x
        z_x |= frontier
    return VertexCover(xs & ~z_x, z_y)


def min_cover(g: ColoredBigraph, comp: MonoComponent) -> VertexCover:
    """Minimum vertex cover of a component, via König's alternating reachability."""
    if (comp.xs, comp.ys) not in color_components(g, comp.color):
        raise PreconditionError("component is not a component of this graph")
    rows = g.rows(comp.color)
    m = max_matching(rows, comp.xs, comp.ys)
    cover = _koenig_cover(rows, g.rows(comp.color, Side.Y), comp.xs, comp.ys, m)
    if cover.size != len(m):
        raise InternalError(f"cover size {cover.size} != matching size {len(m)}")
    return cover


def block_cover(g: ColoredBigraph, c: Color, xs: int, ys: int) -> tuple[dict[int, int], VertexCover]:
    """Maximum matching and minimum cover of the color-c subgraph [xs, ys]."""
    rows = g.rows(c)
    m = max_matching(rows, xs, ys)
    cover = _koenig_cover(rows, g.rows(c, Side.Y), xs, ys, m)
    if cover.size != len(m):
        raise InternalError(f"cover size {cover.size} != matching size {len(m)}")
    return m, cover


# -- bounds ---------------------------------------------------------------

def _check_delta(delta) -> Fraction:
    delta = Fraction(delta)
    if not 0 <= delta <= 1:
        raise PreconditionError(f"delta must lie in [0, 1], got {delta}")
    return delta


def matching_bound(delta, n: int) -> Fraction:
    """Guaranteed connected-matching size at minimum degree delta*n."""
    delta = _check_delta(delta)
    if delta <= Fraction(2, 3):
        return delta * n / 2
    if delta <= Fraction(3, 4):
        return (2 * delta - 1) * n
    return Fraction(n, 2)


def component_bound(delta, n: int) -> Fraction:
    """Guaranteed smaller side of the best monochromatic component (same three pieces)."""
    return matching_bound(delta, n)


def cycle_bound(delta) -> Fraction:
    """The circumference rate f(delta)."""
    delta = _check_delta(delta)
    if delta <= Fraction(2, 3):
        return delta
    if delta <= Fraction(3, 4):
        return 4 * delta - 2
    return Fraction(1)


def ceil_frac(q: Fraction) -> int:
    return math.ceil(Fraction(q))


# -- witness candidates ---------------------------------------------------

def _h1_candidates(g: ColoredBigraph, c: Color) -> Iterator[tuple[int, int, int]]:
    """(xprime, P, Q) triples from the largest color-c component with both sides >= n/2."""
    n = g.n
    full = full_mask(n)
    comps = [k for k in mono_components(g, c) if 2 * popcount(k.xs) >= n and 2 * popcount(k.ys) >= n]
    if not comps:
        return
    h1 = max(comps, key=lambda k: (k.size, -lowest(k.xs)))
    x1, y1 = h1.xs, h1.ys
    yield x1, y1, full & ~y1
    s = min_cover(g, h1)
    x1p, y1p = x1 & ~s.sx, y1 & ~s.sy
    if not x1p:
        return
    other = c.other
    h2 = next((k for k in mono_components(g, other) if k.xs >> lowest(x1p) & 1), None)
    if h2 is None:
        return
    t = min_cover(g, h2)
    yield x1p, s.sy, full & ~s.sy
    yield x1p & ~t.sx, s.sy, full & ~s.sy
    if y1p:
        yield x1p, full & ~(t.sy & ~s.sy), t.sy & ~s.sy


def witness_candidates(g: ColoredBigraph) -> Iterator[ExtremalWitness]:
    """Candidate witnesses (eta 0) built from the largest balanced components.

    Every (xprime, P, Q) triple is yielded with both assignments of P and Q to
    the red-sparse and blue-sparse roles, for both orientations.
    """
    seen = set()
    for side, h in ((Side.X, g), (Side.Y, g.transpose())):
        for c in (BLUE, RED):
            for xprime, p, q in _h1_candidates(h, c):
                for a, b in ((p, q), (q, p)):
                    key = (side, xprime, a, b)
                    if key not in seen:
                        seen.add(key)
                        yield ExtremalWitness(side, xprime, a, b)


def matching_or_witness(g: ColoredBigraph, eta) -> StabilityOutcome:
    """Connected matching of size >= (1/2+eta)n, or a witness verified at 2*eta.

    Small instances may have neither among the constructed candidates; that is
    reported as :class:`BelowRegimeError`.
    """
    from .extremal import verify_witness

    eta = Fraction(eta)
    n = g.n
    if eta <= 0:
        raise PreconditionError("eta must be positive")
    d = min_degree(g)
    if not d > (Fraction(3, 4) + eta) * n:
        raise PreconditionError(f"need min degree > (3/4+eta)n = {(Fraction(3, 4) + eta) * n}; have {d}")
    best = best_connected_matching(g)
    if best.size >= ceil_frac((Fraction(1, 2) + eta) * n):
        return StabilityOutcome(matching=best)
    for w in witness_candidates(g):
        w = w.with_eta(2 * eta)
        if verify_witness(g, w):
            return StabilityOutcome(witness=w)
    raise BelowRegimeError(
        f"largest connected matching is {best.size} < (1/2+eta)n and no candidate witness "
        f"verifies at 2*eta={2 * eta}")
