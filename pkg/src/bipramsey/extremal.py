"""Extremal colorings: witness checks and constructive long paths/cycles.

The routing pipeline works on an oriented copy of the instance.  If the
witness lives on the Y side the graph is transposed, and if the red-sparse
half turns out to be the smaller one the colors are swapped.  Both moves are
recorded in the branch trace and undone before results are returned, so
certificates always refer to the caller's graph.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .bigraph import (BLUE, RED, Color, ColoredBigraph, Side, VertexRef, as_mask,
                      color_edge_count, full_mask, lowest, members, min_degree, popcount)
from .errors import BelowRegimeError, InternalError, PreconditionError, SearchCapExceeded
from .routes import (CycleResult, PathResult, SimpleGraphView, berge_check,
                     erdos_gallai_cycle, hamiltonian_path)
from .structure import ExtremalWitness, block_cover, mono_components, witness_candidates

HALF = Fraction(1, 2)
DEFAULT_BUDGET = 2_000_000


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class RouteParams:
    gamma: Fraction
    eta: Fraction = Fraction(0)
    theta: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("gamma", "eta", "theta"):
            v = _frac(getattr(self, name))
            if v < 0:
                raise PreconditionError(f"{name} must be non-negative")
            object.__setattr__(self, name, v)

    def with_theta(self, theta) -> "RouteParams":
        return replace(self, theta=_frac(theta))

    def _gamma_problems(self, n: int) -> list[str]:
        out = []
        if not 0 < self.gamma <= Fraction(1, 4):
            out.append(f"need 0 < gamma <= 1/4, got {self.gamma}")
        elif n * self.gamma < 3:
            out.append(f"need n >= 3/gamma = {3 / self.gamma}, got n={n}")
        return out

    def pipeline_problems(self, n: int) -> list[str]:
        out = self._gamma_problems(n)
        if not 256 * self.eta < self.gamma ** 2:
            out.append(f"need 16*sqrt(eta) < gamma (eta={self.eta}, gamma={self.gamma})")
        return out

    def lemma_problems(self, n: int) -> list[str]:
        out = self._gamma_problems(n)
        if not 64 * self.theta < self.gamma ** 2:
            out.append(f"need 8*sqrt(theta) < gamma (theta={self.theta}, gamma={self.gamma})")
        return out


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


def _deg(h: ColoredBigraph, side: Side, i: int, c: Color, mask: int) -> int:
    return popcount(h.rows(c, side)[i] & mask)


def degree_problem(h: ColoredBigraph, gamma: Fraction) -> Optional[str]:
    d = min_degree(h)
    need = (Fraction(3, 4) + gamma) * h.n
    if d < need:
        return f"need min degree >= (3/4+gamma)n = {need}; have {d} (deficit {need - d})"
    return None


def _raise_pre(problems: list[str]):
    if problems:
        raise PreconditionError("; ".join(problems))


# -- witnesses ------------------------------------------------------------

def _oriented(g: ColoredBigraph, w: ExtremalWitness) -> ColoredBigraph:
    return g if w.orientation is Side.X else g.transpose()


def _check_shape(g: ColoredBigraph, w: ExtremalWitness):
    n = g.n
    full = full_mask(n)
    for name in ("xprime", "y1", "y2"):
        m = getattr(w, name)
        if not isinstance(m, int) or m < 0 or m & ~full:
            raise PreconditionError(f"witness invalid: {name} is not a subset of a side of size {n}")
    if w.y1 & w.y2:
        raise PreconditionError("witness invalid: y1 and y2 overlap")
    if w.y1 | w.y2 != full:
        raise PreconditionError("witness invalid: y1 and y2 do not cover the opposite side")


def witness_eta(g: ColoredBigraph, w: ExtremalWitness) -> Fraction:
    """Smallest eta at which the witness sets verify."""
    _check_shape(g, w)
    h, n = _oriented(g, w), g.n
    smallest = min(popcount(w.xprime), popcount(w.y1), popcount(w.y2))
    return max(Fraction(0), HALF - Fraction(smallest, n),
               Fraction(color_edge_count(h, w.xprime, w.y1, RED), n * n),
               Fraction(color_edge_count(h, w.xprime, w.y2, BLUE), n * n))


def verify_witness(g: ColoredBigraph, w: ExtremalWitness) -> bool:
    """Exact check of the three size bounds and two edge-count bounds at ``w.eta``."""
    return witness_eta(g, w) <= _frac(w.eta)


def _split_search(h: ColoredBigraph, side: Side, xprime: int, eta: Fraction):
    """Best prefix splits of Y sorted by (red - blue) degree into xprime."""
    n = h.n
    rows_r, rows_b = h.rows(RED, Side.Y), h.rows(BLUE, Side.Y)
    order = sorted(range(n), key=lambda y: (popcount(rows_r[y] & xprime) - popcount(rows_b[y] & xprime), y))
    lo = HALF - eta
    y1 = 0
    for k in range(n + 1):
        if k:
            y1 |= 1 << order[k - 1]
        if k < lo * n or n - k < lo * n:
            continue
        w = ExtremalWitness(side, xprime, y1, full_mask(n) & ~y1, eta)
        if verify_witness_oriented(h, w):
            yield w


def verify_witness_oriented(h: ColoredBigraph, w: ExtremalWitness) -> bool:
    """verify_witness for a graph already oriented so that xprime is an X-subset."""
    return verify_witness(h, replace(w, orientation=Side.X))


def find_witness(g: ColoredBigraph, eta) -> Optional[ExtremalWitness]:
    """Search witnesses built from component structure; None if none verifies."""
    eta = _frac(eta)
    for w in witness_candidates(g):
        w = w.with_eta(eta)
        if verify_witness(g, w):
            return w
    n = g.n
    for side, h in ((Side.X, g), (Side.Y, g.transpose())):
        pools = {full_mask(n)}
        for w in witness_candidates(g):
            if w.orientation is side:
                pools.add(w.xprime)
        for c in (BLUE, RED):
            for comp in mono_components(h, c):
                pools.add(comp.xs)
                pools.add(full_mask(n) & ~comp.xs)
        for xprime in sorted(pools, key=lambda m: (-popcount(m), m)):
            if popcount(xprime) < (HALF - eta) * n:
                continue
            for w in _split_search(h, side, xprime, eta):
                return w
    return None


# -- the two lemmas -------------------------------------------------------

@dataclass(frozen=True)
class BiConnectedPair:
    """Vertex sets whose equal-size sub-pairs are Hamiltonian bi-connected in ``color``.

    ``xs``/``ys`` are what remains of X', Y' after removing the low-degree
    vertices ``excluded_x``/``excluded_y``.  ``certified`` is True when the
    lemma's hypotheses were checked, in which case the bi-connectedness
    contract is guaranteed rather than hoped for.
    """

    graph: ColoredBigraph
    color: Color
    xs: int
    ys: int
    excluded_x: int
    excluded_y: int
    params: RouteParams
    certified: bool = True


def _lemma_fail(strict: bool, msg: str):
    if strict:
        raise InternalError(msg)
    raise BelowRegimeError(msg)


def long_path_prop(g: ColoredBigraph, xprime, yprime, params: RouteParams, color: Color = BLUE,
                   check_hypotheses: bool = True) -> BiConnectedPair:
    n = g.n
    xm, ym = as_mask(xprime, n, Side.X), as_mask(yprime, n, Side.Y)
    gamma, theta = params.gamma, params.theta
    nx, ny = popcount(xm), popcount(ym)
    if check_hypotheses:
        probs = params.lemma_problems(n)
        lo = (HALF - gamma / 8) * n
        if nx < lo:
            probs.append(f"need |X'| >= (1/2-gamma/8)n = {lo}, got {nx}")
        if ny < lo:
            probs.append(f"need |Y'| >= (1/2-gamma/8)n = {lo}, got {ny}")
        bad = color_edge_count(g, xm, ym, color.other)
        if bad > theta * n * n:
            probs.append(f"need e_{color.other}(X',Y') <= theta*n^2 = {theta * n * n}, got {bad}")
        d = degree_problem(g, gamma)
        if d:
            probs.append(d)
        _raise_pre(probs)
    rx, ry = g.rows(color, Side.X), g.rows(color, Side.Y)
    xs_cut = ny - HALF * n + gamma * n / 2
    ys_cut = nx - HALF * n + gamma * n / 2
    x_s = sum(1 << x for x in members(xm) if popcount(rx[x] & ym) <= xs_cut)
    y_s = sum(1 << y for y in members(ym) if popcount(ry[y] & xm) <= ys_cut)
    if check_hypotheses and (popcount(x_s) > 4 * theta * n or popcount(y_s) > 4 * theta * n):
        raise InternalError(f"|X_S|={popcount(x_s)}, |Y_S|={popcount(y_s)} exceed 4*theta*n")
    return BiConnectedPair(g, color, xm & ~x_s, ym & ~y_s, x_s, y_s, params, check_hypotheses)


def _view(h: ColoredBigraph, c: Color, xs: int, ys: int) -> SimpleGraphView:
    return SimpleGraphView.from_color(h, c, xs, ys)


def _ham_path(h, c, xs, ys, a: VertexRef, b: VertexRef, budget=DEFAULT_BUDGET):
    v = _view(h, c, xs, ys)
    seq = hamiltonian_path(v.adj, full_mask(v.N), v.local(a), v.local(b), budget)
    return None if seq is None else [v.label(i) for i in seq]


def extract_ham_path(pair: BiConnectedPair, xstar_set, ystar_set, x: VertexRef, y: VertexRef,
                     budget: Optional[int] = DEFAULT_BUDGET) -> PathResult:
    h, n = pair.graph, pair.graph.n
    xm, ym = as_mask(xstar_set, n, Side.X), as_mask(ystar_set, n, Side.Y)
    if x.side is not Side.X or y.side is not Side.Y:
        raise PreconditionError("x must lie in X and y in Y")
    if xm & ~pair.xs or ym & ~pair.ys:
        raise PreconditionError("X*, Y* must be subsets of the pair")
    if not (xm >> x.index & 1 and ym >> y.index & 1):
        raise PreconditionError("endpoints must lie in X*, Y*")
    if popcount(xm) != popcount(ym):
        raise PreconditionError(f"|X*|={popcount(xm)} != |Y*|={popcount(ym)}")
    if pair.certified and popcount(xm) < (HALF - pair.params.gamma / 4) * n:
        raise PreconditionError(f"need |X*| >= (1/2-gamma/4)n = {(HALF - pair.params.gamma / 4) * n}")
    seq = _ham_path(h, pair.color, xm, ym, x, y, budget)
    if seq is None:
        if berge_check(_view(h, pair.color, xm, ym)):
            raise InternalError("degree condition holds but no Hamiltonian path was found")
        _lemma_fail(pair.certified, f"no Hamiltonian {pair.color} path from {x} to {y} in [X*, Y*]")
    return PathResult(pair.color, tuple(seq))


def _top(h: ColoredBigraph, side: Side, c: Color, pool: int, target: int, k: int, keep: int = 0) -> int:
    """``keep`` plus the k - |keep| vertices of ``pool`` with most c-neighbors in ``target``."""
    rows = h.rows(c, side)
    rest = sorted(members(pool & ~keep), key=lambda v: (-popcount(rows[v] & target), v))
    chosen = keep
    for v in rest[: max(0, k - popcount(keep))]:
        chosen |= 1 << v
    return chosen


def _cycle_in_block(h: ColoredBigraph, c: Color, xs: int, ys: int, m: int,
                    budget=DEFAULT_BUDGET) -> Optional[CycleResult]:
    """A c-cycle on 2m vertices inside [xs, ys], trying the m best-connected vertices per side."""
    if m < 2 or popcount(xs) < m or popcount(ys) < m:
        return None
    xsel = _top(h, Side.X, c, xs, ys, m)
    ysel = _top(h, Side.Y, c, ys, xsel, m)
    xsel = _top(h, Side.X, c, xs, ysel, m)
    rows = h.rows(c)
    x0 = min(members(xsel), key=lambda x: (popcount(rows[x] & ysel), x))
    for y in members(rows[x0] & ysel):
        seq = _ham_path(h, c, xsel, ysel, VertexRef(Side.X, x0), VertexRef(Side.Y, y), budget)
        if seq is not None:
            return CycleResult(c, tuple(seq))
    return None


def _path_between_max(h: ColoredBigraph, c: Color, xs: int, ys: int, a: VertexRef, b: VertexRef,
                      shrink: int = 3, budget=DEFAULT_BUDGET) -> Optional[list[VertexRef]]:
    """Long c-path from a to b inside [xs, ys], dropping poorly connected vertices for parity."""
    keep_x = sum(1 << v.index for v in (a, b) if v.side is Side.X)
    keep_y = sum(1 << v.index for v in (a, b) if v.side is Side.Y)
    cx, cy = popcount(xs), popcount(ys)
    if a.side is not b.side:
        kx = ky = min(cx, cy)
    elif a.side is Side.X:
        kx = min(cx, cy + 1)
        ky = kx - 1
    else:
        ky = min(cy, cx + 1)
        kx = ky - 1
    for _ in range(shrink + 1):
        if kx < popcount(keep_x) or ky < popcount(keep_y) or kx + ky < 2:
            return None
        xsel = _top(h, Side.X, c, xs, ys, kx, keep_x)
        ysel = _top(h, Side.Y, c, ys, xsel, ky, keep_y)
        seq = _ham_path(h, c, xsel, ysel, a, b, budget)
        if seq is not None:
            return seq
        kx, ky = kx - 1, ky - 1
    return None


def big_part_prop(g: ColoredBigraph, xprime, yprime, params: RouteParams, color: Color = BLUE,
                  check_hypotheses: bool = True) -> CycleResult:
    """A ``color`` cycle on 2*ceil(n/2) vertices when X' is large and Y' is about half of Y."""
    n = g.n
    c = color
    xm, ym = as_mask(xprime, n, Side.X), as_mask(yprime, n, Side.Y)
    gamma, theta = params.gamma, params.theta
    nx, ny = popcount(xm), popcount(ym)
    if check_hypotheses:
        probs = params.lemma_problems(n)
        if 4 * nx < 3 * n:
            probs.append(f"need |X'| >= 3n/4, got {nx}")
        if not HALF * n <= ny <= (HALF + theta) * n:
            probs.append(f"need n/2 <= |Y'| <= (1/2+theta)n, got {ny}")
        bad = color_edge_count(g, xm, ym, c.other)
        if bad > theta * n * n:
            probs.append(f"need e_{c.other}(X',Y') <= theta*n^2 = {theta * n * n}, got {bad}")
        low = min((_deg(g, Side.Y, y, c, xm) for y in members(ym)), default=0)
        if low < gamma * n:
            probs.append(f"need min {c} degree from Y' into X' >= gamma*n = {gamma * n}, got {low}")
        d = degree_problem(g, gamma)
        if d:
            probs.append(d)
        _raise_pre(probs)
    half = _ceil_half(n)
    x_s = sum(1 << x for x in members(xm)
              if _deg(g, Side.X, x, c, ym) <= (Fraction(1, 4) + 3 * gamma / 4) * n)
    x_l = xm & ~x_s
    cut = popcount(x_l) - HALF * n + 3 * gamma * n / 4
    y_s = sum(1 << y for y in members(ym) if _deg(g, Side.Y, y, c, x_l) <= cut)
    y_l = ym & ~y_s
    t = popcount(y_s)
    if check_hypotheses and (popcount(x_s) > 4 * theta * n / gamma or t > 4 * theta * n):
        raise InternalError(f"|X_S|={popcount(x_s)} or |Y_S|={t} exceeds its bound")
    if t == 0:
        cyc = _cycle_in_block(g, c, x_l, y_l, half)
        if cyc is None:
            _lemma_fail(check_hypotheses, f"no {c} cycle on {2 * half} vertices in [X_L, Y']")
        return cyc
    rx, ry = g.rows(c, Side.X), g.rows(c, Side.Y)
    used_x = 0
    pairs = []
    for v in members(y_s):
        opts = members(ry[v] & x_l & ~used_x)
        if len(opts) < 2:
            _lemma_fail(check_hypotheses, f"y{v} has fewer than two free {c} neighbors in X_L")
        pairs.append((opts[0], v, opts[1]))
        used_x |= 1 << opts[0] | 1 << opts[1]
    used_y = y_s
    seq: list[VertexRef] = []
    for i, (xa, v, xb) in enumerate(pairs):
        need = rx[xb] & y_l & ~used_y
        if i + 1 < len(pairs):
            need &= rx[pairs[i + 1][0]]
        if not need:
            _lemma_fail(check_hypotheses, f"no free {c} connector after y{v}")
        vp = lowest(need)
        used_y |= 1 << vp
        seq += [VertexRef(Side.X, xa), VertexRef(Side.Y, v), VertexRef(Side.X, xb), VertexRef(Side.Y, vp)]
    x1, vt = seq[0], seq[-1]
    m = half - 2 * t + 1
    xpool = (x_l & ~used_x) | 1 << x1.index
    ypool = (y_l & ~used_y) | 1 << vt.index
    if m < 2 or popcount(xpool) < m or popcount(ypool) < m:
        _lemma_fail(check_hypotheses, "not enough vertices left to close the cycle")
    xsel = _top(g, Side.X, c, xpool, ypool, m, 1 << x1.index)
    ysel = _top(g, Side.Y, c, ypool, xsel, m, 1 << vt.index)
    tail = _ham_path(g, c, xsel, ysel, vt, x1)
    if tail is None:
        _lemma_fail(check_hypotheses, f"no Hamiltonian {c} path closing the cycle")
    return CycleResult(c, tuple(seq + tail[1:-1]))


# -- separator ------------------------------------------------------------

@dataclass(frozen=True)
class SeparatorResult:
    """Outcome of the two-disjoint-paths test between two pairs.

    ``flow`` is min(2, number of vertex-disjoint connecting paths).  With
    flow >= 2, ``paths`` holds two disjoint paths, each leaving the first pair
    from its last vertex there and entering the second pair at its first.
    Otherwise ``separator`` is the (possibly empty) cut and ``hats`` is
    ``(x1, x2, y1, y2)``: the first pair's side of the cut is x1 | y2.
    """

    flow: int
    separator: tuple[VertexRef, ...]
    paths: tuple[tuple[VertexRef, ...], ...] = ()
    hats: Optional[tuple[int, int, int, int]] = None


_INF = 1 << 30


def separator_partition(g: ColoredBigraph, pairA: BiConnectedPair, pairB: BiConnectedPair) -> SeparatorResult:
    """Menger test via unit vertex-capacity max-flow, stopped at flow 2."""
    if pairA.color is not pairB.color:
        raise PreconditionError("pairs must share a color")
    if pairA.xs & pairB.xs or pairA.ys & pairB.ys:
        raise PreconditionError("pairs overlap")
    n, c = g.n, pairA.color
    # vertex id: x_i -> i, y_j -> n + j; node 2*id is "in", 2*id + 1 is "out"
    src, snk = 4 * n, 4 * n + 1
    cap: dict[tuple[int, int], int] = {}
    adj: list[set] = [set() for _ in range(4 * n + 2)]

    def arc(u, v, k):
        adj[u].add(v)
        adj[v].add(u)
        cap[(u, v)] = k

    for vid in range(2 * n):
        arc(2 * vid, 2 * vid + 1, 1)
    for x, y in g.edges(c):
        arc(2 * x + 1, 2 * (n + y), _INF)
        arc(2 * (n + y) + 1, 2 * x, _INF)
    s_ids = members(pairA.xs) + [n + y for y in members(pairA.ys)]
    t_ids = members(pairB.xs) + [n + y for y in members(pairB.ys)]
    for vid in s_ids:
        arc(src, 2 * vid, _INF)
    for vid in t_ids:
        arc(2 * vid + 1, snk, _INF)
    order = [sorted(a) for a in adj]
    f: dict[tuple[int, int], int] = defaultdict(int)

    def residual(u, v):
        return cap.get((u, v), 0) - f[(u, v)]

    flow = 0
    while flow < 2:
        prev = {src: src}
        dq = deque([src])
        while dq and snk not in prev:
            u = dq.popleft()
            for v in order[u]:
                if v not in prev and residual(u, v) > 0:
                    prev[v] = u
                    dq.append(v)
        if snk not in prev:
            break
        v = snk
        while v != src:
            u = prev[v]
            f[(u, v)] += 1
            f[(v, u)] -= 1
            v = u
        flow += 1

    def ref(vid):
        return VertexRef(Side.X, vid) if vid < n else VertexRef(Side.Y, vid - n)

    if flow >= 2:
        a_set, b_set = set(s_ids), set(t_ids)
        paths = []
        for start in s_ids:
            if f[(src, 2 * start)] <= 0:
                continue
            walk, node = [], 2 * start
            while node != snk:
                walk.append(node // 2)
                out = node + 1
                node = next(v for v in order[out] if f[(out, v)] > 0)
            last_a = max(i for i, vid in enumerate(walk) if vid in a_set)
            first_b = next(i for i in range(last_a, len(walk)) if walk[i] in b_set)
            paths.append(tuple(ref(vid) for vid in walk[last_a:first_b + 1]))
        if len(paths) < 2:
            raise InternalError("flow decomposition lost a path")
        return SeparatorResult(2, (), tuple(paths[:2]))

    seen = {src}
    dq = deque([src])
    while dq:
        u = dq.popleft()
        for v in order[u]:
            if v not in seen and residual(u, v) > 0:
                seen.add(v)
                dq.append(v)
    cut = tuple(ref(vid) for vid in range(2 * n) if 2 * vid in seen and 2 * vid + 1 not in seen)
    if len(cut) != flow:
        raise InternalError(f"cut size {len(cut)} != flow {flow}")
    wx = sum(1 << v.index for v in cut if v.side is Side.X)
    wy = sum(1 << v.index for v in cut if v.side is Side.Y)
    rx, ry = g.rows(c, Side.X), g.rows(c, Side.Y)
    reach_x, reach_y = pairA.xs & ~wx, pairA.ys & ~wy
    fx, fy = reach_x, reach_y
    while fx or fy:
        ny_ = 0
        for x in members(fx):
            ny_ |= rx[x]
        nx_ = 0
        for y in members(fy):
            nx_ |= ry[y]
        fx = nx_ & ~reach_x & ~wx
        fy = ny_ & ~reach_y & ~wy
        reach_x |= fx
        reach_y |= fy
    if reach_x & pairB.xs or reach_y & pairB.ys:
        raise InternalError("separator does not separate the pairs")
    full = full_mask(n)
    hats = (reach_x, full & ~reach_x & ~wx, full & ~reach_y & ~wy, reach_y)
    return SeparatorResult(flow, cut, (), hats)


# -- routing --------------------------------------------------------------

@dataclass(frozen=True)
class RouteCertificate:
    n: int
    path: PathResult
    cycle: CycleResult
    branch_trace: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "path": {"color": str(self.path.color), "vertices": [str(v) for v in self.path.vertices]},
            "cycle": {"color": str(self.cycle.color), "vertices": [str(v) for v in self.cycle.vertices]},
            "branch_trace": list(self.branch_trace),
        }


@dataclass
class RouteState:
    """Working sets of the routing, in the oriented (possibly transposed/recolored) frame."""

    x1: int = 0
    x2: int = 0
    y1: int = 0
    y2: int = 0
    s: Fraction = Fraction(0)
    y1s: int = 0
    y2s: int = 0
    y1p: int = 0
    y2p: int = 0
    x1s: int = 0
    x2s: int = 0
    a2s: int = 0
    x1p: int = 0
    x2p: int = 0
    hats: Optional[tuple[int, int, int, int]] = None
    w: Optional[VertexRef] = None
    transposed: bool = False
    colors_swapped: bool = False
    trace: list = field(default_factory=list)


class _Router:
    def __init__(self, g: ColoredBigraph, w: ExtremalWitness, params: RouteParams, strict: bool, budget):
        self.g = g
        self.n = g.n
        self.w = w
        self.p = params
        self.strict = strict
        self.budget = budget
        self.st = RouteState()
        self.h = g

    def fail(self, msg: str):
        if self.strict:
            raise InternalError(msg)
        raise BelowRegimeError(msg)

    def note(self, label: str):
        self.st.trace.append(label)

    def check_size(self, what: str, size: int, bound: Fraction):
        if self.strict and size > bound:
            raise InternalError(f"|{what}|={size} exceeds {bound}")

    # coordinates back to the caller's graph
    def export(self, obj):
        st = self.st
        verts = tuple(v.swapped() if st.transposed else v for v in obj.vertices)
        color = obj.color.other if st.colors_swapped else obj.color
        return type(obj)(color, verts)

    def run(self) -> RouteCertificate:
        n, st, gamma, eta = self.n, self.st, self.p.gamma, self.p.eta
        full = full_mask(n)
        if self.w.orientation is Side.Y:
            self.h = self.h.transpose()
            st.transposed = True
            self.note("orient:y-side")
        h = self.h
        st.x1, st.y1, st.y2 = self.w.xprime, self.w.y1, self.w.y2
        st.x2 = full & ~st.x1
        st.s = popcount(st.x1) - HALF * n
        lim = st.s + gamma * n
        st.y1s = sum(1 << v for v in members(st.y1) if _deg(h, Side.Y, v, BLUE, st.x1) <= lim)
        st.y2s = sum(1 << v for v in members(st.y2) if _deg(h, Side.Y, v, RED, st.x1) <= lim)
        self.check_size("Y1^S", popcount(st.y1s), 4 * eta * n)
        self.check_size("Y2^S", popcount(st.y2s), 4 * eta * n)
        st.y1p = (st.y1 & ~st.y1s) | st.y2s
        st.y2p = full & ~st.y1p
        if popcount(st.y1p) < popcount(st.y2p):
            self.h = h = h.swap_colors()
            st.colors_swapped = True
            st.y1p, st.y2p = st.y2p, st.y1p
            self.note("swap-colors")
        st.x1s = sum(1 << x for x in members(st.x1) if _deg(h, Side.X, x, BLUE, st.y1p) <= gamma * n)
        st.x2s = sum(1 << x for x in members(st.x2) if _deg(h, Side.X, x, RED, st.y1p) <= gamma * n)
        rest = st.x1 & ~st.x1s
        if 2 * popcount(rest) >= n:
            st.a2s = 0
        else:
            k = math.floor(HALF * n - popcount(rest))
            st.a2s = _top(h, Side.X, BLUE, st.x2s, st.y1p, k)
        self.check_size("X1^S", popcount(st.x1s), 20 * eta * n)
        self.check_size("A2^S", popcount(st.a2s), 21 * eta * n)
        st.x1p = rest | st.a2s
        st.x2p = (st.x2 & ~st.a2s) | st.x1s
        self.note(f"sizes:|X1'|={popcount(st.x1p)},|Y1'|={popcount(st.y1p)}")

        nx1 = popcount(st.x1p)
        path = None
        if 4 * nx1 >= 3 * n:
            self.note("a:big-part")
            cycle = self.branch_a()
        elif 2 * nx1 >= n:
            self.note("b:long-path")
            cycle = self.branch_b()
        else:
            cycle = None
            if color_edge_count(h, st.x2p, st.y1p, BLUE) >= 12 * eta * n * n:
                self.note("c:erdos-gallai")
                cycle = self.branch_c()
                if cycle is None:
                    self.note("c:no-path")
            if cycle is None:
                self.note("d:red-pairs")
                cycle, path = self.branch_d()
        return self.finish(cycle, path)

    def finish(self, cycle: CycleResult, path: Optional[PathResult]) -> RouteCertificate:
        n = self.n
        need_p, need_c = 2 * _ceil_half(n), 2 * (n // 2)
        if cycle is None or cycle.problem(self.h) is not None:
            raise InternalError(f"invalid cycle: {cycle and cycle.problem(self.h)}")
        if cycle.length >= need_p:
            path = cycle.as_path()
        else:
            ext = self.extend_from_cycle(cycle)
            if path is None or (ext.order > path.order):
                path = ext
        if path.problem(self.h) is not None:
            raise InternalError(f"invalid path: {path.problem(self.h)}")
        if cycle.length < need_c:
            self.fail(f"cycle has {cycle.length} < {need_c} vertices")
        if path.order < need_p:
            self.fail(f"path has {path.order} < {need_p} vertices")
        cert = RouteCertificate(n, self.export(path), self.export(cycle), tuple(self.st.trace))
        for obj in (cert.path, cert.cycle):
            if obj.problem(self.g) is not None:
                raise InternalError(f"exported certificate invalid: {obj.problem(self.g)}")
        return cert

    def extend_from_cycle(self, cycle: CycleResult) -> PathResult:
        """Open the cycle at its best point and extend greedily at both ends."""
        h, c = self.h, cycle.color
        best = cycle.as_path()
        verts = list(cycle.vertices)
        for r in range(len(verts)):
            seq = verts[r:] + verts[:r]
            used = set(seq)
            for _ in range(2):
                while True:
                    end = seq[-1]
                    opts = [v for v in _nbrs(h, end, c) if v not in used]
                    if not opts:
                        break
                    seq.append(opts[0])
                    used.add(opts[0])
                seq.reverse()
            if len(seq) > best.order:
                best = PathResult(c, tuple(seq))
        return best

    # branch (a)
    def branch_a(self) -> CycleResult:
        st, n, eta = self.st, self.n, self.p.eta
        theta = 9 * eta
        ys = st.y1p
        if popcount(ys) > (HALF + theta) * n:
            ys = _top(self.h, Side.Y, BLUE, st.y1p, st.x1p, _ceil_half(n))
            self.note("a:trim-Y1'")
        return big_part_prop(self.h, st.x1p, ys, self.p.with_theta(theta), BLUE, self.strict)

    # branch (b)
    def branch_b(self) -> CycleResult:
        st, n, h = self.st, self.n, self.h
        pair = long_path_prop(h, st.x1p, st.y1p, self.p.with_theta(9 * self.p.eta), BLUE, self.strict)
        m = _ceil_half(n)
        if popcount(pair.xs) < m or popcount(pair.ys) < m:
            self.fail("pair too small for a cycle on 2*ceil(n/2) vertices")
        xsel = _top(h, Side.X, BLUE, pair.xs, pair.ys, m)
        ysel = _top(h, Side.Y, BLUE, pair.ys, xsel, m)
        rows = h.rows(BLUE)
        x0 = min(members(xsel), key=lambda x: (popcount(rows[x] & ysel), x))
        for y in members(rows[x0] & ysel):
            seq = _ham_path(h, BLUE, xsel, ysel, VertexRef(Side.X, x0), VertexRef(Side.Y, y), self.budget)
            if seq is not None:
                return CycleResult(BLUE, tuple(seq))
        nb = members(rows[x0] & ysel)
        if not nb:
            self.fail("no blue edge at the chosen vertex")
        # classify the failure through the lemma's own extraction
        extract_ham_path(pair, xsel, ysel, VertexRef(Side.X, x0), VertexRef(Side.Y, nb[0]), self.budget)
        raise InternalError("unreachable")

    # branch (c)
    def branch_c(self) -> Optional[CycleResult]:
        st, n, h, eta = self.st, self.n, self.h, self.p.eta
        ny1, nx1 = popcount(st.y1p), popcount(st.x1p)
        k = max(math.ceil(24 * eta * n), ny1 - nx1 + 1, 2)
        if k > ny1 or k - 1 > popcount(st.x2p):
            return None
        self.note(f"c:k={k}")
        view = _view(h, BLUE, st.x2p, st.y1p)
        kk = 2 * k - 1
        tried = 0
        if 2 * view.num_edges() > kk * (view.N - 1):
            self.note("c:eg-cycle")
            cyc = erdos_gallai_cycle(view, kk, self.budget)
            L = len(cyc)
            for r in range(L):
                for seq in (cyc[r:] + cyc[:r], (cyc[r::-1] + cyc[:r:-1])):
                    if seq[0].side is Side.Y:
                        res = self.close_c(seq[:kk], k)
                        if res is not None:
                            return res
        else:
            self.note("c:direct-search")
        for p in _yy_paths(h, BLUE, st.x2p, st.y1p, k, self.budget):
            tried += 1
            res = self.close_c(p, k)
            if res is not None:
                return res
            if tried > 200:
                break
        return None

    def close_c(self, p: list[VertexRef], k: int) -> Optional[CycleResult]:
        st, h = self.st, self.h
        on_p = sum(1 << v.index for v in p if v.side is Side.Y)
        for seq in (p, p[::-1]):
            y, yend = seq[0], seq[-1]
            m = popcount(st.y1p) - k + 1
            ysel = (st.y1p & ~on_p) | 1 << y.index
            for x in members(h.rows(BLUE, Side.Y)[yend.index] & st.x1p):
                if popcount(st.x1p) < m:
                    return None
                xsel = _top(h, Side.X, BLUE, st.x1p, ysel, m, 1 << x)
                tail = _ham_path(h, BLUE, xsel, ysel, VertexRef(Side.X, x), y, self.budget)
                if tail is not None:
                    return CycleResult(BLUE, tuple(list(seq) + tail[:-1]))
        return None

    # branch (d)
    def branch_d(self):
        st, eta = self.st, self.p.eta
        pa = long_path_prop(self.h, st.x1p, st.y2p, self.p.with_theta(9 * eta), RED, self.strict)
        pb = long_path_prop(self.h, st.x2p, st.y1p, self.p.with_theta(12 * eta), RED, self.strict)
        sep = separator_partition(self.h, pa, pb)
        self.note(f"d:flow={sep.flow}")
        if sep.flow >= 2:
            return self.two_path_cycle(sep, pa, pb), None
        x1h, x2h, y1h, y2h = sep.hats
        w = sep.separator[0] if sep.separator else None
        if w is not None and w.side is Side.X:
            self.h = self.h.transpose()
            self.st.transposed = not self.st.transposed
            x1h, x2h, y1h, y2h = y2h, y1h, x2h, x1h
            w = w.swapped()
            self.note("d:w-in-x")
        st.hats, st.w = (x1h, x2h, y1h, y2h), w
        return self.hat_cases(x1h, x2h, y1h, y2h, w)

    def two_path_cycle(self, sep: SeparatorResult, pa: BiConnectedPair, pb: BiConnectedPair) -> CycleResult:
        h = self.h
        p1, p2 = sep.paths
        on_paths = set(p1) | set(p2)

        def pool(pair, keep):
            xs = pair.xs & ~sum(1 << v.index for v in on_paths if v.side is Side.X and v not in keep)
            ys = pair.ys & ~sum(1 << v.index for v in on_paths if v.side is Side.Y and v not in keep)
            return xs, ys

        a1, b1, a2, b2 = p1[0], p1[-1], p2[0], p2[-1]
        ax, ay = pool(pa, {a1, a2})
        bx, by = pool(pb, {b1, b2})
        qa = _path_between_max(h, RED, ax, ay, a2, a1, budget=self.budget)
        qb = _path_between_max(h, RED, bx, by, b1, b2, budget=self.budget)
        if qa is None or qb is None:
            self.fail("could not route through both red pairs")
        seq = list(p1) + qb[1:] + list(p2[::-1])[1:] + qa[1:-1]
        self.note("d:two-red-paths")
        return CycleResult(RED, tuple(seq))

    def block_cycle(self, c: Color, xs: int, ys: int, m: int, label: str) -> Optional[CycleResult]:
        cyc = _cycle_in_block(self.h, c, xs, ys, m, self.budget)
        if cyc is not None:
            self.note(label)
        return cyc

    def red_or_w(self, x1h, y1h, y2h, w) -> CycleResult:
        n, h = self.n, self.h
        half = _ceil_half(n)
        if 2 * popcount(y2h) >= n:
            cyc = self.block_cycle(RED, x1h, y2h, half, "d:red-X1^Y2^")
            if cyc is not None:
                return cyc
        if w is None:
            self.fail("hat sides too small and no separator vertex to borrow")
        wy = 1 << w.index
        if 8 * _deg(h, Side.Y, w.index, RED, x1h) >= n:
            cyc = self.block_cycle(RED, x1h, y2h | wy, half, "d:red-with-w")
        else:
            cyc = self.block_cycle(BLUE, x1h, y1h | wy, half, "d:blue-with-w")
        if cyc is None:
            self.fail("no cycle through the separator vertex")
        return cyc

    def hat_cases(self, x1h, x2h, y1h, y2h, w):
        n, h = self.n, self.h
        half = _ceil_half(n)
        for i, (xs, ys) in enumerate(((x1h, y1h), (x2h, y2h)), start=1):
            if 2 * popcount(xs) >= n and 2 * popcount(ys) >= n:
                cyc = self.block_cycle(BLUE, xs, ys, half, f"d:hat-blue-{i}")
                if cyc is not None:
                    return cyc, None
        if popcount(x1h) < popcount(x2h):
            x1h, x2h, y1h, y2h = x2h, x1h, y2h, y1h
            self.note("d:swap-hats")
        match, cover = block_cover(h, BLUE, x1h, y2h)
        nu = len(match)
        self.note(f"d:blue-cross-matching={min(nu, 2)}")
        if nu >= 2:
            edges = sorted((x, y) for y, x in match.items())
            for i in range(len(edges)):
                for j in range(len(edges)):
                    if i == j:
                        continue
                    (xa, ya), (xb, yb) = edges[i], edges[j]
                    pa = _path_between_max(h, BLUE, x1h, y1h, VertexRef(Side.X, xa), VertexRef(Side.X, xb),
                                           budget=self.budget)
                    pb = _path_between_max(h, BLUE, x2h, y2h, VertexRef(Side.Y, yb), VertexRef(Side.Y, ya),
                                           budget=self.budget)
                    if pa and pb:
                        cyc = CycleResult(BLUE, tuple(pa + pb))
                        if cyc.length >= 2 * half:
                            return cyc, None
            self.fail("blue cross matching did not yield a long blue cycle")
        if nu == 0:
            return self.red_or_w(x1h, y1h, y2h, w), None
        if cover.sy:
            v = lowest(cover.sy)
            self.note("d:v*")
            if 8 * _deg(h, Side.Y, v, RED, x1h) < n:
                y2h &= ~(1 << v)
                y1h |= 1 << v
                self.note("d:move-v*")
            return self.red_or_w(x1h, y1h, y2h, w), None
        u = lowest(cover.sx)
        self.note("d:u*")
        (cx, cy), = [(x, y) for y, x in match.items()]
        x1_before = x1h
        if 8 * _deg(h, Side.X, u, BLUE, y2h) < n:
            x1h &= ~(1 << u)
            x2h |= 1 << u
            self.note("d:move-u*")
        if 2 * popcount(y2h) >= n:
            if 2 * popcount(x1h) >= n:
                cyc = self.block_cycle(RED, x1h, y2h, half, "d:red-X1^Y2^")
                if cyc is not None:
                    return cyc, None
            if 2 * popcount(x2h) >= n:
                cyc = self.block_cycle(BLUE, x2h, y2h, half, "d:blue-X2^Y2^")
                if cyc is not None:
                    return cyc, None
            self.fail("no long cycle after moving u*")
        self.note("d:final")
        cyc = self.block_cycle(RED, x1h, y2h, n // 2, "d:red-floor")
        if cyc is None:
            self.fail("no red cycle on 2*floor(n/2) vertices")
        path = self.cross_path(x1_before & ~(1 << u) | 1 << cx, y1h, x2h & ~(1 << cx), y2h, cx, cy)
        return cyc, path

    def cross_path(self, xa, ya, xb, yb, cx, cy) -> Optional[PathResult]:
        """Blue path through the single blue cross edge (cx, cy)."""
        h = self.h
        left = _path_ending_at(h, BLUE, xa, ya, VertexRef(Side.X, cx), self.budget)
        right = _path_ending_at(h, BLUE, xb, yb, VertexRef(Side.Y, cy), self.budget)
        if left is None or right is None:
            return None
        self.note("d:cross-path")
        return PathResult(BLUE, tuple(left + right[::-1]))


def _nbrs(h: ColoredBigraph, v: VertexRef, c: Color) -> list[VertexRef]:
    return [VertexRef(v.side.other, i) for i in members(h.nbrs(v, c))]


def _path_ending_at(h, c, xs, ys, end: VertexRef, budget) -> Optional[list[VertexRef]]:
    """Longest path found inside [xs, ys] that ends at ``end`` (end vertex last)."""
    xs |= 1 << end.index if end.side is Side.X else 0
    ys |= 1 << end.index if end.side is Side.Y else 0
    other_side = ys if end.side is Side.X else xs
    best = None
    for t in sorted(members(other_side)):
        tv = VertexRef(end.side.other, t)
        seq = _path_between_max(h, c, xs, ys, tv, end, shrink=1, budget=budget)
        if seq is not None and (best is None or len(seq) > len(best)):
            best = seq
    return best if best is not None else [end]


def _yy_paths(h: ColoredBigraph, c: Color, xs: int, ys: int, k: int, budget):
    """c-paths inside [xs, ys] with k Y-vertices and k-1 X-vertices, both ends in Y."""
    rx, ry = h.rows(c, Side.X), h.rows(c, Side.Y)
    count = [0]

    def rec(path, used_x, used_y):
        count[0] += 1
        if budget is not None and count[0] > budget:
            raise SearchCapExceeded("path search budget exhausted")
        last = path[-1]
        if last.side is Side.Y:
            if popcount(used_y) == k:
                yield list(path)
                return
            for x in members(ry[last.index] & xs & ~used_x):
                path.append(VertexRef(Side.X, x))
                yield from rec(path, used_x | 1 << x, used_y)
                path.pop()
        else:
            for y in members(rx[last.index] & ys & ~used_y):
                path.append(VertexRef(Side.Y, y))
                yield from rec(path, used_x, used_y | 1 << y)
                path.pop()

    for y in members(ys):
        yield from rec([VertexRef(Side.Y, y)], 0, 1 << y)


def extremal_route(g: ColoredBigraph, w: ExtremalWitness, params: RouteParams,
                   check_hypotheses: bool = True, budget: Optional[int] = DEFAULT_BUDGET) -> RouteCertificate:
    """Certified monochromatic path (>= 2*ceil(n/2)) and cycle (>= 2*floor(n/2)).

    With ``check_hypotheses`` the parameter, degree and witness hypotheses are
    enforced up front (violations raise :class:`PreconditionError`) and any
    later failure is an :class:`InternalError`.  With it off, the same
    construction runs on arbitrary input and a failure to reach the target
    lengths raises :class:`BelowRegimeError`; returned certificates are
    validated either way.
    """
    n = g.n
    _check_shape(g, w)
    if check_hypotheses:
        probs = params.pipeline_problems(n)
        d = degree_problem(g, params.gamma)
        if d:
            probs.append(d)
        if not verify_witness(g, w.with_eta(params.eta)):
            probs.append(f"witness does not verify at eta={params.eta} "
                         f"(smallest valid eta is {witness_eta(g, w)})")
        _raise_pre(probs)
    return _Router(g, w, params, check_hypotheses, budget).run()
