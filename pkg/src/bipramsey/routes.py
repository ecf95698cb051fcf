"""Long monochromatic paths and cycles.

Exact searches work on one color class at a time, one connected component at a
time.  Vertices of a component that have identical neighborhoods (twins) are
interchangeable in any path, so the memoized search runs over *how many*
vertices of each twin class have been used rather than over vertex subsets.
For block-structured graphs this collapses the state space to a handful of
classes; for graphs without twins it degenerates to the usual
(visited-set, endpoint) dynamic program.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .bigraph import (BLUE, RED, Color, ColoredBigraph, Side, VertexRef, full_mask,
                      lowest, members, popcount)
from .errors import PreconditionError, SearchCapExceeded

DEFAULT_CAP = 12
DEFAULT_MAX_STATES = 4_000_000

if sys.getrecursionlimit() < 10_000:
    sys.setrecursionlimit(10_000)


# -- results ---------------------------------------------------------------

def _walk_problems(g: ColoredBigraph, color: Color, verts: Sequence[VertexRef], closed: bool):
    if len(set(verts)) != len(verts):
        return "repeated vertex"
    for v in verts:
        if not 0 <= v.index < g.n:
            return f"vertex {v} out of range"
    pairs = list(zip(verts, verts[1:]))
    if closed and len(verts) > 2:
        pairs.append((verts[-1], verts[0]))
    for a, b in pairs:
        if a.side is b.side:
            return f"{a} and {b} are on the same side"
        x, y = (a, b) if a.side is Side.X else (b, a)
        if not g.has_edge(x.index, y.index, color):
            return f"edge {x}{y} not {color}"
    return None


@dataclass(frozen=True)
class PathResult:
    color: Color
    vertices: tuple[VertexRef, ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    def problem(self, g: ColoredBigraph) -> Optional[str]:
        if len(self.vertices) == 1:
            return "a path needs at least one edge"
        return _walk_problems(g, self.color, self.vertices, closed=False)

    def is_valid(self, g: ColoredBigraph) -> bool:
        return self.problem(g) is None


@dataclass(frozen=True)
class CycleResult:
    color: Color
    vertices: tuple[VertexRef, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def problem(self, g: ColoredBigraph) -> Optional[str]:
        if len(self.vertices) < 4:
            return "a cycle needs at least 4 vertices"
        return _walk_problems(g, self.color, self.vertices, closed=True)

    def is_valid(self, g: ColoredBigraph) -> bool:
        return self.problem(g) is None

    def as_path(self) -> PathResult:
        return PathResult(self.color, self.vertices)


# -- twin-class decomposition ---------------------------------------------

class _ClassGraph:
    """One connected component of a color class, with twins merged."""

    def __init__(self, verts: list[VertexRef], nbr_of):
        groups: dict[tuple, list[VertexRef]] = {}
        for v in verts:
            groups.setdefault((v.side, nbr_of(v)), []).append(v)
        self.members = list(groups.values())
        self.side = [m[0].side for m in self.members]
        self.sizes = [len(m) for m in self.members]
        C = len(self.members)
        first = [m[0] for m in self.members]
        keys = list(groups.keys())
        self.adj = []
        for i in range(C):
            nb = keys[i][1]
            self.adj.append(tuple(j for j in range(C)
                                  if self.side[j] is not self.side[i] and nb >> first[j].index & 1))
        self.nx = sum(s for s, sd in zip(self.sizes, self.side) if sd is Side.X)
        self.ny = sum(self.sizes) - self.nx

    def path_bound(self) -> int:
        a, b = self.nx, self.ny
        return 2 * min(a, b) + (a != b)

    def cycle_bound(self) -> int:
        return 2 * min(self.nx, self.ny)

    def realize(self, class_seq: list[int]) -> tuple[VertexRef, ...]:
        pools = [list(m) for m in self.members]
        return tuple(pools[c].pop(0) for c in class_seq)


def color_components(g: ColoredBigraph, color: Color) -> list[tuple[int, int]]:
    """Connected components (xs, ys) of the color class, isolated vertices dropped."""
    rx, ry = g.rows(color, Side.X), g.rows(color, Side.Y)
    seen_x = seen_y = 0
    out = []
    for start in range(g.n):
        if seen_x >> start & 1 or not rx[start]:
            continue
        cx, cy = 1 << start, 0
        fx = 1 << start
        while fx:
            ny = 0
            for x in members(fx):
                ny |= rx[x]
            ny &= ~cy
            cy |= ny
            nx = 0
            for y in members(ny):
                nx |= ry[y]
            fx = nx & ~cx
            cx |= fx
        seen_x |= cx
        seen_y |= cy
        out.append((cx, cy))
    return out


def _class_graph(g: ColoredBigraph, color: Color, xs: int, ys: int) -> _ClassGraph:
    rx, ry = g.rows(color, Side.X), g.rows(color, Side.Y)
    verts = [VertexRef(Side.X, i) for i in members(xs)] + [VertexRef(Side.Y, i) for i in members(ys)]

    def nbr_of(v):
        return rx[v.index] & ys if v.side is Side.X else ry[v.index] & xs
    return _ClassGraph(verts, nbr_of)


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise SearchCapExceeded(f"search exceeded {self.limit} states")


def _longest_path_in(cg: _ClassGraph, budget: _Budget) -> list[int]:
    """Class sequence of a longest path in the component."""
    C = len(cg.sizes)
    sizes, adj, side = cg.sizes, cg.adj, cg.side
    is_x = [s is Side.X for s in side]
    radix, r = [], 1
    for s in sizes:
        radix.append(r)
        r *= s + 1
    counts = [0] * C
    memo: dict[int, int] = {}
    choice: dict[int, int] = {}
    nx, ny = cg.nx, cg.ny

    def ext(code, cur, ux, uy):
        key = code * C + cur
        v = memo.get(key)
        if v is not None:
            return v
        budget.tick()
        rx, ry = nx - ux, ny - uy
        if is_x[cur]:
            ub = 2 * min(rx, ry) + (ry > rx)
        else:
            ub = 2 * min(rx, ry) + (rx > ry)
        best, nxt = 0, -1
        if ub:
            for d in adj[cur]:
                if counts[d] < sizes[d]:
                    counts[d] += 1
                    if is_x[d]:
                        e = 1 + ext(code + radix[d], d, ux + 1, uy)
                    else:
                        e = 1 + ext(code + radix[d], d, ux, uy + 1)
                    counts[d] -= 1
                    if e > best:
                        best, nxt = e, d
                        if best == ub:
                            break
        memo[key] = best
        choice[key] = nxt
        return best

    bound = cg.path_bound()
    best_len, best_start = 0, -1
    for c in range(C):
        counts[c] = 1
        e = 1 + ext(radix[c], c, int(is_x[c]), int(not is_x[c]))
        counts[c] = 0
        if e > best_len:
            best_len, best_start = e, c
            if best_len == bound:
                break
    seq = [best_start]
    code = radix[best_start]
    while True:
        nxt = choice.get(code * C + seq[-1], -1)
        if nxt < 0:
            break
        seq.append(nxt)
        code += radix[nxt]
    return seq


def _longest_cycle_in(cg: _ClassGraph, budget: _Budget, floor: int = 0) -> Optional[list[int]]:
    """Class sequence of a longest cycle longer than ``floor`` (None if there is none)."""
    C = len(cg.sizes)
    sizes, adj = cg.sizes, cg.adj
    is_x = [s is Side.X for s in cg.side]
    radix, r = [], 1
    for s in sizes:
        radix.append(r)
        r *= s + 1
    best_len, best_seq = floor, None
    for anchor in range(C):
        ax = sum(sizes[c] for c in range(anchor, C) if is_x[c])
        ay = sum(sizes[c] for c in range(anchor, C) if not is_x[c])
        bound = 2 * min(ax, ay)
        if bound <= best_len:
            continue
        closes = [anchor in adj[c] for c in range(C)]
        counts = [0] * C
        memo: dict[int, int] = {}
        choice: dict[int, int] = {}

        def cyc(code, cur, total):
            key = code * C + cur
            v = memo.get(key)
            if v is not None:
                return v
            budget.tick()
            best, nxt = (total if closes[cur] and total >= 4 else -1), -1
            if best < bound:
                for d in adj[cur]:
                    if d >= anchor and counts[d] < sizes[d]:
                        counts[d] += 1
                        e = cyc(code + radix[d], d, total + 1)
                        counts[d] -= 1
                        if e > best:
                            best, nxt = e, d
                            if best == bound:
                                break
            memo[key] = best
            choice[key] = nxt
            return best

        counts[anchor] = 1
        got = cyc(radix[anchor], anchor, 1)
        if got > best_len:
            best_len = got
            seq = [anchor]
            code = radix[anchor]
            while True:
                nxt = choice.get(code * C + seq[-1], -1)
                if nxt < 0:
                    break
                seq.append(nxt)
                code += radix[nxt]
            best_seq = seq
    return best_seq


def _check_cap(g: ColoredBigraph, cap: Optional[int]):
    if cap is not None and g.n > cap:
        raise SearchCapExceeded(f"n={g.n} exceeds the search cap {cap}")


def longest_color_path(g: ColoredBigraph, color: Color, cap: Optional[int] = DEFAULT_CAP,
                       max_states: Optional[int] = DEFAULT_MAX_STATES) -> PathResult:
    _check_cap(g, cap)
    budget = _Budget(max_states)
    comps = [_class_graph(g, color, xs, ys) for xs, ys in color_components(g, color)]
    comps.sort(key=lambda cg: -cg.path_bound())
    best: tuple[VertexRef, ...] = ()
    for cg in comps:
        if cg.path_bound() <= len(best):
            break
        verts = cg.realize(_longest_path_in(cg, budget))
        if len(verts) > len(best):
            best = verts
    return PathResult(color, best)


def longest_color_cycle(g: ColoredBigraph, color: Color, cap: Optional[int] = DEFAULT_CAP,
                        max_states: Optional[int] = DEFAULT_MAX_STATES) -> Optional[CycleResult]:
    _check_cap(g, cap)
    budget = _Budget(max_states)
    comps = [_class_graph(g, color, xs, ys) for xs, ys in color_components(g, color)]
    comps.sort(key=lambda cg: -cg.cycle_bound())
    best: Optional[CycleResult] = None
    for cg in comps:
        floor = best.length if best else 0
        if cg.cycle_bound() <= floor:
            break
        seq = _longest_cycle_in(cg, budget, floor)
        if seq is not None:
            best = CycleResult(color, cg.realize(seq))
    return best


def longest_mono_path_exact(g: ColoredBigraph, cap: Optional[int] = DEFAULT_CAP,
                            max_states: Optional[int] = DEFAULT_MAX_STATES) -> PathResult:
    """A maximum-order monochromatic path over both colors.

    Paths are counted in vertices and need at least one edge; an edgeless graph
    yields an empty result of order 0.  ``cap`` bounds ``n``; ``max_states``
    bounds the number of search states.  Exceeding either raises
    :class:`SearchCapExceeded`.
    """
    red = longest_color_path(g, RED, cap, max_states)
    blue = longest_color_path(g, BLUE, cap, max_states)
    return blue if blue.order > red.order else red


def longest_mono_cycle_exact(g: ColoredBigraph, cap: Optional[int] = DEFAULT_CAP,
                             max_states: Optional[int] = DEFAULT_MAX_STATES) -> Optional[CycleResult]:
    """A longest monochromatic cycle (at least 4 vertices), or None."""
    red = longest_color_cycle(g, RED, cap, max_states)
    blue = longest_color_cycle(g, BLUE, cap, max_states)
    if red is None:
        return blue
    if blue is None:
        return red
    return blue if blue.length > red.length else red


# -- plain graphs ----------------------------------------------------------

class SimpleGraphView:
    """Undirected loopless graph on local vertices ``0..N-1`` stored as bitmasks.

    ``labels`` optionally maps local vertices back to :class:`VertexRef`;
    ``parts`` optionally records a bipartition as two local bitmasks.
    """

    def __init__(self, adj: Sequence[int], labels: Optional[Sequence] = None,
                 parts: Optional[tuple[int, int]] = None):
        self.adj = list(adj)
        self.N = len(self.adj)
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise PreconditionError("loops are not allowed")
            for u in members(row):
                if not self.adj[u] >> v & 1:
                    raise PreconditionError("adjacency must be symmetric")
        self.labels = list(labels) if labels is not None else None
        self.parts = parts
        self._index = {lab: i for i, lab in enumerate(self.labels)} if self.labels else {}

    @classmethod
    def from_edges(cls, N: int, edges: Iterable[tuple[int, int]], parts=None) -> "SimpleGraphView":
        adj = [0] * N
        for u, v in edges:
            if u == v:
                raise PreconditionError("loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(adj, parts=parts)

    @classmethod
    def bipartite(cls, m: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraphView":
        """Balanced bipartite graph: u_i is local i, v_j is local m + j."""
        return cls.from_edges(2 * m, ((i, m + j) for i, j in edges),
                              parts=(full_mask(m), full_mask(m) << m))

    @classmethod
    def from_color(cls, g: ColoredBigraph, color: Optional[Color], xs: Optional[int] = None,
                   ys: Optional[int] = None) -> "SimpleGraphView":
        """The ``color`` subgraph of G induced on X-subset ``xs`` and Y-subset ``ys``."""
        xs = full_mask(g.n) if xs is None else xs
        ys = full_mask(g.n) if ys is None else ys
        xl, yl = members(xs), members(ys)
        pos_y = {y: len(xl) + j for j, y in enumerate(yl)}
        rows = g.rows(color)
        adj = [0] * (len(xl) + len(yl))
        for i, x in enumerate(xl):
            for y in members(rows[x] & ys):
                adj[i] |= 1 << pos_y[y]
                adj[pos_y[y]] |= 1 << i
        labels = [VertexRef(Side.X, x) for x in xl] + [VertexRef(Side.Y, y) for y in yl]
        parts = (full_mask(len(xl)), full_mask(len(yl)) << len(xl))
        return cls(adj, labels, parts)

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def local(self, v) -> int:
        if isinstance(v, VertexRef):
            try:
                return self._index[v]
            except KeyError:
                raise PreconditionError(f"{v} is not a vertex of this view") from None
        if not 0 <= v < self.N:
            raise PreconditionError(f"vertex {v} out of range")
        return v

    def label(self, v: int):
        return self.labels[v] if self.labels else v

    def side_of(self, v: int) -> int:
        if self.parts is None:
            raise PreconditionError("graph has no recorded bipartition")
        return 0 if self.parts[0] >> v & 1 else 1

    def is_cycle(self, seq: Sequence[int]) -> bool:
        if len(seq) < 3 or len(set(seq)) != len(seq):
            return False
        return all(self.adj[a] >> b & 1 for a, b in zip(seq, list(seq[1:]) + [seq[0]]))


def _connected_within(adj, mask: int, start: int) -> bool:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in members(frontier):
            nxt |= adj[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen & mask == mask


def hamiltonian_path(adj: Sequence[int], vmask: int, s: int, t: int,
                     budget: Optional[int] = None) -> Optional[list[int]]:
    """Path from s to t visiting exactly the vertices of ``vmask`` (or None).

    Backtracking that always extends toward the most constrained vertex, with
    dead-end, forced-move and connectivity pruning.  ``budget`` caps the number
    of search nodes; running out raises :class:`SearchCapExceeded`.
    """
    if not (vmask >> s & 1 and vmask >> t & 1):
        return None
    if s == t:
        return [s] if vmask == 1 << s else None
    if not _connected_within(adj, vmask, s):
        return None
    tbit = 1 << t
    path = [s]
    counter = _Budget(budget)

    def rec(cur, unvisited):
        if unvisited == tbit:
            if adj[cur] & tbit:
                path.append(t)
                return True
            return False
        counter.tick()
        curbit = 1 << cur
        forced = 0
        m = unvisited & ~tbit
        while m:
            b = m & -m
            m ^= b
            u = b.bit_length() - 1
            links = popcount(adj[u] & (unvisited | curbit))
            if links < 2:
                return False
            if links == 2 and adj[u] & curbit:
                forced |= b
        if not adj[t] & (unvisited | curbit) & ~tbit:
            return False
        if forced:
            if forced & (forced - 1):
                return False
            cands = [lowest(forced)]
        else:
            opts = adj[cur] & unvisited & ~tbit
            cands = sorted(members(opts), key=lambda v: (popcount(adj[v] & unvisited), v))
        for v in cands:
            rest = unvisited & ~(1 << v)
            if not _connected_within(adj, rest | (1 << v), v):
                continue
            path.append(v)
            if rec(v, rest):
                return True
            path.pop()
        return False

    return path if rec(s, vmask & ~(1 << s)) else None


def ham_path_between(h: SimpleGraphView, x, y, budget: Optional[int] = None) -> Optional[list]:
    """Hamiltonian path of a balanced bipartite view from x to y (opposite sides).

    Returns the vertex sequence (as labels when the view carries them) or None
    when no such path exists.
    """
    if h.parts is None:
        raise PreconditionError("ham_path_between needs a bipartite view")
    u, v = h.local(x), h.local(y)
    if h.side_of(u) == h.side_of(v):
        raise PreconditionError("endpoints must lie on opposite sides")
    if popcount(h.parts[0]) != popcount(h.parts[1]):
        raise PreconditionError("ham_path_between needs balanced parts")
    seq = hamiltonian_path(h.adj, full_mask(h.N), u, v, budget)
    if seq is None:
        return None
    return [h.label(i) for i in seq]


def berge_check(h: SimpleGraphView) -> bool:
    """Degree-sequence test for Hamiltonian bi-connectedness.

    Sort each side's degrees ascending (ties by vertex index), take the
    smallest 1-based indices j, k with d(u_j) <= j+1 and d(v_k) <= k+1, and
    require d(u_j) + d(v_k) >= m + 2.  Since every degree is at most m, index
    j = m always qualifies, so both indices exist.
    """
    if h.parts is None:
        raise PreconditionError("berge_check needs a bipartite view")
    U, V = members(h.parts[0]), members(h.parts[1])
    if len(U) != len(V):
        raise PreconditionError("berge_check needs balanced parts")
    m = len(U)
    if m < 2:
        raise PreconditionError("berge_check needs at least 4 vertices")

    def first_small(side):
        degs = sorted((h.degree(v), v) for v in side)
        for j, (d, _) in enumerate(degs, start=1):
            if d <= j + 1:
                return d
        return None

    du, dv = first_small(U), first_small(V)
    if du is None or dv is None:
        return True
    return du + dv >= m + 2


# -- Erdős–Gallai long cycles ---------------------------------------------

def _greedy_path(adj, alive: int, start: int) -> list[int]:
    path = [start]
    used = 1 << start
    for _ in range(2):
        while True:
            end = path[-1]
            opts = adj[end] & alive & ~used
            if not opts:
                break
            v = min(members(opts), key=lambda u: (popcount(adj[u] & alive & ~used), u))
            path.append(v)
            used |= 1 << v
        path.reverse()
    return path


def _close_path(adj, path: list[int]) -> list[int]:
    """Longest cycle obtained by closing either end of the path through its furthest neighbor."""
    best: list[int] = []
    for p in (path, path[::-1]):
        end = p[0]
        for j in range(len(p) - 1, 1, -1):
            if adj[end] >> p[j] & 1:
                if j + 1 > len(best):
                    best = p[: j + 1]
                break
    return best


def _cycle_at_least(adj, N: int, length: int, budget: _Budget) -> Optional[list[int]]:
    """Some cycle with at least ``length`` vertices, by exhaustive search."""
    for s in range(N):
        allowed = full_mask(N) & ~full_mask(s + 1)
        path = [s]

        def rec(cur, used):
            budget.tick()
            if len(path) >= length and len(path) >= 3 and adj[cur] >> s & 1:
                return True
            for v in members(adj[cur] & allowed & ~used):
                path.append(v)
                if rec(v, used | (1 << v)):
                    return True
                path.pop()
            return False

        if rec(s, 1 << s):
            return list(path)
    return None


def erdos_gallai_cycle(h: SimpleGraphView, k: int, budget: Optional[int] = None) -> list:
    """A cycle with at least k+1 vertices in a graph with more than k(N-1)/2 edges.

    First strips vertices of degree at most k/2 (which keeps the edge-count
    condition), then closes greedily grown maximal paths through the
    endpoint's furthest neighbor.  If that falls short, an exhaustive search
    is run; the edge-count condition guarantees it succeeds.
    """
    if k < 2:
        raise PreconditionError("k must be at least 2")
    N, adj = h.N, h.adj
    e = h.num_edges()
    if 2 * e <= k * (N - 1):
        raise PreconditionError(f"need e(h) > k(N-1)/2; have e={e}, k={k}, N={N}")
    alive = full_mask(N)
    deg = [popcount(r) for r in adj]
    changed = True
    while changed:
        changed = False
        for v in members(alive):
            if 2 * deg[v] <= k:
                alive &= ~(1 << v)
                for u in members(adj[v] & alive):
                    deg[u] -= 1
                changed = True
    best: list[int] = []
    for v in members(alive):
        cyc = _close_path(adj, _greedy_path(adj, alive, v))
        if len(cyc) > len(best):
            best = cyc
        if len(best) >= k + 1:
            break
    if len(best) < k + 1:
        found = _cycle_at_least(adj, N, k + 1, _Budget(budget))
        if found is None:
            raise PreconditionError("no long cycle found; the edge-count condition must be violated")
        best = found
    return [h.label(v) for v in best]
