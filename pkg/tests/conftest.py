"""Brute-force oracles shared by the test modules.

These deliberately avoid the package's search code: plain DFS over simple
paths, and enumeration of edge subsets for matchings.
"""

import itertools

import pytest
from hypothesis import settings

from bipramsey.bigraph import BLUE, RED, ColoredBigraph, build

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def _adjacency(g: ColoredBigraph, color):
    # vertices 0..n-1 are X, n..2n-1 are Y
    adj = {v: set() for v in range(2 * g.n)}
    for x, y in g.edges(color):
        adj[x].add(g.n + y)
        adj[g.n + y].add(x)
    return adj


def brute_longest_path(g: ColoredBigraph) -> int:
    best = 0
    for color in (RED, BLUE):
        adj = _adjacency(g, color)

        def dfs(v, seen):
            nonlocal best
            best = max(best, len(seen))
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    dfs(u, seen)
                    seen.remove(u)

        for v in adj:
            if adj[v]:
                dfs(v, {v})
    return best


def brute_longest_cycle(g: ColoredBigraph) -> int:
    best = 0
    for color in (RED, BLUE):
        adj = _adjacency(g, color)

        def dfs(start, v, seen):
            nonlocal best
            for u in adj[v]:
                if u == start and len(seen) >= 4:
                    best = max(best, len(seen))
                elif u > start and u not in seen:
                    seen.add(u)
                    dfs(start, u, seen)
                    seen.remove(u)

        for v in adj:
            dfs(v, v, {v})
    return best


def brute_components(g: ColoredBigraph, color):
    adj = _adjacency(g, color)
    seen, comps = set(), []
    for v in adj:
        if v in seen or not adj[v]:
            continue
        stack, comp = [v], set()
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(adj[u] - comp)
        seen |= comp
        comps.append(comp)
    return comps


def brute_connected_matching(g: ColoredBigraph) -> int:
    """Largest set of disjoint same-color edges inside one component."""
    best = 0
    n = g.n
    for color in (RED, BLUE):
        for comp in brute_components(g, color):
            edges = [(x, y) for x, y in g.edges(color) if x in comp]
            for size in range(min(len(edges), n), best, -1):
                found = False
                for sub in itertools.combinations(edges, size):
                    if len({e[0] for e in sub}) == size and len({e[1] for e in sub}) == size:
                        found = True
                        break
                if found:
                    best = size
                    break
    return best


def bipartite_cycle(n: int, color=RED) -> ColoredBigraph:
    """The 2n-cycle x0 y0 x1 y1 ... x(n-1) y(n-1)."""
    edges = [(i, i) for i in range(n)] + [((i + 1) % n, i) for i in range(n)]
    return build(n, edges, []) if color is RED else build(n, [], edges)


@pytest.fixture
def tmp_graph(tmp_path):
    from bipramsey.bigraph import save

    def write(g, name="g.txt"):
        p = tmp_path / name
        save(g, p)
        return str(p)

    return write


# -- acceptance summary ----------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> bool:
    line = f"ACCEPTANCE {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[criterion] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
