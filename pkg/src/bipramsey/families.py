"""Generators for the four tightness constructions.

Each generator returns the graph together with the parameters the
construction is claimed to have.  Vertex blocks are contiguous index ranges,
listed in the order ``X1, X2, ...`` and ``Y1, Y2, ...``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .bigraph import ColoredBigraph, build
from .errors import PreconditionError

FAMILIES = ("large-deg", "medium-deg", "small-deg", "cycle-extremal")


@dataclass(frozen=True)
class FamilyClaims:
    min_degree: int
    longest_mono_path: int
    longest_mono_cycle: int

    def to_dict(self) -> dict:
        return asdict(self)


def _ceil_half(k: int) -> int:
    return -(-k // 2)


def clamp_cycle(length: int) -> int:
    """Bipartite cycles need at least 4 vertices; shorter claims mean "no cycle"."""
    return length if length >= 4 else 0


def _blocks(sizes):
    """Consecutive index ranges with the given sizes."""
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def _complete(xs, ys):
    return [(x, y) for x in xs for y in ys]


def gen_large_deg(n: int):
    """K_{n,n} split into two blue diagonal blocks and two red off-diagonal blocks."""
    if n < 1:
        raise PreconditionError("n must be positive")
    a = _ceil_half(n)
    X1, X2 = _blocks((a, n - a))
    Y1, Y2 = _blocks((a, n - a))
    blue = _complete(X1, Y1) + _complete(X2, Y2)
    red = _complete(X1, Y2) + _complete(X2, Y1)
    claims = FamilyClaims(n, 2 * a, clamp_cycle(2 * a))
    return build(n, red, blue), claims


def gen_medium_deg(n: int, k: int):
    """Eight-block construction with minimum degree 3n/4 - k."""
    if n < 1 or n % 4:
        raise PreconditionError("n must be a positive multiple of 4")
    if k < 0 or 12 * k > n:
        raise PreconditionError("k must satisfy 0 <= k <= n/12")
    big, small = n // 4 + k, n // 4 - k
    X1, X2, X3, X4 = _blocks((big, big, small, small))
    Y1, Y2, Y3, Y4 = _blocks((small, small, big, big))
    blue = _complete([*X1, *X2], [*Y1, *Y2]) + _complete([*X3, *X4], [*Y3, *Y4])
    red = (_complete(X1, Y3) + _complete(X2, Y4)
           + _complete(X3, Y1) + _complete(X4, Y2))
    claims = FamilyClaims(3 * n // 4 - k, n - 4 * k, clamp_cycle(n - 4 * k))
    return build(n, red, blue), claims


def gen_small_deg(n: int, k: int):
    """Six-block construction with minimum degree k."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if k < 0 or 3 * k > n:
        raise PreconditionError("k must satisfy 0 <= k <= n/3")
    a, b = _ceil_half(k), k // 2
    X1, X2, X3 = _blocks((a, b, n - k))
    Y1, Y2, Y3 = _blocks((a, b, n - k))
    blue = _complete(X1, Y2) + _complete(X2, Y3) + _complete(X3, Y1)
    red = _complete(X1, Y3) + _complete(X2, Y1) + _complete(X3, Y2)
    claims = FamilyClaims(k, 2 * a, clamp_cycle(2 * a))
    return build(n, red, blue), claims


def cycle_extremal_graph(n: int) -> ColoredBigraph:
    if n < 3 or n % 2 == 0:
        raise PreconditionError("n must be odd and at least 3")
    m = n // 2
    X1, X2 = _blocks((m, m))
    Y1, Y2 = _blocks((m, m))
    xs, ys = n - 1, n - 1  # the special vertices x*, y*
    red = _complete(X1, Y1) + _complete(X2, Y2) + [(x, ys) for x in range(n - 1)]
    blue = _complete(X1, Y2) + _complete(X2, Y1) + [(xs, y) for y in range(n)]
    return build(n, red, blue)


def gen_cycle_extremal(n: int, cap: Optional[int] = None):
    """K_{n,n} (n odd) whose longest monochromatic cycle has only 2*floor(n/2) vertices.

    No path length is stated for this construction, so the path claim is the
    value reported by the exact search.
    """
    from .routes import longest_mono_path_exact

    g = cycle_extremal_graph(n)
    path = longest_mono_path_exact(g, cap=n if cap is None else cap)
    claims = FamilyClaims(n, path.order, clamp_cycle(2 * (n // 2)))
    return g, claims


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    k: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}; choose from {FAMILIES}")

    def generate(self):
        if self.family == "large-deg":
            return gen_large_deg(self.n)
        if self.family == "medium-deg":
            return gen_medium_deg(self.n, self.k)
        if self.family == "small-deg":
            return gen_small_deg(self.n, self.k)
        return gen_cycle_extremal(self.n)


def valid_specs(max_n: int = 12, families=FAMILIES) -> list[FamilySpec]:
    """Every valid (family, n, k) with n <= max_n."""
    out = []
    for fam in families:
        for n in range(1, max_n + 1):
            if fam == "large-deg":
                out.append(FamilySpec(fam, n))
            elif fam == "medium-deg" and n % 4 == 0:
                out.extend(FamilySpec(fam, n, k) for k in range(n // 12 + 1))
            elif fam == "small-deg":
                out.extend(FamilySpec(fam, n, k) for k in range(n // 3 + 1))
            elif fam == "cycle-extremal" and n % 2 == 1 and n >= 3:
                out.append(FamilySpec(fam, n))
    return out
