"""Two-colored balanced bipartite graphs.

A :class:`ColoredBigraph` has vertex classes ``X = {x0, ..., x(n-1)}`` and
``Y = {y0, ..., y(n-1)}``.  Red and blue edge sets are stored independently, so
an edge may carry both colors.  Vertex subsets of one side are plain ``int``
bitmasks (bit ``i`` set means index ``i`` is in the set).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

from .errors import PreconditionError


class Color(enum.Enum):
    RED = "R"
    BLUE = "B"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    def __str__(self) -> str:
        return self.name.lower()


RED = Color.RED
BLUE = Color.BLUE


class Side(enum.Enum):
    X = "x"
    Y = "y"

    @property
    def other(self) -> "Side":
        return Side.Y if self is Side.X else Side.X


class VertexRef(NamedTuple):
    side: Side
    index: int

    def __str__(self) -> str:
        return f"{self.side.value}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "VertexRef":
        text = text.strip()
        if len(text) < 2 or text[0] not in "xy" or not text[1:].isdigit():
            raise ValueError(f"bad vertex label {text!r}")
        return cls(Side(text[0]), int(text[1:]))

    def swapped(self) -> "VertexRef":
        return VertexRef(self.side.other, self.index)


def X(i: int) -> VertexRef:
    return VertexRef(Side.X, i)


def Y(i: int) -> VertexRef:
    return VertexRef(Side.Y, i)


# -- bitmask helpers -------------------------------------------------------

def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def lowest(mask: int) -> int:
    """Index of the lowest set bit (mask must be nonzero)."""
    return (mask & -mask).bit_length() - 1


SubsetLike = Union[int, Iterable[int], Iterable[VertexRef]]


def as_mask(subset: SubsetLike | None, n: int, side: Side | None = None) -> int:
    """Normalize a subset given as a bitmask, indices or VertexRefs.

    When VertexRefs are given and ``side`` is set, every element must lie on
    that side.
    """
    if subset is None:
        return full_mask(n)
    if isinstance(subset, int):
        if subset < 0 or subset >> n:
            raise PreconditionError(f"subset mask {subset:#x} exceeds n={n}")
        return subset
    m = 0
    for item in subset:
        if isinstance(item, VertexRef):
            if side is not None and item.side is not side:
                raise PreconditionError(f"{item} is not on side {side.value.upper()}")
            i = item.index
        else:
            i = int(item)
        if not 0 <= i < n:
            raise PreconditionError(f"vertex index {i} out of range for n={n}")
        m |= 1 << i
    return m


# -- the graph ------------------------------------------------------------

def _transpose_rows(rows: tuple[int, ...], n: int) -> tuple[int, ...]:
    cols = [0] * n
    for x, row in enumerate(rows):
        bit = 1 << x
        for y in members(row):
            cols[y] |= bit
    return tuple(cols)


@dataclass(frozen=True)
class ColoredBigraph:
    """Balanced X,Y-bipartite graph with a red/blue multi-coloring.

    ``red[x]`` / ``blue[x]`` are Y-bitmasks.  Instances are immutable; the
    Y-to-X views are derived once at construction.
    """

    n: int
    red: tuple[int, ...]
    blue: tuple[int, ...]
    red_t: tuple[int, ...] = field(init=False, repr=False, compare=False)
    blue_t: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n <= 0:
            raise PreconditionError("n must be positive")
        if len(self.red) != self.n or len(self.blue) != self.n:
            raise PreconditionError("adjacency rows must have length n")
        lim = full_mask(self.n)
        for row in self.red + self.blue:
            if row & ~lim:
                raise PreconditionError("adjacency row exceeds n")
        object.__setattr__(self, "red_t", _transpose_rows(self.red, self.n))
        object.__setattr__(self, "blue_t", _transpose_rows(self.blue, self.n))

    # adjacency access
    def rows(self, color: Color | None, side: Side = Side.X) -> tuple[int, ...]:
        """Per-vertex neighbor masks of ``side`` in ``color`` (None = either color)."""
        if color is RED:
            return self.red if side is Side.X else self.red_t
        if color is BLUE:
            return self.blue if side is Side.X else self.blue_t
        r, b = self.rows(RED, side), self.rows(BLUE, side)
        return tuple(a | c for a, c in zip(r, b))

    def nbrs(self, v: VertexRef, color: Color | None = None) -> int:
        return self.rows(color, v.side)[v.index]

    def has_edge(self, x: int, y: int, color: Color | None = None) -> bool:
        return bool(self.rows(color)[x] >> y & 1)

    def edges(self, color: Color | None = None) -> list[tuple[int, int]]:
        return [(x, y) for x, row in enumerate(self.rows(color)) for y in members(row)]

    def num_edges(self, color: Color | None = None) -> int:
        return sum(popcount(row) for row in self.rows(color))

    def vertices(self) -> list[VertexRef]:
        return [X(i) for i in range(self.n)] + [Y(i) for i in range(self.n)]

    def transpose(self) -> "ColoredBigraph":
        """Swap the roles of X and Y."""
        return ColoredBigraph(self.n, self.red_t, self.blue_t)

    def swap_colors(self) -> "ColoredBigraph":
        return ColoredBigraph(self.n, self.blue, self.red)

    def relabel(self, px: list[int], py: list[int]) -> "ColoredBigraph":
        """Image under x_i -> x_px[i], y_j -> y_py[j]."""
        red = [0] * self.n
        blue = [0] * self.n
        for x in range(self.n):
            red[px[x]] = mask_of(py[y] for y in members(self.red[x]))
            blue[px[x]] = mask_of(py[y] for y in members(self.blue[x]))
        return ColoredBigraph(self.n, tuple(red), tuple(blue))

    def with_edge_colors(self, x: int, y: int, colors: Iterable[Color]) -> "ColoredBigraph":
        """Copy with the pair (x, y) carrying exactly ``colors``."""
        colors = set(colors)
        red, blue = list(self.red), list(self.blue)
        bit = 1 << y
        red[x] = (red[x] | bit) if RED in colors else (red[x] & ~bit)
        blue[x] = (blue[x] | bit) if BLUE in colors else (blue[x] & ~bit)
        return ColoredBigraph(self.n, tuple(red), tuple(blue))


def build(n: int, red_edges: Iterable[tuple[int, int]] = (),
          blue_edges: Iterable[tuple[int, int]] = ()) -> ColoredBigraph:
    """Graph with exactly the listed colored edges (duplicates are merged)."""
    if n <= 0:
        raise PreconditionError("n must be positive")
    red = [0] * n
    blue = [0] * n
    for rows, edges in ((red, red_edges), (blue, blue_edges)):
        for x, y in edges:
            if not (0 <= x < n and 0 <= y < n):
                raise PreconditionError(f"edge ({x}, {y}) out of range for n={n}")
            rows[x] |= 1 << y
    return ColoredBigraph(n, tuple(red), tuple(blue))


def complete(n: int, color: Color | None = None) -> ColoredBigraph:
    """K_{n,n} in one color, or in both colors when ``color`` is None."""
    row = (full_mask(n),) * n
    empty = (0,) * n
    if color is RED:
        return ColoredBigraph(n, row, empty)
    if color is BLUE:
        return ColoredBigraph(n, empty, row)
    return ColoredBigraph(n, row, row)


def degree(g: ColoredBigraph, v: VertexRef) -> int:
    return popcount(g.nbrs(v))


def min_degree(g: ColoredBigraph) -> int:
    """Minimum degree of the underlying (uncolored) graph."""
    return min(popcount(r) for r in g.rows(None, Side.X) + g.rows(None, Side.Y))


def color_degree(g: ColoredBigraph, v: VertexRef, c: Color,
                 restrict: SubsetLike | None = None) -> int:
    """|N_c(v) ∩ restrict|, ``restrict`` being a subset of the opposite side."""
    mask = as_mask(restrict, g.n, v.side.other)
    return popcount(g.nbrs(v, c) & mask)


def color_edge_count(g: ColoredBigraph, xs: SubsetLike, ys: SubsetLike, c: Color) -> int:
    """Number of ``c``-colored edges between the X-subset and the Y-subset."""
    xm = as_mask(xs, g.n, Side.X)
    ym = as_mask(ys, g.n, Side.Y)
    rows = g.rows(c)
    return sum(popcount(rows[x] & ym) for x in members(xm))


def edge_count(g: ColoredBigraph, xs: SubsetLike, ys: SubsetLike) -> int:
    xm = as_mask(xs, g.n, Side.X)
    ym = as_mask(ys, g.n, Side.Y)
    rows = g.rows(None)
    return sum(popcount(rows[x] & ym) for x in members(xm))


def degree_ratio(g: ColoredBigraph) -> Fraction:
    """δ(G)/n as an exact rational."""
    return Fraction(min_degree(g), g.n)


# -- canonical text format ------------------------------------------------

def serialize(g: ColoredBigraph) -> str:
    lines = [f"bigraph {g.n}"]
    for tag, color in (("B", BLUE), ("R", RED)):
        lines.extend(f"{tag} {x} {y}" for x, y in g.edges(color))
    return "\n".join(lines) + "\n"


def parse(text: str) -> ColoredBigraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "bigraph" or not head[1].isdigit():
        raise ValueError(f"bad header {lines[0]!r}")
    n = int(head[1])
    red, blue = [], []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 3 or parts[0] not in ("R", "B"):
            raise ValueError(f"line {lineno}: bad edge record {ln!r}")
        try:
            x, y = int(parts[1]), int(parts[2])
        except ValueError:
            raise ValueError(f"line {lineno}: bad edge record {ln!r}") from None
        (red if parts[0] == "R" else blue).append((x, y))
    return build(n, red, blue)


def load(path) -> ColoredBigraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(g: ColoredBigraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(g))
