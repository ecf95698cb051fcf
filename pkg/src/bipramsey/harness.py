"""Instance sources, batch law verification and independent certificate checking."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .bigraph import (BLUE, RED, Color, ColoredBigraph, Side, VertexRef, full_mask, min_degree,
                      parse, popcount)
from .errors import PreconditionError
from .families import FAMILIES, FamilySpec, valid_specs

LAWS = ("path-GL", "cycle-cor1", "matching-bound", "component-bound", "cycle-bound")
HARD_LAWS = ("path-GL", "cycle-cor1", "matching-bound", "component-bound")
REJECTION_RETRIES = 1000


# -- random instances -----------------------------------------------------

def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator (Philox) so streams are reproducible across platforms."""
    return np.random.Generator(np.random.Philox(seed))


def _prob(p) -> float:
    q = Fraction(p)
    if not 0 <= q <= 1:
        raise PreconditionError(f"probability {p} outside [0, 1]")
    return float(q)


def _draw(rng: np.random.Generator, n: int, pr: float, pb: float) -> ColoredBigraph:
    # one uniform per (x, y) pair in row-major order for red, then the same for blue
    red = rng.random((n, n)) < pr
    blue = rng.random((n, n)) < pb
    weights = 1 << np.arange(n, dtype=object)
    red_rows = tuple(int((red[x].astype(object) * weights).sum()) for x in range(n))
    blue_rows = tuple(int((blue[x].astype(object) * weights).sum()) for x in range(n))
    return ColoredBigraph(n, red_rows, blue_rows)


def random_coloring(n: int, red_prob, blue_prob, seed: int) -> ColoredBigraph:
    """Each pair is red with ``red_prob`` and, independently, blue with ``blue_prob``."""
    if n <= 0:
        raise PreconditionError("n must be positive")
    return _draw(make_rng(seed), n, _prob(red_prob), _prob(blue_prob))


def random_instance(n: int, red_prob, blue_prob, seed: int, min_degree_floor: int = 0,
                    retries: int = REJECTION_RETRIES) -> ColoredBigraph:
    """Rejection-sample until the minimum degree reaches ``min_degree_floor``."""
    if n <= 0:
        raise PreconditionError("n must be positive")
    rng = make_rng(seed)
    pr, pb = _prob(red_prob), _prob(blue_prob)
    for _ in range(retries):
        g = _draw(rng, n, pr, pb)
        if min_degree(g) >= min_degree_floor:
            return g
    raise PreconditionError(f"no instance with min degree >= {min_degree_floor} after {retries} draws")


@dataclass(frozen=True)
class InstanceSource:
    kind: str  # "family", "file", "random"
    family: Optional[FamilySpec] = None
    path: Optional[str] = None
    n: int = 0
    red_prob: Fraction = Fraction(1, 2)
    blue_prob: Fraction = Fraction(1, 2)
    min_degree_floor: int = 0
    seed: int = 0

    @property
    def label(self) -> str:
        if self.kind == "family":
            f = self.family
            return f"{f.family}:{f.n}:{f.k}"
        if self.kind == "file":
            return f"file:{self.path}"
        return f"random:{self.n}:{self.red_prob}:{self.blue_prob}:{self.min_degree_floor}:{self.seed}"

    def load(self) -> ColoredBigraph:
        if self.kind == "family":
            return self.family.generate()[0]
        if self.kind == "file":
            with open(self.path, encoding="utf-8") as fh:
                return parse(fh.read())
        if self.kind == "random":
            return random_instance(self.n, self.red_prob, self.blue_prob, self.seed, self.min_degree_floor)
        raise PreconditionError(f"unknown source kind {self.kind!r}")


def family_grid(max_n: int = 12, families=FAMILIES) -> list[InstanceSource]:
    return [InstanceSource("family", family=s) for s in valid_specs(max_n, families)]


def random_sources(count: int, seed: int, max_n: int = 10, min_n: int = 1) -> list[InstanceSource]:
    """``count`` random sources with n, probabilities and seeds drawn from ``seed``."""
    rng = make_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        pr = Fraction(int(rng.integers(0, 11)), 10)
        pb = Fraction(int(rng.integers(0, 11)), 10)
        out.append(InstanceSource("random", n=n, red_prob=pr, blue_prob=pb, seed=seed * 100_003 + i))
    return out


# -- exhaustive colorings -------------------------------------------------

def coloring_from_index(n: int, index: int) -> ColoredBigraph:
    """K_{n,n} with edge (x, y) red iff bit x*n + y of ``index`` is set, blue otherwise."""
    full = full_mask(n)
    red = tuple((index >> (x * n)) & full for x in range(n))
    return ColoredBigraph(n, red, tuple(full & ~r for r in red))


def shard(n: int, jobs: int, worker: int) -> range:
    """Coloring indices handled by ``worker`` out of ``jobs``."""
    if not 0 <= worker < jobs:
        raise PreconditionError("worker index out of range")
    return range(worker, 1 << (n * n), jobs)


def _run_shard(args):
    n, jobs, worker, check = args
    seen = failures = 0
    first = None
    for i in shard(n, jobs, worker):
        seen += 1
        if not check(coloring_from_index(n, i)):
            failures += 1
            if first is None:
                first = i
    return seen, failures, first


def exhaustive_check(n: int, check: Callable[[ColoredBigraph], bool], jobs: int = 1) -> dict:
    """Apply ``check`` to all 2^(n^2) single-color assignments of K_{n,n}.

    ``check`` must be picklable (a module-level function) when jobs > 1.
    """
    tasks = [(n, jobs, w, check) for w in range(jobs)]
    if jobs == 1:
        results = [_run_shard(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_shard, tasks))
    seen = sum(r[0] for r in results)
    failures = sum(r[1] for r in results)
    firsts = [r[2] for r in results if r[2] is not None]
    return {"n": n, "colorings": seen, "failures": failures,
            "first_failure": min(firsts) if firsts else None}


def path_gl_holds(g: ColoredBigraph) -> bool:
    from .routes import longest_mono_path_exact
    return longest_mono_path_exact(g, cap=None).order >= 2 * ((g.n + 1) // 2)


def cycle_cor1_holds(g: ColoredBigraph) -> bool:
    from .routes import longest_mono_cycle_exact
    need = 2 * (g.n // 2)
    if need < 4:
        return True
    c = longest_mono_cycle_exact(g, cap=None)
    return c is not None and c.length >= need


# -- law verification -----------------------------------------------------

def is_complete(g: ColoredBigraph) -> bool:
    full = full_mask(g.n)
    return all(r == full for r in g.rows(None))


def _fmt(q) -> str:
    return str(Fraction(q)) if q is not None else ""


def evaluate(g: ColoredBigraph, laws: Iterable[str], cap: Optional[int] = 12,
             eps=Fraction(0)) -> dict:
    """Measured values and per-law status for one instance."""
    from .routes import longest_mono_cycle_exact, longest_mono_path_exact
    from .structure import (best_balanced_component, best_connected_matching, ceil_frac,
                            component_bound, cycle_bound, matching_bound)

    laws = list(laws)
    n = g.n
    d = min_degree(g)
    delta = Fraction(d, n)
    row = {"n": n, "min_degree": d, "delta": _fmt(delta)}
    need_exact = any(l in laws for l in ("path-GL", "cycle-cor1", "cycle-bound"))
    path = cycle = None
    if need_exact:
        path = longest_mono_path_exact(g, cap=cap).order
        c = longest_mono_cycle_exact(g, cap=cap)
        cycle = c.length if c else 0
    row["longest_path"] = "" if path is None else path
    row["longest_cycle"] = "" if cycle is None else cycle
    complete = is_complete(g)
    if "path-GL" in laws:
        row["path-GL"] = ("pass" if path >= 2 * ((n + 1) // 2) else "fail") if complete else "n/a"
    if "cycle-cor1" in laws:
        need = 2 * (n // 2)
        row["cycle-cor1"] = ("pass" if cycle >= need else "fail") if complete and need >= 4 else "n/a"
    if "matching-bound" in laws:
        mb = matching_bound(delta, n)
        size = best_connected_matching(g).size
        row["matching_bound"] = _fmt(mb)
        row["max_connected_matching"] = size
        status = "pass" if size >= ceil_frac(mb) else "fail"
        if status == "fail" and size >= math.floor(mb):
            status = "fail-ceiling-only"
        row["matching-bound"] = status
    if "component-bound" in laws:
        cb = component_bound(delta, n)
        side = best_balanced_component(g).min_side if g.num_edges() else 0
        row["component_bound"] = _fmt(cb)
        row["best_component_min_side"] = side
        row["component-bound"] = "pass" if side >= cb else "fail"
    if "cycle-bound" in laws:
        f = cycle_bound(delta)
        row["f_delta"] = _fmt(f)
        row["f_delta_n"] = _fmt(f * n)
        row["cycle_over_n"] = _fmt(Fraction(cycle, n))
        row["eps"] = _fmt(eps)
        row["meets_f_minus_eps"] = cycle >= (f - Fraction(eps)) * n
        row["meets_f_exactly"] = cycle == f * n
        row["cycle-bound"] = "report"
    return row


@dataclass
class VerifyReport:
    laws: tuple[str, ...]
    rows: list[dict] = field(default_factory=list)
    exhaustive: list[dict] = field(default_factory=list)

    def add(self, source: str, row: dict):
        self.rows.append({"source": source, **row})

    def merge(self, other: "VerifyReport") -> "VerifyReport":
        out = VerifyReport(self.laws, self.rows + other.rows, self.exhaustive + other.exhaustive)
        out.rows.sort(key=_row_key)
        return out

    def counts(self) -> dict:
        out = {}
        for law in self.laws:
            c = {"pass": 0, "fail": 0, "n/a": 0, "report": 0}
            for r in self.rows:
                s = r.get(law)
                if s is None:
                    continue
                c["fail" if s.startswith("fail") else s] += 1
            for e in self.exhaustive:
                if e["law"] == law:
                    c["pass"] += e["colorings"] - e["failures"]
                    c["fail"] += e["failures"]
            out[law] = c
        return out

    @property
    def ok(self) -> bool:
        counts = self.counts()
        return all(counts[l]["fail"] == 0 for l in self.laws if l in HARD_LAWS)

    def summary(self) -> dict:
        return {"laws": list(self.laws), "instances": len(self.rows), "exhaustive": self.exhaustive,
                "counts": self.counts(), "ok": self.ok}

    def to_csv(self) -> str:
        cols: list[str] = []
        for r in sorted(self.rows, key=_row_key):
            for k in r:
                if k not in cols:
                    cols.append(k)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in sorted(self.rows, key=_row_key):
            w.writerow(r)
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"


def _row_key(r: dict):
    return (r["source"].split(":")[0], r["n"], r["source"])


def verify(sources: Iterable[InstanceSource], laws: Iterable[str] = LAWS, cap: Optional[int] = 12,
           eps=Fraction(0), exhaustive_n: Iterable[int] = (), jobs: int = 1) -> VerifyReport:
    laws = tuple(laws)
    bad = [l for l in laws if l not in LAWS]
    if bad:
        raise PreconditionError(f"unknown laws {bad}; choose from {LAWS}")
    report = VerifyReport(laws)
    for src in sources:
        report.add(src.label, evaluate(src.load(), laws, cap, eps))
    for n in exhaustive_n:
        if cap is not None and n > cap:
            raise PreconditionError(f"exhaustive n={n} exceeds cap {cap}")
        for law, fn in (("path-GL", path_gl_holds), ("cycle-cor1", cycle_cor1_holds)):
            if law in laws:
                report.exhaustive.append({"law": law, **exhaustive_check(n, fn, jobs)})
    report.rows.sort(key=_row_key)
    return report


# -- certificates ---------------------------------------------------------

def _walk_error(g: ColoredBigraph, name: str, obj, closed: bool) -> Optional[str]:
    if not isinstance(obj, dict) or "color" not in obj or "vertices" not in obj:
        return f"{name}: missing color or vertices"
    tag = obj["color"]
    if tag not in ("red", "blue"):
        return f"{name}: unknown color {tag!r}"
    color = RED if tag == "red" else BLUE
    rows = g.red if color is RED else g.blue
    verts = []
    for label in obj["vertices"]:
        try:
            v = VertexRef.parse(str(label))
        except ValueError:
            return f"{name}: bad vertex label {label!r}"
        if not 0 <= v.index < g.n:
            return f"{name}: vertex {label} out of range"
        verts.append(v)
    if len(set(verts)) != len(verts):
        return f"{name}: repeated vertex"
    steps = list(zip(verts, verts[1:]))
    if closed and len(verts) >= 3:
        steps.append((verts[-1], verts[0]))
    for a, b in steps:
        if a.side is b.side:
            return f"{name}: consecutive vertices {a} and {b} on the same side"
        x, y = (a, b) if a.side is Side.X else (b, a)
        if not rows[x.index] >> y.index & 1:
            return f"{name}: edge not {tag} ({x}{y})"
    return None


def check_certificate(g: ColoredBigraph, cert: dict) -> Optional[str]:
    """First violated condition of a route certificate, or None if it is valid.

    Only the graph model is shared with the producer; colors, adjacency and
    lengths are re-derived here from the raw JSON.
    """
    if not isinstance(cert, dict):
        return "certificate is not a JSON object"
    if cert.get("n") != g.n:
        return f"n mismatch: certificate {cert.get('n')!r}, graph {g.n}"
    for key in ("path", "cycle"):
        if key not in cert:
            return f"missing {key}"
    err = _walk_error(g, "path", cert["path"], closed=False)
    if err:
        return err
    err = _walk_error(g, "cycle", cert["cycle"], closed=True)
    if err:
        return err
    need_path, need_cycle = 2 * ((g.n + 1) // 2), 2 * (g.n // 2)
    plen, clen = len(cert["path"]["vertices"]), len(cert["cycle"]["vertices"])
    if plen < need_path:
        return f"path too short: {plen} < {need_path}"
    if clen < max(need_cycle, 4):
        return f"cycle too short: {clen} < {max(need_cycle, 4)}"
    return None


# -- perturbations --------------------------------------------------------

_COLOR_SETS = ((RED,), (BLUE,), (RED, BLUE))


def _colors_at(g: ColoredBigraph, x: int, y: int) -> tuple[Color, ...]:
    return tuple(c for c in (RED, BLUE) if g.has_edge(x, y, c))


def perturbations(g: ColoredBigraph, w, params, count: int, seed: int,
                  max_tries: int = 100_000) -> Iterator[tuple[ColoredBigraph, Fraction]]:
    """Distinct one-edge recolorings of ``g`` that keep the routing hypotheses.

    A candidate recolors one uniformly chosen pair to a different nonempty
    color set.  It is kept when the minimum degree still reaches
    (3/4+gamma)n and the witness's smallest valid eta still satisfies
    16*sqrt(eta) < gamma.  Yields (graph, eta).
    """
    from .extremal import witness_eta

    n = g.n
    rng = make_rng(seed)
    seen = set()
    need = (Fraction(3, 4) + params.gamma) * n
    tries = 0
    while len(seen) < count:
        tries += 1
        if tries > max_tries:
            raise PreconditionError(f"only {len(seen)} admissible perturbations after {max_tries} tries")
        x, y = int(rng.integers(n)), int(rng.integers(n))
        current = _colors_at(g, x, y)
        options = [s for s in _COLOR_SETS if s != current]
        new = options[int(rng.integers(len(options)))]
        key = (x, y, new)
        if key in seen:
            continue
        h = g.with_edge_colors(x, y, new)
        if min_degree(h) < need:
            continue
        eta = witness_eta(h, w)
        if not 256 * eta < params.gamma ** 2:
            continue
        seen.add(key)
        yield h, eta


def instance_popcount(g: ColoredBigraph) -> int:
    return sum(popcount(r) for r in g.rows(None))
