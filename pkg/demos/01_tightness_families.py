"""Walk through the four constructions and compare the exact oracle with each claim.

Run:  python demos/01_tightness_families.py
"""
from bipramsey import FamilySpec, longest_mono_cycle_exact, longest_mono_path_exact, min_degree

# one representative per family
specs = [FamilySpec("large-deg", 7), FamilySpec("medium-deg", 12, 1),
         FamilySpec("small-deg", 9, 3), FamilySpec("cycle-extremal", 7)]

print(f"{'instance':<22}{'delta':>7}{'path':>12}{'cycle':>12}")
for spec in specs:
    g, claims = spec.generate()
    path = longest_mono_path_exact(g).order
    cyc = longest_mono_cycle_exact(g)
    cycle = cyc.length if cyc else 0
    tag = f"{spec.family}({spec.n},{spec.k})"
    print(f"{tag:<22}{min_degree(g):>7}{path:>6} / {claims.longest_mono_path:<3}{cycle:>6} / {claims.longest_mono_cycle:<3}")

# measured / claimed.  The cycle columns agree everywhere; the path column of the
# unbalanced families is one larger, since a path may start and end on the larger
# side of an unbalanced complete block.
g, _ = FamilySpec("small-deg", 9, 3).generate()
p = longest_mono_path_exact(g)
print("\nsmall-deg(9,3) longest path:", " ".join(map(str, p.vertices)), f"({p.color})")
