"""Stability dichotomy: large connected matching, or a certified extremal witness."""
from fractions import Fraction

from bipramsey import complete, gen_large_deg, matching_or_witness, verify_witness

for n in (6, 8, 10, 12):
    eta = Fraction(1, 4 * n)
    g, _ = gen_large_deg(n)
    out = matching_or_witness(g, eta)
    w = out.witness
    print(f"large-deg({n:>2}) eta={eta}: {out.kind}", w.to_dict() if w else "", verify_witness(g, w) if w else "")

    out = matching_or_witness(complete(n), eta)       # every edge both colors
    print(f"K({n:>2},{n:>2}) doubly colored: {out.kind}, size {out.matching.size}")
