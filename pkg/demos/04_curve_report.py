"""Measured circumference / n against f(delta) for the three degree families.

Writes curve.csv (one row per instance) next to the current directory and
prints the rows where the construction sits exactly on the curve.
"""
import csv
import io

from bipramsey.harness import family_grid, verify

rep = verify(family_grid(12, ("large-deg", "medium-deg", "small-deg")), ["cycle-bound"])
with open("curve.csv", "w") as fh:
    fh.write(rep.to_csv())

rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
print(f"{'source':<18}{'delta':>7}{'f(delta)':>10}{'cycle/n':>9}  exact")
for r in rows:
    print(f"{r['source']:<18}{r['delta']:>7}{r['f_delta']:>10}{r['cycle_over_n']:>9}  {r['meets_f_exactly']}")
