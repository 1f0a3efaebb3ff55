"""Rudin-Shapiro correlations and the funny-word probe.

Run:  python3 demos/demo_rudin_shapiro.py
"""

import math

import numpy as np

from atlab import funny, systems

L = 2**20
signs = systems.rudin_shapiro_names(L)
print("first 16 signs:", " ".join("+" if s > 0 else "-" for s in signs[:16]))

table = systems.empirical_correlation(signs, 32)
tol = 5.0 / math.sqrt(L)
worst = max(abs(table.at(n)) for n in range(1, 33))
print(f"max |c(n)| over n = 1..32: {worst:.2e}  (tolerance {tol:.2e})")
print("the empirical spectral measure looks exactly like Lebesgue, as the")
print("fiber component of the extension has Lebesgue spectrum")
print()

# the funny-word probe: search index sets and majority words, compare
# |Lambda| * mu{dbar < eps} against the non-AT mass bound
eps = 0.1
bound = funny.non_at_bound(eps)
print(f"non-AT bound at eps = {eps}: {bound:.4f}")
src = systems.RudinShapiroSource()
fam = funny.LambdaFamily(k=32, horizon=256)
rep = funny.funny_word_search(src, fam, epsilon=eps, samples=5000, seed=0)
print(f"searched {len(rep.rows)} candidate index sets, best score "
      f"{rep.best.k_times_mass:.4f}")
print("violations:", len(rep.violations()))
print("caveat:", rep.caveat)
print()

# a degenerate fixture shows the probe has teeth: constant names put half
# the mass at Hamming distance 0, so the score grows like k/2
rep = funny.funny_word_search(systems.ConstantSource(), fam,
                              epsilon=eps, samples=5000, seed=0)
print(f"degenerate constant-name source: best score {rep.best.k_times_mass:.1f}"
      f" (bound {bound:.4f}), flagged rows: {len(rep.violations())}")
