"""Walk through SBH certification on a few circle measures.

Run:  python3 demos/demo_sbh_certification.py
"""

import numpy as np

from atlab import fourier, gaussian, sbh

eps0 = sbh.epsilon0()
print(f"epsilon0 = {eps0:.17g}")
print(f"certification threshold 1 + epsilon0 = {1 + eps0:.6f}")
print()

# Lebesgue is the easy case: every certificate sits at 1 exactly
leb = fourier.lebesgue_table(16)
rep = sbh.certify(leb)
print("Lebesgue:", rep.verdict,
      f"(l1 {rep.l1_certificate:.4f}, density {rep.density_certificate:.4f})")

# the Dirac mass at 0 is about as far from SBH as it gets; the exhaustive
# search finds a witness with all signs aligned
dirac = fourier.dirac_table(16)
rep = sbh.certify(dirac, k=4, window=8)
print("Dirac:   ", rep.verdict,
      f"(witness value {rep.exhaustive_sup:.1f} at {rep.exhaustive_witness['indices']})")
print("          note:", rep.note)
print()

# a Riesz product with moderate amplitudes has heavy low frequencies; the
# witness search pushes the signed form past the threshold
t = fourier.riesz_product([0.6, 0.4], [1, 3], 12)
rep = sbh.certify(t, k=4, window=8)
print("Riesz([0.6, 0.4]; 1, 3):", rep.verdict)
print(f"  l1 certificate      {rep.l1_certificate:.4f}")
print(f"  density certificate {rep.density_certificate:.4f}")
print(f"  best k=4 witness    {rep.exhaustive_sup:.4f}")
print()

# power subsampling thins the coefficient support; the Gaussian-cocycle
# table certifies immediately and stays certified for every m
table = gaussian.cocycle_correlation_table(gaussian.white_noise_spec(16), 201, 16)
for m in (1, 2, 4):
    sub = fourier.power_subsample(table, m)
    rep = sbh.certify(sub)
    print(f"gaussian cocycle, subsample m={m}: {rep.verdict} "
          f"(l1 tail {fourier.l1_tail(sub):.3e})")
