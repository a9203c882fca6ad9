"""
Blow-ups of Hoffman signed graphs
=================================

The smallest eigenvalue of G(h, t) decreases in t toward the smallest
eigenvalue of the Hoffman signed graph h. For a general block matrix the
descent can be slow, and the limit also sees -lambda_max(D).
"""

import numpy as np

from hoffsign.cli import random_block_spec
from hoffsign.hoffman import CATALOG
from hoffsign.limits import DEFAULT_SCHEDULE, limit_experiment, n0_for, f_value

for name in ("h2", "h3", "h4"):
    report = limit_experiment(CATALOG[name], DEFAULT_SCHEDULE)
    vals = ", ".join(f"{x:.4f}" for x in report.lambda_min)
    print(f"{name}: target {report.target:.4f}; lambda_min over t={list(DEFAULT_SCHEDULE)}: {vals}")

# the first t at which every blow-up of h2, h3, h4 is below lambda
for lam in ("-101/100", "-3/2", "-sqrt3", "-19/10"):
    print(f"n0({lam}) = {n0_for(lam)}")
print("f(-3/2) =", f_value("-3/2"))

# a random Hermitian block spec: compare the Schur value with the true limit
rng = np.random.default_rng(7)
spec = random_block_spec(rng, 3, 2)
report = limit_experiment(spec, [1, 4, 16, 64, 256, 1024])
print("Schur value:", round(spec.schur_target(), 4), " limit:", round(spec.limit_value(), 4))
print("lambda_min:", np.round(report.lambda_min, 4))
