"""
Why parallel uses never become perfect
======================================

Parallel uses with a shared entangled input would be perfect only if some
input made the two outputs orthogonal. That requires every cross term
<psi| B_j^dag A_k |psi> to vanish. A positive definite combination of the
cross terms rules this out, for any number of copies and any ancilla.
"""

import numpy as np

from discrim import channels as ch
from discrim import linalg as la
from discrim import quantum as qu

np.set_printoptions(precision=4, suppress=True)
phi0, phi1 = ch.phi0(), ch.phi1()

######################################################################
# The certificate
# ---------------
# Five nonzero coefficients are enough.

alpha = qu.paper_alpha()
cert = qu.nonadaptive_impossibility_certificate(phi0, phi1, alpha)
print(cert.p.real)
print("min eigenvalue", cert.min_eig, " 1 - 1/sqrt2 =", 1 - 1 / np.sqrt(2))

######################################################################
# Tensor powers keep it positive: the smallest eigenvalue of P (x) P is
# the square.

print("min eigenvalue of P (x) P", la.min_eigenvalue(np.kron(cert.p, cert.p)))

######################################################################
# A quick empirical look: random inputs never come close to orthogonal
# outputs.

rng = np.random.default_rng(0)
worst = np.inf
for _ in range(2000):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    worst = min(worst, qu.output_overlap(phi0, phi1, v / np.linalg.norm(v)))
print("smallest Tr(phi1(psi) phi0(psi)) seen:", worst)

######################################################################
# Two parallel copies
# -------------------
# The two-copy problem is a 64 x 64 semidefinite program and takes a few
# seconds. It improves on one copy but stays below 1.

one = qu.n_copy_diamond(phi0, phi1, 1)
two = qu.n_copy_diamond(phi0, phi1, 2)
for n, r in ((1, one), (2, two)):
    print(f"n={n}: success {r.success_probability:.6f}, "
          f"certified upper bound {0.5 + r.dual_bound / 4:.6f}")
