"""
Two channels that one use cannot separate but two uses can
===========================================================

Both channels take two qubits to one. On a first qubit of 0 they leak a
*key* (|0> or |+>); on a first qubit of 1 they test the second qubit against
their own key. Feeding the key back in on a second call makes each channel
announce itself.
"""

import numpy as np

from discrim import channels as ch
from discrim import linalg as la
from discrim import quantum as qu
from discrim.sdp import diamond_norm_distance

np.set_printoptions(precision=4, suppress=True)
phi0, phi1 = ch.phi0(), ch.phi1()

######################################################################
# Sanity checks
# -------------
# Five Kraus operators each, all rank one (so both maps are entanglement
# breaking), and the completeness relation holds up to rounding.

for c in (phi0, phi1):
    rep = ch.validate_channel(c)
    print(c.name, len(c), "Kraus ops, TP deviation", f"{rep.completeness_deviation:.1e}",
          "rank one:", ch.all_kraus_rank_one(c))

######################################################################
# What the channels do on a few basis inputs.

for label in ("00", "10", "11", "1+"):
    rho = la.projector(la.ket(label))
    print(f"|{label}>  phi0 ->\n{ch.apply(phi0, rho).real}\n       phi1 ->\n{ch.apply(phi1, rho).real}")

######################################################################
# One use
# -------
# The best single-use test (with an entangled ancilla allowed) is set by the
# diamond distance. The solver returns a primal value and a dual bound that
# bracket the optimum.

res = diamond_norm_distance(phi0, phi1)
print(f"diamond distance in [{res.value:.8f}, {res.dual_bound:.8f}]  "
      f"(1 + 1/sqrt2 = {1 + 1 / np.sqrt(2):.8f})")
print(f"best single-use success probability {res.success_probability:.6f}")

######################################################################
# The witness input is read off the solver. Its reduced state on the
# channel input:

print(res.witness_rho.real)

######################################################################
# Two adaptive uses
# -----------------
# Call 1 gets |0> (x) rho for any rho and returns the key. Call 2 gets
# |1> (x) key. phi0 then outputs |0> and phi1 outputs |1>, so a standard-basis
# measurement never errs.

for name, rho in {"|0>": la.projector(la.ket("0")), "|+>": la.projector(la.ket("+")),
                  "I/2": np.eye(2) / 2}.items():
    s = qu.paper_two_step_strategy(rho)
    print(f"rho = {name:4}  phi0 -> {qu.simulate_strategy(s, phi0)}  "
          f"phi1 -> {qu.simulate_strategy(s, phi1)}")
