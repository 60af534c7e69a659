"""
Adaptivity for classical channels
=================================

For stochastic matrices everything is finite, so one-shot, parallel and
adaptive optima can be computed exactly by enumeration. Adaptivity can help
here too, but unlike the quantum case it can never turn an imperfect test
into a perfect one.
"""

from fractions import Fraction

from discrim import classical as cl

######################################################################
# Three example pairs
# -------------------
# The first has rational entries and is solved in exact arithmetic.

for name, fn in (("example 1", cl.example1), ("example 2", cl.example2),
                 ("example 3", cl.example3)):
    m0, m1 = fn()
    one = cl.one_shot_optimum(m0, m1)
    par = cl.nonadaptive_optimum(m0, m1, 2)
    ada = cl.adaptive_two_step_optimum(m0, m1)
    k, f = ada.policy.one_based()
    print(f"{name}: one-shot {one.value} at k={one.best_input + 1}; "
          f"parallel {par.value} at {cl.one_based(par.best_inputs)}; "
          f"adaptive {ada.value} at k={k}, f={f}")

######################################################################
# Example 1 as decimals, for comparison with published figures:

m0, m1 = cl.example1()
for v in (cl.one_shot_optimum(m0, m1).value, cl.nonadaptive_optimum(m0, m1, 2).value,
          cl.adaptive_two_step_optimum(m0, m1).value):
    print(v, "=", float(v))

######################################################################
# More uses
# ---------
# The posterior recursion handles any number of uses and returns the tree
# it found (inputs and outputs are 1-based in the printout).

res = cl.adaptive_optimum(m0, m1, 3)
print(res.value, float(res.value))
print(cl.format_tree(res.tree))

######################################################################
# Posteriors after the first use of input 1:

for j in range(m0.outputs):
    st = cl.posterior(m0, m1, 0, j)
    print(f"output {j + 1}: q = {st.q}, posterior on channel 0 = {st.p0}")

######################################################################
# Perfect discrimination
# ----------------------
# Searching every strategy tree of depth two finds a perfect one only when a
# single input already gives disjoint output supports.

a = cl.StochasticChannel(((Fraction(1), Fraction(1, 2)), (Fraction(0), Fraction(1, 2))))
b = cl.StochasticChannel(((Fraction(0), Fraction(1, 2)), (Fraction(1), Fraction(1, 2))))
rep = cl.perfect_equivalence_check(a, b, 2)
print("perfect:", rep.perfect, " one-shot witness input:", rep.one_shot_witness + 1,
      " trees searched:", rep.trees_searched)
rep = cl.perfect_equivalence_check(*cl.example1(), 2)
print("example 1 perfect:", rep.perfect, " best depth-2 value:", rep.best_value)
