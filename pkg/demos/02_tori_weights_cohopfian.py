#!/usr/bin/env python3
"""Maximal split tori, weight cones, and the cohopfian classification.

The headline examples: a 12-dimensional algebra whose torus has rank
exactly 1 with weights of both signs (cohopfian through flexibility), a
characteristically nilpotent one with rank 0, and a 7-dimensional algebra
that is weakly dis-cohopfian but not dis-cohopfian.
"""

from carnot.catalog import get
from carnot.cohopf import classify
from carnot.gradings import cartan_grading, cone_flags, \
    contractive_decomposition


def report(name):
    a = get(name)
    torus, gr = cartan_grading(a, seed=0)
    flags = cone_flags(gr)
    cd = contractive_decomposition(gr)
    rep = classify(a, seed=0)
    ws = sorted(w[0] if torus.rank == 1 else w for w in gr.weight_multiset())
    print(f"{name}: dim {a.dim}")
    print(f"  torus rank {torus.rank} ({torus.certificate})")
    if torus.rank:
        print(f"  weight multiset {ws}")
    print(f"  cone flags {flags}")
    print(f"  uncontracted dim {cd.uncontracted_dim}, "
          f"cni+ dim {rep.cni_plus.dim}, cni dim {rep.cni.dim}")
    print(f"  classification: {rep.classification}")
    if rep.cni_caveat:
        print(f"  caveat: {rep.cni_caveat}")
    print()


print("== g12: rank exactly 1, invertible grading, no positive weight ==")
report("g12")
print("The grading has no zero weight (an invertible derivation exists), "
      "but the weights mix signs, so no functional is positive on all of "
      "them: nothing can be contracted, cni+ is everything, and every "
      "injective endomorphism of a lattice is an automorphism.")
print()

print("== h12: characteristically nilpotent, rank 0 ==")
report("h12")
print("All derivations are nilpotent; the torus is trivial, the Cartan "
      "grading has a single zero weight, and the group is cohopfian.")
print()

print("== g7102: weakly dis-cohopfian but not dis-cohopfian ==")
report("g7102")
print("Weights {0, 1, 2, 3} with one zero-weight direction: the positive "
      "part contracts (cni+ = 0 gives weak dis-cohopfian-ness), but the "
      "one uncontracted direction survives every injective endomorphism, "
      "so the group is not dis-cohopfian.")
print()

print("== the 5-dim catalog classifies as dis-cohopfian across the board ==")
for n in ("heisenberg3", "l53", "l55", "l56", "l57", "remdl5"):
    rep = classify(get(n), seed=0)
    print(f"  {n}: {rep.classification}")
print("Note l55 and l56: not Carnot, yet contractable -- Carnot is "
      "strictly stronger than contractable.")
