#!/usr/bin/env python3
"""The group side: BCH multiplication, lattices, dilations, systolic growth.

Builds the Heisenberg group in logarithmic coordinates, certifies a lattice
subgroup, computes the dilation modulus, and reproduces the quartic
systolic-growth slope with exact indices.
"""

from carnot.catalog import get
from carnot.exactlin import QQ, lattice_index, mat_vec
from carnot.gradings import carnot_test
from carnot.nilgroup import (
    NilGroup, defendo_modulus, dilation, growth_degree, guivarch_length,
    systolic_experiment, uppersys_family,
)

a = get("heisenberg3")
g = NilGroup.from_algebra(a)
gr = carnot_test(a).grading

def vec(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


print("== BCH group law (exact) ==")
x, y = [1, 0, 0], [0, 1, 0]
print(f"exp(X1) * exp(X2)            = exp{vec(g.multiply(x, y))}")
print(f"exp(X2) * exp(X1)            = exp{vec(g.multiply(y, x))}")
c = g.multiply(g.multiply(x, y), g.multiply(g.inverse(x), g.inverse(y)))
print(f"group commutator [exp X1, exp X2] = exp{vec(c)}")
print()

print("== lattice subgroup and dilations ==")
lat, base = uppersys_family(g, 1)
print(f"log-lattice basis (derived direction rescaled by 1/{base}):")
for b in lat.log_lattice.basis():
    print(f"  {vec(b)}")
print(f"closure under the group law certified: {lat.verified}")

k0, cert = defendo_modulus(g, gr, lat)
print(f"dilation modulus k0 = {k0}: delta(m) maps the lattice into itself "
      f"for every m = 1 mod {k0}")
m = k0 + 1
dm = dilation(g, gr, m)
img = lat.log_lattice.apply(dm)
print(f"m = {m}: images of the basis are lattice members: "
      f"{all(lat.log_lattice.contains(mat_vec(dm, b)) for b in lat.log_lattice.basis())}")
print(f"index [L : delta({m}) L] = {lattice_index(lat.log_lattice, img)} "
      f"= {m}^{growth_degree(a)} exactly")
print()

print("== systolic growth experiment ==")
print("Guivarc'h length of (3, -2, 0):",
      guivarch_length(g, gr, [3, -2, 0]))
print("Guivarc'h length of (0, 0, 9): ",
      guivarch_length(g, gr, [0, 0, 9]), "(degree-2 direction)")
exp = systolic_experiment(g, gr, lat, [2, 3, 4, 5, 6, 7, 8])
print(f"{'m':>3} {'index':>8} {'systole':>10}")
for row in exp["rows"]:
    print(f"{row['m']:>3} {row['index']:>8} {row['systole']:>10.4f}")
print(f"log(index) / log(systole) slope: {exp['slope']:.4f} "
      f"(growth degree {growth_degree(a)})")
print(f"caveat: {exp['caveat']}")
