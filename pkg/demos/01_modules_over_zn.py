#!/usr/bin/env python3
"""Finite Z/n-modules: canonical forms, hom groups, duality, injectivity.

Everything in the toolkit is exact integer arithmetic; this walk-through
shows the module layer that the representation theory is built on.
"""

import numpy as np

from quiverhom import FinMod, ModHom, Modulus, cyclic, hom_group, present
from quiverhom.znmod import (
    is_injective_module,
    is_pure_module_ses,
    is_split,
    matlis_dual,
    matlis_dual_hom,
    ModSES,
)

Z4 = Modulus(4)
Z6 = Modulus(6)

# --- presentations -----------------------------------------------------------
# A module given by generators and relations is put into its invariant-factor
# canonical form.  One generator with the relation 2g = 0 over Z/4 is Z/2:
m, proj, sect = present([[2]], Z4)
print("coker(2: Z/4 -> Z/4) =", m)

# diag(2, 3) over Z/6 regroups into a single cyclic factor:
m, proj, sect = present([[2, 0], [0, 3]], Z6)
print("coker(diag(2,3)) over Z/6 =", m)

# --- hom groups --------------------------------------------------------------
grp, basis = hom_group(cyclic(Z4, 2), cyclic(Z4, 4))
print("Hom(Z/2, Z/4) over Z/4:", grp, "with", len(basis), "generator(s)")
# the generator doubles: it is the matrix [2]
print("generator matrix:", basis[0].matrix.tolist())

# --- Matlis duality ----------------------------------------------------------
# Hom(-, Z/n) is exact on finite modules and fixes invariant factors.
f = ModHom(cyclic(Z4, 4), cyclic(Z4, 4), [[2]])
print("dual of doubling is doubling:", matlis_dual_hom(f).matrix.tolist())
print("(Z/2)+ =", matlis_dual(cyclic(Z4, 2)))

# --- injectivity with certificates -------------------------------------------
ok, cert = is_injective_module(cyclic(Z4, 4))
print("Z/4 injective over Z/4:", ok)
ok, cert = is_injective_module(cyclic(Z4, 2))
print("Z/2 injective over Z/4:", ok, "| witness ideal:", cert["witness"]["ideal"])
# the witness is the ideal map (2) -> Z/2, 2 |-> 1, which cannot extend

# --- splitness and purity agree on finite modules -----------------------------
f = ModHom(cyclic(Z4, 2), cyclic(Z4, 4), [[2]])
g = ModHom(cyclic(Z4, 4), cyclic(Z4, 2), [[1]])
ses = ModSES(f, g)
print("0 -> Z/2 -> Z/4 -> Z/2 -> 0 split:", is_split(ses) is not None)
pure, witness = is_pure_module_ses(ses)
print("pure:", pure, "| failing divisor:", witness)
