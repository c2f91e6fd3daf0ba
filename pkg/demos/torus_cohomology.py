"""Cohomology of the 2-torus and its characteristic ring.

Run with ``python3 demos/torus_cohomology.py``.
"""

from lierinehart.cochain import (char_ring_dim, class_equal, cohomology_window, coordinate_form,
                                 ce_differential, exp_class, random_cochain)
from lierinehart.lralg import make_standard_algebra
import random

T = make_standard_algebra("torus", 2)       # Q[x^±1, y^±1] with theta_i = x_i d/dx_i
print(T, "axioms:", T.check_axioms().passed)

# Betti numbers in a window of multidegrees |w_i| <= D
for D in (2, 4):
    print("D =", D, [cohomology_window(T, p, D).dimension for p in range(3)])

# only multidegree 0 carries cohomology; theta_1 ^ theta_2 -> 1 spans H^2
f = coordinate_form(T, (0, 1))
print("H^2 representative:", cohomology_window(T, 2, 4).representatives)

# adding a coboundary does not change the class, rescaling does
eta = random_cochain(T, 1, random.Random(0))
g = f + ce_differential(eta)
print("f ~ f + d(eta):", class_equal(f, g), "   f ~ 2f:", class_equal(f, 2 * f))

# exp(f) = 1 + f on a surface; Char has dimension 1 here
print("exp(f) =", exp_class(f))
print("dim Char =", char_ring_dim(T, [f]).dimension)
