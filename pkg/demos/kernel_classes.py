"""The formal ledger: psi classes, line classes and the kernel elements.

Run with ``python3 demos/kernel_classes.py``.
"""

from fractions import Fraction

from lierinehart.cochain import coordinate_form
from lierinehart.kledger import KClass, k_c1, k_ch, kernel_eta, kernel_omega
from lierinehart.lralg import make_standard_algebra
from lierinehart.vki import line_class, psi_formal

T = make_standard_algebra("torus", 2)
f = coordinate_form(T, (0, 1))

# psi^{k,i}(c) has rank C(l+k+i-1, l) - C(l+k-1, l) and first Chern class c
for k, i in [(1, 1), (1, 2), (2, 2)]:
    psi = psi_formal(Fraction(1, 2) * f, k, i)
    print(f"psi^{k},{i}: rank {psi.rank()}, c1 = {k_c1(psi)}")

# determinant lines: rank one, c1 = f, so no flat structure exists
L = line_class(f, 1, 2)
print("line:", L, " Ch =", k_ch(L))

# omega: the product of the lines has c1 = 0 but is not the trivial class
om = kernel_omega([f], [1], [2])
print("omega:", om.element, " c1 = 0:", om.c1_vanishes)

# eta: the sum of the lines. Ch is additive, so Ch(eta - 1) keeps the rank
et = kernel_eta([f], [1], [2])
print("eta - 1:", et.element)
print("Ch(eta - 1) =", et.ch, " vanishes:", et.ch_vanishes)
print("Ch(eta - 2) =", k_ch(et.element - KClass.one(T)))
