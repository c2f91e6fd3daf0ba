"""Normal forms in twisted enveloping algebras and the diamond check.

Run with ``python3 demos/enveloping_algebra.py``.
"""

from lierinehart.cochain import ce_differential, coordinate_form
from lierinehart.env import RewriteSystem, coef, diamond_check, gen
from lierinehart.lralg import make_standard_algebra

# the Weyl algebra: e = d/dx acting on Q[x]
A1 = make_standard_algebra("affine", 1)
W = RewriteSystem(A1)
x = A1.ring.gen(0)
print("e e x   ->", W.normal_form([gen(0), gen(0), coef(x)]))

# twisting an abelian L by a constant 2-form makes the generators fail to commute
P = make_standard_algebra("point-abelian", 2)
S = RewriteSystem(P, coordinate_form(P, (0, 1), 5))
e1, e2 = S.generator(0), S.generator(1)
print("[e1, e2] ->", e1 * e2 - e2 * e1)

# the central form keeps track of z; z -> 1 recovers the twisted algebra
C = RewriteSystem(P, S.f, "central")
u = C.normal_form([gen(1), gen(0)])
print("central:", u, "   quotient:", C.quotient(u))

# overlap ambiguities resolve exactly when the twist is a cocycle
T3 = make_standard_algebra("torus", 3)
good = diamond_check(RewriteSystem(T3, coordinate_form(T3, (0, 1), 2)))
print("constant twist on torus(3): resolvable =", good.resolvable, f"({len(good.overlaps)} overlaps)")
f = coordinate_form(T3, (0, 1), T3.ring.gen(2))
bad = diamond_check(RewriteSystem(T3, f))
for o in bad.failures:
    print("fails:", o.kind, [t[1] + 1 for t in o.word], "discrepancy", o.discrepancy)
print("df =", ce_differential(f))
