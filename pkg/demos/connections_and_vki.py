"""Connections, Chern characters and the window modules V^{k,i}.

Run with ``python3 demos/connections_and_vki.py``.
"""

from lierinehart.cochain import ce_differential, coordinate_form
from lierinehart.conn import (chern_character, curvature, is_curvature_type, matrix_to_json,
                              scalar_connection,
                              wedge_power_conn)
from lierinehart.env import RewriteSystem
from lierinehart.lralg import make_standard_algebra
from lierinehart.vki import build_vki, curvature_report, rank_formula

# on the affine plane, omega = x dy gives a connection of scalar type dx ^ dy
A2 = make_standard_algebra("affine", 2)
omega = coordinate_form(A2, (1,), A2.ring.gen(0))
nabla = scalar_connection(A2, 3, omega)
print("curvature:", matrix_to_json(curvature(nabla)[(0, 1)]))
print("Ch =", chern_character(nabla))

# the d-th exterior power has type d * f
f = ce_differential(omega)
for d in (1, 2, 3):
    print(f"wedge^{d} has type {d}f:", is_curvature_type(wedge_power_conn(nabla, d), d * f)[0])

# V^{k,i} over point-abelian(2) twisted by lambda = 5
P = make_standard_algebra("point-abelian", 2)
S = RewriteSystem(P, coordinate_form(P, (0, 1), 5))
V = build_vki(S, 2, 4)
print("rank", V.rank, "=", rank_formula(2, 4, 2))
report = curvature_report(V)
print("interior monomials:", [V.basis[n] for n in report.interior])
print("curvature = 5 Id on the interior:", report.interior_scalar)
print("scalar on the whole module:", report.scalar_type)
edge = [V.basis[n] for n in report.boundary
        if any(report.deviation[(0, 1)][m, n] for m in range(V.rank))]
print("columns where the window leaks:", edge)
