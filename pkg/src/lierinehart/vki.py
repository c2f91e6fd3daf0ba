"""The window modules V^{k,i} over a twisted enveloping algebra.

``V^{k,i}`` is the free ``A``-module on the ordered generator monomials
``e^P`` with ``k <= |P| <= k+i-1``.  A basis element ``e_j`` of ``L`` acts by
left multiplication in ``U(A, L, f)`` followed by projection onto that degree
window, which gives an ``L``-connection.  Its curvature is compared with
``f * Id``: on monomials far from both window edges they agree, near the edges
the projection leaks and the report records by how much.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Tuple

import numpy as np

from .cochain import Cochain, CohomologyClass, NotCocycleError, is_cocycle
from .conn import Connection, curvature, is_zero_matrix, matrix_to_json, zeros
from .env import RewriteSystem, UElement, degree_window
from .kledger import KAtom, KClass

Key = Tuple[int, ...]


def rank_formula(k: int, i: int, l: int) -> int:
    """``C(l+k+i-1, l) - C(l+k-1, l)``."""
    return comb(l + k + i - 1, l) - comb(l + k - 1, l)


def window_monomials(l: int, k: int, i: int) -> List[Key]:
    """Exponent vectors with ``k <= |P| <= k+i-1``, by degree then reverse-lex."""
    out = []
    for deg in range(k, k + i):
        for combo in itertools.combinations_with_replacement(range(l), deg):
            exps = [0] * l
            for t in combo:
                exps[t] += 1
            out.append(tuple(exps))
    out.sort(key=lambda p: (sum(p), tuple(-x for x in p)))
    return out


@dataclass
class RankCheck:
    k: int
    i: int
    l: int
    enumerated: int
    formula: int

    @property
    def ok(self):
        return self.enumerated == self.formula

    def to_json(self):
        return {"k": self.k, "i": self.i, "l": self.l, "enumerated": self.enumerated,
                "formula": self.formula, "ok": self.ok}


def rank_check(k: int, i: int, l: int) -> RankCheck:
    if min(k, i, l) < 1:
        raise ValueError("k, i and l must all be >= 1")
    return RankCheck(k, i, l, len(window_monomials(l, k, i)), rank_formula(k, i, l))


def _key_str(p: Key) -> str:
    return ",".join(str(x) for x in p)


@dataclass
class VkiModule:
    system: RewriteSystem
    k: int
    i: int
    basis: List[Key]
    connection: Connection

    @property
    def P(self):
        return self.system.P

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def lo(self) -> int:
        return self.k

    @property
    def hi(self) -> int:
        return self.k + self.i

    def project(self, u: UElement) -> UElement:
        return degree_window(u, self.lo, self.hi)

    def element(self, coords) -> UElement:
        """The window element with the given coordinate column."""
        return self.system.element({p: a for p, a in zip(self.basis, coords) if a})

    def coordinates(self, u: UElement) -> np.ndarray:
        index = {p: n for n, p in enumerate(self.basis)}
        col = zeros(self.P, self.rank, 1)[:, 0]
        for key, a in u.items():
            if key not in index:
                raise ValueError(f"term e^{key} lies outside the window")
            col[index[key]] = a
        return col

    def act(self, j: int, u: UElement) -> UElement:
        """``nabla(e_j)`` computed in the enveloping algebra."""
        return self.project(self.system.left_gen(j, u))

    def to_json(self, report: "CurvatureReport | None" = None):
        out = {"k": self.k, "i": self.i, "rank": self.rank,
               "basis": [_key_str(p) for p in self.basis],
               "omega": [matrix_to_json(o) for o in self.connection.omegas]}
        if report is not None:
            out["curvature_deviation"] = {f"{a + 1},{b + 1}": matrix_to_json(m)
                                          for (a, b), m in sorted(report.deviation.items())}
            out["interior_scalar"] = report.interior_scalar
            out["interior"] = [_key_str(self.basis[n]) for n in report.interior]
            out["oracle_agrees"] = report.oracle_agrees
        return out


def build_vki(S: RewriteSystem, k: int, i: int) -> VkiModule:
    if S.mode != "twisted":
        raise ValueError("V^{k,i} is built over the twisted algebra")
    if k < 1 or i < 1:
        raise ValueError("k and i must be >= 1")
    if not is_cocycle(S.f):
        raise NotCocycleError("the twist f must be a cocycle")
    P = S.P
    basis = window_monomials(P.rank, k, i)
    index = {p: n for n, p in enumerate(basis)}
    omegas = []
    for j in range(P.rank):
        M = zeros(P, len(basis))
        for col, p in enumerate(basis):
            image = degree_window(S.left_gen(j, S.monomial(p)), k, k + i)
            for key, a in image.items():
                M[index[key], col] = a
        omegas.append(M)
    return VkiModule(S, k, i, basis, Connection(P, omegas))


@dataclass
class CurvatureReport:
    module: VkiModule
    curvature: Dict[Tuple[int, int], np.ndarray]
    operator_route: Dict[Tuple[int, int], np.ndarray]
    unprojected: Dict[Tuple[int, int], np.ndarray]
    deviation: Dict[Tuple[int, int], np.ndarray]
    interior: List[int]
    boundary: List[int]
    oracle_agrees: bool
    notes: List[str] = field(default_factory=list)

    @property
    def interior_scalar(self) -> bool:
        """Curvature equals ``f * Id`` on every interior column."""
        return all(not m[r, c] for m in self.deviation.values()
                   for c in self.interior for r in range(m.shape[0]))

    @property
    def scalar_type(self) -> bool:
        return all(is_zero_matrix(m) for m in self.deviation.values())

    def to_json(self):
        return self.module.to_json(self)


def _is_interior(V: VkiModule, p: Key) -> bool:
    # every product met while computing the curvature stays inside the window
    S, l = V.system, V.P.rank
    v = S.monomial(p)
    for b in range(l):
        eb = S.left_gen(b, v)
        if V.project(eb) != eb:
            return False
        for a in range(l):
            eab = S.left_gen(a, eb)
            if V.project(eab) != eab:
                return False
    return True


def curvature_report(V: VkiModule) -> CurvatureReport:
    P, S = V.P, V.system
    R = curvature(V.connection)
    operator, unprojected, deviation = {}, {}, {}
    for (a, b) in R:
        op = zeros(P, V.rank)
        un = zeros(P, V.rank)
        for col, p in enumerate(V.basis):
            v = S.monomial(p)
            w = V.act(a, V.act(b, v)) - V.act(b, V.act(a, v))
            full = S.left_gen(a, S.left_gen(b, v)) - S.left_gen(b, S.left_gen(a, v))
            for kk, c in enumerate(P.structure(a, b)):
                if c:
                    w = w - c * V.act(kk, v)
                    full = full - c * S.left_gen(kk, v)
            op[:, col] = V.coordinates(w)
            un[:, col] = V.coordinates(V.project(full))
        operator[(a, b)] = op
        unprojected[(a, b)] = un
        deviation[(a, b)] = R[(a, b)] - un
    agrees = all(is_zero_matrix(R[pair] - operator[pair]) for pair in R)
    interior = [n for n, p in enumerate(V.basis) if _is_interior(V, p)]
    boundary = [n for n in range(V.rank) if n not in set(interior)]
    report = CurvatureReport(V, R, operator, unprojected, deviation, interior, boundary, agrees)
    if not R:
        report.notes.append("rank(L) = 1: there are no pairs, the curvature is zero")
    return report


def _representative(c) -> Cochain:
    rep = c.representative if isinstance(c, CohomologyClass) else c
    if rep.degree != 2:
        raise ValueError("classes live in degree 2")
    if not is_cocycle(rep):
        raise NotCocycleError("the class representative is not a cocycle")
    return rep


def psi_formal(c, k: int, i: int) -> KClass:
    """The class of ``V^{k,i}`` twisted by ``c / r``: rank ``r``, ``c1 = c``."""
    rep = _representative(c)
    r = rank_formula(k, i, rep.P.rank)
    return KClass.atom(KAtom(r, rep, True, f"psi^{k},{i}"))


def line_class(c, k: int, i: int, d: int | None = None) -> KClass:
    """``wedge^d V^{k,i}(F)`` with ``F = c / (d * C(r, d))`` so that its ``c1`` is ``c``.

    ``r`` is the rank of ``V^{k,i}``.  The default ``d = r`` gives the
    rank-one determinant line.
    """
    rep = _representative(c)
    r = rank_formula(k, i, rep.P.rank)
    if d is None:
        d = r
    if not 1 <= d <= r:
        raise ValueError(f"exterior degree {d} out of range 1..{r}")
    return KClass.atom(KAtom(comb(r, d), rep, True, f"L^{k},{i},{d}"))


def line_twist(c, k: int, i: int, d: int | None = None) -> Cochain:
    """The twist ``F`` used by :func:`line_class`."""
    rep = _representative(c)
    r = rank_formula(k, i, rep.P.rank)
    d = r if d is None else d
    return rep / (d * comb(r, d))


__all__ = ["rank_formula", "window_monomials", "RankCheck", "rank_check", "VkiModule",
           "build_vki", "CurvatureReport", "curvature_report", "psi_formal", "line_class",
           "line_twist"]
