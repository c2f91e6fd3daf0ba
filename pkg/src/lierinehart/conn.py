"""L-connections on free A-modules and their characteristic forms.

A connection of rank ``r`` is given by one ``r x r`` matrix ``Omega_i`` per
basis element of ``L``; on coordinate vectors it acts as

    nabla(e_i)(v) = alpha(e_i)(v) + Omega_i v

with ``alpha(e_i)`` applied entrywise.  Matrices are numpy object arrays of
:class:`LaurentPoly`.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Dict, List, Tuple

import numpy as np

from .arith import LaurentPoly
from .cochain import (Cochain, CohomologyClass, EvenClassPolynomial, NotCocycleError,
                      ce_differential, shuffle_product)
from .lralg import LieRinehart

Pair = Tuple[int, int]


class InconsistentCurvatureError(RuntimeError):
    """``tr R`` failed to be closed, which valid input never produces."""


def zeros(P: LieRinehart, r: int, c: int | None = None) -> np.ndarray:
    m = np.empty((r, r if c is None else c), dtype=object)
    m.fill(P.ring.zero())
    return m


def identity(P: LieRinehart, r: int) -> np.ndarray:
    m = zeros(P, r)
    for k in range(r):
        m[k, k] = P.ring.one()
    return m


def entrywise(fn, m: np.ndarray) -> np.ndarray:
    out = np.empty(m.shape, dtype=object)
    for idx in np.ndindex(m.shape):
        out[idx] = fn(m[idx])
    return out


def matmul(P, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = zeros(P, a.shape[0], b.shape[1])
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = P.ring.zero()
            for k in range(a.shape[1]):
                if a[i, k] and b[k, j]:
                    acc = acc + a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def trace(P, m: np.ndarray) -> LaurentPoly:
    acc = P.ring.zero()
    for k in range(m.shape[0]):
        acc = acc + m[k, k]
    return acc


def is_zero_matrix(m: np.ndarray) -> bool:
    return all(not v for v in m.flat)


def matrix_to_json(m: np.ndarray):
    return [[str(v) for v in row] for row in m]


def matrix_from_json(P, rows) -> np.ndarray:
    r = len(rows)
    m = zeros(P, r, len(rows[0]) if rows else 0)
    for i, row in enumerate(rows):
        if len(row) != m.shape[1]:
            raise ValueError("ragged matrix")
        for j, s in enumerate(row):
            m[i, j] = P.ring.parse(s)
    return m


class Connection:
    """A rank-``r`` connection on the free module ``A^r``."""

    def __init__(self, P: LieRinehart, omegas):
        self.P = P
        omegas = [np.asarray(o, dtype=object) for o in omegas]
        if len(omegas) != P.rank:
            raise ValueError(f"need one matrix per basis element of L ({P.rank})")
        if P.rank:
            r = omegas[0].shape[0]
        else:
            raise ValueError("connections need rank(L) >= 1")
        if r < 1:
            raise ValueError("module rank must be >= 1")
        for o in omegas:
            if o.shape != (r, r):
                raise ValueError("connection matrices must all be r x r")
        self.omegas = [entrywise(P.ring.coerce, o) for o in omegas]
        self.rank = r

    def __repr__(self):
        return f"Connection(rank={self.rank}, {self.P!r})"

    def apply(self, i: int, v) -> np.ndarray:
        """``nabla(e_i)`` on a coordinate column vector."""
        v = np.asarray(v, dtype=object)
        col = v.reshape(self.rank, 1)
        out = entrywise(lambda a: self.P.derivation(i, a), col) + matmul(self.P, self.omegas[i], col)
        return out.reshape(v.shape)

    def to_json(self):
        return {"rank": self.rank, "omega": [matrix_to_json(o) for o in self.omegas]}

    @classmethod
    def from_json(cls, P, data) -> "Connection":
        try:
            omegas = [matrix_from_json(P, m) for m in data["omega"]]
            if int(data.get("rank", omegas[0].shape[0])) != omegas[0].shape[0]:
                raise ValueError("declared rank disagrees with matrix size")
        except (KeyError, TypeError, IndexError, AttributeError) as exc:
            raise ValueError(f"malformed connection: {exc!r}") from exc
        return cls(P, omegas)


def flat_connection(P: LieRinehart, r: int) -> Connection:
    return Connection(P, [zeros(P, r) for _ in range(P.rank)])


def scalar_connection(P: LieRinehart, r: int, one_form: Cochain) -> Connection:
    """``Omega_i = omega(e_i) * Id``; its curvature is ``d(omega) * Id``."""
    if one_form.degree != 1:
        raise ValueError("need a 1-form")
    return Connection(P, [one_form.value((i,)) * identity(P, r) for i in range(P.rank)])


def random_connection(P: LieRinehart, r: int, rng: random.Random, density: float = 0.6,
                      terms: int = 2) -> Connection:
    omegas = []
    for _ in range(P.rank):
        m = zeros(P, r)
        for idx in np.ndindex(m.shape):
            if rng.random() < density:
                m[idx] = P.ring.random_poly(rng, terms=terms)
        omegas.append(m)
    return Connection(P, omegas)


def curvature(conn: Connection) -> Dict[Pair, np.ndarray]:
    """``R(e_i, e_j)`` for ``i < j``.

    ``R = alpha_i(Omega_j) - alpha_j(Omega_i) + [Omega_i, Omega_j] - sum_k c_ij^k Omega_k``
    """
    P, om = conn.P, conn.omegas
    out = {}
    for i, j in itertools.combinations(range(P.rank), 2):
        R = (entrywise(lambda a: P.derivation(i, a), om[j])
             - entrywise(lambda a: P.derivation(j, a), om[i])
             + matmul(P, om[i], om[j]) - matmul(P, om[j], om[i]))
        for k, c in enumerate(P.structure(i, j)):
            if c:
                R = R - entrywise(lambda a: c * a, om[k])
        out[(i, j)] = R
    return out


def is_curvature_type(conn: Connection, f: Cochain):
    """Return ``(ok, deviation)`` where ``deviation = R - f * Id`` per pair."""
    if f.degree != 2:
        raise ValueError("curvature type is a 2-cochain")
    P = conn.P
    ident = identity(P, conn.rank)
    dev = {}
    for pair, R in curvature(conn).items():
        dev[pair] = R - entrywise(lambda a: f.value(pair) * a, ident)
    return all(is_zero_matrix(m) for m in dev.values()), dev


def trace_curvature(conn: Connection) -> Cochain:
    P = conn.P
    return Cochain(P, 2, {pair: trace(P, R) for pair, R in curvature(conn).items()})


def c1(conn: Connection, window: int = 4) -> CohomologyClass:
    """First Chern class: the class of ``tr R``."""
    t = trace_curvature(conn)
    if not ce_differential(t).is_zero():
        raise InconsistentCurvatureError(f"tr R is not closed: {ce_differential(t)!r}")
    try:
        return CohomologyClass(t, window)
    except NotCocycleError as exc:       # pragma: no cover - guarded above
        raise InconsistentCurvatureError(str(exc)) from exc


def _matrix_form_power(conn: Connection, m: int) -> Dict[tuple, np.ndarray]:
    P = conn.P
    R = curvature(conn)
    out = {(): identity(P, conn.rank)}
    for _ in range(m):
        out = shuffle_product(out, R, lambda a, b: matmul(P, a, b))
    return out


def chern_character(conn: Connection) -> EvenClassPolynomial:
    """``sum_m tr(R^m) / m!`` with ``R^m`` the wedge power of the matrix 2-form."""
    P = conn.P
    comps = []
    for m in range(P.rank // 2 + 1):
        power = _matrix_form_power(conn, m)
        vals = {k: trace(P, M) / math.factorial(m) for k, M in power.items()}
        comps.append(Cochain(P, 2 * m, vals))
    return EvenClassPolynomial(P, comps)


def _kron(P, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ra, rb = a.shape[0], b.shape[0]
    out = zeros(P, ra * rb)
    for i1, j1 in np.ndindex(a.shape):
        if not a[i1, j1]:
            continue
        for i2, j2 in np.ndindex(b.shape):
            if b[i2, j2]:
                out[i1 * rb + i2, j1 * rb + j2] = a[i1, j1] * b[i2, j2]
    return out


def tensor_conn(a: Connection, b: Connection) -> Connection:
    """``nabla (x) nabla'`` on ``A^r (x) A^r'`` (basis ``u_s (x) v_t`` at index ``s*r' + t``)."""
    if a.P != b.P:
        raise ValueError("connections must share a presentation")
    P = a.P
    ia, ib = identity(P, a.rank), identity(P, b.rank)
    return Connection(P, [_kron(P, oa, ib) + _kron(P, ia, ob)
                          for oa, ob in zip(a.omegas, b.omegas)])


def wedge_basis(r: int, d: int) -> List[Tuple[int, ...]]:
    return list(itertools.combinations(range(r), d))


def wedge_power_conn(conn: Connection, d: int) -> Connection:
    """Induced connection on ``wedge^d A^r`` in the basis of sorted d-subsets."""
    r = conn.rank
    if not 1 <= d <= r:
        raise ValueError(f"exterior degree {d} out of range 1..{r}")
    P = conn.P
    basis = wedge_basis(r, d)
    index = {S: n for n, S in enumerate(basis)}
    omegas = []
    for om in conn.omegas:
        M = zeros(P, len(basis))
        for col, S in enumerate(basis):
            for pos, s in enumerate(S):
                for t in range(r):
                    c = om[t, s]
                    if not c:
                        continue
                    new = S[:pos] + (t,) + S[pos + 1:]
                    if len(set(new)) < d:
                        continue
                    key = tuple(sorted(new))
                    inv = sum(1 for a in range(d) for b in range(a + 1, d) if new[a] > new[b])
                    M[index[key], col] = M[index[key], col] + (c if inv % 2 == 0 else -c)
        omegas.append(M)
    return Connection(P, omegas)
