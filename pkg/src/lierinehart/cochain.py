"""The Lie-Rinehart cochain complex of a free presentation.

A p-cochain is an alternating ``A``-multilinear map ``L^p -> A``; since ``L``
is free it is stored by its values on increasing basis tuples.  Cohomology is
computed exactly, one multidegree at a time, for presentations whose anchor
and bracket are homogeneous (see :meth:`LieRinehart.weights`).
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from . import linalg
from .arith import LaurentPoly
from .lralg import LieRinehart

Index = Tuple[int, ...]


class NotCocycleError(ValueError):
    """A cocycle was required."""


def sort_sign(idx):
    """Return ``(sign, sorted_tuple)``; sign is 0 when an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign, tuple(sorted(idx))


def shuffle_product(a: Dict[Index, object], b: Dict[Index, object], mul):
    """Alternating (shuffle) product of two families of values on sorted tuples.

    Works for any value type with ``mul`` and ``+``; callers filter zeros.
    """
    out = {}
    for S, u in a.items():
        for T, v in b.items():
            if set(S) & set(T):
                continue
            inversions = sum(1 for s in S for t in T if s > t)
            key = tuple(sorted(S + T))
            term = mul(u, v)
            if inversions % 2:
                term = -term
            out[key] = out[key] + term if key in out else term
    return out


class Cochain:
    """An alternating p-form on ``L`` with values in ``A``."""

    __slots__ = ("P", "degree", "_values", "_hash")

    def __init__(self, P: LieRinehart, degree: int, values=None):
        if degree < 0:
            raise ValueError("cochain degree must be non-negative")
        self.P = P
        self.degree = degree
        clean: Dict[Index, LaurentPoly] = {}
        for key, val in (values or {}).items():
            key = tuple(key)
            if len(key) != degree or any(not 0 <= k < P.rank for k in key):
                raise ValueError(f"bad index tuple {key} for a {degree}-cochain on rank {P.rank}")
            sign, skey = sort_sign(key)
            if not sign:
                continue
            v = P.ring.coerce(val)
            clean[skey] = clean[skey] + sign * v if skey in clean else sign * v
        self._values = {k: v for k, v in sorted(clean.items()) if v}
        self._hash = None

    @classmethod
    def _raw(cls, P, degree, values):
        c = cls.__new__(cls)
        c.P, c.degree, c._hash = P, degree, None
        c._values = {k: v for k, v in sorted(values.items()) if v}
        return c

    @classmethod
    def zero(cls, P, degree):
        return cls._raw(P, degree, {})

    @classmethod
    def constant(cls, P, a):
        """The 0-cochain ``a``."""
        return cls(P, 0, {(): a})

    @property
    def values(self) -> Dict[Index, LaurentPoly]:
        return dict(self._values)

    def items(self):
        return self._values.items()

    def value(self, idx) -> LaurentPoly:
        """Value on an arbitrary tuple of basis indices."""
        sign, key = sort_sign(idx)
        if not sign:
            return self.P.ring.zero()
        v = self._values.get(key)
        if v is None:
            return self.P.ring.zero()
        return v if sign > 0 else -v

    def is_zero(self) -> bool:
        return not self._values

    def __bool__(self):
        return bool(self._values)

    def _check(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if other.P != self.P or other.degree != self.degree:
            raise ValueError("cochains must share presentation and degree")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._values)
        for k, v in other._values.items():
            out[k] = out[k] + v if k in out else v
        return Cochain._raw(self.P, self.degree, out)

    def __neg__(self):
        return Cochain._raw(self.P, self.degree, {k: -v for k, v in self._values.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rmul__(self, a):
        """Multiply by a scalar or by a function ``a`` in ``A``."""
        return Cochain._raw(self.P, self.degree, {k: a * v for k, v in self._values.items()})

    __mul__ = __rmul__

    def __truediv__(self, q):
        return Cochain._raw(self.P, self.degree, {k: v / q for k, v in self._values.items()})

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.P == other.P and self.degree == other.degree
                and self._values == other._values)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._values.items())))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self._values.items())
        return f"Cochain(degree={self.degree}, {{{body}}})"

    def d(self) -> "Cochain":
        return ce_differential(self)

    def wedge(self, other) -> "Cochain":
        return wedge(self, other)

    def to_json(self):
        return {"degree": self.degree,
                "values": {",".join(str(i + 1) for i in k): str(v)
                           for k, v in self._values.items()}}

    @classmethod
    def from_json(cls, P, data) -> "Cochain":
        try:
            degree = int(data["degree"])
            vals = {}
            for key, s in data.get("values", {}).items():
                idx = tuple(int(t) - 1 for t in key.split(",")) if key else ()
                vals[idx] = P.ring.parse(s)
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed cochain: {exc!r}") from exc
        return cls(P, degree, vals)


def coordinate_form(P: LieRinehart, idx, coeff=1) -> Cochain:
    """The form taking value ``coeff`` on ``(e_idx...)`` and 0 on other sorted tuples."""
    return Cochain(P, len(idx), {tuple(idx): coeff})


def ce_differential(omega: Cochain) -> Cochain:
    """Chevalley-Eilenberg-Rinehart differential of ``omega``."""
    P, p = omega.P, omega.degree
    if p + 1 > P.rank or omega.is_zero():
        return Cochain.zero(P, p + 1)
    zero = P.ring.zero()
    out = {}
    for J in itertools.combinations(range(P.rank), p + 1):
        acc = zero
        for a, j in enumerate(J):
            rest = J[:a] + J[a + 1:]
            v = omega._values.get(rest)
            if v:
                term = P.derivation(j, v)
                acc = acc + term if a % 2 == 0 else acc - term
        if P.brackets:
            for a, b in itertools.combinations(range(p + 1), 2):
                c = P.structure(J[a], J[b])
                rest = J[:a] + J[a + 1:b] + J[b + 1:]
                for k, ck in enumerate(c):
                    if ck:
                        term = ck * omega.value((k,) + rest)
                        acc = acc + term if (a + b) % 2 == 0 else acc - term
        if acc:
            out[J] = acc
    return Cochain._raw(P, p + 1, out)


def wedge(omega: Cochain, eta: Cochain) -> Cochain:
    if omega.P != eta.P:
        raise ValueError("cochains must share a presentation")
    P = omega.P
    deg = omega.degree + eta.degree
    if deg > P.rank:
        return Cochain.zero(P, deg)
    return Cochain._raw(P, deg, shuffle_product(omega._values, eta._values, lambda u, v: u * v))


def is_cocycle(omega: Cochain) -> bool:
    return ce_differential(omega).is_zero()


# -- graded pieces -------------------------------------------------------------

def weight_parts(omega: Cochain) -> Dict[Tuple[int, ...], Cochain]:
    """Split ``omega`` by multidegree (the differential preserves each part)."""
    shifts = omega.P.weights()
    n = omega.P.ring.n
    parts: Dict[Tuple[int, ...], Dict[Index, LaurentPoly]] = {}
    for I, v in omega.items():
        base = [sum(shifts[i][k] for i in I) for k in range(n)]
        for e, piece in v.grade_split().items():
            w = tuple(e[k] - base[k] for k in range(n))
            parts.setdefault(w, {})[I] = piece
    return {w: Cochain._raw(omega.P, omega.degree, vals) for w, vals in sorted(parts.items())}


def _piece_basis(P, p, w):
    shifts = P.weights()
    n = P.ring.n
    out = []
    if p < 0 or p > P.rank:
        return out
    for I in itertools.combinations(range(P.rank), p):
        v = tuple(w[k] + sum(shifts[i][k] for i in I) for k in range(n))
        if all(x >= 0 or inv for x, inv in zip(v, P.ring.invertible)):
            out.append((I, v))
    return out


def _basis_cochain(P, p, item):
    I, v = item
    return Cochain._raw(P, p, {I: P.ring.monomial(v)})


def _vector(omega, index):
    vec = [Fraction(0)] * len(index)
    for I, val in omega.items():
        for e, c in val.items():
            vec[index[(I, e)]] += c
    return vec


def _d_columns(P, p, w, src, dst):
    index = {item: r for r, item in enumerate(dst)}
    return [_vector(ce_differential(_basis_cochain(P, p, item)), index) for item in src]


@dataclass
class _Piece:
    weight: Tuple[int, ...]
    basis: list                    # (I, exponent) pairs spanning C^p at this weight
    image_cols: list               # d(C^{p-1}) as column vectors in that basis
    reps: list                     # cocycle vectors completing the image to the kernel

    @property
    def dimension(self):
        return len(self.reps)


def _compute_piece(P, p, w):
    src, mid, dst = _piece_basis(P, p - 1, w), _piece_basis(P, p, w), _piece_basis(P, p + 1, w)
    image_cols = _d_columns(P, p - 1, w, src, mid) if src and mid else []
    if mid:
        dcols = _d_columns(P, p, w, mid, dst) if dst else []
        kernel = (linalg.nullspace(linalg.columns_to_rows(dcols, len(dst)), len(mid))
                  if dst else [[Fraction(int(r == c)) for r in range(len(mid))]
                               for c in range(len(mid))])
    else:
        kernel = []
    span = [list(c) for c in image_cols]
    r = linalg.rank(span, len(mid)) if span else 0
    reps = []
    for v in kernel:
        r2 = linalg.rank(span + [v], len(mid))
        if r2 > r:
            span.append(v)
            reps.append(v)
            r = r2
    return _Piece(w, mid, image_cols, reps)


def window_weights(P: LieRinehart, D: int):
    return list(itertools.product(range(-D, D + 1), repeat=P.ring.n))


def _threads():
    try:
        return max(1, int(os.environ.get("WORKBENCH_THREADS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=64)
def _pieces(P: LieRinehart, p: int, D: int):
    P.require_valid()
    P.weights()
    weights = window_weights(P, D)
    threads = _threads()
    if threads > 1:
        # map() keeps input order, so the merge is deterministic
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pieces = list(pool.map(lambda w: _compute_piece(P, p, w), weights))
    else:
        pieces = [_compute_piece(P, p, w) for w in weights]
    return {pc.weight: pc for pc in pieces}


def _vec_to_cochain(P, p, basis, vec):
    vals: Dict[Index, LaurentPoly] = {}
    for (I, e), c in zip(basis, vec):
        if c:
            t = P.ring.monomial(e, c)
            vals[I] = vals[I] + t if I in vals else t
    return Cochain._raw(P, p, vals)


@dataclass
class CohomologyReport:
    p: int
    D: int
    dimension: int
    representatives: List[Cochain]
    by_weight: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    def to_json(self):
        return {"p": self.p, "D": self.D, "dimension": self.dimension,
                "representatives": [r.to_json() for r in self.representatives],
                "by_weight": {",".join(map(str, w)): d for w, d in self.by_weight.items()}}


def cohomology_window(P: LieRinehart, p: int, D: int) -> CohomologyReport:
    """Betti number and representative cocycles of ``H^p`` over weights ``|w_i| <= D``."""
    if D < 0:
        raise ValueError("window bound must be non-negative")
    pieces = _pieces(P, p, D)
    reps, by_weight = [], {}
    for w in sorted(pieces):
        pc = pieces[w]
        if pc.dimension:
            by_weight[w] = pc.dimension
            reps.extend(_vec_to_cochain(P, p, pc.basis, v) for v in pc.reps)
    return CohomologyReport(p, D, len(reps), reps, by_weight)


def _require_cocycle(omega, what="input"):
    if not is_cocycle(omega):
        raise NotCocycleError(f"{what} is not a cocycle: d = {ce_differential(omega)!r}")


def is_exact_in_window(omega: Cochain, D: int) -> bool:
    """True iff ``omega = d(eta)`` for some ``eta`` supported in the window."""
    P, p = omega.P, omega.degree
    if p == 0:
        return omega.is_zero()
    pieces = _pieces(P, p, D)
    for w, part in weight_parts(omega).items():
        pc = pieces.get(w)
        if pc is None:
            return False
        index = {item: r for r, item in enumerate(pc.basis)}
        vec = _vector(part, index)
        if not pc.image_cols:
            return False
        rows = linalg.columns_to_rows(pc.image_cols, len(pc.basis))
        if linalg.solve(rows, len(pc.image_cols), vec) is None:
            return False
    return True


def class_equal(omega: Cochain, other: Cochain, D: int = 4) -> bool:
    _require_cocycle(omega, "first argument")
    _require_cocycle(other, "second argument")
    return is_exact_in_window(omega - other, D)


def class_coordinates(omega: Cochain, D: int) -> List[Fraction]:
    """Coordinates of the class of ``omega`` in the basis of :func:`cohomology_window`."""
    _require_cocycle(omega)
    P, p = omega.P, omega.degree
    pieces = _pieces(P, p, D)
    parts = weight_parts(omega)
    for w in parts:
        if w not in pieces:
            raise ValueError(f"multidegree {w} lies outside the window D={D}")
    coords: List[Fraction] = []
    for w in sorted(pieces):
        pc = pieces[w]
        if not pc.dimension:
            continue
        if w not in parts:
            coords.extend([Fraction(0)] * pc.dimension)
            continue
        index = {item: r for r, item in enumerate(pc.basis)}
        vec = _vector(parts[w], index)
        cols = pc.reps + pc.image_cols
        sol = linalg.solve(linalg.columns_to_rows(cols, len(pc.basis)), len(cols), vec)
        coords.extend(sol[:pc.dimension])
    return coords


@dataclass(frozen=True)
class CohomologyClass:
    """A cocycle representative read up to window-supported coboundaries."""

    representative: Cochain
    window: int = 4

    def __post_init__(self):
        _require_cocycle(self.representative, "class representative")

    def same_class(self, other) -> bool:
        rep = other.representative if isinstance(other, CohomologyClass) else other
        return class_equal(self.representative, rep, max(self.window, getattr(other, "window", 0)))

    def is_zero(self) -> bool:
        return is_exact_in_window(self.representative, self.window)


# -- even classes, exp, Char(L) -------------------------------------------------

class EvenClassPolynomial:
    """Components of degrees ``0, 2, ..., 2*floor(l/2)`` (cocycle representatives)."""

    __slots__ = ("P", "components")

    def __init__(self, P: LieRinehart, components=()):
        self.P = P
        top = P.rank // 2
        comps = list(components)[:top + 1]
        for m, c in enumerate(comps):
            if c.degree != 2 * m:
                raise ValueError(f"component {m} must have degree {2 * m}")
        comps += [Cochain.zero(P, 2 * m) for m in range(len(comps), top + 1)]
        self.components = tuple(comps)

    @classmethod
    def scalar(cls, P, r):
        return cls(P, [Cochain.constant(P, r)])

    def __getitem__(self, m):
        return self.components[m]

    def __len__(self):
        return len(self.components)

    def __add__(self, other):
        return EvenClassPolynomial(self.P, [a + b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return EvenClassPolynomial(self.P, [-a for a in self.components])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, q):
        return EvenClassPolynomial(self.P, [q * a for a in self.components])

    def __mul__(self, other):
        if not isinstance(other, EvenClassPolynomial):
            return EvenClassPolynomial(self.P, [other * a for a in self.components])
        comps = []
        for m in range(len(self.components)):
            acc = Cochain.zero(self.P, 2 * m)
            for a in range(m + 1):
                acc = acc + wedge(self.components[a], other.components[m - a])
            comps.append(acc)
        return EvenClassPolynomial(self.P, comps)

    def __eq__(self, other):
        return (isinstance(other, EvenClassPolynomial) and self.P == other.P
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __repr__(self):
        return f"EvenClassPolynomial({list(self.components)!r})"

    def to_json(self):
        return [c.to_json() for c in self.components]


def wedge_power(x: Cochain, m: int) -> Cochain:
    out = Cochain.constant(x.P, 1)
    for _ in range(m):
        out = wedge(out, x)
    return out


def exp_class(x: Cochain) -> EvenClassPolynomial:
    """``sum_m x^m / m!`` truncated at the rank of ``L``."""
    if x.degree != 2:
        raise ValueError("exp is defined on degree-2 classes")
    _require_cocycle(x)
    P = x.P
    return EvenClassPolynomial(P, [wedge_power(x, m) / math.factorial(m)
                                   for m in range(P.rank // 2 + 1)])


@dataclass
class CharRingResult:
    dimension: int
    independent: bool
    size: int

    def to_json(self):
        return {"dimension": self.dimension, "independent": self.independent,
                "inputs": self.size}


def char_ring_dim(P: LieRinehart, basis, D: int = 4) -> CharRingResult:
    """Dimension over ``Q`` of the span of ``exp(x_b)`` in window cohomology."""
    basis = list(basis)
    for x in basis:
        _require_cocycle(x, "basis element")
    if not basis:
        return CharRingResult(0, True, 0)
    rows = []
    for x in basis:
        e = exp_class(x)
        row = []
        for comp in e.components:
            row.extend(class_coordinates(comp, D))
        rows.append(row)
    dimension = linalg.rank(rows, len(rows[0])) if rows[0] else 0
    h2 = [class_coordinates(x, D) for x in basis]
    independent = bool(h2[0]) and linalg.rank(h2, len(h2[0])) == len(basis)
    return CharRingResult(dimension, independent, len(basis))


def random_cochain(P: LieRinehart, p: int, rng, terms: int = 2) -> Cochain:
    """A seeded random ``p``-cochain (testing and demo helper)."""
    values = {}
    for idx in itertools.combinations(range(P.rank), p):
        if rng.random() < 0.7:
            values[idx] = P.ring.random_poly(rng, terms=terms)
    return Cochain(P, p, values)


def random_cocycle(P: LieRinehart, rng, D: int = 1) -> Cochain:
    """A random combination of window ``H^2`` representatives plus a coboundary."""
    out = ce_differential(random_cochain(P, 1, rng))
    for rep in cohomology_window(P, 2, D).representatives:
        out = out + Fraction(rng.randint(-4, 4), rng.randint(1, 3)) * rep
    return out
