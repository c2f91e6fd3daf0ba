"""Lie-Rinehart algebras ``alpha: L -> Der(A)`` with ``L`` free on a chosen basis.

A presentation stores the anchor as an ``l x n`` matrix of Laurent polynomials,
so that ``alpha(e_i) = sum_j anchor[i][j] * d/dx_j``, and the bracket through
structure functions ``[e_i, e_j] = sum_k c_ij^k e_k`` for ``i < j``.  Basis
indices are 0-based in Python and 1-based in JSON.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .arith import LaurentPoly, Ring


class UnsupportedGradingError(ValueError):
    """The presentation does not preserve a multidegree grading."""


class InvalidPresentationError(ValueError):
    """The presentation fails the Lie-Rinehart axioms."""


class LElement:
    """An element ``sum_i coeffs[i] * e_i`` of the free module ``L``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[LaurentPoly]):
        self.coeffs = tuple(coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __add__(self, other):
        return LElement(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return LElement(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return LElement(-a for a in self.coeffs)

    def __rmul__(self, a):
        return LElement(a * c for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, LElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __repr__(self):
        return "LElement(" + ", ".join(str(c) for c in self.coeffs) + ")"


@dataclass
class AxiomReport:
    seed: int
    jacobi: bool = True
    anchor_morphism: bool = True
    leibniz: bool = True
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.jacobi and self.anchor_morphism and self.leibniz

    def to_json(self):
        return {"seed": self.seed, "jacobi": self.jacobi,
                "anchor_morphism": self.anchor_morphism, "leibniz": self.leibniz,
                "passed": self.passed, "failures": list(self.failures)}


class LieRinehart:
    """A free-basis presentation of a Lie-Rinehart algebra."""

    def __init__(self, ring: Ring, rank: int, anchor, brackets=None, name: str = "custom"):
        if rank < 0:
            raise ValueError("rank of L must be non-negative")
        self.ring = ring
        self.rank = rank
        self.name = name
        self.anchor = tuple(tuple(ring.coerce(a) for a in row) for row in anchor)
        if len(self.anchor) != rank or any(len(row) != ring.n for row in self.anchor):
            raise ValueError(f"anchor must be a {rank}x{ring.n} matrix")
        clean: Dict[Tuple[int, int], Tuple[LaurentPoly, ...]] = {}
        for (i, j), vals in (brackets or {}).items():
            vals = tuple(ring.coerce(v) for v in vals)
            if len(vals) != rank:
                raise ValueError(f"bracket [{i},{j}] needs {rank} structure functions")
            if not (0 <= i < rank and 0 <= j < rank) or i == j:
                raise ValueError(f"bad bracket index pair ({i}, {j})")
            if i > j:
                i, j, vals = j, i, tuple(-v for v in vals)
            if any(v for v in vals):
                clean[(i, j)] = vals
        self.brackets = dict(sorted(clean.items()))
        self._report = None
        self._weights = None

    # identity is structural so that separately built copies compare equal
    def _key(self):
        return (self.ring, self.rank, self.anchor, tuple(self.brackets.items()))

    def __eq__(self, other):
        return isinstance(other, LieRinehart) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"LieRinehart({self.name}, n={self.ring.n}, l={self.rank})"

    # -- elements ---------------------------------------------------------
    def basis(self, i: int) -> LElement:
        z, o = self.ring.zero(), self.ring.one()
        return LElement(o if k == i else z for k in range(self.rank))

    def zero_element(self) -> LElement:
        return LElement((self.ring.zero(),) * self.rank)

    def element(self, coeffs) -> LElement:
        coeffs = [self.ring.coerce(c) for c in coeffs]
        if len(coeffs) != self.rank:
            raise ValueError(f"L-elements have exactly {self.rank} coordinates")
        return LElement(coeffs)

    def structure(self, i: int, j: int) -> Tuple[LaurentPoly, ...]:
        """Coordinates of ``[e_i, e_j]``."""
        if i == j:
            return (self.ring.zero(),) * self.rank
        if i < j:
            return self.brackets.get((i, j), (self.ring.zero(),) * self.rank)
        return tuple(-v for v in self.structure(j, i))

    # -- anchor and bracket ----------------------------------------------
    def derivation(self, i: int, a: LaurentPoly) -> LaurentPoly:
        """``alpha(e_i)(a)``."""
        out = self.ring.zero()
        for j, coef in enumerate(self.anchor[i]):
            if coef:
                out = out + coef * a.partial(j)
        return out

    def anchor_apply(self, xi: LElement, a: LaurentPoly) -> LaurentPoly:
        out = self.ring.zero()
        for i, c in enumerate(xi.coeffs):
            if c:
                out = out + c * self.derivation(i, a)
        return out

    def bracket(self, xi: LElement, eta: LElement) -> LElement:
        out = [self.anchor_apply(xi, eta[k]) - self.anchor_apply(eta, xi[k])
               for k in range(self.rank)]
        for (i, j), vals in self.brackets.items():
            # antisymmetric pair (i,j),(j,i) handled together
            w = xi[i] * eta[j] - xi[j] * eta[i]
            if w:
                for k in range(self.rank):
                    if vals[k]:
                        out[k] = out[k] + w * vals[k]
        return LElement(out)

    # -- validation -------------------------------------------------------
    def check_axioms(self, seed: int = 0, samples: int = 3) -> AxiomReport:
        return check_axioms(self, seed=seed, samples=samples)

    def require_valid(self) -> "LieRinehart":
        if self._report is None:
            self._report = check_axioms(self)
        if not self._report.passed:
            raise InvalidPresentationError("; ".join(self._report.failures))
        return self

    def weights(self):
        """Multidegree shift of each basis derivation; raises if there is none.

        ``alpha(e_i)`` must send ``x^v`` into ``Q x^(v + s_i)`` and each ``c_ij^k``
        must be a single monomial of multidegree ``s_i + s_j - s_k``.
        """
        if self._weights is not None:
            return self._weights
        n = self.ring.n
        shifts = []
        for i, row in enumerate(self.anchor):
            s = None
            for j, coef in enumerate(row):
                if not coef:
                    continue
                if len(coef) != 1:
                    raise UnsupportedGradingError(f"anchor entry ({i},{j}) is not a monomial")
                (e, _), = coef.items()
                cand = tuple(e[k] - (1 if k == j else 0) for k in range(n))
                if s is None:
                    s = cand
                elif s != cand:
                    raise UnsupportedGradingError(f"derivation {i} mixes multidegree shifts")
            shifts.append(s if s is not None else (0,) * n)
        for (i, j), vals in self.brackets.items():
            for k, v in enumerate(vals):
                if not v:
                    continue
                want = tuple(a + b - c for a, b, c in zip(shifts[i], shifts[j], shifts[k]))
                if len(v) != 1 or next(iter(v.items()))[0] != want:
                    raise UnsupportedGradingError(f"structure function c_{i}{j}^{k} is not homogeneous")
        self._weights = tuple(shifts)
        return self._weights

    # -- serialization ----------------------------------------------------
    def to_json(self):
        return {
            "variables": [{"name": n, "invertible": inv}
                          for n, inv in zip(self.ring.names, self.ring.invertible)],
            "rank_L": self.rank,
            "anchor": [[str(a) for a in row] for row in self.anchor],
            "bracket": {f"{i + 1},{j + 1}": [str(v) for v in vals]
                        for (i, j), vals in self.brackets.items()},
        }

    @classmethod
    def from_json(cls, data, name: str = "custom") -> "LieRinehart":
        try:
            variables = data["variables"]
            ring = Ring([v["name"] for v in variables],
                        [bool(v.get("invertible", False)) for v in variables])
            rank = int(data["rank_L"])
            anchor = [[ring.parse(s) for s in row] for row in data["anchor"]]
            brackets = {}
            for key, vals in data.get("bracket", {}).items():
                i, j = (int(t) - 1 for t in key.split(","))
                brackets[(i, j)] = [ring.parse(s) for s in vals]
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed presentation: {exc!r}") from exc
        return cls(ring, rank, anchor, brackets, name=name)


def check_axioms(P: LieRinehart, seed: int = 0, samples: int = 3) -> AxiomReport:
    """Check Jacobi, the anchor morphism property, and the Leibniz rule."""
    report = AxiomReport(seed=seed)
    l, ring = P.rank, P.ring
    basis = [P.basis(i) for i in range(l)]

    for i, j, k in itertools.combinations(range(l), 3):
        x, y, z = basis[i], basis[j], basis[k]
        jac = (P.bracket(x, P.bracket(y, z)) + P.bracket(y, P.bracket(z, x))
               + P.bracket(z, P.bracket(x, y)))
        if not jac.is_zero():
            report.jacobi = False
            report.failures.append(f"Jacobi fails on (e{i + 1}, e{j + 1}, e{k + 1}): {jac}")

    # a derivation of a Laurent ring is fixed by its values on the variables
    coords = ring.gens()
    for i, j in itertools.combinations(range(l), 2):
        br = P.bracket(basis[i], basis[j])
        for m, xm in enumerate(coords):
            lhs = P.derivation(i, P.derivation(j, xm)) - P.derivation(j, P.derivation(i, xm))
            rhs = P.anchor_apply(br, xm)
            if lhs != rhs:
                report.anchor_morphism = False
                report.failures.append(
                    f"anchor is not a Lie map on (e{i + 1}, e{j + 1}) at {ring.names[m]}: "
                    f"{lhs} != {rhs}")

    rng = random.Random(seed)
    for _ in range(samples):
        a = ring.random_poly(rng)
        for i in range(l):
            for j in range(l):
                lhs = P.bracket(basis[i], a * basis[j])
                rhs = a * P.bracket(basis[i], basis[j]) + P.derivation(i, a) * basis[j]
                if lhs != rhs:
                    report.leibniz = False
                    report.failures.append(f"Leibniz fails on (e{i + 1}, a*e{j + 1}) for a = {a}")
    return report


def _names(n: int):
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{k + 1}" for k in range(n)]


def torus(n: int) -> LieRinehart:
    """``Q[x_1^(±1), ..., x_n^(±1)]`` with the basis ``theta_i = x_i d/dx_i``."""
    if n < 1:
        raise ValueError("torus needs n >= 1")
    ring = Ring(_names(n), True)
    anchor = [[ring.gen(j) if j == i else 0 for j in range(n)] for i in range(n)]
    return LieRinehart(ring, n, anchor, name=f"torus({n})")


def affine(n: int) -> LieRinehart:
    """``Q[x_1, ..., x_n]`` with the coordinate derivations ``d/dx_i``."""
    if n < 1:
        raise ValueError("affine space needs n >= 1")
    ring = Ring(_names(n), False)
    anchor = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return LieRinehart(ring, n, anchor, name=f"affine({n})")


def point_abelian(l: int) -> LieRinehart:
    """``A = Q`` and an abelian ``L`` of rank ``l`` with zero anchor."""
    if l < 1:
        raise ValueError("point-abelian needs l >= 1")
    ring = Ring([], True)
    return LieRinehart(ring, l, [[] for _ in range(l)], name=f"point-abelian({l})")


STANDARD = {"torus": torus, "affine": affine, "point-abelian": point_abelian}


def make_standard_algebra(kind: str, size: int) -> LieRinehart:
    try:
        build = STANDARD[kind]
    except KeyError:
        raise ValueError(f"unknown algebra kind {kind!r}; expected one of {sorted(STANDARD)}")
    return build(size)
