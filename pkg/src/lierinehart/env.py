"""PBW normal forms in the twisted enveloping algebra ``U(A, L, f)``.

Elements are stored in the ordered-monomial basis ``a * e_1^p1 ... e_l^pl``
with coefficients on the left.  The rewrite rules are

* ``e_i a -> a e_i + alpha(e_i)(a)``
* ``e_j e_i -> e_i e_j + [e_j, e_i] + f(e_j, e_i) z`` for ``j > i``

where ``z`` is set to 1 in ``twisted`` mode and kept as a central generator
with its own exponent slot in ``central`` mode (the enveloping algebra of the
central extension ``Az + L``).  Setting ``z = 1`` afterwards is the quotient
by the ideal generated by ``z - 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .arith import LaurentPoly
from .cochain import Cochain
from .lralg import LieRinehart

Key = Tuple[int, ...]

MODES = ("twisted", "central")


def _acc(out: Dict[Key, LaurentPoly], key: Key, val: LaurentPoly) -> None:
    if not val:
        return
    s = out[key] + val if key in out else val
    if s:
        out[key] = s
    else:
        del out[key]


class UElement:
    """A normal-form element: ordered monomial key -> left coefficient."""

    __slots__ = ("system", "_terms")

    def __init__(self, system: "RewriteSystem", terms=None):
        self.system = system
        clean: Dict[Key, LaurentPoly] = {}
        for k, v in (terms or {}).items():
            k = tuple(k)
            if len(k) != system.nslots or any(x < 0 for x in k):
                raise ValueError(f"bad monomial {k}")
            _acc(clean, k, system.P.ring.coerce(v))
        self._terms = clean

    @classmethod
    def _raw(cls, system, terms):
        u = cls.__new__(cls)
        u.system, u._terms = system, terms
        return u

    @property
    def terms(self) -> Dict[Key, LaurentPoly]:
        return dict(sorted(self._terms.items()))

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, key) -> LaurentPoly:
        return self._terms.get(tuple(key), self.system.P.ring.zero())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        """Generator degree ``|P|`` (the ``z`` slot is not counted); -1 for zero."""
        l = self.system.P.rank
        return max((sum(k[:l]) for k in self._terms), default=-1)

    def top_part(self) -> "UElement":
        d = self.degree()
        l = self.system.P.rank
        return UElement._raw(self.system, {k: v for k, v in self._terms.items() if sum(k[:l]) == d})

    def __add__(self, other):
        out = dict(self._terms)
        for k, v in other._terms.items():
            _acc(out, k, v)
        return UElement._raw(self.system, out)

    def __neg__(self):
        return UElement._raw(self.system, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, a):
        """Left multiplication by a scalar or an element of ``A``."""
        out = {}
        for k, v in self._terms.items():
            _acc(out, k, a * v)
        return UElement._raw(self.system, out)

    def __mul__(self, other):
        if isinstance(other, UElement):
            return self.system.mul(self, other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, UElement) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"UElement({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = [f"e{i + 1}" for i in range(self.system.P.rank)]
        if self.system.mode == "central":
            names.append("z")
        parts = []
        for k, v in sorted(self._terms.items()):
            mono = "*".join(n if p == 1 else f"{n}^{p}" for n, p in zip(names, k) if p)
            parts.append(f"({v})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def to_json(self):
        return {",".join(map(str, k)): str(v) for k, v in sorted(self._terms.items())}


# word tokens: ("coef", poly) | ("gen", i) | ("z",)
Token = tuple


def gen(i: int) -> Token:
    return ("gen", i)


def coef(a) -> Token:
    return ("coef", a)


Z: Token = ("z",)


def word_from_json(P: LieRinehart, data) -> List[Token]:
    out = []
    try:
        for tok in data:
            if "coef" in tok:
                out.append(coef(P.ring.parse(tok["coef"])))
            elif "gen" in tok:
                i = int(tok["gen"]) - 1
                if not 0 <= i < P.rank:
                    raise ValueError(f"generator index {i + 1} out of range")
                out.append(gen(i))
            elif "z" in tok:
                out.append(Z)
            else:
                raise ValueError(f"unknown token {tok!r}")
    except (TypeError, AttributeError) as exc:
        raise ValueError(f"malformed word: {exc!r}") from exc
    return out


def word_to_json(word) -> list:
    out = []
    for tok in word:
        if tok[0] == "coef":
            out.append({"coef": str(tok[1])})
        elif tok[0] == "gen":
            out.append({"gen": tok[1] + 1})
        else:
            out.append({"z": 1})
    return out


class RewriteSystem:
    """Rewrite rules for ``U(A, L, f)`` (twisted) or ``U(A, L(f))`` (central)."""

    def __init__(self, P: LieRinehart, f: Cochain | None = None, mode: str = "twisted"):
        P.require_valid()
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if f is None:
            f = Cochain.zero(P, 2)
        if f.degree != 2 or f.P != P:
            raise ValueError("the twist must be a 2-cochain on the same presentation")
        self.P = P
        self.f = f
        self.mode = mode
        self.nslots = P.rank + (1 if mode == "central" else 0)
        self._cache: Dict[Tuple[int, Key], Dict[Key, LaurentPoly]] = {}

    def __repr__(self):
        return f"RewriteSystem({self.P!r}, mode={self.mode})"

    # -- constructors -----------------------------------------------------
    def element(self, terms) -> UElement:
        return UElement(self, terms)

    def zero(self) -> UElement:
        return UElement._raw(self, {})

    def one(self) -> UElement:
        return self.scalar(1)

    def scalar(self, a) -> UElement:
        a = self.P.ring.coerce(a)
        return UElement._raw(self, {(0,) * self.nslots: a} if a else {})

    def monomial(self, exps, a=1) -> UElement:
        exps = tuple(exps)
        if len(exps) == self.P.rank and self.mode == "central":
            exps = exps + (0,)
        return UElement(self, {exps: a})

    def generator(self, i: int) -> UElement:
        return self.monomial(tuple(int(k == i) for k in range(self.P.rank)))

    def z(self) -> UElement:
        if self.mode == "twisted":
            return self.one()
        return self.monomial((0,) * self.P.rank + (1,))

    # -- core rewriting ---------------------------------------------------
    def _gen_mono(self, j: int, key: Key) -> Dict[Key, LaurentPoly]:
        """Normal form of ``e_j * e^key``."""
        ck = (j, key)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        l = self.P.rank
        m = next((t for t in range(l) if key[t]), None)
        if m is None or j <= m:
            k2 = list(key)
            k2[j] += 1
            res = {tuple(k2): self.P.ring.one()}
        else:
            rest = list(key)
            rest[m] -= 1
            rest = tuple(rest)
            # e_j e_m e^rest = e_m (e_j e^rest) + [e_j, e_m] e^rest + f(e_j, e_m) z e^rest
            res = dict(self._left_gen_terms(m, self._gen_mono(j, rest)))
            for k, c in enumerate(self.P.structure(j, m)):
                if c:
                    for kk, v in self._gen_mono(k, rest).items():
                        _acc(res, kk, c * v)
            fv = self.f.value((j, m))
            if fv:
                if self.mode == "central":
                    zk = rest[:l] + (rest[l] + 1,)
                    _acc(res, zk, fv)
                else:
                    _acc(res, rest, fv)
        self._cache[ck] = res
        return res

    def _left_gen_terms(self, i: int, terms: Dict[Key, LaurentPoly]) -> Dict[Key, LaurentPoly]:
        out: Dict[Key, LaurentPoly] = {}
        for key, a in terms.items():
            for k2, v in self._gen_mono(i, key).items():
                _acc(out, k2, a * v)
            _acc(out, key, self.P.derivation(i, a))
        return out

    def left_gen(self, i: int, u: UElement) -> UElement:
        """``e_i * u`` in normal form."""
        return UElement._raw(self, self._left_gen_terms(i, u._terms))

    def left_z(self, u: UElement) -> UElement:
        if self.mode == "twisted":
            return u
        l = self.P.rank
        return UElement._raw(self, {k[:l] + (k[l] + 1,): v for k, v in u._terms.items()})

    def normal_form(self, word: Sequence[Token]) -> UElement:
        """Reduce a word (tokens read left to right) to ordered-monomial form."""
        acc = self.one()
        for tok in reversed(list(word)):
            kind = tok[0]
            if kind == "coef":
                acc = self.P.ring.coerce(tok[1]) * acc
            elif kind == "gen":
                if not 0 <= tok[1] < self.P.rank:
                    raise IndexError(f"generator {tok[1]} out of range")
                acc = self.left_gen(tok[1], acc)
            elif kind == "z":
                acc = self.left_z(acc)
            else:
                raise ValueError(f"unknown token {tok!r}")
        return acc

    def normal_form_sum(self, words) -> UElement:
        out = self.zero()
        for w in words:
            out = out + self.normal_form(w)
        return out

    def monomial_word(self, key: Key) -> List[Token]:
        l = self.P.rank
        word = [gen(i) for i in range(l) for _ in range(key[i])]
        if self.mode == "central":
            word = [Z] * key[l] + word
        return word

    def mul(self, u: UElement, v: UElement) -> UElement:
        out: Dict[Key, LaurentPoly] = {}
        l = self.P.rank
        for key, a in u._terms.items():
            w = v
            for i in reversed(range(l)):
                for _ in range(key[i]):
                    w = self.left_gen(i, w)
            if self.mode == "central":
                for _ in range(key[l]):
                    w = self.left_z(w)
            for k2, c in w._terms.items():
                _acc(out, k2, a * c)
        return UElement._raw(self, out)

    def quotient(self, u: UElement) -> UElement:
        """Image of a central-mode element under ``z -> 1``."""
        if self.mode != "central":
            return u
        target = RewriteSystem(self.P, self.f, "twisted")
        out: Dict[Key, LaurentPoly] = {}
        for k, v in u._terms.items():
            _acc(out, k[:self.P.rank], v)
        return UElement._raw(target, out)


def degree_window(u: UElement, lo: int, hi: int) -> UElement:
    """Keep the terms with ``lo <= |P| < hi``."""
    if lo < 0 or hi <= lo:
        raise ValueError("need 0 <= lo < hi")
    l = u.system.P.rank
    return UElement._raw(u.system, {k: v for k, v in u._terms.items() if lo <= sum(k[:l]) < hi})


# -- overlap ambiguities ---------------------------------------------------------

@dataclass
class Overlap:
    kind: str                      # "triple", "swap-coef" or "coef-merge"
    word: List[Token]
    left: UElement
    right: UElement

    @property
    def discrepancy(self) -> UElement:
        return self.left - self.right

    @property
    def resolved(self) -> bool:
        return self.left == self.right

    def to_json(self):
        return {"kind": self.kind, "word": word_to_json(self.word),
                "resolved": self.resolved, "discrepancy": self.discrepancy.to_json()}


@dataclass
class ConfluenceReport:
    overlaps: List[Overlap] = field(default_factory=list)

    @property
    def resolvable(self) -> bool:
        return all(o.resolved for o in self.overlaps)

    @property
    def failures(self) -> List[Overlap]:
        return [o for o in self.overlaps if not o.resolved]

    def to_json(self):
        return {"resolvable": self.resolvable, "overlap_count": len(self.overlaps),
                "failures": len(self.failures),
                "overlaps": [o.to_json() for o in self.overlaps]}


def _swap_reducts(S: RewriteSystem, j: int, i: int):
    """One-step reducts of ``e_j e_i`` (j > i) as a list of words."""
    words = [[gen(i), gen(j)]]
    for m, c in enumerate(S.P.structure(j, i)):
        if c:
            words.append([coef(c), gen(m)])
    fv = S.f.value((j, i))
    if fv:
        words.append([coef(fv), Z])
    return words


def _coefficient_letters(P: LieRinehart):
    out = []
    for x, inv in zip(P.ring.gens(), P.ring.invertible):
        out.append(x)
        if inv:
            out.append(x ** -1)
    return out


def diamond_check(S: RewriteSystem) -> ConfluenceReport:
    """Reduce every overlap ambiguity both ways and compare normal forms.

    Overlaps are ``e_k e_j e_i`` (k > j > i), ``e_j e_i a`` (j > i) and
    ``e_i a b`` for coefficient letters ``a, b`` (ring generators and the
    inverses of invertible ones).  The left reduct rewrites the leftmost pair.
    """
    P = S.P
    l = P.rank
    report = ConfluenceReport()
    for i, j, k in itertools.combinations(range(l), 3):
        word = [gen(k), gen(j), gen(i)]
        left = S.normal_form_sum([w + [gen(i)] for w in _swap_reducts(S, k, j)])
        right = S.normal_form_sum([[gen(k)] + w for w in _swap_reducts(S, j, i)])
        report.overlaps.append(Overlap("triple", word, left, right))
    letters = _coefficient_letters(P)
    for i, j in itertools.combinations(range(l), 2):
        for a in letters:
            word = [gen(j), gen(i), coef(a)]
            left = S.normal_form_sum([w + [coef(a)] for w in _swap_reducts(S, j, i)])
            right = S.normal_form_sum([[gen(j), coef(a), gen(i)],
                                       [gen(j), coef(P.derivation(i, a))]])
            report.overlaps.append(Overlap("swap-coef", word, left, right))
    for i in range(l):
        for a, b in itertools.combinations_with_replacement(letters, 2):
            word = [gen(i), coef(a), coef(b)]
            left = S.normal_form_sum([[coef(a), gen(i), coef(b)],
                                      [coef(P.derivation(i, a)), coef(b)]])
            right = S.normal_form([gen(i), coef(a * b)])
            report.overlaps.append(Overlap("coef-merge", word, left, right))
    return report
