"""A formal ledger of connection classes: ranks, first Chern classes, Chern characters.

Atoms are free generators; a :class:`KClass` is an integer combination of
atoms.  Only rank, a ``c1`` representative and the scalar-type flag are kept,
which is enough for rank, ``c1`` and (for scalar-type atoms) ``Ch``.  Atoms
are never identified with each other, so formal non-vanishing here is an
over-approximation of non-vanishing in a Grothendieck group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import List, Sequence

from .cochain import (Cochain, EvenClassPolynomial, NotCocycleError, exp_class, is_cocycle,
                      is_exact_in_window)
from .lralg import LieRinehart


@dataclass(frozen=True)
class KAtom:
    rank: int
    c1: Cochain
    scalar_type: bool = True
    label: str = ""

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("atoms have rank >= 1")
        if self.c1.degree != 2:
            raise ValueError("c1 representatives are 2-cochains")
        if not is_cocycle(self.c1):
            raise NotCocycleError(f"c1 of atom {self.label!r} is not a cocycle")

    @property
    def P(self) -> LieRinehart:
        return self.c1.P

    def to_json(self):
        return {"rank": self.rank, "c1": self.c1.to_json(),
                "scalar_type": self.scalar_type, "label": self.label}


def trivial_atom(P: LieRinehart) -> KAtom:
    """``A`` with the trivial flat connection; the unit of the tensor product."""
    return KAtom(1, Cochain.zero(P, 2), True, "1")


def _is_unit(a: KAtom) -> bool:
    return a.label == "1" and a.rank == 1 and a.c1.is_zero()


def atom_tensor(a: KAtom, b: KAtom) -> KAtom:
    if _is_unit(a):
        return b
    if _is_unit(b):
        return a
    c1 = b.rank * a.c1 + a.rank * b.c1
    # a tensor product of scalar-type connections is scalar type (f/r + f'/r')
    label = "⊗".join(sorted(a.label.split("⊗") + b.label.split("⊗")))
    return KAtom(a.rank * b.rank, c1, a.scalar_type and b.scalar_type, label)


class KClass:
    """A finite integer combination of atoms."""

    __slots__ = ("P", "_terms")

    def __init__(self, P: LieRinehart, terms=None):
        self.P = P
        counts = Counter()
        for atom, mult in (terms or {}).items():
            if atom.P != P:
                raise ValueError("atoms from a different presentation")
            counts[atom] += int(mult)
        self._terms = {a: m for a, m in counts.items() if m}

    @classmethod
    def atom(cls, a: KAtom, mult: int = 1) -> "KClass":
        return cls(a.P, {a: mult})

    @classmethod
    def one(cls, P: LieRinehart) -> "KClass":
        return cls.atom(trivial_atom(P))

    @classmethod
    def zero(cls, P: LieRinehart) -> "KClass":
        return cls(P)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (kv[0].label, kv[0].rank))

    def is_zero(self):
        return not self._terms

    def rank(self) -> int:
        """Virtual rank ``sum mult * rank``."""
        return sum(m * a.rank for a, m in self._terms.items())

    def __add__(self, other):
        out = Counter(self._terms)
        out.update(other._terms)
        return KClass(self.P, out)

    def __neg__(self):
        return KClass(self.P, {a: -m for a, m in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int):
        return KClass(self.P, {a: n * m for a, m in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, KClass):
            return k_tensor(self, other)
        return other * self

    def __eq__(self, other):
        return isinstance(other, KClass) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        body = " + ".join(f"{m}*[{a.label}: rank {a.rank}]" for a, m in self.items())
        return f"KClass({body or '0'})"

    def to_json(self):
        return [dict(a.to_json(), mult=m) for a, m in self.items()]


def k_add(u: KClass, v: KClass) -> KClass:
    return u + v


def k_neg(u: KClass) -> KClass:
    return -u


def k_tensor(u: KClass, v: KClass) -> KClass:
    out = Counter()
    for a, m in u._terms.items():
        for b, n in v._terms.items():
            out[atom_tensor(a, b)] += m * n
    return KClass(u.P, out)


def k_c1(u: KClass) -> Cochain:
    acc = Cochain.zero(u.P, 2)
    for a, m in u._terms.items():
        acc = acc + m * a.c1
    return acc


def ch_vanishes(ch: EvenClassPolynomial, window: int = 4) -> bool:
    """True iff every component of ``ch`` is a coboundary (degree 0: is zero)."""
    return all(is_exact_in_window(c, window) for c in ch.components)


def atom_ch(a: KAtom) -> EvenClassPolynomial:
    """``r exp(c1 / r)`` for a scalar-type atom.

    A connection with curvature ``g * Id`` on a rank-``r`` module has
    ``tr(R^m) = r g^m``, so ``Ch = r exp(g)`` and ``c1 = r g``.  The degree-0
    part is the rank.
    """
    if not a.scalar_type:
        raise ValueError(f"Ch of atom {a.label!r} needs curvature data; use conn.chern_character")
    return a.rank * exp_class(a.c1 / a.rank)


def k_ch(u: KClass) -> EvenClassPolynomial:
    acc = EvenClassPolynomial.scalar(u.P, 0)
    for a, m in u._terms.items():
        acc = acc + m * atom_ch(a)
    return acc


# -- the kernel examples ----------------------------------------------------------

@dataclass
class KernelReport:
    name: str
    element: KClass
    ch: EvenClassPolynomial | None = None
    c1: Cochain | None = None
    ch_vanishes: bool | None = None
    c1_vanishes: bool | None = None
    formally_nonzero: bool = True
    degenerate: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        checks = [v for v in (self.ch_vanishes, self.c1_vanishes) if v is not None]
        return all(checks) and (self.formally_nonzero or self.degenerate)

    def to_json(self):
        out = {"name": self.name, "ledger": self.element.to_json(),
               "formally_nonzero": self.formally_nonzero, "degenerate": self.degenerate,
               "verified": self.verified}
        if self.ch is not None:
            out["ch"] = self.ch.to_json()
            out["ch_vanishes"] = self.ch_vanishes
        if self.c1 is not None:
            out["c1"] = self.c1.to_json()
            out["c1_vanishes"] = self.c1_vanishes
        out["notes"] = list(self.notes)
        return out


def _line_classes(F: Sequence[Cochain], ks, is_, k0, i0):
    from .vki import line_class

    F = list(F)
    if not F:
        raise ValueError("need at least one class")
    if not (len(F) == len(ks) == len(is_)):
        raise ValueError("F, k and i lists must have equal length")
    for x in F:
        if not is_cocycle(x):
            raise NotCocycleError("every F_m must be a cocycle")
    P = F[0].P
    total = Cochain.zero(P, 2)
    for x in F:
        total = total + x
    lines = [line_class(x, k, i) for x, k, i in zip(F, ks, is_)]
    lines.append(line_class(-total, k0, i0))
    return P, lines, all(x.is_zero() for x in F)


def kernel_eta(F: Sequence[Cochain], ks: Sequence[int], is_: Sequence[int],
               k0: int = 1, i0: int = 1, window: int = 4) -> KernelReport:
    """``eta - 1`` with ``eta = sum_m L^{k_m,i_m}(F_m) + L^{k0,i0}(-sum F_m)``.

    ``Ch`` is computed additively over the ledger, so the degree-0 part of
    ``Ch(eta - 1)`` is the virtual rank ``n``; the report records whether
    ``Ch`` vanishes rather than assuming it.
    """
    P, lines, degenerate = _line_classes(F, ks, is_, k0, i0)
    eta = KClass.zero(P)
    for line in lines:
        eta = eta + line
    elem = eta - KClass.one(P)
    ch = k_ch(elem)
    report = KernelReport("eta-1", elem, ch=ch, ch_vanishes=ch_vanishes(ch, window),
                          formally_nonzero=not elem.is_zero(), degenerate=degenerate)
    report.c1 = k_c1(elem)
    report.c1_vanishes = is_exact_in_window(report.c1, window)
    if not report.ch_vanishes:
        report.notes.append(
            f"Ch(eta-1) has degree-0 part {ch[0].value(())} = rank(eta) - 1; "
            f"eta is a sum of {len(lines)} line classes")
    return report


def kernel_omega(F: Sequence[Cochain], ks: Sequence[int], is_: Sequence[int],
                 k0: int = 1, i0: int = 1, window: int = 4) -> KernelReport:
    """``omega = L^{k_1,i_1}(F_1) (x) ... (x) L^{k0,i0}(-sum F_m)``; checks ``c1(omega) = 0``."""
    P, lines, degenerate = _line_classes(F, ks, is_, k0, i0)
    omega = KClass.one(P)
    for line in lines:
        omega = k_tensor(omega, line)
    c1 = k_c1(omega)
    report = KernelReport("omega", omega, c1=c1, c1_vanishes=is_exact_in_window(c1, window),
                          formally_nonzero=omega != KClass.one(P), degenerate=degenerate)
    report.ch = k_ch(omega - KClass.one(P))
    report.ch_vanishes = ch_vanishes(report.ch, window)
    return report


def rank_one_torsion_check(atom: KAtom, n: int, window: int = 4) -> bool:
    """If ``atom^(x)n`` has zero ``c1`` then so does ``atom`` (rank-one atoms)."""
    if atom.rank != 1:
        raise ValueError("torsion is about invertible (rank-one) atoms")
    power = KClass.one(atom.P)
    for _ in range(n):
        power = k_tensor(power, KClass.atom(atom))
    if not is_exact_in_window(k_c1(power), window):
        return True
    return is_exact_in_window(atom.c1, window)


__all__ = ["KAtom", "KClass", "KernelReport", "trivial_atom", "atom_tensor", "atom_ch",
           "k_add", "k_neg", "k_tensor", "k_c1", "k_ch", "ch_vanishes", "kernel_eta", "kernel_omega",
           "rank_one_torsion_check"]
