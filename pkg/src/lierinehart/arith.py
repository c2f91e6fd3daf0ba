"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`Ring` fixes the variable names and which of them are invertible;
every :class:`LaurentPoly` carries its ring.  Polynomials are immutable.

>>> R = Ring(["x", "y"])
>>> x, y = R.gens()
>>> str((1 + x) * (1 - x))
'-x^2 + 1'
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple

Exponent = Tuple[int, ...]


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class Ring:
    """Variable names plus one invertibility flag per variable."""

    __slots__ = ("names", "invertible")

    def __init__(self, names: Iterable[str], invertible=True):
        self.names = tuple(names)
        if isinstance(invertible, bool):
            invertible = (invertible,) * len(self.names)
        self.invertible = tuple(bool(b) for b in invertible)
        if len(self.invertible) != len(self.names):
            raise ValueError("one invertibility flag per variable is required")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    @property
    def n(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.names == other.names
                and self.invertible == other.invertible)

    def __hash__(self):
        return hash((self.names, self.invertible))

    def __repr__(self):
        flags = ", ".join(f"{n}{'^±' if inv else ''}"
                          for n, inv in zip(self.names, self.invertible))
        return f"Ring({flags})"

    def zero(self) -> "LaurentPoly":
        return LaurentPoly._raw(self, {})

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, c) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly._raw(self, {(0,) * self.n: c} if c else {})

    def monomial(self, exps: Exponent, coeff=1) -> "LaurentPoly":
        return LaurentPoly(self, {tuple(exps): coeff})

    def gen(self, i: int) -> "LaurentPoly":
        e = [0] * self.n
        e[i] = 1
        return LaurentPoly._raw(self, {tuple(e): Fraction(1)})

    def gens(self):
        return tuple(self.gen(i) for i in range(self.n))

    def var(self, name: str) -> "LaurentPoly":
        return self.gen(self.names.index(name))

    def coerce(self, value) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            if value.ring != self:
                raise RingMismatchError(f"{value.ring!r} vs {self!r}")
            return value
        if isinstance(value, (int, Rational)):
            return self.const(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def parse(self, text: str) -> "LaurentPoly":
        return _parse(self, text)

    def check_exponent(self, e: Exponent) -> None:
        if len(e) != self.n:
            raise RingMismatchError(f"exponent {e} has wrong length for {self!r}")
        for k, inv in zip(e, self.invertible):
            if k < 0 and not inv:
                raise ValueError(f"negative exponent {e} on a non-invertible variable")

    def random_poly(self, rng: random.Random, terms: int = 3, max_exp: int = 2,
                    max_coeff: int = 5) -> "LaurentPoly":
        """A random polynomial with at most ``terms`` terms (testing helper)."""
        out = {}
        for _ in range(terms):
            e = tuple(rng.randint(-max_exp if inv else 0, max_exp)
                      for inv in self.invertible)
            c = Fraction(rng.randint(-max_coeff, max_coeff), rng.randint(1, 3))
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self, out)


class LaurentPoly:
    """An element of ``Q[x_1^(±1), ..., x_n^(±1)]``; zero coefficients are never stored."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, object] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            ring.check_exponent(e)
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.ring = ring
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        """Terms in ascending lexicographic exponent order (a fresh dict)."""
        return dict(sorted(self._terms.items()))

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, e: Exponent) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * self.ring.n}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((0,) * self.ring.n, Fraction(0))

    # -- arithmetic -------------------------------------------------------
    def _other(self, other):
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly._raw(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return LaurentPoly._raw(self.ring, {e: c / q for e, c in self._terms.items()})
        other = self._other(other)
        unit, inv = other.is_unit()
        if not unit:
            raise ZeroDivisionError(f"{other} is not a unit")
        return self * inv

    def __pow__(self, k: int):
        if k < 0:
            unit, inv = self.is_unit()
            if not unit:
                raise ZeroDivisionError(f"{self} is not a unit")
            return inv ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            return self == self.ring.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and grading --------------------------------------------
    def partial(self, i: int) -> "LaurentPoly":
        """Exact partial derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.ring.n:
            raise IndexError(f"variable index {i} out of range for {self.ring!r}")
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return LaurentPoly._raw(self.ring, out)

    def grade_split(self) -> Dict[Exponent, "LaurentPoly"]:
        """Split into homogeneous parts, one per multidegree."""
        return {e: LaurentPoly._raw(self.ring, {e: c}) for e, c in sorted(self._terms.items())}

    def is_unit(self):
        """Return ``(True, inverse)`` for units ``c*x^v``, else ``(False, None)``."""
        if len(self._terms) != 1:
            return False, None
        (e, c), = self._terms.items()
        if any(k and not inv for k, inv in zip(e, self.ring.invertible)):
            return False, None
        return True, LaurentPoly._raw(self.ring, {tuple(-k for k in e): 1 / c})

    # -- text -------------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in sorted(self._terms.items()):
            mono = "*".join(n if k == 1 else f"{n}^{k}"
                            for n, k in zip(self.ring.names, e) if k)
            if not mono:
                t = str(c)
            elif c == 1:
                t = mono
            elif c == -1:
                t = "-" + mono
            else:
                t = f"{c}*{mono}"
            if out:
                out.append(" - " + t[1:] if t.startswith("-") else " + " + t)
            else:
                out.append(t)
        return "".join(out)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"(?:\^(?P<exp>-?\d+))?|(?P<op>[-+*]))")


def _parse(ring: Ring, text: str) -> LaurentPoly:
    pos, n = 0, len(text)
    result = ring.zero()
    term = None
    sign = 1
    expect_factor = True
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        pos = m.end()
        op = m.group("op")
        if op is not None and op in "+-":
            if term is not None:
                result = result + term * sign
                term, sign = None, 1
            if op == "-":
                sign = -sign
            expect_factor = True
            continue
        if op == "*":
            if term is None or expect_factor:
                raise ValueError(f"dangling '*' in {text!r}")
            expect_factor = True
            continue
        if not expect_factor:
            raise ValueError(f"missing operator in {text!r} at position {m.start()}")
        if m.group("num"):
            try:
                factor = ring.const(Fraction(m.group("num")))
            except ZeroDivisionError:
                raise ValueError(f"zero denominator in {text!r}") from None
        else:
            name = m.group("name")
            if name not in ring.names:
                raise ValueError(f"unknown variable {name!r} for {ring!r}")
            e = [0] * ring.n
            e[ring.names.index(name)] = int(m.group("exp") or 1)
            factor = LaurentPoly(ring, {tuple(e): 1})
        term = factor if term is None else term * factor
        expect_factor = False
    if expect_factor and text.strip():
        raise ValueError(f"trailing operator in {text!r}")
    if term is not None:
        result = result + term * sign
    return result
