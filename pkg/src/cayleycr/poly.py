"""Sparse multivariate polynomials with exact rational coefficients.

Used both for the component functions ``U^mu(x_0, ..., x_{N-1})`` and for
operator entries in the commuting partial-derivative symbols ``d_0 .. d_{N-1}``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from numbers import Number, Rational
from typing import Dict, Iterable, Iterator, Sequence, Tuple

Monomial = Tuple[int, ...]


def _as_coef(c):
    if isinstance(c, Rational) and not isinstance(c, Fraction):
        return Fraction(c)
    return c


class Poly:
    """Polynomial in ``nvars`` commuting variables, stored as ``{exps: coef}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Monomial, object] | None = None):
        self.nvars = nvars
        self.terms: Dict[Monomial, object] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"monomial {exps} has wrong arity for {nvars} variables")
                if c != 0:
                    self.terms[tuple(exps)] = _as_coef(c)

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> "Poly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): c})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def __iter__(self) -> Iterator[Tuple[Monomial, object]]:
        return iter(sorted(self.terms.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, Number):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        if isinstance(other, Number):
            return Poly.const(self.nvars, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        p = Poly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            if other == 0:
                return Poly(self.nvars)
            p = Poly(self.nvars)
            p.terms = {e: c * other for e, c in self.terms.items()}
            return p
        if not isinstance(other, Poly):
            return NotImplemented
        other = self._coerce(other)
        out: Dict[Monomial, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        p = Poly(self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    # calculus / evaluation
    def diff(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out: Dict[Monomial, object] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        p = Poly(self.nvars)
        p.terms = out
        return p

    def apply_as_operator(self, target: "Poly") -> "Poly":
        """Read ``self`` as a polynomial in partials and apply it to ``target``."""
        out = Poly(target.nvars)
        for e, c in self.terms.items():
            t = target
            for i, k in enumerate(e):
                for _ in range(k):
                    t = t.diff(i)
            out = out + t * c
        return out

    def __call__(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = 0
        for e, c in self.terms.items():
            term = c
            for xi, k in zip(point, e):
                if k:
                    term = term * xi**k
            total = total + term
        return total

    def __repr__(self):
        return f"Poly({self.nvars}, {dict(sorted(self.terms.items()))})"

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0]))):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if mono:
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
                parts.append(f"{coef}{mono}")
            else:
                parts.append(str(c))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


def monomials(nvars: int, degree: int) -> list[Monomial]:
    """All exponent vectors of total degree exactly ``degree``, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def monomials_upto(nvars: int, degree: int) -> list[Monomial]:
    out: list[Monomial] = []
    for d in range(degree + 1):
        out.extend(monomials(nvars, d))
    return out


def variables(nvars: int) -> list[Poly]:
    return [Poly.var(nvars, i) for i in range(nvars)]


def poly_sum(polys: Iterable[Poly], nvars: int) -> Poly:
    total = Poly(nvars)
    for p in polys:
        total = total + p
    return total
