"""A small language for non-associative polynomial functions ``U: A -> A``.

Grammar::

    expr   := ["-"] term (("+" | "-") term)* ;
    term   := factor ("*" factor)? ;
    factor := rational | "x" | "e" digit | "conj" "(" expr ")"
            | "coord" "(" expr "," integer ")" | "(" expr ")" | factor "^" integer ;

Products are strictly binary, so ``x*x*x`` is rejected: grouping is part of
the meaning in a non-associative algebra.  Functions can also be given as
component polynomials in JSON (see :meth:`ComponentPolynomial.to_json`).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .algebra import AlgebraError, AlgebraSpec, Element, conjugate, multiply, structure_tensor
from .poly import Poly


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class AmbiguousProductError(ParseError):
    """Three or more factors multiplied without explicit grouping."""


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Variable:
    pass


@dataclass(frozen=True)
class Conjugate:
    child: "Node"


@dataclass(frozen=True)
class BasisConst:
    index: int


@dataclass(frozen=True)
class ScalarConst:
    value: Fraction


@dataclass(frozen=True)
class Sum:
    terms: tuple  # ((sign, node), ...) with sign in {+1, -1}


@dataclass(frozen=True)
class Product:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Power:
    child: "Node"
    exponent: int


@dataclass(frozen=True)
class CoordProj:
    child: "Node"
    index: int


Node = Union[Variable, Conjugate, BasisConst, ScalarConst, Sum, Product, Power, CoordProj]


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<num>\d+(?:/\d+)?)|(?P<basis>e\d)|(?P<kw>conj|coord)|(?P<var>x)|(?P<op>[-+*^(),])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", *_line_col(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind if kind != "op" else m.group(), m.group(), pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str | None = None) -> _Tok:
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = {"num": "a number", "eof": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.error(f"expected {want}, found {got}", tok)
        self.i += 1
        return tok

    def error(self, msg: str, tok: _Tok, cls=ParseError):
        raise cls(msg, *_line_col(self.text, tok.pos))

    def expr(self) -> Node:
        terms = []
        sign = 1
        if self.peek().kind == "-":
            self.take()
            sign = -1
        terms.append((sign, self.term()))
        while self.peek().kind in ("+", "-"):
            sign = 1 if self.take().kind == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1:
            sign, node = terms[0]
            if sign == 1:
                return node
            if isinstance(node, ScalarConst):
                return ScalarConst(-node.value)
        return Sum(tuple(terms))

    def term(self) -> Node:
        start = self.peek()
        left = self.factor()
        if self.peek().kind != "*":
            return left
        self.take("*")
        right = self.factor()
        if self.peek().kind == "*":
            self.take("*")
            self.factor()
            span = self.text[start.pos:self.peek().pos].strip()
            self.error(f"ambiguous product {span!r}: group factors with parentheses", start, AmbiguousProductError)
        return Product(left, right)

    def factor(self) -> Node:
        node = self.primary()
        while self.peek().kind == "^":
            self.take("^")
            tok = self.take("num")
            if "/" in tok.text or int(tok.text) < 1:
                self.error("exponent must be a positive integer", tok)
            node = Power(node, int(tok.text))
        return node

    def primary(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return ScalarConst(Fraction(tok.text))
        if tok.kind == "var":
            self.take()
            return Variable()
        if tok.kind == "basis":
            self.take()
            return BasisConst(int(tok.text[1:]))
        if tok.kind == "kw":
            self.take()
            self.take("(")
            inner = self.expr()
            if tok.text == "conj":
                self.take(")")
                return Conjugate(inner)
            self.take(",")
            idx = self.take("num")
            if "/" in idx.text:
                self.error("coordinate index must be an integer", idx)
            self.take(")")
            return CoordProj(inner, int(idx.text))
        if tok.kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        self.error("expected an operand" if tok.kind != "eof" else "unexpected end of input", tok)


def parse(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    p.take("eof")
    return node


# ---------------------------------------------------------------------------
# printing


def _atom(node: Node) -> str:
    if isinstance(node, (Sum, Product)) or (isinstance(node, ScalarConst) and node.value < 0):
        return f"({to_text(node)})"
    return to_text(node)


def to_text(node: Node) -> str:
    """Canonical text; ``parse(to_text(t)) == t`` for every parsed tree ``t``."""
    if isinstance(node, Variable):
        return "x"
    if isinstance(node, BasisConst):
        return f"e{node.index}"
    if isinstance(node, ScalarConst):
        return str(node.value)
    if isinstance(node, Conjugate):
        return f"conj({to_text(node.child)})"
    if isinstance(node, CoordProj):
        return f"coord({to_text(node.child)}, {node.index})"
    if isinstance(node, Power):
        base = node.child
        text = to_text(base) if isinstance(base, Power) else _atom(base)
        return f"{text}^{node.exponent}"
    if isinstance(node, Product):
        return f"{_atom(node.left)}*{_atom(node.right)}"
    if isinstance(node, Sum):
        parts = []
        for i, (sign, t) in enumerate(node.terms):
            s = _atom(t) if isinstance(t, Sum) or (isinstance(t, ScalarConst) and t.value < 0) else to_text(t)
            if i == 0:
                parts.append(("-" if sign < 0 else "") + s)
            else:
                parts.append(("- " if sign < 0 else "+ ") + s)
        return " ".join(parts)
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation


def _eval(node: Node, x: Element) -> Element:
    alg = x.algebra
    n = alg.dimension
    if isinstance(node, Variable):
        return x
    if isinstance(node, BasisConst):
        if node.index >= n:
            raise AlgebraError(f"basis constant e{node.index} does not exist in dimension {n}")
        return Element(alg, tuple(Fraction(int(i == node.index)) for i in range(n)))
    if isinstance(node, ScalarConst):
        return Element(alg, (node.value,) + (Fraction(0),) * (n - 1))
    if isinstance(node, Conjugate):
        return conjugate(_eval(node.child, x))
    if isinstance(node, CoordProj):
        if node.index >= n:
            raise AlgebraError(f"coordinate {node.index} does not exist in dimension {n}")
        v = _eval(node.child, x).coeffs[node.index]
        return Element(alg, (v,) + (0,) * (n - 1))
    if isinstance(node, Sum):
        total = None
        for sign, t in node.terms:
            v = _eval(t, x)
            v = v if sign > 0 else -v
            total = v if total is None else total + v
        return total
    if isinstance(node, Product):
        return multiply(_eval(node.left, x), _eval(node.right, x))
    if isinstance(node, Power):
        base = _eval(node.child, x)
        out = base
        for _ in range(node.exponent - 1):
            out = multiply(out, base)
        return out
    raise AlgebraError(f"cannot evaluate node {node!r}")


def evaluate(ast: Node | str, x: Element) -> Element:
    """Evaluate at ``x``; products go through the algebra's structure tensor."""
    if isinstance(ast, str):
        ast = parse(ast)
    return _eval(ast, x)


# ---------------------------------------------------------------------------
# component polynomials


class ComponentPolynomial:
    """``N`` real polynomials ``U^mu(x_0, ..., x_{N-1})`` with rational coefficients."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Poly]):
        comps = tuple(components)
        n = len(comps)
        if any(p.nvars != n for p in comps):
            raise ValueError("each component must be a polynomial in N variables")
        self.components = comps

    @property
    def N(self) -> int:
        return len(self.components)

    @classmethod
    def zero(cls, n: int) -> "ComponentPolynomial":
        return cls([Poly(n) for _ in range(n)])

    def __getitem__(self, mu: int) -> Poly:
        return self.components[mu]

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        if not isinstance(other, ComponentPolynomial):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __add__(self, other: "ComponentPolynomial"):
        return ComponentPolynomial([a + b for a, b in zip(self, other)])

    def __sub__(self, other: "ComponentPolynomial"):
        return ComponentPolynomial([a - b for a, b in zip(self, other)])

    def __neg__(self):
        return ComponentPolynomial([-a for a in self])

    def __mul__(self, scalar):
        return ComponentPolynomial([a * scalar for a in self])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self)

    def degree(self) -> int:
        return max(p.degree() for p in self)

    def __call__(self, point: Sequence) -> tuple:
        if len(point) != self.N:
            raise ValueError(f"expected {self.N} coordinates, got {len(point)}")
        return tuple(p(point) for p in self)

    def at(self, x: Element) -> Element:
        return Element(x.algebra, self(x.coeffs))

    def diff(self, mu: int) -> "ComponentPolynomial":
        return differentiate(self, mu)

    def __repr__(self):
        return "ComponentPolynomial([" + ", ".join(p.to_text() for p in self) + "])"

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "components": [
                [{"exps": list(e), "coef": str(Fraction(c))} for e, c in p] for p in self
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "ComponentPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["N"])
        comps = data["components"]
        if len(comps) != n:
            raise ValueError(f"expected {n} components, got {len(comps)}")
        polys = []
        for terms in comps:
            p = Poly(n)
            for t in terms:
                exps = tuple(int(k) for k in t["exps"])
                if len(exps) != n or any(k < 0 for k in exps):
                    raise ValueError(f"bad exponent vector {t['exps']}")
                p = p + Poly(n, {exps: Fraction(t["coef"])})
            polys.append(p)
        return cls(polys)


def lower(ast: Node | str, n: int, max_degree: int | None = None) -> ComponentPolynomial:
    """Expand the expression into ``n`` component polynomials."""
    if isinstance(ast, str):
        ast = parse(ast)
    alg = structure_tensor(n)
    x = Element(alg, tuple(Poly.var(n, i) for i in range(n)))
    val = _eval(ast, x)
    comps = [c if isinstance(c, Poly) else Poly.const(n, c) for c in val.coeffs]
    out = ComponentPolynomial(comps)
    if max_degree is not None and out.degree() > max_degree:
        raise ValueError(f"degree {out.degree()} exceeds the declared maximum {max_degree}")
    return out


def differentiate(p: ComponentPolynomial, mu: int) -> ComponentPolynomial:
    if not 0 <= mu < p.N:
        raise IndexError(f"partial index {mu} out of range for N={p.N}")
    return ComponentPolynomial([c.diff(mu) for c in p])


def load_function(source: str, n: int) -> ComponentPolynomial:
    """Read a function from DSL text or from the component-polynomial JSON format."""
    if source.lstrip().startswith("{"):
        poly = ComponentPolynomial.from_json(source)
        if poly.N != n:
            raise ValueError(f"function has N={poly.N}, expected {n}")
        return poly
    return lower(parse(source), n)


def reflect(p: ComponentPolynomial) -> ComponentPolynomial:
    """``V(x) = U(conj(x))``: flip the sign of every imaginary coordinate."""
    n = p.N
    out = []
    for comp in p:
        terms = {}
        for e, c in comp:
            sign = -1 if sum(e[1:]) % 2 else 1
            terms[e] = c * sign
        out.append(Poly(n, terms))
    return ComponentPolynomial(out)


def conjugate_values(p: ComponentPolynomial) -> ComponentPolynomial:
    """``conj(U(x))``."""
    return ComponentPolynomial([p[0]] + [-c for c in p.components[1:]])
