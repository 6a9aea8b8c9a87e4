"""Octonions as 2x2 matrices with quaternion / quaternion-times-epsilon entries.

``theta = q1 + q2 E`` is represented by ``[[q1, -q2 eps], [q2 eps, q1]]``.
``eps`` never appears on its own: an entry is either a plain quaternion or a
quaternion carrying a trailing ``eps`` (``eps * eps = 1`` normalizes everything
else away).  Products of entries follow

    (q1 eps)(q2 eps) = conj(q2) q1
    (q1 eps) q2      = (q1 conj(q2)) eps
    q1 (q2 eps)      = (q2 q1) eps
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .algebra import AlgebraError, Element, IdentityResult, conjugate, random_element, structure_tensor

H = structure_tensor(4)
O = structure_tensor(8)


class ShapeError(ValueError):
    """The matrix does not have the ``[[q1, -q2 eps], [q2 eps, q1]]`` shape."""


@dataclass(frozen=True)
class OperatorEntry:
    value: Element
    eps: bool = False

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.value.coeffs)

    def __add__(self, other: "OperatorEntry") -> "OperatorEntry":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.eps != other.eps:
            raise ShapeError("cannot add a plain entry to an eps entry")
        return OperatorEntry(self.value + other.value, self.eps)

    def __neg__(self):
        return OperatorEntry(-self.value, self.eps)

    def __eq__(self, other):
        if not isinstance(other, OperatorEntry):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.eps == other.eps and self.value == other.value

    def __hash__(self):
        return hash((self.value.coeffs, self.eps and not self.is_zero()))

    def __str__(self):
        return f"{self.value}{' eps' if self.eps else ''}"


def _rule_c_standard(q1: Element, q2: Element) -> Element:
    return q2 * q1


def _rule_c_swapped(q1: Element, q2: Element) -> Element:
    return q1 * q2


RULE_C = {"standard": _rule_c_standard, "swapped": _rule_c_swapped}


def entry_product(a: OperatorEntry, b: OperatorEntry, rule_c: Callable = _rule_c_standard) -> OperatorEntry:
    p, q = a.value, b.value
    if a.eps and b.eps:
        return OperatorEntry(conjugate(q) * p, False)
    if a.eps:
        return OperatorEntry(p * conjugate(q), True)
    if b.eps:
        return OperatorEntry(rule_c(p, q), True)
    return OperatorEntry(p * q, False)


@dataclass(frozen=True)
class OpMatrix:
    rows: tuple[tuple[OperatorEntry, OperatorEntry], tuple[OperatorEntry, OperatorEntry]]

    def __getitem__(self, rc: tuple[int, int]) -> OperatorEntry:
        r, c = rc
        return self.rows[r][c]

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.rows) + "]"


def embed(theta: Element) -> OpMatrix:
    """``e0..e3`` go to the quaternion ``q1``, ``e4..e7`` to ``q2``."""
    if theta.algebra.dimension != 8:
        raise AlgebraError(f"embed expects an octonion, got dimension {theta.algebra.dimension}")
    q1 = Element(H, theta.coeffs[:4])
    q2 = Element(H, theta.coeffs[4:])
    a = OperatorEntry(q1)
    b = OperatorEntry(q2, True)
    return OpMatrix(((a, -b), (b, a)))


def identity() -> OpMatrix:
    return embed(O.one())


def extract(m: OpMatrix) -> Element:
    """Inverse of :func:`embed`; raises :class:`ShapeError` naming the bad entry."""
    d0, d1 = m[0, 0], m[1, 1]
    lo, up = m[1, 0], m[0, 1]
    for name, e, flag in (("(0,0)", d0, False), ("(1,1)", d1, False), ("(1,0)", lo, True), ("(0,1)", up, True)):
        if not e.is_zero() and e.eps != flag:
            raise ShapeError(f"entry {name} = {e} must {'carry' if flag else 'not carry'} eps")
    if d0 != d1:
        raise ShapeError(f"entry (1,1) = {d1} differs from (0,0) = {d0}")
    if up != -lo:
        raise ShapeError(f"entry (0,1) = {up} is not the negative of (1,0) = {lo}")
    return Element(O, d0.value.coeffs + lo.value.coeffs)


def op_multiply(m1: OpMatrix, m2: OpMatrix, rule_c: str = "standard") -> OpMatrix:
    """Matrix product with entry products given by the eps rules."""
    rc = RULE_C[rule_c]
    rows = []
    for r in range(2):
        row = []
        for c in range(2):
            row.append(entry_product(m1[r, 0], m2[0, c], rc) + entry_product(m1[r, 1], m2[1, c], rc))
        rows.append(tuple(row))
    return OpMatrix(tuple(rows))


def _sandwich(e: OperatorEntry) -> OperatorEntry:
    # eps q eps = conj(q); eps (q eps) eps reverses to (eps eps eps)(eps q eps) = eps conj(q) = q eps
    if e.eps:
        return e
    return OperatorEntry(conjugate(e.value), False)


def conjugate_by_epsilon(m: OpMatrix, check: bool = True) -> OpMatrix:
    """``eps M eps`` with ``eps = diag(eps, -eps)`` and order reversal inside the sandwich."""
    theta = extract(m)  # also validates the shape
    signs = (1, -1)
    rows = tuple(
        tuple(
            _sandwich(m[r, c]) if signs[r] * signs[c] > 0 else -_sandwich(m[r, c])
            for c in range(2)
        )
        for r in range(2)
    )
    out = OpMatrix(rows)
    if check and out != embed(conjugate(theta)):
        raise AssertionError("eps-sandwich disagrees with coefficient conjugation")
    return out


def E() -> OpMatrix:
    return embed(O.basis(4))


def homomorphism_check(samples: int = 200, seed: int = 42, rule_c: str = "standard") -> IdentityResult:
    """``embed(a b) == embed(a) embed(b)`` on random exact octonion pairs."""
    rng = random.Random(seed)
    pairs = [(random_element(O, rng), random_element(O, rng)) for _ in range(samples)]
    for i, (a, b) in enumerate(pairs, 1):
        if op_multiply(embed(a), embed(b), rule_c) != embed(a * b):
            return IdentityResult(f"embedding-homomorphism[{rule_c}]", False, i,
                                  (tuple(map(str, a.coeffs)), tuple(map(str, b.coeffs))))
    return IdentityResult(f"embedding-homomorphism[{rule_c}]", True, samples)
