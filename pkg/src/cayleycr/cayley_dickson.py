"""Cayley-Dickson doubling and signed-permutation isomorphism search."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .algebra import (
    AlgebraError,
    AlgebraSpec,
    Element,
    _canonical_epsilon,
    conj_coeffs,
    mul_coeffs,
    structure_tensor,
)

DOUBLING_CONVENTION = "(x1,y1)(x2,y2) = (x1 x2 + alpha conj(y2) y1, y2 x1 + y1 conj(x2))"


class ConventionError(RuntimeError):
    """A doubled algebra failed to match the normative table it should reproduce."""


@dataclass(frozen=True)
class SignedPermutation:
    """Linear map ``e_i -> signs[i] * e_{perm[i]}`` fixing ``e_0``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise ValueError("perm must be a bijection on 0..N-1 with one sign per index")
        if self.perm[0] != 0 or self.signs[0] != 1:
            raise ValueError("signed permutation must fix e_0")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    def __call__(self, x: Element, target: AlgebraSpec) -> Element:
        out = [Fraction(0)] * len(self.perm)
        for i, c in enumerate(x.coeffs):
            out[self.perm[i]] += self.signs[i] * c
        return Element(target, tuple(out))

    def __str__(self):
        return ", ".join(
            f"e{i}->{'+' if s > 0 else '-'}e{p}" for i, (p, s) in enumerate(zip(self.perm, self.signs))
        )

    def to_dict(self) -> dict:
        return {"perm": list(self.perm), "signs": list(self.signs)}


def is_unital(alg: AlgebraSpec) -> bool:
    n = alg.dimension
    c = alg.structure
    return all(c[s][0][m] == c[s][m][0] == (1 if s == m else 0) for s in range(n) for m in range(n))


def double(base: AlgebraSpec, alpha=-1, verify: bool = True) -> AlgebraSpec:
    """Structure tensor of the doubled algebra ``(base, alpha)`` on pairs ``(x, y)``.

    Basis order is ``(e_k, 0)`` for ``k < n`` followed by ``(0, e_k)``.  For
    ``alpha = -1`` and a base reaching dimension 2, 4 or 8 the result is
    checked against the normative table through :func:`find_isomorphism`.
    """
    alpha = Fraction(alpha)
    if alpha == 0:
        raise AlgebraError("alpha must be nonzero")
    n = base.dimension
    if n not in (1, 2, 4):
        raise AlgebraError(f"base dimension must be 1, 2 or 4, got {n}")
    if not is_unital(base):
        raise AlgebraError("base algebra is not unital (e_0 must be a two-sided unit)")
    m = 2 * n

    def split(i):
        x = [0] * n
        y = [0] * n
        (x if i < n else y)[i % n] = 1
        return x, y

    c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for mu in range(m):
        x1, y1 = split(mu)
        for nu in range(m):
            x2, y2 = split(nu)
            left = [
                a + alpha * b
                for a, b in zip(mul_coeffs(base, x1, x2), mul_coeffs(base, conj_coeffs(y2), y1))
            ]
            right = [a + b for a, b in zip(mul_coeffs(base, y2, x1), mul_coeffs(base, y1, conj_coeffs(x2)))]
            for sg, v in enumerate(left + right):
                c[sg][mu][nu] = Fraction(v)
    structure = tuple(tuple(tuple(_simplify(v) for v in r) for r in row) for row in c)
    eps = {}
    for i in range(1, m):
        for j in range(1, m):
            for k in range(1, m):
                v = structure[k][i][j]
                if len({i, j, k}) == 3 and v in (1, -1):
                    eps[i, j, k] = int(v)
    convention = f"cayley-dickson(alpha={alpha}): {DOUBLING_CONVENTION}"
    out = AlgebraSpec(m, structure, _canonical_epsilon(eps), convention)
    if verify and alpha == -1:
        phi = find_isomorphism(out, structure_tensor(m))
        if phi is None:
            raise ConventionError(f"doubled {base.name} is not isomorphic to the standard dimension-{m} table")
        out = AlgebraSpec(m, structure, out.epsilon, f"{convention}; isomorphism to standard: {phi}")
    return out


def _simplify(v: Fraction):
    return int(v) if v.denominator == 1 else v


def doubling_chain(alpha=-1) -> list[AlgebraSpec]:
    """R, then three successive doublings."""
    chain = [structure_tensor(1)]
    for _ in range(3):
        chain.append(double(chain[-1], alpha))
    return chain


def double_conjugate(x: Element) -> Element:
    """Conjugation on pairs: ``conj((x, y)) = (conj(x), -y)``."""
    n = x.algebra.dimension // 2
    xs, ys = list(x.coeffs[:n]), list(x.coeffs[n:])
    return Element(x.algebra, tuple(conj_coeffs(xs) + [-v for v in ys]))


# ---------------------------------------------------------------------------
# isomorphism search


def _support(alg: AlgebraSpec):
    n = alg.dimension
    return [[{s: alg.structure[s][mu][nu] for s in range(n) if alg.structure[s][mu][nu] != 0} for nu in range(n)]
            for mu in range(n)]


def iter_isomorphisms(a: AlgebraSpec, b: AlgebraSpec) -> Iterator[SignedPermutation]:
    """Every signed permutation ``phi`` with ``phi(xy) = phi(x) phi(y)``, lexicographic
    by permutation, then by signs (``+1`` before ``-1``)."""
    if a.dimension != b.dimension:
        raise AlgebraError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    n = a.dimension
    sa, sb = _support(a), _support(b)
    perm = [0] + [-1] * (n - 1)
    used = [True] + [False] * (n - 1)

    def consistent(k):
        # indices 0..k are assigned; compare supports and magnitudes among them
        inv = {perm[j]: j for j in range(k + 1)}
        for mu in range(k + 1):
            for nu in range(k + 1):
                ta = sa[mu][nu]
                tb = sb[perm[mu]][perm[nu]]
                if len(ta) != len(tb):
                    return False
                for s, v in ta.items():
                    if s <= k and abs(tb.get(perm[s], 0)) != abs(v):
                        return False
                for t in tb:
                    if t in inv and inv[t] not in ta:
                        return False
        return True

    def sign_search(p):
        signs = [1] + [0] * (n - 1)

        def ok(k):
            for mu in range(n):
                for nu in range(n):
                    for s, v in sa[mu][nu].items():
                        idx = max(mu, nu, s)
                        if idx != k:
                            continue
                        if v * signs[s] != signs[mu] * signs[nu] * sb[p[mu]][p[nu]].get(p[s], 0):
                            return False
            return True

        def rec(k):
            if k == n:
                yield SignedPermutation(tuple(p), tuple(signs))
                return
            for s in (1, -1):
                signs[k] = s
                if ok(k):
                    yield from rec(k + 1)
            signs[k] = 0

        if ok(0):
            yield from rec(1)

    def rec(k):
        if k == n:
            yield from sign_search(list(perm))
            return
        for img in range(1, n):
            if used[img]:
                continue
            perm[k] = img
            used[img] = True
            if consistent(k):
                yield from rec(k + 1)
            used[img] = False
            perm[k] = -1

    if n == 1:
        yield from sign_search([0])
        return
    yield from rec(1)


def find_isomorphism(a: AlgebraSpec, b: AlgebraSpec) -> SignedPermutation | None:
    """Lexicographically first signed-permutation isomorphism ``a -> b``, or ``None``."""
    return next(iter_isomorphisms(a, b), None)


def is_homomorphism(phi: SignedPermutation, a: AlgebraSpec, b: AlgebraSpec) -> bool:
    """Exact check of ``phi(e_mu e_nu) = phi(e_mu) phi(e_nu)`` on all basis pairs."""
    n = a.dimension
    for mu in range(n):
        for nu in range(n):
            lhs = phi(a.basis(mu) * a.basis(nu), b)
            rhs = phi(a.basis(mu), b) * phi(a.basis(nu), b)
            if lhs != rhs:
                return False
    return True
