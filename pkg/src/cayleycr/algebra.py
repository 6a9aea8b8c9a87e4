"""Structure-constant arithmetic for R, C, H and O.

Multiplication is defined entirely by a rank-3 tensor ``c[sigma][mu][nu]``
with ``e_mu e_nu = c[sigma][mu][nu] e_sigma``.  Coefficients may be exact
(``Fraction``) or floating point; every operation is generic over both, and
also over :class:`~cayleycr.poly.Poly` coefficients, which is how expressions
are lowered to component polynomials.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from numbers import Rational
from typing import Iterable, Sequence

SUPPORTED_DIMENSIONS = (1, 2, 4, 8)

# Positive triples of the octonion table: eps_ijk = +1.
OCTONION_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (3, 4, 7), (5, 3, 6), (7, 2, 5))
QUATERNION_TRIPLES = ((1, 2, 3),)

# Products listed under the Fano-plane figure, read as e_i e_j = e_k.  Kept as
# an alternate labeling; the triples above are the normative table.
FIGURE_RULE_TRIPLES = ((1, 3, 2), (2, 6, 4), (4, 5, 1), (3, 6, 5), (1, 7, 6), (2, 7, 5), (4, 7, 3))


class AlgebraError(ValueError):
    """Raised for unsupported dimensions and mismatched operands."""


def _permutation_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def epsilon_tensor(n: int, triples: Iterable[Sequence[int]]) -> dict[tuple[int, int, int], int]:
    """Totally antisymmetric extension of the listed positive triples.

    Even permutations of a listed triple get +1, odd ones -1; repeated
    indices and unlisted triples are zero (absent from the dict).
    """
    eps: dict[tuple[int, int, int], int] = {}
    for t in triples:
        if len(set(t)) != 3 or not all(1 <= i < n for i in t):
            raise AlgebraError(f"bad epsilon triple {tuple(t)} for dimension {n}")
        for p in permutations(range(3)):
            key = tuple(t[q] for q in p)
            s = _permutation_sign(p)
            if eps.get(key, s) != s:
                raise AlgebraError(f"inconsistent epsilon triple {tuple(t)}")
            eps[key] = s
    return eps


def _canonical_epsilon(eps: dict) -> tuple[tuple[int, int, int, int], ...]:
    return tuple(sorted((i, j, k, s) for (i, j, k), s in eps.items() if i < j < k))


@dataclass(frozen=True)
class AlgebraSpec:
    """Dimension plus structure tensor; the only source of multiplication.

    ``structure[sigma][mu][nu]`` is the coefficient of ``e_sigma`` in
    ``e_mu e_nu``.  ``epsilon`` lists the imaginary-block triples as
    ``(i, j, k, sign)`` with ``i < j < k``.
    """

    dimension: int
    structure: tuple
    epsilon: tuple = ()
    convention: str = "structure-constants"

    def __post_init__(self):
        n = self.dimension
        s = self.structure
        if len(s) != n or any(len(row) != n or any(len(r) != n for r in row) for row in s):
            raise AlgebraError(f"structure tensor must have shape ({n}, {n}, {n})")

    @cached_property
    def products(self) -> dict[tuple[int, int], tuple[tuple[int, object], ...]]:
        """Sparse table: ``(mu, nu) -> ((sigma, c), ...)`` over nonzero entries."""
        n = self.dimension
        return {
            (mu, nu): tuple((sg, self.structure[sg][mu][nu]) for sg in range(n) if self.structure[sg][mu][nu] != 0)
            for mu in range(n)
            for nu in range(n)
        }

    def c(self, sigma: int, mu: int, nu: int):
        return self.structure[sigma][mu][nu]

    def basis(self, mu: int) -> "Element":
        if not 0 <= mu < self.dimension:
            raise AlgebraError(f"basis index {mu} out of range for dimension {self.dimension}")
        return Element(self, tuple(Fraction(int(i == mu)) for i in range(self.dimension)))

    def element(self, coeffs: Sequence) -> "Element":
        return Element(self, tuple(_exact(c) for c in coeffs))

    def zero(self) -> "Element":
        return Element(self, (Fraction(0),) * self.dimension)

    def one(self) -> "Element":
        return self.basis(0)

    @property
    def name(self) -> str:
        return {1: "R", 2: "C", 4: "H", 8: "O"}.get(self.dimension, f"A{self.dimension}")

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return self.dimension == other.dimension and self.structure == other.structure

    def __hash__(self):
        return hash((self.dimension, self.structure))

    def __repr__(self):
        return f"AlgebraSpec(N={self.dimension}, convention={self.convention!r})"


def _exact(c):
    if isinstance(c, Rational) and not isinstance(c, Fraction):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    return c


def structure_from_triples(n: int, triples: Iterable[Sequence[int]], convention: str = "") -> AlgebraSpec:
    """Build ``c`` from a unit ``e_0`` plus ``e_i e_j = -delta_ij e_0 + eps_ijk e_k``."""
    eps = epsilon_tensor(n, triples)
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for mu in range(n):
        c[mu][0][mu] = 1
        c[mu][mu][0] = 1
    for i in range(1, n):
        c[0][i][i] = -1
    for (i, j, k), s in eps.items():
        c[k][i][j] = s
    structure = tuple(tuple(tuple(r) for r in row) for row in c)
    return AlgebraSpec(n, structure, _canonical_epsilon(eps), convention or f"triples{tuple(map(tuple, triples))}")


def structure_tensor(n: int) -> AlgebraSpec:
    """Normative structure tensor for R (1), C (2), H (4) or O (8)."""
    if n not in SUPPORTED_DIMENSIONS:
        raise AlgebraError(f"unsupported dimension {n}; allowed dimensions are 1, 2, 4, 8")
    return _STANDARD[n]


_STANDARD = {
    1: structure_from_triples(1, (), "standard"),
    2: structure_from_triples(2, (), "standard"),
    4: structure_from_triples(4, QUATERNION_TRIPLES, "standard"),
    8: structure_from_triples(8, OCTONION_TRIPLES, "standard"),
}


def figure_rule_table() -> AlgebraSpec:
    """The octonion table read off the figure's product rules (alternate labeling)."""
    return structure_from_triples(8, FIGURE_RULE_TRIPLES, "figure-rules")


def metric(n: int) -> tuple[int, ...]:
    """Diagonal of ``g``: +1 for the real unit, -1 for imaginary units."""
    return (1,) + (-1,) * (n - 1)


# ---------------------------------------------------------------------------
# generic coefficient-level arithmetic


def mul_coeffs(alg: AlgebraSpec, a: Sequence, b: Sequence) -> list:
    """``(ab)^sigma = c^sigma_{mu nu} a^mu b^nu`` for any commutative coefficient ring."""
    out: list = [0] * alg.dimension
    table = alg.products
    for mu, am in enumerate(a):
        if _is_zero(am):
            continue
        for nu, bn in enumerate(b):
            if _is_zero(bn):
                continue
            ab = am * bn
            for sg, c in table[mu, nu]:
                out[sg] = out[sg] + ab * c
    return out


def conj_coeffs(a: Sequence) -> list:
    return [a[0]] + [-v for v in a[1:]]


def _is_zero(v) -> bool:
    try:
        return v == 0
    except TypeError:  # pragma: no cover - exotic coefficient types
        return False


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class Element:
    """``x = x^mu e_mu`` with a coefficient tuple of length ``N``."""

    algebra: AlgebraSpec
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dimension:
            raise AlgebraError(
                f"element has {len(self.coeffs)} coefficients, algebra dimension is {self.algebra.dimension}"
            )

    @property
    def field(self) -> str:
        return "float" if any(isinstance(c, float) for c in self.coeffs) else "exact"

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise AlgebraError(f"expected Element, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraError(
                f"operands live in different algebras ({self.algebra.name} vs {other.algebra.name})"
            )

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Element(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return Element(self.algebra, tuple(a * other for a in self.coeffs))

    def __rmul__(self, other):
        return Element(self.algebra, tuple(other * a for a in self.coeffs))

    def conjugate(self) -> "Element":
        return conjugate(self)

    def __getitem__(self, mu: int):
        return self.coeffs[mu]

    def __repr__(self):
        terms = [f"{c}*e{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return f"<{self.algebra.name}: {' + '.join(terms) or '0'}>"


def multiply(a: Element, b: Element) -> Element:
    a._check(b)
    return Element(a.algebra, tuple(mul_coeffs(a.algebra, a.coeffs, b.coeffs)))


def conjugate(a: Element) -> Element:
    return Element(a.algebra, tuple(conj_coeffs(a.coeffs)))


def trace(a: Element):
    """Linear trace with ``Tr e_0 = N`` and ``Tr e_i = 0``."""
    return a.algebra.dimension * a.coeffs[0]


def inner(a: Element, b: Element):
    """``<a|b> = Tr(conj(a) b) / N``."""
    a._check(b)
    n = a.algebra.dimension
    t = trace(multiply(conjugate(a), b))
    return Fraction(t, n) if isinstance(t, (int, Fraction)) else t / n


def coordinate(a: Element, mu: int):
    """Recover ``a^mu`` as the real part of ``(a conj(e_mu) + e_mu conj(a)) / 2``."""
    n = a.algebra.dimension
    if not 0 <= mu < n:
        raise AlgebraError(f"coordinate index {mu} out of range for dimension {n}")
    e = a.algebra.basis(mu)
    s = multiply(a, conjugate(e)) + multiply(e, conjugate(a))
    v = s.coeffs[0]
    return v / 2 if isinstance(v, float) else Fraction(v) / 2


def random_element(alg: AlgebraSpec, rng: random.Random, bound: int = 9, max_den: int = 5) -> Element:
    """Random exact element with small numerators and denominators."""
    return Element(
        alg,
        tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, max_den)) for _ in range(alg.dimension)),
    )


# ---------------------------------------------------------------------------
# identity verification


@dataclass
class IdentityResult:
    name: str
    passed: bool
    checked: int
    counterexample: tuple | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else f" counterexample={self.counterexample}"
        return f"{status} {self.name} ({self.checked} checks){extra}"


@dataclass
class IdentityReport:
    algebra: str
    field: str
    results: list[IdentityResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> IdentityResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _check_all(name, cases, predicate) -> IdentityResult:
    count = 0
    for case in cases:
        count += 1
        if not predicate(*case):
            return IdentityResult(name, False, count, tuple(_fmt(c) for c in case))
    return IdentityResult(name, True, count)


def _fmt(v):
    return tuple(str(c) for c in v.coeffs) if isinstance(v, Element) else v


def verify_algebra_identities(alg: AlgebraSpec, samples: int = 100, seed: int = 42) -> IdentityReport:
    """Exact checks of the composition law, basis anticommutator, Moufang and the
    left-conjugate associativity ``a(conj(a) u) = (a conj(a)) u``.

    Failures are reported, never raised.
    """
    if samples < 1:
        raise AlgebraError("samples must be >= 1")
    rng = random.Random(seed)
    n = alg.dimension
    e = [alg.basis(i) for i in range(n)]

    pairs = [(random_element(alg, rng), random_element(alg, rng)) for _ in range(samples)]
    composition = _check_all(
        "composition",
        pairs,
        lambda x, y: inner(x * y, x * y) == inner(x, x) * inner(y, y),
    )
    two_e0 = 2 * alg.one()
    anticomm = _check_all(
        "anticommutator",
        ((e[m], e[v], m, v) for m, v in product(range(n), repeat=2)),
        lambda a, b, m, v: a * b.conjugate() + b * a.conjugate() == (two_e0 if m == v else alg.zero()),
    )
    triples = [tuple(random_element(alg, rng) for _ in range(3)) for _ in range(samples)]
    moufang = _check_all("moufang", triples, lambda x, y, z: (x * (y * z)) * x == (x * y) * (z * x))
    lpairs = [(random_element(alg, rng), random_element(alg, rng)) for _ in range(samples)]
    conj_assoc = _check_all(
        "conjugate-associativity",
        lpairs,
        lambda t, u: t * (t.conjugate() * u) == (t * t.conjugate()) * u,
    )
    return IdentityReport(alg.name, "exact", [composition, anticomm, moufang, conj_assoc])


def structure_identities(alg: AlgebraSpec) -> dict[str, bool]:
    """Tensor identities every composition-algebra table satisfies.

    ``c^0_{mu nu} = g_{mu nu}``, ``c^sigma_{sigma 0} = N``, ``c^sigma_{sigma k} = 0``,
    ``c^k_{ij} = eps_ijk`` and ``c^sigma_{mu nu} g_{sigma rho} = c^sigma_{rho mu} g_{sigma nu}``.
    """
    n = alg.dimension
    c = alg.structure
    g = metric(n)
    eps = {(i, j, k): s for i, j, k, s in alg.epsilon}
    full_eps = epsilon_tensor(n, [(i, j, k) if s > 0 else (j, i, k) for (i, j, k), s in eps.items()])
    r = range(n)
    return {
        "unit": all(c[s][0][m] == c[s][m][0] == int(s == m) for s in r for m in r),
        "metric": all(c[0][m][v] == (g[m] if m == v else 0) for m in r for v in r),
        "trace-contraction": sum(c[s][s][0] for s in r) == n
        and all(sum(c[s][s][k] for s in r) == 0 for k in range(1, n)),
        "epsilon": all(
            c[k][i][j] == full_eps.get((i, j, k), 0) for i in range(1, n) for j in range(1, n) for k in range(1, n)
        ),
        "antisymmetry": all(
            c[k][i][j] == -c[k][j][i] for i in range(1, n) for j in range(1, n) for k in range(1, n) if i != j
        ),
        # g is diagonal, so the sigma sums collapse
        "metric-symmetry": all(c[rho][m][v] * g[rho] == c[v][rho][m] * g[v] for m in r for v in r for rho in r),
    }
