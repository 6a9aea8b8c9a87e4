"""Polynomial solution spaces, the kappa-family map and generated analytic functions.

Every C-R form is a constant-coefficient first-order system, so its action on
polynomials preserves homogeneous degree (minus one).  Solution spaces are
therefore computed one degree at a time by exact elimination; constants
always solve.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..expr import ComponentPolynomial, conjugate_values, reflect
from ..linalg import nullspace, rref
from ..poly import Poly, monomials
from .forms import form_function, form_symbol
from .operators import check_dimension, dirac_matrix, variant_signs

MAX_DEGREE = 4


def symbol_of(form: str, n: int, variant: str = "analytic", kappa=None) -> tuple:
    return tuple(map(tuple, form_symbol(form_function(form, n, variant, kappa), n)))


def apply_symbol(symbol: Sequence[Sequence], u: ComponentPolynomial) -> ComponentPolynomial:
    """``sum_{nu, sigma} S[rho][nu N + sigma] d_sigma U^nu`` as polynomials."""
    n = u.N
    derivs = {}
    out = []
    for row in symbol:
        total = Poly(n)
        for col, s in enumerate(row):
            if s:
                nu, sg = divmod(col, n)
                if col not in derivs:
                    derivs[col] = u[nu].diff(sg)
                total = total + derivs[col] * s
        out.append(total)
    return ComponentPolynomial(out)


def _degree_system(symbol, n: int, k: int):
    """Equations for the homogeneous degree-``k`` block.

    Unknown ``(monomial index i, component nu)`` lives in column ``i*N + nu``;
    one equation per (residual row, degree ``k-1`` monomial).
    """
    monos = monomials(n, k)
    targets = {m: t for t, m in enumerate(monomials(n, k - 1))}
    eqs: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i, m in enumerate(monos):
        for sg in range(n):
            if not m[sg]:
                continue
            t = targets[m[:sg] + (m[sg] - 1,) + m[sg + 1:]]
            for nu in range(n):
                col = i * n + nu
                for rho, row in enumerate(symbol):
                    s = row[nu * n + sg]
                    if s:
                        eq = eqs.setdefault((rho, t), {})
                        v = eq.get(col, 0) + s * m[sg]
                        if v:
                            eq[col] = v
                        else:
                            eq.pop(col, None)
    return monos, [eqs[key] for key in sorted(eqs)]


def _to_function(vec: dict, monos, n: int, k: int) -> ComponentPolynomial:
    comps = [dict() for _ in range(n)]
    for col, c in vec.items():
        i, nu = divmod(col, n)
        comps[nu][monos[i]] = c
    return ComponentPolynomial([Poly(n, t) for t in comps])


def degree_nullspace(symbol, n: int, k: int) -> list[dict[int, Fraction]]:
    """Raw nullspace vectors of the homogeneous degree-``k`` block (``k >= 1``)."""
    monos, eqs = _degree_system(symbol, n, k)
    return nullspace(eqs, len(monos) * n)


def solve_form_polynomials(symbol, n: int, degree: int) -> list[ComponentPolynomial]:
    """Exact basis of polynomial solutions of total degree <= ``degree``.

    Order: the N constant vectors, then each degree block in increasing
    degree, each block in increasing free-column order.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if degree > MAX_DEGREE:
        raise ValueError(f"degree {degree} is above the supported maximum {MAX_DEGREE}")
    basis = []
    for mu in range(n):
        basis.append(ComponentPolynomial([Poly.const(n, 1) if nu == mu else Poly(n) for nu in range(n)]))
    for k in range(1, degree + 1):
        monos = monomials(n, k)
        basis.extend(_to_function(v, monos, n, k) for v in degree_nullspace(symbol, n, k))
    return basis


@lru_cache(maxsize=None)
def _solve_cached(form: str, n: int, variant: str, kappa, degree: int) -> tuple:
    return tuple(solve_form_polynomials(symbol_of(form, n, variant, kappa), n, degree))


def solve_kappa_polynomials(n: int, kappa, degree: int) -> list[ComponentPolynomial]:
    """Basis of degree-<=``degree`` polynomial solutions of the kappa C-R system."""
    check_dimension(n)
    return list(_solve_cached("kappa", n, "analytic", Fraction(kappa), degree))


def solve_analytic_polynomials(n: int, degree: int, variant: str = "analytic") -> list[ComponentPolynomial]:
    check_dimension(n)
    variant_signs(n, variant)
    return list(_solve_cached("real", n, variant, None, degree))


def same_solution_space(symbol_a, symbol_b, n: int, degree: int) -> bool:
    """Nullspaces of the two systems coincide in every degree block up to ``degree``."""
    for k in range(1, degree + 1):
        a = degree_nullspace(symbol_a, n, k)
        b = degree_nullspace(symbol_b, n, k)
        if len(a) != len(b) or len(rref(a + b)) != len(a):
            return False
    return True


def in_solution_space(symbol, u: ComponentPolynomial) -> bool:
    return apply_symbol(symbol, u).is_zero()


# ---------------------------------------------------------------------------
# the kappa -> kappa' map


@dataclass(frozen=True)
class TMapFactors:
    kappa: Fraction
    kappa_prime: Fraction
    derived: Fraction
    product_form: Fraction | None
    dimension_form: Fraction | None

    def lines(self) -> list[str]:
        def fmt(v):
            return "undefined" if v is None else str(v)

        return [
            f"kappa={self.kappa} kappa'={self.kappa_prime}",
            f"  derived (kappa-1)/(kappa'-1)      = {fmt(self.derived)}",
            f"  alt     (1-kappa)/(1-kappa*kappa') = {fmt(self.product_form)}",
            f"  alt     (N-1)/(2N-1)              = {fmt(self.dimension_form)}",
        ]


def t_map_factor(kappa, kappa_prime) -> Fraction:
    """Scale ``m`` on the 0-component carrying kappa-solutions to kappa'-solutions.

    From ``C^s_{mu i} d_s f^i = (kappa - 1) d_mu f^0`` the image solves the
    kappa' system iff ``m + kappa - 1 = kappa' m``.
    """
    k, kp = Fraction(kappa), Fraction(kappa_prime)
    if k == kp:
        return Fraction(1)
    if kp == 1:
        raise ValueError("kappa' = 1 admits no finite rescaling")
    if k == 1:
        raise ValueError("kappa = 1 gives m = 0, which collapses the 0-component and is not invertible")
    return (k - 1) / (kp - 1)


def t_map_factors(kappa, kappa_prime, n: int | None = None) -> TMapFactors:
    k, kp = Fraction(kappa), Fraction(kappa_prime)
    denom = 1 - k * kp
    return TMapFactors(
        k,
        kp,
        t_map_factor(k, kp),
        None if denom == 0 else (1 - k) / denom,
        None if n is None else Fraction(n - 1, 2 * n - 1),
    )


def t_map(u: ComponentPolynomial, kappa, kappa_prime) -> ComponentPolynomial:
    m = t_map_factor(kappa, kappa_prime)
    return ComponentPolynomial([u[0] * m] + list(u)[1:])


# ---------------------------------------------------------------------------
# analytic families from half-dimension pieces


def _lift(u: ComponentPolynomial, n: int, offset: int) -> list[Poly]:
    """Components of a half-dimension function, in the variables ``x_offset ..``."""
    h = u.N
    out = []
    for p in u:
        terms = {}
        for e, c in p:
            ex = [0] * n
            ex[offset:offset + h] = e
            terms[tuple(ex)] = c
        out.append(Poly(n, terms))
    return out


# Which half-dimension variant each slot needs for U = f(q1) + conj(g(q2)) + (conj(h(q1)) + k(q2)) E
# to be analytic; confirmed by the exact residual gate in generate_analytic_family.
FAMILY_PAIRING = {"f": "analytic", "g": "analytic", "h": "antianalytic", "k": "antianalytic"}


def assemble_pair(f, g, h, k) -> ComponentPolynomial:
    n = 2 * f.N
    a = [x + y for x, y in zip(_lift(f, n, 0), _lift(conjugate_values(g), n, f.N))]
    b = [x + y for x, y in zip(_lift(conjugate_values(h), n, 0), _lift(k, n, f.N))]
    return ComponentPolynomial(a + b)


@dataclass
class Family:
    functions: list
    discarded: int


def _random_combination(basis, rng: random.Random, n: int) -> ComponentPolynomial:
    total = ComponentPolynomial.zero(n)
    for b in basis:
        c = rng.randint(-3, 3)
        if c:
            total = total + b * c
    return total


def generate_analytic_family(n: int, count: int, seed: int = 42, variant: str = "analytic",
                             degree: int = 3, pairing: dict | None = None) -> Family:
    """``count`` analytic functions in dimension ``n`` built from dimension ``n/2`` pieces.

    Each candidate is kept only if the Dirac residual vanishes identically.
    The antianalytic family is the analytic one composed with conjugation of
    the argument.
    """
    check_dimension(n, (4, 8))
    variant_signs(n, variant)
    pairing = pairing or FAMILY_PAIRING
    half = n // 2
    rng = random.Random(seed)
    pools = {v: solve_analytic_polynomials(half, degree, v) for v in ("analytic", "antianalytic")}
    d = dirac_matrix(n, variant)
    out, discarded = [], 0
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 10 * count + 10:
            raise RuntimeError(f"family generation stalled: {discarded} candidates discarded")
        parts = {slot: _random_combination(pools[pairing[slot]], rng, half) for slot in "fghk"}
        u = assemble_pair(parts["f"], parts["g"], parts["h"], parts["k"])
        if variant == "antianalytic":
            u = reflect(u)
        if d.apply(u).is_zero():
            out.append(u)
        else:
            discarded += 1
    return Family(out, discarded)


def random_polynomial(n: int, degree: int, rng: random.Random, density: float = 0.3) -> ComponentPolynomial:
    """Random rational polynomial map of total degree <= ``degree``."""
    comps = []
    for _ in range(n):
        terms = {}
        for k in range(degree + 1):
            for m in monomials(n, k):
                if rng.random() < density:
                    c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                    if c:
                        terms[m] = c
        comps.append(Poly(n, terms))
    return ComponentPolynomial(comps)
