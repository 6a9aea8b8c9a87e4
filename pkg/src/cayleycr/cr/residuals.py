"""Pointwise residuals, residual reports and trace-based checks."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..algebra import AlgebraSpec, Element, mul_coeffs, structure_tensor
from ..expr import ComponentPolynomial
from ..poly import Poly
from .forms import (
    block_reshuffle,
    form_function,
    jacobian,
    jacobian_fd,
    kappa_form,
    jadczyk_form,
    real_form,
    vector_form,
)
from .operators import check_dimension, dirac_matrix


def _point(u: ComponentPolynomial, x) -> tuple:
    pt = x.coeffs if isinstance(x, Element) else tuple(x)
    if len(pt) != u.N:
        raise ValueError(f"point has {len(pt)} coordinates, function has N={u.N}")
    return pt


def residual_real(u: ComponentPolynomial, x, variant: str = "analytic") -> list:
    """Dirac-operator residual ``D U`` at ``x``; zero iff U satisfies the C-R system there."""
    check_dimension(u.N)
    return real_form(jacobian(u, _point(u, x)), variant)


def residual_blocks(u: ComponentPolynomial, x, form: str, variant: str = "analytic") -> list:
    """Residual through the quaternion (``form='quaternionic'``) or complex block decomposition."""
    key = {"quaternionic": "quat", "quat": "quat", "complex": "complex"}.get(form)
    if key is None:
        raise ValueError(f"unknown block form {form!r}")
    fn = form_function(key, u.N, variant)
    block_reshuffle(key, u.N, variant)  # asserts the form is an invertible reshuffle of the real one
    return fn(jacobian(u, _point(u, x)))


def residual_vector_form(u: ComponentPolynomial, x) -> tuple:
    check_dimension(u.N, (4, 8))
    return vector_form(jacobian(u, _point(u, x)))


def residual_kappa(u: ComponentPolynomial, x, kappa=None) -> list:
    """``C^sigma_{mu nu} d_sigma U^nu - kappa d_mu U^0``; ``kappa=None`` uses the trace contraction."""
    check_dimension(u.N)
    return kappa_form(jacobian(u, _point(u, x)), kappa)


def residual_jadczyk(u: ComponentPolynomial, x) -> list:
    check_dimension(u.N)
    return jadczyk_form(jacobian(u, _point(u, x)))


def laplacian(u: ComponentPolynomial) -> ComponentPolynomial:
    n = u.N
    return ComponentPolynomial([sum((p.diff(m).diff(m) for m in range(n)), Poly(n)) for p in u])


def laplacian_residual(u: ComponentPolynomial, x) -> list:
    return list(laplacian(u)(_point(u, x)))


# ---------------------------------------------------------------------------
# sampling and reports


def sample_points(n: int, count: int = 20, seed: int = 42, bound: int = 3) -> list[tuple[Fraction, ...]]:
    """Integer points in ``[-bound, bound]^n`` from a seeded generator."""
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n)) for _ in range(count)]


def unit_points(n: int, count: int = 50, seed: int = 42) -> np.ndarray:
    """Float points with coordinates uniform in ``[-1, 1]``."""
    return np.random.default_rng(seed).uniform(-1.0, 1.0, size=(count, n))


def decimal_string(v, digits: int = 20) -> str:
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        with localcontext() as ctx:
            ctx.prec = digits
            return format((Decimal(v.numerator) / Decimal(v.denominator)).normalize(), "f")
    return format(Decimal(repr(float(v))).normalize(), "f")


FORM_IDS = {
    "real": "real",
    "quat": "quaternionic-block",
    "complex": "complex-block",
    "vector": "vector",
    "jadczyk": "jadczyk",
}


@dataclass
class ResidualReport:
    form: str
    kappa: Fraction | None
    variant: str
    points: list
    point_max: list
    point_l2: list
    tolerance: float
    seed: int
    arithmetic: str = "exact"
    residuals: list = field(default_factory=list, repr=False)

    @property
    def max_residual(self):
        return max(self.point_max, default=Fraction(0))

    @property
    def verdict(self) -> str:
        return "analytic" if all(m <= self.tolerance for m in self.point_max) else "not-analytic"

    @property
    def analytic(self) -> bool:
        return self.verdict == "analytic"

    def to_json(self) -> dict:
        return {
            "form": self.form,
            "kappa": None if self.kappa is None else str(self.kappa),
            "variant": self.variant,
            "field": self.arithmetic,
            "points": [[str(c) for c in p] for p in self.points],
            "max_residual": decimal_string(self.max_residual),
            "verdict": self.verdict,
            "tolerance": decimal_string(self.tolerance),
            "seed": self.seed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def check_function(
    u: ComponentPolynomial,
    form: str = "real",
    kappa=None,
    variant: str = "analytic",
    samples: int = 20,
    seed: int = 42,
    tolerance: float = 1e-9,
) -> ResidualReport:
    """Exact residuals of one C-R formulation at seeded integer sample points."""
    n = u.N
    if form == "kappa":
        if kappa is None:
            raise ValueError("form 'kappa' needs a kappa value")
        kappa = Fraction(kappa)
        form_id = f"kappa({kappa})"
    else:
        kappa = None
        form_id = FORM_IDS.get(form)
        if form_id is None:
            raise ValueError(f"unknown form {form!r}")
    fn = form_function(form, n, variant, kappa)
    if form in ("quat", "complex"):
        block_reshuffle(form, n, variant)
    points = sample_points(n, samples, seed)
    point_max, point_l2, residuals = [], [], []
    for p in points:
        r = fn(jacobian(u, p))
        residuals.append(r)
        point_max.append(max((abs(v) for v in r), default=Fraction(0)))
        point_l2.append(math.sqrt(sum(float(v) ** 2 for v in r)))
    return ResidualReport(
        form_id,
        kappa,
        variant if form in ("real", "quat", "complex") else "analytic",
        points,
        point_max,
        point_l2,
        tolerance,
        seed,
        "exact",
        residuals,
    )


def residual_fd(
    func: Callable[[np.ndarray], np.ndarray],
    x: Sequence[float],
    form: str = "real",
    variant: str = "analytic",
    kappa=None,
    h: float = 1e-5,
) -> np.ndarray:
    """Float residual from a central-difference Jacobian of ``func``."""
    j = jacobian_fd(func, x, h)
    fn = form_function(form, len(x), variant, kappa)
    return np.asarray(fn(j), dtype=float)


def float_function(u: ComponentPolynomial) -> Callable[[np.ndarray], np.ndarray]:
    """Float evaluator; coefficients are converted once."""
    comps = [[(np.array(e), float(c)) for e, c in p] for p in u]

    def f(x):
        x = np.asarray(x, float)
        return np.array([sum(c * np.prod(x**e) for e, c in terms) for terms in comps])

    return f


# ---------------------------------------------------------------------------
# trace identities


def left_multiplication_matrix(a: Element) -> list[list]:
    """Matrix of ``u -> a u``: column nu is ``a e_nu``."""
    n = a.algebra.dimension
    cols = [mul_coeffs(a.algebra, a.coeffs, [int(i == nu) for i in range(n)]) for nu in range(n)]
    return [[cols[nu][mu] for nu in range(n)] for mu in range(n)]


def _apply_matrix(m, v):
    return [sum(m[r][c] * v[c] for c in range(len(v)) if v[c] != 0) for r in range(len(m))]


def trace_commutation_check(l, alg: AlgebraSpec) -> bool:
    """``Tr L(e_mu e_nu) == Tr (L e_mu) e_nu`` on every basis pair; by bilinearity this
    is the full ``for all u, q`` statement."""
    n = alg.dimension
    m = [list(row) for row in l]
    if len(m) != n or any(len(row) != n for row in m):
        raise ValueError(f"linear map must be {n}x{n}")
    basis = [[int(i == k) for i in range(n)] for k in range(n)]
    for mu in range(n):
        lm = _apply_matrix(m, basis[mu])
        for nu in range(n):
            lhs = _apply_matrix(m, mul_coeffs(alg, basis[mu], basis[nu]))[0]
            rhs = mul_coeffs(alg, lm, basis[nu])[0]
            if lhs != rhs:  # traces are N times the real parts
                return False
    return True


@dataclass
class SurveyEntry:
    signs: tuple
    passes: bool
    is_left_multiplication: bool


def sign_diagonal_survey(alg: AlgebraSpec) -> list[SurveyEntry]:
    """Trace-commutation test over every diagonal map with entries +-1."""
    n = alg.dimension
    out = []
    for bits in range(2**n):
        signs = tuple(-1 if bits >> k & 1 else 1 for k in range(n))
        m = [[signs[r] if r == c else 0 for c in range(n)] for r in range(n)]
        a = Element(alg, tuple(Fraction(row[0]) for row in m))
        is_left = left_multiplication_matrix(a) == m
        out.append(SurveyEntry(signs, trace_commutation_check(m, alg), is_left))
    return out


def trace_derivative_check(u: ComponentPolynomial, variant: str = "antianalytic") -> bool:
    """``Tr D(U q) == Tr (D U) q`` for every basis ``q``, as polynomial identities."""
    n = u.N
    alg = structure_tensor(n)
    d = dirac_matrix(n, variant)
    du = d.apply(u)
    for k in range(n):
        q = [int(i == k) for i in range(n)]
        uq = ComponentPolynomial([p if isinstance(p, Poly) else Poly.const(n, p)
                                  for p in mul_coeffs(alg, list(u), q)])
        lhs = d.apply(uq)[0]
        rhs = mul_coeffs(alg, list(du), q)[0]
        if not isinstance(rhs, Poly):
            rhs = Poly.const(n, rhs)
        if lhs != rhs:
            return False
    return True
