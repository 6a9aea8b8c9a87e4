"""Every Cauchy-Riemann formulation as a function of the Jacobian.

All forms are linear, constant-coefficient and first order, so each one is a
map from the Jacobian ``J[mu][sigma] = d_sigma U^mu`` at a point to an
N-vector.  Working at the Jacobian level lets the same code serve the exact
path (polynomial Jacobians at rational points) and the float path (finite
differences), and lets symbols be extracted by feeding unit Jacobians.
"""
from __future__ import annotations

import operator
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from ..algebra import OCTONION_TRIPLES, AlgebraSpec, Element, epsilon_tensor, mul_coeffs, structure_tensor
from ..expr import ComponentPolynomial
from ..linalg import dense_rows, det, rank, solve_left
from .operators import check_dimension, variant_signs

_EPS = epsilon_tensor(8, OCTONION_TRIPLES)


# ---------------------------------------------------------------------------
# Jacobians


def jacobian(u: ComponentPolynomial, x: Element | Sequence) -> np.ndarray:
    """``J[mu][sigma] = d_sigma U^mu`` at ``x`` (object array, exact on rationals)."""
    pt = x.coeffs if isinstance(x, Element) else tuple(x)
    n = u.N
    if len(pt) != n:
        raise ValueError(f"point has {len(pt)} coordinates, function has N={n}")
    out = np.empty((n, n), dtype=object)
    for mu in range(n):
        for sg in range(n):
            out[mu, sg] = u[mu].diff(sg)(pt)
    return out


def jacobian_fd(func: Callable[[np.ndarray], np.ndarray], x: Sequence[float], h: float = 1e-5) -> np.ndarray:
    """Central-difference Jacobian of a float map ``R^N -> R^N``."""
    x = np.asarray(x, dtype=float)
    n = x.size
    out = np.empty((n, n))
    for sg in range(n):
        step = np.zeros(n)
        step[sg] = h
        out[:, sg] = (np.asarray(func(x + step), float) - np.asarray(func(x - step), float)) / (2 * h)
    return out


def linear_map_jacobian(matrix) -> np.ndarray:
    return np.asarray(matrix, dtype=object)


# ---------------------------------------------------------------------------
# real form and kappa family


def real_form(j, variant: str = "analytic", alg: AlgebraSpec | None = None) -> list:
    n = len(j)
    alg = alg or structure_tensor(n)
    s = variant_signs(n, variant)
    out = [0] * n
    for (nu, sg), terms in alg.products.items():
        v = j[sg][nu]
        if v == 0:
            continue
        for rho, c in terms:
            out[rho] = out[rho] + c * s[nu] * v
    return out


def kappa_form(j, kappa=None, alg: AlgebraSpec | None = None) -> list:
    """``C^sigma_{mu nu} d_sigma U^nu - kappa d_mu U^0``.

    With ``kappa=None`` the right-hand side is the contraction
    ``C^sigma_{nu sigma} d_mu U^nu``, valid for any unital structure tensor.
    """
    n = len(j)
    alg = alg or structure_tensor(n)
    c = alg.structure
    out = []
    for mu in range(n):
        lhs = sum(c[sg][mu][nu] * j[nu][sg] for sg in range(n) for nu in range(n) if c[sg][mu][nu])
        if kappa is None:
            rhs = sum(c[sg][nu][sg] * j[nu][mu] for nu in range(n) for sg in range(n) if c[sg][nu][sg])
        else:
            rhs = kappa * j[0][mu]
        out.append(lhs - rhs)
    return out


def jadczyk_form(j, alg: AlgebraSpec | None = None) -> list:
    """Trace route: ``{U'(e_mu e_nu)}^nu - {U'(e_mu) e_nu}^nu`` summed over ``nu``."""
    n = len(j)
    alg = alg or structure_tensor(n)
    basis = [[int(i == k) for i in range(n)] for k in range(n)]

    def deriv(h):
        return [sum(j[mu][sg] * h[sg] for sg in range(n) if h[sg]) for mu in range(n)]

    out = []
    for mu in range(n):
        first = sum(deriv(mul_coeffs(alg, basis[mu], basis[nu]))[nu] for nu in range(n))
        dmu = deriv(basis[mu])
        second = sum(mul_coeffs(alg, dmu, basis[nu])[nu] for nu in range(n))
        out.append(first - second)
    return out


# ---------------------------------------------------------------------------
# vector products and the (scalar, vector) form


def cross7(u: Sequence, v: Sequence, mul: Callable = operator.mul) -> list:
    """``(u x v)_j = sum_{k,i} eps_jki u_k v_i`` with the octonion epsilon.

    Length-3 inputs use the quaternionic sub-case (indices 1..3).
    """
    if len(u) != len(v) or len(u) not in (3, 7):
        raise ValueError(f"cross7 needs two vectors of length 3 or 7, got {len(u)} and {len(v)}")
    m = len(u)
    out = []
    for jj in range(1, m + 1):
        total = 0
        for k in range(1, m + 1):
            for i in range(1, m + 1):
                e = _EPS.get((jj, k, i))
                if e:
                    total = total + e * mul(u[k - 1], v[i - 1])
        out.append(total)
    return out


def circle_product(a: tuple, b: tuple, mul: Callable = operator.mul) -> tuple:
    """``(a0, a) o (b0, b) = (a0 b0 - a.b, a0 b + a b0 + a x b)``."""
    a0, av = a
    b0, bv = b
    if len(av) != len(bv) or len(av) not in (3, 7):
        raise ValueError("vector parts must have equal length 3 or 7")
    scalar = mul(a0, b0) - sum((mul(x, y) for x, y in zip(av, bv)), 0)
    cr = cross7(av, bv, mul)
    vec = [mul(a0, y) + mul(x, b0) + z for x, y, z in zip(av, bv, cr)]
    return scalar, vec


def vector_form(j, scalar_weight=1) -> tuple:
    """``(d0, grad) o (w U0, U)`` evaluated through the Jacobian.

    ``scalar_weight=1`` gives ``(d0 U0 - div U, d0 U + grad U0 + grad x U)``;
    ``scalar_weight=N-1`` gives the trace-form variant.
    """
    n = len(j)
    check_dimension(n, (4, 8))
    idx = tuple(range(1, n))

    def pair(sg, nu):
        v = j[nu][sg]
        return scalar_weight * v if nu == 0 else v

    return circle_product((0, idx), (0, idx), pair)


def vector_form_flat(j, scalar_weight=1) -> list:
    s, v = vector_form(j, scalar_weight)
    return [s] + list(v)


# ---------------------------------------------------------------------------
# block forms


class _GQ:
    """Minimal complex number over an exact or float field."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = re
        self.im = im

    def __add__(self, o):
        return _GQ(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return _GQ(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return _GQ(-self.re, -self.im)

    def __mul__(self, o):
        return _GQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self):
        return _GQ(self.re, -self.im)


_H = structure_tensor(4)


def _q_deriv(j, comp: int, sg: int, conj: bool = False) -> Element:
    v = [j[comp + k][sg] for k in range(4)]
    if conj:
        v = [v[0]] + [-t for t in v[1:]]
    return Element(_H, tuple(v))


def _unit(k: int, bar: bool) -> Element:
    v = [0] * 4
    v[k] = -1 if (bar and k) else 1
    return Element(_H, tuple(v))


def _dq_left(j, comp: int, coord: int, bar_units: bool, conj_f: bool = False) -> Element:
    """``sum_k u_k d_{coord+k} f`` with ``u_k = conj(e_k)`` if ``bar_units`` else ``e_k``."""
    total = Element(_H, (0, 0, 0, 0))
    for k in range(4):
        total = total + _unit(k, bar_units) * _q_deriv(j, comp, coord + k, conj_f)
    return total


def _dq_right(j, comp: int, coord: int, bar_units: bool, conj_f: bool = False) -> Element:
    """``f d^l``: ``sum_k (d_{coord+k} f) u_k`` (derivative acting from the right)."""
    total = Element(_H, (0, 0, 0, 0))
    for k in range(4):
        total = total + _q_deriv(j, comp, coord + k, conj_f) * _unit(k, bar_units)
    return total


def quaternionic_form(j, variant: str = "analytic") -> list:
    """Octonion residual through ``U = a + bE`` and quaternion products only.

    antianalytic:  d_q1 a + conj(b) d^l_{conj q2},   b d^l_q1 - d_{conj q2} conj(a)
    analytic:      d_{conj q1} a - conj(b) d^l_{conj q2},   b d^l_{conj q1} + d_{conj q2} conj(a)
    where ``d_q = sum conj(e_k) d_k`` and ``d_{conj q} = sum e_k d_k``.
    """
    check_dimension(len(j), (8,))
    if variant == "antianalytic":
        ra = _dq_left(j, 0, 0, True) + _dq_right(j, 4, 4, False, conj_f=True)
        rb = _dq_right(j, 4, 0, True) - _dq_left(j, 0, 4, False, conj_f=True)
    elif variant == "analytic":
        ra = _dq_left(j, 0, 0, False) - _dq_right(j, 4, 4, False, conj_f=True)
        rb = _dq_right(j, 4, 0, False) + _dq_left(j, 0, 4, False, conj_f=True)
    else:
        variant_signs(8, variant)
    return list(ra.coeffs) + list(rb.coeffs)


# complex layer: quaternion q = z1 + z2 j with z1 = q0 + i q1, z2 = q2 + i q3, and
# (z1 + z2 j)(w1 + w2 j) = (z1 w1 - z2 conj(w2)) + (z1 w2 + z2 conj(w1)) j


def _cop(coord: int, bar_units: bool):
    """Complex pair ``(w1, w2)`` of operators for ``d_q`` or ``d_{conj q}`` on four coordinates.

    Each operator is a tuple of four complex coefficients for ``d_coord .. d_coord+3``.
    """
    s = -1 if bar_units else 1
    w1 = (_GQ(1), _GQ(0, s), _GQ(0), _GQ(0))
    w2 = (_GQ(0), _GQ(0), _GQ(s), _GQ(0, s))
    return coord, w1, w2


def _cfun(j, comp: int, conj: bool = False):
    """Complex pair ``(F1, F2)`` of a quaternion-valued function; each maps sigma -> d_sigma F."""

    def f1(sg):
        return _GQ(j[comp][sg], -j[comp + 1][sg] if conj else j[comp + 1][sg])

    def f2(sg):
        v = _GQ(j[comp + 2][sg], j[comp + 3][sg])
        return -v if conj else v

    return f1, f2


def _apply(coord, w, f, conj_op=False, conj_f=False):
    total = _GQ(0)
    for k, c in enumerate(w):
        if conj_op:
            c = c.conj()
        v = f(coord + k)
        if conj_f:
            v = v.conj()
        total = total + c * v
    return total


def _c_left(op, fun):
    coord, w1, w2 = op
    f1, f2 = fun
    return (
        _apply(coord, w1, f1) - _apply(coord, w2, f2, conj_f=True),
        _apply(coord, w1, f2) + _apply(coord, w2, f1, conj_f=True),
    )


def _c_right(fun, op):
    coord, w1, w2 = op
    f1, f2 = fun
    return (
        _apply(coord, w1, f1) - _apply(coord, w2, f2, conj_op=True),
        _apply(coord, w2, f1) + _apply(coord, w1, f2, conj_op=True),
    )


def _cadd(a, b, sign=1):
    return tuple(x + y if sign > 0 else x - y for x, y in zip(a, b))


def _flatten(*pairs) -> list:
    out = []
    for p in pairs:
        for z in p:
            out.extend([z.re, z.im])
    return out


def complex_form(j, variant: str = "analytic") -> list:
    """Residual through complex components ``U = A1 + B1 j + (A2 + B2 j) E`` (N=8)
    or ``U = A + B j`` (N=4), using only complex products."""
    n = len(j)
    check_dimension(n, (4, 8))
    variant_signs(n, variant)
    anti = variant == "antianalytic"
    if n == 4:
        return _flatten(_c_left(_cop(0, anti), _cfun(j, 0)))
    a, a_bar = _cfun(j, 0), _cfun(j, 0, conj=True)
    b, b_bar = _cfun(j, 4), _cfun(j, 4, conj=True)
    if anti:
        ra = _cadd(_c_left(_cop(0, True), a), _c_right(b_bar, _cop(4, False)))
        rb = _cadd(_c_right(b, _cop(0, True)), _c_left(_cop(4, False), a_bar), -1)
    else:
        ra = _cadd(_c_left(_cop(0, False), a), _c_right(b_bar, _cop(4, False)), -1)
        rb = _cadd(_c_right(b, _cop(0, False)), _c_left(_cop(4, False), a_bar))
    return _flatten(ra, rb)


# ---------------------------------------------------------------------------
# symbols and equivalence

FORMS = ("real", "quat", "complex", "vector", "jadczyk", "kappa")


def form_function(form: str, n: int, variant: str = "analytic", kappa=None) -> Callable:
    """Jacobian -> residual-vector function for a named form."""
    if form == "real":
        check_dimension(n)
        return lambda j: real_form(j, variant)
    if form == "quat":
        check_dimension(n, (8,))
        return lambda j: quaternionic_form(j, variant)
    if form == "complex":
        check_dimension(n, (4, 8))
        return lambda j: complex_form(j, variant)
    if form == "vector":
        check_dimension(n, (4, 8))
        return lambda j: vector_form_flat(j)
    if form == "jadczyk":
        check_dimension(n)
        return lambda j: jadczyk_form(j)
    if form == "kappa":
        check_dimension(n)
        if kappa is None:
            raise ValueError("form 'kappa' needs a kappa value")
        return lambda j: kappa_form(j, kappa)
    raise ValueError(f"unknown form {form!r}; expected one of {FORMS}")


def form_symbol(fn: Callable, n: int) -> list[list[Fraction]]:
    """Matrix S (N x N^2) with ``fn(J) = S . vec(J)``; column ``nu*N + sigma`` holds ``d_sigma U^nu``."""
    cols = []
    for nu in range(n):
        for sg in range(n):
            j = np.zeros((n, n), dtype=object)
            j[:, :] = Fraction(0)
            j[nu, sg] = Fraction(1)
            cols.append([Fraction(v) for v in fn(j)])
    return [[cols[c][r] for c in range(n * n)] for r in range(n)]


def same_zero_set(sym_a, sym_b) -> bool:
    """Kernels coincide iff both row spaces equal their sum."""
    ra, rb = rank(dense_rows(sym_a)), rank(dense_rows(sym_b))
    return ra == rb == rank(dense_rows(list(sym_a) + list(sym_b)))


@lru_cache(maxsize=None)
def block_reshuffle(form: str, n: int, variant: str = "analytic") -> tuple:
    """Invertible constant matrix R with ``block_form(J) = R . real_form(J)``.

    Derived once by comparing symbols; raises if no invertible R exists.
    """
    sym_real = form_symbol(form_function("real", n, variant), n)
    sym_block = form_symbol(form_function(form, n, variant), n)
    r = solve_left(sym_real, sym_block)
    if r is None or det(r) == 0:
        raise RuntimeError(f"{form} form is not an invertible reshuffling of the real form (N={n}, {variant})")
    return tuple(tuple(row) for row in r)
