import random
from math import comb
from fractions import Fraction

import pytest

from cayleycr.cr.kappa import (
    FAMILY_PAIRING,
    apply_symbol,
    assemble_pair,
    generate_analytic_family,
    random_polynomial,
    same_solution_space,
    solve_analytic_polynomials,
    solve_kappa_polynomials,
    symbol_of,
    t_map,
    t_map_factor,
    t_map_factors,
)
from cayleycr.cr.operators import dirac_matrix
from cayleycr.cr.residuals import laplacian
from cayleycr.expr import ComponentPolynomial, lower
from cayleycr.linalg import rank
from cayleycr.poly import Poly


def _vec(u):
    return {(mu, e): c for mu, p in enumerate(u) for e, c in p}


def _span_contains(basis, u):
    keys = {}
    rows = []
    for b in basis + [u]:
        rows.append({keys.setdefault(k, len(keys)): v for k, v in _vec(b).items()})
    return rank(rows[:-1]) == rank(rows)


def test_complex_degree_one():
    basis = solve_kappa_polynomials(2, 2, 1)
    assert len(basis) == 4
    assert _span_contains(basis, lower("x", 2))
    assert _span_contains(basis, lower("e1", 2))
    assert not _span_contains(basis, lower("conj(x)", 2))


def test_identity_solves_trace_form():
    assert _span_contains(solve_kappa_polynomials(8, 8, 1), lower("x", 8))
    assert apply_symbol(symbol_of("kappa", 8, kappa=8), lower("x", 8)).is_zero()


@pytest.mark.parametrize("n,kappa", [(2, 2), (4, 2), (4, 4), (8, 2), (8, 8), (4, Fraction(5, 2))])
def test_basis_functions_are_solutions(n, kappa):
    sym = symbol_of("kappa", n, kappa=kappa)
    for u in solve_kappa_polynomials(n, kappa, 2):
        assert apply_symbol(sym, u).is_zero()


def test_solution_dimensions():
    # D composed with its conjugate is the Laplacian, which is onto in every degree, so
    # D is onto too and degree k contributes N*C(k+N-2, N-2); for N=8 up to degree 3
    # that is 8 + 56 + 224 + 672
    assert [len(solve_kappa_polynomials(2, 2, d)) for d in range(4)] == [2, 4, 6, 8]
    assert len(solve_kappa_polynomials(4, 2, 1)) == 4 + 12
    assert len(solve_kappa_polynomials(8, 2, 3)) == 960
    assert sum(8 * comb(k + 6, 6) for k in range(4)) == 960


def test_basis_order_is_deterministic():
    a = solve_kappa_polynomials(4, 2, 2)
    from cayleycr.cr.kappa import _solve_cached

    _solve_cached.cache_clear()
    assert solve_kappa_polynomials(4, 2, 2) == a


def test_degree_limit():
    with pytest.raises(ValueError):
        solve_kappa_polynomials(2, 2, 5)


@pytest.mark.parametrize("n", [2, 4, 8])
def test_harmonicity(n):
    for kappa in {2, n}:
        for u in solve_kappa_polynomials(n, kappa, 3):
            assert laplacian(u).is_zero()


@pytest.mark.parametrize("n,member", [(2, True), (4, False), (8, False)])
def test_square_is_analytic_only_for_complex(n, member):
    assert apply_symbol(symbol_of("kappa", n, kappa=2), lower("x^2", n)).is_zero() is member


@pytest.mark.parametrize("n", [4, 8])
def test_form_solution_spaces_coincide(n):
    real = symbol_of("real", n)
    others = [symbol_of("vector", n), symbol_of("complex", n), symbol_of("kappa", n, kappa=2)]
    if n == 8:
        others.append(symbol_of("quat", n))
    for s in others:
        assert same_solution_space(real, s, n, 3 if n == 4 else 2)


def test_t_map_factor():
    assert t_map_factor(4, 4) == 1
    assert t_map_factor(4, 2) == 3
    assert t_map_factor(3, 5) == Fraction(1, 2)
    assert t_map_factor(1, 1) == 1
    with pytest.raises(ValueError):
        t_map_factor(4, 1)
    with pytest.raises(ValueError):
        t_map_factor(1, 2)


def test_t_map_diagnostics():
    f = t_map_factors(4, 2, n=4)
    assert (f.derived, f.product_form, f.dimension_form) == (3, Fraction(3, 7), Fraction(3, 7))
    assert t_map_factors(3, 5).product_form == Fraction(1, 7)
    assert len(f.lines()) == 4


@pytest.mark.parametrize("n", [2, 4, 8])
@pytest.mark.parametrize("pair", ["n2", "2n", "35"])
def test_t_map_carries_solutions(n, pair):
    k, kp = {"n2": (n, 2), "2n": (2, n), "35": (3, 5)}[pair]
    target = symbol_of("kappa", n, kappa=kp)
    for u in solve_kappa_polynomials(n, k, 2):
        assert apply_symbol(target, t_map(u, k, kp)).is_zero()


def test_alternative_factor_does_not_carry_solutions():
    target = symbol_of("kappa", 4, kappa=2)
    bad = [u for u in solve_kappa_polynomials(4, 4, 1)
           if not apply_symbol(target, ComponentPolynomial([u[0] * Fraction(3, 7)] + list(u)[1:])).is_zero()]
    assert bad


@pytest.mark.parametrize("n", [4, 8])
@pytest.mark.parametrize("variant", ["analytic", "antianalytic"])
def test_family(n, variant):
    fam = generate_analytic_family(n, 4, seed=7, variant=variant)
    assert len(fam.functions) == 4 and fam.discarded == 0
    d = dirac_matrix(n, variant)
    for u in fam.functions:
        assert d.apply(u).is_zero()
        assert laplacian(u).is_zero()
    assert any(u.degree() >= 2 for u in fam.functions)


def test_family_reproducible_and_empty():
    assert generate_analytic_family(4, 0).functions == []
    a = generate_analytic_family(8, 2, seed=3).functions
    assert a == generate_analytic_family(8, 2, seed=3).functions


def test_wrong_pairing_is_discarded():
    pairing = dict(FAMILY_PAIRING, k="analytic")
    with pytest.raises(RuntimeError, match="discarded"):
        generate_analytic_family(4, 1, pairing=pairing, degree=2)


def test_family_rejects_dimension():
    with pytest.raises(ValueError):
        generate_analytic_family(2, 1)


def test_complex_pairing_gives_fueter_functions():
    z = lower("x", 2)
    zbar = lower("conj(x)", 2)
    u = assemble_pair(z * 1, lower("x^2", 2), lower("conj(x)^2", 2), zbar)
    assert dirac_matrix(4).apply(u).is_zero()


def test_random_polynomial_shape():
    u = random_polynomial(4, 2, random.Random(1))
    assert u.N == 4 and u.degree() <= 2
