import time
from fractions import Fraction

import pytest

from cayleycr.algebra import AlgebraError, AlgebraSpec, figure_rule_table, structure_tensor, verify_algebra_identities
from cayleycr.cayley_dickson import (
    SignedPermutation,
    double,
    double_conjugate,
    doubling_chain,
    find_isomorphism,
    is_homomorphism,
    is_unital,
    iter_isomorphisms,
)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_double_matches_standard_table(n):
    d = double(structure_tensor(n), -1)
    phi = find_isomorphism(d, structure_tensor(2 * n))
    assert phi is not None
    assert is_homomorphism(phi, d, structure_tensor(2 * n))
    assert "isomorphism to standard" in d.convention


def test_doubling_reproduces_the_tables_verbatim():
    # with this conjugate placement the identity map already works
    for alg in doubling_chain():
        assert alg.structure == structure_tensor(alg.dimension).structure


def test_doubled_algebras_compose_and_are_unital():
    for alg in doubling_chain()[1:]:
        assert is_unital(alg)
        assert verify_algebra_identities(alg, samples=25).passed


def test_split_doubling_is_unital_but_indefinite():
    split = double(structure_tensor(2), 1)
    assert is_unital(split)
    assert split.c(0, 2, 2) == 1  # (0,1)^2 = +e0, so the norm form is indefinite


def test_double_errors():
    with pytest.raises(AlgebraError):
        double(structure_tensor(2), 0)
    with pytest.raises(AlgebraError):
        double(structure_tensor(8), -1)
    c = [[[0, 0], [0, 0]], [[0, 0], [0, 1]]]
    with pytest.raises(AlgebraError, match="unital"):
        double(AlgebraSpec(2, tuple(tuple(map(tuple, p)) for p in c)), -1)


def test_double_conjugate_on_basis():
    o = structure_tensor(8)
    for k in range(8):
        got = double_conjugate(o.basis(k))
        want = o.basis(k) if k == 0 else -o.basis(k)
        assert got == want


def test_identity_and_complex_conjugation():
    c = structure_tensor(2)
    assert find_isomorphism(c, c) == SignedPermutation.identity(2)
    autos = list(iter_isomorphisms(c, c))
    assert SignedPermutation((0, 1), (1, -1)) in autos


def test_figure_table_isomorphism():
    phi = find_isomorphism(figure_rule_table(), structure_tensor(8))
    assert phi == SignedPermutation(tuple(range(8)), (1, 1, 1, -1, 1, 1, -1, -1))
    assert is_homomorphism(phi, figure_rule_table(), structure_tensor(8))


def test_octonion_automorphism_count():
    o = structure_tensor(8)
    t = time.perf_counter()
    autos = list(iter_isomorphisms(o, o))
    assert time.perf_counter() - t < 10
    # G2 meets the signed permutations in a group of order 8 * 168
    assert len(autos) == 1344
    assert all(is_homomorphism(p, o, o) for p in autos[:50])


def test_search_order_is_lexicographic():
    o = structure_tensor(8)
    autos = list(iter_isomorphisms(o, o))
    keys = [(p.perm, tuple(-s for s in p.signs)) for p in autos]
    assert keys == sorted(keys)


def test_dimension_mismatch():
    with pytest.raises(AlgebraError):
        find_isomorphism(structure_tensor(4), structure_tensor(8))


def test_signed_permutation_validation():
    with pytest.raises(ValueError):
        SignedPermutation((1, 0), (1, 1))
    with pytest.raises(ValueError):
        SignedPermutation((0, 1), (-1, 1))
    phi = SignedPermutation((0, 2, 1), (1, -1, 1))
    assert str(phi) == "e0->+e0, e1->-e2, e2->+e1"
    assert phi.to_dict() == {"perm": [0, 2, 1], "signs": [1, -1, 1]}


def test_non_isomorphic_tables():
    # a commutative 4-dimensional algebra cannot match the quaternions
    c = [[[Fraction(0)] * 4 for _ in range(4)] for _ in range(4)]
    for m in range(4):
        c[m][0][m] = c[m][m][0] = 1
    for i in range(1, 4):
        c[0][i][i] = -1
    alg = AlgebraSpec(4, tuple(tuple(map(tuple, p)) for p in c))
    assert find_isomorphism(alg, structure_tensor(4)) is None
