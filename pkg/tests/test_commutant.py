import random
from fractions import Fraction

import pytest

from cf3.commutant import (
    CommutantError,
    basis_from_pair,
    commutant_basis,
    commutant_lattice,
    express_in_powers,
    normalize_basis,
    power_basis_index,
)
from cf3.intmat import IntMat, is_irreducible, matrix_norm
from cf3.zlinalg import hnf_basis

GOLDEN = IntMat([[0, 1, 0], [0, 0, 1], [1, 2, -1]])
A42 = IntMat([[1, 2, 0], [0, 1, 2], [-7, 0, 29]])
E3 = IntMat.identity(3)


def b_paper():
    # (A^2 - 30 A + 29 E) / 2, which is integral for the counterexample
    num = A42 @ A42 - 30 * A42 + 29 * E3
    assert all(x % 2 == 0 for x in num.flat())
    return IntMat([[x // 2 for x in row] for row in num.rows])


def lattice_vectors(lattice):
    return [list(m.flat()) for m in lattice]


def test_golden_lattice_is_power_basis():
    lat = commutant_lattice(GOLDEN)
    assert len(lat) == 3
    assert power_basis_index(GOLDEN, lat) == 1
    nb = commutant_basis(GOLDEN)
    assert nb.a == GOLDEN
    assert nb.b == GOLDEN @ GOLDEN
    assert (nb.alpha, nb.beta, nb.gamma) == (1, 0, 0)


def test_counterexample_lattice_contains_paper_b():
    lat = commutant_lattice(A42)
    assert len(lat) == 3
    vecs = lattice_vectors(lat)
    from cf3.zlinalg import coords_in_basis
    coords = coords_in_basis(vecs, list(b_paper().flat()))
    assert coords is not None
    assert all(f.denominator == 1 for f in coords)


def test_counterexample_power_coefficients():
    alpha, beta, gamma = express_in_powers(A42, b_paper())
    assert (alpha, beta, gamma) == (Fraction(1, 2), Fraction(-15), Fraction(29, 2))


def test_express_in_powers_trivials():
    assert express_in_powers(A42, A42) == (0, 1, 0)
    assert express_in_powers(A42, E3) == (0, 0, 1)
    with pytest.raises(CommutantError):
        express_in_powers(A42, IntMat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))


def test_reducible_is_rejected():
    with pytest.raises(CommutantError):
        commutant_lattice(E3)


def random_irreducible(rng, max_norm=8):
    while True:
        m = IntMat([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        if matrix_norm(m) <= max_norm and is_irreducible(m):
            return m


def test_commutant_property_random():
    rng = random.Random(8)
    seen = 0
    indexes = set()
    while seen < 200:
        c = random_irreducible(rng)
        seen += 1
        lat = commutant_lattice(c)
        assert len(lat) == 3
        for x in lat:
            assert x @ c == c @ x
        nb = normalize_basis(lat, c)
        assert nb.members()[0] == E3
        for x in (nb.a, nb.b):
            assert x @ c == c @ x
        # round trip of the power expression is exact
        expected = tuple(tuple(Fraction(x) for x in row) for row in nb.b.rows)
        assert nb.reconstruct_b() == expected
        indexes.add(power_basis_index(c, lat))
    assert 1 in indexes
    assert all(i >= 1 for i in indexes)
    # the power basis is not always the whole lattice
    assert any(i > 1 for i in indexes)


def test_normalize_is_basis_independent():
    rng = random.Random(9)
    for _ in range(40):
        c = random_irreducible(rng)
        lat = commutant_lattice(c)
        nb = normalize_basis(lat, c)
        # re-mix the raw basis unimodularly and re-normalize
        e, f, g = lat
        remix = [f, e + 2 * g, g]
        assert hnf_basis(lattice_vectors(remix)) == hnf_basis(lattice_vectors(lat))
        nb2 = normalize_basis(remix, c)
        assert (nb2.a, nb2.b) == (nb.a, nb.b)
        assert (nb2.alpha, nb2.beta, nb2.gamma) == (nb.alpha, nb.beta, nb.gamma)


def test_normalize_span_equals_input_span():
    rng = random.Random(10)
    for _ in range(40):
        c = random_irreducible(rng)
        lat = commutant_lattice(c)
        nb = normalize_basis(lat, c)
        assert hnf_basis(lattice_vectors(lat)) == hnf_basis(lattice_vectors(list(nb.members())))


def test_normalize_accepts_redundant_first_vector():
    # raw basis whose first vector is 2E + C still normalizes to contain E
    lat = commutant_lattice(GOLDEN)
    raw = [2 * E3 + GOLDEN, E3 + GOLDEN, GOLDEN @ GOLDEN]
    assert hnf_basis(lattice_vectors(raw)) == hnf_basis(lattice_vectors(lat))
    nb = normalize_basis(raw, GOLDEN)
    assert nb.members()[0] == E3
    assert (nb.a, nb.b) == (GOLDEN, GOLDEN @ GOLDEN)


def test_basis_from_pair_checks_commutation():
    with pytest.raises(CommutantError):
        basis_from_pair(A42, GOLDEN, E3)
    nb = basis_from_pair(A42, A42, b_paper())
    assert (nb.alpha, nb.beta, nb.gamma) == (Fraction(1, 2), Fraction(-15), Fraction(29, 2))
