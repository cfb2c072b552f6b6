import pytest

from cf3.census import (
    DEFAULT_NORM_CAP,
    census,
    census_records,
    classify_matrix,
    enumerate_norm,
    sphere_size,
    vectors_with_norm,
)
from cf3.intmat import IntMat, char_cubic, matrix_norm


def test_sphere_sizes_small():
    assert sphere_size(9, 0) == 1
    assert sphere_size(9, 1) == 18
    assert sphere_size(9, 6) == 53154


def test_enumeration_matches_closed_form_and_is_duplicate_free():
    for n in range(0, 5):
        vecs = list(vectors_with_norm(4, n))
        assert len(vecs) == sphere_size(4, n)
        assert len(set(vecs)) == len(vecs)
        assert all(sum(abs(x) for x in v) == n for v in vecs)
    vecs9 = list(vectors_with_norm(9, 4))
    assert len(vecs9) == sphere_size(9, 4)
    assert len(set(vecs9)) == len(vecs9)


def test_enumeration_order_is_canonical():
    # lexicographic with value order 0 < -1 < 1 < -2 < 2 within each entry
    vecs = list(vectors_with_norm(2, 2))
    assert vecs == [
        (0, -2), (0, 2),
        (-1, -1), (-1, 1),
        (1, -1), (1, 1),
        (-2, 0), (2, 0),
    ]


def test_enumerate_norm_yields_matrices_of_that_norm():
    for n in (0, 1, 3):
        for m in enumerate_norm(3, n):
            assert matrix_norm(m) == n
    assert len(list(enumerate_norm(3, 1))) == 18


def test_classify_examples():
    assert classify_matrix(IntMat.identity(3)) == "reducible"
    m031 = IntMat([[0, 1, 0], [0, 0, 1], [1, 3, 0]])
    assert classify_matrix(m031) == "H"
    # irreducible with one real and two complex eigenvalues
    m = IntMat([[0, 1, 0], [0, 0, 1], [2, 0, 0]])
    assert char_cubic(m).is_irreducible()
    assert char_cubic(m).discriminant() < 0
    assert classify_matrix(m) == "M"


def test_census_counts_norms_up_to_six():
    for n in range(0, 4):
        assert census(n).count_m == 0
    r4 = census(4)
    assert (r4.count_m, r4.count_h) == (240, 0)
    r5 = census(5)
    assert (r5.count_m, r5.count_h) == (1248, 48)
    r6 = census(6)
    assert (r6.count_m, r6.count_h) == (8112, 912)
    assert r6.total == 53154


def test_census_transpose_invariance():
    for n in (4, 5):
        cm = ch = 0
        for m, _tag in census_records(3, n):
            tag = classify_matrix(m.transpose())
            if tag != "reducible":
                cm += 1
                if tag == "H":
                    ch += 1
        r = census(n)
        assert (cm, ch) == (r.count_m, r.count_h)


def test_census_parallel_matches_serial():
    serial = census(5, workers=1)
    for workers in (2, 3):
        assert census(5, workers=workers) == serial


def test_census_cap():
    with pytest.raises(ValueError):
        census(DEFAULT_NORM_CAP + 1)
    # explicit cap raise is honored (tiny norm keeps this cheap)
    assert census(2, cap=99).count_m == 0


def test_census_dim2():
    r = census(3, dim=2)
    assert r.total == sphere_size(4, 3)
    assert r.count_m > 0
