"""Frobenius type decisions, both dimensions, and fraction classification."""

import random

import pytest

from cf3.census import matrices_in_class
from cf3.commutant import commutant_basis
from cf3.frobenius import (FrobeniusParams, REFERENCE_PARAMS, classify_fraction,
                           classification_report, commuting_frobenius_params,
                           conjugate_commuting, conjugator_search, decide_thm2,
                           decide_thm3, frobenius_matrix, hunt, oracle_2x2,
                           sl2_ball, theorem1_sweep, _commutant_fiber)
from cf3.intmat import (CharCubic, CharQuad, IntMat, adjugate, char_cubic,
                        char_quad, is_irreducible)

A42 = IntMat([[1, 2, 0], [0, 1, 2], [-7, 0, 29]])
GOLDEN = IntMat([[0, 1, 0], [0, 0, 1], [1, 2, -1]])


def test_frobenius_matrix_layout_and_char():
    assert frobenius_matrix((-1, 2, 1)) == GOLDEN
    assert frobenius_matrix((5, 7)) == IntMat([[0, 1], [7, 5]])
    rng = random.Random(3)
    for _ in range(50):
        a1, a2, a3 = (rng.randint(-6, 6) for _ in range(3))
        assert char_cubic(frobenius_matrix((a1, a2, a3))) == CharCubic(a1, -a2, a3)
        assert char_quad(frobenius_matrix((a1, a2))) == CharQuad(a1, -a2)
    with pytest.raises(ValueError):
        frobenius_matrix((1,))


def test_commuting_frobenius_params():
    m = frobenius_matrix((4, -3))
    assert commuting_frobenius_params(m).values == (4, -3)
    assert commuting_frobenius_params(IntMat([[1, 2], [2, 3]])).values == (1, 1)
    assert commuting_frobenius_params(IntMat([[0, 2], [1, 0]])) is None


def test_decide_thm2_examples():
    assert decide_thm2(IntMat([[0, 1], [1, 1]])).status == "frobenius"
    v = decide_thm2(IntMat([[0, 2], [1, 0]]))
    assert v.status == "frobenius"
    assert v.conjugator.det() == 1
    assert decide_thm2(IntMat([[0, 3], [5, 0]])).status == "non_frobenius"
    with pytest.raises(ValueError):
        decide_thm2(IntMat([[1, 0], [0, 2]]))
    with pytest.raises(ValueError):
        decide_thm2(GOLDEN)


def test_thm2_is_conclusive_and_oracle_consistent():
    seen = {"frobenius": 0, "non_frobenius": 0}
    for n in range(2, 7):
        for m in matrices_in_class(2, n, ("M", "H")):
            verdict = decide_thm2(m)
            assert verdict.status in seen
            seen[verdict.status] += 1
            found = oracle_2x2(m, 2)
            if found is not None:
                assert verdict.status == "frobenius"
            if verdict.status == "frobenius":
                # the constructed conjugator was verified inside decide_thm2
                assert verdict.conjugator is not None
    assert seen["frobenius"] > 0
    assert seen["non_frobenius"] == 28


def test_sl2_ball_properties():
    ball = sl2_ball(1)
    assert all(x.det() == 1 for x in ball)
    assert IntMat.identity(2) in ball
    assert IntMat([[0, -1], [1, 0]]) in ball
    assert IntMat([[1, 1], [0, 1]]) in ball
    assert len(set(ball)) == len(ball)
    assert len(sl2_ball(2)) > len(ball)


def test_decide_thm3_golden_and_counterexample():
    assert decide_thm3(GOLDEN).status == "frobenius"
    v = decide_thm3(A42)
    assert v.status == "non_frobenius"
    assert v.solvability.certificate.kind == "modulus"
    assert v.solvability.certificate.modulus == 7
    assert v.solvability.certificate.residues == (0, 2, 5)


def test_decide_thm3_on_random_frobenius_matrices():
    rng = random.Random(5)
    done = 0
    while done < 25:
        params = tuple(rng.randint(-4, 4) for _ in range(3))
        m = frobenius_matrix(params)
        if not is_irreducible(m):
            continue
        assert decide_thm3(m).status == "frobenius"
        done += 1


def test_commutant_fiber_contains_the_matrix_itself():
    basis = commutant_basis(GOLDEN)
    fiber = _commutant_fiber(GOLDEN, basis, char_cubic(GOLDEN))
    assert GOLDEN in fiber
    assert 1 <= len(fiber) <= 3
    for y in fiber:
        assert char_cubic(y) == char_cubic(GOLDEN)
        assert y @ GOLDEN == GOLDEN @ y


def test_conjugate_commuting_statuses():
    status, x = conjugate_commuting(GOLDEN, GOLDEN)
    assert status == "conjugate"
    # distinct fields: no commutant element of the golden matrix has the
    # other reference polynomial
    other = frobenius_matrix((0, 3, 1))
    assert conjugate_commuting(GOLDEN, other)[0] == "no_fiber"


def test_classify_reference_matrices():
    for label, params in REFERENCE_PARAMS:
        assert classify_fraction(params.matrix()) == label


def test_classify_counterexample_is_other():
    assert classify_fraction(A42) == "other"


def test_classify_is_conjugation_invariant():
    shear = IntMat([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    rot = IntMat([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    for x in (shear, rot, shear @ rot):
        assert x.det() == 1
        conj = x @ GOLDEN @ adjugate(x)
        assert classify_fraction(conj) == "golden_ratio"
    m031 = frobenius_matrix((0, 3, 1))
    conj = shear @ m031 @ adjugate(shear)
    assert classify_fraction(conj) == "M_0_3_1"


def test_classification_report_norm_five():
    report = classification_report(5)
    assert report["matrices"] == 48
    assert report["golden_ratio"] == 48
    assert report["M_-1_3_1"] == report["M_0_3_1"] == 0
    assert report["other"] == report["unresolved"] == 0


def test_theorem1_sweep_small():
    report = theorem1_sweep(norm_cap=4)
    assert report[3] == {"matrices": 0, "frobenius": 0, "undecided": []}
    assert report[4]["matrices"] == 240
    assert report[4]["frobenius"] == 240
    assert report[4]["undecided"] == []


def test_conjugator_search_identity_first():
    assert conjugator_search(GOLDEN, GOLDEN) == IntMat.identity(3)


def test_conjugator_search_finds_small_conjugator():
    x0 = IntMat([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    c = x0 @ GOLDEN @ adjugate(x0)
    found = conjugator_search(c, GOLDEN, bound=1)
    assert found is not None
    w = found @ c @ adjugate(found)
    assert w @ GOLDEN == GOLDEN @ w


def test_hunt_smoke_and_determinism():
    first = hunt(5, 12, seed=9)
    again = hunt(5, 12, seed=9)
    assert first == again
    assert len(first) == 12
    assert all(rec["status"] == "frobenius" for rec in first)
    parallel = hunt(5, 12, seed=9, workers=2)
    assert parallel == first
    two_dim = hunt(4, 8, seed=1, dim=2)
    assert len(two_dim) == 8
    assert all(rec["status"] in ("frobenius", "non_frobenius") for rec in two_dim)
