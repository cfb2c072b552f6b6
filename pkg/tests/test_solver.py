"""Solver: box search, modular obstructions, and the quadratic cycle walk."""

import random

import pytest

from cf3.commutant import basis_from_pair
from cf3.forms import (BinaryCubicForm, BinaryQF, TernaryCubicForm,
                       product_form, q2, q3)
from cf3.intmat import IntMat, is_irreducible
from cf3.solver import (BINARY_CUBIC_EXPONENTS, BINARY_QUAD_EXPONENTS,
                        DecideConfig, TERNARY_CUBIC_EXPONENTS,
                        _search_box_python, decide_product, decide_quadratic,
                        decide_unit_values, modular_obstruction, pell_decide,
                        search_box)

A42 = IntMat([[1, 2, 0], [0, 1, 2], [-7, 0, 29]])
GOLDEN = IntMat([[0, 1, 0], [0, 0, 1], [1, 2, -1]])


def b42():
    e = IntMat.identity(3)
    num = A42 @ A42 - 30 * A42 + 29 * e
    return IntMat([[v // 2 for v in row] for row in num.rows])


# ---------------------------------------------------------------- search_box

def test_search_box_canonical_first_hit():
    # x^2 + y^2 == 1 has four solutions; canonical order prefers
    # the one with x = 0, y = 1 (0 sorts before 1, 1 before -1)
    point, value = search_box((1, 0, 1), BINARY_QUAD_EXPONENTS, 3, targets=(1,))
    assert point == (0, 1)
    assert value == 1


def test_search_box_respects_shells():
    # m^3 == 8 first reached on the shell of max-norm 2
    point, value = search_box((1, 0, 0, 0), BINARY_CUBIC_EXPONENTS, 5,
                              targets=(8,))
    assert point == (2, 0)
    assert value == 8


def test_search_box_no_hit():
    assert search_box((2, 0, 2), BINARY_QUAD_EXPONENTS, 10) is None


def test_search_box_python_fallback_agrees():
    rng = random.Random(31)
    for _ in range(60):
        coeffs = tuple(rng.randint(-6, 6) for _ in range(4))
        if all(c == 0 for c in coeffs):
            continue
        fast = search_box(coeffs, BINARY_CUBIC_EXPONENTS, 4)
        slow = _search_box_python(coeffs, BINARY_CUBIC_EXPONENTS, 4, (1, -1))
        if fast is None:
            assert slow is None
        else:
            assert fast[0] == slow


def test_search_box_huge_coefficients_use_exact_path():
    big = 10 ** 18
    found = search_box((big, big - 1), ((1, 0), (0, 1)), 2)
    assert found is not None
    point, value = found
    assert big * point[0] + (big - 1) * point[1] == value
    assert value in (1, -1)


# ---------------------------------------------------------------- obstructions

def test_modular_obstruction_golden_binary_factor():
    cert = modular_obstruction((2, -28, 0, 7), BINARY_CUBIC_EXPONENTS, 100)
    assert cert is not None
    assert cert.kind == "modulus"
    assert cert.modulus == 7
    assert cert.residues == (0, 2, 5)


def test_modular_obstruction_none_for_cube():
    assert modular_obstruction((1, 0, 0, 0), BINARY_CUBIC_EXPONENTS, 30) is None


def test_residues_match_direct_enumeration():
    rng = random.Random(37)
    for _ in range(20):
        coeffs = tuple(rng.randint(-9, 9) for _ in range(3))
        q = rng.randint(2, 11)
        want = {(coeffs[0] * x * x + coeffs[1] * x * y + coeffs[2] * y * y) % q
                for x in range(q) for y in range(q)}
        cert = modular_obstruction(coeffs, BINARY_QUAD_EXPONENTS, q,
                                   targets=(q + 5,))
        # targets (q+5,) % q == 5; certificate exists iff 5 unattained
        if 5 % q in want:
            assert cert is None or cert.modulus != q
        from cf3.solver import _residues_mod
        assert _residues_mod(coeffs, BINARY_QUAD_EXPONENTS, q) == frozenset(want)


def test_unknown_verdict_when_caps_too_small():
    r = decide_unit_values((1, 0, 0, 5), BINARY_CUBIC_EXPONENTS, 0, 1)
    assert r.verdict == "unknown"
    assert r.search_bound == 0
    assert r.modulus_cap == 1


# ---------------------------------------------------------------- quadratics

def test_pell_fibonacci_form_represents_both_units():
    r = pell_decide(BinaryQF(1, 1, -1))
    assert r.verdict == "solvable"
    x, y = r.witness
    assert x * x + x * y - y * y == r.value
    assert r.value in (1, -1)


def test_pell_sqrt2_form():
    r = pell_decide(BinaryQF(1, 0, -2))
    assert r.verdict == "solvable"
    x, y = r.witness
    assert x * x - 2 * y * y == r.value


def test_pell_unsolvable_cycle():
    r = pell_decide(BinaryQF(3, 0, -5))
    assert r.verdict == "unsolvable"
    assert r.certificate.kind == "cycle"
    assert all(a not in (1, -1) for a in r.certificate.leading)
    # confirm by brute force over a generous box
    for x in range(-40, 41):
        for y in range(-40, 41):
            assert abs(3 * x * x - 5 * y * y) != 1


def test_pell_rejects_definite_and_square_disc():
    with pytest.raises(ValueError):
        pell_decide(BinaryQF(1, 0, 1))
    with pytest.raises(ValueError):
        pell_decide(BinaryQF(1, 0, -1))


def test_pell_agrees_with_box_search():
    rng = random.Random(41)
    checked = 0
    while checked < 200:
        p, q, r_ = rng.randint(-7, 7), rng.randint(-7, 7), rng.randint(-7, 7)
        f = BinaryQF(p, q, r_)
        d = f.discriminant()
        from cf3.intmat import is_square
        if d <= 0 or is_square(d):
            continue
        verdict = pell_decide(f)
        boxed = search_box(f.as_tuple(), BINARY_QUAD_EXPONENTS, 30)
        if verdict.verdict == "solvable":
            assert abs(f.evaluate(*verdict.witness)) == 1
        else:
            assert boxed is None
        checked += 1


def test_definite_decisions():
    r = decide_quadratic(BinaryQF(2, 0, 3))
    assert r.verdict == "unsolvable"
    assert r.certificate.kind == "definite"
    r = decide_quadratic(BinaryQF(1, 0, 3))
    assert r.verdict == "solvable"
    assert r.witness in ((1, 0), (-1, 0))
    r = decide_quadratic(BinaryQF(-1, 0, -3))
    assert r.verdict == "solvable" and r.value == -1


def test_content_shortcut():
    r = decide_quadratic(BinaryQF(2, 4, 6))
    assert r.verdict == "unsolvable"
    assert r.certificate.kind == "modulus"
    assert r.certificate.modulus == 2
    assert r.certificate.residues == (0,)


def test_square_disc_fallback():
    assert decide_quadratic(BinaryQF(1, 0, -1)).verdict == "solvable"
    assert decide_quadratic(BinaryQF(0, 1, 0)).verdict == "solvable"


def test_decide_quadratic_on_matrix_forms():
    rng = random.Random(43)
    seen_solvable = seen_unsolvable = False
    for _ in range(300):
        m = IntMat([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
        if not is_irreducible(m):
            continue
        r = decide_quadratic(q2(m))
        assert r.verdict in ("solvable", "unsolvable")
        seen_solvable |= r.verdict == "solvable"
        seen_unsolvable |= r.verdict == "unsolvable"
    assert seen_solvable and seen_unsolvable


# ---------------------------------------------------------------- products

def test_product_counterexample_is_unsolvable_with_mod7_certificate():
    for pf in (q3(A42), q3(A42, basis=basis_from_pair(A42, A42, b42()))):
        r = decide_product(pf)
        assert r.verdict == "unsolvable"
        assert r.certificate.kind == "modulus"
        assert r.certificate.modulus == 7
        assert r.certificate.residues == (0, 2, 5)


def test_product_solvable_for_plainly_frobenius_matrix():
    r = decide_product(q3(GOLDEN))
    assert r.verdict == "solvable"
    pf = q3(GOLDEN)
    value = pf.evaluate(*r.witness[:3], *r.witness[3:])
    assert abs(value) == 1
    assert int(value) == r.value


def test_product_content_certificate():
    from fractions import Fraction
    pf = product_form(BinaryCubicForm(Fraction(1), Fraction(0), Fraction(0),
                                      Fraction(0)),
                      TernaryCubicForm((2,) + (0,) * 9))
    assert pf.content == 2
    r = decide_product(pf)
    assert r.verdict == "unsolvable"
    assert r.certificate.modulus == 2
    assert r.certificate.residues == (0,)


def test_product_unknown_with_tiny_caps():
    cfg = DecideConfig(box_product=0, modulus_cap=1)
    r = decide_product(q3(GOLDEN), cfg)
    assert r.verdict == "unknown"


def test_config_defaults():
    cfg = DecideConfig()
    assert (cfg.box_quadratic, cfg.box_product, cfg.modulus_cap) == (25, 12, 100)
