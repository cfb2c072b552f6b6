"""Deciding whether integer forms attain the values +1 or -1.

Three engines, in increasing specificity:

* search_box: exhaustive scan of an integer box in a fixed canonical order
  (shells of growing max-norm, then lexicographic with the per-coordinate
  value order 0 < 1 < -1 < 2 < -2 < ...), numpy-vectorized when the
  coefficients fit int64 arithmetic, with an exact re-check of any hit;
* modular_obstruction: the smallest modulus q where the form's residue set
  misses both 1 and -1, which certifies unsolvability;
* pell_decide: a complete decision for binary quadratics of positive
  nonsquare discriminant via the reduction cycle.  +-1 is represented
  exactly when it occurs among the leading coefficients of the cycle, and
  the witness is read off the accumulated change of basis.  Negative
  discriminants are decided by complete enumeration instead.

decide_product handles the five-variable product of a binary and a ternary
cubic.  Its values factor as content * f1 * f2 over independent variables,
so it attains a unit value exactly when the content is 1 and each primitive
factor attains one.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import product as iter_product
from math import isqrt

import numpy as np

from .forms import MONOMIAL_EXPONENTS, MONOMIALS
from .intmat import is_square

BINARY_QUAD_EXPONENTS = ((2, 0), (1, 1), (0, 2))
BINARY_CUBIC_EXPONENTS = ((3, 0), (2, 1), (1, 2), (0, 3))
TERNARY_CUBIC_EXPONENTS = tuple(MONOMIAL_EXPONENTS[name] for name in MONOMIALS)

UNIT_TARGETS = (1, -1)


@dataclass(frozen=True)
class DecideConfig:
    box_quadratic: int = 25
    box_product: int = 12
    modulus_cap: int = 100


@dataclass(frozen=True)
class Certificate:
    """Evidence that a form misses the unit values.

    kind "modulus": the residues attained mod ``modulus`` avoid 1 and -1.
    kind "cycle": the reduction cycle's leading coefficients avoid 1 and -1.
    kind "definite": a complete enumeration of the finite solution range.
    """

    kind: str
    modulus: int = 0
    residues: tuple = ()
    leading: tuple = ()
    detail: str = ""


@dataclass(frozen=True)
class Solvability:
    verdict: str                # "solvable" | "unsolvable" | "unknown"
    witness: tuple = None
    value: int = None
    certificate: Certificate = None
    search_bound: int = 0
    modulus_cap: int = 0


def _rank(v):
    # 0 < 1 < -1 < 2 < -2 < ...
    return 2 * abs(v) - (1 if v > 0 else 0)


def _evaluate(coeffs, exponents, point):
    total = 0
    for c, exps in zip(coeffs, exponents):
        term = c
        for v, e in zip(point, exps):
            term *= v ** e
        total += term
    return total


_GRID_CACHE = {}


def _grids(arity, bound):
    key = (arity, bound)
    if key not in _GRID_CACHE:
        side = np.arange(-bound, bound + 1, dtype=np.int64)
        mesh = np.meshgrid(*([side] * arity), indexing="ij")
        coords = [g.ravel() for g in mesh]
        shell = np.zeros_like(coords[0])
        for g in coords:
            shell = np.maximum(shell, np.abs(g))
        base = 2 * bound + 2
        order = shell.copy()
        for g in coords:
            order = order * base + (2 * np.abs(g) - (g > 0))
        _GRID_CACHE[key] = (coords, order)
    return _GRID_CACHE[key]


def _search_box_python(coeffs, exponents, bound, targets):
    arity = len(exponents[0])
    for shell in range(bound + 1):
        vals = sorted(range(-shell, shell + 1), key=_rank)
        for point in iter_product(vals, repeat=arity):
            if max(abs(v) for v in point) != shell:
                continue
            if _evaluate(coeffs, exponents, point) in targets:
                return point
    return None


def search_box(coeffs, exponents, bound, targets=UNIT_TARGETS):
    """First point, in canonical order, where the form hits a target value.

    Returns (point, value) or None.  The numpy path is used whenever every
    intermediate product provably fits int64; hits are re-verified exactly.
    """
    coeffs = tuple(int(c) for c in coeffs)
    degree = max(sum(e) for e in exponents)
    limit = sum(abs(c) for c in coeffs) * max(1, bound) ** degree
    if limit < 2 ** 62 and max(abs(t) for t in targets) < 2 ** 62:
        coords, order = _grids(len(exponents[0]), bound)
        total = np.zeros_like(coords[0])
        for c, exps in zip(coeffs, exponents):
            term = np.full_like(coords[0], c)
            for g, e in zip(coords, exps):
                for _ in range(e):
                    term = term * g
            total = total + term
        hits = np.flatnonzero(np.isin(total, np.array(targets, dtype=np.int64)))
        if hits.size == 0:
            return None
        best = hits[np.argmin(order[hits])]
        point = tuple(int(g[best]) for g in coords)
    else:
        point = _search_box_python(coeffs, exponents, bound, targets)
        if point is None:
            return None
    value = _evaluate(coeffs, exponents, point)
    assert value in targets
    return point, value


@lru_cache(maxsize=65536)
def _residues_mod(coeffs, exponents, q):
    """All residues the form attains on (Z/q)^arity."""
    arity = len(exponents[0])
    side = np.arange(q, dtype=np.int64)
    mesh = np.meshgrid(*([side] * arity), indexing="ij")
    coords = [g.ravel() for g in mesh]
    maxdeg = max(max(e) for e in exponents)
    powers = []
    for g in coords:
        col = [np.ones_like(g)]
        for _ in range(maxdeg):
            col.append((col[-1] * g) % q)
        powers.append(col)
    total = np.zeros_like(coords[0])
    for c, exps in zip(coeffs, exponents):
        term = np.full_like(coords[0], c % q)
        for gi, e in enumerate(exps):
            if e:
                term = (term * powers[gi][e]) % q
        total = (total + term) % q
    return frozenset(int(v) for v in np.unique(total))


def modular_obstruction(coeffs, exponents, cap, targets=UNIT_TARGETS):
    """Smallest q <= cap whose residue set avoids every target, or None."""
    coeffs = tuple(int(c) for c in coeffs)
    for q in range(2, cap + 1):
        got = _residues_mod(coeffs, exponents, q)
        if not any(t % q in got for t in targets):
            return Certificate(kind="modulus", modulus=q,
                               residues=tuple(sorted(got)))
    return None


def decide_unit_values(coeffs, exponents, box, cap, detail=""):
    """Searching then obstructing a single form; may come back unknown."""
    found = search_box(coeffs, exponents, box)
    if found is not None:
        point, value = found
        return Solvability("solvable", witness=point, value=value,
                           search_bound=box)
    cert = modular_obstruction(tuple(int(c) for c in coeffs), exponents, cap)
    if cert is not None:
        if detail:
            cert = replace(cert, detail=detail)
        return Solvability("unsolvable", certificate=cert,
                           search_bound=box, modulus_cap=cap)
    return Solvability("unknown", search_bound=box, modulus_cap=cap)


# ---------------------------------------------------------------- quadratics

def _reduced(a, b, s):
    return 0 < b <= s and 2 * abs(a) + b >= s + 1 and 2 * abs(a) - b <= s


def _rho(a, b, c, d, s):
    """One reduction / cycle step (a, b, c) -> (c, r, (r^2 - d) / 4c)."""
    ac = abs(c)
    lo = -ac + 1 if ac > s else s + 1 - 2 * ac
    r = lo + (-b - lo) % (2 * ac)
    assert (r + b) % (2 * ac) == 0
    assert (r * r - d) % (4 * c) == 0
    t = (r + b) // (2 * c)
    return (c, r, (r * r - d) // (4 * c)), t


def pell_decide(qf):
    """Complete unit-value decision for positive nonsquare discriminant.

    Iterates the reduction step, tracking the change of basis v.  Any form
    along the way with leading coefficient +-1 yields the witness v(1, 0);
    once the walk returns to the first reduced form without one, the cycle
    of leading coefficients certifies unsolvability.
    """
    d = qf.discriminant()
    if d <= 0 or is_square(d):
        raise ValueError("pell_decide needs a positive nonsquare discriminant")
    s = isqrt(d)
    a, b, c = qf.p, qf.q, qf.r
    v = ((1, 0), (0, 1))
    cycle_start = None
    leadings = []
    for _ in range(100000):
        if a in (1, -1):
            witness = (v[0][0], v[1][0])
            value = qf.evaluate(*witness)
            assert value == a
            return Solvability("solvable", witness=witness, value=value)
        if _reduced(a, b, s):
            if cycle_start is None:
                cycle_start = (a, b, c)
            elif (a, b, c) == cycle_start:
                return Solvability("unsolvable", certificate=Certificate(
                    kind="cycle", leading=tuple(leadings)))
            leadings.append(a)
        (a, b, c), t = _rho(a, b, c, d, s)
        v = ((v[0][1], -v[0][0] + v[0][1] * t),
             (v[1][1], -v[1][0] + v[1][1] * t))
    raise AssertionError("reduction walk failed to close")


def _decide_definite(qf):
    """Negative discriminant: the unit solutions lie in a finite strip."""
    p, q, r = qf.as_tuple()
    d = qf.discriminant()
    assert d < 0 and p != 0
    sign = 1 if p > 0 else -1
    a, b = sign * p, sign * q
    # sign * qf is positive definite; value 1 forces (2ax+by)^2 - d y^2 = 4a
    ymax = isqrt(4 * a // (-d))
    for y in range(-ymax, ymax + 1):
        rem = 4 * a + d * y * y
        if rem < 0:
            continue
        w = isqrt(rem)
        if w * w != rem:
            continue
        for root in {w, -w}:
            if (root - b * y) % (2 * a) == 0:
                x = (root - b * y) // (2 * a)
                value = qf.evaluate(x, y)
                assert value == sign
                return Solvability("solvable", witness=(x, y), value=value)
    return Solvability("unsolvable", certificate=Certificate(
        kind="definite", detail="complete enumeration, |y| <= %d" % ymax))


def _smallest_prime_factor(n):
    assert n > 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            return f
        f += 1
    return n


def _content_certificate(cont):
    p = _smallest_prime_factor(cont)
    return Solvability("unsolvable", certificate=Certificate(
        kind="modulus", modulus=p, residues=(0,),
        detail="every coefficient divisible by %d" % p))


def decide_quadratic(qf, config=None):
    """Does a binary quadratic attain +1 or -1?

    Complete except for square discriminants, where a generic search and
    obstruction fallback can return unknown; those do not occur for forms
    built from irreducible matrices.
    """
    config = config or DecideConfig()
    cont = qf.content()
    if cont > 1:
        return _content_certificate(cont)
    d = qf.discriminant()
    if d < 0:
        return _decide_definite(qf)
    if not is_square(d):
        return pell_decide(qf)
    return decide_unit_values(qf.as_tuple(), BINARY_QUAD_EXPONENTS,
                              config.box_quadratic, config.modulus_cap,
                              detail="square discriminant fallback")


# ---------------------------------------------------------------- products

def decide_product(pf, config=None):
    """Does the five-variable product attain +1 or -1?

    With content 1 the question splits exactly: each primitive factor must
    attain a unit value on its own variables.  A certificate for either
    factor certifies the product; content > 1 is itself a certificate.
    """
    config = config or DecideConfig()
    if pf.content > 1:
        return _content_certificate(pf.content)
    r_mn = decide_unit_values(pf.mn_primitive, BINARY_CUBIC_EXPONENTS,
                              config.box_product, config.modulus_cap,
                              detail="binary factor")
    if r_mn.verdict == "unsolvable":
        return r_mn
    r_xyz = decide_unit_values(pf.xyz_primitive, TERNARY_CUBIC_EXPONENTS,
                               config.box_product, config.modulus_cap,
                               detail="ternary factor")
    if r_xyz.verdict == "unsolvable":
        return r_xyz
    if r_mn.verdict == "solvable" and r_xyz.verdict == "solvable":
        witness = r_xyz.witness + r_mn.witness
        value = pf.evaluate(*witness[:3], *witness[3:])
        assert abs(value) == 1
        return Solvability("solvable", witness=witness, value=int(value),
                           search_bound=config.box_product)
    return Solvability("unknown", search_bound=config.box_product,
                       modulus_cap=config.modulus_cap)


def decide_product_escalating(pf, boxes=(12, 25, 50), cap=100):
    """decide_product with a growing search box before any obstruction scan.

    Factor witnesses found at a small box are kept while the other factor
    escalates; the obstruction scan runs only once the whole ladder has
    failed, and only for factors without a witness.
    """
    if pf.content > 1:
        return _content_certificate(pf.content)
    factors = [
        [pf.mn_primitive, BINARY_CUBIC_EXPONENTS, "binary factor", None],
        [pf.xyz_primitive, TERNARY_CUBIC_EXPONENTS, "ternary factor", None],
    ]
    box = 0
    for box in boxes:
        for fac in factors:
            if fac[3] is None:
                fac[3] = search_box(fac[0], fac[1], box)
        if all(fac[3] is not None for fac in factors):
            witness = factors[1][3][0] + factors[0][3][0]
            value = pf.evaluate(*witness[:3], *witness[3:])
            assert abs(value) == 1
            return Solvability("solvable", witness=witness, value=int(value),
                               search_bound=box)
    for fac in factors:
        if fac[3] is not None:
            continue
        cert = modular_obstruction(tuple(int(v) for v in fac[0]), fac[1], cap)
        if cert is not None:
            return Solvability("unsolvable", certificate=replace(cert, detail=fac[2]),
                               search_bound=box, modulus_cap=cap)
    return Solvability("unknown", search_bound=box, modulus_cap=cap)
