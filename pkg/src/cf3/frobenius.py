"""Frobenius type decisions and the matching of periodic fractions.

A matrix is of Frobenius type when some SL(k,Z) conjugate commutes with a
Frobenius matrix

    k = 2: [[0, 1], [a2, a1]]      k = 3: [[0,1,0], [0,0,1], [a3,a2,a1]].

For k = 2 the question is equivalent to the quadratic q2 attaining +-1, and
a witness converts directly into a conjugator: its primitive part becomes
the first row of an SL(2,Z) matrix, after which the conjugated matrix
satisfies the divisibility conditions for commuting with some Frobenius
matrix.  For k = 3 the question is equivalent to the five-variable product
q3 attaining +-1, searched with an escalating box and obstructed modularly.

classify_fraction matches a hyperbolic matrix against reference Frobenius
matrices.  C matches R exactly when some X in SL(3,Z) makes X C X^-1
commute with R, equivalently when some integer element Y of C's commutant
with char(Y) = char(R) is conjugate to R.  The search is exact:

* candidates Y = uE + vA + wB are enumerated from an eigenvalue bound on
  (v, w) (u is pinned by the trace), keeping those with char(Y) = char(R);
* for each Y the intertwiner lattice {X : XY = RX} has rank 3 and the
  determinant of a general element is an integer ternary cubic, expanded
  exactly by multilinearity;
* a unimodular point of that cubic (a -1 is absorbed by negating X, the
  dimension being odd) yields the conjugator, which is then verified.

An empty candidate set refutes the match outright; only a missing
unimodular point within the search ladder leaves the matrix unresolved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import ceil, gcd

import numpy as np

from .census import (HYPERBOLIC, M_ONLY, REDUCIBLE, classify_matrix,
                     matrices_in_class, matrix_from_flat, sphere_size)
from .commutant import commutant_basis, express_in_powers
from .forms import MONOMIAL_EXPONENTS, MONOMIALS, TernaryCubicForm, q2, q3
from .intmat import (IntMat, adjugate, char_cubic, format_matrix,
                     is_irreducible, is_square)
from .parallel import parallel_map_chunked
from .solver import (DecideConfig, TERNARY_CUBIC_EXPONENTS, _rank,
                     decide_product_escalating, decide_quadratic, search_box)
from .zlinalg import hnf_basis, right_kernel, xgcd

BOX_LADDER = (12, 25, 50)
CLASSIFY_DET_BOXES = (6, 12, 24)

LABELS = ("golden_ratio", "M_-1_3_1", "M_0_3_1", "other", "unresolved")


@dataclass(frozen=True)
class FrobeniusParams:
    values: tuple

    def matrix(self):
        return frobenius_matrix(self.values)


REFERENCE_PARAMS = (
    ("golden_ratio", FrobeniusParams((-1, 2, 1))),
    ("M_-1_3_1", FrobeniusParams((-1, 3, 1))),
    ("M_0_3_1", FrobeniusParams((0, 3, 1))),
)


def frobenius_matrix(values):
    """The Frobenius matrix with parameters (a1, ..., ak): an identity
    shifted above the diagonal, bottom row (ak, ..., a1)."""
    k = len(values)
    if k not in (2, 3):
        raise ValueError("need 2 or 3 parameters")
    rows = [[int(j == i + 1) for j in range(k)] for i in range(k - 1)]
    rows.append(list(reversed(values)))
    return IntMat(rows)


@dataclass(frozen=True)
class FrobeniusVerdict:
    status: str          # "frobenius" | "non_frobenius" | "undecided"
    dim: int
    solvability: object
    conjugator: IntMat = None


# ---------------------------------------------------------------- 2x2

def commuting_frobenius_params(c):
    """Parameters of a Frobenius matrix commuting with c itself, or None.

    c = [[p, q], [r, s]] commutes with [[0, 1], [a2, a1]] exactly when
    q != 0, q | r and q | s - p, with a1 = (s-p)/q and a2 = r/q.
    """
    (p, q), (r, s) = c.rows
    if q == 0 or r % q or (s - p) % q:
        return None
    params = FrobeniusParams(((s - p) // q, r // q))
    m = params.matrix()
    assert c @ m == m @ c
    return params


def conjugator_from_witness(a, witness):
    """SL(2,Z) matrix X, built from a unit value of q2, such that
    X a X^-1 commutes with a Frobenius matrix.

    The (0,1) entry of X a X^-1 equals the unnormalized quadratic at the
    first row of X.  At the primitive part of a unit witness that entry
    divides the gcd of the conjugated triple, so the divisibility
    conditions hold automatically.
    """
    x, y = witness
    d = gcd(x, y)
    x, y = x // d, y // d
    g, s, t = xgcd(x, y)
    assert g == 1
    conj = IntMat([[x, y], [-t, s]])
    assert conj.det() == 1
    assert commuting_frobenius_params(conj @ a @ adjugate(conj)) is not None
    return conj


def decide_thm2(a, config=None):
    """Frobenius type of an irreducible 2x2 matrix; always conclusive."""
    if a.dim != 2:
        raise ValueError("decide_thm2 needs a 2x2 matrix")
    sol = decide_quadratic(q2(a), config)
    if sol.verdict == "solvable":
        return FrobeniusVerdict("frobenius", 2, sol,
                                conjugator=conjugator_from_witness(a, sol.witness))
    if sol.verdict == "unsolvable":
        return FrobeniusVerdict("non_frobenius", 2, sol)
    return FrobeniusVerdict("undecided", 2, sol)


_SL2_CACHE = {}


def sl2_ball(radius):
    """All SL(2,Z) matrices with entries bounded by radius, in canonical
    order (shells of growing max-norm, then rank-lexicographic)."""
    if radius not in _SL2_CACHE:
        mats = []
        for shell in range(1, radius + 1):
            vals = sorted(range(-shell, shell + 1), key=_rank)
            for p in vals:
                for q_ in vals:
                    for r in vals:
                        for s in vals:
                            if max(abs(p), abs(q_), abs(r), abs(s)) != shell:
                                continue
                            if p * s - q_ * r == 1:
                                mats.append(IntMat([[p, q_], [r, s]]))
        _SL2_CACHE[radius] = tuple(mats)
    return _SL2_CACHE[radius]


def oracle_2x2(a, radius):
    """Literal bounded check of the definition: try every SL(2,Z)
    conjugator up to the radius, identity first.  Returns one that makes
    the conjugate commute with a Frobenius matrix, or None."""
    for x in (IntMat.identity(2),) + sl2_ball(radius):
        if commuting_frobenius_params(x @ a @ adjugate(x)) is not None:
            return x
    return None


# ---------------------------------------------------------------- 3x3

def decide_thm3(c, basis=None, config=None, boxes=BOX_LADDER):
    """Frobenius type of an irreducible 3x3 matrix.

    Solvable and unsolvable verdicts are exact; exhausting the box ladder
    and the modulus cap without either leaves the matrix undecided.
    """
    if c.dim != 3:
        raise ValueError("decide_thm3 needs a 3x3 matrix")
    config = config or DecideConfig()
    pf = q3(c, basis=basis)
    sol = decide_product_escalating(pf, boxes, config.modulus_cap)
    status = {"solvable": "frobenius", "unsolvable": "non_frobenius",
              "unknown": "undecided"}[sol.verdict]
    return FrobeniusVerdict(status, 3, sol)


# ---------------------------------------------------------------- matching

def _ratio_square(d1, d2):
    """Is d1/d2 the square of a rational?  (d2 != 0.)"""
    if d1 * d2 <= 0:
        return d1 == 0
    f = Fraction(d1, d2)
    return is_square(f.numerator) and is_square(f.denominator)


def _embedding_bound(c, basis, chi_r):
    """Integer bound B so that any commutant element with characteristic
    polynomial chi_r has power-basis coordinates |v|, |w| <= B.

    The coordinates solve S (u, v, w)^T = (eigenvalues of Y), where S has
    rows (1, lam_A, lam_B) over the embeddings; eigenvalues of Y are roots
    of chi_r.  Floating point only enters this bound; membership of each
    candidate is verified exactly afterwards."""
    chi_c = char_cubic(c)
    lam_c = np.roots(np.array([1.0] + [float(v) for v in chi_c.monic()]))
    cols = [np.ones(3, dtype=complex)]
    for member in (basis.a, basis.b):
        al, be, ga = express_in_powers(c, member)
        cols.append(np.array([float(al) * l * l + float(be) * l + float(ga)
                              for l in lam_c]))
    s = np.column_stack(cols)
    sinv = np.linalg.inv(s)
    rho = max(abs(r) for r in np.roots(
        np.array([1.0] + [float(v) for v in chi_r.monic()])))
    bound = float(np.max(np.sum(np.abs(sinv), axis=1))) * rho
    return int(ceil(1.5 * bound)) + 2


def _commutant_fiber(c, basis, chi_r):
    """All integer commutant elements of c with characteristic polynomial
    chi_r (at most three exist: the conjugates of a root)."""
    tr_r = chi_r.a1
    tr_a, tr_b = basis.a.trace(), basis.b.trace()
    bound = _embedding_bound(c, basis, chi_r)
    out = []
    for v in range(-bound, bound + 1):
        for w in range(-bound, bound + 1):
            num = tr_r - v * tr_a - w * tr_b
            if num % 3:
                continue
            y = (num // 3) * basis.e + v * basis.a + w * basis.b
            if char_cubic(y) == chi_r:
                out.append(y)
    return out


def _intertwiner_basis(y, r):
    """Canonical basis of the rank-3 lattice {X : X y = r X}."""
    rows = []
    for i in range(3):
        for j in range(3):
            row = [0] * 9
            for p in range(3):
                for q_ in range(3):
                    coef = 0
                    if p == i:
                        coef += y.rows[q_][j]
                    if q_ == j:
                        coef -= r.rows[i][p]
                    row[3 * p + q_] = coef
            rows.append(row)
    kern = hnf_basis(right_kernel(rows))
    assert len(kern) == 3
    return [IntMat([vec[0:3], vec[3:6], vec[6:9]]) for vec in kern]


_EXP_TO_NAME = {exp: name for name, exp in MONOMIAL_EXPONENTS.items()}


def det_form(gs):
    """det(x*G1 + y*G2 + z*G3) as a ternary cubic, expanded exactly by
    multilinearity in the columns (27 integer determinants)."""
    cols = [[[g.rows[i][j] for i in range(3)] for j in range(3)] for g in gs]
    coeffs = dict.fromkeys(MONOMIALS, 0)
    for i1 in range(3):
        for i2 in range(3):
            for i3 in range(3):
                m = IntMat([[cols[i1][0][r], cols[i2][1][r], cols[i3][2][r]]
                            for r in range(3)])
                d = m.det()
                if d == 0:
                    continue
                counts = tuple((i1, i2, i3).count(k) for k in range(3))
                coeffs[_EXP_TO_NAME[counts]] += d
    return TernaryCubicForm(tuple(coeffs[name] for name in MONOMIALS))


def conjugate_commuting(c, r, det_boxes=CLASSIFY_DET_BOXES):
    """Search for X in SL(3,Z) making X c X^-1 commute with r.

    Returns (status, x): "conjugate" with a verified x, "no_fiber" when no
    integer commutant element of c has r's characteristic polynomial (a
    definitive refutation), or "inconclusive" when the determinant-form
    search ran out of box.
    """
    basis = commutant_basis(c)
    chi_r = char_cubic(r)
    fiber = _commutant_fiber(c, basis, chi_r)
    if not fiber:
        return ("no_fiber", None)
    for y in fiber:
        gs = _intertwiner_basis(y, r)
        form = det_form(gs)
        assert not form.is_zero()
        for box in det_boxes:
            hit = search_box(form.coeffs, TERNARY_CUBIC_EXPONENTS, box)
            if hit is None:
                continue
            (xv, yv, zv), dv = hit
            x = xv * gs[0] + yv * gs[1] + zv * gs[2]
            if dv == -1:
                x = -x
            assert x.det() == 1
            assert x @ y == r @ x
            w = x @ c @ adjugate(x)
            assert w @ r == r @ w
            return ("conjugate", x)
    return ("inconclusive", None)


def classify_fraction(c, det_boxes=CLASSIFY_DET_BOXES):
    """Label the periodic fraction of an irreducible 3x3 matrix.

    Labels name the matched reference matrix; "other" is definitive (for
    every reference, either the field invariant or the commutant fiber
    refutes the match), "unresolved" records an exhausted search.
    """
    if c.dim != 3 or not is_irreducible(c):
        raise ValueError("classification needs an irreducible 3x3 matrix")
    dc = char_cubic(c).discriminant()
    pending = False
    for label, params in REFERENCE_PARAMS:
        rmat = params.matrix()
        if not _ratio_square(dc, char_cubic(rmat).discriminant()):
            continue
        status, _ = conjugate_commuting(c, rmat, det_boxes)
        if status == "conjugate":
            return label
        if status == "inconclusive":
            pending = True
    return "unresolved" if pending else "other"


def conjugator_search(c, r, bound=2):
    """Literal bounded search over SL(3,Z): the identity first, then every
    X with max-norm up to the bound in canonical order, returning the
    first whose conjugate of c commutes with r."""
    x = IntMat.identity(3)
    w = x @ c @ adjugate(x)
    if w @ r == r @ w:
        return x
    for shell in range(1, bound + 1):
        vals = sorted(range(-shell, shell + 1), key=_rank)
        for flat in _nine_tuples(vals, shell):
            x = matrix_from_flat(flat)
            if x.det() != 1:
                continue
            w = x @ c @ adjugate(x)
            if w @ r == r @ w:
                return x
    return None


def _nine_tuples(vals, shell):
    """9-tuples over vals whose max-norm is exactly shell, in
    lexicographic order, det filtered in numpy chunks."""
    import itertools
    chunk = []
    for flat in itertools.product(vals, repeat=9):
        if max(abs(v) for v in flat) != shell:
            continue
        chunk.append(flat)
        if len(chunk) == 65536:
            yield from _det_one(chunk)
            chunk = []
    yield from _det_one(chunk)


def _det_one(flats):
    if not flats:
        return
    arr = np.array(flats, dtype=np.int64)
    a, b, c = arr[:, 0], arr[:, 1], arr[:, 2]
    d, e_, f = arr[:, 3], arr[:, 4], arr[:, 5]
    g, h, i = arr[:, 6], arr[:, 7], arr[:, 8]
    det = a * (e_ * i - f * h) - b * (d * i - f * g) + c * (d * h - e_ * g)
    for idx in np.flatnonzero(det == 1):
        yield flats[idx]


# ---------------------------------------------------------------- sweeps

def _sweep_chunk(flats, boxes=BOX_LADDER, config=None):
    frob = 0
    undecided = []
    for flat in flats:
        verdict = decide_thm3(matrix_from_flat(flat), config=config, boxes=boxes)
        if verdict.status == "frobenius":
            frob += 1
        else:
            undecided.append(flat)
    return [(frob, undecided)]


def theorem1_sweep(norm_cap=6, workers=1, boxes=BOX_LADDER, config=None):
    """Decide every irreducible 3x3 matrix of norm <= norm_cap.

    Returns {norm: {"matrices": n, "frobenius": n, "undecided": [...]}};
    an empty undecided list everywhere reproduces the blanket statement
    for small norms."""
    chunk = partial(_sweep_chunk, boxes=boxes, config=config)
    report = {}
    for n in range(norm_cap + 1):
        flats = [m.flat() for m in matrices_in_class(3, n, (M_ONLY, HYPERBOLIC))]
        if flats:
            parts = parallel_map_chunked(chunk, flats, workers=workers,
                                         chunk_size=128)
            frob = sum(p[0] for p in parts)
            undecided = [f for p in parts for f in p[1]]
        else:
            frob, undecided = 0, []
        report[n] = {"matrices": len(flats), "frobenius": frob,
                     "undecided": [format_matrix(matrix_from_flat(f))
                                   for f in undecided]}
    return report


def _classify_chunk(flats):
    counts = dict.fromkeys(LABELS, 0)
    for flat in flats:
        counts[classify_fraction(matrix_from_flat(flat))] += 1
    return [counts]


def classification_report(n, workers=1):
    """Label counts over all hyperbolic matrices of norm n."""
    flats = [m.flat() for m in matrices_in_class(3, n, (HYPERBOLIC,))]
    totals = dict.fromkeys(LABELS, 0)
    if flats:
        for part in parallel_map_chunked(_classify_chunk, flats,
                                         workers=workers, chunk_size=64):
            for label in LABELS:
                totals[label] += part[label]
    totals["matrices"] = len(flats)
    return totals


def _hunt_chunk(flats):
    out = []
    for flat in flats:
        m = matrix_from_flat(flat)
        verdict = decide_thm2(m) if m.dim == 2 else decide_thm3(m)
        out.append({"matrix": format_matrix(m),
                    "norm": sum(abs(v) for v in flat),
                    "status": verdict.status})
    return out


def _sample_norm_flat(rng, slots, n):
    """Uniform random integer vector of the given length with L1 norm n,
    drawn slot by slot with exact sphere-count weights."""
    flat = []
    remaining = n
    for slot in range(slots, 1, -1):
        pick = rng.randrange(sphere_size(slot, remaining))
        acc = 0
        for mag in range(remaining + 1):
            ways = sphere_size(slot - 1, remaining - mag)
            options = 1 if mag == 0 else 2
            if pick < acc + options * ways:
                offset = pick - acc
                flat.append(0 if mag == 0 else (-mag if offset < ways else mag))
                remaining -= mag
                break
            acc += options * ways
        else:
            raise AssertionError("sampler walked off the distribution")
    if remaining == 0:
        flat.append(0)
    else:
        flat.append(-remaining if rng.randrange(2) == 0 else remaining)
    return tuple(flat)


def hunt(norm, count, seed, dim=3, workers=1):
    """Sample irreducible matrices of the given norm (uniformly, with
    replacement, deterministically from the seed) and decide each one."""
    if norm < 1:
        raise ValueError("norm must be positive")
    rng = random.Random(seed)
    flats = []
    attempts = 0
    while len(flats) < count:
        attempts += 1
        if attempts > 1000 * count:
            raise ValueError("norm %d rejects too many samples" % norm)
        flat = _sample_norm_flat(rng, dim * dim, norm)
        if classify_matrix(matrix_from_flat(flat)) == REDUCIBLE:
            continue
        flats.append(flat)
    return parallel_map_chunked(_hunt_chunk, flats, workers=workers,
                                chunk_size=32)
