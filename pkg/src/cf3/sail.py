"""Sails of the eigen-cone decomposition and their torus invariants.

The three eigenplanes of a hyperbolic 3x3 matrix split space into eight open
cones.  The sail of a cone is the boundary of the convex hull of its nonzero
lattice points.  Totally positive units of the commutant act on each sail
with a compact quotient; the orbit counts and face areas of that quotient
are integer-affine invariants that separate inequivalent fractions.

Every geometric predicate here is decided exactly: float evaluations carry
rigorous error bounds from rational root enclosures, and anything inside the
error band falls back to exact sign certification at the cubic's roots.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .commutant import commutant_basis, express_in_powers
from .frobenius import det_form
from .intmat import IntMat, char_cubic, is_hyperbolic
from .roots import (
    interval_eval,
    isolate_real_roots,
    poly_add,
    poly_mod,
    poly_mul,
    poly_scale,
    poly_strip,
    refine_interval,
    sign_at_root,
)
from .zlinalg import coords_in_basis, det_exact, inverse_unimodular

ROOT_WIDTH = Fraction(1, 2**60)
FACE_BOX_CAP = 512
UNIT_BOXES = (4, 8, 16, 32)
RADIUS_LADDER = (16, 32, 64, 128, 256)
CELL_BAND = 1e-6


class CoverageError(RuntimeError):
    """Raised when the computed sail patch cannot cover a fundamental domain."""


def _poly_entry(value, diagonal):
    # Entry of C - x*E as a polynomial: degree 1 on the diagonal.
    return poly_strip((-1, value)) if diagonal else poly_strip((value,))


def _char_adjugate(c):
    """Entries of adj(C - x*E) as integer polynomials (3x3 nested tuples)."""
    m = [[_poly_entry(c.rows[i][j], i == j) for j in range(3)] for i in range(3)]

    def minor(i, j):
        ri = [r for r in range(3) if r != i]
        cj = [s for s in range(3) if s != j]
        a = poly_mul(m[ri[0]][cj[0]], m[ri[1]][cj[1]])
        b = poly_mul(m[ri[0]][cj[1]], m[ri[1]][cj[0]])
        return poly_add(a, poly_scale(b, -1))

    # adj[i][j] is the (j, i) cofactor, so adj(M) @ M = det(M) * E.
    return tuple(
        tuple(poly_scale(minor(j, i), (-1) ** (i + j)) for j in range(3))
        for i in range(3))


def _combo_poly(polys, vector):
    acc = ()
    for p, x in zip(polys, vector):
        if x:
            acc = poly_add(acc, poly_scale(p, x))
    return acc


@dataclass(eq=False)
class EigenCone:
    """One open eigen-cone of a hyperbolic matrix, with exact predicates.

    ``duals`` holds, per root, the eigenplane functional as three integer
    polynomials in that root, oriented positive on the cone; ``rays`` holds
    the extreme-ray directions, oriented into the cone closure.
    """

    c: IntMat
    chi: tuple
    intervals: list
    duals: tuple
    rays: tuple
    _cache: dict = field(default_factory=dict, repr=False)
    # Certified-face results are exact and radius-independent, so they
    # survive interval refinement (unlike the enclosure cache).
    face_cache: dict = field(default_factory=dict, repr=False)

    def width(self):
        return max(hi - lo for lo, hi in self.intervals)

    def refine(self, width):
        for i, (lo, hi) in enumerate(self.intervals):
            if hi - lo > width:
                self.intervals[i] = refine_interval(self.chi, lo, hi, width)
        self._cache.clear()

    def dual_enclosures(self):
        """Per root, per coordinate: exact Fraction bounds of the functional."""
        key = "enc"
        if key not in self._cache:
            self._cache[key] = tuple(
                tuple(interval_eval(p, lo, hi) for p in self.duals[i])
                for i, (lo, hi) in enumerate(self.intervals))
        return self._cache[key]

    def _float_duals(self):
        key = "float"
        if key not in self._cache:
            mids = np.zeros((3, 3))
            rads = np.zeros((3, 3))
            for i, row in enumerate(self.dual_enclosures()):
                for j, (lo, hi) in enumerate(row):
                    mid = float((lo + hi) / 2)
                    mids[i, j] = mid
                    rads[i, j] = float(hi - lo) * 0.51 + 2.3e-16 * abs(mid)
            self._cache[key] = (mids, rads)
        return self._cache[key]

    def dual_sign(self, i, v):
        """Exact sign of eigenplane functional i at the integer vector v."""
        g = _combo_poly(self.duals[i], v)
        return sign_at_root(g, self.chi, *self.intervals[i])

    def contains(self, v):
        """Exact strict-interior test for an integer vector."""
        return all(self.dual_sign(i, v) > 0 for i in range(3))

    def interior_mask(self, pts):
        """Boolean mask of strict interiority for an (n, 3) integer array.

        Float evaluations decide points whose distance from every eigenplane
        exceeds a rigorous error bound; the rest are resolved exactly.
        """
        mids, rads = self._float_duals()
        a = pts.astype(np.float64)
        aa = np.abs(a)
        inside = np.ones(len(pts), dtype=bool)
        uncertain = np.zeros(len(pts), dtype=bool)
        for i in range(3):
            val = a @ mids[i]
            err = aa @ rads[i] + 6e-15 * (aa @ np.abs(mids[i])) + 1e-307
            inside &= val > err
            uncertain |= np.abs(val) <= err
        for idx in np.nonzero(uncertain)[0]:
            inside[idx] = self.contains(tuple(int(x) for x in pts[idx]))
        return inside

    def float_coordinates(self, v):
        """Approximate eigenplane coordinates of v (positive inside the cone)."""
        mids, _ = self._float_duals()
        return mids @ np.asarray(v, dtype=np.float64)


def eigen_cone(c):
    """The open eigen-cone of a hyperbolic matrix containing (0, 0, 1).

    Integer points never lie on an eigenplane when chi is irreducible (a
    rational point on a wall would span a proper invariant subspace), so the
    chosen cone is always well defined.
    """
    if not isinstance(c, IntMat) or c.dim != 3:
        raise ValueError("need a 3x3 integer matrix")
    if not is_hyperbolic(c):
        raise ValueError("matrix must be hyperbolic: irreducible chi with three real roots")
    chi = (1,) + char_cubic(c).monic()
    intervals = list(isolate_real_roots(chi))
    assert len(intervals) == 3
    adj = _char_adjugate(c)
    row = next(r for r in adj if any(poly_strip(p) for p in r))
    cidx = next(j for j in range(3) if any(poly_strip(adj[i][j]) for i in range(3)))
    col = tuple(adj[i][cidx] for i in range(3))
    # Nonsingular coefficient matrix of the dual row: no integer point on a wall.
    coeff = [list(reversed(p)) + [0] * (3 - len(p)) for p in row]
    assert det_exact(coeff) != 0, "eigenplane contains a lattice vector"
    duals = []
    rays = []
    for i in range(3):
        s = sign_at_root(row[2], chi, *intervals[i])
        assert s != 0
        dual = tuple(poly_scale(p, s) for p in row)
        pairing = ()
        for p, q in zip(dual, col):
            pairing = poly_add(pairing, poly_mul(p, q))
        t = sign_at_root(pairing, chi, *intervals[i])
        assert t != 0
        duals.append(dual)
        rays.append(tuple(poly_scale(p, t) for p in col))
    cone = EigenCone(c=c, chi=chi, intervals=intervals,
                     duals=tuple(duals), rays=tuple(rays))
    cone.refine(ROOT_WIDTH)
    return cone


@dataclass(frozen=True)
class Face:
    """A certified sail face: the full polygon cut by its lattice plane."""

    normal: tuple
    offset: int
    vertices: tuple
    area2: int

    @property
    def vcount(self):
        return len(self.vertices)

    def key(self):
        return (self.normal, self.offset, self.vertices)


@dataclass(eq=False)
class SailComplex:
    """Certified faces of a sail discovered within an enumeration radius."""

    cone: EigenCone
    radius: int
    faces: tuple
    vertices: tuple
    edges: tuple

    def face_keys(self):
        return frozenset(f.key() for f in self.faces)


def _box_slices(bound):
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    yz = np.stack(np.meshgrid(rng, rng, indexing="ij"), axis=-1).reshape(-1, 2)
    for x0 in rng:
        pts = np.empty((len(yz), 3), dtype=np.int64)
        pts[:, 0] = x0
        pts[:, 1:] = yz
        yield pts


def _cone_points(cone, bound):
    found = []
    for pts in _box_slices(bound):
        mask = cone.interior_mask(pts)
        if mask.any():
            found.append(pts[mask])
    if not found:
        return np.empty((0, 3), dtype=np.int64)
    return np.vstack(found)


def _gcd3(a, b, c):
    return math.gcd(math.gcd(abs(a), abs(b)), abs(c))


def _positive_pairing_bound(cone, combo, i):
    # Exact positive lower bound of the pairing at root i (sign certified).
    for _ in range(60):
        lo, hi = interval_eval(combo, *cone.intervals[i])
        if lo > 0:
            return lo, hi
        cone.refine(cone.width() / 4)
    raise AssertionError("positive pairing failed to separate from zero")


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _convex_polygon(points, normal):
    """Cyclic vertex order of the 2D convex hull of coplanar lattice points.

    Collinear interior points are dropped; the cycle is oriented so that the
    doubled lattice area against ``normal`` comes out positive.
    """
    k = max(range(3), key=lambda t: abs(normal[t]))
    a, b = (k + 1) % 3, (k + 2) % 3
    flat = {}
    for p in points:
        key = (p[a], p[b])
        assert key not in flat
        flat[key] = p
    pts2 = sorted(flat)
    if len(pts2) < 3:
        return None, 0

    def half(seq):
        hull = []
        for p in seq:
            while len(hull) >= 2:
                o, q = hull[-2], hull[-1]
                turn = (q[0] - o[0]) * (p[1] - o[1]) - (q[1] - o[1]) * (p[0] - o[0])
                if turn <= 0:
                    hull.pop()
                else:
                    break
            hull.append(p)
        return hull

    lower = half(pts2)
    upper = half(list(reversed(pts2)))
    cycle2 = lower[:-1] + upper[:-1]
    if len(cycle2) < 3:
        return None, 0
    cycle = [flat[p] for p in cycle2]
    nn = sum(x * x for x in normal)
    total = 0
    base = cycle[0]
    for u, v in zip(cycle[1:], cycle[2:]):
        cr = _cross(tuple(x - y for x, y in zip(u, base)),
                    tuple(x - y for x, y in zip(v, base)))
        dot = sum(x * y for x, y in zip(cr, normal))
        assert dot % nn == 0
        m = dot // nn
        assert all(x == m * y for x, y in zip(cr, normal))
        total += m
    assert total != 0
    if total < 0:
        cycle.reverse()
        total = -total
    start = min(range(len(cycle)), key=lambda t: cycle[t])
    cycle = cycle[start:] + cycle[:start]
    return tuple(cycle), total


def _certify_face(cone, normal, offset, box_cap=FACE_BOX_CAP):
    """Certify a candidate sail plane globally and cut its full polygon.

    Returns a Face when no cone lattice point lies strictly below the plane
    anywhere (not just within the discovery radius); None when the plane is
    a truncation artifact or its certification box exceeds ``box_cap``.
    """
    combos = []
    for i in range(3):
        combo = poly_mod(_combo_poly(cone.rays[i], normal), cone.chi)
        if sign_at_root(combo, cone.chi, *cone.intervals[i]) <= 0:
            return None
        combos.append(combo)
    corner = Fraction(0)
    for i in range(3):
        plo, _ = _positive_pairing_bound(cone, combos[i], i)
        coords = [interval_eval(p, *cone.intervals[i]) for p in cone.rays[i]]
        top = max(max(abs(lo), abs(hi)) for lo, hi in coords)
        corner = max(corner, Fraction(offset) * top / plo)
    bound = int(corner) + 2
    if bound > box_cap:
        return None
    nvec = np.asarray(normal, dtype=np.int64)
    plane_pts = []
    for pts in _box_slices(bound):
        w = pts @ nvec
        near = (w >= 1) & (w <= offset)
        if not near.any():
            continue
        pts = pts[near]
        w = w[near]
        mask = cone.interior_mask(pts)
        if (mask & (w < offset)).any():
            return None
        on = mask & (w == offset)
        if on.any():
            plane_pts.extend(tuple(int(x) for x in p) for p in pts[on])
    cycle, area2 = _convex_polygon(plane_pts, normal)
    if cycle is None:
        return None
    return Face(normal=tuple(int(x) for x in normal), offset=int(offset),
                vertices=cycle, area2=area2)


def compute_sail(cone, radius):
    """Certified sail faces discovered from lattice points within ``radius``.

    Candidate planes come from the convex hull of the enumerated points; each
    kept face is re-certified exactly against the whole cone, so its polygon
    and area do not depend on the radius.  Faces already certified at a
    smaller radius are certified again at any larger one.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    pts = _cone_points(cone, radius)
    if len(pts) == 0:
        raise RuntimeError(
            "no lattice point in the cone within radius %d; increase radius" % radius)
    empty = SailComplex(cone=cone, radius=radius, faces=(), vertices=(), edges=())
    if len(pts) < 4:
        return empty
    try:
        hull = ConvexHull(pts.astype(np.float64))
    except QhullError:
        return empty
    seen = set()
    faces = []
    for simplex in hull.simplices:
        p0, p1, p2 = (pts[k] for k in simplex)
        n = tuple(int(x) for x in np.cross(p1 - p0, p2 - p0))
        if n == (0, 0, 0):
            continue
        d = int(n[0] * p0[0] + n[1] * p0[1] + n[2] * p0[2])
        if d < 0:
            n, d = tuple(-x for x in n), -d
        if d == 0:
            continue
        g = _gcd3(*n)
        n = tuple(x // g for x in n)
        assert d % g == 0
        d //= g
        if (n, d) in seen:
            continue
        seen.add((n, d))
        if int((pts @ np.asarray(n, dtype=np.int64)).min()) != d:
            continue
        if (n, d) not in cone.face_cache:
            cone.face_cache[(n, d)] = _certify_face(cone, n, d)
        face = cone.face_cache[(n, d)]
        if face is not None:
            faces.append(face)
    faces = sorted(set(faces), key=lambda f: (f.offset, f.normal, f.vertices))
    vertices = sorted({v for f in faces for v in f.vertices})
    edges = set()
    for f in faces:
        ring = f.vertices
        for u, v in zip(ring, ring[1:] + ring[:1]):
            edges.add((u, v) if u < v else (v, u))
    return SailComplex(cone=cone, radius=radius, faces=tuple(faces),
                       vertices=tuple(vertices), edges=tuple(sorted(edges)))


def _mat_power(m, k):
    if k >= 0:
        return m ** k
    inv = IntMat(inverse_unimodular([list(r) for r in m.rows]))
    return inv ** (-k)


def _commutant_coords(basis, m):
    rows = [list(x.flat()) for x in basis.members()]
    coords = coords_in_basis(rows, list(m.flat()))
    assert coords is not None and all(f.denominator == 1 for f in coords)
    return tuple(int(f) for f in coords)


@dataclass(eq=False)
class DirichletGroup:
    """Two generators of the totally positive unit group of the commutant."""

    c: IntMat
    basis: object
    g1: IntMat
    g2: IntMat
    log1: tuple
    log2: tuple
    certified: bool
    box: int
    chi: tuple
    intervals: list
    fa: tuple
    fb: tuple
    _tcache: dict = field(default_factory=dict, repr=False)

    def translate(self, t1, t2):
        key = (t1, t2)
        if key not in self._tcache:
            self._tcache[key] = _mat_power(self.g1, t1) @ _mat_power(self.g2, t2)
        return self._tcache[key]

    def log_vector(self, m):
        coords = _commutant_coords(self.basis, m)
        return _unit_log(self, coords)

    def member_exponents(self, u):
        """Exact exponents (a, b) with u == g1^a @ g2^b, or None."""
        lu = self.log_vector(u)
        a, b = _solve_cell(self.log1, self.log2, lu)
        a, b = round(a), round(b)
        if self.translate(a, b) == u:
            return (a, b)
        return None


def _eig_poly(coords, fa, fb):
    p, q, r = coords
    return poly_strip((q * fa[0] + r * fb[0],
                       q * fa[1] + r * fb[1],
                       p + q * fa[2] + r * fb[2]))


def _positive_enclosure(state, lam, i):
    for _ in range(60):
        lo, hi = interval_eval(lam, *state.intervals[i])
        if lo > 0:
            return lo, hi
        width = max(h - l for l, h in state.intervals) / 4
        state.intervals[:] = [refine_interval(state.chi, l, h, width)
                              for l, h in state.intervals]
    raise AssertionError("positive eigenvalue failed to separate from zero")


def _unit_log(state, coords):
    lam = _eig_poly(coords, state.fa, state.fb)
    out = []
    for i in range(2):
        lo, hi = _positive_enclosure(state, lam, i)
        out.append(math.log(float((lo + hi) / 2)))
    return tuple(out)


def _log_intervals(state, coords):
    lam = _eig_poly(coords, state.fa, state.fb)
    out = []
    for i in range(2):
        lo, hi = _positive_enclosure(state, lam, i)
        llo = math.log(float(lo))
        lhi = math.log(float(hi))
        pad = 1e-9 + 1e-12 * max(abs(llo), abs(lhi))
        out.append((llo - pad, lhi + pad))
    return out


def _solve_cell(l1, l2, w):
    det = l1[0] * l2[1] - l1[1] * l2[0]
    a = (w[0] * l2[1] - w[1] * l2[0]) / det
    b = (l1[0] * w[1] - l1[1] * w[0]) / det
    return a, b


def _unit_pool(form, box):
    from .forms import MONOMIAL_EXPONENTS, MONOMIALS

    coeffs = form.coeffs
    total = sum(abs(c) for c in coeffs)
    assert total * max(1, box) ** 3 < 2**62
    rng = np.arange(-box, box + 1, dtype=np.int64)
    pts = np.stack(np.meshgrid(rng, rng, rng, indexing="ij"), axis=-1).reshape(-1, 3)
    val = np.zeros(len(pts), dtype=np.int64)
    for name, coeff in zip(MONOMIALS, coeffs):
        if coeff == 0:
            continue
        ex, ey, ez = MONOMIAL_EXPONENTS[name]
        val += coeff * pts[:, 0] ** ex * pts[:, 1] ** ey * pts[:, 2] ** ez
    hits = pts[np.abs(val) == 1]
    out = [tuple(int(x) for x in row) for row in hits]
    out.sort(key=lambda t: (max(abs(x) for x in t), t))
    return out


class _GroupState:
    # Mutable scratch shared by the unit-group construction helpers.
    def __init__(self, basis, chi, intervals, fa, fb):
        self.basis = basis
        self.chi = chi
        self.intervals = intervals
        self.fa = fa
        self.fb = fb


def _unit_matrix(basis, coords):
    p, q, r = coords
    return basis.e * p + basis.a * q + basis.b * r


def _norm_inf(v):
    return max(abs(x) for x in v)


def _reduce_pair(state, gens):
    # Lagrange reduction of the generator pair, matrices kept in sync.
    while True:
        (m1, l1), (m2, l2) = gens
        if l1[0] ** 2 + l1[1] ** 2 > l2[0] ** 2 + l2[1] ** 2:
            gens.reverse()
            continue
        k = round((l1[0] * l2[0] + l1[1] * l2[1]) / (l1[0] ** 2 + l1[1] ** 2))
        if k == 0:
            return
        m2 = m2 @ _mat_power(m1, -k)
        l2 = _unit_log(state, _commutant_coords(state.basis, m2))
        gens[1] = (m2, l2)


def _absorb(state, gens, u, lu):
    e = IntMat.identity(3)
    if u == e:
        return
    if not gens:
        assert _norm_inf(lu) > 1e-9
        gens.append((u, lu))
        return
    if len(gens) == 1:
        m1, l1 = gens[0]
        det = l1[0] * lu[1] - l1[1] * lu[0]
        if abs(det) > 1e-9 * (_norm_inf(l1) * _norm_inf(lu) + 1):
            gens.append((u, lu))
            _reduce_pair(state, gens)
            return
        # Collinear logs: run a one-dimensional euclidean reduction.
        big, small = (u, lu), (m1, l1)
        if _norm_inf(big[1]) < _norm_inf(small[1]):
            big, small = small, big
        while True:
            dot = big[1][0] * small[1][0] + big[1][1] * small[1][1]
            k = round(dot / (small[1][0] ** 2 + small[1][1] ** 2))
            m = big[0] @ _mat_power(small[0], -k)
            if m == e:
                gens[0] = small
                return
            lm = _unit_log(state, _commutant_coords(state.basis, m))
            big, small = small, (m, lm)
            if _norm_inf(big[1]) < _norm_inf(small[1]):
                big, small = small, big
    (m1, l1), (m2, l2) = gens
    a, b = _solve_cell(l1, l2, lu)
    a, b = round(a), round(b)
    w = u @ _mat_power(m1, -a) @ _mat_power(m2, -b)
    if w == e:
        return
    wc = _commutant_coords(state.basis, w)
    lw = _unit_log(state, wc)
    from .zlinalg import hnf_with_transform

    for m in range(2, 65):
        ta, tb = _solve_cell(l1, l2, (m * lw[0], m * lw[1]))
        ta, tb = round(ta), round(tb)
        if _mat_power(w, m) == _mat_power(m1, ta) @ _mat_power(m2, tb):
            h, trans, rank = hnf_with_transform([[m, 0], [0, m], [ta, tb]])
            assert rank == 2
            new = []
            for k in range(2):
                exps = trans[k]
                mat = (_mat_power(m1, exps[0]) @ _mat_power(m2, exps[1])
                       @ _mat_power(w, exps[2]))
                lk = _unit_log(state, _commutant_coords(state.basis, mat))
                new.append((mat, lk))
            gens[:] = new
            _reduce_pair(state, gens)
            return
    raise AssertionError("unit group index search exhausted")


def dirichlet_generators(c, boxes=UNIT_BOXES):
    """Two multiplicatively independent totally positive units from the
    commutant of ``c``, reduced and (when possible) certified complete.

    ``certified`` means: every totally positive unit whose eigenvalue logs
    fit in the covering radius of the returned pair had coordinates inside
    the searched box, so the pair generates the whole positive unit group.
    """
    if not is_hyperbolic(c):
        raise ValueError("matrix must be hyperbolic")
    basis = commutant_basis(c)
    chi = (1,) + char_cubic(c).monic()
    intervals = [tuple(p) for p in isolate_real_roots(chi)]
    intervals = [refine_interval(chi, lo, hi, ROOT_WIDTH) for lo, hi in intervals]
    fa = express_in_powers(c, basis.a)
    fb = express_in_powers(c, basis.b)
    state = _GroupState(basis, chi, list(intervals), fa, fb)
    form = det_form(basis.members())
    result = None
    for box in boxes:
        pool = []
        for coords in _unit_pool(form, box):
            if coords == (1, 0, 0) or coords == (-1, 0, 0):
                continue
            lam = _eig_poly(coords, fa, fb)
            if all(sign_at_root(lam, chi, *state.intervals[i]) > 0 for i in range(3)):
                u = _unit_matrix(basis, coords)
                assert u.det() == 1
                pool.append((coords, _unit_log(state, coords)))
        pool.sort(key=lambda item: (_norm_inf(item[1]), item[0]))
        gens = []
        for coords, lu in pool:
            _absorb(state, gens, _unit_matrix(basis, coords), lu)
        if len(gens) < 2:
            continue
        _reduce_pair(state, gens)
        (m1, l1), (m2, l2) = gens
        # Deterministic orientation of each generator.
        if l1[0] < 0:
            m1 = _mat_power(m1, -1)
            l1 = (-l1[0], -l1[1])
        if l2[1] < 0:
            m2 = _mat_power(m2, -1)
            l2 = (-l2[0], -l2[1])
        s = np.array([[1.0, _f(fa, i, state), _f(fb, i, state)] for i in range(3)])
        ninf = float(np.abs(np.linalg.inv(s)).sum(axis=1).max())
        t_cap = math.log(0.98 * box / ninf) if 0.98 * box > ninf else -1.0
        certified = t_cap > 0 and (_norm_inf(l1) + _norm_inf(l2)) <= 2 * t_cap
        result = DirichletGroup(
            c=c, basis=basis, g1=m1, g2=m2, log1=l1, log2=l2,
            certified=certified, box=box, chi=chi,
            intervals=state.intervals, fa=fa, fb=fb)
        if certified:
            break
    if result is None:
        raise RuntimeError(
            "fewer than two independent positive units found with "
            "coordinates up to %d" % boxes[-1])
    _assert_independent(state, result)
    return result


def _f(poly3, i, state):
    lo, hi = interval_eval(poly3, *state.intervals[i])
    return float((lo + hi) / 2)


def _assert_independent(state, group):
    # Certified interval check that the generator logs span a rank-2 lattice.
    for _ in range(6):
        i1 = _log_intervals(state, _commutant_coords(state.basis, group.g1))
        i2 = _log_intervals(state, _commutant_coords(state.basis, group.g2))

        def mul(x, y):
            vals = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
            return (min(vals), max(vals))

        p1 = mul(i1[0], i2[1])
        p2 = mul(i1[1], i2[0])
        dlo, dhi = p1[0] - p2[1], p1[1] - p2[0]
        if dlo > 0 or dhi < 0:
            return
        width = max(h - l for l, h in state.intervals) / 16
        state.intervals[:] = [refine_interval(state.chi, l, h, width)
                              for l, h in state.intervals]
    raise AssertionError("generator logs not separated from dependence")


@dataclass(frozen=True)
class TorusInvariant:
    """Orbit counts and face profile of the sail torus decomposition."""

    vertex_orbits: int
    edge_orbits: int
    face_orbits: int
    face_profile: tuple
    group_certified: bool
    radius: int

    def key(self):
        return (self.vertex_orbits, self.edge_orbits, self.face_orbits,
                self.face_profile)


def _log_anchor(cone, points):
    total = tuple(sum(p[k] for p in points) for k in range(3))
    y = cone.float_coordinates(total)
    assert (y > 0).all()
    return (math.log(y[0]), math.log(y[1]))


def _cell_candidates(x):
    f = math.floor(x)
    fr = x - f
    if fr < CELL_BAND:
        return (f, f - 1)
    if fr > 1 - CELL_BAND:
        return (f, f + 1)
    return (f,)


def _canonical(cone, group, points, build):
    """Minimal group translate of a sail element, as an exact key.

    The anchor's eigen-coordinate logs are reduced into the fundamental cell
    of the generator log lattice; near-boundary anchors consider both
    neighboring cells so that all members of an orbit agree on the key.
    """
    w = _log_anchor(cone, points)
    a, b = _solve_cell(group.log1, group.log2, w)
    best = None
    for fa in _cell_candidates(a):
        for fb in _cell_candidates(b):
            t = group.translate(-fa, -fb)
            moved = [t.apply(p) for p in points]
            key = build(moved)
            if best is None or key < best:
                best = key
    return best


def _vertex_key(moved):
    return tuple(moved[0])


def _edge_key(moved):
    pair = sorted(tuple(p) for p in moved)
    return tuple(pair)


def _face_key(moved):
    cycle = [tuple(p) for p in moved]
    start = min(range(len(cycle)), key=lambda t: cycle[t])
    return tuple(cycle[start:] + cycle[:start])


def torus_invariants(sail, group):
    """Orbit counts of the sail under the positive unit group.

    Requires the discovered faces to close up into a torus in the quotient:
    every edge orbit must carry exactly two face incidences, the quotient
    complex must be connected, and its Euler characteristic must vanish.
    """
    if not sail.faces:
        raise CoverageError(
            "no certified faces at radius %d; increase radius" % sail.radius)
    cone = sail.cone
    faces = {}
    for f in sail.faces:
        ck = _canonical(cone, group, list(f.vertices), _face_key)
        faces.setdefault(ck, f)
    edge_keys = {e: _canonical(cone, group, [e[0], e[1]], _edge_key)
                 for e in sail.edges}
    vertex_keys = {v: _canonical(cone, group, [v], _vertex_key)
                   for v in sail.vertices}
    incidence = Counter()
    adjacency = {ck: set() for ck in faces}
    edge_to_faces = {}
    for ck in faces:
        ring = ck
        for u, v in zip(ring, ring[1:] + ring[:1]):
            ek = _canonical(cone, group, [u, v], _edge_key)
            incidence[ek] += 1
            edge_to_faces.setdefault(ek, set()).add(ck)
    bad = {ek: n for ek, n in incidence.items() if n != 2}
    if bad:
        raise CoverageError(
            "fundamental domain not covered at radius %d: %d edge orbits "
            "without two incident faces; increase radius"
            % (sail.radius, len(bad)))
    if set(incidence) != set(edge_keys.values()):
        raise CoverageError(
            "fundamental domain not covered at radius %d: face and edge "
            "orbit sets disagree; increase radius" % sail.radius)
    corner_keys = set()
    for ck in faces:
        for v in ck:
            corner_keys.add(_canonical(cone, group, [v], _vertex_key))
    if corner_keys != set(vertex_keys.values()):
        raise CoverageError(
            "fundamental domain not covered at radius %d: face corners and "
            "vertex orbits disagree; increase radius" % sail.radius)
    v_n, e_n, f_n = len(corner_keys), len(incidence), len(faces)
    if v_n - e_n + f_n != 0:
        raise CoverageError(
            "fundamental domain not covered at radius %d: Euler "
            "characteristic %d != 0; increase radius"
            % (sail.radius, v_n - e_n + f_n))
    for ek, fs in edge_to_faces.items():
        for ck in fs:
            adjacency[ck].update(fs - {ck})
    seen = set()
    stack = [next(iter(faces))]
    while stack:
        ck = stack.pop()
        if ck in seen:
            continue
        seen.add(ck)
        stack.extend(adjacency[ck] - seen)
    assert len(seen) == len(faces), "quotient face complex is disconnected"
    profile = tuple(sorted((len(ck), faces[ck].area2) for ck in faces))
    return TorusInvariant(
        vertex_orbits=v_n, edge_orbits=e_n, face_orbits=f_n,
        face_profile=profile, group_certified=group.certified,
        radius=sail.radius)


def torus_invariant_for(c, radius_ladder=RADIUS_LADDER):
    """Full pipeline: cone, units, and sail orbits with radius escalation."""
    cone = eigen_cone(c)
    group = dirichlet_generators(c)
    last = None
    for radius in radius_ladder:
        try:
            sail = compute_sail(cone, radius)
            return torus_invariants(sail, group)
        except (CoverageError, RuntimeError) as exc:
            last = exc
    raise RuntimeError(
        "torus invariants not resolved up to radius %d (%s)"
        % (radius_ladder[-1], last))


def invariant_distinguish(c1, c2):
    """"distinct" when the torus invariants differ (sound for inequivalence);
    "indistinguishable" otherwise (no equivalence claim)."""
    a = torus_invariant_for(c1)
    b = torus_invariant_for(c2)
    return "distinct" if a.key() != b.key() else "indistinguishable"


def sail_svg(sail, group):
    """Static SVG of the quotient faces and their generator translates,
    drawn in the log chart u = ln(y1/y3), v = ln(y2/y3)."""
    cone = sail.cone

    def chart(v):
        y = cone.float_coordinates(v)
        return (math.log(y[0] / y[2]), math.log(y[1] / y[2]))

    shifts = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
    polys = []
    for fi, f in enumerate(sail.faces):
        for (a, b) in shifts:
            t = group.translate(a, b)
            pts = [chart(t.apply(v)) for v in f.vertices]
            polys.append((fi, a == 0 and b == 0, pts))
    xs = [p[0] for _, _, ps in polys for p in ps]
    ys = [p[1] for _, _, ps in polys for p in ps]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    scale = 640.0 / span
    pad = 20.0

    def pix(p):
        return ((p[0] - x0) * scale + pad, (y1 - p[1]) * scale + pad)

    width = (x1 - x0) * scale + 2 * pad
    height = (y1 - y0) * scale + 2 * pad
    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="%.0f" height="%.0f" '
           'viewBox="0 0 %.0f %.0f">' % (width, height, width, height)]
    for fi, central, pts in polys:
        hue = (fi * 67) % 360
        fill = "hsl(%d, 60%%, %d%%)" % (hue, 55 if central else 85)
        coords = " ".join("%.2f,%.2f" % pix(p) for p in pts)
        out.append('<polygon points="%s" fill="%s" stroke="#333" '
                   'stroke-width="1"/>' % (coords, fill))
    out.append("</svg>")
    return "\n".join(out)
