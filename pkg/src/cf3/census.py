"""Enumerate integer matrices by entry norm and count irreducible/hyperbolic ones.

The norm of a matrix is the sum of the absolute values of its entries, so
enumerating matrices of norm n means walking the L1 sphere of radius n in
Z^(k*k).  The walk is a deterministic generator: entries are produced in
lexicographic order with the per-entry value order 0, -1, 1, -2, 2, ...
(negatives before positives at equal absolute value), which keeps streams
reproducible for golden tests.

A matrix is counted as irreducible ("M") when its characteristic polynomial
has no rational root, and as hyperbolic ("H") when additionally all
eigenvalues are real; irreducibility forces them distinct.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intmat import IntMat, char_cubic, char_quad
from .parallel import parallel_map_chunked

DEFAULT_NORM_CAP = 7

REDUCIBLE = "reducible"
M_ONLY = "M"
HYPERBOLIC = "H"


def _entry_values(cap):
    yield 0
    for a in range(1, cap + 1):
        yield -a
        yield a


def vectors_with_norm(length, n):
    """All integer vectors of the given L1 norm, in canonical order."""
    if length == 1:
        if n == 0:
            yield (0,)
        else:
            yield (-n,)
            yield (n,)
        return
    for v in _entry_values(n):
        for rest in vectors_with_norm(length - 1, n - abs(v)):
            yield (v,) + rest


def sphere_size(length, n):
    """Closed-form count of integer vectors with L1 norm exactly n."""
    if n == 0:
        return 1
    from math import comb
    return sum(comb(length, j) * comb(n - 1, j - 1) * 2 ** j
               for j in range(1, min(length, n) + 1))


def matrix_from_flat(flat):
    k = 2 if len(flat) == 4 else 3
    return IntMat(tuple(flat[i * k:(i + 1) * k] for i in range(k)))


def enumerate_norm(dim, n):
    """Every dim x dim integer matrix of norm exactly n, each exactly once."""
    if dim not in (2, 3):
        raise ValueError("dim must be 2 or 3")
    if n < 0:
        raise ValueError("norm must be nonnegative")
    for flat in vectors_with_norm(dim * dim, n):
        yield matrix_from_flat(flat)


def classify_matrix(m):
    """One of "reducible", "M" (irreducible, complex pair), "H" (hyperbolic)."""
    c = char_quad(m) if m.dim == 2 else char_cubic(m)
    if not c.is_irreducible():
        return REDUCIBLE
    return HYPERBOLIC if c.is_real_rooted() else M_ONLY


def _count_chunk(flats):
    cm = ch = 0
    for flat in flats:
        tag = classify_matrix(matrix_from_flat(flat))
        if tag != REDUCIBLE:
            cm += 1
            if tag == HYPERBOLIC:
                ch += 1
    return [(cm, ch)]


@dataclass(frozen=True)
class CensusReport:
    dim: int
    norm: int
    total: int
    count_m: int
    count_h: int

    def __post_init__(self):
        assert 0 <= self.count_h <= self.count_m <= self.total


def census(n, dim=3, cap=DEFAULT_NORM_CAP, workers=1):
    """Counts of irreducible and hyperbolic matrices at norm exactly n.

    The cap guards against accidental huge runs (the norm-8 sphere in Z^9
    already has ~1.7 million points); raise it explicitly to go further.
    """
    if n > cap:
        raise ValueError(
            "norm %d exceeds the census cap %d; pass cap=%d (or larger) to "
            "run this size deliberately" % (n, cap, n))
    flats = list(vectors_with_norm(dim * dim, n))
    counts = parallel_map_chunked(_count_chunk, flats, workers=workers, chunk_size=2048)
    cm = sum(c[0] for c in counts)
    ch = sum(c[1] for c in counts)
    return CensusReport(dim=dim, norm=n, total=len(flats), count_m=cm, count_h=ch)


def census_records(dim, n):
    """Stream of (matrix, class tag) pairs in canonical enumeration order."""
    for m in enumerate_norm(dim, n):
        yield m, classify_matrix(m)


def matrices_in_class(dim, n, tags):
    """Matrices of norm n whose class tag lies in ``tags``, canonical order."""
    return [m for m, tag in census_records(dim, n) if tag in tags]
