"""The polynomial forms whose unit values decide conjugation questions.

Three shapes appear:

* a binary quadratic q2(A) for 2x2 matrices, built from the off-diagonal
  entries and the diagonal difference, normalized by their gcd;
* a binary cubic p_bar(m, n) built from the characteristic coefficients of a
  commutant basis element A and the rationals (alpha, beta) expressing the
  third basis element in powers of A;
* a ternary cubic p_tilde(x, y, z) whose coefficients are antisymmetrized
  2x2 "bracket" products between A and its adjugate.

q3 multiplies the last two into the five-variable product form; its unit
values (over integer points) characterize Frobenius-type 3x3 matrices.  The
product must have integer coefficients; a violation is an internal error,
not bad input.

The bracket table for p_tilde is generated from three seed monomial groups
by the cyclic substitution x -> y -> z -> x (indices 1 -> 2 -> 3 -> 1),
which the coefficient groups respect; the xyz group is the one exception and
is stored explicitly with its tripled term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .commutant import commutant_basis
from .intmat import IntMat, adjugate, char_cubic, is_irreducible


class IntegralityError(ArithmeticError):
    """The five-variable product came out non-integer: a convention bug."""


@dataclass(frozen=True)
class BinaryQF:
    """p*x^2 + q*x*y + r*y^2 with integer coefficients."""

    p: int
    q: int
    r: int

    def as_tuple(self):
        return (self.p, self.q, self.r)

    def evaluate(self, x, y):
        return self.p * x * x + self.q * x * y + self.r * y * y

    def discriminant(self):
        return self.q * self.q - 4 * self.p * self.r

    def content(self):
        return gcd(gcd(abs(self.p), abs(self.q)), abs(self.r))


def q2(a):
    """The gcd-normalized quadratic (a12, a22 - a11, -a21) of a 2x2 matrix."""
    if a.dim != 2:
        raise ValueError("q2 needs a 2x2 matrix")
    if not is_irreducible(a):
        raise ValueError("q2 needs an irreducible characteristic polynomial")
    a11, a12 = a.rows[0]
    a21, a22 = a.rows[1]
    g = gcd(gcd(abs(a12), abs(a21)), abs(a22 - a11))
    # irreducibility forces a12 != 0 (and a21 != 0), so g > 0
    return BinaryQF(a12 // g, (a22 - a11) // g, -a21 // g)


def _primitive_scaled(coeffs):
    """Scale rational coefficients to a primitive integer tuple.

    Returns (ints, scale) with scale * coeffs == ints, content(ints) == 1,
    and the first nonzero entry positive.  The scale is the unique positive
    rational doing this, up to the sign flip for the leading coefficient.
    """
    coeffs = tuple(Fraction(c) for c in coeffs)
    if all(c == 0 for c in coeffs):
        raise ValueError("cannot normalize the zero form")
    denom = lcm(*[c.denominator for c in coeffs])
    ints = [int(c * denom) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    scale = Fraction(denom, g)
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
        scale = -scale
    return tuple(ints), scale


@dataclass(frozen=True)
class BinaryCubicForm:
    """c30*m^3 + c21*m^2*n + c12*m*n^2 + c03*n^3 with exact rational coefficients."""

    c30: Fraction
    c21: Fraction
    c12: Fraction
    c03: Fraction

    def as_tuple(self):
        return (self.c30, self.c21, self.c12, self.c03)

    def evaluate(self, m, n):
        return (self.c30 * m ** 3 + self.c21 * m ** 2 * n
                + self.c12 * m * n ** 2 + self.c03 * n ** 3)

    def clearing_scalar(self):
        """Positive lcm of the coefficient denominators."""
        return lcm(*[Fraction(c).denominator for c in self.as_tuple()])

    def cleared(self):
        """Integer coefficients after multiplying by the clearing scalar."""
        s = self.clearing_scalar()
        return tuple(int(Fraction(c) * s) for c in self.as_tuple())

    def primitive(self):
        return _primitive_scaled(self.as_tuple())


def p_bar(chi, alpha, beta):
    """The binary cubic attached to chi_A and B = alpha*A^2 + beta*A + gamma*E.

    gamma does not enter: it shifts B by a multiple of E, which only
    translates the roots of the form, and the stated coefficients are
    exactly those of the translated product over the eigenvalues.
    """
    a1, a2, a3 = chi.as_tuple()
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    c30 = Fraction(1)
    c21 = 2 * a1 * alpha + 3 * beta
    c12 = (a2 + a1 * a1) * alpha * alpha + 4 * a1 * alpha * beta + 3 * beta * beta
    c03 = ((a1 * a2 - a3) * alpha ** 3 + (a2 + a1 * a1) * alpha * alpha * beta
           + 2 * a1 * alpha * beta * beta + beta ** 3)
    return BinaryCubicForm(c30, c21, c12, c03)


def bracket(a, b, ij, kl):
    """a_ij * b_kl - a_kl * b_ij with 1-based index pairs."""
    i, j = ij
    k, l = kl
    for idx in (i, j, k, l):
        if not 1 <= idx <= 3:
            raise ValueError("bracket indices must be in 1..3")
    return (a.rows[i - 1][j - 1] * b.rows[k - 1][l - 1]
            - a.rows[k - 1][l - 1] * b.rows[i - 1][j - 1])


MONOMIALS = ("x3", "y3", "z3", "x2y", "xy2", "x2z", "xz2", "y2z", "yz2", "xyz")

MONOMIAL_EXPONENTS = {
    "x3": (3, 0, 0), "y3": (0, 3, 0), "z3": (0, 0, 3),
    "x2y": (2, 1, 0), "xy2": (1, 2, 0), "x2z": (2, 0, 1),
    "xz2": (1, 0, 2), "y2z": (0, 2, 1), "yz2": (0, 1, 2),
    "xyz": (1, 1, 1),
}


def _cycle_pair(pair):
    # index substitution 1 -> 2 -> 3 -> 1 on one (i, j) pair
    i, j = pair
    return (i % 3 + 1, j % 3 + 1)


def _cycle_group(group):
    return tuple((_cycle_pair(ij), _cycle_pair(kl), mult) for ij, kl, mult in group)


def _build_p_tilde_table():
    seeds = {
        "x3": (((1, 2), (1, 3), 1),),
        "x2y": (((1, 3), (1, 1), 1), ((2, 2), (1, 3), 1), ((1, 2), (2, 3), 1)),
        "xy2": (((2, 2), (2, 3), 1), ((2, 3), (1, 1), 1), ((1, 3), (2, 1), 1)),
    }
    # the cyclic substitution sends x3 -> y3 -> z3, x2y -> y2z -> xz2,
    # and xy2 -> yz2 -> x2z
    table = {}
    for seed, orbit in (("x3", ("y3", "z3")),
                        ("x2y", ("y2z", "xz2")),
                        ("xy2", ("yz2", "x2z"))):
        group = seeds[seed]
        table[seed] = group
        for name in orbit:
            group = _cycle_group(group)
            table[name] = group
    table["xyz"] = (((1, 1), (2, 2), 1), ((2, 2), (3, 3), 1), ((3, 3), (1, 1), 1),
                    ((1, 3), (3, 1), 3))
    return table


P_TILDE_TABLE = _build_p_tilde_table()


@dataclass(frozen=True)
class TernaryCubicForm:
    """Ten integer coefficients in the monomial order of MONOMIALS."""

    coeffs: tuple

    def __post_init__(self):
        assert len(self.coeffs) == 10

    def coeff(self, name):
        return self.coeffs[MONOMIALS.index(name)]

    def evaluate(self, x, y, z):
        total = 0
        for c, name in zip(self.coeffs, MONOMIALS):
            ex, ey, ez = MONOMIAL_EXPONENTS[name]
            total += c * x ** ex * y ** ey * z ** ez
        return total

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def primitive(self):
        return _primitive_scaled(self.coeffs)


def p_tilde(a, b):
    """The ternary cubic of bracket sums between 3x3 matrices a and b."""
    if a.dim != 3 or b.dim != 3:
        raise ValueError("p_tilde needs 3x3 matrices")
    coeffs = []
    for name in MONOMIALS:
        total = 0
        for ij, kl, mult in P_TILDE_TABLE[name]:
            total += mult * bracket(a, b, ij, kl)
        coeffs.append(total)
    return TernaryCubicForm(tuple(coeffs))


@dataclass(frozen=True)
class ProductForm:
    """The five-variable product p_bar(m, n) * p_tilde(x, y, z).

    Each factor is also carried in primitive integer form together with the
    exact rational that scaled it there; the two scalings multiply to the
    reciprocal of the product's content.  Unit values are always a question
    about the unscaled product, whose integrality is asserted at build time.
    """

    cubic_mn: BinaryCubicForm
    cubic_xyz: TernaryCubicForm
    mn_primitive: tuple
    mn_scale: Fraction
    xyz_primitive: tuple
    xyz_scale: Fraction

    @property
    def scaling_product(self):
        return self.mn_scale * self.xyz_scale

    @property
    def content(self):
        """Content of the integer product form; 1 means the factor
        split is loss-free for unit questions.  The scales may carry a
        sign (primitive forms have positive leading coefficient), which
        is irrelevant to unit values."""
        c = 1 / abs(self.scaling_product)
        assert c.denominator == 1 and c >= 1
        return int(c)

    def evaluate(self, x, y, z, m, n):
        return self.cubic_mn.evaluate(m, n) * self.cubic_xyz.evaluate(x, y, z)


def product_form(cubic_mn, cubic_xyz):
    """Bundle the two factors, asserting the product is integral."""
    if cubic_xyz.is_zero():
        raise IntegralityError("ternary factor is identically zero")
    mn_prim, mn_scale = cubic_mn.primitive()
    xyz_prim, xyz_scale = cubic_xyz.primitive()
    for cm in cubic_mn.as_tuple():
        for cx in cubic_xyz.coeffs:
            if (Fraction(cm) * cx).denominator != 1:
                raise IntegralityError(
                    "product coefficient %s * %s is not an integer" % (cm, cx))
    pf = ProductForm(cubic_mn=cubic_mn, cubic_xyz=cubic_xyz,
                     mn_primitive=mn_prim, mn_scale=mn_scale,
                     xyz_primitive=xyz_prim, xyz_scale=xyz_scale)
    pf.content  # noqa: B018  - fires the integrality assertion eagerly
    return pf


def q3(c, basis=None):
    """The product form of a 3x3 matrix with irreducible chi.

    A commutant basis (E, A, B) is computed canonically unless an explicit
    one is supplied; the binary factor comes from chi_A and (alpha, beta),
    the ternary factor from A and its adjugate.
    """
    if basis is None:
        basis = commutant_basis(c)
    chi_a = char_cubic(basis.a)
    cubic_mn = p_bar(chi_a, basis.alpha, basis.beta)
    cubic_xyz = p_tilde(basis.a, adjugate(basis.a))
    return product_form(cubic_mn, cubic_xyz)
