"""Hecke polynomial of GU(n-1,1) at an inert prime: construction,
factorization certificate, and Satake-side normalization.

Everything is computed with the prime kept formal (the variable q), so
the identities checked here hold for every prime at once.  The polynomial
is assembled from its product form over the diagonal torus,

    H(t) = prod_{i=1..n} ( t - q^(n-1) * x0^2 * (x1...xn) * x_{n+1-i}/x_i ),

whose middle factor (i = k = (n+1)/2) is t - q^(n-1) * x0^2 * x1...xn.
Dividing out that factor exactly is the factorization certificate; the
quotient's coefficients are checked to be Weyl-invariant.

An independent numeric route evaluates the same object from its matrix
definition: for a diagonal torus point g = (A, x0), form g * (twist of g)
with explicit matrix inverses and the antidiagonal sign matrix, push it
through the similitude-twisted dual representation (A, y) -> y*det(A)*
transpose(A)^(-1), and take an exact characteristic-determinant value.
The two routes share nothing but the definition, so agreement at random
rational points cross-checks the expansion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPoly, Monomial, TPoly
from .rootdatum import (Weight, WeylElement, pairing, rho, sigma_twist_poly,
                        weyl_act, weyl_group)


def _require_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")


def r_weights(n: int) -> list[Weight]:
    """Torus weights of the twisted dual representation: for i = 1..n the
    vector with 1 in slot 0 and in every slot j != i.  The i = n weight
    (1; 1,...,1,0) is the dominant one."""
    _require_odd(n)
    out = []
    for i in range(1, n + 1):
        coords = [1] * (n + 1)
        coords[i] = 0
        out.append(tuple(coords))
    return out


def central_monomial(n: int) -> Monomial:
    """x0^2 * x1 * ... * xn, the monomial of the central similitude-square
    function; it is the full twist-norm of x0 and is fixed by every Weyl
    element."""
    return Monomial(0, (2,) + (1,) * n)


def hecke_roots(n: int) -> list[LaurentPoly]:
    """The n linear roots q^(n-1)*x0^2*(x1...xn)*x_{n+1-i}/x_i, i = 1..n."""
    _require_odd(n)
    roots = []
    for i in range(1, n + 1):
        exps = [2] + [1] * n
        exps[n + 1 - i] += 1
        exps[i] -= 1
        roots.append(LaurentPoly.from_term(Monomial(n - 1, tuple(exps))))
    return roots


def hecke_polynomial(n: int) -> TPoly:
    """The expanded Hecke polynomial, monic of degree n in t."""
    poly = TPoly(n, [LaurentPoly.one(n)])
    for root in hecke_roots(n):
        poly = poly * TPoly.linear(root)
    return poly


def factor_hecke(n: int) -> tuple[TPoly, LaurentPoly]:
    """Certified factorization H(t) = R(t) * (t - q^(n-1)*x0^2*x1...xn).

    Returns (R, linear_root).  The division is exact rational arithmetic;
    a nonzero remainder raises NonZeroRemainderError, which would falsify
    the factorization and must never happen.
    """
    _require_odd(n)
    linear_root = LaurentPoly.from_term(
        Monomial(n - 1, central_monomial(n).x_exps))
    quotient = hecke_polynomial(n).divide_exact(TPoly.linear(linear_root))
    return quotient, linear_root


def check_weyl_invariance(p: LaurentPoly, n: int,
                          group: Sequence[WeylElement] | None = None) -> bool:
    """True iff p is fixed by every element of the Weyl group of size
    2^m * m!.  Pass an explicit element list to check a subset (e.g. a
    generating set, which is equivalent by closure)."""
    if group is None:
        group = weyl_group(n)
    return all(weyl_act(w, p) == p for w in group)


def check_sigma_invariance(p: LaurentPoly) -> bool:
    """True iff p is fixed by the multiplicative extension of the Galois
    twist (twisted-conjugation invariance at the diagonal level)."""
    return sigma_twist_poly(p) == p


def satake_alpha(p: LaurentPoly, n: int) -> LaurentPoly:
    """Dilate each monomial nu by q^(-2<rho,nu>).

    Converts twisted-Satake coefficients to the untwisted normalization.
    Since n is odd the exponent 2<rho,nu> is always an even integer, so
    the result stays in the ring.  This is a ring homomorphism.
    """
    _require_odd(n)
    rho_coords = rho(n)
    out: dict[Monomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        shift = 2 * pairing(rho_coords, mono.x_exps)
        if shift.denominator != 1:
            raise ValueError(f"non-integral rho-pairing for {mono}")
        new = Monomial(mono.q_exp - int(shift), mono.x_exps)
        out[new] = out.get(new, Fraction(0)) + coeff
    return LaurentPoly(p.n, out)


# ---------------------------------------------------------------------------
# Matrix-side evaluation (exact, over Fraction) for the numeric cross-check.

Matrix = list[list[Fraction]]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    size = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(size)), Fraction(0))
             for j in range(size)] for i in range(size)]


def _mat_det(a: Matrix) -> Fraction:
    m = [row[:] for row in a]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, size):
                    m[r][c] -= f * m[col][c]
    return det


def _mat_inv(a: Matrix) -> Matrix:
    size = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(size)]
         for i, row in enumerate(a)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(size):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [row[size:] for row in m]


def _transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def _antidiagonal_signs(n: int) -> Matrix:
    """The matrix with (-1)^(i-1) at position (i, n+1-i), 1-indexed."""
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        m[i - 1][n - i] = Fraction((-1) ** (i - 1))
    return m


def hecke_value_by_determinant(n: int, x0, xs: Sequence, p: int, t) -> Fraction:
    """det(t - p^(n-1) * r(g * twist(g))) for g the diagonal torus point
    (diag(xs), x0), computed purely with matrix operations."""
    _require_odd(n)
    if len(xs) != n:
        raise ValueError(f"need {n} torus coordinates")
    x0 = Fraction(x0)
    a = [[Fraction(0)] * n for _ in range(n)]
    for i, v in enumerate(xs):
        a[i][i] = Fraction(v)
    j_signs = _antidiagonal_signs(n)
    det_a = _mat_det(a)
    # twist(A, y) = (J * transpose(A)^(-1) * J, det(A) * y)
    twisted = _mat_mul(_mat_mul(j_signs, _mat_inv(_transpose(a))), j_signs)
    prod_mat = _mat_mul(a, twisted)
    prod_scalar = x0 * det_a * x0
    # r(M, y) = y * det(M) * transpose(M)^(-1)
    r_mat = _mat_inv(_transpose(prod_mat))
    scale = prod_scalar * _mat_det(prod_mat)
    tv = Fraction(t)
    pn = Fraction(p) ** (n - 1)
    char = [[(tv if i == j else Fraction(0)) - pn * scale * r_mat[i][j]
             for j in range(n)] for i in range(n)]
    return _mat_det(char)


# ---------------------------------------------------------------------------
# Report assembly for the CLI.

# Full enumeration is the contractual check; beyond this bound the report
# falls back to the generating set, which is equivalent by group closure
# but orders of magnitude cheaper (the group has 2^m * m! elements).
FULL_ENUMERATION_MAX_N = 9


def certified_factorization(n: int) -> tuple[TPoly, TPoly, LaurentPoly, bool]:
    """(H, R, linear_root, weyl_invariant) with the division certified and
    every coefficient of H and R checked for Weyl invariance."""
    from .rootdatum import weyl_generators

    _require_odd(n)
    hp = hecke_polynomial(n)
    linear_root = LaurentPoly.from_term(
        Monomial(n - 1, central_monomial(n).x_exps))
    quotient = hp.divide_exact(TPoly.linear(linear_root))
    if n <= FULL_ENUMERATION_MAX_N:
        group = weyl_group(n)
    else:
        group = weyl_generators(n)
    invariant = all(check_weyl_invariance(c, n, group)
                    for c in (*hp.coeffs, *quotient.coeffs))
    return hp, quotient, linear_root, invariant


def hecke_report(n: int) -> dict:
    """JSON-ready summary: H, R, the linear root, and the invariance flag."""
    hp, quotient, linear_root, invariant = certified_factorization(n)
    (root_mono, root_coeff), = linear_root.terms.items()
    return {
        "n": n,
        "Hp": hp.to_json(),
        "R": quotient.to_json(),
        "linear_root": {"coeff": str(root_coeff), "q": root_mono.q_exp,
                        "x": list(root_mono.x_exps)},
        "weyl_invariant": invariant,
    }
