"""Torus combinatorics for the unitary similitude group GU(n-1,1), n odd.

The diagonal torus has characters x1..xn (the GL_n coordinates) and x0
(the similitude coordinate).  Weights and cocharacters are identified
slot-by-slot and represented as plain coordinate tuples of length n+1,
slot 0 first.

The relative Weyl group acts as the permutations w of {1..n} satisfying
w(i) + w(n+1-i) = n+1 for every i.  This is the unique constant for which
such permutations exist at all: summing the left side over i = 1..n gives
n(n+1) regardless of w, so the constant must be n+1.  (Equivalently these
are the permutations preserving the pairing i <-> n+1-i that fixes the
torus equations x̄_1 x_n = x̄_2 x_{n-1} = ...)  Every element fixes the
middle index k = (n+1)/2.

The Galois twist acts on torus monomials by

    x_i  ->  x_{n+1-i}^(-1)   (1 <= i <= n),
    x0   ->  x0 * x1 * ... * xn,
    q    ->  q,

which is the restriction to the diagonal of conjugate-transpose-inverse
composed with the order-reversing pairing, times the determinant twist on
the similitude factor.  It is an involution.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPoly, Monomial

# Coordinate vectors of length n+1 (slot 0 = similitude slot).
Weight = tuple[int, ...]
HalfWeight = tuple[Fraction, ...]


def _require_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")


class WeylElement:
    """A permutation w of {1..n} with w(i) + w(n+1-i) = n+1 for all i."""

    __slots__ = ("perm",)

    def __init__(self, perm: Sequence[int]):
        perm = tuple(perm)
        n = len(perm)
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {perm}")
        for i in range(1, n + 1):
            if perm[i - 1] + perm[n - i] != n + 1:
                raise ValueError(f"pairing condition fails at i={i}: {perm}")
        self.perm = perm

    @property
    def n(self) -> int:
        return len(self.perm)

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Composition (self*other)(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        return WeylElement(tuple(self.perm[j - 1] for j in other.perm))

    def inverse(self) -> "WeylElement":
        inv = [0] * self.n
        for i, j in enumerate(self.perm, start=1):
            inv[j - 1] = i
        return WeylElement(tuple(inv))

    def is_identity(self) -> bool:
        return all(self.perm[i] == i + 1 for i in range(self.n))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self) -> str:
        return "[" + ",".join(str(v) for v in self.perm) + "]"


def weyl_identity(n: int) -> WeylElement:
    return WeylElement(tuple(range(1, n + 1)))


def weyl_group(n: int) -> list[WeylElement]:
    """All 2^m * m! elements (m = (n-1)/2), in a fixed deterministic order.

    An element is determined by where it sends 1..m and whether each image
    is reflected across the middle; the bottom half and the fixed middle
    index follow from the pairing condition.
    """
    _require_odd(n)
    m = (n - 1) // 2
    k = (n + 1) // 2
    out = []
    for base in itertools.permutations(range(1, m + 1)):
        for signs in itertools.product((0, 1), repeat=m):
            perm = [0] * n
            perm[k - 1] = k
            for i in range(1, m + 1):
                image = base[i - 1] if signs[i - 1] == 0 else n + 1 - base[i - 1]
                perm[i - 1] = image
                perm[n - i] = n + 1 - image
            out.append(WeylElement(tuple(perm)))
    return out


def weyl_generators(n: int) -> list[WeylElement]:
    """A generating set: adjacent pair swaps (i i+1)(n+1-i n-i) for i < m,
    plus the reflection (m n+1-m).  Generates the full group."""
    _require_odd(n)
    m = (n - 1) // 2
    gens = []
    for i in range(1, m):
        perm = list(range(1, n + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        perm[n - i], perm[n - i - 1] = perm[n - i - 1], perm[n - i]
        gens.append(WeylElement(tuple(perm)))
    perm = list(range(1, n + 1))
    perm[m - 1], perm[n - m] = perm[n - m], perm[m - 1]
    gens.append(WeylElement(tuple(perm)))
    return gens


def rho(n: int) -> HalfWeight:
    """Half-sum of the positive roots x_i - x_j (i < j) of the GL_n factor.

    Coordinates ((n-1)/2, (n-3)/2, ..., -(n-1)/2) in slots 1..n, zero in
    slot 0; integral because n is odd.
    """
    _require_odd(n)
    return (Fraction(0),) + tuple(Fraction(n + 1 - 2 * i, 2) for i in range(1, n + 1))


def pairing(chi: Sequence, nu: Sequence) -> Fraction:
    """Dot product of coordinate vectors under the slotwise identification
    of characters with cocharacters."""
    if len(chi) != len(nu):
        raise ValueError(f"length mismatch: {len(chi)} vs {len(nu)}")
    return sum((Fraction(a) * Fraction(b) for a, b in zip(chi, nu)), Fraction(0))


def sigma_twist(mono: Monomial) -> Monomial:
    """Image of a monomial under the Galois twist (see module docstring).

    Exponent bookkeeping: slot 0 keeps e0; slot i (i >= 1) receives
    e0 - e_{n+1-i}; q is untouched.
    """
    exps = mono.x_exps
    n = len(exps) - 1
    e0 = exps[0]
    new = [e0] + [e0 - exps[n + 1 - i] for i in range(1, n + 1)]
    return Monomial(mono.q_exp, tuple(new))


def sigma_images(n: int) -> list[LaurentPoly]:
    """Substitution images [x0 -> x0*x1*...*xn, x_i -> x_{n+1-i}^(-1)]."""
    prod = Monomial(0, (1,) * (n + 1))
    images = [LaurentPoly.from_term(prod)]
    for i in range(1, n + 1):
        images.append(LaurentPoly.var(n, n + 1 - i, -1))
    return images


def sigma_twist_poly(p: LaurentPoly) -> LaurentPoly:
    """The twist extended multiplicatively to a whole Laurent polynomial."""
    return p.substitute(sigma_images(p.n))


def norm_monomial(mono: Monomial) -> Monomial:
    """m times its Galois twist; sends x0 to the central monomial
    x0^2*x1*...*xn and x_i to x_i/x_{n+1-i}."""
    return mono * sigma_twist(mono)


def weyl_act_monomial(w: WeylElement, mono: Monomial) -> Monomial:
    n = len(mono.x_exps) - 1
    if w.n != n:
        raise ValueError("size mismatch")
    exps = mono.x_exps
    winv = w.inverse().perm
    return Monomial(mono.q_exp,
                    (exps[0],) + tuple(exps[winv[j - 1]] for j in range(1, n + 1)))


def weyl_act(w: WeylElement, p: LaurentPoly) -> LaurentPoly:
    """Permute x1..xn by w (x_i -> x_{w(i)}); x0 and q are fixed."""
    if w.n != p.n:
        raise ValueError("size mismatch")
    winv = w.inverse().perm
    idx = (0,) + tuple(winv)
    out: dict[Monomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        exps = mono.x_exps
        new = Monomial(mono.q_exp, tuple(exps[i] for i in idx))
        out[new] = out.get(new, Fraction(0)) + coeff
    return LaurentPoly(p.n, out)
