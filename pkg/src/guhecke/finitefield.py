"""Arithmetic and linear algebra over F_{p^2}, p an odd prime.

Elements of F_{p^2} = F_p[u]/(u^2 - c), with c the smallest quadratic
non-residue mod p, are encoded as the single integer a + p*b for the
element a + b*u.  A :class:`GFp2` instance precomputes full addition,
multiplication, negation, inversion and Frobenius tables, so all field
operations are table lookups; this keeps the Gaussian-elimination loops
below fast enough for the classification search.

Frobenius x -> x^p sends a + b*u to a - b*u (conjugation), hence is an
involution; in particular its inverse is itself, which the semilinear
operators in :mod:`guhecke.dieudonne` rely on.

Matrices are tuples of row tuples of element codes and act on coordinate
column vectors; subspaces are handled as row-span bases in reduced row
echelon form, which doubles as a canonical, hashable fingerprint of the
subspace.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class GFp2:
    """The field with p^2 elements, elements encoded as ints in [0, p^2).

    Tables are built lazily on first arithmetic use; they are quadratic in
    p^2, which is fine for the small primes the classification runs at.
    """

    def __init__(self, p: int):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        self.p = p
        squares = {(x * x) % p for x in range(1, p)}
        self.nonresidue = next(c for c in range(2, p) if c not in squares)
        self.size = p * p
        self.zero = 0
        self.one = 1

    @cached_property
    def _neg(self):
        p = self.p
        return tuple((-x % p) % p + p * ((-(x // p)) % p)
                     for x in range(self.size))

    @cached_property
    def _frob(self):
        p = self.p
        return tuple(x % p + p * ((-(x // p)) % p) for x in range(self.size))

    @cached_property
    def _add(self):
        p, size = self.p, self.size
        return tuple(tuple((x % p + y % p) % p + p * ((x // p + y // p) % p)
                           for y in range(size))
                     for x in range(size))

    @cached_property
    def _mul(self):
        p, size, c = self.p, self.size, self.nonresidue
        out = []
        for x in range(size):
            a1, b1 = x % p, x // p
            out.append(tuple((a1 * (y % p) + c * b1 * (y // p)) % p
                             + p * ((a1 * (y // p) + b1 * (y % p)) % p)
                             for y in range(size)))
        return tuple(out)

    @cached_property
    def _inv(self):
        p, c = self.p, self.nonresidue
        inv = [0] * self.size
        for x in range(1, self.size):
            a1, b1 = x % p, x // p
            norm = (a1 * a1 - c * b1 * b1) % p
            ninv = pow(norm, p - 2, p)
            inv[x] = (a1 * ninv) % p + p * ((-b1 * ninv) % p)
        return tuple(inv)

    # -- element operations --------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[x]

    def frob(self, x: int) -> int:
        """Frobenius x -> x^p; an involution."""
        return self._frob[x]

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        out = 1
        while k:
            if k & 1:
                out = self._mul[out][x]
            x = self._mul[x][x]
            k >>= 1
        return out

    def embed(self, value: int) -> int:
        """The prime-field element value mod p as a field code."""
        return value % self.p

    def pair(self, x: int) -> tuple[int, int]:
        """Decode to the coordinate pair (a, b) with x = a + b*u."""
        return x % self.p, x // self.p

    def from_pair(self, ab: Sequence[int]) -> int:
        a, b = ab
        return a % self.p + self.p * (b % self.p)

    def elements(self) -> range:
        return range(self.size)

    def __repr__(self) -> str:
        return f"GFp2({self.p})"


@lru_cache(maxsize=None)
def gfp2(p: int) -> GFp2:
    return GFp2(p)


# ---------------------------------------------------------------------------
# Matrices (tuples of row tuples of codes) and row-span subspaces.


def identity_mat(size: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(size)) for i in range(size))


def mat_vec(fld: GFp2, m: Mat, v: Vec) -> Vec:
    mul = fld._mul
    add = fld._add
    out = []
    for row in m:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add[acc][mul[a][b]]
        out.append(acc)
    return tuple(out)


def mat_mul(fld: GFp2, a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    mul = fld._mul
    add = fld._add
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add[acc][mul[x][y]]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_frob(fld: GFp2, m: Mat) -> Mat:
    frob = fld._frob
    return tuple(tuple(frob[x] for x in row) for row in m)


def vec_frob(fld: GFp2, v: Vec) -> Vec:
    frob = fld._frob
    return tuple(frob[x] for x in v)


def mat_transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def rref(fld: GFp2, rows: Iterable[Vec]) -> Mat:
    """Reduced row echelon form with zero rows dropped: the canonical basis
    of the row span, usable as a hashable subspace identifier."""
    work = [list(r) for r in rows]
    if not work:
        return ()
    ncols = len(work[0])
    mul = fld._mul
    add = fld._add
    neg = fld._neg
    inv = fld._inv
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        piv_inv = inv[work[rank][col]]
        work[rank] = [mul[piv_inv][x] for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                row_r = work[r]
                row_p = work[rank]
                work[r] = [add[x][neg[mul[f][y]]] for x, y in zip(row_r, row_p)]
        rank += 1
        if rank == len(work):
            break
    return tuple(tuple(r) for r in work[:rank] if any(r))


def rank(fld: GFp2, rows: Iterable[Vec]) -> int:
    return len(rref(fld, rows))


def kernel_basis(fld: GFp2, m: Mat, ncols: int | None = None) -> Mat:
    """Basis (as rows) of the right null space {v : m @ v = 0}."""
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    red = rref(fld, m)
    pivots = []
    for row in red:
        pivots.append(next(i for i, x in enumerate(row) if x))
    free = [c for c in range(ncols) if c not in pivots]
    neg = fld._neg
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = neg[row[fc]]
        basis.append(tuple(v))
    return tuple(basis)


def mat_inv(fld: GFp2, m: Mat) -> Mat:
    size = len(m)
    work = [list(row) + [int(i == j) for j in range(size)]
            for i, row in enumerate(m)]
    mul = fld._mul
    add = fld._add
    neg = fld._neg
    inv = fld._inv
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        piv_inv = inv[work[col][col]]
        work[col] = [mul[piv_inv][x] for x in work[col]]
        for r in range(size):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [add[x][neg[mul[f][y]]]
                           for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[size:]) for row in work)


def annihilator_rows(fld: GFp2, basis: Mat, ambient: int) -> Mat:
    """Rows c with c . b = 0 for every basis row b; cuts out the row span:
    a vector lies in span(basis) iff it is killed by all returned rows."""
    if not basis:
        return identity_mat(ambient)
    return kernel_basis(fld, basis, ambient)


def in_row_span(fld: GFp2, basis: Mat, v: Vec) -> bool:
    if not any(v):
        return True
    stacked = rref(fld, basis + (v,))
    return len(stacked) == len(rref(fld, basis))
