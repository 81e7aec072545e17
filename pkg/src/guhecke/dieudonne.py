"""Semilinear algebra of unitary Dieudonne modules and spaces.

Two levels of structure are modelled:

* :class:`DieudonneModuleZ` -- an integral model: a free module of rank 2d
  with integer matrices for the Frobenius-semilinear operator F and the
  inverse-Frobenius-semilinear operator V satisfying F V = V F = p, a
  perfect alternating integer pairing, and a grading into two pieces of
  which F and V swap.  The two building blocks are the rank-2
  supersingular module and the rank-2d banded module with a single
  F-cycle through the graded basis.

* :class:`DieudonneSpace` -- the mod-p reduction: graded pieces over
  F_{p^2} with F V = V F = 0 and a nondegenerate pairing between the
  pieces.  Matrices act on coordinate columns; the semilinear twist is
  applied to coordinates before the matrix (and Frobenius is an
  involution on F_{p^2}, so the inverse twist is the same map).

The classification of spaces with signature (n-1,1) assigns a type
r in {1..n}: the space is isomorphic to the direct sum of the rank-2r
banded block and n-r supersingular planes.  Types are recognized by an
isomorphism-invariant fingerprint: close {0, everything} under taking
F-images and V-preimages of graded subspaces, then record the multiset
of (dim X, dim F(X), dim(X & ker F)) over the closure.  The fingerprints
of the n candidate models are pairwise distinct (asserted by the test
suite), which makes the lookup well defined.

Newton slopes of an integral model are read off the p-adic Newton
polygon of the characteristic polynomial of F; this identification is
valid precisely because the model's F-matrix has integer (Frobenius-
fixed) entries, so inputs are restricted to integral models.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .finitefield import (GFp2, Mat, Vec, annihilator_rows, gfp2, identity_mat,
                          kernel_basis, mat_frob, mat_inv, mat_mul,
                          mat_transpose, mat_vec, rank, rref, vec_frob)

IntMat = tuple[tuple[int, ...], ...]


class ClassificationError(Exception):
    """Base class for classification failures (CLI exit code 3)."""


class NotBT1Error(ClassificationError):
    """Input space fails the truncation axioms or the signature/dimension
    preconditions of the classification."""


class NoMatchError(ClassificationError):
    """No model fingerprint matches; the input is malformed or the
    fingerprint failed to separate (which the test suite rules out)."""


# ---------------------------------------------------------------------------
# Slope multisets


@dataclass(frozen=True)
class SlopeMultiset:
    """Rational slopes in [0,1] with positive multiplicities, ascending."""

    entries: tuple[tuple[Fraction, int], ...]

    @classmethod
    def from_pairs(cls, pairs) -> "SlopeMultiset":
        merged: dict[Fraction, int] = {}
        for slope, mult in pairs:
            slope = Fraction(slope)
            if not 0 <= slope <= 1:
                raise ValueError(f"slope {slope} outside [0,1]")
            if mult <= 0:
                raise ValueError("multiplicities must be positive")
            merged[slope] = merged.get(slope, 0) + mult
        return cls(tuple(sorted(merged.items())))

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def is_symmetric(self) -> bool:
        """Fixed by s -> 1 - s as a multiset."""
        table = dict(self.entries)
        return all(table.get(1 - s) == m for s, m in self.entries)

    def to_json(self) -> list[dict]:
        return [{"slope": str(s), "mult": m} for s, m in self.entries]

    def __str__(self) -> str:
        return "{" + ", ".join(f"{s} x{m}" for s, m in self.entries) + "}"


# ---------------------------------------------------------------------------
# Integral models


def _as_int_mat(rows) -> IntMat:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _int_mat_mul(a: IntMat, b: IntMat) -> IntMat:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def _int_det(mat: IntMat) -> Fraction:
    m = [[Fraction(x) for x in row] for row in mat]
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


@dataclass(frozen=True)
class DieudonneModuleZ:
    """Integral model: rank-2d module with integer F, V, pairing matrices.

    The first ``ne`` basis vectors span the e-graded piece, the rest the
    conjugate piece.  Validated at construction: F and V swap the grading,
    F V = V F = p, and the alternating pairing is unimodular with
    isotropic graded pieces.
    """

    p: int
    ne: int
    f_mat: IntMat
    v_mat: IntMat
    gram: IntMat

    def __post_init__(self):
        object.__setattr__(self, "f_mat", _as_int_mat(self.f_mat))
        object.__setattr__(self, "v_mat", _as_int_mat(self.v_mat))
        object.__setattr__(self, "gram", _as_int_mat(self.gram))
        gfp2(self.p)  # validates that p is an odd prime
        dim = len(self.f_mat)
        if not 0 < self.ne < dim:
            raise ValueError("grading split out of range")
        for name, m in (("F", self.f_mat), ("V", self.v_mat), ("gram", self.gram)):
            if len(m) != dim or any(len(row) != dim for row in m):
                raise ValueError(f"{name} must be {dim}x{dim}")
        ne = self.ne
        for m in (self.f_mat, self.v_mat):
            for i in range(dim):
                for j in range(dim):
                    if (i < ne) == (j < ne) and m[i][j]:
                        raise ValueError("F and V must swap the graded pieces")
        p_id = tuple(tuple(self.p * int(i == j) for j in range(dim))
                     for i in range(dim))
        if _int_mat_mul(self.f_mat, self.v_mat) != p_id \
                or _int_mat_mul(self.v_mat, self.f_mat) != p_id:
            raise ValueError("F V = V F = p fails")
        for i in range(dim):
            for j in range(dim):
                if self.gram[i][j] != -self.gram[j][i]:
                    raise ValueError("pairing must be alternating")
                if (i < ne) == (j < ne) and self.gram[i][j]:
                    raise ValueError("graded pieces must be isotropic")
        if abs(_int_det(self.gram)) != 1:
            raise ValueError("pairing must be unimodular")

    @property
    def dim(self) -> int:
        return len(self.f_mat)

    def reduction(self) -> "DieudonneSpace":
        """The mod-p Dieudonne space, graded pieces split out."""
        ne = self.ne
        dim = self.dim
        fld = gfp2(self.p)
        emb = fld.embed

        def block(m, rows, cols):
            return tuple(tuple(emb(m[i][j]) for j in cols) for i in rows)

        e_idx = range(ne)
        eb_idx = range(ne, dim)
        return DieudonneSpace(
            p=self.p, ne=ne, nebar=dim - ne,
            f_e2ebar=block(self.f_mat, eb_idx, e_idx),
            f_ebar2e=block(self.f_mat, e_idx, eb_idx),
            v_e2ebar=block(self.v_mat, eb_idx, e_idx),
            v_ebar2e=block(self.v_mat, e_idx, eb_idx),
            gram=block(self.gram, e_idx, eb_idx),
        )


def make_SS(p: int) -> DieudonneModuleZ:
    """The rank-2 supersingular model on basis (g, h): F g = h = -V g,
    completed by F h = -p g, V h = p g; pairing <g, h> = 1."""
    return DieudonneModuleZ(
        p=p, ne=1,
        f_mat=((0, -p), (1, 0)),
        v_mat=((0, p), (-1, 0)),
        gram=((0, 1), (-1, 0)),
    )


def make_B(d: int, p: int) -> DieudonneModuleZ:
    """The rank-2d banded model on basis (e_1..e_d, f_1..f_d).

    Generating relations: F f_1 = (-1)^d e_d, F e_i = f_{i-1} (i >= 2),
    V f_d = e_1, V e_i = f_{i+1} (i <= d-1); the remaining values are the
    unique completion with F V = V F = p.  Pairing <e_i, f_j> =
    (-1)^(i-1) delta_{ij}.  Signature of the reduction is (d-1, 1).
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    dim = 2 * d
    f = [[0] * dim for _ in range(dim)]
    v = [[0] * dim for _ in range(dim)]
    sign = (-1) ** d

    def e(i):  # 1-indexed e_i
        return i - 1

    def fb(j):  # 1-indexed f_j
        return d + j - 1

    f[fb(d)][e(1)] = p                       # F e_1 = p f_d
    for i in range(2, d + 1):
        f[fb(i - 1)][e(i)] = 1               # F e_i = f_{i-1}
    f[e(d)][fb(1)] = sign                    # F f_1 = (-1)^d e_d
    for j in range(2, d + 1):
        f[e(j - 1)][fb(j)] = p               # F f_j = p e_{j-1}

    for i in range(1, d):
        v[fb(i + 1)][e(i)] = 1               # V e_i = f_{i+1}
    v[fb(1)][e(d)] = sign * p                # V e_d = (-1)^d p f_1
    for j in range(1, d):
        v[e(j + 1)][fb(j)] = p               # V f_j = p e_{j+1}
    v[e(1)][fb(d)] = 1                       # V f_d = e_1

    gram = [[0] * dim for _ in range(dim)]
    for i in range(1, d + 1):
        gram[e(i)][fb(i)] = (-1) ** (i - 1)
        gram[fb(i)][e(i)] = -((-1) ** (i - 1))
    return DieudonneModuleZ(p=p, ne=d, f_mat=f, v_mat=v, gram=gram)


# ---------------------------------------------------------------------------
# Dieudonne spaces over F_{p^2}


@dataclass(frozen=True)
class DieudonneSpace:
    """Graded semilinear F, V data over F_{p^2} with F V = V F = 0 and a
    nondegenerate pairing between the graded pieces.

    Matrix entries are field codes (see :mod:`guhecke.finitefield`);
    ``f_e2ebar[i][j]`` is the i-th conjugate-piece coordinate of F applied
    to the j-th e-basis vector, and similarly throughout.
    """

    p: int
    ne: int
    nebar: int
    f_e2ebar: Mat
    f_ebar2e: Mat
    v_e2ebar: Mat
    v_ebar2e: Mat
    gram: Mat

    def __post_init__(self):
        for name in ("f_e2ebar", "f_ebar2e", "v_e2ebar", "v_ebar2e", "gram"):
            object.__setattr__(self, name,
                               tuple(tuple(row) for row in getattr(self, name)))
        fld = gfp2(self.p)
        if self.ne < 1 or self.nebar < 1:
            raise ValueError("graded pieces must be nonzero")
        shapes = {
            "f_e2ebar": (self.nebar, self.ne),
            "f_ebar2e": (self.ne, self.nebar),
            "v_e2ebar": (self.nebar, self.ne),
            "v_ebar2e": (self.ne, self.nebar),
            "gram": (self.ne, self.nebar),
        }
        for name, (nrows, ncols) in shapes.items():
            m = getattr(self, name)
            if len(m) != nrows or any(len(row) != ncols for row in m):
                raise ValueError(f"{name} must be {nrows}x{ncols}")
            for row in m:
                for x in row:
                    if not 0 <= x < fld.size:
                        raise ValueError(f"{name} entry {x} is not a field code")
        # F V = V F = 0: the inner twist folds into the matrix by Frobenius.
        zero_checks = (
            (self.f_ebar2e, self.v_e2ebar),
            (self.f_e2ebar, self.v_ebar2e),
            (self.v_ebar2e, self.f_e2ebar),
            (self.v_e2ebar, self.f_ebar2e),
        )
        for outer, inner in zero_checks:
            prod = mat_mul(fld, outer, mat_frob(fld, inner))
            if any(any(row) for row in prod):
                raise ValueError("F V = V F = 0 fails")
        if self.ne != self.nebar or rank(fld, self.gram) != self.ne:
            raise ValueError("pairing must be nondegenerate")

    @property
    def field(self) -> GFp2:
        return gfp2(self.p)

    def dims(self) -> tuple[int, int]:
        return self.ne, self.nebar

    def f_matrix(self, grade: int) -> Mat:
        return self.f_e2ebar if grade == 0 else self.f_ebar2e

    def v_matrix(self, grade: int) -> Mat:
        """Matrix of V restricted to the given source grade."""
        return self.v_e2ebar if grade == 0 else self.v_ebar2e

    def apply_f(self, grade: int, v: Vec) -> Vec:
        fld = self.field
        return mat_vec(fld, self.f_matrix(grade), vec_frob(fld, v))

    def apply_v(self, grade: int, v: Vec) -> Vec:
        fld = self.field
        return mat_vec(fld, self.v_matrix(grade), vec_frob(fld, v))

    def pair(self, grade1: int, v1: Vec, grade2: int, v2: Vec) -> int:
        """Full pairing; graded pieces are isotropic and the cross block is
        the stored gram matrix (antisymmetrized on the other side)."""
        if grade1 == grade2:
            return 0
        fld = self.field
        if grade1 == 1:
            return fld.neg(self.pair(0, v2, 1, v1))
        acc = 0
        for a, row in zip(v1, self.gram):
            if not a:
                continue
            for g, b in zip(row, v2):
                if g and b:
                    acc = fld.add(acc, fld.mul(fld.mul(a, g), b))
        return acc

    def to_json(self) -> dict:
        fld = self.field

        def encode(m):
            return [[list(fld.pair(x)) for x in row] for row in m]

        return {
            "p": self.p, "ne": self.ne, "nebar": self.nebar,
            "F_e2ebar": encode(self.f_e2ebar),
            "F_ebar2e": encode(self.f_ebar2e),
            "V_e2ebar": encode(self.v_e2ebar),
            "V_ebar2e": encode(self.v_ebar2e),
            "gram": encode(self.gram),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DieudonneSpace":
        p = int(data["p"])
        fld = gfp2(p)

        def decode(m):
            return tuple(tuple(fld.from_pair(x) for x in row) for row in m)

        return cls(
            p=p, ne=int(data["ne"]), nebar=int(data["nebar"]),
            f_e2ebar=decode(data["F_e2ebar"]),
            f_ebar2e=decode(data["F_ebar2e"]),
            v_e2ebar=decode(data["V_e2ebar"]),
            v_ebar2e=decode(data["V_ebar2e"]),
            gram=decode(data["gram"]),
        )


def signature(space: DieudonneSpace) -> tuple[int, int]:
    """(dim M_e / V M_ebar, dim M_ebar / V M_e) by exact rank computation."""
    fld = space.field
    return (space.ne - rank(fld, mat_transpose(space.v_ebar2e)),
            space.nebar - rank(fld, mat_transpose(space.v_e2ebar)))


def _image_basis(fld: GFp2, mat: Mat) -> Mat:
    """Row basis of the column span (images of the standard basis; the
    coordinate twist does not change the span)."""
    return rref(fld, mat_transpose(mat))


def _semilinear_kernel(fld: GFp2, mat: Mat, ncols: int) -> Mat:
    """Kernel of v -> mat @ frob(v): the Frobenius of the linear kernel."""
    lin = kernel_basis(fld, mat, ncols)
    return rref(fld, tuple(vec_frob(fld, v) for v in lin))


def pairing_law_holds(space: DieudonneSpace) -> bool:
    """<F x, y> = <x, V y>^p on all pairs of graded basis vectors."""
    fld = space.field
    dims = space.dims()
    for gx in (0, 1):
        f_cols = mat_transpose(space.f_matrix(gx))
        for i in range(dims[gx]):
            x = tuple(int(t == i) for t in range(dims[gx]))
            fx = f_cols[i]
            for gy in (0, 1):
                v_cols = mat_transpose(space.v_matrix(gy))
                for j in range(dims[gy]):
                    y = tuple(int(t == j) for t in range(dims[gy]))
                    lhs = space.pair(1 - gx, fx, gy, y)
                    rhs = fld.frob(space.pair(gx, x, 1 - gy, v_cols[j]))
                    if lhs != rhs:
                        return False
    return True


def check_bt1(space: DieudonneSpace) -> bool:
    """True iff Im F = Ker V and Im V = Ker F (gradedwise, as subspace
    equalities) and the pairing law holds on all basis pairs."""
    fld = space.field
    dims = space.dims()
    for g in (0, 1):
        im_f = _image_basis(fld, space.f_matrix(g))
        ker_v = _semilinear_kernel(fld, space.v_matrix(1 - g), dims[1 - g])
        if im_f != ker_v:
            return False
        im_v = _image_basis(fld, space.v_matrix(g))
        ker_f = _semilinear_kernel(fld, space.f_matrix(1 - g), dims[1 - g])
        if im_v != ker_f:
            return False
    return pairing_law_holds(space)


def direct_sum(a: DieudonneSpace, b: DieudonneSpace) -> DieudonneSpace:
    """Block sum of all structure matrices; gram block-diagonal."""
    if a.p != b.p:
        raise ValueError(f"prime mismatch: {a.p} vs {b.p}")

    def block(m1, m2, rows1, cols1, rows2, cols2):
        top = [tuple(row) + (0,) * cols2 for row in m1]
        bottom = [(0,) * cols1 + tuple(row) for row in m2]
        assert len(top) == rows1 and len(bottom) == rows2
        return tuple(top + bottom)

    return DieudonneSpace(
        p=a.p, ne=a.ne + b.ne, nebar=a.nebar + b.nebar,
        f_e2ebar=block(a.f_e2ebar, b.f_e2ebar, a.nebar, a.ne, b.nebar, b.ne),
        f_ebar2e=block(a.f_ebar2e, b.f_ebar2e, a.ne, a.nebar, b.ne, b.nebar),
        v_e2ebar=block(a.v_e2ebar, b.v_e2ebar, a.nebar, a.ne, b.nebar, b.ne),
        v_ebar2e=block(a.v_ebar2e, b.v_ebar2e, a.ne, a.nebar, b.ne, b.nebar),
        gram=block(a.gram, b.gram, a.ne, a.nebar, b.ne, b.nebar),
    )


@lru_cache(maxsize=None)
def model_space(n: int, r: int, p: int) -> DieudonneSpace:
    """The candidate space of type r: banded rank-2r block plus n-r
    supersingular planes; signature (n-1, 1) for every r."""
    if not 1 <= r <= n:
        raise ValueError(f"type r={r} out of range 1..{n}")
    space = make_B(r, p).reduction()
    ss = make_SS(p).reduction()
    for _ in range(n - r):
        space = direct_sum(space, ss)
    return space


# ---------------------------------------------------------------------------
# Base change


def basechange(space: DieudonneSpace, p_mat: Mat, q_mat: Mat) -> DieudonneSpace:
    """Rewrite the space in the bases given by the columns of p_mat (on the
    e piece) and q_mat (on the conjugate piece).

    Semilinear transformation rule: a matrix from grade g to grade h
    becomes inv(T_h) @ M @ frob(T_g); the pairing becomes
    transpose(T_e) @ gram @ T_ebar.  The result is isomorphic to the
    input by construction.
    """
    fld = space.field
    p_inv = mat_inv(fld, p_mat)
    q_inv = mat_inv(fld, q_mat)
    p_tw = mat_frob(fld, p_mat)
    q_tw = mat_frob(fld, q_mat)
    return DieudonneSpace(
        p=space.p, ne=space.ne, nebar=space.nebar,
        f_e2ebar=mat_mul(fld, q_inv, mat_mul(fld, space.f_e2ebar, p_tw)),
        f_ebar2e=mat_mul(fld, p_inv, mat_mul(fld, space.f_ebar2e, q_tw)),
        v_e2ebar=mat_mul(fld, q_inv, mat_mul(fld, space.v_e2ebar, p_tw)),
        v_ebar2e=mat_mul(fld, p_inv, mat_mul(fld, space.v_ebar2e, q_tw)),
        gram=mat_mul(fld, mat_transpose(p_mat), mat_mul(fld, space.gram, q_mat)),
    )


def _random_invertible(fld: GFp2, size: int, rng: random.Random) -> Mat:
    while True:
        m = tuple(tuple(rng.randrange(fld.size) for _ in range(size))
                  for _ in range(size))
        if rank(fld, m) == size:
            return m


def random_basechange(space: DieudonneSpace, seed: int) -> DieudonneSpace:
    """A seeded random isomorphic copy of the space."""
    rng = random.Random(seed)
    fld = space.field
    p_mat = _random_invertible(fld, space.ne, rng)
    q_mat = _random_invertible(fld, space.nebar, rng)
    return basechange(space, p_mat, q_mat)


# ---------------------------------------------------------------------------
# Fingerprint and classification


def _subspace_dim_sum(fld: GFp2, a: Mat, b: Mat) -> int:
    return len(rref(fld, a + b))


def fingerprint(space: DieudonneSpace) -> tuple[tuple[int, int, int], ...]:
    """Isomorphism-invariant signature of the canonical filtration.

    Close {0, full} (in each graded piece) under X -> F(X) and
    X -> preimage of X under V, then collect the sorted multiset of
    (dim X, dim F(X), dim(X & Ker F)) over all subspaces found.
    """
    fld = space.field
    dims = space.dims()

    def f_image(grade, basis):
        mat = space.f_matrix(grade)
        rows = tuple(mat_vec(fld, mat, vec_frob(fld, b)) for b in basis)
        return 1 - grade, rref(fld, rows)

    def v_preimage(grade, basis):
        # {y in the other piece : V(y) in span(basis)}
        src = 1 - grade
        v_mat = space.v_matrix(src)
        ann = annihilator_rows(fld, basis, dims[grade])
        lin = kernel_basis(fld, mat_mul(fld, ann, v_mat), dims[src])
        return src, rref(fld, tuple(vec_frob(fld, u) for u in lin))

    start = [
        (0, ()), (1, ()),
        (0, identity_mat(dims[0])), (1, identity_mat(dims[1])),
    ]
    image_of: dict = {}
    seen = set(start)
    work = list(start)
    steps = 0
    while work:
        steps += 1
        if steps > 100_000:
            raise RuntimeError("canonical filtration failed to stabilize")
        grade, basis = work.pop()
        img = f_image(grade, basis)
        image_of[(grade, basis)] = img
        pre = v_preimage(grade, basis)
        for nxt in (img, pre):
            if nxt not in seen:
                seen.add(nxt)
                work.append(nxt)
    ker_f = {g: _semilinear_kernel(fld, space.f_matrix(g), dims[g])
             for g in (0, 1)}
    triples = []
    for grade, basis in seen:
        img = image_of.get((grade, basis))
        if img is None:
            img = f_image(grade, basis)
        inter = len(basis) + len(ker_f[grade]) \
            - _subspace_dim_sum(fld, basis, ker_f[grade])
        triples.append((len(basis), len(img[1]), inter))
    return tuple(sorted(triples))


@lru_cache(maxsize=None)
def _model_fingerprints(n: int, p: int) -> tuple[tuple[int, tuple], ...]:
    return tuple((r, fingerprint(model_space(n, r, p))) for r in range(1, n + 1))


def classify_type(space: DieudonneSpace, n: int) -> int:
    """The unique r with the space isomorphic to the type-r model.

    Raises NotBT1Error if the space is not a BT1 of signature (n-1, 1)
    with graded pieces of dimension n, and NoMatchError if no model
    fingerprint matches.
    """
    if space.dims() != (n, n):
        raise NotBT1Error(
            f"graded dimensions {space.dims()} != ({n}, {n})")
    if not check_bt1(space):
        raise NotBT1Error("Im F = Ker V / Im V = Ker F or the pairing law fails")
    sig = signature(space)
    if sig != (n - 1, 1):
        raise NotBT1Error(f"signature {sig} != ({n - 1}, 1)")
    fp = fingerprint(space)
    for r, model_fp in _model_fingerprints(n, space.p):
        if fp == model_fp:
            return r
    raise NoMatchError(f"fingerprint matches no model for n={n}, p={space.p}")


# ---------------------------------------------------------------------------
# Newton slopes of integral models


def char_poly(mat: Sequence[Sequence[int]]) -> list[Fraction]:
    """Characteristic polynomial det(t - mat), coefficients by ascending
    power, computed by the trace recursion (exact rational arithmetic)."""
    size = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    coeffs = [Fraction(0)] * size + [Fraction(1)]
    m = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for k in range(1, size + 1):
        if k > 1:
            prev = coeffs[size - k + 1]
            m = [[sum((a[i][l] * m[l][j] for l in range(size)), Fraction(0))
                  + (prev if i == j else 0)
                  for j in range(size)] for i in range(size)]
        am_trace = sum((sum(a[i][l] * m[l][i] for l in range(size))
                        for i in range(size)), Fraction(0))
        coeffs[size - k] = -am_trace / k
    return coeffs


def _valuation(value: Fraction, p: int) -> int:
    if value == 0:
        raise ValueError("valuation of zero")
    v = 0
    num = value.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = value.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def padic_newton_slopes(coeffs: Sequence, p: int) -> list[tuple[Fraction, int]]:
    """Root valuations with multiplicities from the lower Newton polygon of
    a polynomial with nonzero constant term (coeffs by ascending power)."""
    coeffs = [Fraction(c) for c in coeffs]
    if not coeffs or coeffs[0] == 0 or coeffs[-1] == 0:
        raise ValueError("constant and leading coefficients must be nonzero")
    points = [(j, _valuation(c, p)) for j, c in enumerate(coeffs) if c != 0]
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    return sorted(out)


def newton_slopes(module: DieudonneModuleZ) -> SlopeMultiset:
    """Newton slopes of the model: the p-adic Newton polygon of the
    characteristic polynomial of F.  Valid because the F-matrix has
    integer (Frobenius-fixed) entries; other operators are rejected by
    the integral type itself."""
    for row in module.f_mat:
        for x in row:
            if not isinstance(x, int):
                raise ValueError("F-matrix entries must be integers")
    return SlopeMultiset.from_pairs(
        padic_newton_slopes(char_poly(module.f_mat), module.p))


# ---------------------------------------------------------------------------
# Isocrystal shapes and stratum dimensions


@dataclass(frozen=True)
class SimpleFactor:
    """One simple isocrystal factor: slope, dimension, and how many copies
    appear in the decomposition."""

    slope: Fraction
    dim: int
    count: int

    def to_json(self) -> dict:
        return {"slope": str(self.slope), "dim": self.dim, "count": self.count}


@dataclass(frozen=True)
class IsocrystalShape:
    n: int
    r: int
    slopes: SlopeMultiset
    factors: tuple[SimpleFactor, ...]

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r,
                "slopes": self.slopes.to_json(),
                "factors": [f.to_json() for f in self.factors]}


def paired_block_slopes(r: int) -> list[tuple[Fraction, int]]:
    """Slope pairs 1/2 -+ 1/(2r), each of total multiplicity 2r, of the
    non-supersingular block attached to r >= 1 (empty for r = 0)."""
    if r == 0:
        return []
    return [(Fraction(r - 1, 2 * r), 2 * r), (Fraction(r + 1, 2 * r), 2 * r)]


def isocrystal_shape(n: int, r: int) -> IsocrystalShape:
    """Shape of the isocrystal of a signature-(n-1,1) module of Newton
    type r: the paired block for r plus n-2r supersingular factors.

    For even r the two paired factors are simple of dimension 2r and
    appear once each; for odd r they split as two copies of dimension r.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    if not 0 <= r <= (n - 1) // 2:
        raise ValueError(f"r={r} out of range 0..{(n - 1) // 2}")
    factors = []
    if r > 0:
        lo, hi = Fraction(r - 1, 2 * r), Fraction(r + 1, 2 * r)
        if r % 2 == 0:
            factors = [SimpleFactor(lo, 2 * r, 1), SimpleFactor(hi, 2 * r, 1)]
        else:
            factors = [SimpleFactor(lo, r, 2), SimpleFactor(hi, r, 2)]
    factors.append(SimpleFactor(Fraction(1, 2), 2, n - 2 * r))
    slopes = SlopeMultiset.from_pairs(
        paired_block_slopes(r) + [(Fraction(1, 2), 2 * (n - 2 * r))])
    return IsocrystalShape(n=n, r=r, slopes=slopes, factors=tuple(factors))


@dataclass(frozen=True)
class StratumRow:
    """One Ekedahl-Oort stratum: its type r, dimension, Newton data."""

    r: int
    dim: int
    ordinary: bool
    supersingular: bool
    slopes: SlopeMultiset

    def to_json(self) -> dict:
        return {"r": self.r, "dim": self.dim, "ordinary": self.ordinary,
                "supersingular": self.supersingular,
                "slopes": self.slopes.to_json()}


def strata_dims(n: int) -> list[StratumRow]:
    """Dimension table of the strata for types r = 1..n.

    Even types have dimension n - r/2 and refine the Newton stratum of
    type r/2; odd types have dimension (r-1)/2 and are supersingular.
    The unique open stratum (the ordinary one) is r = 2.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    rows = []
    for r in range(1, n + 1):
        if r % 2 == 0:
            dim = n - r // 2
            slopes = isocrystal_shape(n, r // 2).slopes
        else:
            dim = (r - 1) // 2
            slopes = SlopeMultiset.from_pairs([(Fraction(1, 2), 2 * n)])
        rows.append(StratumRow(r=r, dim=dim, ordinary=(r == 2),
                               supersingular=(r % 2 == 1), slopes=slopes))
    return rows
