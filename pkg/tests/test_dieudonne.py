import itertools
import random
from fractions import Fraction

import pytest

from guhecke.dieudonne import (DieudonneModuleZ, DieudonneSpace, NoMatchError,
                               NotBT1Error, SlopeMultiset, basechange,
                               char_poly, check_bt1, classify_type, direct_sum,
                               fingerprint, isocrystal_shape, make_B, make_SS,
                               model_space, newton_slopes,
                               padic_newton_slopes, paired_block_slopes,
                               pairing_law_holds, random_basechange, signature,
                               strata_dims)
from guhecke.finitefield import gfp2, identity_mat

PRIMES = (3, 5, 7)


# -- integral models ----------------------------------------------------------


def test_ss_frozen_matrices():
    p = 5
    ss = make_SS(p)
    assert ss.f_mat == ((0, -p), (1, 0))
    assert ss.v_mat == ((0, p), (-1, 0))
    assert ss.gram == ((0, 1), (-1, 0))


def test_b2_frozen_matrices():
    p = 3
    b = make_B(2, p)
    assert b.f_mat == ((0, 0, 0, p), (0, 0, 1, 0), (0, 1, 0, 0), (p, 0, 0, 0))
    assert b.v_mat == ((0, 0, 0, 1), (0, 0, p, 0), (0, p, 0, 0), (1, 0, 0, 0))
    assert b.gram == ((0, 0, 1, 0), (0, 0, 0, -1), (-1, 0, 0, 0), (0, 1, 0, 0))


def test_b3_generating_relations():
    # F f_1 = -e_3 (d odd), F e_2 = f_1, F e_3 = f_2, V f_3 = e_1,
    # V e_1 = f_2, V e_2 = f_3; completion V e_3 = -p f_1 etc.
    p = 5
    b = make_B(3, p)
    f, v = b.f_mat, b.v_mat

    def col(m, j):
        return tuple(row[j] for row in m)

    e = [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)]
    fb = [(0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)]
    assert col(f, 3) == tuple(-x for x in e[2])          # F f_1 = -e_3
    assert col(f, 1) == fb[0]                            # F e_2 = f_1
    assert col(f, 2) == fb[1]                            # F e_3 = f_2
    assert col(v, 5) == e[0]                             # V f_3 = e_1
    assert col(v, 0) == fb[1]                            # V e_1 = f_2
    assert col(v, 1) == fb[2]                            # V e_2 = f_3
    assert col(v, 2) == tuple(-p * x for x in fb[0])     # V e_3 = -p f_1
    assert col(f, 0) == tuple(p * x for x in fb[2])      # F e_1 = p f_3
    assert col(f, 4) == tuple(p * x for x in e[0])       # F f_2 = p e_1
    assert col(v, 4) == tuple(p * x for x in e[2])       # V f_2 = p e_3


def _int_mat_mul(a, b):
    return tuple(tuple(sum(x * y for x, y in zip(row, col))
                       for col in zip(*b)) for row in a)


@pytest.mark.parametrize("p", PRIMES)
def test_fv_equals_p_for_all_models(p):
    for module in [make_SS(p)] + [make_B(d, p) for d in range(1, 10)]:
        dim = module.dim
        p_id = tuple(tuple(p * int(i == j) for j in range(dim)) for i in range(dim))
        assert _int_mat_mul(module.f_mat, module.v_mat) == p_id
        assert _int_mat_mul(module.v_mat, module.f_mat) == p_id


@pytest.mark.parametrize("p", (3, 7))
def test_integral_pairing_law(p):
    # <F x, y> = <x, V y> over the integers (entries are Frobenius-fixed).
    for module in [make_SS(p)] + [make_B(d, p) for d in range(1, 10)]:
        dim = module.dim
        g = module.gram

        def pair(u, w):
            return sum(u[i] * g[i][j] * w[j] for i in range(dim) for j in range(dim))

        for i in range(dim):
            x = tuple(int(t == i) for t in range(dim))
            fx = tuple(row[i] for row in module.f_mat)
            for j in range(dim):
                y = tuple(int(t == j) for t in range(dim))
                vy = tuple(row[j] for row in module.v_mat)
                assert pair(fx, y) == pair(x, vy), (i, j)


def test_module_validation_rejects_bad_input():
    p = 3
    with pytest.raises(ValueError):  # FV != p
        DieudonneModuleZ(p=p, ne=1, f_mat=((0, 1), (1, 0)),
                         v_mat=((0, 1), (1, 0)), gram=((0, 1), (-1, 0)))
    with pytest.raises(ValueError):  # grading not swapped
        DieudonneModuleZ(p=p, ne=1, f_mat=((p, 0), (0, p)),
                         v_mat=((1, 0), (0, 1)), gram=((0, 1), (-1, 0)))
    with pytest.raises(ValueError):  # pairing not unimodular
        DieudonneModuleZ(p=p, ne=1, f_mat=((0, -p), (1, 0)),
                         v_mat=((0, p), (-1, 0)), gram=((0, 2), (-2, 0)))
    with pytest.raises(ValueError):
        make_B(0, p)
    with pytest.raises(ValueError):
        make_SS(4)


# -- reductions: signature and the truncation axioms ---------------------------


@pytest.mark.parametrize("p", PRIMES)
def test_signature_of_models(p):
    assert signature(make_SS(p).reduction()) == (1, 0)
    for d in range(1, 10):
        assert signature(make_B(d, p).reduction()) == (d - 1, 1)


@pytest.mark.parametrize("p", PRIMES)
def test_model_reductions_are_bt1(p):
    assert check_bt1(make_SS(p).reduction())
    for d in range(1, 10):
        assert check_bt1(make_B(d, p).reduction())


def _enumerate_vectors(size, field_size):
    return itertools.product(range(field_size), repeat=size)


@pytest.mark.parametrize("space_maker", [
    lambda: make_SS(3).reduction(),
    lambda: make_B(2, 3).reduction(),
])
def test_bt1_by_exhaustive_enumeration(space_maker):
    """Oracle: compare Im F and Ker V as literal sets of vectors."""
    space = space_maker()
    fld = gfp2(space.p)
    for g in (0, 1):
        dims = space.dims()
        image = {space.apply_f(g, v) for v in _enumerate_vectors(dims[g], fld.size)}
        kernel = {v for v in _enumerate_vectors(dims[1 - g], fld.size)
                  if not any(space.apply_v(1 - g, v))}
        assert image == kernel
        image_v = {space.apply_v(g, v) for v in _enumerate_vectors(dims[g], fld.size)}
        kernel_f = {v for v in _enumerate_vectors(dims[1 - g], fld.size)
                    if not any(space.apply_f(1 - g, v))}
        assert image_v == kernel_f


def test_space_with_zero_operators_is_not_bt1():
    p = 3
    space = DieudonneSpace(p=p, ne=1, nebar=1,
                           f_e2ebar=((0,),), f_ebar2e=((0,),),
                           v_e2ebar=((0,),), v_ebar2e=((0,),),
                           gram=((1,),))
    assert not check_bt1(space)  # Im F = 0 but Ker V is everything


def test_space_validation_rejects_fv_nonzero():
    p = 3
    with pytest.raises(ValueError):
        DieudonneSpace(p=p, ne=1, nebar=1,
                       f_e2ebar=((1,),), f_ebar2e=((1,),),
                       v_e2ebar=((1,),), v_ebar2e=((1,),),
                       gram=((1,),))
    with pytest.raises(ValueError):  # degenerate pairing
        DieudonneSpace(p=p, ne=1, nebar=1,
                       f_e2ebar=((0,),), f_ebar2e=((0,),),
                       v_e2ebar=((0,),), v_ebar2e=((0,),),
                       gram=((0,),))


# -- direct sums ---------------------------------------------------------------


def test_direct_sum_adds_signatures_and_dims():
    p = 5
    a = make_B(3, p).reduction()
    b = make_SS(p).reduction()
    total = direct_sum(a, b)
    assert total.dims() == (4, 4)
    sig_a, sig_b = signature(a), signature(b)
    assert signature(total) == (sig_a[0] + sig_b[0], sig_a[1] + sig_b[1])
    assert check_bt1(total)
    with pytest.raises(ValueError):
        direct_sum(make_SS(3).reduction(), make_SS(5).reduction())


# -- base change ---------------------------------------------------------------


def test_basechange_with_identity_is_identity():
    space = model_space(5, 3, 3)
    moved = basechange(space, identity_mat(5), identity_mat(5))
    assert moved == space


def test_random_basechange_preserves_invariants():
    space = model_space(5, 2, 3)
    for seed in range(8):
        moved = random_basechange(space, seed)
        assert signature(moved) == signature(space)
        assert check_bt1(moved)
        assert pairing_law_holds(moved)
        assert fingerprint(moved) == fingerprint(space)


def test_random_basechange_is_seeded():
    space = model_space(3, 2, 5)
    assert random_basechange(space, 11) == random_basechange(space, 11)


# -- classification ------------------------------------------------------------


@pytest.mark.parametrize("n,p", [(3, 3), (5, 3), (7, 3), (9, 3), (3, 5), (5, 5),
                                 (7, 5), (9, 5)])
def test_model_fingerprints_pairwise_distinct(n, p):
    prints = [fingerprint(model_space(n, r, p)) for r in range(1, n + 1)]
    assert len(set(prints)) == n


def test_classify_models_and_roundtrip():
    for n in (3, 5):
        for p in (3, 5):
            for r in range(1, n + 1):
                model = model_space(n, r, p)
                assert classify_type(model, n) == r
                for seed in range(3):
                    assert classify_type(random_basechange(model, seed), n) == r


def test_classify_survives_100_basechanges_per_type():
    p = 3
    for n in (3, 5, 7):
        for r in range(1, n + 1):
            model = model_space(n, r, p)
            for seed in range(100):
                assert classify_type(random_basechange(model, seed), n) == r


def test_classify_rejects_wrong_signature():
    # n supersingular planes have signature (n, 0), not (n-1, 1).
    n = 3
    space = make_SS(3).reduction()
    for _ in range(n - 1):
        space = direct_sum(space, make_SS(3).reduction())
    with pytest.raises(NotBT1Error):
        classify_type(space, n)


def test_classify_rejects_wrong_dimensions():
    with pytest.raises(NotBT1Error):
        classify_type(model_space(3, 1, 3), 5)


def test_classify_rejects_non_bt1():
    space = DieudonneSpace(p=3, ne=1, nebar=1,
                           f_e2ebar=((0,),), f_ebar2e=((0,),),
                           v_e2ebar=((0,),), v_ebar2e=((0,),),
                           gram=((1,),))
    with pytest.raises(NotBT1Error):
        classify_type(space, 1)


def test_classification_errors_are_distinct_types():
    assert issubclass(NotBT1Error, Exception)
    assert issubclass(NoMatchError, Exception)
    assert NotBT1Error is not NoMatchError


# -- JSON ------------------------------------------------------------------------


def test_space_json_roundtrip():
    space = model_space(5, 4, 3)
    data = space.to_json()
    assert data["p"] == 3 and data["ne"] == 5 and data["nebar"] == 5
    assert DieudonneSpace.from_json(data) == space
    moved = random_basechange(space, 3)  # entries off the prime field
    assert DieudonneSpace.from_json(moved.to_json()) == moved


# -- Newton slopes ---------------------------------------------------------------


def _det_by_permutation_expansion(mat):
    size = len(mat)
    total = Fraction(0)
    for perm in itertools.permutations(range(size)):
        sign = 1
        seen = list(perm)
        for i in range(size):  # count inversions
            for j in range(i + 1, size):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Fraction(1)
        for i in range(size):
            term *= mat[i][perm[i]]
        total += sign * term
    return total


def test_char_poly_matches_permanent_style_determinant():
    rng = random.Random(9)
    for size in (2, 3, 4):
        for _ in range(5):
            mat = [[rng.randint(-4, 4) for _ in range(size)] for _ in range(size)]
            coeffs = char_poly(mat)
            for lam in (Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 2)):
                direct = _det_by_permutation_expansion(
                    [[lam * int(i == j) - mat[i][j] for j in range(size)]
                     for i in range(size)])
                value = sum(c * lam ** k for k, c in enumerate(coeffs))
                assert value == direct


def test_padic_newton_slopes_on_factored_polynomials():
    p = 3
    # (t - 1)(t - p)(t - p^2): valuations 0, 1, 2
    coeffs = [Fraction(-p ** 3), Fraction(p ** 3 + p ** 2 + p), Fraction(-1 - p - p * p), Fraction(1)]
    assert padic_newton_slopes(coeffs, p) == [(0, 1), (1, 1), (2, 1)]
    # (t^2 - p)(t - 1): valuations 1/2, 1/2, 0
    coeffs = [Fraction(p), Fraction(-p), Fraction(-1), Fraction(1)]
    assert sorted(padic_newton_slopes(coeffs, p)) == [(0, 1), (Fraction(1, 2), 2)]
    with pytest.raises(ValueError):
        padic_newton_slopes([0, 1], p)


@pytest.mark.parametrize("p", PRIMES)
def test_newton_slopes_of_models(p):
    assert newton_slopes(make_SS(p)).entries == ((Fraction(1, 2), 2),)
    for d in range(1, 10, 2):
        assert newton_slopes(make_B(d, p)).entries == ((Fraction(1, 2), 2 * d),)
    for d in range(2, 9, 2):
        assert newton_slopes(make_B(d, p)).entries == (
            (Fraction(1, 2) - Fraction(1, d), d),
            (Fraction(1, 2) + Fraction(1, d), d))


def test_slope_multiset_helpers():
    ms = SlopeMultiset.from_pairs([(Fraction(3, 4), 4), (Fraction(1, 4), 4)])
    assert ms.entries == ((Fraction(1, 4), 4), (Fraction(3, 4), 4))
    assert ms.total() == 8 and ms.is_symmetric()
    assert not SlopeMultiset.from_pairs([(Fraction(1, 4), 4)]).is_symmetric()
    assert ms.to_json() == [{"slope": "1/4", "mult": 4}, {"slope": "3/4", "mult": 4}]
    with pytest.raises(ValueError):
        SlopeMultiset.from_pairs([(Fraction(5, 4), 1)])


# -- isocrystal shapes -----------------------------------------------------------


def test_isocrystal_shape_frozen_examples():
    assert isocrystal_shape(5, 0).slopes.entries == ((Fraction(1, 2), 10),)
    assert isocrystal_shape(5, 2).slopes.entries == (
        (Fraction(1, 4), 4), (Fraction(1, 2), 2), (Fraction(3, 4), 4))
    assert isocrystal_shape(5, 1).slopes.entries == (
        (Fraction(0), 2), (Fraction(1, 2), 6), (Fraction(1), 2))


def test_isocrystal_factor_multiplicity_convention():
    even = isocrystal_shape(9, 2)
    assert [(f.slope, f.dim, f.count) for f in even.factors[:2]] == [
        (Fraction(1, 4), 4, 1), (Fraction(3, 4), 4, 1)]
    odd = isocrystal_shape(9, 3)
    assert [(f.slope, f.dim, f.count) for f in odd.factors[:2]] == [
        (Fraction(1, 3), 3, 2), (Fraction(2, 3), 3, 2)]
    for shape in (even, odd):
        assert shape.factors[-1] == shape.factors[-1].__class__(
            Fraction(1, 2), 2, shape.n - 2 * shape.r)


def test_isocrystal_shape_totals_and_symmetry():
    for n in range(3, 100, 2):
        for r in range((n - 1) // 2 + 1):
            shape = isocrystal_shape(n, r)
            assert shape.slopes.total() == 2 * n
            assert shape.slopes.is_symmetric()
            assert sum(f.dim * f.count for f in shape.factors) == 2 * n


def test_isocrystal_shape_range_checks():
    with pytest.raises(ValueError):
        isocrystal_shape(5, 3)
    with pytest.raises(ValueError):
        isocrystal_shape(4, 1)


def test_paired_block_matches_even_model_slopes():
    # The even-d banded model realizes the paired block at r = d/2.
    for p in (3, 5):
        for d in (2, 4, 6, 8):
            expected = SlopeMultiset.from_pairs(paired_block_slopes(d // 2))
            assert newton_slopes(make_B(d, p)) == expected


# -- strata ----------------------------------------------------------------------


def test_strata_dims_frozen_n5():
    assert [row.dim for row in strata_dims(5)] == [0, 4, 1, 3, 2]


def test_strata_dims_formulas_and_flags():
    for n in range(3, 100, 2):
        rows = strata_dims(n)
        assert [row.r for row in rows] == list(range(1, n + 1))
        for row in rows:
            if row.r % 2 == 0:
                assert row.dim == n - row.r // 2
                assert not row.supersingular
            else:
                assert row.dim == (row.r - 1) // 2
                assert row.supersingular
                assert row.slopes.entries == ((Fraction(1, 2), 2 * n),)
            assert row.ordinary == (row.r == 2)
        odd_dims = [row.dim for row in rows if row.r % 2 == 1]
        assert max(odd_dims) == (n - 1) // 2 == rows[n - 1].dim
        assert rows[1].dim == n - 1


def test_strata_even_rows_carry_newton_shape():
    rows = strata_dims(7)
    assert rows[3].slopes == isocrystal_shape(7, 2).slopes  # r = 4
