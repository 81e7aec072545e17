"""The acceptance suite: every headline algebraic claim, machine-checked.

Each criterion is registered with a stable id and name; runners return a
short detail string and raise on failure.  Everything is exact rational
or finite-field arithmetic -- there are no tolerances to tune -- and all
randomized checks derive from an explicit seed (default 0), so runs are
reproducible bit for bit.

Both the pytest module ``tests/test_acceptance.py`` and the CLI
``guhecke selftest`` drive this registry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .dieudonne import (check_bt1, classify_type, fingerprint, isocrystal_shape,
                        make_B, make_SS, model_space, newton_slopes,
                        random_basechange, signature, strata_dims)
from .hecke import (central_monomial, check_weyl_invariance, factor_hecke,
                    hecke_polynomial, hecke_value_by_determinant, satake_alpha)
from .laurent import LaurentPoly, Monomial, TPoly
from .rootdatum import norm_monomial, pairing, rho, weyl_group

FACTOR_NS = (3, 5, 7, 9, 11, 13, 15)
WEYL_NS = (3, 5, 7, 9)
CROSSCHECK_POINTS = 100
MODEL_PRIMES = (3, 5, 7)
CLASSIFY_NS = (3, 5, 7)
CLASSIFY_PRIMES = (3, 5)
CLASSIFY_SEEDS = 20
BASECHANGE_COUNT = 100
AUDIT_MAX_N = 99


def _nonzero_fraction(rng: random.Random) -> Fraction:
    num = rng.choice([k for k in range(-9, 10) if k])
    return Fraction(num, rng.randint(1, 9))


def factorization_certificate(seed: int = 0) -> str:
    for n in FACTOR_NS:
        quotient, root = factor_hecke(n)
        assert quotient.degree == n - 1 and quotient.is_monic(), n
        recomposed = quotient * TPoly.linear(root)
        assert recomposed == hecke_polynomial(n), f"recomposition fails at n={n}"
    return f"exact remainder 0 and recomposition for n in {FACTOR_NS}"


def weyl_invariance(seed: int = 0) -> str:
    checked = 0
    for n in WEYL_NS:
        group = weyl_group(n)
        quotient, _ = factor_hecke(n)
        for coeff in (*hecke_polynomial(n).coeffs, *quotient.coeffs):
            assert check_weyl_invariance(coeff, n, group), n
            checked += 1
    return (f"{checked} coefficients fixed by all group elements, "
            f"n in {WEYL_NS}")


def determinant_crosscheck(seed: int = 0) -> str:
    total = 0
    for n in (3, 5):
        hp = hecke_polynomial(n)
        for p in (3, 5):
            rng = random.Random(f"det:{n}:{p}:{seed}")
            for _ in range(CROSSCHECK_POINTS):
                x0 = _nonzero_fraction(rng)
                xs = [_nonzero_fraction(rng) for _ in range(n)]
                t = _nonzero_fraction(rng)
                lhs = hp.evaluate(t, p, [x0, *xs])
                rhs = hecke_value_by_determinant(n, x0, xs, p, t)
                assert lhs == rhs, (n, p, x0, xs, t)
                total += 1
    return f"{total} exact agreements of product form vs determinant"


def central_element(seed: int = 0) -> str:
    for n in FACTOR_NS:
        x0 = Monomial.var(n, 0)
        e = central_monomial(n)
        assert norm_monomial(x0) == e, n
        as_poly = LaurentPoly.from_term(e)
        assert satake_alpha(as_poly, n) == as_poly, n
        assert pairing(rho(n), e.x_exps) == 0, n
    return f"twist-norm of x0 is central and alpha-fixed for n in {FACTOR_NS}"


def signatures(seed: int = 0) -> str:
    count = 0
    for p in MODEL_PRIMES:
        assert signature(make_SS(p).reduction()) == (1, 0), p
        count += 1
        for d in range(1, 10):
            assert signature(make_B(d, p).reduction()) == (d - 1, 1), (d, p)
            count += 1
    return f"{count} model signatures exact, p in {MODEL_PRIMES}"


def slopes(seed: int = 0) -> str:
    count = 0
    for p in MODEL_PRIMES:
        for d in range(1, 10):
            got = newton_slopes(make_B(d, p)).entries
            if d % 2 == 1:
                expected = ((Fraction(1, 2), 2 * d),)
            else:
                expected = ((Fraction(1, 2) - Fraction(1, d), d),
                            (Fraction(1, 2) + Fraction(1, d), d))
            assert got == expected, (d, p, got)
            count += 1
    return f"{count} Newton polygons match the half +- 1/d law"


def bt1_axioms(seed: int = 0) -> str:
    spaces = []
    for p in MODEL_PRIMES:
        spaces.append(make_SS(p).reduction())
        for d in range(1, 10):
            spaces.append(make_B(d, p).reduction())
    for space in spaces:
        assert check_bt1(space)
    for i in range(BASECHANGE_COUNT):
        space = spaces[i % len(spaces)]
        assert check_bt1(random_basechange(space, seed * 100_003 + i)), i
    return (f"{len(spaces)} model reductions and {BASECHANGE_COUNT} "
            f"base changes pass")


def classification_roundtrip(seed: int = 0) -> str:
    recovered = 0
    for n in CLASSIFY_NS:
        for p in CLASSIFY_PRIMES:
            prints = [fingerprint(model_space(n, r, p)) for r in range(1, n + 1)]
            assert len(set(prints)) == n, f"fingerprint collision at n={n}, p={p}"
            for r in range(1, n + 1):
                model = model_space(n, r, p)
                for s in range(CLASSIFY_SEEDS):
                    moved = random_basechange(model, seed * 100_003 + s)
                    assert classify_type(moved, n) == r, (n, p, r, s)
                    recovered += 1
    return (f"{recovered} seeded base changes classified back, "
            f"fingerprints pairwise distinct")


def isocrystal_dimension_audit(seed: int = 0) -> str:
    count = 0
    for n in range(3, AUDIT_MAX_N + 1, 2):
        for r in range((n - 1) // 2 + 1):
            shape = isocrystal_shape(n, r)
            assert shape.slopes.total() == 2 * n, (n, r)
            assert shape.slopes.is_symmetric(), (n, r)
            assert sum(f.dim * f.count for f in shape.factors) == 2 * n, (n, r)
            count += 1
    return f"{count} shapes: multiplicities sum to 2n, symmetric about 1/2"


def strata_table(seed: int = 0) -> str:
    for n in range(3, AUDIT_MAX_N + 1, 2):
        rows = {row.r: row for row in strata_dims(n)}
        assert sorted(rows) == list(range(1, n + 1))
        for i in range(1, n // 2 + 1):
            assert rows[2 * i].dim == n - i, (n, i)
        for i in range((n + 1) // 2):
            assert rows[2 * i + 1].dim == i, (n, i)
        odd_dims = [row.dim for row in rows.values() if row.r % 2 == 1]
        assert max(odd_dims) == (n - 1) // 2 == rows[n].dim, n
        assert rows[2].dim == n - 1 and rows[2].ordinary, n
        assert all(row.supersingular == (row.r % 2 == 1)
                   for row in rows.values()), n
    return f"dimension formulas verified for odd n <= {AUDIT_MAX_N}"


@dataclass(frozen=True)
class Criterion:
    cid: int
    name: str
    run: Callable[[int], str]


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "factorization-certificate", factorization_certificate),
    Criterion(2, "weyl-invariance", weyl_invariance),
    Criterion(3, "determinant-crosscheck", determinant_crosscheck),
    Criterion(4, "central-element", central_element),
    Criterion(5, "signatures", signatures),
    Criterion(6, "slopes", slopes),
    Criterion(7, "bt1-axioms", bt1_axioms),
    Criterion(8, "classification-roundtrip", classification_roundtrip),
    Criterion(9, "isocrystal-dimension-audit", isocrystal_dimension_audit),
    Criterion(10, "strata-table", strata_table),
)


def run_all(seed: int = 0, out=None) -> list[tuple[Criterion, Exception | None]]:
    """Run every registered criterion, printing one pass/fail line each;
    returns (criterion, failure-or-None) pairs."""
    import sys

    stream = out if out is not None else sys.stdout
    results = []
    for criterion in CRITERIA:
        try:
            detail = criterion.run(seed)
        except Exception as exc:  # report and keep going
            results.append((criterion, exc))
            print(f"FAIL {criterion.cid:2d}/{len(CRITERIA)} "
                  f"{criterion.name}: {exc!r}", file=stream)
        else:
            results.append((criterion, None))
            print(f"PASS {criterion.cid:2d}/{len(CRITERIA)} "
                  f"{criterion.name}: {detail}", file=stream)
    passed = sum(1 for _, exc in results if exc is None)
    print(f"{passed}/{len(CRITERIA)} criteria passed", file=stream)
    return results
