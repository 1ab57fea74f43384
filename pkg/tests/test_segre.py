import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lorsol import exactlinalg as la
from lorsol.curvature import ricci
from lorsol.exactfield import ONE, SQRT2, QuadScalar
from lorsol.liemodel import FAMILIES, change_basis, family
from lorsol.segre import (AmbiguousSegreType, NotSelfAdjoint, SegreType, char_poly, classify, classify_algebra,
                          discriminant, exact_sqrt, is_two_step_nilpotent)

from conftest import quads
from test_liemodel import random_params

LOR = la.diag([1, 1, -1])
H = ONE / 2


def min_poly_degree(op):
    """Krylov oracle: smallest k with I, A, ..., A^k linearly dependent."""
    powers = [la.identity(3)]
    for k in range(1, 4):
        powers.append(la.matmul(powers[-1], op))
        rows = [[p[i][j] for p in powers] for i in range(3) for j in range(3)]
        if la.rank(rows) < len(powers):
            return k
    return 3


def oracle_type(op):
    t, s, d = char_poly(op)
    disc = discriminant(t, s, d)
    if disc.sign() < 0:
        return SegreType.COMPLEX_1ZZ
    distinct = 3 if disc.sign() > 0 else (1 if t * t == 3 * s else 2)
    k = min_poly_degree(op)
    if k == distinct:
        return SegreType.DIAG_11_1
    if distinct == 1:
        return SegreType.JORDAN_3 if k == 3 else SegreType.JORDAN_21
    return SegreType.JORDAN_21


def self_adjoint(sym, g=LOR):
    return la.matmul(la.inverse(g), sym)


def test_III_is_type_3():
    r = classify_algebra(family("III", alpha=1))
    assert r.type is SegreType.JORDAN_3
    assert r.eigenvalues == [-H] * 3 and r.minimal_poly_degree == 3 and r.triple_eigenvalue


def test_Ib_complex():
    r = classify_algebra(family("Ib", alpha=1, beta=1, gamma=0))
    assert r.type is SegreType.COMPLEX_1ZZ and not r.degenerate
    assert classify_algebra(family("Ib", alpha=1, beta=1, gamma=1)).type is SegreType.COMPLEX_1ZZ


def test_zero_operator():
    r = classify(la.zeros(3), LOR)
    assert r.type is SegreType.DIAG_11_1 and r.degenerate and r.eigenvalues == [0, 0, 0]


def test_II_equal_parameters():
    r = classify_algebra(family("II", alpha=1, beta=1))
    assert r.type is SegreType.JORDAN_21 and r.degenerate and r.triple_eigenvalue
    assert r.eigenvalues == [-H] * 3
    op = ricci(family("II", alpha=1, beta=1))[1]
    assert la.rank(la.add(op, la.scale(H, la.identity(3)))) == 1


def test_II_distinct_double_root():
    r = classify_algebra(family("II", alpha=1, beta=2))
    assert r.type is SegreType.JORDAN_21 and r.degenerate and not r.triple_eigenvalue
    assert r.eigenvalues == [-3 * H, -3 * H, -H]


def test_Ia_with_sqrt2_eigenvalues():
    r = classify_algebra(family("Ia", alpha=SQRT2, beta=1, gamma=0))
    assert r.type is SegreType.DIAG_11_1
    assert r.eigenvalues == [-H, QuadScalar(Fraction(3, 2), -1), H]


def test_nilpotent_examples():
    assert is_two_step_nilpotent(ricci(family("II", alpha=0, beta=1))[1])
    assert not is_two_step_nilpotent(la.identity(3))
    assert not is_two_step_nilpotent(la.zeros(3))


def test_rejects_non_self_adjoint():
    with pytest.raises(NotSelfAdjoint):
        classify(la.mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]), LOR)


def test_exact_sqrt():
    assert exact_sqrt(QuadScalar(3, 2)) == QuadScalar(1, 1)
    assert exact_sqrt(QuadScalar(Fraction(3, 2) * 6)) == 3
    assert exact_sqrt(QuadScalar(2)) == SQRT2
    assert exact_sqrt(QuadScalar(3)) is None
    assert exact_sqrt(QuadScalar(-1)) is None
    assert exact_sqrt(QuadScalar(Fraction(3, 2) * 12, 0)) == QuadScalar(0, 3)


@pytest.mark.parametrize("tag", FAMILIES)
def test_family_ricci_matches_oracle(tag):
    rng = random.Random(12)
    for _ in range(30):
        alg = family(tag, **random_params(tag, rng))
        op = ricci(alg)[1]
        r = classify(op, alg.metric)
        assert r.type is oracle_type(op)
        assert r.minimal_poly_degree == min_poly_degree(op)
        if r.type is SegreType.JORDAN_3:
            assert len(set(r.eigenvalues)) == 1


symmetric = st.tuples(quads, quads, quads, quads, quads, quads)


def _sym(v):
    a, b, c, d, e, f = v
    return la.mat([[a, b, c], [b, d, e], [c, e, f]])


@given(symmetric)
def test_random_self_adjoint_matches_oracle(v):
    op = self_adjoint(_sym(v))
    r = classify(op, LOR)
    assert r.type is oracle_type(op)
    t, s, d = char_poly(op)
    assert r.degenerate == (discriminant(t, s, d) == 0)
    if r.type is SegreType.DIAG_11_1 and r.exact and all(isinstance(e, QuadScalar) for e in r.eigenvalues):
        for e in set(r.eigenvalues):
            assert la.rank(la.sub(op, la.scale(e, la.identity(3)))) == 3 - r.eigenvalues.count(e)


@given(symmetric, st.sampled_from([QuadScalar(2), QuadScalar(-1, 1), QuadScalar(0, -3)]))
def test_scaling_invariance(v, c):
    op = self_adjoint(_sym(v))
    r1, r2 = classify(op, LOR), classify(la.scale(c, op), LOR)
    assert r1.type is r2.type
    if r1.type is not SegreType.COMPLEX_1ZZ and all(isinstance(e, QuadScalar) for e in r1.eigenvalues):
        assert sorted(c * e for e in r1.eigenvalues) == r2.eigenvalues


BOOST = la.mat([[3, 0, 2 * SQRT2], [0, 1, 0], [2 * SQRT2, 0, 3]])


@pytest.mark.parametrize("tag", ["Ia", "Ib", "II", "III"])
def test_isometry_invariance(tag):
    rng = random.Random(13)
    for _ in range(10):
        alg = family(tag, **random_params(tag, rng))
        r1 = classify_algebra(alg)
        r2 = classify_algebra(change_basis(alg, BOOST))
        assert (r1.type, r1.degenerate) == (r2.type, r2.degenerate)
        if r1.type is not SegreType.COMPLEX_1ZZ:
            assert r1.eigenvalues == r2.eigenvalues


@pytest.mark.parametrize("tag", FAMILIES)
def test_float_path_agrees(tag):
    rng = random.Random(14)
    for _ in range(20):
        alg = family(tag, **random_params(tag, rng))
        op = ricci(alg)[1]
        exact = classify(op, alg.metric)
        fop = [[float(x) for x in row] for row in op]
        try:
            approx = classify(fop, alg.metric, tol=1e-9)
        except AmbiguousSegreType:
            continue
        assert approx.type is exact.type
        assert not approx.exact


def test_float_gray_zone_is_an_error():
    N = np.array([[float(x) for x in row] for row in ricci(family("II", alpha=0, beta=1))[1]])
    op = np.eye(3) + 1e-6 * N / np.max(np.abs(N))
    with pytest.raises(AmbiguousSegreType):
        classify(op, LOR, tol=1e-9)
    clear = classify(np.eye(3) + 1e-2 * N / np.max(np.abs(N)), LOR, tol=1e-9)
    assert clear.type is SegreType.JORDAN_21
    assert classify(np.eye(3), LOR, tol=1e-9).type is SegreType.DIAG_11_1


def test_eigenvalues_sorted():
    r = classify_algebra(family("IV1", alpha=1, beta=0, gamma=0, delta=2))
    assert r.eigenvalues == sorted(r.eigenvalues)
    assert r.to_json()["type"] == r.type.notation
