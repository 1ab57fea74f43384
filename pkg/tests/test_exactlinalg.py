from hypothesis import given, strategies as st

from lorsol import exactlinalg as la
from lorsol.exactfield import ONE, SQRT2, ZERO

from conftest import quads

matrices3 = st.lists(st.lists(quads, min_size=3, max_size=3), min_size=3, max_size=3)


def test_det_and_inverse():
    a = la.mat([[2, 1, 0], [1, SQRT2, 0], [0, 0, -1]])
    assert la.det(a) == -(2 * SQRT2 - 1)
    assert la.matmul(a, la.inverse(a)) == la.identity(3)


def test_rref_rank():
    a = la.mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    m, piv = la.rref(a)
    assert piv == [0, 1] and la.rank(a) == 2


def test_solve_affine_free_variables_zero():
    sol = la.solve_affine(la.mat([[1, 1, 0], [0, 0, 1]]), [ONE, 2])
    assert sol.consistent and sol.particular == [1, 0, 2]
    assert sol.kernel == [[-1, 1, 0]]


def test_inconsistent_system():
    sol = la.solve_affine(la.mat([[1, 1], [1, 1]]), [ONE, ZERO])
    assert not sol.consistent


@given(matrices3, st.lists(quads, min_size=3, max_size=3))
def test_solutions_satisfy_system(a, b):
    sol = la.solve_affine(a, b)
    if sol.consistent:
        assert la.matvec(a, sol.particular) == b
        for v in sol.kernel:
            assert not any(la.matvec(a, v))
        assert len(sol.kernel) == 3 - la.rank(a)


@given(matrices3)
def test_det_multiplicative(a):
    b = la.mat([[1, 2, 0], [0, SQRT2, 1], [1, 0, -1]])
    assert la.det(la.matmul(a, b)) == la.det(a) * la.det(b)


def lorentz_like():
    return [la.diag([1, 1, -1]), la.diag([-1, 1, 1]), la.mat([[1, 0, 0], [0, 0, -1], [0, -1, 0]]),
            la.mat([[0, 0, 1], [0, 1, 0], [1, 0, 3]])]


def test_inertia_examples():
    for g in lorentz_like():
        assert la.inertia(g).as_tuple() == (2, 1, 0)
    assert la.inertia(la.zeros(3)).as_tuple() == (0, 0, 3)
    assert la.inertia(la.mat([[0, 1, 0], [1, 0, 0], [0, 0, 0]])).as_tuple() == (1, 1, 1)


@given(matrices3)
def test_inertia_congruence_invariant(a):
    s = la.add(a, la.transpose(a))
    p = la.mat([[1, SQRT2, 0], [0, 1, 2], [1, 0, 1]])
    t = la.matmul(la.matmul(p, s), la.transpose(p))
    i1, i2 = la.inertia(s), la.inertia(t)
    assert i1.as_tuple() == i2.as_tuple()
    assert i1.zero == 3 - la.rank(s)


def _brute_inertia_sign_of_det(s):
    d = la.det(s)
    return d.sign()


@given(matrices3)
def test_inertia_det_sign(a):
    s = la.add(a, la.transpose(a))
    i = la.inertia(s)
    sd = _brute_inertia_sign_of_det(s)
    if i.zero:
        assert sd == 0
    else:
        assert sd == (-1) ** i.negative
