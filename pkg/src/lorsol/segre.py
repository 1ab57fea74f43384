"""Segre type of a metric-self-adjoint operator in Lorentzian signature.

Four Jordan structures are possible in dimension three::

    {11,1}  diagonalizable              DIAG_11_1
    {1zz}   one real, two complex roots COMPLEX_1ZZ
    {21}    one 2x2 Jordan block        JORDAN_21
    {3}     one 3x3 Jordan block        JORDAN_3

The exact path works over Q(sqrt 2) and never rounds.  The float path uses
the same decision sequence (discriminant, repeated root, ranks) on the
operator scaled to unit max entry; each decision has a gray zone
``(tol, sqrt(tol))`` and landing in it raises :class:`AmbiguousSegreType`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

import numpy as np

from . import exactlinalg as la
from .exactfield import ZERO, QuadScalar

DEFAULT_TOL = 1e-9

Eigenvalue = Union[QuadScalar, float, complex]


class SegreType(enum.Enum):
    DIAG_11_1 = "{11,1}"
    COMPLEX_1ZZ = "{1zz}"
    JORDAN_21 = "{21}"
    JORDAN_3 = "{3}"

    @property
    def notation(self) -> str:
        return self.value


class AmbiguousSegreType(ValueError):
    """The float path could not separate two candidate types within tol."""


class NotSelfAdjoint(ValueError):
    pass


@dataclass(frozen=True)
class SegreReport:
    type: SegreType
    degenerate: bool
    eigenvalues: list[Eigenvalue]
    minimal_poly_degree: int
    exact: bool = True
    # all three eigenvalues coincide (the repeated-root notion used for {21})
    triple_eigenvalue: bool = field(default=False)

    def to_json(self) -> dict:
        return {
            "type": self.type.notation,
            "name": self.type.name,
            "degenerate": self.degenerate,
            "triple_eigenvalue": self.triple_eigenvalue,
            "minimal_poly_degree": self.minimal_poly_degree,
            "exact": self.exact,
            "eigenvalues": [_eig_json(e) for e in self.eigenvalues],
        }


def _eig_json(e: Eigenvalue):
    if isinstance(e, QuadScalar):
        return {"exact": str(e), "float": float(e)}
    if isinstance(e, complex):
        return {"re": e.real, "im": e.imag}
    return {"float": float(e)}


def _is_exact_entry(x) -> bool:
    return isinstance(x, (QuadScalar, Rational, str, dict)) and not isinstance(x, bool)


def _is_exact_matrix(op) -> bool:
    if isinstance(op, np.ndarray):
        return op.dtype == object and all(_is_exact_entry(x) for x in op.ravel())
    return all(_is_exact_entry(x) for row in op for x in row)


def char_poly(op: la.Matrix) -> tuple[QuadScalar, QuadScalar, QuadScalar]:
    """(t, s, d) with char poly x^3 - t x^2 + s x - d."""
    t = la.trace(op)
    s = ZERO
    for i in range(3):
        for j in range(i + 1, 3):
            s = s + op[i][i] * op[j][j] - op[i][j] * op[j][i]
    return t, s, la.det(op)


def discriminant(t, s, d):
    """Discriminant of x^3 - t x^2 + s x - d (works for exact and float)."""
    b, c, e = -t, s, -d
    return 18 * b * c * e - 4 * b ** 3 * e + b * b * c * c - 4 * c ** 3 - 27 * e * e


# exact path ------------------------------------------------------------


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def exact_sqrt(x: QuadScalar) -> QuadScalar | None:
    """A square root of x in Q(sqrt2), if one exists."""
    if not x:
        return ZERO
    a, b = x.a, x.b
    n = _fraction_sqrt(a * a - 2 * b * b)
    if n is None:
        return None
    for cand in ((a + n) / 2, (a - n) / 2):
        u = _fraction_sqrt(cand)
        if u is None:
            continue
        if u == 0:
            # pure v*sqrt2 root: x = 2 v^2
            v = _fraction_sqrt(a / 2)
            if v is None:
                continue
        else:
            v = b / (2 * u)
        r = QuadScalar(u, v)
        if r * r == x:
            return r
    return None


def _eval_cubic(x: QuadScalar, t, s, d) -> QuadScalar:
    return ((x - t) * x + s) * x - d


def _recognize_real_root(t, s, d) -> QuadScalar | None:
    """Find a root in Q(sqrt2) by pairing float roots of p and its conjugate."""
    p = np.roots([1.0, -float(t), float(s), -float(d)])
    pc = np.roots([1.0, -float(t.conjugate()), float(s.conjugate()), -float(d.conjugate())])
    r2 = math.sqrt(2.0)
    for r in p:
        if abs(r.imag) > 1e-7 * (1 + abs(r.real)):
            continue
        for rc in pc:
            if abs(rc.imag) > 1e-7 * (1 + abs(rc.real)):
                continue
            a = (r.real + rc.real) / 2
            b = (r.real - rc.real) / (2 * r2)
            for lim in (10**3, 10**6, 10**9):
                cand = QuadScalar(Fraction(a).limit_denominator(lim), Fraction(b).limit_denominator(lim))
                if not _eval_cubic(cand, t, s, d):
                    return cand
    return None


def _exact_eigenvalues_distinct(t, s, d, complex_pair: bool) -> list[Eigenvalue]:
    r = _recognize_real_root(t, s, d)
    if r is None:
        roots = sorted(np.roots([1.0, -float(t), float(s), -float(d)]), key=lambda z: abs(z.imag))
        if complex_pair:
            return [float(roots[0].real), complex(roots[1]), complex(roots[2])]
        return [float(z.real) for z in roots]
    # deflate: p = (x - r)(x^2 + B x + C)
    B = r - t
    C = s + r * B
    D = B * B - 4 * C
    if complex_pair:
        sq = math.sqrt(-float(D))
        return [r, complex(-float(B) / 2, -sq / 2), complex(-float(B) / 2, sq / 2)]
    root = exact_sqrt(D)
    if root is None:
        sq = math.sqrt(float(D))
        return [r, (-float(B) - sq) / 2, (-float(B) + sq) / 2]
    return [r, (-B - root) / 2, (-B + root) / 2]


def _check_self_adjoint_exact(op: la.Matrix, g: la.Matrix) -> None:
    if not la.is_symmetric(la.matmul(g, op)):
        raise NotSelfAdjoint("operator is not self-adjoint with respect to the metric")


def _classify_exact(op: la.Matrix, g: la.Matrix) -> SegreReport:
    _check_self_adjoint_exact(op, g)
    t, s, d = char_poly(op)
    disc = discriminant(t, s, d)
    sgn = disc.sign()
    if sgn < 0:
        ev = _exact_eigenvalues_distinct(t, s, d, complex_pair=True)
        return SegreReport(SegreType.COMPLEX_1ZZ, False, _sorted(ev), 3, True, False)
    if sgn > 0:
        ev = _exact_eigenvalues_distinct(t, s, d, complex_pair=False)
        return SegreReport(SegreType.DIAG_11_1, False, _sorted(ev), 3, True, False)
    spread = t * t - 3 * s
    if not spread:
        r = t / 3
        k = la.rank(la.sub(op, la.scale(r, la.identity(3))))
        kind = {0: SegreType.DIAG_11_1, 1: SegreType.JORDAN_21, 2: SegreType.JORDAN_3}[k]
        return SegreReport(kind, True, [r, r, r], k + 1, True, True)
    # double root r, simple root u: r = (t s - 9 d) / (2 (t^2 - 3 s))
    r = (t * s - 9 * d) / (2 * spread)
    u = t - 2 * r
    k = la.rank(la.sub(op, la.scale(r, la.identity(3))))
    kind = SegreType.DIAG_11_1 if k == 1 else SegreType.JORDAN_21
    return SegreReport(kind, True, _sorted([r, r, u]), 2 if k == 1 else 3, True, False)


# float path ------------------------------------------------------------


def _decide(x: float, tol: float, what: str) -> int:
    """-1, 0, +1 with a gray zone between tol and sqrt(tol)."""
    ax = abs(x)
    if ax <= tol:
        return 0
    if ax < math.sqrt(tol):
        raise AmbiguousSegreType(f"{what} = {x:.3e} is within tolerance band ({tol:.1e}, {math.sqrt(tol):.1e})")
    return 1 if x > 0 else -1


def _rank_float(a: np.ndarray, tol: float) -> int:
    sv = np.linalg.svd(a, compute_uv=False)
    return sum(_decide(float(x), tol, "singular value") != 0 for x in sv)


def _classify_float(op: np.ndarray, g: np.ndarray, tol: float) -> SegreReport:
    m = float(np.max(np.abs(op)))
    if m == 0.0:
        return SegreReport(SegreType.DIAG_11_1, True, [0.0, 0.0, 0.0], 1, False, True)
    gop = g @ op
    if np.max(np.abs(gop - gop.T)) > max(tol, 1e-12) * m * float(np.max(np.abs(g))):
        raise NotSelfAdjoint("operator is not self-adjoint with respect to the metric")
    A = op / m
    t = float(np.trace(A))
    s = float(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0] + A[0, 0] * A[2, 2] - A[0, 2] * A[2, 0]
              + A[1, 1] * A[2, 2] - A[1, 2] * A[2, 1])
    d = float(np.linalg.det(A))
    sgn = _decide(discriminant(t, s, d), tol, "discriminant")
    if sgn != 0:
        ev = [complex(z) for z in np.linalg.eigvals(A) * m]
        if sgn < 0:
            reals = sorted(ev, key=lambda z: abs(z.imag))
            out = [reals[0].real] + [complex(z) for z in reals[1:]]
            return SegreReport(SegreType.COMPLEX_1ZZ, False, _sorted(out), 3, False, False)
        return SegreReport(SegreType.DIAG_11_1, False, _sorted([z.real for z in ev]), 3, False, False)
    spread = t * t - 3 * s
    if _decide(spread, tol, "eigenvalue spread") == 0:
        r = t / 3
        k = _rank_float(A - r * np.eye(3), tol)
        kind = {0: SegreType.DIAG_11_1, 1: SegreType.JORDAN_21, 2: SegreType.JORDAN_3}[k]
        return SegreReport(kind, True, [r * m] * 3, k + 1, False, True)
    r = (t * s - 9 * d) / (2 * spread)
    u = t - 2 * r
    k = _rank_float(A - r * np.eye(3), tol)
    kind = SegreType.DIAG_11_1 if k == 1 else SegreType.JORDAN_21
    return SegreReport(kind, True, _sorted([r * m, r * m, u * m]), 2 if k == 1 else 3, False, False)


def _sort_key(e: Eigenvalue):
    if isinstance(e, complex):
        return (e.real, e.imag)
    return (float(e), 0.0)


def _sorted(ev: Sequence[Eigenvalue]) -> list[Eigenvalue]:
    exact = [e for e in ev if isinstance(e, QuadScalar)]
    if len(exact) == len(ev):
        return sorted(exact)
    return sorted(ev, key=_sort_key)


def classify(op, metric, tol: float | None = None) -> SegreReport:
    """Classify ``op`` (3x3, self-adjoint for ``metric``).

    ``tol=None`` picks the exact path for exact entries and the float path
    with ``DEFAULT_TOL`` otherwise; ``tol=0`` forces the exact path and any
    positive ``tol`` forces the float path.
    """
    g = getattr(metric, "g", metric)
    if tol is None:
        tol = 0.0 if _is_exact_matrix(op) and _is_exact_matrix(g) else DEFAULT_TOL
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if tol == 0:
        if not (_is_exact_matrix(op) and _is_exact_matrix(g)):
            raise ValueError("exact classification needs exact entries")
        return _classify_exact(la.mat(op), la.mat(g))
    A = np.array([[float(x) for x in row] for row in op], dtype=float)
    G = np.array([[float(x) for x in row] for row in g], dtype=float)
    return _classify_float(A, G, tol)


def is_two_step_nilpotent(op, tol: float | None = None) -> bool:
    """op != 0 and op^2 == 0 (exactly, or up to tol * |op|^2 in max norm)."""
    if tol is None and _is_exact_matrix(op):
        m = la.mat(op)
        return not la.is_zero(m) and la.is_zero(la.matmul(m, m))
    tol = DEFAULT_TOL if tol is None else tol
    A = np.array([[float(x) for x in row] for row in op], dtype=float)
    n = float(np.max(np.abs(A)))
    if n == 0.0:
        return False
    return float(np.max(np.abs(A @ A))) <= tol * n * n


def classify_algebra(alg, tol: float | None = None) -> SegreReport:
    from .curvature import curvature_tensor

    return classify(curvature_tensor(alg).ric_op, alg.metric, tol)
