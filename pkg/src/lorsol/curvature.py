"""Levi-Civita connection and curvature of left-invariant metrics.

Everything is computed exactly from the structure constants of a
:class:`~lorsol.liemodel.LieAlgebra3`.

Conventions (zero-based indices in code):

* ``conn[i][j][k]`` is the e_k component of nabla_{e_i} e_j.
* ``R(X, Y) = nabla_[X,Y] - [nabla_X, nabla_Y]`` and
  ``R_ijkl = <R(e_i, e_j) e_k, e_l>``.  This is the sign for which the
  component tables of the unimodular and non-unimodular families come out
  in the reference tables; ``test_curvature`` pins R_2332 = 3/4 for Ia(1, 0, 0).
* ``ric(X, Y) = trace(Z -> R(Z, X) Y)`` with the sign flipped to match
  the textbook Ricci tensor (round spheres have positive Ricci), which is
  also the sign that reproduces the reference Ricci eigenvalues.
* ``ric_op = g^{-1} ric``: column j holds the components of Ric(e_j).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import exactlinalg as la
from .exactfield import ZERO, QuadScalar
from .liemodel import LieAlgebra3

Tensor3 = list[list[list[QuadScalar]]]
Tensor4 = list[list[list[list[QuadScalar]]]]


@dataclass(frozen=True)
class ConnectionCoeffs:
    gamma: Tensor3

    def nabla(self, i: int, j: int) -> list[QuadScalar]:
        return list(self.gamma[i][j])


@dataclass(frozen=True)
class CurvatureData:
    R: Tensor4
    ric: la.Matrix
    ric_op: la.Matrix
    scal: QuadScalar

    def component(self, i: int, j: int, k: int, l: int) -> QuadScalar:
        """R_ijkl with one-based indices, as in the reference tables."""
        return self.R[i - 1][j - 1][k - 1][l - 1]

    def nonzero_components(self) -> dict[tuple[int, int, int, int], QuadScalar]:
        out = {}
        for idx in itertools.product(range(3), repeat=4):
            v = self.R[idx[0]][idx[1]][idx[2]][idx[3]]
            if v:
                out[tuple(i + 1 for i in idx)] = v
        return out


def levi_civita(alg: LieAlgebra3) -> ConnectionCoeffs:
    """Koszul formula for left-invariant fields.

    2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>
    """
    g = alg.g
    ginv = alg.metric.inverse()
    c = alg.c

    def lower(i: int, j: int, l: int) -> QuadScalar:
        # <[e_i, e_j], e_l>
        s = ZERO
        for m in range(3):
            if c[i][j][m] and g[m][l]:
                s = s + c[i][j][m] * g[m][l]
        return s

    half = QuadScalar(1, 0) / 2
    gamma: Tensor3 = [[[ZERO] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            koszul = [half * (lower(i, j, l) - lower(j, l, i) + lower(l, i, j)) for l in range(3)]
            gamma[i][j] = [
                sum((koszul[l] * ginv[l][k] for l in range(3) if koszul[l] and ginv[l][k]), ZERO)
                for k in range(3)
            ]
    return ConnectionCoeffs(gamma)


def _riemann_vectors(alg: LieAlgebra3, conn: ConnectionCoeffs) -> Tensor4:
    """Rv[i][j][k] = components of R(e_i, e_j) e_k."""
    G = conn.gamma
    c = alg.c

    def nabla_vec(i: int, v: list[QuadScalar]) -> list[QuadScalar]:
        out = [ZERO] * 3
        for m in range(3):
            if v[m]:
                for n in range(3):
                    if G[i][m][n]:
                        out[n] = out[n] + v[m] * G[i][m][n]
        return out

    Rv: Tensor4 = [[[[ZERO] * 3 for _ in range(3)] for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            if j < i:
                Rv[i][j] = [[-x for x in vec] for vec in Rv[j][i]]
                continue
            for k in range(3):
                a = nabla_vec(i, G[j][k])
                b = nabla_vec(j, G[i][k])
                br = [ZERO] * 3
                for m in range(3):
                    if c[i][j][m]:
                        for n in range(3):
                            if G[m][k][n]:
                                br[n] = br[n] + c[i][j][m] * G[m][k][n]
                # R(X,Y) = nabla_[X,Y] - [nabla_X, nabla_Y]
                Rv[i][j][k] = [br[n] - a[n] + b[n] for n in range(3)]
    return Rv


def curvature_tensor(alg: LieAlgebra3, conn: ConnectionCoeffs | None = None) -> CurvatureData:
    conn = conn or levi_civita(alg)
    g = alg.g
    Rv = _riemann_vectors(alg, conn)
    R: Tensor4 = [[[[la._dot(Rv[i][j][k], [g[n][l] for n in range(3)]) for l in range(3)]
                    for k in range(3)] for j in range(3)] for i in range(3)]
    # ric(X, Y) = -trace(Z -> R(Z, X) Y) under the R sign chosen above
    ric = [[-sum((Rv[i][j][k][i] for i in range(3)), ZERO) for k in range(3)] for j in range(3)]
    ric_op = la.matmul(alg.metric.inverse(), ric)
    return CurvatureData(R, ric, ric_op, la.trace(ric_op))


def ricci(alg: LieAlgebra3) -> tuple[la.Matrix, la.Matrix, QuadScalar]:
    data = curvature_tensor(alg)
    return data.ric, data.ric_op, data.scal


def einstein_check(alg: LieAlgebra3, data: CurvatureData | None = None) -> bool:
    """True iff ric = c * g for a constant c."""
    data = data or curvature_tensor(alg)
    # ric = c g  <=>  ric_op = c I
    op = data.ric_op
    c = op[0][0]
    return all(op[i][j] == (c if i == j else ZERO) for i in range(3) for j in range(3))


def torsion_free(alg: LieAlgebra3, conn: ConnectionCoeffs) -> bool:
    return all(
        [a - b for a, b in zip(conn.gamma[i][j], conn.gamma[j][i])] == list(alg.c[i][j])
        for i in range(3) for j in range(3)
    )


def metric_compatible(alg: LieAlgebra3, conn: ConnectionCoeffs) -> bool:
    g = alg.g
    for i, j, k in itertools.product(range(3), repeat=3):
        a = la._dot(conn.gamma[i][j], [g[n][k] for n in range(3)])
        b = la._dot(conn.gamma[i][k], [g[n][j] for n in range(3)])
        if a + b:
            return False
    return True


def covariant_derivative(alg: LieAlgebra3, data: CurvatureData | None = None,
                         conn: ConnectionCoeffs | None = None) -> list[Tensor4]:
    """(nabla_{e_m} R)_ijkl for left-invariant data (components are constant)."""
    conn = conn or levi_civita(alg)
    data = data or curvature_tensor(alg, conn)
    G = conn.gamma
    R = data.R
    rng = range(3)
    out = []
    for m in rng:
        Gm = G[m]
        T = [[[[ZERO] * 3 for _ in rng] for _ in rng] for _ in rng]
        for i, j, k, l in itertools.product(rng, repeat=4):
            s = ZERO
            for n in rng:
                if Gm[i][n] and R[n][j][k][l]:
                    s = s + Gm[i][n] * R[n][j][k][l]
                if Gm[j][n] and R[i][n][k][l]:
                    s = s + Gm[j][n] * R[i][n][k][l]
                if Gm[k][n] and R[i][j][n][l]:
                    s = s + Gm[k][n] * R[i][j][n][l]
                if Gm[l][n] and R[i][j][k][n]:
                    s = s + Gm[l][n] * R[i][j][k][n]
            T[i][j][k][l] = -s
        out.append(T)
    return out


def is_locally_symmetric(alg: LieAlgebra3) -> bool:
    """nabla R = 0, exactly."""
    return not any(x for T in covariant_derivative(alg) for a in T for b in a for c in b for x in c)
