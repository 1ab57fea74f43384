"""Left-invariant Ricci solitons: L_X g + Ric = lambda g.

For a left-invariant field X the equation is affine-linear in
``(X1, X2, X3, lambda)``; the six independent entries (ordered 11, 22,
33, 12, 13, 23) form a 6x4 system solved exactly by Gauss-Jordan
elimination.  Only left-invariant fields are searched.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Sequence

from . import exactlinalg as la
from .curvature import CurvatureData, curvature_tensor, einstein_check
from .exactfield import QuadScalar, as_quad
from .liemodel import LieAlgebra3, _unit

ENTRY_ORDER = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))
UNKNOWNS = ("X1", "X2", "X3", "lambda")


class SolitonClass(enum.Enum):
    SHRINKING = "shrinking"
    STEADY = "steady"
    EXPANDING = "expanding"
    FAMILY_IN_LAMBDA = "family_in_lambda"


class CausalCharacter(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"
    VARIES = "varies_within_family"


def classify_lambda(lam: QuadScalar) -> SolitonClass:
    s = as_quad(lam).sign()
    return {1: SolitonClass.SHRINKING, 0: SolitonClass.STEADY, -1: SolitonClass.EXPANDING}[s]


def lie_derivative_metric(alg: LieAlgebra3, X: Sequence) -> la.Matrix:
    """(L_X g)(e_i, e_j) = -<[X, e_i], e_j> - <e_i, [X, e_j]>."""
    X = [as_quad(x) for x in X]
    g = alg.g
    adX = [alg.bracket(X, _unit(i)) for i in range(3)]
    out = la.zeros(3)
    for i in range(3):
        for j in range(i, 3):
            v = -la._dot(adX[i], g[j]) - la._dot(g[i], adX[j])
            out[i][j] = out[j][i] = v
    return out


@dataclass(frozen=True)
class SolitonSystem:
    """Rows of ``A u = b`` with ``u = (X1, X2, X3, lambda)``."""

    A: la.Matrix
    b: la.Vector

    def residual(self, u: Sequence[QuadScalar]) -> la.Vector:
        return [la._dot(row, u) - bi for row, bi in zip(self.A, self.b)]

    def to_json(self) -> dict:
        return {
            "unknowns": list(UNKNOWNS),
            "entries": ["".join(str(k + 1) for k in e) for e in ENTRY_ORDER],
            "A": [[str(x) for x in row] for row in self.A],
            "b": [str(x) for x in self.b],
        }


def build_system(alg: LieAlgebra3, data: CurvatureData | None = None) -> SolitonSystem:
    data = data or curvature_tensor(alg)
    lie = [lie_derivative_metric(alg, _unit(k)) for k in range(3)]
    A, b = [], []
    for i, j in ENTRY_ORDER:
        A.append([lie[0][i][j], lie[1][i][j], lie[2][i][j], -alg.g[i][j]])
        b.append(-data.ric[i][j])
    return SolitonSystem(A, b)


@dataclass(frozen=True)
class SolitonSolutionSet:
    exists: bool
    particular: tuple[la.Vector, QuadScalar] | None
    homogeneous_basis: list[la.Vector]
    trivial: bool
    soliton_class: SolitonClass | None = None
    causal_character: CausalCharacter | None = None
    echelon: la.Matrix = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)
    reference: list[dict] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.homogeneous_basis) if self.exists else -1

    @property
    def nontrivial(self) -> bool:
        return self.exists and not self.trivial

    @property
    def lambda_free(self) -> bool:
        return any(v[3] for v in self.homogeneous_basis)

    def contains(self, X: Sequence, lam) -> bool:
        """Whether (X, lambda) lies in the affine solution set."""
        if not self.exists:
            return False
        u = [as_quad(x) for x in X] + [as_quad(lam)]
        X0, l0 = self.particular
        diff = [a - b for a, b in zip(u, list(X0) + [l0])]
        if not self.homogeneous_basis:
            return not any(diff)
        K = la.transpose(self.homogeneous_basis)
        return la.solve_affine(K, diff).consistent

    def points(self) -> list[tuple[la.Vector, QuadScalar]]:
        """The particular solution plus particular + each basis vector."""
        if not self.exists:
            return []
        X0, l0 = self.particular
        out = [(list(X0), l0)]
        for v in self.homogeneous_basis:
            out.append(([a + b for a, b in zip(X0, v[:3])], l0 + v[3]))
        return out


def solve(alg: LieAlgebra3, data: CurvatureData | None = None, with_reference: bool = True) -> SolitonSolutionSet:
    data = data or curvature_tensor(alg)
    system = build_system(alg, data)
    sol = la.solve_affine(system.A, system.b)
    trivial = einstein_check(alg, data)
    if not sol.consistent:
        result = SolitonSolutionSet(False, None, [], trivial, echelon=sol.echelon, pivots=sol.pivots)
    else:
        x = sol.particular
        result = SolitonSolutionSet(True, (x[:3], x[3]), sol.kernel, trivial,
                                    echelon=sol.echelon, pivots=sol.pivots)
        result = annotate(result, alg)
    if with_reference and alg.family is not None:
        from .reference_tables import reference_solitons

        refs = []
        for ref in reference_solitons(alg):
            refs.append(dict(ref, contained=all(result.contains(X, lam) for X, lam in ref["points"])))
        result = replace(result, reference=refs)
    return result


def annotate(sol: SolitonSolutionSet, alg: LieAlgebra3) -> SolitonSolutionSet:
    if not sol.exists:
        return sol
    if sol.lambda_free:
        cls = SolitonClass.FAMILY_IN_LAMBDA
    else:
        cls = classify_lambda(sol.particular[1])
    return replace(sol, soliton_class=cls, causal_character=causal_character_of_family(
        alg.g, sol.particular[0], [v[:3] for v in sol.homogeneous_basis]))


def causal_character(g: la.Matrix, X: Sequence) -> CausalCharacter:
    s = la.bilinear(g, X, X).sign()
    return {1: CausalCharacter.SPACELIKE, 0: CausalCharacter.NULL, -1: CausalCharacter.TIMELIKE}[s]


def causal_character_of_family(g: la.Matrix, X0: Sequence, directions: Sequence[Sequence]) -> CausalCharacter:
    """Causal character of X0 + span(directions), if it is the same everywhere.

    q(t) = <X0 + V t, X0 + V t> = c + 2 b.t + t.H.t is of constant sign on
    all of R^m iff it vanishes identically or, for the positive case,
    H >= 0, b in range(H) and c - b.H^+ b > 0 (mirror for negative).
    """
    if not directions:
        return causal_character(g, X0)
    m = len(directions)
    H = [[la.bilinear(g, directions[i], directions[j]) for j in range(m)] for i in range(m)]
    b = [la.bilinear(g, X0, v) for v in directions]
    c = la.bilinear(g, X0, X0)
    if la.is_zero(H) and not any(b) and not c:
        return CausalCharacter.NULL
    for s, label in ((1, CausalCharacter.SPACELIKE), (-1, CausalCharacter.TIMELIKE)):
        Hs = la.scale(s, H)
        if la.inertia(Hs).negative:
            continue
        sol = la.solve_affine(Hs, [s * x for x in b])
        if not sol.consistent:
            continue
        minimum = s * c - la._dot([s * x for x in b], sol.particular)
        if minimum.sign() > 0:
            return label
    return CausalCharacter.VARIES
