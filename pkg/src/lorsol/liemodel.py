"""Three-dimensional Lorentzian Lie algebras.

An algebra is a pair (structure constants, metric on the basis).  The
structure constants follow ``[e_i, e_j] = sum_k c[i][j][k] e_k`` with
zero-based indices.  Family constructors reproduce the unimodular classes
Ia, Ib, II, III (orthonormal basis of signature (++-)) and the
non-unimodular classes IV.1-IV.3 in their standard normal forms;
basis order is never re-sorted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import exactlinalg as la
from .exactfield import ONE, SQRT2, ZERO, QuadScalar, as_quad

Bracket = list[list[list[QuadScalar]]]

FAMILIES = ("Ia", "Ib", "II", "III", "IV1", "IV2", "IV3")
LORENTZ_DIAG = la.diag([1, 1, -1])
HALF = ONE / 2
INV_SQRT2 = SQRT2 / 2


class ConstraintError(ValueError):
    """Raised when family parameters violate the family's defining relation."""


def _zero_bracket() -> Bracket:
    return [[[ZERO] * 3 for _ in range(3)] for _ in range(3)]


@dataclass(frozen=True)
class Metric3:
    """Symmetric, nondegenerate 3x3 metric of Lorentzian signature."""

    g: la.Matrix

    def __post_init__(self) -> None:
        g = la.mat(self.g)
        object.__setattr__(self, "g", g)
        if len(g) != 3 or any(len(r) != 3 for r in g):
            raise ValueError("metric must be 3x3")
        if not la.is_symmetric(g):
            raise ValueError("metric must be symmetric")
        if not la.det(g):
            raise ValueError("metric is degenerate")
        if la.inertia(g).as_tuple() != (2, 1, 0):
            raise ValueError("metric is not Lorentzian (signature must be ++-)")

    def __call__(self, u: Sequence[QuadScalar], v: Sequence[QuadScalar]) -> QuadScalar:
        return la.bilinear(self.g, u, v)

    def inverse(self) -> la.Matrix:
        return la.inverse(self.g)

    def is_orthonormal_lorentz(self) -> bool:
        return self.g == LORENTZ_DIAG


@dataclass(frozen=True)
class LieAlgebra3:
    c: Bracket
    metric: Metric3
    family: str | None = None
    params: Mapping[str, QuadScalar] = field(default_factory=dict)
    basis: str = "standard"

    def __post_init__(self) -> None:
        c = [[[as_quad(x) for x in ck] for ck in ci] for ci in self.c]
        object.__setattr__(self, "c", c)
        if not isinstance(self.metric, Metric3):
            object.__setattr__(self, "metric", Metric3(self.metric))
        for i in range(3):
            if c[i][i] != [ZERO] * 3:
                raise ValueError("structure constants must vanish on the diagonal")
            for j in range(i + 1, 3):
                if any(c[i][j][k] != -c[j][i][k] for k in range(3)):
                    raise ValueError("structure constants must be antisymmetric in (i, j)")
        if self.family is not None and self.family not in FAMILIES:
            raise ValueError(f"unknown family tag {self.family!r}")

    @classmethod
    def from_brackets(
        cls,
        brackets: Mapping[tuple[int, int], Sequence],
        metric,
        family: str | None = None,
        params: Mapping[str, QuadScalar] | None = None,
        basis: str = "standard",
    ) -> LieAlgebra3:
        """Build from ``{(i, j): [coefficients of e_1, e_2, e_3]}`` with i < j, zero-based."""
        c = _zero_bracket()
        for (i, j), coeffs in brackets.items():
            for k, x in enumerate(coeffs):
                x = as_quad(x)
                c[i][j][k] = x
                c[j][i][k] = -x
        return cls(c, metric if isinstance(metric, Metric3) else Metric3(metric),
                   family, dict(params or {}), basis)

    @property
    def g(self) -> la.Matrix:
        return self.metric.g

    def bracket(self, u: Sequence[QuadScalar], v: Sequence[QuadScalar]) -> list[QuadScalar]:
        out = [ZERO] * 3
        for i in range(3):
            if not u[i]:
                continue
            for j in range(3):
                if i == j or not v[j]:
                    continue
                w = u[i] * v[j]
                cij = self.c[i][j]
                for k in range(3):
                    if cij[k]:
                        out[k] = out[k] + w * cij[k]
        return out

    def basis_bracket(self, i: int, j: int) -> list[QuadScalar]:
        return list(self.c[i][j])

    def ad(self, x: Sequence[QuadScalar]) -> la.Matrix:
        """Matrix of ad_x; column j is [x, e_j]."""
        cols = [self.bracket(x, _unit(j)) for j in range(3)]
        return la.transpose(cols)

    def param(self, name: str) -> QuadScalar:
        return as_quad(self.params.get(name, 0))


def _unit(i: int) -> list[QuadScalar]:
    v = [ZERO] * 3
    v[i] = ONE
    return v


def abelian(metric=None) -> LieAlgebra3:
    return LieAlgebra3(_zero_bracket(), Metric3(metric if metric is not None else LORENTZ_DIAG))


def jacobi_check(alg: LieAlgebra3) -> bool:
    """Exact Jacobi identity over every index triple."""
    for i in range(3):
        for j in range(3):
            for k in range(3):
                s = [ZERO] * 3
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = alg.c[a][b]
                    t = alg.bracket(inner, _unit(c))
                    s = [x + y for x, y in zip(s, t)]
                if any(s):
                    return False
    return True


def adjoint_traces(alg: LieAlgebra3) -> list[QuadScalar]:
    """trace(ad_{e_j}) for j = 1, 2, 3."""
    out = []
    for j in range(3):
        t = ZERO
        for i in range(3):
            t = t + alg.c[j][i][i]
        out.append(t)
    return out


def is_unimodular(alg: LieAlgebra3) -> bool:
    return not any(adjoint_traces(alg))


# Lorentzian cross product: e1 x e2 = -e3, e2 x e3 = e1, e3 x e1 = e2
_CROSS = {(0, 1): (2, -1), (1, 2): (0, 1), (2, 0): (1, 1)}


def lorentz_cross(u: Sequence, v: Sequence, metric: Metric3 | None = None) -> list[QuadScalar]:
    if metric is not None and not metric.is_orthonormal_lorentz():
        raise ValueError("Lorentzian cross product is defined for the orthonormal (++-) basis only")
    u = [as_quad(x) for x in u]
    v = [as_quad(x) for x in v]
    out = [ZERO] * 3
    for (i, j), (k, s) in _CROSS.items():
        w = u[i] * v[j] - u[j] * v[i]
        if w:
            out[k] = out[k] + w if s > 0 else out[k] - w
    return out


def structure_operator(alg: LieAlgebra3) -> la.Matrix:
    """The operator L with [Z, Y] = L(Z x Y).

    L e1 = [e2, e3], L e2 = [e3, e1], L e3 = -[e1, e2].  Self-adjointness
    of L with respect to the metric is equivalent to unimodularity.
    """
    if not alg.metric.is_orthonormal_lorentz():
        raise ValueError("structure operator needs the orthonormal (++-) basis")
    cols = [alg.basis_bracket(1, 2), alg.basis_bracket(2, 0), [-x for x in alg.basis_bracket(0, 1)]]
    L = la.transpose(cols)
    gL = la.matmul(alg.g, L)
    if not la.is_symmetric(gL):
        raise ValueError("algebra is not unimodular: no self-adjoint structure operator")
    return L


def change_basis(alg: LieAlgebra3, T: la.Matrix, basis: str = "custom") -> LieAlgebra3:
    """Express the algebra in the basis f_a = sum_i T[a][i] e_i."""
    T = la.mat(T)
    Tinv = la.inverse(T)  # e_k = sum_a Tinv[k][a] f_a
    new_g = la.matmul(la.matmul(T, alg.g), la.transpose(T))
    c = _zero_bracket()
    for a in range(3):
        for b in range(3):
            if a == b:
                continue
            old = alg.bracket(T[a], T[b])
            # coordinates in the new basis: row vector old * Tinv
            c[a][b] = [sum((old[k] * Tinv[k][m] for k in range(3)), ZERO) for m in range(3)]
    return LieAlgebra3(c, Metric3(new_g), alg.family, dict(alg.params), basis)


IV3_TO_TILDE = [
    [ONE, ZERO, ZERO],
    [ZERO, INV_SQRT2, -INV_SQRT2],
    [ZERO, INV_SQRT2, INV_SQRT2],
]


def orthonormalize_IV3(alg: LieAlgebra3) -> LieAlgebra3:
    """Pass from the pseudo-orthonormal IV.3 basis to e1, (e2-e3)/r2, (e2+e3)/r2."""
    if alg.family != "IV3":
        raise ValueError(f"orthonormalize_IV3 needs a IV3-tagged algebra, got {alg.family!r}")
    if alg.basis == "tilde":
        return alg
    return change_basis(alg, IV3_TO_TILDE, basis="tilde")


# family constructors -----------------------------------------------------


def _params(**kw) -> dict[str, QuadScalar]:
    return {k: as_quad(v) for k, v in kw.items()}


def family_Ia(alpha=0, beta=0, gamma=0) -> LieAlgebra3:
    p = _params(alpha=alpha, beta=beta, gamma=gamma)
    a, b, c = p["alpha"], p["beta"], p["gamma"]
    return LieAlgebra3.from_brackets(
        {(0, 1): [0, 0, -c], (0, 2): [0, -b, 0], (1, 2): [a, 0, 0]},
        LORENTZ_DIAG, "Ia", p,
    )


def family_Ib(alpha=0, beta=1, gamma=0) -> LieAlgebra3:
    p = _params(alpha=alpha, beta=beta, gamma=gamma)
    a, b, c = p["alpha"], p["beta"], p["gamma"]
    if not b:
        raise ConstraintError("family Ib requires beta != 0")
    return LieAlgebra3.from_brackets(
        {(0, 1): [0, b, -c], (0, 2): [0, -c, -b], (1, 2): [a, 0, 0]},
        LORENTZ_DIAG, "Ib", p,
    )


def family_II(alpha=0, beta=0) -> LieAlgebra3:
    p = _params(alpha=alpha, beta=beta)
    a, b = p["alpha"], p["beta"]
    return LieAlgebra3.from_brackets(
        {
            (0, 1): [0, HALF, -(b - HALF)],
            (0, 2): [0, -(b + HALF), -HALF],
            (1, 2): [a, 0, 0],
        },
        LORENTZ_DIAG, "II", p,
    )


def family_III(alpha=0) -> LieAlgebra3:
    p = _params(alpha=alpha)
    a = p["alpha"]
    return LieAlgebra3.from_brackets(
        {
            (0, 1): [-INV_SQRT2, 0, -a],
            (0, 2): [-INV_SQRT2, -a, 0],
            (1, 2): [a, INV_SQRT2, -INV_SQRT2],
        },
        LORENTZ_DIAG, "III", p,
    )


IV_METRICS = {
    "IV1": la.diag([-1, 1, 1]),
    "IV2": la.diag([1, 1, -1]),
    "IV3": la.mat([[1, 0, 0], [0, 0, -1], [0, -1, 0]]),
}

IV_RELATIONS = {
    "IV1": "alpha*gamma - beta*delta = 0",
    "IV2": "alpha*gamma + beta*delta = 0",
    "IV3": "alpha*gamma = 0",
}


def iv_constraint_violation(tag: str, alpha, beta, gamma, delta, check_trace: bool = True) -> str | None:
    """Name of the violated relation, or None if the parameters are admissible."""
    a, b, c, d = (as_quad(x) for x in (alpha, beta, gamma, delta))
    rel = {"IV1": a * c - b * d, "IV2": a * c + b * d, "IV3": a * c}[tag]
    if rel:
        return IV_RELATIONS[tag]
    if check_trace and not (a + d):
        return "alpha + delta != 0"
    return None


def _family_IV(tag: str, alpha, beta, gamma, delta, check_trace: bool) -> LieAlgebra3:
    p = _params(alpha=alpha, beta=beta, gamma=gamma, delta=delta)
    bad = iv_constraint_violation(tag, *p.values(), check_trace=check_trace)
    if bad:
        raise ConstraintError(f"family {tag} violates {bad}")
    a, b, c, d = p["alpha"], p["beta"], p["gamma"], p["delta"]
    return LieAlgebra3.from_brackets(
        {(0, 1): [0, 0, 0], (0, 2): [a, b, 0], (1, 2): [c, d, 0]},
        IV_METRICS[tag], tag, p,
    )


def family_IV1(alpha=1, beta=0, gamma=0, delta=0, check_trace: bool = True) -> LieAlgebra3:
    return _family_IV("IV1", alpha, beta, gamma, delta, check_trace)


def family_IV2(alpha=1, beta=0, gamma=0, delta=0, check_trace: bool = True) -> LieAlgebra3:
    return _family_IV("IV2", alpha, beta, gamma, delta, check_trace)


def family_IV3(alpha=1, beta=0, gamma=0, delta=0, check_trace: bool = True) -> LieAlgebra3:
    return _family_IV("IV3", alpha, beta, gamma, delta, check_trace)


FAMILY_PARAMS = {
    "Ia": ("alpha", "beta", "gamma"),
    "Ib": ("alpha", "beta", "gamma"),
    "II": ("alpha", "beta"),
    "III": ("alpha",),
    "IV1": ("alpha", "beta", "gamma", "delta"),
    "IV2": ("alpha", "beta", "gamma", "delta"),
    "IV3": ("alpha", "beta", "gamma", "delta"),
}

_CONSTRUCTORS = {
    "Ia": family_Ia,
    "Ib": family_Ib,
    "II": family_II,
    "III": family_III,
    "IV1": family_IV1,
    "IV2": family_IV2,
    "IV3": family_IV3,
}


def family(tag: str, **params) -> LieAlgebra3:
    """Construct a family algebra by tag; unknown parameter names are rejected."""
    if tag not in _CONSTRUCTORS:
        raise ValueError(f"unknown family {tag!r}; expected one of {', '.join(FAMILIES)}")
    extra = set(params) - set(FAMILY_PARAMS[tag])
    if extra:
        raise ValueError(f"family {tag} takes {FAMILY_PARAMS[tag]}, got extra {sorted(extra)}")
    full = {name: params.get(name, 0) for name in FAMILY_PARAMS[tag]}
    return _CONSTRUCTORS[tag](**full)
