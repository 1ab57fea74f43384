"""Reference curvature and Ricci data for the seven families.

Each table maps a one-based index tuple ``(i, j, k, l)`` to a function of
the family parameters.  Components not listed (and not obtainable from a
listed one by the curvature symmetries) are zero.  IV3 data refer to the
orthonormal basis produced by :func:`~lorsol.liemodel.orthonormalize_IV3`.
"""

from __future__ import annotations

import itertools
from typing import Callable, Mapping

from . import exactlinalg as la
from .exactfield import SQRT2, ZERO, QuadScalar
from .liemodel import LieAlgebra3, orthonormalize_IV3

P = Mapping[str, QuadScalar]
Formula = Callable[[P], QuadScalar]

_q = QuadScalar


def _abc(p: P):
    return p.get("alpha", ZERO), p.get("beta", ZERO), p.get("gamma", ZERO)


def _abcd(p: P):
    return p["alpha"], p["beta"], p["gamma"], p["delta"]


CURVATURE: dict[str, dict[tuple[int, int, int, int], Formula]] = {
    "Ia": {
        (1, 2, 2, 1): lambda p: (lambda a, b, c: (a * a + b * b - 3 * c * c - 2 * a * b + 2 * a * c + 2 * b * c) / 4)(*_abc(p)),
        (1, 3, 1, 3): lambda p: (lambda a, b, c: (a * a - 3 * b * b + c * c + 2 * a * b - 2 * a * c + 2 * b * c) / 4)(*_abc(p)),
        (2, 3, 3, 2): lambda p: (lambda a, b, c: (3 * a * a - b * b - c * c - 2 * a * b - 2 * a * c + 2 * b * c) / 4)(*_abc(p)),
    },
    "Ib": {
        (1, 2, 2, 1): lambda p: (lambda a, b, c: (a * a + 4 * b * b) / 4)(*_abc(p)),
        (1, 3, 1, 3): lambda p: (lambda a, b, c: (a * a + 4 * b * b) / 4)(*_abc(p)),
        (2, 3, 3, 2): lambda p: (lambda a, b, c: _q(3, 0) / 4 * a * a + b * b - a * c)(*_abc(p)),
        (1, 2, 3, 1): lambda p: (lambda a, b, c: b * (a - 2 * c))(*_abc(p)),
    },
    "II": {
        (1, 2, 2, 1): lambda p: (lambda a, b, c: (a * a - 2 * a + 4 * b) / 4)(*_abc(p)),
        (1, 3, 1, 3): lambda p: (lambda a, b, c: (a * a + 2 * a - 4 * b) / 4)(*_abc(p)),
        (2, 3, 3, 2): lambda p: (lambda a, b, c: a * (3 * a - 4 * b) / 4)(*_abc(p)),
        (1, 2, 3, 1): lambda p: (lambda a, b, c: a / 2 - b)(*_abc(p)),
    },
    "III": {
        (1, 2, 2, 1): lambda p: (p["alpha"] ** 2 + 4) / 4,
        (1, 3, 3, 1): lambda p: 1 - p["alpha"] ** 2 / 4,
        (2, 3, 2, 3): lambda p: p["alpha"] ** 2 / 4,
        (1, 2, 3, 1): lambda p: _q(1),
        (1, 2, 2, 3): lambda p: p["alpha"] / SQRT2,
        (1, 3, 2, 3): lambda p: p["alpha"] / SQRT2,
    },
    "IV1": {
        (1, 2, 1, 2): lambda p: (lambda a, b, c, d: (b * b + c * c + 4 * a * d - 2 * b * c) / 4)(*_abcd(p)),
        (1, 3, 1, 3): lambda p: (lambda a, b, c, d: (4 * a * a - 3 * b * b + c * c + 2 * b * c) / 4)(*_abcd(p)),
        (2, 3, 3, 2): lambda p: (lambda a, b, c, d: (b * b - 3 * c * c + 4 * d * d + 2 * b * c) / 4)(*_abcd(p)),
    },
    "IV2": {
        (1, 2, 1, 2): lambda p: (lambda a, b, c, d: a * d - (b + c) ** 2 / 4)(*_abcd(p)),
        (1, 3, 3, 1): lambda p: (lambda a, b, c, d: (4 * a * a + 3 * b * b - c * c + 2 * b * c) / 4)(*_abcd(p)),
        (2, 3, 2, 3): lambda p: (lambda a, b, c, d: (b * b - 3 * c * c - 4 * d * d - 2 * b * c) / 4)(*_abcd(p)),
    },
    "IV3": {
        (1, 2, 1, 2): lambda p: (lambda a, b, c, d: (2 * a * d - 2 * a * a - c * (2 * b + c)) / 4)(*_abcd(p)),
        (1, 2, 1, 3): lambda p: (lambda a, b, c, d: (a * a + b * c - a * d) / 2)(*_abcd(p)),
        (1, 3, 1, 3): lambda p: (lambda a, b, c, d: (2 * a * d - 2 * a * a + c * (c - 2 * b)) / 4)(*_abcd(p)),
        (2, 3, 2, 3): lambda p: (lambda a, b, c, d: -3 * c * c / 4)(*_abcd(p)),
    },
}


def _ricci_Ia(p: P) -> la.Matrix:
    a, b, c = _abc(p)
    return la.diag(ricci_eigenvalues_Ia(p))


def ricci_eigenvalues_Ia(p: P) -> list[QuadScalar]:
    a, b, c = _abc(p)
    return [((b - c) ** 2 - a * a) / 2, ((a - c) ** 2 - b * b) / 2, ((a - b) ** 2 - c * c) / 2]


def _ricci_Ib(p: P) -> la.Matrix:
    a, b, c = _abc(p)
    k = a - 2 * c
    return [
        [-(a * a + 4 * b * b) / 2, ZERO, ZERO],
        [ZERO, a * k / 2, -b * k],
        [ZERO, b * k, a * k / 2],
    ]


def _ricci_II(p: P) -> la.Matrix:
    a, b, _ = _abc(p)
    return [
        [-a * a / 2, ZERO, ZERO],
        [ZERO, (a + 1) * (a - 2 * b) / 2, -a / 2 + b],
        [ZERO, a / 2 - b, (a - 1) * (a - 2 * b) / 2],
    ]


def _ricci_III(p: P) -> la.Matrix:
    a = p["alpha"]
    s = a / SQRT2
    return [
        [-a * a / 2, -s, -s],
        [-s, -(a * a + 2) / 2, _q(-1)],
        [s, _q(1), 1 - a * a / 2],
    ]


def _ricci_IV3(p: P) -> la.Matrix:
    a, b, c, d = _abcd(p)
    m = (a * (a - d) + b * c) / 2
    return [
        [-c * c / 2, ZERO, ZERO],
        [ZERO, (a * (d - a) + c * (c - b)) / 2, m],
        [ZERO, -m, (a * (a - d) + c * (b + c)) / 2],
    ]


RICCI_OPERATOR: dict[str, Callable[[P], la.Matrix]] = {
    "Ia": _ricci_Ia,
    "Ib": _ricci_Ib,
    "II": _ricci_II,
    "III": _ricci_III,
    "IV3": _ricci_IV3,
}


def ricci_eigenvalues(tag: str, p: P) -> list[QuadScalar]:
    """Closed-form Ricci eigenvalues (with multiplicity) where known."""
    if tag == "Ia":
        return ricci_eigenvalues_Ia(p)
    if tag == "II":
        a, b, _ = _abc(p)
        return [-a * a / 2, a * (a - 2 * b) / 2, a * (a - 2 * b) / 2]
    if tag == "III":
        a = p["alpha"]
        return [-a * a / 2] * 3
    if tag in ("IV1", "IV2"):
        a, b, c, d = _abcd(p)
        if tag == "IV1":
            return [
                (b * b - c * c - 2 * a * (a + d)) / 2,
                (c * c - b * b - 2 * d * (a + d)) / 2,
                ((b - c) ** 2 - 2 * (a * a + d * d)) / 2,
            ]
        return [
            (b * b - c * c + 2 * a * (a + d)) / 2,
            (c * c - b * b + 2 * d * (a + d)) / 2,
            ((b + c) ** 2 + 2 * (a * a + d * d)) / 2,
        ]
    if tag == "IV3":
        c = p["gamma"]
        return [-c * c / 2, c * c / 2, c * c / 2]
    raise KeyError(f"no closed-form eigenvalues for {tag}")


def orbit(idx: tuple[int, int, int, int]) -> dict[tuple[int, int, int, int], int]:
    """Index tuples reachable by the curvature symmetries, with their sign."""
    i, j, k, l = idx
    out = {}
    for (a, b, c, d), s in (((i, j, k, l), 1), ((k, l, i, j), 1)):
        out[(a, b, c, d)] = s
        out[(b, a, c, d)] = -s
        out[(a, b, d, c)] = -s
        out[(b, a, d, c)] = s
    return out


def expected_components(tag: str, params: P) -> dict[tuple[int, int, int, int], QuadScalar]:
    """Every R_ijkl implied by the reference table (zeros omitted)."""
    expected: dict[tuple[int, int, int, int], QuadScalar] = {}
    for idx, formula in CURVATURE[tag].items():
        value = formula(params)
        for jdx, s in orbit(idx).items():
            expected[jdx] = value if s > 0 else -value
    return expected


def table_basis_algebra(alg: LieAlgebra3) -> LieAlgebra3:
    """The algebra in the basis the reference tables use."""
    if alg.family == "IV3":
        return orthonormalize_IV3(alg)
    return alg


def curvature_mismatches(alg: LieAlgebra3, data=None) -> list[tuple[tuple[int, int, int, int], QuadScalar, QuadScalar]]:
    """(index, computed, expected) for every component that disagrees with the table."""
    from .curvature import curvature_tensor

    if alg.family is None:
        raise ValueError("table comparison needs a family tag")
    alg = table_basis_algebra(alg)
    data = data if data is not None else curvature_tensor(alg)
    expected = expected_components(alg.family, alg.params)
    bad = []
    for idx in itertools.product(range(1, 4), repeat=4):
        got = data.component(*idx)
        want = expected.get(idx, ZERO)
        if got != want:
            bad.append((idx, got, want))
    return bad


def table_match(alg: LieAlgebra3) -> bool:
    from .curvature import curvature_tensor

    talg = table_basis_algebra(alg)
    data = curvature_tensor(talg)
    if curvature_mismatches(talg, data):
        return False
    op = RICCI_OPERATOR.get(talg.family)
    if op is not None and op(talg.params) != data.ric_op:
        return False
    return True


def reference_solitons(alg: LieAlgebra3) -> list[dict]:
    """Soliton fields listed for the family at these parameters.

    Each entry has a ``name`` and ``points``: (X, lambda) pairs in the
    algebra's own basis.  One-parameter families contribute two
    points, which together span the line.
    """
    tag, p = alg.family, alg.params
    out: list[dict] = []
    if tag == "II":
        a, b, _ = _abc(p)
        if not a and b:
            out.append({"name": "II-steady", "points": [([-b, ZERO, ZERO], ZERO)]})
        elif a == b and a:
            lam = -b * b / 2
            out.append({"name": "II-expanding-line", "points": [([-b / 2, ZERO, ZERO], lam),
                                                    ([-b / 2, _q(1), _q(1)], lam)]})
    elif tag == "III":
        a = p["alpha"]
        out.append({"name": "III-unique", "points": [([a, -1 / SQRT2, 1 / SQRT2], -a * a / 2)]})
    elif tag == "IV3":
        a, b, c, d = _abcd(p)
        if a and not c and d:
            k = (a * a - a * d) / (2 * SQRT2 * d)
            out.append({"name": "IV3-steady-null", "points": [([ZERO, k, k], ZERO)]})
            if d == 2 * a:
                out.append({"name": "IV3-lambda-line", "points": [_lambda_line_point(b, d, ZERO), _lambda_line_point(b, d, _q(1))]})
        if alg.basis != "tilde":
            for ref in out:
                ref["points"] = [(_tilde_to_standard(X), lam) for X, lam in ref["points"]]
    return out


def _lambda_line_point(b: QuadScalar, d: QuadScalar, lam: QuadScalar) -> tuple[list[QuadScalar], QuadScalar]:
    r = 8 * SQRT2 * d ** 3
    X = [
        -2 * b * lam / (d * d),
        -(d ** 4 + 8 * (d * d - 2 * b * b) * lam) / r,
        -(d ** 4 - 8 * (d * d + 2 * b * b) * lam) / r,
    ]
    return X, lam


def _tilde_to_standard(X: list[QuadScalar]) -> list[QuadScalar]:
    from .liemodel import IV3_TO_TILDE

    return la.matvec(la.transpose(IV3_TO_TILDE), X)
