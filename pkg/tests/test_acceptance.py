"""Acceptance criteria 1 to 8, one PASS/FAIL line each."""

import random
import time
from fractions import Fraction

import numpy as np

from lorsol import exactlinalg as la
from lorsol.catalog import MIN_CERTIFICATE_POINTS, verify_segre_equivalence
from lorsol.curvature import curvature_tensor
from lorsol.exactfield import ZERO
from lorsol.liemodel import FAMILIES, family
from lorsol.reference_tables import (RICCI_OPERATOR, curvature_mismatches, ricci_eigenvalues,
                                     table_basis_algebra)
from lorsol.segre import char_poly
from lorsol.soliton import CausalCharacter, causal_character, solve
from lorsol.walker import (CallableF, GridSpec, Poly, StructuredF, WalkerMetric, causal_map,
                           christoffel_fd_error, field_from_solution, ricci_squared, soliton_residual,
                           solve_symmetric, walker_ricci)

from conftest import random_quad
from test_liemodel import random_params

TUPLES = 60


def verdict(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def nonzero(rng):
    while True:
        q = random_quad(rng)
        if q:
            return q


def stratified_params(tag, rng):
    """Random parameters that hit every case of the classification often."""
    branch = rng.randrange(4)
    if tag == "II" and branch < 3:
        b = nonzero(rng)
        return {"alpha": ZERO, "beta": b} if branch == 0 else {"alpha": b, "beta": b}
    if tag == "IV3":
        a, b, c = nonzero(rng), random_quad(rng), nonzero(rng)
        d = [nonzero(rng), 2 * a, None, ZERO][branch]
        if branch == 2:
            return {"alpha": ZERO, "beta": b, "gamma": c, "delta": nonzero(rng)}
        if a + d and a != d:
            return {"alpha": a, "beta": b, "gamma": ZERO, "delta": d}
    return random_params(tag, rng)


def sample(tag, seed, n=TUPLES, strat=False):
    rng = random.Random(seed)
    draw = stratified_params if strat else random_params
    return [family(tag, **draw(tag, rng)) for _ in range(n)]


def test_criterion_1_curvature_tables(capsys):
    t0 = time.perf_counter()
    bad = []
    for tag in FAMILIES:
        for alg in sample(tag, 101):
            mm = curvature_mismatches(alg)
            if mm:
                bad.append((tag, alg.params, mm[:2]))
    dt = time.perf_counter() - t0
    verdict(capsys, 1, not bad and dt < 5,
            f"{len(FAMILIES)}x{TUPLES} tuples, {len(bad)} mismatching, {dt:.2f}s (limit 5s)")


def test_criterion_2_ricci(capsys):
    bad, checked = [], 0
    for tag in FAMILIES:
        for alg in sample(tag, 102):
            talg = table_basis_algebra(alg)
            op = curvature_tensor(talg).ric_op
            if tag in RICCI_OPERATOR:
                checked += 1
                if RICCI_OPERATOR[tag](talg.params) != op:
                    bad.append((tag, "matrix", alg.params))
            if tag != "Ib":
                checked += 1
                ev = ricci_eigenvalues(tag, talg.params)
                t, s, d = char_poly(op)
                want = (ev[0] + ev[1] + ev[2], ev[0] * ev[1] + ev[0] * ev[2] + ev[1] * ev[2], ev[0] * ev[1] * ev[2])
                if (t, s, d) != want:
                    bad.append((tag, "eigenvalues", alg.params))
    verdict(capsys, 2, not bad, f"{checked} exact matrix/spectrum checks, {len(bad)} failing")


def reference_set_matches(sol, refs):
    pts = [pt for r in refs for pt in r["points"]]
    vecs = [list(X) + [lam] for X, lam in pts]
    diffs = [[a - b for a, b in zip(v, vecs[0])] for v in vecs[1:]]
    hull = la.rank(diffs) if diffs else 0
    return sol.exists and sol.dimension == hull and all(sol.contains(X, lam) for X, lam in pts)


def test_criterion_3_solution_sets(capsys):
    t0 = time.perf_counter()
    bad, seen = [], set()
    for tag in FAMILIES:
        for alg in sample(tag, 103, strat=True):
            sol = solve(alg)
            refs = sol.reference
            p = alg.params
            if refs:
                seen.update(r["name"] for r in refs)
                if not reference_set_matches(sol, refs):
                    bad.append((tag, p, "reference set"))
                if tag == "II":
                    lam = ZERO if not p["alpha"] else -p["beta"] ** 2 / 2
                    if sol.particular[1] != lam or sol.lambda_free:
                        bad.append((tag, p, "lambda"))
                if tag == "III" and (sol.particular[1] != -p["alpha"] ** 2 / 2 or sol.dimension):
                    bad.append((tag, p, "lambda"))
                if tag == "IV3" and (p["delta"] == 2 * p["alpha"]) != sol.lambda_free:
                    bad.append((tag, p, "lambda family"))
            elif sol.exists and not sol.trivial:
                bad.append((tag, p, "unexpected nontrivial solution"))
            if tag in ("Ia", "IV1", "IV2") and sol.exists != sol.trivial:
                bad.append((tag, p, "exists off the Einstein locus"))
            if tag == "Ib" and sol.exists:
                bad.append((tag, p, "Ib solution"))
            if tag == "IV3" and not p["alpha"] and p["gamma"] and sol.exists:
                bad.append((tag, p, "alpha=0!=gamma solution"))
    dt = time.perf_counter() - t0
    missing = {"II-steady", "II-expanding-line", "III-unique", "IV3-lambda-line", "IV3-steady-null"} - seen
    verdict(capsys, 3, not bad and not missing and dt < 5,
            f"{len(bad)} mismatches, reference families exercised {sorted(seen)}, {dt:.2f}s (limit 5s)")


def test_criterion_4_certificate(capsys):
    t0 = time.perf_counter()
    rep = verify_segre_equivalence()
    dt = time.perf_counter() - t0
    per = {f: sum(r.family == f for r in rep.records) for f in FAMILIES}
    ok = rep.ok and min(per.values()) >= MIN_CERTIFICATE_POINTS and dt < 60
    verdict(capsys, 4, ok, f"{len(rep.records)} points, min per family {min(per.values())}, "
                          f"{len(rep.violations)} violations, {dt:.1f}s (limit 60s)")


def test_criterion_5_causal_labels(capsys):
    bad, counts = [], {}
    for tag in ("II", "III", "IV3"):
        algs = sample(tag, 105, strat=True) + ([family("III", alpha=0)] if tag == "III" else [])
        for alg in algs:
            sol = solve(alg)
            p = alg.params
            for ref in sol.reference:
                name = ref["name"]
                if name in ("II-steady", "II-expanding-line"):
                    want = CausalCharacter.SPACELIKE
                elif name == "III-unique":
                    want = CausalCharacter.SPACELIKE if p["alpha"] else CausalCharacter.NULL
                    name = "III-unique" if p["alpha"] else "III-unique null"
                elif name == "IV3-steady-null":
                    X = ref["points"][0][0]
                    if causal_character(alg.g, X) is not CausalCharacter.NULL:
                        bad.append((name, p, "point"))
                    if sol.lambda_free:
                        continue
                    want = CausalCharacter.NULL
                else:
                    continue
                counts[name] = counts.get(name, 0) + 1
                if sol.causal_character is not want:
                    bad.append((name, p, sol.causal_character))
    verdict(capsys, 5, not bad and len(counts) == 5, f"labels checked {counts}, {len(bad)} wrong")


def _callable(func, fx, fy, fxx):
    return CallableF(func, fx, fy, fxx)


NONFLAT = [
    StructuredF(1),
    StructuredF(-2, Poly([1, 3]), Poly([0, 1, -1])),
    StructuredF(Fraction(1, 3), Poly([0, 0, 1])),
    _callable(lambda x, y: np.sin(x) * np.exp(y) + x ** 3 * y,
              lambda x, y: np.cos(x) * np.exp(y) + 3 * x ** 2 * y,
              lambda x, y: np.sin(x) * np.exp(y) + x ** 3,
              lambda x, y: -np.sin(x) * np.exp(y) + 6 * x * y),
    _callable(lambda x, y: x ** 2 * y, lambda x, y: 2 * x * y, lambda x, y: x ** 2, lambda x, y: 2 * y),
]
FLAT = [
    StructuredF(0),
    StructuredF(0, Poly([2, -1]), Poly([1, 0, 0, 5])),
    _callable(lambda x, y: x * np.sin(y) + y ** 3, lambda x, y: np.sin(y) + 0 * x,
              lambda x, y: x * np.cos(y) + 3 * y ** 2, lambda x, y: 0 * x),
]


def test_criterion_6_walker_geometry(capsys):
    pts = [(0.0, x, y) for x in np.linspace(-1, 1, 5) for y in np.linspace(-1, 1, 5)]
    nilpotent = all(
        not np.any(np.array(ricci_squared(WalkerMetric(e, f), p), dtype=float))
        for f in NONFLAT for e in (1, -1) for p in pts)
    flat_ok = all(not WalkerMetric(1, f).flat for f in NONFLAT) and all(
        WalkerMetric(1, f).flat and not np.any(np.array(walker_ricci(WalkerMetric(1, f), p)[0], dtype=float))
        for f in FLAT for p in pts)
    fd_pts = [(0.1, 0.4, -0.3), (0.0, -0.8, 0.6), (0.5, 0.2, 0.9)]
    ratios = [christoffel_fd_error(WalkerMetric(e, NONFLAT[3]), fd_pts, 1e-3)
              / christoffel_fd_error(WalkerMetric(e, NONFLAT[3]), fd_pts, 1e-4) for e in (1, -1)]
    fd_ok = all(50 <= r <= 200 for r in ratios)
    verdict(capsys, 6, nilpotent and flat_ok and fd_ok,
            f"ric_op^2=0 {nilpotent}, flat detection {flat_ok}, FD ratios {[round(r, 1) for r in ratios]}")


WALKER_COMBOS = [
    # kappa, eps, P, Q, lambda, gamma, w0, w0'
    (1, 1, [], [], 1, 0, 0.0, 0.0),
    (1, 1, [1], [], 0, 0, 0.0, 0.0),
    (-1, 1, [], [], 0, 0, 0.5, -0.3),
    (2, -1, [0, 1], [1, 0, 1], -1, 1, 0.1, 0.2),
    (Fraction(1, 2), 1, [1, 0, -1], [0, 1], 2, -1, -0.4, 0.0),
    (-3, -1, [2], [0, 0, 1], Fraction(1, 2), 2, 0.3, 0.3),
    (1, -1, [0, 0, 1], [], -2, 0, 0.0, 1.0),
    (-1, -1, [1, 1], [1], 0, 1, -0.2, 0.4),
    (Fraction(-1, 4), 1, [0, -1], [2, -1], -Fraction(1, 2), Fraction(1, 3), 1.0, -1.0),
    (3, 1, [], [0, 0, 0, 1], 1, -2, 0.0, 0.0),
    (-2, 1, [1, 0, 0, 1], [1, 1], -1, 0, 0.7, 0.1),
    (1, 1, [], [], 1, 1, 0.0, 0.0),
]


def test_criterion_7_walker_solitons(capsys):
    t0 = time.perf_counter()
    grid = GridSpec(-1.0, 1.0, 20)
    worst = 0.0
    for kappa, eps, P, Q, lam, gamma, w0, w0p in WALKER_COMBOS:
        F = StructuredF(kappa, Poly(P), Poly(Q))
        sol = solve_symmetric(F, lam, gamma, w0, w0p, eps)
        worst = max(worst, soliton_residual(WalkerMetric(eps, F), field_from_solution(sol), float(lam), grid))
    dt = time.perf_counter() - t0
    lams = {(c[4] > 0) - (c[4] < 0) for c in WALKER_COMBOS}
    kappas = {c[0] > 0 for c in WALKER_COMBOS}
    ok = worst < 1e-8 and dt < 30 and lams == {-1, 0, 1} and kappas == {True, False} and len(WALKER_COMBOS) >= 10
    verdict(capsys, 7, ok, f"{len(WALKER_COMBOS)} combos, max residual {worst:.2e} (limit 1e-8), {dt:.1f}s (limit 30s)")


def test_criterion_8_causal_variation(capsys):
    F = StructuredF(1)
    m = WalkerMetric(1, F)
    X = field_from_solution(solve_symmetric(F, 1, 1))
    res = soliton_residual(m, X, 1.0)
    cm = causal_map(m, X, GridSpec(-1.0, 1.0, 20))
    verdict(capsys, 8, cm["varies"] and res < 1e-8,
            f"g(X,X) in [{cm['min']:.3f}, {cm['max']:.3f}], spacelike {cm['spacelike']}, "
            f"timelike {cm['timelike']}, residual {res:.1e}")
