"""Finite parameter sweeps that machine-check the classification.

Every sweep point is evaluated exactly (curvature, Segre type, soliton
solve), so each sweep is an exact certificate on a finite grid.  It is not
a proof for all parameter values.

Existence of a *non-trivial* soliton at a point is witnessed either by a
non-Einstein left-invariant solution, or (for metrics the left-invariant
ansatz cannot reach) by the metric being locally symmetric with two-step
nilpotent Ricci operator, i.e. a symmetric Walker metric, which carries
the Walker soliton fields built in :mod:`lorsol.walker`.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .curvature import curvature_tensor, is_locally_symmetric
from .exactfield import ONE, SQRT2, ZERO, QuadScalar
from .liemodel import FAMILIES, FAMILY_PARAMS, family, iv_constraint_violation
from .segre import SegreType, classify, is_two_step_nilpotent
from .soliton import CausalCharacter, SolitonClass, solve

HALF = ONE / 2
DEFAULT_VALUES: tuple[QuadScalar, ...] = (
    QuadScalar(-2), -ONE, -HALF, ZERO, HALF, ONE, QuadScalar(2), SQRT2, ONE + SQRT2,
)
UNIMODULAR = ("Ia", "Ib", "II", "III")
NONUNIMODULAR = ("IV1", "IV2", "IV3")
MIN_CERTIFICATE_POINTS = 1000


# grids ---------------------------------------------------------------------


def _extra_values() -> Iterator[QuadScalar]:
    seen = set(DEFAULT_VALUES)
    for h in itertools.count(1):
        fr = sorted({Fraction(p, q) for q in range(1, h + 1) for p in range(-h, h + 1)})
        for b in fr:
            for a in fr:
                if max(abs(a.numerator), a.denominator, abs(b.numerator), b.denominator) != h:
                    continue
                x = QuadScalar(a, b)
                if x not in seen:
                    seen.add(x)
                    yield x


def value_pool(n: int) -> list[QuadScalar]:
    """The default values followed by further small-height elements of Q(sqrt2)."""
    if n <= len(DEFAULT_VALUES):
        return list(DEFAULT_VALUES[:n])
    return list(DEFAULT_VALUES) + list(itertools.islice(_extra_values(), n - len(DEFAULT_VALUES)))


@dataclass
class Grid:
    family: str
    points: list[dict[str, QuadScalar]]
    skipped: int
    description: str


def product_grid(tag: str, values: Sequence[QuadScalar]) -> Grid:
    """All parameter tuples over ``values``; constraint violations are skipped and counted."""
    names = FAMILY_PARAMS[tag]
    pts, skipped = [], 0
    for combo in itertools.product(values, repeat=len(names)):
        p = dict(zip(names, combo))
        if _admissible(tag, p):
            pts.append(p)
        else:
            skipped += 1
    return Grid(tag, pts, skipped, f"product over {len(values)} values")


def _admissible(tag: str, p: dict) -> bool:
    if tag == "Ib":
        return bool(p["beta"])
    if tag.startswith("IV"):
        return iv_constraint_violation(tag, p["alpha"], p["beta"], p["gamma"], p["delta"]) is None
    return True


def solved_grid(tag: str, values: Sequence[QuadScalar]) -> Grid:
    """IV grids with the defining relation solved instead of filtered."""
    pts: dict[tuple, dict] = {}
    skipped = 0

    def push(a, b, c, d):
        nonlocal skipped
        p = {"alpha": a, "beta": b, "gamma": c, "delta": d}
        if iv_constraint_violation(tag, a, b, c, d) is None:
            pts[(a, b, c, d)] = p
        else:
            skipped += 1

    for a, b, d in itertools.product(values, repeat=3):
        if tag == "IV3":
            push(a, b, ZERO, d)
            if not a:
                for c in values:
                    push(ZERO, b, c, d)
        elif a:
            push(a, b, (b * d / a) if tag == "IV1" else (-b * d / a), d)
        elif not b or not d:
            for c in values:
                push(ZERO, b, c, d)
    ordered = [pts[k] for k in sorted(pts)]
    return Grid(tag, ordered, skipped, f"constraint-solved over {len(values)} values")


def default_grid(tag: str) -> Grid:
    return product_grid(tag, DEFAULT_VALUES)


def certificate_grid(tag: str, min_points: int = MIN_CERTIFICATE_POINTS) -> Grid:
    """Smallest value pool whose grid has at least ``min_points`` admissible points.

    The pool always starts with the default values, so the certificate grid
    contains the default grid.
    """
    n = len(DEFAULT_VALUES)
    build = solved_grid if tag.startswith("IV") else product_grid
    arity = len(FAMILY_PARAMS[tag])
    if arity == 1:
        n = max(n, min_points)
    elif arity == 2:
        n = max(n, int(min_points ** 0.5))
    while True:
        grid = build(tag, value_pool(n))
        if len(grid.points) >= min_points:
            return grid
        n += 1


# point evaluation ------------------------------------------------------------


@dataclass
class PointRecord:
    family: str
    params: dict[str, QuadScalar]
    segre: str
    triple_eigenvalue: bool
    einstein: bool
    exists: bool
    nontrivial: bool
    witness: str | None
    lam: QuadScalar | None
    lambda_free: bool
    soliton_class: str | None
    causal_character: str | None
    dimension: int
    references: dict[str, bool] = field(default_factory=dict)
    ricci_two_step_nilpotent: bool = False
    X: list[QuadScalar] | None = None

    def sort_key(self):
        return (FAMILIES.index(self.family), tuple(self.params[n] for n in FAMILY_PARAMS[self.family]))

    def to_json(self) -> dict:
        d = asdict(self)
        d["params"] = {k: str(v) for k, v in self.params.items()}
        d["lam"] = None if self.lam is None else str(self.lam)
        d["X"] = None if self.X is None else [str(x) for x in self.X]
        return d


def evaluate_point(tag: str, params: dict[str, QuadScalar]) -> PointRecord:
    alg = family(tag, **params)
    data = curvature_tensor(alg)
    seg = classify(data.ric_op, alg.metric)
    sol = solve(alg, data)
    nilpotent = is_two_step_nilpotent(data.ric_op)
    witness = None
    if sol.nontrivial:
        witness = "left-invariant"
    elif not sol.trivial and nilpotent and is_locally_symmetric(alg):
        witness = "symmetric-walker"
    return PointRecord(
        family=tag,
        params=dict(params),
        segre=seg.type.notation,
        triple_eigenvalue=seg.triple_eigenvalue,
        einstein=sol.trivial,
        exists=sol.exists,
        nontrivial=witness is not None,
        witness=witness,
        lam=None if not sol.exists or sol.lambda_free else sol.particular[1],
        lambda_free=sol.exists and sol.lambda_free,
        soliton_class=sol.soliton_class.value if sol.soliton_class else None,
        causal_character=sol.causal_character.value if sol.causal_character else None,
        dimension=sol.dimension,
        references={r["name"]: r["contained"] for r in sol.reference},
        ricci_two_step_nilpotent=nilpotent,
        X=list(sol.particular[0]) if sol.exists else None,
    )


def _evaluate(args) -> PointRecord:
    return evaluate_point(*args)


def evaluate_grids(grids: Iterable[Grid], jobs: int | None = None) -> list[PointRecord]:
    tasks = [(g.family, p) for g in grids for p in g.points]
    jobs = jobs or int(os.environ.get("LORSOL_JOBS", "1"))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(_evaluate, tasks, chunksize=64))
    else:
        records = [_evaluate(t) for t in tasks]
    return sorted(records, key=PointRecord.sort_key)


# expectations ----------------------------------------------------------------


def _expect(cond: bool, msg: str, out: list[str]) -> None:
    if not cond:
        out.append(msg)


def unimodular_expectations(r: PointRecord) -> list[str]:
    errs: list[str] = []
    p = r.params
    if r.family == "Ia":
        _expect(not r.nontrivial, "Ia admits no non-trivial soliton", errs)
        _expect(not r.exists or r.einstein, "Ia solutions must be Einstein", errs)
    elif r.family == "Ib":
        _expect(not r.exists, "Ib admits no soliton", errs)
    elif r.family == "II":
        a, b = p["alpha"], p["beta"]
        steady = not a and bool(b)
        expanding = a == b and bool(a)
        _expect(r.nontrivial == (steady or expanding), "II non-trivial iff alpha=0!=beta or alpha=beta!=0", errs)
        if steady:
            _expect(r.lam == ZERO and r.soliton_class == SolitonClass.STEADY.value, "II alpha=0: steady", errs)
            _expect(r.causal_character == CausalCharacter.SPACELIKE.value, "II alpha=0: spacelike", errs)
            _expect(r.dimension == 0 and r.references.get("II-steady") is True, "II alpha=0: unique X=-beta e1", errs)
        if expanding:
            _expect(r.lam == -b * b / 2 and r.soliton_class == SolitonClass.EXPANDING.value,
                    "II alpha=beta: expanding, lambda=-beta^2/2", errs)
            _expect(r.causal_character == CausalCharacter.SPACELIKE.value, "II alpha=beta: spacelike", errs)
            _expect(r.dimension == 1 and r.references.get("II-expanding-line") is True, "II alpha=beta: one-parameter family", errs)
    elif r.family == "III":
        a = p["alpha"]
        _expect(r.nontrivial, "III is always a non-trivial soliton", errs)
        _expect(r.lam == -a * a / 2, "III: lambda=-alpha^2/2", errs)
        _expect(r.dimension == 0 and r.references.get("III-unique") is True, "III: unique X of the reference form", errs)
        if a:
            _expect(r.soliton_class == SolitonClass.EXPANDING.value, "III alpha!=0: expanding", errs)
            _expect(r.causal_character == CausalCharacter.SPACELIKE.value, "III alpha!=0: spacelike", errs)
        else:
            _expect(r.soliton_class == SolitonClass.STEADY.value, "III alpha=0: steady", errs)
            _expect(r.causal_character == CausalCharacter.NULL.value, "III alpha=0: null", errs)
    return errs


def nonunimodular_expectations(r: PointRecord) -> list[str]:
    errs: list[str] = []
    p = r.params
    if r.family in ("IV1", "IV2"):
        _expect(not r.exists or r.einstein, f"{r.family} solutions must be Einstein", errs)
        _expect(not r.nontrivial, f"{r.family} admits no non-trivial soliton", errs)
        return errs
    a, c, d = p["alpha"], p["gamma"], p["delta"]
    # alpha = delta with gamma = 0 has vanishing Ricci tensor, hence is flat
    expected = bool(a) and not c and a != d
    _expect(r.nontrivial == expected, "IV3 non-trivial iff alpha!=0=gamma (and not flat)", errs)
    if not a and c:
        _expect(not r.exists, "IV3 alpha=0!=gamma admits no soliton", errs)
    if expected and d:
        _expect(r.witness == "left-invariant", "IV3: left-invariant soliton expected", errs)
        _expect(r.references.get("IV3-steady-null") is True, "IV3: steady null field present", errs)
        if d == 2 * a:
            _expect(r.lambda_free and r.references.get("IV3-lambda-line") is True, "IV3 delta=2alpha: free lambda family", errs)
            _expect(r.causal_character == CausalCharacter.VARIES.value, "IV3 delta=2alpha: causal character varies", errs)
        else:
            _expect(not r.lambda_free and r.lam == ZERO, "IV3 delta!=2alpha: steady only", errs)
            _expect(r.causal_character == CausalCharacter.NULL.value, "IV3 delta!=2alpha: null", errs)
    if expected and not d:
        _expect(r.witness == "symmetric-walker", "IV3 delta=0: symmetric Walker metric", errs)
    return errs


def segre_expectations(r: PointRecord) -> list[str]:
    predicted = r.segre == SegreType.JORDAN_3.notation or (r.segre == SegreType.JORDAN_21.notation and r.triple_eigenvalue)
    if r.nontrivial != predicted:
        return [f"non-trivial soliton ({r.nontrivial}) but Segre {r.segre}, triple={r.triple_eigenvalue}"]
    return []


# reports --------------------------------------------------------------------


@dataclass
class SweepReport:
    name: str
    families: list[str]
    grid: dict[str, str]
    records: list[PointRecord]
    violations: list[dict]
    skipped: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, include_records: bool = True) -> dict:
        d = {
            "name": self.name,
            "families": self.families,
            "grid": self.grid,
            "points": len(self.records),
            "points_per_family": {f: sum(r.family == f for r in self.records) for f in self.families},
            "skipped": self.skipped,
            "violations": self.violations,
            "ok": self.ok,
        }
        if include_records:
            d["records"] = [r.to_json() for r in self.records]
        return d

    def summary(self) -> str:
        per = ", ".join(f"{f}={sum(r.family == f for r in self.records)}" for f in self.families)
        status = "OK" if self.ok else f"{len(self.violations)} VIOLATIONS"
        return f"{self.name}: {len(self.records)} points ({per}), {self.skipped} skipped, {status}"


def _sweep(name: str, grids: list[Grid], check, jobs: int | None) -> SweepReport:
    records = evaluate_grids(grids, jobs)
    violations = []
    for r in records:
        for msg in check(r):
            violations.append({"family": r.family, "params": {k: str(v) for k, v in r.params.items()}, "message": msg})
    return SweepReport(
        name,
        [g.family for g in grids],
        {g.family: g.description for g in grids},
        records,
        violations,
        sum(g.skipped for g in grids),
    )


def _grids(families: Sequence[str], values: Sequence[QuadScalar] | None) -> list[Grid]:
    vals = DEFAULT_VALUES if values is None else values
    return [product_grid(f, vals) for f in families]


def verify_unimodular_theorem(values: Sequence[QuadScalar] | None = None, jobs: int | None = None) -> SweepReport:
    return _sweep("unimodular", _grids(UNIMODULAR, values), unimodular_expectations, jobs)


def verify_nonunimodular_theorem(values: Sequence[QuadScalar] | None = None, jobs: int | None = None) -> SweepReport:
    return _sweep("nonunimodular", _grids(NONUNIMODULAR, values), nonunimodular_expectations, jobs)


def verify_segre_equivalence(values: Sequence[QuadScalar] | None = None, jobs: int | None = None,
                             min_points: int = MIN_CERTIFICATE_POINTS) -> SweepReport:
    """Non-trivial soliton iff Segre {3} or {21} with a triple eigenvalue.

    With ``values=None`` each family uses :func:`certificate_grid`, which
    extends the default values until the family has ``min_points`` points.
    """
    if values is None:
        grids = [certificate_grid(f, min_points) for f in FAMILIES]
    else:
        grids = _grids(FAMILIES, values)
    return _sweep("segre-equivalence", grids, segre_expectations, jobs)


def verify_all(values: Sequence[QuadScalar] | None = None, jobs: int | None = None) -> list[SweepReport]:
    return [
        verify_unimodular_theorem(values, jobs),
        verify_nonunimodular_theorem(values, jobs),
        verify_segre_equivalence(values, jobs),
    ]
