"""Command line front end: ``lorsol <subcommand> [options]``.

Exit status: 0 on success, 1 when verify-paper finds violations or a
walker residual exceeds its threshold, 2 on any input error.  Errors are
printed as a JSON object ``{"error": {"type": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import catalog, walker
from .curvature import curvature_tensor, einstein_check
from .exactfield import QuadScalar, as_quad, parse_quad
from .liemodel import (FAMILIES, FAMILY_PARAMS, IV_RELATIONS, ConstraintError, LieAlgebra3, Metric3,
                       family, jacobi_check)
from .reference_tables import table_match
from .segre import AmbiguousSegreType, NotSelfAdjoint, classify
from .soliton import build_system, solve

FAMILY_TABLE = [
    {"tag": "Ia", "params": ["alpha", "beta", "gamma"], "constraint": "none", "metric": "diag(1,1,-1)",
     "brackets": "[e1,e2]=-gamma e3, [e1,e3]=-beta e2, [e2,e3]=alpha e1"},
    {"tag": "Ib", "params": ["alpha", "beta", "gamma"], "constraint": "beta != 0", "metric": "diag(1,1,-1)",
     "brackets": "[e1,e2]=beta e2-gamma e3, [e1,e3]=-gamma e2-beta e3, [e2,e3]=alpha e1"},
    {"tag": "II", "params": ["alpha", "beta"], "constraint": "none", "metric": "diag(1,1,-1)",
     "brackets": "[e1,e2]=1/2 e2-(beta-1/2) e3, [e1,e3]=-(beta+1/2) e2-1/2 e3, [e2,e3]=alpha e1"},
    {"tag": "III", "params": ["alpha"], "constraint": "none", "metric": "diag(1,1,-1)",
     "brackets": "[e1,e2]=-sqrt2/2 e1-alpha e3, [e1,e3]=-sqrt2/2 e1-alpha e2, [e2,e3]=alpha e1+sqrt2/2 e2-sqrt2/2 e3"},
    {"tag": "IV1", "params": ["alpha", "beta", "gamma", "delta"],
     "constraint": IV_RELATIONS["IV1"] + ", alpha + delta != 0", "metric": "diag(-1,1,1)",
     "brackets": "[e1,e2]=0, [e1,e3]=alpha e1+beta e2, [e2,e3]=gamma e1+delta e2"},
    {"tag": "IV2", "params": ["alpha", "beta", "gamma", "delta"],
     "constraint": IV_RELATIONS["IV2"] + ", alpha + delta != 0", "metric": "diag(1,1,-1)",
     "brackets": "[e1,e2]=0, [e1,e3]=alpha e1+beta e2, [e2,e3]=gamma e1+delta e2"},
    {"tag": "IV3", "params": ["alpha", "beta", "gamma", "delta"],
     "constraint": IV_RELATIONS["IV3"] + ", alpha + delta != 0", "metric": "[[1,0,0],[0,0,-1],[0,-1,0]]",
     "brackets": "[e1,e2]=0, [e1,e3]=alpha e1+beta e2, [e2,e3]=gamma e1+delta e2"},
]


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# rendering -------------------------------------------------------------------


def scalar(x) -> dict:
    q = as_quad(x)
    return {"exact": str(q), "float": float(q)}


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, QuadScalar):
        return scalar(obj)
    if isinstance(obj, Fraction):
        return {"exact": str(obj), "float": float(obj)}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _jsonable(obj.to_json())
    if hasattr(obj, "value") and hasattr(obj, "name"):
        return obj.value
    return obj


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        if set(obj) == {"exact", "float"}:
            return [(prefix, obj["exact"])]
        out = []
        for k, v in obj.items():
            out.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(obj, list):
        out = []
        for i, v in enumerate(obj):
            out.extend(_flatten(v, f"{prefix}[{i}]"))
        return out or [(prefix, "[]")]
    return [(prefix, obj)]


def emit_report(result: Any, fmt: str = "json") -> bytes:
    """Deterministic serialization of a result (already a dict or anything with to_json)."""
    data = _jsonable(result)
    if fmt == "json":
        return (json.dumps(data, indent=2, ensure_ascii=False) + "\n").encode()
    if fmt == "text":
        return "".join(f"{k}: {v}\n" for k, v in _flatten(data)).encode()
    if fmt == "csv":
        if isinstance(data, dict) and "csv" in data:
            return data["csv"].encode()
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["key", "value"])
        for k, v in _flatten(data):
            wr.writerow([k, v])
        return buf.getvalue().encode()
    raise InputError(f"unknown format {fmt!r}")


# input -----------------------------------------------------------------------


def _strict(obj: dict, allowed: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise InputError(f"{where} must be a JSON object")
    extra = set(obj) - allowed
    if extra:
        raise InputError(f"unknown field(s) in {where}: {sorted(extra)}")


def _read_json(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()

    def reject(c):
        raise InputError(f"invalid JSON constant {c}")

    def no_dupes(pairs):
        d = {}
        for k, v in pairs:
            if k in d:
                raise InputError(f"duplicate key {k!r}")
            d[k] = v
        return d

    return json.loads(text, parse_constant=reject, object_pairs_hook=no_dupes)


def _quad(v) -> QuadScalar:
    if isinstance(v, bool):
        raise InputError("booleans are not scalars")
    if isinstance(v, float):
        raise InputError("give scalars as exact strings, integers or {a, b} objects, not floats")
    try:
        return parse_quad(v) if isinstance(v, str) else as_quad(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {v!r}: {exc}") from exc


def algebra_from_document(doc: dict) -> LieAlgebra3:
    _strict(doc, {"family", "params", "metric", "brackets"}, "algebra document")
    if "family" in doc and "brackets" not in doc:
        params = doc.get("params", {})
        _strict(params, set(FAMILY_PARAMS.get(doc["family"], ())), "params")
        return _family(doc["family"], {k: _quad(v) for k, v in params.items()})
    if "metric" not in doc or "brackets" not in doc:
        raise InputError("algebra document needs either family or metric and brackets")
    g = [[_quad(x) for x in row] for row in doc["metric"]]
    if len(g) != 3 or any(len(r) != 3 for r in g):
        raise InputError("metric must be 3x3")
    table: dict[tuple[int, int], list[QuadScalar]] = {}
    for entry in doc["brackets"]:
        _strict(entry, {"i", "j", "k", "c"}, "bracket entry")
        try:
            i, j, k = (int(entry[n]) - 1 for n in "ijk")
            c = _quad(entry["c"])
        except KeyError as exc:
            raise InputError(f"bracket entry missing {exc}") from exc
        if not all(0 <= n < 3 for n in (i, j, k)) or i == j:
            raise InputError(f"bad bracket indices {entry}")
        if i > j:
            i, j, c = j, i, -c
        vec = table.setdefault((i, j), [QuadScalar(0)] * 3)
        vec[k] = vec[k] + c
    params = {k: _quad(v) for k, v in doc.get("params", {}).items()}
    alg = LieAlgebra3.from_brackets(table, Metric3(g), doc.get("family"), params)
    if not jacobi_check(alg):
        raise InputError("brackets violate the Jacobi identity")
    return alg


def _family(tag: str, params: dict) -> LieAlgebra3:
    if tag not in FAMILIES:
        raise InputError(f"unknown family {tag!r}; expected one of {list(FAMILIES)}")
    return family(tag, **params)


def _algebra(args) -> LieAlgebra3:
    if args.input:
        if args.family:
            raise InputError("give either --input or --family, not both")
        return algebra_from_document(_read_json(args.input))
    if not args.family:
        raise InputError("--family or --input is required")
    names = FAMILY_PARAMS.get(args.family, ())
    params = {}
    for n in ("alpha", "beta", "gamma", "delta"):
        v = getattr(args, n)
        if v is None:
            continue
        if n not in names:
            raise InputError(f"family {args.family} has no parameter {n}")
        params[n] = _quad(v)
    return _family(args.family, params)


def _header(alg: LieAlgebra3) -> dict:
    return {"family": alg.family, "params": {k: scalar(v) for k, v in alg.params.items()}, "basis": alg.basis}


# subcommands -----------------------------------------------------------------


def cmd_curvature(args) -> tuple[dict, int]:
    alg = _algebra(args)
    data = curvature_tensor(alg)
    out = _header(alg)
    out["R"] = {"".join(map(str, k)): scalar(v) for k, v in sorted(data.nonzero_components().items())}
    out["ric"] = [[scalar(x) for x in row] for row in data.ric]
    out["ric_op"] = [[scalar(x) for x in row] for row in data.ric_op]
    out["scal"] = scalar(data.scal)
    out["einstein"] = einstein_check(alg, data)
    if alg.family is not None:
        out["paper_table_match"] = table_match(alg)
    return out, 0


def cmd_segre(args) -> tuple[dict, int]:
    alg = _algebra(args)
    data = curvature_tensor(alg)
    op = data.ric_op
    if args.tol is not None:
        op = [[float(x) for x in row] for row in op]
    rep = classify(op, alg.metric, tol=args.tol)
    return dict(_header(alg), segre=rep.to_json()), 0


def cmd_soliton(args) -> tuple[dict, int]:
    alg = _algebra(args)
    data = curvature_tensor(alg)
    sol = solve(alg, data)
    out = _header(alg)
    out.update({
        "exists": sol.exists,
        "trivial": sol.trivial,
        "X": None if not sol.exists else [scalar(x) for x in sol.particular[0]],
        "lambda": None if not sol.exists else scalar(sol.particular[1]),
        "homogeneous_basis": [[scalar(x) for x in v] for v in sol.homogeneous_basis],
        "dimension": sol.dimension,
        "soliton_class": sol.soliton_class.value if sol.soliton_class else None,
        "causal_character": sol.causal_character.value if sol.causal_character else None,
        "system": build_system(alg, data).to_json(),
        "echelon": {"rows": [[scalar(x) for x in row] for row in sol.echelon], "pivots": sol.pivots},
        "references": [
            {"name": r["name"], "contained": r["contained"],
             "points": [{"X": [scalar(x) for x in X], "lambda": scalar(l)} for X, l in r["points"]]}
            for r in sol.reference
        ],
    })
    return out, 0


def _grid_values(text: str | None) -> list[QuadScalar] | None:
    if text in (None, "default"):
        return None
    vals = [parse_quad(s.strip()) for s in text.split(",") if s.strip()]
    if not vals:
        raise InputError("empty --grid")
    return vals


def cmd_verify(args) -> tuple[dict, int]:
    values = _grid_values(args.grid)
    reports = catalog.verify_all(values, jobs=args.jobs)
    ok = all(r.ok for r in reports)
    out = {
        "ok": ok,
        "summary": [r.summary() for r in reports],
        "reports": [r.to_json(include_records=args.records) for r in reports],
    }
    if args.format != "text":
        for line in out["summary"]:
            print(line, file=sys.stderr)
    return out, 0 if ok else 1


_WALKER_KEYS = {"eps", "kappa", "P", "Q", "lambda", "gamma", "w0", "w0p", "grid", "threshold"}


def _walker_config(args) -> dict:
    cfg: dict[str, Any] = {"eps": 1, "kappa": "1", "P": [], "Q": [], "lambda": "0", "gamma": "0",
                           "w0": 0.0, "w0p": 0.0, "grid": {"lo": -1.0, "hi": 1.0, "n": 20}, "threshold": 1e-8}
    if args.input:
        doc = _read_json(args.input)
        _strict(doc, _WALKER_KEYS, "walker document")
        cfg.update(doc)
    for key, val in (("eps", args.eps), ("kappa", args.kappa), ("lambda", args.lam), ("gamma", args.gamma),
                     ("w0", args.w0), ("w0p", args.w0p)):
        if val is not None:
            cfg[key] = val
    if args.P is not None:
        cfg["P"] = [s for s in args.P.split(",") if s]
    if args.Q is not None:
        cfg["Q"] = [s for s in args.Q.split(",") if s]
    if args.grid:
        parts = args.grid.split(":")
        if len(parts) == 1:
            cfg["grid"] = dict(cfg["grid"], n=int(parts[0]))
        elif len(parts) == 3:
            cfg["grid"] = {"lo": float(parts[0]), "hi": float(parts[1]), "n": int(parts[2])}
        else:
            raise InputError("--grid for walker-check is N or LO:HI:N")
    if isinstance(cfg["grid"], dict):
        _strict(cfg["grid"], {"lo", "hi", "n"}, "grid")
    return cfg


def _rational(v, what: str) -> Fraction:
    try:
        return walker._frac(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad {what} {v!r}") from exc


def cmd_walker(args) -> tuple[dict, int]:
    cfg = _walker_config(args)
    try:
        eps = int(cfg["eps"])
        F = walker.StructuredF(_rational(cfg["kappa"], "kappa"), [_rational(c, "P coefficient") for c in cfg["P"]],
                               [_rational(c, "Q coefficient") for c in cfg["Q"]])
        m = walker.WalkerMetric(eps, F)
        lam, gamma = _rational(cfg["lambda"], "lambda"), _rational(cfg["gamma"], "gamma")
        g = cfg["grid"]
        grid = walker.GridSpec(float(g["lo"]), float(g["hi"]), int(g["n"]))
        threshold = float(cfg["threshold"])
    except (TypeError, KeyError) as exc:
        raise InputError(f"bad walker document: {exc}") from exc
    if F.flat:
        raise InputError("kappa must be nonzero (the flat case has no symmetric reduction)")
    interval = (min(grid.lo, 0.0), max(grid.hi, 0.0))
    sol = walker.solve_symmetric(F, lam, gamma, float(cfg["w0"]), float(cfg["w0p"]), eps=eps, interval=interval)
    X = walker.field_from_solution(sol)
    res = walker.soliton_residual(m, X, float(lam), grid)
    axes = grid.axes()
    nilpotent = all(not any(v for row in walker.ricci_squared(m, (0, _rational(x, "x"), _rational(y, "y")))
                            for v in row)
                    for x in axes[:: max(1, grid.n // 5)] for y in axes[:: max(1, grid.n // 5)])
    out = {
        "metric": {"eps": eps, "f": F.to_json()},
        "lambda": str(lam),
        "gamma": str(gamma),
        "soliton_class": "shrinking" if lam > 0 else "steady" if lam == 0 else "expanding",
        "grid": {"lo": grid.lo, "hi": grid.hi, "n": grid.n},
        "residual_max": res,
        "threshold": threshold,
        "ok": res < threshold,
        "nilpotency": nilpotent,
        "causal_map": walker.causal_map(m, X, grid),
    }
    if args.format == "csv":
        out = {"csv": sol.to_csv()}
    return out, 0 if res < threshold else 1


def cmd_list(args) -> tuple[dict, int]:
    if args.format == "text":
        lines = [f"{r['tag']:4} params={','.join(r['params'])}  constraint: {r['constraint']}  "
                 f"metric {r['metric']}  {r['brackets']}" for r in FAMILY_TABLE]
        return {"text": "\n".join(lines) + "\n"}, 0
    if args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["tag", "params", "constraint", "metric", "brackets"])
        for r in FAMILY_TABLE:
            wr.writerow([r["tag"], " ".join(r["params"]), r["constraint"], r["metric"], r["brackets"]])
        return {"csv": buf.getvalue()}, 0
    return {"families": FAMILY_TABLE}, 0


# wiring ----------------------------------------------------------------------


def _jobs_default() -> int:
    try:
        return int(os.environ.get("LORSOL_JOBS", "1"))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", "-o")
    common.add_argument("--format", choices=("json", "text", "csv"), default="json")

    alg = _Parser(add_help=False)
    alg.add_argument("--family")
    alg.add_argument("--input", "-i")
    for n in ("alpha", "beta", "gamma", "delta"):
        alg.add_argument(f"--{n}")
    alg.add_argument("--tol", type=float)

    p = _Parser(prog="lorsol", description="Ricci solitons on three-dimensional Lorentzian Lie groups.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    sub.add_parser("curvature", parents=[common, alg], help="curvature tensor and Ricci data")
    sub.add_parser("segre", parents=[common, alg], help="Segre type of the Ricci operator")
    sub.add_parser("soliton", parents=[common, alg], help="left-invariant Ricci solitons")
    v = sub.add_parser("verify-paper", parents=[common], help="run all classification sweeps")
    v.add_argument("--grid", help="comma separated parameter values (default: built-in grids)")
    v.add_argument("--jobs", type=int, default=_jobs_default())
    v.add_argument("--records", action="store_true", help="include every grid point in the report")
    w = sub.add_parser("walker-check", parents=[common], help="build and check a symmetric Walker soliton")
    w.add_argument("--input", "-i")
    w.add_argument("--eps", type=int, choices=(1, -1))
    w.add_argument("--kappa")
    w.add_argument("--P", help="comma separated coefficients, lowest degree first")
    w.add_argument("--Q", help="comma separated coefficients, lowest degree first")
    w.add_argument("--lambda", dest="lam")
    w.add_argument("--gamma")
    w.add_argument("--w0", type=float)
    w.add_argument("--w0p", type=float)
    w.add_argument("--grid", help="N or LO:HI:N")
    sub.add_parser("list-families", parents=[common], help="table of the seven families")
    return p


COMMANDS = {
    "curvature": cmd_curvature,
    "segre": cmd_segre,
    "soliton": cmd_soliton,
    "verify-paper": cmd_verify,
    "walker-check": cmd_walker,
    "list-families": cmd_list,
}


def _error(kind: str, message: str) -> int:
    sys.stdout.write(json.dumps({"error": {"type": kind, "message": message}}, indent=2) + "\n")
    return 2


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result, status = COMMANDS[args.command](args)
        if set(result) == {"text"}:
            payload = result["text"].encode()
        else:
            payload = emit_report(result, args.format)
    except json.JSONDecodeError as exc:
        return _error("malformed_json", str(exc))
    except ConstraintError as exc:
        return _error("constraint_violation", str(exc))
    except AmbiguousSegreType as exc:
        return _error("ambiguous_segre_type", str(exc))
    except NotSelfAdjoint as exc:
        return _error("not_self_adjoint", str(exc))
    except OSError as exc:
        return _error("io_error", str(exc))
    except (InputError, ValueError, TypeError, ZeroDivisionError) as exc:
        return _error("invalid_input", str(exc))
    if args.output:
        try:
            with open(args.output, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            return _error("io_error", str(exc))
    else:
        try:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); not an error of ours
            devnull = os.open(os.devnull, os.O_WRONLY)
            os.dup2(devnull, sys.stdout.fileno())
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
