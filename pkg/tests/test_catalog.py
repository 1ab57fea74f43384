import json

import pytest

from lorsol.catalog import (DEFAULT_VALUES, certificate_grid, evaluate_point, product_grid,
                            verify_nonunimodular_theorem, verify_segre_equivalence,
                            verify_unimodular_theorem)
from lorsol.exactfield import SQRT2, ZERO, QuadScalar
from lorsol.liemodel import FAMILIES

Q = QuadScalar
H = Q(1) / 2
SMALL = [Q(-1), ZERO, H, Q(1), SQRT2]


def p(**kw):
    return {k: Q(0) + v for k, v in kw.items()}


def test_II_steady_spacelike():
    r = evaluate_point("II", p(alpha=0, beta=-3))
    assert r.nontrivial and r.soliton_class == "steady" and r.causal_character == "spacelike"


def test_III_null():
    r = evaluate_point("III", p(alpha=0))
    assert r.causal_character == "null" and r.soliton_class == "steady"


def test_Ia_nothing():
    r = evaluate_point("Ia", p(alpha=1, beta=2, gamma=3))
    assert not r.exists and not r.einstein and r.segre == "{11,1}"


def test_IV3_lambda_family():
    r = evaluate_point("IV3", p(alpha=1, beta=0, gamma=0, delta=2))
    assert r.lambda_free and r.nontrivial and r.lam is None


def test_IV3_no_solution():
    assert not evaluate_point("IV3", p(alpha=0, beta=1, gamma=1, delta=1)).exists


def test_IV1_einstein_only():
    r = evaluate_point("IV1", p(alpha=1, beta=1, gamma=1, delta=1))
    assert r.einstein and not r.nontrivial


def test_III_jordan3():
    r = evaluate_point("III", p(alpha=2))
    assert r.segre == "{3}" and r.nontrivial


def test_II_jordan21_without_soliton():
    r = evaluate_point("II", p(alpha=1, beta=2))
    assert r.segre == "{21}" and not r.exists and not r.triple_eigenvalue


def test_symmetric_walker_witness():
    r = evaluate_point("IV3", p(alpha=1, beta=1, gamma=0, delta=0))
    assert not r.exists and r.witness == "symmetric-walker" and r.ricci_two_step_nilpotent


def test_skipped_points_counted():
    g = product_grid("Ib", [ZERO, Q(1)])
    assert g.skipped == 4 and len(g.points) == 4
    iv = product_grid("IV3", SMALL)
    assert iv.skipped + len(iv.points) == len(SMALL) ** 4


@pytest.mark.parametrize("sweep", [verify_unimodular_theorem, verify_nonunimodular_theorem,
                                   verify_segre_equivalence])
def test_small_sweeps_clean(sweep):
    rep = sweep(SMALL)
    assert rep.ok, rep.violations[:3]
    assert rep.records


def test_default_grid_sweeps_clean():
    for sweep in (verify_unimodular_theorem, verify_nonunimodular_theorem):
        rep = sweep()
        assert rep.ok, rep.violations[:3]
    assert len(DEFAULT_VALUES) == 9


def test_certificate_grid_size():
    for tag in FAMILIES:
        g = certificate_grid(tag, 200)
        assert len(g.points) >= 200
        assert len({tuple(sorted(pt.items())) for pt in g.points}) == len(g.points)


def test_report_deterministic_and_parallel_safe():
    a = json.dumps(verify_nonunimodular_theorem(SMALL, jobs=1).to_json(), sort_keys=True)
    b = json.dumps(verify_nonunimodular_theorem(SMALL, jobs=1).to_json(), sort_keys=True)
    c = json.dumps(verify_nonunimodular_theorem(SMALL, jobs=2).to_json(), sort_keys=True)
    assert a == b == c


def test_summary_text():
    rep = verify_unimodular_theorem([ZERO, Q(1)])
    assert rep.summary().startswith("unimodular:") and rep.summary().endswith("OK")
