import math

import pytest

from zetaline.optimizer import (
    Dim, NoFeasiblePoint, SearchSpace, default_space, evaluate, optimize, paper_point, sensitivity,
)


def test_dim_validation():
    with pytest.raises(ValueError):
        Dim("x", 1, 1)
    with pytest.raises(ValueError):
        Dim("x", 0, 1, "log")
    d = Dim("x", 1, 100, "log")
    assert abs(d.from_unit(d.to_unit(10)) - 10) < 1e-12


def test_deterministic():
    a = optimize("thm2_Q1", budget=40, seed=3)
    b = optimize("thm2_Q1", budget=40, seed=3)
    assert a.to_json() == b.to_json()


def test_non_regression_from_paper_point():
    for obj in ("thm2_Q1", "prop_B1b"):
        start, _ = evaluate(obj, paper_point(obj))
        res = optimize(obj, budget=30, seed=0, init=paper_point(obj))
        assert res.best_value.hi <= start.hi


def test_result_is_recertified():
    res = optimize("prop_B1a", budget=30, seed=1)
    val, bad = evaluate("prop_B1a", res.best_params)
    assert not bad and val.hi == res.best_value.hi


def test_thm2_q1_near_paper_below_154():
    res = optimize("thm2_Q1", budget=60, seed=0, init=paper_point("thm2_Q1"))
    assert res.best_value.hi < 154


def test_infeasible_space_reports_histogram():
    space = SearchSpace((Dim("d", 0.4, 0.9), Dim("eps", 0.05, 0.06)), {"t0": 500})
    with pytest.raises(NoFeasiblePoint) as exc:
        optimize("thm2_Q1", space, budget=10, seed=0)
    assert sum(exc.value.histogram.values()) > 0


def test_sensitivity():
    p = paper_point("thm1_A6")
    s1 = sensitivity("thm1_A6", p, 1e-4)
    s2 = sensitivity("thm1_A6", p, 1e-5)
    for name, (slope, flag) in s1.items():
        assert math.isfinite(slope) and flag == "central"
        if abs(slope) > 1e-3:
            assert math.copysign(1, slope) == math.copysign(1, s2[name][0])


def test_sensitivity_zero_radius():
    s = sensitivity("thm2_Q1", paper_point("thm2_Q1"), 0.0)
    assert all(v == (0.0, "central") for v in s.values())


def test_budget_validation():
    with pytest.raises(ValueError):
        optimize("thm2_Q1", budget=0)
