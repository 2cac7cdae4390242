"""Parameter search for the certified constants.

Every candidate goes through the real certification pipeline, so whatever
comes back is certified by construction.  Points that fail any check score
+inf.  Strategy: Latin-hypercube seeding, Nelder-Mead restarts from the best
seeds, then a coordinate polish.
"""

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from . import prop, thm1, thm2
from .rigor import Interval, Status, iv

__all__ = ["Dim", "SearchSpace", "SearchResult", "NoFeasiblePoint", "OBJECTIVES",
           "default_space", "evaluate", "optimize", "sensitivity", "paper_point"]


@dataclass(frozen=True)
class Dim:
    name: str
    lo: float
    hi: float
    scale: str = "linear"
    integer: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"dimension {self.name}: need lo < hi")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"dimension {self.name}: unknown scale {self.scale}")
        if self.scale == "log" and self.lo <= 0:
            raise ValueError(f"dimension {self.name}: log scale needs lo > 0")

    def from_unit(self, u):
        if self.scale == "log":
            x = math.exp(math.log(self.lo) + u * (math.log(self.hi) - math.log(self.lo)))
        else:
            x = self.lo + u * (self.hi - self.lo)
        return int(round(x)) if self.integer else x

    def to_unit(self, x):
        if self.scale == "log":
            return (math.log(x) - math.log(self.lo)) / (math.log(self.hi) - math.log(self.lo))
        return (x - self.lo) / (self.hi - self.lo)


@dataclass(frozen=True)
class SearchSpace:
    dims: Tuple[Dim, ...]
    # extra fixed inputs passed to the pipeline unchanged
    fixed: Dict[str, object] = field(default_factory=dict)
    # optional cheap predicate run before the pipeline; the pipeline's own
    # checks are always applied on top
    constraint_fn: Optional[Callable[[dict], bool]] = None

    @property
    def names(self):
        return [d.name for d in self.dims]

    @property
    def integer_dims(self):
        return [d.name for d in self.dims if d.integer]

    def decode(self, u):
        return {d.name: d.from_unit(float(x)) for d, x in zip(self.dims, u)}

    def encode(self, params):
        return np.array([d.to_unit(params[d.name]) for d in self.dims])

    @classmethod
    def from_mapping(cls, m, base=None):
        dims = tuple(Dim(d["name"], float(d["lo"]), float(d["hi"]), d.get("scale", "linear"),
                         bool(d.get("integer", False))) for d in m["dims"])
        fixed = dict(base.fixed) if base is not None else {}
        fixed.update(m.get("fixed", {}))
        return cls(dims, fixed)


@dataclass
class SearchResult:
    objective: str
    best_params: Dict[str, object]
    best_value: Interval
    evals: int
    seed: int
    trajectory: List[Tuple[int, float]] = field(default_factory=list)

    def to_json(self):
        from .rigor import fmt_hi, fmt_lo
        return {
            "objective": self.objective,
            "best_params": {k: (v if isinstance(v, int) else repr(float(v))) for k, v in self.best_params.items()},
            "best_value": [fmt_lo(self.best_value.lo, 17), fmt_hi(self.best_value.hi, 17)],
            "evals": self.evals,
            "seed": self.seed,
            "trajectory": [[i, repr(v)] for i, v in self.trajectory],
        }


class NoFeasiblePoint(RuntimeError):
    def __init__(self, histogram):
        self.histogram = dict(histogram)
        lines = ", ".join(f"{k}: {v}" for k, v in sorted(self.histogram.items()))
        super().__init__(f"no feasible point within budget; violations: {lines}")


# --- objective adapters ---------------------------------------------------------
# each returns (value Interval or None, list of failed check names)

def _dec(x):
    return iv(str(x)) if isinstance(x, int) else iv(repr(float(x)))


def _failed(checks):
    return [n for n, c in checks if c.status is not Status.PROVEN]


def _thm1_a6(p):
    params = thm1.Thm1Params(_dec(p["eta3"]), _dec(p["h1"]), _dec(p["h2"]), _dec(p["log_t0"]),
                             int(p.get("b1_theta", 6)), int(p.get("k_cap", 32)))
    c = thm1.certify(params, target=None)
    return (c.A6 if c.valid else None), _failed(c.preconditions)


def _prop_b1(p):
    params = prop.PropParamsA(_dec(p["log_t1"]), _dec(p["eta"]), int(p["q0"]))
    sound, _, _, checks = prop.b1_of(params)
    bad = _failed(checks)
    return (None if bad else sound), bad


def _prop_b3(p):
    params = prop.PropParamsB(_dec(p["log_t2"]), _dec(p["eta3"]), _dec(p["eta4"]), _dec(p["h1p"]),
                              int(p["q0"]), int(p["s0"]), _dec(p["mu5"]), _dec(p["mu6"]))
    sound, _, _, checks = prop.b3_of(params)
    bad = _failed(checks)
    return (None if bad or sound is None else sound), bad


def _thm2_params(p):
    C = p.get("C", "e^2/8")
    return thm2.Thm2Params.from_mapping({"t0": p["t0"], "eps": repr(float(p["eps"])), "C": C,
                                         "d": repr(float(p["d"])), "d1": repr(float(p.get("d1", 1e-3)))})


def _thm2_q1(p):
    out, cons = thm2.q1(_thm2_params(p))
    bad = _failed(cons)
    return (None if bad or out is None else out["Q1"]), bad


def _thm2_q2(p):
    c = thm2.thm2_certify(_thm2_params(p), targets=None)
    bad = _failed(c.constraints + c.claims)
    return (None if bad else c.Q2), bad


OBJECTIVES = {
    "thm1_A6": _thm1_a6,
    "prop_B1a": _prop_b1,
    "prop_B1b": _prop_b1,
    "prop_B3": _prop_b3,
    "thm2_Q1": _thm2_q1,
    "thm2_Q2": _thm2_q2,
}


def default_space(objective):
    if objective == "thm1_A6":
        return SearchSpace((Dim("eta3", 0.5, 3.0), Dim("h1", 1.0001, 1.1), Dim("h2", 0.6, 1.4)),
                           {"log_t0": 3069})
    if objective == "prop_B1a":
        return SearchSpace((Dim("eta", 1.0, 2.0), Dim("q0", 2, 9, integer=True)), {"log_t1": 16})
    if objective == "prop_B1b":
        return SearchSpace((Dim("eta", 0.8, 1.6), Dim("q0", 2, 9, integer=True)), {"log_t1": 82})
    if objective == "prop_B3":
        return SearchSpace((Dim("eta3", 1.0, 2.0), Dim("eta4", 1.5, 3.0), Dim("h1p", 1.01, 1.5),
                            Dim("mu5", 10, 60, "log"), Dim("mu6", 10, 60, "log")),
                           {"log_t2": 93, "q0": 29, "s0": 110})
    if objective == "thm2_Q1":
        return SearchSpace((Dim("d", 0.002, 0.05, "log"), Dim("eps", 0.05, 1.0)), {"t0": 500})
    if objective == "thm2_Q2":
        return SearchSpace((Dim("d", 0.002, 0.05, "log"), Dim("eps", 0.05, 1.0), Dim("d1", 0.001, 0.03, "log")),
                           {"t0": 500})
    raise KeyError(objective)


def paper_point(objective):
    """The published parameter choice for an objective, in search coordinates."""
    P = {
        "thm1_A6": {"eta3": 0.8410538348318537, "h1": 1.0072318915891114, "h2": 0.8643140421215492},
        "prop_B1a": {"eta": 1.304, "q0": 5},
        "prop_B1b": {"eta": 1.028, "q0": 4},
        "prop_B3": {"eta3": 1.4942456016768517, "eta4": 2.0960121834416348, "h1p": 1.126788460908779,
                    "mu5": 32.114893449766214, "mu6": 35.523572643294735},
        "thm2_Q1": {"d": 0.018, "eps": 0.52},
        "thm2_Q2": {"d": 0.018, "eps": 0.52, "d1": 0.0065},
    }
    return dict(P[objective])


def evaluate(objective, params, space=None):
    """Certified objective value (Interval) or None with the failed check names."""
    space = space or default_space(objective)
    full = dict(space.fixed)
    full.update(params)
    if space.constraint_fn is not None and not space.constraint_fn(full):
        return None, ["constraint_fn"]
    try:
        return OBJECTIVES[objective](full)
    except (ValueError, ArithmeticError, KeyError) as exc:
        return None, [type(exc).__name__]


class _Budget(Exception):
    pass


class _Scorer:
    def __init__(self, objective, space, budget):
        self.objective, self.space, self.budget = objective, space, budget
        self.evals = 0
        self.cache = {}
        self.hist = Counter()
        self.best = None  # (hi, key, params, value)
        self.trajectory = []

    def key(self, params):
        return tuple(params[n] if isinstance(params[n], int) else float(params[n]) for n in self.space.names)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u < 0) or np.any(u > 1):
            return math.inf
        return self.score(self.space.decode(u))

    def score(self, params):
        k = self.key(params)
        if k in self.cache:
            return self.cache[k]
        if self.evals >= self.budget:
            raise _Budget
        self.evals += 1
        val, bad = evaluate(self.objective, params, self.space)
        if val is None:
            for b in bad:
                self.hist[b] += 1
            score = math.inf
        else:
            score = float(val.hi)
            cand = (score, k, params, val)
            if self.best is None or cand[:2] < self.best[:2]:
                self.best = cand
                self.trajectory.append((self.evals, score))
        self.cache[k] = score
        return score


def optimize(objective, space=None, budget=200, seed=0, init=None):
    """Minimize the certified constant; deterministic in (objective, space, budget, seed).

    ``init`` (a params dict) is evaluated first, so the result is never worse
    than the initialization.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if objective not in OBJECTIVES:
        raise KeyError(f"unknown objective {objective}")
    space = space or default_space(objective)
    sc = _Scorer(objective, space, budget)
    n = len(space.dims)
    try:
        starts = []
        if init is not None:
            sc.score({name: init[name] for name in space.names})
            starts.append(np.clip(space.encode(init), 0, 1))
        n_lhs = max(1, min(budget // 4, 20 * n))
        sampler = qmc.LatinHypercube(d=n, seed=seed)
        pts = sampler.random(n_lhs)
        scored = sorted(((sc(u), i) for i, u in enumerate(pts)), key=lambda x: x[0])
        # keep sampling while nothing feasible has been seen
        while sc.best is None:
            for u in sampler.random(n_lhs):
                sc(u)
        starts += [pts[i] for s, i in scored[:4] if math.isfinite(s)]
        for u in starts:
            for scale in (0.1, 0.02):
                simplex = [u] + [np.clip(u + scale * e, 0, 1) for e in np.eye(n)]
                minimize(sc, u, method="Nelder-Mead",
                         options={"initial_simplex": np.array(simplex), "xatol": 1e-9, "fatol": 1e-13,
                                  "maxfev": max(1, budget - sc.evals)})
                u = space.encode(sc.best[2])
        _polish(sc, space)
    except _Budget:
        pass
    if sc.best is None:
        raise NoFeasiblePoint(sc.hist)
    _, _, params, val = sc.best
    return SearchResult(objective, params, val, sc.evals, seed, sc.trajectory)


def _polish(sc, space):
    step = 1e-2
    while step > 1e-7:
        improved = False
        for i in range(len(space.dims)):
            for sgn in (1, -1):
                u = space.encode(sc.best[2]).copy()
                u[i] += sgn * step
                before = sc.best[0]
                sc(u)
                improved |= sc.best[0] < before
        if not improved:
            step /= 4


def sensitivity(objective, params, radius=1e-4, space=None):
    """Per-dimension central-difference slopes of the certified objective.

    Returns {name: (slope, flag)} with flag "central", "forward", "backward",
    "integer" (not differentiated) or "infeasible".
    """
    space = space or default_space(objective)
    base, bad = evaluate(objective, params, space)
    if base is None:
        raise ValueError(f"params infeasible: {bad}")
    f0 = float(base.mid)
    out = {}
    for d in space.dims:
        if d.integer:
            out[d.name] = (0.0, "integer")
            continue
        x = float(params[d.name])
        hstep = radius * abs(x) if x != 0 else radius
        if hstep == 0:
            out[d.name] = (0.0, "central")
            continue
        vals = {}
        for sgn in (1, -1):
            q = dict(params)
            q[d.name] = x + sgn * hstep
            v, _ = evaluate(objective, q, space)
            vals[sgn] = None if v is None else float(v.mid)
        if vals[1] is not None and vals[-1] is not None:
            out[d.name] = ((vals[1] - vals[-1]) / (2 * hstep), "central")
        elif vals[1] is not None:
            out[d.name] = ((vals[1] - f0) / hstep, "forward")
        elif vals[-1] is not None:
            out[d.name] = ((f0 - vals[-1]) / hstep, "backward")
        else:
            out[d.name] = (math.nan, "infeasible")
    return out
