"""Per-fiber verification pipeline and report assembly."""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .frobenius import (
    NotASplitting,
    is_splitting,
    proposition_stable,
    tau_antidiagonal,
    tau_for_fiber,
    verify_compatible,
    verify_splitting,
    verify_wellposed,
)
from .groebner import Budget, BudgetExceeded, Ideal
from .slgroup import SlnRing, centralizer_dimension, companion_point
from .steinberg import (
    DEFAULT_SEED,
    fiber_dimension,
    fiber_ideal,
    reducedness_sample,
    unipotent_fiber_coordinates,
)

SCHEMA_VERSION = 1
ALLOWED_N = (2, 3)
ALLOWED_P = (2, 3, 5, 7)
MAX_FULL_SWEEP = 25


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    n: int
    p: int
    fibers: object = "unipotent"  # "all", "unipotent", or a list of a-vectors
    seed: int = DEFAULT_SEED
    trials: int = 200
    budget_pairs: int = Budget.max_pairs
    budget_basis: int = Budget.max_basis
    jobs: int = 1
    timings: bool = True

    def validate(self):
        if self.n not in ALLOWED_N:
            raise ConfigError(f"n must be one of {ALLOWED_N}")
        if self.p not in ALLOWED_P:
            raise ConfigError(f"p must be one of {ALLOWED_P}")
        if self.fibers == "all" and self.p ** (self.n - 1) > MAX_FULL_SWEEP:
            raise ConfigError(f"full sweep of {self.p}^{self.n - 1} fibers exceeds {MAX_FULL_SWEEP}")
        if self.trials < 0 or self.jobs < 1 or self.budget_pairs < 1 or self.budget_basis < 1:
            raise ConfigError("trials, jobs and budgets must be positive")
        for a in self.fiber_list():
            if len(a) != self.n - 1:
                raise ConfigError(f"fiber {a} must have {self.n - 1} coordinates")
        return self

    def fiber_list(self) -> list:
        if self.fibers == "all":
            return [tuple(a) for a in itertools.product(range(self.p), repeat=self.n - 1)]
        if self.fibers == "unipotent":
            return [unipotent_fiber_coordinates(SlnRing(self.n, self.p))]
        return sorted({tuple(int(x) % self.p for x in a) for a in self.fibers})

    @property
    def budget(self) -> Budget:
        return Budget(self.budget_pairs, self.budget_basis)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["fibers"] = [list(a) for a in self.fiber_list()]
        return d


def _passfail(ok: bool) -> str:
    return "pass" if ok else "fail"


def run_fiber(n: int, p: int, a: tuple, seed: int, trials: int, budget: Budget, timings: bool) -> dict:
    """Run every check for one fiber; never raises for verification failures."""
    R = SlnRing(n, p)
    a = tuple(a)
    times: dict = {}
    rec: dict = {"n": n, "p": p, "a": list(a)}
    positive: list = []
    negative: list = []

    def timed(name, fn):
        t0 = time.perf_counter()
        try:
            return fn()
        finally:
            times[name] = round((time.perf_counter() - t0) * 1000, 3)

    try:
        F = fiber_ideal(R, a, budget)
        try:
            s = timed("splitting", lambda: verify_splitting(tau_for_fiber(R, a)))
            rec["normalization_c"] = s.c
            rec["splitting"] = "pass"
        except NotASplitting:
            s = None
            rec["normalization_c"] = None
            rec["splitting"] = "fail"
        positive.append(rec["splitting"] == "pass")
        if s is not None:
            rec["wellposed"] = timed("wellposed", lambda: verify_wellposed(s, budget))
            comp = timed("compatible_fiber", lambda: verify_compatible(s, F.ideal, budget))
            rec["compatible_fiber"] = _passfail(comp.passed)
            minors = timed("compatible_minors", lambda: [
                verify_compatible(s, Ideal([m, R.chart_relation], ring=R.ring, budget=budget), budget).passed
                for m in R.corner_minors
            ])
            rec["compatible_minors"] = [_passfail(ok) for ok in minors]
            try:
                st = timed("frob5", lambda: proposition_stable(R, a))
                ok = verify_compatible(st, F.ideal, budget).passed
            except NotASplitting:
                ok = False
            rec["frob5"] = _passfail(ok)
            positive += [rec["wellposed"], comp.passed, all(minors), ok]
        else:
            rec.update(wellposed=False, compatible_fiber="fail", compatible_minors=[], frob5="fail")
        dim = timed("dimension", lambda: fiber_dimension(F))
        codim = R.ring.nvars - dim
        red = timed("reducedness", lambda: reducedness_sample(F, trials, seed))
        companion = companion_point(R, a)
        rec["fiber"] = {
            "n": n, "p": p, "a": list(a), "dim": dim, "codim": codim,
            "generators": len(F.generators),
            "complete_intersection": codim == len(F.generators),
            "companion_regular": centralizer_dimension(companion) == n,
            "reducedness": red.as_dict(),
        }
        positive += [
            dim == n * n - n, codim == len(F.generators), red.passed,
            rec["fiber"]["companion_regular"],
        ]
        # negative controls: expected to fail
        other = ((a[0] + 1) % p,) + a[1:]
        if s is not None:
            wrong = timed("negative_other_fiber", lambda: verify_compatible(
                s, fiber_ideal(R, other, budget).ideal, budget).passed)
        else:
            wrong = False
        anti = timed("negative_antidiagonal", lambda: is_splitting(tau_antidiagonal(R, a)))
        rec["negative_controls"] = {
            "other_fiber": {"a": list(other), "compatible": _passfail(wrong), "expected": "fail"},
            "antidiagonal_minors": {"splitting": _passfail(anti), "expected": "fail"},
        }
        negative += [wrong, anti]
        rec["status"] = "pass" if all(positive) and not any(negative) else "fail"
    except BudgetExceeded as exc:
        rec["status"] = "budget"
        rec["budget_error"] = {"message": str(exc), "diagnostics": exc.diagnostics}
    rec["timings_ms"] = times if timings else None
    return rec


def run_suite(cfg: SuiteConfig, version: str = "0") -> dict:
    cfg.validate()
    fibers = cfg.fiber_list()
    args = [(cfg.n, cfg.p, a, cfg.seed, cfg.trials, cfg.budget, cfg.timings) for a in fibers]
    if cfg.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(run_fiber, *zip(*args)))
    else:
        records = [run_fiber(*x) for x in args]
    records.sort(key=lambda r: r["a"])
    counts = {k: sum(r["status"] == k for r in records) for k in ("pass", "fail", "budget")}
    if counts["budget"]:
        status = "budget"
    elif counts["fail"]:
        status = "fail"
    else:
        status = "pass"
    return {
        "schema_version": SCHEMA_VERSION,
        "version": version,
        "config": cfg.as_dict(),
        "fibers": records,
        "summary": {"fibers": len(records), **counts, "status": status},
    }


EXIT_CODES = {"pass": 0, "fail": 1, "budget": 2}


def format_text(report: dict) -> str:
    lines = []
    cfg = report["config"]
    lines.append(f"SL_{cfg['n']} over F_{cfg['p']}: {report['summary']['fibers']} fiber(s)")
    for r in report["fibers"]:
        a = ",".join(map(str, r["a"]))
        if r["status"] == "budget":
            lines.append(f"  a=({a}): BUDGET {r['budget_error']['message']}")
            continue
        fb = r["fiber"]
        neg = r["negative_controls"]
        lines.append(f"  a=({a}): {r['status'].upper()}")
        lines.append(f"    splitting          {r['splitting']} (c={r['normalization_c']})")
        lines.append(f"    wellposed          {_passfail(r['wellposed'])}")
        lines.append(f"    compatible fiber   {r['compatible_fiber']}")
        lines.append(f"    compatible minors  {' '.join(r['compatible_minors'])}")
        lines.append(f"    stable (frob5)     {r['frob5']}")
        lines.append(f"    dim/codim/gens     {fb['dim']}/{fb['codim']}/{fb['generators']}")
        red = fb["reducedness"]
        lines.append(f"    reducedness        {red['violations']} violation(s) in {red['trials']} trials")
        lines.append(f"    neg: other fiber   {neg['other_fiber']['compatible']} (expected fail)")
        lines.append(f"    neg: antidiagonal  {neg['antidiagonal_minors']['splitting']} (expected fail)")
    lines.append(f"status: {report['summary']['status']}")
    return "\n".join(lines)
