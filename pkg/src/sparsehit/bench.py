"""Benchmark harness: run instances, collect reports, fit scaling slopes."""

from __future__ import annotations

import json
import math
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .api import solve
from .exceptions import InvalidInputError
from .generators import GeneratorSpec, generate
from .patterns import PatternSet, enumerate_occurrences
from .solution import verify
from .solvers.exact import minimum_hitting_set
from .validation import check_epsilon, check_patterns

TIMING_FIELDS = ("times",)


@dataclass
class RunReport:
    """Outcome of one solver run.

    ``ratio`` is set only when ``opt`` is; ``valid`` is always set.
    """

    instance: dict
    solver: str
    params: dict
    n: int
    m: int
    size: int | None
    valid: bool
    opt: int | None = None
    ratio: float | None = None
    times: dict = field(default_factory=dict)
    error: str | None = None

    def __post_init__(self):
        if self.ratio is not None and self.opt is None:
            raise ValueError("ratio requires opt")

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            for k in TIMING_FIELDS:
                d.pop(k)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, default=str)


def run_instance(spec: GeneratorSpec, solver: str, fs: PatternSet, epsilon, *, oracle: bool = False,
                 options: dict | None = None) -> RunReport:
    """Generate, solve, verify and optionally compute the exact optimum.

    Generation is not timed. Errors are captured in the report.
    """
    options = dict(options or {})
    eps = check_epsilon(epsilon)
    g = generate(spec)
    params = {"epsilon": str(eps), "mode": fs.mode.value, "patterns": fs.names, **{k: v for k, v in options.items()}}
    times: dict[str, float] = {}
    try:
        t0 = time.perf_counter()
        sol = solve(g, fs, eps, solver, **options)
        times["solve"] = time.perf_counter() - t0
        if sol.trace is not None and getattr(sol.trace, "timings", None):
            times.update({f"stage.{k}": v for k, v in sol.trace.timings.items()})
        for key in ("delta", "delta_prime", "k", "alpha", "beta", "threshold"):
            if key in sol.provenance:
                params[key] = sol.provenance[key]
        if sol.trace is not None and hasattr(sol.trace, "params"):
            params["delta"] = sol.trace.params.delta
            params["delta_prime"] = str(sol.trace.params.delta_prime)
        t0 = time.perf_counter()
        valid, _ = verify(g, fs, sol.vertices)
        times["verify"] = time.perf_counter() - t0
        opt = None
        if oracle:
            t0 = time.perf_counter()
            opt = len(minimum_hitting_set(enumerate_occurrences(g, fs).sets))
            times["oracle"] = time.perf_counter() - t0
        ratio = None
        if opt is not None:
            ratio = 1.0 if opt == 0 and sol.size == 0 else (sol.size / opt if opt else math.inf)
        return RunReport(spec.to_dict(), solver, params, g.n, g.m, sol.size, valid, opt, ratio, times)
    except Exception as exc:  # a failing instance must not abort a sweep
        return RunReport(spec.to_dict(), solver, params, g.n, g.m, None, False, times=times,
                         error=f"{type(exc).__name__}: {exc}\n{traceback.format_exc(limit=2)}")


def _run_packed(args):
    return run_instance(*args[:4], oracle=args[4], options=args[5])


def bench(specs, solver: str, fs, epsilon, *, workers: int = 1, oracle: bool = False,
          options: dict | None = None, mode: str = "subgraph") -> list[RunReport]:
    """Run every spec; reports come back in spec order.

    Parameters
    ----------
    workers : int
        Process pool size; 1 runs in-process.
    """
    fs = check_patterns(fs, mode)
    jobs = [(s if isinstance(s, GeneratorSpec) else GeneratorSpec.from_dict(s), solver, fs, epsilon, oracle, options)
            for s in specs]
    if workers <= 1:
        return [_run_packed(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_packed, jobs))


def fit_loglog_slope(reports, stage: str = "solve") -> float | None:
    """Least-squares slope of log(time) against log(n); None with fewer than two sizes."""
    pts = [(r.n, r.times[stage]) for r in reports if r.error is None and stage in r.times and r.n > 0]
    if len({n for n, _ in pts}) < 2:
        return None
    x = np.log([n for n, _ in pts])
    y = np.log([max(t, 1e-9) for _, t in pts])
    return float(np.polyfit(x, y, 1)[0])


def write_jsonl(reports, fh, timing: bool = True) -> None:
    for r in reports:
        fh.write(r.to_json(timing) + "\n")


def load_sweep(path) -> dict:
    """Sweep file: JSON with ``specs`` plus optional ``solver``, ``patterns``,
    ``mode``, ``epsilon``, ``options``."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, list):
        data = {"specs": data}
    if "specs" not in data:
        raise InvalidInputError("sweep file needs a 'specs' list")
    return data
