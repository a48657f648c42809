"""Benchmark runs: timings, operation counts and kappa ratios per problem."""
from __future__ import annotations

import logging
import os
import platform
import statistics
import timeit
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Optional

import numpy as np

from ..adcore import OpCounter, eval_components
from ..drivers import gradient_compressed, hessian, prepare_hybrid
from ..errors import DomainError
from ..problems import get_problem, problem_names

__all__ = [
    "BenchFailure", "BenchRecord", "DEFAULT_SIZES", "MIN_TRIALS", "environment",
    "run_bench", "run_case",
]

log = logging.getLogger(__name__)

DEFAULT_SIZES = (250, 1000, 4000)
MIN_TRIALS = 3
METHOD_CHOICES = ("direct", "substitution", "both")
MODE_CHOICES = ("exact", "difference")
MIN_TRIAL_SECONDS = 0.005


@dataclass
class BenchRecord:
    """One (problem, size) measurement.

    Wall times are the median over the trials, in seconds per call; ``kappa1``
    uses the largest trial of ``f`` as its denominator. Fields for a Hessian
    method that was not run, and all wall-clock fields in op-count-only runs,
    are ``None``.
    """

    problem: str
    n: int
    rho_max: int
    p_jac: int
    p_hess_dir: int
    p_hess_sub: int
    t_f: Optional[float]
    t_grad: Optional[float]
    t_hess_dir: Optional[float]
    t_hess_sub: Optional[float]
    ops_f: int
    ops_grad: int
    ops_hess_dir: Optional[int]
    ops_hess_sub: Optional[int]
    kappa1: Optional[float]
    kappa2_dir: Optional[float]
    kappa2_sub: Optional[float]
    ops_kappa1: float
    ops_kappa2_dir: Optional[float]
    ops_kappa2_sub: Optional[float]
    t_f_max: Optional[float]

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls)]

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, doc):
        return cls(**{name: doc.get(name) for name in cls.columns()})


class BenchFailure(RuntimeError):
    """A numerical failure while benchmarking one problem."""

    def __init__(self, problem, n, message):
        super().__init__(f"{problem} (n={n}): {message}")
        self.problem, self.n = problem, n


def _per_call_times(fn, trials):
    """Seconds per call for each of ``trials`` timed repetitions.

    One untimed warm-up call comes first; each trial then loops enough calls
    to last at least a few milliseconds on the monotonic clock.
    """
    timer = timeit.Timer(fn, timer=__import__("time").perf_counter)
    fn()
    loops = 1
    while timer.timeit(loops) < MIN_TRIAL_SECONDS:
        loops *= 2
    return [t / loops for t in timer.repeat(repeat=trials, number=loops)]


def _ratio(num, den):
    return None if num is None or den is None else float(num) / float(den)


def run_case(name, n, trials=5, mode="exact", method="both", seed=0, ops_only=False):
    """Benchmark one problem at the supported size nearest ``n``."""
    problem = get_problem(name)
    try:
        F, x0 = problem.instance(n)
        n = F.n
        state = prepare_hybrid(F, x0, seed=seed)
        rho = state.rho_max
        methods = ["direct", "substitution"] if method == "both" else [method]

        counts = {}
        c = OpCounter()
        eval_components(F, x0, c)
        counts["f"] = c.total
        c = OpCounter()
        gradient_compressed(F, x0, state, c)
        counts["grad"] = c.total
        for meth in methods:
            c = OpCounter()
            hessian(F, x0, state, meth, mode, counter=c)
            counts[meth] = c.total

        times = {}
        if not ops_only:
            tf = _per_call_times(lambda: eval_components(F, x0), trials)
            times["f"], times["f_max"] = statistics.median(tf), max(tf)
            times["grad"] = statistics.median(
                _per_call_times(lambda: gradient_compressed(F, x0, state), trials))
            for meth in methods:
                times[meth] = statistics.median(_per_call_times(
                    lambda: hessian(F, x0, state, meth, mode), trials))
    except (DomainError, FloatingPointError, np.linalg.LinAlgError) as exc:
        raise BenchFailure(name, n, str(exc)) from exc

    t_f, t_f_max = times.get("f"), times.get("f_max")
    rho2 = rho * rho
    record = BenchRecord(
        problem=name, n=n, rho_max=rho, p_jac=state.p,
        p_hess_dir=state.p_hessian("direct"), p_hess_sub=state.p_hessian("substitution"),
        t_f=t_f, t_grad=times.get("grad"),
        t_hess_dir=times.get("direct"), t_hess_sub=times.get("substitution"),
        ops_f=counts["f"], ops_grad=counts["grad"],
        ops_hess_dir=counts.get("direct"), ops_hess_sub=counts.get("substitution"),
        kappa1=_ratio(times.get("grad"), None if t_f_max is None else rho * t_f_max),
        kappa2_dir=_ratio(times.get("direct"), None if t_f is None else rho2 * t_f),
        kappa2_sub=_ratio(times.get("substitution"), None if t_f is None else rho2 * t_f),
        ops_kappa1=counts["grad"] / (rho * counts["f"]),
        ops_kappa2_dir=_ratio(counts.get("direct"), rho2 * counts["f"]),
        ops_kappa2_sub=_ratio(counts.get("substitution"), rho2 * counts["f"]),
        t_f_max=t_f_max,
    )
    bad = [k for k, v in record.to_dict().items()
           if isinstance(v, float) and not np.isfinite(v)]
    if bad:
        raise BenchFailure(name, n, f"non-finite {', '.join(bad)}")
    return record


def _run_group(args):
    """Worker entry: the sizes of one problem, one after another."""
    name, sizes, kwargs = args
    out = []
    for n in sizes:
        try:
            out.append(run_case(name, n, **kwargs))
        except BenchFailure as exc:
            out.append(exc)
    return out


def run_bench(problems=None, sizes=DEFAULT_SIZES, trials=5, mode="exact",
              method="both", seed=0, ops_only=False, serial=True, workers=None):
    """Benchmark every requested problem at every size.

    Returns ``(records, failures)``. Unless ``serial`` is set, problems are
    spread over worker processes; the trials of one problem always run on
    a single worker, one after another.
    """
    if trials < MIN_TRIALS:
        raise ValueError(f"at least {MIN_TRIALS} trials are required, got {trials}")
    if mode not in MODE_CHOICES:
        raise ValueError(f"unknown mode {mode!r}")
    if method not in METHOD_CHOICES:
        raise ValueError(f"unknown method {method!r}")
    names = list(problems) if problems else problem_names()
    for name in names:
        get_problem(name)  # KeyError for unknown names
    sizes = [int(n) for n in sizes]
    if not sizes or min(sizes) < 1:
        raise ValueError("sizes must be positive")

    kwargs = dict(trials=trials, mode=mode, method=method, seed=seed, ops_only=ops_only)
    jobs = [(name, sizes, kwargs) for name in names]
    workers = workers or os.cpu_count() or 1
    if serial or workers < 2 or len(jobs) < 2:
        results = [_run_group(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_run_group, jobs))

    records, failures = [], []
    for group in results:
        for item in group:
            (failures if isinstance(item, BenchFailure) else records).append(item)
    for exc in failures:
        log.error("numerical failure: %s", exc)
    return records, failures


def environment():
    """Platform details reported next to the measurements."""
    return {
        "platform": platform.platform(),
        "machine": platform.machine(),
        "processor": platform.processor(),
        "cpu_count": os.cpu_count(),
        "python": platform.python_version(),
        "numpy": np.__version__,
    }
