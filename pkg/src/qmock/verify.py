"""Identity verification: recursion left-hand sides, per-identity reports,
and the suite runner.

Every check is an exact coefficient comparison; a report is pass only when
all compared coefficients agree.  Failures carry the first mismatching
q-order with both Laurent-polynomial values verbatim.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from .divisors import LEMMAS, THEOREMS, lemma_check, rhs_theorem
from .mockforms import cached_series, coeff_c
from .poles import multiset_union_max
from .rational import ZERO, rat, rat_str
from .rings import QSeriesError, first_mismatch


class UnknownIdentityError(QSeriesError):
    pass


def _sum_over_m(n: int, bound, weight, argument, func, negate_odd=False):
    """sum over all integers m with bound(m) <= n of weight(m)*c(func; argument(m))."""
    total = ZERO
    m = 0
    while True:
        hit = False
        for mm in {m, -m}:
            if bound(mm) <= n:
                hit = True
                k = argument(mm)
                c = coeff_c(func, k)
                if negate_odd and c and int(rat(k).numerator) % 2 == 1:
                    c = -c
                total += weight(mm) * c
        if not hit and m > 0:
            break
        m += 1
    return total


def lhs_recursion(name: str, n: int):
    """Left-hand side of the named recursion: a finite weighted sum of
    mock theta coefficients, exactly as displayed."""
    if n < 1:
        raise QSeriesError("recursion index must be >= 1")
    if name == "t1id":
        return _sum_over_m(
            2 * n,
            lambda m: 3 * m * m + m,
            lambda m: rat(m) + rat(1, 6),
            lambda m: rat(2 * n - 3 * m * m - m, 2),
            "f",
        )
    if name == "t9":
        return _sum_over_m(
            n,
            lambda m: 3 * m * m + 2 * m,
            lambda m: rat(m) + rat(1, 3),
            lambda m: rat(n - 3 * m * m - 2 * m, 2),
            "f",
        )
    if name == "t919":
        # quantifier fixed to match the summand's support (see ledger):
        # 3m^2 + m <= n, not the printed 3m^2 + 2m <= n
        return _sum_over_m(
            n,
            lambda m: 3 * m * m + m,
            lambda m: rat(m) + rat(1, 6),
            lambda m: n - 3 * m * m - m,
            "omega",
        )
    if name in ("t9201", "t9202", "t920c", "t920d"):
        func = {
            "t9201": "omega_even",
            "t9202": "omega_odd",
            "t920c": "omega",
            "t920d": "omega",
        }[name]
        return _sum_over_m(
            n,
            lambda m: 3 * m * m + 2 * m + 1,
            lambda m: rat(m) + rat(1, 3),
            lambda m: n - 3 * m * m - 2 * m - 1,
            func,
            negate_odd=(name == "t920d"),
        )
    if name == "corB":
        total = ZERO
        m = 0
        while 2 * m * m + 2 * m + 1 <= n:
            total += (-1) ** m * (2 * m + 1) * coeff_c("B", n - 2 * m * m - 2 * m - 1)
            m += 1
        return total
    raise QSeriesError(f"unknown recursion: {name!r}")


# -- reports -----------------------------------------------------------------


@dataclass
class VerificationReport:
    name: str
    params: Optional[dict]
    order: int
    status: str  # pass | fail | error
    first_mismatch: Optional[tuple] = None  # (n, lhs_str, rhs_str)
    message: Optional[str] = None
    elapsed_ms: Optional[float] = None
    window: Optional[tuple] = None

    def to_json_dict(self, timings: bool = False) -> dict:
        fm = None
        if self.first_mismatch is not None:
            n, lhs, rhs = self.first_mismatch
            fm = {"n": n, "lhs": str(lhs), "rhs": str(rhs)}
        out = {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "firstMismatch": fm,
            "elapsedMs": round(self.elapsed_ms, 3) if timings and self.elapsed_ms is not None else None,
        }
        if self.message:
            out["message"] = self.message
        return out


def registry_list():
    from . import registry

    return registry.all_entries()


def get_entry(name: str):
    from . import registry

    entry = registry.lookup(name)
    if entry is None:
        raise UnknownIdentityError(f"unknown identity: {name!r}")
    return entry


def verify_identity(name: str, params: Optional[dict] = None, order: int = 100) -> VerificationReport:
    """Build both sides of a registered identity, clear the q^0 poles, and
    compare coefficients exactly on the common window."""
    entry = get_entry(name)
    params = entry.normalize_params(params)
    t0 = time.perf_counter()
    try:
        lhs = entry.lhs(order, **params)
        rhs = entry.rhs(order, **params)
        clearing = multiset_union_max(lhs.poles, rhs.poles)
        a = lhs.cleared(clearing)
        b = rhs.cleared(clearing)
        lo = max(min(a.val, b.val), -4 * order)
        hi = min(a.order, b.order)
        if hi < order - entry.margin:
            raise QSeriesError(
                f"window shortfall: reached {hi}, wanted {order - entry.margin}"
            )
        mismatch = first_mismatch(a, b, lo=lo, hi=hi)
    except QSeriesError as exc:
        return VerificationReport(
            name, params, order, "error", message=str(exc),
            elapsed_ms=(time.perf_counter() - t0) * 1000.0,
        )
    elapsed = (time.perf_counter() - t0) * 1000.0
    if mismatch is None:
        return VerificationReport(
            name, params, order, "pass", elapsed_ms=elapsed, window=(lo, hi)
        )
    return VerificationReport(
        name, params, order, "fail", first_mismatch=mismatch, elapsed_ms=elapsed,
        window=(lo, hi),
    )


def verify_recursion(name: str, n_max: int) -> VerificationReport:
    t0 = time.perf_counter()
    cached_series("f", 2 * max(64, n_max) + 2)
    cached_series("omega", max(64, n_max) + 1)
    cached_series("B", max(64, n_max) + 1)
    for n in range(1, n_max + 1):
        lhs = lhs_recursion(name, n)
        rhs = rhs_theorem(name, n)
        if lhs != rhs:
            return VerificationReport(
                f"recursion:{name}", {"upto": n_max}, n_max, "fail",
                first_mismatch=(n, rat_str(lhs), rat_str(rhs)),
                elapsed_ms=(time.perf_counter() - t0) * 1000.0,
            )
    return VerificationReport(
        f"recursion:{name}", {"upto": n_max}, n_max, "pass",
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def verify_lemma(name: str, n_max: int) -> VerificationReport:
    t0 = time.perf_counter()
    for n in range(1, n_max + 1):
        if not lemma_check(name, n):
            return VerificationReport(
                f"lemma:{name}", {"upto": n_max}, n_max, "fail",
                first_mismatch=(n, "lhs", "rhs"),
                elapsed_ms=(time.perf_counter() - t0) * 1000.0,
            )
    return VerificationReport(
        f"lemma:{name}", {"upto": n_max}, n_max, "pass",
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def suite_tasks(order: int, n_max: int):
    """Deterministic task list: every registry instance, recursion and lemma."""
    tasks = []
    for entry in registry_list():
        eff = entry.order_for(order)
        for params in entry.instances():
            tasks.append(("identity", entry.name, params, eff))
    for name in THEOREMS:
        tasks.append(("recursion", name, None, n_max))
    for name in LEMMAS:
        tasks.append(("lemma", name, None, min(n_max, 200)))
    tasks.sort(key=lambda t: (t[0], t[1], json.dumps(t[2], sort_keys=True), t[3]))
    return tasks


def run_task(task) -> VerificationReport:
    kind, name, params, arg = task
    if kind == "identity":
        return verify_identity(name, params, arg)
    if kind == "recursion":
        return verify_recursion(name, arg)
    return verify_lemma(name, arg)


def run_suite(order: int, n_max: int, workers: int = 1):
    """Run everything; the report content is independent of the worker count."""
    tasks = suite_tasks(order, n_max)
    if workers <= 1:
        reports = [run_task(t) for t in tasks]
    else:
        import multiprocessing as mp

        ctx = mp.get_context("fork")
        with ctx.Pool(workers) as pool:
            reports = pool.map(run_task, tasks, chunksize=1)
    return SuiteReport(order=order, n_max=n_max, reports=reports)


@dataclass
class SuiteReport:
    order: int
    n_max: int
    reports: list = field(default_factory=list)

    @property
    def failed(self):
        return [r for r in self.reports if r.status == "fail"]

    @property
    def errored(self):
        return [r for r in self.reports if r.status == "error"]

    def to_json(self, timings: bool = False) -> str:
        payload = {
            "order": self.order,
            "nMax": self.n_max,
            "results": [r.to_json_dict(timings=timings) for r in self.reports],
        }
        return json.dumps(payload, indent=2)
