"""Exhaustive cross-check of the closed forms against the brute-force oracle."""
from __future__ import annotations

import multiprocessing
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import oracle
from .classify import (
    depth_case,
    has_linear_resolution,
    is_cohen_macaulay,
    krull_dimension_case,
    normalize,
    proj_dimension_case,
)
from .monomial import AmbientContext, Monomial
from .notation import format_monomial
from .quotients import (
    OrderedGenerators,
    construct_order,
    g_formula,
    prec_order,
)
from .resolution import (
    UnsupportedConstruction,
    betti_from_sets,
    build_resolution,
    hilbert_numerator,
    verify_resolution,
)
from .segment import enumerate_lexsegment, is_completely_lexsegment, monomials_of_degree

IE_LIMIT = 14  # inclusion-exclusion K-polynomial cross-check up to this many generators
SHADOW_DEPTH = 4


@dataclass
class InstanceResult:
    n: int
    d: int
    u: Monomial
    v: Monomial
    size: int
    labels: dict[str, str] = field(default_factory=dict)
    checks: Counter = field(default_factory=Counter)
    mismatches: list[tuple[str, str]] = field(default_factory=list)

    @property
    def flags(self) -> str:
        return (
            f"--n {self.n} --d {self.d} "
            f"--u {format_monomial(self.u)} --v {format_monomial(self.v)}"
        )

    def expect(self, check: str, ok: bool, detail: str = "", count: int = 1) -> None:
        self.checks[check] += count
        if not ok:
            self.mismatches.append((check, detail))


def check_instance(n: int, d: int, u: Monomial, v: Monomial) -> InstanceResult:
    ctx = AmbientContext(n, d)
    gens = enumerate_lexsegment(ctx, u, v)
    r = InstanceResult(n, d, u, v, len(gens))

    table = oracle.koszul_betti(gens, n)
    inv = oracle.oracle_depth_dim(gens, n, betti=table)
    kpoly = oracle.k_polynomial_by_counting(gens, n)

    # (i) linear resolution against Betti concentration
    lr = has_linear_resolution(ctx, u, v)
    r.labels["linear_resolution"] = lr.case
    r.expect("linear_resolution", lr.value == table.is_concentrated(d), f"formula says {lr.value}")

    # (ii) constructed order has linear quotients iff linear resolution
    order, kind, _ = construct_order(ctx, u, v)
    r.labels["order"] = kind
    og = OrderedGenerators(order)
    lq = og.linear_quotients()
    r.expect("linear_quotients", lq.ok == lr.value, f"{kind} order: linear quotients {lq.ok}")
    if lq:
        r.expect("betti_from_sets", betti_from_sets(og) == table.entries)
        pairs = [(w, s) for j, w in enumerate(og.gens) for s in og.sets[j]]
        r.expect(
            "oracle_g",
            all(og.g(w.times_var(s)) == oracle.oracle_g(og.gens, w.times_var(s)) for w, s in pairs),
            count=len(pairs),
        )

    # (iii) invariants
    for name, (value, label), truth in (
        ("depth", depth_case(ctx, u, v), inv.depth),
        ("dim", krull_dimension_case(ctx, u, v), inv.dim),
        ("projdim", proj_dimension_case(ctx, u, v), inv.projdim),
    ):
        r.labels[name] = label
        r.expect(name, value == truth, f"formula {value}, oracle {truth}")
    cm = is_cohen_macaulay(ctx, u, v)
    r.labels["cohen_macaulay"] = cm.case
    r.expect("cohen_macaulay", cm.value == inv.cohen_macaulay, f"formula {cm.value}")

    # (iv) 1 is never in set(w) for a ≺ order with linear quotients
    prec = OrderedGenerators(prec_order(gens))
    if prec.linear_quotients():
        r.expect("one_not_in_set", all(0 not in s for s in prec.sets))

    # (v) closed form of g against the divisor scan, on the normal form
    nf = normalize(ctx, u, v)
    completely = is_completely_lexsegment(nf.ctx, nf.u, nf.v)
    if not nf.principal and completely and lr:
        red = OrderedGenerators(prec_order(enumerate_lexsegment(nf.ctx, nf.u, nf.v)))
        bad = [
            (w, s)
            for j, w in enumerate(red.gens)
            for s in red.sets[j]
            if g_formula(nf.ctx, nf.u, nf.v, w, s, red.sets[j]) != red.g(w.times_var(s))
        ]
        count = sum(len(s) for s in red.sets)
        r.expect("g_formula", not bad, f"first bad pair {bad[:1]}", count=count)

    # (vi) explicit resolutions
    try:
        res = build_resolution(ctx, u, v)
    except UnsupportedConstruction:
        res = None
    if res is not None:
        rep = verify_resolution(res, gens)
        r.expect("resolution_verified", rep.ok, str(rep.failures[:1]))
        r.expect("resolution_ranks", res.graded_ranks() == table.entries)
        r.expect("hilbert_numerator", hilbert_numerator(res) == kpoly)

    # oracle self-consistency
    r.expect("euler_characteristic", table.alternating_sum() == kpoly)
    if len(gens) <= IE_LIMIT:
        r.expect("k_polynomial_routes", oracle.k_polynomial(gens, n) == kpoly)

    # empirical one-shadow sufficiency of the completeness check
    one = is_completely_lexsegment(ctx, u, v, 1)
    deep = is_completely_lexsegment(ctx, u, v, SHADOW_DEPTH)
    r.expect("one_shadow_sufficiency", bool(one) == bool(deep))
    r.labels["completely"] = str(bool(deep)).lower()
    return r


def instances(
    max_n: int, max_d: int, min_n: int = 1, min_d: int = 2
) -> Iterator[tuple[int, int, Monomial, Monomial]]:
    for n in range(min_n, max_n + 1):
        for d in range(min_d, max_d + 1):
            ms = list(monomials_of_degree(n, d))
            for i, u in enumerate(ms):
                for v in ms[i:]:
                    yield n, d, u, v


def _run(args: tuple[int, int, Monomial, Monomial]) -> InstanceResult:
    return check_instance(*args)


@dataclass
class SweepSummary:
    per_shape: Counter = field(default_factory=Counter)
    checks: Counter = field(default_factory=Counter)
    labels: dict[str, Counter] = field(default_factory=dict)
    mismatches: Counter = field(default_factory=Counter)
    failures: list[InstanceResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def total(self) -> int:
        return sum(self.per_shape.values())

    def add(self, r: InstanceResult) -> None:
        self.per_shape[(r.n, r.d)] += 1
        self.checks.update(r.checks)
        for k, label in r.labels.items():
            self.labels.setdefault(k, Counter())[label] += 1
        if r.mismatches:
            self.failures.append(r)
            for check, _ in r.mismatches:
                self.mismatches[check] += 1

    def minimal_failure(self) -> Optional[InstanceResult]:
        if not self.failures:
            return None
        return min(self.failures, key=lambda r: (r.n, r.d, r.size, tuple(-e for e in r.u), r.v))

    def to_dict(self) -> dict:
        out = {
            "instances": self.total,
            "per_shape": [[n, d, c] for (n, d), c in sorted(self.per_shape.items())],
            "checks": dict(sorted(self.checks.items())),
            "labels": {k: dict(sorted(c.items())) for k, c in sorted(self.labels.items())},
            "mismatches": dict(sorted(self.mismatches.items())),
            "ok": self.ok,
        }
        worst = self.minimal_failure()
        if worst is not None:
            out["minimal_failure"] = {
                "flags": worst.flags,
                "checks": sorted({c for c, _ in worst.mismatches}),
                "details": [f"{c}: {msg}" for c, msg in worst.mismatches],
            }
        return out


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("LEXSEG_WORKERS", "1")))
    except ValueError:
        return 1


def run_sweep(
    max_n: int,
    max_d: int,
    min_n: int = 1,
    min_d: int = 2,
    workers: Optional[int] = None,
) -> SweepSummary:
    """Check every lexsegment in range; results merge in enumeration order."""
    workers = default_workers() if workers is None else workers
    summary = SweepSummary()
    jobs = instances(max_n, max_d, min_n, min_d)
    if workers <= 1:
        for job in jobs:
            summary.add(_run(job))
        return summary
    with multiprocessing.Pool(workers) as pool:
        for r in pool.imap(_run, jobs, chunksize=16):
            summary.add(r)
    return summary
