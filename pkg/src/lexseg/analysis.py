"""One-stop classification record for a lexsegment ideal."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from . import oracle
from .classify import (
    depth_case,
    has_linear_resolution,
    is_cohen_macaulay,
    krull_dimension_case,
    proj_dimension_case,
)
from .monomial import AmbientContext, Monomial
from .notation import format_indices, format_monomial, resolution_to_dict
from .quotients import OrderedGenerators, construct_order, is_regular_decomposition
from .resolution import UnsupportedConstruction, betti_from_sets, build_resolution
from .segment import enumerate_lexsegment, is_completely_lexsegment


@dataclass
class AnalysisReport:
    ctx: AmbientContext
    u: Monomial
    v: Monomial
    completely: bool
    completely_checked_through: int
    linear_resolution: bool
    cases: dict[str, str]
    order: list[Monomial]
    order_kind: str
    order_guaranteed: bool
    linear_quotients: bool
    linear_quotients_failure: Optional[tuple[int, tuple[Monomial, ...]]]
    sets: Optional[list[frozenset[int]]]
    regular_decomposition: Optional[bool]
    regularity_witness: Optional[tuple]
    depth: int
    dim: int
    projdim: int
    cohen_macaulay: bool
    betti: dict[tuple[int, int], int]
    betti_source: str
    oracle_agreement: Optional[dict[str, bool]] = None
    resolution: Optional[Any] = None
    resolution_error: Optional[str] = None
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def oracle_ok(self) -> bool:
        return self.oracle_agreement is None or all(self.oracle_agreement.values())

    def to_dict(self) -> dict:
        fm = format_monomial
        lq: dict[str, Any] = {"holds": self.linear_quotients}
        if self.linear_quotients_failure is not None:
            pos, colon = self.linear_quotients_failure
            lq.update(position=pos + 1, at=fm(self.order[pos]), colon=[fm(m) for m in colon])
        reg: Optional[dict] = None
        if self.regular_decomposition is not None:
            reg = {"holds": self.regular_decomposition}
            if self.regularity_witness is not None:
                w, s, set_g, set_w = self.regularity_witness
                reg["witness"] = {
                    "u": fm(w),
                    "s": s + 1,
                    "g": fm(self._g_of(w, s)),
                    "set_g": format_indices(set_g),
                    "set_u": format_indices(set_w),
                }
        out = {
            "n": self.ctx.n,
            "d": self.ctx.d,
            "u": fm(self.u),
            "v": fm(self.v),
            "completely": self.completely,
            "completely_checked_through": self.completely_checked_through,
            "linear_resolution": self.linear_resolution,
            "case": dict(self.cases),
            "order": [fm(w) for w in self.order],
            "order_kind": self.order_kind,
            "order_guaranteed": self.order_guaranteed,
            "linear_quotients": lq,
            "sets": None if self.sets is None else [format_indices(s) for s in self.sets],
            "regular_decomposition": reg,
            "depth": self.depth,
            "dim": self.dim,
            "projdim": self.projdim,
            "cohen_macaulay": self.cohen_macaulay,
            "betti": {
                "source": self.betti_source,
                "entries": [[i, j, c] for (i, j), c in sorted(self.betti.items())],
            },
        }
        if self.oracle_agreement is not None:
            out["oracle_agreement"] = dict(self.oracle_agreement)
        if self.resolution is not None:
            out["resolution"] = resolution_to_dict(self.resolution)
        elif self.resolution_error is not None:
            out["resolution"] = {"error": self.resolution_error}
        return out

    def _g_of(self, w: Monomial, s: int) -> Monomial:
        return OrderedGenerators(self.order).g(w.times_var(s))


def analyze(
    ctx: AmbientContext,
    u: Monomial,
    v: Monomial,
    *,
    check_oracle: bool = False,
    with_resolution: bool = False,
    max_extra_degrees: int = 2,
    construction: str = "auto",
) -> AnalysisReport:
    gens = enumerate_lexsegment(ctx, u, v)
    comp = is_completely_lexsegment(ctx, u, v, max_extra_degrees)
    lr = has_linear_resolution(ctx, u, v, max_extra_degrees)
    order, kind, guaranteed = construct_order(ctx, u, v, max_extra_degrees, construction)
    og = OrderedGenerators(order)
    lq = og.linear_quotients()
    failure = None if lq else (lq.failure_position, lq.failure_colon)
    reg = is_regular_decomposition(og) if lq else None
    dep, dep_case = depth_case(ctx, u, v)
    dim, dim_case = krull_dimension_case(ctx, u, v)
    pd, pd_case = proj_dimension_case(ctx, u, v)
    cm = is_cohen_macaulay(ctx, u, v)
    if lq:
        betti, source = betti_from_sets(og), "linear-quotients"
    else:
        betti, source = oracle.koszul_betti(gens, ctx.n).entries, "oracle"
    report = AnalysisReport(
        ctx=ctx,
        u=u,
        v=v,
        completely=comp.completely,
        completely_checked_through=comp.checked_through,
        linear_resolution=lr.value,
        cases={
            "linear_resolution": lr.case,
            "dim": dim_case,
            "depth": dep_case,
            "projdim": pd_case,
            "cohen_macaulay": cm.case,
        },
        order=order,
        order_kind=kind,
        order_guaranteed=guaranteed,
        linear_quotients=lq.ok,
        linear_quotients_failure=failure,
        sets=og.sets if lq else None,
        regular_decomposition=None if reg is None else reg.ok,
        regularity_witness=None if reg is None else reg.witness,
        depth=dep,
        dim=dim,
        projdim=pd,
        cohen_macaulay=cm.value,
        betti=dict(betti),
        betti_source=source,
    )
    if with_resolution:
        try:
            report.resolution = build_resolution(ctx, u, v, max_extra_degrees)
        except UnsupportedConstruction as exc:
            report.resolution_error = str(exc)
    if check_oracle:
        report.oracle_agreement = oracle_agreement(report, gens)
    return report


def oracle_agreement(report: AnalysisReport, gens: list[Monomial]) -> dict[str, bool]:
    n, d = report.ctx.n, report.ctx.d
    table = oracle.koszul_betti(gens, n)
    inv = oracle.oracle_depth_dim(gens, n, betti=table)
    return {
        "linear_resolution": report.linear_resolution == table.is_concentrated(d),
        "betti": report.betti == table.entries,
        "depth": report.depth == inv.depth,
        "dim": report.dim == inv.dim,
        "projdim": report.projdim == inv.projdim,
        "cohen_macaulay": report.cohen_macaulay == inv.cohen_macaulay,
    }
