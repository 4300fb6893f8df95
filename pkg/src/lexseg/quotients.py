"""Linear quotients: generator orders, colon ideals, set(w), decomposition function."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .classify import NormalForm, has_linear_resolution, non_complete_linear_ends, normalize
from .monomial import (
    AmbientContext,
    Monomial,
    barlex_desc_key,
    lex_cmp,
    max_var,
    prec_key,
)
from .segment import enumerate_lexsegment, is_completely_lexsegment


class LinearQuotientsError(RuntimeError):
    """set(w) or g was requested past a position where linear quotients fail."""


def prec_order(gens: Sequence[Monomial]) -> list[Monomial]:
    """Generators sorted ≺-ascending."""
    return sorted(gens, key=prec_key)


CONSTRUCTIONS = ("auto", "prec", "j-then-k")


def j_then_k_order(gens: Sequence[Monomial]) -> list[Monomial]:
    """x1-free generators lex-descending, then the rest barlex-descending."""
    j_part = sorted((w for w in gens if not w[0]), reverse=True)
    k_part = sorted((w for w in gens if w[0]), key=barlex_desc_key)
    return j_part + k_part


def _construct(nf: NormalForm, max_extra_degrees: int, construction: str) -> tuple[list[Monomial], str]:
    if nf.principal:
        return [nf.u], "principal"
    gens = enumerate_lexsegment(nf.ctx, nf.u, nf.v)
    if construction == "auto":
        # the ends shape decides first: some such segments are completely
        # lexsegment and still want the J/K order
        if non_complete_linear_ends(nf.u, nf.v) is not None:
            construction = "j-then-k"
        elif is_completely_lexsegment(nf.ctx, nf.u, nf.v, max_extra_degrees):
            construction = "prec"
        else:
            construction = "j-then-k"
    if construction == "prec":
        return prec_order(gens), "prec"
    return j_then_k_order(gens), "j-then-k"


def construct_order(
    ctx: AmbientContext,
    u: Monomial,
    v: Monomial,
    max_extra_degrees: int = 2,
    construction: str = "auto",
) -> tuple[list[Monomial], str, bool]:
    """The order, which construction produced it, and whether it is guaranteed.

    The construction runs on the normal form and is lifted back; for ends
    with a1 > 0 this is the same as ordering the original generators.
    """
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {construction!r}")
    nf = normalize(ctx, u, v)
    order, kind = _construct(nf, max_extra_degrees, construction)
    if kind == "j-then-k":
        guaranteed = non_complete_linear_ends(nf.u, nf.v) is not None
    elif kind == "prec":
        guaranteed = bool(has_linear_resolution(ctx, u, v, max_extra_degrees)) and bool(
            is_completely_lexsegment(nf.ctx, nf.u, nf.v, max_extra_degrees)
        )
    else:
        guaranteed = True
    return [nf.lift(w) for w in order], kind, guaranteed


def quotient_order(
    ctx: AmbientContext,
    u: Monomial,
    v: Monomial,
    max_extra_degrees: int = 2,
    construction: str = "auto",
) -> list[Monomial]:
    return construct_order(ctx, u, v, max_extra_degrees, construction)[0]


def colon_generators(prefix: Sequence[Monomial], w: Monomial) -> list[Monomial]:
    """Minimal generators of (prefix) : w, lex-descending."""
    cands = sorted({p.quotient(p.gcd(w)) for p in prefix}, key=sum)
    minimal: list[Monomial] = []
    for c in cands:
        if not any(m.divides(c) for m in minimal):
            minimal.append(c)
    minimal.sort(reverse=True)
    return minimal


@dataclass(frozen=True)
class LinearQuotients:
    ok: bool
    failure_position: Optional[int] = None  # 0-based
    failure_colon: tuple[Monomial, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


class OrderedGenerators:
    """A generator sequence with its positional colon ideals.

    ``sets[j]`` is set(u_j) as 0-based variable indices, or ``None`` where
    the colon is not generated by variables.
    """

    def __init__(self, gens: Sequence[Monomial]):
        gens = list(gens)
        if len(set(gens)) != len(gens):
            raise ValueError("generator sequence has duplicates")
        self.gens = gens
        self.position = {g: j for j, g in enumerate(gens)}

    @cached_property
    def colon_gens(self) -> list[list[Monomial]]:
        return [colon_generators(self.gens[:j], w) for j, w in enumerate(self.gens)]

    @cached_property
    def sets(self) -> list[Optional[frozenset[int]]]:
        # The colon is generated by variables iff each u_i : u_j (i < j) is
        # divisible by a variable that itself occurs as some u_k : u_j.
        arr = np.array(self.gens, dtype=np.int64).reshape(len(self.gens), -1)
        out: list[Optional[frozenset[int]]] = [frozenset()]
        for j in range(1, len(arr)):
            q = np.maximum(arr[:j] - arr[j], 0)
            single = q.sum(axis=1) == 1
            found = (q[single] > 0).any(axis=0)
            ok = bool(((q > 0) & found).any(axis=1).all())
            out.append(frozenset(np.flatnonzero(found).tolist()) if ok else None)
        return out

    @property
    def n(self) -> int:
        return len(self.gens[0])

    def linear_quotients(self) -> LinearQuotients:
        for j, s in enumerate(self.sets):
            if s is None:
                return LinearQuotients(False, j, tuple(self.colon_gens[j]))
        return LinearQuotients(True)

    def set_of(self, j: int) -> frozenset[int]:
        lq = self.linear_quotients()
        if not lq and lq.failure_position <= j:
            raise LinearQuotientsError(
                f"linear quotients fail at position {lq.failure_position}, before {j}"
            )
        return self.sets[j]

    def g(self, m: Monomial) -> Monomial:
        return decomposition_g(self.gens, m)


def has_linear_quotients(order: Sequence[Monomial]) -> LinearQuotients:
    return OrderedGenerators(order).linear_quotients()


def set_of(order: Sequence[Monomial], j: int) -> frozenset[int]:
    return OrderedGenerators(order).set_of(j)


def decomposition_g(order: Sequence[Monomial], m: Monomial) -> Monomial:
    """The generator at the least position dividing ``m``.

    With equal-degree generators this is the least j with m in (u_1..u_j).
    """
    for g in order:
        if g.divides(m):
            return g
    raise ValueError(f"{m!r} is not in the ideal")


def g_formula(
    ctx: AmbientContext,
    u: Monomial,
    v: Monomial,
    w: Monomial,
    s: int,
    set_w: Optional[frozenset[int]] = None,
) -> Monomial:
    """Closed form of g(x_s w) for a ≺-ordered completely lexsegment ideal.

    ``s`` is a 0-based variable index and must lie in set(w); pass ``set_w``
    to skip recomputing it.
    """
    if not u[0]:
        raise ValueError("the closed form needs x1 | u")
    if set_w is None:
        order = OrderedGenerators(prec_order(enumerate_lexsegment(ctx, u, v)))
        set_w = order.set_of(order.position[w])
    if s not in set_w:
        raise ValueError(f"x{s + 1} is not in set({w!r})")
    xw = w.times_var(s)
    if lex_cmp(xw, v.times_var(0)) >= 0:
        return xw.over_var(0)
    return xw.over_var(max_var(w))


@dataclass(frozen=True)
class Regularity:
    ok: bool
    witness: Optional[tuple[Monomial, int, frozenset[int], frozenset[int]]] = None
    """(u, s, set(g(x_s u)), set(u)) for the first failing pair."""

    def __bool__(self) -> bool:
        return self.ok


def is_regular_decomposition(order: Sequence[Monomial] | OrderedGenerators) -> Regularity:
    og = order if isinstance(order, OrderedGenerators) else OrderedGenerators(order)
    lq = og.linear_quotients()
    if not lq:
        raise LinearQuotientsError(f"no linear quotients at position {lq.failure_position}")
    for j, w in enumerate(og.gens):
        set_w = og.sets[j]
        for s in sorted(set_w):
            target = og.g(w.times_var(s))
            set_g = og.sets[og.position[target]]
            if not set_g <= set_w:
                return Regularity(False, (w, s, set_g, set_w))
    return Regularity(True)
