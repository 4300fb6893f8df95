"""Lexsegments L(u, v), shadows and the completely-lexsegment test."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional

from .monomial import AmbientContext, Monomial, lex_cmp


class SegmentError(ValueError):
    """Invalid lexsegment ends or monomial sets."""


def monomials_of_degree(n: int, d: int) -> Iterator[Monomial]:
    """All degree-``d`` monomials in ``n`` variables, lex-descending."""
    if d < 0:
        return
    m: Optional[Monomial] = Monomial.var(0, n, d)
    while m is not None:
        yield m
        m = lex_predecessor(m)


def lex_predecessor(v: Monomial) -> Optional[Monomial]:
    """The lex-greatest monomial of the same degree strictly below ``v``.

    Moves one unit from the rightmost non-final occupied slot ``i`` into slot
    ``i + 1`` and sweeps everything to its right there as well.  Returns
    ``None`` for ``xn^d``.
    """
    n = len(v)
    for i in range(n - 2, -1, -1):
        if v[i]:
            exps = list(v[: i + 1]) + [0] * (n - i - 1)
            exps[i] -= 1
            exps[i + 1] = sum(v[i + 1 :]) + 1
            return Monomial._raw(tuple(exps))
    return None


def _validate_ends(ctx: AmbientContext, u: Monomial, v: Monomial) -> None:
    try:
        ctx.check(u, v)
    except ValueError as exc:
        raise SegmentError(str(exc)) from exc
    if lex_cmp(u, v) < 0:
        raise SegmentError(f"u={u!r} is lex-smaller than v={v!r}")


def enumerate_lexsegment(ctx: AmbientContext, u: Monomial, v: Monomial) -> list[Monomial]:
    """The closed interval ``u >=lex w >=lex v`` of degree-d monomials, lex-descending."""
    _validate_ends(ctx, u, v)
    out = [u]
    w = u
    while w != v:
        w = lex_predecessor(w)
        assert w is not None
        out.append(w)
    return out


@dataclass(frozen=True)
class Lexsegment:
    ctx: AmbientContext
    u: Monomial
    v: Monomial

    def __post_init__(self) -> None:
        _validate_ends(self.ctx, self.u, self.v)

    @cached_property
    def gens(self) -> tuple[Monomial, ...]:
        return tuple(enumerate_lexsegment(self.ctx, self.u, self.v))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.gens)


def initial_segment(ctx: AmbientContext, v: Monomial) -> Lexsegment:
    return Lexsegment(ctx, Monomial.var(0, ctx.n, ctx.d), v)


def final_segment(ctx: AmbientContext, u: Monomial) -> Lexsegment:
    return Lexsegment(ctx, u, Monomial.var(ctx.n - 1, ctx.n, ctx.d))


def _common_degree(T: Iterable[Monomial]) -> Optional[int]:
    degrees = {sum(m) for m in T}
    if len(degrees) > 1:
        raise SegmentError(f"mixed degrees {sorted(degrees)}")
    return degrees.pop() if degrees else None


def shadow(T: Iterable[Monomial], n: int) -> set[Monomial]:
    T = list(T)
    _common_degree(T)
    return {m.times_var(i) for m in T for i in range(n)}


def is_lexsegment_set(T: Iterable[Monomial]) -> bool:
    """True iff ``T`` is exactly ``L(max_lex T, min_lex T)``."""
    T = set(T)
    if not T:
        raise SegmentError("the empty set is not a lexsegment")
    _common_degree(T)
    top, bottom = max(T), min(T)  # tuple order is lex order
    count, w = 1, top
    while w != bottom:
        w = lex_predecessor(w)
        if w not in T:
            return False
        count += 1
    return count == len(T)


@dataclass(frozen=True)
class Completeness:
    """Outcome of the bounded iterated-shadow check."""

    completely: bool
    checked_through: int
    failing_degree: Optional[int] = None

    def __bool__(self) -> bool:
        return self.completely


@lru_cache(maxsize=4096)
def is_completely_lexsegment(
    ctx: AmbientContext, u: Monomial, v: Monomial, max_extra_degrees: int = 2
) -> Completeness:
    """Check that every shadow of L(u, v) up to degree d + max_extra_degrees is a lexsegment."""
    if max_extra_degrees < 1:
        raise ValueError("max_extra_degrees must be at least 1")
    T: set[Monomial] = set(enumerate_lexsegment(ctx, u, v))
    top = ctx.d + max_extra_degrees
    for degree in range(ctx.d + 1, top + 1):
        T = shadow(T, ctx.n)
        if not is_lexsegment_set(T):
            return Completeness(False, degree, degree)
    return Completeness(True, top)
