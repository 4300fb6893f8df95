"""Closed-form invariants of lexsegment ideals, read off from the two ends.

Every function takes the original ``(ctx, u, v)`` and routes through
:func:`normalize`, which strips the common power of ``x1`` and drops leading
variables that no generator uses.  Both reductions preserve graded Betti
numbers (the ideals are isomorphic as graded modules up to a shift) and
therefore depth and projective dimension; dimension is read from the
original ends, only dropping unused leading variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .monomial import AmbientContext, Monomial, lex_cmp, max_var
from .segment import _validate_ends, is_completely_lexsegment, lex_predecessor


@dataclass(frozen=True)
class NormalForm:
    """Reduced ends with a1 > 0 = b1, plus the bookkeeping to undo the reduction.

    ``factor`` is the monomial (in the original ring) that was divided out and
    ``dropped_leading_vars`` the number of leading variables removed, so an
    original generator is ``factor * embed(reduced generator)``.
    """

    original: AmbientContext
    ctx: AmbientContext
    u: Monomial
    v: Monomial
    dropped_leading_vars: int
    factor: Monomial
    principal: bool
    max_ideal_power: bool

    @property
    def divided_power(self) -> int:
        return self.factor.degree

    def lift(self, m: Monomial) -> Monomial:
        return self.factor * Monomial._raw((0,) * self.dropped_leading_vars + tuple(m))

    def lower(self, m: Monomial) -> Monomial:
        q = m.quotient(self.factor)
        k = self.dropped_leading_vars
        if q is None or any(q[:k]):
            raise ValueError(f"{m!r} is not in the image of the reduction")
        return Monomial._raw(tuple(q[k:]))

    def lift_index(self, i: int) -> int:
        return i + self.dropped_leading_vars


def normalize(ctx: AmbientContext, u: Monomial, v: Monomial) -> NormalForm:
    _validate_ends(ctx, u, v)
    n, factor, k = ctx.n, Monomial.one(ctx.n), 0
    while u != v:
        c = v[0]
        if c:
            u = Monomial._raw((u[0] - c,) + tuple(u[1:]))
            v = Monomial._raw((0,) + tuple(v[1:]))
            factor = factor * Monomial.var(k, n, c)
        if u[0]:
            break
        # neither end involves the current first variable
        u, v = Monomial._raw(tuple(u[1:])), Monomial._raw(tuple(v[1:]))
        k += 1
    nn, dd = len(u), sum(u)
    reduced = AmbientContext(nn, dd)
    principal = u == v
    mpow = (not principal) and u == Monomial.var(0, nn, dd) and v == Monomial.var(nn - 1, nn, dd)
    return NormalForm(ctx, reduced, u, v, k, factor, principal, mpow)


def _first_support(m: Monomial, start: int = 0) -> int:
    for i in range(start, len(m)):
        if m[i]:
            return i
    raise ValueError(f"{m!r} has no support from index {start}")


def _adh_a_shape(ctx: AmbientContext, u: Monomial, v: Monomial) -> bool:
    # u = x1^a x2^(d-a), v = x1^a xn^(d-a), 0 < a < d
    a, n, d = u[0], ctx.n, ctx.d
    if not 0 < a < d or n < 2:
        return False
    return u == Monomial.var(0, n, a) * Monomial.var(1, n, d - a) and v == Monomial.var(
        0, n, a
    ) * Monomial.var(n - 1, n, d - a)


@dataclass(frozen=True)
class Verdict:
    """A boolean answer together with the clause that produced it."""

    value: bool
    case: str

    def __bool__(self) -> bool:
        return self.value


def non_complete_linear_ends(u: Monomial, v: Monomial) -> Optional[int]:
    """0-based ``l`` if u = x1*(monomial in x_{l+1}..x_n) and v = x_l*x_n^(d-1), else None."""
    n, d = len(u), sum(u)
    if u[0] != 1 or v[0] != 0 or d < 2:
        return None
    l = _first_support(v)
    if l == 0 or l == n - 1:
        return None
    if v != Monomial.var(l, n) * Monomial.var(n - 1, n, d - 1):
        return None
    if any(u[1 : l + 1]):
        return None
    return l


def has_linear_resolution(
    ctx: AmbientContext, u: Monomial, v: Monomial, max_extra_degrees: int = 2
) -> Verdict:
    _validate_ends(ctx, u, v)
    if u == v:
        return Verdict(True, "principal")
    if _adh_a_shape(ctx, u, v):
        return Verdict(True, "completely-a")
    nf = normalize(ctx, u, v)
    cu, cv = nf.u, nf.v
    if is_completely_lexsegment(nf.ctx, cu, cv, max_extra_degrees):
        a1 = cu[0]
        if a1 >= 2:
            return Verdict(True, "completely-b")
        # a1 = b1 + 1 with b1 = 0
        z = lex_predecessor(cv)
        if z is None:
            return Verdict(True, "completely-c")
        test = z.over_var(max_var(z)).times_var(0)
        if lex_cmp(test, cu) <= 0:
            return Verdict(True, "completely-c")
        return Verdict(False, "completely-none")
    if non_complete_linear_ends(cu, cv) is not None:
        return Verdict(True, "non-completely")
    return Verdict(False, "non-completely-none")


def krull_dimension_case(ctx: AmbientContext, u: Monomial, v: Monomial) -> tuple[int, str]:
    _validate_ends(ctx, u, v)
    if u == v:
        return ctx.n - 1, "principal"
    k = 0
    while not u[0]:
        u, v = Monomial._raw(tuple(u[1:])), Monomial._raw(tuple(v[1:]))
        k += 1
    n, d = len(u), sum(u)
    if u == Monomial.var(0, n, d) and v == Monomial.var(n - 1, n, d):
        return k, "max-ideal-power"
    q = _first_support(v) + 1
    if q < n:
        return k + n - q, "n-q"
    return k + 1, "q=n"


def krull_dimension(ctx: AmbientContext, u: Monomial, v: Monomial) -> int:
    return krull_dimension_case(ctx, u, v)[0]


def _depth_zero_test(u: Monomial, v: Monomial) -> bool:
    n = len(u)
    return lex_cmp(u.over_var(0).times_var(n - 1), v) >= 0


def depth_is_zero(ctx: AmbientContext, u: Monomial, v: Monomial) -> bool:
    """``xn*u/x1 >=lex v`` evaluated on the normal form."""
    nf = normalize(ctx, u, v)
    if nf.principal:
        return ctx.n == 1
    if nf.dropped_leading_vars:
        return False
    return _depth_zero_test(nf.u, nf.v)


def depth_case(ctx: AmbientContext, u: Monomial, v: Monomial) -> tuple[int, str]:
    nf = normalize(ctx, u, v)
    if nf.principal:
        return ctx.n - 1, "principal"
    k, n, d = nf.dropped_leading_vars, nf.ctx.n, nf.ctx.d
    cu, cv = nf.u, nf.v
    if nf.max_ideal_power:
        return k, "max-ideal-power"
    if d == 1:
        # (x1, ..., xq) in n variables
        return k + n - (_first_support(cv) + 1), "variables"
    if _depth_zero_test(cu, cv):
        return k, "depth-zero"
    # here u = x1 * x_l^(a_l) ... with l >= 2
    l = _first_support(cu, 1) + 1
    if cv == Monomial.var(1, n, d) and l >= 4:
        return k + l - 2, "a"
    if cv[1] == d - 1:
        j = _first_support(cv, 2) + 1
        if 3 <= j <= n - 2 and l >= j + 2:
            return k + l - j, "b"
    return k + 1, "c"


def depth(ctx: AmbientContext, u: Monomial, v: Monomial) -> int:
    return depth_case(ctx, u, v)[0]


_PROJDIM_LABELS = {"depth-zero": "full", "a": "n-l+2", "b": "n-l+j", "c": "n-1"}


def proj_dimension_case(ctx: AmbientContext, u: Monomial, v: Monomial) -> tuple[int, str]:
    value, label = depth_case(ctx, u, v)
    return ctx.n - value, _PROJDIM_LABELS.get(label, label)


def proj_dimension(ctx: AmbientContext, u: Monomial, v: Monomial) -> int:
    return proj_dimension_case(ctx, u, v)[0]


def is_cohen_macaulay(ctx: AmbientContext, u: Monomial, v: Monomial) -> Verdict:
    """depth == dim, labelled with the characterization clause where it applies."""
    dim, dim_label = krull_dimension_case(ctx, u, v)
    dep = depth(ctx, u, v)
    cm = dim == dep
    if dim_label in ("principal", "max-ideal-power"):
        return Verdict(cm, dim_label)
    n, d = ctx.n, ctx.d
    if n >= 3 and u[0] > v[0] and dim >= 1:
        case_a = u == Monomial.var(0, n) * Monomial.var(n - 1, n, d - 1) and v == Monomial.var(
            1, n, d
        )
        a = v[n - 2]
        case_b = (
            a > 0
            and v == Monomial.var(n - 2, n, a) * Monomial.var(n - 1, n, d - a)
            and not _depth_zero_test(u, v)
        )
        if case_a:
            return Verdict(cm, "clause-a")
        if case_b:
            return Verdict(cm, "clause-b")
        return Verdict(cm, "clause-none")
    return Verdict(cm, "depth-equals-dim" if cm else "depth-below-dim")
