import pytest
from hypothesis import given, settings

from lexseg import oracle
from lexseg.classify import (
    depth,
    depth_case,
    depth_is_zero,
    has_linear_resolution,
    is_cohen_macaulay,
    krull_dimension,
    krull_dimension_case,
    normalize,
    proj_dimension,
    proj_dimension_case,
)
from lexseg.monomial import AmbientContext, Monomial
from lexseg.segment import enumerate_lexsegment, monomials_of_degree

from conftest import ends, mono, segment_ends


def test_normalize_divides_common_power():
    nf = normalize(*ends(3, 3, "x1^2*x2", "x1*x3^2"))
    assert (nf.u, nf.v) == (mono("x1*x2", 3), mono("x3^2", 3))
    assert nf.ctx == AmbientContext(3, 2) and nf.dropped_leading_vars == 0
    assert nf.divided_power == 1


def test_normalize_drops_leading_variable():
    nf = normalize(*ends(3, 3, "x1^2*x2", "x1^2*x3"))
    assert (nf.u, nf.v) == (Monomial((1, 0)), Monomial((0, 1)))
    assert nf.ctx == AmbientContext(2, 1) and nf.dropped_leading_vars == 1
    assert nf.lift(nf.u) == mono("x1^2*x2", 3)


def test_normalize_flags():
    assert normalize(*ends(3, 3, "x1^3", "x3^3")).max_ideal_power
    assert normalize(*ends(3, 3, "x1*x2^2", "x1*x2^2")).principal


def test_lift_lower_roundtrip():
    ctx, u, v = ends(5, 4, "x1^2*x3^2", "x1^2*x4*x5")
    nf = normalize(ctx, u, v)
    for w in enumerate_lexsegment(nf.ctx, nf.u, nf.v):
        assert nf.lower(nf.lift(w)) == w
    with pytest.raises(ValueError):
        nf.lower(mono("x2^4", 5))


@pytest.mark.parametrize(
    "n,d,u,v,value,case",
    [
        (3, 3, "x1*x2*x3", "x2*x3^2", True, "completely-c"),
        (6, 4, "x1*x3^2*x5", "x2*x6^3", True, "non-completely"),
        (3, 2, "x1^2", "x2*x3", True, "completely-b"),
        (3, 3, "x1^2*x2", "x1^2*x3", True, "completely-a"),
        (3, 3, "x1*x2^2", "x1*x2^2", True, "principal"),
    ],
)
def test_linear_resolution_examples(n, d, u, v, value, case):
    verdict = has_linear_resolution(*ends(n, d, u, v))
    assert (verdict.value, verdict.case) == (value, case)


@pytest.mark.parametrize(
    "n,d,u,v,case",
    [
        (3, 2, "x1*x3", "x2^2", "completely-none"),
        (3, 3, "x1*x3^2", "x2^3", "non-completely-none"),
    ],
)
def test_linear_resolution_negative(n, d, u, v, case):
    verdict = has_linear_resolution(*ends(n, d, u, v))
    assert not verdict and verdict.case == case


def test_dimension_examples():
    assert krull_dimension(*ends(4, 3, "x1*x2*x3", "x4^3")) == 1
    assert krull_dimension_case(*ends(4, 3, "x1*x2*x3", "x4^3"))[1] == "q=n"
    assert krull_dimension(*ends(4, 3, "x1*x2^2", "x3^2*x4")) == 1
    assert krull_dimension(*ends(3, 3, "x1^3", "x3^3")) == 0
    assert krull_dimension(*ends(3, 3, "x1*x2*x3", "x1*x2*x3")) == 2


def test_depth_zero_examples():
    ctx = AmbientContext(4, 3)
    for u in monomials_of_degree(4, 3):
        if u[0]:
            assert depth_is_zero(ctx, u, mono("x4^3", 4))
    # initial segments: depth zero exactly when v <=lex x1^(d-1) xn
    border = mono("x1^2*x4", 4)
    for v in monomials_of_degree(4, 3):
        if v != mono("x1^3", 4):
            assert depth_is_zero(ctx, mono("x1^3", 4), v) == (v <= border)
    assert not depth_is_zero(*ends(5, 3, "x1*x4^2", "x2^2*x3"))


@pytest.mark.parametrize(
    "n,d,u,v,value,case",
    [
        (6, 4, "x1*x4*x5*x6", "x2^4", 2, "a"),
        (5, 3, "x1*x5^2", "x2^2*x3", 2, "b"),
        (4, 3, "x1*x3^2", "x2*x4^2", 1, "c"),
        (4, 3, "x1*x2^2", "x3^3", 0, "depth-zero"),
        (3, 3, "x1*x2*x3", "x1*x2*x3", 2, "principal"),
        (3, 3, "x1^3", "x3^3", 0, "max-ideal-power"),
    ],
)
def test_depth_examples(n, d, u, v, value, case):
    assert depth_case(*ends(n, d, u, v)) == (value, case)


def test_projdim_examples():
    assert proj_dimension_case(*ends(4, 3, "x1*x2^2", "x3^3")) == (4, "full")
    assert proj_dimension_case(*ends(6, 4, "x1*x4*x5*x6", "x2^4")) == (4, "n-l+2")
    assert proj_dimension(*ends(3, 3, "x1*x2*x3", "x1*x2*x3")) == 1


def test_cohen_macaulay_examples():
    a = ends(4, 2, "x1*x4", "x2^2")
    assert is_cohen_macaulay(*a).case == "clause-a" and is_cohen_macaulay(*a)
    assert depth(*a) == krull_dimension(*a) == 2
    b = ends(4, 3, "x1*x3*x4", "x3^2*x4")
    assert is_cohen_macaulay(*b).case == "clause-b" and is_cohen_macaulay(*b)
    assert depth(*b) == krull_dimension(*b) == 1
    c = ends(4, 3, "x1*x2^2", "x3^3")
    assert not is_cohen_macaulay(*c)
    assert (krull_dimension(*c), depth(*c)) == (1, 0)
    # v has the clause (b) shape but x4*u/x1 = x3^2*x4 >lex v, so depth is zero
    e = ends(4, 3, "x1*x3^2", "x3*x4^2")
    assert not is_cohen_macaulay(*e)
    assert (krull_dimension(*e), depth(*e)) == (1, 0)
    assert is_cohen_macaulay(*ends(3, 3, "x1^3", "x3^3"))
    assert is_cohen_macaulay(*ends(3, 3, "x1*x2*x3", "x1*x2*x3"))


@settings(max_examples=120, deadline=None)
@given(e=segment_ends(max_n=5, max_d=4))
def test_invariants_against_oracle(e):
    ctx, u, v = e
    gens = enumerate_lexsegment(ctx, u, v)
    table = oracle.koszul_betti(gens, ctx.n)
    inv = oracle.oracle_depth_dim(gens, ctx.n, betti=table)
    assert depth(ctx, u, v) == inv.depth
    assert krull_dimension(ctx, u, v) == inv.dim
    assert proj_dimension(ctx, u, v) == inv.projdim
    assert bool(is_cohen_macaulay(ctx, u, v)) == inv.cohen_macaulay
    assert bool(has_linear_resolution(ctx, u, v)) == table.is_concentrated(ctx.d)


@settings(max_examples=200, deadline=None)
@given(e=segment_ends(max_n=6, max_d=5))
def test_bookkeeping_identities(e):
    ctx, u, v = e
    dep, dim, pd = depth(ctx, u, v), krull_dimension(ctx, u, v), proj_dimension(ctx, u, v)
    assert 0 <= dep <= dim
    assert dep + pd == ctx.n
    assert (dep == 0) == (pd == ctx.n)
    assert bool(is_cohen_macaulay(ctx, u, v)) == (dep == dim)
