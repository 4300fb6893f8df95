"""Minimal graded free resolutions of S/I by iterated mapping cones.

Basis symbols are f(sigma; u) with sigma a subset of set(u).  F_0 = S has the
single unit symbol.  ``differentials[i]`` is the map F_{i+1} -> F_i, so the
map onto S is the zeroth one.
"""
from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Optional, Sequence

import numpy as np

from .classify import has_linear_resolution, normalize
from .monomial import AmbientContext, Monomial
from .oracle import rank_q
from .quotients import OrderedGenerators, g_formula, is_regular_decomposition, prec_order
from .segment import enumerate_lexsegment, is_completely_lexsegment


class UnsupportedConstruction(RuntimeError):
    """No explicit resolution is available for this input."""


@dataclass(frozen=True, order=True)
class BasisSymbol:
    """f(sigma; gen) at homological position ``len(sigma) + 1``; the unit of F_0 has position 0."""

    position: int
    gen: Monomial
    sigma: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.position and self.position != len(self.sigma) + 1:
            raise ValueError(f"position {self.position} does not match sigma {self.sigma}")
        if list(self.sigma) != sorted(set(self.sigma)):
            raise ValueError(f"sigma must be strictly increasing, got {self.sigma}")

    @classmethod
    def unit(cls, n: int) -> "BasisSymbol":
        return cls(0, Monomial.one(n))

    @property
    def multidegree(self) -> Monomial:
        m = self.gen
        for s in self.sigma:
            m = m.times_var(s)
        return m

    @property
    def degree(self) -> int:
        return self.gen.degree + len(self.sigma)


@dataclass
class DifferentialMatrix:
    """Sparse matrix with entries ``(row, col) -> (coefficient, monomial)``."""

    rows: list[BasisSymbol]
    cols: list[BasisSymbol]
    entries: dict[tuple[int, int], tuple[int, Monomial]] = field(default_factory=dict)

    def add(self, row: int, col: int, coef: int, mono: Monomial) -> None:
        old = self.entries.get((row, col))
        if old is not None:
            if old[1] != mono:
                raise ValueError("inhomogeneous entry")
            coef += old[0]
        if coef:
            self.entries[(row, col)] = (coef, mono)
        else:
            self.entries.pop((row, col), None)

    def entry(self, row: BasisSymbol, col: BasisSymbol) -> Optional[tuple[int, Monomial]]:
        return self.entries.get((self.rows.index(row), self.cols.index(col)))

    def column(self, col: int) -> dict[int, tuple[int, Monomial]]:
        return {r: e for (r, c), e in self.entries.items() if c == col}

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)


@dataclass
class GradedResolution:
    n: int
    order: list[Monomial]
    sets: list[frozenset[int]]
    bases: list[list[BasisSymbol]]
    differentials: list[DifferentialMatrix]
    provenance: str

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    @property
    def twists(self) -> tuple[tuple[int, ...], ...]:
        """Per position, the distinct twists -deg, highest first."""
        return tuple(tuple(sorted({-s.degree for s in b}, reverse=True)) for b in self.bases)

    @property
    def length(self) -> int:
        return len(self.bases) - 1

    def graded_ranks(self) -> dict[tuple[int, int], int]:
        out: Counter = Counter()
        for i, basis in enumerate(self.bases):
            for s in basis:
                out[(i, s.degree)] += 1
        return dict(out)


def betti_from_sets(order: Sequence[Monomial] | OrderedGenerators) -> dict[tuple[int, int], int]:
    """Graded ranks {(i, degree): count} read off the sets alone."""
    og = order if isinstance(order, OrderedGenerators) else OrderedGenerators(order)
    lq = og.linear_quotients()
    if not lq:
        raise UnsupportedConstruction(f"no linear quotients at position {lq.failure_position}")
    if len({w.degree for w in og.gens}) != 1:
        raise UnsupportedConstruction("generators must share one degree")
    d = og.gens[0].degree
    out: Counter = Counter({(0, 0): 1})
    for s in og.sets:
        k = len(s)
        for i in range(1, k + 2):
            out[(i, d + i - 1)] += comb(k, i - 1)
    return dict(out)


def _mapping_cone(
    og: OrderedGenerators,
    g: Callable[[int, int], int],
    provenance: str,
) -> GradedResolution:
    """The complex with the chain map of the linear-quotients mapping cone.

    ``g(j, s)`` is the position of g(x_s u_j).  Terms landing on f(tau; w)
    with tau not inside set(w) are dropped.
    """
    n = og.n
    sets = og.sets
    top = max(len(s) for s in sets) + 1
    bases: list[list[BasisSymbol]] = [[BasisSymbol.unit(n)]]
    for i in range(1, top + 1):
        bases.append(
            [
                BasisSymbol(i, w, sigma)
                for j, w in enumerate(og.gens)
                for sigma in combinations(sorted(sets[j]), i - 1)
            ]
        )
    index = [{(s.gen, s.sigma): k for k, s in enumerate(b)} for b in bases]

    maps = [DifferentialMatrix(bases[0], bases[1])]
    for c, sym in enumerate(bases[1]):
        maps[0].add(0, c, 1, sym.gen)
    for i in range(1, top):
        dm = DifferentialMatrix(bases[i], bases[i + 1])
        for c, sym in enumerate(bases[i + 1]):
            j = og.position[sym.gen]
            for alpha, s in enumerate(sym.sigma):
                sign = -1 if alpha % 2 else 1
                tau = sym.sigma[:alpha] + sym.sigma[alpha + 1 :]
                dm.add(index[i][(sym.gen, tau)], c, -sign, Monomial.var(s, n))
                target = og.gens[g(j, s)]
                r = index[i].get((target, tau))
                if r is not None:
                    dm.add(r, c, sign, sym.gen.times_var(s).quotient(target))
        maps.append(dm)
    return GradedResolution(n, list(og.gens), list(sets), bases, maps, provenance)


def resolution_from_generators(gens: Sequence[Monomial]) -> GradedResolution:
    """Mapping-cone resolution for an explicit generator order.

    Needs linear quotients, one generation degree, and a regular
    decomposition function; g is the positional divisor scan.
    """
    og = OrderedGenerators(gens)
    lq = og.linear_quotients()
    if not lq:
        raise UnsupportedConstruction(f"no linear quotients at position {lq.failure_position}")
    if len({w.degree for w in og.gens}) != 1:
        raise UnsupportedConstruction("generators must share one degree")
    reg = is_regular_decomposition(og)
    if not reg:
        w, s, _, _ = reg.witness
        raise UnsupportedConstruction(
            f"decomposition function is not regular at ({w!r}, x{s + 1})"
        )

    def g(j: int, s: int) -> int:
        return og.position[og.g(og.gens[j].times_var(s))]

    return _mapping_cone(og, g, "decomposition-function")


def build_resolution(
    ctx: AmbientContext, u: Monomial, v: Monomial, max_extra_degrees: int = 2
) -> GradedResolution:
    """Resolution of S/L(u, v) with g given by the closed formula.

    The formula is applied on the normal form and the symbols are lifted
    back, which leaves sets and coefficients unchanged up to the shift.
    """
    nf = normalize(ctx, u, v)
    if nf.principal:
        og = OrderedGenerators([u])
        return _mapping_cone(og, lambda j, s: j, "principal")
    if not is_completely_lexsegment(nf.ctx, nf.u, nf.v, max_extra_degrees):
        raise UnsupportedConstruction(
            "not completely lexsegment; only betti_from_sets or an explicit regular order apply"
        )
    if not has_linear_resolution(ctx, u, v, max_extra_degrees):
        raise UnsupportedConstruction("no linear resolution")
    order = [nf.lift(w) for w in prec_order(enumerate_lexsegment(nf.ctx, nf.u, nf.v))]
    og = OrderedGenerators(order)
    k = nf.dropped_leading_vars

    def g(j: int, s: int) -> int:
        w = nf.lower(og.gens[j])
        set_w = frozenset(t - k for t in og.sets[j])
        target = nf.lift(g_formula(nf.ctx, nf.u, nf.v, w, s - k, set_w))
        try:
            return og.position[target]
        except KeyError:
            raise UnsupportedConstruction(f"g formula left the generator set at {target!r}")

    return _mapping_cone(og, g, "lexsegment-formula")


# --------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class Failure:
    check: str  # "complex", "minimal", "homogeneous", "exact", "cokernel"
    position: int
    degree: Optional[int] = None
    detail: str = ""


@dataclass
class VerificationReport:
    max_check_degree: int
    strands_checked: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def passed(self, check: str) -> bool:
        return not any(f.check == check for f in self.failures)

    def __bool__(self) -> bool:
        return self.ok


def _check_homogeneous(res: GradedResolution, report: VerificationReport) -> None:
    for i, dm in enumerate(res.differentials):
        for (r, c), (coef, mono) in dm.entries.items():
            if dm.rows[r].multidegree * mono != dm.cols[c].multidegree:
                report.failures.append(
                    Failure("homogeneous", i, dm.cols[c].degree, f"entry ({r}, {c})")
                )
                return


def _check_minimal(res: GradedResolution, report: VerificationReport) -> None:
    for i, dm in enumerate(res.differentials):
        for (r, c), (coef, mono) in dm.entries.items():
            if mono.is_one():
                report.failures.append(
                    Failure("minimal", i, dm.cols[c].degree, f"unit entry at ({r}, {c})")
                )
                return


def _check_complex(res: GradedResolution, report: VerificationReport) -> None:
    # homogeneous entries: the product monomial is fixed by the end symbols,
    # so it is enough to add up coefficients
    for i in range(len(res.differentials) - 1):
        lower, upper = res.differentials[i], res.differentials[i + 1]
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), (coef, _) in lower.entries.items():
            by_row.setdefault(c, []).append((r, coef))
        acc: Counter = Counter()
        for (mid, c), (coef, _) in upper.entries.items():
            for r, coef2 in by_row.get(mid, ()):
                acc[(r, c)] += coef * coef2
        for (r, c), total in sorted(acc.items()):
            if total:
                report.failures.append(
                    Failure(
                        "complex",
                        i + 1,
                        upper.cols[c].degree,
                        f"composite entry ({r}, {c}) is {total} times a monomial",
                    )
                )
                return


@lru_cache(maxsize=32)
def _exponents_up_to(n: int, top: int) -> np.ndarray:
    """All exponent vectors of total degree at most ``top`` (read-only)."""

    def rec(k: int, budget: int) -> list[tuple[int, ...]]:
        if k == 1:
            return [(e,) for e in range(budget + 1)]
        return [(e,) + rest for e in range(budget + 1) for rest in rec(k - 1, budget - e)]

    out = np.array(rec(n, top), dtype=np.int16).reshape(-1, n)
    out.flags.writeable = False
    return out


def _dominates(alphas: np.ndarray, degs: np.ndarray) -> np.ndarray:
    """``out[a, k]``: degs[k] divides alphas[a]."""
    out = alphas[:, None, 0] >= degs[None, :, 0]
    for t in range(1, alphas.shape[1]):
        out &= alphas[:, None, t] >= degs[None, :, t]
    return out


def _xor_rank(vectors) -> int:
    basis: dict[int, int] = {}  # leading bit -> reduced vector
    get = basis.get
    for x in vectors:
        while x:
            top = x.bit_length()
            pivot = get(top)
            if pivot is None:
                basis[top] = x
                break
            x ^= pivot
    return len(basis)


def rank_gf2(mat: np.ndarray) -> int:
    """Rank of an integer matrix reduced mod 2.

    Never exceeds the rank over Q, so a vanishing homology computed with it
    is exact once d∘d = 0 is known over the integers.
    """
    if not mat.size:
        return 0
    packed = np.packbits((mat & 1).astype(np.uint8), axis=1)
    return _xor_rank(int.from_bytes(row.tobytes(), "big") for row in packed)


def _rank_exact(mat: np.ndarray) -> int:
    if not mat.size:
        return 0
    return rank_q({int(c): int(row[c]) for c in np.flatnonzero(row)} for row in mat)


class _Strands:
    """Scalar coefficient matrices of the complex, restricted to multidegree strands."""

    def __init__(self, res: GradedResolution):
        self.dims = [len(b) for b in res.bases]
        self.flat = [s for b in res.bases for s in b]
        self.offsets = np.cumsum([0] + self.dims)
        self.maps = []
        for dm in res.differentials:
            rc = np.array(list(dm.entries), dtype=np.int64).reshape(-1, 2)
            coef = np.array([e[0] for e in dm.entries.values()], dtype=np.int64)
            self.maps.append((rc[:, 0], rc[:, 1], coef))
        # column k of the map out of its position, as a bit mask over flat
        # row indices (odd coefficients only), in np.packbits bit order
        total = int(self.offsets[-1])
        self.nbits = 8 * ((total + 7) // 8)
        self.colbits = [0] * total
        for i, (r, c, coef) in enumerate(self.maps):
            for rr, cc, x in zip(r.tolist(), c.tolist(), coef.tolist()):
                if x & 1:
                    k = cc + int(self.offsets[i + 1])
                    self.colbits[k] |= 1 << (self.nbits - 1 - rr - int(self.offsets[i]))

    def homology_gf2(self, mask: np.ndarray, packed: Optional[bytes] = None) -> tuple[int, ...]:
        if packed is None:
            packed = np.packbits(mask).tobytes()
        rows = int.from_bytes(packed, "big")
        present = np.flatnonzero(mask).tolist()
        cuts = [bisect_left(present, o) for o in self.offsets.tolist()]
        dims = [cuts[i + 1] - cuts[i] for i in range(len(self.dims))]
        ranks = [0] * (len(dims) + 1)
        colbits = self.colbits
        for i in range(1, len(dims)):
            if dims[i] and dims[i - 1]:
                ranks[i] = _xor_rank([colbits[k] & rows for k in present[cuts[i] : cuts[i + 1]]])
        return tuple(dims[i] - ranks[i] - ranks[i + 1] for i in range(len(dims)))

    def matrices(self, mask: np.ndarray) -> list[np.ndarray]:
        """``mask[k]``: flat symbol k divides the strand's multidegree."""
        local, sizes = [], []
        for i in range(len(self.dims)):
            m = mask[self.offsets[i] : self.offsets[i + 1]]
            pos = np.full(len(m), -1, dtype=np.int64)
            pos[m] = np.arange(int(m.sum()))
            local.append(pos)
            sizes.append(int(m.sum()))
        out = []
        for i, (r, c, coef) in enumerate(self.maps):
            lr, lc = local[i][r], local[i + 1][c]
            keep = (lr >= 0) & (lc >= 0)
            mat = np.zeros((sizes[i], sizes[i + 1]), dtype=np.int64)
            mat[lr[keep], lc[keep]] = coef[keep]
            out.append(mat)
        return out


def _homology(mats: list[np.ndarray], rank: Callable[[np.ndarray], int]) -> tuple[int, ...]:
    dims = [mats[0].shape[0]] + [m.shape[1] for m in mats]
    # ranks[i] is the rank of the map out of F_i
    ranks = [0] + [rank(m) for m in mats] + [0]
    return tuple(dims[i] - ranks[i] - ranks[i + 1] for i in range(len(dims)))


def verify_resolution(
    res: GradedResolution,
    gens: Optional[Sequence[Monomial]] = None,
    max_check_degree: Optional[int] = None,
) -> VerificationReport:
    """Check d∘d = 0, minimality and graded exactness through ``max_check_degree``.

    Exactness is checked one multidegree strand at a time: in multidegree a
    the complex is the scalar matrix of coefficients restricted to symbols
    whose multidegree divides a.  Strands with the same set of symbols are
    checked once.
    """
    n = res.n
    gens = list(res.order if gens is None else gens)
    d = max(w.degree for w in gens)
    top = d + n + 2 if max_check_degree is None else max_check_degree
    report = VerificationReport(top)
    _check_homogeneous(res, report)
    _check_minimal(res, report)
    _check_complex(res, report)
    # the mod 2 shortcut is only sound for a complex over Z
    fast = report.passed("complex")

    alphas = _exponents_up_to(n, top)
    degrees = alphas.sum(axis=1)
    strands = _Strands(res)
    mdeg = np.array([s.multidegree for s in strands.flat], dtype=np.int16).reshape(-1, n)
    divides = _dominates(alphas, mdeg)

    # independent count of standard monomials per degree
    gen_arr = np.array(gens, dtype=np.int16).reshape(-1, n)
    in_ideal = _dominates(alphas, gen_arr).any(axis=1)
    standard = np.bincount(degrees[~in_ideal], minlength=top + 1)

    packed = np.packbits(divides, axis=1)
    seen: dict[bytes, int] = {}
    inverse = np.empty(len(alphas), dtype=np.int64)
    homology = []
    for a, row in enumerate(packed):
        key = row.tobytes()
        k = seen.get(key)
        if k is None:
            k = seen[key] = len(homology)
            hom = strands.homology_gf2(divides[a], key) if fast else (1,)
            if not fast or any(hom[1:]):
                hom = _homology(strands.matrices(divides[a]), _rank_exact)
            homology.append(hom)
        inverse[a] = k
    report.strands_checked = len(homology)
    per_alpha = np.array(homology, dtype=np.int64)[inverse]

    for i in range(1, per_alpha.shape[1]):
        for deg in np.unique(degrees[per_alpha[:, i] != 0]):
            h = int(per_alpha[degrees == deg, i].max())
            report.failures.append(Failure("exact", i, int(deg), f"homology of dimension {h}"))
    h0 = np.bincount(degrees, weights=per_alpha[:, 0], minlength=top + 1).astype(np.int64)
    for deg in range(top + 1):
        if h0[deg] != standard[deg]:
            report.failures.append(
                Failure(
                    "cokernel",
                    0,
                    deg,
                    f"cokernel dimension {int(h0[deg])}, standard monomials {int(standard[deg])}",
                )
            )
    return report


def hilbert_numerator(res: GradedResolution) -> tuple[int, ...]:
    """sum_i (-1)^i sum_symbols t^deg as a coefficient tuple, trailing zeros trimmed."""
    top = max(s.degree for b in res.bases for s in b)
    coeffs = [0] * (top + 1)
    for i, basis in enumerate(res.bases):
        for s in basis:
            coeffs[s.degree] += -1 if i % 2 else 1
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)
