"""Brute-force ground truth for equigenerated monomial ideals.

Nothing here imports the formula modules: monomials are plain integer
tuples, ranks are computed with exact integer elimination, and every
quantity is obtained by definition scans.  Two independent Betti routes are
provided: the Taylor complex (exponential in the number of generators, so
capped) and the upper Koszul simplicial complexes K^b, whose cost depends on
the exponent box instead of the generator count.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

Mono = tuple[int, ...]

DEFAULT_CAP = 22
TAYLOR_AUTO_LIMIT = 10


class CapacityError(RuntimeError):
    """The exponential-size computation would exceed the configured cap."""


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Sequence[int], b: Sequence[int]) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def minimalize(gens: Iterable[Sequence[int]]) -> list[Mono]:
    """Drop duplicates and every generator divisible by another one."""
    uniq = sorted({tuple(g) for g in gens}, key=sum)
    out: list[Mono] = []
    for g in uniq:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def _as_gens(gens: Iterable[Sequence[int]], n: int) -> list[Mono]:
    gens = [tuple(int(e) for e in g) for g in gens]
    if any(len(g) != n for g in gens):
        raise ValueError(f"generators must have {n} exponents")
    return gens


# --------------------------------------------------------------------------
# exact linear algebra

def rank_q(rows: Iterable[dict[int, int]]) -> int:
    """Rank over Q of an integer matrix given as sparse rows.

    Fraction-free elimination; each reduced row is divided by the gcd of its
    entries, which keeps entries small for the ±1 incidence matrices used here.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: x for c, x in row.items() if x}
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                break
            a, b = p[c], r[c]
            new = {k: a * x for k, x in r.items()}
            for k, x in p.items():
                new[k] = new.get(k, 0) - b * x
            r = {k: x for k, x in new.items() if x}
            if r:
                g = 0
                for x in r.values():
                    g = gcd(g, x)
                if g > 1:
                    r = {k: x // g for k, x in r.items()}
    return len(pivots)


# --------------------------------------------------------------------------
# Betti tables

@dataclass
class BettiTable:
    """Graded Betti numbers of S/I: ``entries[(i, j)] = beta_{i,j}``."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def add(self, i: int, j: int, count: int) -> None:
        if count:
            self.entries[(i, j)] = self.entries.get((i, j), 0) + count

    def total(self, i: int) -> int:
        return sum(c for (k, _), c in self.entries.items() if k == i)

    def totals(self) -> list[int]:
        return [self.total(i) for i in range(self.projdim() + 1)]

    def projdim(self) -> int:
        return max(i for i, _ in self.entries)

    def is_concentrated(self, d: int) -> bool:
        """All beta_{i,j} with i >= 1 sit on the diagonal j = d + i - 1."""
        return all(j == d + i - 1 for (i, j) in self.entries if i >= 1)

    def alternating_sum(self) -> tuple[int, ...]:
        """sum_i (-1)^i beta_{i,j} t^j as a coefficient tuple."""
        top = max(j for _, j in self.entries)
        coeffs = [0] * (top + 1)
        for (i, j), c in self.entries.items():
            coeffs[j] += (-1) ** i * c
        return _trim(coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _homology_dims(cells: dict[int, list], boundary) -> dict[int, int]:
    """dim H_k = f_k - rank d_k - rank d_{k+1}, for a complex graded by k."""
    ranks = {}
    for k in cells:
        if k - 1 in cells:
            ranks[k] = rank_q(boundary(c) for c in cells[k])
        else:
            ranks[k] = 0
    out = {}
    for k, cs in cells.items():
        h = len(cs) - ranks[k] - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


def taylor_betti(gens: Iterable[Sequence[int]], n: int, cap: int = DEFAULT_CAP) -> BettiTable:
    """Betti numbers of S/I from the Taylor complex, one lcm-strand at a time.

    In the strand of multidegree b the faces are the generator subsets with
    lcm exactly b; deleting a generator contributes ±1 when the lcm is
    unchanged and 0 when it drops.
    """
    gens = _as_gens(gens, n)
    if len(minimalize(gens)) != len(gens):
        raise ValueError("taylor_betti expects a minimal generating set")
    m = len(gens)
    if m > cap:
        raise CapacityError(f"{m} generators exceed the Taylor cap {cap}")
    lcms: list[Mono] = [(0,) * n]
    for g in gens:
        lcms += [_lcm(x, g) for x in lcms]
    strands: dict[Mono, list[int]] = {}
    for mask, b in enumerate(lcms):
        strands.setdefault(b, []).append(mask)
    table = BettiTable()
    for b, masks in strands.items():
        members = set(masks)
        cells: dict[int, list[int]] = {}
        for mask in masks:
            cells.setdefault(bin(mask).count("1"), []).append(mask)
        for k in cells:
            cells[k].sort()
        index = {k: {mask: pos for pos, mask in enumerate(cs)} for k, cs in cells.items()}

        def boundary(mask: int) -> dict[int, int]:
            k = bin(mask).count("1")
            row: dict[int, int] = {}
            sign, bit = 1, 0
            while (1 << bit) <= mask:
                if mask >> bit & 1:
                    face = mask ^ (1 << bit)
                    if face in members:
                        row[index[k - 1][face]] = sign
                    sign = -sign
                bit += 1
            return row

        for k, h in _homology_dims(cells, boundary).items():
            table.add(k, sum(b), h)
    return table


@lru_cache(maxsize=None)
def _koszul_reduced_homology(faces: frozenset[int]) -> tuple[tuple[int, int], ...]:
    """Reduced homology of a simplicial complex given by vertex bitmasks (0 = empty face)."""
    cells: dict[int, list[int]] = {}
    for f in sorted(faces):
        cells.setdefault(bin(f).count("1") - 1, []).append(f)
    index = {k: {f: pos for pos, f in enumerate(cs)} for k, cs in cells.items()}

    def boundary(f: int) -> dict[int, int]:
        k = bin(f).count("1") - 1
        row: dict[int, int] = {}
        sign, bit = 1, 0
        while (1 << bit) <= f:
            if f >> bit & 1:
                row[index[k - 1][f ^ (1 << bit)]] = sign
                sign = -sign
            bit += 1
        return row

    return tuple(sorted(_homology_dims(cells, boundary).items()))


def _box_arrays(gens: list[Mono], n: int):
    top = tuple(max(g[i] for g in gens) for i in range(n))
    shape = tuple(t + 1 for t in top)
    in_ideal = np.zeros(shape, dtype=bool)
    for g in gens:
        in_ideal[tuple(slice(e, None) for e in g)] = True
    return shape, in_ideal


def koszul_betti(gens: Iterable[Sequence[int]], n: int) -> BettiTable:
    """Betti numbers of S/I via beta_{i+1,b}(S/I) = dim H~_{i-1}(K^b).

    K^b is the complex of squarefree tau with x^(b - tau) in I.  Only b that
    equal the lcm of the generators dividing x^b can contribute (otherwise
    K^b is a cone), so the scan is restricted to those.
    """
    gens = minimalize(_as_gens(gens, n))
    table = BettiTable()
    table.add(0, 0, 1)
    if not gens:
        return table
    shape, in_ideal = _box_arrays(gens, n)
    reach = np.zeros((n,) + shape, dtype=np.int64)
    for g in gens:
        sl = tuple(slice(e, None) for e in g)
        for i in range(n):
            view = reach[i][sl]
            np.maximum(view, g[i], out=view)
    grid = np.indices(shape)
    closed = in_ideal & np.all(reach == grid, axis=0)
    for b in map(tuple, np.argwhere(closed)):
        support = [i for i in range(n) if b[i]]
        faces = []
        for r in range(len(support) + 1):
            for tau in itertools.combinations(support, r):
                c = list(b)
                for i in tau:
                    c[i] -= 1
                if in_ideal[tuple(c)]:
                    faces.append(sum(1 << i for i in tau))
        for k, h in _koszul_reduced_homology(frozenset(faces)):
            table.add(k + 2, int(sum(b)), h)
    return table


def betti_table(
    gens: Iterable[Sequence[int]], n: int, method: str = "auto", cap: int = DEFAULT_CAP
) -> BettiTable:
    gens = minimalize(_as_gens(gens, n))
    if method == "auto":
        method = "taylor" if len(gens) <= TAYLOR_AUTO_LIMIT else "koszul"
    if method == "taylor":
        return taylor_betti(gens, n, cap)
    if method == "koszul":
        return koszul_betti(gens, n)
    raise ValueError(f"unknown Betti method {method!r}")


# --------------------------------------------------------------------------
# K-polynomials

def k_polynomial(gens: Iterable[Sequence[int]], n: int, cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Inclusion-exclusion: sum over subsets of (-1)^|s| t^deg lcm(s)."""
    gens = _as_gens(gens, n)
    if len(gens) > cap:
        raise CapacityError(f"{len(gens)} generators exceed the inclusion-exclusion cap {cap}")
    lcms = np.zeros((1, n), dtype=np.int32)
    odd = np.zeros(1, dtype=bool)
    for g in gens:
        lcms = np.vstack([lcms, np.maximum(lcms, np.asarray(g, dtype=np.int32))])
        odd = np.concatenate([odd, ~odd])
    degrees = lcms.sum(axis=1)
    size = int(degrees.max()) + 1
    coeffs = np.bincount(degrees[~odd], minlength=size) - np.bincount(degrees[odd], minlength=size)
    return _trim([int(c) for c in coeffs])


def k_polynomial_by_counting(gens: Iterable[Sequence[int]], n: int) -> tuple[int, ...]:
    """K-polynomial from the multigraded Hilbert function of S/I.

    Multiplying the indicator of standard monomials by prod_i (1 - x_i) is a
    finite difference along every axis of the exponent box.
    """
    gens = minimalize(_as_gens(gens, n))
    if not gens:
        return (1,)
    shape, in_ideal = _box_arrays(gens, n)
    k = (~in_ideal).astype(np.int64)
    for axis in range(n):
        k = np.diff(k, axis=axis, prepend=0)
    degree = np.indices(shape).sum(axis=0)
    coeffs = [0] * (int(degree.max()) + 1)
    for deg, c in zip(degree[k != 0].tolist(), k[k != 0].tolist()):
        coeffs[deg] += c
    return _trim(coeffs)


# --------------------------------------------------------------------------
# primes, depth, dimension

def minimal_primes(gens: Iterable[Sequence[int]], n: int) -> list[frozenset[int]]:
    """Minimal vertex covers of the hypergraph of generator supports (0-based)."""
    gens = _as_gens(gens, n)
    if not gens or any(not any(g) for g in gens):
        raise ValueError("minimal_primes needs a proper nonzero ideal")
    edges = [sum(1 << i for i in range(n) if g[i]) for g in gens]
    covers: list[int] = []
    for mask in sorted(range(1 << n), key=lambda x: bin(x).count("1")):
        if all(mask & e for e in edges) and not any(c & mask == c for c in covers):
            covers.append(mask)
    return [frozenset(i for i in range(n) if c >> i & 1) for c in covers]


@dataclass(frozen=True)
class OracleInvariants:
    depth: int
    dim: int
    projdim: int
    cohen_macaulay: bool


def oracle_depth_dim(
    gens: Iterable[Sequence[int]], n: int, betti: BettiTable | None = None
) -> OracleInvariants:
    gens = minimalize(_as_gens(gens, n))
    if betti is None:
        betti = betti_table(gens, n)
    projdim = betti.projdim()
    height = min(len(p) for p in minimal_primes(gens, n))
    depth, dim = n - projdim, n - height
    return OracleInvariants(depth, dim, projdim, depth == dim)


# --------------------------------------------------------------------------
# colon ideals and the decomposition function, by definition

def oracle_colon(prefix: Iterable[Sequence[int]], w: Sequence[int]) -> tuple[list[Mono], set[int]]:
    """Minimal generators of (prefix) : w, and the variables lying in it."""
    prefix = [tuple(p) for p in prefix]
    w = tuple(w)
    gens = minimalize(tuple(max(a, b) - b for a, b in zip(p, w)) for p in prefix)
    gens.sort(reverse=True)
    variables = set()
    for k in range(len(w)):
        xw = list(w)
        xw[k] += 1
        if any(_divides(p, xw) for p in prefix):
            variables.add(k)
    return gens, variables


def oracle_g(order: Sequence[Sequence[int]], m: Sequence[int]) -> Mono:
    for g in order:
        if _divides(g, m):
            return tuple(g)
    raise ValueError(f"{tuple(m)} is not in the ideal")

