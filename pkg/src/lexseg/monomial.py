"""Exponent-vector monomials and the three total orders used on them.

A :class:`Monomial` is a tuple of non-negative exponents, one per variable.
Variables are stored 0-indexed (``x1`` is index 0).  Because a monomial *is*
a tuple, Python's built-in tuple comparison coincides with the lexicographic
order for ``x1 > x2 > ... > xn``; the explicit comparison functions below add
the ambient checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Optional


class ContextError(ValueError):
    """Monomials from different ambient rings (or degrees) were combined."""


class UndefinedInputError(ValueError):
    """An operation was asked for a value it does not define (e.g. max of 1)."""


class Monomial(tuple):
    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]) -> "Monomial":
        exps = tuple(int(e) for e in exponents)
        if not exps:
            raise ValueError("a monomial needs at least one variable")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return tuple.__new__(cls, exps)

    @classmethod
    def _raw(cls, exps: tuple) -> "Monomial":
        # trusted constructor for internal arithmetic
        return tuple.__new__(cls, exps)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls._raw((0,) * n)

    @classmethod
    def var(cls, i: int, n: int, power: int = 1) -> "Monomial":
        exps = [0] * n
        exps[i] = power
        return cls._raw(tuple(exps))

    @property
    def n(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def is_one(self) -> bool:
        return not any(self)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self) if e)

    def _check(self, other: "Monomial") -> None:
        if len(self) != len(other):
            raise ContextError(f"ambient mismatch: n={len(self)} vs n={len(other)}")

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        self._check(other)
        return Monomial._raw(tuple(a + b for a, b in zip(self, other)))

    __rmul__ = None  # tuple repetition by int makes no sense here

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial._raw(tuple(min(a, b) for a, b in zip(self, other)))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial._raw(tuple(max(a, b) for a, b in zip(self, other)))

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self, other))

    def quotient(self, divisor: "Monomial") -> Optional["Monomial"]:
        """``self / divisor`` if the division is exact, otherwise ``None``."""
        self._check(divisor)
        diff = tuple(a - b for a, b in zip(self, divisor))
        if any(e < 0 for e in diff):
            return None
        return Monomial._raw(diff)

    def times_var(self, i: int) -> "Monomial":
        exps = list(self)
        exps[i] += 1
        return Monomial._raw(tuple(exps))

    def over_var(self, i: int) -> "Monomial":
        if not self[i]:
            raise ValueError(f"x{i + 1} does not divide {self!r}")
        exps = list(self)
        exps[i] -= 1
        return Monomial._raw(tuple(exps))

    def max_var(self) -> int:
        return max_var(self)

    def __repr__(self) -> str:
        return f"Monomial({tuple(self)})"


@dataclass(frozen=True)
class AmbientContext:
    """Variable count ``n`` and generation degree ``d``."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.d < 1:
            raise ValueError(f"d must be positive, got {self.d}")

    def check(self, *monomials: Monomial) -> None:
        for m in monomials:
            if len(m) != self.n:
                raise ContextError(f"{m!r} does not live in n={self.n} variables")
            if sum(m) != self.d:
                raise ContextError(f"{m!r} does not have degree {self.d}")


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def lex_cmp(a: Monomial, b: Monomial) -> int:
    """-1/0/1 for a <lex b, a == b, a >lex b.  Degrees may differ."""
    if len(a) != len(b):
        raise ContextError(f"ambient mismatch: n={len(a)} vs n={len(b)}")
    for x, y in zip(a, b):
        if x != y:
            return _sign(x - y)
    return 0


def prec_cmp(a: Monomial, b: Monomial) -> int:
    """-1 when a ≺ b: smaller x1-exponent first, ties broken by >lex first."""
    if len(a) != len(b):
        raise ContextError(f"ambient mismatch: n={len(a)} vs n={len(b)}")
    if sum(a) != sum(b):
        raise ContextError("≺ only compares monomials of equal degree")
    if a[0] != b[0]:
        return _sign(a[0] - b[0])
    return -lex_cmp(a, b)


def barlex_cmp(a: Monomial, b: Monomial) -> int:
    """Lex comparison for the reversed variable order xn > ... > x1."""
    if len(a) != len(b):
        raise ContextError(f"ambient mismatch: n={len(a)} vs n={len(b)}")
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return _sign(x - y)
    return 0


def prec_key(m: Monomial) -> tuple:
    """Sort key that lists monomials ≺-ascending."""
    return (m[0], tuple(-e for e in m))


lex_desc_key = cmp_to_key(lambda a, b: lex_cmp(b, a))
barlex_desc_key = cmp_to_key(lambda a, b: barlex_cmp(b, a))


def max_var(m: Monomial) -> int:
    """Largest (0-based) index whose exponent is positive."""
    for i in range(len(m) - 1, -1, -1):
        if m[i]:
            return i
    raise UndefinedInputError("max(m) is undefined for the unit monomial")
