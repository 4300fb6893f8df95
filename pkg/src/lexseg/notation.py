"""Text forms of monomials and JSON payloads.

Variables are 1-indexed here and only here: ``x1`` is exponent slot 0.
"""
from __future__ import annotations

import json
import re
from typing import Any, Iterable, Optional

from .monomial import Monomial


class ParseError(ValueError):
    """Malformed monomial text.  ``offset`` is a byte offset into the input."""

    def __init__(self, message: str, text: str, index: int):
        self.offset = len(text[:index].encode("utf-8"))
        super().__init__(f"{message} at byte {self.offset}")


_TOKEN = re.compile(r"\s*(?:(x)|(\^)|(\*)|(\d+)|(\[)|(\])|(,)|(-))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out, i = [], 0
    kinds = ("x", "^", "*", "int", "[", "]", ",", "-")
    while i < len(text):
        if text[i:].strip() == "":
            break
        m = _TOKEN.match(text, i)
        if not m:
            j = i + len(text[i:]) - len(text[i:].lstrip())
            raise ParseError(f"unexpected character {text[j]!r}", text, j)
        kind = kinds[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        i = m.end()
    return out


def parse_monomial(text: str, n: int) -> Monomial:
    """``x1*x3^2`` or ``[1,0,2,0]``; repeated factors add up."""
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty monomial", text, len(text))
    if toks[0][0] == "[":
        return _parse_vector(text, toks, n)
    exps = [0] * n
    pos = 0

    def expect(kind: str) -> tuple[str, str, int]:
        nonlocal pos
        if pos >= len(toks):
            raise ParseError(f"expected {kind}", text, len(text))
        tok = toks[pos]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", text, tok[2])
        pos += 1
        return tok

    def positive(tok: tuple[str, str, int], what: str) -> int:
        value = int(tok[1])
        if value < 1:
            raise ParseError(f"{what} must be positive", text, tok[2])
        return value

    while True:
        expect("x")
        itok = expect("int")
        index = positive(itok, "variable index")
        if index > n:
            raise ParseError(f"variable x{index} out of range for n={n}", text, itok[2])
        power = 1
        if pos < len(toks) and toks[pos][0] == "^":
            pos += 1
            power = positive(expect("int"), "exponent")
        exps[index - 1] += power
        if pos == len(toks):
            return Monomial(exps)
        expect("*")


def _parse_vector(text: str, toks: list, n: int) -> Monomial:
    values, pos = [], 1
    while True:
        if pos >= len(toks):
            raise ParseError("unterminated vector", text, len(text))
        kind, value, at = toks[pos]
        if kind == "-":
            raise ParseError("negative exponent", text, at)
        if kind != "int":
            raise ParseError(f"expected exponent, found {value!r}", text, at)
        values.append(int(value))
        pos += 1
        if pos >= len(toks):
            raise ParseError("unterminated vector", text, len(text))
        kind, value, at = toks[pos]
        pos += 1
        if kind == "]":
            break
        if kind != ",":
            raise ParseError(f"expected ',' or ']', found {value!r}", text, at)
    if pos != len(toks):
        raise ParseError("trailing input", text, toks[pos][2])
    if len(values) != n:
        raise ParseError(f"vector has {len(values)} entries, expected {n}", text, toks[0][2])
    return Monomial(values)


def parse_monomial_list(text: str, n: int) -> list[Monomial]:
    """Comma-separated monomials; commas inside brackets belong to vectors."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    out = []
    for offset, part in parts:
        try:
            out.append(parse_monomial(part, n))
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" at byte", 1)[0], text, offset + _char_index(part, exc.offset)) from None
    return out


def _char_index(part: str, byte_offset: int) -> int:
    return len(part.encode("utf-8")[:byte_offset].decode("utf-8", errors="ignore"))


def format_monomial(m: Iterable[int]) -> str:
    """Canonical form: variables ascending, exponents above one shown."""
    factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
    return "*".join(factors) if factors else "1"


def format_indices(indices: Optional[Iterable[int]]) -> Optional[list[int]]:
    return None if indices is None else sorted(i + 1 for i in indices)


def to_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def resolution_to_dict(res) -> dict:
    """Basis symbols and sparse signed entries of a GradedResolution."""
    bases = [
        [{"gen": list(s.gen), "sigma": format_indices(s.sigma)} for s in basis]
        for basis in res.bases
    ]
    maps = []
    for i, dm in enumerate(res.differentials):
        entries = [
            [r, c, coef, list(mono)] for (r, c), (coef, mono) in sorted(dm.entries.items())
        ]
        maps.append({"source": i + 1, "target": i, "shape": list(dm.shape), "entries": entries})
    return {
        "n": res.n,
        "provenance": res.provenance,
        "order": [format_monomial(w) for w in res.order],
        "sets": [format_indices(s) for s in res.sets],
        "ranks": list(res.ranks),
        "twists": [list(t) for t in res.twists],
        "bases": bases,
        "differentials": maps,
    }
