"""Wildcard transition patterns, rule tables and big-integer rule numbers.

A pattern file holds one pattern per line::

    # comment
    ***1{1}101* -> 0   # T9

The optional braces mark the centre cell and are checked, not required.
Text after ``#`` on a pattern line becomes the pattern's name.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import LocalRule


class RuleConflictError(ValueError):
    """Two patterns match the same neighbourhood with different outputs."""

    def __init__(self, neighbourhood: str, first: "TransitionPattern", second: "TransitionPattern"):
        self.neighbourhood = neighbourhood
        self.first = first
        self.second = second
        super().__init__(
            f"neighbourhood {neighbourhood} matches {first.label} (-> {first.output}) "
            f"and {second.label} (-> {second.output})")


class RedundantActiveWarning(UserWarning):
    """A pattern's output equals the centre cell of a neighbourhood it matches."""


class RuleNumberRangeError(ValueError):
    pass


@dataclass(frozen=True)
class TransitionPattern:
    cells: str
    output: int
    name: Optional[str] = None

    def __post_init__(self):
        cells = self.cells.replace("{", "").replace("}", "").replace(" ", "")
        if "{" in self.cells:
            centre = self.cells.replace(" ", "").index("{")
            if centre != (len(cells) - 1) // 2:
                raise ValueError(f"braces in {self.cells!r} are not around the centre cell")
        if len(cells) % 2 == 0 or set(cells) - set("01*"):
            raise ValueError(f"bad pattern {self.cells!r}: need an odd number of 0/1/* symbols")
        if self.output not in (0, 1):
            raise ValueError(f"pattern output must be 0 or 1, got {self.output!r}")
        object.__setattr__(self, "cells", cells)

    @property
    def radius(self) -> int:
        return len(self.cells) // 2

    @property
    def centre(self) -> str:
        return self.cells[self.radius]

    @property
    def label(self) -> str:
        return self.name or self.cells

    def matches(self, neighbourhood: str) -> bool:
        return len(neighbourhood) == len(self.cells) and all(
            p == "*" or p == c for p, c in zip(self.cells, neighbourhood))

    def codes(self) -> np.ndarray:
        """Encodings of every neighbourhood the pattern matches."""
        width = len(self.cells)
        codes = np.arange(1 << width)
        keep = np.ones(codes.size, dtype=bool)
        for i, symbol in enumerate(self.cells):
            if symbol != "*":
                keep &= ((codes >> (width - 1 - i)) & 1) == int(symbol)
        return codes[keep]

    def __str__(self) -> str:
        r = self.radius
        text = f"{self.cells[:r]}{{{self.cells[r]}}}{self.cells[r + 1:]} -> {self.output}"
        return f"{text}  # {self.name}" if self.name else text


def compile_patterns(patterns: Sequence[TransitionPattern], radius: int) -> LocalRule:
    """Table that applies each pattern where it matches and keeps the centre cell elsewhere.

    Overlapping patterns must agree; a disagreement raises RuleConflictError.
    """
    width = 2 * radius + 1
    size = 1 << width
    codes = np.arange(size)
    table = ((codes >> radius) & 1).astype(np.uint8)
    owner: list[Optional[TransitionPattern]] = [None] * size
    for pattern in patterns:
        if len(pattern.cells) != width:
            raise ValueError(f"pattern {pattern.label} has width {len(pattern.cells)}, "
                             f"radius {radius} needs {width}")
        for k in pattern.codes():
            previous = owner[k]
            if previous is not None and previous.output != pattern.output:
                raise RuleConflictError(format(int(k), f"0{width}b"), previous, pattern)
            owner[k] = pattern
            table[k] = pattern.output
        if pattern.centre != "*" and int(pattern.centre) == pattern.output:
            warnings.warn(f"pattern {pattern.label} never changes its centre cell",
                          RedundantActiveWarning, stacklevel=2)
        elif pattern.centre == "*":
            warnings.warn(f"pattern {pattern.label} leaves half its neighbourhoods unchanged",
                          RedundantActiveWarning, stacklevel=2)
    return LocalRule(radius, table)


def wolfram_number(rule: LocalRule) -> int:
    """Sum of ``table[k] * 2**k`` over all neighbourhood encodings ``k``."""
    # bit k of the number is table[k]: reverse so index 0 is least significant
    bits = "".join("1" if b else "0" for b in rule.table[::-1])
    return int(bits, 2)


def rule_from_number(number: int | str, radius: int) -> LocalRule:
    value = int(number)
    size = 1 << (2 * radius + 1)
    if value < 0 or value.bit_length() > size:
        raise RuleNumberRangeError(f"{number} is not a radius-{radius} rule number")
    bits = format(value, f"0{size}b")[::-1]
    return LocalRule(radius, [int(c) for c in bits])


def parse_rule_number(text: str) -> int:
    """Decimal digit string; no sign, exponent or separators."""
    text = text.strip()
    if not text.isdigit():
        raise ValueError(f"rule numbers are plain decimal digit strings, got {text!r}")
    return int(text)


def elementary(number: int) -> LocalRule:
    return rule_from_number(number, 1)


def parse_patterns(text: str) -> list[TransitionPattern]:
    patterns = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line, _, comment = raw.partition("#")
        line = line.strip()
        if not line:
            continue
        lhs, arrow, rhs = line.partition("->")
        if not arrow or rhs.strip() not in ("0", "1"):
            raise ValueError(f"line {lineno}: expected 'PATTERN -> 0|1', got {raw!r}")
        patterns.append(TransitionPattern(lhs.strip(), int(rhs.strip()),
                                          comment.strip() or None))
    return patterns


def format_patterns(patterns: Iterable[TransitionPattern]) -> str:
    return "".join(f"{p}\n" for p in patterns)


def load_rule_file(path: str | Path) -> LocalRule:
    patterns = parse_patterns(Path(path).read_text())
    if not patterns:
        raise ValueError(f"{path}: no patterns")
    radii = {p.radius for p in patterns}
    if len(radii) != 1:
        raise ValueError(f"{path}: patterns of mixed widths")
    return compile_patterns(patterns, radii.pop())


_MINIMISED = """\
*111{0}0*** -> 1
1110{0}**** -> 1
*001{0}0*** -> 1
0010{0}**** -> 1
**01{0}100* -> 1
1110{1}**** -> 0
*010{1}*0** -> 0
**01{1}0*** -> 0
***1{1}0110 -> 0
***0{1}10** -> 0
****{1}101* -> 0
"""

_EXPLICIT = """\
*111{0}0*** -> 1  # T1
1110{0}**** -> 1  # T2
*001{0}0*** -> 1  # T3
0010{0}**** -> 1  # T4
**01{0}100* -> 1  # T7
***0{1}10** -> 0  # T5
**01{1}0*** -> 0  # T6
*010{1}00** -> 0  # T8
***1{1}101* -> 0  # T9
1110{1}0*** -> 0  # T10
1110{1}11** -> 0  # T11
**11{1}0110 -> 0  # T12
"""

BFO_NUMBER = int(
    "12766019579927887748828308783632125137208948629571434199404394002671695991869267727"
    "072917454377539194754200976283425175983876539715064584172642413634846720")


def bfo_minimized() -> list[TransitionPattern]:
    """The eleven-row compact form of the radius-4 parity rule."""
    return parse_patterns(_MINIMISED)


def bfo_explicit() -> list[TransitionPattern]:
    """The twelve named active transitions T1..T12, listed in pair order."""
    return parse_patterns(_EXPLICIT)


_BFO: Optional[LocalRule] = None


def bfo() -> LocalRule:
    """The compiled radius-4 parity rule."""
    global _BFO
    if _BFO is None:
        _BFO = compile_patterns(bfo_minimized(), 4)
    return _BFO
