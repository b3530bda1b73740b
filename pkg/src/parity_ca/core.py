"""Circular binary configurations, local rules and the synchronous global step."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

DEFAULT_BUDGET_FACTOR = 8


@dataclass(frozen=True)
class Configuration:
    """A circular lattice of binary cells; index 0 is the leftmost cell.

    Equality is positional: two rotations of the same pattern are different
    configurations (see :meth:`canonical` for rotation classes).
    """

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ValueError("a configuration needs at least one cell")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"cells must be 0 or 1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text: str) -> "Configuration":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a configuration string: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_int(cls, value: int, n: int) -> "Configuration":
        """Cell 0 is the most significant of the ``n`` bits."""
        if not 0 <= value < 1 << n:
            raise ValueError(f"{value} does not fit in {n} cells")
        return cls(tuple((value >> (n - 1 - i)) & 1 for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "Configuration":
        return cls((0,) * n)

    @classmethod
    def ones(cls, n: int) -> "Configuration":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i % len(self.bits)]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def to_int(self) -> int:
        return int(str(self), 2)

    def array(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.uint8)

    def count_ones(self) -> int:
        return sum(self.bits)

    def is_homogeneous(self) -> bool:
        return len(set(self.bits)) == 1

    def rotate(self, k: int) -> "Configuration":
        """Shift every cell ``k`` places to the right (cyclically)."""
        k %= self.n
        return Configuration(self.bits[-k:] + self.bits[:-k] if k else self.bits)

    def canonical(self) -> "Configuration":
        """Lexicographically smallest rotation."""
        return min((self.rotate(k) for k in range(self.n)), key=lambda c: c.bits)


class LocalRule:
    """Complete output table of a radius-``r`` rule.

    ``table[k]`` is the output on the neighbourhood whose cells, read left to
    right with the leftmost cell as most significant bit, spell ``k``.
    Instances are immutable and hashable.
    """

    __slots__ = ("_radius", "_table")

    def __init__(self, radius: int, table: Iterable[int]):
        if radius < 0:
            raise ValueError("radius must be non-negative")
        arr = np.array(list(table) if not isinstance(table, np.ndarray) else table,
                       dtype=np.uint8).ravel()
        if arr.shape != (1 << (2 * radius + 1),):
            raise ValueError(
                f"radius {radius} needs {1 << (2 * radius + 1)} entries, got {arr.size}")
        if arr.max(initial=0) > 1:
            raise ValueError("rule outputs must be 0 or 1")
        arr.flags.writeable = False
        self._radius = radius
        self._table = arr

    @classmethod
    def from_function(cls, radius: int, f: Callable[[tuple[int, ...]], int]) -> "LocalRule":
        width = 2 * radius + 1
        return cls(radius, [f(neighbourhood_bits(k, width)) for k in range(1 << width)])

    @classmethod
    def identity(cls, radius: int) -> "LocalRule":
        return cls.from_function(radius, lambda cells: cells[radius])

    @property
    def radius(self) -> int:
        return self._radius

    @property
    def width(self) -> int:
        return 2 * self._radius + 1

    @property
    def table(self) -> np.ndarray:
        return self._table

    def __len__(self) -> int:
        return self._table.size

    def __call__(self, neighbourhood: int | str | Sequence[int]) -> int:
        if isinstance(neighbourhood, str):
            neighbourhood = int(neighbourhood, 2)
        elif not isinstance(neighbourhood, (int, np.integer)):
            neighbourhood = int("".join(map(str, neighbourhood)), 2)
        return int(self._table[neighbourhood])

    def centre(self, k: int) -> int:
        return (k >> self._radius) & 1

    def is_active(self, k: int) -> bool:
        """Whether the rule changes the centre cell on neighbourhood ``k``."""
        return int(self._table[k]) != self.centre(k)

    def active_mask(self) -> np.ndarray:
        codes = np.arange(self._table.size)
        return self._table != ((codes >> self._radius) & 1)

    @property
    def quiescent_consistent(self) -> bool:
        return self._table[0] == 0 and self._table[-1] == 1

    def __eq__(self, other):
        if not isinstance(other, LocalRule):
            return NotImplemented
        return self._radius == other._radius and np.array_equal(self._table, other._table)

    def __hash__(self):
        return hash((self._radius, self._table.tobytes()))

    def __repr__(self):
        return f"LocalRule(radius={self._radius}, table=<{self._table.size} entries>)"

    def __reduce__(self):
        return (LocalRule, (self._radius, self._table.tolist()))


def neighbourhood_bits(k: int, width: int) -> tuple[int, ...]:
    return tuple((k >> (width - 1 - i)) & 1 for i in range(width))


def neighbourhood_codes(cells: np.ndarray, radius: int) -> np.ndarray:
    """Encoded (2r+1)-window centred on every cell, along the last axis.

    Works for any lattice size, including n < 2r+1 where a cell is read
    several times.
    """
    n = cells.shape[-1]
    width = 2 * radius + 1
    ext = np.take(cells, np.arange(-radius, n + radius) % n, axis=-1)
    dtype = np.int16 if width < 15 else np.int64
    codes = np.zeros(cells.shape, dtype=dtype)
    for j in range(width):
        codes <<= 1
        codes |= ext[..., j:j + n]
    return codes


def step(rule: LocalRule, config: Configuration) -> Configuration:
    """One synchronous application of ``rule`` to every cell."""
    out = rule.table[neighbourhood_codes(config.array(), rule.radius)]
    return Configuration(tuple(out.tolist()))


def parity(config: Configuration) -> int:
    return config.count_ones() & 1


def active_positions(rule: LocalRule, config: Configuration) -> list[int]:
    """Cells whose value the next step changes."""
    cells = config.array()
    out = rule.table[neighbourhood_codes(cells, rule.radius)]
    return np.flatnonzero(out != cells).tolist()


def default_max_steps(n: int, factor: int = DEFAULT_BUDGET_FACTOR) -> int:
    return factor * n * n


class OutcomeTag(str, Enum):
    CONVERGED0 = "Converged0"
    CONVERGED1 = "Converged1"
    CYCLE = "Cycle"
    BUDGET = "Budget"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Outcome:
    tag: OutcomeTag
    steps: int
    witness: Configuration
    period: Optional[int] = None

    @property
    def converged(self) -> bool:
        return self.tag in (OutcomeTag.CONVERGED0, OutcomeTag.CONVERGED1)

    @property
    def value(self) -> Optional[int]:
        """Homogeneous value converged to, if any."""
        if not self.converged:
            return None
        return 1 if self.tag is OutcomeTag.CONVERGED1 else 0

    def solves(self, initial: Configuration) -> bool:
        """True iff this is convergence to the parity of ``initial``."""
        return self.value == parity(initial)

    def __str__(self) -> str:
        text = f"{self.tag} steps={self.steps}"
        if self.period is not None:
            text += f" period={self.period}"
        return text


def classify(rule: LocalRule, config: Configuration, max_steps: Optional[int] = None) -> Outcome:
    """Iterate ``rule`` from ``config`` until a homogeneous fixed point or a cycle.

    Cycle detection keeps every visited state (keys are the full cell
    bytes, so a hash collision can never be mistaken for a repeat); the
    reported period is the exact length of the loop entered.
    """
    if max_steps is None:
        max_steps = default_max_steps(config.n)
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    table, r = rule.table, rule.radius
    cells = config.array()
    seen: dict[bytes, int] = {}
    for t in range(max_steps + 1):
        nxt = table[neighbourhood_codes(cells, r)]
        if cells.min() == cells.max() and np.array_equal(nxt, cells):
            tag = OutcomeTag.CONVERGED1 if cells[0] else OutcomeTag.CONVERGED0
            return Outcome(tag, t, Configuration(tuple(cells.tolist())))
        key = cells.tobytes()
        if key in seen:
            return Outcome(OutcomeTag.CYCLE, t, Configuration(tuple(cells.tolist())),
                           period=t - seen[key])
        seen[key] = t
        if t == max_steps:
            break
        cells = nxt
    return Outcome(OutcomeTag.BUDGET, max_steps, Configuration(tuple(cells.tolist())))


def evolve(rule: LocalRule, config: Configuration, steps: int) -> np.ndarray:
    """Space-time diagram: row t is the configuration after t steps."""
    rows = np.empty((steps + 1, config.n), dtype=np.uint8)
    rows[0] = config.array()
    for t in range(steps):
        rows[t + 1] = rule.table[neighbourhood_codes(rows[t], rule.radius)]
    return rows


@dataclass(frozen=True)
class BlockDecomposition:
    """Maximal circular runs of equal cells.

    ``start`` is the index of the first cell of ``runs[0]``: the run that
    contains cell 0, extended leftwards across the wrap.
    """

    runs: tuple[tuple[int, int], ...]
    start: int = 0
    n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", sum(length for _, length in self.runs))

    @property
    def block_count(self) -> int:
        return len(self.runs)


def block_decomposition(config: Configuration) -> BlockDecomposition:
    bits, n = config.bits, config.n
    if config.is_homogeneous():
        return BlockDecomposition(((bits[0], n),), 0)
    start = 0
    while bits[start - 1] == bits[start]:
        start -= 1
    start %= n
    runs: list[list[int]] = []
    for i in range(n):
        b = bits[(start + i) % n]
        if runs and runs[-1][0] == b:
            runs[-1][1] += 1
        else:
            runs.append([b, 1])
    return BlockDecomposition(tuple((b, length) for b, length in runs), start)
