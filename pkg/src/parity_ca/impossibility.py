"""Forced-transition filters and candidate searches for radius 1 and 2.

A perfect rule must satisfy a series of local constraints: homogeneous
configurations are fixed, a lone 1 (or lone 0) must grow to an odd-sized
block, the two alternating windows must disagree, and each homogeneous
configuration needs pre-images of lengths 5 and 7 from a short list.
Choosing one option for each constraint fixes most of the table; the
remaining entries are enumerated, filtered and every survivor is searched
for a configuration it fails on.

Pre-image cycles are named by the least rotation of the configuration
they spell, e.g. ``"00001"`` for the lone 1 on five cells.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import Configuration, LocalRule, Outcome, classify
from .debruijn import (
    build_debruijn,
    find_even_length_odd_parity_cycle,
    necklaces,
    preimage_necklaces,
)
from .rules import wolfram_number
from .sweep import first_failure

log = logging.getLogger(__name__)

R2 = 2
R2_SIZE = 1 << (2 * R2 + 1)

LONE_ONE = ("10000", "01000", "00100", "00010", "00001")
LONE_ZERO = ("01111", "10111", "11011", "11101", "11110")
ALTERNATING = ("10101", "01010")

EVEN_ODD_CYCLE_LIMIT = 8
LONG_RUN_LIMIT = 11
R2_SIZES = (3, 5, 7, 9, 11, 13)
R2_PRIME_SIZES = (3, 5, 7, 11, 13)
R1_SIZES = (5, 7, 9)


class Infeasible(ValueError):
    """A branch demands both outputs of one neighbourhood."""

    def __init__(self, neighbourhood: str, first: str, second: str):
        self.neighbourhood = neighbourhood
        self.tags = (first, second)
        super().__init__(f"{neighbourhood} forced both ways by {first} and {second}")


class EscalationError(RuntimeError):
    """A candidate rule survived every counterexample search."""

    def __init__(self, survivors: list["CandidateReport"]):
        self.survivors = survivors
        rules = ", ".join(str(wolfram_number(c.rule)) for c in survivors)
        super().__init__(f"{len(survivors)} candidate(s) without counterexample: {rules}")


@dataclass
class PartialRule:
    radius: int
    assignments: dict[int, int] = field(default_factory=dict)
    provenance: dict[int, str] = field(default_factory=dict)

    def _code(self, neighbourhood: int | str) -> int:
        return int(neighbourhood, 2) if isinstance(neighbourhood, str) else neighbourhood

    def label(self, code: int) -> str:
        return format(code, f"0{2 * self.radius + 1}b")

    def force(self, neighbourhood: int | str, value: int, tag: str) -> None:
        code = self._code(neighbourhood)
        if code in self.assignments:
            if self.assignments[code] != value:
                raise Infeasible(self.label(code), self.provenance[code], tag)
            return
        self.assignments[code] = value
        self.provenance[code] = tag

    def force_preimage(self, config: str, value: int, tag: str) -> None:
        """Every window of the circular ``config`` must output ``value``."""
        n = len(config)
        width = 2 * self.radius + 1
        for i in range(n):
            window = "".join(config[(i - self.radius + j) % n] for j in range(width))
            self.force(window, value, tag)

    def get(self, neighbourhood: int | str) -> Optional[int]:
        return self.assignments.get(self._code(neighbourhood))

    def free(self) -> list[int]:
        return [k for k in range(1 << (2 * self.radius + 1)) if k not in self.assignments]

    def complete(self, values: Sequence[int]) -> LocalRule:
        """Fill the free entries, in increasing code order, with ``values``."""
        free = self.free()
        if len(values) != len(free):
            raise ValueError(f"{len(free)} free entries, got {len(values)} values")
        table = [0] * (1 << (2 * self.radius + 1))
        for k, v in self.assignments.items():
            table[k] = v
        for k, v in zip(free, values):
            table[k] = v
        return LocalRule(self.radius, table)

    def copy(self) -> "PartialRule":
        return PartialRule(self.radius, dict(self.assignments), dict(self.provenance))


@dataclass(frozen=True)
class CandidateReport:
    rule: LocalRule
    choicepath: tuple[str, ...]
    counterexample: Optional[tuple[int, Configuration, Outcome]] = None
    budget_factor: int = 8

    @property
    def number(self) -> int:
        return wolfram_number(self.rule)

    def replays(self) -> bool:
        """Re-run the recorded counterexample; true iff it reproduces and fails."""
        if self.counterexample is None:
            return False
        n, config, outcome = self.counterexample
        again = classify(self.rule, config, self.budget_factor * n * n)
        return again == outcome and not again.solves(config)

    def line(self) -> str:
        text = f"choicepath={';'.join(self.choicepath)} rule={self.number}"
        if self.counterexample is not None:
            n, config, outcome = self.counterexample
            text += f" counterexample_n={n} config={config} outcome={outcome.tag}"
        else:
            text += " counterexample_n=none"
        return text


def _search_counterexample(rule: LocalRule, sizes: Sequence[int],
                           budget_factor: int) -> Optional[tuple[int, Configuration, Outcome]]:
    for n in sizes:
        found = first_failure(rule, n, budget_factor * n * n)
        if found is not None:
            return n, found[0], found[1]
    return None


# ---------------------------------------------------------------- radius 1

def radius1_eliminate(sizes: Sequence[int] = R1_SIZES, budget_factor: int = 8) -> list[CandidateReport]:
    """The only radius-1 rule meeting the forced transitions, with a failing configuration."""
    partial = PartialRule(1)
    partial.force("000", 0, "quiescent-0")
    partial.force("111", 1, "quiescent-1")
    for w in ("100", "010", "001"):
        partial.force(w, 1, "lone-one-grows")
    for w in ("110", "101", "011"):
        partial.force(w, 0, "lone-zero-grows")
    reports = []
    for values in itertools.product((0, 1), repeat=len(partial.free())):
        rule = partial.complete(values)
        path = ("quiescent", "lone-one-grows", "lone-zero-grows")
        cex = _search_counterexample(rule, sizes, budget_factor)
        reports.append(CandidateReport(rule, path, cex, budget_factor))
    return reports


# ---------------------------------------------------------------- radius 2

def _circular_contains(word: str, pattern: str) -> bool:
    return pattern in word + word[:len(pattern) - 1]


def _windows(word: str, radius: int = R2) -> set[str]:
    n, width = len(word), 2 * radius + 1
    return {"".join(word[(i + j) % n] for j in range(width)) for i in range(n)}


def _window_edges_have_even_odd_walk(windows: set[str], max_length: int) -> bool:
    """Is there an even-length, odd-weight configuration using only ``windows``?"""
    allowed = [0] * R2_SIZE
    for w in windows:
        allowed[int(w, 2)] = 1
    graph = build_debruijn(LocalRule(R2, allowed))
    return find_even_length_odd_parity_cycle(graph, 1, max_length) is not None


@dataclass(frozen=True)
class CycleTables:
    """Feasible least-rotation pre-images of the homogeneous configurations."""

    ones5: frozenset[str]
    zeros5: frozenset[str]
    ones7: frozenset[str]
    zeros7: frozenset[str]

    def lines(self) -> list[str]:
        return [f"{name}={','.join(sorted(getattr(self, name)))}"
                for name in ("ones5", "zeros5", "ones7", "zeros7")]


def feasible_preimages(target: int, n: int, max_length: int = EVEN_ODD_CYCLE_LIMIT) -> frozenset[str]:
    """Length-n pre-image cycles of the all-``target`` configuration that no
    perfect radius-2 rule can immediately exclude.

    Kept: necklaces of the right parity that do not run through the
    opposite homogeneous window (fixed by quiescence), do not hold four
    consecutive cells equal to the target value,
    do not use both alternating windows, and whose windows admit no
    even-length odd-weight closed walk.
    """
    own_run = str(target) * 4
    wrong_fixed = str(1 - target) * 5
    kept = set()
    for word in necklaces(n):
        if word.count("1") % 2 != target:
            continue
        if _circular_contains(word, own_run) or _circular_contains(word, wrong_fixed):
            continue
        windows = _windows(word)
        if set(ALTERNATING) <= windows:
            continue
        if _window_edges_have_even_odd_walk(windows, max_length):
            continue
        kept.add(word)
    return frozenset(kept)


def r2_cycle_tables() -> CycleTables:
    return CycleTables(feasible_preimages(1, 5), feasible_preimages(0, 5),
                       feasible_preimages(1, 7), feasible_preimages(0, 7))


@dataclass(frozen=True)
class Branch:
    """One combination of discrete choices for a radius-2 perfect rule.

    ``alternating_one`` is the alternating window sent to 1 (the other goes
    to 0). ``lone_one_up`` / ``lone_zero_down`` are the 3 or 5 windows of a
    lone 1 (lone 0) that flip; the rest of each group keep their value.
    ``one_preimages`` / ``zero_preimages`` are configurations all of whose
    windows map to 1 / 0.
    """

    alternating_one: str
    lone_one_up: frozenset[str]
    lone_zero_down: frozenset[str]
    one_preimages: tuple[str, ...]
    zero_preimages: tuple[str, ...]

    def path(self) -> tuple[str, ...]:
        mask = lambda group, chosen: "".join("1" if w in chosen else "0" for w in group)
        return (f"alt1={self.alternating_one}",
                f"grow1={mask(LONE_ONE, self.lone_one_up)}",
                f"grow0={mask(LONE_ZERO, self.lone_zero_down)}",
                f"ones={','.join(self.one_preimages)}",
                f"zeros={','.join(self.zero_preimages)}")


def r2_forced_assignments(branch: Branch) -> PartialRule:
    """All entries of the radius-2 table implied by ``branch``; raises Infeasible."""
    partial = PartialRule(R2)
    partial.force("00000", 0, "quiescent-0")
    partial.force("11111", 1, "quiescent-1")
    if branch.alternating_one not in ALTERNATING:
        raise ValueError(f"alternating window must be one of {ALTERNATING}")
    other = ALTERNATING[1 - ALTERNATING.index(branch.alternating_one)]
    partial.force(branch.alternating_one, 1, "alternating")
    partial.force(other, 0, "alternating")
    for group, chosen, flip, tag in ((LONE_ONE, branch.lone_one_up, 1, "lone-one-grows"),
                                     (LONE_ZERO, branch.lone_zero_down, 0, "lone-zero-grows")):
        if len(chosen) not in (3, 5) or not set(chosen) <= set(group):
            raise ValueError(f"{tag}: choose 3 or 5 of {group}")
        for w in group:
            partial.force(w, flip if w in chosen else 1 - flip, tag)
    for word in branch.one_preimages:
        partial.force_preimage(word, 1, f"preimage1:{word}")
    for word in branch.zero_preimages:
        partial.force_preimage(word, 0, f"preimage0:{word}")
    return partial


# (one-preimages, zero-preimages): the two combinations left once the other
# length-5 and length-7 cycles are excluded
PREIMAGE_CHOICES: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] = (
    (("00001", "0000111"), ("01111", "0011011")),
    (("00001", "0010011"), ("01111", "0001111")),
)
# extra combinations that only the period-3 argument rules out; they must be
# refuted on prime sizes instead
PRIME_EXTRA_CHOICES: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] = (
    (("01011", "0010011"), ("01111", "0001111")),
    (("00001", "0000111"), ("00101", "0011011")),
)


def _subsets(group: Sequence[str]) -> list[frozenset[str]]:
    out = [frozenset(c) for c in itertools.combinations(group, 3)]
    out.append(frozenset(group))
    return out


def r2_branches(prime_only: bool = False) -> list[Branch]:
    choices = PREIMAGE_CHOICES + (PRIME_EXTRA_CHOICES if prime_only else ())
    return [Branch(alt, up, down, ones, zeros)
            for ones, zeros in choices
            for alt in ALTERNATING
            for up in _subsets(LONE_ONE)
            for down in _subsets(LONE_ZERO)]


def passes_filters(rule: LocalRule) -> bool:
    """No short even-length odd-weight monochromatic cycle, and no long
    same-valued run in a non-homogeneous pre-image of that value."""
    graph = build_debruijn(rule)
    for target in (0, 1):
        if find_even_length_odd_parity_cycle(graph, target, EVEN_ODD_CYCLE_LIMIT) is not None:
            return False
    for n in range(1, LONG_RUN_LIMIT + 1):
        for target in (0, 1):
            run = str(target) * 4
            for config in preimage_necklaces(graph, target, n):
                word = str(config)
                if not config.is_homogeneous() and _circular_contains(word, run):
                    return False
    return True


@dataclass(frozen=True)
class SearchSummary:
    prime_only: bool
    branches: int
    feasible_branches: int
    completions: int
    candidates: tuple[CandidateReport, ...]

    def lines(self) -> list[str]:
        out = [c.line() for c in self.candidates]
        out.append(f"summary prime_only={str(self.prime_only).lower()} branches={self.branches} "
                   f"feasible={self.feasible_branches} completions={self.completions} "
                   f"candidates={len(self.candidates)}")
        return out


def _refute(args):
    rule, sizes, factor = args
    return _search_counterexample(rule, sizes, factor)


def r2_search(prime_only: bool = False, budget_factor: int = 8,
              jobs: int = 1) -> SearchSummary:
    """Enumerate every radius-2 rule that survives the forced transitions and
    filters, and attach a counterexample to each.

    Raises EscalationError if any survivor has no counterexample.
    """
    sizes = R2_PRIME_SIZES if prime_only else R2_SIZES
    branches = r2_branches(prime_only)
    feasible = 0
    completions = 0
    seen: set[LocalRule] = set()
    pending: list[tuple[LocalRule, tuple[str, ...]]] = []
    for branch in branches:
        try:
            partial = r2_forced_assignments(branch)
        except Infeasible:
            continue
        feasible += 1
        free = partial.free()
        for values in itertools.product((0, 1), repeat=len(free)):
            completions += 1
            rule = partial.complete(values)
            if rule in seen or not passes_filters(rule):
                continue
            seen.add(rule)
            bits = "".join(map(str, values))
            pending.append((rule, branch.path() + (f"free={bits or '-'}",)))
    log.info("radius-2 search: %d branches, %d feasible, %d completions, %d candidates",
             len(branches), feasible, completions, len(pending))
    work = [(rule, sizes, budget_factor) for rule, _ in pending]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(_refute, work))
    else:
        found = [_refute(w) for w in work]
    reports = [CandidateReport(rule, path, cex, budget_factor)
               for (rule, path), cex in zip(pending, found)]
    reports.sort(key=lambda c: c.choicepath)
    survivors = [c for c in reports if c.counterexample is None]
    if survivors:
        raise EscalationError(survivors)
    return SearchSummary(prime_only, len(branches), feasible, completions, tuple(reports))


def r2_enumerate_candidates(prime_only: bool = False, budget_factor: int = 8,
                            jobs: int = 1) -> list[CandidateReport]:
    return list(r2_search(prime_only, budget_factor, jobs).candidates)
