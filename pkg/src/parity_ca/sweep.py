"""Exhaustive sweeps over every configuration of a lattice size.

All 2^n configurations are simulated together as a ``(m, n)`` uint8 array;
configurations leave the working set as soon as they settle on a
homogeneous fixed point or are caught repeating a state. The index range
``[0, 2^n)`` is split into chunks that can be farmed out to worker
processes; results are merged in index order, so they do not depend on the
number of workers.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import (
    Configuration,
    LocalRule,
    Outcome,
    classify,
    default_max_steps,
    neighbourhood_codes,
)

CHUNK = 1 << 16

# final-state codes held in SweepResult.final
UNRESOLVED = -1
REPEATED = -2


def configurations(n: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Cells of configurations ``start .. stop-1``; cell 0 is the most significant bit."""
    stop = 1 << n if stop is None else stop
    values = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((values[:, None] >> shifts) & 1).astype(np.uint8)


def pack(cells: np.ndarray) -> np.ndarray:
    n = cells.shape[-1]
    weights = np.int64(1) << np.arange(n - 1, -1, -1, dtype=np.int64)
    return cells.astype(np.int64) @ weights


def step_batch(rule: LocalRule, cells: np.ndarray) -> np.ndarray:
    return rule.table[neighbourhood_codes(cells, rule.radius)]


def block_counts(cells: np.ndarray) -> np.ndarray:
    """Number of circular blocks per row (1 for homogeneous rows)."""
    boundaries = np.count_nonzero(cells != np.roll(cells, -1, axis=-1), axis=-1)
    return np.maximum(boundaries, 1)


@dataclass
class SweepResult:
    """Per-configuration fate for the values ``start .. start+len-1``.

    ``final`` is 0/1 for convergence to that homogeneous configuration,
    ``REPEATED`` when a state recurred without converging (a cycle, possibly
    a non-homogeneous fixed point) and ``UNRESOLVED`` when the budget ran
    out. ``steps`` is the convergence time, -1 otherwise.

    Loops are found at power-of-two checkpoints, so near the budget a state
    that ``classify`` already reports as a Cycle may still be ``UNRESOLVED``
    here; convergence values and times always agree.
    """

    n: int
    start: int
    final: np.ndarray
    steps: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return np.arange(self.start, self.start + self.final.size, dtype=np.int64)

    def expected(self) -> np.ndarray:
        v = self.values
        ones = np.zeros_like(v)
        for i in range(self.n):
            ones += (v >> i) & 1
        return (ones & 1).astype(np.int8)

    def failures(self) -> np.ndarray:
        """Indices (into this result) of configurations not solved by the rule."""
        return np.flatnonzero(self.final != self.expected())


def _sweep_chunk(rule: LocalRule, n: int, max_steps: int, start: int, stop: int) -> SweepResult:
    cur = configurations(n, start, stop)
    m = cur.shape[0]
    final = np.full(m, UNRESOLVED, dtype=np.int8)
    steps = np.full(m, -1, dtype=np.int32)
    idx = np.arange(m)
    # Brent-style checkpoints at t = 1, 2, 4, ...: a state equal to the last
    # checkpoint has entered a loop.
    saved = cur
    next_save = 1
    for t in range(max_steps + 1):
        nxt = step_batch(rule, cur)
        fixed = (nxt == cur).all(axis=1)
        homogeneous = cur.min(axis=1) == cur.max(axis=1)
        done = fixed & homogeneous
        final[idx[done]] = cur[done, 0]
        steps[idx[done]] = t
        looped = ~done & fixed
        if t > 0:
            looped |= ~done & (cur == saved).all(axis=1)
        final[idx[looped]] = REPEATED
        keep = ~(done | looped)
        if t == next_save:
            saved = cur
            next_save *= 2
        if t == max_steps or not keep.any():
            break
        cur, saved, idx = nxt[keep], saved[keep], idx[keep]
    return SweepResult(n, start, final, steps)


def _chunks(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(s, min(s + chunk, total)) for s in range(0, total, chunk)]


def sweep(rule: LocalRule, n: int, max_steps: Optional[int] = None, jobs: int = 1,
          start: int = 0, stop: Optional[int] = None, chunk: int = CHUNK) -> SweepResult:
    """Fate of every configuration with value in ``[start, stop)`` on ``n`` cells."""
    if max_steps is None:
        max_steps = default_max_steps(n)
    stop = 1 << n if stop is None else stop
    parts = [(a + start, b + start) for a, b in _chunks(stop - start, chunk)]
    if jobs == 1 or len(parts) == 1:
        results = [_sweep_chunk(rule, n, max_steps, a, b) for a, b in parts]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_sweep_chunk, rule, n, max_steps, a, b) for a, b in parts]
            results = [f.result() for f in futures]
    return SweepResult(n, start,
                       np.concatenate([r.final for r in results]),
                       np.concatenate([r.steps for r in results]))


def first_failure(rule: LocalRule, n: int, max_steps: Optional[int] = None,
                  jobs: int = 1) -> Optional[tuple[Configuration, Outcome]]:
    """Smallest-valued configuration the rule does not solve, with its outcome.

    Chunks are scanned in increasing order and the scan stops at the first
    chunk containing a failure.
    """
    if max_steps is None:
        max_steps = default_max_steps(n)
    total = 1 << n
    span = CHUNK * max(jobs, 1)
    for lo in range(0, total, span):
        res = sweep(rule, n, max_steps, jobs=jobs, start=lo, stop=min(lo + span, total))
        bad = res.failures()
        if bad.size:
            config = Configuration.from_int(int(res.start + bad[0]), n)
            return config, classify(rule, config, max_steps)
    return None


def _resolve_jobs(jobs: Optional[int]) -> int:
    if jobs is None:
        return os.cpu_count() or 1
    return max(1, jobs)


@dataclass(frozen=True)
class SizeResult:
    n: int
    checked: int
    counterexample: Optional[Configuration] = None
    outcome: Optional[Outcome] = None
    worst_steps: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def line(self) -> str:
        text = f"size={self.n} checked={self.checked} status={'pass' if self.passed else 'fail'}"
        if not self.passed:
            text += f" counterexample={self.counterexample} outcome={self.outcome.tag}"
        return text


@dataclass(frozen=True)
class PerfectionReport:
    sizes: tuple[SizeResult, ...]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sizes)

    @property
    def first_failure(self) -> Optional[SizeResult]:
        return next((s for s in self.sizes if not s.passed), None)

    def lines(self) -> list[str]:
        return [s.line() for s in self.sizes]


def verify_perfect(rule: LocalRule, sizes: Iterable[int], max_steps: Optional[int] = None,
                   jobs: Optional[int] = 1, budget_factor: Optional[int] = None,
                   allow_even: bool = False) -> PerfectionReport:
    """Check every configuration of every size; each must converge to its parity.

    ``max_steps`` fixes one budget for all sizes; otherwise each size ``n``
    gets ``budget_factor * n**2`` (default factor 8). Even sizes are refused
    unless ``allow_even`` is set, since no rule can converge to all-ones
    there.
    """
    sizes = list(sizes)
    if not allow_even:
        for n in sizes:
            if n % 2 == 0:
                raise ValueError(f"even lattice size {n}: the parity problem is ill-defined "
                                 "(the all-ones configuration has even parity)")
    jobs = _resolve_jobs(jobs)
    results = []
    for n in sizes:
        if n < 1:
            raise ValueError(f"invalid lattice size {n}")
        budget = max_steps if max_steps is not None else (
            default_max_steps(n) if budget_factor is None else default_max_steps(n, budget_factor))
        res = sweep(rule, n, budget, jobs=jobs)
        bad = res.failures()
        worst = int(res.steps.max()) if res.steps.size else 0
        if bad.size:
            config = Configuration.from_int(int(bad[0]), n)
            results.append(SizeResult(n, 1 << n, config, classify(rule, config, budget), worst))
        else:
            results.append(SizeResult(n, 1 << n, worst_steps=worst))
    return PerfectionReport(tuple(results))


def parity_changes(rule: LocalRule, n: int) -> np.ndarray:
    """Values of the n-cell configurations whose parity one step changes."""
    cells = configurations(n)
    out = step_batch(rule, cells)
    changed = (cells.sum(axis=1, dtype=np.int64) - out.sum(axis=1, dtype=np.int64)) & 1
    return np.flatnonzero(changed)


def fixed_points(rule: LocalRule, n: int) -> np.ndarray:
    """Values of all fixed points on ``n`` cells."""
    found = []
    for a, b in _chunks(1 << n, CHUNK):
        cells = configurations(n, a, b)
        found.append(a + np.flatnonzero((step_batch(rule, cells) == cells).all(axis=1)))
    return np.concatenate(found)


def block_decrease_times(rule: LocalRule, n: int, max_steps: Optional[int] = None,
                         values: Optional[Sequence[int]] = None) -> np.ndarray:
    """First t with block_count(F^t(c)) < block_count(c), or -1 within the budget.

    Homogeneous configurations (nothing to decrease) report -1.
    """
    if max_steps is None:
        max_steps = default_max_steps(n)
    if values is None:
        cur = configurations(n)
    else:
        vals = np.asarray(values, dtype=np.int64)
        cur = ((vals[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.uint8)
    m = cur.shape[0]
    first = np.full(m, -1, dtype=np.int32)
    initial = block_counts(cur)
    idx = np.flatnonzero(initial > 1)
    cur, initial = cur[idx], initial[idx]
    for t in range(1, max_steps + 1):
        if not idx.size:
            break
        cur = step_batch(rule, cur)
        dropped = block_counts(cur) < initial
        first[idx[dropped]] = t
        keep = ~dropped
        cur, initial, idx = cur[keep], initial[keep], idx[keep]
    return first
