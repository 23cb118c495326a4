"""
The scanning method for the right key of a tableau: earliest weakly
increasing subsequences of column bottoms, scanning paths, the residual
tableaux left behind by those paths and the interval sets built from them.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from combinatorics.errors import InputError, InvariantViolation
from combinatorics.rtuples import RTuple
from combinatorics.settings import cross_check_enabled
from combinatorics.tableaux import Cell, Partition, Tableau, key_of_perm, validate_tableau

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScanResult:
    source: Tableau
    s: Tableau
    paths: Dict[Cell, Tuple[Cell, ...]]

    def path(self, l: int, k: int) -> Tuple[Cell, ...]:
        return self.paths[(l, k)]

    def to_json(self) -> Dict:
        return {
            "source": self.source.to_json(),
            "scanning_tableau": self.s.to_json(),
            "paths": [
                {"origin": list(origin), "cells": [list(cell) for cell in cells]}
                for origin, cells in sorted(self.paths.items())
            ],
        }


@dataclass(frozen=True)
class ASet:
    """Either empty or the integer interval [lo, hi]"""

    lo: Optional[int] = None
    hi: Optional[int] = None

    def __post_init__(self):
        if (self.lo is None) != (self.hi is None):
            raise InputError("An interval needs both bounds or neither")
        if self.lo is not None and self.lo > self.hi:
            raise InputError(f"Empty interval [{self.lo}, {self.hi}] must be flagged empty")

    @property
    def is_empty(self) -> bool:
        return self.lo is None

    def __contains__(self, value: int) -> bool:
        return not self.is_empty and self.lo <= value <= self.hi

    def __str__(self) -> str:
        return "{}" if self.is_empty else f"[{self.lo}, {self.hi}]"


EMPTY = ASet()


def ewis(seq: Sequence[int]) -> Tuple[int, ...]:
    """1-based indices of the earliest weakly increasing subsequence"""
    if not seq:
        raise InputError("EWIS of an empty sequence")
    chosen = [1]
    current = seq[0]
    for index in range(2, len(seq) + 1):
        if seq[index - 1] >= current:
            chosen.append(index)
            current = seq[index - 1]
    return tuple(chosen)


def _require_semistandard(t: Tableau) -> None:
    report = validate_tableau(t)
    if not report:
        raise InputError(f"Not a semistandard tableau: {report.reason} at {report.cells}")


def _scan_pass(t: Tableau, l: int) -> Iterator[Tuple[int, Tuple[Cell, ...], int, int]]:
    """
    Extract the scanning paths originating in column l, bottom row first.
    Yields (k, path, final EWIS value, m(U^(l,k))) where the residual maximum
    is read before the path from (l, k) is removed.
    """
    shape = t.shape
    heights = {j: shape.column_length(j) for j in range(l, shape.width + 1)}
    for k in range(shape.column_length(l), 0, -1):
        residual = max(
            (t.value(j, heights[j]) for j in heights if j > l and heights[j] > 0),
            default=1,
        )
        active = [j for j in sorted(heights) if heights[j] > 0]
        bottoms = [t.value(j, heights[j]) for j in active]
        chosen = ewis(bottoms)
        path = tuple((active[x - 1], heights[active[x - 1]]) for x in chosen)
        for j, _ in path:
            heights[j] -= 1
        if cross_check_enabled():
            remaining = [heights[j] for j in sorted(heights)]
            if any(a < b for a, b in zip(remaining, remaining[1:])):
                raise InvariantViolation(f"Unmarked cells {remaining} after path {path} are not a shape")
        yield k, path, bottoms[chosen[-1] - 1], residual


def scanning_tableau(t: Tableau) -> ScanResult:
    _require_semistandard(t)
    shape = t.shape
    columns: List[Tuple[int, ...]] = []
    paths: Dict[Cell, Tuple[Cell, ...]] = {}
    for l in range(1, shape.width + 1):
        column = [0] * shape.column_length(l)
        for k, path, value, residual in _scan_pass(t, l):
            if cross_check_enabled() and value != max(t.value(l, k), residual):
                raise InvariantViolation(
                    f"S_{l}({k}) = {value} but max(T_{l}({k}), m(U)) = {max(t.value(l, k), residual)}"
                )
            column[k - 1] = value
            paths[(l, k)] = path
        columns.append(tuple(column))
    result = ScanResult(t, Tableau(shape, tuple(columns)), paths)
    logger.debug(f"Scanned tableau of shape ({shape}) into {result.s.columns}")
    return result


def paths_partition_cells(result: ScanResult) -> bool:
    """Each pass's paths cover the cells weakly east of its column exactly once"""
    shape = result.source.shape
    for l in range(1, shape.width + 1):
        marked = [cell for (origin_l, _), cells in result.paths.items() if origin_l == l for cell in cells]
        expected = [(j, i) for (j, i) in shape.cells() if j >= l]
        if sorted(marked) != sorted(expected):
            return False
    return True


def _require_cell(shape: Partition, l: int, k: int) -> None:
    if not shape.contains(l, k):
        raise InputError(f"Cell ({l}, {k}) is not in shape ({shape})")


def residual_max(t: Tableau, l: int, k: int) -> int:
    """m(U^(l,k)): the largest value left east of column l once the paths below row k are gone"""
    _require_semistandard(t)
    _require_cell(t.shape, l, k)
    for row, _, _, residual in _scan_pass(t, l):
        if row == k:
            return residual
    raise InputError(f"Cell ({l}, {k}) is not in shape ({t.shape})")


def residual_maxima(t: Tableau) -> Dict[Cell, int]:
    """All m(U^(l,k)) from a single scan"""
    _require_semistandard(t)
    maxima: Dict[Cell, int] = {}
    for l in range(1, t.shape.width + 1):
        for k, _, _, residual in _scan_pass(t, l):
            maxima[(l, k)] = residual
    return maxima


def _interval_for(t: Tableau, y: Tableau, l: int, k: int, residual: int) -> ASet:
    if residual > y.value(l, k):
        return EMPTY
    n = t.n
    hi = min(y.value(l, k), t.get(l, k + 1, n + 1) - 1, t.get(l + 1, k, n))
    return ASet(k, hi)


def a_set(t: Tableau, p: RTuple, shape: Partition, l: int, k: int) -> ASet:
    if t.shape != shape:
        raise InputError(f"Tableau shape ({t.shape}) differs from ({shape})")
    _require_cell(shape, l, k)
    y = key_of_perm(p, shape)
    return _interval_for(t, y, l, k, residual_max(t, l, k))


def a_sets_for_key(t: Tableau, y: Tableau) -> Dict[Cell, ASet]:
    """Every A-set of t against the key y, using one residual sweep"""
    if t.shape != y.shape:
        raise InputError(f"Tableau shape ({t.shape}) differs from ({y.shape})")
    maxima = residual_maxima(t)
    return {cell: _interval_for(t, y, cell[0], cell[1], maxima[cell]) for cell in t.shape.cells()}
