"""
Partitions, semistandard tableaux, lambda-keys, row end lists and row end
max tableaux.

Tableaux are stored column-major: columns[j-1][i-1] is the value in column j,
row i (the (j, i) transpose indexing). The latent 0th column is never stored.
"""

import json
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from combinatorics.errors import InputError, TableauShapeError
from combinatorics.rtuples import (
    RChain,
    RSet,
    RTuple,
    chain_of_perm,
    is_r_increasing,
    is_upper,
    parse_int_list,
)

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


@dataclass(frozen=True)
class Partition:
    """lambda_1 >= ... >= lambda_n >= 0; trailing zeros fix n"""

    parts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise InputError("A partition needs at least one part")
        if any(part < 0 for part in self.parts):
            raise InputError(f"Negative part in {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise InputError(f"Parts {self.parts} are not weakly decreasing")

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(parse_int_list(text, "partition"))

    @classmethod
    def minimal_for(cls, rset: RSet) -> "Partition":
        """One column of each length in R and no others"""
        return cls(tuple(sum(1 for q in rset.elements if q >= i) for i in range(1, rset.n + 1)))

    @property
    def n(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """lambda_i, with lambda_{n+1} = 0"""
        return self.parts[i - 1] if i <= self.n else 0

    @property
    def width(self) -> int:
        return self.parts[0]

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def column_lengths(self) -> Tuple[int, ...]:
        return tuple(sum(1 for part in self.parts if part >= j) for j in range(1, self.width + 1))

    def column_length(self, j: int) -> int:
        return sum(1 for part in self.parts if part >= j)

    @property
    def rset(self) -> RSet:
        """R_lambda: the distinct column lengths below n"""
        return RSet(self.n, tuple(sorted({z for z in self.column_lengths if z < self.n})))

    def columns_of_length(self, q: int) -> range:
        return range(self.part(q + 1) + 1, self.part(q) + 1)

    def rightmost_column_of_length(self, q: int) -> int:
        return self.part(q)

    def cells(self) -> List[Cell]:
        """All (j, i) in column-major order"""
        return [(j, i) for j, zeta in enumerate(self.column_lengths, start=1) for i in range(1, zeta + 1)]

    def contains(self, j: int, i: int) -> bool:
        return 1 <= j <= self.width and 1 <= i <= self.column_length(j)

    def __str__(self) -> str:
        return ",".join(str(part) for part in self.parts)


@dataclass(frozen=True)
class Tableau:
    """A filling of a partition shape, one strictly-increasing tuple per column"""

    shape: Partition
    columns: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        columns = tuple(tuple(column) for column in self.columns)
        object.__setattr__(self, "columns", columns)
        lengths = self.shape.column_lengths
        if len(columns) != len(lengths):
            raise TableauShapeError(
                f"Shape ({self.shape}) has {len(lengths)} columns, got {len(columns)}"
            )
        for j, (column, zeta) in enumerate(zip(columns, lengths), start=1):
            if len(column) != zeta:
                raise TableauShapeError(f"Column {j} must have {zeta} values, got {len(column)}")
            for value in column:
                if not 1 <= value <= self.shape.n:
                    raise TableauShapeError(f"Value {value} in column {j} outside [1, {self.shape.n}]")

    @classmethod
    def minimal(cls, shape: Partition) -> "Tableau":
        return cls(shape, tuple(tuple(range(1, zeta + 1)) for zeta in shape.column_lengths))

    @classmethod
    def from_flat(cls, shape: Partition, vector: Iterable[int]) -> "Tableau":
        values = list(vector)
        columns = []
        start = 0
        for zeta in shape.column_lengths:
            columns.append(tuple(values[start: start + zeta]))
            start += zeta
        if start != len(values):
            raise TableauShapeError(f"Vector of length {len(values)} does not fit |lambda| = {start}")
        return cls(shape, tuple(columns))

    @property
    def n(self) -> int:
        return self.shape.n

    def value(self, j: int, i: int) -> int:
        return self.columns[j - 1][i - 1]

    def get(self, j: int, i: int, default: Optional[int] = None) -> Optional[int]:
        if self.shape.contains(j, i):
            return self.columns[j - 1][i - 1]
        return default

    def column_set(self, j: int) -> FrozenSet[int]:
        return frozenset(self.columns[j - 1])

    def flatten(self) -> Tuple[int, ...]:
        return tuple(value for column in self.columns for value in column)

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "lambda": list(self.shape.parts),
            "columns": [list(column) for column in self.columns],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "Tableau":
        try:
            shape = Partition(tuple(int(v) for v in data["lambda"]))
            columns = tuple(tuple(int(v) for v in column) for column in data["columns"])
        except (KeyError, TypeError, ValueError) as e:
            raise TableauShapeError(f"Malformed tableau JSON: {e}") from None
        if "n" in data and int(data["n"]) != shape.n:
            raise TableauShapeError(f"n={data['n']} disagrees with lambda of length {shape.n}")
        return cls(shape, columns)

    @classmethod
    def loads(cls, text: str) -> "Tableau":
        try:
            return cls.from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise TableauShapeError(f"Tableau input is not JSON: {e}") from None

    def rows(self) -> List[List[int]]:
        return [
            [self.value(j, i) for j in range(1, self.shape.part(i) + 1)]
            for i in range(1, self.n + 1)
            if self.shape.part(i) > 0
        ]

    def __str__(self) -> str:
        if not self.columns:
            return "(null tableau)"
        width = len(str(self.n))
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in self.rows())


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    reason: Optional[str] = None
    cells: Optional[Tuple[Cell, Cell]] = None

    def __bool__(self) -> bool:
        return self.valid


def validate_tableau(t: Tableau) -> ValidationReport:
    """Columns strictly increase southward, rows weakly increase eastward, trivial columns are inert"""
    n = t.n
    for j, column in enumerate(t.columns, start=1):
        for i in range(1, len(column)):
            if column[i - 1] >= column[i]:
                return ValidationReport(False, "column not strictly increasing", ((j, i), (j, i + 1)))
        if len(column) == n and column != tuple(range(1, n + 1)):
            return ValidationReport(False, "trivial-length column is not inert", ((j, 1), (j, n)))
        if j < len(t.columns):
            east = t.columns[j]
            for i in range(1, len(east) + 1):
                if column[i - 1] > east[i - 1]:
                    return ValidationReport(False, "row not weakly increasing", ((j, i), (j + 1, i)))
    return ValidationReport(True)


def is_key(t: Tableau) -> bool:
    return all(t.column_set(j) >= t.column_set(j + 1) for j in range(1, t.shape.width))


def column_of_set(values: Iterable[int], n: int) -> Tableau:
    column = tuple(sorted(set(values)))
    if any(not 1 <= v <= n for v in column):
        raise InputError(f"Values {column} not inside [1, {n}]")
    shape = Partition(tuple(1 if i <= len(column) else 0 for i in range(1, n + 1)))
    return Tableau(shape, (column,) if column else ())


def key_of_chain(c: RChain, shape: Partition) -> Tableau:
    """Copies of Y(B_h) for each column of length q_h, inert columns for length n"""
    if c.rset != shape.rset:
        raise InputError(
            f"Chain has R = {{{c.rset}}} (n={c.rset.n}) but shape ({shape}) has R = {{{shape.rset}}}"
        )
    dividers = c.rset.dividers
    columns = tuple(tuple(sorted(c.block(dividers.index(zeta)))) for zeta in shape.column_lengths)
    return Tableau(shape, columns)


def key_of_perm(p: RTuple, shape: Partition) -> Tableau:
    return key_of_chain(chain_of_perm(p), shape)


def row_end_list(t: Tableau) -> RTuple:
    """omega_i = T_{lambda_i}(i), reading the latent column when lambda_i = 0"""
    shape = t.shape
    entries = tuple(
        t.value(shape.part(i), i) if shape.part(i) > 0 else i for i in range(1, t.n + 1)
    )
    return RTuple(shape.rset, entries)


def row_end_max(shape: Partition, a: RTuple) -> Tableau:
    """The entrywise largest tableau of this shape whose row end list is a"""
    rset = shape.rset
    if a.rset != rset:
        raise InputError(f"Tuple has R = {{{a.rset}}} but shape ({shape}) has R = {{{rset}}}")
    if not (is_r_increasing(a) and is_upper(a)):
        raise InputError(f"({a}) is not an R-increasing upper tuple")
    n = shape.n
    dividers = rset.dividers
    filled: Dict[int, List[int]] = {}
    for j in range(shape.width, shape.part(n), -1):
        zeta = shape.column_length(j)
        h = dividers.index(zeta)
        column = [0] * zeta
        for i in rset.carrel(h):
            column[i - 1] = a.at(i)
        for i in range(rset.q(h - 1), 0, -1):
            column[i - 1] = min(column[i] - 1, filled[j + 1][i - 1])
        filled[j] = column
    for j in range(1, shape.part(n) + 1):
        filled[j] = list(range(1, n + 1))
    return Tableau(shape, tuple(tuple(filled[j]) for j in range(1, shape.width + 1)))


def is_gapless_key(y: Tableau) -> bool:
    """Between b and m the column of the next length must hold b, b+1, ..., m"""
    if not is_key(y):
        raise InputError("Gaplessness is only defined for lambda-keys")
    shape = y.shape
    rset = shape.rset
    for h in range(1, rset.r):
        shorter = y.column_set(shape.rightmost_column_of_length(rset.q(h)))
        column = y.columns[shape.rightmost_column_of_length(rset.q(h + 1)) - 1]
        b = min(set(column) - shorter)
        m = max(shorter)
        if b > m:
            continue
        i = column.index(b)
        k = column.index(m)
        if column[i: k + 1] != tuple(range(b, m + 1)):
            return False
    return True


def tableau_leq(s: Tableau, t: Tableau) -> bool:
    if s.shape != t.shape:
        raise InputError(f"Cannot compare shapes ({s.shape}) and ({t.shape})")
    return all(a <= b for a, b in zip(s.flatten(), t.flatten()))
