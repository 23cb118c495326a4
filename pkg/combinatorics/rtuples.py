"""
R-tuples, R-chains and the two central bijections.

Every interface is 1-based: tuple positions i lie in [1, n] and carrels h in
[1, r+1], carrel h being the positions (q_{h-1}, q_h].
"""

import logging
from dataclasses import dataclass
from itertools import combinations, product
from math import factorial
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from combinatorics.errors import InputError, InvariantViolation
from combinatorics.settings import cross_check_enabled

logger = logging.getLogger(__name__)


def parse_int_list(text: str, what: str) -> Tuple[int, ...]:
    """Parse a comma list such as "3,8"; the empty string is the empty list"""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InputError(f"Malformed {what}: {text!r}") from None


@dataclass(frozen=True)
class RSet:
    """A subset R of [n-1] together with the dividers it induces"""

    n: int
    elements: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.n < 1:
            raise InputError(f"n must be positive, got {self.n}")
        previous = 0
        for q in self.elements:
            if q <= previous or q >= self.n:
                raise InputError(
                    f"R = {{{','.join(map(str, self.elements))}}} must be strictly "
                    f"increasing inside [1, {self.n - 1}]"
                )
            previous = q

    @classmethod
    def full(cls, n: int) -> "RSet":
        return cls(n, tuple(range(1, n)))

    @classmethod
    def trivial(cls, n: int) -> "RSet":
        return cls(n, ())

    @classmethod
    def parse(cls, text: str, n: int) -> "RSet":
        return cls(n, parse_int_list(text, "R"))

    @property
    def r(self) -> int:
        return len(self.elements)

    @property
    def dividers(self) -> Tuple[int, ...]:
        """q_0 = 0, q_1, ..., q_r, q_{r+1} = n"""
        return (0,) + self.elements + (self.n,)

    def q(self, h: int) -> int:
        return self.dividers[h]

    @property
    def carrel_sizes(self) -> Tuple[int, ...]:
        d = self.dividers
        return tuple(d[h] - d[h - 1] for h in range(1, len(d)))

    def p(self, h: int) -> int:
        return self.q(h) - self.q(h - 1)

    def carrel(self, h: int) -> range:
        return range(self.q(h - 1) + 1, self.q(h) + 1)

    def carrels(self) -> List[range]:
        return [self.carrel(h) for h in range(1, self.r + 2)]

    def carrel_of(self, i: int) -> int:
        for h in range(1, self.r + 2):
            if i <= self.q(h):
                return h
        raise InputError(f"Position {i} outside [1, {self.n}]")

    def is_full(self) -> bool:
        return self.r == self.n - 1

    def multinomial(self) -> int:
        count = factorial(self.n)
        for p in self.carrel_sizes:
            count //= factorial(p)
        return count

    def __str__(self) -> str:
        return ",".join(str(q) for q in self.elements)


@dataclass(frozen=True)
class RTuple:
    """An n-tuple over [n] equipped with the dividers of an RSet"""

    rset: RSet
    entries: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        n = self.rset.n
        if len(self.entries) != n:
            raise InputError(f"An R-tuple for n={n} needs {n} entries, got {len(self.entries)}")
        for value in self.entries:
            if not 1 <= value <= n:
                raise InputError(f"Entry {value} outside [1, {n}]")

    @classmethod
    def parse(cls, text: str) -> "RTuple":
        """Read "2,4,6;1,5,7,8,9;3": semicolons mark the dividers, n is the entry count"""
        chunks = [parse_int_list(chunk, "R-tuple") for chunk in text.strip().split(";")]
        if any(len(chunk) == 0 for chunk in chunks):
            raise InputError(f"Empty carrel in R-tuple {text!r}")
        entries: List[int] = []
        dividers: List[int] = []
        for chunk in chunks:
            entries.extend(chunk)
            dividers.append(len(entries))
        return cls(RSet(len(entries), tuple(dividers[:-1])), tuple(entries))

    @classmethod
    def identity(cls, rset: RSet) -> "RTuple":
        return cls(rset, tuple(range(1, rset.n + 1)))

    @classmethod
    def maximal(cls, rset: RSet) -> "RTuple":
        """Carrel h holds the values n-q_h+1, ..., n-q_(h-1)"""
        n = rset.n
        entries: List[int] = []
        for h in range(1, rset.r + 2):
            entries.extend(range(n - rset.q(h) + 1, n - rset.q(h - 1) + 1))
        return cls(rset, tuple(entries))

    @property
    def n(self) -> int:
        return self.rset.n

    def at(self, i: int) -> int:
        return self.entries[i - 1]

    def cohort(self, h: int) -> Tuple[int, ...]:
        return self.entries[self.rset.q(h - 1): self.rset.q(h)]

    def cohorts(self) -> List[Tuple[int, ...]]:
        return [self.cohort(h) for h in range(1, self.rset.r + 2)]

    def prefix(self, h: int) -> FrozenSet[int]:
        """The union of the first h cohorts"""
        return frozenset(self.entries[: self.rset.q(h)])

    def standardize(self) -> "RTuple":
        """Sort every cohort into increasing order"""
        entries: List[int] = []
        for cohort in self.cohorts():
            entries.extend(sorted(cohort))
        return RTuple(self.rset, tuple(entries))

    def to_json(self) -> Dict:
        return {"n": self.n, "r": list(self.rset.elements), "entries": list(self.entries)}

    @classmethod
    def from_json(cls, data: Dict) -> "RTuple":
        return cls(RSet(int(data["n"]), tuple(data["r"])), tuple(data["entries"]))

    def __str__(self) -> str:
        return ";".join(",".join(str(v) for v in cohort) for cohort in self.cohorts())


@dataclass(frozen=True)
class RChain:
    """Nested sets B_0 = {} < B_1 < ... < B_{r+1} = [n] with |B_h| = q_h"""

    rset: RSet
    blocks: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        rset = self.rset
        if len(blocks) != rset.r + 2:
            raise InputError(f"An R-chain needs {rset.r + 2} sets, got {len(blocks)}")
        if blocks[-1] != frozenset(range(1, rset.n + 1)):
            raise InputError(f"The top set of an R-chain must be [{rset.n}]")
        for h, block in enumerate(blocks):
            if len(block) != rset.q(h):
                raise InputError(f"|B_{h}| must be {rset.q(h)}, got {len(block)}")
            if h and not blocks[h - 1] < block:
                raise InputError(f"B_{h - 1} is not strictly contained in B_{h}")

    def block(self, h: int) -> FrozenSet[int]:
        return self.blocks[h]

    def difference(self, h: int) -> FrozenSet[int]:
        """B_h minus B_{h-1}"""
        return self.blocks[h] - self.blocks[h - 1]

    def to_json(self) -> Dict:
        return {
            "n": self.rset.n,
            "r": list(self.rset.elements),
            "blocks": [sorted(b) for b in self.blocks],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "RChain":
        rset = RSet(int(data["n"]), tuple(data["r"]))
        return cls(rset, tuple(frozenset(b) for b in data["blocks"]))

    def __str__(self) -> str:
        parts = []
        for block in self.blocks:
            parts.append("{" + ",".join(str(v) for v in sorted(block)) + "}" if block else "{}")
        return " < ".join(parts)


@dataclass(frozen=True)
class RTupleClassification:
    upper: bool
    flag: bool
    r_increasing: bool
    r_flag: bool
    r_permutation: bool

    def to_json(self) -> Dict[str, bool]:
        return {
            "upper": self.upper,
            "flag": self.flag,
            "r_increasing": self.r_increasing,
            "r_flag": self.r_flag,
            "r_permutation": self.r_permutation,
        }


def clump_decompose(values: Iterable[int]) -> List[Tuple[int, ...]]:
    """Split a finite set of integers into maximal runs of consecutive integers"""
    clumps: List[List[int]] = []
    for value in sorted(set(values)):
        if clumps and clumps[-1][-1] == value - 1:
            clumps[-1].append(value)
        else:
            clumps.append([value])
    return [tuple(clump) for clump in clumps]


def is_upper(t: RTuple) -> bool:
    return all(t.at(i) >= i for i in range(1, t.n + 1))


def is_flag(t: RTuple) -> bool:
    return all(a <= b for a, b in zip(t.entries, t.entries[1:]))


def is_r_increasing(t: RTuple) -> bool:
    return all(
        all(a < b for a, b in zip(cohort, cohort[1:])) for cohort in t.cohorts()
    )


def is_r_permutation(t: RTuple) -> bool:
    return len(set(t.entries)) == t.n and is_r_increasing(t)


def is_r_flag(t: RTuple) -> bool:
    """R-increasing upper tuple whose carrels dominate their predecessors from the right"""
    if not (is_upper(t) and is_r_increasing(t)):
        return False
    rset = t.rset
    for h in range(1, rset.r + 1):
        for u in range(1, min(rset.p(h + 1), rset.p(h)) + 1):
            if t.at(rset.q(h + 1) + 1 - u) < t.at(rset.q(h) + 1 - u):
                return False
    return True


def classify_rtuple(t: RTuple) -> RTupleClassification:
    return RTupleClassification(
        upper=is_upper(t),
        flag=is_flag(t),
        r_increasing=is_r_increasing(t),
        r_flag=is_r_flag(t),
        r_permutation=is_r_permutation(t),
    )


def _catch_up_length(t: RTuple, h: int) -> int:
    """How many leading entries of carrel h+1 must repeat the values just below t_{q_h}"""
    top = t.at(t.rset.q(h))
    first = t.at(t.rset.q(h) + 1)
    return top - first + 1 if top >= first else 0


def is_gapless(t: RTuple) -> bool:
    if not (is_upper(t) and is_r_increasing(t)):
        return False
    rset = t.rset
    for h in range(1, rset.r + 1):
        s = _catch_up_length(t, h)
        if s == 0:
            continue
        if s > rset.p(h + 1):
            return False
        top = t.at(rset.q(h))
        expected = tuple(range(top - s + 1, top + 1))
        if t.entries[rset.q(h): rset.q(h) + s] != expected:
            return False
    return True


def _require_r_permutation(p: RTuple) -> None:
    if not is_r_permutation(p):
        raise InputError(f"({p}) is not an R-permutation for R = {{{p.rset}}}")


def r312_pattern(p: RTuple) -> Optional[Tuple[int, int, int]]:
    """First positions (a, b, c) in three successive-carrel ranges with p_b < p_c < p_a"""
    _require_r_permutation(p)
    rset = p.rset
    n = rset.n
    for h in range(1, rset.r):
        for a in range(1, rset.q(h) + 1):
            for b in range(rset.q(h) + 1, rset.q(h + 1) + 1):
                if p.at(b) >= p.at(a):
                    continue
                for c in range(rset.q(h + 1) + 1, n + 1):
                    if p.at(b) < p.at(c) < p.at(a):
                        return a, b, c
    return None


def _first_interval_gap(p: RTuple) -> Optional[int]:
    """
    Smallest h whose open interval (min of carrel h+1, max of the first q_h
    entries) is not covered by the first q_{h+1} entries; None when every h passes
    """
    rset = p.rset
    for h in range(1, rset.r + 1):
        low = min(p.cohort(h + 1))
        high = max(p.entries[: rset.q(h)])
        covered = p.prefix(h + 1)
        if any(v not in covered for v in range(low + 1, high)):
            return h
    return None


def is_r312_avoiding(p: RTuple) -> bool:
    _require_r_permutation(p)
    avoiding = _first_interval_gap(p) is None
    if cross_check_enabled():
        by_definition = r312_pattern(p) is None
        if by_definition != avoiding:
            raise InvariantViolation(
                f"R-312 avoidance of ({p}): pattern scan says {by_definition}, "
                f"interval criterion says {avoiding}"
            )
    return avoiding


def chain_of_perm(p: RTuple) -> RChain:
    _require_r_permutation(p)
    rset = p.rset
    return RChain(rset, tuple(p.prefix(h) for h in range(rset.r + 2)))


def perm_of_chain(c: RChain) -> RTuple:
    entries: List[int] = []
    for h in range(1, c.rset.r + 2):
        entries.extend(sorted(c.difference(h)))
    return RTuple(c.rset, tuple(entries))


def _rcd_step(upper: FrozenSet[int], lower: FrozenSet[int]) -> bool:
    new = upper - lower
    clumps = clump_decompose(upper)
    for e in range(len(clumps)):
        tail = frozenset(v for clump in clumps[e + 1:] for v in clump)
        if tail <= new <= tail | frozenset(clumps[e]):
            return True
    return False


def rcd_variants(c: RChain) -> Dict[str, bool]:
    """Equivalent reformulations of R-rightmost clump deletion, evaluated separately"""
    results = {"clumps": True, "closed_interval": True, "open_interval": True, "largest_missing": True}
    for h in range(1, c.rset.r + 1):
        lower, upper = c.block(h), c.block(h + 1)
        new = upper - lower
        b, m = min(new), max(lower)
        if not _rcd_step(upper, lower):
            results["clumps"] = False
        if any(v not in upper for v in range(b, m + 1)):
            results["closed_interval"] = False
        if any(v not in upper for v in range(b + 1, m)):
            results["open_interval"] = False
        below = sorted(v for v in new if v < m)
        missing = [v for v in range(1, m + 1) if v not in lower]
        if below != missing[len(missing) - len(below):]:
            results["largest_missing"] = False
    return results


def full_case_rcd_variants(c: RChain) -> Dict[str, bool]:
    """Single-deletion reformulations, only meaningful when R = [n-1]"""
    if not c.rset.is_full():
        raise InputError("Single-deletion reformulations need R = [n-1]")
    results = {name: True for name in ("upper_max", "lower_max", "inside_lower", "largest_gap", "largest_gap_upper")}
    for h in range(1, c.rset.n):
        lower, upper = c.block(h), c.block(h + 1)
        (b,) = tuple(upper - lower)
        m_low, m_up = max(lower), max(upper)
        if any(v not in upper for v in range(b, m_up + 1)):
            results["upper_max"] = False
        if any(v not in upper for v in range(b, m_low + 1)):
            results["lower_max"] = False
        if any(v not in lower for v in range(b + 1, m_low)):
            results["inside_lower"] = False
        if b < m_low and b != max(v for v in range(1, m_low + 1) if v not in lower):
            results["largest_gap"] = False
        if b != max(v for v in range(1, m_up + 1) if v not in lower):
            results["largest_gap_upper"] = False
    return results


def is_rcd_chain(c: RChain) -> bool:
    """Whether every B_{h+1} \\ B_h consists of whole top clumps plus part of the next one"""
    verdict = all(_rcd_step(c.block(h + 1), c.block(h)) for h in range(1, c.rset.r + 1))
    if cross_check_enabled():
        variants = rcd_variants(c)
        if c.rset.is_full():
            variants.update(full_case_rcd_variants(c))
        disagreeing = sorted(name for name, value in variants.items() if value != verdict)
        if disagreeing:
            raise InvariantViolation(
                f"Clump-deletion reformulations {disagreeing} disagree on chain {c}"
            )
    return verdict


def rank_tuple(p: RTuple) -> RTuple:
    """Carrel h receives the p_h largest values among the first q_h entries, ascending"""
    _require_r_permutation(p)
    rset = p.rset
    entries: List[int] = []
    for h in range(1, rset.r + 2):
        entries.extend(sorted(p.prefix(h))[-rset.p(h):])
    return RTuple(rset, tuple(entries))


def gapless_to_perm(g: RTuple) -> RTuple:
    """Inverse of rank_tuple on R-312-avoiding permutations"""
    if not is_gapless(g):
        raise InputError(f"({g}) is not a gapless R-tuple")
    rset = g.rset
    entries = list(g.entries[: rset.q(1)])
    for h in range(1, rset.r + 1):
        s = _catch_up_length(g, h)
        top = g.at(rset.q(h))
        used = set(entries)
        available = [v for v in range(top, 0, -1) if v not in used]
        entries.extend(sorted(available[:s]))
        entries.extend(g.entries[rset.q(h) + s: rset.q(h + 1)])
    return RTuple(rset, tuple(entries))


def multiperm_of_perm(p: RTuple) -> Tuple[int, ...]:
    """The word whose v-th letter is the carrel holding value v"""
    _require_r_permutation(p)
    word = [0] * p.n
    for i, value in enumerate(p.entries, start=1):
        word[value - 1] = p.rset.carrel_of(i)
    return tuple(word)


def avoids_231(word: Sequence[int]) -> bool:
    for i, j, k in combinations(range(len(word)), 3):
        if word[k] < word[i] < word[j]:
            return False
    return True


def iter_r_permutations(rset: RSet) -> Iterator[RTuple]:
    """All R-permutations in lexicographic order (no guard)"""

    def extend(h: int, remaining: Tuple[int, ...], prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if h > rset.r + 1:
            yield prefix
            return
        for block in combinations(remaining, rset.p(h)):
            rest = tuple(v for v in remaining if v not in block)
            yield from extend(h + 1, rest, prefix + block)

    for entries in extend(1, tuple(range(1, rset.n + 1)), ()):
        yield RTuple(rset, entries)


def iter_ui_tuples(rset: RSet) -> Iterator[RTuple]:
    """All R-increasing upper tuples in lexicographic order (no guard)"""
    per_carrel = []
    for h in range(1, rset.r + 2):
        start = rset.q(h - 1) + 1
        per_carrel.append([
            combo
            for combo in combinations(range(1, rset.n + 1), rset.p(h))
            if all(value >= start + offset for offset, value in enumerate(combo))
        ])
    for pieces in product(*per_carrel):
        yield RTuple(rset, tuple(v for piece in pieces for v in piece))
