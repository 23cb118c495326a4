"""
Enumeration Service
Generators and counters for the families counted by the parabolic Catalan
numbers, their totals over all R, and the matching OEIS sequences
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from combinatorics.errors import InputError, InvariantViolation, ResourceGuardError
from combinatorics.rtuples import (
    RChain,
    RSet,
    RTuple,
    avoids_231,
    chain_of_perm,
    clump_decompose,
    is_gapless,
    is_r312_avoiding,
    is_rcd_chain,
    iter_r_permutations,
    iter_ui_tuples,
    multiperm_of_perm,
)
from combinatorics.settings import Settings, cross_check_enabled
from combinatorics.tableaux import Partition, Tableau, is_gapless_key, key_of_perm

logger = logging.getLogger(__name__)

PATTERNS: Tuple[Tuple[int, int, int], ...] = tuple(permutations((1, 2, 3)))

OEIS_SEQUENCES = ("a220097", "a226316")

OEIS_PREFIXES: Dict[str, Tuple[int, ...]] = {
    "a220097": (1, 6, 43, 352, 3114),
    "a226316": (1, 3, 12, 56, 284),
}

GeneralizedChain = Tuple[FrozenSet[int], ...]


def _permutation_limit(limit: Optional[int]) -> int:
    return limit if limit is not None else Settings.from_env().max_permutations


def _describe(rset: RSet) -> str:
    return f"n={rset.n}, R={{{rset}}}"


def gen_r_permutations(rset: RSet, limit: Optional[int] = None) -> Iterator[RTuple]:
    limit = _permutation_limit(limit)
    if rset.multinomial() > limit:
        raise ResourceGuardError(f"R-permutation stream for {_describe(rset)}", limit)
    yield from iter_r_permutations(rset)


def gen_r312_avoiding(rset: RSet, limit: Optional[int] = None) -> Iterator[RTuple]:
    """
    Avoiding R-permutations in lexicographic order, built carrel by carrel.
    A new cohort is rejected as soon as the values strictly between its
    minimum and the previous maximum are not all present.
    """
    limit = _permutation_limit(limit)
    checking = cross_check_enabled()

    def extend(h: int, remaining: Tuple[int, ...], prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if h > rset.r + 1:
            yield prefix
            return
        for block in combinations(remaining, rset.p(h)):
            if h > 1:
                covered = set(prefix) | set(block)
                if any(v not in covered for v in range(block[0] + 1, max(prefix))):
                    continue
            rest = tuple(v for v in remaining if v not in block)
            yield from extend(h + 1, rest, prefix + block)

    produced = 0
    for entries in extend(1, tuple(range(1, rset.n + 1)), ()):
        produced += 1
        if produced > limit:
            raise ResourceGuardError(f"Avoiding permutations for {_describe(rset)}", limit)
        p = RTuple(rset, entries)
        if checking and not is_r312_avoiding(p):
            raise InvariantViolation(f"Pruned generator produced containing ({p})")
        yield p


def count_cnr(rset: RSet, limit: Optional[int] = None) -> int:
    return sum(1 for _ in gen_r312_avoiding(rset, limit))


def gen_gapless(rset: RSet, limit: Optional[int] = None) -> Iterator[RTuple]:
    limit = _permutation_limit(limit)
    if rset.multinomial() > limit:
        raise ResourceGuardError(f"R-increasing upper tuples for {_describe(rset)}", limit)
    return (t for t in iter_ui_tuples(rset) if is_gapless(t))


def gen_rcd_chains(rset: RSet, limit: Optional[int] = None) -> Iterator[RChain]:
    for p in gen_r_permutations(rset, limit):
        chain = chain_of_perm(p)
        if is_rcd_chain(chain):
            yield chain


def gen_gapless_keys(shape: Partition, limit: Optional[int] = None) -> Iterator[Tableau]:
    for p in gen_r_permutations(shape.rset, limit):
        key = key_of_perm(p, shape)
        if is_gapless_key(key):
            yield key


def gen_231_avoiding_multiperms(rset: RSet, limit: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Words over {1^p_1, ..., (r+1)^p_(r+1)} avoiding 231"""
    words = sorted(multiperm_of_perm(p) for p in gen_r_permutations(rset, limit))
    return (word for word in words if avoids_231(word))


@dataclass(frozen=True)
class ShapeTuple:
    """One partition per carrel h in [r], padded with zeros to p_h rows"""

    rset: RSet
    shapes: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        shapes = tuple(tuple(mu) for mu in self.shapes)
        object.__setattr__(self, "shapes", shapes)
        rset = self.rset
        if len(shapes) != rset.r:
            raise InputError(f"Need {rset.r} shapes for R = {{{rset}}}, got {len(shapes)}")
        for h, mu in enumerate(shapes, start=1):
            width = rset.n - rset.q(h)
            if len(mu) != rset.p(h):
                raise InputError(f"Shape {h} must have exactly {rset.p(h)} rows, got {mu}")
            if any(a < b for a, b in zip(mu, mu[1:])) or any(not 0 <= part <= width for part in mu):
                raise InputError(f"Shape {h} = {mu} is not a partition inside {rset.p(h)} x {width}")

    def satisfies_row_condition(self) -> bool:
        """First row of each shape is at most the next shape's last row plus that row's multiplicity"""
        for current, following in zip(self.shapes, self.shapes[1:]):
            last = following[-1]
            if current[0] > last + following.count(last):
                return False
        return True

    def to_json(self) -> Dict:
        return {"n": self.rset.n, "r": list(self.rset.elements), "shapes": [list(mu) for mu in self.shapes]}

    def __str__(self) -> str:
        return " | ".join("(" + ",".join(str(part) for part in mu if part) + ")" for mu in self.shapes)


def shape_tuple_of_gapless(g: RTuple) -> ShapeTuple:
    """Subtract the staircase q_(h-1)+1, ..., q_h from carrel h and read the excess as a shape"""
    if not is_gapless(g):
        raise InputError(f"({g}) is not a gapless R-tuple")
    rset = g.rset
    shapes = []
    for h in range(1, rset.r + 1):
        excess = [g.at(i) - i for i in rset.carrel(h)]
        shapes.append(tuple(reversed(excess)))
    return ShapeTuple(rset, tuple(shapes))


def gapless_of_shape_tuple(s: ShapeTuple) -> RTuple:
    rset = s.rset
    entries: List[int] = []
    for h in range(1, rset.r + 1):
        excess = tuple(reversed(s.shapes[h - 1]))
        entries.extend(i + e for i, e in zip(rset.carrel(h), excess))
    entries.extend(rset.carrel(rset.r + 1))
    g = RTuple(rset, tuple(entries))
    if not is_gapless(g):
        raise InputError(f"Shape tuple {s} violates the row condition")
    return g


def gen_shape_tuples(rset: RSet) -> Iterator[ShapeTuple]:
    boxes = []
    for h in range(1, rset.r + 1):
        width = rset.n - rset.q(h)
        boxes.append(sorted(
            tuple(sorted(parts, reverse=True))
            for parts in combinations_with_replacement(range(width + 1), rset.p(h))
        ))
    for shapes in product(*boxes):
        candidate = ShapeTuple(rset, shapes)
        if candidate.satisfies_row_condition():
            yield candidate


@dataclass(frozen=True)
class OrderedPartition:
    rset: RSet
    blocks: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        rset = self.rset
        if len(blocks) != rset.r + 1:
            raise InputError(f"Need {rset.r + 1} blocks, got {len(blocks)}")
        if [len(b) for b in blocks] != list(rset.carrel_sizes):
            raise InputError(f"Block sizes must be {rset.carrel_sizes}")
        if frozenset().union(*blocks) != frozenset(range(1, rset.n + 1)):
            raise InputError(f"Blocks do not partition [{rset.n}]")

    @classmethod
    def of_perm(cls, p: RTuple) -> "OrderedPartition":
        return cls(p.rset, tuple(frozenset(cohort) for cohort in p.cohorts()))

    def to_perm(self) -> RTuple:
        return RTuple(self.rset, tuple(v for block in self.blocks for v in sorted(block)))

    def to_json(self) -> Dict:
        return {"n": self.rset.n, "blocks": [sorted(b) for b in self.blocks]}

    def __str__(self) -> str:
        return "|".join("{" + ",".join(str(v) for v in sorted(b)) + "}" for b in self.blocks)


def parse_pattern(text: str) -> Tuple[int, int, int]:
    digits = tuple(int(ch) for ch in text.strip() if ch.isdigit())
    if digits not in PATTERNS:
        raise InputError(f"Pattern must be a permutation of 123, got {text!r}")
    return digits


def contains_block_pattern(p: RTuple, pattern: Tuple[int, int, int]) -> bool:
    """Positions i1 < i2 < i3 in pairwise distinct carrels whose values are order-isomorphic to pattern"""
    rset = p.rset
    for triple in combinations(range(1, p.n + 1), 3):
        carrels = [rset.carrel_of(i) for i in triple]
        if not carrels[0] < carrels[1] < carrels[2]:
            continue
        values = [p.at(i) for i in triple]
        ranked = sorted(values)
        if tuple(ranked.index(v) + 1 for v in values) == pattern:
            return True
    return False


def gen_avoiding_ordered_partitions(
    rset: RSet, pattern: Tuple[int, int, int], limit: Optional[int] = None
) -> Iterator[OrderedPartition]:
    if tuple(pattern) not in PATTERNS:
        raise InputError(f"Pattern must be a permutation of 123, got {pattern}")
    for p in gen_r_permutations(rset, limit):
        if not contains_block_pattern(p, tuple(pattern)):
            yield OrderedPartition.of_perm(p)


def _deletions(remaining: FrozenSet[int]) -> Iterator[FrozenSet[int]]:
    """Whole rightmost clumps plus a nonempty part of the clump just left of them"""
    clumps = clump_decompose(remaining)
    for e in range(len(clumps) - 1, -1, -1):
        tail = frozenset(v for clump in clumps[e + 1:] for v in clump)
        for size in range(1, len(clumps[e]) + 1):
            for part in combinations(clumps[e], size):
                yield tail | frozenset(part)


def chain_text(chain: GeneralizedChain) -> str:
    return " > ".join("{" + ",".join(str(v) for v in sorted(block)) + "}" for block in chain)


def gen_generalized_rcd_chains(n: int, settings: Optional[Settings] = None) -> Iterator[GeneralizedChain]:
    """
    Chains [n] = B_top > ... > {} where every step deletes any number of
    elements rightmost-clump style, sorted by their text form
    """
    settings = settings or Settings.from_env()
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if n > settings.sum_n_max:
        raise ResourceGuardError(f"Generalized chains for n={n}", settings.sum_n_max)

    def descend(chain: Tuple[FrozenSet[int], ...]) -> Iterator[GeneralizedChain]:
        current = chain[-1]
        if not current:
            yield chain
            return
        for deleted in _deletions(current):
            yield from descend(chain + (current - deleted,))

    yield from sorted(descend((frozenset(range(1, n + 1)),)), key=chain_text)


def rset_of_chain(chain: GeneralizedChain) -> RSet:
    """The stage sizes strictly between {} and [n]"""
    n = len(chain[0])
    return RSet(n, tuple(sorted(len(b) for b in chain if 0 < len(b) < n)))


def _count_for_subset(job: Tuple[int, Tuple[int, ...], int]) -> int:
    n, elements, limit = job
    return count_cnr(RSet(n, elements), limit)


def count_total(n: int, settings: Optional[Settings] = None) -> int:
    """C_n^Sigma summed over all 2^(n-1) subsets R"""
    settings = settings or Settings.from_env()
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if n > settings.sum_n_max:
        raise ResourceGuardError(f"Summation for C_{n}^Sigma", settings.sum_n_max)
    jobs = [
        (n, elements, settings.max_permutations)
        for size in range(n)
        for elements in combinations(range(1, n), size)
    ]
    if settings.workers > 1:
        with ProcessPoolExecutor(max_workers=settings.workers) as pool:
            total = sum(pool.map(_count_for_subset, jobs))
    else:
        total = sum(_count_for_subset(job) for job in jobs)
    logger.debug(f"C_{n}^Sigma = {total} over {len(jobs)} subsets")
    return total


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def total_via_formula(n: int) -> int:
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    return sum(
        (-1) ** k * comb(n - k, k) * 2 ** (n - k - 1) * catalan(n - k)
        for k in range(n // 2 + 1)
    )


def even_rset(m: int) -> RSet:
    """R = {2, 4, ..., 2m-2} inside [2m-1]"""
    return RSet(2 * m, tuple(range(2, 2 * m - 1, 2)))


def oeis_check(sequence_id: str, terms: int, settings: Optional[Settings] = None) -> List[int]:
    settings = settings or Settings.from_env()
    key = sequence_id.lower()
    if terms < 1:
        raise InputError(f"Need at least one term, got {terms}")
    if key == "a220097":
        return [count_cnr(even_rset(m), settings.max_permutations) for m in range(1, terms + 1)]
    if key == "a226316":
        return [count_total(n, settings) for n in range(1, terms + 1)]
    raise InputError(f"Unknown sequence {sequence_id!r}; expected one of {', '.join(OEIS_SEQUENCES)}")


class EnumerationService:
    """Settings-bound front for the generators and counters"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings.from_env()
        logger.info(f"🔢 Enumeration service ready (permutation guard {self.settings.max_permutations})")

    @property
    def limit(self) -> int:
        return self.settings.max_permutations

    def count(self, rset: RSet) -> int:
        return count_cnr(rset, self.limit)

    def count_total(self, n: int, formula: bool = False) -> int:
        return total_via_formula(n) if formula else count_total(n, self.settings)

    def family(self, name: str, rset: RSet, pattern: str = "312") -> List:
        """Materialize one of the listable families in deterministic order"""
        if name == "r312":
            return list(gen_r312_avoiding(rset, self.limit))
        if name == "gapless":
            return list(gen_gapless(rset, self.limit))
        if name == "chains":
            return list(gen_rcd_chains(rset, self.limit))
        if name == "shapes":
            return list(gen_shape_tuples(rset))
        if name == "opart":
            return list(gen_avoiding_ordered_partitions(rset, parse_pattern(pattern), self.limit))
        if name == "keys":
            return list(gen_gapless_keys(Partition.minimal_for(rset), self.limit))
        if name == "multiperms":
            return list(gen_231_avoiding_multiperms(rset, self.limit))
        raise InputError(f"Unknown family {name!r}")

    def generalized_chains(self, n: int) -> List[GeneralizedChain]:
        return list(gen_generalized_rcd_chains(n, self.settings))

    def oeis(self, sequence_id: str, terms: int) -> List[int]:
        return oeis_check(sequence_id, terms, self.settings)
