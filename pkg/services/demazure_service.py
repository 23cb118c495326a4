"""
Demazure Service
Tableau enumeration, Demazure tableau sets, principal ideals and the
weight polynomials summed over them
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from combinatorics.errors import InputError, InvariantViolation, ResourceGuardError
from combinatorics.rtuples import RTuple
from combinatorics.scanning import a_sets_for_key, scanning_tableau
from combinatorics.settings import Settings, cross_check_enabled
from combinatorics.tableaux import Partition, Tableau, key_of_perm, tableau_leq, validate_tableau

logger = logging.getLogger(__name__)


def _default_limit(limit: Optional[int]) -> int:
    return limit if limit is not None else Settings.from_env().max_tableaux


def enumerate_tableaux(
    shape: Partition,
    upper: Optional[Tableau] = None,
    lower: Optional[Tableau] = None,
    limit: Optional[int] = None,
) -> Iterator[Tableau]:
    """
    Stream every semistandard tableau of the given shape, optionally boxed
    cell-wise between lower and upper, in lexicographic order of the
    column-major vector.

    Raises:
        ResourceGuardError: once more than `limit` tableaux have been produced
    """
    limit = _default_limit(limit)
    for bound in (upper, lower):
        if bound is not None and bound.shape != shape:
            raise InputError(f"Bound of shape ({bound.shape}) does not match ({shape})")

    cells = shape.cells()
    if not cells:
        yield Tableau(shape, ())
        return

    position = {cell: index for index, cell in enumerate(cells)}
    n = shape.n
    values = [0] * len(cells)
    produced = 0

    def place(index: int) -> Iterator[Tuple[int, ...]]:
        if index == len(cells):
            yield tuple(values)
            return
        j, i = cells[index]
        lo = values[index - 1] + 1 if i > 1 else 1
        if j > 1:
            lo = max(lo, values[position[(j - 1, i)]])
        hi = n - (shape.column_length(j) - i)
        if upper is not None:
            hi = min(hi, upper.value(j, i))
        if lower is not None:
            lo = max(lo, lower.value(j, i))
        for value in range(lo, hi + 1):
            values[index] = value
            yield from place(index + 1)

    for vector in place(0):
        produced += 1
        if produced > limit:
            raise ResourceGuardError(f"Tableau enumeration for shape ({shape})", limit)
        yield Tableau.from_flat(shape, vector)


@dataclass(frozen=True)
class LatticeSet:
    """A finite set of same-shape tableaux viewed as points of Z^|lambda|"""

    shape: Partition
    points: Tuple[Tuple[int, ...], ...]
    _index: FrozenSet[Tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        points = tuple(sorted(set(tuple(p) for p in self.points)))
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "_index", frozenset(points))
        size = self.shape.size
        for point in points:
            if len(point) != size:
                raise InputError(f"Point {point} is not in Z^{size}")

    @classmethod
    def of_tableaux(cls, shape: Partition, tableaux: Iterable[Tableau]) -> "LatticeSet":
        points = []
        for t in tableaux:
            if t.shape != shape:
                raise InputError(f"Tableau of shape ({t.shape}) in a set of shape ({shape})")
            points.append(t.flatten())
        return cls(shape, tuple(points))

    @property
    def dimension(self) -> int:
        return self.shape.size

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, item) -> bool:
        vector = item.flatten() if isinstance(item, Tableau) else tuple(item)
        return vector in self._index

    def tableaux(self) -> List[Tableau]:
        return [Tableau.from_flat(self.shape, point) for point in self.points]

    def maximum(self) -> Optional[Tableau]:
        """The unique cell-wise maximal element, if the set has one"""
        if not self.points:
            return None
        top = tuple(max(coords) for coords in zip(*self.points)) if self.dimension else ()
        if top not in self._index:
            return None
        return Tableau.from_flat(self.shape, top)

    def to_json(self) -> Dict:
        return {
            "lambda": list(self.shape.parts),
            "cell_order": "column-major",
            "points": [list(point) for point in self.points],
        }


@dataclass(frozen=True)
class WeightVector:
    """The content census Theta(T): exponents[v-1] counts the v's"""

    exponents: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def swapped(self, i: int) -> "WeightVector":
        e = list(self.exponents)
        e[i - 1], e[i] = e[i], e[i - 1]
        return WeightVector(tuple(e))

    def __str__(self) -> str:
        factors = [
            f"x{v}" if power == 1 else f"x{v}^{power}"
            for v, power in enumerate(self.exponents, start=1)
            if power
        ]
        return "*".join(factors) if factors else "1"


def content_weight(t: Tableau) -> WeightVector:
    counts = [0] * t.n
    for value in t.flatten():
        counts[value - 1] += 1
    return WeightVector(tuple(counts))


@dataclass
class DemazurePolynomial:
    n: int
    terms: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    @classmethod
    def of_tableaux(cls, n: int, tableaux: Iterable[Tableau]) -> "DemazurePolynomial":
        polynomial = cls(n)
        for t in tableaux:
            exponents = content_weight(t).exponents
            polynomial.terms[exponents] = polynomial.terms.get(exponents, 0) + 1
        return polynomial

    def coefficient(self, weight: WeightVector) -> int:
        return self.terms.get(weight.exponents, 0)

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def is_symmetric(self) -> bool:
        """Invariant under every swap of adjacent variables"""
        for exponents, coefficient in self.terms.items():
            weight = WeightVector(exponents)
            for i in range(1, self.n):
                if self.coefficient(weight.swapped(i)) != coefficient:
                    return False
        return True

    def to_json(self) -> List[Dict]:
        return [
            {"exponents": list(exponents), "coefficient": self.terms[exponents]}
            for exponents in sorted(self.terms, reverse=True)
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exponents in sorted(self.terms, reverse=True):
            coefficient = self.terms[exponents]
            monomial = str(WeightVector(exponents))
            if coefficient == 1:
                pieces.append(monomial)
            elif monomial == "1":
                pieces.append(str(coefficient))
            else:
                pieces.append(f"{coefficient}*{monomial}")
        return " + ".join(pieces)


def _require_matching(p: RTuple, shape: Partition) -> None:
    if p.rset != shape.rset:
        raise InputError(
            f"({p}) has R = {{{p.rset}}} (n={p.n}) but shape ({shape}) needs R = {{{shape.rset}}}"
        )


def _member_against_key(t: Tableau, y: Tableau) -> bool:
    verdict = tableau_leq(scanning_tableau(t).s, y)
    if cross_check_enabled():
        by_intervals = all(
            t.value(l, k) in interval for (l, k), interval in a_sets_for_key(t, y).items()
        )
        if by_intervals != verdict:
            raise InvariantViolation(
                f"Interval criterion says {by_intervals} but scanning says {verdict} for {t.columns}"
            )
    return verdict


def is_demazure_member(t: Tableau, p: RTuple, shape: Partition) -> bool:
    _require_matching(p, shape)
    if t.shape != shape:
        raise InputError(f"Tableau shape ({t.shape}) differs from ({shape})")
    return _member_against_key(t, key_of_perm(p, shape))


def demazure_set(
    p: RTuple, shape: Partition, limit: Optional[int] = None, pruned: bool = True
) -> LatticeSet:
    """
    D_lambda(pi). With pruned=True the candidates are drawn from the ideal
    below the key only; pruned=False filters the whole of T_lambda.
    """
    _require_matching(p, shape)
    y = key_of_perm(p, shape)
    candidates = enumerate_tableaux(shape, upper=y if pruned else None, limit=limit)
    members = [t for t in candidates if _member_against_key(t, y)]
    logger.debug(f"D for ({p}) at shape ({shape}) has {len(members)} tableaux")
    return LatticeSet.of_tableaux(shape, members)


def principal_ideal(y: Tableau, limit: Optional[int] = None) -> LatticeSet:
    report = validate_tableau(y)
    if not report:
        raise InputError(f"Ideal generator is not semistandard: {report.reason}")
    return LatticeSet.of_tableaux(y.shape, enumerate_tableaux(y.shape, upper=y, limit=limit))


def demazure_polynomial(p: RTuple, shape: Partition, limit: Optional[int] = None) -> DemazurePolynomial:
    return DemazurePolynomial.of_tableaux(shape.n, demazure_set(p, shape, limit).tableaux())


def schur_polynomial(shape: Partition, limit: Optional[int] = None) -> DemazurePolynomial:
    return DemazurePolynomial.of_tableaux(shape.n, enumerate_tableaux(shape, limit=limit))


class DemazureService:
    """
    Settings-bound front for the Demazure workflows

    All guards come from the injected Settings so the CLI and the
    verification harness share one configuration.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings.from_env()
        logger.info(f"📐 Demazure service ready (tableau guard {self.settings.max_tableaux})")

    def tableaux(self, shape: Partition) -> List[Tableau]:
        return list(enumerate_tableaux(shape, limit=self.settings.max_tableaux))

    def demazure_set(self, p: RTuple, shape: Partition, pruned: bool = True) -> LatticeSet:
        return demazure_set(p, shape, self.settings.max_tableaux, pruned)

    def principal_ideal(self, y: Tableau) -> LatticeSet:
        return principal_ideal(y, self.settings.max_tableaux)

    def polynomial(self, p: RTuple, shape: Partition) -> DemazurePolynomial:
        return demazure_polynomial(p, shape, self.settings.max_tableaux)

    def schur(self, shape: Partition) -> DemazurePolynomial:
        return schur_polynomial(shape, self.settings.max_tableaux)

    def is_member(self, t: Tableau, p: RTuple, shape: Partition) -> bool:
        return is_demazure_member(t, p, shape)
