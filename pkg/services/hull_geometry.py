"""
Exact convex hulls of integer point sets (using the cdd library).

The hull is converted once from its vertex list to linear inequalities in
cdd's rational arithmetic, after which membership is a sign check per row.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Sequence, Tuple

import cdd

from combinatorics.errors import InputError

logger = logging.getLogger(__name__)

NUMBER_TYPE = "fraction"


@dataclass(frozen=True)
class HullInequalities:
    """{x : b + A x >= 0}, rows listed in `equalities` holding with equality"""

    rows: Tuple[Tuple[Fraction, ...], ...]
    equalities: FrozenSet[int]
    dimension: int

    def contains(self, point: Sequence[int]) -> bool:
        if len(point) != self.dimension:
            raise InputError(f"Point of dimension {len(point)} tested against a hull in dimension {self.dimension}")
        for index, row in enumerate(self.rows):
            value = row[0] + sum(a * x for a, x in zip(row[1:], point))
            if value < 0 or (index in self.equalities and value != 0):
                return False
        return True


def compute_convex_hull(points: Sequence[Sequence[int]]) -> HullInequalities:
    """
    H-representation of the convex hull of finitely many integer points

    Raises:
        InputError: no points, or points of different dimensions
    """
    if not points:
        raise InputError("The convex hull of no points is empty")
    dimension = len(points[0])
    if any(len(point) != dimension for point in points):
        raise InputError("Hull points must share one dimension")
    if dimension == 0:
        return HullInequalities((), frozenset(), 0)

    # V-representation: first column is 1 for vertices
    generators = cdd.Matrix([[1] + list(point) for point in points], number_type=NUMBER_TYPE)
    generators.rep_type = cdd.RepType.GENERATOR
    polyhedron = cdd.Polyhedron(generators)
    inequalities = polyhedron.get_inequalities()
    rows = tuple(tuple(Fraction(v) for v in inequalities[i]) for i in range(inequalities.row_size))
    logger.debug(
        f"Hull of {len(points)} points in dimension {dimension}: "
        f"{len(rows)} rows, {len(inequalities.lin_set)} equalities"
    )
    return HullInequalities(rows, frozenset(inequalities.lin_set), dimension)


def in_convex_hull(points: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    return compute_convex_hull(points).contains(target)
