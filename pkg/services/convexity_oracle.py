"""
Convexity oracles for finite lattice sets of tableaux
A set is convex when it equals the lattice points of its own convex hull
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from math import gcd
from typing import Any, Dict, Optional, Tuple

from combinatorics.errors import InputError
from combinatorics.tableaux import Tableau
from services.demazure_service import LatticeSet, enumerate_tableaux
from services.hull_geometry import HullInequalities, compute_convex_hull

logger = logging.getLogger(__name__)

CONVEX = "convex"
NONCONVEX = "nonconvex"
CERTIFIED_NONCONVEX = "certified-nonconvex"
SEGMENT_CLOSED_ONLY = "segment-closed-only"


@dataclass(frozen=True)
class ConvexityVerdict:
    label: str
    method: str
    counterexample: Optional[Tableau] = None
    candidates_checked: int = 0

    @property
    def is_convex(self) -> Optional[bool]:
        """None when the method could not decide"""
        if self.label == CONVEX:
            return True
        if self.label in (NONCONVEX, CERTIFIED_NONCONVEX):
            return False
        return None

    def to_json(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "method": self.method,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
            "candidates_checked": self.candidates_checked,
        }


class BaseConvexityOracle(ABC):
    """
    Abstract base class for convexity oracles

    Implementations need:
    1. check - decide (or bound) convexity of a nonempty LatticeSet
    2. a method name for reporting
    """

    def __init__(self):
        self.method_name = "unknown"

    @abstractmethod
    def check(self, points: LatticeSet) -> ConvexityVerdict:
        """Return a verdict for a nonempty set"""
        pass

    def get_method_name(self) -> str:
        return self.method_name

    @staticmethod
    def _require_nonempty(points: LatticeSet) -> None:
        if len(points) == 0:
            raise InputError("Convexity is only decided for nonempty sets")


class ExactHullOracle(BaseConvexityOracle):
    """
    Exact test: every lattice point of the hull must belong to the set.

    Candidates are the semistandard tableaux in the coordinate-wise bounding
    box. Semistandardness is a system of linear inequalities satisfied by
    every point of the set, so the hull cannot contain any other lattice point.
    """

    def __init__(self, budget: int):
        super().__init__()
        self.method_name = "exact-hull"
        self.budget = budget

    def check(self, points: LatticeSet) -> ConvexityVerdict:
        self._require_nonempty(points)
        shape = points.shape
        low = Tableau.from_flat(shape, (min(c) for c in zip(*points.points)))
        high = Tableau.from_flat(shape, (max(c) for c in zip(*points.points)))
        hull: Optional[HullInequalities] = None
        checked = 0
        for candidate in enumerate_tableaux(shape, upper=high, lower=low, limit=self.budget):
            checked += 1
            if candidate in points:
                continue
            if hull is None:
                hull = compute_convex_hull(points.points)
            if hull.contains(candidate.flatten()):
                logger.debug(f"Hull point {candidate.columns} is missing from the set")
                return ConvexityVerdict(NONCONVEX, self.method_name, candidate, checked)
        return ConvexityVerdict(CONVEX, self.method_name, None, checked)


def _segment_gap(u: Tuple[int, ...], v: Tuple[int, ...], points: LatticeSet) -> Optional[Tuple[int, ...]]:
    steps = 0
    for a, b in zip(u, v):
        steps = gcd(steps, abs(b - a))
    if steps < 2:
        return None
    delta = tuple((b - a) // steps for a, b in zip(u, v))
    for t in range(1, steps):
        point = tuple(a + t * d for a, d in zip(u, delta))
        if point not in points:
            return point
    return None


class SegmentClosureOracle(BaseConvexityOracle):
    """
    Necessary test only: lattice points on segments between members must be
    members. A gap certifies nonconvexity; no gap proves nothing.
    """

    def __init__(self):
        super().__init__()
        self.method_name = "segment-closure"

    def check(self, points: LatticeSet) -> ConvexityVerdict:
        self._require_nonempty(points)
        members = points.points
        pairs = 0
        for index, u in enumerate(members):
            for v in members[index + 1:]:
                pairs += 1
                gap = _segment_gap(u, v, points)
                if gap is not None:
                    t = Tableau.from_flat(points.shape, gap)
                    return ConvexityVerdict(CERTIFIED_NONCONVEX, self.method_name, t, pairs)
        return ConvexityVerdict(SEGMENT_CLOSED_ONLY, self.method_name, None, pairs)


def is_convex_lattice_set(points: LatticeSet, budget: int) -> bool:
    """
    Raises:
        ResourceGuardError: when the bounding box holds more than `budget` candidates
    """
    verdict = ExactHullOracle(budget).check(points)
    return bool(verdict.is_convex)
