"""
Convexity Oracle Factory
Creates convexity oracles based on configuration and falls back when the
exact oracle exceeds its budget
"""

import logging
from typing import Optional

from combinatorics.errors import ResourceGuardError
from combinatorics.rtuples import RTuple, is_r312_avoiding
from combinatorics.settings import Settings
from combinatorics.tableaux import Partition
from services.convexity_oracle import (
    CERTIFIED_NONCONVEX,
    SEGMENT_CLOSED_ONLY,
    BaseConvexityOracle,
    ConvexityVerdict,
    ExactHullOracle,
    SegmentClosureOracle,
)
from services.demazure_service import LatticeSet, demazure_set
from services.witness_service import convexity_witness

logger = logging.getLogger(__name__)


def create_convexity_oracle(settings: Optional[Settings] = None) -> BaseConvexityOracle:
    """
    Create the default (exact) convexity oracle

    Returns:
        BaseConvexityOracle: an exact hull oracle bound to the configured budget
    """
    settings = settings or Settings.from_env()
    oracle = ExactHullOracle(settings.hull_budget)
    logger.info(f"Created {oracle.get_method_name()} oracle (budget {settings.hull_budget})")
    return oracle


def get_oracle_by_type(oracle_type: str, settings: Optional[Settings] = None) -> Optional[BaseConvexityOracle]:
    """
    Get a specific convexity oracle

    Args:
        oracle_type: "exact-hull" or "segment-closure"

    Returns:
        BaseConvexityOracle or None if type not supported
    """
    kind = oracle_type.lower()
    if kind == "exact-hull":
        return create_convexity_oracle(settings)
    if kind == "segment-closure":
        return SegmentClosureOracle()

    logger.warning(f"Unsupported oracle type: {oracle_type}")
    return None


def decide_convexity(points: LatticeSet, settings: Optional[Settings] = None) -> ConvexityVerdict:
    """Exact verdict when the budget allows, the segment-closure bound otherwise"""
    try:
        return create_convexity_oracle(settings).check(points)
    except ResourceGuardError as e:
        logger.warning(f"⚠️  {e}; falling back to segment closure")
        return SegmentClosureOracle().check(points)


def demazure_convexity(p: RTuple, shape: Partition, settings: Optional[Settings] = None) -> ConvexityVerdict:
    """
    Convexity of D_lambda(pi). An undecided segment-closure verdict is
    upgraded with the explicit witness when pi contains the pattern.
    """
    settings = settings or Settings.from_env()
    points = demazure_set(p, shape, settings.max_tableaux)
    verdict = decide_convexity(points, settings)
    if verdict.label == SEGMENT_CLOSED_ONLY and not is_r312_avoiding(p):
        witness = convexity_witness(p, shape)
        failures = witness.verify()
        if failures:
            logger.error(f"❌ Witness for ({p}) fails {failures}")
            return verdict
        logger.info(f"✅ Witness certifies ({p}) nonconvex")
        return ConvexityVerdict(CERTIFIED_NONCONVEX, "witness", witness.t, verdict.candidates_checked)
    return verdict
