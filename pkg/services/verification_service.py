"""
Verification harness
Runs the exhaustive desk-scale property suites and reports one record per
check, in the shape {check, status, description, duration, details|error}
"""

import logging
import time
from itertools import combinations
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

from combinatorics.errors import InputError, InvariantViolation, ParacatError, ResourceGuardError
from combinatorics.rtuples import (
    RChain,
    RSet,
    RTuple,
    chain_of_perm,
    full_case_rcd_variants,
    gapless_to_perm,
    is_flag,
    is_gapless,
    is_r312_avoiding,
    is_r_flag,
    is_r_increasing,
    is_rcd_chain,
    is_upper,
    iter_ui_tuples,
    perm_of_chain,
    rank_tuple,
    rcd_variants,
)
from combinatorics.scanning import (
    a_sets_for_key,
    paths_partition_cells,
    residual_maxima,
    scanning_tableau,
)
from combinatorics.settings import Settings
from combinatorics.tableaux import (
    Partition,
    is_gapless_key,
    is_key,
    key_of_perm,
    row_end_list,
    row_end_max,
    tableau_leq,
    validate_tableau,
)
from services.convexity_oracle import is_convex_lattice_set
from services.demazure_service import DemazureService
from services.enumeration_service import (
    OEIS_PREFIXES,
    PATTERNS,
    OrderedPartition,
    catalan,
    count_cnr,
    count_total,
    gapless_of_shape_tuple,
    gen_231_avoiding_multiperms,
    gen_avoiding_ordered_partitions,
    gen_gapless,
    gen_gapless_keys,
    gen_generalized_rcd_chains,
    gen_r312_avoiding,
    gen_r_permutations,
    gen_rcd_chains,
    gen_shape_tuples,
    oeis_check,
    rset_of_chain,
    shape_tuple_of_gapless,
    total_via_formula,
)
from services.witness_service import convexity_witness

logger = logging.getLogger(__name__)

PASSED = "passed"
FAILED = "failed"
SKIPPED = "skipped"

WORKED_EXAMPLE_PERM = "1,4,6,7,10;3,5,8,9;2,12;11"
WORKED_EXAMPLE_SHAPE = "7,7,7,7,7,5,5,5,5,2,2,0"
WORKED_EXAMPLE_ROW_ENDS = "1,4,6,7,10;7,8,9,10;10,12;12"
RCD_EXAMPLE_CHAIN = ((), (1, 2, 6), (1, 2, 5, 6, 8), (1, 2, 4, 5, 6, 7, 8, 10, 13, 14), tuple(range(1, 15)))


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise InvariantViolation(message)


def all_rsets(n: int) -> Iterator[RSet]:
    for size in range(n):
        for elements in combinations(range(1, n), size):
            yield RSet(n, elements)


class VerificationSuite:
    """Exhaustive property checks over every R at desk scale"""

    CHECKS = (
        "bijections",
        "rcd-chains",
        "key-coincidence",
        "row-end-max",
        "scanning-identity",
        "demazure-ideal",
        "convexity-equivalence",
        "equinumerosity",
        "six-patterns",
        "totals",
        "oeis",
        "counterexamples",
    )

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings.from_env()
        self.demazure = DemazureService(self.settings)
        self.limit = self.settings.max_permutations

    def _timed(self, name: str, description: str, body: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
        logger.info(f"🧪 Checking {name}")
        start_time = time.time()
        record: Dict[str, Any] = {"check": name, "description": description}
        try:
            record["details"] = body()
            record["status"] = PASSED
            logger.info(f"✅ {name} passed")
        except ResourceGuardError as e:
            record["status"] = SKIPPED
            record["error"] = str(e)
            logger.warning(f"⚠️  {name} skipped: {e}")
        except ParacatError as e:
            record["status"] = FAILED
            record["error"] = str(e)
            logger.error(f"❌ {name} failed: {e}")
        except Exception as e:
            record["status"] = FAILED
            record["error"] = f"{type(e).__name__}: {e}"
            logger.error(f"❌ {name} crashed: {str(e)}")
        record["duration"] = round(time.time() - start_time, 3)
        return record

    def _count_ceiling(self, n_max: int) -> int:
        return min(n_max, self.settings.verify_count_n_max)

    def _convexity_ceiling(self, n_max: int) -> int:
        return min(n_max, self.settings.verify_convexity_n_max)

    def check_bijections(self, n_max: int) -> Dict[str, Any]:
        def body():
            top = self._count_ceiling(n_max)
            pairs = 0
            for n in range(1, top + 1):
                for rset in all_rsets(n):
                    perms = list(gen_r_permutations(rset, self.limit))
                    _expect(len(perms) == rset.multinomial(), f"|S_n^R| wrong for n={n}, R={{{rset}}}")
                    for p in perms:
                        psi = rank_tuple(p)
                        _expect(is_upper(psi) and is_r_increasing(psi), f"rank tuple of ({p}) not upper")
                        _expect(perm_of_chain(chain_of_perm(p)) == p, f"chain round trip fails on ({p})")
                        _expect(OrderedPartition.of_perm(p).to_perm() == p, f"block round trip fails on ({p})")
                    for p in gen_r312_avoiding(rset, self.limit):
                        g = rank_tuple(p)
                        _expect(is_gapless(g) and is_r_flag(g), f"rank tuple of ({p}) is not a gapless R-flag")
                        _expect(gapless_to_perm(g) == p, f"rank tuple inverse fails on ({p})")
                        pairs += 1
                    gapless = list(gen_gapless(rset, self.limit))
                    for g in gapless:
                        _expect(rank_tuple(gapless_to_perm(g)) == g, f"inverse then rank fails on ({g})")
                        st = shape_tuple_of_gapless(g)
                        _expect(gapless_of_shape_tuple(st) == g, f"shape tuple round trip fails on ({g})")
                    if rset.is_full():
                        flags = {t for t in iter_ui_tuples(rset) if is_flag(t)}
                        _expect(set(gapless) == flags, f"gapless tuples differ from upper flags at n={n}")
            return {"n_max": top, "pairs_checked": pairs}

        return self._timed(
            "bijections",
            "Rank tuples and their inverse, chains, blocks and shape tuples round-trip",
            body,
        )

    def check_rcd_chains(self, n_max: int) -> Dict[str, Any]:
        def body():
            top = self._count_ceiling(n_max)
            chains = 0
            for n in range(1, top + 1):
                for rset in all_rsets(n):
                    for p in gen_r_permutations(rset, self.limit):
                        chain = chain_of_perm(p)
                        verdict = is_rcd_chain(chain)
                        _expect(verdict == is_r312_avoiding(p), f"clump deletion disagrees with avoidance on ({p})")
                        variants = rcd_variants(chain)
                        if rset.is_full():
                            variants.update(full_case_rcd_variants(chain))
                        wrong = sorted(name for name, value in variants.items() if value != verdict)
                        _expect(not wrong, f"reformulations {wrong} disagree on chain of ({p})")
                        chains += 1
            if top >= 3:
                found = len(list(gen_rcd_chains(RSet.full(3), self.limit)))
                _expect(found == 5, f"expected 5 full clump-deleting chains at n=3, got {found}")
            example = RChain(RSet(14, (3, 5, 10)), tuple(frozenset(b) for b in RCD_EXAMPLE_CHAIN))
            _expect(is_rcd_chain(example), f"{example} should be clump deleting")
            return {"n_max": top, "chains_checked": chains}

        return self._timed(
            "rcd-chains",
            "Rightmost clump deleting chains are exactly the chains of avoiding permutations",
            body,
        )

    def check_key_coincidence(self, n_max: int) -> Dict[str, Any]:
        def body():
            top = min(self._count_ceiling(n_max), 5)
            compared = 0
            for n in range(1, top + 1):
                for rset in all_rsets(n):
                    shape = Partition.minimal_for(rset)
                    avoiding = list(gen_r312_avoiding(rset, self.limit))
                    gapless = list(gen_gapless(rset, self.limit))
                    from_perms = {key_of_perm(p, shape) for p in avoiding}
                    from_row_ends = {row_end_max(shape, g) for g in gapless}
                    gapless_keys = set(gen_gapless_keys(shape, self.limit))
                    _expect(from_perms == from_row_ends == gapless_keys, f"key sets differ at n={n}, R={{{rset}}}")
                    for p in avoiding:
                        _expect(row_end_max(shape, rank_tuple(p)) == key_of_perm(p, shape), f"M(psi) != Y for ({p})")
                    _expect(
                        {row_end_list(y) for y in gapless_keys} == set(gapless),
                        f"row end lists of gapless keys are not the gapless tuples at n={n}, R={{{rset}}}",
                    )
                    compared += len(gapless_keys)
                full_strict = Partition(tuple(range(n, 0, -1)))
                count = sum(1 for _ in gen_gapless_keys(full_strict, self.limit))
                _expect(count == catalan(n), f"{count} gapless keys for strict shape at n={n}")
            return {"n_max": top, "keys_compared": compared}

        return self._timed(
            "key-coincidence",
            "Keys of avoiding permutations = gapless keys = row end max tableaux of gapless tuples",
            body,
        )

    def check_row_end_max(self, n_max: int) -> Dict[str, Any]:
        def body():
            p = RTuple.parse(WORKED_EXAMPLE_PERM)
            shape = Partition.parse(WORKED_EXAMPLE_SHAPE)
            alpha = RTuple.parse(WORKED_EXAMPLE_ROW_ENDS)
            y = key_of_perm(p, shape)
            _expect(validate_tableau(y).valid and is_key(y) and is_gapless_key(y), "worked example key malformed")
            _expect(row_end_list(y) == alpha, "worked example row end list differs")
            _expect(row_end_max(shape, alpha) == y, "worked example row end max differs from its key")

            top = self._convexity_ceiling(n_max)
            tuples = 0
            for n in range(1, top + 1):
                for rset in all_rsets(n):
                    shape = Partition.minimal_for(rset)
                    for q in gen_r_permutations(rset, self.limit):
                        _expect(row_end_list(key_of_perm(q, shape)) == rank_tuple(q), f"row ends of Y({q}) != psi")
                    maxima: Dict[RTuple, List[int]] = {}
                    for t in self.demazure.tableaux(shape):
                        omega = row_end_list(t)
                        best = maxima.setdefault(omega, list(t.flatten()))
                        maxima[omega] = [max(a, b) for a, b in zip(best, t.flatten())]
                    for omega, best in maxima.items():
                        m = row_end_max(shape, omega)
                        _expect(list(m.flatten()) == best, f"row end max of ({omega}) is not the entrywise max")
                        tuples += 1
            return {"n_max": top, "row_end_lists_checked": tuples}

        return self._timed(
            "row-end-max",
            "Row end max tableaux are the entrywise maxima and match the worked example",
            body,
        )

    def check_scanning_identity(self, n_max: int) -> Dict[str, Any]:
        def body():
            top = self._convexity_ceiling(n_max)
            tableaux = 0
            for n in range(1, top + 1):
                for rset in all_rsets(n):
                    shape = Partition.minimal_for(rset)
                    keys = [key_of_perm(p, shape) for p in gen_r_permutations(rset, self.limit)]
                    for t in self.demazure.tableaux(shape):
                        result = scanning_tableau(t)
                        s = result.s
                        _expect(is_key(s) and tableau_leq(t, s), f"S(T) not a key above T for {t.columns}")
                        _expect(scanning_tableau(s).s == s, f"scanning not idempotent on {t.columns}")
                        _expect(paths_partition_cells(result), f"paths do not partition cells of {t.columns}")
                        residual = residual_maxima(t)
                        for (l, k), m in residual.items():
                            _expect(s.value(l, k) == max(t.value(l, k), m), f"S_{l}({k}) identity fails on {t.columns}")
                        for y in keys:
                            by_scan = tableau_leq(s, y)
                            by_sets = all(t.value(l, k) in a for (l, k), a in a_sets_for_key(t, y).items())
                            _expect(by_scan == by_sets, f"interval criterion disagrees on {t.columns} vs {y.columns}")
                        tableaux += 1
            return {"n_max": top, "tableaux_checked": tableaux}

        return self._timed(
            "scanning-identity",
            "Scanning tableaux are idempotent keys, the residual identity and the interval criterion hold",
            body,
        )

    def check_demazure_ideal(self, n_max: int) -> Dict[str, Any]:
        def body():
            top = self._convexity_ceiling(n_max)
            sets = 0
            for n in range(1, top + 1):
                for rset in all_rsets(n):
                    shape = Partition.minimal_for(rset)
                    seen = set()
                    for p in gen_r_permutations(rset, self.limit):
                        y = key_of_perm(p, shape)
                        d = self.demazure.demazure_set(p, shape, pruned=False)
                        ideal = self.demazure.principal_ideal(y)
                        _expect(y in d and d.maximum() == y, f"Y is not the maximum of D for ({p})")
                        _expect(set(d.points) <= set(ideal.points), f"D is not inside [Y] for ({p})")
                        if is_r312_avoiding(p):
                            _expect(d == ideal, f"D != [Y] for avoiding ({p})")
                        polynomial = self.demazure.polynomial(p, shape)
                        _expect(polynomial.coefficient_sum() == len(d), f"coefficients do not sum to |D| for ({p})")
                        seen.add(d.points)
                        sets += 1
                    _expect(len(seen) == rset.multinomial(), f"distinct permutations share a Demazure set, R={{{rset}}}")
                    top_poly = self.demazure.polynomial(RTuple.maximal(rset), shape)
                    _expect(
                        top_poly.is_symmetric() and top_poly == self.demazure.schur(shape),
                        f"maximal Demazure polynomial is not the Schur sum for R={{{rset}}}",
                    )
            return {"n_max": top, "sets_checked": sets}

        return self._timed(
            "demazure-ideal",
            "Demazure sets sit under their key, avoiding ones fill the ideal",
            body,
        )

    def check_convexity_equivalence(self, n_max: int) -> Dict[str, Any]:
        def body():
            top = self._convexity_ceiling(n_max)
            witnesses = 0
            decided = 0
            for n in range(1, top + 1):
                for rset in all_rsets(n):
                    shape = Partition.minimal_for(rset)
                    for p in gen_r_permutations(rset, self.limit):
                        d = self.demazure.demazure_set(p, shape)
                        convex = is_convex_lattice_set(d, self.settings.hull_budget)
                        avoiding = is_r312_avoiding(p)
                        fills = d == self.demazure.principal_ideal(key_of_perm(p, shape))
                        _expect(convex == avoiding == fills, f"convex={convex} avoiding={avoiding} ideal={fills} for ({p})")
                        decided += 1
                        if not avoiding:
                            failures = convexity_witness(p, shape).verify()
                            _expect(not failures, f"witness for ({p}) fails {failures}")
                            witnesses += 1
            return {"n_max": top, "sets_decided": decided, "witnesses_verified": witnesses}

        return self._timed(
            "convexity-equivalence",
            "Convex Demazure set <=> avoiding permutation <=> Demazure set is the whole ideal",
            body,
        )

    def check_equinumerosity(self, n_max: int) -> Dict[str, Any]:
        def body():
            top = self._count_ceiling(n_max)
            counts: Dict[str, int] = {}
            for n in range(1, top + 1):
                by_rset: Dict[RSet, int] = {}
                for chain in gen_generalized_rcd_chains(n, self.settings):
                    key = rset_of_chain(chain)
                    by_rset[key] = by_rset.get(key, 0) + 1
                for rset in all_rsets(n):
                    families = {
                        "avoiding": count_cnr(rset, self.limit),
                        "gapless": sum(1 for _ in gen_gapless(rset, self.limit)),
                        "rcd_chains": sum(1 for _ in gen_rcd_chains(rset, self.limit)),
                        "gapless_keys": sum(1 for _ in gen_gapless_keys(Partition.minimal_for(rset), self.limit)),
                        "shape_tuples": sum(1 for _ in gen_shape_tuples(rset)),
                        "ordered_partitions": sum(1 for _ in gen_avoiding_ordered_partitions(rset, (3, 1, 2), self.limit)),
                        "multipermutations": sum(1 for _ in gen_231_avoiding_multiperms(rset, self.limit)),
                        "generalized_chains": by_rset.get(rset, 0),
                    }
                    _expect(len(set(families.values())) == 1, f"family counts differ at n={n}, R={{{rset}}}: {families}")
                    counts[f"n={n} R={{{rset}}}"] = families["avoiding"]
            return {"n_max": top, "counts": counts}

        return self._timed(
            "equinumerosity",
            "All families counted by C_n^R have the same size for every R",
            body,
        )

    def check_six_patterns(self, n_max: int) -> Dict[str, Any]:
        def body():
            top = min(self._count_ceiling(n_max), 5)
            for n in range(1, top + 1):
                for rset in all_rsets(n):
                    expected = count_cnr(rset, self.limit)
                    for pattern in PATTERNS:
                        found = sum(1 for _ in gen_avoiding_ordered_partitions(rset, pattern, self.limit))
                        _expect(found == expected, f"pattern {pattern} gives {found} != {expected} at n={n}, R={{{rset}}}")
            return {"n_max": top, "patterns": ["".join(map(str, p)) for p in PATTERNS]}

        return self._timed(
            "six-patterns",
            "Ordered partitions avoiding each pattern of length three are equinumerous",
            body,
        )

    def check_totals(self, n_max: int) -> Dict[str, Any]:
        def body():
            top = min(n_max, self.settings.sum_n_max)
            totals = []
            for n in range(1, top + 1):
                total = count_total(n, self.settings)
                _expect(total == total_via_formula(n), f"summed C_{n}^Σ = {total} differs from the formula")
                chains = sum(1 for _ in gen_generalized_rcd_chains(n, self.settings))
                _expect(chains == total, f"{chains} generalized chains but C_{n}^Σ = {total}")
                totals.append(f"C_{n}^Σ = {total}")
            return {"n_max": top, "totals": totals}

        return self._timed(
            "totals",
            "Total parabolic Catalan numbers by summation, by formula and by generalized chains",
            body,
        )

    def check_oeis(self, n_max: int) -> Dict[str, Any]:
        def body():
            terms = {
                "a226316": min(n_max, len(OEIS_PREFIXES["a226316"])),
                "a220097": min(max(1, n_max // 2), len(OEIS_PREFIXES["a220097"])),
            }
            found = {}
            for sequence_id, k in terms.items():
                values = oeis_check(sequence_id, k, self.settings)
                _expect(tuple(values) == OEIS_PREFIXES[sequence_id][:k], f"{sequence_id} gives {values}")
                found[sequence_id] = values
            return found

        return self._timed("oeis", "Prefixes of the even-R and total sequences", body)

    def check_counterexamples(self, n_max: int) -> Dict[str, Any]:
        def body():
            shape = Partition((2, 1, 1, 0))
            p = RTuple.parse("4;1,2;3")
            y = key_of_perm(p, shape)
            _expect(y == row_end_max(shape, rank_tuple(p)), "Y != M(psi) for (4;1,2;3)")
            _expect(not is_r312_avoiding(p), "(4;1,2;3) should contain the pattern")
            _expect(not is_gapless_key(y), "the key of (4;1,2;3) should not be gapless")

            flag = RTuple.parse("3;2,4;4")
            _expect(is_r_flag(flag), "(3;2,4;4) should be an R-flag")
            images = {rank_tuple(q) for q in gen_r_permutations(flag.rset, self.limit)}
            _expect(flag not in images, "(3;2,4;4) should not be a rank tuple")

            chain = chain_of_perm(RTuple.parse("3;1;2"))
            _expect(not is_rcd_chain(chain), "chain of (3;1;2) should not be clump deleting")
            return {"checked": ["(4;1,2;3)", "(3;2,4;4)", "(3;1;2)"]}

        return self._timed(
            "counterexamples",
            "Converse failures and non-images stay failures",
            body,
        )

    def run(self, n_max: int, checks: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        """
        Run the selected checks (all by default)

        Returns:
            dict: n_max, per-check results and an overall passed flag
        """
        if n_max < 1:
            raise InputError(f"n-max must be positive, got {n_max}")
        selected = list(checks) if checks else list(self.CHECKS)
        unknown = [name for name in selected if name not in self.CHECKS]
        if unknown:
            raise InputError(f"Unknown checks {unknown}; choose from {', '.join(self.CHECKS)}")

        logger.info(f"🚀 Running {len(selected)} checks up to n={n_max}")
        results = []
        for name in self.CHECKS:
            if name in selected:
                method = getattr(self, "check_" + name.replace("-", "_"))
                results.append(method(n_max))
        passed = all(result["status"] != FAILED for result in results)
        summary = {status: sum(1 for r in results if r["status"] == status) for status in (PASSED, FAILED, SKIPPED)}
        return {"n_max": n_max, "results": results, "summary": summary, "passed": passed}
