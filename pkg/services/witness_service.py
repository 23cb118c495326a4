"""
Witness Service
Builds an explicit certificate that the Demazure set of a 312-containing
permutation is not convex: two keys W < X inside the set and a lattice point
T on the segment between them that falls outside it
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from combinatorics.errors import InputError, PreconditionError
from combinatorics.rtuples import RTuple, is_r312_avoiding
from combinatorics.tableaux import (
    Cell,
    Partition,
    Tableau,
    key_of_perm,
    tableau_leq,
    validate_tableau,
)
from services.demazure_service import is_demazure_member

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    permutation: RTuple
    shape: Partition
    g: int
    h: int
    a: int
    b: int
    c: int
    d: int
    chi: RTuple
    omega: RTuple
    chi_bar: RTuple
    omega_bar: RTuple
    y: Tableau
    x_key: Tableau
    w_key: Tableau
    mu: Tuple[Cell, ...]
    t: Tableau
    x: Fraction

    def verify(self) -> List[str]:
        """Names of the certificate conditions that fail; empty means sound"""
        failures = []
        w, x_key, y, t = self.w_key, self.x_key, self.y, self.t
        if not (tableau_leq(w, x_key) and w != x_key):
            failures.append("W < X")
        if not tableau_leq(x_key, y):
            failures.append("X <= Y")
        if not 0 < self.x < 1:
            failures.append("0 < x < 1")
        segment = [lo + self.x * (hi - lo) for lo, hi in zip(w.flatten(), x_key.flatten())]
        if segment != list(t.flatten()):
            failures.append("T = W + x(X - W)")
        if not validate_tableau(t):
            failures.append("T semistandard")
        if not is_demazure_member(w, self.permutation, self.shape):
            failures.append("W in D")
        if not is_demazure_member(x_key, self.permutation, self.shape):
            failures.append("X in D")
        if is_demazure_member(t, self.permutation, self.shape):
            failures.append("T not in D")
        return failures

    def to_json(self) -> Dict[str, Any]:
        return {
            "permutation": str(self.permutation),
            "lambda": list(self.shape.parts),
            "indices": {"g": self.g, "h": self.h, "a": self.a, "b": self.b, "c": self.c, "d": self.d},
            "chi": list(self.chi.entries),
            "omega": list(self.omega.entries),
            "chi_bar": str(self.chi_bar),
            "omega_bar": str(self.omega_bar),
            "Y": self.y.to_json(),
            "X": self.x_key.to_json(),
            "W": self.w_key.to_json(),
            "mu": [list(cell) for cell in self.mu],
            "T": self.t.to_json(),
            "x": str(self.x),
        }


def _swap(p: RTuple, u: int, v: int) -> RTuple:
    entries = list(p.entries)
    entries[u - 1], entries[v - 1] = entries[v - 1], entries[u - 1]
    return RTuple(p.rset, tuple(entries))


def _select_pattern(p: RTuple) -> Tuple[int, int, int, int]:
    """(h, a, b, c): minimal carrel h of b, then largest p_b, smallest p_a, leftmost c"""
    rset = p.rset
    n = p.n
    for h in range(2, rset.r + 1):
        patterns = [
            (a, b, c)
            for b in rset.carrel(h)
            for a in range(1, rset.q(h - 1) + 1)
            for c in range(rset.q(h) + 1, n + 1)
            if p.at(b) < p.at(c) < p.at(a)
        ]
        if not patterns:
            continue
        b = max((pattern[1] for pattern in patterns), key=p.at)
        a = min((pattern[0] for pattern in patterns if pattern[1] == b), key=p.at)
        c = min(pattern[2] for pattern in patterns if pattern[:2] == (a, b))
        return h, a, b, c
    raise PreconditionError(f"({p}) contains no 312 pattern across carrels")


def convexity_witness(p: RTuple, shape: Partition) -> Witness:
    if p.rset != shape.rset:
        raise InputError(f"({p}) has R = {{{p.rset}}} but shape ({shape}) needs R = {{{shape.rset}}}")
    if is_r312_avoiding(p):
        raise PreconditionError(f"({p}) is R-312-avoiding; its Demazure set is convex")

    rset = p.rset
    h, a, b, c = _select_pattern(p)
    g = rset.carrel_of(a)
    between = [e for e in range(1, rset.q(g) + 1) if p.at(b) < p.at(e) < p.at(c)]
    d = max(between, key=p.at) if between else b

    chi = _swap(p, b, d)
    omega = _swap(chi, a, b)
    chi_bar = chi.standardize()
    omega_bar = omega.standardize()
    x_key = key_of_perm(chi_bar, shape)
    w_key = key_of_perm(omega_bar, shape)

    j = shape.rightmost_column_of_length(rset.q(h))
    m = shape.rightmost_column_of_length(rset.q(g))
    pi_a, pi_c, chi_b = p.at(a), p.at(c), chi.at(b)
    mu = tuple(
        (l, i)
        for l in range(j + 1, m + 1)
        for i in range(1, shape.column_length(l) + 1)
        if x_key.value(l, i) == pi_a
    )
    columns = [list(column) for column in x_key.columns]
    for l, i in mu:
        columns[l - 1][i - 1] = pi_c
    t = Tableau(shape, tuple(tuple(column) for column in columns))

    witness = Witness(
        permutation=p,
        shape=shape,
        g=g,
        h=h,
        a=a,
        b=b,
        c=c,
        d=d,
        chi=chi,
        omega=omega,
        chi_bar=chi_bar,
        omega_bar=omega_bar,
        y=key_of_perm(p, shape),
        x_key=x_key,
        w_key=w_key,
        mu=mu,
        t=t,
        x=Fraction(pi_c - chi_b, pi_a - chi_b),
    )
    logger.debug(f"Witness for ({p}): a={a} b={b} c={c} d={d} x={witness.x}")
    return witness
