"""Exact rational linear programming: dense two-phase simplex with Bland's rule.

Problems are ``maximize c.x  s.t.  a_i.x (<=|=|>=) b_i,  x >= 0``.  All
arithmetic is exact; internally the tableau uses ``gmpy2.mpq`` when it is
installed and :class:`fractions.Fraction` otherwise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

try:
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover
    _num = Fraction

log = logging.getLogger(__name__)

LE, EQ, GE = "<=", "=", ">="


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction


@dataclass
class LinearProgram:
    objective: list[Fraction]
    constraints: list[Constraint] = field(default_factory=list)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def add(self, coeffs: Sequence, rel: str, rhs) -> None:
        if rel not in (LE, EQ, GE):
            raise ValueError(f"bad relation {rel!r}")
        if len(coeffs) != self.n_vars:
            raise ValueError(f"constraint has {len(coeffs)} coefficients, expected {self.n_vars}")
        self.constraints.append(Constraint(tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs)))

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.n_vars or any(v < 0 for v in x):
            return False
        for con in self.constraints:
            lhs = sum((c * v for c, v in zip(con.coeffs, x)), Fraction(0))
            if con.rel == LE and lhs > con.rhs or con.rel == GE and lhs < con.rhs \
                    or con.rel == EQ and lhs != con.rhs:
                return False
        return True

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None
    # one multiplier per constraint, in the sign convention of the standard dual
    duals: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(int(v.numerator), int(v.denominator))


class _Tableau:
    def __init__(self, rows, basis, width, verbose=False):
        self.rows = rows
        self.basis = basis
        self.width = width  # number of structural+slack+artificial columns
        self.verbose = verbose

    def reduced_costs(self, cost):
        d = list(cost) + [_num(0)]
        for r, b in zip(self.rows, self.basis):
            cb = cost[b]
            if cb:
                for j, v in enumerate(r):
                    if v:
                        d[j] -= cb * v
        return d

    def pivot(self, d, pr, pc):
        row = self.rows[pr]
        piv = row[pc]
        if piv != 1:
            row = [v / piv for v in row]
            self.rows[pr] = row
        nz = [j for j, v in enumerate(row) if v]
        for r_i, r in enumerate(self.rows):
            if r_i == pr:
                continue
            f = r[pc]
            if f:
                for j in nz:
                    r[j] -= f * row[j]
        f = d[pc]
        if f:
            for j in nz:
                d[j] -= f * row[j]
        self.basis[pr] = pc

    def run(self, cost, allowed):
        """Maximize ``cost`` over the current basis; returns "optimal" or "unbounded"."""
        d = self.reduced_costs(cost)
        while True:
            if self.verbose:
                self.dump(d)
            pc = next((j for j in range(self.width) if allowed[j] and d[j] > 0), None)
            if pc is None:
                return "optimal", d
            best = None
            for r_i, r in enumerate(self.rows):
                a = r[pc]
                if a > 0:
                    ratio = r[-1] / a
                    key = (ratio, self.basis[r_i])
                    if best is None or key < best[0]:
                        best = (key, r_i)
            if best is None:
                return "unbounded", d
            self.pivot(d, best[1], pc)

    def dump(self, d):
        log.debug("basis %s", self.basis)
        for r in self.rows:
            log.debug("  %s", " ".join(str(v) for v in r))
        log.debug("  d: %s", " ".join(str(v) for v in d))


def solve_lp(lp: LinearProgram, verbose: bool = False) -> LpOutcome:
    """Solve ``lp`` exactly.  Deterministic: Bland's rule fixes the pivot sequence."""
    nv = lp.n_vars
    cons = lp.constraints
    n_slack = sum(c.rel != EQ for c in cons)
    n_art = sum(c.rel == EQ or (c.rel == LE) == (c.rhs < 0) for c in cons)
    width = nv + n_slack + n_art
    rows, basis, flips = [], [], []
    art_cols = []
    s_col, a_col = nv, nv + n_slack
    for con in cons:
        sign = -1 if con.rhs < 0 else 1
        row = [_num(0)] * (width + 1)
        for j, c in enumerate(con.coeffs):
            if c:
                row[j] = _num(c) * sign
        row[-1] = _num(con.rhs) * sign
        basic = None
        if con.rel != EQ:
            row[s_col] = _num(sign if con.rel == LE else -sign)
            if row[s_col] == 1:
                basic = s_col
            s_col += 1
        if basic is None:
            row[a_col] = _num(1)
            basic = a_col
            art_cols.append(a_col)
            a_col += 1
        rows.append(row)
        basis.append(basic)
        flips.append(sign)
    # each row owns one column that started as a unit vector; duals are read there
    unit_col = list(basis)
    tab = _Tableau(rows, basis, width, verbose)
    art = set(art_cols)

    if art:
        cost1 = [_num(-1) if j in art else _num(0) for j in range(width)]
        _, d = tab.run(cost1, [True] * width)
        if d[-1] != 0:  # -d[-1] is the phase-one objective
            return LpOutcome("infeasible")
        # drive remaining (zero-level) artificials out of the basis
        for r_i in range(len(tab.rows)):
            if tab.basis[r_i] in art:
                pc = next((j for j in range(width) if j not in art and tab.rows[r_i][j]), None)
                if pc is not None:
                    tab.pivot(d, r_i, pc)

    cost2 = [_num(c) for c in lp.objective] + [_num(0)] * (width - nv)
    allowed = [j not in art for j in range(width)]
    status, d = tab.run(cost2, allowed)
    if status == "unbounded":
        return LpOutcome("unbounded")
    x = [Fraction(0)] * nv
    for r, b in zip(tab.rows, tab.basis):
        if b < nv:
            x[b] = _frac(r[-1])
    duals = tuple(_frac(-d[c] * s) for c, s in zip(unit_col, flips))
    return LpOutcome("optimal", lp.value(x), tuple(x), duals)


def check_dual_certificate(lp: LinearProgram, out: LpOutcome) -> bool:
    """True iff ``out.duals`` is feasible for the dual of ``lp`` and closes the duality gap."""
    y = out.duals
    if y is None or len(y) != len(lp.constraints):
        return False
    for yi, con in zip(y, lp.constraints):
        if con.rel == LE and yi < 0 or con.rel == GE and yi > 0:
            return False
    for j in range(lp.n_vars):
        if sum((yi * con.coeffs[j] for yi, con in zip(y, lp.constraints)), Fraction(0)) < lp.objective[j]:
            return False
    return sum((yi * con.rhs for yi, con in zip(y, lp.constraints)), Fraction(0)) == out.value


def build_sd_dominance_lp(p, profile) -> LinearProgram:
    """LP whose optimum is positive iff some lottery SD-dominates ``p`` for ``profile``.

    Variables are ``q(a)`` for every alternative followed by one slack per
    (agent, non-last class): the excess of ``q`` over ``p`` on that agent's
    upper contour set.  The objective maximizes the total excess.
    """
    from .lottery import prefix_masses

    m = profile.m
    thresholds = [(i, c) for i, o in enumerate(profile.orders) for c in range(o.k - 1)]
    nv = m + len(thresholds)
    lp = LinearProgram([Fraction(0)] * m + [Fraction(1)] * len(thresholds))
    lp.add([1] * m + [0] * len(thresholds), EQ, 1)
    masses = [prefix_masses(p, o) for o in profile.orders]
    for t, (i, c) in enumerate(thresholds):
        order = profile.orders[i]
        row = [0] * nv
        for a in range(m):
            if order.position[a] <= c:
                row[a] = 1
        row[m + t] = -1
        lp.add(row, EQ, masses[i][c])
    return lp
