"""Axiom checkers for probabilistic voting rules.

Every check is exact.  Rules are passed as plain callables ``profile -> Lottery``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .lottery import (SD, Lottery, exists_strict_sd_improvement, sd_compare,
                      sd_strictly_prefers, sd_weakly_prefers, uniform)
from .prefs import Profile, WeakOrder, all_weak_orders, drop_agent, reinforcements
from .ratlp import EQ, LE, LinearProgram, build_sd_dominance_lp, solve_lp

Rule = Callable[[Profile], Lottery]

PROPSHARE_MAX_GROUPS = 20
SCAN_MAX_ALTERNATIVES = 5


class VerifyError(ValueError):
    pass


# --- efficiency -------------------------------------------------------------

def pareto_dominates(profile: Profile, b: int, a: int) -> bool:
    """``b`` is weakly better than ``a`` for everyone and strictly for someone."""
    strict = False
    for o in profile.orders:
        if o.position[b] > o.position[a]:
            return False
        strict = strict or o.position[b] < o.position[a]
    return strict


def pareto_optimal_set(profile: Profile) -> frozenset[int]:
    return frozenset(a for a in profile.alternatives
                     if not any(pareto_dominates(profile, b, a) for b in profile.alternatives))


def ex_post_efficient(p: Lottery, profile: Profile) -> bool:
    return p.support <= pareto_optimal_set(profile)


@dataclass(frozen=True)
class EfficiencyVerdict:
    efficient: bool
    witness: Lottery | None = None
    # utility weights per (agent, class threshold) proving efficiency, when known
    certificate: dict[tuple[int, int], Fraction] | None = None

    @property
    def tag(self) -> str:
        return "efficient" if self.efficient else "dominated"


def _prefix_groups(profile: Profile) -> dict[frozenset[int], list[tuple[int, int]]]:
    groups: dict[frozenset[int], list[tuple[int, int]]] = {}
    for i, o in enumerate(profile.orders):
        acc: frozenset[int] = frozenset()
        for c in range(o.k - 1):
            acc = acc | o.classes[c]
            groups.setdefault(acc, []).append((i, c))
    return groups


def welfare_certificate(support: Iterable[int], profile: Profile) -> dict[tuple[int, int], Fraction] | None:
    """Find utilities under which every lottery on ``support`` maximizes total welfare.

    Agent ``i``'s utility for ``a`` is the sum of weights ``w[i, c] >= 1``
    over the class thresholds ``c`` that ``a`` clears.  Such weights exist iff
    lotteries with this support are SD-efficient, so ``None`` means dominated.
    """
    support = sorted(set(support))
    s0 = support[0]
    groups = list(_prefix_groups(profile).items())
    cols = []  # (prefix set, multiplicity)
    for P, members in groups:
        cols.append((P, len(members)))

    def row(a):
        return [(a in P) - (s0 in P) for P, _ in cols]

    def base(a):  # welfare gap to s0 under unit weights
        return sum(cnt * ((s0 in P) - (a in P)) for P, cnt in cols)

    others = [a for a in profile.alternatives if a not in support]
    if all(base(s) == 0 for s in support[1:]) and all(base(a) >= 0 for a in others):
        extra = [Fraction(0)] * len(cols)
    else:
        lp = LinearProgram([Fraction(0)] * len(cols))
        for s in support[1:]:
            lp.add(row(s), EQ, base(s))
        for a in others:
            lp.add(row(a), LE, base(a))
        out = solve_lp(lp)
        if not out.optimal:
            return None
        extra = out.x
    cert = {}
    for (P, members), v in zip(groups, extra):
        # spread the extra weight of a merged column over its members
        share = v / len(members)
        for key in members:
            cert[key] = 1 + share
    return cert


def check_welfare_certificate(support: Iterable[int], profile: Profile,
                              cert: dict[tuple[int, int], Fraction]) -> bool:
    """Independent check: weights >= 1 and the support lies in the welfare argmax."""
    if any(w < 1 for w in cert.values()):
        return False
    welfare = [Fraction(0)] * profile.m
    for i, o in enumerate(profile.orders):
        for c in range(o.k - 1):
            w = cert[i, c]
            for a in range(profile.m):
                if o.position[a] <= c:
                    welfare[a] += w
    top = max(welfare)
    return all(welfare[a] == top for a in support)


def _dominance_witness(p: Lottery, profile: Profile) -> Lottery | None:
    out = solve_lp(build_sd_dominance_lp(p, profile))
    if out.value == 0:
        return None
    return Lottery(out.x[:profile.m])


def sd_efficient(p: Lottery, profile: Profile, method: str = "auto") -> EfficiencyVerdict:
    """Decide SD-efficiency of ``p``.

    ``method="lp"`` solves the slack-maximization LP directly.  ``"auto"``
    first looks for a welfare certificate (a much smaller LP that only
    depends on the support) and falls back to the full LP for a witness.
    """
    if method == "lp":
        q = _dominance_witness(p, profile)
        return EfficiencyVerdict(q is None, q)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    cert = welfare_certificate(p.support, profile)
    if cert is not None:
        return EfficiencyVerdict(True, certificate=cert)
    q = _dominance_witness(p, profile)
    if q is None:  # pragma: no cover - the two LPs are dual to each other
        raise AssertionError("welfare LP infeasible but no dominating lottery found")
    return EfficiencyVerdict(False, q)


def sd_dominates_for_profile(q: Lottery, p: Lottery, profile: Profile) -> bool:
    """``q`` weakly SD-better than ``p`` for all agents and strictly for one."""
    verdicts = [sd_compare(q, p, o) for o in profile.orders]
    return all(v in (SD.FIRST, SD.EQUAL) for v in verdicts) and SD.FIRST in verdicts


# --- fairness ---------------------------------------------------------------

def sd_uniform_ok(p: Lottery, profile: Profile) -> bool:
    u = uniform(profile.alternatives, profile.m)
    return all(sd_weakly_prefers(p, u, o) for o in profile.orders)


def proportional_share_ok(p: Lottery, profile: Profile, cap: int = PROPSHARE_MAX_GROUPS) -> bool:
    """Every coalition S gets at least |S|/n on the union of its members' top classes.

    Agents with identical top classes are grouped; for each set of groups the
    binding coalition is everyone whose top class lies inside the union.
    """
    tops = list(Counter(o.top for o in profile.orders))
    if len(tops) > cap:
        raise VerifyError(f"{len(tops)} distinct top classes exceed the cap of {cap}")
    n = profile.n
    for r in range(1, len(tops) + 1):
        for T in itertools.combinations(tops, r):
            union = frozenset().union(*T)
            size = sum(o.top <= union for o in profile.orders)
            if p.mass(union) < Fraction(size, n):
                return False
    return True


# --- participation ----------------------------------------------------------

@dataclass(frozen=True)
class ParticipationReport:
    with_outcome: Lottery
    without_outcome: Lottery
    sd_ok: bool
    strong_ok: bool
    very_strong_ok: bool


def participation_report(rule: Rule, profile: Profile, i: int) -> ParticipationReport:
    if profile.n < 2:
        raise VerifyError("participation needs at least two agents")
    order = profile.orders[i]
    q = rule(profile)
    p = rule(drop_agent(profile, i))
    cmp = sd_compare(q, p, order)
    strong = cmp in (SD.FIRST, SD.EQUAL)
    very = strong and (cmp is SD.FIRST or not exists_strict_sd_improvement(p, order))
    return ParticipationReport(q, p, cmp is not SD.SECOND, strong, very)


# --- strategyproofness ------------------------------------------------------

@dataclass(frozen=True)
class Manipulation:
    agent: int
    misreport: WeakOrder
    outcome: Lottery
    truthful: Lottery


def strategyproofness_scan(rule: Rule, profile: Profile, i: int, domain: str = "all",
                           cap: int = SCAN_MAX_ALTERNATIVES) -> list[Manipulation]:
    """All misreports of agent ``i`` (within ``domain``) that strictly SD-benefit ``i``."""
    if profile.m > cap:
        raise VerifyError(f"m={profile.m} exceeds the scan cap of {cap}")
    truth = profile.orders[i]
    truthful = rule(profile)
    found = []
    for lie in all_weak_orders(profile.m, domain):
        if lie == truth:
            continue
        outcome = rule(profile.with_order(i, lie))
        if sd_strictly_prefers(outcome, truthful, truth):
            found.append(Manipulation(i, lie, outcome, truthful))
    return found


# --- monotonicity -----------------------------------------------------------

def monotonicity_check(rule: Rule, profile: Profile, i: int, a: int) -> bool:
    before = rule(profile)[a]
    return all(rule(profile.with_order(i, w))[a] >= before for w in reinforcements(profile.orders[i], a))
