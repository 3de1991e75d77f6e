"""Experiments and brute-force oracles."""

from __future__ import annotations

import hashlib
import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .lottery import Lottery, prefix_masses
from .prefs import Profile, count_weak_orders, sample_profile, unrank_weak_order
from .rules import get_rule, mec_support, rmec, rsd
from .verify import sd_efficient, welfare_certificate

# Counts reported for the RMEC experiment, keyed by (n, m).
PUBLISHED_TABLE2 = {
    (4, 4): 10000, (5, 4): 10000, (6, 4): 10000, (7, 4): 9999, (8, 4): 10000,
    (4, 5): 9999, (5, 5): 10000, (6, 5): 10000, (7, 5): 9998, (8, 5): 9999,
    (4, 6): 9999, (5, 6): 10000, (6, 6): 9996, (7, 6): 10000, (8, 6): 9999,
    (4, 7): 10000, (5, 7): 9999, (6, 7): 9997, (7, 7): 9998, (8, 7): 9999,
    (4, 8): 9999, (5, 8): 9996, (6, 8): 9998, (7, 8): 9997, (8, 8): 9996,
}

EXHAUSTIVE_BUDGET = 5_000_000
GRID_BUDGET = 2_000_000
RSD_MAX_N = 10


class BudgetError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentSpec:
    sizes: tuple[tuple[int, int], ...]
    trials: int = 10_000
    seed: int = 0
    rule: str = "rmec"
    max_n: int = 10
    max_m: int = 8

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for n, m in self.sizes:
            if not (1 <= n <= self.max_n and 1 <= m <= self.max_m):
                raise BudgetError(f"cell (n={n}, m={m}) outside n<={self.max_n}, m<={self.max_m}")

    @classmethod
    def grid(cls, ns, ms, **kw) -> "ExperimentSpec":
        return cls(tuple((n, m) for m in ms for n in ns), **kw)


@dataclass(frozen=True)
class CellResult:
    n: int
    m: int
    trials: int
    sd_efficient_count: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def rate(self) -> float:
        return self.sd_efficient_count / self.trials


def trial_seed(seed: int, n: int, m: int, trial: int) -> int:
    """64-bit seed for one trial, independent of every other trial."""
    digest = hashlib.blake2b(f"{seed}:{n}:{m}:{trial}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _run_cell(args) -> CellResult:
    spec, n, m = args
    rule = get_rule(spec.rule)
    start = time.perf_counter()
    good = 0
    for t in range(spec.trials):
        profile = sample_profile(n, m, trial_seed(spec.seed, n, m, t))
        good += sd_efficient(rule(profile), profile).efficient
    return CellResult(n, m, spec.trials, good, time.perf_counter() - start)


def run_table2(spec: ExperimentSpec, workers: int = 1,
               progress: Callable[[CellResult], None] | None = None) -> list[CellResult]:
    """Count SD-efficient outcomes over random profiles, one cell per (n, m)."""
    jobs = [(spec, n, m) for n, m in spec.sizes]
    if workers <= 1:
        results = []
        for job in jobs:
            results.append(_run_cell(job))
            if progress:
                progress(results[-1])
        return results
    with ProcessPoolExecutor(workers) as pool:
        results = list(pool.map(_run_cell, jobs))
    if progress:
        for r in results:
            progress(r)
    return results


def count_multisets(n: int, m: int) -> int:
    return math.comb(count_weak_orders(m) + n - 1, n)


def iter_anonymous_profiles(n: int, m: int) -> Iterator[Profile]:
    """Every profile up to permutation of agents (multisets of weak orders)."""
    orders = [unrank_weak_order(m, i) for i in range(count_weak_orders(m))]
    for combo in itertools.combinations_with_replacement(orders, n):
        yield Profile(combo)


def exhaustive_rmec_efficiency(n: int, m: int, budget: int = EXHAUSTIVE_BUDGET,
                               progress: Callable[[int], None] | None = None) -> int:
    """Number of anonymity-reduced profiles whose RMEC outcome is SD-inefficient.

    SD-efficiency of a lottery depends only on its support, so each profile
    is checked via the support of its RMEC outcome.
    """
    total = count_multisets(n, m)
    if total > budget:
        raise BudgetError(f"{total} profiles exceed the budget of {budget}")
    bad = 0
    for k, profile in enumerate(iter_anonymous_profiles(n, m)):
        if welfare_certificate(mec_support(profile), profile) is None:
            bad += 1
        if progress and k % 100_000 == 0:
            progress(k)
    return bad


def support_containment_check(profile: Profile) -> bool:
    """supp(RMEC) is contained in supp(RSD)."""
    if profile.n > RSD_MAX_N:
        raise BudgetError(f"RSD check limited to n <= {RSD_MAX_N}")
    return rmec(profile).support <= rsd(profile).support


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def grid_dominance_oracle(p: Lottery, profile: Profile, L: int,
                          budget: int = GRID_BUDGET) -> Lottery | None:
    """Search lotteries with probabilities in {0, 1/L, ..., 1} for one that SD-dominates ``p``.

    A returned witness is always valid; ``None`` proves nothing.
    """
    m = profile.m
    if math.comb(L + m - 1, m - 1) > budget:
        raise BudgetError(f"grid of denominator {L} over {m} alternatives exceeds the budget")
    # thresholds scaled by L so the grid point comparison stays in integers
    targets = [[x * L for x in prefix_masses(p, o)] for o in profile.orders]
    classes = [o.classes for o in profile.orders]
    for counts in _compositions(L, m):
        strict = False
        ok = True
        for cls, tgt in zip(classes, targets):
            acc = 0
            for c, t in zip(cls, tgt):
                acc += sum(counts[a] for a in c)
                if acc < t:
                    ok = False
                    break
                if acc > t:
                    strict = True
            if not ok:
                break
        if ok and strict:
            return Lottery(tuple(Fraction(k, L) for k in counts))
    return None


def random_profile(rng: random.Random, max_n: int, max_m: int, min_n: int = 1, min_m: int = 1) -> Profile:
    n = rng.randint(min_n, max_n)
    m = rng.randint(min_m, max_m)
    return sample_profile(n, m, rng)
