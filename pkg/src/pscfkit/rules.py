"""Probabilistic voting rules: RMEC, s-MEC, rank-maximal, random and serial dictatorship, RSD."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .lottery import Lottery, uniform
from .prefs import Profile, max_within

RankVector = tuple[int, ...]

RSD_MAX_AGENTS = 16


class RuleError(ValueError):
    pass


class Lex(enum.Enum):
    BETTER = "better"
    EQUAL = "equal"
    WORSE = "worse"


@dataclass(frozen=True)
class ScoringVector:
    """Positional scores ``s_1 > s_2 > ... > s_m`` for the 1st, 2nd, ... class."""

    scores: tuple[Fraction, ...]

    def __post_init__(self):
        scores = tuple(Fraction(s) for s in self.scores)
        if not scores:
            raise RuleError("empty scoring vector")
        if any(a <= b for a, b in zip(scores, scores[1:])):
            raise RuleError(f"scoring vector must be strictly decreasing: {[str(s) for s in scores]}")
        object.__setattr__(self, "scores", scores)

    def __len__(self):
        return len(self.scores)

    @classmethod
    def parse(cls, text: str) -> "ScoringVector":
        try:
            return cls(tuple(Fraction(tok.strip()) for tok in text.split(",")))
        except (ValueError, ZeroDivisionError) as exc:
            raise RuleError(f"bad scoring vector {text!r}: {exc}") from None

    @classmethod
    def borda(cls, m: int) -> "ScoringVector":
        return cls(tuple(range(m - 1, -1, -1)))

    @classmethod
    def rank_maximal(cls, n: int, m: int) -> "ScoringVector":
        """Base-(n+1) weights; total score order equals lexicographic rank-vector order."""
        return cls(tuple((n + 1) ** (m - j) for j in range(1, m + 1)))


def rank_vectors(profile: Profile, stats: dict | None = None) -> list[RankVector]:
    """Rank vector of every alternative (zero-padded to length m)."""
    m = profile.m
    counts = [[0] * m for _ in range(m)]
    for order in profile.orders:
        for a, j in enumerate(order.position):
            counts[a][j] += 1
    if stats is not None:
        stats["ops"] = stats.get("ops", 0) + m * m + profile.n * m
    return [tuple(c) for c in counts]


def rank_vector_alt(a: int, profile: Profile) -> RankVector:
    if not 0 <= a < profile.m:
        raise RuleError(f"alternative {a} not in universe")
    return rank_vectors(profile)[a]


def lex_compare(r: Sequence[int], s: Sequence[int]) -> Lex:
    if len(r) != len(s):
        raise RuleError("rank vectors of different lengths")
    for x, y in zip(r, s):
        if x != y:
            return Lex.BETTER if x > y else Lex.WORSE
    return Lex.EQUAL


def _as_scores(s, m: int) -> ScoringVector:
    s = s if isinstance(s, ScoringVector) else ScoringVector(tuple(s))
    if len(s) != m:
        raise RuleError(f"scoring vector has length {len(s)}, expected {m}")
    return s


def positional_scores(profile: Profile, s: ScoringVector) -> list[Fraction]:
    s = _as_scores(s, profile.m)
    total = [Fraction(0)] * profile.m
    for order in profile.orders:
        for a, j in enumerate(order.position):
            total[a] += s.scores[j]
    return total


def positional_score(a: int, profile: Profile, s: ScoringVector) -> Fraction:
    return positional_scores(profile, s)[a]


def _keys(profile: Profile, comparator, stats=None) -> list:
    """Per-alternative sort keys: bigger is better."""
    if comparator is None:
        return rank_vectors(profile, stats)
    return positional_scores(profile, comparator)


def _best(top: Iterable[int], keys: list, m: int, stats=None) -> frozenset[int]:
    top = sorted(top)
    best = max(keys[a] for a in top)
    if stats is not None:
        stats["ops"] = stats.get("ops", 0) + 2 * len(top) * m
    return frozenset(a for a in top if keys[a] == best)


def contribution_set(i: int, profile: Profile, comparator: ScoringVector | None = None) -> frozenset[int]:
    """Agent ``i``'s top-class alternatives that are best under ``comparator``.

    ``comparator=None`` compares rank vectors lexicographically; a
    :class:`ScoringVector` compares total positional scores.
    """
    keys = _keys(profile, comparator)
    return _best(profile.orders[i].top, keys, profile.m)


def mec_components(profile: Profile, comparator: ScoringVector | None = None,
                   stats: dict | None = None) -> list[tuple[Fraction, ...]]:
    """Per-agent contributions: ``1/n`` spread evenly over the agent's contribution set."""
    if comparator is not None:
        comparator = _as_scores(comparator, profile.m)
    keys = _keys(profile, comparator, stats)
    n, m = profile.n, profile.m
    out = []
    for order in profile.orders:
        F = _best(order.top, keys, m, stats)
        share = Fraction(1, n * len(F))
        out.append(tuple(share if a in F else Fraction(0) for a in range(m)))
    return out


def mec_support(profile: Profile, comparator: ScoringVector | None = None) -> frozenset[int]:
    """Support of the MEC outcome: the union of all contribution sets."""
    keys = _keys(profile, comparator)
    return frozenset().union(*(_best(o.top, keys, profile.m) for o in profile.orders))


def _sum_components(components: list[tuple[Fraction, ...]]) -> Lottery:
    return Lottery(tuple(sum(col, Fraction(0)) for col in zip(*components)))


def rmec(profile: Profile, stats: dict | None = None) -> Lottery:
    """Rank Maximal Equal Contribution."""
    return _sum_components(mec_components(profile, None, stats))


def s_mec(profile: Profile, scores: ScoringVector | Sequence) -> Lottery:
    """Maximal equal contribution with respect to a decreasing scoring vector."""
    return _sum_components(mec_components(profile, _as_scores(scores, profile.m)))


def rank_maximal_rule(profile: Profile) -> Lottery:
    vectors = rank_vectors(profile)
    best = max(vectors)
    return uniform((a for a, r in enumerate(vectors) if r == best), profile.m)


def random_dictatorship(profile: Profile) -> Lottery:
    if not all(o.is_strict() for o in profile.orders):
        raise RuleError("random dictatorship needs strict preferences")
    counts = [0] * profile.m
    for o in profile.orders:
        (top,) = o.top
        counts[top] += 1
    return Lottery(tuple(Fraction(c, profile.n) for c in counts))


def serial_dictatorship(profile: Profile, perm: Sequence[int]) -> frozenset[int]:
    if sorted(perm) != list(range(profile.n)):
        raise RuleError(f"{list(perm)} is not a permutation of the agents")
    W = frozenset(profile.alternatives)
    for i in perm:
        W = max_within(profile.orders[i], W)
    return W


def rsd(profile: Profile) -> Lottery:
    """Random serial dictatorship, averaged exactly over all n! orderings.

    Memoizes on (agents still to move, current working set), so the cost is
    bounded by 2^n times the number of distinct working sets.
    """
    n, m = profile.n, profile.m
    if n > RSD_MAX_AGENTS:
        raise RuleError(f"exact RSD limited to {RSD_MAX_AGENTS} agents")
    orders = profile.orders

    @lru_cache(maxsize=None)
    def value(remaining: int, W: frozenset[int]) -> tuple[Fraction, ...]:
        if remaining == 0 or len(W) == 1:
            share = Fraction(1, len(W))
            return tuple(share if a in W else Fraction(0) for a in range(m))
        agents = [i for i in range(n) if remaining >> i & 1]
        acc = [Fraction(0)] * m
        for i in agents:
            sub = value(remaining & ~(1 << i), max_within(orders[i], W))
            for a in range(m):
                acc[a] += sub[a]
        k = len(agents)
        return tuple(x / k for x in acc)

    return Lottery(value((1 << n) - 1, frozenset(range(m))))


RULES: dict[str, Callable[[Profile], Lottery]] = {
    "rmec": rmec,
    "rankmax": rank_maximal_rule,
    "rd": random_dictatorship,
    "rsd": rsd,
}


def get_rule(name: str, scores: ScoringVector | None = None) -> Callable[[Profile], Lottery]:
    if name == "smec":
        if scores is None:
            raise RuleError("smec needs a scoring vector")
        return lambda profile: s_mec(profile, scores)
    try:
        return RULES[name]
    except KeyError:
        raise RuleError(f"unknown rule {name!r}; choose from rmec, smec, rankmax, rd, rsd") from None
