"""Exact lotteries over alternatives and stochastic dominance."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .prefs import Profile, WeakOrder

Rational = Fraction


class LotteryError(ValueError):
    pass


@dataclass(frozen=True)
class Lottery:
    """Probability vector indexed by alternative id."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(Fraction(x) for x in self.probs)
        if not probs:
            raise LotteryError("lottery over an empty set of alternatives")
        if any(x < 0 for x in probs):
            raise LotteryError("negative probability")
        if sum(probs) != 1:
            raise LotteryError(f"probabilities sum to {sum(probs)}, not 1")
        object.__setattr__(self, "probs", probs)

    @property
    def m(self) -> int:
        return len(self.probs)

    def __getitem__(self, a: int) -> Fraction:
        return self.probs[a]

    def __iter__(self):
        return iter(self.probs)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(a for a, x in enumerate(self.probs) if x > 0)

    def mass(self, alternatives: Iterable[int]) -> Fraction:
        return sum((self.probs[a] for a in alternatives), Fraction(0))

    def relabel(self, perm: Sequence[int]) -> "Lottery":
        probs = [Fraction(0)] * self.m
        for a, b in enumerate(perm):
            probs[b] = self.probs[a]
        return Lottery(tuple(probs))

    def to_json(self, labels: Sequence[str]) -> dict[str, str]:
        return {labels[a]: f"{x.numerator}/{x.denominator}" for a, x in enumerate(self.probs) if x > 0}

    def format(self, labels: Sequence[str]) -> str:
        return " + ".join(f"{x} {labels[a]}" for a, x in enumerate(self.probs) if x > 0)


def lottery_from(pairs: Iterable[tuple[int, Fraction | int | str]], m: int) -> Lottery:
    probs = [Fraction(0)] * m
    for a, x in pairs:
        if not 0 <= a < m:
            raise LotteryError(f"alternative {a} outside 0..{m - 1}")
        probs[a] += Fraction(x)
    return Lottery(tuple(probs))


def degenerate(a: int, m: int) -> Lottery:
    return lottery_from([(a, 1)], m)


def uniform(alternatives: Iterable[int], m: int) -> Lottery:
    alts = sorted(set(alternatives))
    if not alts:
        raise LotteryError("uniform lottery over an empty set")
    w = Fraction(1, len(alts))
    return lottery_from(((a, w) for a in alts), m)


def mix(entries: Iterable[tuple[Fraction | int, Lottery]]) -> Lottery:
    entries = [(Fraction(w), p) for w, p in entries]
    if not entries:
        raise LotteryError("empty mixture")
    if any(w < 0 for w, _ in entries):
        raise LotteryError("negative mixture weight")
    if sum(w for w, _ in entries) != 1:
        raise LotteryError("mixture weights must sum to 1")
    m = entries[0][1].m
    if any(p.m != m for _, p in entries):
        raise LotteryError("mixing lotteries over different universes")
    return Lottery(tuple(sum((w * p[a] for w, p in entries), Fraction(0)) for a in range(m)))


def upper_contour_mass(p: Lottery, order: WeakOrder, y: int) -> Fraction:
    """Probability that ``p`` picks something at least as good as ``y``."""
    if not 0 <= y < order.m:
        raise LotteryError(f"alternative {y} not in universe")
    cutoff = order.position[y]
    return sum((p[a] for a in range(order.m) if order.position[a] <= cutoff), Fraction(0))


def prefix_masses(p: Lottery, order: WeakOrder) -> list[Fraction]:
    """Cumulative mass of the first 1, 2, ..., k classes."""
    out, acc = [], Fraction(0)
    for c in order.classes:
        acc += sum((p[a] for a in c), Fraction(0))
        out.append(acc)
    return out


class SD(enum.Enum):
    EQUAL = "equal"
    FIRST = "first_strict"
    SECOND = "second_strict"
    INCOMPARABLE = "incomparable"


def sd_compare(p: Lottery, q: Lottery, order: WeakOrder) -> SD:
    """Compare ``p`` and ``q`` under the SD extension of ``order``."""
    if p.m != q.m or p.m != order.m:
        raise LotteryError("lotteries and order must share the universe")
    p_better = q_better = False
    for x, y in zip(prefix_masses(p, order), prefix_masses(q, order)):
        if x > y:
            p_better = True
        elif x < y:
            q_better = True
    if p_better and q_better:
        return SD.INCOMPARABLE
    if p_better:
        return SD.FIRST
    if q_better:
        return SD.SECOND
    return SD.EQUAL


def sd_weakly_prefers(p: Lottery, q: Lottery, order: WeakOrder) -> bool:
    return sd_compare(p, q, order) in (SD.FIRST, SD.EQUAL)


def sd_strictly_prefers(p: Lottery, q: Lottery, order: WeakOrder) -> bool:
    return sd_compare(p, q, order) is SD.FIRST


def exists_strict_sd_improvement(p: Lottery, order: WeakOrder) -> bool:
    # any lottery beats p iff p leaves mass outside the top class
    return p.mass(order.top) < 1


def rank_vector_lottery(p: Lottery, profile: Profile) -> tuple[Fraction, ...]:
    r = [Fraction(0)] * profile.m
    for order in profile.orders:
        for a in range(profile.m):
            r[order.position[a]] += p[a]
    return tuple(r)
