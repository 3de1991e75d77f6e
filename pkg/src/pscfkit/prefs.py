"""Weak-order preference profiles.

Alternatives are the integers ``0..m-1``; a :class:`Profile` carries the
display labels.  A :class:`WeakOrder` is an ordered partition of the
alternatives into indifference classes, best class first.

Text format (one agent per line)::

    # comment
    alternatives: a b c d
    1: a, b > c
    2: d > a > b, c
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class PreferenceError(ValueError):
    """Malformed weak order or profile."""


@dataclass(frozen=True)
class WeakOrder:
    classes: tuple[frozenset[int], ...]
    # 0-based class position of every alternative, indexed by id
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        classes = tuple(frozenset(c) for c in self.classes)
        seen: set[int] = set()
        for c in classes:
            if not c:
                raise PreferenceError("empty indifference class")
            if seen & c:
                raise PreferenceError(f"duplicate alternative(s) {sorted(seen & c)}")
            seen |= c
        m = len(seen)
        if m == 0 or seen != set(range(m)):
            raise PreferenceError("classes must partition the alternatives 0..m-1")
        pos = [0] * m
        for j, c in enumerate(classes):
            for a in c:
                pos[a] = j
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "position", tuple(pos))

    @classmethod
    def from_lists(cls, classes: Iterable[Iterable[int]]) -> "WeakOrder":
        return cls(tuple(frozenset(c) for c in classes))

    @property
    def m(self) -> int:
        return len(self.position)

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def top(self) -> frozenset[int]:
        return self.classes[0]

    def is_strict(self) -> bool:
        return self.k == self.m

    def is_dichotomous(self) -> bool:
        return self.k <= 2

    def prefers(self, a: int, b: int) -> bool:
        """``a`` strictly preferred to ``b``."""
        return self.position[a] < self.position[b]

    def weakly_prefers(self, a: int, b: int) -> bool:
        return self.position[a] <= self.position[b]

    def relabel(self, perm: Sequence[int]) -> "WeakOrder":
        """Rename alternative ``a`` to ``perm[a]``."""
        return WeakOrder(tuple(frozenset(perm[a] for a in c) for c in self.classes))


def class_index(order: WeakOrder, a: int) -> int:
    """1-based index of the indifference class containing ``a``."""
    if not 0 <= a < order.m:
        raise PreferenceError(f"alternative {a} not in universe of size {order.m}")
    return order.position[a] + 1


def max_within(order: WeakOrder, within: Iterable[int]) -> frozenset[int]:
    """The most preferred alternatives of ``within`` under ``order``."""
    within = frozenset(within)
    if not within:
        raise PreferenceError("max_within of an empty set")
    best = min(order.position[a] for a in within)
    return frozenset(a for a in within if order.position[a] == best)


def default_labels(m: int) -> tuple[str, ...]:
    if m <= 26:
        return tuple(chr(ord("a") + i) for i in range(m))
    return tuple(f"a{i + 1}" for i in range(m))


@dataclass(frozen=True)
class Profile:
    orders: tuple[WeakOrder, ...]
    labels: tuple[str, ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        orders = tuple(self.orders)
        if not orders:
            raise PreferenceError("a profile needs at least one agent")
        m = orders[0].m
        if any(o.m != m for o in orders):
            raise PreferenceError("orders disagree on the number of alternatives")
        labels = tuple(self.labels) or default_labels(m)
        if len(labels) != m or len(set(labels)) != m:
            raise PreferenceError("labels must be unique, one per alternative")
        names = tuple(self.names) or tuple(str(i + 1) for i in range(len(orders)))
        if len(names) != len(orders):
            raise PreferenceError("one name per agent")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return len(self.orders)

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def alternatives(self) -> range:
        return range(self.m)

    def __iter__(self) -> Iterator[WeakOrder]:
        return iter(self.orders)

    def __getitem__(self, i: int) -> WeakOrder:
        return self.orders[i]

    def label_id(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise PreferenceError(f"unknown alternative {label!r}") from None

    def with_order(self, i: int, order: WeakOrder) -> "Profile":
        orders = list(self.orders)
        orders[i] = order
        return Profile(tuple(orders), self.labels, self.names)

    def insert_agent(self, i: int, order: WeakOrder, name: str | None = None) -> "Profile":
        orders = list(self.orders)
        names = list(self.names)
        orders.insert(i, order)
        names.insert(i, name if name is not None else str(len(names) + 1))
        return Profile(tuple(orders), self.labels, tuple(names))

    def permute_agents(self, perm: Sequence[int]) -> "Profile":
        """Agent ``perm[j]`` of ``self`` becomes agent ``j``."""
        return Profile(tuple(self.orders[p] for p in perm), self.labels,
                       tuple(self.names[p] for p in perm))

    def relabel(self, perm: Sequence[int]) -> "Profile":
        """Rename alternative ``a`` to ``perm[a]``; labels travel with the alternatives."""
        labels = [""] * self.m
        for a, b in enumerate(perm):
            labels[b] = self.labels[a]
        return Profile(tuple(o.relabel(perm) for o in self.orders), tuple(labels), self.names)


def profile_of(orders: Iterable[Sequence[Iterable[int]] | WeakOrder], labels: Sequence[str] = ()) -> Profile:
    """Build a profile from nested lists of alternative ids."""
    return Profile(tuple(o if isinstance(o, WeakOrder) else WeakOrder.from_lists(o) for o in orders),
                   tuple(labels))


def drop_agent(profile: Profile, i: int) -> Profile:
    if profile.n < 2:
        raise PreferenceError("cannot remove the only agent")
    if not 0 <= i < profile.n:
        raise IndexError(i)
    return Profile(profile.orders[:i] + profile.orders[i + 1:], profile.labels,
                   profile.names[:i] + profile.names[i + 1:])


# --- text codec -------------------------------------------------------------

def parse_order(text: str, labels: Sequence[str]) -> WeakOrder:
    index = {lab: a for a, lab in enumerate(labels)}
    classes = []
    seen: set[int] = set()
    for part in text.split(">"):
        cls = set()
        for tok in part.split(","):
            tok = tok.strip()
            if not tok:
                raise PreferenceError(f"empty class or stray comma in {text!r}")
            if tok not in index:
                raise PreferenceError(f"unknown alternative {tok!r}")
            a = index[tok]
            if a in seen:
                raise PreferenceError(f"duplicate alternative {tok!r} in {text!r}")
            seen.add(a)
            cls.add(a)
        classes.append(frozenset(cls))
    missing = set(range(len(labels))) - seen
    if missing:
        raise PreferenceError(f"missing alternative(s) {[labels[a] for a in sorted(missing)]} in {text!r}")
    return WeakOrder(tuple(classes))


def format_order(order: WeakOrder, labels: Sequence[str] | None = None) -> str:
    labels = labels or default_labels(order.m)
    return " > ".join(", ".join(labels[a] for a in sorted(c)) for c in order.classes)


def parse_profile(text: str) -> Profile:
    labels: list[str] | None = None
    pending: list[tuple[str, str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip() == "alternatives":
            if labels is not None or pending:
                raise PreferenceError("the alternatives line must come first")
            labels = rest.split()
            if len(set(labels)) != len(labels):
                raise PreferenceError("duplicate alternative labels")
            continue
        if sep:
            pending.append((head.strip(), rest))
        else:
            pending.append((str(len(pending) + 1), line))
    if not pending:
        raise PreferenceError("profile has no agents")
    if labels is None:
        labels = sorted({tok.strip() for tok in pending[0][1].replace(">", ",").split(",") if tok.strip()})
    orders = tuple(parse_order(body, labels) for _, body in pending)
    return Profile(orders, tuple(labels), tuple(name for name, _ in pending))


def format_profile(profile: Profile) -> str:
    lines = ["alternatives: " + " ".join(profile.labels)]
    for name, order in zip(profile.names, profile.orders):
        lines.append(f"{name}: {format_order(order, profile.labels)}")
    return "\n".join(lines) + "\n"


# --- enumeration ------------------------------------------------------------

@lru_cache(maxsize=None)
def _surjections(m: int, k: int) -> int:
    """Number of maps {0..m-1} -> {0..k-1} hitting every value."""
    return sum((-1) ** i * math.comb(k, i) * (k - i) ** m for i in range(k + 1))


@lru_cache(maxsize=None)
def _completions(r: int, k: int, unused: int) -> int:
    """Fillings of ``r`` free letters over ``k`` values that use all ``unused`` missing values."""
    return sum((-1) ** i * math.comb(unused, i) * (k - i) ** r for i in range(unused + 1))


@lru_cache(maxsize=None)
def count_weak_orders(m: int) -> int:
    """Ordered Bell (Fubini) number: 1, 3, 13, 75, 541, ..."""
    if m < 1:
        raise ValueError("m must be positive")
    return sum(_surjections(m, k) for k in range(1, m + 1))


def unrank_weak_order(m: int, index: int) -> WeakOrder:
    """Weak order number ``index`` in the canonical enumeration.

    Orders with fewer classes come first.  Among orders with ``k`` classes
    the order follows the lexicographic order of the assignment word
    ``(class of alternative 0, class of alternative 1, ...)``.
    """
    total = count_weak_orders(m)
    if not 0 <= index < total:
        raise IndexError(f"index {index} out of range for m={m} ({total} weak orders)")
    k = 1
    while index >= _surjections(m, k):
        index -= _surjections(m, k)
        k += 1
    word = []
    used: set[int] = set()
    for pos in range(m):
        for c in range(k):
            unused = k - len(used | {c})
            cnt = _completions(m - pos - 1, k, unused)
            if index < cnt:
                word.append(c)
                used.add(c)
                break
            index -= cnt
    classes = [set() for _ in range(k)]
    for a, c in enumerate(word):
        classes[c].add(a)
    return WeakOrder(tuple(frozenset(c) for c in classes))


def rank_weak_order(order: WeakOrder) -> int:
    """Inverse of :func:`unrank_weak_order`."""
    m, k = order.m, order.k
    index = sum(_surjections(m, j) for j in range(1, k))
    used: set[int] = set()
    for pos, c in enumerate(order.position):
        for smaller in range(c):
            index += _completions(m - pos - 1, k, k - len(used | {smaller}))
        used.add(c)
    return index


def all_weak_orders(m: int, domain: str = "all") -> list[WeakOrder]:
    """Every weak order on ``m`` alternatives, canonical order, filtered by domain."""
    if domain not in ("all", "strict", "dichotomous"):
        raise ValueError(f"unknown domain {domain!r}")
    orders = [unrank_weak_order(m, i) for i in range(count_weak_orders(m))]
    if domain == "strict":
        orders = [o for o in orders if o.is_strict()]
    elif domain == "dichotomous":
        orders = [o for o in orders if o.is_dichotomous()]
    return orders


def sample_profile(n: int, m: int, seed: int | random.Random) -> Profile:
    """``n`` weak orders drawn independently and uniformly from all weak orders on ``m``."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    total = count_weak_orders(m)
    return Profile(tuple(unrank_weak_order(m, rng.randrange(total)) for _ in range(n)))


def reinforcements(order: WeakOrder, a: int) -> list[WeakOrder]:
    """Single-step promotions of ``a``: split it out upward, or merge it into the class above."""
    j = class_index(order, a) - 1
    classes = list(order.classes)
    rest = classes[j] - {a}
    out = []
    if rest:
        out.append(WeakOrder(tuple(classes[:j] + [frozenset({a}), rest] + classes[j + 1:])))
    if j > 0:
        merged = classes[:j - 1] + [classes[j - 1] | {a}] + ([rest] if rest else []) + classes[j + 1:]
        out.append(WeakOrder(tuple(merged)))
    return out
