from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import profiles
from pscfkit.lottery import (SD, Lottery, LotteryError, degenerate, exists_strict_sd_improvement,
                             lottery_from, mix, rank_vector_lottery, sd_compare, uniform,
                             upper_contour_mass)
from pscfkit.prefs import WeakOrder, parse_order
from pscfkit.rules import rank_vectors, rmec

a, b, c, d, e, f = range(6)


@st.composite
def lotteries(draw, m):
    weights = draw(st.lists(st.integers(0, 6), min_size=m, max_size=m).filter(any))
    total = sum(weights)
    return Lottery(tuple(F(w, total) for w in weights))


@st.composite
def lottery_and_order(draw, max_m=5):
    m = draw(st.integers(1, max_m))
    word = draw(st.lists(st.integers(0, m - 1), min_size=m, max_size=m))
    used = sorted(set(word))
    order = WeakOrder.from_lists([[x for x in range(m) if word[x] == k] for k in used])
    return draw(lotteries(m)), draw(lotteries(m)), order


def test_lottery_from_example_outcome():
    p = lottery_from([(a, F(1, 10)), (c, F(3, 5)), (d, F(1, 5)), (f, F(1, 10))], 6)
    assert p.support == {a, c, d, f}
    assert p[b] == 0
    assert degenerate(a, 3).probs == (1, 0, 0)


@pytest.mark.parametrize("pairs", [[(a, F(1, 2)), (b, F(1, 3))], [(a, F(3, 2)), (b, F(-1, 2))]])
def test_lottery_validation(pairs):
    with pytest.raises(LotteryError):
        lottery_from(pairs, 3)


def test_upper_contour_mass(dichotomous):
    p = lottery_from([(d, F(8, 10)), (b, F(1, 10)), (c, F(1, 10))], 4)
    assert upper_contour_mass(p, dichotomous[8], a) == F(1, 10)
    assert upper_contour_mass(p, dichotomous[8], d) == 1
    q = lottery_from([(d, F(9, 10)), (a, F(1, 10))], 4)
    assert upper_contour_mass(q, dichotomous[0], d) == F(9, 10)
    with pytest.raises(LotteryError):
        upper_contour_mass(p, dichotomous[0], 7)


def test_sd_compare_rsd_profile(rsd_profile):
    p = lottery_from([(a, F(1, 2)), (b, F(1, 2))], 4)
    q = lottery_from([(a, F(1, 3)), (b, F(1, 3)), (c, F(1, 6)), (d, F(1, 6))], 4)
    assert [sd_compare(p, q, o) for o in rsd_profile] == [SD.FIRST] * 4
    assert [sd_compare(q, p, o) for o in rsd_profile] == [SD.SECOND] * 4
    assert sd_compare(p, p, rsd_profile[0]) is SD.EQUAL


def test_sd_compare_indifference_and_incomparable():
    tie = WeakOrder.from_lists([[0, 1]])
    assert sd_compare(degenerate(0, 2), degenerate(1, 2), tie) is SD.EQUAL
    order = parse_order("a > b > c", "abc")
    p = lottery_from([(a, F(1, 2)), (c, F(1, 2))], 3)
    assert sd_compare(p, degenerate(b, 3), order) is SD.INCOMPARABLE


def test_strict_improvement(dichotomous):
    top = dichotomous[0]
    assert not exists_strict_sd_improvement(degenerate(d, 4), top)
    assert exists_strict_sd_improvement(degenerate(a, 2), parse_order("b > a", "ab"))
    p = lottery_from([(d, F(8, 10)), (b, F(1, 10)), (c, F(1, 10))], 4)
    assert exists_strict_sd_improvement(p, dichotomous[8])


def test_mix(example1):
    p = lottery_from([(a, F(1, 3)), (b, F(2, 3))], 2)
    assert mix([(F(1, 2), p), (F(1, 2), p)]) == p
    assert mix([(F(1, 2), degenerate(a, 2)), (F(1, 2), degenerate(b, 2))]) == uniform([a, b], 2)
    # the five per-agent RMEC picks of the worked example
    picks = [degenerate(c, 6), degenerate(d, 6), uniform([a, f], 6), degenerate(c, 6), degenerate(c, 6)]
    assert mix([(F(1, 5), x) for x in picks]) == rmec(example1)
    with pytest.raises(LotteryError):
        mix([(F(1, 2), p)])


def test_rank_vector_lottery(example1):
    r = rank_vectors(example1)
    for x in range(6):
        assert rank_vector_lottery(degenerate(x, 6), example1) == tuple(F(v) for v in r[x])
    u = rank_vector_lottery(uniform(range(6), 6), example1)
    for j in range(6):
        assert u[j] == F(sum(len(o.classes[j]) for o in example1 if j < o.k), 6)
    assert sum(rank_vector_lottery(rmec(example1), example1)) == 5


def test_json_output():
    p = lottery_from([(c, F(1, 4)), (a, F(3, 4))], 3)
    assert list(p.to_json("abc").items()) == [("a", "3/4"), ("c", "1/4")]


@given(lottery_and_order())
def test_upper_contour_monotone(args):
    p, _, order = args
    assert sum(p) == 1
    masses = [upper_contour_mass(p, order, min(cls)) for cls in order.classes]
    assert masses == sorted(masses) and masses[-1] == 1
    for cls in order.classes:
        assert len({upper_contour_mass(p, order, y) for y in cls}) == 1


@given(lottery_and_order(), st.randoms())
def test_sd_compare_properties(args, rnd):
    p, q, order = args
    assert sd_compare(p, p, order) is SD.EQUAL
    flipped = {SD.FIRST: SD.SECOND, SD.SECOND: SD.FIRST, SD.EQUAL: SD.EQUAL, SD.INCOMPARABLE: SD.INCOMPARABLE}
    assert sd_compare(q, p, order) is flipped[sd_compare(p, q, order)]
    perm = list(range(order.m))
    rnd.shuffle(perm)
    assert sd_compare(p.relabel(perm), q.relabel(perm), order.relabel(perm)) is sd_compare(p, q, order)


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(lotteries(m), lotteries(m), lotteries(m))),
       st.fractions(0, 1), st.fractions(0, 1))
def test_mix_flattening(ls, s, t):
    p, q, r = ls
    inner = mix([(t, q), (1 - t, r)])
    nested = mix([(s, p), (1 - s, inner)])
    flat = mix([(s, p), ((1 - s) * t, q), ((1 - s) * (1 - t), r)])
    assert nested == flat


@given(profiles(max_n=6, max_m=5), st.data())
def test_rank_vector_lottery_sums_to_n(profile, data):
    p = data.draw(lotteries(profile.m))
    assert sum(rank_vector_lottery(p, profile)) == profile.n
