import itertools
from fractions import Fraction as F
from math import lcm

import pytest
from hypothesis import given, settings, strategies as st

from conftest import profiles
from pscfkit.lottery import Lottery, lottery_from, uniform
from pscfkit.prefs import Profile, WeakOrder, all_weak_orders, class_index, parse_profile
from pscfkit.rules import (Lex, RuleError, ScoringVector, contribution_set, lex_compare, mec_components,
                           mec_support, positional_score, random_dictatorship, rank_maximal_rule,
                           rank_vector_alt, rank_vectors, rmec, rsd, s_mec, serial_dictatorship)
from pscfkit.verify import pareto_optimal_set

a, b, c, d, e, f = range(6)


def rsd_by_permutations(profile):
    """Oracle: literal average over all n! serial dictatorships."""
    total = [F(0)] * profile.m
    perms = list(itertools.permutations(range(profile.n)))
    for perm in perms:
        W = serial_dictatorship(profile, perm)
        for x in W:
            total[x] += F(1, len(W))
    return Lottery(tuple(t / len(perms) for t in total))


def test_rank_vectors_example1(example1):
    expected = {a: (2, 1, 1, 1, 0, 0), b: (2, 1, 1, 0, 1, 0), c: (3, 0, 1, 1, 0, 0),
                d: (2, 3, 0, 0, 0, 0), e: (1, 2, 2, 0, 0, 0), f: (2, 1, 1, 1, 0, 0)}
    for x, vec in expected.items():
        assert rank_vector_alt(x, example1) == vec
    single = parse_profile("b > a > c")
    assert rank_vector_alt(b, single) == (1, 0, 0)


def test_lex_compare():
    assert lex_compare((3, 0, 1, 1, 0, 0), (2, 1, 1, 1, 0, 0)) is Lex.BETTER
    assert lex_compare((2, 1, 1, 1, 0, 0), (2, 1, 1, 0, 1, 0)) is Lex.BETTER
    assert lex_compare((2, 1, 1, 0, 1, 0), (2, 1, 1, 1, 0, 0)) is Lex.WORSE
    assert lex_compare((1, 2), (1, 2)) is Lex.EQUAL
    with pytest.raises(RuleError):
        lex_compare((1,), (1, 0))


def test_positional_score(minority):
    assert positional_score(a, minority, ScoringVector((1, 0))) == 2
    strict = parse_profile("c > a > d > b")
    borda = ScoringVector.borda(4)
    for x in range(4):
        assert positional_score(x, strict, borda) == 4 - class_index(strict[0], x)


def test_scoring_vector_validation():
    with pytest.raises(RuleError):
        ScoringVector((1, 1, 0))
    with pytest.raises(RuleError):
        ScoringVector.parse("1,2")
    assert ScoringVector.parse("3/2, 1, -1/3").scores == (F(3, 2), F(1), F(-1, 3))


def test_contribution_sets(example1):
    assert contribution_set(2, example1) == {a, f}
    assert contribution_set(0, example1) == {c}
    assert [contribution_set(i, example1) for i in range(5)] == [{c}, {d}, {a, f}, {c}, {c}]


def test_rmec_examples(example1, minority, dichotomous):
    assert rmec(example1) == lottery_from([(a, F(1, 10)), (c, F(3, 5)), (d, F(1, 5)), (f, F(1, 10))], 6)
    assert rmec(minority) == lottery_from([(a, F(2, 3)), (b, F(1, 3))], 2)
    assert rmec(dichotomous) == lottery_from([(d, F(8, 10)), (c, F(1, 10)), (b, F(1, 10))], 4)


def test_rank_maximal_rule(minority, example1):
    assert rank_maximal_rule(minority) == lottery_from([(a, 1)], 2)
    assert rank_maximal_rule(example1) == lottery_from([(c, 1)], 6)
    assert rank_maximal_rule(parse_profile("a")) == lottery_from([(0, 1)], 1)


def test_random_dictatorship(uniformity):
    assert random_dictatorship(uniformity) == lottery_from([(a, F(2, 3)), (c, F(1, 3))], 3)
    assert random_dictatorship(parse_profile("b > a\nb > a")) == lottery_from([(b, 1)], 2)
    with pytest.raises(RuleError):
        random_dictatorship(parse_profile("a, b > c"))


def test_serial_dictatorship(rsd_profile):
    assert serial_dictatorship(rsd_profile, (0, 1, 2, 3)) == {a}
    assert serial_dictatorship(rsd_profile, (2, 3, 0, 1)) == {b}
    solo = parse_profile("a, c > b")
    assert serial_dictatorship(solo, (0,)) == {a, c}
    with pytest.raises(RuleError):
        serial_dictatorship(rsd_profile, (0, 0, 1, 2))


def test_rsd_examples(rsd_profile, minority, uniformity):
    assert rsd(rsd_profile) == lottery_from([(a, F(1, 3)), (b, F(1, 3)), (c, F(1, 6)), (d, F(1, 6))], 4)
    assert rsd(minority) == lottery_from([(a, F(2, 3)), (b, F(1, 3))], 2)
    assert rsd(uniformity) == random_dictatorship(uniformity)


@settings(max_examples=150)
@given(profiles(max_n=5, max_m=4))
def test_rsd_matches_permutation_oracle(profile):
    assert rsd(profile) == rsd_by_permutations(profile)


def test_smec_examples():
    solo = parse_profile("b, c > a > d")
    assert s_mec(solo, ScoringVector.borda(4)) == uniform([b, c], 4)
    with pytest.raises(RuleError):
        s_mec(solo, (1, 2, 3, 4))
    with pytest.raises(RuleError):
        s_mec(solo, (3, 2, 1))


@given(profiles(max_n=6, max_m=5))
def test_base_n_plus_1_scores_match_lex(profile):
    s = ScoringVector.rank_maximal(profile.n, profile.m)
    vecs = rank_vectors(profile)
    for x, y in itertools.combinations(range(profile.m), 2):
        sx, sy = positional_score(x, profile, s), positional_score(y, profile, s)
        expected = lex_compare(vecs[x], vecs[y])
        assert (sx > sy, sx == sy) == (expected is Lex.BETTER, expected is Lex.EQUAL)
    assert s_mec(profile, s) == rmec(profile)


@given(profiles(min_n=2, max_n=6, max_m=5))
def test_base_n_scores_also_match_lex_for_two_or_more_agents(profile):
    # rank vectors sum to n, which rules out the carries that would break base n
    n, m = profile.n, profile.m
    s = ScoringVector(tuple(n ** (m - j) for j in range(1, m + 1)))
    assert s_mec(profile, s) == rmec(profile)


def test_base_n_degenerates_for_one_agent():
    with pytest.raises(RuleError):
        ScoringVector((1, 1, 1))


@given(profiles(max_n=6, max_m=5))
def test_mec_components(profile):
    comps = mec_components(profile)
    for comp, order in zip(comps, profile):
        assert sum(comp) == F(1, profile.n)
        assert {x for x, v in enumerate(comp) if v} <= order.top
    p = rmec(profile)
    assert p.support == mec_support(profile)
    bound = profile.n * lcm(*range(1, profile.m + 1))
    assert all(bound % x.denominator == 0 for x in p)


@given(profiles(max_n=5, max_m=5), st.randoms())
def test_anonymity_and_neutrality(profile, rnd):
    agents = list(range(profile.n))
    rnd.shuffle(agents)
    alts = list(range(profile.m))
    rnd.shuffle(alts)
    s = ScoringVector.borda(profile.m)
    for rule in (rmec, rank_maximal_rule, rsd, lambda p: s_mec(p, s)):
        out = rule(profile)
        assert rule(profile.permute_agents(agents)) == out
        assert rule(profile.relabel(alts)) == out.relabel(alts)


@given(st.integers(1, 4).flatmap(
    lambda m: st.lists(st.sampled_from(all_weak_orders(m, "strict")), min_size=1, max_size=5)))
def test_strict_profiles_reduce_to_random_dictatorship(orders):
    profile = Profile(tuple(orders))
    rd = random_dictatorship(profile)
    assert rmec(profile) == rd
    assert s_mec(profile, ScoringVector.borda(profile.m)) == rd
    assert rsd(profile) == rd


@given(profiles(max_n=6, max_m=5))
def test_support_inside_pareto_set_and_rsd_support(profile):
    p = rmec(profile)
    assert p.support <= pareto_optimal_set(profile)
    assert p.support <= rsd(profile).support


def test_single_agent():
    solo = parse_profile("b, d > a > c")
    assert rmec(solo) == uniform([b, d], 4)
    assert s_mec(solo, (4, 3, 2, 1)) == uniform([b, d], 4)
    assert rank_vector_alt(b, solo) == (1, 0, 0, 0)


def test_rmec_work_is_quadratic_in_m():
    def work(m, n=5):
        all_tied = Profile(tuple(WeakOrder.from_lists([range(m)]) for _ in range(n)))
        stats = {}
        rmec(all_tied, stats)
        return stats["ops"]

    for m in (4, 8, 16):
        assert work(2 * m) <= 4.2 * work(m)
    # and at most linear in n
    assert work(6, n=20) <= 2 * work(6, n=10)
