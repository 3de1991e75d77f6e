"""Exact probabilistic voting rules (RMEC, s-MEC, RSD, ...) and axiom checkers."""

from .lottery import SD, Lottery, lottery_from, mix, sd_compare
from .prefs import Profile, WeakOrder, parse_profile, format_profile
from .rules import ScoringVector, rank_maximal_rule, random_dictatorship, rmec, rsd, s_mec

__all__ = [
    "SD", "Lottery", "lottery_from", "mix", "sd_compare",
    "Profile", "WeakOrder", "parse_profile", "format_profile",
    "ScoringVector", "rank_maximal_rule", "random_dictatorship", "rmec", "rsd", "s_mec",
]
