"""Command line front end: ``pscfkit rule|verify|experiment|gen``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .harness import PUBLISHED_TABLE2, ExperimentSpec, count_multisets, exhaustive_rmec_efficiency, run_table2
from .lottery import Lottery
from .prefs import PreferenceError, Profile, format_order, format_profile, parse_profile, sample_profile
from .rules import RuleError, ScoringVector, get_rule
from .verify import (VerifyError, ex_post_efficient, monotonicity_check, participation_report,
                     proportional_share_ok, sd_efficient, sd_uniform_ok, strategyproofness_scan)

AXIOMS = ("expost", "sdeff", "participation", "sp", "propshare", "sduniform", "monotone")


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _lottery_table(p: Lottery, labels) -> str:
    width = max(len(lab) for lab in labels)
    return "\n".join(f"{labels[a]:<{width}}  {_rat(x):>8}" for a, x in enumerate(p.probs) if x > 0)


def _load(path: str) -> Profile:
    return parse_profile(Path(path).read_text(encoding="utf-8"))


def _rule(name: str, scores: str | None):
    return get_rule(name, ScoringVector.parse(scores) if scores else None)


def _parse_range(text: str) -> list[int]:
    lo, _, hi = text.partition("-")
    return list(range(int(lo), int(hi or lo) + 1))


def cmd_rule(args) -> dict:
    profile = _load(args.profile)
    p = _rule(args.name, args.scores)(profile)
    if not args.json:
        print(_lottery_table(p, profile.labels))
    return {"rule": args.name, "lottery": p.to_json(profile.labels)}


def _agents(args, profile):
    if args.agent is None:
        return range(profile.n)
    if not 1 <= args.agent <= profile.n:
        raise VerifyError(f"agent {args.agent} not in 1..{profile.n}")
    return [args.agent - 1]


def cmd_verify(args) -> dict:
    profile = _load(args.profile)
    rule = _rule(args.rule, args.scores)
    labels = profile.labels
    report: dict = {"axiom": args.axiom, "rule": args.rule}
    if args.axiom in ("expost", "sdeff", "propshare", "sduniform"):
        p = rule(profile)
        report["lottery"] = p.to_json(labels)
        if args.axiom == "expost":
            report["ok"] = ex_post_efficient(p, profile)
        elif args.axiom == "propshare":
            report["ok"] = proportional_share_ok(p, profile)
        elif args.axiom == "sduniform":
            report["ok"] = sd_uniform_ok(p, profile)
        else:
            verdict = sd_efficient(p, profile)
            report["ok"] = verdict.efficient
            report["verdict"] = verdict.tag
            if verdict.witness is not None:
                report["witness"] = verdict.witness.to_json(labels)
    elif args.axiom == "participation":
        rows = []
        for i in _agents(args, profile):
            r = participation_report(rule, profile, i)
            rows.append({"agent": profile.names[i], "with": r.with_outcome.to_json(labels),
                         "without": r.without_outcome.to_json(labels), "sd_ok": r.sd_ok,
                         "strong_ok": r.strong_ok, "very_strong_ok": r.very_strong_ok})
        report["agents"] = rows
        report["ok"] = all(r["very_strong_ok"] for r in rows)
    elif args.axiom == "sp":
        found = []
        for i in _agents(args, profile):
            for man in strategyproofness_scan(rule, profile, i, args.domain):
                found.append({"agent": profile.names[i], "misreport": format_order(man.misreport, labels),
                              "outcome": man.outcome.to_json(labels), "truthful": man.truthful.to_json(labels)})
        report["manipulations"] = found
        report["ok"] = not found
    elif args.axiom == "monotone":
        alts = [profile.label_id(args.alt)] if args.alt else list(profile.alternatives)
        rows = [{"agent": profile.names[i], "alternative": labels[a],
                 "ok": monotonicity_check(rule, profile, i, a)}
                for i in _agents(args, profile) for a in alts]
        report["checks"] = rows
        report["ok"] = all(r["ok"] for r in rows)
    if not args.json:
        _print_report(report)
    return report


def _print_report(report: dict) -> None:
    print(f"{report['axiom']} ({report['rule']}): {'ok' if report['ok'] else 'VIOLATED'}")
    for key in ("lottery", "witness"):
        if key in report:
            print(f"  {key}: " + " + ".join(f"{v} {k}" for k, v in report[key].items()))
    for row in report.get("agents", []):
        print(f"  agent {row['agent']:>3}  sd={row['sd_ok']!s:<5} strong={row['strong_ok']!s:<5} "
              f"very_strong={row['very_strong_ok']}")
    for row in report.get("manipulations", []):
        print(f"  agent {row['agent']}: {row['misreport']}  ->  "
              + " + ".join(f"{v} {k}" for k, v in row["outcome"].items()))
    for row in report.get("checks", []):
        if not row["ok"]:
            print(f"  agent {row['agent']} alternative {row['alternative']}: violated")


def cmd_table2(args) -> dict:
    ns_text, _, ms_text = args.sizes.partition("x")
    spec = ExperimentSpec.grid(_parse_range(ns_text), _parse_range(ms_text or ns_text),
                               trials=args.trials, seed=args.seed, rule=args.rule)

    def show(r):
        if not args.json:
            ref = PUBLISHED_TABLE2.get((r.n, r.m)) if args.trials == 10_000 else None
            print(f"{r.n:>3} {r.m:>3} {r.sd_efficient_count:>7}/{r.trials:<7} "
                  f"{100 * r.rate:7.3f}%  {ref if ref is not None else '-':>9}  {r.elapsed:7.1f}s", flush=True)

    if not args.json:
        print("  n   m   sd-efficient      rate  published  elapsed")
    cells = run_table2(spec, args.workers, show)
    return {"experiment": "table2", "seed": args.seed, "trials": args.trials,
            "cells": [{"n": r.n, "m": r.m, "trials": r.trials, "sd_efficient": r.sd_efficient_count,
                       "published": PUBLISHED_TABLE2.get((r.n, r.m)), "elapsed": round(r.elapsed, 3)} for r in cells]}


def cmd_exhaustive(args) -> dict:
    total = count_multisets(args.n, args.m)
    bad = exhaustive_rmec_efficiency(args.n, args.m)
    if not args.json:
        print(f"n={args.n} m={args.m}: {bad} SD-inefficient RMEC outcomes among {total} profiles")
    return {"experiment": "exhaustive", "n": args.n, "m": args.m, "profiles": total, "inefficient": bad}


def cmd_gen(args) -> dict:
    profile = sample_profile(args.n, args.m, args.seed)
    text = format_profile(profile)
    if not args.json:
        sys.stdout.write(text)
    return {"profile": text}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pscfkit", description="Probabilistic voting rules with exact arithmetic.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rule", help="compute a rule's lottery")
    p.add_argument("name", choices=["rmec", "smec", "rankmax", "rd", "rsd"])
    p.add_argument("--profile", required=True)
    p.add_argument("--scores", help="comma separated rationals, strictly decreasing (smec)")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("verify", help="check an axiom on a profile")
    p.add_argument("axiom", choices=AXIOMS)
    p.add_argument("--profile", required=True)
    p.add_argument("--rule", default="rmec", choices=["rmec", "smec", "rankmax", "rd", "rsd"])
    p.add_argument("--scores")
    p.add_argument("--agent", type=int, help="1-based agent position (default: all agents)")
    p.add_argument("--alt", help="alternative label for monotone (default: all)")
    p.add_argument("--domain", default="all", choices=["all", "strict", "dichotomous"])
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="run an experiment")
    exp = p.add_subparsers(dest="experiment", required=True)
    t2 = exp.add_parser("table2", help="SD-efficiency rate over random profiles")
    t2.add_argument("--trials", type=int, default=10_000)
    t2.add_argument("--seed", type=int, default=0)
    t2.add_argument("--sizes", default="4-8x4-8", help="N_RANGExM_RANGE, e.g. 4-8x4-8")
    t2.add_argument("--rule", default="rmec")
    t2.add_argument("--workers", type=int, default=1)
    t2.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    t2.set_defaults(func=cmd_table2)
    ex = exp.add_parser("exhaustive", help="check every profile up to agent permutation")
    ex.add_argument("--n", type=int, default=4)
    ex.add_argument("--m", type=int, default=4)
    ex.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    ex.set_defaults(func=cmd_exhaustive)

    p = sub.add_parser("gen", help="sample a uniformly random profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except (PreferenceError, RuleError, VerifyError, ValueError, OSError) as exc:
        print(f"pscfkit: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        json.dump(result, sys.stdout, indent=2)
        sys.stdout.write("\n")
    if args.command == "verify":
        return 0 if result["ok"] else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
