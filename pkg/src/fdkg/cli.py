"""Operator command line: ceremonies, liveness sweeps, elections and cost
estimates.

Parameters come from flags plus an optional INI-style config file; flags
override file values and every run echoes its fully resolved configuration
for auditability.
"""

from __future__ import annotations

import argparse
import configparser
import sys

from . import costmodel, simulate, transcripts, voting
from .board import Behavior, HONEST, run_ceremony
from .election import run_election
from .groups import GROUPS
from .protocol import Params


def _load_section(path, section) -> dict:
    if not path:
        return {}
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_file(fh)
    if not parser.has_section(section):
        return {}
    return dict(parser.items(section))


def _resolve(args, config: dict, key: str, default=None, cast=str):
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return flag
    if key in config:
        return cast(config[key])
    return default


def _echo_config(name: str, resolved: dict) -> None:
    print(f"[{name}] resolved config:")
    for key in sorted(resolved):
        print(f"  {key} = {resolved[key]}")


def _parse_behaviors(path, n: int) -> dict:
    """[behaviors] section: `3 = byzantine-silent`, `5 = withhold-shares:1,9`.
    Unlisted parties are honest."""
    behaviors = {i: Behavior(HONEST) for i in range(1, n + 1)}
    for key, value in _load_section(path, "behaviors").items():
        party = int(key)
        kind, _, targets = value.partition(":")
        targets = frozenset(int(x) for x in targets.split(",") if x.strip())
        behaviors[party] = Behavior(kind.strip(), targets)
    return behaviors


def _parse_guardians(path) -> dict:
    """[guardians] section: `1 = 2,3,5`."""
    sets = {}
    for key, value in _load_section(path, "guardians").items():
        sets[int(key)] = frozenset(int(x) for x in value.split(","))
    return sets or None


def _int_list(text: str) -> tuple:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _float_list(text: str) -> tuple:
    return tuple(float(x) for x in text.split(",") if x.strip())


def cmd_ceremony(args) -> int:
    cfg = _load_section(args.config, "ceremony")
    n = _resolve(args, cfg, "n", cast=int)
    t = _resolve(args, cfg, "t", cast=int)
    k = _resolve(args, cfg, "k", cast=int)
    seed = _resolve(args, cfg, "seed", 0, int)
    group = GROUPS[_resolve(args, cfg, "group", "secp256k1")]
    if n is None or t is None or k is None:
        print("ceremony: n, t and k are required", file=sys.stderr)
        return 2
    params = Params(n, t, k)
    behaviors = _parse_behaviors(args.config, n)
    guardians = _parse_guardians(args.config)
    _echo_config("ceremony", {"n": n, "t": t, "k": k, "seed": seed,
                              "group": group.name})
    result = run_ceremony(params, behaviors, group, seed, guardian_sets=guardians)
    if args.out:
        transcripts.save(result.board, group, args.out)
        print(f"transcript written to {args.out}")
    print(f"participants: {list(result.public_state.participants)}")
    outcome = result.outcome
    if outcome.excluded:
        print(f"excluded by complaint: {list(outcome.excluded)}")
    for dealer, how in sorted(outcome.recovered.items()):
        if how[0] == "direct":
            print(f"dealer {dealer}: recovered directly")
        else:
            print(f"dealer {dealer}: recovered via guardians {list(how[1])}")
    if outcome.success:
        print("reconstruction: success")
        return 0
    print(f"reconstruction: FAILED, unrecoverable dealers {list(outcome.failed)}")
    return 1


def cmd_simulate(args) -> int:
    cfg = _load_section(args.config, "simulate")
    try:
        config = simulate.SweepConfig(
            n_values=_int_list(_resolve(args, cfg, "n", "100")),
            p_values=_float_list(_resolve(args, cfg, "p", "1.0")),
            r_values=_float_list(_resolve(args, cfg, "r", "1.0")),
            k_values=_int_list(_resolve(args, cfg, "k", "3")),
            t_values=_int_list(_resolve(args, cfg, "t", "") or ""),
            t_ratios=_float_list(_resolve(args, cfg, "t-ratio", "") or ""),
            trials=_resolve(args, cfg, "trials", 100, int),
            topology=_resolve(args, cfg, "topology", simulate.TOPOLOGY_ER),
            seed=_resolve(args, cfg, "seed", 0, int),
        )
    except simulate.SweepConfigError as exc:
        print(f"simulate: {exc}", file=sys.stderr)
        return 2
    _echo_config("simulate", {
        "n": config.n_values, "p": config.p_values, "r": config.r_values,
        "k": config.k_values, "t": config.t_values or config.t_ratios,
        "trials": config.trials, "topology": config.topology, "seed": config.seed})
    rates = simulate.run_sweep(config)
    if args.out:
        with open(args.out, "w") as fh:
            simulate.write_csv(rates, fh)
        print(f"csv written to {args.out}")
    else:
        simulate.write_csv(rates, sys.stdout)
    return 0


def cmd_election(args) -> int:
    cfg = _load_section(args.config, "election")
    n = _resolve(args, cfg, "n", cast=int)
    t = _resolve(args, cfg, "t", cast=int)
    k = _resolve(args, cfg, "k", cast=int)
    candidates = _resolve(args, cfg, "candidates", 2, int)
    seed = _resolve(args, cfg, "seed", 0, int)
    group = GROUPS[_resolve(args, cfg, "group", "secp256k1")]
    votes_text = _resolve(args, cfg, "votes")
    if n is None or t is None or k is None or votes_text is None:
        print("election: n, t, k and votes are required", file=sys.stderr)
        return 2
    votes = {i + 1: c for i, c in enumerate(_int_list(votes_text))}
    params = Params(n, t, k)
    behaviors = _parse_behaviors(args.config, n)
    guardians = _parse_guardians(args.config)
    _echo_config("election", {"n": n, "t": t, "k": k, "candidates": candidates,
                              "votes": len(votes), "seed": seed, "group": group.name})
    result = run_election(params, behaviors, votes, candidates, group, seed,
                          guardian_sets=guardians)
    if args.out:
        transcripts.save(result.board, group, args.out)
        print(f"transcript written to {args.out}")
    print(f"valid ballots: {len(result.accepted_voters)}")
    if not result.success:
        print(f"tally: FAILED, unrecoverable dealers {list(result.failed_dealers)}")
        return 1
    print("candidate  votes")
    for idx, count in enumerate(result.tally.counts, start=1):
        print(f"{idx:>9}  {count}")
    print(f"total      {result.tally.total}")
    for idx, count in enumerate(result.tally.counts, start=1):
        print(f"result,{idx},{count}")
    return 0


def cmd_cost(args) -> int:
    cfg = _load_section(args.config, "cost")
    spec = costmodel.ScenarioSpec(
        n=_resolve(args, cfg, "n", 0, int),
        dealers=_resolve(args, cfg, "dealers", 0, int),
        k=_resolve(args, cfg, "k", 0, int),
        voters=_resolve(args, cfg, "voters", 0, int),
        direct_revealers=_resolve(args, cfg, "direct-revealers", 0, int),
        shares_revealed=_resolve(args, cfg, "shares-revealed", 0, int),
    )
    _echo_config("cost", {"dealers": spec.dealers, "k": spec.k,
                          "voters": spec.voters,
                          "direct-revealers": spec.direct_revealers,
                          "shares-revealed": spec.shares_revealed})
    breakdown = costmodel.estimate(spec)
    print(f"fdkg-distribution {breakdown.fdkg_bytes}")
    print(f"voting            {breakdown.voting_bytes}")
    print(f"tally-secrets     {breakdown.tally_secret_bytes}")
    print(f"tally-shares      {breakdown.tally_share_bytes}")
    print(f"total             {breakdown.total_bytes}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdkg",
        description="federated key-generation ceremonies, liveness sweeps, "
                    "elections and communication-cost estimates")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="INI config file")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="output path")

    p = sub.add_parser("ceremony", help="run a two-round key-generation ceremony")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--group", choices=sorted(GROUPS))
    p.set_defaults(func=cmd_ceremony)

    p = sub.add_parser("simulate", help="Monte-Carlo liveness sweep to CSV")
    common(p)
    p.add_argument("--n")
    p.add_argument("--p")
    p.add_argument("--r")
    p.add_argument("--k")
    p.add_argument("--t")
    p.add_argument("--t-ratio")
    p.add_argument("--trials", type=int)
    p.add_argument("--topology", choices=[simulate.TOPOLOGY_ER, simulate.TOPOLOGY_BA])
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("election", help="full election pipeline")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--candidates", type=int)
    p.add_argument("--votes", help="comma list, candidate per voter")
    p.add_argument("--group", choices=sorted(GROUPS))
    p.set_defaults(func=cmd_election)

    p = sub.add_parser("cost", help="broadcast-size estimate")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--dealers", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--voters", type=int)
    p.add_argument("--direct-revealers", type=int)
    p.add_argument("--shares-revealed", type=int)
    p.set_defaults(func=cmd_cost)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
