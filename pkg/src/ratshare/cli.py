"""Command-line interface.

Commands: share, reconstruct, analyze, verify, simulate. All output is
deterministic given the flags and seed; reports are printed to stdout in
one write, so error paths never leave partial output behind. Exit codes:
0 success, 1 a verification check failed, 2 bad parameters or config,
3 a degenerate value tie that makes the equilibrium prediction
ill-defined.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import plotting
from .config import GameConfig, load_game_config
from .equilibrium import (
    BestResponseKind,
    best_response,
    broadcast_impossibility_report,
    characterization_report,
    inessential_players,
)
from .errors import ConfigError, DegenerateTieError, RatshareError
from .field import PrimeField
from .game import CommonGoodUtilities, GreedyUtilities, expected_utility
from .montecarlo import simulate
from .shamir import deal, load_shares, load_sidecar, reconstruct, save_shares
from .suites import SUITE_NAMES, run_suite
import random


def _thread_cap() -> int:
    raw = os.environ.get("RATSHARE_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"RATSHARE_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"RATSHARE_THREADS must be a positive integer, got {raw!r}")
    return value


def _parse_profile_arg(raw: str, n: int) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in raw.split(","))
    except ValueError:
        raise ConfigError(f"profile must be comma-separated numbers, got {raw!r}")
    if len(values) != n:
        raise ConfigError(f"profile has {len(values)} entries, expected {n}")
    if any(not 0 <= v <= 1 for v in values):
        raise ConfigError("profile probabilities must lie in [0, 1]")
    return values


def cmd_share(args: argparse.Namespace) -> int:
    fld = PrimeField(args.p)
    rng = random.Random(args.seed)
    dealing = deal(fld.element(args.secret), args.k, args.n, rng)
    save_shares(dealing, args.out)
    print(f"wrote {dealing.n} shares (threshold {dealing.k}, modulus {dealing.p}) to {args.out}")
    return 0


def cmd_reconstruct(args: argparse.Namespace) -> int:
    shares = load_shares(args.shares, args.p)
    sidecar = load_sidecar(args.shares)
    if sidecar is not None and sidecar.get("k", 0) > len(shares):
        print(
            f"warning: sidecar threshold k={sidecar['k']} exceeds the {len(shares)} "
            "supplied shares; the result is not the dealt secret",
            file=sys.stderr,
        )
    secret = reconstruct(shares, args.p)
    print(secret.value)
    return 0


def _profile_section(cfg: GameConfig, u: CommonGoodUtilities) -> dict:
    alpha = cfg.profile
    gamma = cfg.access
    reports = []
    for i in range(1, gamma.n + 1):
        br = best_response(gamma, u, alpha, i)
        reports.append({"kind": br.kind.value, "margin": br.margin})
    return {
        "alpha": list(alpha),
        "expected_utilities": [
            expected_utility(gamma, u, alpha, i, alpha[i - 1]) for i in range(1, gamma.n + 1)
        ],
        "best_responses": reports,
        "inessential": inessential_players(gamma, u, alpha),
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = load_game_config(args.config)
    gamma = cfg.access
    figures: list[str] = []
    if isinstance(cfg.utilities, CommonGoodUtilities):
        report = characterization_report(gamma, cfg.utilities)
        out = {"model": "common_good", "access": repr(gamma)}
        out.update(report.to_json_dict())
        if cfg.profile is not None:
            out["profile"] = _profile_section(cfg, cfg.utilities)
        if args.figures:
            alpha = cfg.profile or tuple(0.5 for _ in range(gamma.n))
            fig = plotting.expected_utility_figure(gamma, cfg.utilities, alpha)
            figures.append(str(plotting.save_figure(fig, args.figures, "expected_utility")))
    else:
        k = gamma.threshold_k
        if k is None:
            raise ConfigError("the greedy model needs a threshold access structure")
        report = broadcast_impossibility_report(gamma.n, k, cfg.utilities)
        out = {"model": "greedy", "access": repr(gamma)}
        out.update(report.to_json_dict())
        if args.figures:
            fig = plotting.broadcast_payoff_figure(gamma, cfg.utilities)
            figures.append(str(plotting.save_figure(fig, args.figures, "broadcast_payoffs")))
    if figures:
        out["figures"] = figures
    print(json.dumps(out, indent=2))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite, max_n=args.max_n, seed=args.seed)
    lines: list[str] = []
    for result in results:
        lines.extend(result.lines())
    overall = all(result.passed for result in results)
    lines.append(f"verify: {'PASS' if overall else 'FAIL'}")
    print("\n".join(lines))
    return 0 if overall else 1


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_game_config(args.config)
    if not isinstance(cfg.utilities, CommonGoodUtilities):
        raise ConfigError("simulate needs a common_good utility model")
    gamma = cfg.access
    if args.profile is not None:
        alpha = _parse_profile_arg(args.profile, gamma.n)
    elif cfg.profile is not None:
        alpha = cfg.profile
    else:
        raise ConfigError("no profile: pass --profile or put one in the config")
    seed = args.seed if args.seed is not None else (cfg.seed if cfg.seed is not None else 0)
    shards = args.shards if args.shards is not None else cfg.shards
    result = simulate(
        gamma, cfg.utilities, alpha, args.samples, seed,
        shards=shards, max_workers=_thread_cap(),
    )
    exact = [
        expected_utility(gamma, cfg.utilities, alpha, i, alpha[i - 1])
        for i in range(1, gamma.n + 1)
    ]
    out = {
        "means": list(result.means),
        "stderr": list(result.stderr),
        "exact": exact,
        "samples": result.samples,
        "seed": result.seed,
    }
    if args.figures:
        fig = plotting.simulation_figure(result, exact)
        out["figures"] = [str(plotting.save_figure(fig, args.figures, "simulation"))]
    print(json.dumps(out, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratshare",
        description="Secret-sharing reconstruction games: dealing, equilibria, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("share", help="deal shares to a CSV file plus JSON sidecar")
    p.add_argument("--p", type=int, required=True, help="prime modulus")
    p.add_argument("--k", type=int, required=True, help="reconstruction threshold")
    p.add_argument("--n", type=int, required=True, help="number of shares")
    p.add_argument("--secret", type=int, required=True, help="secret in [0, p)")
    p.add_argument("--seed", type=int, default=0, help="rng seed (default 0)")
    p.add_argument("--out", default="shares.csv", help="output CSV path (default shares.csv)")
    p.set_defaults(func=cmd_share)

    p = sub.add_parser("reconstruct", help="interpolate a share CSV back to the secret")
    p.add_argument("shares", help="share CSV path")
    p.add_argument("--p", type=int, required=True, help="prime modulus")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("analyze", help="equilibrium report for a game config")
    p.add_argument("--config", required=True, help="game config JSON path")
    p.add_argument("--figures", help="directory for rendered figures")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES + ("all",))
    p.add_argument("--max-n", type=int, default=None, help="override the sweep size cap")
    p.add_argument("--seed", type=int, default=0, help="seed for random instances (default 0)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo estimate vs exact expected utilities")
    p.add_argument("--config", required=True, help="game config JSON path")
    p.add_argument("--profile", help="comma-separated disclosure probabilities")
    p.add_argument("--samples", type=int, default=100_000, help="sample count (default 100000)")
    p.add_argument("--seed", type=int, default=None, help="rng seed (default: config seed or 0)")
    p.add_argument("--shards", type=int, default=None, help="shard count (default: config or 1)")
    p.add_argument("--figures", help="directory for rendered figures")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegenerateTieError as exc:
        print(f"error: degenerate tie: {exc}", file=sys.stderr)
        return 3 if args.command == "analyze" else 2
    except (RatshareError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
