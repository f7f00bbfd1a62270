"""Batch front door: solvability checks, plans, exact minima, exhaustive
verification sweeps, policy transcripts, and serving the HTTP API.

Machine mode (--format doc) prints one stable JSON document per invocation;
table mode prints the same content for humans.  Exit codes: 0 success, 1
for a negative or budget-cut answer (not solvable, trivial, unreachable,
budget exhausted), 2 for malformed flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .core import (
    ExchangeScript,
    GameConfig,
    PieceSet,
    canonicalize,
    run_cooperative,
)
from .errors import GameError, NotSolvable, StepBudgetExceeded, TrivialGame
from .search import (
    SearchBudget,
    SearchGoal,
    min_exchanges,
    rule1_only_enumerate,
    verify_minimal_sufficient,
)
from .theory import (
    best_case_cost,
    best_case_distribution,
    solvable,
    survival_plan,
    worst_case_cost,
    worst_case_distribution,
)

__all__ = ["main", "entrypoint", "build_parser"]


def parse_distribution(text: str) -> PieceSet:
    """Parse "a,b,c[,x[,d]]" into a piece set; raises for the argparse layer."""
    parts = text.split(",")
    if len(parts) < 3 or len(parts) > 5:
        raise argparse.ArgumentTypeError(
            f"expected a,b,c[,x[,d]] with 3 to 5 counts, got {text!r}"
        )
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"counts must be integers: {text!r}")
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"counts must be nonnegative: {text!r}")
    chips = tuple(values[:3])
    jokers = values[3] if len(values) > 3 else 0
    dominoes = values[4] if len(values) > 4 else 0
    # Color labels are irrelevant; keep CLI output label-free.
    return canonicalize(PieceSet(chips=chips, jokers=jokers, dominoes=dominoes))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chipgame",
        description="Planner, exact oracle and live service for the chips-and-dominoes survival game.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("table", "doc"),
        default="table",
        help="table for humans, doc for machine-readable JSON",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide solvability of a distribution")
    p.add_argument("--dist", type=parse_distribution, required=True)

    p = sub.add_parser("plan", parents=[common], help="generate a verified survival plan")
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--dist", type=parse_distribution, required=True)

    p = sub.add_parser("optimal", parents=[common], help="exact minimum exchanges to a domino goal")
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--dist", type=parse_distribution, required=True)
    p.add_argument("--goal", type=int, default=None, help="target dominoes (default: players)")
    p.add_argument("--max-cost", type=int, default=None)
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--joker-cap", type=int, default=None)

    p = sub.add_parser(
        "verify-minimal",
        parents=[common],
        help="exhaustively verify the two minimal sufficient sets",
    )
    p.add_argument("--max-chips", type=int, default=12)

    p = sub.add_parser(
        "rule1-terminal",
        parents=[common],
        help="enumerate all Rule-1-only terminal states of a distribution",
    )
    p.add_argument("--dist", type=parse_distribution, required=True)
    p.add_argument("--max-nodes", type=int, default=250_000)

    p = sub.add_parser("simulate", parents=[common], help="run the cooperative policy transcript")
    p.add_argument("--players", type=int, required=True)
    p.add_argument("--dist", type=parse_distribution, required=True)
    p.add_argument("--max-steps", type=int, default=None)

    p = sub.add_parser("serve", parents=[common], help="start the live-session HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", default=None, help="overrides CHIPGAME_DATA_DIR")

    return parser


def _emit(doc: dict, table_lines: list[str], fmt: str) -> None:
    if fmt == "doc":
        print(json.dumps(doc, indent=2))
    else:
        for line in table_lines:
            print(line)


def _script_table(script: ExchangeScript) -> list[str]:
    lines = [f"{'step':>4}  {'exchange':<18} {'after':<34} phase"]
    for i, step in enumerate(script.steps, start=1):
        lines.append(f"{i:>4}  {str(step.exchange):<18} {str(step.after):<34} {step.phase}")
    return lines


def _script_doc(script: ExchangeScript) -> dict:
    return {
        "cost": script.cost,
        "terminal": script.terminal,
        "steps": script.to_doc(),
    }


def _cmd_check(args: argparse.Namespace) -> int:
    verdict = solvable(args.dist)
    doc = {"distribution": args.dist.to_doc(), **verdict.to_doc()}
    word = "solvable" if verdict.solvable else "not solvable"
    witness = f" (contains {verdict.witness.id} = {verdict.witness.counts})" if verdict.witness else ""
    _emit(doc, [f"{args.dist}: {word}{witness} [{verdict.method}]"], args.format)
    return 0 if verdict.solvable else 1


def _cmd_plan(args: argparse.Namespace) -> int:
    config = GameConfig(players=args.players, initial=args.dist, allow_nonstandard=True)
    script = survival_plan(config)
    doc = {
        "players": args.players,
        "distribution": args.dist.to_doc(),
        **_script_doc(script),
    }
    lines = [f"survival plan for {args.players} players from {args.dist}: cost {script.cost}"]
    lines += _script_table(script)
    _emit(doc, lines, args.format)
    return 0


def _matching_formula(players: int, dist: PieceSet) -> Optional[dict]:
    try:
        if dist == worst_case_distribution(players):
            return worst_case_cost(players).to_doc()
    except GameError:
        pass
    try:
        if dist == best_case_distribution(players):
            return best_case_cost(players).to_doc()
    except GameError:
        pass
    return None


def _cmd_optimal(args: argparse.Namespace) -> int:
    goal = SearchGoal.dominoes(args.goal if args.goal is not None else args.players)
    budget = SearchBudget.for_instance(args.dist, goal)
    overrides = {}
    if args.max_cost is not None:
        overrides["max_cost"] = args.max_cost
    if args.max_nodes is not None:
        overrides["max_nodes"] = args.max_nodes
    if args.joker_cap is not None:
        overrides["joker_cap"] = args.joker_cap
    if overrides:
        budget = SearchBudget(
            max_cost=overrides.get("max_cost", budget.max_cost),
            max_nodes=overrides.get("max_nodes", budget.max_nodes),
            joker_cap=overrides.get("joker_cap", budget.joker_cap),
        )
    result = min_exchanges(args.dist, goal, budget)
    formula = _matching_formula(args.players, args.dist)
    doc = {
        "instance": {
            "distribution": args.dist.to_doc(),
            "goal": goal.to_doc(),
            "budget": budget.to_doc(),
        },
        **result.to_doc(),
        "formula": formula,
    }
    lines = [
        f"minimum exchanges from {args.dist} to {goal.target_dominoes} dominoes: "
        f"{result.cost if result.cost is not None else '-'} [{result.status}]",
        f"nodes expanded: {result.nodes_expanded}, frontier peak: {result.frontier_peak}",
    ]
    if formula:
        lines.append(
            f"formula ({formula['scenario']} case): {formula['formulaCost']}; "
            "the oracle reports the exact minimum; the formula is the published plan cost"
        )
    if result.witness:
        lines += _script_table(result.witness)
    _emit(doc, lines, args.format)
    return 0 if result.status == "optimal" else 1


def _cmd_verify_minimal(args: argparse.Namespace) -> int:
    report = verify_minimal_sufficient(args.max_chips)
    doc = report.to_doc()
    sets = ", ".join(str(t) for t in report.minimal_sufficient) or "none"
    lines = [
        f"checked {report.ordered_checked} distributions "
        f"({report.canonical_checked} up to color relabeling) with at most "
        f"{report.max_total_chips} chips",
        f"minimal sufficient sets: {sets}",
        f"reachability matches the subset test: {'yes' if report.consistent else 'NO'}",
    ]
    for bad in report.counterexamples:
        lines.append(f"counterexample: {bad}")
    _emit(doc, lines, args.format)
    return 0 if report.consistent else 1


def _cmd_rule1_terminal(args: argparse.Namespace) -> int:
    report = rule1_only_enumerate(args.dist, max_nodes=args.max_nodes)
    doc = report.to_doc()
    lines = [
        f"rule-1-only play from {args.dist}: {report.nodes} canonical states, "
        f"max dominoes {report.max_dominoes}",
        f"conservation 2d+y=n holds everywhere: {'yes' if report.conserved else 'NO'}",
        "terminal states:",
    ]
    lines += [f"  {t}" for t in report.terminals]
    _emit(doc, lines, args.format)
    return 0 if report.conserved else 1


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = GameConfig(players=args.players, initial=args.dist, allow_nonstandard=True)
    script = run_cooperative(config, max_steps=args.max_steps)
    doc = {
        "players": args.players,
        "distribution": args.dist.to_doc(),
        **_script_doc(script),
    }
    lines = [
        f"cooperative run for {args.players} players from {args.dist}: "
        f"{script.cost} steps, stopped on {script.terminal}"
    ]
    lines += _script_table(script)
    _emit(doc, lines, args.format)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(args.data_dir), host=args.host, port=args.port)
    return 0


_HANDLERS = {
    "check": _cmd_check,
    "plan": _cmd_plan,
    "optimal": _cmd_optimal,
    "verify-minimal": _cmd_verify_minimal,
    "rule1-terminal": _cmd_rule1_terminal,
    "simulate": _cmd_simulate,
    "serve": _cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (NotSolvable, TrivialGame, StepBudgetExceeded) as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except GameError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
