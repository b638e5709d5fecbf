"""Command-line front end: ``prefnash {compile,solve,scenario,check,oracle}``.

Exit codes: 0 success (for ``check``: the profile is Nash; for ``oracle``:
agreement with the solver), 1 not Nash or oracle disagreement, 2 input
error (syntax, inconsistent preference, schema, scenario config, invalid
profile), 3 non-terminating product, 4 automaton or AP mismatch, 5 size guard.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import drone, oracle, solve as solving
from .errors import (AutomatonMismatchError, CapacityError, GameValidationError,
                     InconsistentPreferenceError, InvalidProfileError, LtlfSyntaxError,
                     NonTerminatingError, PrefSpecError, ScenarioConfigError, SizeGuardError)
from .game import load_game, unroll_horizon
from .preference import (EMPTY_POLICIES, automaton_to_dot, automaton_to_json_text,
                         build_preference_automaton, parse_prefspec, preference_graph)
from .product import build_product

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_NONTERMINATING, EXIT_MISMATCH, EXIT_GUARD = range(6)


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    ap: Optional[list] = None
    empty_policy: tuple = ("bottom", "bottom")
    attitudes: tuple = (solving.AGNOSTIC, solving.AGNOSTIC)
    out: Optional[Path] = None
    strict_opposite: bool = False
    tmax: Optional[int] = None
    max_states: Optional[int] = None
    seed: int = 0
    relation: str = "strict"
    random: int = 0
    cells: Optional[list] = None
    b_start: Optional[tuple] = None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        default = getattr(args, "empty_policy", None)
        policies = (getattr(args, "empty_policy1", None) or default or "bottom",
                    getattr(args, "empty_policy2", None) or default or "bottom")
        inputs = [Path(p) for p in getattr(args, "inputs", []) or []]
        for p in inputs:
            if not p.exists():
                raise FileNotFoundError(f"input file {str(p)!r} does not exist")
        return cls(
            command=args.command, inputs=inputs,
            ap=args.ap.split(",") if getattr(args, "ap", None) else None,
            empty_policy=policies,
            attitudes=(getattr(args, "attitude1", solving.AGNOSTIC),
                       getattr(args, "attitude2", solving.AGNOSTIC)),
            out=Path(args.out) if getattr(args, "out", None) else None,
            strict_opposite=getattr(args, "strict_opposite", False),
            tmax=getattr(args, "tmax", None), max_states=getattr(args, "max_states", None),
            seed=getattr(args, "seed", 0), relation=getattr(args, "relation", "strict"),
            random=getattr(args, "random", 0) or 0,
            cells=_cells(getattr(args, "cells", None)),
            b_start=_cells(getattr(args, "b_start", None), single=True))


def _cells(text, single=False):
    if not text:
        return None
    cells = []
    for chunk in text.split(";"):
        x, y = chunk.split(",")
        cells.append((int(x), int(y)))
    return cells[0] if single else cells


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write(out: Optional[Path], name: str, text: str):
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_compile(cfg: RunConfig) -> int:
    spec = parse_prefspec(cfg.inputs[0].read_text())
    p = build_preference_automaton(spec, cfg.ap, cfg.empty_policy[0])
    graph = preference_graph(p)
    _write(cfg.out, "automaton.json", automaton_to_json_text(p) + "\n")
    _write(cfg.out, "automaton.dot", automaton_to_dot(p))
    _write(cfg.out, "preference_graph.dot", graph.to_dot())
    print(_dump({"ap": list(p.ap), "states": p.n_states,
                 "preference_graph": {"nodes": len(graph.nodes), "edges": len(graph.edges)}}), end="")
    return EXIT_OK


def _load_product(cfg: RunConfig):
    g = load_game(str(cfg.inputs[0]))
    if cfg.tmax is not None:
        g = unroll_horizon(g, cfg.tmax)
    specs = [parse_prefspec(p.read_text()) for p in cfg.inputs[1:3]]
    if specs[0].alternatives != specs[1].alternatives:
        raise AutomatonMismatchError("the two specifications must list the same alternatives")
    missing = set(specs[0].atoms()) - set(g.ap)
    if missing:
        raise AutomatonMismatchError(f"specification atoms {sorted(missing)} are not in the game AP")
    p1 = build_preference_automaton(specs[0], g.ap, cfg.empty_policy[0])
    p2 = build_preference_automaton(specs[1], g.ap, cfg.empty_policy[1])
    return build_product(g, p1, p2, max_states=cfg.max_states)


def cmd_solve(cfg: RunConfig) -> int:
    h = _load_product(cfg)
    report = solving.solve(h, cfg.attitudes, cfg.strict_opposite)
    summary = report.summary(h)
    _write(cfg.out, "report.json", solving.report_to_json_text(report, h) + "\n")
    _write(cfg.out, "nash.dot", report.to_dot(h))
    _write(cfg.out, "summary.txt", summary)
    print(summary, end="")
    return EXIT_OK


def _read_profile(h, path: Path):
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InvalidProfileError(f"profile file is not valid JSON: {exc}") from None
    entries = doc.get("witnesses") if isinstance(doc, dict) else doc
    if not isinstance(entries, list):
        raise InvalidProfileError("profile must be a list of {player, strategy} objects")
    names = {h.name(v): v for v in range(h.n_states)}
    actions = {n: a for a, n in enumerate(h.game.action_names)}
    profile = ({}, {})
    for entry in entries:
        try:
            player = entry["player"]
            strategy = entry["strategy"]
        except (KeyError, TypeError):
            raise InvalidProfileError("each witness needs 'player' and 'strategy'") from None
        if player not in (1, 2) or not isinstance(strategy, dict):
            raise InvalidProfileError("witness player must be 1 or 2 with a state->action map")
        for state, action in strategy.items():
            if state not in names:
                raise InvalidProfileError(f"unknown product state {state!r}")
            if action not in actions:
                raise InvalidProfileError(f"unknown action {action!r}")
            v = names[state]
            if h.owner[v] != player:
                raise InvalidProfileError(f"state {state!r} does not belong to P{player}")
            profile[player - 1][v] = actions[action]
    return profile


def cmd_check(cfg: RunConfig) -> int:
    h = _load_product(cfg)
    profile = _read_profile(h, cfg.inputs[3])
    report = solving.solve(h, cfg.attitudes, cfg.strict_opposite)
    verdict = solving.check_nash(h, profile, report)
    doc = {"nash": verdict.is_nash, "outcome": h.name(verdict.outcome),
           "in_characterized": verdict.in_characterized, "explanation": verdict.explanation,
           "deviations": {str(p): [h.name(v) for v in vs] for p, vs in verdict.deviations.items()}}
    print(_dump(doc), end="")
    _write(cfg.out, "verdict.json", _dump(doc))
    return EXIT_OK if verdict.is_nash else EXIT_FALSE


def _oracle_diff(h, relation, max_states, attitudes=(solving.AGNOSTIC, solving.AGNOSTIC)):
    guard = {} if max_states is None else {"max_states": max_states}
    report = solving.solve(h, attitudes)
    relations = oracle.RELATIONS if relation == "both" else (relation,)
    doc = {"solve_outcomes": [h.name(v) for v in report.outcomes]}
    agree = True
    for rel in relations:
        profiles = oracle.brute_force_nash(h, rel, **guard)
        outcomes = sorted({oracle.play(h, p)[1] for p in profiles})
        missing = sorted(set(report.outcomes) - set(outcomes))
        extra = sorted(set(outcomes) - set(report.outcomes))
        doc[rel] = {"profiles": [oracle.profile_to_json(h, p) for p in profiles],
                    "outcomes": [h.name(v) for v in outcomes],
                    "only_in_solve": [h.name(v) for v in missing],
                    "only_in_oracle": [h.name(v) for v in extra]}
        if rel == "strict":
            agree = not missing and not extra
    return doc, agree


def cmd_oracle(cfg: RunConfig) -> int:
    if cfg.random:
        from .random_instances import random_instance

        import numpy as np
        seeds = np.random.SeedSequence(cfg.seed).generate_state(cfg.random)
        rows = []
        for s in seeds:
            inst = random_instance(int(s))
            doc, agree = _oracle_diff(inst.product, "strict", cfg.max_states)
            rows.append({"seed": int(s), "alignment": inst.alignment.value,
                         "states": inst.product.n_states, "agree": agree})
        result = {"instances": len(rows), "disagreements": sum(not r["agree"] for r in rows),
                  "runs": rows}
        print(_dump(result), end="")
        _write(cfg.out, "oracle.json", _dump(result))
        return EXIT_OK if result["disagreements"] == 0 else EXIT_FALSE
    h = _load_product(cfg)
    doc, agree = _oracle_diff(h, cfg.relation, cfg.max_states, cfg.attitudes)
    print(_dump(doc), end="")
    _write(cfg.out, "oracle.json", _dump(doc))
    return EXIT_OK if agree else EXIT_FALSE


def cmd_scenario(cfg: RunConfig) -> int:
    s = drone.load_scenario(cfg.inputs[0])
    if cfg.tmax is not None:
        s.config.tmax = cfg.tmax
        s.config.validate()
    if cfg.b_start is not None:
        automata = drone.scenario_automata(s)
        h = drone.scenario_product(s, cfg.b_start, automata, cfg.max_states)
        report = solving.solve(h, cfg.attitudes, cfg.strict_opposite)
        _write(cfg.out, "report.json", solving.report_to_json_text(report, h) + "\n")
        summary = f"drone B starts at {cfg.b_start}; {h.n_states} product states\n" + report.summary(h)
        _write(cfg.out, "summary.txt", summary)
        print(summary, end="")
        return EXIT_OK
    results = drone.sweep(s, cfg.cells, cfg.max_states)
    if cfg.out is not None:
        drone.write_grids(cfg.out, s.config, results)
    doc = {"scenario": s.config.name, "tmax": s.config.tmax,
           "cells": {f"{c[0]},{c[1]}": {"best": list(r.best), "guaranteed": list(r.guaranteed),
                                        "needs": list(r.needs), "states": r.n_states}
                     for c, r in sorted(results.items())}}
    _write(cfg.out, "scenario.json", _dump(doc))
    for kind in drone.GRIDS:
        print(f"{kind} (rows from y={s.config.height - 1} down to y=0):")
        for row in drone.grid(s.config, results, kind):
            print("  " + " ".join(f"{str(x):>5}" for x in row))
    return EXIT_OK


COMMANDS = {"compile": cmd_compile, "solve": cmd_solve, "scenario": cmd_scenario,
            "check": cmd_check, "oracle": cmd_oracle}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefnash", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def policies(p, per_player=True):
        p.add_argument("--empty-policy", choices=EMPTY_POLICIES,
                       help="where 'no alternative satisfied' sits in the preference")
        if per_player:
            p.add_argument("--empty-policy1", choices=EMPTY_POLICIES)
            p.add_argument("--empty-policy2", choices=EMPTY_POLICIES)

    def solving_flags(p):
        p.add_argument("--attitude1", choices=solving.ATTITUDES, default=solving.AGNOSTIC)
        p.add_argument("--attitude2", choices=solving.ATTITUDES, default=solving.AGNOSTIC)
        p.add_argument("--strict-opposite", action="store_true",
                       help="require the second preorder to be exactly the inverse of the first")
        p.add_argument("--max-states", type=int, help="abort if the product exceeds this size")
        p.add_argument("--out", help="output directory")

    p = sub.add_parser("compile", help="compile a PrefLTLf specification")
    p.add_argument("inputs", nargs=1, metavar="SPEC")
    p.add_argument("--ap", help="comma-separated atomic propositions (default: atoms of the specification)")
    policies(p, per_player=False)
    p.add_argument("--out", help="output directory")

    p = sub.add_parser("solve", help="characterise the Nash equilibria of a game")
    p.add_argument("inputs", nargs=3, metavar=("GAME", "SPEC1", "SPEC2"))
    policies(p)
    solving_flags(p)
    p.add_argument("--tmax", type=int, help="unroll the game to this horizon first")

    p = sub.add_parser("check", help="decide whether a strategy profile is Nash")
    p.add_argument("inputs", nargs=4, metavar=("GAME", "SPEC1", "SPEC2", "PROFILE"))
    policies(p)
    solving_flags(p)
    p.add_argument("--tmax", type=int)

    p = sub.add_parser("oracle", help="brute-force Nash profiles and compare with solve")
    p.add_argument("inputs", nargs="*", metavar="FILE", help="GAME SPEC1 SPEC2 (omit with --random)")
    policies(p)
    solving_flags(p)
    p.add_argument("--tmax", type=int)
    p.add_argument("--relation", choices=oracle.RELATIONS + ("both",), default="strict",
                   help="deviation test: strictly preferred, or any different weakly preferred outcome")
    p.add_argument("--random", type=int, metavar="N", help="check N random small instances")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("scenario", help="sweep drone B's start cell in a drone scenario")
    p.add_argument("inputs", nargs=1, metavar="SCENARIO",
                   help="scenario file (path, or name of a shipped file)")
    solving_flags(p)
    p.add_argument("--tmax", type=int, help="override the scenario's time budget")
    p.add_argument("--cells", help="only these B cells, e.g. '2,3;4,3'")
    p.add_argument("--b-start", help="solve fully for one B cell 'x,y'")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "oracle" and not args.random and len(args.inputs) != 3:
        parser.error("oracle needs GAME SPEC1 SPEC2, or --random N")
    if args.command == "scenario":
        # shipped scenario names resolve inside the package data directory
        path = Path(args.inputs[0])
        if not path.exists() and (drone.DATA / path).exists():
            args.inputs = [str(drone.DATA / path)]
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[cfg.command](cfg)
    except NonTerminatingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONTERMINATING
    except AutomatonMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (SizeGuardError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (LtlfSyntaxError, PrefSpecError, InconsistentPreferenceError, GameValidationError,
            ScenarioConfigError, InvalidProfileError, FileNotFoundError, ValueError) as exc:
        # the specific errors above also derive from ValueError, so they are handled first
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

if __name__ == "__main__":
    sys.exit(main())
