"""Batch front door: JSON problem files in, JSON lines out.

A problem file declares the space (plain size or a variable system), named
partitions, named gamble sets and optionally named labeled pieces plus a
script of commands.  Subcommands resolve names against the file, run one
algebra operation or the whole law suite, and print canonical JSON.  Exit
status: 0 on success, 1 when a law check fails, 2 on any parse or input
error.  GA_MAX_DIM caps the space size (default 12).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .algebra import QuestionSet, axiom_suite, combine, extract, question_set
from .atoms import extend_to_maximal
from .cones import Gamble
from .desirability import PhiElement, natural_extension, phi_top
from .jsonio import (
    ParseError,
    gamble_from_json,
    labeled_from_json,
    labeled_to_json,
    maximal_to_json,
    partition_from_json,
    phi_to_json,
    system_from_json,
)
from .labeled import LabeledPiece, transport
from .multivariate import VariableSystem, cylinder
from .sampling import rand_coherent
from .spaces import Partition, PossibilitySpace, SpaceMismatch, commutes, cond_independent, independent
import random


@dataclass
class Problem:
    space: PossibilitySpace
    system: VariableSystem | None
    partitions: dict[str, Partition]
    gambles: dict[str, list[Gamble]]
    pieces: dict[str, LabeledPiece]
    script: list[list[str]] = field(default_factory=list)


def load_problem(path: str) -> Problem:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as e:
        raise ParseError(str(e), path) from None
    except json.JSONDecodeError as e:
        raise ParseError(
            f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", path
        ) from None
    if not isinstance(raw, dict):
        raise ParseError("the problem file is a JSON object", "$")

    system = None
    if "system" in raw:
        system = system_from_json(raw["system"], "$.system")
        space = system.space
    elif "space" in raw:
        size = raw["space"]
        if not isinstance(size, int) or isinstance(size, bool) or size < 1:
            raise ParseError("space is a positive world count", "$.space")
        space = PossibilitySpace(size)
    else:
        raise ParseError('the file needs "space" or "system"', "$")

    cap = int(os.environ.get("GA_MAX_DIM", "12"))
    if space.size > cap:
        raise ParseError(
            f"space has {space.size} worlds, over the GA_MAX_DIM cap of {cap}", "$"
        )

    partitions = {}
    for name, blocks in (raw.get("partitions") or {}).items():
        partitions[name] = partition_from_json(space, blocks, f"$.partitions.{name}")
    gambles: dict[str, list[Gamble]] = {}
    for name, arr in (raw.get("gambles") or {}).items():
        where = f"$.gambles.{name}"
        if not isinstance(arr, list):
            raise ParseError("a gamble set is an array of gambles", where)
        gambles[name] = [
            gamble_from_json(space, g, f"{where}[{i}]") for i, g in enumerate(arr)
        ]
    pieces = {}
    for name, obj in (raw.get("pieces") or {}).items():
        pieces[name] = labeled_from_json(space, obj, f"$.pieces.{name}")
    script = raw.get("script") or []
    if not isinstance(script, list) or not all(
        isinstance(cmd, list) and all(isinstance(t, str) for t in cmd) for cmd in script
    ):
        raise ParseError("the script is an array of string-command arrays", "$.script")
    return Problem(space, system, partitions, gambles, pieces, script)


def _get(table: dict, name: str, what: str):
    if name not in table:
        raise ParseError(f"unknown {what} {name!r}", f"$.{what}s")
    return table[name]


def _closure_of_set(problem: Problem, name: str) -> PhiElement:
    gens = _get(problem.gambles, name, "gamble set")
    if any(g.is_zero() for g in gens):
        return phi_top(problem.space)
    return natural_extension(problem.space, gens)


def _questions(problem: Problem) -> QuestionSet:
    if problem.system is not None:
        nvars = len(problem.system.domains)
        cyls = [
            cylinder(problem.system, [i for i in range(nvars) if mask >> i & 1])
            for mask in range(1 << nvars)
        ]
        return question_set(problem.space, cyls)
    if not problem.partitions:
        raise ParseError("no partitions declared for the axiom run", "$.partitions")
    try:
        return question_set(problem.space, list(problem.partitions.values()))
    except ValueError as e:
        raise ParseError(str(e), "$.partitions") from None


def run_command(problem: Problem, args: list[str], seed: int = 0, count: int = 20):
    """Execute one resolved command; returns (json-able output, exit status)."""
    if not args:
        raise ParseError("empty command", "$.script")
    cmd, rest = args[0], args[1:]
    if cmd == "coherence" and len(rest) == 1:
        gens = _get(problem.gambles, rest[0], "gamble set")
        if any(g.is_zero() for g in gens):
            return {"result": "contradictory"}, 0
        built = natural_extension(problem.space, gens)
        return {"result": "contradictory" if built.is_top else "coherent"}, 0
    if cmd == "combine" and len(rest) == 2:
        out = combine(_closure_of_set(problem, rest[0]), _closure_of_set(problem, rest[1]))
        return phi_to_json(out), 0
    if cmd == "extract" and len(rest) == 2:
        x = _get(problem.partitions, rest[0], "partition")
        out = extract(x, _closure_of_set(problem, rest[1]))
        return phi_to_json(out), 0
    if cmd == "transport" and len(rest) == 2:
        y = _get(problem.partitions, rest[0], "partition")
        piece = _get(problem.pieces, rest[1], "piece")
        return labeled_to_json(transport(y, piece)), 0
    if cmd == "commutes" and len(rest) == 2:
        x = _get(problem.partitions, rest[0], "partition")
        y = _get(problem.partitions, rest[1], "partition")
        return {"commutes": commutes(x, y)}, 0
    raise ParseError(f"unknown or malformed command {args!r}", "$.script")


def main(argv: list[str] | None = None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space-file", required=True, help="JSON problem file")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="gamble-algebra",
        description="exact operations on coherent sets of desirable gambles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coherence", parents=[common])
    p.add_argument("set")
    p = sub.add_parser("combine", parents=[common])
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("extract", parents=[common])
    p.add_argument("x")
    p.add_argument("set")
    p = sub.add_parser("transport", parents=[common])
    p.add_argument("y")
    p.add_argument("piece")
    p = sub.add_parser("independence", parents=[common])
    p.add_argument("parts", nargs="+")
    p.add_argument("--given")
    p = sub.add_parser("commutes", parents=[common])
    p.add_argument("x")
    p.add_argument("y")
    atoms_p = sub.add_parser("atoms")
    atoms_sub = atoms_p.add_subparsers(dest="atoms_command", required=True)
    p = atoms_sub.add_parser("separate", parents=[common])
    p.add_argument("set")
    p.add_argument("gamble")
    p = sub.add_parser("axioms", parents=[common])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    sub.add_parser("script", parents=[common])

    ns = parser.parse_args(argv)
    lines: list[str] = []
    status = 0
    try:
        problem = load_problem(ns.space_file)
        if ns.command == "independence":
            parts = [_get(problem.partitions, n, "partition") for n in ns.parts]
            if ns.given is not None:
                given = _get(problem.partitions, ns.given, "partition")
                verdict = cond_independent(parts, given)
            elif len(parts) < 2:
                raise ParseError("unconditional independence needs two partitions", "$")
            else:
                verdict = independent(parts)
            lines.append(json.dumps({"independent": verdict}))
        elif ns.command == "atoms":
            p_elem = _closure_of_set(problem, ns.set)
            if p_elem.is_top:
                raise ParseError("the gamble set is contradictory", "$.gambles")
            target_set = _get(problem.gambles, ns.gamble, "gamble set")
            if len(target_set) != 1:
                raise ParseError("the separation target names a single gamble", "$")
            try:
                witness = extend_to_maximal(p_elem, target_set[0])
            except ValueError as e:
                raise ParseError(str(e), "$") from None
            lines.append(json.dumps(maximal_to_json(witness)))
        elif ns.command == "axioms":
            q = _questions(problem)
            rng = random.Random(ns.seed)
            corpus = [rand_coherent(rng, problem.space) for _ in range(ns.count)]
            report = axiom_suite(q, corpus, seed=ns.seed, samples=ns.count)
            lines.extend(r.to_json() for r in report.records)
            status = 0 if report.ok else 1
        elif ns.command == "script":
            for cmd in problem.script:
                out, _ = run_command(problem, cmd)
                lines.append(json.dumps({"command": cmd, "output": out}))
        else:
            if ns.command == "coherence":
                cmd = ["coherence", ns.set]
            elif ns.command == "combine":
                cmd = ["combine", ns.a, ns.b]
            elif ns.command == "extract":
                cmd = ["extract", ns.x, ns.set]
            elif ns.command == "transport":
                cmd = ["transport", ns.y, ns.piece]
            else:
                cmd = ["commutes", ns.x, ns.y]
            out, status = run_command(problem, cmd)
            lines.append(json.dumps(out))
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (SpaceMismatch, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    text = "\n".join(lines) + ("\n" if lines else "")
    if getattr(ns, "out", None):
        with open(ns.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
