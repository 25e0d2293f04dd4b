"""Command-line front end.

Exit codes: 0 success, 1 a verification suite failed, 2 bad arguments,
3 a rule violation (illegal move), 4 an instance over the size caps.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from typing import TextIO

from .engine import (
    Evasive,
    GameKind,
    GreedyStar,
    LexFirst,
    Mode,
    RandomLegal,
    RoleAssignment,
    Strategy,
    run_game,
)
from .errors import ForfeitError, ParameterError, ResourceLimitError, RuleViolation, SatGameError
from .maximizer import MaximizerStrategy
from .minimizer import MinimizerStrategy
from .setfam import Params, legal_moves
from .solver import SolverStrategy, solve
from .sperner import sperner_principal_variation, solve_sperner
from .verify import SUITES, all_passed

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RULE, EXIT_RESOURCE = 0, 1, 2, 3, 4

STRATEGY_NAMES = ("minimizer", "maximizer", "random", "greedy-star", "lex-first", "evasive", "solver", "human")


class HumanStrategy(Strategy):
    """Reads moves from a text stream, one set per line (``1 2 3`` or ``1,2,3``).

    Illegal or malformed input is rejected and the prompt repeated; running
    out of input forfeits.
    """

    name = "human"

    def __init__(self, stdin: TextIO, stdout: TextIO, sample: int = 5):
        self.stdin = stdin
        self.stdout = stdout
        self.sample = sample

    def move(self, state):
        p = state.params
        hints = [str(s) for s in itertools.islice(legal_moves(state.claimed), self.sample)]
        while True:
            self.stdout.write(
                f"[{self.role.value}] {len(state.claimed)} sets claimed; e.g. {' '.join(hints)}\nmove> "
            )
            self.stdout.flush()
            line = self.stdin.readline()
            if not line:
                raise ForfeitError("input ended before the game did", seat=None, strategy=self.name)
            try:
                s = p.kset(int(x) for x in line.replace(",", " ").split())
            except (ValueError, SatGameError) as exc:
                self.stdout.write(f"not a {p.k}-subset of [{p.n}]: {exc}\n")
                continue
            if s in state.claimed:
                self.stdout.write(f"{s} is already claimed\n")
                continue
            bad = state.claimed.first_disjoint(s)
            if bad is not None:
                self.stdout.write(f"{s} misses claimed set {bad}\n")
                continue
            return s


def make_strategy(name: str, kind: GameKind, seed: int, stdin: TextIO, stdout: TextIO) -> Strategy:
    if name == "minimizer":
        return MinimizerStrategy()
    if name == "maximizer":
        return MaximizerStrategy()
    if name == "random":
        return RandomLegal(seed)
    if name == "greedy-star":
        return GreedyStar()
    if name == "lex-first":
        return LexFirst()
    if name == "evasive":
        return Evasive(seed)
    if name == "solver":
        return SolverStrategy(kind)
    if name == "human":
        return HumanStrategy(stdin, stdout)
    raise ParameterError(f"unknown strategy {name!r}; choose from {', '.join(STRATEGY_NAMES)}")


def parse_int_list(text: str) -> list[int]:
    """``"3..9"`` or ``"4,9,16,25"`` (ranges inclusive, may be mixed)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty list {text!r}")
    return out


def _write(text: str, path: str | None, stdout: TextIO) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def cmd_play(args, stdin, stdout, stderr) -> int:
    kind = GameKind(args.kind)
    p = Params(args.n, args.k)
    roles = RoleAssignment.parse(args.first)
    # prompts go to stderr so stdout carries only the transcript
    a = make_strategy(args.a, kind, args.seed, stdin, stderr)
    b = make_strategy(args.b, kind, args.seed + 1, stdin, stderr)
    t = run_game(p, kind, roles, a, b, Mode(args.mode), seed=args.seed)
    _write(t.to_json(), args.out, stdout)
    return EXIT_OK


def cmd_solve(args, stdin, stdout, stderr) -> int:
    roles = RoleAssignment.parse(args.first)
    if args.sperner:
        value = solve_sperner(args.n, roles)
        pv = [list(s) for s in sperner_principal_variation(args.n, roles)]
        out = {"game": "sperner", "n": args.n, "first": roles.first_mover.value, "value": value,
               "principal_variation": pv}
    else:
        if args.k is None:
            raise ParameterError("--k is required unless --sperner is given")
        kind = GameKind(args.kind)
        res = solve(Params(args.n, args.k), kind, roles, cap=args.cap)
        out = {"game": "intersecting", "kind": kind.value, "n": args.n, "k": args.k,
               "first": roles.first_mover.value, **res.to_dict()}
    if args.json:
        _write(json.dumps(out, indent=2) + "\n", args.out, stdout)
    else:
        lines = [f"value: {out['value']}",
                 "principal variation: " + " ".join("{" + ",".join(map(str, s)) + "}" for s in out["principal_variation"])]
        if "positions_expanded" in out:
            lines.append(f"positions expanded: {out['positions_expanded']}")
        _write("\n".join(lines) + "\n", args.out, stdout)
    return EXIT_OK


def _suite_kwargs(name: str, args) -> dict:
    kw = {}
    if args.k and name in ("minimizer", "maximizer"):
        kw["ks"] = args.k
    if args.seeds is not None and name in ("minimizer", "maximizer"):
        kw["seeds"] = args.seeds
    return kw


def format_rows(rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "instance", "measured", "bound", "pass"])
        for r in rows:
            w.writerow(r.as_list())
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(
            [dict(zip(("suite", "instance", "measured", "bound", "pass"), r.as_list())) for r in rows], indent=2
        ) + "\n"
    width = max([len(r.instance) for r in rows] + [8])
    lines = [f"{'suite':<10} {'instance':<{width}} {'measured':>9} {'bound':>9}  result"]
    for r in rows:
        lines.append(
            f"{r.suite:<10} {r.instance:<{width}} {str(r.measured):>9} {str(r.bound):>9}  {'PASS' if r.passed else 'FAIL'}"
        )
    return "\n".join(lines) + "\n"


def cmd_verify(args, stdin, stdout, stderr) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rows = []
    for name in names:
        rows.extend(SUITES[name](**_suite_kwargs(name, args)))
    _write(format_rows(rows, args.format), args.out, stdout)
    failed = [r for r in rows if not r.passed]
    for r in failed:
        stderr.write(f"FAILED {r.suite}: {r.instance} (measured {r.measured}, bound {r.bound})\n")
    return EXIT_OK if all_passed(rows) else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="satgame", description="Saturation games on intersecting families.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    play = sub.add_parser("play", help="play one game and write its transcript")
    play.add_argument("--n", type=int, required=True)
    play.add_argument("--k", type=int, required=True)
    play.add_argument("--kind", choices=["saturation", "tau"], default="tau")
    play.add_argument("--first", default="min", help="min/fast or max/slow")
    play.add_argument("--a", default="lex-first", help="strategy of the first seat")
    play.add_argument("--b", default="lex-first", help="strategy of the second seat")
    play.add_argument("--mode", choices=["full", "certify"], default="full")
    play.add_argument("--seed", type=int, default=0)
    play.add_argument("--out")

    solve_p = sub.add_parser("solve", help="exact value of a tiny instance")
    solve_p.add_argument("--n", type=int, required=True)
    solve_p.add_argument("--k", type=int)
    solve_p.add_argument("--kind", choices=["saturation", "tau"], default="saturation")
    solve_p.add_argument("--first", default="fast")
    solve_p.add_argument("--sperner", action="store_true", help="solve the Sperner game on 2^[n]")
    solve_p.add_argument("--cap", type=int, default=24, help="largest board (number of k-sets) to solve")
    solve_p.add_argument("--json", action="store_true")
    solve_p.add_argument("--out")

    ver = sub.add_parser("verify", help="run the verification suites")
    ver.add_argument("--suite", choices=["all", *SUITES], default="all")
    ver.add_argument("--k", type=parse_int_list, help='k values, e.g. "3..9" or "4,9,16,25"')
    ver.add_argument("--seeds", type=int, help="random opponents per instance")
    ver.add_argument("--format", choices=["table", "csv", "json"], default="table")
    ver.add_argument("--out")
    return ap


COMMANDS = {"play": cmd_play, "solve": cmd_solve, "verify": cmd_verify}


def main(argv=None, stdin: TextIO | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        stderr.write(f"satgame: error: {exc}\n")
        return EXIT_USAGE
    for seat in ("a", "b"):
        name = getattr(args, seat, None)
        if name is not None and name not in STRATEGY_NAMES:
            stderr.write(f"satgame: error: unknown strategy {name!r}; choose from {', '.join(STRATEGY_NAMES)}\n")
            return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, stdin, stdout, stderr)
    except (ForfeitError, RuleViolation) as exc:
        stderr.write(f"satgame: rule violation: {exc}\n")
        return EXIT_RULE
    except ResourceLimitError as exc:
        stderr.write(f"satgame: too large: {exc}\n")
        return EXIT_RESOURCE
    except ParameterError as exc:
        stderr.write(f"satgame: error: {exc}\n")
        return EXIT_USAGE
    except SatGameError as exc:
        stderr.write(f"satgame: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
