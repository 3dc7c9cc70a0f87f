"""Command-line front end.

JSON results go to stdout (sorted keys, canonical rationals); one-line
summaries go to stderr unless ``--quiet``. Exit status: 0 when every
requested verification passes, 1 when one fails, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import bethe, doper, gauge, population
from .bethe import NotFertileError, is_bethe, is_fertile, is_generic, weight_at_infinity
from .liealg import WeylWord, degrees_for
from .population import format_param, parse_param
from .schema import ProblemFileError, load, problem_to_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class CommandFailed(Exception):
    """A requested verification failed; carries the report to print anyway."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report


def parse_word(text: str | None) -> list[int] | None:
    if text is None:
        return None
    text = text.strip().strip("()[]")
    if not text:
        return []
    return [int(v) for v in text.replace(" ", "").split(",") if v]


def parse_words(text: str) -> list[list[int]]:
    return [parse_word(chunk) or [] for chunk in text.split(";")]


def _summary(args: argparse.Namespace, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


def cmd_check(args: argparse.Namespace) -> dict:
    _, problem, y = load(args.file)
    gen = is_generic(problem, y)
    fertile = {str(i): is_fertile(problem, y, i) is not None for i in range(1, problem.rank + 1)}
    ok = gen.generic and all(fertile.values())
    report = {
        "tuple": y.to_json(),
        "degrees": list(y.degrees),
        "weight_at_infinity": list(weight_at_infinity(problem, y).coords),
        "generic": gen.to_json(),
        "fertile": fertile,
        "bethe": ok,
    }
    _summary(args, f"check: generic={gen.generic} fertile={fertile} bethe={ok}")
    if not ok:
        raise CommandFailed("tuple does not represent a Bethe solution", report)
    return report


def cmd_wronskian(args: argparse.Namespace) -> dict:
    _, problem, y = load(args.file)
    i = args.direction
    if not 1 <= i <= problem.rank:
        raise ProblemFileError(f"--direction {i} outside 1..{problem.rank}")
    yt = is_fertile(problem, y, i)
    if yt is None:
        raise CommandFailed(f"not fertile in direction {i}: the Wronskian equation has no polynomial solution")
    report = {
        "direction": i,
        "y": y[i].to_json(),
        "Q": bethe.build_Q(problem, y, i).to_json(),
        "ytilde": yt.to_json(),
        "ytilde_monic": yt.monic().to_json(),
        "family": "ytilde + c*y",
        "degree": yt.degree,
    }
    _summary(args, f"wronskian: direction {i}, ytilde = {yt}")
    return report


def _positional_params(raw: list | None, n: int) -> list:
    if raw is None:
        return [0] * n
    if len(raw) != n:
        raise ProblemFileError(f"expected {n} parameters, got {len(raw)}")
    return [parse_param(v) for v in raw]


def cmd_populate(args: argparse.Namespace) -> dict:
    pf, problem, y = load(args.file)
    word = parse_word(args.word)
    if word is None:
        word = pf.word or []
    WeylWord(word).check(problem.rank)
    # parameters pair with word letters positionally; letters act right to left
    sequence = list(word) if args.sequence else list(reversed(word))
    samples = args.samples if args.samples is not None else pf.samples
    raw_params = [v.strip() for v in args.params.split(",")] if args.params else pf.params
    if samples is not None and raw_params is None:
        weyl_word = list(reversed(sequence))
        report = population.explore_cells(problem, y, [weyl_word], samples)
        rec = report.records[0]
        out = {"mode": "samples", "cell": rec.to_json()}
        _summary(args, f"populate: {len(rec.members)} members of degrees {sorted(rec.observed_degrees)}")
        return out
    params = _positional_params(raw_params, len(word))
    seq_params = params if args.sequence else list(reversed(params))
    rep = population.reproduce_word(problem, y, sequence, seq_params)
    result = rep.result
    out = {
        "mode": "params",
        "word": word,
        "reproduction_sequence": sequence,
        "params": [format_param(c) for c in seq_params],
        "steps": [
            {
                "direction": s.direction,
                "param": format_param(s.param),
                "tuple": s.tuple.to_json(),
                "degrees": list(s.tuple.degrees),
                "generic": s.generic,
            }
            for s in rep.steps
        ],
        "tuple": result.to_json(),
        "degrees": list(result.degrees),
        "bethe": is_bethe(problem, result),
        "flagged_steps": rep.flagged_steps(),
    }
    _summary(args, f"populate: degrees {result.degrees}, bethe={out['bethe']}")
    return out


def cmd_cells(args: argparse.Namespace) -> dict:
    pf, problem, y = load(args.file)
    if args.words is not None:
        words = parse_words(args.words)
    elif pf.words is not None:
        words = pf.words
    else:
        words = [[]]
    samples = args.samples or pf.samples or 2
    report = population.explore_cells(problem, y, words, samples)
    out = report.to_json()
    out["predictions"] = {str(WeylWord(w)): list(degrees_for(problem, y.degrees, w)) for w in words}
    ok = all(r.dimension_witness for r in report.records if r.members)
    out["all_dimension_witnesses"] = ok
    _summary(args, f"cells: {len(report.records)} cells, warnings={len(report.warnings)}")
    if not ok:
        raise CommandFailed("a cell failed its dimension witness", out)
    return out


def _load_matrix(path: str) -> doper.MatrixRF:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemFileError(f"{path}: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("Y", data.get("matrix"))
    if not isinstance(data, list) or not data:
        raise ProblemFileError(f"{path}: expected an array of rows or a vector")
    try:
        if isinstance(data[0], dict):
            return doper.MatrixRF.column([doper.RF.from_json(e) for e in data])
        return doper.MatrixRF([[doper.RF.from_json(e) for e in row] for row in data])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ProblemFileError(f"{path}: malformed matrix entry: {exc}") from exc


def _solve_report(problem, y, word: list[int] | None) -> dict:
    fs = doper.fundamental_solution_A(problem, y)
    out = {"fundamental": fs.to_json()}
    if word is not None:
        sv = doper.general_solution_vector(problem, y, word)
        out["vector"] = sv.to_json()
    return out


def cmd_doper(args: argparse.Namespace) -> dict:
    pf, problem, y = load(args.file)
    action = args.action
    if action == "build":
        d = doper.build_V(problem, y)
        out = {"action": "build", **d.to_json(), "det_one": True}
        _summary(args, f"doper build: {problem.rank + 1}x{problem.rank + 1} V")
        return out
    if action == "deform":
        dirs = [args.direction] if args.direction else list(range(1, problem.rank + 1))
        out = {"action": "deform", "deformations": [doper.deform(problem, y, i).to_json() for i in dirs]}
        _summary(args, f"doper deform: gauge identity holds in directions {dirs}")
        return out
    if action == "solve":
        word = parse_word(args.word) if args.word is not None else pf.word
        out = {"action": "solve", **_solve_report(problem, y, word)}
        _summary(args, "doper solve: difference equation verified")
        return out
    if action == "verify":
        if not args.matrix:
            raise ProblemFileError("--action verify needs --matrix FILE")
        Y = _load_matrix(args.matrix)
        V = doper.build_V(problem, y).V
        ok = doper.verify_solution(V, Y, problem.h)
        out = {"action": "verify", "verified": ok}
        _summary(args, f"doper verify: {ok}")
        if not ok:
            raise CommandFailed("Y(x+h) != V(x) Y(x)", out)
        return out
    raise ProblemFileError(f"unknown action {action!r}")


def cmd_gauge(args: argparse.Namespace) -> dict:
    _, problem, y = load(args.file)
    kind = gauge.classify(problem.params, problem.h)
    try:
        shift, new_problem, new_y = gauge.normalize(problem, y)
    except gauge.GaugeError as exc:
        raise ProblemFileError(str(exc)) from exc
    out = {
        "classification": kind.to_json(),
        "shift": shift.to_json(),
        "problem": problem_to_json(new_problem, new_y),
    }
    if args.normalize:
        r = problem.rank
        out["fertile_before"] = {str(i): is_fertile(problem, y, i) is not None for i in range(1, r + 1)}
        out["fertile_after"] = {str(i): is_fertile(new_problem, new_y, i) is not None for i in range(1, r + 1)}
        if out["fertile_before"] != out["fertile_after"]:
            raise CommandFailed("fertility verdicts changed under the gauge shift", out)
    _summary(args, f"gauge: {kind.label} -> d = {out['shift']['d']}")
    return out


def cmd_solve(args: argparse.Namespace) -> dict:
    pf, problem, y = load(args.file)
    word = parse_word(args.word) if args.word is not None else pf.word
    out = _solve_report(problem, y, word)
    _summary(args, "solve: rational fundamental solution verified")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bethe-opers", description=__doc__.splitlines()[0])
    parser.add_argument("--quiet", action="store_true", help="suppress summaries on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "genericity, fertility and the Bethe verdict for a tuple")
    p = add("wronskian", cmd_wronskian, "solve the discrete Wronskian equation in one direction")
    p.add_argument("--direction", "-i", type=int, required=True)
    p = add("populate", cmd_populate, "reproduce a tuple along a Weyl word")
    p.add_argument("--word", help="Weyl word such as 2,1 (letters act right to left)")
    p.add_argument("--params", help="comma-separated parameters paired with word letters; 'inf' allowed")
    p.add_argument("--samples", type=int, help="sample this many Bethe members of the cell instead")
    p.add_argument("--sequence", action="store_true", help="read --word as a left-to-right reproduction order")
    p = add("cells", cmd_cells, "explore Bruhat-type cells of the population")
    p.add_argument("--words", help="semicolon-separated Weyl words, e.g. ';1;2,1'")
    p.add_argument("--samples", type=int)
    p = add("doper", cmd_doper, "type-A Miura d-oper: build, deform, solve, verify")
    p.add_argument("--action", choices=["build", "deform", "solve", "verify"], required=True)
    p.add_argument("--direction", "-i", type=int)
    p.add_argument("--word", help="reproduction sequence for the solution vector")
    p.add_argument("--matrix", help="JSON file with a candidate solution Y (verify)")
    p = add("gauge", cmd_gauge, "classify parameters and compute the tree gauge shift")
    p.add_argument("--normalize", action="store_true", help="also compare fertility verdicts before and after the shift")
    p = add("solve", cmd_solve, "rational fundamental solution of the difference equation (type A)")
    p.add_argument("--word", help="also build the solution vector along this reproduction sequence")
    return parser


def dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "quiet"):
        args.quiet = False
    try:
        report = args.func(args)
    except CommandFailed as exc:
        if exc.report is not None:
            print(dump(exc.report))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (NotFertileError, population.InvariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ProblemFileError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(dump(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
