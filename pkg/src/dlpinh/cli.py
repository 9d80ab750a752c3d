"""Command-line front end: ``dlpinh [options] FILE...``.

Exit status: 0 when the pipeline completes (even with no answer set),
1 for parse or hierarchy errors, 2 for safety or grounding errors and
3 for usage errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from typing import Optional, Sequence, TextIO

from .errors import GroundingError, KnowledgeBaseError, MissingMaxint, TooLarge, TranslationError
from .grounder import check_program, ground_program
from .model import MAXINT, Literal, Program, Variable, bottom_object, program_for
from .parser import parse_literal, parse_sources
from .solver import SolveOptions, brave, cautious, enumerate_answer_sets
from .translator import emit, rewrite

EXIT_OK, EXIT_KB, EXIT_GROUND, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dlpinh", description="Answer sets of DLP< knowledge bases with inheritance.")
    ap.add_argument("files", nargs="+", metavar="FILE", help="input files, concatenated in order")
    ap.add_argument("-N", dest="maxint", type=int, metavar="N",
                    help="integer bound; overrides any '#maxint = n.' statement")
    ap.add_argument("--object", dest="target", metavar="OID",
                    help="object whose program is solved (default: the bottom object)")
    ap.add_argument("--mode", choices=("enumerate", "translate", "check"), default="enumerate")
    ap.add_argument("--brave", metavar="LITERAL", help="is LITERAL true in some answer set?")
    ap.add_argument("--cautious", metavar="LITERAL", help="is LITERAL true in every answer set?")
    ap.add_argument("--max", dest="max_models", type=int, metavar="K",
                    help="stop after K answer sets")
    ap.add_argument("--oracle", action="store_true",
                    help="use brute-force enumeration instead of the search")
    ap.add_argument("--no-filter", action="store_true", help="ignore a query in the input")
    ap.add_argument("--dump-ground", action="store_true",
                    help="print the ground program, one 'obj=<oid>' rule per line")
    ap.add_argument("--allow-reserved", action="store_true",
                    help="accept predicates ending in '__' (to re-read translator output)")
    return ap


def _ground_literal(text: str, maxint: Optional[int]) -> Literal:
    try:
        lit = parse_literal(text)
    except KnowledgeBaseError as exc:
        raise UsageError(f"bad literal {text!r}: {exc.message}") from None
    return _resolve(lit, maxint, text)


def _resolve(lit: Literal, maxint: Optional[int], what: str) -> Literal:
    if any(isinstance(a, Variable) for a in lit.args):
        raise UsageError(f"literal {what} must be ground")
    if MAXINT in lit.args:
        if maxint is None:
            raise MissingMaxint()
        lit = Literal(lit.predicate, tuple(maxint if a is MAXINT else a for a in lit.args),
                      lit.strong_neg)
    return lit


def _check_args(args) -> None:
    if args.brave and args.cautious:
        raise UsageError("--brave and --cautious are mutually exclusive")
    if (args.brave or args.cautious) and args.mode != "enumerate":
        raise UsageError(f"--brave/--cautious cannot be combined with --mode={args.mode}")
    if args.max_models is not None and args.max_models < 1:
        raise UsageError("--max must be at least 1")
    if args.cautious and args.max_models is not None:
        raise UsageError("--max cannot be used with --cautious")
    if args.maxint is not None and args.maxint < 0:
        raise UsageError("-N must be nonnegative")


def _select(kb, target: Optional[str]) -> Program:
    if target is None:
        target = bottom_object(kb)
        if target is None:
            raise UsageError("no bottom object; choose one with --object")
    return program_for(kb, target)


def run(argv: Sequence[str], out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    args = build_parser().parse_args(list(argv))
    try:
        _check_args(args)
        sources = []
        for path in args.files:
            try:
                with open(path, encoding="utf-8") as fh:
                    sources.append((path, fh.read()))
            except OSError as exc:
                raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        kb = parse_sources(sources, allow_reserved=args.allow_reserved)
        program = _select(kb, args.target)
        maxint = args.maxint if args.maxint is not None else kb.maxint
        program = dataclasses.replace(program, maxint=maxint)
        return _dispatch(args, program, maxint, out, err)
    except UsageError as exc:
        print(f"dlpinh: error: {exc}", file=err)
        return EXIT_USAGE
    except (KnowledgeBaseError, TranslationError) as exc:
        print(f"dlpinh: error: {exc}", file=err)
        return EXIT_KB
    except GroundingError as exc:
        print(f"dlpinh: error: {exc}", file=err)
        return EXIT_GROUND
    except TooLarge as exc:
        print(f"dlpinh: error: {exc}; drop --oracle", file=err)
        return EXIT_USAGE


def _dispatch(args, program: Program, maxint: Optional[int], out: TextIO, err: TextIO) -> int:
    if args.mode == "translate":
        out.write(emit(rewrite(program)))
        return EXIT_OK
    if args.mode == "check":
        check_program(program, maxint)
        if args.dump_ground:
            out.write(ground_program(program, maxint).dump())
        print("ok", file=out)
        return EXIT_OK

    g = ground_program(program, maxint)
    if args.dump_ground:
        out.write(g.dump())

    if args.brave or args.cautious:
        lit = _ground_literal(args.brave or args.cautious, maxint)
        if args.brave:
            ok, witness = brave(g, lit, oracle=args.oracle)
            print("true" if ok else "false", file=out)
            if witness is not None:
                print(witness, file=out)
        else:
            ok, counter = cautious(g, lit, oracle=args.oracle)
            print("true" if ok else "false", file=out)
            if counter is not None:
                print(counter, file=out)
            elif not enumerate_answer_sets(g, SolveOptions(max_models=1, oracle_mode=args.oracle)).answer_sets:
                print("% no answer set: vacuously true", file=out)
        return EXIT_OK

    query = None
    if program.query and not args.no_filter:
        query = tuple(_resolve(q, maxint, str(q)) for q in program.query)
    res = enumerate_answer_sets(g, SolveOptions(args.max_models, args.oracle, query))
    if not res.answer_sets:
        print("no answer set", file=out)
    for m in res.answer_sets:
        print(m, file=out)
    if not res.complete:
        print(f"% stopped after {len(res.answer_sets)} answer sets (--max)", file=err)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
