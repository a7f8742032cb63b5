"""Command-line front end.

Exit codes: 0 yes / success, 1 no (decision subcommands), 2 usage or input
errors, 3 enumeration guard refused the input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, embedding, qbf, semantics, supercoherence
from .errors import (
    ConstraintPresent,
    GuardExceeded,
    InvariantViolation,
    NotNormal,
    ParseError,
    UniverseMismatch,
    UnknownAtom,
)
from .syntax import parse_atom_list, parse_program, render_program

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, data: dict, text: str):
        if self.as_json:
            print(json.dumps(data))
        else:
            print(text, end="" if text.endswith("\n") else "\n")


def _program(path: str):
    return parse_program(Path(path).read_text(encoding="utf-8"))


def _qbf(path: str):
    return qbf.parse_qbf(Path(path).read_text(encoding="utf-8"))


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _fmt(names) -> str:
    return "{" + ", ".join(names) + "}"


def cmd_solve(args, out: _Out) -> int:
    report = semantics.answer_sets(_program(args.file), args.max_atoms, args.parallel)
    lines = [_fmt(s) for s in report.name_sets()] or ["no answer sets"]
    out.emit(report.to_json(), "\n".join(lines))
    return EXIT_YES


def cmd_classify(args, out: _Out) -> int:
    report = analysis.classify(_program(args.file))
    data = report.to_json()
    out.emit(data, "\n".join(f"{k[3:].replace('_', '-')}: {_yes(v)}" for k, v in data.items()))
    return EXIT_YES


def cmd_check_sc(args, out: _Out) -> int:
    verdict = supercoherence.is_super_coherent(_program(args.file), args.max_atoms, args.parallel)
    data = verdict.to_json()
    lines = [f"super-coherent: {_yes(verdict.holds)}"]
    if not verdict.holds:
        lines.append(f"witness: {_fmt(data['witness'])}")
    lines.append(f"facts checked: {verdict.facts_checked}")
    out.emit(data, "\n".join(lines))
    return EXIT_YES if verdict.holds else EXIT_NO


def cmd_query(args, out: _Out) -> int:
    p = _program(args.file)
    answer = semantics.query(p, args.atom, args.mode, args.max_atoms, args.parallel)
    out.emit({"atom": args.atom, "mode": args.mode, "holds": answer},
             f"{args.atom} is {args.mode}ly {'true' if answer else 'false'}")
    return EXIT_YES if answer else EXIT_NO


def _encode(f):
    if isinstance(f, qbf.Qbf3):
        return "disjunctive", qbf.encode_disjunctive(f)
    return "normal", qbf.encode_normal(f)


def cmd_encode(args, out: _Out) -> int:
    kind, program = _encode(_qbf(args.file))
    text = render_program(program)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    data = {"encoding": kind, "rules": len(program), "atoms": len(program.atoms)}
    if args.output:
        out.emit(data | {"output": args.output},
                 f"wrote {kind} encoding ({len(program)} rules) to {args.output}")
    else:
        out.emit(data | {"program": text}, text)
    return EXIT_YES


def cmd_qbf_valid(args, out: _Out) -> int:
    f = _qbf(args.file)
    valid = qbf.qbf3_valid(f) if isinstance(f, qbf.Qbf3) else qbf.qbf2_valid(f)
    out.emit({"valid": valid}, "true" if valid else "false")
    return EXIT_YES if valid else EXIT_NO


def cmd_verify(args, out: _Out) -> int:
    p, f = _program(args.program), _qbf(args.qbf)
    if isinstance(f, qbf.Qbf3):
        report = qbf.verify_phi_reduction(p, f)
    else:
        report = qbf.verify_phi_norm_reduction(p, f)
    lines = ["passed"] if report.passed else [
        f"item {v.item}: {_fmt(v.interpretation)}: {v.detail}" for v in report.violations
    ]
    out.emit(report.to_json(), "\n".join(lines))
    return EXIT_YES if report.passed else EXIT_NO


def _artifact_text(art: embedding.EmbeddingArtifact) -> str:
    notes = [f"% {w}\n" for w in art.warnings]
    if art.fail_atom:
        notes.append(f"% fail atom: {art.fail_atom}\n")
    if art.query_atom:
        notes.append(f"% query atom: {art.query_atom}\n")
    return "".join(notes) + render_program(art.program)


def cmd_embed(args, out: _Out) -> int:
    p = _program(args.file)
    universe = parse_atom_list(args.universe) if args.universe else None
    if args.transform == "strat":
        art = embedding.strat_transform(p, universe)
    elif args.transform == "strat-shift":
        art = embedding.strat_shift(p, universe)
    else:
        art = embedding.shift_embedding(p)
        for w in art.warnings:
            print(f"warning: {w}", file=sys.stderr)
    out.emit(art.to_json(), _artifact_text(art))
    return EXIT_YES


def cmd_embed_query(args, out: _Out) -> int:
    p = _program(args.file)
    build = embedding.embed_brave_query if args.mode == "brave" else embedding.embed_cautious_query
    art = build(p, args.atom)
    out.emit(art.to_json(), _artifact_text(art))
    return EXIT_YES


def cmd_equiv(args, out: _Out) -> int:
    p, q = _program(args.lhs), _program(args.rhs)
    verdict = supercoherence.projected_uniform_equiv(
        p, q, parse_atom_list(args.context), parse_atom_list(args.project),
        args.max_atoms, args.parallel,
    )
    data = verdict.to_json()
    lines = [f"equivalent: {_yes(verdict.holds)}"]
    if not verdict.holds:
        lines.append(f"witness: {_fmt(data['witness'])}")
        lines.append("lhs: " + _fmt(_fmt(s) for s in data["lhs_projection"]))
        lines.append("rhs: " + _fmt(_fmt(s) for s in data["rhs_projection"]))
    lines.append(f"facts checked: {verdict.facts_checked}")
    out.emit(data, "\n".join(lines))
    return EXIT_YES if verdict.holds else EXIT_NO


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-atoms", type=_positive_int, default=None,
                        help="override the enumeration guard (runtime is exponential)")
    common.add_argument("--parallel", type=_positive_int, default=1, metavar="N",
                        help="worker processes; output does not depend on N")

    parser = argparse.ArgumentParser(
        prog="superasp", description="Super-coherence toolkit for propositional ASP programs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("solve", cmd_solve, "enumerate answer sets").add_argument("file")
    add("classify", cmd_classify, "report syntactic program classes").add_argument("file")
    add("check-sc", cmd_check_sc, "decide super-coherence").add_argument("file")

    sp = add("query", cmd_query, "brave or cautious query")
    sp.add_argument("file")
    sp.add_argument("atom")
    sp.add_argument("--mode", choices=["brave", "cautious"], required=True)

    sp = add("encode", cmd_encode, "encode a QBF as a program")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")

    add("qbf-valid", cmd_qbf_valid, "evaluate a QBF by truth tables").add_argument("file")

    sp = add("verify-reduction", cmd_verify, "check the model structure of a QBF encoding")
    sp.add_argument("program")
    sp.add_argument("qbf")

    sp = add("embed", cmd_embed, "transform into a super-coherent or normal program")
    sp.add_argument("file")
    sp.add_argument("--transform", choices=["strat", "shift", "strat-shift"], required=True)
    sp.add_argument("--universe", help="comma-separated atoms to include in the guess")

    sp = add("embed-query", cmd_embed_query, "embed a query into a super-coherent program")
    sp.add_argument("file")
    sp.add_argument("atom")
    sp.add_argument("--mode", choices=["brave", "cautious"], required=True)

    sp = add("equiv", cmd_equiv, "uniform equivalence with projection")
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.add_argument("--context", default="", help="comma-separated context atoms")
    sp.add_argument("--project", default="", help="comma-separated projection atoms")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.json)
    try:
        return args.func(args, out)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ParseError as exc:
        print(f"error: {args.command}: parse error at {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownAtom as exc:
        print(f"error: unknown atom {exc.args[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, UniverseMismatch, NotNormal, ConstraintPresent, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
