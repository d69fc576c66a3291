"""``statone``: check, dualize, round-trip, enumerate and draw finite objects from JSON documents.

Exit codes: 0 pass, 1 mathematical violation, 2 parse/schema/usage error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bauer, documents, stone
from .certificates import DualityCertificate, replay
from .errors import CapExceededError, InvalidOperatorError
from .mv import TABLE_CAP, ProductMvAlgebra, TableMvAlgebra, check_mv_axioms, maximal_ideals_and_radical
from .operators import (
    OperatorSpec,
    check_state_morphism,
    check_state_operator_axioms,
    enumerate_state_morphism_operators,
    sweep_unary_tables,
)
from .reports import LawReport

OK, VIOLATION, BAD_INPUT, CAP = 0, 1, 2, 3

ALGEBRA_KINDS = {"product", "cube"}
SPACE_KINDS = {"stone", "bauer"}


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _print_reports(reports: list[LawReport]) -> int:
    for r in reports:
        print(r)
    return OK if all(r.passed for r in reports) else VIOLATION


# ------------------------------------------------------------------- check

def _check_product(doc: dict) -> list[LawReport]:
    alg = ProductMvAlgebra(doc["chains"])
    reports = []
    if alg.size <= TABLE_CAP:
        reports.append(check_mv_axioms(alg.to_table()))
    maximal, radical = maximal_ideals_and_radical(alg)
    info = LawReport(f"{alg.signature}: {alg.size} elements, {len(maximal)} maximal ideals")
    everywhere = radical.zero_coords == frozenset(range(len(alg.signature)))
    info.results["semisimple (radical is {0})"] = None if everywhere else "radical is not {0}"
    reports.append(info)
    if "sigma" not in doc:
        return reports
    spec = OperatorSpec(alg.signature, doc["sigma"])
    structural = LawReport(f"σ={list(spec.sigma)}")
    structural.results["range"] = None
    structural.results["divisibility"] = None
    structural.results["idempotence"] = None
    reports.append(structural)
    if alg.size <= TABLE_CAP:
        table, t = spec.table()
        reports.append(check_state_operator_axioms(table, t))
        morph = LawReport("state-morphism-operator")
        morph.results["idempotent MV-endomorphism"] = None if check_state_morphism(table, t) else "no"
        reports.append(morph)
    return reports


def _check_table(alg: TableMvAlgebra, tau) -> list[LawReport]:
    reports = [check_mv_axioms(alg)]
    if tau is not None and reports[0].passed:
        reports.append(check_state_operator_axioms(alg, tau))
        morph = LawReport("state-morphism-operator")
        morph.derived["idempotent MV-endomorphism"] = None if check_state_morphism(alg, tau) else "no"
        reports.append(morph)
    return reports


def _check_cube(tau: bauer.CubeOperator) -> list[LawReport]:
    A = bauer.CubeAlgebra(tau.dim)
    report = LawReport(f"cube of dimension {tau.dim}, σ={list(tau.sigma)}")
    report.results["σ idempotent"] = None
    for n in range(1, 11):
        report.derived[f"weakly divisible at n={n}"] = None if A.is_weakly_divisible_at(n) else "no v with n·v=1"
    return [report]


def _check_certificate(cert: DualityCertificate) -> list[LawReport]:
    report = LawReport(f"certificate ({cert.kind})")
    report.results["stored run passed"] = "; ".join(cert.failures) if cert.failures else None
    problems = replay(cert)
    report.results["replay from stored witnesses"] = "; ".join(problems[:5]) if problems else None
    return [report]


def cmd_check(args) -> int:
    doc = documents.load(args.file)
    kind = doc["kind"]
    try:
        if kind == "product":
            reports = _check_product(doc)
        elif kind == "table":
            reports = _check_table(*documents.build(doc))
        elif kind == "stone":
            pair = documents.build(doc)
            reports = [stone.image_and_preimage_characterizations(stone.psi_object(pair))]
        elif kind == "bauer":
            obj = documents.build(doc)
            report = LawReport(f"Bauer simplex on {obj.k} vertices, g={list(obj.g)}")
            report.results["g idempotent, vertices to vertices"] = None
            reports = [report]
        elif kind == "cube":
            reports = _check_cube(documents.build(doc))
        else:
            reports = _check_certificate(documents.build(doc))
    except InvalidOperatorError as exc:
        print(f"FAIL {exc}")
        return VIOLATION
    return _print_reports(reports)


# ----------------------------------------------------------------- dualize

def dualize(doc: dict, direction: str | None = None) -> dict:
    """The dual object document; Boolean kinds go through φ/ψ, simplex kinds through S/T."""
    kind = doc["kind"]
    if kind not in ALGEBRA_KINDS | SPACE_KINDS:
        raise UsageError(f"cannot dualize a {kind} document")
    natural = "algebra-to-space" if kind in ALGEBRA_KINDS else "space-to-algebra"
    if direction and direction != natural:
        raise UsageError(f"direction {direction} does not apply to a {kind} document")
    obj = documents.build(doc)
    if kind == "product":
        if not isinstance(obj, OperatorSpec):
            raise UsageError("a product document needs sigma to be dualized")
        if not obj.algebra.is_boolean:
            raise UsageError(f"{obj.signature} is not Boolean; Stone duality needs every chain to be S1")
        return documents.to_document(stone.phi_object(obj))
    if kind == "stone":
        return documents.to_document(stone.psi_object(documents.canonical_stone(obj)))
    if kind == "bauer":
        return documents.to_document(bauer.functor_T(obj)[1])
    return documents.to_document(bauer.functor_S(bauer.CubeAlgebra(obj.dim), obj))


def cmd_dualize(args) -> int:
    doc = documents.load(args.file)
    try:
        out = dualize(doc, args.direction)
    except InvalidOperatorError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return VIOLATION
    _emit(documents.dumps(out), args.out)
    return OK


# --------------------------------------------------------------- roundtrip

def roundtrip(doc: dict) -> DualityCertificate:
    kind = doc["kind"]
    obj = documents.build(doc)
    if kind == "product":
        if not isinstance(obj, OperatorSpec):
            obj = OperatorSpec.identity(obj.signature)
        if not obj.algebra.is_boolean:
            raise UsageError(f"{obj.signature} is not Boolean")
        return stone.verify_duality(obj)
    if kind == "stone":
        return stone.verify_duality(obj)
    if kind in ("bauer", "cube"):
        return bauer.verify_bauer_duality(obj)
    raise UsageError(f"no round trip for a {kind} document")


def cmd_roundtrip(args) -> int:
    doc = documents.load(args.file)
    if doc["kind"] == "certificate":
        return _print_reports(_check_certificate(documents.build(doc)))
    try:
        cert = roundtrip(doc)
    except InvalidOperatorError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return VIOLATION
    _emit(documents.dumps(cert.to_dict()), args.out)
    status = "PASS" if cert.passed else "FAIL"
    total = sum(cert.checks.values())
    print(f"{status} {cert.kind} round trip: {total} identity instances, {len(cert.failures)} failures",
          file=sys.stderr)
    return OK if cert.passed else VIOLATION


# --------------------------------------------------------------- enumerate

def enumerate_lines(doc: dict, mode: str) -> tuple[list[str], bool]:
    """Listing lines and whether every table-mode operator has a structural counterpart."""
    kind = doc["kind"]
    if kind == "product":
        alg = ProductMvAlgebra(doc["chains"])
        structural = enumerate_state_morphism_operators(alg.signature)
    elif kind == "table":
        if mode == "structural":
            raise UsageError("structural enumeration needs a product document")
        alg, structural = documents.build(doc)[0], None
    else:
        raise UsageError(f"cannot enumerate operators on a {kind} document")
    if mode == "structural":
        lines = [f"{len(structural)} state-morphism operators on {alg.signature}"]
        lines += [f"  σ={list(s.sigma)}" for s in structural]
        return lines, True
    table = alg.to_table() if isinstance(alg, ProductMvAlgebra) else alg
    sweep = sweep_unary_tables(table)
    morphs = set(sweep.state_morphisms)
    known = {s.table()[1] for s in structural} if structural is not None else None
    lines = [f"{len(sweep.state_operators)} state-operator tables among {sweep.swept} "
             f"({len(morphs)} state-morphism)"]
    complete = True
    for t in sweep.state_operators:
        flags = ["morphism" if t in morphs else "NOT morphism"]
        if known is not None:
            if t in known:
                flags.append("structural")
            else:
                flags.append("NO structural counterpart")
                complete = False
        lines.append(f"  τ={list(t)}  [{', '.join(flags)}]")
    return lines, complete


def cmd_enumerate(args) -> int:
    lines, complete = enumerate_lines(documents.load(args.file), args.mode)
    _emit("\n".join(lines) + "\n", args.out)
    return OK if complete else VIOLATION


# -------------------------------------------------------------- export-dot

def export_dot(doc: dict) -> str:
    kind = doc["kind"]
    obj = documents.build(doc)
    if kind == "stone":
        labels = list(obj.points)
    elif kind == "bauer":
        labels = [obj.simplex.label(j) for j in range(obj.k)]
    else:
        raise UsageError(f"export-dot draws stone or bauer documents, not {kind}")
    lines = [f"digraph {kind} {{"]
    lines += [f'  "{x}";' for x in labels]
    lines += [f'  "{labels[x]}" -> "{labels[y]}";' for x, y in enumerate(obj.g)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args) -> int:
    doc = documents.load(args.file)
    try:
        text = export_dot(doc)
    except InvalidOperatorError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return VIOLATION
    _emit(text, args.out)
    return OK


# -------------------------------------------------------------------- main

def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="statone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "check": (cmd_check, "run the validity suite for a document (replays certificates)"),
        "dualize": (cmd_dualize, "write the dual object document"),
        "roundtrip": (cmd_roundtrip, "run both round trips and write a certificate"),
        "enumerate": (cmd_enumerate, "list state-morphism operators or state-operator tables"),
        "export-dot": (cmd_export_dot, "draw points or vertices with their g-edges in DOT"),
    }
    for name, (fn, help_text) in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--out", help="write output here instead of stdout")
        p.set_defaults(func=fn)
        if name == "dualize":
            p.add_argument("--direction", choices=["algebra-to-space", "space-to-algebra"])
        if name == "enumerate":
            p.add_argument("--mode", choices=["structural", "table"], default="structural")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (documents.DocumentError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return CAP


if __name__ == "__main__":
    sys.exit(main())
