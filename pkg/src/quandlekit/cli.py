"""Command-line front end.

Every subcommand prints one JSON document on stdout (sorted keys, so
identical invocations are byte-identical) and keeps human-readable chatter
on stderr.  Exit codes: 0 when the requested properties hold, 1 when a
checked property fails, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from .diagrams import (
    CORPUS_NAMES,
    PDStructureError,
    PDSyntaxError,
    checkerboard,
    load_diagram,
    signs,
)
from .homology import (
    ZZ,
    Cochain2,
    CoefficientGroup,
    cocycle_basis,
    cohomology_group,
)
from .invariants import (
    GroupRingValue,
    check_eps_alternation,
    check_lemma_4_1,
    check_lemma_4_2,
    contribution,
    enumerate_colorings,
    eps_psi_zero_sum,
    is_trivial,
    theorem_sweep,
)
from .quandles import (
    MalformedTableError,
    QuandleTable,
    enumerate_quandles,
    load_quandle_file,
    orbits,
    table_doc,
    validate_quandle,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2

MODE_OF = {"neg": "minus", "pos": "plus"}
KNOT_NAMES = ("trefoil", "figure8", "5_1", "5_2", "trefoil_kinked", "figure8_kinked")


@dataclass(frozen=True)
class RunConfig:
    """Normalized numeric bounds shared by the computing subcommands."""

    degree: int | None = None
    max_order: int | None = None

    def __post_init__(self):
        if self.degree is not None and not 1 <= self.degree <= 3:
            raise ValueError("degree must be between 1 and 3")
        if self.max_order is not None and not 1 <= self.max_order <= 5:
            raise ValueError("max order must be between 1 and 5")


def _emit(doc):
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _note(msg):
    sys.stderr.write(msg + "\n")


def _load_valid_quandle(path):
    rows, _ = load_quandle_file(path)
    report = validate_quandle(rows)
    if not report.valid:
        v = report.violations[0]
        raise MalformedTableError(
            "table in %s violates axiom %d at %r" % (path, v.axiom, v.witness)
        )
    return QuandleTable.from_rows(rows)


# --- quandle ----------------------------------------------------------------


def cmd_quandle_check(args):
    rows, _ = load_quandle_file(args.file)
    report = validate_quandle(rows)
    _emit(
        {
            "n": report.n,
            "valid": report.valid,
            "violations": [
                {"axiom": v.axiom, "witness": list(v.witness)}
                for v in report.violations
            ],
        }
    )
    if not report.valid:
        v = report.violations[0]
        _note("not a quandle: axiom %d fails at %r" % (v.axiom, v.witness))
        return EXIT_PROPERTY
    part = orbits(QuandleTable.from_rows(rows))
    _note(
        "valid quandle of order %d, %d orbit%s%s"
        % (report.n, part.count, "s"[: part.count != 1], ", connected" if part.connected else "")
    )
    return EXIT_OK


def cmd_quandle_info(args):
    X = _load_valid_quandle(args.file)
    part = orbits(X)
    _emit(
        {
            "n": X.n,
            "connected": part.connected,
            "orbit_count": part.count,
            "orbits": [list(b) for b in part.blocks],
            "involutory": X.is_involutory,
        }
    )
    _note("order %d, %d orbit(s), %sconnected" % (X.n, part.count, "" if part.connected else "not "))
    return EXIT_OK


def cmd_quandle_gen(args):
    RunConfig(max_order=args.order)
    found = enumerate_quandles(args.order, dedupe_iso=args.dedupe)
    outdir = args.out or "quandles%d" % args.order
    os.makedirs(outdir, exist_ok=True)
    files = []
    for i, X in enumerate(found):
        path = os.path.join(outdir, "quandle%d_%03d.json" % (args.order, i))
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(table_doc(X), fh, sort_keys=True, indent=2)
            fh.write("\n")
        files.append(path)
    _emit({"order": args.order, "dedupe": args.dedupe, "count": len(files), "files": files})
    _note("wrote %d quandle file(s) to %s" % (len(files), outdir))
    return EXIT_OK


# --- cohomology and cocycles --------------------------------------------------


def cmd_cohomology(args):
    RunConfig(degree=args.n)
    X = _load_valid_quandle(args.file)
    coeff = CoefficientGroup.parse(args.coeff)
    group = cohomology_group(X, args.flavor, MODE_OF[args.sign], args.n, coeff)
    _emit(
        {
            "n": args.n,
            "sign": args.sign,
            "flavor": args.flavor,
            "coeff": str(coeff),
            "group": group.to_doc(),
            "pretty": str(group),
        }
    )
    _note("H^%d (%s, %s) over %s: %s" % (args.n, args.flavor, args.sign, coeff, group))
    return EXIT_OK


def cmd_cocycles(args):
    X = _load_valid_quandle(args.file)
    coeff = CoefficientGroup.parse(args.coeff)
    basis = cocycle_basis(X, MODE_OF[args.sign], coeff)
    doc = {"sign": args.sign, "coeff": str(coeff), "count": len(basis)}
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        files = []
        for i, phi in enumerate(basis):
            path = os.path.join(args.out, "cocycle_%03d.json" % i)
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(phi.to_doc(), fh, sort_keys=True, indent=2)
                fh.write("\n")
            files.append(path)
        doc["files"] = files
    else:
        doc["basis"] = [phi.to_doc() for phi in basis]
    _emit(doc)
    _note("degree-2 %s-cocycles over %s: %d generator(s)" % (args.sign, coeff, len(basis)))
    return EXIT_OK


# --- invariant ----------------------------------------------------------------


def cmd_invariant(args):
    X = _load_valid_quandle(args.quandle)
    d = load_diagram(args.diagram)
    with open(args.cocycle, "r", encoding="utf-8") as fh:
        phi = Cochain2.from_doc(json.load(fh))
    if args.coeff is not None and CoefficientGroup.parse(args.coeff) != phi.coeff:
        raise ValueError("--coeff %s does not match the cocycle file" % args.coeff)
    if phi.n != X.n:
        raise ValueError("cocycle is for order %d, quandle has order %d" % (phi.n, X.n))
    mode = MODE_OF[args.mode]
    sh = checkerboard(d, outer_face=args.outer_face)
    sg = signs(d, sh)
    if not phi.is_cocycle(X, mode):
        _note("warning: the cochain is not a %s-cocycle; the sum is not an invariant" % args.mode)
    values = [contribution(d, rho, phi, mode, crossing_signs=sg) for rho in enumerate_colorings(d, X)]
    value = GroupRingValue.from_values(phi.coeff, values)
    _emit(
        {
            "quandle": [list(r) for r in X.table],
            "diagram": args.diagram,
            "mode": args.mode,
            "coeff": str(phi.coeff),
            "colorings": value.total,
            "invariant": value.to_doc(),
            "trivial": is_trivial(value),
        }
    )
    _note("%d colorings, %s" % (value.total, "trivial" if is_trivial(value) else "nontrivial"))
    return EXIT_OK


# --- verify -------------------------------------------------------------------


def _entry_doc(e, mode_name, coeff):
    return {
        "quandle": [list(r) for r in e.quandle],
        "diagram": e.diagram,
        "mode": mode_name,
        "coeff": str(coeff),
        "cocycle": [list(r) for r in e.cocycle],
        "colorings": e.colorings,
        "invariant": e.invariant.to_doc(),
        "trivial": e.trivial,
    }


def _triviality_required(mode, coeff):
    """Over Z both modes must be trivial on knots; in plus mode any odd
    modulus (no 2-torsion) must be as well."""
    if coeff == ZZ:
        return True
    return mode == "plus" and coeff.kind == "Zm" and coeff.modulus % 2 == 1


def _eps_identity_report(diagrams, quandles, rng):
    small = [X for X in quandles if X.n <= 3][:5]
    bad = []
    for name, d in diagrams:
        if not check_eps_alternation(d):
            bad.append({"diagram": name, "check": "alternation"})
        sg = signs(d, checkerboard(d))
        if d.alternating and len(set(sg.eps)) > 1:
            bad.append({"diagram": name, "check": "constant-on-alternating"})
        for X in small:
            cols = enumerate_colorings(d, X)
            for _ in range(5):
                psi = [rng.randrange(-9, 10) for _ in range(X.n)]
                if any(eps_psi_zero_sum(d, rho, psi, sg) for rho in cols):
                    bad.append({"diagram": name, "check": "psi-zero-sum"})
                    break
    return bad


def cmd_verify(args):
    RunConfig(max_order=args.max_order)
    coeff = CoefficientGroup.parse(args.coeff)
    if coeff.kind == "Q":
        raise ValueError("verify sweeps run over Z or Z/m")
    mode_names = ("neg", "pos") if args.mode == "both" else (args.mode,)
    quandles = [X for n in range(1, args.max_order + 1) for X in enumerate_quandles(n)]

    if args.expect_nontrivial:
        diagrams = [(args.expect_nontrivial, load_diagram(args.expect_nontrivial))]
    else:
        diagrams = [(name, load_diagram(name)) for name in KNOT_NAMES]

    mode_docs = []
    witnesses = []
    failed = False
    for mode_name in mode_names:
        mode = MODE_OF[mode_name]
        report = theorem_sweep(quandles, diagrams, coeff, mode)
        bad = report.nontrivial()
        required = _triviality_required(mode, coeff) and not args.expect_nontrivial
        if required and bad:
            failed = True
        mode_docs.append(
            {
                "mode": mode_name,
                "cells": len(report.entries),
                "nontrivial": len(bad),
                "triviality_required": required,
            }
        )
        witnesses.extend(_entry_doc(e, mode_name, coeff) for e in bad[:20])

    lemma_failures = []
    if not args.expect_nontrivial and coeff == ZZ and "pos" in mode_names:
        for X in quandles:
            for phi in cocycle_basis(X, "plus", ZZ):
                for name, d in diagrams:
                    for rep in (check_lemma_4_1(d, X, phi), check_lemma_4_2(d, X, phi)):
                        if not rep.ok:
                            failed = True
                            rho, a, u, v = rep.failures[0]
                            lemma_failures.append(
                                {
                                    "lemma": rep.name,
                                    "quandle": [list(r) for r in X.table],
                                    "diagram": name,
                                    "coloring": list(rho),
                                    "element": a,
                                    "values": [str(u), str(v)],
                                }
                            )

    eps_failures = []
    if not args.expect_nontrivial:
        rng = random.Random(1729)
        corpus = [(name, load_diagram(name)) for name in CORPUS_NAMES]
        eps_failures = _eps_identity_report(corpus, quandles, rng)
        if eps_failures:
            failed = True

    if args.expect_nontrivial and not witnesses:
        failed = True

    doc = {
        "max_order": args.max_order,
        "coeff": str(coeff),
        "modes": mode_docs,
        "quandles": len(quandles),
        "diagrams": [name for name, _ in diagrams],
        "expect_nontrivial": args.expect_nontrivial,
        "lemma_failures": lemma_failures,
        "eps_failures": eps_failures,
        "witnesses": witnesses,
        "ok": not failed,
    }
    _emit(doc)
    if failed:
        _note("verify failed; see the document for witnesses")
        return EXIT_PROPERTY
    if args.expect_nontrivial:
        _note("found %d nontrivial value(s) on %s" % (len(witnesses), args.expect_nontrivial))
    else:
        _note("all checked identities hold")
    return EXIT_OK


# --- wiring -------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quandlekit",
        description="finite quandles, their (co)homology, and 2-cocycle knot invariants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quandle", help="validate, describe, or enumerate quandles")
    qsub = q.add_subparsers(dest="subcommand", required=True)
    qc = qsub.add_parser("check", help="axiom-check a table file")
    qc.add_argument("-f", "--file", required=True)
    qc.set_defaults(func=cmd_quandle_check)
    qi = qsub.add_parser("info", help="order, orbits, connectedness")
    qi.add_argument("-f", "--file", required=True)
    qi.set_defaults(func=cmd_quandle_info)
    qg = qsub.add_parser("gen", help="enumerate all quandles of one order")
    qg.add_argument("--order", type=int, required=True)
    qg.add_argument("--dedupe", action="store_true", help="keep one table per isomorphism class")
    qg.add_argument("--out", help="output directory (default quandles<order>)")
    qg.set_defaults(func=cmd_quandle_gen)

    ch = sub.add_parser("cohomology", help="print one cohomology group")
    ch.add_argument("-f", "--file", required=True)
    ch.add_argument("-n", type=int, required=True, help="degree (1..3)")
    ch.add_argument("--sign", choices=("neg", "pos"), required=True)
    ch.add_argument("--coeff", default="Z")
    ch.add_argument("--flavor", choices=("rack", "degenerate", "quandle"), default="quandle")
    ch.set_defaults(func=cmd_cohomology)

    cy = sub.add_parser("cocycles", help="degree-2 cocycle basis")
    cy.add_argument("-f", "--file", required=True)
    cy.add_argument("--sign", choices=("neg", "pos"), required=True)
    cy.add_argument("--coeff", default="Z")
    cy.add_argument("--out", help="write one JSON file per basis element")
    cy.set_defaults(func=cmd_cocycles)

    inv = sub.add_parser("invariant", help="evaluate a 2-cocycle state sum")
    inv.add_argument("-q", "--quandle", required=True)
    inv.add_argument("-k", "--diagram", required=True, help="corpus name or PD file")
    inv.add_argument("--mode", choices=("neg", "pos"), required=True)
    inv.add_argument("--coeff", help="must match the cocycle file if given")
    inv.add_argument("--cocycle", required=True, help="cochain JSON file")
    inv.add_argument("--outer-face", type=int, dest="outer_face")
    inv.set_defaults(func=cmd_invariant)

    ver = sub.add_parser("verify", help="run the triviality sweeps and identity checks")
    ver.add_argument("--max-order", type=int, default=4)
    ver.add_argument("--coeff", default="Z")
    ver.add_argument("--mode", choices=("neg", "pos", "both"), default="both")
    ver.add_argument(
        "--expect-nontrivial",
        metavar="DIAGRAM",
        help="succeed iff the sweep finds a nontrivial value on this diagram",
    )
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        MalformedTableError,
        PDSyntaxError,
        PDStructureError,
        ValueError,
        KeyError,
        OSError,
    ) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        _note("error: %s" % msg)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
