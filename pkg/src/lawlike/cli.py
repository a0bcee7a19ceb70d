"""Command-line interface.

Exit codes: 0 success or equivalent, 1 not equivalent (or a law that
does not survive), 2 usage, parse or cap error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from typing import TextIO

from .equivalence import (
    ASSERTIONAL,
    POINTWISE,
    Bounds,
    LawReport,
    Verdict,
    comparison_signature,
    equiv_material,
    equiv_strict,
    run_catalog,
)
from .errors import LogicError
from .formula import (
    Binary,
    Node,
    Not,
    PredAtom,
    PropAtom,
    Quantifier,
    Signature,
    children,
    has_strict,
    render,
    signature_of,
)
from .material import Structure, eval_fo
from .parser import parse, parse_formula
from .worlds import KripkeModel, assert_closure, eval_strict_assert, eval_strict_at, world_vars_bound

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


# --- JSON payloads ---------------------------------------------------------


def signature_json(sig: Signature) -> dict:
    return {"atoms": sorted(sig.prop_atoms), "predicates": dict(sig.predicates)}


def world_json(s: Structure, sig: Signature):
    """Sorted true atoms for a propositional world, atoms plus tables otherwise."""
    if sig.is_propositional:
        return s.true_atoms()
    return {
        "atoms": s.true_atoms(),
        "predicates": {name: [list(t) for t in s.table(name)] for name, _ in sig.predicates},
    }


def countermodel_json(v: Verdict, sig: Signature) -> dict | None:
    cm = v.countermodel
    if cm is None:
        return None
    if isinstance(cm, dict):
        worlds = [Structure.build(sig, 1, cm)]
        kind = "valuation"
    elif isinstance(cm, Structure):
        worlds = [cm]
        kind = "structure"
    else:
        worlds = list(cm.worlds)
        kind = "kripke"
    doc = {
        "kind": kind,
        "signature": signature_json(sig),
        "domain_size": worlds[0].domain_size,
        "worlds": [world_json(w, sig) for w in worlds],
    }
    if v.world is not None:
        doc["world"] = v.world
    return doc


def tree_json(f: Node) -> dict:
    kind = type(f).__name__
    if isinstance(f, PropAtom):
        return {"node": kind, "name": f.name}
    if isinstance(f, PredAtom):
        return {"node": kind, "name": f.name, "args": list(f.args)}
    if isinstance(f, Not):
        return {"node": kind, "child": tree_json(f.child)}
    if isinstance(f, Binary):
        return {"node": kind, "left": tree_json(f.left), "right": tree_json(f.right)}
    if isinstance(f, Quantifier):
        return {"node": kind, "var": f.var, "body": tree_json(f.body)}
    raise TypeError(kind)


def tree_text(f: Node, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(f, (PropAtom, PredAtom)):
        return [f"{pad}{type(f).__name__} {f.atom_text()}"]
    if isinstance(f, Quantifier):
        head = f"{pad}{type(f).__name__} {f.var}"
    else:
        head = f"{pad}{type(f).__name__}"
    lines = [head]
    for kid in children(f):
        lines.extend(tree_text(kid, indent + 1))
    return lines


def verdict_json(v: Verdict, f: Node, g: Node, b: Bounds) -> dict:
    sig = comparison_signature(f, g)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "equiv",
        "formulas": [render(f), render(g)],
        "semantics": v.semantics,
        "mode": v.mode,
        "verdict": "EQUIVALENT" if v.equivalent else "NOT_EQUIVALENT",
        "exact": v.exact,
        "bounds": {
            "domain_sizes": list(v.domains_searched),
            "max_domain": b.max_domain,
            "max_worlds": v.max_worlds,
        },
        "countermodel": countermodel_json(v, sig),
        "values": None if v.values is None else {"first": v.values[0], "second": v.values[1]},
        "statistics": {
            "models_examined": v.examined,
            "by_domain_size": {str(d): n for d, n in v.examined_by_domain.items()},
        },
    }


def load_world(doc, sig: Signature) -> Structure | KripkeModel:
    """Inverse of :func:`world_json` / :func:`countermodel_json`."""
    if isinstance(doc, dict) and "worlds" in doc:
        if "signature" in doc:
            declared = doc["signature"]
            sig = sig.union(Signature(frozenset(declared.get("atoms", [])), declared.get("predicates", {})))
        d = int(doc.get("domain_size", 1))
        return KripkeModel(tuple(_load_one(w, sig, d) for w in doc["worlds"]))
    d = int(doc.get("domain_size", 1)) if isinstance(doc, dict) else 1
    return _load_one(doc, sig, d)


def _load_one(doc, sig: Signature, d: int) -> Structure:
    if isinstance(doc, list):
        atoms, tables = doc, {}
    elif isinstance(doc, dict):
        atoms = doc.get("atoms", [])
        tables = {name: [tuple(row) for row in rows] for name, rows in doc.get("predicates", {}).items()}
    else:
        raise UsageError("a world is a list of true atoms or an object with 'atoms'/'predicates'")
    extra = Signature(frozenset(atoms), {n: len(r[0]) for n, r in tables.items() if r})
    sig = sig.union(extra)
    try:
        return Structure.build(sig, d, {a: True for a in atoms}, tables)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- text output -----------------------------------------------------------


def _tf(b: bool) -> str:
    return "true" if b else "false"


def describe_world(s: Structure, sig: Signature) -> str:
    parts = [f"{a}={'T' if v else 'F'}" for a, v in s.prop_values]
    for name, _ in sig.predicates:
        rows = ", ".join("(" + ",".join(map(str, t)) + ")" for t in s.table(name))
        parts.append(f"{name}={{{rows}}}")
    return " ".join(parts) if parts else "(empty signature)"


def verdict_summary(v: Verdict) -> str:
    if not v.equivalent:
        return "NOT EQUIVALENT"
    if v.semantics == "material":
        if v.exact:
            return f"EQUIVALENT (exact, {v.examined} {v.space})"
        lo, hi = v.domains_searched[0], v.domains_searched[-1]
        return f"EQUIVALENT (bounded: domain sizes {lo}..{hi}, {v.examined} {v.space})"
    regime = "exact" if v.exact else "bounded"
    lo, hi = v.domains_searched[0], v.domains_searched[-1]
    return (
        f"EQUIVALENT ({regime}: domain sizes {lo}..{hi}, up to {v.max_worlds} worlds, "
        f"{v.examined} models)"
    )


def verdict_text(v: Verdict, f: Node, g: Node) -> list[str]:
    lines = [verdict_summary(v)]
    if v.equivalent:
        return lines
    sig = comparison_signature(f, g)
    cm = v.countermodel
    if isinstance(cm, dict):
        lines.append("  countermodel: " + " ".join(f"{a}={'T' if cm[a] else 'F'}" for a in sorted(cm)))
    elif isinstance(cm, Structure):
        lines.append(f"  countermodel: domain size {cm.domain_size}")
        lines.append("    " + describe_world(cm, sig))
    else:
        lines.append(f"  countermodel: {len(cm.worlds)} world(s), domain size {cm.domain_size}")
        for i, w in enumerate(cm.worlds):
            lines.append(f"    world {i}: {describe_world(w, sig)}")
        if v.world is not None:
            lines.append(f"  differs at world {v.world}")
    lines.append(f"  first formula: {_tf(v.values[0])}; second formula: {_tf(v.values[1])}")
    lines.append(f"  models examined: {v.examined}")
    return lines


def law_json(r: LawReport, b: Bounds) -> dict:
    return {
        "name": r.name,
        "formulas": [render(r.left), render(r.right)],
        "classical": verdict_json(r.classical, r.left, r.right, b),
        "strict": verdict_json(r.strict, r.left, r.right, b),
        "survives": r.survives,
    }


def _yn(v: Verdict) -> str:
    return "equivalent" if v.equivalent else "NOT equivalent"


# --- subcommands -----------------------------------------------------------


def _emit(out: TextIO, doc: dict) -> None:
    out.write(json.dumps(doc, indent=2) + "\n")


def _formulas(args) -> list[str]:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return [line.strip() for line in fh if line.strip() and not line.lstrip().startswith("#")]
    if args.formula is None:
        raise UsageError("give a FORMULA or --file")
    return [args.formula]


def cmd_parse(args, out: TextIO) -> int:
    docs = []
    for text in _formulas(args):
        result = parse(text)
        if args.json:
            docs.append({
                "formula": render(result.formula),
                "tree": tree_json(result.formula),
                "signature": signature_json(result.inferred_signature),
                "warnings": result.warnings,
            })
        else:
            out.write(render(result.formula) + "\n")
            out.write("\n".join(tree_text(result.formula)) + "\n")
            sig = result.inferred_signature
            preds = ", ".join(f"{n}/{a}" for n, a in sig.predicates)
            out.write(f"signature: atoms {{{', '.join(sorted(sig.prop_atoms))}}}; predicates {{{preds}}}\n")
            for w in result.warnings:
                out.write(f"warning: {w}\n")
    if args.json:
        _emit(out, {"schema_version": SCHEMA_VERSION, "command": "parse", "results": docs})
    return 0


def cmd_lift(args, out: TextIO) -> int:
    docs = []
    for text in _formulas(args):
        lifted = assert_closure(parse_formula(text))
        if args.json:
            docs.append({"formula": text, "lifted": render(lifted), "world_variables": world_vars_bound(lifted)})
        else:
            out.write(render(lifted) + "\n")
    if args.json:
        _emit(out, {"schema_version": SCHEMA_VERSION, "command": "lift", "results": docs})
    return 0


def cmd_eval(args, out: TextIO) -> int:
    try:
        world_doc = json.loads(args.world)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--world is not valid JSON: {exc}") from None
    docs = []
    for text in _formulas(args):
        f = parse_formula(text)
        world = load_world(world_doc, signature_of(f))
        if isinstance(world, KripkeModel):
            value = eval_strict_assert(f, world)
            per_world = [eval_strict_at(f, world, i) for i in range(len(world.worlds))]
            doc = {"formula": render(f), "semantics": "strict-assertional", "value": value, "per_world": per_world}
        elif has_strict(f):
            # one world: strict and material readings coincide
            value = eval_strict_assert(f, KripkeModel((world,)))
            doc = {"formula": render(f), "semantics": "single-world", "value": value}
        else:
            value = eval_fo(f, world)
            doc = {"formula": render(f), "semantics": "material", "value": value}
        if args.json:
            docs.append(doc)
        else:
            line = _tf(doc["value"])
            if "per_world" in doc:
                line += "  (per world: " + ", ".join(_tf(x) for x in doc["per_world"]) + ")"
            out.write(line + "\n")
    if args.json:
        _emit(out, {"schema_version": SCHEMA_VERSION, "command": "eval", "results": docs})
    return 0


def _bounds(args) -> Bounds:
    try:
        return Bounds(max_domain=args.max_domain, max_worlds=args.max_worlds)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_equiv(args, out: TextIO) -> int:
    f, g = parse_formula(args.first), parse_formula(args.second)
    b = _bounds(args)
    if args.semantics == "strict":
        v = equiv_strict(f, g, b, args.mode)
    else:
        v = equiv_material(f, g, b)
    if args.json:
        _emit(out, verdict_json(v, f, g, b))
    else:
        out.write("\n".join(verdict_text(v, f, g)) + "\n")
    return 0 if v.equivalent else 1


def cmd_laws(args, out: TextIO) -> int:
    b = _bounds(args)
    reports = run_catalog(b)
    if args.json:
        _emit(out, {
            "schema_version": SCHEMA_VERSION,
            "command": "laws",
            "laws": [law_json(r, b) for r in reports],
        })
    else:
        width = max(len(r.name) for r in reports)
        out.write(f"{'law':<{width}}  {'classical':<15} {'strict':<15} survives\n")
        for r in reports:
            out.write(
                f"{r.name:<{width}}  {_yn(r.classical):<15} {_yn(r.strict):<15} "
                f"{'yes' if r.survives else 'no'}\n"
            )
    return 0 if all(r.survives for r in reports) else 1


DEMO_STEPS = (
    (
        "Switches, material reading",
        "(p & q) -> r", "(p -> r) | (q -> r)", "material",
        "Read at one fixed world, 'both switches light L' and 'one switch alone lights L' agree on all 8 rows.",
    ),
    (
        "Switches, law-like reading",
        "(p & q) => r", "(p => r) | (q => r)", "strict",
        "Read as laws over all worlds they come apart: two worlds where each switch alone fails to light L.",
    ),
    (
        "Paradise, material reading",
        "(forall x. P(x)) -> r", "exists x. (P(x) -> r)", "material",
        "In every single structure up to 3 individuals, 'if all are good' matches 'someone whose goodness suffices'.",
    ),
    (
        "Paradise, law-like reading",
        "(forall x. P(x)) => r", "exists x. (P(x) => r)", "strict",
        "Quantified over worlds, no single individual's goodness guarantees paradise in every world.",
    ),
)


def cmd_demo(args, out: TextIO) -> int:
    b = Bounds()
    for i, (title, left, right, semantics, note) in enumerate(DEMO_STEPS, 1):
        f, g = parse_formula(left), parse_formula(right)
        v = equiv_strict(f, g, b) if semantics == "strict" else equiv_material(f, g, b)
        out.write(f"[{i}] {title}\n")
        out.write(f"    {render(f)}   vs   {render(g)}\n")
        for line in verdict_text(v, f, g):
            out.write(f"    {line}\n")
        out.write(f"    {note}\n")
        if semantics == "strict":
            out.write(f"    lifted: {render(assert_closure(f))}\n")
            out.write(f"    lifted: {render(assert_closure(g))}\n")
        out.write("\n")
    return 0


# --- entry point -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lawlike", description="Material versus law-like conditionals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def formula_cmd(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("formula", nargs="?")
        p.add_argument("--file", help="read one formula per line")
        p.add_argument("--json", action="store_true")
        return p

    formula_cmd("parse", "print the tree and inferred signature")
    formula_cmd("lift", "print the world-quantified assert-closure")
    p = formula_cmd("eval", "evaluate at a world (or over a model) given as JSON")
    p.add_argument("--world", required=True, help="world or countermodel JSON")

    def bounded(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-domain", type=int, default=Bounds.max_domain)
        p.add_argument("--max-worlds", type=int, default=Bounds.max_worlds)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("equiv", help="decide equivalence of two formulas")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--semantics", choices=("material", "strict"), default="material")
    p.add_argument("--mode", choices=(ASSERTIONAL, POINTWISE), default=ASSERTIONAL)
    bounded(p)

    bounded(sub.add_parser("laws", help="which classical laws survive the law-like reading"))
    sub.add_parser("demo", help="walk through the switch and paradise examples")
    return parser


COMMANDS = {
    "parse": cmd_parse,
    "lift": cmd_lift,
    "eval": cmd_eval,
    "equiv": cmd_equiv,
    "laws": cmd_laws,
    "demo": cmd_demo,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"lawlike: error: {exc}\n")
        return 2
    except (LogicError, OSError) as exc:
        err.write(f"lawlike: error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())
