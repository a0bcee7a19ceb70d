"""Seeded random formulas and models for property checks."""

from __future__ import annotations

import itertools
import random

from .formula import (
    And,
    Exists,
    Forall,
    Iff,
    MaterialImp,
    Node,
    Not,
    Or,
    PredAtom,
    PropAtom,
    Signature,
    StrictImp,
)
from .material import Structure
from .worlds import KripkeModel

DEFAULT_SIGNATURE = Signature(frozenset({"p", "q", "r"}), {"P": 1, "Q": 2})
VARIABLES = ("x", "y", "z")
_BINARY = (And, Or, MaterialImp, StrictImp, Iff)


def random_formula(
    rng: random.Random,
    sig: Signature = DEFAULT_SIGNATURE,
    depth: int = 4,
    bound: tuple[str, ...] = (),
    strict: bool = True,
    quantifiers: bool = True,
    open_vars: bool = False,
) -> Node:
    """Random well-formed formula; closed unless ``open_vars`` is set.

    Predicate atoms only use variables bound above them (or any variable
    name when ``open_vars``), so the default output is a sentence.
    Shadowing quantifiers are produced on purpose.
    """
    arities = sig.arities
    usable_vars = VARIABLES if open_vars else bound
    preds = [p for p in arities if usable_vars] if quantifiers or open_vars else []
    atoms = sorted(sig.prop_atoms)

    def leaf() -> Node:
        options = []
        if atoms:
            options.append("atom")
        if preds:
            options.append("pred")
        if not options:
            raise ValueError("signature offers no atoms usable here")
        if rng.choice(options) == "atom":
            return PropAtom(rng.choice(atoms))
        name = rng.choice(preds)
        return PredAtom(name, tuple(rng.choice(usable_vars) for _ in range(arities[name])))

    if depth <= 0 or (depth < 3 and rng.random() < 0.25):
        if not atoms and not preds and quantifiers and sig.predicates:
            var = rng.choice(VARIABLES)
            q = rng.choice((Forall, Exists))
            return q(var, random_formula(rng, sig, 0, bound + (var,), strict, quantifiers, open_vars))
        return leaf()
    kinds = ["not", "binary", "binary", "binary"]
    if quantifiers and sig.predicates:
        kinds.append("quant")
    kind = rng.choice(kinds)
    sub = lambda b=bound: random_formula(rng, sig, depth - 1, b, strict, quantifiers, open_vars)  # noqa: E731
    if kind == "not":
        return Not(sub())
    if kind == "quant":
        var = rng.choice(VARIABLES)
        q = rng.choice((Forall, Exists))
        return q(var, sub(bound + (var,)))
    ops = _BINARY if strict else tuple(op for op in _BINARY if op is not StrictImp)
    return rng.choice(ops)(sub(), sub())


def random_structure(rng: random.Random, sig: Signature, domain_size: int) -> Structure:
    props = {a: rng.random() < 0.5 for a in sorted(sig.prop_atoms)}
    tables = {
        name: [t for t in itertools.product(range(domain_size), repeat=arity) if rng.random() < 0.5]
        for name, arity in sig.predicates
    }
    return Structure.build(sig, domain_size, props, tables)


def random_model(
    rng: random.Random, sig: Signature = DEFAULT_SIGNATURE, max_domain: int = 2, max_worlds: int = 3
) -> KripkeModel:
    d = rng.randint(1, max_domain) if sig.predicates else 1
    k = rng.randint(1, max_worlds)
    return KripkeModel(tuple(random_structure(rng, sig, d) for _ in range(k)))
