"""Bounded equivalence checking with canonical minimal countermodels.

Search order is fixed: domain size ascending, then number of worlds
ascending, then the lexicographic order of world-index combinations.
The first model that separates the two formulas is therefore the unique
minimal countermodel and is reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass, field

from .errors import CapExceeded, EvaluationError, UnsupportedConnective
from .formula import Node, Signature, erase_strict, has_strict, is_propositional, signature_of
from .material import (
    DEFAULT_MAX_ATOMS,
    DEFAULT_MAX_BITS,
    Structure,
    enumerate_structures,
    enumerate_valuations,
    eval_fo,
    eval_prop,
    structure_bit_count,
)
from .worlds import KripkeModel, eval_strict_assert, eval_strict_at

ASSERTIONAL = "assertional"
POINTWISE = "pointwise"


@dataclass(frozen=True)
class Bounds:
    max_domain: int = 3
    max_worlds: int = 4
    max_atoms: int = DEFAULT_MAX_ATOMS
    max_bits: int = DEFAULT_MAX_BITS
    max_models: int = 2_000_000

    def __post_init__(self):
        for name in ("max_domain", "max_worlds", "max_atoms", "max_bits", "max_models"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class Verdict:
    """Outcome of an equivalence check.

    ``countermodel`` is a ``dict`` valuation (material propositional), a
    ``Structure`` (material first-order) or a ``KripkeModel`` (strict).
    ``world`` is set only for pointwise strict refutations. ``values``
    holds the truth values of the two formulas on the countermodel.
    """

    equivalent: bool
    semantics: str
    exact: bool
    examined: int
    examined_by_domain: dict[int, int] = field(default_factory=dict)
    domains_searched: tuple[int, ...] = ()
    max_worlds: int | None = None
    mode: str | None = None
    countermodel: object = None
    world: int | None = None
    values: tuple[bool, bool] | None = None
    space: str = "models"

    @property
    def domain_size(self) -> int | None:
        cm = self.countermodel
        if cm is None:
            return None
        return 1 if isinstance(cm, dict) else cm.domain_size

    @property
    def world_count(self) -> int | None:
        cm = self.countermodel
        if cm is None:
            return None
        return len(cm.worlds) if isinstance(cm, KripkeModel) else 1


def comparison_signature(f: Node, g: Node) -> Signature:
    return signature_of(f).union(signature_of(g))


def _refuse_strict(*fs: Node) -> None:
    if any(has_strict(f) for f in fs):
        raise UnsupportedConnective("material equivalence cannot interpret '=>'; use strict semantics")


def equiv_material_prop(f: Node, g: Node, cap: int = DEFAULT_MAX_ATOMS) -> Verdict:
    """Exact truth-table comparison of two propositional formulas."""
    _refuse_strict(f, g)
    if not (is_propositional(f) and is_propositional(g)):
        raise EvaluationError("equiv_material_prop needs propositional formulas")
    sig = comparison_signature(f, g)
    examined = 0
    for v in enumerate_valuations(sig, cap):
        examined += 1
        a, b = eval_prop(f, v), eval_prop(g, v)
        if a != b:
            return Verdict(False, "material", True, examined, {1: examined}, (1,),
                           countermodel=v, values=(a, b), space="valuations")
    return Verdict(True, "material", True, examined, {1: examined}, (1,), space="valuations")


def _domain_sizes(sig: Signature, b: Bounds) -> range:
    # without predicates, truth does not depend on the (nonempty) domain
    return range(1, 2) if sig.is_propositional else range(1, b.max_domain + 1)


def equiv_material_fo(f: Node, g: Node, b: Bounds = Bounds()) -> Verdict:
    """Compare two sentences over every structure with domain 1..max_domain."""
    _refuse_strict(f, g)
    sig = comparison_signature(f, g)
    sizes = _domain_sizes(sig, b)
    for d in sizes:
        bits = structure_bit_count(sig, d)
        if bits > b.max_bits:
            raise CapExceeded(f"{bits} table bits at domain size {d} exceed the cap of {b.max_bits}")
    examined = 0
    by_domain: dict[int, int] = {}
    for d in sizes:
        by_domain[d] = 0
        for s in enumerate_structures(sig, d, b.max_bits):
            examined += 1
            by_domain[d] += 1
            x, y = eval_fo(f, s), eval_fo(g, s)
            if x != y:
                return Verdict(False, "material", False, examined, by_domain, tuple(range(1, d + 1)),
                               countermodel=s, values=(x, y), space="structures")
    return Verdict(True, "material", sig.is_propositional, examined, by_domain, tuple(sizes),
                   space="structures")


def count_models(sig: Signature, b: Bounds) -> int:
    total = 0
    for d in _domain_sizes(sig, b):
        n = 1 << structure_bit_count(sig, d)
        total += sum(math.comb(n, k) for k in range(1, b.max_worlds + 1))
    return total


def kripke_models(sig: Signature, domain_size: int, worlds: int, cap: int = DEFAULT_MAX_BITS) -> Iterator[KripkeModel]:
    """All models with exactly ``worlds`` distinct worlds, in canonical order."""
    structures = list(enumerate_structures(sig, domain_size, cap))
    for combo in itertools.combinations(structures, worlds):
        yield KripkeModel(combo)


def equiv_strict(f: Node, g: Node, b: Bounds = Bounds(), mode: str = ASSERTIONAL) -> Verdict:
    """Compare two sentences over Kripke models within ``b``.

    ``assertional`` compares truth at every world (truth as a law);
    ``pointwise`` compares truth world by world.
    """
    if mode not in (ASSERTIONAL, POINTWISE):
        raise ValueError(f"unknown mode {mode!r}")
    sig = comparison_signature(f, g)
    if len(sig.prop_atoms) > b.max_atoms:
        raise CapExceeded(f"{len(sig.prop_atoms)} atoms exceed the cap of {b.max_atoms}")
    sizes = _domain_sizes(sig, b)
    for d in sizes:
        bits = structure_bit_count(sig, d)
        if bits > b.max_bits:
            raise CapExceeded(f"{bits} table bits at domain size {d} exceed the cap of {b.max_bits}")
    planned = count_models(sig, b)
    if planned > b.max_models:
        raise CapExceeded(f"{planned} Kripke models exceed the cap of {b.max_models}; lower the bounds")

    exact = sig.is_propositional and b.max_worlds >= 1 << len(sig.prop_atoms)
    examined = 0
    by_domain: dict[int, int] = {}
    for d in sizes:
        by_domain[d] = 0
        structures = list(enumerate_structures(sig, d, b.max_bits))
        for k in range(1, min(b.max_worlds, len(structures)) + 1):
            for combo in itertools.combinations(structures, k):
                m = KripkeModel(combo)
                examined += 1
                by_domain[d] += 1
                hit = _separate(f, g, m, mode)
                if hit is not None:
                    world, values = hit
                    return Verdict(False, "strict", False, examined, by_domain,
                                   tuple(range(1, d + 1)), b.max_worlds, mode,
                                   countermodel=m, world=world, values=values)
    return Verdict(True, "strict", exact, examined, by_domain, tuple(sizes), b.max_worlds, mode)


def _separate(f: Node, g: Node, m: KripkeModel, mode: str):
    if mode == ASSERTIONAL:
        x, y = eval_strict_assert(f, m), eval_strict_assert(g, m)
        return None if x == y else (None, (x, y))
    for i in range(len(m.worlds)):
        x, y = eval_strict_at(f, m, i), eval_strict_at(g, m, i)
        if x != y:
            return i, (x, y)
    return None


def replay(f: Node, g: Node, v: Verdict) -> tuple[bool, bool]:
    """Re-evaluate both formulas on ``v``'s countermodel."""
    cm = v.countermodel
    if cm is None:
        raise ValueError("verdict has no countermodel")
    if isinstance(cm, dict):
        return eval_prop(f, cm), eval_prop(g, cm)
    if isinstance(cm, Structure):
        return eval_fo(f, cm), eval_fo(g, cm)
    if v.world is not None:
        return eval_strict_at(f, cm, v.world), eval_strict_at(g, cm, v.world)
    return eval_strict_assert(f, cm), eval_strict_assert(g, cm)


def equiv_material(f: Node, g: Node, b: Bounds = Bounds()) -> Verdict:
    """Exact truth tables for propositional input, bounded search otherwise."""
    if is_propositional(f) and is_propositional(g):
        return equiv_material_prop(f, g, b.max_atoms)
    return equiv_material_fo(f, g, b)


# --- law survival ----------------------------------------------------------


@dataclass(frozen=True)
class LawReport:
    name: str
    left: Node
    right: Node
    classical: Verdict
    strict: Verdict

    @property
    def survives(self) -> bool:
        return self.classical.equivalent and self.strict.equivalent


def law_survival(name: str, f: Node, g: Node, b: Bounds = Bounds()) -> LawReport:
    """Check a classical law both as stated with ``->`` and read with ``=>``."""
    classical = equiv_material(erase_strict(f), erase_strict(g), b)
    strict = equiv_strict(f, g, b, ASSERTIONAL)
    return LawReport(name, f, g, classical, strict)


LAW_CATALOG: tuple[tuple[str, str, str], ...] = (
    ("cases", "(p | q) => r", "(p => r) & (q => r)"),
    ("cases-3", "(p | q | s) => r", "(p => r) & (q => r) & (s => r)"),
    ("conjunctive-antecedent-split", "(p & q) => r", "(p => r) | (q => r)"),
    ("biconditional-split", "p <=> q", "(p => q) & (q => p)"),
    ("contraposition", "p => q", "!q => !p"),
    ("fo-paradox", "(forall x. P(x)) => r", "exists x. (P(x) => r)"),
)


def run_catalog(b: Bounds = Bounds()) -> list[LawReport]:
    from .parser import parse_formula

    return [law_survival(name, parse_formula(lhs), parse_formula(rhs), b) for name, lhs, rhs in LAW_CATALOG]
