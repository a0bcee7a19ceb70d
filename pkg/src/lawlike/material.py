"""Classical evaluation at a single world, and exhaustive world enumeration.

A propositional world is a ``Valuation`` (a plain ``dict`` from atom name
to bool). A first-order world is a ``Structure``: a nonempty domain
``0..domain_size-1``, values for the propositional atoms and one relation
table per predicate.

Enumeration order is a binary counter over a fixed list of bit
positions: propositional atoms by name, then each predicate (by name)
with its argument tuples in lexicographic order. The first position is
the least significant bit, so for atoms ``{p, q}`` the sequence is
``{p:F,q:F}, {p:T,q:F}, {p:F,q:T}, {p:T,q:T}``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .errors import CapExceeded, EvaluationError, FreeVariable, UnsupportedConnective
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
    free_vars,
    is_propositional,
)

Valuation = dict[str, bool]

DEFAULT_MAX_ATOMS = 16
DEFAULT_MAX_BITS = 24


@dataclass(frozen=True)
class Structure:
    """One classical world over a finite domain.

    ``prop_values`` and ``tables`` are stored as sorted tuples so that
    structures hash and compare by content; build instances with
    :meth:`build`.
    """

    domain_size: int
    prop_values: tuple[tuple[str, bool], ...] = ()
    tables: tuple[tuple[str, int, frozenset[tuple[int, ...]]], ...] = ()
    _props: dict = field(default=None, compare=False, repr=False, hash=False)
    _rels: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.domain_size < 1:
            raise ValueError("domain_size must be at least 1")
        for name, arity, rows in self.tables:
            for row in rows:
                if len(row) != arity or not all(0 <= e < self.domain_size for e in row):
                    raise ValueError(f"bad tuple {row} for {name}/{arity} over domain {self.domain_size}")
        object.__setattr__(self, "_props", dict(self.prop_values))
        object.__setattr__(self, "_rels", {name: rows for name, _, rows in self.tables})

    @classmethod
    def build(
        cls,
        sig: Signature,
        domain_size: int = 1,
        prop_values: Mapping[str, bool] | None = None,
        tables: Mapping[str, Iterable[Iterable[int]]] | None = None,
    ) -> Structure:
        """Structure over ``sig``; atoms default to false, tables to empty."""
        prop_values = dict(prop_values or {})
        tables = dict(tables or {})
        unknown = (set(prop_values) - sig.prop_atoms) | (set(tables) - set(sig.arities))
        if unknown:
            raise ValueError(f"names not in signature: {sorted(unknown)}")
        props = tuple((a, bool(prop_values.get(a, False))) for a in sorted(sig.prop_atoms))
        rels = tuple(
            (name, arity, frozenset(tuple(row) for row in tables.get(name, ())))
            for name, arity in sig.predicates
        )
        return cls(domain_size, props, rels)

    @property
    def signature(self) -> Signature:
        return Signature(frozenset(self._props), {n: a for n, a, _ in self.tables})

    def value(self, atom: str) -> bool:
        try:
            return self._props[atom]
        except KeyError:
            raise EvaluationError(f"atom {atom!r} has no value in this world") from None

    def holds(self, pred: str, args: tuple[int, ...]) -> bool:
        try:
            return args in self._rels[pred]
        except KeyError:
            raise EvaluationError(f"predicate {pred!r} has no table in this world") from None

    def true_atoms(self) -> list[str]:
        return [a for a, v in self.prop_values if v]

    def table(self, pred: str) -> list[tuple[int, ...]]:
        return sorted(self._rels[pred])

    def bits(self) -> tuple[bool, ...]:
        """Truth value at every bit position, in enumeration order."""
        out = [v for _, v in self.prop_values]
        for _, arity, rows in self.tables:
            out.extend(t in rows for t in itertools.product(range(self.domain_size), repeat=arity))
        return tuple(out)

    def index(self) -> int:
        """Position of this structure in :func:`enumerate_structures`."""
        return sum(1 << i for i, b in enumerate(self.bits()) if b)


def structure_from_valuation(v: Mapping[str, bool]) -> Structure:
    return Structure.build(Signature(frozenset(v)), 1, v)


# --- evaluation ------------------------------------------------------------


def eval_prop(f: Node, v: Mapping[str, bool]) -> bool:
    """Truth value of a propositional formula under ``v``."""
    if isinstance(f, PropAtom):
        try:
            return bool(v[f.name])
        except KeyError:
            raise EvaluationError(f"atom {f.name!r} is not assigned") from None
    if isinstance(f, Not):
        return not eval_prop(f.child, v)
    if isinstance(f, And):
        return eval_prop(f.left, v) and eval_prop(f.right, v)
    if isinstance(f, Or):
        return eval_prop(f.left, v) or eval_prop(f.right, v)
    if isinstance(f, MaterialImp):
        return (not eval_prop(f.left, v)) or eval_prop(f.right, v)
    if isinstance(f, Iff):
        return eval_prop(f.left, v) == eval_prop(f.right, v)
    if isinstance(f, StrictImp):
        raise UnsupportedConnective("'=>' has no single-world meaning; evaluate it over a Kripke model")
    raise EvaluationError(f"not a propositional formula: {type(f).__name__}")


def eval_fo(f: Node, s: Structure) -> bool:
    """Tarskian truth of the sentence ``f`` in ``s``."""
    open_vars = free_vars(f)
    if open_vars:
        raise FreeVariable(f"formula has free variables: {sorted(open_vars)}")
    return _eval(f, s, {})


def _eval(f: Node, s: Structure, env: dict[str, int]) -> bool:
    if isinstance(f, PropAtom):
        return s.value(f.name)
    if isinstance(f, PredAtom):
        return s.holds(f.name, tuple(env[a] for a in f.args))
    if isinstance(f, Not):
        return not _eval(f.child, s, env)
    if isinstance(f, And):
        return _eval(f.left, s, env) and _eval(f.right, s, env)
    if isinstance(f, Or):
        return _eval(f.left, s, env) or _eval(f.right, s, env)
    if isinstance(f, MaterialImp):
        return (not _eval(f.left, s, env)) or _eval(f.right, s, env)
    if isinstance(f, Iff):
        return _eval(f.left, s, env) == _eval(f.right, s, env)
    if isinstance(f, (Forall, Exists)):
        quant = all if isinstance(f, Forall) else any
        return quant(_eval(f.body, s, {**env, f.var: e}) for e in range(s.domain_size))
    if isinstance(f, StrictImp):
        raise UnsupportedConnective("'=>' has no single-world meaning; evaluate it over a Kripke model")
    raise EvaluationError(f"cannot evaluate node {type(f).__name__}")


def evaluate(f: Node, world: Mapping[str, bool] | Structure) -> bool:
    """Dispatch to :func:`eval_prop` or :func:`eval_fo` by world type."""
    if isinstance(world, Structure):
        return eval_fo(f, world)
    if not is_propositional(f):
        raise EvaluationError("first-order formula needs a Structure, not a valuation")
    return eval_prop(f, world)


# --- enumeration -----------------------------------------------------------


def enumerate_valuations(sig: Signature, cap: int = DEFAULT_MAX_ATOMS) -> Iterator[Valuation]:
    atoms = sorted(sig.prop_atoms)
    if len(atoms) > cap:
        raise CapExceeded(f"{len(atoms)} atoms exceed the cap of {cap}")
    for n in range(1 << len(atoms)):
        yield {a: bool(n >> i & 1) for i, a in enumerate(atoms)}


def structure_bit_count(sig: Signature, domain_size: int) -> int:
    return len(sig.prop_atoms) + sum(domain_size**arity for _, arity in sig.predicates)


def enumerate_structures(
    sig: Signature, domain_size: int, cap: int = DEFAULT_MAX_BITS
) -> Iterator[Structure]:
    if domain_size < 1:
        raise ValueError("domain_size must be at least 1")
    bits = structure_bit_count(sig, domain_size)
    if bits > cap:
        raise CapExceeded(
            f"{bits} table bits at domain size {domain_size} exceed the cap of {cap}"
        )
    atoms = sorted(sig.prop_atoms)
    rows = [
        (name, arity, list(itertools.product(range(domain_size), repeat=arity)))
        for name, arity in sig.predicates
    ]
    for n in range(1 << bits):
        props = tuple((a, bool(n >> i & 1)) for i, a in enumerate(atoms))
        pos = len(atoms)
        tables = []
        for name, arity, candidates in rows:
            tables.append(
                (name, arity, frozenset(t for j, t in enumerate(candidates) if n >> (pos + j) & 1))
            )
            pos += len(candidates)
        yield Structure(domain_size, props, tuple(tables))
