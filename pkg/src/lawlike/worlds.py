"""World-indexed reading of conditionals.

Two independent routes to the meaning of a sentence over a set of
worlds:

* direct evaluation over a :class:`KripkeModel` (every world sees every
  world, one shared individual domain), where ``A => B`` holds iff
  ``A -> B`` holds at every world;
* syntactic lifting into a two-sorted first-order formula in which every
  atom carries a world index and every strict conditional introduces its
  own universal world quantifier. The lifted sentence is relativised to
  sort-guard predicates and evaluated classically over
  :func:`encode_model`.

The two must always agree; the test suite checks that they do.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from .errors import EvaluationError, FreeVariable, WorldNotInModel
from .formula import (
    And,
    Binary,
    Exists,
    Forall,
    Iff,
    MaterialImp,
    Node,
    Not,
    Or,
    PredAtom,
    PropAtom,
    Quantifier,
    Signature,
    StrictImp,
    children,
    free_vars,
    has_quantifier,
    has_strict,
    rebuild,
    signature_of,
    subformulas,
)
from .material import Structure, eval_fo, structure_from_valuation

WorldVar = str


# --- lifted formula nodes --------------------------------------------------


@dataclass(frozen=True)
class WorldAtom(Node):
    """Propositional atom ``name`` evaluated at world ``world``."""

    name: str
    world: WorldVar

    def atom_text(self) -> str:
        return f"{self.name}@{self.world}"


@dataclass(frozen=True)
class WorldPred(Node):
    name: str
    args: tuple[str, ...]
    world: WorldVar

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def atom_text(self) -> str:
        return f"{self.name}({', '.join(self.args)})@{self.world}"


@dataclass(frozen=True)
class WorldForall(Quantifier):
    """Universal quantifier over worlds."""

    keyword = "forall"


def world_free_vars(f: Node) -> frozenset[str]:
    if isinstance(f, (WorldAtom, WorldPred)):
        return frozenset({f.world})
    if isinstance(f, WorldForall):
        return world_free_vars(f.body) - {f.var}
    out: frozenset[str] = frozenset()
    for kid in children(f):
        out |= world_free_vars(kid)
    return out


def world_vars_bound(f: Node) -> list[str]:
    """World variables bound in ``f``, in pre-order."""
    return [n.var for n in subformulas(f) if isinstance(n, WorldForall)]


def check_lifted(f: Node, free_world: WorldVar | None = None) -> None:
    """Raise ``ValueError`` unless ``f`` satisfies the lifted-formula invariants."""
    individual_binders: set[str] = set()
    for node in subformulas(f):
        if isinstance(node, (StrictImp, PropAtom, PredAtom)):
            raise ValueError(f"lifted formula contains {type(node).__name__}")
        if isinstance(node, (Forall, Exists)):
            individual_binders.add(node.var)
    world_binders = world_vars_bound(f)
    if individual_binders & set(world_binders):
        raise ValueError("world and individual variables collide")
    allowed = {free_world} if free_world is not None else set()
    stray = world_free_vars(f) - allowed
    if stray:
        raise ValueError(f"unbound world variables: {sorted(stray)}")


# --- lifting ---------------------------------------------------------------


def _identifiers(f: Node) -> set[str]:
    names: set[str] = set()
    for node in subformulas(f):
        if isinstance(node, PropAtom):
            names.add(node.name)
        elif isinstance(node, PredAtom):
            names.update(node.args)
        elif isinstance(node, Quantifier):
            names.add(node.var)
    return names


def _fresh_names(avoid: set[str], start: int = 1) -> Iterator[str]:
    for n in itertools.count(start):
        name = f"u{n}"
        if name not in avoid:
            yield name


def lift(f: Node, w: WorldVar, fresh: Iterator[str] | None = None) -> Node:
    """Index every atom of ``f`` by world ``w``.

    Classical connectives and individual quantifiers commute with the
    translation. A strict conditional ``A => B`` becomes
    ``forall v. (A@v -> B@v)`` for a world variable ``v`` not used
    anywhere else; at the root, ``v`` is ``w`` itself. Fresh names are
    drawn from ``fresh`` when given.
    """
    if fresh is None:
        fresh = _fresh_names(_identifiers(f) | {w})

    def go(node: Node, world: WorldVar) -> Node:
        if isinstance(node, PropAtom):
            return WorldAtom(node.name, world)
        if isinstance(node, PredAtom):
            return WorldPred(node.name, node.args, world)
        if isinstance(node, StrictImp):
            v = next(fresh)
            return WorldForall(v, MaterialImp(go(node.left, v), go(node.right, v)))
        kids = children(node)
        if not kids:
            raise EvaluationError(f"cannot lift node {type(node).__name__}")
        return rebuild(node, *(go(k, world) for k in kids))

    if isinstance(f, StrictImp):
        # w does not occur in the result, so the root quantifier may bind it
        return WorldForall(w, MaterialImp(go(f.left, w), go(f.right, w)))
    return go(f, w)


def assert_closure(f: Node) -> Node:
    """``forall u. lift(f, u)``: ``f`` asserted to hold at every world.

    The closure variable is ``u`` when ``f`` has no strict conditional and
    ``u0`` otherwise, with nested strict conditionals numbered ``u1``,
    ``u2``, ... in pre-order. A closure that binds nothing is still
    emitted, except over a root strict conditional, whose own world
    quantifier already is the closure (``forall u. forall u. A`` would
    say the same thing twice).
    """
    avoid = _identifiers(f)
    if isinstance(f, StrictImp):
        top = "u" if "u" not in avoid else next(_fresh_names(avoid))
        return lift(f, top, _fresh_names(avoid | {top}))
    if has_strict(f):
        top = next(_fresh_names(avoid, 0))
    else:
        top = "u" if "u" not in avoid else next(_fresh_names(avoid))
    fresh = _fresh_names(avoid | {top})
    return WorldForall(top, lift(f, top, fresh))


# --- Kripke models ---------------------------------------------------------


@dataclass(frozen=True)
class KripkeModel:
    """Nonempty set of worlds over one shared domain.

    Duplicate worlds are dropped and the rest sorted by enumeration
    index, so two models with the same set of worlds are equal.
    """

    worlds: tuple[Structure, ...]

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds:
            raise ValueError("a Kripke model needs at least one world")
        first = worlds[0]
        for s in worlds:
            if s.domain_size != first.domain_size:
                raise ValueError("all worlds must share one domain size")
            if s.signature != first.signature:
                raise ValueError("all worlds must interpret the same signature")
        canonical = tuple(sorted(set(worlds), key=lambda s: s.index()))
        object.__setattr__(self, "worlds", canonical)

    @classmethod
    def from_valuations(cls, valuations: Iterable[dict]) -> KripkeModel:
        return cls(tuple(structure_from_valuation(v) for v in valuations))

    @property
    def domain_size(self) -> int:
        return self.worlds[0].domain_size

    @property
    def signature(self) -> Signature:
        return self.worlds[0].signature

    def __len__(self) -> int:
        return len(self.worlds)


def _world_list(m: KripkeModel | Iterable[Structure]) -> Sequence[Structure]:
    if isinstance(m, KripkeModel):
        return m.worlds
    worlds = tuple(m)
    if not worlds:
        raise ValueError("a Kripke model needs at least one world")
    return worlds


def _holds(f: Node, worlds: Sequence[Structure], w: Structure, env: dict[str, int]) -> bool:
    if isinstance(f, PropAtom):
        return w.value(f.name)
    if isinstance(f, PredAtom):
        return w.holds(f.name, tuple(env[a] for a in f.args))
    if isinstance(f, Not):
        return not _holds(f.child, worlds, w, env)
    if isinstance(f, And):
        return _holds(f.left, worlds, w, env) and _holds(f.right, worlds, w, env)
    if isinstance(f, Or):
        return _holds(f.left, worlds, w, env) or _holds(f.right, worlds, w, env)
    if isinstance(f, MaterialImp):
        return not _holds(f.left, worlds, w, env) or _holds(f.right, worlds, w, env)
    if isinstance(f, Iff):
        return _holds(f.left, worlds, w, env) == _holds(f.right, worlds, w, env)
    if isinstance(f, StrictImp):
        # the current world plays no role: every world is inspected
        return all(
            not _holds(f.left, worlds, v, env) or _holds(f.right, worlds, v, env)
            for v in worlds
        )
    if isinstance(f, Forall):
        return all(_holds(f.body, worlds, w, {**env, f.var: e}) for e in range(w.domain_size))
    if isinstance(f, Exists):
        return any(_holds(f.body, worlds, w, {**env, f.var: e}) for e in range(w.domain_size))
    raise EvaluationError(f"cannot evaluate node {type(f).__name__}")


def _require_sentence(f: Node) -> None:
    open_vars = free_vars(f)
    if open_vars:
        raise FreeVariable(f"formula has free variables: {sorted(open_vars)}")


def eval_strict_at(f: Node, m: KripkeModel | Iterable[Structure], w: int | Structure) -> bool:
    """Truth of ``f`` at world ``w`` (a ``Structure`` or an index into ``m``)."""
    _require_sentence(f)
    worlds = _world_list(m)
    if isinstance(w, int):
        if not 0 <= w < len(worlds):
            raise WorldNotInModel(f"world index {w} out of range for {len(worlds)} world(s)")
        world = worlds[w]
    else:
        if w not in worlds:
            raise WorldNotInModel("world is not part of the model")
        world = w
    return _holds(f, worlds, world, {})


def eval_strict_assert(f: Node, m: KripkeModel | Iterable[Structure]) -> bool:
    """True iff ``f`` holds at every world of ``m``."""
    _require_sentence(f)
    worlds = _world_list(m)
    return all(_holds(f, worlds, w, {}) for w in worlds)


# --- two-sorted encoding ---------------------------------------------------


@dataclass(frozen=True)
class EncodingNames:
    """Predicate names of the two-sorted signature derived from ``sig``."""

    individual: str
    world: str
    atoms: tuple[tuple[str, str], ...]
    predicates: tuple[tuple[str, str], ...]

    @classmethod
    def for_signature(cls, sig: Signature) -> EncodingNames:
        taken = {name for name, _ in sig.predicates}

        def claim(base: str) -> str:
            name = base
            while name in taken:
                name += "_"
            taken.add(name)
            return name

        individual = claim("Ind")
        world = claim("World")
        atoms = tuple((a, claim("At_" + a)) for a in sorted(sig.prop_atoms))
        return cls(individual, world, atoms, tuple((p, p) for p, _ in sig.predicates))

    def atom(self, name: str) -> str:
        return dict(self.atoms)[name]

    def predicate(self, name: str) -> str:
        return dict(self.predicates)[name]


def encoded_signature(sig: Signature) -> Signature:
    names = EncodingNames.for_signature(sig)
    preds = {names.individual: 1, names.world: 1}
    preds.update({encoded: 1 for _, encoded in names.atoms})
    preds.update({names.predicate(p): a + 1 for p, a in sig.predicates})
    return Signature(frozenset(), preds)


def encode_model(
    m: KripkeModel, sig: Signature | None = None, include_individuals: bool | None = None
) -> Structure:
    """Flatten ``m`` into one classical structure over :func:`encoded_signature`.

    Individuals come first (``0..d-1``), then one element per world. Each
    ``k``-ary predicate gains a trailing world argument and each atom
    becomes a unary predicate over worlds. Individuals are left out by
    default when ``sig`` has no predicates.
    """
    sig = sig if sig is not None else m.signature
    if include_individuals is None:
        include_individuals = bool(sig.predicates)
    names = EncodingNames.for_signature(sig)
    d = m.domain_size if include_individuals else 0
    world_elems = [d + j for j in range(len(m.worlds))]
    tables: dict[str, set] = {
        names.individual: {(i,) for i in range(d)},
        names.world: {(e,) for e in world_elems},
    }
    for atom, encoded in names.atoms:
        tables[encoded] = {(e,) for e, w in zip(world_elems, m.worlds) if w.value(atom)}
    for pred, _ in sig.predicates:
        rows = set()
        for e, w in zip(world_elems, m.worlds):
            rows.update(row + (e,) for row in w.table(pred))
        tables[names.predicate(pred)] = rows
    return Structure.build(encoded_signature(sig), d + len(m.worlds), {}, tables)


def relativize(f: Node, sig: Signature) -> Node:
    """Turn a lifted formula into a one-sorted one guarded by sort predicates."""
    names = EncodingNames.for_signature(sig)

    def go(node: Node) -> Node:
        if isinstance(node, WorldAtom):
            return PredAtom(names.atom(node.name), (node.world,))
        if isinstance(node, WorldPred):
            return PredAtom(names.predicate(node.name), node.args + (node.world,))
        if isinstance(node, WorldForall):
            return Forall(node.var, MaterialImp(PredAtom(names.world, (node.var,)), go(node.body)))
        if isinstance(node, Forall):
            return Forall(node.var, MaterialImp(PredAtom(names.individual, (node.var,)), go(node.body)))
        if isinstance(node, Exists):
            return Exists(node.var, And(PredAtom(names.individual, (node.var,)), go(node.body)))
        if isinstance(node, (Not, Binary)):
            return rebuild(node, *(go(k) for k in children(node)))
        raise EvaluationError(f"not a lifted formula node: {type(node).__name__}")

    return go(f)


def eval_via_encoding(f: Node, m: KripkeModel) -> bool:
    """Assertional truth of ``f`` computed through lifting and the encoding."""
    _require_sentence(f)
    sig = m.signature.union(signature_of(f))
    include = bool(sig.predicates) or has_quantifier(f)
    return eval_fo(relativize(assert_closure(f), sig), encode_model(m, sig, include))
