"""Formula trees, signatures, well-formedness and rendering.

Every node is an immutable dataclass, so trees compare and hash
structurally. Two conditionals exist side by side: ``MaterialImp``
(``->``, truth-functional at one world) and ``StrictImp`` (``=>``, holds
when the material conditional holds at every world).
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from typing import Union

from .errors import ArityMismatch, UndeclaredAtom, WellFormednessError


@dataclass(frozen=True)
class Signature:
    prop_atoms: frozenset[str] = frozenset()
    predicates: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prop_atoms", frozenset(self.prop_atoms))
        preds = self.predicates
        if isinstance(preds, Mapping):
            preds = preds.items()
        preds = tuple(sorted((str(n), int(a)) for n, a in preds))
        names = [n for n, _ in preds]
        if len(set(names)) != len(names):
            raise ArityMismatch(f"predicate declared twice: {names}")
        for name, arity in preds:
            if arity < 1:
                raise ArityMismatch(f"predicate {name} must have positive arity, got {arity}")
            if not name[:1].isupper():
                raise WellFormednessError(f"predicate name {name!r} must start uppercase")
        for atom in self.prop_atoms:
            if not atom[:1].islower():
                raise WellFormednessError(f"atom name {atom!r} must start lowercase")
        object.__setattr__(self, "predicates", preds)

    @property
    def arities(self) -> dict[str, int]:
        return dict(self.predicates)

    @property
    def is_propositional(self) -> bool:
        return not self.predicates

    def union(self, other: Signature) -> Signature:
        arities = self.arities
        for name, arity in other.predicates:
            if arities.setdefault(name, arity) != arity:
                raise ArityMismatch(
                    f"predicate {name} used with arity {arities[name]} and {arity}"
                )
        return Signature(self.prop_atoms | other.prop_atoms, arities)


# --- formula nodes ---------------------------------------------------------


class Node:
    """Marker base for every tree node, classical and world-indexed."""

    __slots__ = ()


@dataclass(frozen=True)
class PropAtom(Node):
    name: str

    def atom_text(self) -> str:
        return self.name


@dataclass(frozen=True)
class PredAtom(Node):
    name: str
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def atom_text(self) -> str:
        return f"{self.name}({', '.join(self.args)})"


@dataclass(frozen=True)
class Not(Node):
    child: Node


@dataclass(frozen=True)
class Binary(Node):
    left: Node
    right: Node

    symbol = "?"


@dataclass(frozen=True)
class And(Binary):
    symbol = "&"


@dataclass(frozen=True)
class Or(Binary):
    symbol = "|"


@dataclass(frozen=True)
class MaterialImp(Binary):
    symbol = "->"


@dataclass(frozen=True)
class StrictImp(Binary):
    symbol = "=>"


@dataclass(frozen=True)
class Iff(Binary):
    symbol = "<->"


@dataclass(frozen=True)
class Quantifier(Node):
    var: str
    body: Node

    keyword = "?"


@dataclass(frozen=True)
class Forall(Quantifier):
    keyword = "forall"


@dataclass(frozen=True)
class Exists(Quantifier):
    keyword = "exists"


Formula = Union[PropAtom, PredAtom, Not, And, Or, MaterialImp, StrictImp, Iff, Forall, Exists]

ATOMS = (PropAtom, PredAtom)


def children(f: Node) -> tuple[Node, ...]:
    if isinstance(f, Not):
        return (f.child,)
    if isinstance(f, Binary):
        return (f.left, f.right)
    if isinstance(f, Quantifier):
        return (f.body,)
    return ()


def subformulas(f: Node) -> Iterator[Node]:
    """Pre-order walk over ``f`` and all its descendants."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def rebuild(f: Node, *kids: Node) -> Node:
    """Return a node of ``f``'s kind with new children."""
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, Binary):
        return type(f)(kids[0], kids[1])
    if isinstance(f, Quantifier):
        return type(f)(f.var, kids[0])
    return f


# --- queries ---------------------------------------------------------------


def free_vars(f: Node) -> frozenset[str]:
    """Individual variables with at least one unbound occurrence in ``f``."""
    if isinstance(f, PredAtom):
        return frozenset(f.args)
    if isinstance(f, Quantifier):
        return free_vars(f.body) - {f.var}
    out: frozenset[str] = frozenset()
    for kid in children(f):
        out |= free_vars(kid)
    return out


def is_sentence(f: Node) -> bool:
    return not free_vars(f)


def has_strict(f: Node) -> bool:
    return any(isinstance(n, StrictImp) for n in subformulas(f))


def has_quantifier(f: Node) -> bool:
    return any(isinstance(n, Quantifier) for n in subformulas(f))


def is_propositional(f: Node) -> bool:
    """True when ``f`` uses neither predicates nor quantifiers."""
    return not any(isinstance(n, (PredAtom, Quantifier)) for n in subformulas(f))


def signature_of(f: Node) -> Signature:
    """Collect the atoms and predicate arities used in ``f``."""
    atoms: set[str] = set()
    arities: dict[str, int] = {}
    for node in subformulas(f):
        if isinstance(node, PropAtom):
            atoms.add(node.name)
        elif isinstance(node, PredAtom):
            seen = arities.setdefault(node.name, len(node.args))
            if seen != len(node.args):
                raise ArityMismatch(
                    f"predicate {node.name} used with arity {seen} and {len(node.args)}",
                    node,
                )
    return Signature(atoms, arities)


def well_formed(f: Node, sig: Signature) -> list[str]:
    """Check ``f`` against ``sig``.

    Raises ``UndeclaredAtom`` or ``ArityMismatch`` naming the offending
    node. On success returns the (possibly empty) list of warnings; a
    quantifier that shadows an enclosing binding of the same variable is
    legal but reported.
    """
    arities = sig.arities
    warnings: list[str] = []

    def walk(node: Node, bound: tuple[str, ...]) -> None:
        if isinstance(node, PropAtom):
            if node.name not in sig.prop_atoms:
                raise UndeclaredAtom(f"undeclared propositional atom {node.name!r}", node)
        elif isinstance(node, PredAtom):
            if node.name not in arities:
                raise UndeclaredAtom(f"undeclared predicate {node.name!r}", node)
            if len(node.args) != arities[node.name]:
                raise ArityMismatch(
                    f"{node.atom_text()}: {node.name} has arity {arities[node.name]}, "
                    f"got {len(node.args)} argument(s)",
                    node,
                )
        elif isinstance(node, Quantifier):
            if node.var in bound:
                warnings.append(
                    f"quantifier '{node.keyword} {node.var}' shadows an enclosing binding of {node.var}"
                )
            walk(node.body, bound + (node.var,))
        else:
            if not isinstance(node, (Not, Binary)):
                raise WellFormednessError(f"not a formula node: {node!r}", node)
            for kid in children(node):
                walk(kid, bound)

    walk(f, ())
    return warnings


# --- transforms ------------------------------------------------------------


def erase_strict(f: Node) -> Node:
    """Replace every strict conditional by the material one."""
    if isinstance(f, StrictImp):
        return MaterialImp(erase_strict(f.left), erase_strict(f.right))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, *(erase_strict(k) for k in kids))


# --- rendering -------------------------------------------------------------


def _needs_parens(node: Node) -> bool:
    return isinstance(node, (Binary, Quantifier))


def render(f: Node) -> str:
    """ASCII surface text for ``f``; ``parse(render(f)) == f``.

    Operands of binary connectives are parenthesised whenever they are
    themselves binary or quantified, so the output never depends on the
    reader's knowledge of precedence beyond negation.
    """
    if isinstance(f, Not):
        inner = render(f.child)
        return f"!({inner})" if _needs_parens(f.child) else f"!{inner}"
    if isinstance(f, Binary):
        parts = []
        for side in (f.left, f.right):
            text = render(side)
            parts.append(f"({text})" if _needs_parens(side) else text)
        return f"{parts[0]} {f.symbol} {parts[1]}"
    if isinstance(f, Quantifier):
        body = render(f.body)
        if isinstance(f.body, Binary):
            body = f"({body})"
        return f"{f.keyword} {f.var}. {body}"
    return f.atom_text()
