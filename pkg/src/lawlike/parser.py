"""Recursive-descent parser for the ASCII formula syntax.

Grammar, loosest binding first::

    formula    := iff
    iff        := imp { ("<->" | "<=>") imp }        left associative
    imp        := or [ ("->" | "=>") imp ]           right associative
    or         := and { "|" and }
    and        := unary { "&" unary }
    unary      := "!" unary | quantified | primary
    quantified := ("forall" | "exists") VAR "." formula
    primary    := IDENT | IDENT "(" VAR {"," VAR} ")" | "(" formula ")"

Lowercase identifiers are propositional atoms or individual variables,
uppercase identifiers are predicates. A quantifier's body extends as far
right as possible. ``A <=> B`` is sugar for ``(A => B) & (B => A)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ArityMismatch, FormulaSyntaxError
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
    well_formed,
)

KEYWORDS = {"forall", "exists"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<op><->|<=>|->|=>|[!&|().,])
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

IDENT = "identifier"
VAR = "variable"
EOF = "end of input"
_UNARY_START = frozenset({"!", "(", "forall", "exists", IDENT})


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "ident", "kw" or "eof"
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return EOF if self.kind == "eof" else repr(self.text)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        value = m.group()
        if kind == "ws":
            newlines = value.count("\n")
            if newlines:
                line += newlines
                line_start = m.start() + value.rindex("\n") + 1
        else:
            if kind == "ident" and value in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, value, line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass(frozen=True)
class ParseResult:
    formula: Node
    inferred_signature: Signature
    warnings: list[str] = field(default_factory=list)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.bound: list[str] = []
        self.atoms: dict[str, Token] = {}
        self.free: dict[str, Token] = {}
        self.arities: dict[str, int] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, expected=frozenset(), tok: Token | None = None):
        tok = tok or self.tok
        return FormulaSyntaxError(message, tok.line, tok.column, frozenset(expected))

    def unexpected(self, expected):
        return self.error(f"unexpected {self.tok.describe()}", expected)

    def accept(self, *ops: str) -> Token | None:
        tok = self.tok
        if tok.kind in ("op", "kw") and tok.text in ops:
            self.i += 1
            return tok
        return None

    def expect(self, op: str) -> Token:
        tok = self.accept(op)
        if tok is None:
            raise self.unexpected({op})
        return tok

    # grammar rules

    def parse(self) -> Node:
        f = self.iff()
        if self.tok.kind != "eof":
            raise self.unexpected({EOF, "<->", "<=>", "->", "=>", "|", "&"})
        return f

    def iff(self) -> Node:
        left = self.imp()
        while True:
            op = self.accept("<->", "<=>")
            if op is None:
                return left
            right = self.imp()
            if op.text == "<->":
                left = Iff(left, right)
            else:
                left = And(StrictImp(left, right), StrictImp(right, left))

    def imp(self) -> Node:
        left = self.or_()
        op = self.accept("->", "=>")
        if op is None:
            return left
        right = self.imp()
        return MaterialImp(left, right) if op.text == "->" else StrictImp(left, right)

    def or_(self) -> Node:
        left = self.and_()
        while self.accept("|"):
            left = Or(left, self.and_())
        return left

    def and_(self) -> Node:
        left = self.unary()
        while self.accept("&"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Node:
        if self.accept("!"):
            return Not(self.unary())
        tok = self.tok
        if tok.kind == "kw":
            self.i += 1
            var = self.variable()
            self.expect(".")
            self.bound.append(var.text)
            try:
                body = self.iff()
            finally:
                self.bound.pop()
            return Forall(var.text, body) if tok.text == "forall" else Exists(var.text, body)
        return self.primary()

    def variable(self) -> Token:
        tok = self.tok
        if tok.kind != "ident" or not tok.text[0].islower():
            raise self.unexpected({VAR})
        self.i += 1
        return tok

    def primary(self) -> Node:
        tok = self.tok
        if self.accept("("):
            f = self.iff()
            self.expect(")")
            return f
        if tok.kind != "ident":
            raise self.unexpected(_UNARY_START)
        self.i += 1
        if tok.text[0].isupper():
            return self.predicate(tok)
        if self.tok.kind == "op" and self.tok.text == "(":
            raise self.error(
                f"predicate names start uppercase; {tok.text!r} cannot take arguments"
            )
        if tok.text in self.bound:
            raise self.error(f"bound variable {tok.text!r} used as a proposition", tok=tok)
        if tok.text in self.free:
            raise self.error(
                f"{tok.text!r} is used both as a free variable and as a proposition", tok=tok
            )
        self.atoms.setdefault(tok.text, tok)
        return PropAtom(tok.text)

    def predicate(self, name: Token) -> Node:
        if not (self.tok.kind == "op" and self.tok.text == "("):
            raise self.error(
                f"predicate {name.text} needs arguments (use a lowercase atom for a 0-ary relation)",
                {"("},
            )
        self.i += 1
        args = [self.variable()]
        while self.accept(","):
            args.append(self.variable())
        self.expect(")")
        for arg in args:
            if arg.text not in self.bound:
                if arg.text in self.atoms:
                    raise self.error(
                        f"{arg.text!r} is used both as a proposition and as a free variable",
                        tok=arg,
                    )
                self.free.setdefault(arg.text, arg)
        seen = self.arities.setdefault(name.text, len(args))
        if seen != len(args):
            raise ArityMismatch(
                f"line {name.line}, column {name.column}: predicate {name.text} "
                f"used with {len(args)} argument(s), first used with {seen}"
            )
        return PredAtom(name.text, tuple(a.text for a in args))


def parse(text: str) -> ParseResult:
    """Parse ``text`` into a formula and the signature it uses."""
    p = _Parser(text)
    formula = p.parse()
    sig = Signature(frozenset(p.atoms), p.arities)
    return ParseResult(formula, sig, well_formed(formula, sig))


def parse_formula(text: str) -> Node:
    return parse(text).formula
