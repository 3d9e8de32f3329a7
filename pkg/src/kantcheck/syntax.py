"""Concrete syntax for mechanisms, literals and queries.

Grammar, precedence from low to high::

    formula   := or_expr ('->' formula)?          (queries only, right-assoc)
    or_expr   := and_expr ('|' and_expr)*
    and_expr  := unary ('&' unary)*
    unary     := '!' unary | '(' formula ')' | predicate | ident
    predicate := 'Goal' '(' lit ')'
               | 'Affects' '(' lit ',' patient ',' ('+'|'-') ')'
               | 'Causes' '(' lit ',' formula ')'
               | ('Means1' | 'Means2' | 'End') '(' patient ')'
    lit       := '!'? ident
    patient   := ident | '"' chars '"'

Mechanisms use the same grammar without ``->`` and predicates.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from kantcheck.expr import (
    Affects,
    And,
    BoolExpr,
    Causes,
    End,
    Formula,
    Goal,
    Implies,
    Literal,
    Means,
    Not,
    Or,
    Var,
    is_counterfactual_safe,
)

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
MAX_DEPTH = 200

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<op>->|[!&|(),+\-])
    """,
    re.VERBOSE,
)

_ARITY = {"Goal": 1, "Affects": 3, "Causes": 2, "Means1": 1, "Means2": 1, "End": 1}


class ParseError(ValueError):
    """Syntax error at a character offset of the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # ident, string, op, eof
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, queries: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.queries = queries
        self.depth = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def error(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {found}", tok.pos)

    def finish(self, node):
        if self.tok.kind != "eof":
            raise self.error("unexpected token")
        return node

    def formula(self) -> Formula:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", self.tok.pos)
        left = self.or_expr()
        if self.queries and self.at("->"):
            self.advance()
            left = Implies(left, self.formula())
        self.depth -= 1
        return left

    def or_expr(self) -> Formula:
        node = self.and_expr()
        while self.at("|"):
            self.advance()
            node = Or(node, self.and_expr())
        return node

    def and_expr(self) -> Formula:
        node = self.unary()
        while self.at("&"):
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        tok = self.tok
        if self.at("!"):
            self.advance()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise ParseError("expression nested too deeply", tok.pos)
            node = Not(self.unary())
            self.depth -= 1
            return node
        if self.at("("):
            self.advance()
            node = self.formula()
            self.expect(")")
            return node
        if tok.kind == "ident":
            self.advance()
            if self.queries and self.at("("):
                return self.predicate(tok)
            return Var(tok.text)
        raise self.error("expected a variable, '!' or '('")

    def predicate(self, name_tok: _Token) -> Formula:
        name = name_tok.text
        if name not in _ARITY:
            raise ParseError(f"unknown predicate {name!r}", name_tok.pos)
        arity = _ARITY[name]
        self.expect("(")
        args = []
        for k in range(arity):
            if self.at(")"):
                raise ParseError(
                    f"{name} expects {arity} argument(s), got {k}", self.tok.pos
                )
            if k:
                self.expect(",")
            args.append(self.argument(name, k))
        if self.at(","):
            raise ParseError(
                f"{name} expects {arity} argument(s), got more", self.tok.pos
            )
        self.expect(")")
        if name == "Goal":
            return Goal(args[0])
        if name == "Affects":
            return Affects(*args)
        if name == "Causes":
            return Causes(*args)
        if name == "End":
            return End(args[0])
        return Means(int(name[-1]), args[0])

    def argument(self, name: str, k: int):
        if k == 0 and name in ("Goal", "Affects", "Causes"):
            return self.literal()
        if name == "Affects" and k == 2:
            if self.at("+") or self.at("-"):
                return self.advance().text
            raise self.error("expected '+' or '-'")
        if name == "Causes":
            start = self.tok
            effect = self.formula()
            if not is_counterfactual_safe(effect):
                raise ParseError(
                    "Causes effect may not contain Means, End or Causes", start.pos
                )
            return effect
        return self.patient()

    def literal(self) -> Literal:
        positive = True
        if self.at("!"):
            self.advance()
            positive = False
        if self.tok.kind != "ident":
            raise self.error("expected a variable name")
        return Literal(self.advance().text, positive)

    def patient(self) -> str:
        tok = self.tok
        if tok.kind == "ident":
            return self.advance().text
        if tok.kind == "string":
            self.advance()
            try:
                value = json.loads(tok.text)
            except ValueError:
                raise ParseError("malformed string literal", tok.pos) from None
            if not value:
                raise ParseError("empty patient name", tok.pos)
            return value
        raise self.error("expected a patient name")


def parse_mechanism(text: str) -> BoolExpr:
    """Parse a structural equation right-hand side.

    >>> parse_mechanism("press & !bulbBroken")
    And(left=Var(name='press'), right=Not(operand=Var(name='bulbBroken')))
    """
    p = _Parser(text, queries=False)
    return p.finish(p.formula())


def parse_query(text: str) -> Formula:
    """Parse a query formula (mechanism syntax plus ``->`` and predicates)."""
    p = _Parser(text, queries=True)
    return p.finish(p.formula())


def parse_literal(text: str) -> Literal:
    """Parse ``name`` or ``!name``."""
    p = _Parser(text, queries=False)
    return p.finish(p.literal())


def render_patient(name: str) -> str:
    if IDENT_RE.match(name):
        return name
    return json.dumps(name, ensure_ascii=False)


_PREC = {Implies: 1, Or: 2, And: 3}
_SEP = {Implies: " -> ", Or: " | ", And: " & "}


def _prec(node) -> int:
    return _PREC.get(type(node), 4)


def _render(node, min_prec: int) -> str:
    kind = type(node)
    if kind in _PREC:
        prec = _PREC[kind]
        if kind is Implies:
            # right-associative
            text = _render(node.left, prec + 1) + _SEP[kind] + _render(node.right, prec)
        else:
            text = _render(node.left, prec) + _SEP[kind] + _render(node.right, prec + 1)
        return f"({text})" if prec < min_prec else text
    if kind is Var:
        return node.name
    if kind is Not:
        return "!" + _render(node.operand, 4)
    if kind is Literal:
        return str(node)
    if kind is Goal:
        return f"Goal({node.literal})"
    if kind is Affects:
        return f"Affects({node.literal}, {render_patient(node.patient)}, {node.sign})"
    if kind is Causes:
        return f"Causes({node.cause}, {_render(node.effect, 0)})"
    if kind is Means:
        return f"Means{node.reading}({render_patient(node.patient)})"
    if kind is End:
        return f"End({render_patient(node.patient)})"
    raise TypeError(f"cannot render {node!r}")


def render(node) -> str:
    """Canonical ASCII text for an expression, formula or literal.

    The output parses back to an equal tree; nothing is simplified.
    """
    return _render(node, 0)
