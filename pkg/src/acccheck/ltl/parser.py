"""Recursive-descent parsers for LTL formulas and atomic predicates.

Formula grammar, loosest to tightest binding::

    formula := or ("->" formula)?          # right associative
    or      := and ("|" and)*
    and     := until ("&" until)*
    until   := unary (("U" | "R") until)?   # right associative
    unary   := ("!" | "X" | "F" | "G") unary | "true" | "false" | ident | "(" formula ")"

Predicate grammar::

    predicate := ident "=" expr cmp expr         cmp in < <= > >= == (a lone = also means ==)
    expr      := term (("+" | "-") term)*
    term      := factor (("*" | "/") factor)*
    factor    := "-" factor | number | ident | "abs" "(" expr ")" | "(" expr ")"
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from acccheck.ltl.formula import (
    FALSE, TRUE, And, Atom, Eventually, Formula, Globally, Implies, Next, Not, Or, Release, Until,
)
from acccheck.ltl.predicate import Abs, AtomPredicate, BinOp, Col, Expr, Neg, Num

KEYWORDS = frozenset({"X", "F", "G", "U", "R", "true", "false"})


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int, expected: Iterable[str] = ()):
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at line {self.line}, column {self.column}"
        if self.expected:
            detail += f"; expected one of: {', '.join(self.expected)}"
        super().__init__(detail)


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "ident", "num", "eof"
    text: str
    pos: int


_FORMULA_TOKEN = re.compile(r"\s*(?:(->|[!&|()])|([A-Za-z_][A-Za-z0-9_]*))")
_PRED_TOKEN = re.compile(
    r"\s*(?:(<=|>=|==|[<>=+\-*/()])|((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|([A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str, pattern: re.Pattern, groups: tuple[str, ...]) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = pattern.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        for kind, value in zip(groups, m.groups()):
            if value is not None:
                tokens.append(Token(kind, value, m.start(m.lastindex)))
                break
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Cursor:
    def __init__(self, text: str, tokens: list[Token]):
        self.text = text
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text in texts

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail([text])
        return self.advance()

    def fail(self, expected: Iterable[str]):
        tok = self.tok
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {what}", self.text, tok.pos, expected)


_UNARY = {"!": Not, "X": Next, "F": Eventually, "G": Globally}
_PRIMARY_START = ["!", "X", "F", "G", "(", "true", "false", "<identifier>"]


def parse_formula(text: str) -> Formula:
    cur = _Cursor(text, _tokenize(text, _FORMULA_TOKEN, ("op", "ident")))
    f = _implies(cur)
    if cur.tok.kind != "eof":
        cur.fail(["->", "|", "&", "U", "R", "<end of input>"])
    return f


def _implies(cur: _Cursor) -> Formula:
    left = _or(cur)
    if cur.at("->"):
        cur.advance()
        return Implies(left, _implies(cur))
    return left


def _or(cur: _Cursor) -> Formula:
    f = _and(cur)
    while cur.at("|"):
        cur.advance()
        f = Or(f, _and(cur))
    return f


def _and(cur: _Cursor) -> Formula:
    f = _until(cur)
    while cur.at("&"):
        cur.advance()
        f = And(f, _until(cur))
    return f


def _until(cur: _Cursor) -> Formula:
    left = _unary(cur)
    if cur.tok.kind == "ident" and cur.tok.text in ("U", "R"):
        op = cur.advance().text
        right = _until(cur)
        return Until(left, right) if op == "U" else Release(left, right)
    return left


def _unary(cur: _Cursor) -> Formula:
    tok = cur.tok
    if tok.text in _UNARY and tok.kind in ("op", "ident"):
        cur.advance()
        return _UNARY[tok.text](_unary(cur))
    if cur.at("("):
        cur.advance()
        f = _implies(cur)
        cur.expect(")")
        return f
    if tok.kind == "ident":
        if tok.text == "true":
            cur.advance()
            return TRUE
        if tok.text == "false":
            cur.advance()
            return FALSE
        if tok.text not in KEYWORDS:
            cur.advance()
            return Atom(tok.text)
    cur.fail(_PRIMARY_START)


def parse_predicate(text: str) -> AtomPredicate:
    """Parse ``name = <expr> <cmp> <expr>`` into an :class:`AtomPredicate`."""
    cur = _Cursor(text, _tokenize(text, _PRED_TOKEN, ("op", "num", "ident")))
    if cur.tok.kind != "ident":
        cur.fail(["<identifier>"])
    name = cur.advance().text
    if name in KEYWORDS or name == "abs":
        raise ParseError(f"reserved word {name!r} cannot name a predicate", text, cur.tokens[0].pos)
    cur.expect("=")
    left = _expr(cur)
    if not cur.at("<", "<=", ">", ">=", "==", "="):
        cur.fail(["<", "<=", ">", ">=", "==", "=", "+", "-", "*", "/"])
    op = cur.advance().text
    right = _expr(cur)
    if cur.tok.kind != "eof":
        cur.fail(["+", "-", "*", "/", "<end of input>"])
    return AtomPredicate(name, left, op, right)


def parse_expr(text: str) -> Expr:
    cur = _Cursor(text, _tokenize(text, _PRED_TOKEN, ("op", "num", "ident")))
    e = _expr(cur)
    if cur.tok.kind != "eof":
        cur.fail(["+", "-", "*", "/", "<end of input>"])
    return e


def _expr(cur: _Cursor) -> Expr:
    e = _term(cur)
    while cur.at("+", "-"):
        op = cur.advance().text
        e = BinOp(op, e, _term(cur))
    return e


def _term(cur: _Cursor) -> Expr:
    e = _factor(cur)
    while cur.at("*", "/"):
        op_tok = cur.advance()
        right = _factor(cur)
        if op_tok.text == "/" and _literal_zero(right):
            raise ParseError("division by literal zero", cur.text, op_tok.pos)
        e = BinOp(op_tok.text, e, right)
    return e


def _literal_zero(e: Expr) -> bool:
    while isinstance(e, Neg):
        e = e.operand
    return isinstance(e, Num) and e.value == 0


def _factor(cur: _Cursor) -> Expr:
    tok = cur.tok
    if cur.at("-"):
        cur.advance()
        return Neg(_factor(cur))
    if tok.kind == "num":
        cur.advance()
        return Num(float(tok.text))
    if cur.at("("):
        cur.advance()
        e = _expr(cur)
        cur.expect(")")
        return e
    if tok.kind == "ident":
        cur.advance()
        if tok.text == "abs":
            cur.expect("(")
            e = _expr(cur)
            cur.expect(")")
            return Abs(e)
        return Col(tok.text)
    cur.fail(["-", "(", "abs", "<number>", "<identifier>"])


def as_expr(value: "Expr | str | float") -> Expr:
    """Coerce a column name, numeric literal or expression text into an :class:`Expr`."""
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, float)):
        return Num(float(value))
    return parse_expr(value)
