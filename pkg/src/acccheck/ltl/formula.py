"""LTL abstract syntax, pretty-printing and negation normal form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Formula:
    def __str__(self) -> str:
        return to_text(self)

    def children(self) -> tuple["Formula", ...]:
        return ()


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Unary(Formula):
    operand: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.operand,)


@dataclass(frozen=True)
class Binary(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


class Not(Unary):
    pass


class Next(Unary):
    pass


class Eventually(Unary):
    pass


class Globally(Unary):
    pass


class And(Binary):
    pass


class Or(Binary):
    pass


class Implies(Binary):
    pass


class Until(Binary):
    pass


class Release(Binary):
    pass


TRUE = TrueF()
FALSE = FalseF()


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order walk; children are yielded before their parent."""
    for child in f.children():
        yield from subformulas(child)
    yield f


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def depth(f: Formula) -> int:
    return 1 + max((depth(c) for c in f.children()), default=0)


# Loosest to tightest; matches the parser.
_PREC = {Implies: 1, Or: 2, And: 3, Until: 4, Release: 4}
_UNARY_PREC = 5
_ATOM_PREC = 6
_BIN_SYMBOL = {Implies: "->", Or: "|", And: "&", Until: "U", Release: "R"}
_UNARY_SYMBOL = {Not: "!", Next: "X ", Eventually: "F ", Globally: "G "}
_RIGHT_ASSOC = (Implies, Until, Release)


def _prec(f: Formula) -> int:
    if isinstance(f, Binary):
        return _PREC[type(f)]
    if isinstance(f, Unary):
        return _UNARY_PREC
    return _ATOM_PREC


def to_text(f: Formula) -> str:
    """Render ``f`` with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, FalseF):
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Unary):
        return _UNARY_SYMBOL[type(f)] + _wrap(f.operand, _UNARY_PREC)
    if isinstance(f, Binary):
        p = _PREC[type(f)]
        if isinstance(f, _RIGHT_ASSOC):
            left, right = _wrap(f.left, p + 1), _wrap(f.right, p)
        else:
            left, right = _wrap(f.left, p), _wrap(f.right, p + 1)
        return f"{left} {_BIN_SYMBOL[type(f)]} {right}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f: Formula, min_prec: int) -> str:
    text = to_text(f)
    return f"({text})" if _prec(f) < min_prec else text


def nnf(f: Formula) -> Formula:
    """Negation normal form over {true, false, literals, &, |, X, U, R}."""
    return _pos(f)


def _pos(f: Formula) -> Formula:
    if isinstance(f, (TrueF, FalseF, Atom)):
        return f
    if isinstance(f, Not):
        return _neg(f.operand)
    if isinstance(f, And):
        return And(_pos(f.left), _pos(f.right))
    if isinstance(f, Or):
        return Or(_pos(f.left), _pos(f.right))
    if isinstance(f, Implies):
        return Or(_neg(f.left), _pos(f.right))
    if isinstance(f, Next):
        return Next(_pos(f.operand))
    if isinstance(f, Until):
        return Until(_pos(f.left), _pos(f.right))
    if isinstance(f, Release):
        return Release(_pos(f.left), _pos(f.right))
    if isinstance(f, Eventually):
        return Until(TRUE, _pos(f.operand))
    if isinstance(f, Globally):
        return Release(FALSE, _pos(f.operand))
    raise TypeError(f"not a formula: {f!r}")


def _neg(f: Formula) -> Formula:
    if isinstance(f, TrueF):
        return FALSE
    if isinstance(f, FalseF):
        return TRUE
    if isinstance(f, Atom):
        return Not(f)
    if isinstance(f, Not):
        return _pos(f.operand)
    if isinstance(f, And):
        return Or(_neg(f.left), _neg(f.right))
    if isinstance(f, Or):
        return And(_neg(f.left), _neg(f.right))
    if isinstance(f, Implies):
        return And(_pos(f.left), _neg(f.right))
    if isinstance(f, Next):
        return Next(_neg(f.operand))
    if isinstance(f, Until):
        return Release(_neg(f.left), _neg(f.right))
    if isinstance(f, Release):
        return Until(_neg(f.left), _neg(f.right))
    if isinstance(f, Eventually):
        return Release(FALSE, _neg(f.operand))
    if isinstance(f, Globally):
        return Until(TRUE, _neg(f.operand))
    raise TypeError(f"not a formula: {f!r}")


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.operand, Atom))
