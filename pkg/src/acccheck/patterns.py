"""Property specification patterns and the stability mapping built on them.

A pattern instance is a scope plus a nesting chain of pattern kinds, listed
outermost first.  ``[EXISTENCE, UNIVERSALITY]`` over ``P`` composes to
``F (G P)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from acccheck.ltl import (
    Atom, AtomPredicate, Eventually, Formula, Globally, Implies, Not, Or, Until, as_expr,
    parse_formula, parse_predicate,
)
from acccheck.ltl.predicate import Abs, BinOp, Expr, Num


class UnsupportedPattern(ValueError):
    pass


class PatternKind(enum.Enum):
    UNIVERSALITY = "universality"
    EXISTENCE = "existence"
    ABSENCE = "absence"
    RESPONSE = "response"
    PRECEDENCE = "precedence"

    @property
    def arity(self) -> int:
        return 2 if self in (PatternKind.RESPONSE, PatternKind.PRECEDENCE) else 1


@dataclass(frozen=True)
class GloballyScope:
    def __str__(self) -> str:
        return "Globally"


@dataclass(frozen=True)
class AfterScope:
    q: Formula

    def __str__(self) -> str:
        return f"After {self.q}"


Scope = Union[GloballyScope, AfterScope]
GLOBALLY = GloballyScope()

# Catalogue scopes that are recognised by name but have no template here.
UNIMPLEMENTED_SCOPES = ("Before", "Between", "After-until")
AFTER_KINDS = (PatternKind.UNIVERSALITY, PatternKind.ABSENCE, PatternKind.RESPONSE)


def scope_from_name(name: str, q: Optional[Formula] = None) -> Scope:
    key = name.strip().lower()
    if key == "globally":
        return GLOBALLY
    if key == "after":
        if q is None:
            raise UnsupportedPattern("the After scope needs its trigger formula q")
        return AfterScope(q)
    raise UnsupportedPattern(
        f"scope {name!r} is not supported; supported scopes: Globally, After(q)"
        + (" (recognised but unimplemented: " + ", ".join(UNIMPLEMENTED_SCOPES) + ")")
    )


@dataclass(frozen=True)
class PatternInstance:
    scope: Scope
    kinds: tuple[PatternKind, ...]
    args: tuple[Formula, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kinds", tuple(PatternKind(k) for k in self.kinds))
        object.__setattr__(self, "args", tuple(self.args))
        if not self.kinds:
            raise UnsupportedPattern("a pattern instance needs at least one pattern kind")
        for k in self.kinds[1:]:
            if k.arity != 1:
                raise UnsupportedPattern(f"{k.value} takes two arguments and must be the outermost pattern")
        want = self.kinds[0].arity
        if len(self.args) != want:
            raise UnsupportedPattern(
                f"{self.kinds[0].value} chain expects {want} argument(s), got {len(self.args)}")


def _globally_template(kind: PatternKind, args: Sequence[Formula]) -> Formula:
    if kind is PatternKind.UNIVERSALITY:
        return Globally(args[0])
    if kind is PatternKind.EXISTENCE:
        return Eventually(args[0])
    if kind is PatternKind.ABSENCE:
        return Globally(Not(args[0]))
    if kind is PatternKind.RESPONSE:
        p, s = args
        return Globally(Implies(p, Eventually(s)))
    if kind is PatternKind.PRECEDENCE:
        # p precedes q: q stays false weak-until p.
        p, q = args
        return Or(Until(Not(q), p), Globally(Not(q)))
    raise UnsupportedPattern(f"unknown pattern kind {kind!r}")


def instantiate(p: PatternInstance) -> Formula:
    """LTL formula for a pattern instance, composing the nesting chain innermost first."""
    outer, inner = p.kinds[0], p.kinds[1:]
    operand = p.args[-1]
    for kind in reversed(inner):
        operand = _globally_template(kind, [operand])
    body = _globally_template(outer, [*p.args[:-1], operand])

    if isinstance(p.scope, GloballyScope):
        return body
    if isinstance(p.scope, AfterScope):
        if outer not in AFTER_KINDS:
            raise UnsupportedPattern(
                f"After scope supports {', '.join(k.value for k in AFTER_KINDS)}; got {outer.value}")
        return Globally(Implies(p.scope.q, body))
    raise UnsupportedPattern(f"unsupported scope {p.scope!r}")


@dataclass(frozen=True)
class CatalogEntry:
    scope: str
    pattern: str
    template: str


def catalog() -> list[CatalogEntry]:
    """Every supported scope and pattern combination with its template over P, S."""
    P, S, Q = Atom("P"), Atom("S"), Atom("Q")
    rows = []
    for scope in (GLOBALLY, AfterScope(Q)):
        for kind in PatternKind:
            args = (P, S) if kind.arity == 2 else (P,)
            try:
                f = instantiate(PatternInstance(scope, (kind,), args))
            except UnsupportedPattern:
                continue
            rows.append(CatalogEntry(str(scope), kind.value, str(f)))
    return rows


@dataclass(frozen=True)
class PropertySpec:
    name: str
    pattern: PatternInstance
    atoms: Mapping[str, AtomPredicate]
    formula: Formula = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "formula", instantiate(self.pattern))
        object.__setattr__(self, "atoms", dict(self.atoms))


def build_ss(v_x: Union[Expr, str, float], v_eq: Union[Expr, str, float],
             alpha: Union[Expr, str, float], name: str = "ss") -> AtomPredicate:
    """Steady-state band ``|v_x - v_eq| <= alpha``."""
    return AtomPredicate(name, Abs(BinOp("-", as_expr(v_x), as_expr(v_eq))), "<=", as_expr(alpha))


def build_stability(ss: AtomPredicate) -> PropertySpec:
    pattern = PatternInstance(GLOBALLY, (PatternKind.EXISTENCE, PatternKind.UNIVERSALITY), (Atom(ss.name),))
    return PropertySpec("stability", pattern, {ss.name: ss})


def acc_stability_atom(margin: float = 0.05) -> AtomPredicate:
    # One-sided on purpose: the gap must settle strictly beyond the band.
    return AtomPredicate("ss", BinOp("-", as_expr("d_rel"), as_expr("d_safe")), ">",
                         BinOp("*", Num(margin), as_expr("d_safe")))


def build_acc_stability() -> PropertySpec:
    """Stability of the following gap: eventually always ``d_rel - d_safe > 0.05 * d_safe``."""
    return build_stability(acc_stability_atom())


def property_from_text(formula: str, atom_defs: Sequence[str], name: str = "custom") -> "CustomProperty":
    preds = [parse_predicate(text) for text in atom_defs]
    return CustomProperty(name, parse_formula(formula), {p.name: p for p in preds})


@dataclass(frozen=True)
class CustomProperty:
    """A hand-written formula with its predicate bindings, checked like a PropertySpec."""

    name: str
    formula: Formula
    atoms: Mapping[str, AtomPredicate]
