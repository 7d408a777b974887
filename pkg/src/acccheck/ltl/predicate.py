"""Atomic predicates: comparisons between arithmetic expressions over trace columns."""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping


class SchemaMismatch(KeyError):
    """A predicate references a column the trace does not provide."""

    def __str__(self) -> str:
        return self.args[0] if self.args else "schema mismatch"


@dataclass(frozen=True)
class Expr:
    def columns(self) -> frozenset[str]:
        return frozenset()


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def evaluate(self, row: Mapping[str, float]) -> float:
        return self.value

    def __str__(self) -> str:
        return repr(self.value)


@dataclass(frozen=True)
class Col(Expr):
    name: str

    def evaluate(self, row: Mapping[str, float]) -> float:
        try:
            return row[self.name]
        except KeyError:
            raise SchemaMismatch(f"column {self.name!r} not present in trace") from None

    def columns(self) -> frozenset[str]:
        return frozenset({self.name})

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def evaluate(self, row: Mapping[str, float]) -> float:
        return -self.operand.evaluate(row)

    def columns(self) -> frozenset[str]:
        return self.operand.columns()

    def __str__(self) -> str:
        inner = str(self.operand)
        return f"-({inner})" if isinstance(self.operand, BinOp) else f"-{inner}"


@dataclass(frozen=True)
class Abs(Expr):
    operand: Expr

    def evaluate(self, row: Mapping[str, float]) -> float:
        return abs(self.operand.evaluate(row))

    def columns(self) -> frozenset[str]:
        return self.operand.columns()

    def __str__(self) -> str:
        return f"abs({self.operand})"


_ARITH: dict[str, Callable[[float, float], float]] = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def evaluate(self, row: Mapping[str, float]) -> float:
        return _ARITH[self.op](self.left.evaluate(row), self.right.evaluate(row))

    def columns(self) -> frozenset[str]:
        return self.left.columns() | self.right.columns()

    def __str__(self) -> str:
        tight = self.op in "*/"
        left = str(self.left)
        right = str(self.right)
        if tight and isinstance(self.left, BinOp) and self.left.op in "+-":
            left = f"({left})"
        if isinstance(self.right, BinOp) and (tight or self.right.op in "+-"):
            right = f"({right})"
        return f"{left} {self.op} {right}"


_COMPARE: dict[str, Callable[[float, float], bool]] = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
}


@dataclass(frozen=True)
class AtomPredicate:
    """A named boolean test evaluated on one trace sample."""

    name: str
    left: Expr
    op: str
    right: Expr

    def __post_init__(self) -> None:
        if self.op == "=":
            object.__setattr__(self, "op", "==")
        if self.op not in _COMPARE:
            raise ValueError(f"unknown comparison {self.op!r}")

    def __call__(self, row: Mapping[str, float]) -> bool:
        return _COMPARE[self.op](self.left.evaluate(row), self.right.evaluate(row))

    def columns(self) -> frozenset[str]:
        return self.left.columns() | self.right.columns()

    def validate(self, schema: Iterable[str]) -> None:
        missing = self.columns() - set(schema)
        if missing:
            raise SchemaMismatch(f"predicate {self.name!r} references unknown columns {sorted(missing)}")

    def __str__(self) -> str:
        return f"{self.name} = {self.left} {self.op} {self.right}"
