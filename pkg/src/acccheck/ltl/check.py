"""Deciding LTL formulas on finite traces via their stutter extension."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

from acccheck.ltl.buchi import accepting_lasso, to_buchi
from acccheck.ltl.formula import Eventually, Formula, Globally, Not, atoms
from acccheck.ltl.lasso import LassoWord, UnboundAtom, truth_table
from acccheck.ltl.predicate import AtomPredicate


@dataclass
class Verdict:
    holds: bool
    witness_index: Optional[int] = None
    counterexample_index: Optional[int] = None
    diagnostics: dict[str, Any] = field(default_factory=dict)
    internal_error: Optional[str] = None

    @property
    def status(self) -> str:
        if self.internal_error:
            return "internal-error"
        return "holds" if self.holds else "violated"

    def summary(self) -> str:
        parts = [f"holds={str(self.holds).lower()}"]
        if self.witness_index is not None:
            parts.append(f"witness_index={self.witness_index}")
        if self.counterexample_index is not None:
            parts.append(f"counterexample_index={self.counterexample_index}")
        for key, value in self.diagnostics.items():
            if isinstance(value, float):
                value = f"{value:.3f}"
            parts.append(f"{key}={value}")
        if self.internal_error:
            parts.append(f"internal_error={self.internal_error!r}")
        return " ".join(parts)


def label_trace(rows: Sequence[Mapping[str, float]], bindings: Mapping[str, AtomPredicate]) -> list[dict[str, bool]]:
    return [{name: pred(row) for name, pred in bindings.items()} for row in rows]


def check_trace(f: Formula, rows: Sequence[Mapping[str, float]],
                bindings: Mapping[str, AtomPredicate]) -> Verdict:
    """Decide ``f`` on the stutter extension of ``rows``.

    The automaton for ``¬f`` is searched for an accepting run (the violation
    route) and the result is cross-checked against direct lasso evaluation.
    """
    if not rows:
        raise ValueError("cannot check an empty trace")
    unbound = atoms(f) - set(bindings)
    if unbound:
        raise UnboundAtom(f"formula atoms without a predicate binding: {sorted(unbound)}")
    used = {name: bindings[name] for name in sorted(atoms(f))}
    word = LassoWord.stutter(label_trace(rows, used))

    counter_run = accepting_lasso(to_buchi(Not(f)), word)
    holds = counter_run is None
    table = truth_table(f, word)
    if table[0] != holds:
        return Verdict(False, internal_error=(
            f"automaton route says holds={holds}, lasso evaluation says holds={table[0]}"))

    witness = counterexample = None
    if isinstance(f, Eventually):
        inner = truth_table(f.operand, word)
        witness = next((i for i, v in enumerate(inner) if v), None)
        if not holds:
            counterexample = len(word) - 1
    elif isinstance(f, Globally) and not holds:
        inner = truth_table(f.operand, word)
        counterexample = next(i for i, v in enumerate(inner) if not v)
    elif not holds:
        counterexample = 0
    return Verdict(holds, witness, counterexample)
