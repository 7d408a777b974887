"""Ultimately periodic words and exact LTL evaluation over them.

``eval_lasso`` labels every position of ``prefix + cycle`` with the truth of
every subformula.  Until and Release are fixpoints: they are solved on the
cycle first (Until from false, Release from true) and then propagated
backwards through the prefix.  It shares no code with the automaton path and
serves as its oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from acccheck.ltl.formula import (
    And, Atom, Eventually, FalseF, Formula, Globally, Implies, Next, Not, Or, Release, TrueF, Until,
)

Letter = Mapping[str, bool]


class UnboundAtom(KeyError):
    def __str__(self) -> str:
        return self.args[0] if self.args else "unbound atom"


@dataclass(frozen=True, eq=False)
class LassoWord:
    """The infinite word ``prefix · cycle^ω``."""

    prefix: tuple[Letter, ...]
    cycle: tuple[Letter, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(dict(a) for a in self.prefix))
        object.__setattr__(self, "cycle", tuple(dict(a) for a in self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be non-empty")

    def __len__(self) -> int:
        return len(self.prefix) + len(self.cycle)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LassoWord):
            return NotImplemented
        return self.prefix == other.prefix and self.cycle == other.cycle

    def __hash__(self) -> int:
        key = lambda seq: tuple(frozenset(a.items()) for a in seq)  # noqa: E731
        return hash((key(self.prefix), key(self.cycle)))

    def letter(self, i: int) -> Letter:
        n = len(self.prefix)
        return self.prefix[i] if i < n else self.cycle[i - n]

    def successor(self, i: int) -> int:
        return i + 1 if i + 1 < len(self) else len(self.prefix)

    @classmethod
    def stutter(cls, letters: Sequence[Letter]) -> "LassoWord":
        """Finite word extended by repeating its last letter forever."""
        if not letters:
            raise ValueError("cannot stutter-extend an empty word")
        return cls(tuple(letters[:-1]), (letters[-1],))

    def __repr__(self) -> str:
        def show(seq):
            return "[" + ", ".join(
                "{" + ",".join(k if v else "!" + k for k, v in sorted(a.items())) + "}" for a in seq
            ) + "]"
        return f"LassoWord(prefix={show(self.prefix)}, cycle={show(self.cycle)})"


def truth_table(f: Formula, w: LassoWord) -> list[bool]:
    """Truth of ``f`` at each position ``0 .. len(w) - 1`` of the lasso."""
    memo: dict[Formula, list[bool]] = {}
    return _label(f, w, memo)


def eval_lasso(f: Formula, w: LassoWord) -> bool:
    return truth_table(f, w)[0]


def _label(f: Formula, w: LassoWord, memo: dict) -> list[bool]:
    cached = memo.get(f)
    if cached is not None:
        return cached
    size = len(w)
    if isinstance(f, TrueF):
        out = [True] * size
    elif isinstance(f, FalseF):
        out = [False] * size
    elif isinstance(f, Atom):
        out = []
        for i in range(size):
            letter = w.letter(i)
            if f.name not in letter:
                raise UnboundAtom(f"atom {f.name!r} has no value at lasso position {i}")
            out.append(bool(letter[f.name]))
    elif isinstance(f, Not):
        out = [not v for v in _label(f.operand, w, memo)]
    elif isinstance(f, And):
        a, b = _label(f.left, w, memo), _label(f.right, w, memo)
        out = [x and y for x, y in zip(a, b)]
    elif isinstance(f, Or):
        a, b = _label(f.left, w, memo), _label(f.right, w, memo)
        out = [x or y for x, y in zip(a, b)]
    elif isinstance(f, Implies):
        a, b = _label(f.left, w, memo), _label(f.right, w, memo)
        out = [(not x) or y for x, y in zip(a, b)]
    elif isinstance(f, Next):
        a = _label(f.operand, w, memo)
        out = [a[w.successor(i)] for i in range(size)]
    elif isinstance(f, Until):
        out = _fixpoint(w, _label(f.left, w, memo), _label(f.right, w, memo), until=True)
    elif isinstance(f, Release):
        out = _fixpoint(w, _label(f.left, w, memo), _label(f.right, w, memo), until=False)
    elif isinstance(f, Eventually):
        out = _fixpoint(w, [True] * size, _label(f.operand, w, memo), until=True)
    elif isinstance(f, Globally):
        out = _fixpoint(w, [False] * size, _label(f.operand, w, memo), until=False)
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[f] = out
    return out


def _fixpoint(w: LassoWord, left: list[bool], right: list[bool], until: bool) -> list[bool]:
    # Until:   v[i] = right[i] or  (left[i]  and v[i+1]), least fixpoint
    # Release: v[i] = right[i] and (left[i]  or  v[i+1]), greatest fixpoint
    n, size = len(w.prefix), len(w)
    v = [not until] * size

    def update(i: int) -> bool:
        nxt = v[w.successor(i)]
        if until:
            return right[i] or (left[i] and nxt)
        return right[i] and (left[i] or nxt)

    # Each sweep settles at least one more cycle position, so |cycle| + 1 sweeps suffice.
    for _ in range(size - n + 1):
        changed = False
        for i in range(size - 1, n - 1, -1):
            new = update(i)
            if new != v[i]:
                v[i] = new
                changed = True
        if not changed:
            break
    for i in range(n - 1, -1, -1):
        v[i] = update(i)
    return v
