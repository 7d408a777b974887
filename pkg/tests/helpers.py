"""Generators and a by-definition LTL semantics shared across the test modules."""
from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from acccheck.ltl import (
    FALSE, TRUE, And, Atom, Eventually, FalseF, Formula, Globally, Implies, LassoWord, Next, Not, Or,
    Release, TrueF, Until,
)

UNARY = (Not, Next, Eventually, Globally)
BINARY = (And, Or, Implies, Until, Release)


def random_formula(rng: random.Random, depth: int, atoms=("p", "q", "r")) -> Formula:
    """Random formula of depth at most ``depth``."""
    if depth <= 1 or rng.random() < 0.2:
        if rng.random() < 0.08:
            return rng.choice((TRUE, FALSE))
        return Atom(rng.choice(atoms))
    if rng.random() < 0.4:
        return rng.choice(UNARY)(random_formula(rng, depth - 1, atoms))
    cls = rng.choice(BINARY)
    return cls(random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms))


def random_lasso(rng: random.Random, atoms=("p", "q", "r"), max_prefix=4, max_cycle=3) -> LassoWord:
    def letter():
        return {a: rng.random() < 0.5 for a in atoms}

    return LassoWord(
        [letter() for _ in range(rng.randint(0, max_prefix))],
        [letter() for _ in range(rng.randint(1, max_cycle))],
    )


def all_letters(atoms):
    for bits in itertools.product((False, True), repeat=len(atoms)):
        yield dict(zip(atoms, bits))


def all_lassos(atoms, max_prefix: int, max_cycle: int):
    letters = list(all_letters(sorted(atoms)))
    for n in range(max_prefix + 1):
        for prefix in itertools.product(letters, repeat=n):
            for m in range(1, max_cycle + 1):
                for cycle in itertools.product(letters, repeat=m):
                    yield LassoWord(prefix, cycle)


def brute_force_holds(f: Formula, w: LassoWord, i: int = 0) -> bool:
    """LTL semantics read straight off the definitions.

    Positions are unrolled explicitly; an Until witness, if any, lies within
    ``len(w)`` steps of ``i`` because the word repeats after that.
    """
    horizon = len(w)

    def pos(k: int) -> int:
        n, m = len(w.prefix), len(w.cycle)
        return k if k < n else n + (k - n) % m

    def sat(g: Formula, k: int) -> bool:
        if isinstance(g, TrueF):
            return True
        if isinstance(g, FalseF):
            return False
        if isinstance(g, Atom):
            return bool(w.letter(pos(k))[g.name])
        if isinstance(g, Not):
            return not sat(g.operand, k)
        if isinstance(g, And):
            return sat(g.left, k) and sat(g.right, k)
        if isinstance(g, Or):
            return sat(g.left, k) or sat(g.right, k)
        if isinstance(g, Implies):
            return (not sat(g.left, k)) or sat(g.right, k)
        if isinstance(g, Next):
            return sat(g.operand, k + 1)
        if isinstance(g, Until):
            for j in range(k, k + horizon + 1):
                if sat(g.right, j):
                    return True
                if not sat(g.left, j):
                    return False
            return False
        if isinstance(g, Release):
            return not sat(Until(Not(g.left), Not(g.right)), k)
        if isinstance(g, Eventually):
            return any(sat(g.operand, j) for j in range(k, k + horizon + 1))
        if isinstance(g, Globally):
            return all(sat(g.operand, j) for j in range(k, k + horizon + 1))
        raise TypeError(g)

    return sat(f, i)


# hypothesis strategies ---------------------------------------------------------

atom_names = st.sampled_from(["p", "q", "r"])


def formulas(max_leaves: int = 12):
    leaves = st.one_of(atom_names.map(Atom), st.sampled_from([TRUE, FALSE]))

    def extend(children):
        unary = st.tuples(st.sampled_from(UNARY), children).map(lambda t: t[0](t[1]))
        binary = st.tuples(st.sampled_from(BINARY), children, children).map(lambda t: t[0](t[1], t[2]))
        return st.one_of(unary, binary)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


letters = st.fixed_dictionaries({"p": st.booleans(), "q": st.booleans(), "r": st.booleans()})
lassos = st.builds(
    LassoWord,
    st.lists(letters, max_size=4).map(tuple),
    st.lists(letters, min_size=1, max_size=3).map(tuple),
)


# PASS/FAIL lines emitted by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []
