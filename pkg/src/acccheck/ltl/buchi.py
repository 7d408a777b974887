"""Tableau translation of LTL to Büchi automata and lasso acceptance.

The translation is the classic on-the-fly ``expand`` construction over
formulas in negation normal form.  It yields a generalized Büchi automaton
with one acceptance set per Until subformula, which is then degeneralized
with a round-robin counter.  Guards stay symbolic: a guard is a conjunction
of literals, stored as a frozenset of ``(atom, polarity)`` pairs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from acccheck.ltl.formula import (
    And, Atom, FalseF, Formula, Next, Not, Or, Release, TrueF, Until, nnf, subformulas, to_text,
)
from acccheck.ltl.lasso import LassoWord, Letter, UnboundAtom

Guard = frozenset  # frozenset[tuple[str, bool]]; empty means "true"


@dataclass(frozen=True)
class Transition:
    src: int
    guard: Guard
    dst: int


@dataclass(frozen=True)
class BuchiAutomaton:
    states: tuple[int, ...]
    initial: frozenset[int]
    transitions: tuple[Transition, ...]
    accepting: frozenset[int]
    label: str = ""
    _out: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        known = set(self.states)
        if not self.accepting <= known or not self.initial <= known:
            raise ValueError("accepting and initial states must be automaton states")
        out: dict[int, list[Transition]] = {s: [] for s in self.states}
        for t in self.transitions:
            out[t.src].append(t)
        object.__setattr__(self, "_out", out)

    def outgoing(self, state: int) -> list[Transition]:
        return self._out[state]

    def atoms(self) -> frozenset[str]:
        return frozenset(name for t in self.transitions for name, _ in t.guard)


def guard_holds(guard: Guard, letter: Letter) -> bool:
    for name, polarity in guard:
        try:
            if bool(letter[name]) != polarity:
                return False
        except KeyError:
            raise UnboundAtom(f"atom {name!r} is not assigned in the input letter") from None
    return True


def guard_text(guard: Guard) -> str:
    if not guard:
        return "1"
    return " && ".join(name if pol else f"!{name}" for name, pol in sorted(guard))


# --- tableau -----------------------------------------------------------------

_INIT = 0
_TRUE, _FALSE, _LIT, _AND, _OR, _NEXT, _UNTIL, _RELEASE = range(8)


class _Closure:
    """Subformulas of an NNF formula interned to integer ids."""

    def __init__(self, g: Formula):
        self.ids: dict[Formula, int] = {}
        self.kind: list[int] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.literal: list[Optional[tuple[str, bool]]] = []
        for sub in subformulas(g):
            if sub in self.ids:
                continue
            kind, lit, left, right = self._classify(sub)
            self.ids[sub] = len(self.kind)
            self.kind.append(kind)
            self.literal.append(lit)
            self.left.append(left)
            self.right.append(right)
        self.root = self.ids[g]
        by_lit = {lit: i for i, lit in enumerate(self.literal) if lit is not None}
        self.complement = {
            i: by_lit.get((lit[0], not lit[1])) for i, lit in enumerate(self.literal) if lit is not None
        }
        self.untils = [i for i, k in enumerate(self.kind) if k == _UNTIL]

    def _classify(self, f: Formula):
        if isinstance(f, TrueF):
            return _TRUE, None, -1, -1
        if isinstance(f, FalseF):
            return _FALSE, None, -1, -1
        if isinstance(f, Atom):
            return _LIT, (f.name, True), -1, -1
        if isinstance(f, Not) and isinstance(f.operand, Atom):
            return _LIT, (f.operand.name, False), -1, -1
        if isinstance(f, Next):
            return _NEXT, None, self.ids[f.operand], -1
        for cls, kind in ((And, _AND), (Or, _OR), (Until, _UNTIL), (Release, _RELEASE)):
            if isinstance(f, cls):
                return kind, None, self.ids[f.left], self.ids[f.right]
        raise TypeError(f"formula not in negation normal form: {f!r}")


@dataclass
class _Node:
    id: int
    incoming: set
    new: set
    old: set
    next: frozenset
    guard: Guard = frozenset()
    acc: tuple = ()


def _tableau(cl: _Closure) -> list[_Node]:
    """Expand the root obligation into tableau nodes.

    Finished nodes are identified by their literal label, their obligations
    for the next position and their membership in each acceptance set; nodes
    agreeing on all three have the same future and are merged.
    """
    counter = iter(range(1, 1 << 62))
    done: dict[tuple, _Node] = {}
    pending = [_Node(next(counter), {_INIT}, {cl.root}, set(), frozenset())]
    kind, left, right = cl.kind, cl.left, cl.right

    while pending:
        node = pending.pop()
        if not node.new:
            guard = frozenset(cl.literal[i] for i in node.old if kind[i] == _LIT)
            acc = tuple(u not in node.old or right[u] in node.old for u in cl.untils)
            key = (guard, node.next, acc)
            existing = done.get(key)
            if existing is not None:
                existing.incoming |= node.incoming
                continue
            node.guard, node.acc = guard, acc
            done[key] = node
            pending.append(_Node(next(counter), {node.id}, set(node.next), set(), frozenset()))
            continue

        eta = node.new.pop()
        k = kind[eta]
        if eta in node.old:
            pending.append(node)
        elif k == _FALSE:
            continue
        elif k == _TRUE or k == _LIT:
            if k == _LIT and cl.complement[eta] in node.old:
                continue
            node.old.add(eta)
            pending.append(node)
        elif k == _AND:
            node.old.add(eta)
            node.new |= {left[eta], right[eta]} - node.old
            pending.append(node)
        elif k == _NEXT:
            node.old.add(eta)
            node.next = node.next | {left[eta]}
            pending.append(node)
        else:
            if k == _OR:
                first, first_next, second = {left[eta]}, frozenset(), {right[eta]}
            elif k == _UNTIL:
                first, first_next, second = {left[eta]}, frozenset({eta}), {right[eta]}
            else:
                first, first_next, second = {right[eta]}, frozenset({eta}), {left[eta], right[eta]}
            old = node.old | {eta}
            pending.append(_Node(next(counter), set(node.incoming), node.new | (second - old),
                                 set(old), node.next))
            pending.append(_Node(next(counter), set(node.incoming), node.new | (first - old),
                                 set(old), node.next | first_next))
    return list(done.values())


def to_buchi(f: Formula) -> BuchiAutomaton:
    """Büchi automaton accepting exactly the words that satisfy ``f``."""
    cl = _Closure(nnf(f))
    nodes = _tableau(cl)
    k = len(cl.untils)
    by_id = {n.id: n for n in nodes}
    succ: dict[int, list[int]] = {_INIT: []}
    for n in nodes:
        succ.setdefault(n.id, [])
    for n in nodes:
        for p in n.incoming:
            succ[p].append(n.id)

    # Degeneralize with a level counter: in state q at level l, skip every
    # consecutive level whose acceptance set contains q; completing the last
    # level makes (q, l) accepting and restarts the round.
    start = (_INIT, 0)
    index = {start: 0}
    order = [start]
    transitions = []
    accepting = set()
    i = 0
    while i < len(order):
        q, level = order[i]
        src = i
        if q == _INIT:
            nxt_level = 0
        else:
            acc = by_id[q].acc
            nxt_level = level
            while nxt_level < k and acc[nxt_level]:
                nxt_level += 1
            if nxt_level == k:
                accepting.add(src)
                nxt_level = 0
        for q2 in sorted(succ[q]):
            key = (q2, nxt_level)
            if key not in index:
                index[key] = len(order)
                order.append(key)
            transitions.append(Transition(src, by_id[q2].guard, index[key]))
        i += 1

    raw = BuchiAutomaton(tuple(range(len(order))), frozenset({0}), tuple(transitions),
                         frozenset(accepting), label=to_text(f))
    return _simplify(raw)


def _simplify(a: BuchiAutomaton) -> BuchiAutomaton:
    """Merge states with identical acceptance and outgoing transitions.

    An initial state without incoming edges is also folded into any state with
    the same outgoing transitions, since its own acceptance is irrelevant.
    """
    rep = {s: s for s in a.states}

    def find(s: int) -> int:
        while rep[s] != s:
            rep[s] = rep[rep[s]]
            s = rep[s]
        return s

    initial = set(a.initial)
    while True:
        out: dict[int, set] = {}
        for t in a.transitions:
            out.setdefault(find(t.src), set()).add((t.guard, find(t.dst)))
        live = {find(s) for s in a.states}
        sigs = {s: frozenset(out.get(s, ())) for s in live}
        groups: dict = {}
        for s in sorted(live):
            groups.setdefault((s in a.accepting, sigs[s]), []).append(s)
        merged = False
        for members in groups.values():
            for s in members[1:]:
                rep[s] = members[0]
                merged = True
        if merged:
            continue
        targets = {d for s in live for _, d in sigs[s]}
        by_sig: dict = {}
        for s in sorted(live):
            by_sig.setdefault(sigs[s], []).append(s)
        for s in sorted({find(x) for x in initial}):
            if s in targets:
                continue
            twin = next((r for r in by_sig[sigs[s]] if r != s), None)
            if twin is not None:
                rep[s] = twin
                merged = True
        if not merged:
            break

    initial = {find(s) for s in initial}
    accepting = {find(s) for s in a.accepting}
    transitions = {Transition(find(t.src), t.guard, find(t.dst)) for t in a.transitions}
    # Sources whose representative changed contribute the same edges as the representative.
    live = sorted({find(s) for s in a.states})
    reachable = _bfs_order(live, initial, transitions)
    renum = {s: i for i, s in enumerate(reachable)}
    return BuchiAutomaton(
        tuple(range(len(renum))),
        frozenset(renum[s] for s in initial),
        tuple(sorted((Transition(renum[t.src], t.guard, renum[t.dst]) for t in transitions
                      if t.src in renum),
                     key=lambda t: (t.src, t.dst, sorted(t.guard)))),
        frozenset(renum[s] for s in accepting if s in renum),
        label=a.label,
    )


def _bfs_order(live: list[int], initial: set, transitions: set) -> list[int]:
    """States reachable from ``initial`` in breadth-first order."""
    succ: dict[int, list[int]] = {s: [] for s in live}
    for t in transitions:
        succ[t.src].append(t.dst)
    order = sorted(initial)
    seen = set(order)
    i = 0
    while i < len(order):
        for d in sorted(succ[order[i]]):
            if d not in seen:
                seen.add(d)
                order.append(d)
        i += 1
    return order


# --- acceptance ----------------------------------------------------------------


def _product_successors(a: BuchiAutomaton, w: LassoWord, node: tuple[int, int]) -> Iterator[tuple[int, int]]:
    q, i = node
    letter = w.letter(i)
    j = w.successor(i)
    for t in a.outgoing(q):
        if guard_holds(t.guard, letter):
            yield (t.dst, j)


def accepting_lasso(a: BuchiAutomaton, w: LassoWord) -> Optional[list[tuple[int, int]]]:
    """Nested depth-first search for an accepting cycle in ``a × w``.

    Returns the product-state cycle through an accepting state, or ``None``.
    Product states are ``(automaton_state, lasso_position)``.
    """
    outer_seen: set = set()
    inner_seen: set = set()

    for init in sorted(a.initial):
        root = (init, 0)
        if root in outer_seen:
            continue
        outer_seen.add(root)
        stack = [(root, _product_successors(a, w, root))]
        while stack:
            node, succs = stack[-1]
            child = next(succs, None)
            if child is not None:
                if child not in outer_seen:
                    outer_seen.add(child)
                    stack.append((child, _product_successors(a, w, child)))
                continue
            stack.pop()
            if node[0] in a.accepting:
                cycle = _inner_search(a, w, node, inner_seen)
                if cycle is not None:
                    return cycle
    return None


def _inner_search(a, w, seed, inner_seen) -> Optional[list]:
    stack = [(seed, _product_successors(a, w, seed))]
    while stack:
        node, succs = stack[-1]
        child = next(succs, None)
        if child is None:
            stack.pop()
            continue
        if child == seed:
            return [n for n, _ in stack]
        if child not in inner_seen:
            inner_seen.add(child)
            stack.append((child, _product_successors(a, w, child)))
    return None


def accepts(a: BuchiAutomaton, w: LassoWord) -> bool:
    return accepting_lasso(a, w) is not None


# --- export --------------------------------------------------------------------


def to_never_claim(a: BuchiAutomaton, comment: Optional[str] = None) -> str:
    """Promela ``never`` block for ``a``; the first state listed is initial."""
    names = {s: (f"accept_S{s}" if s in a.accepting else f"T{s}") for s in a.states}
    lines = [f"never {{ /* {comment if comment is not None else a.label} */"]

    def block(name: str, trans: Iterable[Transition]) -> None:
        trans = list(trans)
        lines.append(f"{name}:")
        if not trans:
            lines.append("\tfalse;")
            return
        lines.append("\tif")
        for t in trans:
            lines.append(f"\t:: ({guard_text(t.guard)}) -> goto {names[t.dst]}")
        lines.append("\tfi;")

    initial = sorted(a.initial)
    if len(initial) == 1:
        s0 = initial[0]
        names[s0] = ("accept_" if s0 in a.accepting else "T0_") + "init"
        order = [s0] + [s for s in a.states if s != s0]
        for s in order:
            block(names[s], a.outgoing(s))
    else:
        block("T0_init", [t for s in initial for t in a.outgoing(s)])
        for s in a.states:
            block(names[s], a.outgoing(s))
    lines.append("}")
    return "\n".join(lines) + "\n"
