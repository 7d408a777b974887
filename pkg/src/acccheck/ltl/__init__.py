"""Linear temporal logic: syntax, lasso semantics, Büchi translation and trace checking."""
from acccheck.ltl.buchi import BuchiAutomaton, Transition, accepting_lasso, accepts, to_buchi, to_never_claim
from acccheck.ltl.check import Verdict, check_trace, label_trace
from acccheck.ltl.formula import (
    FALSE, TRUE, And, Atom, Eventually, FalseF, Formula, Globally, Implies, Next, Not, Or, Release,
    TrueF, Until, atoms, depth, nnf, to_text,
)
from acccheck.ltl.lasso import LassoWord, UnboundAtom, eval_lasso, truth_table
from acccheck.ltl.parser import ParseError, as_expr, parse_expr, parse_formula, parse_predicate
from acccheck.ltl.predicate import AtomPredicate, SchemaMismatch

__all__ = [
    "And", "Atom", "AtomPredicate", "BuchiAutomaton", "Eventually", "FALSE", "FalseF", "Formula",
    "Globally", "Implies", "LassoWord", "Next", "Not", "Or", "ParseError", "Release", "SchemaMismatch",
    "TRUE", "Transition", "TrueF", "UnboundAtom", "Until", "Verdict", "accepting_lasso", "accepts",
    "as_expr", "atoms", "check_trace", "depth", "eval_lasso", "label_trace", "nnf", "parse_expr",
    "parse_formula", "parse_predicate", "to_buchi", "to_never_claim", "to_text", "truth_table",
]
