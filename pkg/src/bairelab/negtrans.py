"""Double negation translation into the negative fragment.

The translation doubles every atom, turns disjunction into the de Morgan
dual over negations, and replaces existential quantifiers by negated
universals; conjunction, implication, negation and universal quantifiers
pass through.  Bounded quantifiers are treated like their unbounded sort.

`repair_bi_clause1` undoes the translation on exactly one clause shape:
a negated universal over a triple-negated bar-hit equation is rewritten
back to the existential it came from, which a Markov-style principle
justifies for this decidable matrix.
"""

from __future__ import annotations

from .errors import BairelabError
from .syntax import (
    And,
    Apply,
    BExistsN,
    BForallN,
    Eq,
    ExistsF,
    ExistsN,
    FnVar,
    ForallF,
    ForallN,
    Formula,
    Imp,
    Not,
    NumVar,
    Or,
    PrefixCode,
    Zero,
)


class ShapeMismatchError(BairelabError):
    """Input does not have the clause structure the repair expects."""


def neg_translate(f: Formula) -> Formula:
    match f:
        case Eq(_, _):
            return Not(Not(f))
        case And(a, b):
            return And(neg_translate(a), neg_translate(b))
        case Imp(a, b):
            return Imp(neg_translate(a), neg_translate(b))
        case Not(a):
            return Not(neg_translate(a))
        case Or(a, b):
            return Not(And(Not(neg_translate(a)), Not(neg_translate(b))))
        case ForallN(v, a):
            return ForallN(v, neg_translate(a))
        case ForallF(v, a):
            return ForallF(v, neg_translate(a))
        case BForallN(v, t, a):
            return BForallN(v, t, neg_translate(a))
        case ExistsN(v, a):
            return Not(ForallN(v, Not(neg_translate(a))))
        case ExistsF(v, a):
            return Not(ForallF(v, Not(neg_translate(a))))
        case BExistsN(v, t, a):
            return Not(BForallN(v, t, Not(neg_translate(a))))
        case _:
            raise TypeError(f"not a formula: {f!r}")


def is_negative(f: Formula) -> bool:
    """No disjunction, no existential, every atom under a double negation."""
    match f:
        case Not(Not(Eq(_, _))):
            return True
        case Eq(_, _):
            return False
        case Or(_, _) | ExistsN(_, _) | ExistsF(_, _) | BExistsN(_, _, _):
            return False
        case And(a, b) | Imp(a, b):
            return is_negative(a) and is_negative(b)
        case Not(a):
            return is_negative(a)
        case ForallN(_, a) | ForallF(_, a) | BForallN(_, _, a):
            return is_negative(a)
        case _:
            raise TypeError(f"not a formula: {f!r}")


def simplify_decidable_atoms(f: Formula) -> Formula:
    """Strip double negations sitting directly on equations, bottom up."""

    def go(n: Formula) -> Formula:
        match n:
            case Eq(_, _):
                out: Formula = n
            case And(a, b):
                out = And(go(a), go(b))
            case Or(a, b):
                out = Or(go(a), go(b))
            case Imp(a, b):
                out = Imp(go(a), go(b))
            case Not(a):
                out = Not(go(a))
            case ForallN(v, a):
                out = ForallN(v, go(a))
            case ExistsN(v, a):
                out = ExistsN(v, go(a))
            case ForallF(v, a):
                out = ForallF(v, go(a))
            case ExistsF(v, a):
                out = ExistsF(v, go(a))
            case BForallN(v, t, a):
                out = BForallN(v, t, go(a))
            case BExistsN(v, t, a):
                out = BExistsN(v, t, go(a))
            case _:
                raise TypeError(f"not a formula: {n!r}")
        match out:
            case Not(Not(Eq(_, _) as atom)):
                return atom
            case _:
                return out

    return go(f)


def repair_bi_clause1(f: Formula) -> Formula:
    """Restore the existential in the translated bar-hit clause.

    Rewrites every subformula of the shape

        ~forall x. ~~~(rho(barof(alpha, x)) = 0)

    to `exists x. rho(barof(alpha, x)) = 0`.  The input must look like a
    translated bar induction instance (hypothesis chain of three, one
    conclusion) and at least one rewrite must fire.
    """
    match f:
        case Imp(And(And(_, _), _), _):
            pass
        case _:
            raise ShapeMismatchError(
                "expected ((h1 & h2) & h3) -> conclusion; run the translation "
                "on a real-coded bar induction instance first"
            )

    hits = 0

    def rw(n: Formula) -> Formula:
        nonlocal hits
        match n:
            case Not(
                ForallN(
                    xv,
                    Not(
                        Not(
                            Not(
                                Eq(
                                    Apply(FnVar(_), PrefixCode(FnVar(_), NumVar(xv2))),
                                    Zero(),
                                ) as atom
                            )
                        )
                    ),
                )
            ) if xv == xv2:
                hits += 1
                return ExistsN(xv, atom)
            case Eq(_, _):
                return n
            case And(a, b):
                return And(rw(a), rw(b))
            case Or(a, b):
                return Or(rw(a), rw(b))
            case Imp(a, b):
                return Imp(rw(a), rw(b))
            case Not(a):
                return Not(rw(a))
            case ForallN(v, a):
                return ForallN(v, rw(a))
            case ExistsN(v, a):
                return ExistsN(v, rw(a))
            case ForallF(v, a):
                return ForallF(v, rw(a))
            case ExistsF(v, a):
                return ExistsF(v, rw(a))
            case BForallN(v, t, a):
                return BForallN(v, t, rw(a))
            case BExistsN(v, t, a):
                return BExistsN(v, t, rw(a))
            case _:
                raise TypeError(f"not a formula: {n!r}")

    out = rw(f)
    if hits == 0:
        raise ShapeMismatchError("no translated bar-hit clause found to repair")
    return out
