"""Pretty printer: inverse of the parser on abstract syntax.

`parse_formula(format_formula(f)) == f` holds for every well-formed tree;
the round trip is exercised heavily by the test suite.  Quantifiers take
maximal right scope in the concrete syntax, so a quantifier is printed bare
exactly when nothing follows it on the right (possibly because an enclosing
parenthesis closes the scope), and wrapped in parentheses otherwise.
"""

from __future__ import annotations

from .syntax import (
    Add,
    And,
    Apply,
    BExistsN,
    BForallN,
    ContApply,
    Eq,
    ExistsF,
    ExistsN,
    FnVar,
    ForallF,
    ForallN,
    Formula,
    Functor,
    Imp,
    Lambda,
    Mul,
    Node,
    Not,
    NumVar,
    Or,
    Pair,
    PrefixCode,
    SeqExt,
    Succ,
    Term,
    Zero,
    numeral_value,
)

# connective precedence, loose to tight
_IMP, _OR, _AND, _NOT = 1, 2, 3, 4


def format_term(t: Term) -> str:
    return _tm(t, 0)


def format_functor(f: Functor) -> str:
    return _fn(f)


def format_formula(f: Formula) -> str:
    return _fm(f, 0, True)


def _tm(t: Term, prec: int) -> str:
    # term precedence: + is 1, * is 2, everything else atomic (3)
    match t:
        case Zero():
            return "0"
        case Succ(inner):
            n = numeral_value(t)
            if n is not None:
                return str(n)
            return f"S({_tm(inner, 0)})"
        case NumVar(name):
            return name
        case Add(a, b):
            s = f"{_tm(a, 1)} + {_tm(b, 2)}"
            return f"({s})" if prec > 1 else s
        case Mul(a, b):
            s = f"{_tm(a, 2)} * {_tm(b, 3)}"
            return f"({s})" if prec > 2 else s
        case Pair(a, b):
            s = f"2^{_tm(a, 3)} * 3^{_tm(b, 3)}"
            return f"({s})" if prec > 2 else s
        case Apply(fn, a):
            head = _fn(fn)
            if isinstance(fn, Lambda):
                head = f"({head})"
            return f"{head}({_tm(a, 0)})"
        case SeqExt(s0, item):
            return f"ext({_tm(s0, 0)}, {_tm(item, 0)})"
        case PrefixCode(fn, ln):
            return f"barof({_fn(fn)}, {_tm(ln, 0)})"
        case _:
            raise TypeError(f"not a term: {t!r}")


def _fn(f: Functor) -> str:
    match f:
        case FnVar(name):
            return name
        case Lambda(v, body):
            return f"lam {v}. {_tm(body, 0)}"
        case ContApply(a, b):
            return f"ap({_fn(a)}, {_fn(b)})"
        case _:
            raise TypeError(f"not a functor: {f!r}")


def _quant_str(f: Formula, rightmost: bool) -> str:
    match f:
        case ForallN(v, body):
            s = f"forall {v}. {_fm(body, 0, True)}"
        case ExistsN(v, body):
            s = f"exists {v}. {_fm(body, 0, True)}"
        case ForallF(v, body):
            s = f"forall {v}. {_fm(body, 0, True)}"
        case ExistsF(v, body):
            s = f"exists {v}. {_fm(body, 0, True)}"
        case BForallN(v, bound, body):
            s = f"forall {v} < {_tm(bound, 0)}. {_fm(body, 0, True)}"
        case BExistsN(v, bound, body):
            s = f"exists {v} < {_tm(bound, 0)}. {_fm(body, 0, True)}"
        case _:
            raise TypeError(f"not a quantifier: {f!r}")
    return s if rightmost else f"({s})"


def _fm(f: Formula, prec: int, rightmost: bool) -> str:
    match f:
        case Eq(a, b):
            return f"{_tm(a, 0)} = {_tm(b, 0)}"
        case Imp(a, b):
            wrap = prec > _IMP
            s = f"{_fm(a, _IMP + 1, False)} -> {_fm(b, _IMP, rightmost or wrap)}"
            return f"({s})" if wrap else s
        case Or(a, b):
            wrap = prec > _OR
            s = f"{_fm(a, _OR, False)} | {_fm(b, _OR + 1, rightmost or wrap)}"
            return f"({s})" if wrap else s
        case And(a, b):
            wrap = prec > _AND
            s = f"{_fm(a, _AND, False)} & {_fm(b, _AND + 1, rightmost or wrap)}"
            return f"({s})" if wrap else s
        case Not(body):
            if isinstance(body, Eq):
                return f"~({_fm(body, 0, True)})"
            return f"~{_fm(body, _NOT, rightmost)}"
        case ForallN(_, _) | ExistsN(_, _) | ForallF(_, _) | ExistsF(_, _) | BForallN(
            _, _, _
        ) | BExistsN(_, _, _):
            return _quant_str(f, rightmost)
        case _:
            raise TypeError(f"not a formula: {f!r}")


def to_sexpr(node: Node) -> str:
    """A compact s-expression rendering for machine consumption."""
    match node:
        case Zero():
            return "0"
        case Succ(a):
            return f"(S {to_sexpr(a)})"
        case NumVar(name) | FnVar(name):
            return name
        case Add(a, b):
            return f"(+ {to_sexpr(a)} {to_sexpr(b)})"
        case Mul(a, b):
            return f"(* {to_sexpr(a)} {to_sexpr(b)})"
        case Pair(a, b):
            return f"(pair {to_sexpr(a)} {to_sexpr(b)})"
        case SeqExt(a, b):
            return f"(ext {to_sexpr(a)} {to_sexpr(b)})"
        case PrefixCode(a, b):
            return f"(barof {to_sexpr(a)} {to_sexpr(b)})"
        case Apply(a, b):
            return f"(app {to_sexpr(a)} {to_sexpr(b)})"
        case Lambda(v, body):
            return f"(lam {v} {to_sexpr(body)})"
        case ContApply(a, b):
            return f"(ap {to_sexpr(a)} {to_sexpr(b)})"
        case Eq(a, b):
            return f"(= {to_sexpr(a)} {to_sexpr(b)})"
        case And(a, b):
            return f"(and {to_sexpr(a)} {to_sexpr(b)})"
        case Or(a, b):
            return f"(or {to_sexpr(a)} {to_sexpr(b)})"
        case Imp(a, b):
            return f"(-> {to_sexpr(a)} {to_sexpr(b)})"
        case Not(a):
            return f"(not {to_sexpr(a)})"
        case ForallN(v, body) | ForallF(v, body):
            return f"(forall {v} {to_sexpr(body)})"
        case ExistsN(v, body) | ExistsF(v, body):
            return f"(exists {v} {to_sexpr(body)})"
        case BForallN(v, bound, body):
            return f"(forall< {v} {to_sexpr(bound)} {to_sexpr(body)})"
        case BExistsN(v, bound, body):
            return f"(exists< {v} {to_sexpr(bound)} {to_sexpr(body)})"
        case _:
            raise TypeError(f"unknown node: {node!r}")
