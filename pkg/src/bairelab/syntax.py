"""Abstract syntax for the two-sorted object language.

The language talks about natural numbers and one-place number functions
(points of Baire space).  Lower-case identifiers are number variables,
`@`-prefixed identifiers range over functions.

Terms, functors and formulas are immutable dataclasses, so syntax trees can
be hashed, cached and compared structurally.  Substitution is
capture-avoiding; bound variables are renamed with trailing apostrophes when
a clash forces it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import BairelabError


class SortError(BairelabError):
    """A variable name was used at the wrong sort."""


NUM_NAME = re.compile(r"[a-z][a-z0-9_']*\Z")
FUN_NAME = re.compile(r"@[a-z][a-z0-9_']*\Z")


def check_num_name(name: str) -> str:
    if not NUM_NAME.match(name):
        raise SortError(f"invalid number variable name: {name!r}")
    return name


def check_fun_name(name: str) -> str:
    if not FUN_NAME.match(name):
        raise SortError(f"invalid function variable name: {name!r}")
    return name


class Sort(Enum):
    NUM = "num"
    FUN = "fun"


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Succ(Term):
    arg: Term


@dataclass(frozen=True)
class NumVar(Term):
    name: str

    def __post_init__(self) -> None:
        check_num_name(self.name)


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Apply(Term):
    """Application of a functor to a number term."""

    fn: "Functor"
    arg: Term


@dataclass(frozen=True)
class Pair(Term):
    """The 2^a * 3^b pairing of two numbers."""

    left: Term
    right: Term


@dataclass(frozen=True)
class SeqExt(Term):
    """One-step extension of a coded finite sequence by a number."""

    seq: Term
    item: Term


@dataclass(frozen=True)
class PrefixCode(Term):
    """Code of the length-`length` initial segment of a function."""

    fn: "Functor"
    length: Term


# ---------------------------------------------------------------------------
# functors


@dataclass(frozen=True)
class Functor:
    pass


@dataclass(frozen=True)
class FnVar(Functor):
    name: str

    def __post_init__(self) -> None:
        check_fun_name(self.name)


@dataclass(frozen=True)
class Lambda(Functor):
    var: str
    body: Term

    def __post_init__(self) -> None:
        check_num_name(self.var)


@dataclass(frozen=True)
class ContApply(Functor):
    """Continuous application of one function to another.

    The result is again a number function; evaluation is partial and
    handled by the realizability machinery, the syntax is just a former.
    """

    fn: Functor
    arg: Functor


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class ForallN(Formula):
    var: str
    body: Formula

    def __post_init__(self) -> None:
        check_num_name(self.var)


@dataclass(frozen=True)
class ExistsN(Formula):
    var: str
    body: Formula

    def __post_init__(self) -> None:
        check_num_name(self.var)


@dataclass(frozen=True)
class ForallF(Formula):
    var: str
    body: Formula

    def __post_init__(self) -> None:
        check_fun_name(self.var)


@dataclass(frozen=True)
class ExistsF(Formula):
    var: str
    body: Formula

    def __post_init__(self) -> None:
        check_fun_name(self.var)


@dataclass(frozen=True)
class BForallN(Formula):
    """Number quantifier bounded by a term: forall var < bound. body."""

    var: str
    bound: Term
    body: Formula

    def __post_init__(self) -> None:
        check_num_name(self.var)


@dataclass(frozen=True)
class BExistsN(Formula):
    var: str
    bound: Term
    body: Formula

    def __post_init__(self) -> None:
        check_num_name(self.var)


# ---------------------------------------------------------------------------
# numerals


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals denote naturals")
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def numeral_value(t: Term) -> int | None:
    """The natural a term denotes if it is a bare successor tower, else None."""
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.arg
    return n if isinstance(t, Zero) else None


# ---------------------------------------------------------------------------
# free variables

Node = Term | Functor | Formula


def free_vars(node: Node) -> tuple[frozenset[str], frozenset[str]]:
    """Free (number, function) variable names of any syntax node."""
    nums: set[str] = set()
    funs: set[str] = set()

    def walk(n: Node, bn: frozenset[str], bf: frozenset[str]) -> None:
        match n:
            case Zero():
                pass
            case Succ(a):
                walk(a, bn, bf)
            case NumVar(name):
                if name not in bn:
                    nums.add(name)
            case Add(a, b) | Mul(a, b) | Pair(a, b) | SeqExt(a, b):
                walk(a, bn, bf)
                walk(b, bn, bf)
            case Apply(f, a):
                walk(f, bn, bf)
                walk(a, bn, bf)
            case PrefixCode(f, t):
                walk(f, bn, bf)
                walk(t, bn, bf)
            case FnVar(name):
                if name not in bf:
                    funs.add(name)
            case Lambda(v, body):
                walk(body, bn | {v}, bf)
            case ContApply(f, g):
                walk(f, bn, bf)
                walk(g, bn, bf)
            case Eq(a, b):
                walk(a, bn, bf)
                walk(b, bn, bf)
            case And(a, b) | Or(a, b) | Imp(a, b):
                walk(a, bn, bf)
                walk(b, bn, bf)
            case Not(a):
                walk(a, bn, bf)
            case ForallN(v, body) | ExistsN(v, body):
                walk(body, bn | {v}, bf)
            case ForallF(v, body) | ExistsF(v, body):
                walk(body, bn, bf | {v})
            case BForallN(v, bound, body) | BExistsN(v, bound, body):
                walk(bound, bn, bf)
                walk(body, bn | {v}, bf)
            case _:
                raise TypeError(f"unknown node: {n!r}")

    walk(node, frozenset(), frozenset())
    return frozenset(nums), frozenset(funs)


def _fresh(base: str, avoid: frozenset[str]) -> str:
    name = base
    while name in avoid:
        name += "'"
    return name


# ---------------------------------------------------------------------------
# substitution
#
# One engine serves all three public entry points.  env maps variable names
# (number names plain, function names with the @) to replacement nodes.


def _subst(node: Node, env: dict[str, Node], avoid_n: frozenset[str], avoid_f: frozenset[str]) -> Node:
    if not env:
        return node

    def rebind_num(v: str, body: Formula | Term, wrap) -> Node:
        bn, bf = free_vars(body)
        inner = {k: x for k, x in env.items() if k != v and (k in bn or k in bf)}
        # capture: the binder's own variable is free in a replacement that applies
        captured = any(v in free_vars(x)[0] for x in inner.values())
        if captured:
            v2 = _fresh(v, avoid_n | _ranging_names(inner)[0] | bn | {v})
            body = _subst(body, {v: NumVar(v2)}, frozenset({v2}), frozenset())
            v = v2
        if inner:
            body = _subst(body, inner, avoid_n | {v}, avoid_f)
        return wrap(v, body)

    def rebind_fun(v: str, body: Formula, wrap) -> Node:
        bn, bf = free_vars(body)
        inner = {k: x for k, x in env.items() if k != v and (k in bn or k in bf)}
        captured = any(v in free_vars(x)[1] for x in inner.values())
        if captured:
            v2 = _fresh(v, avoid_f | _ranging_names(inner)[1] | bf | {v})
            body = _subst(body, {v: FnVar(v2)}, frozenset(), frozenset({v2}))
            v = v2
        if inner:
            body = _subst(body, inner, avoid_n, avoid_f | {v})
        return wrap(v, body)

    match node:
        case Zero():
            return node
        case Succ(a):
            return Succ(_subst(a, env, avoid_n, avoid_f))
        case NumVar(name):
            return env.get(name, node)
        case Add(a, b):
            return Add(_subst(a, env, avoid_n, avoid_f), _subst(b, env, avoid_n, avoid_f))
        case Mul(a, b):
            return Mul(_subst(a, env, avoid_n, avoid_f), _subst(b, env, avoid_n, avoid_f))
        case Pair(a, b):
            return Pair(_subst(a, env, avoid_n, avoid_f), _subst(b, env, avoid_n, avoid_f))
        case SeqExt(a, b):
            return SeqExt(_subst(a, env, avoid_n, avoid_f), _subst(b, env, avoid_n, avoid_f))
        case Apply(f, a):
            return Apply(_subst(f, env, avoid_n, avoid_f), _subst(a, env, avoid_n, avoid_f))
        case PrefixCode(f, t):
            return PrefixCode(_subst(f, env, avoid_n, avoid_f), _subst(t, env, avoid_n, avoid_f))
        case FnVar(name):
            return env.get(name, node)
        case Lambda(v, body):
            return rebind_num(v, body, Lambda)
        case ContApply(f, g):
            return ContApply(_subst(f, env, avoid_n, avoid_f), _subst(g, env, avoid_n, avoid_f))
        case Eq(a, b):
            return Eq(_subst(a, env, avoid_n, avoid_f), _subst(b, env, avoid_n, avoid_f))
        case And(a, b):
            return And(_subst(a, env, avoid_n, avoid_f), _subst(b, env, avoid_n, avoid_f))
        case Or(a, b):
            return Or(_subst(a, env, avoid_n, avoid_f), _subst(b, env, avoid_n, avoid_f))
        case Imp(a, b):
            return Imp(_subst(a, env, avoid_n, avoid_f), _subst(b, env, avoid_n, avoid_f))
        case Not(a):
            return Not(_subst(a, env, avoid_n, avoid_f))
        case ForallN(v, body):
            return rebind_num(v, body, ForallN)
        case ExistsN(v, body):
            return rebind_num(v, body, ExistsN)
        case ForallF(v, body):
            return rebind_fun(v, body, ForallF)
        case ExistsF(v, body):
            return rebind_fun(v, body, ExistsF)
        case BForallN(v, bound, body):
            bound2 = _subst(bound, env, avoid_n, avoid_f)
            return rebind_num(v, body, lambda v2, b2: BForallN(v2, bound2, b2))
        case BExistsN(v, bound, body):
            bound2 = _subst(bound, env, avoid_n, avoid_f)
            return rebind_num(v, body, lambda v2, b2: BExistsN(v2, bound2, b2))
        case _:
            raise TypeError(f"unknown node: {node!r}")


def _ranging_names(env: dict[str, Node]) -> tuple[frozenset[str], frozenset[str]]:
    ns: set[str] = set()
    fs: set[str] = set()
    for x in env.values():
        a, b = free_vars(x)
        ns |= a
        fs |= b
    return frozenset(ns), frozenset(fs)


def subst_num(node: Node, var: str, replacement: Term) -> Node:
    """Substitute a term for a free number variable, avoiding capture."""
    check_num_name(var)
    an, af = free_vars(replacement)
    return _subst(node, {var: replacement}, an, af)


def subst_fun(node: Node, var: str, replacement: Functor) -> Node:
    """Substitute a functor for a free function variable, avoiding capture."""
    check_fun_name(var)
    an, af = free_vars(replacement)
    return _subst(node, {var: replacement}, an, af)


def subst_term(node: Node, mapping: dict[str, Node]) -> Node:
    """Simultaneous substitution; keys are variable names of either sort."""
    for k, v in mapping.items():
        if k.startswith("@"):
            check_fun_name(k)
            if not isinstance(v, Functor):
                raise SortError(f"{k} must map to a functor")
        else:
            check_num_name(k)
            if not isinstance(v, Term):
                raise SortError(f"{k} must map to a term")
    an, af = _ranging_names(mapping)
    return _subst(node, dict(mapping), an, af)


# ---------------------------------------------------------------------------
# alpha equivalence and canonical renaming


def alpha_eq(a: Node, b: Node) -> bool:
    """Structural equality up to renaming of bound variables."""

    def go(x: Node, y: Node, ex: dict[str, str], ey: dict[str, str], d: int) -> bool:
        if type(x) is not type(y):
            return False
        match x, y:
            case Zero(), Zero():
                return True
            case Succ(a1), Succ(a2):
                return go(a1, a2, ex, ey, d)
            case NumVar(n1), NumVar(n2):
                return ex.get(n1, n1) == ey.get(n2, n2)
            case FnVar(n1), FnVar(n2):
                return ex.get(n1, n1) == ey.get(n2, n2)
            case (Add(a1, b1), Add(a2, b2)) | (Mul(a1, b1), Mul(a2, b2)) | (
                Pair(a1, b1),
                Pair(a2, b2),
            ) | (SeqExt(a1, b1), SeqExt(a2, b2)) | (Eq(a1, b1), Eq(a2, b2)) | (
                And(a1, b1),
                And(a2, b2),
            ) | (Or(a1, b1), Or(a2, b2)) | (Imp(a1, b1), Imp(a2, b2)):
                return go(a1, a2, ex, ey, d) and go(b1, b2, ex, ey, d)
            case (Apply(f1, a1), Apply(f2, a2)) | (PrefixCode(f1, a1), PrefixCode(f2, a2)):
                return go(f1, f2, ex, ey, d) and go(a1, a2, ex, ey, d)
            case ContApply(f1, g1), ContApply(f2, g2):
                return go(f1, f2, ex, ey, d) and go(g1, g2, ex, ey, d)
            case Not(a1), Not(a2):
                return go(a1, a2, ex, ey, d)
            case (Lambda(v1, b1), Lambda(v2, b2)) | (ForallN(v1, b1), ForallN(v2, b2)) | (
                ExistsN(v1, b1),
                ExistsN(v2, b2),
            ) | (ForallF(v1, b1), ForallF(v2, b2)) | (ExistsF(v1, b1), ExistsF(v2, b2)):
                tag = f"#{d}"
                return go(b1, b2, {**ex, v1: tag}, {**ey, v2: tag}, d + 1)
            case (BForallN(v1, t1, b1), BForallN(v2, t2, b2)) | (
                BExistsN(v1, t1, b1),
                BExistsN(v2, t2, b2),
            ):
                if not go(t1, t2, ex, ey, d):
                    return False
                tag = f"#{d}"
                return go(b1, b2, {**ex, v1: tag}, {**ey, v2: tag}, d + 1)
            case _:
                return False

    return go(a, b, {}, {}, 0)


def canon(node: Node) -> Node:
    """Rename bound variables to a fixed scheme so alpha-equal trees collide.

    Bound number variables become x0, x1, ... in traversal order; bound
    function variables become @f0, @f1, ...  Free variables are untouched.
    """
    counter = [0]

    def go(n: Node, en: dict[str, str], ef: dict[str, str]) -> Node:
        def fresh_n() -> str:
            counter[0] += 1
            return f"x{counter[0] - 1}"

        def fresh_f() -> str:
            counter[0] += 1
            return f"@f{counter[0] - 1}"

        match n:
            case Zero():
                return n
            case Succ(a):
                return Succ(go(a, en, ef))
            case NumVar(name):
                return NumVar(en.get(name, name))
            case Add(a, b):
                return Add(go(a, en, ef), go(b, en, ef))
            case Mul(a, b):
                return Mul(go(a, en, ef), go(b, en, ef))
            case Pair(a, b):
                return Pair(go(a, en, ef), go(b, en, ef))
            case SeqExt(a, b):
                return SeqExt(go(a, en, ef), go(b, en, ef))
            case Apply(f, a):
                return Apply(go(f, en, ef), go(a, en, ef))
            case PrefixCode(f, t):
                return PrefixCode(go(f, en, ef), go(t, en, ef))
            case FnVar(name):
                return FnVar(ef.get(name, name))
            case Lambda(v, body):
                v2 = fresh_n()
                return Lambda(v2, go(body, {**en, v: v2}, ef))
            case ContApply(f, g):
                return ContApply(go(f, en, ef), go(g, en, ef))
            case Eq(a, b):
                return Eq(go(a, en, ef), go(b, en, ef))
            case And(a, b):
                return And(go(a, en, ef), go(b, en, ef))
            case Or(a, b):
                return Or(go(a, en, ef), go(b, en, ef))
            case Imp(a, b):
                return Imp(go(a, en, ef), go(b, en, ef))
            case Not(a):
                return Not(go(a, en, ef))
            case ForallN(v, body):
                v2 = fresh_n()
                return ForallN(v2, go(body, {**en, v: v2}, ef))
            case ExistsN(v, body):
                v2 = fresh_n()
                return ExistsN(v2, go(body, {**en, v: v2}, ef))
            case ForallF(v, body):
                v2 = fresh_f()
                return ForallF(v2, go(body, {**en, v: v2}, ef))
            case ExistsF(v, body):
                v2 = fresh_f()
                return ExistsF(v2, go(body, {**en, v: v2}, ef))
            case BForallN(v, bound, body):
                bound2 = go(bound, en, ef)
                v2 = fresh_n()
                return BForallN(v2, bound2, go(body, {**en, v: v2}, ef))
            case BExistsN(v, bound, body):
                bound2 = go(bound, en, ef)
                v2 = fresh_n()
                return BExistsN(v2, bound2, go(body, {**en, v: v2}, ef))
            case _:
                raise TypeError(f"unknown node: {n!r}")

    return go(node, {}, {})


# ---------------------------------------------------------------------------
# beta reduction of functor applications


def lambda_reduce(node: Node) -> Node:
    """Contract every (lam x. t)(s) redex, bottom up, until none remain.

    Functors are first order (bodies are number terms), so this terminates.
    """

    def go(n: Node) -> Node:
        match n:
            case Zero() | NumVar(_) | FnVar(_):
                return n
            case Succ(a):
                return Succ(go(a))
            case Add(a, b):
                return Add(go(a), go(b))
            case Mul(a, b):
                return Mul(go(a), go(b))
            case Pair(a, b):
                return Pair(go(a), go(b))
            case SeqExt(a, b):
                return SeqExt(go(a), go(b))
            case Apply(f, a):
                f2, a2 = go(f), go(a)
                if isinstance(f2, Lambda):
                    return go(subst_num(f2.body, f2.var, a2))
                return Apply(f2, a2)
            case PrefixCode(f, t):
                return PrefixCode(go(f), go(t))
            case Lambda(v, body):
                return Lambda(v, go(body))
            case ContApply(f, g):
                return ContApply(go(f), go(g))
            case Eq(a, b):
                return Eq(go(a), go(b))
            case And(a, b):
                return And(go(a), go(b))
            case Or(a, b):
                return Or(go(a), go(b))
            case Imp(a, b):
                return Imp(go(a), go(b))
            case Not(a):
                return Not(go(a))
            case ForallN(v, body):
                return ForallN(v, go(body))
            case ExistsN(v, body):
                return ExistsN(v, go(body))
            case ForallF(v, body):
                return ForallF(v, go(body))
            case ExistsF(v, body):
                return ExistsF(v, go(body))
            case BForallN(v, bound, body):
                return BForallN(v, go(bound), go(body))
            case BExistsN(v, bound, body):
                return BExistsN(v, go(bound), go(body))
            case _:
                raise TypeError(f"unknown node: {n!r}")

    return go(node)
