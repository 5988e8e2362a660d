"""Continuous application on Baire space and function realizability.

k2_apply is the partial application of one element to another: feed
alpha ever longer prefixes of beta (tagged with the argument n) until it
answers m+1, and return m.  On top of it sit a formula transform
producing "eps realizes A" in the object language, canned realizers for
the Markov and double-negation-shift schemas, and a fuel-bounded
checker for a decidable fragment.

Coding conventions, fixed once: a number-headed pack (disjunction tag,
existential witness) puts the head at index 0 and the tail at shifted
indices n+1; a function pack (conjunction, function existential) keeps
component i at indices 2^i * 3^y; the numeral n embeds as the constant
element n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from . import seqcode
from .baire import BaireElement, FiniteSupport, FuelExhausted, Program, _Fn
from .errors import BairelabError
from .machine import OracleProgram, assemble, oracle_fn
from .schemas import FreshnessError
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
    Not,
    NumVar,
    Or,
    Pair,
    PrefixCode,
    SeqExt,
    Succ,
    Term,
    Zero,
    check_fun_name,
    free_vars,
    numeral,
    subst_fun,
    subst_num,
)


class FragmentError(BairelabError):
    """The formula (or its environment) is outside the checkable fragment."""


# --- the application of Kleene's second algebra -----------------------------


def k2_apply(alpha: object, beta: object, n: int, fuel: int) -> Optional[int]:
    """First answer of alpha on n-tagged prefixes of beta, minus one.

    Returns m iff alpha(<n> ++ beta-prefix(k)) = m+1 for some k <= fuel
    with zeros at every shorter prefix; None when fuel runs out first.
    """
    info = k2_apply_info(alpha, beta, n, fuel)
    return None if info is None else info[0]


def k2_apply_info(
    alpha: object, beta: object, n: int, fuel: int
) -> Optional[tuple[int, int]]:
    """(result, prefix length consumed), or None within fuel.

    The second component is the continuity modulus of the application:
    beta only ever matters on indices below it.
    """
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    af, bf = oracle_fn(alpha), oracle_fn(beta)
    code = seqcode.encode([n], max_bits=None)
    for k in range(fuel + 1):
        v = af(code)
        if v > 0:
            return v - 1, k
        code = seqcode.extend(code, bf(k), max_bits=None)
    return None


def apply_element(alpha: object, beta: object, fuel: int) -> BaireElement:
    """alpha applied to beta as a (fuel-bounded) element of Baire space."""

    def at(n: int) -> int:
        value = k2_apply(alpha, beta, n, fuel)
        if value is None:
            raise FuelExhausted(f"application undefined at {n} within fuel {fuel}")
        return value

    return _Fn(at)


def prefix_reader(k: int, fn) -> BaireElement:
    """An element that answers once the argument prefix holds k values.

    Models a continuous functional with modulus exactly k: on the code
    of [n, b0, ..., b_{j-1}] it returns 0 while j < k, and
    fn(n, (b0..b_{k-1})) + 1 afterwards.
    """

    def at(s: int) -> int:
        entries = seqcode.decode(s)
        if entries is None or len(entries) < 1 + k:
            return 0
        return fn(entries[0], tuple(entries[1 : 1 + k])) + 1

    return _Fn(at)


# --- evaluation of closed terms over an environment -------------------------

Env = dict[str, object]  # naturals, BaireElements, or range lists


def _env_num(env: Env, name: str) -> int:
    value = env.get(name)
    if not isinstance(value, int):
        raise FragmentError(f"number variable {name} needs a natural in env")
    return value


def _env_fun(env: Env, name: str) -> BaireElement:
    value = env.get(name)
    if not isinstance(value, BaireElement):
        raise FragmentError(f"function variable {name} needs an element in env")
    return value


def eval_term(t: Term, env: Env, fuel: int) -> int:
    match t:
        case Zero():
            return 0
        case Succ(u):
            return eval_term(u, env, fuel) + 1
        case NumVar(name):
            return _env_num(env, name)
        case Add(a, b):
            return eval_term(a, env, fuel) + eval_term(b, env, fuel)
        case Mul(a, b):
            return eval_term(a, env, fuel) * eval_term(b, env, fuel)
        case Pair(a, b):
            return 2 ** eval_term(a, env, fuel) * 3 ** eval_term(b, env, fuel)
        case SeqExt(s, n):
            return seqcode.extend(
                eval_term(s, env, fuel), eval_term(n, env, fuel), max_bits=None
            )
        case PrefixCode(f, x):
            el = eval_functor(f, env, fuel)
            return seqcode.bar(el.at, eval_term(x, env, fuel), max_bits=None)
        case Apply(f, x):
            return eval_functor(f, env, fuel).at(eval_term(x, env, fuel))
    raise TypeError(f"not a term: {t!r}")


def eval_functor(f: Functor, env: Env, fuel: int) -> BaireElement:
    match f:
        case FnVar(name):
            return _env_fun(env, name)
        case Lambda(var, body):
            return _Fn(lambda n: eval_term(body, {**env, var: n}, fuel))
        case ContApply(a, b):
            return apply_element(
                eval_functor(a, env, fuel), eval_functor(b, env, fuel), fuel
            )
    raise TypeError(f"not a functor: {f!r}")


# --- three-valued truth on the checkable fragment ---------------------------

# None means "not settled within fuel": unbounded exists can only come
# back True or unsettled, unbounded forall only False or unsettled.


def _truth(f: Formula, env: Env, fuel: int) -> Optional[bool]:
    match f:
        case Eq(a, b):
            return eval_term(a, env, fuel) == eval_term(b, env, fuel)
        case And(a, b):
            return _kleene_and(_truth(a, env, fuel), _truth(b, env, fuel))
        case Or(a, b):
            ta, tb = _truth(a, env, fuel), _truth(b, env, fuel)
            return _kleene_not(_kleene_and(_kleene_not(ta), _kleene_not(tb)))
        case Imp(a, b):
            return _kleene_not(_kleene_and(_truth(a, env, fuel), _kleene_not(_truth(b, env, fuel))))
        case Not(a):
            return _kleene_not(_truth(a, env, fuel))
        case ForallN(var, body):
            values = _num_range(env, var)
            if values is None:
                return _search(body, var, env, fuel, expect=False)
            return _sweep(body, var, values, env, fuel, universal=True)
        case ExistsN(var, body):
            values = _num_range(env, var)
            if values is None:
                return _search(body, var, env, fuel, expect=True)
            return _sweep(body, var, values, env, fuel, universal=False)
        case BForallN(var, bound, body):
            values = range(eval_term(bound, env, fuel))
            return _sweep(body, var, values, env, fuel, universal=True)
        case BExistsN(var, bound, body):
            values = range(eval_term(bound, env, fuel))
            return _sweep(body, var, values, env, fuel, universal=False)
        case ForallF(var, body):
            return _sweep(body, var, _fun_range(env, var), env, fuel, universal=True)
        case ExistsF(var, body):
            return _sweep(body, var, _fun_range(env, var), env, fuel, universal=False)
    raise TypeError(f"not a formula: {f!r}")


def _kleene_and(a: Optional[bool], b: Optional[bool]) -> Optional[bool]:
    if a is False or b is False:
        return False
    if a is True and b is True:
        return True
    return None


def _kleene_not(a: Optional[bool]) -> Optional[bool]:
    return None if a is None else not a


def _num_range(env: Env, var: str):
    value = env.get(var)
    if isinstance(value, (list, tuple)):
        return value
    return None


def _fun_range(env: Env, var: str) -> list:
    value = env.get(var)
    if isinstance(value, (list, tuple)):
        return list(value)
    if isinstance(value, BaireElement):
        return [value]
    raise FragmentError(f"function quantifier over {var} needs a finite range in env")


def _search(
    body: Formula, var: str, env: Env, fuel: int, expect: bool
) -> Optional[bool]:
    # Unbounded quantifier: scan 0..fuel for a deciding instance.  A hit
    # settles it; exhausting fuel settles nothing.
    for n in range(fuel + 1):
        if _truth(body, {**env, var: n}, fuel) is expect:
            return expect
    return None


def _sweep(
    body: Formula, var: str, values, env: Env, fuel: int, universal: bool
) -> Optional[bool]:
    unsettled = False
    for v in values:
        t = _truth(body, {**env, var: v}, fuel)
        if t is None:
            unsettled = True
        elif t is not universal:
            return not universal
    return None if unsettled else universal


# --- the realizability checker ----------------------------------------------


class Status(enum.Enum):
    REALIZED = "realized"
    NOT_REALIZED = "not-realized"
    FUEL_EXHAUSTED = "fuel-exhausted"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Optional[int] = None
    note: str = ""


def _pack_head(head: int, tail: BaireElement) -> BaireElement:
    return _Fn(lambda n: head if n == 0 else tail.at(n - 1))


def _tail_of(r: BaireElement) -> BaireElement:
    return _Fn(lambda n: r.at(n + 1))


# Probing a pair component at y means probing the pack at 2^i * 3^y,
# a number of about 1.6*y bits.  Applications feed components
# prefix-code-sized y, so an unguarded 3**y would explode long before
# the element answered; past the guard the probe counts as running out
# of fuel.
_COMPONENT_INDEX_BITS = 4096


def _component(r: BaireElement, i: int) -> BaireElement:
    def at(y: int) -> int:
        if 2 * y > _COMPONENT_INDEX_BITS:
            raise FuelExhausted(f"pair component probed at oversized index {y}")
        return r.at(2**i * 3**y)

    return _Fn(at)


def _pack_pair(a: BaireElement, b: BaireElement) -> BaireElement:
    def at(n: int) -> int:
        if n == 0:
            return 0
        residue, y = n, 0
        while residue % 3 == 0:
            residue //= 3
            y += 1
        if residue == 1:
            return a.at(y)
        if residue == 2:
            return b.at(y)
        return 0

    return _Fn(at)


_ZERO_ELEMENT = FiniteSupport((), 0)


def _constant(n: int) -> BaireElement:
    return FiniteSupport((), n)


def _canonical_realizer(f: Formula, env: Env, fuel: int) -> BaireElement:
    """Some realizer of f, assuming f is true over env.

    Negative formulas carry no information, so the zero element does;
    packs are built recursively for the positive connectives.  This is
    what drives the conclusion side of an implication check.
    """
    match f:
        case Eq(_, _) | Not(_) | Imp(_, _) | ForallN(_, _) | ForallF(_, _):
            return _ZERO_ELEMENT
        case BForallN(_, _, _):
            return _ZERO_ELEMENT
        case And(a, b):
            return _pack_pair(
                _canonical_realizer(a, env, fuel), _canonical_realizer(b, env, fuel)
            )
        case Or(a, b):
            if _truth(a, env, fuel) is True:
                return _pack_head(0, _canonical_realizer(a, env, fuel))
            return _pack_head(1, _canonical_realizer(b, env, fuel))
        case ExistsN(var, body) | BExistsN(var, _, body):
            values = _num_range(env, var)
            candidates = values if values is not None else range(fuel + 1)
            for w in candidates:
                if _truth(body, {**env, var: w}, fuel) is True:
                    return _pack_head(
                        w, _canonical_realizer(body, {**env, var: w}, fuel)
                    )
            raise FragmentError("no witness found for a formula assumed true")
        case ExistsF(_, _):
            raise FragmentError("cannot synthesise a function witness")
    raise TypeError(f"not a formula: {f!r}")


def check_realizes(
    r: BaireElement, f: Formula, env: Optional[Env] = None, fuel: int = 1000
) -> Verdict:
    """Fuel-bounded verdict on "r realizes f" over a finite environment.

    env maps free number variables to naturals, free function variables
    to elements, and quantified variables to finite ranges (a list, or a
    single element standing for a one-point range).  REALIZED and
    NOT_REALIZED are definitive; FUEL_EXHAUSTED is not.
    """
    return _checked(r, f, dict(env or {}), fuel)


def _checked(r: BaireElement, f: Formula, env: Env, fuel: int) -> Verdict:
    # exhaustion inside one branch must stay a mergeable verdict: a
    # definitive failure elsewhere still decides the whole formula
    try:
        return _check(r, f, env, fuel)
    except FuelExhausted as exc:
        return Verdict(Status.FUEL_EXHAUSTED, note=str(exc))


def _check(r: BaireElement, f: Formula, env: Env, fuel: int) -> Verdict:
    match f:
        case Eq(_, _):
            ok = _truth(f, env, fuel)
            return Verdict(Status.REALIZED if ok else Status.NOT_REALIZED)
        case And(a, b):
            va = _checked(_component(r, 0), a, env, fuel)
            vb = _checked(_component(r, 1), b, env, fuel)
            return _merge([va, vb])
        case Or(a, b):
            tag = r.at(0)
            side = a if tag == 0 else b
            inner = _check(_tail_of(r), side, env, fuel)
            return Verdict(inner.status, inner.witness, f"tag {tag}; " + inner.note)
        case Imp(a, b):
            ta = _truth(a, env, fuel)
            if ta is False:
                return Verdict(Status.REALIZED, note="hypothesis refuted")
            if ta is None:
                return Verdict(
                    Status.FUEL_EXHAUSTED, note="hypothesis not settled within fuel"
                )
            argument = _canonical_realizer(a, env, fuel)
            return _check(apply_element(r, argument, fuel), b, env, fuel)
        case Not(a):
            ta = _truth(a, env, fuel)
            if ta is None:
                return Verdict(
                    Status.FUEL_EXHAUSTED, note="negated matrix not settled within fuel"
                )
            return Verdict(Status.REALIZED if ta is False else Status.NOT_REALIZED)
        case ExistsN(var, body):
            w = r.at(0)
            inner = _check(_tail_of(r), body, {**env, var: w}, fuel)
            if inner.status is Status.REALIZED:
                return Verdict(Status.REALIZED, witness=w)
            return Verdict(inner.status, note=f"at witness {w}; " + inner.note)
        case BExistsN(var, bound, body):
            w = r.at(0)
            if w >= eval_term(bound, env, fuel):
                return Verdict(Status.NOT_REALIZED, note=f"witness {w} out of bound")
            inner = _check(_tail_of(r), body, {**env, var: w}, fuel)
            if inner.status is Status.REALIZED:
                return Verdict(Status.REALIZED, witness=w)
            return Verdict(inner.status, note=f"at witness {w}; " + inner.note)
        case ForallN(var, body):
            values = _num_range(env, var)
            if values is None:
                raise FragmentError(
                    f"universal number quantifier over {var} needs a range in env"
                )
            return _merge(
                [
                    _checked(
                        apply_element(r, _constant(v), fuel),
                        body,
                        {**env, var: v},
                        fuel,
                    )
                    for v in values
                ]
            )
        case BForallN(var, bound, body):
            return _merge(
                [
                    _checked(
                        apply_element(r, _constant(v), fuel),
                        body,
                        {**env, var: v},
                        fuel,
                    )
                    for v in range(eval_term(bound, env, fuel))
                ]
            )
        case ForallF(var, body):
            return _merge(
                [
                    _checked(apply_element(r, e, fuel), body, {**env, var: e}, fuel)
                    for e in _fun_range(env, var)
                ]
            )
        case ExistsF(var, body):
            witness = _component(r, 0)
            inner = _check(_component(r, 1), body, {**env, var: witness}, fuel)
            return Verdict(inner.status, note="function witness; " + inner.note)
    raise TypeError(f"not a formula: {f!r}")


def _merge(verdicts: list[Verdict]) -> Verdict:
    for v in verdicts:
        if v.status is Status.NOT_REALIZED:
            return v
    for v in verdicts:
        if v.status is Status.FUEL_EXHAUSTED:
            return v
    witnesses = [v.witness for v in verdicts if v.witness is not None]
    witness = witnesses[0] if len(witnesses) == 1 else None
    return Verdict(Status.REALIZED, witness=witness)


# --- the formula transform ---------------------------------------------------


def realizes_transform(f: Formula, eps: str) -> Formula:
    """The object-language formula "eps realizes f".

    eps names a function variable that must not occur free in f.
    """
    check_fun_name(eps)
    _, funs = free_vars(f)
    if eps in funs:
        raise FreshnessError(f"{eps} occurs free in the formula")
    return _tr(FnVar(eps), f, funs | {eps})


def _fresh(base: str, avoid: frozenset[str]) -> str:
    name = base
    while name in avoid:
        name += "'"
    return name


def _proj(e: Functor, i: int) -> Functor:
    # the binder must dodge number variables free in e (numeral
    # embeddings smuggle them in)
    y = _fresh("y", free_vars(e)[0])
    return Lambda(y, Apply(e, Pair(numeral(i), NumVar(y))))


def _tail_functor(e: Functor) -> Functor:
    n = _fresh("n", free_vars(e)[0])
    return Lambda(n, Apply(e, Succ(NumVar(n))))


def _head_term(e: Functor) -> Term:
    return Apply(e, Zero())


def _embed_num(e: Functor, var: str) -> Functor:
    k = _fresh("k", frozenset({var}))
    return ContApply(e, Lambda(k, NumVar(var)))


def _rebind_num(var: str, body: Formula, e: Functor) -> tuple[str, Formula]:
    nums, _ = free_vars(e)
    if var in nums:
        fresh = _fresh(var, nums | free_vars(body)[0])
        return fresh, subst_num(body, var, NumVar(fresh))
    return var, body


def _rebind_fun(var: str, body: Formula, e: Functor) -> tuple[str, Formula]:
    _, funs = free_vars(e)
    if var in funs:
        fresh = _fresh(var, funs | free_vars(body)[1])
        return fresh, subst_fun(body, var, FnVar(fresh))
    return var, body


_FALSE_ATOM = Eq(Zero(), Succ(Zero()))


def _tr(e: Functor, f: Formula, avoid: frozenset[str]) -> Formula:
    match f:
        case Eq(_, _):
            return f
        case And(a, b):
            return And(
                _tr(_proj(e, 0), a, avoid), _tr(_proj(e, 1), b, avoid)
            )
        case Or(a, b):
            tag = Eq(_head_term(e), Zero())
            tail = _tail_functor(e)
            return Or(
                And(tag, _tr(tail, a, avoid)),
                And(Not(tag), _tr(tail, b, avoid)),
            )
        case Imp(a, b):
            d = _fresh("@d", avoid | free_vars(f)[1])
            return ForallF(
                d,
                Imp(
                    _tr(FnVar(d), a, avoid | {d}),
                    _tr(ContApply(e, FnVar(d)), b, avoid | {d}),
                ),
            )
        case Not(a):
            d = _fresh("@d", avoid | free_vars(f)[1])
            return ForallF(d, Imp(_tr(FnVar(d), a, avoid | {d}), _FALSE_ATOM))
        case ForallN(var, body):
            var, body = _rebind_num(var, body, e)
            return ForallN(var, _tr(_embed_num(e, var), body, avoid))
        case ExistsN(var, body):
            translated = _tr(_tail_functor(e), body, avoid)
            return subst_num(translated, var, _head_term(e))
        case BForallN(var, bound, body):
            var, body = _rebind_num(var, body, e)
            return BForallN(var, bound, _tr(_embed_num(e, var), body, avoid))
        case BExistsN(var, bound, body):
            var, body = _rebind_num(var, body, e)
            pinned = Eq(NumVar(var), _head_term(e))
            return BExistsN(
                var, bound, And(pinned, _tr(_tail_functor(e), body, avoid))
            )
        case ForallF(var, body):
            var, body = _rebind_fun(var, body, e)
            return ForallF(var, _tr(ContApply(e, FnVar(var)), body, avoid | {var}))
        case ExistsF(var, body):
            translated = _tr(_proj(e, 1), body, avoid)
            return subst_fun(translated, var, _proj(e, 0))
    raise TypeError(f"not a formula: {f!r}")


# --- canned realizers ---------------------------------------------------------

# Witness search for the Markov schema, as a machine.  Under the
# application convention the realizer sees codes [m, g0, g1, ...] where
# the gi are prefix values of its argument; it scans them for the first
# zero w and answers w+2 (so the applied element's value is w+1, and the
# outer application headed by 0 lands on witness w).  While no zero has
# arrived it answers 0, asking for a longer prefix.
_MP_SEARCH = """
        QRY 6 1        # r1 := lh+1 (r6 stays 0)
        DEC 1
        DEC 1          # r1 := number of prefix values
        INC 2
        INC 2          # r2 := slot of first prefix value
        INC 4
        INC 4          # r4 := candidate answer w+2, starting at w=0
scan:   JZ 1 more
        QRY 2 3
        JZ 3 found
        DEC 1
        INC 2
        INC 4
        JZ 6 scan      # unconditional
found:  HALT 4
more:   HALT 5        # r5 == 0: no zero yet, ask for a longer prefix
"""


def mp_realizer(fuel: int = 100_000) -> Program:
    """Realizer for Markov's principle: search the hypothesis function
    for its least zero and emit it as the existential witness."""
    return Program(OracleProgram(0, assemble(_MP_SEARCH)), fuel)


def dns1_realizer() -> FiniteSupport:
    """Realizer for the double-negation shift: negative conclusions carry
    no information, so the zero element suffices."""
    return _ZERO_ELEMENT
