"""Random and exhaustive generators for syntax trees.

Two families live here: hypothesis strategies for property tests, and plain
seeded `random.Random` generators used where a frozen seed must reproduce
the same stream forever (the acceptance checks).  A dynamic programming
enumerator for small propositional formulas rounds things out.
"""

from __future__ import annotations

import random
from collections.abc import Iterator, Sequence

from hypothesis import strategies as st

from .prop import PAnd, PAtom, PImp, PNot, POr, PropFormula
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
    numeral,
)

NUM_POOL = ("x", "y", "z", "u", "v", "w")
FUN_POOL = ("@a", "@b", "@g")


# ---------------------------------------------------------------------------
# hypothesis strategies


def _functors(ts: st.SearchStrategy[Term]) -> st.SearchStrategy[Functor]:
    fv = st.sampled_from(FUN_POOL).map(FnVar)
    lam = st.builds(Lambda, st.sampled_from(NUM_POOL), ts)
    shallow = st.one_of(fv, lam)
    return st.one_of(fv, lam, st.builds(ContApply, shallow, shallow))


def terms() -> st.SearchStrategy[Term]:
    base = st.one_of(
        st.integers(0, 9).map(numeral),
        st.sampled_from(NUM_POOL).map(NumVar),
    )

    def extend(children: st.SearchStrategy[Term]) -> st.SearchStrategy[Term]:
        fs = _functors(children)
        return st.one_of(
            children.map(Succ),
            st.builds(Add, children, children),
            st.builds(Mul, children, children),
            st.builds(Pair, children, children),
            st.builds(SeqExt, children, children),
            st.builds(Apply, fs, children),
            st.builds(PrefixCode, fs, children),
        )

    return st.recursive(base, extend, max_leaves=12)


def formulas() -> st.SearchStrategy[Formula]:
    ts = terms()
    atoms = st.builds(Eq, ts, ts)

    def extend(children: st.SearchStrategy[Formula]) -> st.SearchStrategy[Formula]:
        nv = st.sampled_from(NUM_POOL)
        fv = st.sampled_from(FUN_POOL)
        return st.one_of(
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Imp, children, children),
            children.map(Not),
            st.builds(ForallN, nv, children),
            st.builds(ExistsN, nv, children),
            st.builds(ForallF, fv, children),
            st.builds(ExistsF, fv, children),
            st.builds(BForallN, nv, ts, children),
            st.builds(BExistsN, nv, ts, children),
        )

    return st.recursive(atoms, extend, max_leaves=10)


# ---------------------------------------------------------------------------
# seeded generators (deterministic across runs for a fixed seed)


def random_term(rng: random.Random, depth: int, num_vars: Sequence[str] = NUM_POOL[:3]) -> Term:
    if depth <= 0:
        pick = rng.randrange(3)
        if pick == 0:
            return numeral(rng.randrange(4))
        return NumVar(rng.choice(list(num_vars)))
    match rng.randrange(6):
        case 0:
            return Succ(random_term(rng, depth - 1, num_vars))
        case 1:
            return Add(random_term(rng, depth - 1, num_vars), random_term(rng, depth - 1, num_vars))
        case 2:
            return Mul(random_term(rng, depth - 1, num_vars), random_term(rng, depth - 1, num_vars))
        case 3:
            return Pair(random_term(rng, depth - 1, num_vars), random_term(rng, depth - 1, num_vars))
        case 4:
            return Apply(random_functor(rng, depth - 1, num_vars), random_term(rng, depth - 1, num_vars))
        case _:
            return random_term(rng, 0, num_vars)


def random_functor(rng: random.Random, depth: int, num_vars: Sequence[str] = NUM_POOL[:3]) -> Functor:
    if depth <= 0 or rng.random() < 0.5:
        return FnVar(rng.choice(list(FUN_POOL)))
    v = rng.choice(list(num_vars))
    return Lambda(v, random_term(rng, depth - 1, tuple(num_vars) + (v,)))


def random_formula(
    rng: random.Random,
    depth: int,
    num_vars: Sequence[str] = NUM_POOL[:3],
    fun_vars: Sequence[str] = FUN_POOL[:2],
    allow_fun_quant: bool = True,
) -> Formula:
    if depth <= 0:
        return Eq(random_term(rng, 1, num_vars), random_term(rng, 1, num_vars))
    top = rng.randrange(10 if allow_fun_quant else 8)
    match top:
        case 0:
            return And(
                random_formula(rng, depth - 1, num_vars, fun_vars, allow_fun_quant),
                random_formula(rng, depth - 1, num_vars, fun_vars, allow_fun_quant),
            )
        case 1:
            return Or(
                random_formula(rng, depth - 1, num_vars, fun_vars, allow_fun_quant),
                random_formula(rng, depth - 1, num_vars, fun_vars, allow_fun_quant),
            )
        case 2:
            return Imp(
                random_formula(rng, depth - 1, num_vars, fun_vars, allow_fun_quant),
                random_formula(rng, depth - 1, num_vars, fun_vars, allow_fun_quant),
            )
        case 3:
            return Not(random_formula(rng, depth - 1, num_vars, fun_vars, allow_fun_quant))
        case 4 | 5:
            v = rng.choice(list(NUM_POOL))
            body = random_formula(rng, depth - 1, tuple(num_vars) + (v,), fun_vars, allow_fun_quant)
            return ForallN(v, body) if top == 4 else ExistsN(v, body)
        case 6:
            v = rng.choice(list(NUM_POOL))
            bound = random_term(rng, 1, num_vars)
            body = random_formula(rng, depth - 1, tuple(num_vars) + (v,), fun_vars, allow_fun_quant)
            return BForallN(v, bound, body) if rng.random() < 0.5 else BExistsN(v, bound, body)
        case 7:
            return Eq(random_term(rng, depth - 1, num_vars), random_term(rng, depth - 1, num_vars))
        case _:
            v = rng.choice(list(FUN_POOL))
            body = random_formula(rng, depth - 1, num_vars, tuple(fun_vars) + (v,), allow_fun_quant)
            return ForallF(v, body) if top == 8 else ExistsF(v, body)


def random_qf_formula(
    rng: random.Random, depth: int, num_vars: Sequence[str] = NUM_POOL[:3]
) -> Formula:
    """Quantifier-free formula over equations; good as a decidable matrix."""
    if depth <= 0:
        return Eq(random_term(rng, 1, num_vars), random_term(rng, 1, num_vars))
    match rng.randrange(5):
        case 0:
            return And(random_qf_formula(rng, depth - 1, num_vars), random_qf_formula(rng, depth - 1, num_vars))
        case 1:
            return Or(random_qf_formula(rng, depth - 1, num_vars), random_qf_formula(rng, depth - 1, num_vars))
        case 2:
            return Imp(random_qf_formula(rng, depth - 1, num_vars), random_qf_formula(rng, depth - 1, num_vars))
        case 3:
            return Not(random_qf_formula(rng, depth - 1, num_vars))
        case _:
            return Eq(random_term(rng, 1, num_vars), random_term(rng, 1, num_vars))


def random_prop(rng: random.Random, depth: int, atoms: Sequence[str] = ("p", "q", "r")) -> PropFormula:
    if depth <= 0:
        return PAtom(rng.choice(list(atoms)))
    match rng.randrange(5):
        case 0:
            return PAnd(random_prop(rng, depth - 1, atoms), random_prop(rng, depth - 1, atoms))
        case 1:
            return POr(random_prop(rng, depth - 1, atoms), random_prop(rng, depth - 1, atoms))
        case 2:
            return PImp(random_prop(rng, depth - 1, atoms), random_prop(rng, depth - 1, atoms))
        case 3:
            return PNot(random_prop(rng, depth - 1, atoms))
        case _:
            return PAtom(rng.choice(list(atoms)))


# ---------------------------------------------------------------------------
# exhaustive propositional enumeration


def enumerate_prop_formulas(
    max_leaves: int = 3,
    max_connectives: int = 7,
    atoms: Sequence[str] = ("p", "q", "r"),
) -> Iterator[PropFormula]:
    """Every formula with at most `max_leaves` atom occurrences and at most
    `max_connectives` connectives, atoms drawn from the given alphabet.

    Size is counted on the tree: each atom occurrence is a leaf, each of
    ~ & | -> is one connective.  Tables are built by dynamic programming
    on (leaves, connectives).
    """
    leaf_row = tuple(PAtom(a) for a in atoms)
    # table[l][c] = tuple of formulas with exactly l leaves, c connectives
    table: dict[tuple[int, int], tuple[PropFormula, ...]] = {}
    for l in range(1, max_leaves + 1):
        for c in range(0, max_connectives + 1):
            cell: list[PropFormula] = []
            if l == 1 and c == 0:
                cell.extend(leaf_row)
            if c >= 1:
                cell.extend(PNot(f) for f in table.get((l, c - 1), ()))
                for l1 in range(1, l):
                    for c1 in range(0, c):
                        left = table.get((l1, c1), ())
                        right = table.get((l - l1, c - 1 - c1), ())
                        for a in left:
                            for b in right:
                                cell.append(PAnd(a, b))
                                cell.append(POr(a, b))
                                cell.append(PImp(a, b))
            table[(l, c)] = tuple(cell)
    for l in range(1, max_leaves + 1):
        for c in range(0, max_connectives + 1):
            yield from table[(l, c)]
