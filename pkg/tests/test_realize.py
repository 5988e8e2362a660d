"""Continuous application, term evaluation, the realizability checker,
and the realizes transform."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bairelab import seqcode
from bairelab.baire import FiniteSupport, FuelExhausted
from bairelab.parser import parse_formula
from bairelab.printer import format_formula
from bairelab.realize import (
    FragmentError,
    Status,
    apply_element,
    check_realizes,
    dns1_realizer,
    eval_functor,
    eval_term,
    k2_apply,
    k2_apply_info,
    mp_realizer,
    prefix_reader,
    realizes_transform,
)
from bairelab.schemas import FreshnessError, SchemaKind, instantiate
from bairelab.syntax import (
    Add,
    Apply,
    ContApply,
    FnVar,
    Lambda,
    NumVar,
    Pair,
    PrefixCode,
    SeqExt,
    SortError,
    numeral,
)

ZERO = FiniteSupport()
ONE = FiniteSupport((), 1)


def reader(k):
    """Continuous functional with modulus k: tag plus sum of k values."""
    return prefix_reader(k, lambda head, body: head + sum(body))


# --- application -------------------------------------------------------------


def test_k2_apply_immediate_answer():
    eager = FiniteSupport((), 5)
    assert k2_apply(eager, ZERO, 7, 1) == 4
    assert k2_apply_info(eager, ZERO, 7, 1) == (4, 0)


def test_k2_apply_silent_element_returns_none():
    assert k2_apply(ZERO, ONE, 0, 30) is None


def test_k2_apply_needs_the_exact_prefix():
    beta = FiniteSupport(((0, 4), (1, 5)), 7)
    assert k2_apply(reader(2), beta, 3, 1) is None
    assert k2_apply(reader(2), beta, 3, 2) == 12
    assert k2_apply_info(reader(2), beta, 3, 50) == (12, 2)


def test_k2_apply_rejects_nonpositive_fuel():
    with pytest.raises(ValueError):
        k2_apply(ZERO, ZERO, 0, 0)


@given(
    overrides=st.lists(st.integers(0, 30), max_size=8),
    default=st.integers(0, 9),
    k=st.integers(0, 3),
    n=st.integers(0, 20),
    junk=st.integers(0, 30),
)
def test_k2_apply_modulus_is_binding(overrides, default, k, n, junk):
    beta = FiniteSupport(tuple(enumerate(overrides)), default)
    got = k2_apply_info(reader(k), beta, n, 64)
    assert got is not None
    value, used = got
    assert used == k
    assert value == n + sum(beta.at(i) for i in range(k))
    # entries at or beyond the modulus cannot matter
    tampered = FiniteSupport(
        tuple((i, beta.at(i)) for i in range(used)) + ((used, junk),), default + 1
    )
    assert k2_apply_info(reader(k), tampered, n, 64) == got
    # and more fuel never changes a settled answer
    assert k2_apply_info(reader(k), beta, n, 128) == got


def test_apply_element_raises_when_fuel_runs_out():
    applied = apply_element(ZERO, ONE, 10)
    with pytest.raises(FuelExhausted):
        applied.at(0)


def test_prefix_reader_protocol():
    r = reader(2)
    assert r.at(0) == 0  # not a sequence code
    assert r.at(seqcode.encode([3])) == 0
    assert r.at(seqcode.encode([3, 4])) == 0
    assert r.at(seqcode.encode([3, 4, 5])) == 13
    assert r.at(seqcode.encode([3, 4, 5, 9])) == 13


# --- evaluation --------------------------------------------------------------


def test_eval_term_covers_every_former():
    env = {"x": 3, "@a": FiniteSupport(((0, 4),), 1)}
    assert eval_term(Pair(numeral(3), numeral(2)), env, 10) == 72
    assert eval_term(SeqExt(numeral(1), numeral(5)), env, 10) == 64
    assert eval_term(PrefixCode(FnVar("@a"), numeral(2)), env, 10) == 288
    assert eval_term(Apply(FnVar("@a"), NumVar("x")), env, 10) == 1
    assert eval_term(Add(numeral(2), NumVar("x")), env, 10) == 5


def test_eval_functor_lambda_and_continuous_application():
    add_x = eval_functor(Lambda("k", Add(NumVar("k"), NumVar("x"))), {"x": 3}, 10)
    assert add_x.at(4) == 7
    env = {"@f": reader(1), "@b": FiniteSupport(((0, 9),), 0)}
    applied = eval_functor(ContApply(FnVar("@f"), FnVar("@b")), env, 20)
    assert applied.at(5) == 14


def test_eval_requires_bindings():
    with pytest.raises(FragmentError):
        eval_term(NumVar("z"), {}, 10)
    with pytest.raises(FragmentError):
        eval_term(Apply(FnVar("@z"), numeral(0)), {}, 10)


def test_check_evaluates_parsed_arithmetic():
    verdict = check_realizes(ZERO, parse_formula("2 + 3 * 4 = 14"))
    assert verdict.status is Status.REALIZED


# --- the checker -------------------------------------------------------------


def test_check_atomic_verdicts():
    assert check_realizes(ZERO, parse_formula("0 = 0")).status is Status.REALIZED
    assert check_realizes(ZERO, parse_formula("0 = S(0)")).status is Status.NOT_REALIZED
    assert check_realizes(ZERO, parse_formula("~(0 = S(0))")).status is Status.REALIZED
    assert check_realizes(ZERO, parse_formula("~(0 = 0)")).status is Status.NOT_REALIZED


def test_check_or_follows_the_tag():
    f = parse_formula("0 = S(0) | 0 = 0")
    assert check_realizes(ZERO, f).status is Status.NOT_REALIZED
    assert check_realizes(FiniteSupport(((0, 1),), 0), f).status is Status.REALIZED


def test_check_exists_reads_the_witness():
    alpha = FiniteSupport(((0, 3), (1, 7), (2, 0)), 9)
    f = parse_formula("exists x. @a(x) = 0")
    good = check_realizes(FiniteSupport(((0, 2),), 0), f, {"@a": alpha})
    assert good.status is Status.REALIZED and good.witness == 2
    bad = check_realizes(FiniteSupport(((0, 1),), 0), f, {"@a": alpha})
    assert bad.status is Status.NOT_REALIZED


def test_check_bounded_exists_enforces_the_bound():
    alpha = FiniteSupport(((0, 3), (1, 7), (2, 0)), 0)
    f = parse_formula("exists x < 3. @a(x) = 0")
    good = check_realizes(FiniteSupport(((0, 2),), 0), f, {"@a": alpha})
    assert good.status is Status.REALIZED and good.witness == 2
    out = check_realizes(FiniteSupport(((0, 5),), 0), f, {"@a": alpha})
    assert out.status is Status.NOT_REALIZED
    assert "out of bound" in out.note


def test_check_implication_vacuous_when_hypothesis_fails():
    verdict = check_realizes(ZERO, parse_formula("0 = S(0) -> 0 = S(0)"))
    assert verdict.status is Status.REALIZED
    assert "refuted" in verdict.note


def test_check_implication_applies_the_realizer():
    f = parse_formula("0 = 0 -> exists x. x = 0")
    answered = check_realizes(ONE, f, fuel=50)
    assert answered.status is Status.REALIZED and answered.witness == 0
    # a realizer that never answers its application starves the check
    assert check_realizes(ZERO, f, fuel=50).status is Status.FUEL_EXHAUSTED


def test_check_conjunction_merge_priority():
    starving = "(0 = 0 -> exists x. x = 0)"
    fuel = check_realizes(ZERO, parse_formula(f"0 = 0 & {starving}"), fuel=50)
    assert fuel.status is Status.FUEL_EXHAUSTED
    # a definitive failure outranks exhaustion elsewhere
    refuted = check_realizes(ZERO, parse_formula(f"0 = S(0) & {starving}"), fuel=50)
    assert refuted.status is Status.NOT_REALIZED


def test_check_universals_need_ranges():
    f = parse_formula("forall x. x = x")
    assert check_realizes(ZERO, f, {"x": [0, 5, 9]}).status is Status.REALIZED
    with pytest.raises(FragmentError):
        check_realizes(ZERO, f)
    g = parse_formula("forall @b. @b(0) = @b(0)")
    assert check_realizes(ZERO, g, {"@b": ONE}).status is Status.REALIZED
    with pytest.raises(FragmentError):
        check_realizes(ZERO, g)


def test_check_negation_unsettled_within_fuel():
    f = parse_formula("~ forall x. @a(x) = 0")
    verdict = check_realizes(ZERO, f, {"@a": ZERO}, fuel=40)
    assert verdict.status is Status.FUEL_EXHAUSTED


# --- canned realizers --------------------------------------------------------


def test_mp_realizer_extracts_the_least_zero():
    alpha = FiniteSupport(((0, 3), (1, 7), (2, 0), (5, 0)), 9)
    verdict = check_realizes(mp_realizer(), instantiate(SchemaKind.MP), {"@a": alpha})
    assert verdict.status is Status.REALIZED
    assert verdict.witness == 2


def test_mp_realizer_machine_protocol():
    mp = mp_realizer()
    # no prefix values yet: answer 0, meaning "send more"
    assert mp.at(seqcode.encode([2])) == 0
    # first zero sits at index 1, so the answer is 1 + 2
    assert mp.at(seqcode.encode([2, 5, 0])) == 3


def test_mp_realizer_recovers_least_zero_on_seeded_elements():
    rng = random.Random(20260814)
    formula = instantiate(SchemaKind.MP)
    mp = mp_realizer()
    for _ in range(20):
        support = {i: rng.randint(1, 6) for i in range(rng.randint(1, 25))}
        support[rng.randint(0, 30)] = 0
        alpha = FiniteSupport(tuple(sorted(support.items())), rng.randint(1, 4))
        least = min(n for n in range(40) if alpha.at(n) == 0)
        verdict = check_realizes(mp, formula, {"@a": alpha}, fuel=1000)
        assert verdict.status is Status.REALIZED
        assert verdict.witness == least


def test_mp_realizer_runs_dry_without_a_zero():
    verdict = check_realizes(
        mp_realizer(), instantiate(SchemaKind.MP), {"@a": FiniteSupport((), 3)}, fuel=60
    )
    assert verdict.status is Status.FUEL_EXHAUSTED
    assert "hypothesis" in verdict.note


def test_dns1_realizer_on_a_zero_universe():
    env = {
        "@r": ZERO,
        "@a": [ZERO, FiniteSupport(((3, 2),), 1)],
        "x": list(range(6)),
    }
    verdict = check_realizes(dns1_realizer(), instantiate(SchemaKind.DNS1), env, fuel=50)
    assert verdict.status is Status.REALIZED


def test_dns1_realizer_vacuous_when_nothing_hits_zero():
    env = {"@r": ONE, "@a": [ZERO], "x": list(range(6))}
    verdict = check_realizes(dns1_realizer(), instantiate(SchemaKind.DNS1), env, fuel=50)
    assert verdict.status is Status.REALIZED
    assert "refuted" in verdict.note


# --- the transform -----------------------------------------------------------


def transformed(src: str) -> str:
    return format_formula(realizes_transform(parse_formula(src), "@e"))


def test_transform_fixes_atoms():
    assert transformed("x = 0") == "x = 0"


def test_transform_exists_projects_the_head():
    assert transformed("exists x. @a(x) = 0") == "@a(@e(0)) = 0"


def test_transform_implication_quantifies_over_realizers():
    assert transformed("0 = 0 -> 0 = 0") == "forall @d. 0 = 0 -> 0 = 0"


def test_transform_or_splits_on_the_tag():
    assert (
        transformed("0 = 0 | x = 0")
        == "@e(0) = 0 & 0 = 0 | ~(@e(0) = 0) & x = 0"
    )


def test_transform_universal_embeds_the_argument():
    assert (
        transformed("forall x. exists y. @a(y) = x")
        == "forall x. @a(ap(@e, lam k. x)(0)) = x"
    )


def test_transform_bounded_exists_pins_the_witness():
    assert (
        transformed("exists x < 5. @a(x) = 0")
        == "exists x < 5. x = @e(0) & @a(x) = 0"
    )


def test_transform_function_exists_uses_pair_projections():
    assert transformed("exists @b. @b(0) = 0") == "(lam y. @e(2^0 * 3^y))(0) = 0"


def test_transform_renames_shadowed_binders():
    assert (
        transformed("forall x. forall x. @a(x) = 0")
        == "forall x. forall x'. @a(x') = 0"
    )


def test_transform_output_reparses_to_itself():
    sources = [
        "x = 0",
        "exists x. @a(x) = 0",
        "0 = 0 -> 0 = 0",
        "0 = 0 | x = 0",
        "forall x. exists y. @a(y) = x",
        "exists x < 5. @a(x) = 0",
        "forall x < 3. @a(x) = 0",
        "forall x. forall x. @a(x) = 0",
        "(exists x. @a(x) = 0) & 0 = 0",
        "~(0 = S(0))",
        "forall @b. @b(0) = 0",
        "exists @b. @b(0) = 0",
    ]
    for src in sources:
        out = realizes_transform(parse_formula(src), "@e")
        assert parse_formula(format_formula(out)) == out


def test_transform_rejects_bad_realizer_names():
    f = parse_formula("@a(0) = 0")
    with pytest.raises(SortError):
        realizes_transform(f, "e")
    with pytest.raises(FreshnessError):
        realizes_transform(f, "@a")
