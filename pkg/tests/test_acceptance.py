"""The acceptance gate, one test per criterion.

Each test prints the criterion's single pass/fail line (visible under
-s or on failure) and asserts the verdict.  Criterion 1 sweeps roughly
125k formulas and dominates the runtime of the whole suite; its budget
is pinned inside the criterion itself.
"""

from bairelab import acceptance


def _run(number: int) -> acceptance.CriterionResult:
    result = acceptance.run_all(only=number)[0]
    print(result.line())
    return result


def test_criterion_01_translation_oracle_equivalence():
    result = _run(1)
    assert result.passed, result.detail


def test_criterion_02_negative_range():
    result = _run(2)
    assert result.passed, result.detail


def test_criterion_03_bi1_shape_law():
    result = _run(3)
    assert result.passed, result.detail


def test_criterion_04_sequence_codec():
    result = _run(4)
    assert result.passed, result.detail


def test_criterion_05_jump_beta_construction():
    result = _run(5)
    assert result.passed, result.detail


def test_criterion_06_rho_monotonicity():
    result = _run(6)
    assert result.passed, result.detail


def test_criterion_07_bar_recursion_closed_form():
    result = _run(7)
    assert result.passed, result.detail


def test_criterion_08_mp_witness_extraction():
    result = _run(8)
    assert result.passed, result.detail


def test_criterion_09_k2_continuity():
    result = _run(9)
    assert result.passed, result.detail


def test_criterion_10_schema_fidelity():
    result = _run(10)
    assert result.passed, result.detail


def test_run_all_selector():
    import pytest

    assert len(acceptance.CRITERIA) == 10
    (result,) = acceptance.run_all(only=7)
    assert result.number == 7
    with pytest.raises(ValueError):
        acceptance.run_all(only=0)
    with pytest.raises(ValueError):
        acceptance.run_all(only=11)
