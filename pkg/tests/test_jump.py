"""The pruning function rho, the jump sequence beta, and bar operations."""

import pytest

from bairelab import seqcode
from bairelab.baire import FiniteSupport
from bairelab.jump import (
    BUILTIN_BASES,
    BUILTIN_RHOS,
    BUILTIN_STEPS,
    Barred,
    DepthExhausted,
    MissingCertificateError,
    NotBarredError,
    bar_recurse,
    bar_verify,
    build_beta,
    not_a,
    rho,
    oracle_rho,
)
from bairelab.machine import (
    Halts,
    OracleProgram,
    assemble,
    certify,
    load_registry,
    registry_programs,
    run,
)

ZERO = FiniteSupport()
HALT_NOW = OracleProgram(0, assemble("HALT 0"))
LOOP_ALWAYS = OracleProgram(1, assemble("JZ 1 0, HALT 0"))

# frozen: the packed trace of HALT-immediately on input 0 under any oracle
Y_HALT_NOW = 663


def test_frozen_trace_value():
    assert run(HALT_NOW, 0, ZERO, 10).trace == Y_HALT_NOW


def test_rho_non_sequence_number_survives():
    assert rho(0, ZERO, {}) == 1
    assert rho(7, ZERO, {}) == 1  # 7 skips the primes 2, 3, 5


def test_rho_empty_sequence_survives():
    assert rho(1, ZERO, {}) == 1


def test_rho_even_slot_mismatch():
    alpha = FiniteSupport(((0, 3),), default=0)
    assert rho(seqcode.encode([5]), alpha, {}) == 0
    assert rho(seqcode.encode([3]), alpha, {}) == 1
    assert rho(seqcode.encode([3, 0, 9]), alpha, {}) == 0  # slot 2 wants alpha(1)=0


def test_rho_case3_trace_within_bound():
    # HALT-immediately halts on 0 with trace 663, so a divergence claim
    # (odd slot 0) is refuted exactly once the prefix reaches length 663.
    programs = {0: HALT_NOW}
    assert rho(seqcode.encode([0] * 663, max_bits=None), ZERO, programs) == 0
    assert rho(seqcode.encode([0] * 662, max_bits=None), ZERO, programs) == 1


def test_rho_case4_wrong_halt_claim():
    programs = {0: HALT_NOW}
    assert rho(seqcode.encode([0, 5]), ZERO, programs) == 0  # 4 is not the trace
    assert rho(seqcode.encode([0, Y_HALT_NOW + 1]), ZERO, programs) == 1


def test_rho_beyond_known_programs():
    # no certificate can ever justify a positive halting claim
    assert rho(seqcode.encode([0, 1]), ZERO, {}) == 0
    assert rho(seqcode.encode([0, 0]), ZERO, {}) == 1


def test_rho_uses_packaged_registry_by_default():
    alpha = FiniteSupport(((0, 2),), default=0)
    assert rho(seqcode.encode([2]), alpha) == 1
    assert rho(seqcode.encode([3]), alpha) == 0


def test_not_a_spec_points():
    alpha = FiniteSupport(((0, 4),), default=1)
    h = {(0, 0): Halts(Y_HALT_NOW, 0)}
    assert not_a(1, alpha, h)
    assert not_a(seqcode.encode([alpha.at(0)]), alpha, h)
    assert not not_a(seqcode.encode([alpha.at(0), 0]), alpha, h)
    assert not_a(seqcode.encode([alpha.at(0), Y_HALT_NOW + 1]), alpha, h)
    assert not not_a(seqcode.encode([9]), alpha, h)
    assert not not_a(6, alpha, h)  # decodes to [0, 0]: even slot wrong
    assert not not_a(0, alpha, h)  # not a sequence number


def test_not_a_requires_certificates():
    with pytest.raises(MissingCertificateError):
        not_a(seqcode.encode([0, 0, 0, 0]), ZERO, {(0, 0): Halts(Y_HALT_NOW, 0)})


def test_build_beta_small():
    programs = {0: HALT_NOW, 1: LOOP_ALWAYS}
    alpha = FiniteSupport(((0, 6), (1, 2)), default=0)
    h = certify(programs, alpha, 1000)
    beta = build_beta(alpha, h, 2)
    assert beta.prefix == (6, Y_HALT_NOW + 1, 2, 0)
    with pytest.raises(MissingCertificateError):
        build_beta(alpha, h, 3)


def test_build_beta_registry_is_the_surviving_path():
    entries = load_registry()
    programs = registry_programs(entries)
    alpha = FiniteSupport(((0, 3), (2, 5), (5, 1), (14, 2)), default=4)
    known = {k: programs[k] for k in range(21)}
    h = certify(known, alpha, 100_000)
    beta = build_beta(alpha, h, 21)
    assert len(beta.prefix) == 42
    for j in range(43):
        assert rho(seqcode.bar(beta.at, j, max_bits=None), alpha, programs) == 1
    # deviating anywhere in the first seven slots is fatal on the spot
    for i in range(7):
        node = seqcode.bar(beta.at, i, max_bits=None)
        for v in range(8):
            if v != beta.at(i):
                assert rho(seqcode.extend(node, v), alpha, programs) == 0


def test_rho_deep_prefix_reaches_real_trace_codes():
    # The divergence-claim bound bites at genuine trace magnitudes: with
    # the zero oracle, registry program 4 halts with trace 10571, and
    # the refutation search runs over y <= lh(s), so the false claim is
    # cut at prefix length 10571 and survives at 10570.  Codes here run
    # to about a megabit; decode must cope.
    entries = load_registry()
    programs = registry_programs(entries)
    h = certify({k: programs[k] for k in range(21)}, ZERO, 100_000)
    beta = build_beta(ZERO, h, 21)
    y4 = h[(4, 4)].trace
    assert beta.prefix[9] == y4 + 1

    def tampered(j):
        return 0 if j == 9 else beta.at(j)

    cut = seqcode.bar(tampered, y4, max_bits=None)
    kept = seqcode.bar(tampered, y4 - 1, max_bits=None)
    assert rho(cut, ZERO, programs) == 0
    assert rho(kept, ZERO, programs) == 1


def test_bar_verify_uniform_bar():
    verdict = bar_verify(BUILTIN_RHOS["uniform2"], 3, 5)
    assert verdict == Barred(2)


def test_bar_verify_never_barred():
    verdict = bar_verify(BUILTIN_RHOS["never"], 2, 6)
    assert verdict == DepthExhausted((0, 0, 0, 0, 0, 0))


def test_bar_verify_root_barred():
    assert bar_verify(lambda s: 0, 4, 3) == Barred(0)


def test_bar_verify_validates_arguments():
    with pytest.raises(ValueError):
        bar_verify(BUILTIN_RHOS["never"], 0, 3)
    with pytest.raises(ValueError):
        bar_verify(BUILTIN_RHOS["never"], 2, 0)


def test_bar_verify_oracle_rho_survivor_is_beta():
    programs = registry_programs(load_registry())
    alpha = FiniteSupport(((0, 3), (1, 7)), default=1)
    h = certify({k: programs[k] for k in range(4)}, alpha, 10_000)
    beta = build_beta(alpha, h, 4)
    verdict = bar_verify(oracle_rho(alpha, programs), 8, 8)
    assert verdict == DepthExhausted(tuple(beta.at(j) for j in range(8)))


def test_bar_recurse_counts_leaves():
    assert bar_recurse(BUILTIN_RHOS["uniform2"], lambda w: 1, lambda w, ks: sum(ks), 3, 5) == 9
    assert bar_recurse(BUILTIN_RHOS["uniform1"], lambda w: 1, lambda w, ks: sum(ks), 5, 5) == 5


def test_bar_recurse_max_depth():
    for d in range(1, 5):
        rho_fn = lambda s, d=d: 0 if seqcode.lh(s) >= d else 1
        assert bar_recurse(rho_fn, seqcode.lh, BUILTIN_STEPS["max"], 3, d) == d


def test_bar_recurse_not_barred():
    with pytest.raises(NotBarredError):
        bar_recurse(BUILTIN_RHOS["never"], lambda w: 1, lambda w, ks: sum(ks), 2, 4)


def test_builtin_tables():
    assert set(BUILTIN_RHOS) == {"uniform1", "uniform2", "never"}
    assert BUILTIN_BASES["one"](1) == 1
    assert BUILTIN_BASES["lh"](seqcode.encode([4, 4])) == 2
    assert BUILTIN_STEPS["sum"](1, [2, 3]) == 5
    assert BUILTIN_STEPS["max"](1, [2, 3]) == 3


def test_rho_monotone_on_small_codes():
    programs = registry_programs(load_registry())
    alpha = FiniteSupport(((0, 1),), default=0)
    for s in range(1, 2000):
        if seqcode.decode(s) is None or rho(s, alpha, programs) != 0:
            continue
        for n in range(4):
            assert rho(seqcode.extend(s, n), alpha, programs) == 0
