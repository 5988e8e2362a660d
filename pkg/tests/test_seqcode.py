import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bairelab.seqcode import (
    SeqCodeError,
    SeqOverflow,
    bar,
    concat,
    decode,
    encode,
    extend,
    is_seqnum,
    lh,
    prime,
    proj,
)


def test_primes():
    assert [prime(i) for i in range(10)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime(41) == 181


def test_encode_known_values():
    assert encode([]) == 1
    assert encode([0]) == 2
    assert encode([3]) == 16
    assert encode([1, 2]) == 108
    assert encode([0, 0]) == 6


def test_decode_known_values():
    assert decode(1) == []
    assert decode(2) == [0]
    assert decode(16) == [3]
    assert decode(108) == [1, 2]
    assert decode(6) == [0, 0]
    # non-codes: 0, odd > 1, and numbers with gaps in prime support
    assert decode(0) is None
    assert decode(5) is None
    assert decode(10) is None  # 2 * 5 skips 3
    assert decode(7) is None


def test_is_seqnum():
    assert is_seqnum(1)
    assert is_seqnum(6)
    assert not is_seqnum(0)
    assert not is_seqnum(5)


def test_lh_proj():
    n = encode([4, 0, 7])
    assert lh(n) == 3
    assert [proj(n, i) for i in range(3)] == [4, 0, 7]
    with pytest.raises(SeqCodeError):
        lh(5)
    with pytest.raises(SeqCodeError):
        proj(n, 3)


def test_concat():
    assert concat(encode([3]), encode([1, 2])) == encode([3, 1, 2])
    assert concat(1, encode([2])) == encode([2])
    with pytest.raises(SeqCodeError):
        concat(5, 6)


def test_extend():
    assert extend(1, 3) == encode([3])
    assert extend(encode([1, 2]), 0) == encode([1, 2, 0])
    with pytest.raises(SeqCodeError):
        extend(5, 0)


def test_bar():
    assert bar(lambda n: n, 3) == 2250
    assert bar(lambda n: 0, 2) == 6
    assert bar(lambda n: n, 0) == 1


def test_overflow_guard():
    with pytest.raises(SeqOverflow):
        encode([10000] * 300)
    # explicit opt-out lifts the guard
    big = encode([10000, 10000], max_bits=None)
    assert decode(big) == [10000, 10000]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 5), max_size=4))
def test_roundtrip_small(xs):
    assert decode(encode(xs)) == xs


def test_roundtrip_all_codes_up_to_10000():
    hits = 0
    for n in range(1, 10001):
        d = decode(n)
        if d is not None:
            hits += 1
            assert encode(d) == n
    assert hits > 50  # sanity: the coded set is not empty


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 4), max_size=3), st.lists(st.integers(0, 4), max_size=3))
def test_concat_lengths_add(xs, ys):
    n = concat(encode(xs), encode(ys))
    assert decode(n) == xs + ys


def test_single_entry_codes_are_powers_of_two():
    for n in range(11):
        assert encode([n]) == 2 ** (n + 1)
