"""Prime power coding of finite sequences of naturals.

A sequence (x0, ..., x_{k-1}) is coded as prod_i prime(i) ** (x_i + 1); the
empty sequence is 1.  The +1 in the exponent makes the coding injective and
leaves 0 outside the coded set.  Decoding factors by consecutive primes and
insists that nothing is left over, so e.g. 5 and 10 are not sequence codes.
"""

from __future__ import annotations

from collections.abc import Callable

from .errors import BairelabError


class SeqCodeError(BairelabError):
    """Operation applied to a number that codes no sequence."""


class SeqOverflow(BairelabError):
    """A code would exceed the configured size guard."""


DEFAULT_MAX_BITS = 4096

_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]


def prime(i: int) -> int:
    """The i-th prime, 0-indexed: prime(0) == 2."""
    while len(_PRIMES) <= i:
        c = _PRIMES[-1] + 2
        while any(c % p == 0 for p in _PRIMES if p * p <= c):
            c += 2
        _PRIMES.append(c)
    return _PRIMES[i]


def encode(items: list[int] | tuple[int, ...], max_bits: int | None = DEFAULT_MAX_BITS) -> int:
    """Code a finite sequence of naturals; [] codes to 1."""
    n = 1
    for i, x in enumerate(items):
        if x < 0:
            raise ValueError("sequence entries must be naturals")
        n *= prime(i) ** (x + 1)
        if max_bits is not None and n.bit_length() > max_bits:
            raise SeqOverflow(f"sequence code exceeds {max_bits} bits")
    return n


def _extract(n: int, p: int) -> tuple[int, int]:
    """Largest e with p**e dividing n, and the cofactor n // p**e.

    Recursive halving: strip one factor of p, pull p**2 out of the
    quotient, then at most one more factor of p.  Divisors double while
    the dividend shrinks, so the divisions stay balanced even when codes
    reach megabit sizes.
    """
    q, r = divmod(n, p)
    if r:
        return 0, n
    half, m = _extract(q, p * p)
    q, r = divmod(m, p)
    if r:
        return 2 * half + 1, m
    return 2 * half + 2, q


def decode(n: int) -> list[int] | None:
    """The sequence coded by n, or None when n codes nothing."""
    if n < 1:
        return None
    if n == 1:
        return []
    out: list[int] = []
    i = 0
    while n > 1:
        e, n = _extract(n, prime(i))
        if e == 0:
            return None  # gap in the prime support
        out.append(e - 1)
        i += 1
    return out


def is_seqnum(n: int) -> bool:
    return decode(n) is not None


def lh(n: int) -> int:
    """Length of the coded sequence."""
    d = decode(n)
    if d is None:
        raise SeqCodeError(f"{n} is not a sequence code")
    return len(d)


def proj(n: int, i: int) -> int:
    """Entry i of the coded sequence."""
    d = decode(n)
    if d is None:
        raise SeqCodeError(f"{n} is not a sequence code")
    if not 0 <= i < len(d):
        raise SeqCodeError(f"index {i} out of range for length {len(d)}")
    return d[i]


def concat(a: int, b: int, max_bits: int | None = DEFAULT_MAX_BITS) -> int:
    """Code of the concatenation of two coded sequences."""
    da, db = decode(a), decode(b)
    if da is None or db is None:
        raise SeqCodeError("concat needs two sequence codes")
    return encode(da + db, max_bits=max_bits)


def bar(alpha: Callable[[int], int], x: int, max_bits: int | None = DEFAULT_MAX_BITS) -> int:
    """Code of the initial segment (alpha(0), ..., alpha(x-1))."""
    return encode([alpha(i) for i in range(x)], max_bits=max_bits)


def extend(s: int, item: int, max_bits: int | None = DEFAULT_MAX_BITS) -> int:
    """Code of the coded sequence s with one more entry appended."""
    d = decode(s)
    if d is None:
        raise SeqCodeError(f"{s} is not a sequence code")
    if item < 0:
        raise ValueError("sequence entries must be naturals")
    n = s * prime(len(d)) ** (item + 1)
    if max_bits is not None and n.bit_length() > max_bits:
        raise SeqOverflow(f"sequence code exceeds {max_bits} bits")
    return n
