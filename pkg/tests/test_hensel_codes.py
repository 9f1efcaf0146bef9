"""Fixed-width residue codes for rationals with Farey-box decoding.

encode/decode are inverse on the admissible box |b| <= N, 0 < c <= N with
N = floor(sqrt((p^r - 1)/2)); the exhaustive p=5, r=4 sweep lives in the
acceptance suite, a sampled version here keeps this file fast.
"""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padiclab import (
    DecodeFailureError,
    DomainError,
    HenselCode,
    NonEncodableError,
    PadicNumber,
    ZeroInversionError,
    code_add,
    code_div,
    code_mul,
    code_sub,
    decode,
    encode,
    farey_bound,
)


def test_farey_bound_values():
    assert farey_bound(5, 4) == 17  # isqrt(624 // 2) = isqrt(312)
    assert farey_bound(5, 6) == 88
    assert farey_bound(2, 4) == math.isqrt((2**4 - 1) // 2)


def test_encode_frozen_values():
    c = encode(Fraction(1, 3), 5, 4)
    assert c.value == 417
    assert c.digits == (2, 3, 1, 3)
    assert encode(Fraction(2), 5, 4).value == 2
    assert encode(Fraction(2), 5, 4).digits == (2, 0, 0, 0)
    assert encode(Fraction(-1), 5, 4).value == 624
    assert encode(Fraction(-1), 5, 4).digits == (4, 4, 4, 4)


def test_encode_rejects_p_in_denominator():
    with pytest.raises(NonEncodableError):
        encode(Fraction(1, 5), 5, 4)
    with pytest.raises(NonEncodableError):
        encode(Fraction(3, 10), 5, 4)


def test_code_validation():
    with pytest.raises(DomainError):
        HenselCode(5, 4, 625)  # out of range
    with pytest.raises(DomainError):
        HenselCode(5, 0, 0)


def test_arithmetic_examples():
    third = encode(Fraction(1, 3), 5, 4)
    two_thirds = encode(Fraction(2, 3), 5, 4)
    assert two_thirds.value == 209
    assert code_add(third, two_thirds) == encode(Fraction(1), 5, 4)
    assert code_mul(third, encode(Fraction(3), 5, 4)) == encode(Fraction(1), 5, 4)
    assert code_sub(third, third) == encode(Fraction(0), 5, 4)


def test_mismatched_codes_rejected():
    with pytest.raises(DomainError):
        code_add(encode(Fraction(1), 5, 4), encode(Fraction(1), 5, 6))
    with pytest.raises(DomainError):
        code_add(encode(Fraction(1), 5, 4), encode(Fraction(1), 7, 4))


def test_division_by_p_divisible_code():
    x = encode(Fraction(1), 5, 4)
    five = encode(Fraction(5), 5, 4)
    with pytest.raises(ZeroInversionError):
        code_div(x, five)


def test_decode_frozen_values():
    assert decode(encode(Fraction(1, 3), 5, 4)) == Fraction(1, 3)
    assert decode(encode(Fraction(-7, 11), 5, 6)) == Fraction(-7, 11)
    assert decode(HenselCode(5, 4, 2)) == 2


def test_decode_failure_outside_box():
    # 100 > N = 17 and has no small-denominator alias
    with pytest.raises(DecodeFailureError):
        decode(encode(Fraction(100), 5, 4))


admissible = st.tuples(st.integers(-17, 17), st.integers(1, 17)).filter(
    lambda t: t[1] % 5 != 0 and math.gcd(t[0], t[1]) == 1
)


@given(t=admissible)
def test_roundtrip_in_farey_box(t):
    b, c = t
    q = Fraction(b, c)
    assert decode(encode(q, 5, 4)) == q


@given(t=admissible, u=admissible)
def test_homomorphism(t, u):
    a = Fraction(*t)
    b = Fraction(*u)
    ca, cb = encode(a, 5, 4), encode(b, 5, 4)
    N = farey_bound(5, 4)

    def in_box(q: Fraction) -> bool:
        return abs(q.numerator) <= N and q.denominator <= N and q.denominator % 5 != 0

    if in_box(a + b):
        assert decode(code_add(ca, cb)) == a + b
    if in_box(a - b):
        assert decode(code_sub(ca, cb)) == a - b
    if in_box(a * b):
        assert decode(code_mul(ca, cb)) == a * b
    if b != 0 and b.numerator % 5 != 0 and in_box(a / b):
        assert decode(code_div(ca, cb)) == a / b


@given(t=admissible)
def test_digits_agree_with_padic_expansion(t):
    # unit-valuation rationals: the r code digits are the first r p-adic digits
    q = Fraction(*t)
    if q == 0 or q.numerator % 5 == 0:
        return
    code = encode(q, 5, 4)
    x = PadicNumber.from_rational(q, 5, 4)
    assert code.digits == x.unit


def test_exhaustive_small_box():
    # complete sweep at p=3, r=3 (N = 3): cheap enough to brute force here
    N = farey_bound(3, 3)
    count = 0
    for b in range(-N, N + 1):
        for c in range(1, N + 1):
            if math.gcd(b, c) != 1 or c % 3 == 0:
                continue
            q = Fraction(b, c)
            assert decode(encode(q, 3, 3)) == q
            count += 1
    assert count > 0
