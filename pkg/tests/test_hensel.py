"""Digit-by-digit root lifting modulo prime powers.

The linear (one digit per step) scheme is the reference algorithm; the
Newton precision-doubling path must reproduce its trace exactly, and small
cases are cross-checked against brute-force root enumeration mod p^k.
"""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padiclab import (
    DomainError,
    NotARootError,
    SingularRootError,
    hensel_lift,
    roots_mod_p,
    sqrt_padic,
    to_expansion_string,
)

X2_MINUS_2 = (-2, 0, 1)  # coefficients ascending: f(x) = x^2 - 2


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# roots_mod_p
# ---------------------------------------------------------------------------


def test_roots_mod_p_examples():
    assert roots_mod_p(X2_MINUS_2, 7) == [3, 4]
    assert roots_mod_p(X2_MINUS_2, 5) == []
    assert roots_mod_p((0, 1), 3) == [0]


def test_roots_mod_p_rejects_zero_polynomial():
    with pytest.raises(DomainError):
        roots_mod_p((7, 7), 7)  # f == 0 mod 7: every residue is a root


@given(
    coeffs=st.lists(st.integers(-20, 20), min_size=1, max_size=5),
    p=st.sampled_from([2, 3, 5, 7, 11]),
)
def test_roots_mod_p_matches_direct_scan(coeffs, p):
    if all(c % p == 0 for c in coeffs):
        return
    expected = [x for x in range(p) if poly_eval(coeffs, x) % p == 0]
    assert roots_mod_p(tuple(coeffs), p) == expected


# ---------------------------------------------------------------------------
# hensel_lift — frozen traces
# ---------------------------------------------------------------------------


def test_lift_sqrt2_from_3():
    trace = hensel_lift(X2_MINUS_2, 3, 7, 2)
    assert trace.digits == (3, 1, 2)
    assert trace.residues == (3, 10, 108)
    assert trace.render_sum() == "3 + 7·1 + 7²·2"
    assert 108**2 % 7**3 == 2


def test_lift_sqrt2_from_4():
    trace = hensel_lift(X2_MINUS_2, 4, 7, 1)
    assert trace.residues == (4, 39)
    assert 39**2 % 49 == 2


def test_lift_exact_root_is_stationary():
    trace = hensel_lift((-5, 1), 5, 7, 3)
    assert trace.residues == (5, 5, 5, 5)
    assert trace.digits == (5, 0, 0, 0)


def test_lift_rejects_non_root():
    with pytest.raises(NotARootError):
        hensel_lift(X2_MINUS_2, 1, 7, 2)


def test_lift_rejects_singular_root():
    # f = x^2: root 0 mod 3 has f'(0) = 0
    with pytest.raises(SingularRootError) as exc:
        hensel_lift((0, 0, 1), 0, 3, 2)
    assert "simple" in str(exc.value).lower()


# ---------------------------------------------------------------------------
# Trace invariants
# ---------------------------------------------------------------------------

lift_cases = st.tuples(
    st.lists(st.integers(-30, 30), min_size=2, max_size=5),
    st.sampled_from([3, 5, 7, 11, 13]),
    st.integers(1, 6),
)


@given(case=lift_cases)
def test_trace_invariants(case):
    coeffs, p, k = case
    if all(c % p == 0 for c in coeffs):
        return
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    for x0 in roots_mod_p(tuple(coeffs), p):
        if poly_eval(deriv, x0) % p == 0:
            continue  # singular; rejected by design
        trace = hensel_lift(tuple(coeffs), x0, p, k)
        assert len(trace.residues) == k + 1
        for i, xi in enumerate(trace.residues):
            assert poly_eval(coeffs, xi) % p ** (i + 1) == 0
            if i > 0:
                # coherence: consecutive residues agree mod p^i
                assert (xi - trace.residues[i - 1]) % p**i == 0
        assert trace.residues[-1] == sum(
            b * p**i for i, b in enumerate(trace.digits)
        )


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lifted_residues_are_unique_small_cases(p):
    # brute force every residue mod p^3 and compare with the traced lifts
    coeffs = X2_MINUS_2
    deriv = (0, 2)
    for x0 in roots_mod_p(coeffs, p):
        if poly_eval(deriv, x0) % p == 0:
            continue
        trace = hensel_lift(coeffs, x0, p, 2)
        for i in (1, 2):
            m = p ** (i + 1)
            roots = [
                x
                for x in range(m)
                if poly_eval(coeffs, x) % m == 0 and x % p == x0
            ]
            assert roots == [trace.residues[i]]


@given(case=lift_cases)
def test_newton_path_agrees_with_linear(case):
    coeffs, p, k = case
    if all(c % p == 0 for c in coeffs):
        return
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    for x0 in roots_mod_p(tuple(coeffs), p):
        if poly_eval(deriv, x0) % p == 0:
            continue
        linear = hensel_lift(tuple(coeffs), x0, p, k, method="digit")
        newton = hensel_lift(tuple(coeffs), x0, p, k, method="newton")
        assert linear.digits == newton.digits
        assert linear.residues == newton.residues


def test_as_padic_matches_digits():
    trace = hensel_lift(X2_MINUS_2, 3, 7, 2)
    x = trace.as_padic(3)
    assert x.unit == (3, 1, 2)
    with pytest.raises(DomainError):
        trace.as_padic(9)


# ---------------------------------------------------------------------------
# sqrt_padic
# ---------------------------------------------------------------------------


def test_sqrt_2_in_q7():
    roots = sqrt_padic(2, 7, 3)
    assert [to_expansion_string(x) for x in roots] == ["3,12", "4,54"]
    assert roots[0] == -roots[1]


def test_sqrt_perfect_square():
    roots = sqrt_padic(4, 7, 3)
    values = sorted(x.unit_value for x in roots)
    assert values == [2, (-2) % 7**3]


def test_sqrt_non_residue_gives_empty():
    assert sqrt_padic(2, 5, 4) == []


def test_sqrt_guards():
    with pytest.raises(DomainError):
        sqrt_padic(2, 2, 3)  # p = 2 not supported
    with pytest.raises(DomainError):
        sqrt_padic(14, 7, 3)  # gcd(a, p) != 1


@given(
    a=st.integers(1, 500),
    p=st.sampled_from([3, 5, 7, 11, 13]),
    r=st.integers(1, 8),
)
def test_sqrt_squares_back(a, p, r):
    if a % p == 0:
        return
    roots = sqrt_padic(a, p, r)
    assert len(roots) in (0, 2)
    for x in roots:
        assert x.unit_value**2 % p**r == a % p**r
    if len(roots) == 2:
        assert roots[0] == -roots[1]
