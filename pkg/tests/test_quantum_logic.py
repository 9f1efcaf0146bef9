"""Exact Pauli-group algebra, Clifford-normalizer tests, and finite lattices.

Two independent representations of the Pauli group are kept in sync on
purpose: the symplectic (phase, xbits, zbits) form used for the group
structure, and exact Gaussian-rational matrices used as the oracle.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padiclab import (
    DomainError,
    FiniteLattice,
    GaussianMatrix,
    GaussianRational,
    PauliElement,
    ResourceLimitError,
    boolean_lattice,
    chain_lattice,
    decompose_in_pauli_basis,
    diamond_lattice,
    is_distributive,
    is_in_normalizer,
    is_modular,
    pauli_basis,
    pauli_basis_check,
    pauli_group_order,
    pauli_mul,
    pentagon_lattice,
    subspace_lattice,
)


def rand_pauli(n: int):
    bits = st.lists(st.integers(0, 1), min_size=n, max_size=n)
    return st.builds(
        lambda ph, x, z: PauliElement(ph, tuple(x), tuple(z)),
        st.integers(0, 3),
        bits,
        bits,
    )


# ---------------------------------------------------------------------------
# Gaussian rationals / matrices
# ---------------------------------------------------------------------------


def test_gaussian_rational_field_ops():
    z = GaussianRational.of(Fraction(3), Fraction(4))
    w = GaussianRational.of(Fraction(0), Fraction(1))
    assert z * z.conjugate() == GaussianRational.of(Fraction(25))
    assert w * w == GaussianRational.of(Fraction(-1))
    assert (z / z) == GaussianRational.of(Fraction(1))
    assert str(w) == "i"


def test_gaussian_matrix_mul_identity():
    m = GaussianMatrix.of([[1, 2], [3, 4]])
    assert m @ GaussianMatrix.identity(2) == m


# ---------------------------------------------------------------------------
# Pauli group — symplectic vs matrix oracle
# ---------------------------------------------------------------------------


def test_xz_product_is_minus_i_y():
    x = PauliElement.single("X")
    z = PauliElement.single("Z")
    prod = pauli_mul(x, z)
    assert (prod.phase, prod.xbits, prod.zbits) == (0, (1,), (1,))
    assert str(prod) == "-iY"


def test_involutions_and_identity():
    for name in "XYZ":
        g = PauliElement.single(name)
        assert pauli_mul(g, g) == PauliElement.identity(1)
    e = PauliElement.identity(1)
    y = PauliElement.single("Y")
    assert pauli_mul(e, y) == y


@given(x=rand_pauli(1), y=rand_pauli(1))
def test_mul_agrees_with_matrices_1q(x, y):
    lhs = pauli_mul(x, y).to_matrix()
    rhs = x.to_matrix() @ y.to_matrix()
    assert lhs == rhs


@settings(max_examples=60)
@given(x=rand_pauli(2), y=rand_pauli(2))
def test_mul_agrees_with_matrices_2q(x, y):
    assert pauli_mul(x, y).to_matrix() == x.to_matrix() @ y.to_matrix()


@given(x=rand_pauli(2), y=rand_pauli(2), z=rand_pauli(2))
def test_mul_associative(x, y, z):
    assert pauli_mul(pauli_mul(x, y), z) == pauli_mul(x, pauli_mul(y, z))


@given(g=rand_pauli(2))
def test_every_element_has_order_dividing_four(g):
    acc = PauliElement.identity(2)
    for _ in range(4):
        acc = pauli_mul(acc, g)
    assert acc == PauliElement.identity(2)


def test_x_and_z_anticommute():
    x = PauliElement.single("X")
    z = PauliElement.single("Z")
    xz = pauli_mul(x, z)
    zx = pauli_mul(z, x)
    assert xz != zx
    assert xz.phase == (zx.phase + 2) % 4  # differ by the scalar -1


def test_mismatched_qubit_counts():
    with pytest.raises(DomainError):
        pauli_mul(PauliElement.identity(1), PauliElement.identity(2))


def test_group_orders():
    assert pauli_group_order(1) == 16
    assert pauli_group_order(2) == 64
    with pytest.raises(ResourceLimitError):
        pauli_group_order(3)


def test_pauli_str_forms():
    assert str(PauliElement.identity(2)) == "II"
    assert str(PauliElement(1, (1, 0), (1, 0))) == "YI"  # i * (XZ = -iY) folds to Y


# ---------------------------------------------------------------------------
# Pauli basis of 2x2 matrices
# ---------------------------------------------------------------------------


def test_basis_check_passes():
    report = pauli_basis_check(1)
    assert report.independent and report.spanning


def test_decompose_e11():
    e11 = GaussianMatrix.of([[1, 0], [0, 0]])
    coeffs = decompose_in_pauli_basis(e11)
    half = GaussianRational.of(Fraction(1, 2))
    # zero coefficients are omitted: E11 = (sigma_0 + sigma_z)/2 exactly
    assert {str(b): c for b, c in coeffs.items()} == {"I": half, "Z": half}


gaussian_entry = st.builds(
    lambda a, b: GaussianRational.of(Fraction(a), Fraction(b)),
    st.integers(-4, 4),
    st.integers(-4, 4),
)


@given(entries=st.lists(gaussian_entry, min_size=4, max_size=4))
def test_decompose_recompose_roundtrip(entries):
    m = GaussianMatrix.of([[entries[0], entries[1]], [entries[2], entries[3]]])
    acc = GaussianMatrix.of([[0, 0], [0, 0]])
    for basis_el, c in decompose_in_pauli_basis(m).items():
        acc = acc + basis_el.to_matrix().scale(c)
    assert acc == m


def test_basis_trace_orthogonality():
    basis = pauli_basis(1)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            t = (a.to_matrix().conjugate_transpose() @ b.to_matrix()).trace()
            expected = Fraction(2) if i == j else Fraction(0)
            assert t == GaussianRational.of(expected)


# ---------------------------------------------------------------------------
# Clifford normalizer membership
# ---------------------------------------------------------------------------

HADAMARD_LIKE = GaussianMatrix.of([[1, 1], [1, -1]])  # sqrt(2)*H: scalar cleared
PHASE_S = GaussianMatrix.of(
    [[1, 0], [0, GaussianRational.of(Fraction(0), Fraction(1))]]
)
ZETA = GaussianRational.of(Fraction(3, 5), Fraction(4, 5))  # unit modulus, order inf
NON_CLIFFORD = GaussianMatrix.of([[1, 0], [0, ZETA]])


def test_hadamard_like_in_normalizer():
    check = is_in_normalizer(HADAMARD_LIKE, 1)
    assert check.member
    assert check.failing_generator is None
    assert bool(check)


def test_phase_gate_in_normalizer():
    assert is_in_normalizer(PHASE_S, 1).member


def test_unit_modulus_phase_not_in_normalizer():
    check = is_in_normalizer(NON_CLIFFORD, 1)
    assert not check.member
    assert str(check.failing_generator) == "X"


def test_non_unitary_rejected():
    with pytest.raises(DomainError):
        is_in_normalizer(GaussianMatrix.of([[1, 1], [0, 1]]), 1)
    with pytest.raises(DomainError):
        is_in_normalizer(GaussianMatrix.of([[0, 0], [0, 0]]), 1)


@given(g=rand_pauli(1))
def test_membership_invariant_under_pauli_left_mul(g):
    # if U normalizes the group then gU does too
    product = g.to_matrix() @ HADAMARD_LIKE
    assert is_in_normalizer(product, 1).member


def test_cnot_in_normalizer_2q():
    cnot = GaussianMatrix.of(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    )
    assert is_in_normalizer(cnot, 2).member


# ---------------------------------------------------------------------------
# Finite lattices — named examples
# ---------------------------------------------------------------------------


def test_pentagon_fails_both_laws_with_witness():
    n5 = pentagon_lattice()
    mod = is_modular(n5)
    assert not mod.holds
    assert mod.witness["a"] == "z"
    assert mod.witness["b"] == "x"
    assert mod.witness["c"] == "y"
    assert mod.witness["lhs"] != mod.witness["rhs"]
    dist = is_distributive(n5)
    assert not dist.holds


def test_diamond_is_modular_not_distributive():
    m3 = diamond_lattice()
    assert is_modular(m3).holds
    dist = is_distributive(m3)
    assert not dist.holds
    assert dist.witness is not None


def test_boolean_lattice_is_distributive():
    b3 = boolean_lattice(3)
    assert len(b3.elements) == 8
    assert is_modular(b3).holds
    assert is_distributive(b3).holds


def test_chains_satisfy_everything():
    c = chain_lattice(5)
    assert is_modular(c).holds
    assert is_distributive(c).holds


def test_lawcheck_json_shape():
    j = is_modular(pentagon_lattice()).as_json()
    assert j["law"] == "modular"
    assert j["holds"] is False
    assert {"a", "b", "c", "lhs", "rhs"} <= set(j)


def test_non_lattice_poset_rejected():
    # two incomparable maximal elements have no join
    elements = ["0", "a", "b"]

    def leq(x, y):
        return x == y or x == "0"

    with pytest.raises(DomainError):
        FiniteLattice(elements, leq)


def test_lattice_axioms_on_constructed_instances():
    for lat in (
        pentagon_lattice(),
        diamond_lattice(),
        boolean_lattice(3),
        chain_lattice(4),
        subspace_lattice(2, 2),
    ):
        els = list(lat.elements)
        for a in els:
            assert lat.meet(a, a) == a
            assert lat.join(a, a) == a
            for b in els:
                assert lat.meet(a, b) == lat.meet(b, a)
                assert lat.join(a, b) == lat.join(b, a)
                # absorption
                assert lat.meet(a, lat.join(a, b)) == a
                assert lat.join(a, lat.meet(a, b)) == a


# ---------------------------------------------------------------------------
# Subspace lattices over F_q
# ---------------------------------------------------------------------------


def gaussian_binomial(d: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize(
    "q,d,count", [(2, 2, 5), (3, 2, 6), (2, 1, 2), (2, 3, 16), (3, 3, 28), (5, 2, 8)]
)
def test_subspace_counts_match_gaussian_binomials(q, d, count):
    lat = subspace_lattice(q, d)
    assert len(lat.elements) == count
    assert count == sum(gaussian_binomial(d, k, q) for k in range(d + 1))


def test_subspace_lattice_guard():
    with pytest.raises(ResourceLimitError):
        subspace_lattice(2, 15)


@pytest.mark.parametrize("q,d", [(2, 2), (3, 2), (2, 3)])
def test_subspace_lattices_modular_never_distributive(q, d):
    lat = subspace_lattice(q, d)
    assert is_modular(lat).holds
    dist = is_distributive(lat)
    assert not dist.holds


def test_q2_d2_witness_is_three_distinct_lines():
    dist = is_distributive(subspace_lattice(2, 2))
    w = dist.witness
    lines = {w["a"], w["b"], w["c"]}
    assert len(lines) == 3
    assert all(label.startswith("span{") for label in lines)
    assert w["lhs"] == w["a"]  # a wedge (b vee c) = a: b,c span everything
    assert w["rhs"] == "0"


def test_subspace_meet_is_intersection_join_is_span():
    lat = subspace_lattice(2, 2)
    els = list(lat.elements)
    for a in els:
        for b in els:
            meet = lat.meet(a, b)
            assert set(meet) == set(a) & set(b)
            join = lat.join(a, b)
            assert set(a) | set(b) <= set(join)
            # join is the smallest upper bound present in the lattice
            for c in els:
                if set(a) | set(b) <= set(c):
                    assert set(join) <= set(c)
