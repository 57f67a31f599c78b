import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sympy_partial_inv
from pglstrata.classify import (
    InternalInconsistency,
    NumericalType,
    Pencil,
    c_generated_part,
    classify,
    decompose,
    inverse_profile,
    kronecker_left_indices,
    numerical_type,
    pencil_of,
    type_from_profile,
)
from pglstrata.forms import BinaryForm, FormSubspace, derivative_system, off_secant, partial, transform
from pglstrata.linalg import Mat
from pglstrata.sampling import random_gl2, random_subspace, trial_rng
from pglstrata.strata import enumerate_types, monomial_fixture


def mono(d, *ys):
    return FormSubspace.monomials(d, ys)


def block_diag(blocks, m, n):
    rows = [[0] * n for _ in range(m)]
    r0 = c0 = 0
    for blk in blocks:
        for i, row in enumerate(blk):
            for j, val in enumerate(row):
                rows[r0 + i][c0 + j] = val
        r0 += len(blk)
        c0 += len(blk[0]) if blk else 0
    return Mat.from_rows(rows, n)


def tall_block(eps):
    """(eps+1) x eps pencil block with left minimal index eps."""
    A = [[int(i == j) for j in range(eps)] for i in range(eps + 1)]
    B = [[int(i == j + 1) for j in range(eps)] for i in range(eps + 1)]
    return A, B


def test_type_parsing_and_invariants():
    tau = NumericalType.parse("(0,1,0)")
    assert tau == NumericalType.of(0, 1, 0)
    assert str(tau) == "(0,1,0)"
    assert tau.r == 2 and tau.dim == 4 and tau.budget == 6
    assert tau.admissible(7) and not tau.admissible(5)
    assert NumericalType.from_json(tau.to_json()) == tau
    with pytest.raises(ValueError):
        NumericalType(-2, ())


def test_point_of_the_curve_has_type_zero():
    for d in range(1, 8):
        assert numerical_type(mono(d, 0)) == NumericalType.of(0)


def test_two_monomials_in_degree_five():
    T = mono(5, 1, 3)
    cl = classify(T)
    assert cl.type == NumericalType.of(-1, 0, 0)
    assert cl.profile[:2] == (2, 0)
    # the inverse contraction really is zero, by a symbolic solve
    assert sympy_partial_inv(list(T.space.basis), 5) == []


def test_fixture_zero_one_zero():
    T = mono(7, 0, 2, 3, 5)
    assert monomial_fixture(7, NumericalType.of(0, 1, 0)) == T
    cl = classify(T)
    assert cl.type == NumericalType.of(0, 1, 0)
    assert cl.profile[:5] == (4, 2, 1, 1, 1)
    assert cl.dim_partial - T.dim == 2
    assert c_generated_part(T) == mono(7, 0)
    assert kronecker_left_indices(pencil_of(T)) == Counter({2: 1, 1: 1})


def test_curve_generated_parts():
    for d in range(2, 8):
        T = mono(d, 0, d)
        assert c_generated_part(T) == T
        assert numerical_type(T) == NumericalType.of(1)
        assert kronecker_left_indices(pencil_of(T)) == Counter()


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_generic_first_derivatives_have_no_curve_part(d):
    rng = random.Random(f"first-derivatives:{d}")
    while True:
        f = BinaryForm.of([rng.randint(-40, 40) for _ in range(d + 2)])
        if off_secant(f, 1):
            break
    T = derivative_system(f, 1)
    assert c_generated_part(T).dim == 0
    assert numerical_type(T) == NumericalType.of(-1, 1)


def test_full_space_is_rejected():
    with pytest.raises(ValueError):
        classify(FormSubspace.full(4))


def test_profile_arithmetic():
    assert type_from_profile([4, 2, 1, 1, 1]) == NumericalType.of(0, 1, 0)
    assert type_from_profile([2, 0, 0, 0]) == NumericalType.of(-1, 0, 0)
    with pytest.raises(InternalInconsistency):
        type_from_profile([3, 0, 1, 1, 1])


def test_every_fixture_classifies_back():
    for d in range(1, 9):
        for e in range(-1, d):
            for tau in enumerate_types(d, e):
                T = monomial_fixture(d, tau)
                assert numerical_type(T) == tau
                assert kronecker_left_indices(pencil_of(T)) == Counter(b + 1 for b in tau.bs)


@given(st.lists(st.integers(1, 4), max_size=3), st.integers(0, 3))
def test_kronecker_on_hand_built_pencils(eps_list, regular):
    blocks_a, blocks_b = [], []
    for eps in eps_list:
        A, B = tall_block(eps)
        blocks_a.append(A)
        blocks_b.append(B)
    if regular:
        blocks_a.append([[int(i == j) for j in range(regular)] for i in range(regular)])
        blocks_b.append([[2 * int(i == j) + int(j == i + 1) for j in range(regular)] for i in range(regular)])
    m = sum(len(b) for b in blocks_a)
    n = sum(len(b[0]) for b in blocks_a)
    if m == 0 or n == 0:
        return
    P = Pencil(block_diag(blocks_a, m, n), block_diag(blocks_b, m, n))
    assert P.normal_rank() == n
    assert kronecker_left_indices(P) == Counter(eps_list)


def test_column_pencil():
    P = Pencil(Mat.from_rows([[1], [0]]), Mat.from_rows([[0], [1]]))
    assert kronecker_left_indices(P) == Counter({1: 1})


@pytest.mark.parametrize("d,e", [(4, 1), (5, 2), (6, 3), (7, 2), (8, 5)])
def test_decompose_round_trip(d, e):
    rng = trial_rng(11, "decompose", d, e)
    for _ in range(3):
        T = random_subspace(d, e + 1, rng)
        dec = decompose(T, rng)
        assert dec.type == numerical_type(T)
        assert dec.assemble() == T
        assert all(off_secant(f, b) for f, b in zip(dec.fs, dec.type.bs))


def test_decompose_fixtures_with_points():
    rng = random.Random(3)
    for d, tau in [(7, NumericalType.of(0, 1, 0)), (8, NumericalType.of(1, 2)), (6, NumericalType.of(2, 0))]:
        T = monomial_fixture(d, tau)
        dec = decompose(T, rng)
        assert dec.S.dim == tau.a + 1
        assert dec.assemble() == T


@pytest.mark.parametrize("seed", range(6))
def test_pgl_invariance(seed):
    rng = trial_rng(seed, "pgl")
    d = rng.randint(3, 8)
    e = rng.randint(0, d - 1)
    for T in (random_subspace(d, e + 1, rng), monomial_fixture(d, enumerate_types(d, e)[-1])):
        g = random_gl2(rng)
        assert numerical_type(transform(T, g)) == numerical_type(T)


@given(st.integers(2, 7), st.data())
def test_normal_rank_is_dim(d, data):
    e = data.draw(st.integers(0, d - 1))
    T = random_subspace(d, e + 1, random.Random(data.draw(st.integers(0, 10**6))))
    P = pencil_of(T)
    assert P.shape == (partial(T).dim, T.dim)
    assert P.normal_rank() == T.dim


@given(st.integers(3, 7), st.data())
def test_inverse_contraction_shifts_the_type(d, data):
    tau = data.draw(st.sampled_from([t for e in range(0, d) for t in enumerate_types(d, e)]))
    T = monomial_fixture(d, tau)
    dims, spaces = inverse_profile(T)
    inv = spaces[1]
    if inv.dim:
        assert numerical_type(inv) == NumericalType(tau.a, tuple(b - 1 for b in tau.bs if b))
