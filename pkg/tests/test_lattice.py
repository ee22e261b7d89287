from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from artifact.errors import InfiniteQuotient, NotABasis, NotQuadratic, PreconditionViolated
from artifact.lattice import (QuadraticFormZ2, adapted_basis, block_form, classify_quadratic_z2,
                              hnf, lift_matrix, lift_orthogonal_decomposition, quotient,
                              quadratic_from_data, scaled_lattice, subgroup_sum, vscale)


def test_hnf_identity_and_scaled():
    assert hnf([(1, 0), (0, 1)]).basis == ((0, 1), (1, 0))
    assert hnf([(2, 0), (0, 2)]).basis == ((0, 2), (2, 0))
    assert hnf([], 3).basis == ()


def test_hnf_small_example_against_membership_box():
    L = hnf([(2, 1), (0, 3)])
    assert L.index() == 6
    # brute force: v = a(2,1) + b(0,3) with integers a, b
    for v in product(range(-5, 5), repeat=2):
        expected = v[0] % 2 == 0 and (v[1] - v[0] // 2) % 3 == 0
        assert (v in L) == expected, v


square = st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=60, deadline=None)
@given(square)
def test_hnf_membership_matches_rational_solve(rows):
    M = Matrix(rows)
    if M.det() == 0:
        return
    L = hnf(rows)
    assert L.index() == abs(M.det())
    Minv = M.inv()
    for v in product(range(-2, 3), repeat=3):
        coords = Matrix([list(v)]) * Minv
        assert (v in L) == all(c.is_integer for c in coords)
    for r in rows:
        assert tuple(r) in L


def test_quotient_examples():
    Q = quotient(2, scaled_lattice(2, 2))
    assert len(Q) == 4
    assert sorted(Q.order_of(c) for c in Q) == [1, 2, 2, 2]
    Q = quotient(2, scaled_lattice(2, 4))
    orders = [Q.order_of(c) for c in Q]
    assert len(Q) == 16 and orders.count(2) == 3 and orders.count(4) == 12
    assert len(quotient(3, hnf([(4, 0, 0), (0, 4, 0), (0, 0, 2)]))) == 32


def test_quotient_of_non_full_subgroup_raises():
    with pytest.raises(InfiniteQuotient):
        quotient(2, hnf([(2, 0)], 2))


@settings(max_examples=40, deadline=None)
@given(square)
def test_quotient_orders_divide_exponent(rows):
    M = Matrix(rows)
    if M.det() == 0 or abs(M.det()) > 200:
        return
    L = hnf(rows)
    Q = quotient(3, L)
    assert len(Q) == L.index()
    e = Q.exponent()
    for c in Q:
        assert e % Q.order_of(c) == 0
        assert not any(Q.rep(vscale(Q.order_of(c), c)))


def _gl2(m):
    for entries in product((0, 1), repeat=m * m):
        A = [entries[i * m:(i + 1) * m] for i in range(m)]
        if Matrix(A).det() % 2:
            yield A


def test_lift_matrix_all_invertible_3x3():
    count = 0
    for A in _gl2(3):
        L = lift_matrix(A)
        assert abs(Matrix(L).det()) == 1
        assert [[x % 2 for x in r] for r in L] == [list(r) for r in A]
        count += 1
    assert count == 168


def test_lift_orthogonal_decomposition():
    subs, L = lift_orthogonal_decomposition([[(1, 1)], [(0, 1)]], 2)
    assert abs(Matrix(L).det()) == 1
    assert subgroup_sum(*subs) == hnf([(1, 0), (0, 1)])
    subs, _ = lift_orthogonal_decomposition([[(1, 0, 0), (0, 1, 0)], [(0, 0, 1)]], 3)
    assert subs[0] == hnf([(1, 0, 0), (0, 1, 0)], 3) and subs[1] == hnf([(0, 0, 1)], 3)
    with pytest.raises(NotABasis):
        lift_orthogonal_decomposition([[(1, 1)], [(1, 1)]], 2)


def test_adapted_basis_example():
    L1, L2 = hnf([(4, 0), (0, 1)]), hnf([(4, 0), (0, 2)])
    basis, ks = adapted_basis(2, L1, L2, [(1, 0)])
    assert ks == [1]
    assert abs(Matrix(basis).det()) == 1
    assert tuple(a - b for a, b in zip(basis[0], (1, 0))) in L1
    assert hnf([vscale(4, basis[0]), basis[1]]) == L1
    assert hnf([vscale(4, basis[0]), vscale(2, basis[1])]) == L2


def test_adapted_basis_rank3_instance():
    L1 = hnf([(4, 0, 0), (0, 4, 0), (0, 0, 1)])
    L2 = hnf([(4, 0, 0), (0, 4, 0), (0, 0, 2)])
    basis, ks = adapted_basis(3, L1, L2, [(1, 0, 0), (0, 1, 0)])
    assert ks == [1]
    assert abs(Matrix(basis).det()) == 1


def test_adapted_basis_rejects_bad_index():
    L1 = hnf([(4, 0), (0, 1)])
    with pytest.raises(PreconditionViolated):
        adapted_basis(2, L1, hnf([(4, 0), (0, 4)]), [(1, 0)])


# ---- quadratic forms over Z2

def all_forms(m):
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    for diag in product((0, 1), repeat=m):
        for pol in product((0, 1), repeat=len(pairs)):
            yield quadratic_from_data(diag, dict(zip(pairs, pol)))


def test_zero_form_is_two_F0_blocks():
    nf = classify_quadratic_z2(QuadraticFormZ2(2, (0, 0, 0, 0)))
    assert nf.signature == (("F", 0), ("F", 0))


def test_non_quadratic_table_rejected():
    with pytest.raises(NotQuadratic):
        classify_quadratic_z2(QuadraticFormZ2(2, (1, 0, 0, 0)))


def _check_normal_form(q):
    nf = classify_quadratic_z2(q)
    assert q.pullback(nf.basis) == block_form(nf.blocks)
    assert nf.count(("H", 1, 0)) == 0 and nf.count(("H", 0, 1)) == 0
    assert nf.count(("F", 1)) <= 1 and nf.count(("H", 0, 0)) <= 1
    assert not (nf.count(("F", 1)) and nf.count(("H", 0, 0)))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_normal_form_basis_realizes_block_form(m):
    for q in all_forms(m):
        _check_normal_form(q)


@st.composite
def random_form(draw):
    m = draw(st.integers(5, 8))
    diag = draw(st.lists(st.integers(0, 1), min_size=m, max_size=m))
    pol = {(i, j): draw(st.integers(0, 1)) for i in range(m) for j in range(i + 1, m)}
    return quadratic_from_data(diag, pol)


@settings(max_examples=25, deadline=None)
@given(random_form())
def test_normal_form_basis_realizes_block_form_large(q):
    _check_normal_form(q)
