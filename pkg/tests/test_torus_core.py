from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.constructors import cayley, laurent, plus_algebra, tensor_all
from artifact.errors import HandleMismatch, PreconditionViolated
from artifact.lattice import bits, full_lattice, scaled_lattice, vadd
from artifact.torus_core import (Element, Sampler, alpha, associator, beta, check_identity, circ,
                                 commutator, epsilon, inverse_homogeneous, invariant_table,
                                 max_anisotropic_dim, mu3, verify_periodicity, window_central)

from oracles import CDOracle, mask_of, max_anisotropic_bruteforce

C1, C2, C3 = cayley(1), cayley(2), cayley(3)


def test_generator_squares_to_laurent_variable():
    x = C1.element((1,))
    assert x * x == C1.element((2,))


def test_distinct_generators_anticommute():
    x1, x2 = C2.element((1, 0)), C2.element((0, 1))
    assert x2 * x1 == -(x1 * x2)


def test_unit_acts_trivially():
    x = C3.element((1, 1, 0), 3)
    assert C3.one() * x == x and x * C3.one() == x


def test_associator_of_three_generators():
    x1, x2, x3 = (C3.element(d) for d in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    a = associator(x1, x2, x3)
    assert a == ((x1 * x2) * x3).scale(2)
    assert a


def test_alternative_on_repeated_argument():
    x = C3.element((1, 1, 0)) + C3.element((0, 0, 1), 2)
    y = C3.element((1, 0, 1))
    assert not associator(x, x, y) and not associator(y, x, x)


def test_laurent_commutator_vanishes():
    P = laurent(2)
    assert not commutator(P.element((1, 0)), P.element((0, -3)))


def test_mixed_handles_rejected():
    with pytest.raises(HandleMismatch):
        C2.one() + C3.one()


def test_inverses():
    assert inverse_homogeneous(C3.one()) == C3.one()
    x = C1.element((1,))
    assert inverse_homogeneous(x) == C1.element((-1,))
    P = laurent(1)
    assert inverse_homogeneous(P.element((1,))) == P.element((-1,))
    with pytest.raises(PreconditionViolated):
        inverse_homogeneous(x + C1.one())


def test_plus_algebra_element_can_be_non_invertible():
    J = plus_algebra(C2)
    # x1 and x2 anticommute, so their Jordan product vanishes
    x1, x2 = J.element((1, 0)), J.element((0, 1))
    assert not x1 * x2


def test_invariant_examples():
    for i in range(3):
        e = tuple(1 if j == i else 0 for j in range(3))
        assert epsilon(C3, e) == -1
    assert beta(C2, (1, 0), (0, 1)) == -1
    assert alpha(C3, (1, 0, 0), (0, 1, 0), (0, 0, 1)) == -1
    assert mu3(C3, (1, 0, 0), (0, 1, 0), (0, 0, 1)) == -1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_invariants_match_doubling_oracle(n):
    O, h = CDOracle(n), cayley(n)
    cls = [bits(s, n) for s in range(1 << n)]
    T = invariant_table(h)
    for a in cls:
        assert T.epsilon[a] == O.eps(mask_of(a))
        for b in cls:
            assert T.beta[(a, b)] == O.beta(mask_of(a), mask_of(b))
            for c in cls:
                assert T.alpha[(a, b, c)] == O.alpha(mask_of(a), mask_of(b), mask_of(c))


def test_invariants_unchanged_by_shift_in_2lambda():
    T = invariant_table(C3)
    shifts = [(2, 0, 0), (0, -2, 2), (4, 2, -2)]
    for (a, b, c), v in T.alpha.items():
        for s in shifts:
            assert alpha(C3, vadd(a, s), b, c) == v
    for a, v in T.epsilon.items():
        assert epsilon(C3, vadd(a, (2, 2, 0))) == v


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 3)])
def test_max_anisotropic_dim(n, expected):
    assert max_anisotropic_dim(cayley(n)) == expected
    assert max_anisotropic_bruteforce(n, CDOracle(n).eps) == expected


def test_structurable_on_laurent_exhaustive():
    r = check_identity(laurent(2), "structurable", Sampler("exhaustive", 1))
    assert r.passed and r.checked == 9 ** 5


def test_structurable_on_associative_with_involution():
    assert check_identity(C2, "structurable", Sampler("random", 2, 300, 1)).passed


def test_identity_suite_on_octonion_torus():
    assert check_identity(C3, "alternative", Sampler("exhaustive", 1)).passed
    assert check_identity(C3, "skew_alternative", Sampler("exhaustive", 1)).passed
    assert not check_identity(C3, "associative", Sampler("exhaustive", 1)).passed
    for tag in ("strid_a", "strid_b", "strid_c"):
        assert check_identity(C3, tag, Sampler("random", 2, 200, 0)).passed


def test_plus_algebra_is_jordan():
    assert check_identity(plus_algebra(tensor_all(C2, laurent(1))), "commutative_jordan",
                          Sampler("random", 1, 300, 0)).passed


def test_reports_are_deterministic_and_echo_seed():
    a = check_identity(C3, "structurable", Sampler("random", 2, 50, 7)).to_json()
    b = check_identity(C3, "structurable", Sampler("random", 2, 50, 7)).to_json()
    assert a == b and a["seed"] == 7 and a["samples"] == 50


def test_periodicity():
    assert verify_periodicity(laurent(1), full_lattice(1), 2).passed
    assert verify_periodicity(C3, scaled_lattice(3, 2), 2).passed


def test_centre_of_octonion_torus_on_window():
    assert sorted(window_central(C3, 1)) == [(0, 0, 0)]
    assert sorted(window_central(tensor_all(C2, laurent(1)), 1)) == [(0, 0, -1), (0, 0, 0), (0, 0, 1)]


def test_powers_of_homogeneous_elements_nonzero():
    h = tensor_all(C3, C2)
    for d in [(1, 0, 1, 1, 0), (1, 1, 1, 1, 1), (0, 0, 1, 0, 1)]:
        x = h.element(d)
        p = h.one()
        xi = inverse_homogeneous(x)
        q = h.one()
        for _ in range(8):
            p, q = p * x, q * xi
            assert p and q


def test_hermitian_degrees_are_circ_of_skew_degrees():
    h = tensor_all(C3, C3)
    win = h.box(1)
    skew = [d for d in win if h.inv_sign(d) == -1]
    for d in win:
        if h.inv_sign(d) != 1 or not any(d):
            continue
        found = False
        for a in skew:
            b = tuple(x - y for x, y in zip(d, a))
            if h.in_support(b) and h.inv_sign(b) == -1 and circ(h.element(a), h.element(b)):
                found = True
                break
        assert found, d


# ---- element-level properties

degree3 = st.tuples(*[st.integers(-2, 2)] * 3)
coef = st.integers(-4, 4).filter(bool).map(Fraction)


@st.composite
def element3(draw):
    terms = draw(st.dictionaries(degree3, coef, min_size=1, max_size=3))
    return Element(C3, terms)


@settings(max_examples=60, deadline=None)
@given(element3(), element3(), element3())
def test_octonion_torus_laws(x, y, z):
    assert (x * y).star() == y.star() * x.star()
    assert x * (y + z) == x * y + x * z
    assert associator(x, x, y) == Element(C3)
    assert associator(x, y, z) == -associator(y, x, z)
