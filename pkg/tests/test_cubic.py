import random

import pytest

from artifact import classify as cl
from artifact import herm3 as H
from artifact.constructors import hermitian_form_torus, regrade, signed_laurent
from artifact.cubic import (AhNElement, CubicPair, Twin, WVec, build_AhN, check_adjoint_identity,
                            coordinatization_report, coordinatize, hermitian_pair, matrix_construction,
                            pair_axioms, torus_conditions)
from artifact.errors import NoAdjoint, NormBasePointNotUnit, PreconditionViolated
from artifact.lattice import quotient
from artifact.torus_core import Sampler, triple


@pytest.fixture(scope="module")
def qctx():
    return H.make_context("quaternion")


@pytest.fixture(scope="module")
def qpair(qctx):
    return H.herm_pair(qctx)


def with_tables(pair, hform=None, diamond=None):
    return CubicPair(pair.E, pair.Lm, pair.in_W, pair.act_coeff, hform or pair.h_coeff,
                     diamond or pair.d_coeff, pair.period, pair.W_reps)


def small_B():
    return regrade(signed_laurent((1, -1)), [(2, 0), (0, 1)])


# ---- N = 0 pairs

def test_zero_cubic_form_has_adjoint():
    pr = hermitian_pair(small_B(), [(1, 0)], [(2, 0)])
    v = pr.random_w(random.Random(0), 2, 3)
    assert not pr.natural(v) and not pr.N(v)
    assert check_adjoint_identity(pr, Sampler("random", 2, 30, 0)).passed


def test_zero_cubic_form_matches_hermitian_form_torus():
    B = small_B()
    A = build_AhN(hermitian_pair(B, [(1, 0)], [(2, 0)]))
    ref = hermitian_form_torus(B, [(1, 0)], [(2, 0)])
    win = ref.box(2)
    assert win == A.box(2)
    assert all(A.coeff(l, m) == ref.coeff(l, m) for l in win for m in win)
    assert all(A.inv_sign(l) == ref.inv_sign(l) for l in win)
    assert cl.classify(A)["class"] == "II"


def test_zero_cubic_form_rejected_for_class_III():
    pr = hermitian_pair(small_B(), [(1, 0)], [(2, 0)])
    fails = torus_conditions(pr, require_class_III=True)
    assert ("class III", "N = 0") in fails
    with pytest.raises(PreconditionViolated):
        build_AhN(pr, require_class_III=True)


# ---- the Herm pair

def test_pair_axioms_on_herm_pair(qpair):
    assert pair_axioms(qpair, 1) == []


def test_zero_vector_and_scaling(qpair):
    z = WVec(qpair, {})
    assert not qpair.natural(z) and not qpair.N(z)
    v = qpair.random_w(random.Random(3), 1, 2)
    assert qpair.natural(v.scale(2)) == qpair.natural(v).scale(4)


def test_adjoint_family_on_herm_pair(qpair):
    r = check_adjoint_identity(qpair, Sampler("random", 1, 15, 0))
    assert r.passed and r.checked == 6 * 15


def _flip_one_coset(pair, a0, b0):
    P = pair.period
    key = {(P.reduce(a0), P.reduce(b0)), (P.reduce(b0), P.reduce(a0))}

    def d(a, b):
        c = pair.d_coeff(a, b)
        return -c if (P.reduce(a), P.reduce(b)) in key else c
    return with_tables(pair, diamond=d)


def test_sign_flip_breaks_adjoint_identity(qpair):
    reps = qpair.W_reps
    a0 = reps[0]
    b0 = next(b for b in reps if qpair.d_coeff(a0, b))
    bad = _flip_one_coset(qpair, a0, b0)
    r = check_adjoint_identity(bad, Sampler("random", 1, 100, 0), tags=("ADJ2",))
    assert not r.passed


def test_zeroed_natural_on_order_four_coset_detected(qctx, qpair):
    Q = quotient(3, qpair.Lm)
    a0 = next(r for r in qpair.W_reps if Q.order_of(r) == 4)
    c0 = Q.rep(a0)

    def d(a, b):
        if a == b and Q.rep(a) == c0:
            return 0
        return qpair.d_coeff(a, b)
    fails = torus_conditions(with_tables(qpair, diamond=d), adj_samples=0)
    assert any(cond == "natural nonzero" for cond, _ in fails)


def test_non_hermitian_form_detected(qpair):
    a0 = qpair.W_reps[0]

    def h(a, b):
        c = qpair.h_coeff(a, b)
        return 2 * c if a == a0 else c
    fails = torus_conditions(with_tables(qpair, hform=h), adj_samples=0)
    assert any(cond == "hermitian pair" for cond, _ in fails)


# ---- matrix construction and coordinatization

def test_matrix_construction_from_herm_triple(qctx):
    tr = H.herm_triple(qctx)
    sp = matrix_construction(tr, samples=4)
    assert check_adjoint_identity(sp, Sampler("random", 1, 4, 0)).passed
    rng = random.Random(1)
    vp = tr.sample_plus(rng)
    # adjoint swap on a pure plus vector
    nat = sp.natural(Twin(vp, tr.zero_minus()))
    assert nat == Twin(tr.zero_plus(), tr.sharp_plus(vp))
    k1, k2 = H.random_entry(qctx, rng, 1, 2, True), H.random_entry(qctx, rng, 1, 2, True)
    assert sp.estar(Twin(k1, k2)) == Twin(k2, k1)


def test_matrix_construction_algebra_is_structurable(qctx):
    tr = H.herm_triple(qctx)
    sp = matrix_construction(tr, samples=2)
    rng = random.Random(2)

    def rand():
        a = Twin(H.random_entry(qctx, rng, 1, 1, True), H.random_entry(qctx, rng, 1, 1, True))
        return AhNElement(sp, a, sp.random_w(rng))
    x, y, z = rand(), rand(), rand()
    assert (x * y).star() == y.star() * x.star()
    w, q = rand(), rand()
    lhs = triple(x, y, triple(z, w, q))
    rhs = triple(triple(x, y, z), w, q) - triple(z, triple(y, x, w), q) + triple(z, w, triple(x, y, q))
    assert lhs == rhs


def test_matrix_construction_rejects_broken_triple(qctx):
    tr = H.herm_triple(qctx)
    broken = type(tr)(**{**tr.__dict__, "cross_plus": lambda x, y: H.cross(x, y).emul(qctx.C.one().scale(2))})
    with pytest.raises(NoAdjoint):
        matrix_construction(broken, samples=2)


def test_coordinatization_recovers_composition_algebra(qctx):
    S = H.HermSpace(qctx)
    one = qctx.C.one()
    u1, u2 = S.slot(1, one), S.slot(2, one)
    co = coordinatize(S, u1, u2, samples=5)
    assert co.one == S.slot(3, one)
    assert coordinatization_report(co, samples=8).passed
    co = coordinatize(S, u1.scale(-1), u2, samples=3)
    assert coordinatization_report(co, samples=4).passed
    with pytest.raises(NormBasePointNotUnit):
        coordinatize(S, u1.scale(2), u2)
