import random

import pytest

from artifact import herm3 as H
from artifact.classify import classify, pair_geometry
from artifact.errors import IotaMissing, LambdaSumNonzero, NoAdmissibleTheta, WProductNotOne
from artifact.lattice import quotient, scaled_lattice, vadd, vscale
from artifact.torus_core import epsilon, verify_periodicity, z2_classes


@pytest.fixture(scope="module")
def qctx():
    return H.make_context("quaternion")


@pytest.fixture(scope="module")
def octx():
    return H.make_context("octonion")


def diag(ctx, *ks):
    z = H.Element(ctx.C)
    return H.HermMatrix([k if k is not None else z for k in ks], [z, z, z])


def test_trace_of_identity(qctx):
    one = qctx.C.one()
    I3 = diag(qctx, one, one, one)
    assert H.T_form(I3, I3) == one.scale(3)
    assert H.sharp(I3) == I3
    assert H.N_form(I3) == one


def test_norm_and_adjoint_of_diagonal(qctx):
    C = qctx.C
    a, b, c = C.element((4, 0, 0)), C.element((0, 4, 0), 2), C.element((0, 0, 1), -3)
    assert H.N_form(diag(qctx, a, b, c)) == (a * b) * c
    assert H.sharp(diag(qctx, a, b, None)) == diag(qctx, None, None, a * b)


@pytest.mark.parametrize("variant", ["quaternion", "octonion"])
def test_adjoint_identity_on_random_matrices(variant):
    ctx = H.make_context(variant)
    assert H.herm_adjoint_report(ctx, samples=60, seed=1, box=1).passed


def test_lambda_sum_must_vanish(qctx):
    with pytest.raises(LambdaSumNonzero):
        H.grade(qctx, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_grading_degrees(qctx):
    g = H.grade(qctx)
    l1, l2, l3 = qctx.lambdas
    one = qctx.C.one()
    S = H.HermSpace(qctx)
    # the [12] slot sits in degree -lambda_3 = lambda_1 + lambda_2
    assert g.decompose(S.slot(3, one)) == {vadd(l1, l2): 1}
    assert g.decompose(S.diag(1, one)) == {vscale(2, l1): 1}
    assert g.fine_report(1).passed


def test_quotient_sizes(qctx, octx):
    assert len(quotient(3, qctx.Lm)) == 16
    assert len(quotient(3, octx.Lm)) == 32


def test_theta_on_the_quaternion_variant(qctx):
    assert H.theta_report(qctx, 1).passed
    for w in qctx.w:
        assert H.theta(qctx, w) == w


def test_theta_on_the_octonion_variant(octx):
    v = octx.C.element(octx.gens[2])
    assert H.theta(octx, v) == v.scale(H.I)
    assert H.theta_report(octx, 1).passed
    assert H.theta_candidates(octx, 1) == [H.I, -H.I]


def test_psi_is_hermitian_and_preserves_norm(qctx, octx):
    for ctx in (qctx, octx):
        assert H.psi_report(ctx, samples=10, seed=2).passed


def test_psi_matches_natural_map(qctx):
    pair = H.herm_pair(qctx)
    assert H.psi1_report(pair, samples=15, seed=0).passed


def test_octonion_variant_needs_iota():
    with pytest.raises(IotaMissing):
        H.make_context("octonion", field_tag="rationals")


def test_w_product_checked(qctx):
    v1, v2, v3 = qctx.w
    with pytest.raises(WProductNotOne):
        H.make_context("quaternion", w=(v1, v2, v3.scale(2)))
    with pytest.raises(WProductNotOne):
        H.make_context("quaternion", w=(v2, v1, v3))


def test_octonion_prime_has_no_admissible_theta():
    ctx = H.make_context("octonion_prime")
    assert H.theta_candidates(ctx, 1) == []
    for w in H.w_choices(ctx)[:2]:
        trial = H.make_context("octonion_prime", w=w)
        with pytest.raises(NoAdmissibleTheta):
            H.build_psi(trial)


@pytest.fixture(scope="module")
def q_herm():
    return H.build_A_herm("quaternion")


def test_geometry_independent_of_w(qctx):
    base = pair_geometry(H.herm_pair(qctx))
    v1, v2, _ = qctx.w
    a, b = v1.scale(-1), v2.scale(-1)
    alt = H.make_context("quaternion", w=(a, b, H.inverse_homogeneous(a * b)))
    H.build_psi(alt)
    other = pair_geometry(H.herm_pair(alt))
    assert (base.points, base.lines) == (other.points, other.lines)


def test_invariants_independent_of_w(q_herm):
    ctx = q_herm.meta["context"]
    v1, v2, _ = ctx.w
    a, b = v1.scale(-1), v2.scale(-1)
    h2 = H.build_A_herm("quaternion", w=(a, b, H.inverse_homogeneous(a * b)))
    assert classify(h2) == classify(q_herm)
    # products of homogeneous elements may vanish here, so only epsilon is compared
    cls = z2_classes(3)
    assert [epsilon(h2, c) for c in cls] == [epsilon(q_herm, c) for c in cls]


def test_periodicity_of_herm_algebra(q_herm):
    assert verify_periodicity(q_herm, scaled_lattice(3, 4), 1).passed
