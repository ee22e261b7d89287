import pytest

from artifact import classify as cl
from artifact import herm3 as H
from artifact.constructors import (cayley, flagship_class_I, flagship_class_II, flagship_IIIa,
                                   flagship_IIIb, laurent, tensor, tensor_all)
from artifact.cubic import build_AhN
from artifact.errors import NotClassIII, UnrecognizedGeometry
from artifact.lattice import hnf


def labels(h):
    return cl.classify(h)["recognized"]


def test_jordan_torus_has_no_skew_part():
    out = cl.classify(laurent(2))
    assert out["class"] == "jordan" and out["Lambda_minus"] is None


@pytest.mark.parametrize("factors,label,assoc", [
    ((3,), "C(3) x C(0) x P(0)", False),
    ((3, 1), "C(3) x C(1) x P(0)", False),
    ((2, 2), "C(2)^2 x F x P(0)", True),
])
def test_class_I_labels(factors, label, assoc):
    r = labels(tensor_all(*(cayley(n) for n in factors)))
    assert r["label"] == label and r["associative"] is assoc


def test_class_I_with_laurent_factor():
    r = labels(tensor(cayley(2), laurent(1)))
    assert (r["k"], r["r"], r["Lambda2_type"]) == (1, 1, "0")


def test_flagship_class_I():
    r = labels(flagship_class_I())
    assert r["label"] == "C(3) x C(3) x P(1)"
    assert (r["k"], r["r"], r["Lambda2_type"], r["associative"]) == (3, 1, "-", False)


def test_flagship_class_II():
    assert cl.classify(flagship_class_II())["class"] == "II"


def test_flagship_IIIa():
    h = flagship_IIIa()
    out = cl.classify(h)
    assert out["subclass"] == "IIIa"
    assert out["census"] == {"points": 3, "order2": 1, "order4": 2, "lines": 2}
    g = cl.geometry(h)
    assert cl.geometry_axioms(g) == [] and cl.star_axioms(g) == []
    assert len(g.star_centres()) == 1
    assert cl.some_left_mult_invertible(h)


def test_flagship_IIIb():
    h = flagship_IIIb()
    out = cl.classify(h)
    assert out["subclass"] == "IIIb"
    assert out["census"] == {"points": 9, "order2": 9, "order4": 0, "lines": 6}
    g = cl.geometry(h)
    assert cl.geometry_axioms(g) == [] and g.star_centres() == []


def test_geometry_needs_class_III():
    with pytest.raises(NotClassIII):
        cl.geometry(cayley(3))
    with pytest.raises(NotClassIII):
        cl.extract_hN(flagship_class_II())


def test_extract_and_rebuild_round_trip():
    h = flagship_IIIa()
    A = build_AhN(cl.extract_hN(h))
    win = h.box(1)
    assert A.box(1) == win
    assert all(A.coeff(a, b) == h.coeff(a, b) for a in win for b in win)
    assert all(A.inv_sign(a) == h.inv_sign(a) for a in win)


@pytest.mark.parametrize("variant,points,lines,model", [
    ("quaternion", 15, 29, "quaternion_model"),
    ("octonion", 27, 89, "octonion_model"),
])
def test_iiic_geometry_from_pair(variant, points, lines, model):
    ctx = H.make_context(variant)
    g = cl.pair_geometry(H.herm_pair(ctx))
    c = g.census()
    assert (c["points"], c["order2"], c["lines"]) == (points, 3, lines)
    assert g.subclass() == "IIIc"
    assert cl.iiic_identify(g) == model
    assert cl.geometry_axioms(g) == []
    assert cl.iiic_pattern(g, ctx.rank, ctx.Lm, ctx.lambdas, ctx.M) == []


def test_iiic_pattern_rejects_small_M():
    ctx = H.make_context("quaternion")
    g = cl.pair_geometry(H.herm_pair(ctx))
    with pytest.raises(UnrecognizedGeometry):
        cl.iiic_pattern(g, 3, ctx.Lm, ctx.lambdas, hnf([(8, 0, 0), (0, 8, 0), (0, 0, 1)], 3))


def test_iiic_identify_rejects_other_census():
    with pytest.raises(UnrecognizedGeometry):
        cl.iiic_identify(cl.geometry(flagship_IIIb()))


def test_classify_full_quaternion_herm_algebra():
    out = cl.classify(H.build_A_herm("quaternion"))
    assert out["class"] == "III" and out["subclass"] == "IIIc"
    assert out["model"] == "quaternion_model"
    assert out["census"]["points"] == 15 and out["census"]["lines"] == 29
