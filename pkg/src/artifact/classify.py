"""Support data, class decision, incidence geometry and recognisers."""

from dataclasses import dataclass, field
from itertools import product

from .errors import NotClassI, NotClassIII, UnrecognizedGeometry
from .lattice import (QuadraticFormZ2, Subgroup, bits, classify_quadratic_z2, full_lattice,
                      hnf, lift_orthogonal_decomposition, quotient, scaled_lattice, unit,
                      vadd, vneg, vscale)
from .torus_core import epsilon, z2_add, z2_classes


@dataclass
class SupportData:
    S_minus: list
    Lambda_minus: Subgroup
    Gamma: Subgroup
    class_tag: str
    E_reps: list = field(default_factory=list)
    W_reps: list = field(default_factory=list)

    def to_json(self):
        return {"class": self.class_tag,
                "S_minus_reps": [list(r) for r in self.S_minus],
                "Lambda_minus": self.Lambda_minus.to_json(),
                "Gamma": self.Gamma.to_json()}


def support_data(h):
    reps = h.support_reps()
    skew = [r for r in reps if h.inv_sign(r) == -1]
    G = h.gamma
    if not skew:
        return SupportData([], Subgroup(h.rank, ()), G, "jordan", list(reps), [])
    Lm = hnf(list(h.period.basis) + skew, h.rank)
    E = [r for r in reps if r in Lm]
    W = [r for r in reps if r not in Lm]
    if not W:
        tag = "I"
    elif all(not h.coeff(a, b) or vadd(a, b) in Lm for a in W for b in W):
        tag = "II"
    else:
        tag = "III"
    return SupportData(skew, Lm, G, tag, E, W)


def is_associative(h):
    """Exact: the nucleus is a subalgebra, so testing generators in each slot suffices."""
    reps = h.support_reps()
    gens = set()
    for i in range(h.rank):
        for s in (1, -1):
            g = h.period_quotient().rep(vscale(s, unit(h.rank, i)))
            if h.in_support(g):
                gens.add(g)
    c = h.coeff
    for g in gens:
        for y in reps:
            for z in reps:
                for a, b, d in ((g, y, z), (y, g, z), (y, z, g)):
                    if c(a, b) * c(vadd(a, b), d) != c(b, d) * c(a, vadd(b, d)):
                        return False
    return True


# ---------------------------------------------------------------- geometry

@dataclass
class IncidenceGeometry:
    quotient_order: int
    points: list
    orders: dict
    lines: list
    reps: dict
    neg: dict

    def __post_init__(self):
        self._coll = set()
        for L in self.lines:
            for i in range(3):
                for j in range(3):
                    if i != j:
                        self._coll.add((L[i], L[j]))
        self._index = {p: i for i, p in enumerate(self.points)}

    def collinear(self, p, q):
        return (p, q) in self._coll

    def star_centres(self):
        out = []
        for c in self.points:
            if all(self.collinear(c, p) for p in self.points if p != c) and all(c in L for L in self.lines):
                out.append(c)
        return out

    @property
    def is_star(self):
        return bool(self.star_centres())

    def subclass(self):
        if self.is_star:
            return "IIIa"
        if all(o == 2 for o in self.orders.values()):
            return "IIIb"
        return "IIIc"

    def census(self):
        o2 = sum(1 for p in self.points if self.orders[p] == 2)
        return {"points": len(self.points), "order2": o2, "order4": len(self.points) - o2,
                "lines": len(self.lines)}

    def to_json(self):
        return {"quotient_order": self.quotient_order,
                "points": [{"coset": list(p), "order": self.orders[p]} for p in self.points],
                "lines": [[list(c) for c in L] for L in self.lines],
                "star": self.is_star, "subclass": self.subclass()}


def _line_sorted(a, b, c):
    return tuple(sorted((a, b, c)))


def geometry_from(n, Lm, support_reps, product_nonzero):
    """Generic geometry; product_nonzero(a, b, c) decides h(A^a, A^b <> A^c) != 0 on reps."""
    Q = quotient(n, Lm)
    reps = {}
    for r in sorted(support_reps):
        c = Q.rep(r)
        if any(c) and c not in reps:
            reps[c] = r
    points = sorted(reps)
    orders = {p: Q.order_of(p) for p in points}
    pset = set(points)
    lines = set()
    for i, a in enumerate(points):
        for b in points[i:]:
            c = Q.neg(Q.add(a, b))
            if c not in pset or c < b:
                continue
            ra, rb = reps[a], reps[b]
            rc = reps[c]
            if product_nonzero(ra, rb, rc):
                lines.add(_line_sorted(a, b, c))
    neg = {p: Q.neg(p) for p in points}
    return IncidenceGeometry(len(Q), points, orders, sorted(lines), reps, neg)


def geometry(h, sd=None):
    sd = sd or support_data(h)
    if sd.class_tag != "III":
        raise NotClassIII(f"geometry needs a class III torus, got {sd.class_tag}")

    def nonzero(a, b, c):
        return bool(h.coeff(b, c)) and bool(h.coeff(a, vadd(b, c)))

    return geometry_from(h.rank, sd.Lambda_minus, h.support_reps(), nonzero)


def pair_geometry(pair):
    """Geometry read off the h and diamond tables of a cubic pair (no algebra built)."""
    n = pair.E.rank
    # supp W is stable under Lambda_-, so one rep per coset decides membership
    reps = [r for r in quotient(n, pair.Lm) if pair.in_W(r)]

    def nonzero(a, b, c):
        return bool(pair.d_coeff(b, c)) and bool(pair.h_coeff(a, vadd(b, c)))

    return geometry_from(n, pair.Lm, reps, nonzero)


def subclass(g):
    return g.subclass()


def some_left_mult_invertible(h, sd=None):
    """Some homogeneous x in W has L_x invertible (checked on periodic reps)."""
    sd = sd or support_data(h)
    reps = h.support_reps()
    Q = h.period_quotient()
    for a in sd.W_reps:
        if all(h.coeff(a, b) for b in reps) and \
                sorted(Q.rep(vadd(a, b)) for b in reps) == sorted(reps):
            return True
    return False


def geometry_axioms(g):
    """Check the incidence axioms; returns a list of failure strings."""
    bad = []
    lines = g.lines
    for p in g.points:
        twice = None
        for L in lines:
            if L.count(p) == 2:
                twice = L
        if (twice is not None) != (g.orders[p] == 4):
            bad.append(f"tangent line at {p} vs order {g.orders[p]}")
    for p in g.points:
        for L in lines:
            if not any(q == p or g.collinear(p, q) for q in L):
                bad.append(f"point {p} not collinear with a point of {L}")
    for d in g.points:
        if g.orders[d] != 2:
            continue
        for a in g.points:
            if g.collinear(d, a):
                na = g.neg[a]
                if na != d and not g.collinear(d, na):
                    bad.append(f"{d} collinear with {a} but not with its negative")
    for d in g.points:
        if g.orders[d] != 2:
            continue
        for L in lines:
            for i in range(3):
                j, k = [x for x in range(3) if x != i]
                if d in (L[j], L[k]):
                    continue
                if L[j] == L[k]:
                    continue
                if g.collinear(d, L[j]) and g.collinear(d, L[k]) and d != L[i]:
                    bad.append(f"{d} collinear with two points of {L} but not on it")
    return bad


def star_axioms(g):
    bad = []
    cs = g.star_centres()
    for c in cs:
        if g.orders[c] != 2:
            bad.append(f"star centre {c} has order {g.orders[c]}")
    if len(cs) > 1 and not (len(g.points) == 3 and len(g.lines) == 1):
        bad.append("star centre not unique")
    return bad


# ---------------------------------------------------------------- class I recogniser

@dataclass
class Decomposition:
    associative: bool
    k: int
    lam2_type: str
    r: int
    label: str
    subgroups: list
    normal_form: object = None

    def labels(self):
        return (self.associative, self.k, self.lam2_type, self.r)

    def to_json(self):
        return {"associative": self.associative, "k": self.k, "Lambda2_type": self.lam2_type,
                "r": self.r, "label": self.label,
                "subgroups": [s.to_json() for s in self.subgroups]}


def _span(vs, n):
    s = {(0,) * n}
    for v in vs:
        s |= {z2_add(v, x) for x in s}
    return s


def _beta_hat(h, a, b):
    return 0 if epsilon(h, a) * epsilon(h, b) * epsilon(h, z2_add(a, b)) == 1 else 1


def _max_aniso_subspace(h, pool, n):
    best = []

    def ok(span):
        return all(epsilon(h, s) == -1 for s in span if any(s))

    def extend(basis, span, start):
        nonlocal best
        if len(basis) > len(best):
            best = list(basis)
        for i in range(start, len(pool)):
            v = pool[i]
            if v in span:
                continue
            new = span | {z2_add(v, s) for s in span}
            if ok(new):
                extend(basis + [v], new, i + 1)

    extend([], {(0,) * n}, 0)
    return best


def class_I_recognize(h, sd=None):
    sd = sd or support_data(h)
    if sd.class_tag != "I":
        raise NotClassI(f"torus is of class {sd.class_tag}, not I")
    n = h.rank
    if not sd.Gamma.contains_subgroup(scaled_lattice(n, 2)):
        raise NotClassI("2 Lambda is not contained in Gamma")
    cls = z2_classes(n)
    if is_associative(h):
        vals = [0] * (1 << n)
        for c in cls:
            vals[sum(b << i for i, b in enumerate(c))] = 1 if epsilon(h, c) == -1 else 0
        q = QuadraticFormZ2(n, tuple(vals))
        nf = classify_quadratic_z2(q)
        k = nf.count(("H", 1, 1))
        if nf.count(("F", 1)):
            t, tlabel = "(Z,eps-)", "C(1)"
        elif nf.count(("H", 0, 0)):
            t, tlabel = "(Z2,eps0)", "C*(2)"
        else:
            t, tlabel = "0", "F"
        r = nf.count(("F", 0))
        blocks, i = [], 0
        for tag in nf.blocks:
            size = 1 if tag[0] == "F" else 2
            blocks.append([bits(x, n) for x in nf.basis[i:i + size]])
            i += size
        subs, _ = lift_orthogonal_decomposition(blocks, n)
        label = f"C(2)^{k} x {tlabel} x P({r})"
        return Decomposition(True, k, t, r, label, subs, nf)
    # nonassociative: anisotropic 3-space from a nonzero associator
    Vp = None
    for a, b, c in product(cls, repeat=3):
        if h.coeff(a, b) * h.coeff(vadd(a, b), c) != h.coeff(b, c) * h.coeff(a, vadd(b, c)):
            Vp = [a, b, c]
            break
    if Vp is None:
        raise AssertionError("nonassociative handle without a nonzero associator on Lambda/2Lambda")
    span = _span(Vp, n)
    if len(span) != 8 or any(epsilon(h, s) != -1 for s in span if any(s)):
        raise AssertionError("associator triple does not span an anisotropic 3-space")
    W = [c for c in cls if all(_beta_hat(h, c, v) == 0 for v in Vp)]
    V3 = [c for c in W if epsilon(h, c) == 1]
    if len(_span(V3, n)) != len(V3):
        raise AssertionError("hermitian part of the complement is not a subspace")
    v3_basis = _basis_of(V3, n)
    V2 = _max_aniso_subspace(h, [c for c in W if any(c) and epsilon(h, c) == -1], n)
    k, r = len(V2), len(v3_basis)
    if 3 + k + r != n:
        raise AssertionError("dimensions of the decomposition do not add up")
    subs, _ = lift_orthogonal_decomposition([Vp, V2, v3_basis], n)
    label = f"C(3) x C({k}) x P({r})"
    return Decomposition(False, k, "-", r, label, subs)


def _basis_of(vectors, n):
    basis, span = [], {(0,) * n}
    for v in vectors:
        if v not in span:
            basis.append(v)
            span |= {z2_add(v, s) for s in span}
    return basis


def model_from_decomposition(dec):
    from .constructors import cayley, cayley_star2, laurent, tensor_all
    if dec.associative:
        parts = [cayley(2) for _ in range(dec.k)]
        parts.append({"(Z,eps-)": cayley(1), "(Z2,eps0)": cayley_star2(), "0": laurent(0)}[dec.lam2_type])
    else:
        parts = [cayley(3), cayley(dec.k)]
    parts.append(laurent(dec.r))
    parts = [p for p in parts if p.rank] or [laurent(0)]
    return tensor_all(*parts)


# ---------------------------------------------------------------- class III(c)

def iiic_identify(g):
    c = g.census()
    if c["points"] == 15 and c["order2"] == 3:
        return "quaternion_model"
    if c["points"] == 27 and c["order2"] == 3:
        return "octonion_model"
    raise UnrecognizedGeometry(f"census {c} matches neither model")


def iiic_pattern(g, n, Lm, lambdas, M):
    """Compare g with the points and lines predicted by lambda_1..3 and the lattice M.

    Returns a list of mismatch descriptions (empty when g has the expected shape).
    """
    if not M.contains_subgroup(Lm):
        raise UnrecognizedGeometry("Lambda_- is not contained in M")
    Q = quotient(n, Lm)
    m_cosets = [c for c in Q if c in M]
    two = [Q.rep(vscale(2, l)) for l in lambdas]
    fam = [sorted({Q.rep(vadd(l, m)) for m in m_cosets}) for l in lambdas]
    points = set(two).union(*fam)
    lines = {_line_sorted(*two)}
    for i in range(3):
        for a in fam[i]:
            b = Q.neg(Q.add(a, two[i]))
            lines.add(_line_sorted(a, b, two[i]))
    f3 = set(fam[2])
    for a in fam[0]:
        for b in fam[1]:
            c = Q.neg(Q.add(a, b))
            if c in f3:
                lines.add(_line_sorted(a, b, c))
    out = []
    got_p, got_l = set(g.points), set(g.lines)
    if got_p != points:
        out.append(f"points: {len(got_p - points)} unexpected, {len(points - got_p)} missing")
    if got_l != lines:
        out.append(f"lines: {len(got_l - lines)} unexpected, {len(lines - got_l)} missing")
    return out


def extract_hN(h, sd=None):
    sd = sd or support_data(h)
    if sd.class_tag != "III":
        raise NotClassIII(f"extract_hN needs class III, got {sd.class_tag}")
    from .cubic import CubicPair
    Lm = sd.Lambda_minus
    E = _subalgebra(h, Lm)

    def w_support(a):
        return h.in_support(a) and a not in Lm

    def act(g, a):
        return h.coeff(g, a)

    def hform(a, b):
        return h.coeff(a, b) if vadd(a, b) in Lm else 0

    def diamond(a, b):
        return h.coeff(a, b) if vadd(a, b) not in Lm else 0

    return CubicPair(E, Lm, w_support, act, hform, diamond, h.period, sd.W_reps)


def _subalgebra(h, L):
    from .torus_core import TorusHandle
    return TorusHandle(h.rank, lambda l: l in L and h.in_support(l), h.coeff, h.inv_sign,
                       {"op": "subalgebra", "A": h.recipe}, h.period, h.field_tag)


def classify(h):
    """Full classification report as a plain dict."""
    sd = support_data(h)
    out = {"class": sd.class_tag}
    if sd.class_tag == "I":
        dec = class_I_recognize(h, sd)
        out["recognized"] = dec.to_json()
    if sd.class_tag == "III":
        g = geometry(h, sd)
        out["subclass"] = g.subclass()
        out["census"] = g.census()
        if out["subclass"] == "IIIc":
            out["model"] = iiic_identify(g)
    out["Lambda_minus"] = sd.Lambda_minus.to_json() if sd.class_tag != "jordan" else None
    out["Gamma"] = sd.Gamma.to_json()
    return out
