"""Hermitian forms with a semilinear cubic companion, the adjoint calculus, and A(h, N)."""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .errors import (AdjointFails, DegreeOutsideSupport, NoAdjoint, NormBasePointNotUnit,
                     PreconditionViolated)
from .lattice import full_lattice, hnf, quotient, scaled_lattice, subgroup_sum, vadd, vneg, vscale
from .scalars import fmt, simplify, to_json
from .torus_core import ONE, ZERO, Element, Report, Sampler, TorusHandle, random_degree

HALF = Fraction(1, 2)
SIXTH = Fraction(1, 6)


class WVec:
    """Sparse vector in the graded module W of a CubicPair."""

    __slots__ = ("pair", "terms")

    def __init__(self, pair, terms=None):
        self.pair = pair
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __add__(self, o):
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, ZERO) + v
        return WVec(self.pair, t)

    def __neg__(self):
        return WVec(self.pair, {k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        return WVec(self.pair, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, o):
        return isinstance(o, WVec) and \
            {k: simplify(v) for k, v in self.terms.items()} == {k: simplify(v) for k, v in o.terms.items()}

    def __bool__(self):
        return bool(self.terms)

    def to_json(self):
        return {"terms": [dict(degree=list(d), **to_json(c)) for d, c in sorted(self.terms.items())]}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{fmt(c)}*w{list(d)}" for d, c in sorted(self.terms.items()))


class CubicPair:
    """(h, N) on a finely graded E-module W, given by scalar tables on basis degrees.

    e_g w_a = act(g, a) w_{g+a};  h(w_a, w_b) = hform(a, b) e_{a+b};
    w_a <> w_b = diamond(a, b) w_{a+b}.  h is linear in the first slot.
    """

    def __init__(self, E, Lm, w_support, act, hform, diamond, period, W_reps=None, meta=None):
        self.E = E
        self.Lm = Lm
        self._ws = w_support
        self._act, self._h, self._d = act, hform, diamond
        self.period = period
        self.meta = dict(meta or {})
        self._memo = {}
        if W_reps is None:
            W_reps = [r for r in quotient(E.rank, period) if w_support(r)]
        self.W_reps = list(W_reps)

    @property
    def rank(self):
        return self.E.rank

    def in_W(self, a):
        key = ("w", a)
        if key not in self._memo:
            self._memo[key] = bool(self._ws(a))
        return self._memo[key]

    def _table(self, name, f, a, b):
        key = (name, a, b)
        v = self._memo.get(key)
        if v is None:
            v = simplify(f(a, b))
            self._memo[key] = v
        return v

    def act_coeff(self, g, a):
        return self._table("act", self._act, g, a)

    def h_coeff(self, a, b):
        return self._table("h", self._h, a, b)

    def d_coeff(self, a, b):
        return self._table("d", self._d, a, b)

    # ---- vectors

    def zero_w(self):
        return WVec(self)

    def basis(self, a, c=ONE):
        a = tuple(a)
        if not self.in_W(a):
            raise DegreeOutsideSupport(f"{list(a)} is not a degree of W")
        return WVec(self, {a: simplify(c)})

    def emul(self, e, v):
        if not isinstance(e, Element):
            return v.scale(e)
        out = {}
        for g, c in e.terms.items():
            for a, d in v.terms.items():
                k = self.act_coeff(g, a)
                if k:
                    s = vadd(g, a)
                    out[s] = out.get(s, ZERO) + c * d * k
        return WVec(self, out)

    def estar(self, e):
        return e.star()

    def h(self, u, v):
        out = {}
        for a, c in u.terms.items():
            for b, d in v.terms.items():
                k = self.h_coeff(a, b)
                if k:
                    s = vadd(a, b)
                    out[s] = out.get(s, ZERO) + c * d * k
        return Element(self.E, out)

    def diamond(self, u, v):
        out = {}
        for a, c in u.terms.items():
            for b, d in v.terms.items():
                k = self.d_coeff(a, b)
                if k:
                    s = vadd(a, b)
                    out[s] = out.get(s, ZERO) + c * d * k
        return WVec(self, out)

    def natural(self, v):
        return self.diamond(v, v).scale(HALF)

    def N(self, v):
        return self.h(v, self.diamond(v, v)).scale(SIXTH)

    def random_w(self, rng, box, terms=2):
        v = WVec(self)
        for _ in range(rng.randint(1, terms)):
            d = _random_w_degree(self, rng, box)
            v = v + self.basis(d, Fraction(rng.choice((-2, -1, 1, 2, 3))))
        return v

    def window(self, k):
        return [d for d in product(range(-k, k + 1), repeat=self.rank) if self.in_W(d)]

    def to_json(self):
        reps = sorted(self.W_reps)
        h = [[list(a), list(b), to_json(self.h_coeff(a, b))] for a in reps for b in reps if self.h_coeff(a, b)]
        d = [[list(a), list(b), to_json(self.d_coeff(a, b))] for a in reps for b in reps if self.d_coeff(a, b)]
        return {"rank": self.rank, "Lambda_minus": self.Lm.to_json(), "period": self.period.to_json(),
                "W_reps": [list(r) for r in reps], "h": h, "diamond": d}


def _random_w_degree(pair, rng, box, tries=10000):
    for _ in range(tries):
        d = tuple(rng.randint(-box, box) for _ in range(pair.rank))
        if pair.in_W(d):
            return d
    raise PreconditionViolated("no degree of W in the sampling box")


# ---------------------------------------------------------------- adjoint identity

ADJ_TAGS = ("ADJ", "ADJ1", "ADJ2", "ADJ3", "ADJ4", "ADJ5")
ADJ_ARITY = {"ADJ": 1, "ADJ1": 2, "ADJ2": 3, "ADJ3": 4, "ADJ4": 2, "ADJ5": 2}


def adj_sides(pair, tag, vs):
    """Both sides of one member of the adjoint family, for any pair-like object."""
    d, nat, h, em = pair.diamond, pair.natural, pair.h, pair.emul
    if tag == "ADJ":
        v, = vs
        return nat(nat(v)), em(pair.N(v), v)
    if tag == "ADJ1":
        w, v = vs
        vn = nat(v)
        return d(d(w, v), vn), em(pair.N(v), w) + em(h(w, vn), v)
    if tag == "ADJ2":
        w, u, v = vs
        vn, uv = nat(v), d(u, v)
        lhs = d(d(w, u), vn) + d(d(w, v), uv)
        return lhs, em(h(u, vn), w) + em(h(w, uv), v) + em(h(w, vn), u)
    if tag == "ADJ3":
        w, u, x, v = vs
        lhs = d(d(w, u), d(x, v)) + d(d(w, x), d(u, v)) + d(d(w, v), d(u, x))
        rhs = em(h(u, d(x, v)), w) + em(h(w, d(u, x)), v) + em(h(w, d(u, v)), x) + em(h(w, d(x, v)), u)
        return lhs, rhs
    if tag == "ADJ4":
        v, w = vs
        return nat(d(v, w)) + d(nat(v), nat(w)), em(h(w, nat(v)), w) + em(h(v, nat(w)), v)
    if tag == "ADJ5":
        u, v = vs
        vn = nat(v)
        return d(d(u, vn), v), em(pair.estar(pair.N(v)), u) + em(h(u, v), vn)
    raise ValueError(f"unknown identity {tag}")


def check_adjoint_identity(pair, sampler=None, tags=ADJ_TAGS, terms=2):
    """ADJ and its polarizations on seeded random vectors (sums of basis vectors)."""
    sampler = sampler or Sampler("random", 2, 200, 0)
    rep = Report("adjoint", "random", sampler.box, sampler.samples, sampler.seed)
    rng = random.Random(sampler.seed)
    for tag in tags:
        for _ in range(sampler.samples):
            vs = [pair.random_w(rng, sampler.box, terms) for _ in range(ADJ_ARITY[tag])]
            rep.checked += 1
            lhs, rhs = adj_sides(pair, tag, vs)
            if lhs != rhs:
                rep.add([_first_degree(v) for v in vs], lhs, rhs)
                rep.violations[-1]["tag"] = tag
    rep.notes.append("tags: " + ",".join(tags))
    return rep


def _first_degree(v):
    t = getattr(v, "terms", None)
    if t:
        return sorted(t)[0]
    return ()


def pair_axioms(pair, k=1):
    """Hermitian h, symmetric bi-semilinear <>, symmetric h(u, v<>w), nondegeneracy; on a window."""
    bad = []
    E = pair.E
    win = pair.window(k)
    ewin = [g for g in E.box(k) if g in pair.Lm]
    for a in win:
        for b in win:
            s = vadd(a, b)
            hab, hba = pair.h_coeff(a, b), pair.h_coeff(b, a)
            if hab or hba:
                if E.inv_sign(s) * hab != hba:
                    bad.append(f"h not hermitian at {list(a)}, {list(b)}")
            if pair.d_coeff(a, b) != pair.d_coeff(b, a):
                bad.append(f"<> not symmetric at {list(a)}, {list(b)}")
    for a in win:
        if not pair.h_coeff(a, vneg(a)):
            bad.append(f"h degenerate at {list(a)}")
    for g in ewin:
        for a in win:
            ga = vadd(g, a)
            c = pair.act_coeff(g, a)
            for b in win:
                # h(e w_a, w_b) = e h(w_a, w_b);  (e w_a) <> w_b = e^* (w_a <> w_b)
                if c * pair.h_coeff(ga, b) != pair.h_coeff(a, b) * E.coeff(g, vadd(a, b)):
                    bad.append(f"h not E-linear at {list(g)}, {list(a)}, {list(b)}")
                ab = vadd(a, b)
                rhs = E.inv_sign(g) * pair.d_coeff(a, b) * pair.act_coeff(g, ab) if pair.in_W(ab) else ZERO
                if c * pair.d_coeff(ga, b) != rhs:
                    bad.append(f"<> not semilinear at {list(g)}, {list(a)}, {list(b)}")
    vs = {a: pair.basis(a) for a in win}
    for a, b, c in product(win, repeat=3):
        if not pair.in_W(vadd(b, c)) and not pair.d_coeff(b, c):
            continue
        ref = pair.h(vs[a], pair.diamond(vs[b], vs[c]))
        for x, y, z in permutations((a, b, c)):
            if pair.h(vs[x], pair.diamond(vs[y], vs[z])) != ref:
                bad.append(f"h(u, v<>w) not symmetric at {list(a)}, {list(b)}, {list(c)}")
                break
    return bad


# ---------------------------------------------------------------- A(h, N)

def gamma_of_E(E):
    """Support of E_+, the centre of a commutative associative E with involution."""
    return hnf(list(E.period.basis) + [r for r in E.support_reps() if E.inv_sign(r) == 1], E.rank)


def torus_conditions(pair, require_class_III=False, adj_samples=20):
    """Failed torus conditions as (condition, message) pairs; empty when all hold.

    The class III condition is only checked when requested.
    """
    fails = []
    E, Lm, n = pair.E, pair.Lm, pair.rank
    ereps = E.support_reps()
    if not Lm.is_full() or not Lm.contains_subgroup(E.period) or \
            not all(E.in_support(r) for r in quotient(n, E.period) if r in Lm):
        fails.append(("E torus", "support of E is not the subgroup Lambda_-"))
    c = E.coeff
    for a in ereps:
        if not c(a, vneg(a)):
            fails.append(("E torus", f"E^{list(a)} is not invertible"))
        for b in ereps:
            if c(a, b) != c(b, a):
                fails.append(("E torus", "E is not commutative"))
            if E.inv_sign(vadd(a, b)) * c(a, b) != E.inv_sign(a) * E.inv_sign(b) * c(b, a):
                fails.append(("E torus", "* is not an involution of E"))
            for d in ereps:
                if c(a, b) * c(vadd(a, b), d) != c(b, d) * c(a, vadd(b, d)):
                    fails.append(("E torus", "E is not associative"))
                    break
    if any(r in Lm for r in pair.W_reps):
        fails.append(("W support", "supp(W) meets Lambda_-"))
    if not pair.W_reps or subgroup_sum(Lm, hnf(pair.W_reps, n)) != full_lattice(n):
        fails.append(("W support", "Lambda_- and supp(W) do not generate Lambda"))
    gE = gamma_of_E(E)
    if not gE.contains_subgroup(scaled_lattice(n, 4)):
        fails.append(("4 Lambda central", "4 Lambda is not contained in Gamma(E)"))
    for a in pair.W_reps:
        if vscale(2, a) not in gE and not pair.natural(pair.basis(a)):
            fails.append(("natural nonzero", f"natural vanishes on W^{list(a)} although 2a is not in Gamma(E)"))
    fails.extend(("hermitian pair", m) for m in pair_axioms_reps(pair))
    if adj_samples:
        rep = check_adjoint_identity(pair, Sampler("random", 1, adj_samples, 0), ("ADJ",))
        if not rep.passed:
            fails.append(("adjoint identity", f"{len(rep.violations)} sampled violations of ADJ"))
    if require_class_III:
        if not any(pair.d_coeff(a, b) for a in pair.W_reps for b in pair.W_reps):
            fails.append(("class III", "N = 0"))
        if all(E.inv_sign(r) == 1 for r in ereps):
            fails.append(("class III", "the involution on E is trivial"))
    return fails


def pair_axioms_reps(pair):
    """Nondegeneracy and hermitian symmetry of h on periodic representatives."""
    bad = []
    E = pair.E
    for a in pair.W_reps:
        if not pair.h_coeff(a, vneg(a)):
            bad.append(f"h degenerate at {list(a)}")
        for b in pair.W_reps:
            s = vadd(a, b)
            if s in pair.Lm and E.inv_sign(s) * pair.h_coeff(a, b) != pair.h_coeff(b, a):
                bad.append(f"h not hermitian at {list(a)}, {list(b)}")
    return bad


def build_AhN(pair, require_class_III=False, adj_samples=20):
    """E + W with (a,v)(b,w) = (ab + h(v,w), aw + b^* v + v<>w) and (a,v)^* = (a^*, v)."""
    fails = torus_conditions(pair, require_class_III, adj_samples)
    if fails:
        cond, msg = fails[0]
        raise PreconditionViolated(f"A(h,N) torus condition {cond} fails: {msg}", f"torus condition {cond}")
    E, Lm, n = pair.E, pair.Lm, pair.rank

    def part(l):
        if l in Lm:
            return 0 if E.in_support(l) else None
        return 1 if pair.in_W(l) else None

    def coeff(l, m):
        pl, pm = part(l), part(m)
        if pl == 0 and pm == 0:
            return E.coeff(l, m)
        if pl == 0:
            return pair.act_coeff(l, m)
        if pm == 0:
            return E.inv_sign(m) * pair.act_coeff(m, l)
        if vadd(l, m) in Lm:
            return pair.h_coeff(l, m)
        return pair.d_coeff(l, m)

    def sign(l):
        return E.inv_sign(l) if part(l) == 0 else 1

    gamma = gamma_of_E(E)
    rec = pair.meta.get("recipe", {"op": "AhN"})
    h = TorusHandle(n, lambda l: part(l) is not None, coeff, sign, rec, scaled_lattice(n, 4), E.field_tag)
    h._gamma = gamma
    h.meta["gamma_source"] = "E_+"
    h.meta["pair"] = pair
    h.meta["Lambda_minus"] = Lm
    return h


def hermitian_pair(B, rho, b):
    """N = 0 pair over a commutative B: W = sum B v_i with h(x v_i, y v_j) = delta_ij x b_i y^*."""
    n = B.rank
    rho = [tuple(r) for r in rho]
    b = [tuple(x) for x in b]
    M = B.support_lattice()

    def slot(a):
        for i, r in enumerate(rho):
            d = tuple(x - y for x, y in zip(a, r))
            if d in M and B.in_support(d):
                return i, d
        return None

    def act(g, a):
        i, d = slot(a)
        return B.coeff(g, d)

    def hform(a, c):
        (i, x), (j, y) = slot(a), slot(c)
        if i != j:
            return ZERO
        return B.coeff(x, b[i]) * B.coeff(vadd(x, b[i]), y) * B.inv_sign(y)

    return CubicPair(B, M, lambda a: a not in M and slot(a) is not None, act, hform,
                     lambda a, c: ZERO, B.period,
                     meta={"recipe": {"op": "AhN", "from": "hermitian_pair", "B": B.recipe}})


# ---------------------------------------------------------------- pairs of cubic forms

class Twin:
    """Componentwise pair; used for K + K and V_+ + V_-."""

    __slots__ = ("p", "m")

    def __init__(self, p, m):
        self.p, self.m = p, m

    def __add__(self, o):
        return Twin(self.p + o.p, self.m + o.m)

    def __neg__(self):
        return Twin(-self.p, -self.m)

    def __sub__(self, o):
        return Twin(self.p - o.p, self.m - o.m)

    def scale(self, c):
        return Twin(self.p.scale(c), self.m.scale(c))

    def __eq__(self, o):
        return isinstance(o, Twin) and self.p == o.p and self.m == o.m

    def __bool__(self):
        return bool(self.p) or bool(self.m)

    def __repr__(self):
        return f"({self.p!r}, {self.m!r})"


@dataclass
class PairCubicTriple:
    """(T, N_+, N_-) on (V_+, V_-) over K, given through T and the crossed products.

    cross_plus: V_+ x V_+ -> V_-,  cross_minus: V_- x V_- -> V_+,
    N_+(v) = T(v, v x v)/6 and N_-(v) = T(v x v, v)/6.
    """
    K: TorusHandle
    T: object
    cross_plus: object
    cross_minus: object
    kmul: object
    sample_plus: object
    sample_minus: object
    zero_plus: object
    zero_minus: object

    def sharp_plus(self, v):
        return self.cross_plus(v, v).scale(HALF)

    def sharp_minus(self, v):
        return self.cross_minus(v, v).scale(HALF)

    def N_plus(self, v):
        return self.T(v, self.cross_plus(v, v)).scale(SIXTH)

    def N_minus(self, v):
        return self.T(self.cross_minus(v, v), v).scale(SIXTH)


def triple_adjoint_report(tr, samples=20, seed=0):
    """Symmetry of T(u, v x w) (adjoint exists) and (v^#)^# = N(v) v on both sides."""
    rep = Report("triple_adjoint", "random", 0, samples, seed)
    rng = random.Random(seed)
    for _ in range(samples):
        u, v, w = (tr.sample_plus(rng) for _ in range(3))
        x, y, z = (tr.sample_minus(rng) for _ in range(3))
        rep.checked += 1
        a, b = tr.T(u, tr.cross_plus(v, w)), tr.T(v, tr.cross_plus(w, u))
        if a != b:
            rep.add([], a, b)
        a, b = tr.T(tr.cross_minus(x, y), z), tr.T(tr.cross_minus(y, z), x)
        if a != b:
            rep.add([], a, b)
        if tr.sharp_minus(tr.sharp_plus(u)) != tr.kmul(tr.N_plus(u), u):
            rep.add([], "ADJ+", "fails")
        if tr.sharp_plus(tr.sharp_minus(x)) != tr.kmul(tr.N_minus(x), x):
            rep.add([], "ADJ-", "fails")
    return rep


class SplitPair:
    """(h, N) over E = K + K with the exchange involution, W = V_+ + V_-."""

    def __init__(self, triple):
        self.tr = triple
        self.K = triple.K

    def e(self, a, b):
        return Twin(a, b)

    def w(self, vp, vm):
        return Twin(vp, vm)

    def zero_w(self):
        return Twin(self.tr.zero_plus(), self.tr.zero_minus())

    def emul(self, e, v):
        if not isinstance(e, Twin):
            return v.scale(e)
        return Twin(self.tr.kmul(e.p, v.p), self.tr.kmul(e.m, v.m))

    def estar(self, e):
        return Twin(e.m, e.p)

    def h(self, v, u):
        return Twin(self.tr.T(v.p, u.m), self.tr.T(u.p, v.m))

    def diamond(self, u, v):
        return Twin(self.tr.cross_minus(u.m, v.m), self.tr.cross_plus(u.p, v.p))

    def natural(self, v):
        return self.diamond(v, v).scale(HALF)

    def N(self, v):
        return self.h(v, self.diamond(v, v)).scale(SIXTH)

    def random_w(self, rng, box=None, terms=None):
        return Twin(self.tr.sample_plus(rng), self.tr.sample_minus(rng))


def matrix_construction(triple, samples=10, seed=0):
    """The pair (h, N) on V_+ + V_- over K + K whose A(h, N) is the matrix algebra M(T, N_+, N_-)."""
    rep = triple_adjoint_report(triple, samples, seed)
    if not rep.passed:
        raise NoAdjoint("the triple (T, N_+, N_-) has no adjoint satisfying the adjoint identity",
                        "triple adjoint")
    return SplitPair(triple)


class AhNElement:
    """a + v in A(h, N) for any pair-like object (used where E is not a torus)."""

    __slots__ = ("pair", "a", "v")

    def __init__(self, pair, a, v):
        self.pair, self.a, self.v = pair, a, v

    def __add__(self, o):
        return AhNElement(self.pair, self.a + o.a, self.v + o.v)

    def __neg__(self):
        return AhNElement(self.pair, -self.a, -self.v)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        return AhNElement(self.pair, self.a.scale(c), self.v.scale(c))

    def __mul__(self, o):
        if not isinstance(o, AhNElement):
            return self.scale(o)
        P = self.pair
        a = _emul_e(self.a, o.a) + P.h(self.v, o.v)
        v = P.emul(self.a, o.v) + P.emul(P.estar(o.a), self.v) + P.diamond(self.v, o.v)
        return AhNElement(P, a, v)

    def __rmul__(self, c):
        return self.scale(c)

    def star(self):
        return AhNElement(self.pair, self.pair.estar(self.a), self.v)

    def __eq__(self, o):
        return isinstance(o, AhNElement) and self.a == o.a and self.v == o.v

    def __bool__(self):
        return bool(self.a) or bool(self.v)

    def __repr__(self):
        return f"{self.a!r} + {self.v!r}"


def _emul_e(a, b):
    if isinstance(a, Twin):
        return Twin(a.p * b.p, a.m * b.m)
    return a * b


# ---------------------------------------------------------------- coordinatization

class Coordinatization:
    """Composition algebra on W_3 with xy = (x x u1) x (u2 x y) and the maps eta_i."""

    def __init__(self, space, u1, u2):
        self.S = space
        self.u1, self.u2 = u1, u2
        self.one = space.cross(u1, u2)

    def mul(self, x, y):
        S = self.S
        return S.cross(S.cross(x, self.u1), S.cross(self.u2, y))

    def npolar(self, x, y):
        return self.S.T(x, y)

    def norm(self, x):
        return self.S.T(x, x).scale(HALF)

    def trace(self, x):
        return self.S.T(x, self.one)

    def conj(self, x):
        return self.S.kmul(self.trace(x), self.one) - x

    def eta(self, i, x):
        S = self.S
        if i == 1:
            return S.cross(self.u2, self.conj(x))
        if i == 2:
            return S.cross(self.u1, self.conj(x))
        return x

    def eta_matrix(self, a, xs):
        """eta(sum a_i[ii] + sum x_i[jk]) in W."""
        S = self.S
        out = S.zero()
        for i in range(3):
            out = out + S.diag(i + 1, a[i]) + self.eta(i + 1, xs[i])
        return out

    def T_std(self, a, xs, b, ys):
        out = a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
        for x, y in zip(xs, ys):
            out = out + self.npolar(x, y)
        return out

    def N_std(self, a, xs):
        out = a[0] * a[1] * a[2]
        for ai, x in zip(a, xs):
            out = out - ai * self.norm(x)
        return out + self.trace(self.mul(self.mul(xs[0], xs[1]), xs[2]))


def coordinatize(space, u1, u2, samples=20, seed=0):
    """Recover a composition algebra C = W_3 and eta_i : C -> W_i from (T~, N~) with adjoint."""
    S = space
    one = S.kone()
    for i, u in ((1, u1), (2, u2)):
        if S.T(u, u).scale(HALF) != one:
            raise NormBasePointNotUnit(f"n_{i}(u_{i}) != 1", "n_i(u_i) = 1")
    rng = random.Random(seed)
    for _ in range(samples):
        x = S.sample(rng)
        xs = S.cross(x, x).scale(HALF)
        if S.cross(xs, xs).scale(HALF) != S.kmul(S.N(x), x):
            raise AdjointFails("(T~, N~) violates the adjoint identity", "adjoint identity")
    return Coordinatization(S, u1, u2)


def coordinatization_report(co, samples=20, seed=0):
    """Checks: u_i x (u_i x x_j) = x_j, identity u3, n(xy) = n(x)n(y), x xbar = n(x)1, T and N transfer."""
    S = co.S
    rep = Report("coordinatize", "random", 0, samples, seed)
    rng = random.Random(seed)
    us = {1: co.u1, 2: co.u2, 3: co.one}
    for _ in range(samples):
        rep.checked += 1
        xs = [S.sample_slot(rng, i) for i in (1, 2, 3)]
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                if i != j and S.cross(us[i], S.cross(us[i], xs[j - 1])) != xs[j - 1]:
                    rep.add([], f"u{i} x (u{i} x x{j})", "x")
        x, y = S.sample_slot(rng, 3), S.sample_slot(rng, 3)
        if co.mul(co.one, x) != x or co.mul(x, co.one) != x:
            rep.add([], "1 x", "x")
        if co.norm(co.mul(x, y)) != co.norm(x) * co.norm(y):
            rep.add([], co.norm(co.mul(x, y)), co.norm(x) * co.norm(y))
        if co.mul(x, co.conj(x)) != S.kmul(co.norm(x), co.one):
            rep.add([], "x xbar", "n(x) 1")
        a = [S.sample_k(rng) for _ in range(3)]
        b = [S.sample_k(rng) for _ in range(3)]
        cx = [S.sample_slot(rng, 3) for _ in range(3)]
        cy = [S.sample_slot(rng, 3) for _ in range(3)]
        ex, ey = co.eta_matrix(a, cx), co.eta_matrix(b, cy)
        if S.T(ex, ey) != co.T_std(a, cx, b, cy):
            rep.add([], "T~(eta x, eta y)", "T(x, y)")
        if S.N(ex) != co.N_std(a, cx):
            rep.add([], "N~(eta x)", "N(x)")
    return rep
