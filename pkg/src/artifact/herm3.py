"""3x3 hermitian matrices over quaternion and octonion tori, and the class III(c) tori built on them."""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .constructors import cd_double, laurent, regrade, signed_laurent
from .cubic import CubicPair, PairCubicTriple, build_AhN
from .errors import (HandleMismatch, IotaMissing, LambdaSumNonzero, NoAdmissibleTheta,
                     PreconditionViolated, WProductNotOne)
from .lattice import hnf, scaled_lattice, vadd, vneg, vscale, vsub
from .scalars import GAUSSIAN, I, RATIONALS, to_json
from .torus_core import ONE, ZERO, Element, Report, inverse_homogeneous

CYC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))

# rows: degrees of the Laurent generators of E; gens: (degree of v, degree of v^2)
VARIANTS = {
    "quaternion": dict(rows=((4, 0, 0), (0, 4, 0), (0, 0, 1)), signs=(1, 1, -1),
                       gens=(((2, 0, 0), (4, 0, 0)), ((0, 2, 0), (0, 4, 0))), field=RATIONALS),
    "octonion": dict(rows=((4, 0, 0), (0, 4, 0), (0, 0, 2)), signs=(1, 1, -1),
                     gens=(((2, 0, 0), (4, 0, 0)), ((0, 2, 0), (0, 4, 0)), ((0, 0, 1), (0, 0, 2))),
                     field=GAUSSIAN),
    # the extra generator squares to a hermitian Laurent generator r
    "octonion_prime": dict(rows=((4, 0, 0, 0), (0, 4, 0, 0), (0, 0, 1, 0), (0, 0, 0, 2)),
                           signs=(1, 1, -1, 1),
                           gens=(((2, 0, 0, 0), (4, 0, 0, 0)), ((0, 2, 0, 0), (0, 4, 0, 0)),
                                 ((0, 0, 0, 1), (0, 0, 0, 2))),
                           field=GAUSSIAN),
}


class HermMatrix:
    """sum a_i[ii] + sum_cyc x_i[jk]; a_i are C-elements supported on E, x_i in C."""

    __slots__ = ("a", "x")

    def __init__(self, a, x):
        self.a, self.x = tuple(a), tuple(x)

    @staticmethod
    def zero(C):
        z = Element(C)
        return HermMatrix((z, z, z), (z, z, z))

    def _zip(self, o, f):
        if self.a[0].h is not o.a[0].h:
            raise HandleMismatch("matrices over different algebras")
        return HermMatrix([f(p, q) for p, q in zip(self.a, o.a)], [f(p, q) for p, q in zip(self.x, o.x)])

    def __add__(self, o):
        return self._zip(o, lambda p, q: p + q)

    def __sub__(self, o):
        return self._zip(o, lambda p, q: p - q)

    def __neg__(self):
        return HermMatrix([-p for p in self.a], [-p for p in self.x])

    def scale(self, c):
        return HermMatrix([p.scale(c) for p in self.a], [p.scale(c) for p in self.x])

    def emul(self, e):
        """Action of e in E (a C-element supported on E)."""
        return HermMatrix([e * p for p in self.a], [e * p for p in self.x])

    def __eq__(self, o):
        return isinstance(o, HermMatrix) and self.a == o.a and self.x == o.x

    def __bool__(self):
        return any(self.a) or any(self.x)

    def to_json(self):
        names = ("11", "22", "33", "23", "31", "12")
        return {n: e.to_json() for n, e in zip(names, self.a + self.x)}

    def __repr__(self):
        parts = [f"({e!r})[{n}]" for e, n in zip(self.a + self.x, ("11", "22", "33", "23", "31", "12")) if e]
        return " + ".join(parts) or "0"


# ---------------------------------------------------------------- norm, trace, adjoint

def conj(x):
    return x.star()


def n(x):
    return x * conj(x)


def npolar(x, y):
    z = x * conj(y)
    return z + conj(z)


def t(z):
    return z + conj(z)


def T_form(x, y):
    out = x.a[0] * y.a[0] + x.a[1] * y.a[1] + x.a[2] * y.a[2]
    for p, q in zip(x.x, y.x):
        out = out + npolar(p, q)
    return out


def N_form(x):
    a, xs = x.a, x.x
    out = a[0] * a[1] * a[2]
    for ai, xi in zip(a, xs):
        out = out - ai * n(xi)
    return out + t((xs[0] * xs[1]) * xs[2])


def sharp(x):
    a, xs = x.a, x.x
    d, o = [None] * 3, [None] * 3
    for i, j, k in CYC:
        d[k] = a[i] * a[j] - n(xs[k])
        o[k] = conj(xs[i] * xs[j]) - a[k] * xs[k]
    return HermMatrix(d, o)


def cross(x, y):
    a, xs, b, ys = x.a, x.x, y.a, y.x
    d, o = [None] * 3, [None] * 3
    for i, j, k in CYC:
        d[k] = a[i] * b[j] + b[i] * a[j] - npolar(xs[k], ys[k])
        o[k] = conj(xs[i] * ys[j]) + conj(ys[i] * xs[j]) - a[k] * ys[k] - b[k] * xs[k]
    return HermMatrix(d, o)


# ---------------------------------------------------------------- context

@dataclass
class IIIcContext:
    variant: str
    C: object
    E: object
    tower: list
    gens: list
    theta_factors: list
    lambdas: tuple
    w: tuple
    iota: object
    Lm: object
    M: object
    rows: tuple
    meta: dict = field(default_factory=dict)

    @property
    def rank(self):
        return self.C.rank

    @property
    def field_tag(self):
        return self.C.field_tag

    def estar(self, e):
        return Element(self.C, {d: c * self.E.inv_sign(d) for d, c in e.terms.items()})

    def e_elem(self, d, c=ONE):
        if d not in self.Lm:
            raise PreconditionViolated(f"{list(d)} is not a degree of E")
        return self.C.element(d, c)


def make_context(variant, w=None, theta_factor=None, field_tag=None):
    """Build C, E and the data (lambda_i, w_i, iota, theta) for one variant."""
    if variant not in VARIANTS:
        raise PreconditionViolated(f"unknown variant {variant!r}")
    data = VARIANTS[variant]
    rows, gens = data["rows"], data["gens"]
    field_tag = field_tag or data["field"]
    rank = len(rows)
    if variant == "octonion" and field_tag != GAUSSIAN:
        raise IotaMissing("the octonion variant needs iota with iota^2 = -1", "iota in F")
    E = regrade(signed_laurent(data["signs"]), [list(r) for r in rows])
    E0 = regrade(laurent(rank), [list(r) for r in rows])
    E.field_tag = E0.field_tag = field_tag
    tower = [E0]
    C = E0
    for g, mu in gens:
        C = cd_double(C, mu, 1, g)
        tower.append(C)
    C.recipe = {"op": "composition_torus", "variant": variant}
    iota = I if field_tag == GAUSSIAN else None
    factors = [ONE, ONE]
    if len(gens) > 2:
        if theta_factor is None:
            if iota is None:
                raise IotaMissing("theta(v) = iota v needs iota", "iota in F")
            theta_factor = iota
        factors.append(theta_factor)
    lam = tuple(tuple(1 if j == i else 0 for j in range(rank)) for i in range(2))
    lam3 = vneg(vadd(lam[0], lam[1]))
    Lm = hnf([list(r) for r in rows], rank)
    ctx = IIIcContext(variant, C, E, tower, [g for g, _ in gens], factors, (lam[0], lam[1], lam3),
                      (), iota, Lm, C.support_lattice(), rows)
    v1, v2 = C.element(gens[0][0]), C.element(gens[1][0])
    if w is None:
        w = (v1, v2, inverse_homogeneous(v1 * v2))
    # elements built against another copy of C are carried over by their terms
    ctx.w = tuple(x if x.h is C else Element(C, dict(x.terms)) for x in w)
    check_w(ctx)
    return ctx


def check_w(ctx):
    w = ctx.w
    if (w[0] * w[1]) * w[2] != ctx.C.one():
        raise WProductNotOne("w1 w2 w3 != 1", "w1 w2 w3 = 1")
    for i in range(3):
        if not w[i].is_homogeneous() or w[i].degrees()[0] != vscale(2, ctx.lambdas[i]):
            raise WProductNotOne(f"w_{i+1} is not a nonzero element of degree 2 lambda_{i+1}",
                                 "w_i in C^{2 lambda_i}")


def w_choices(ctx):
    """A few admissible choices of (w1, w2, w3) with w1 w2 w3 = 1."""
    C = ctx.C
    v1, v2 = C.element(ctx.gens[0]), C.element(ctx.gens[1])
    out = []
    for c1, c2 in ((1, 1), (-1, -1), (-1, 1), (2, Fraction(1, 3))):
        a, b = v1.scale(c1), v2.scale(c2)
        out.append((a, b, inverse_homogeneous(a * b)))
    return out


# ---------------------------------------------------------------- theta and psi

def theta_coef(ctx, mu):
    """theta(c_mu) = theta_coef(mu) c_mu, through the doubling tower."""
    c = ONE
    for level in range(len(ctx.gens), 0, -1):
        D = ctx.tower[level - 1]
        if not D.in_support(mu):
            mu = vsub(mu, ctx.gens[level - 1])
            c = c * ctx.theta_factors[level - 1]
    return c * ctx.E.inv_sign(mu)


def theta(ctx, x):
    return Element(ctx.C, {d: c * theta_coef(ctx, d) for d, c in x.terms.items()})


def theta_auto(ctx):
    return lambda x: theta(ctx, x)


def beta_map(ctx, i, x):
    """beta_i = L_{w_j^-1} R_{w_k^-1} L_{w_j} R_{w_k} for (i, j, k) cyclic."""
    _, j, k = CYC[i]
    wj, wk = ctx.w[j], ctx.w[k]
    wji, wki = inverse_homogeneous(wj), inverse_homogeneous(wk)
    return wji * ((wj * (x * wk)) * wki)


def c_window(ctx, k=2):
    C = ctx.C
    return [d for d in C.box(k)]


def theta_report(ctx, k=2):
    """theta multiplicative on a window, fixes each w_i, and theta^2 = beta_i."""
    rep = Report("theta", "exhaustive", k, 0, 0)
    C = ctx.C
    win = c_window(ctx, k)
    els = {d: C.element(d) for d in win}
    th = {d: theta(ctx, e) for d, e in els.items()}
    for a in win:
        for b in win:
            rep.checked += 1
            if theta(ctx, els[a] * els[b]) != th[a] * th[b]:
                rep.add([a, b], "theta(xy)", "theta(x)theta(y)")
    for i in range(3):
        if theta(ctx, ctx.w[i]) != ctx.w[i]:
            rep.add([ctx.w[i].degrees()[0]], "theta(w)", "w")
        for d in win:
            rep.checked += 1
            if theta(ctx, th[d]) != beta_map(ctx, i, els[d]):
                rep.add([d], "theta^2", f"beta_{i+1}")
    return rep


def theta_candidates(ctx, k=2):
    """Scalars c with theta(v) = c v admissible (multiplicative, theta^2 = beta).

    A graded theta must send v to c v; theta^2 = beta forces c^2 = +-1,
    so c ranges over the fourth roots of unity available in the field.
    """
    if len(ctx.gens) == 2:
        return [None] if theta_report(ctx, k).passed else []
    cs = [ONE, -ONE] + ([I, -I] if ctx.field_tag == GAUSSIAN else [])
    out = []
    for c in cs:
        trial = IIIcContext(**{**ctx.__dict__, "theta_factors": [ONE, ONE, c]})
        if theta_report(trial, k).passed:
            out.append(c)
    return out


def psi(ctx, x):
    a, xs, w = x.a, x.x, ctx.w
    d = [ctx.estar(a[i]) * n(w[i]) for i in range(3)]
    o = [None] * 3
    for i, j, k in CYC:
        o[i] = (w[j] * theta(ctx, xs[i])) * conj(w[k])
    return HermMatrix(d, o)


def random_e(ctx, rng, box=2):
    e = tuple(rng.randint(-box, box) for _ in range(ctx.rank))
    d = (0,) * ctx.rank
    for c, r in zip(e, ctx.rows):
        d = vadd(d, vscale(c, r))
    return d


def random_c_degree(ctx, rng, box=2):
    d = random_e(ctx, rng, box)
    for g in ctx.gens:
        if rng.random() < 0.5:
            d = vadd(d, g)
    return d


def random_entry(ctx, rng, box=2, terms=2, diag=False):
    x = Element(ctx.C)
    for _ in range(rng.randint(1, terms)):
        d = random_e(ctx, rng, box) if diag else random_c_degree(ctx, rng, box)
        x = x + ctx.C.element(d, Fraction(rng.choice((-2, -1, 1, 2, 3))))
    return x


def random_herm(ctx, rng, box=2, terms=2):
    """Random matrix; entries are short sums with Laurent exponents in [-box, box]."""
    a = [random_entry(ctx, rng, box, terms, True) if rng.random() < 0.8 else Element(ctx.C) for _ in range(3)]
    x = [random_entry(ctx, rng, box, terms) if rng.random() < 0.8 else Element(ctx.C) for _ in range(3)]
    return HermMatrix(a, x)


def psi_report(ctx, samples=50, seed=0):
    """N(psi x) = N(x)^*, T(psi x, y) = T(x, psi y)^*, and psi semilinear, on samples."""
    rep = Report("psi", "random", 2, samples, seed)
    rng = random.Random(seed)
    for _ in range(samples):
        x, y = random_herm(ctx, rng), random_herm(ctx, rng)
        e = ctx.e_elem(random_e(ctx, rng, 1))
        rep.checked += 1
        if N_form(psi(ctx, x)) != ctx.estar(N_form(x)):
            rep.add([], "N(psi x)", "N(x)^*")
        if T_form(psi(ctx, x), y) != ctx.estar(T_form(x, psi(ctx, y))):
            rep.add([], "T(psi x, y)", "T(x, psi y)^*")
        if psi(ctx, x.emul(e)) != psi(ctx, x).emul(ctx.estar(e)):
            rep.add([], "psi(e x)", "e^* psi(x)")
    return rep


def build_psi(ctx, samples=30):
    """Return psi after checking theta is admissible and psi is hermitian and semi-norm preserving."""
    if ctx.variant == "octonion" and ctx.iota is None:
        raise IotaMissing("the octonion variant needs iota", "iota in F")
    check_w(ctx)
    rt = theta_report(ctx, 1)
    if rt.passed:
        rt = theta_report(ctx, 2)
    if not rt.passed:
        raise NoAdmissibleTheta(f"theta is not an admissible semilinear automorphism "
                                f"({len(rt.violations)} failures)", "theta(w_i) = w_i, theta^2 = beta")
    rp = psi_report(ctx, samples)
    if not rp.passed:
        raise NoAdmissibleTheta(f"psi is not hermitian ({len(rp.violations)} failures)", "psi^* = psi")
    return lambda x: psi(ctx, x)


# ---------------------------------------------------------------- grading

class HermGrading:
    """a[ii] (a in E^mu) has degree 2 lambda_i + mu; x[jk] (x in C^mu) has degree -lambda_i + mu."""

    def __init__(self, ctx, lambdas=None):
        lam = tuple(tuple(l) for l in (lambdas or ctx.lambdas))
        if vadd(vadd(lam[0], lam[1]), lam[2]) != (0,) * ctx.rank:
            raise LambdaSumNonzero("lambda_1 + lambda_2 + lambda_3 != 0", "lambda_1 + lambda_2 + lambda_3 = 0")
        self.ctx, self.lam = ctx, lam

    def slot_of(self, alpha):
        C, Lm = self.ctx.C, self.ctx.Lm
        for i in range(3):
            mu = vsub(alpha, vscale(2, self.lam[i]))
            if mu in Lm:
                return ("d", i, mu)
        for i in range(3):
            mu = vadd(alpha, self.lam[i])
            if C.in_support(mu):
                return ("o", i, mu)
        return None

    def degree(self, kind, i, mu):
        return vadd(vscale(2, self.lam[i]), mu) if kind == "d" else vsub(mu, self.lam[i])

    def basis(self, alpha, c=ONE):
        s = self.slot_of(alpha)
        if s is None:
            return None
        kind, i, mu = s
        C = self.ctx.C
        z = Element(C)
        a, x = [z, z, z], [z, z, z]
        (a if kind == "d" else x)[i] = C.element(mu, c)
        return HermMatrix(a, x)

    def decompose(self, X):
        out = {}
        for i, e in enumerate(X.a):
            for mu, c in e.terms.items():
                d = self.degree("d", i, mu)
                out[d] = out.get(d, ZERO) + c
        for i, e in enumerate(X.x):
            for mu, c in e.terms.items():
                d = self.degree("o", i, mu)
                out[d] = out.get(d, ZERO) + c
        return {d: c for d, c in out.items() if c}

    def fine_report(self, k=2):
        """Each degree in the window carries at most one slot."""
        from itertools import product
        rep = Report("fine_grading", "exhaustive", k, 0, 0)
        C, Lm = self.ctx.C, self.ctx.Lm
        for alpha in product(range(-k, k + 1), repeat=self.ctx.rank):
            rep.checked += 1
            hits = [i for i in range(3) if vsub(alpha, vscale(2, self.lam[i])) in Lm]
            hits += [3 + i for i in range(3) if C.in_support(vadd(alpha, self.lam[i]))]
            if len(hits) > 1:
                rep.add([alpha], hits, "one slot")
        return rep


def grade(ctx, lambdas=None):
    return HermGrading(ctx, lambdas)


def norm_graded_report(ctx, k=1):
    """T(x, y x z) on basis matrices lands in the single E-degree deg x + deg y + deg z."""
    from itertools import product
    g = grade(ctx)
    rep = Report("norm_graded", "exhaustive", k, 0, 0)
    win = [d for d in product(range(-k, k + 1), repeat=ctx.rank) if g.slot_of(d)]
    bs = {d: g.basis(d) for d in win}
    for a, b, c in product(win, repeat=3):
        v = T_form(bs[a], cross(bs[b], bs[c]))
        rep.checked += 1
        if not v:
            continue
        want = vadd(vadd(a, b), c)
        if v.degrees() != [want]:
            rep.add([a, b, c], v.degrees(), want)
    return rep


# ---------------------------------------------------------------- the pair (h, N) and A(H(C_3))

def herm_pair(ctx, psi_fn=None):
    g = grade(ctx)
    psi_fn = psi_fn or (lambda x: psi(ctx, x))
    n = ctx.rank

    def single(vals, want, what):
        if not vals:
            return ZERO
        if list(vals) != [want]:
            raise PreconditionViolated(f"{what} is not graded: degrees {sorted(vals)} vs {list(want)}",
                                       "graded pair")
        return vals[want]

    def act(gm, alpha):
        if not w_support(alpha):
            return ZERO
        Y = g.basis(alpha).emul(ctx.e_elem(gm))
        return single(g.decompose(Y), vadd(gm, alpha), "E-action")

    def hform(alpha, beta):
        if not (w_support(alpha) and w_support(beta)):
            return ZERO
        v = T_form(g.basis(alpha), psi_fn(g.basis(beta)))
        return single(dict(v.terms), vadd(alpha, beta), "h")

    def diamond(alpha, beta):
        if not (w_support(alpha) and w_support(beta)):
            return ZERO
        X = cross(psi_fn(g.basis(alpha)), psi_fn(g.basis(beta)))
        return single(g.decompose(X), vadd(alpha, beta), "diamond")

    def w_support(alpha):
        return g.slot_of(alpha) is not None and alpha not in ctx.Lm

    pair = CubicPair(ctx.E, ctx.Lm, w_support, act, hform, diamond, scaled_lattice(n, 4),
                     meta={"recipe": {"op": "a_herm", "variant": ctx.variant}})
    pair.meta["context"] = ctx
    pair.meta["grading"] = g
    return pair


def build_A_herm(variant, w=None, check_psi=True):
    """A(h, N) on E + H(C_3) with h(x, y) = T(x, psi(y)) and x <> y = psi(x) x psi(y)."""
    ctx = make_context(variant, w=w)
    psi_fn = build_psi(ctx) if check_psi else None
    pair = herm_pair(ctx, psi_fn)
    h = build_AhN(pair, require_class_III=True)
    h.recipe = {"op": "a_herm", "variant": variant}
    h.meta["context"] = ctx
    h.meta["expected_Lambda_minus"] = ctx.Lm
    return h


def herm_adjoint_report(ctx, samples=1000, seed=0, box=2):
    """(x^#)^# = N(x) x on random matrices."""
    rep = Report("herm_adjoint", "random", box, samples, seed)
    rng = random.Random(seed)
    for _ in range(samples):
        x = random_herm(ctx, rng, box)
        rep.checked += 1
        lhs, rhs = sharp(sharp(x)), x.emul(N_form(x))
        if lhs != rhs:
            rep.add([], lhs, rhs)
    return rep


def psi1_report(pair, samples=50, seed=0):
    """y^natural = psi(y)^# on random matrices, read through the grading."""
    ctx, g = pair.meta["context"], pair.meta["grading"]
    rep = Report("psi1", "random", 1, samples, seed)
    rng = random.Random(seed)
    for _ in range(samples):
        y = pair.random_w(rng, 1, 2)
        Y = HermMatrix.zero(ctx.C)
        for d, c in y.terms.items():
            Y = Y + g.basis(d, c)
        rep.checked += 1
        got = g.decompose(sharp(psi(ctx, Y)))
        want = pair.natural(y).terms
        if {k: v for k, v in got.items()} != want:
            rep.add(sorted(y.terms), got, want)
    return rep


# ---------------------------------------------------------------- adapters for cubic

def herm_triple(ctx):
    """(T, N, N) on (H, H) over the trivially involuted E, for the matrix construction."""
    C = ctx.C
    return PairCubicTriple(
        K=ctx.tower[0], T=T_form, cross_plus=cross, cross_minus=cross,
        kmul=lambda k, v: v.emul(k),
        sample_plus=lambda rng: random_herm(ctx, rng, 1, 1),
        sample_minus=lambda rng: random_herm(ctx, rng, 1, 1),
        zero_plus=lambda: HermMatrix.zero(C), zero_minus=lambda: HermMatrix.zero(C))


class HermSpace:
    """H(C_3) seen as K^3 + W_1 + W_2 + W_3 with W_i the i-th off-diagonal slot."""

    def __init__(self, ctx, box=1):
        self.ctx, self.box = ctx, box

    def cross(self, x, y):
        return cross(x, y)

    def T(self, x, y):
        return T_form(x, y)

    def N(self, x):
        return N_form(x)

    def kmul(self, k, x):
        return x.emul(k)

    def kone(self):
        return self.ctx.C.one()

    def zero(self):
        return HermMatrix.zero(self.ctx.C)

    def diag(self, i, k):
        z = Element(self.ctx.C)
        a = [z, z, z]
        a[i - 1] = k
        return HermMatrix(a, [z, z, z])

    def slot(self, i, c):
        z = Element(self.ctx.C)
        x = [z, z, z]
        x[i - 1] = c
        return HermMatrix([z, z, z], x)

    def sample(self, rng):
        return random_herm(self.ctx, rng, self.box, 2)

    def sample_slot(self, rng, i):
        return self.slot(i, random_entry(self.ctx, rng, self.box, 2))

    def sample_k(self, rng):
        return random_entry(self.ctx, rng, self.box, 2, True)
