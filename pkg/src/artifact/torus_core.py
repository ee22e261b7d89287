"""Finely graded algebras with involution given by structure constants."""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from threading import Lock

from .errors import HandleMismatch, NotInvertible, PreconditionViolated, ZeroProduct
from .lattice import (FiniteQuotient, Subgroup, hnf, quotient, scaled_lattice,
                      vadd, vneg, vsub)
from .scalars import RATIONALS, fmt, simplify, to_json

ONE = Fraction(1)
ZERO = Fraction(0)


class TorusHandle:
    """A finely graded algebra with involution.

    x_l * x_m = coeff(l, m) x_{l+m} and x_l^* = inv_sign(l) x_l.
    `period` is a full-rank subgroup of central degrees; support, signs and
    every projective invariant of the table are periodic modulo it.
    """

    def __init__(self, rank, support, coeff, inv_sign, recipe, period,
                 field_tag=RATIONALS, gamma=None, nonzero_products=True, meta=None):
        self.rank = rank
        self._support = support
        self._coeff = coeff
        self._sign = inv_sign
        self.recipe = recipe
        self.period = period
        self.field_tag = field_tag
        self._gamma = gamma
        self.nonzero_products = nonzero_products
        self.meta = dict(meta or {})
        self._cache = {}
        self._scache = {}
        self._lock = Lock()
        z = self.zero_degree
        if not support(z) or coeff(z, z) != 1:
            raise PreconditionViolated("handle is not unital", "unitality")
        if period.rank != rank or not period.is_full():
            raise PreconditionViolated("period subgroup must have full rank")

    @property
    def zero_degree(self):
        return (0,) * self.rank

    def in_support(self, l):
        s = self._scache.get(l)
        if s is None:
            s = bool(self._support(l))
            self._scache[l] = s
        return s

    def coeff(self, l, m):
        key = (l, m)
        c = self._cache.get(key)
        if c is None:
            if self.in_support(l) and self.in_support(m) and self.in_support(vadd(l, m)):
                c = simplify(self._coeff(l, m))
            else:
                c = ZERO
            # identical values from concurrent writers are harmless
            with self._lock:
                self._cache[key] = c
        return c

    def inv_sign(self, l):
        return self._sign(l)

    def element(self, l, c=ONE):
        return Element(self, {tuple(l): simplify(c)} if c else {})

    def one(self):
        return self.element(self.zero_degree)

    # ---- finite windows and periodic data

    def box(self, k):
        return [d for d in product(range(-k, k + 1), repeat=self.rank) if self.in_support(d)]

    def period_quotient(self):
        if "_pq" not in self.meta:
            self.meta["_pq"] = quotient(self.rank, self.period)
        return self.meta["_pq"]

    def support_reps(self):
        """Coset representatives of (support)/period."""
        if "_reps" not in self.meta:
            self.meta["_reps"] = [r for r in self.period_quotient() if self.in_support(r)]
        return self.meta["_reps"]

    def support_lattice(self):
        return hnf(list(self.period.basis) + self.support_reps(), self.rank)

    @property
    def gamma(self):
        if self._gamma is None:
            self._gamma = compute_gamma(self)
        return self._gamma

    def gamma_is_metadata(self):
        return "gamma_source" in self.meta

    def __repr__(self):
        return f"TorusHandle(rank={self.rank}, recipe={self.recipe.get('op')})"


class Element:
    __slots__ = ("h", "terms")

    def __init__(self, h, terms=None):
        self.h = h
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def _check(self, other):
        if other.h is not self.h:
            raise HandleMismatch("elements belong to different handles")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, ZERO) + v
        return Element(self.h, t)

    def __neg__(self):
        return Element(self.h, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Element(self.h, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, Element) and other.h is self.h and \
            {k: simplify(v) for k, v in self.terms.items()} == {k: simplify(v) for k, v in other.terms.items()}

    def __bool__(self):
        return bool(self.terms)

    def star(self):
        return involution(self)

    def degrees(self):
        return sorted(self.terms)

    def is_homogeneous(self):
        return len(self.terms) == 1

    def to_json(self):
        return {"terms": [dict(degree=list(d), **to_json(c)) for d, c in sorted(self.terms.items())]}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{fmt(c)}*x{list(d)}" for d, c in sorted(self.terms.items()))


def mul(x, y):
    x._check(y)
    h = x.h
    out = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c = h.coeff(a, b)
            if c:
                d = vadd(a, b)
                out[d] = out.get(d, ZERO) + ca * cb * c
    return Element(h, out)


def involution(x):
    return Element(x.h, {k: v * x.h.inv_sign(k) for k, v in x.terms.items()})


def commutator(x, y):
    return x * y - y * x


def associator(x, y, z):
    return (x * y) * z - x * (y * z)


def circ(x, y):
    return x * y + y * x


def triple(x, y, z):
    """{x y z} = (x y*) z + (z y*) x - (z x*) y."""
    ys, xs = y.star(), x.star()
    return (x * ys) * z + (z * ys) * x - (z * xs) * y


def inverse_homogeneous(x, window=1):
    if not x.is_homogeneous():
        raise PreconditionViolated("inverse_homogeneous needs a homogeneous element")
    h = x.h
    (l, c), = x.terms.items()
    nl = vneg(l)
    k = h.coeff(l, nl)
    if not h.in_support(nl) or not k:
        raise NotInvertible(f"no inverse in degree {list(nl)}")
    y = h.element(nl, 1 / (c * k))
    one = h.one()
    if x * y != one or y * x != one:
        raise NotInvertible("x y != 1 or y x != 1")
    for d in h.box(window):
        z = h.element(d)
        if x * (y * z) != y * (x * z):
            raise NotInvertible(f"L_x and L_y do not commute at degree {list(d)}")
    return y


# ---------------------------------------------------------------- class I invariants

def _ratio(num, den):
    if not den or not num:
        raise ZeroProduct("a product of homogeneous elements vanished")
    return int(simplify(num / den))


def epsilon(h, l):
    return h.inv_sign(tuple(l))


def beta(h, l1, l2):
    return _ratio(h.coeff(l2, l1), h.coeff(l1, l2))


def alpha(h, l1, l2, l3):
    left = h.coeff(l2, l3) * h.coeff(l1, vadd(l2, l3))
    right = h.coeff(l1, l2) * h.coeff(vadd(l1, l2), l3)
    return _ratio(left, right)


def mu3(h, l1, l2, l3):
    e = lambda *ls: epsilon(h, tuple(map(sum, zip(*ls))))
    return (e(l1) * e(l2) * e(l3) * e(l1, l2) * e(l1, l3) * e(l2, l3) * e(l1, l2, l3))


@dataclass
class InvariantTable:
    n: int
    classes: list
    epsilon: dict
    beta: dict
    alpha: dict
    mu: dict

    def to_json(self):
        key = lambda t: [list(x) for x in t]
        return {
            "classes": [list(c) for c in self.classes],
            "epsilon": [[list(c), v] for c, v in self.epsilon.items()],
            "beta": [[key(k), v] for k, v in self.beta.items()],
            "alpha": [[key(k), v] for k, v in self.alpha.items()],
            "mu": [[key(k), v] for k, v in self.mu.items()],
        }


def z2_classes(n):
    return [tuple(c) for c in product((0, 1), repeat=n)]


def z2_add(a, b):
    return tuple((x + y) % 2 for x, y in zip(a, b))


def invariant_table(h, with_triples=True):
    """epsilon, beta, alpha, mu on Lambda/2Lambda using 0/1 representatives."""
    cls = z2_classes(h.rank)
    eps = {c: epsilon(h, c) for c in cls}
    bet = {(a, b): beta(h, a, b) for a in cls for b in cls}
    alp, mu = {}, {}
    if with_triples:
        for a in cls:
            for b in cls:
                for c in cls:
                    alp[(a, b, c)] = alpha(h, a, b, c)
                    mu[(a, b, c)] = mu3(h, a, b, c)
    return InvariantTable(h.rank, cls, eps, bet, alp, mu)


# ---------------------------------------------------------------- identity checking

@dataclass
class Sampler:
    mode: str = "random"
    box: int = 2
    samples: int = 5000
    seed: int = 0


@dataclass
class Report:
    identity: str
    mode: str
    box: int
    samples: int
    seed: int
    checked: int = 0
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def add(self, degrees, lhs, rhs):
        self.violations.append({"degrees": [list(d) for d in degrees], "lhs": lhs, "rhs": rhs})

    def to_json(self):
        out = {"identity": self.identity, "mode": self.mode, "box": self.box,
               "samples": self.samples, "seed": self.seed, "checked": self.checked,
               "violations": [dict(v, lhs=_ejson(v["lhs"]), rhs=_ejson(v["rhs"])) for v in self.violations]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _ejson(x):
    return x.to_json() if hasattr(x, "to_json") else str(x)


def random_degree(h, rng, k, pred=None, tries=10000):
    for _ in range(tries):
        d = tuple(rng.randint(-k, k) for _ in range(h.rank))
        if h.in_support(d) and (pred is None or pred(d)):
            return d
    raise PreconditionViolated("no support degree found in the sampling box")


def _structurable(x, y, z, w, q):
    lhs = triple(x, y, triple(z, w, q)) - triple(z, w, triple(x, y, q))
    rhs = triple(triple(x, y, z), w, q) - triple(z, triple(y, x, w), q)
    return lhs, rhs


def _skew_alt(s, x, y):
    a = associator(s, x, y)
    return a, -associator(x, s, y), associator(x, y, s)


def _jordan_lin(x, y, z, w):
    lhs = ((x * y) * w) * z + ((y * z) * w) * x + ((z * x) * w) * y
    rhs = (x * y) * (w * z) + (y * z) * (w * x) + (z * x) * (w * y)
    return lhs, rhs


IDENTITIES = {
    # tag: (arity, which slots must be skew)
    "structurable": (5, ()),
    "skew_alternative": (3, (0,)),
    "associative": (3, ()),
    "alternative": (3, ()),
    "commutative_jordan": (4, ()),
    "strid_a": (3, (0, 1)),
    "strid_b": (3, (0,)),
    "strid_c": (3, (0, 1)),
}


def _evaluate(tag, xs):
    if tag == "structurable":
        return [_structurable(*xs)]
    if tag == "skew_alternative":
        a, b, c = _skew_alt(*xs)
        return [(a, b), (a, c)]
    if tag == "associative":
        return [(associator(*xs), Element(xs[0].h))]
    if tag == "alternative":
        x, y, z = xs
        zero = Element(x.h)
        return [(associator(x, y, z) + associator(y, x, z), zero),
                (associator(x, y, z) + associator(x, z, y), zero)]
    if tag == "commutative_jordan":
        x, y, z, w = xs
        return [(x * y, y * x), _jordan_lin(x, y, z, w)]
    r, s, x = xs
    if tag == "strid_a":
        return [(r * associator(s, r, x) + associator(r, s * r, x), Element(r.h))]
    if tag == "strid_b":
        y = s
        return [(associator(r * r, x, y), associator(r, r * x, y) + r * associator(r, x, y))]
    if tag == "strid_c":
        return [(associator(r * r, s, x), 2 * (r * associator(r, s, x)) + associator(r, commutator(r, s), x))]
    raise ValueError(f"unknown identity {tag}")


def _skew_sum(h, rng, k, terms):
    """Random sum of skew basis elements (used where the identity is not multilinear)."""
    e = Element(h)
    for _ in range(terms):
        d = random_degree(h, rng, k, lambda d: h.inv_sign(d) == -1)
        e = e + h.element(d, Fraction(rng.randint(1, 3)))
    return e


def check_identity(h, tag, sampler=None):
    sampler = sampler or Sampler()
    if tag not in IDENTITIES:
        raise ValueError(f"unknown identity {tag}")
    arity, skew = IDENTITIES[tag]
    rep = Report(tag, sampler.mode, sampler.box, sampler.samples if sampler.mode == "random" else 0, sampler.seed)
    nonlinear = tag.startswith("strid")
    if sampler.mode == "exhaustive":
        window = h.box(sampler.box)
        skew_window = [d for d in window if h.inv_sign(d) == -1]
        pools = [skew_window if i in skew else window for i in range(arity)]
        tuples = product(*pools)
        if nonlinear:
            rep.notes.append("basis tuples only: identity is not multilinear in the skew slots")
    else:
        rng = random.Random(sampler.seed)

        def gen():
            for _ in range(sampler.samples):
                yield tuple(random_degree(h, rng, sampler.box,
                                          (lambda d: h.inv_sign(d) == -1) if i in skew else None)
                            for i in range(arity))
        tuples = gen()
    for degs in tuples:
        xs = [h.element(d) for d in degs]
        rep.checked += 1
        for lhs, rhs in _evaluate(tag, xs):
            if lhs != rhs:
                rep.add(degs, lhs, rhs)
                break
    if nonlinear and sampler.mode == "random":
        # also test genuine sums in the skew slots
        rng = random.Random(sampler.seed + 1)
        for _ in range(max(1, sampler.samples // 10)):
            r = _skew_sum(h, rng, sampler.box, 2)
            s = _skew_sum(h, rng, sampler.box, 2) if 1 in skew else h.element(random_degree(h, rng, sampler.box))
            x = h.element(random_degree(h, rng, sampler.box))
            rep.checked += 1
            for lhs, rhs in _evaluate(tag, [r, s, x]):
                if lhs != rhs:
                    rep.add([sorted(r.terms)[0], sorted(s.terms)[0], sorted(x.terms)[0]], lhs, rhs)
                    break
    return rep


# ---------------------------------------------------------------- periodicity and centre

def verify_periodicity(h, P, box):
    """Support, involution signs, zero pattern and commutation ratios are P-periodic."""
    rep = Report("periodicity", "exhaustive", box, 0, 0)
    window = [d for d in product(range(-box, box + 1), repeat=h.rank)]
    for p in P.basis:
        for l in window:
            lp = vadd(l, p)
            rep.checked += 1
            if h.in_support(l) != h.in_support(lp):
                rep.add([l, p], "support", "support")
                continue
            if not h.in_support(l):
                continue
            if h.inv_sign(l) != h.inv_sign(lp):
                rep.add([l, p], h.inv_sign(l), h.inv_sign(lp))
                continue
            for m in window:
                if not h.in_support(m):
                    continue
                a, b = h.coeff(l, m), h.coeff(lp, m)
                if bool(a) != bool(b):
                    rep.add([l, m, p], a, b)
                    break
                if a and h.coeff(m, l) / a != h.coeff(m, lp) / b:
                    rep.add([l, m, p], h.coeff(m, l) / a, h.coeff(m, lp) / b)
                    break
    return rep


def is_central_degree(h, g, reps):
    if h.inv_sign(g) != 1:
        return False
    for m in reps:
        if h.coeff(g, m) != h.coeff(m, g):
            return False
    x = h.element(g)
    els = [h.element(m) for m in reps]
    for y in els:
        for z in els:
            if associator(x, y, z) or associator(y, x, z) or associator(y, z, x):
                return False
    return True


def compute_gamma(h):
    """Support of the centre, exact given that `period` consists of central degrees."""
    reps = h.support_reps()
    for p in h.period.basis:
        if not is_central_degree(h, p, reps):
            raise PreconditionViolated(f"period generator {list(p)} is not central")
    central = [g for g in reps if is_central_degree(h, g, reps)]
    return hnf(list(h.period.basis) + central, h.rank)


def window_central(h, k):
    """Degrees in the box whose basis element is central, tested against the box."""
    window = h.box(k)
    return [g for g in window if is_central_degree(h, g, window)]


def max_anisotropic_dim(h):
    """Largest subspace of Lambda/2Lambda on which epsilon = -1 off zero."""
    n = h.rank
    cls = [c for c in z2_classes(n) if any(c)]
    aniso = [c for c in cls if epsilon(h, c) == -1]
    best = 0
    # depth-first over increasing bases, keeping the span anisotropic
    def extend(span, start, dim):
        nonlocal best
        best = max(best, dim)
        for i in range(start, len(aniso)):
            v = aniso[i]
            if v in span:
                continue
            new = span | {z2_add(v, s) for s in span}
            if all(epsilon(h, s) == -1 for s in new if any(s)):
                extend(new, i + 1, dim + 1)
    extend({(0,) * n}, 0, 0)
    return best
