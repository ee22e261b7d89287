"""Named tori: Laurent, Cayley-Dickson, tensor products, Jordan and hermitian-form tori."""

from fractions import Fraction

from sympy import Matrix

from .errors import (BadDegreeArithmetic, FieldMismatch, NotCentral, NotHermitian,
                     NotInvertible, PreconditionViolated, RecipeError, SupportNotGroup)
from .lattice import (Subgroup, full_lattice, hnf, scaled_lattice, subgroup_sum,
                      unit, vadd, vscale, vsub)
from .scalars import GAUSSIAN, RATIONALS, from_json
from .torus_core import ONE, ZERO, Element, TorusHandle, check_identity, Sampler

HALF = Fraction(1, 2)


def _meta_gamma(handle, gamma, source):
    handle._gamma = gamma
    handle.meta["gamma_source"] = source
    return handle


def laurent(r):
    n = r
    h = TorusHandle(
        n, lambda l: True, lambda l, m: ONE, lambda l: 1,
        {"op": "laurent", "r": r}, full_lattice(n) if n else Subgroup(0, ()))
    return _meta_gamma(h, h.period, "laurent")


def signed_laurent(signs):
    """Laurent torus with the involution t_i -> signs[i] t_i."""
    n = len(signs)
    signs = tuple(int(s) for s in signs)
    if any(s not in (1, -1) for s in signs):
        raise PreconditionViolated("signs must be +1 or -1")

    def sign(l):
        out = 1
        for s, a in zip(signs, l):
            if s < 0 and a % 2:
                out = -out
        return out

    central = hnf([vscale(1 if s > 0 else 2, unit(n, i)) for i, s in enumerate(signs)], n)
    h = TorusHandle(n, lambda l: True, lambda l, m: ONE, sign,
                    {"op": "signed_laurent", "signs": list(signs)}, central)
    return _meta_gamma(h, central, "signed_laurent")


def regrade(A, matrix):
    """Send the i-th basis degree of A to row i of `matrix` (square, nonsingular)."""
    M = Matrix(matrix)
    if M.rows != A.rank or M.cols != M.rows or M.det() == 0:
        raise BadDegreeArithmetic("regrading matrix must be square and nonsingular")
    Minv = M.inv()
    n = A.rank
    rows = [tuple(int(x) for x in M.row(i)) for i in range(n)]
    inv = [[Fraction(int(Minv[i, j].p), int(Minv[i, j].q)) for j in range(n)] for i in range(n)]

    def pre(v):
        c = [sum(v[i] * inv[i][j] for i in range(n)) for j in range(n)]
        if any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def image(v):
        out = (0,) * n
        for i, a in enumerate(v):
            out = vadd(out, vscale(a, rows[i]))
        return out

    def support(l):
        p = pre(l)
        return p is not None and A.in_support(p)

    period = hnf([image(b) for b in A.period.basis], n)
    h = TorusHandle(n, support, lambda l, m: A.coeff(pre(l), pre(m)), lambda l: A.inv_sign(pre(l)),
                    {"op": "regrade", "A": A.recipe, "matrix": [list(r) for r in rows]},
                    period, A.field_tag, nonzero_products=A.nonzero_products)
    h.meta["preimage"] = pre
    h.meta["image"] = image
    if A.gamma_is_metadata():
        _meta_gamma(h, hnf([image(b) for b in A.gamma.basis], n), "regrade")
    return h


def cd_double(D, mu_deg, mu_coeff, gen_deg, recipe=None):
    """CD(D, mu) = D + uD with u^2 = mu; basis on the new coset is u * x_l."""
    mu_deg, gen_deg = tuple(mu_deg), tuple(gen_deg)
    mu_coeff = from_json(mu_coeff) if isinstance(mu_coeff, (str, dict)) else Fraction(mu_coeff)
    n = D.rank
    if vscale(2, gen_deg) != mu_deg:
        raise BadDegreeArithmetic("2 * new_gen_deg must equal the degree of mu")
    if not D.in_support(mu_deg) or not mu_coeff:
        raise NotInvertible("mu is not a nonzero homogeneous element of D")
    if D.inv_sign(mu_deg) != 1:
        raise NotHermitian("mu is not hermitian")
    if mu_deg not in D.gamma:
        raise NotCentral("mu is not central in D")
    if D.in_support(gen_deg) or any(D.in_support(vadd(gen_deg, r)) for r in D.support_reps()):
        raise BadDegreeArithmetic("new coset meets the support of D")

    def part(l):
        if D.in_support(l):
            return 0, l
        r = vsub(l, gen_deg)
        if D.in_support(r):
            return 1, r
        return None

    cD, sD = D.coeff, D.inv_sign

    def support(l):
        return part(l) is not None

    def coeff(l, m):
        (pa, a), (pb, b) = part(l), part(m)
        if pa == 0 and pb == 0:
            return cD(a, b)
        if pa == 0:
            return sD(a) * cD(a, b)
        if pb == 0:
            return cD(b, a)
        ab = vadd(a, b)
        return sD(a) * cD(b, a) * mu_coeff * cD(mu_deg, ab)

    def sign(l):
        p, a = part(l)
        return sD(a) if p == 0 else -1

    rec = recipe or {"op": "cd_double", "D": D.recipe, "mu": {"degree": list(mu_deg), "coeff": str(mu_coeff)},
                     "gen": list(gen_deg)}
    return TorusHandle(n, support, coeff, sign, rec, D.period, D.field_tag)


def cayley(n):
    if not 0 <= n <= 3:
        raise PreconditionViolated("cayley(n) needs 0 <= n <= 3")
    if n == 0:
        h = laurent(0)
        h.recipe = {"op": "cayley", "n": 0}
        return h
    h = regrade(laurent(n), [vscale(2, unit(n, i)) for i in range(n)])
    for i in range(n):
        h = cd_double(h, vscale(2, unit(n, i)), 1, unit(n, i))
    h.recipe = {"op": "cayley", "n": n}
    return _meta_gamma(h, scaled_lattice(n, 2), "cayley")


def cayley_star2():
    C = cayley(2)

    def sign(l):
        return -1 if (l[0] % 2 and l[1] % 2) else 1

    h = TorusHandle(2, C.in_support, C.coeff, sign, {"op": "cayley_star2"}, C.period)
    return _meta_gamma(h, scaled_lattice(2, 2), "cayley_star2")


def tensor(A, B):
    if A.field_tag != B.field_tag:
        raise FieldMismatch("tensor factors over different fields")
    a, b = A.rank, B.rank
    n = a + b

    def support(l):
        return A.in_support(l[:a]) and B.in_support(l[a:])

    def coeff(l, m):
        return A.coeff(l[:a], m[:a]) * B.coeff(l[a:], m[a:])

    def sign(l):
        return A.inv_sign(l[:a]) * B.inv_sign(l[a:])

    def dsum(G, H):
        rows = [tuple(r) + (0,) * b for r in G.basis] + [(0,) * a + tuple(r) for r in H.basis]
        return hnf(rows, n) if rows else Subgroup(n, ())

    h = TorusHandle(n, support, coeff, sign, {"op": "tensor", "args": [A.recipe, B.recipe]},
                    dsum(A.period, B.period), A.field_tag,
                    nonzero_products=A.nonzero_products and B.nonzero_products)
    if A.gamma_is_metadata() and B.gamma_is_metadata():
        _meta_gamma(h, dsum(A.gamma, B.gamma), "tensor")
    return h


def tensor_all(*hs):
    out = hs[0]
    for h in hs[1:]:
        out = tensor(out, h)
    return out


def plus_algebra(A):
    """A+ with x.y = (xy + yx)/2 and trivial involution (support is not pruned)."""
    h = TorusHandle(A.rank, A.in_support, lambda l, m: HALF * (A.coeff(l, m) + A.coeff(m, l)),
                    lambda l: 1, {"op": "plus", "A": A.recipe}, A.period, A.field_tag,
                    nonzero_products=False)
    return h


def hermitian_part(A, regrade_support=True):
    """H(A) = hermitian elements with the Jordan product, regraded by <S_+>."""
    reps = [r for r in A.support_reps() if A.inv_sign(r) == 1]
    L = hnf(list(A.period.basis) + reps, A.rank)
    if not L.is_full():
        raise SupportNotGroup("hermitian support does not generate a full-rank subgroup")
    n = A.rank

    def support(l):
        return A.in_support(l) and A.inv_sign(l) == 1

    H = TorusHandle(n, support, lambda l, m: HALF * (A.coeff(l, m) + A.coeff(m, l)), lambda l: 1,
                    {"op": "hermitian_part", "A": A.recipe}, A.period, A.field_tag,
                    nonzero_products=False)
    if not regrade_support or L == full_lattice(n):
        return H
    # express degrees in coordinates of a basis of <S_+>
    basis = [tuple(r) for r in L.basis]
    Binv = Matrix(basis).inv()

    def to_old(v):
        out = (0,) * n
        for i, a in enumerate(v):
            out = vadd(out, vscale(a, basis[i]))
        return out

    def to_new(v):
        c = Matrix([list(v)]) * Binv
        return tuple(int(x) for x in c)

    period = hnf([to_new(p) for p in A.period.basis], n)
    out = TorusHandle(n, lambda l: support(to_old(l)), lambda l, m: H.coeff(to_old(l), to_old(m)),
                      lambda l: 1, {"op": "hermitian_part", "A": A.recipe}, period, A.field_tag,
                      nonzero_products=False)
    out.meta["regrade_basis"] = basis
    return out


def _is_associative(B, k=1):
    return check_identity(B, "associative", Sampler("exhaustive", k)).passed


def hermitian_form_torus(B, rho, b, M=None):
    """A(kappa) = B + X with X free on v_i and kappa(v_i, v_j) = delta_ij b_i.

    B is given in the coordinates of the ambient group; its product is used
    in the opposite order on the B-part.
    """
    n = B.rank
    rho = [tuple(r) for r in rho]
    b = [tuple(x) for x in b]
    M = M or B.support_lattice()
    if not M.contains_subgroup(scaled_lattice(n, 2)):
        raise PreconditionViolated("2 Lambda is not contained in M", "2 Lambda <= M")
    for i, r in enumerate(rho):
        if r in M:
            raise PreconditionViolated(f"rho_{i+1} lies in M", "rho_i not in M")
        for j in range(i):
            if vsub(r, rho[j]) in M:
                raise PreconditionViolated("rho_i not distinct modulo M", "rho_i distinct mod M")
    if subgroup_sum(M, hnf(rho, n)) != full_lattice(n):
        raise PreconditionViolated("M and rho do not generate Lambda", "Lambda = <M, rho>")
    if len(b) != len(rho):
        raise PreconditionViolated("one b_i per rho_i required")
    for i, (r, d) in enumerate(zip(rho, b)):
        if d != vscale(2, r):
            raise PreconditionViolated(f"deg b_{i+1} != 2 rho_{i+1}", "b_i in B^{2 rho_i}")
        if not B.in_support(d):
            raise PreconditionViolated(f"b_{i+1} = 0", "b_i nonzero")
        if B.inv_sign(d) != 1:
            raise NotHermitian(f"b_{i+1} is not hermitian", "b_i hermitian")
    if not _is_associative(B):
        raise PreconditionViolated("B must be associative", "B associative")

    def part(l):
        if l in M:
            return (-1, l) if B.in_support(l) else None
        for i, r in enumerate(rho):
            d = vsub(l, r)
            if d in M:
                return (i, d) if B.in_support(d) else None
        return None

    cB, sB = B.coeff, B.inv_sign

    def coeff(l, m):
        (i, a), (j, c) = part(l), part(m)
        if i < 0 and j < 0:
            return cB(c, a)
        if i < 0:
            return cB(a, c)
        if j < 0:
            return sB(c) * cB(c, a)
        if i != j:
            return ZERO
        d = b[i]
        return cB(a, d) * cB(vadd(a, d), c) * sB(c)

    def sign(l):
        i, a = part(l)
        return sB(a) if i < 0 else 1

    rec = {"op": "hermitian_form_torus", "B": B.recipe, "rho": [list(r) for r in rho], "b": [list(x) for x in b]}
    h = TorusHandle(n, lambda l: part(l) is not None, coeff, sign, rec, B.period, B.field_tag)
    h.meta["M"] = M
    h.meta["B"] = B
    return h


def jordan_cd(J, sigma0, mu_deg, mu_coeff=1, M=None):
    """CD(J, theta, mu) = J + s0 J, theta = +1 on J^Gamma and -1 elsewhere."""
    n = J.rank
    sigma0, mu_deg = tuple(sigma0), tuple(mu_deg)
    mu_coeff = from_json(mu_coeff) if isinstance(mu_coeff, (str, dict)) else Fraction(mu_coeff)
    M = M or J.support_lattice()
    G = J.gamma
    if any(J.inv_sign(r) != 1 for r in J.support_reps()):
        raise PreconditionViolated("J must carry the trivial involution", "J Jordan")
    if not G.contains_subgroup(hnf([vscale(2, r) for r in M.basis], n)):
        raise PreconditionViolated("2M is not contained in Gamma(J)", "2M <= Gamma(J)")
    if not M.is_full() or M.index() != 2:
        raise PreconditionViolated("(Lambda : M) != 2", "(Lambda:M) = 2")
    if sigma0 in M:
        raise PreconditionViolated("sigma0 lies in M", "Lambda = <M, sigma0>")
    if vscale(2, sigma0) not in G:
        raise PreconditionViolated("2 sigma0 not in Gamma(J)", "2 sigma0 in Gamma(J)")
    if mu_deg != vscale(2, sigma0) or not mu_coeff or not J.in_support(mu_deg):
        raise PreconditionViolated("mu must be a nonzero element of degree 2 sigma0", "mu in Z^{2 sigma0}")

    def theta(l):
        return 1 if l in G else -1

    def part(l):
        if l in M:
            return (0, l) if J.in_support(l) else None
        d = vsub(l, sigma0)
        return (1, d) if J.in_support(d) else None

    cJ = J.coeff

    def coeff(l, m):
        (pa, a), (pb, c) = part(l), part(m)
        base = cJ(a, c)
        if not base:
            return ZERO
        if pa == 0 and pb == 0:
            return base
        if pa == 0:
            return theta(a) * base
        ac = vadd(a, c)
        if pb == 0:
            return theta(a) * theta(c) * theta(ac) * base
        return theta(c) * theta(ac) * base * mu_coeff * cJ(mu_deg, ac)

    def sign(l):
        p, a = part(l)
        return 1 if p == 0 else -theta(a)

    rec = {"op": "jordan_cd", "J": J.recipe, "sigma0": list(sigma0),
           "mu": {"degree": list(mu_deg), "coeff": str(mu_coeff)}}
    h = TorusHandle(n, lambda l: part(l) is not None, coeff, sign, rec, J.period, J.field_tag)
    h.meta["J"] = J
    h.meta["sigma0"] = sigma0
    h.meta["M"] = M
    return _meta_gamma(h, G, "jordan_cd")


# ---------------------------------------------------------------- graded trace and ch4

class GradedTrace:
    """t(x) = 4 * (component of x in J^Gamma)."""

    def __init__(self, J):
        self.J = J
        self.G = J.gamma

    def __call__(self, x):
        return Element(self.J, {d: 4 * c for d, c in x.terms.items() if d in self.G})


def graded_trace(J):
    return GradedTrace(J)


def ch4(x, t):
    one = x.h.one()
    x2 = x * x
    x3 = x * x2
    x4 = x * x3
    t1, t2, t3, t4 = t(x), t(x2), t(x3), t(x4)
    q3 = -t1
    q2 = HALF * (t1 * t1 - t2)
    q1 = Fraction(1, 6) * (3 * (t1 * t2) - 2 * t3 - t1 * t1 * t1)
    q0 = Fraction(1, 24) * (3 * (t2 * t2) + 8 * (t1 * t3) - 6 * t4 - 6 * (t1 * t1 * t2) + t1 * t1 * t1 * t1)
    return x4 + q3 * x3 + q2 * x2 + q1 * x + q0 * one


def ch4_check(J, t=None, sampler=None, terms=3):
    """ch4 on every homogeneous x in the box plus random sums of basis elements."""
    import random
    from .torus_core import Report, random_degree
    t = t or graded_trace(J)
    sampler = sampler or Sampler("random", 2, 500, 0)
    rep = Report("ch4", "exhaustive+random", sampler.box, sampler.samples, sampler.seed)
    for d in J.box(sampler.box):
        x = J.element(d)
        rep.checked += 1
        r = ch4(x, t)
        if r:
            rep.add([d], r, 0)
    rng = random.Random(sampler.seed)
    for _ in range(sampler.samples):
        x = Element(J)
        for _ in range(rng.randint(2, terms)):
            x = x + J.element(random_degree(J, rng, sampler.box), Fraction(rng.randint(-3, 3) or 1))
        rep.checked += 1
        r = ch4(x, t)
        if r:
            rep.add(sorted(x.terms), r, 0)
    return rep


def trace_form_report(J, t=None, k=1):
    """t((xy)z) = t(x(yz)) and nondegeneracy of t(xy) on the box."""
    from .torus_core import Report
    t = t or graded_trace(J)
    rep = Report("trace_form", "exhaustive", k, 0, 0)
    window = J.box(k)
    els = {d: J.element(d) for d in window}
    for a in window:
        for b in window:
            for c in window:
                rep.checked += 1
                x, y, z = els[a], els[b], els[c]
                if t((x * y) * z) != t(x * (y * z)):
                    rep.add([a, b, c], t((x * y) * z), t(x * (y * z)))
    for a in window:
        neg = tuple(-v for v in a)
        if neg in els and not t(els[a] * els[neg]):
            rep.add([a], "degenerate", "nonzero")
    return rep


def mutate_sign(A, l, m):
    """Flip the sign of x_a x_b for every (a, b) congruent to (l, m) modulo the period.

    Used as a negative control: the result is still periodic but usually breaks identities.
    """
    P = A.period
    key = (P.reduce(l), P.reduce(m))

    def coeff(a, b):
        c = A.coeff(a, b)
        return -c if (P.reduce(a), P.reduce(b)) == key else c

    return TorusHandle(A.rank, A.in_support, coeff, A.inv_sign,
                       {"op": "mutate", "A": A.recipe, "l": list(l), "m": list(m)},
                       A.period, A.field_tag, nonzero_products=A.nonzero_products)


# ---------------------------------------------------------------- flagship builders

def flagship_class_I():
    return tensor_all(cayley(3), cayley(3), laurent(1))


def flagship_class_II():
    B = regrade(tensor(cayley(2), laurent(1)), [(1, 0, 0), (0, 1, 0), (0, 0, 2)])
    h = hermitian_form_torus(B, [(0, 0, 1)], [(0, 0, 2)])
    h.recipe = {"op": "flagship", "name": "II"}
    return h


def flagship_IIIa():
    B = regrade(cayley_star2(), [(2, 0), (0, 1)])
    h = hermitian_form_torus(B, [(1, 0)], [(2, 0)])
    h.recipe = {"op": "flagship", "name": "IIIa"}
    return h


def jord4_algebra(T="C0", r=1, split=False):
    """H(C(2) x C(2) x T x P(r)) regraded so the first Laurent generator sits at 2 e_last.

    With split=True the T = E case is realised as (C(2) x C(2) x P(r))^+.
    """
    if split:
        A = tensor_all(cayley(2), cayley(2), laurent(r))
        J = plus_algebra(A)
    else:
        parts = [cayley(2), cayley(2)]
        if T == "C1":
            parts.append(cayley(1))
        elif T == "C2":
            parts.append(cayley(2))
        parts.append(laurent(r))
        J = hermitian_part(tensor_all(*parts))
    n = J.rank
    # the first Laurent generator moves to the last coordinate and doubles
    first = n - r
    perm = [i for i in range(n) if i != first] + [first]
    rows = []
    for i in range(n):
        pos = perm.index(i)
        rows.append(vscale(2 if i == first else 1, unit(n, pos)))
    return regrade(J, rows)


def flagship_IIIb(split=False):
    J = jord4_algebra(split=split)
    n = J.rank
    s0 = unit(n, n - 1)
    h = jordan_cd(J, s0, vscale(2, s0), 1)
    h.recipe = {"op": "flagship", "name": "IIIb_split" if split else "IIIb"}
    return h


# ---------------------------------------------------------------- recipes

def _need(rec, key):
    if key not in rec:
        raise RecipeError(f"recipe op {rec.get('op')!r} is missing {key!r}")
    return rec[key]


def build(rec):
    if not isinstance(rec, dict) or "op" not in rec:
        raise RecipeError("recipe must be an object with an 'op' field")
    op = rec["op"]
    try:
        if op == "laurent":
            return laurent(int(_need(rec, "r")))
        if op == "cayley":
            return cayley(int(_need(rec, "n")))
        if op == "cayley_star2":
            return cayley_star2()
        if op == "signed_laurent":
            return signed_laurent(_need(rec, "signs"))
        if op == "tensor":
            args = _need(rec, "args")
            if not isinstance(args, list) or not args:
                raise RecipeError("tensor needs a nonempty 'args' list")
            return tensor_all(*[build(a) for a in args])
        if op == "regrade":
            return regrade(build(_need(rec, "A")), _need(rec, "matrix"))
        if op == "plus":
            return plus_algebra(build(_need(rec, "A")))
        if op == "hermitian_part":
            return hermitian_part(build(_need(rec, "A")))
        if op == "cd_double":
            mu = _need(rec, "mu")
            return cd_double(build(_need(rec, "D")), _need(mu, "degree"), mu.get("coeff", "1"), _need(rec, "gen"))
        if op == "hermitian_form_torus":
            return hermitian_form_torus(build(_need(rec, "B")), _need(rec, "rho"), _need(rec, "b"))
        if op == "jordan_cd":
            mu = _need(rec, "mu")
            return jordan_cd(build(_need(rec, "J")), _need(rec, "sigma0"), _need(mu, "degree"), mu.get("coeff", "1"))
        if op == "jord4":
            return jord4_algebra(rec.get("T", "C0"), int(rec.get("r", 1)), bool(rec.get("split", False)))
        if op == "mutate":
            return mutate_sign(build(_need(rec, "A")), tuple(_need(rec, "l")), tuple(_need(rec, "m")))
        if op == "a_herm":
            from .herm3 import build_A_herm
            return build_A_herm(_need(rec, "variant"))
        if op == "flagship":
            name = _need(rec, "name")
            table = {"I": flagship_class_I, "II": flagship_class_II, "IIIa": flagship_IIIa,
                     "IIIb": flagship_IIIb, "IIIb_split": lambda: flagship_IIIb(True)}
            if name not in table:
                raise RecipeError(f"unknown flagship {name!r}")
            return table[name]()
    except (TypeError, ValueError, KeyError) as e:
        raise RecipeError(f"malformed recipe for op {op!r}: {e}") from e
    raise RecipeError(f"unknown op {op!r}")
