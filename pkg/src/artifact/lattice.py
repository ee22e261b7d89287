"""Integer lattices, finite quotients and quadratic forms over Z2."""

from dataclasses import dataclass, field
from itertools import product

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from .errors import InfiniteQuotient, NotABasis, NotQuadratic, PreconditionViolated

MAX_INDEX = 2 ** 20


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(k, u):
    return tuple(k * a for a in u)


def unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def _pivot(row):
    for j in range(len(row) - 1, -1, -1):
        if row[j]:
            return j
    return -1


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of Z^n stored as echelon rows (pivot = last nonzero entry)."""

    rank: int
    basis: tuple

    def reduce(self, v):
        v = list(v)
        for row in self.basis:
            p = _pivot(row)
            q = v[p] // row[p]
            if q:
                for j in range(p + 1):
                    v[j] -= q * row[j]
        return tuple(v)

    def __contains__(self, v):
        return not any(self.reduce(v))

    def contains_subgroup(self, other):
        return all(r in self for r in other.basis)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.rank == other.rank and self.basis == other.basis

    def __hash__(self):
        return hash((self.rank, self.basis))

    @property
    def dim(self):
        return len(self.basis)

    def is_full(self):
        return self.dim == self.rank

    def index(self):
        if not self.is_full():
            raise InfiniteQuotient("subgroup does not have full rank")
        d = 1
        for row in self.basis:
            d *= row[_pivot(row)]
        return d

    def to_json(self):
        return {"rank": self.rank, "basis": [list(r) for r in self.basis]}


def hnf(rows, rank=None):
    rows = [tuple(int(a) for a in r) for r in rows]
    if rank is None:
        if not rows:
            raise ValueError("rank required for an empty generating set")
        rank = len(rows[0])
    rows = [r for r in rows if any(r)]
    if not rows:
        return Subgroup(rank, ())
    # sympy's HNF works on columns; transpose in and out
    H = hermite_normal_form(Matrix(rows).T).T
    basis = [tuple(int(a) for a in H.row(i)) for i in range(H.rows)]
    basis = [r for r in basis if any(r)]
    basis.sort(key=_pivot, reverse=True)
    for r in basis:
        if r[_pivot(r)] < 0:
            raise AssertionError("negative pivot from HNF")
    return Subgroup(rank, tuple(basis))


def full_lattice(n):
    return hnf([unit(n, i) for i in range(n)], n)


def scaled_lattice(n, k):
    return hnf([vscale(k, unit(n, i)) for i in range(n)], n)


def subgroup_sum(*groups):
    n = groups[0].rank
    return hnf([r for g in groups for r in g.basis], n)


def vec_order(v, M, limit=64):
    for k in range(1, limit + 1):
        if vscale(k, v) in M:
            return k
    raise InfiniteQuotient("element has no finite order modulo the subgroup")


class FiniteQuotient:
    """Lambda/M for a full-rank M; cosets are canonical representatives."""

    def __init__(self, n, M):
        if M.rank != n or not M.is_full():
            raise InfiniteQuotient(f"M has rank {M.dim} < {n}; quotient is infinite")
        if M.index() > MAX_INDEX:
            raise PreconditionViolated("quotient index above 2^20")
        self.n = n
        self.M = M
        diag = [0] * n
        for row in M.basis:
            diag[_pivot(row)] = row[_pivot(row)]
        self.diag = tuple(diag)
        self.elements = [tuple(c) for c in product(*(range(d) for d in diag))]
        self.elements.sort()
        self._order = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def rep(self, v):
        return self.M.reduce(v)

    def add(self, a, b):
        return self.rep(vadd(a, b))

    def neg(self, a):
        return self.rep(vneg(a))

    def order_of(self, a):
        a = self.rep(a)
        if a not in self._order:
            k, x = 1, a
            while any(x):
                x = self.add(x, a)
                k += 1
            self._order[a] = k
        return self._order[a]

    def exponent(self):
        e = 1
        for a in self.elements:
            o = self.order_of(a)
            while e % o:
                e *= o // _gcd(e, o)
        return e


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def quotient(n, M):
    return FiniteQuotient(n, M)


# ---------------------------------------------------------------- Z2 linear algebra

def z2_rank(vectors):
    rows = [int(sum((x & 1) << i for i, x in enumerate(v))) for v in vectors]
    basis = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def _z2_elimination(A):
    """Row-reduce a square 0/1 matrix to I; return the list of ops applied."""
    A = [[x & 1 for x in row] for row in A]
    n = len(A)
    ops = []
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            raise NotABasis("vectors do not form a Z2-basis")
        if p != c:
            A[p], A[c] = A[c], A[p]
            ops.append(("swap", p, c))
        for r in range(n):
            if r != c and A[r][c]:
                A[r] = [x ^ y for x, y in zip(A[r], A[c])]
                ops.append(("add", r, c))
    return ops


def lift_matrix(A):
    """Integer matrix with det +-1 reducing to the Z2 matrix A mod 2."""
    n = len(A)
    ops = _z2_elimination(A)
    L = [list(unit(n, i)) for i in range(n)]
    # A = E_1^-1 ... E_m^-1 (I); apply inverses of ops in reverse, on the left
    for op in reversed(ops):
        if op[0] == "swap":
            _, p, c = op
            L[p], L[c] = L[c], L[p]
        else:
            _, r, c = op
            L[r] = [x + y for x, y in zip(L[r], L[c])]
    return [tuple(r) for r in L]


def lift_orthogonal_decomposition(V_bases, n):
    rows = [tuple(v) for block in V_bases for v in block]
    if len(rows) != n or z2_rank(rows) != n:
        raise NotABasis("concatenated vectors are not a basis of Z2^n")
    L = lift_matrix(rows)
    det = int(Matrix(L).det())
    assert det in (1, -1)
    out, i = [], 0
    for block in V_bases:
        out.append(hnf(L[i:i + len(block)], n) if block else Subgroup(n, ()))
        i += len(block)
    return out, L


# ---------------------------------------------------------------- adapted basis

def _coords(B, v):
    c = Matrix([list(v)]) * Matrix(B).inv()
    return [int(x) for x in c]


def _check_adapted(n, L1, L2, v, basis, ks):
    r = len(v)
    if abs(Matrix(basis).det()) != 1:
        return "basis"
    for i in range(r):
        if vsub(v[i], basis[i]) not in L1:
            return "v_i = lam_i mod Lambda1"
    g1 = [vscale(4, basis[i]) for i in range(r)] + [vscale(ks[i - r], basis[i]) for i in range(r, n)]
    if hnf(g1, n) != L1:
        return "Lambda1 diagonal"
    g2 = list(g1)
    if r < n:
        g2[r] = vscale(2, g2[r])
    if hnf(g2, n) != L2:
        return "Lambda2 diagonal"
    return None


def adapted_basis(n, L1, L2, v):
    """Basis lam_1..lam_n of Z^n with lam_i = v_i mod L1 and both subgroups diagonal.

    Returns (basis, ks) where ks are the multipliers k_{r+1}, ..., k_n in {1, 2}.
    """
    v = [tuple(x) for x in v]
    r = len(v)
    if not L1.contains_subgroup(L2):
        raise PreconditionViolated("Lambda2 is not contained in Lambda1", "Lambda2 <= Lambda1")
    if not L1.is_full() or L1.index() * 2 != L2.index():
        raise PreconditionViolated("[Lambda1:Lambda2] != 2", "[Lambda1:Lambda2] = 2")
    if not L2.contains_subgroup(scaled_lattice(n, 4)):
        raise PreconditionViolated("4*Lambda is not contained in Lambda2", "4 Lambda <= Lambda2")
    Q = quotient(n, L1)
    doubles = {Q.rep(vscale(2, c)) for c in Q}
    span = {Q.rep(tuple([0] * n))}
    for x in v:
        span |= {Q.add(s, vscale(2, x)) for s in span}
    if span != doubles or len(span) != 2 ** r:
        raise PreconditionViolated("2v_1..2v_r is not a basis of 2(Lambda/Lambda1)", "2v basis")

    gens = Matrix([list(b) for b in L1.basis])
    D, U, V = smith_normal_decomp(gens)
    Binv = V.inv()
    basis = [tuple(int(x) for x in Binv.row(i)) for i in range(n)]
    ks = [int(D[i, i]) for i in range(n)]
    for k in ks:
        if k not in (1, 2, 4):
            raise PreconditionViolated("elementary divisor outside {1,2,4}")

    for l in range(r):
        m = _coords(basis, v[l])
        m = [((x % k) if k > 1 else 0) for x, k in zip(m, ks)]
        m = [x - 4 if (k == 4 and x == 3) else x for x, k in zip(m, ks)]
        j = next((j for j in range(l, n) if ks[j] == 4 and m[j] % 2), None)
        if j is None:
            raise PreconditionViolated("no order-4 direction for v", "2v basis")
        basis[l], basis[j] = basis[j], basis[l]
        ks[l], ks[j] = ks[j], ks[l]
        m[l], m[j] = m[j], m[l]
        new = tuple([0] * n)
        for i in range(n):
            new = vadd(new, vscale(m[i], basis[i]))
        basis[l] = new
    if any(k == 4 for k in ks[r:]):
        raise PreconditionViolated("order-4 direction left after fixing v", "Lambda1 diagonal")

    if r < n:
        bad = [i for i in range(r, n) if vscale(ks[i], basis[i]) not in L2]
        if not bad:
            raise PreconditionViolated("Lambda1 directions all lie in Lambda2")
        top = max(bad, key=lambda i: ks[i])
        basis[r], basis[top] = basis[top], basis[r]
        ks[r], ks[top] = ks[top], ks[r]
        for j in range(r + 1, n):
            if vscale(ks[j], basis[j]) in L2:
                continue
            if ks[j] == 1:
                basis[j] = vadd(vscale(ks[r], basis[r]), basis[j])
            else:
                basis[j] = vadd(basis[r], basis[j])
    out_ks = ks[r:]
    failed = _check_adapted(n, L1, L2, v, basis, out_ks)
    if failed:
        raise AssertionError(f"adapted basis failed clause {failed}")
    return basis, out_ks


# ---------------------------------------------------------------- quadratic forms over Z2

def bits(x, m):
    return tuple((x >> i) & 1 for i in range(m))


def from_bits(v):
    return sum((b & 1) << i for i, b in enumerate(v))


@dataclass(frozen=True)
class QuadraticFormZ2:
    """Value table indexed by bitmask (bit i is coordinate i)."""

    dim: int
    values: tuple

    def __call__(self, x):
        if not isinstance(x, int):
            x = from_bits(x)
        return self.values[x]

    def polar(self, x, y):
        return self.values[x ^ y] ^ self.values[x] ^ self.values[y]

    def is_quadratic(self):
        if self.values[0]:
            return False
        # additivity in the first slot along each basis direction suffices
        N = 1 << self.dim
        for i in range(self.dim):
            e = 1 << i
            for x in range(N):
                for z in range(N):
                    if self.polar(x ^ e, z) != self.polar(x, z) ^ self.polar(e, z):
                        return False
        return True

    def pullback(self, basis):
        """Form in the coordinates of `basis` (list of bitmasks)."""
        vals = []
        for x in range(1 << len(basis)):
            y = 0
            for i, b in enumerate(basis):
                if (x >> i) & 1:
                    y ^= b
            vals.append(self.values[y])
        return QuadraticFormZ2(len(basis), tuple(vals))

    def to_json(self):
        return {"dim": self.dim, "values": list(self.values)}


def quadratic_from_data(diag, polar):
    """Form with q(e_i)=diag[i] and polar values polar[(i,j)] for i<j."""
    m = len(diag)
    vals = []
    for x in range(1 << m):
        b = bits(x, m)
        s = sum(diag[i] for i in range(m) if b[i])
        s += sum(polar.get((i, j), 0) for i in range(m) for j in range(i + 1, m) if b[i] and b[j])
        vals.append(s & 1)
    return QuadraticFormZ2(m, tuple(vals))


@dataclass
class NormalForm:
    blocks: list
    basis: list
    raw_blocks: list = field(default_factory=list)

    @property
    def signature(self):
        return tuple(sorted(self.blocks))

    def count(self, tag):
        return sum(1 for b in self.blocks if b == tag)


def _block_tags(q, blocks):
    tags = []
    for blk in blocks:
        if len(blk) == 1:
            tags.append(("F", q(blk[0])))
        else:
            tags.append(("H", q(blk[0]), q(blk[1])))
    return tags


def _decompose(q):
    m = q.dim
    rest = [1 << i for i in range(m)]
    blocks = []
    while True:
        pair = None
        for i, x in enumerate(rest):
            for j in range(i + 1, len(rest)):
                if q.polar(x, rest[j]):
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break
        x, y = rest[pair[0]], rest[pair[1]]
        others = [z for k, z in enumerate(rest) if k not in pair]
        # project the rest onto the orthogonal complement of <x, y>
        proj = []
        for z in others:
            if q.polar(z, y):
                z ^= x
            if q.polar(z, x):
                z ^= y
            proj.append(z)
        blocks.append([x, y])
        rest = proj
    # radical: q is additive there
    one = next((z for z in rest if q(z)), None)
    if one is not None:
        rest = [one] + [z ^ one if q(z) else z for z in rest if z != one]
    blocks.extend([z] for z in rest)
    return blocks


def _normalize(q, blocks):
    def tags():
        return _block_tags(q, blocks)

    changed = True
    while changed:
        changed = False
        t = tags()
        # (b), with (H,0,1) first swapped into (H,1,0)
        for k, tag in enumerate(t):
            if tag == ("H", 0, 1):
                blocks[k] = [blocks[k][1], blocks[k][0]]
                tag = ("H", 1, 0)
            if tag == ("H", 1, 0):
                x, y = blocks[k]
                blocks[k] = [x ^ y, y]
                changed = True
        if changed:
            continue
        # (a)
        f1 = [k for k, tag in enumerate(t) if tag == ("F", 1)]
        if len(f1) >= 2:
            a, b = f1[0], f1[1]
            x1, x2 = blocks[a][0], blocks[b][0]
            blocks[b] = [x1 ^ x2]
            changed = True
            continue
        # (c)
        h0 = [k for k, tag in enumerate(t) if tag == ("H", 0, 0)]
        if len(h0) >= 2:
            a, b = h0[0], h0[1]
            x1, y1 = blocks[a]
            x2, y2 = blocks[b]
            blocks[a] = [x1 ^ y1, x1 ^ x2 ^ y2]
            blocks[b] = [x2 ^ y2, x1 ^ y1 ^ x2]
            changed = True
            continue
        # (d)
        if h0 and f1:
            a, b = h0[0], f1[0]
            x1, y1 = blocks[a]
            x2 = blocks[b][0]
            blocks[a] = [x1 ^ x2, y1 ^ x2]
            changed = True
    return blocks


def classify_quadratic_z2(q):
    if not q.is_quadratic():
        raise NotQuadratic("polarization is not biadditive")
    blocks = _decompose(q)
    raw = _block_tags(q, blocks)
    blocks = _normalize(q, [list(b) for b in blocks])
    order = {"H": 0, "F": 1}
    tagged = sorted(zip(_block_tags(q, blocks), blocks), key=lambda p: (order[p[0][0]], p[0][1:]), reverse=False)
    tags = [t for t, _ in tagged]
    basis = [x for _, b in tagged for x in b]
    nf = NormalForm(tags, basis, raw)
    assert block_form(tags) == q.pullback(basis), "basis change does not realize the block form"
    return nf


def block_form(tags):
    """The orthogonal sum of the given blocks as a form in block coordinates."""
    diag, polar, i = [], {}, 0
    for tag in tags:
        if tag[0] == "F":
            diag.append(tag[1])
            i += 1
        else:
            diag.extend(tag[1:])
            polar[(i, i + 1)] = 1
            i += 2
    return quadratic_from_data(diag, polar)
