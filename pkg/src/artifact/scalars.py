"""Exact scalars: Fraction for Q, GaussQ for Q(i)."""

from fractions import Fraction

RATIONALS = "rationals"
GAUSSIAN = "gaussian_rationals"


class GaussQ:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussQ(x, 0)
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return GaussQ(self.re * o, self.im * o)
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def __truediv__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        d = o.re * o.re + o.im * o.im
        p = self * o.conjugate()
        return GaussQ(p.re / d, p.im / d)

    def __rtruediv__(self, o):
        return GaussQ._lift(o) / self

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if isinstance(o, GaussQ):
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}+{self.im}i)"


I = GaussQ(0, 1)


def simplify(x):
    """Collapse a GaussQ with zero imaginary part to a Fraction."""
    if isinstance(x, GaussQ) and x.im == 0:
        return x.re
    if isinstance(x, int):
        return Fraction(x)
    return x


def sign_of(x):
    """+1/-1 for a nonzero real scalar; None for non-real or zero."""
    x = simplify(x)
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0) or None
    return None


def to_json(x):
    x = simplify(x)
    if isinstance(x, GaussQ):
        return {"re": str(x.re), "im": str(x.im)}
    return {"re": str(x), "im": "0"}


def from_json(d):
    if isinstance(d, dict):
        re, im = Fraction(d.get("re", "0")), Fraction(d.get("im", "0"))
        return simplify(GaussQ(re, im))
    return Fraction(str(d))


def fmt(x):
    x = simplify(x)
    return repr(x) if isinstance(x, GaussQ) else str(x)
