"""Truncated univariate power series in t with exact coefficients.

A TSeries knows its coefficients for exponents < precision; everything at or
beyond precision is unknown, never assumed zero.  Arithmetic tracks the
attainable precision exactly: a product is known below
min(P1 + ord(s2), P2 + ord(s1)) where ord is the least known nonzero exponent
(or the precision itself when nothing nonzero is known).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bipoly import BiPoly
from .errors import PrecisionError

# precision assigned to compositions with no truncated data at all
EXACT_CAP = 1 << 24


@dataclass(frozen=True)
class TSeries:
    coeffs: tuple  # of (exp, coeff), ascending, coeff != 0, exp < precision
    precision: int

    @staticmethod
    def make(mapping, precision):
        if precision < 1:
            raise PrecisionError("series precision must be positive")
        items = []
        for e, c in mapping.items():
            if c == 0 or e >= precision:
                continue
            if isinstance(c, int):
                c = Fraction(c)
            items.append((e, c))
        items.sort()
        return TSeries(tuple(items), precision)

    @staticmethod
    def zero(precision):
        return TSeries.make({}, precision)

    @staticmethod
    def monomial(e, c=1, precision=EXACT_CAP):
        return TSeries.make({e: c}, precision)

    # -- queries -----------------------------------------------------------

    def order_lb(self):
        """Least known nonzero exponent; equals precision when none is known."""
        return self.coeffs[0][0] if self.coeffs else self.precision

    @property
    def known_zero(self):
        return not self.coeffs

    def coeff(self, e):
        for exp, c in self.coeffs:
            if exp == e:
                return c
        return Fraction(0)

    def vanishes_at_origin(self):
        return self.coeff(0) == 0

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        prec = min(self.precision, other.precision)
        d = dict(self.coeffs)
        for e, c in other.coeffs:
            d[e] = d.get(e, Fraction(0)) + c
        return TSeries.make(d, prec)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TSeries(tuple((e, -c) for e, c in self.coeffs), self.precision)

    def scale(self, c):
        if c == 0:
            return TSeries.zero(self.precision)
        return TSeries(tuple((e, cf * c) for e, cf in self.coeffs), self.precision)

    def shift(self, k):
        return TSeries.make({e + k: c for e, c in self.coeffs}, self.precision + k)

    def __mul__(self, other):
        prec = min(
            self.precision + other.order_lb(),
            other.precision + self.order_lb(),
        )
        prec = min(prec, EXACT_CAP)
        d = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                if e >= prec:
                    continue
                d[e] = d.get(e, Fraction(0)) + c1 * c2
        return TSeries.make(d, prec)

    def pow(self, n):
        if n == 0:
            return TSeries.monomial(0, 1, EXACT_CAP)
        result = None
        base = self
        m = n
        while m:
            if m & 1:
                result = base if result is None else result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def truncate(self, precision):
        if precision >= self.precision:
            return self
        return TSeries.make(dict(self.coeffs), precision)

    def reparam_power(self, r):
        """t -> t^r (singular parameter change used in invariance tests)."""
        return TSeries.make({e * r: c for e, c in self.coeffs}, self.precision * r)

    def reparam_scale(self, c):
        """t -> c*t for a nonzero constant c."""
        return TSeries(tuple((e, cf * c**e) for e, cf in self.coeffs), self.precision)

    def inverse(self):
        """Multiplicative inverse of a unit series, to the same precision."""
        c0 = self.coeff(0)
        if c0 == 0:
            raise ZeroDivisionError("inverse of a non-unit series")
        prec = self.precision
        inv = {0: 1 / c0}
        tail = dict(self.coeffs)
        for e in range(1, prec):
            acc = Fraction(0)
            for k, c in tail.items():
                if 0 < k <= e and (e - k) in inv:
                    acc += c * inv[e - k]
            if acc != 0:
                inv[e] = -acc / c0
        return TSeries.make(inv, prec)

    def __str__(self):
        from .parse import render_series

        return render_series(self)


@lru_cache(maxsize=262144)
def _pow_cached(s: TSeries, n: int) -> TSeries:
    if n == 0:
        return TSeries.monomial(0, 1, EXACT_CAP)
    if n == 1:
        return s
    half = _pow_cached(s, n // 2)
    out = half * half
    if n & 1:
        out = out * s
    return out


def compose_series(p: BiPoly, alpha: TSeries, beta: TSeries) -> TSeries:
    """Evaluate p(alpha(t), beta(t)) with exact precision bookkeeping.

    Both series must vanish at t=0.  A finite truncation on p caps the result
    precision at trunc * min(ord(alpha), ord(beta)).
    """
    if not (alpha.vanishes_at_origin() and beta.vanishes_at_origin()):
        raise ValueError("curve components must vanish at the origin")
    o_min = min(max(alpha.order_lb(), 1), max(beta.order_lb(), 1))
    cap = EXACT_CAP if p.trunc is None else p.trunc * o_min
    base_prec = min(alpha.precision, beta.precision, cap, EXACT_CAP)
    if not p.terms:
        return TSeries.zero(base_prec)
    total = None
    prec = cap
    for (a, b), c in p.terms:
        term = (_pow_cached(alpha, a) * _pow_cached(beta, b)).scale(c)
        prec = min(prec, term.precision)
        total = term if total is None else total + term
    result = total.truncate(min(prec, total.precision))
    return result
