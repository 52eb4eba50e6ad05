"""Sparse exact bivariate polynomials in z, w.

Terms are stored canonically: ascending graded order, ties broken by z-power
descending (graded lexicographic with z > w).  The first stored term is
therefore the one a local (tangent-cone) ordering treats as leading.  Equal
inputs always produce bit-identical stored representations.

``trunc`` is an optional truncation degree N: coefficients of total degree
< N are exact, terms of degree >= N are unknown (never assumed zero).  All
ring operations propagate the minimum of the operands' truncations, which is
sound because vanishing orders are nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError
from .field import AlgExt, common_minpoly


def _grlex_key(ab):
    a, b = ab
    return (a + b, -a)


def _min_trunc(t1, t2):
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    return min(t1, t2)


@dataclass(frozen=True)
class BiPoly:
    terms: tuple  # of ((a, b), coeff), canonical order, coeff != 0
    trunc: int | None = None

    @staticmethod
    def make(mapping, trunc=None):
        items = []
        for (a, b), c in mapping.items():
            if c == 0:
                continue
            if trunc is not None and a + b >= trunc:
                continue
            if isinstance(c, int):
                c = Fraction(c)
            items.append(((a, b), c))
        items.sort(key=lambda t: _grlex_key(t[0]))
        return BiPoly(tuple(items), trunc)

    @staticmethod
    def zero(trunc=None):
        return BiPoly((), trunc)

    @staticmethod
    def const(c, trunc=None):
        return BiPoly.make({(0, 0): Fraction(c) if isinstance(c, int) else c}, trunc)

    @staticmethod
    def monomial(a, b, c=1, trunc=None):
        return BiPoly.make({(a, b): Fraction(c) if isinstance(c, int) else c}, trunc)

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def coeff(self, a, b):
        for (i, j), c in self.terms:
            if (i, j) == (a, b):
                return c
        return Fraction(0)

    def lowest_degree(self):
        """Total degree of the first nonzero term, or None if no terms stored."""
        if not self.terms:
            return None
        (a, b), _ = self.terms[0]
        return a + b

    def total_degree(self):
        if not self.terms:
            return None
        return max(a + b for (a, b), _ in self.terms)

    def degree_in(self, var):
        idx = 0 if var == "z" else 1
        if not self.terms:
            return None
        return max(ab[idx] for ab, _ in self.terms)

    def field_minpoly(self):
        return common_minpoly(*(c for _, c in self.terms))

    def constant_term(self):
        return self.coeff(0, 0)

    # -- arithmetic ------------------------------------------------------

    def _combine(self, other, sign):
        d = {ab: c for ab, c in self.terms}
        for ab, c in other.terms:
            d[ab] = d.get(ab, Fraction(0)) + (c if sign > 0 else -c)
        return BiPoly.make(d, _min_trunc(self.trunc, other.trunc))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, AlgExt)):
            other = BiPoly.const(other)
        return self._combine(other, +1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, AlgExt)):
            other = BiPoly.const(other)
        return self._combine(other, -1)

    def __neg__(self):
        return BiPoly(tuple((ab, -c) for ab, c in self.terms), self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, AlgExt)):
            if other == 0:
                return BiPoly.zero(self.trunc)
            return BiPoly(tuple((ab, c * other) for ab, c in self.terms), self.trunc)
        trunc = _min_trunc(self.trunc, other.trunc)
        d = {}
        for (a1, b1), c1 in self.terms:
            for (a2, b2), c2 in other.terms:
                a, b = a1 + a2, b1 + b2
                if trunc is not None and a + b >= trunc:
                    continue
                key = (a, b)
                d[key] = d.get(key, Fraction(0)) + c1 * c2
        return BiPoly.make(d, trunc)

    __rmul__ = __mul__

    def scale(self, c):
        return self * c

    def pow(self, n):
        result = BiPoly.const(1, self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and substitutions --------------------------------------

    def partial(self, var):
        """Formal partial derivative; finite truncation drops by one."""
        idx = 0 if var == "z" else 1
        trunc = self.trunc
        if trunc is not None:
            trunc -= 1
            if trunc < 1:
                raise PrecisionError("truncation exhausted by differentiation")
        d = {}
        for (a, b), c in self.terms:
            e = (a, b)[idx]
            if e == 0:
                continue
            key = (a - 1, b) if idx == 0 else (a, b - 1)
            d[key] = d.get(key, Fraction(0)) + c * e
        return BiPoly.make(d, trunc)

    def swap_vars(self):
        return BiPoly.make({(b, a): c for (a, b), c in self.terms}, self.trunc)

    def shear_z(self, c):
        """Substitute z -> z + c*w (the germ transform for the shear change)."""
        from math import comb

        d = {}
        for (a, b), co in self.terms:
            for i in range(a + 1):
                key = (i, b + (a - i))
                coeff = co * comb(a, i) * (c ** (a - i))
                d[key] = d.get(key, Fraction(0)) + coeff
        return BiPoly.make(d, self.trunc)

    def subst_var(self, var, value):
        """Set one variable to a constant (used for axis restrictions)."""
        idx = 0 if var == "z" else 1
        d = {}
        for (a, b), c in self.terms:
            e = (a, b)[idx]
            coeff = c * (value ** e) if e else c
            key = (0, b) if idx == 0 else (a, 0)
            d[key] = d.get(key, Fraction(0)) + coeff
        return BiPoly.make(d, self.trunc)

    # -- univariate views -------------------------------------------------

    def as_poly_in(self, var):
        """Dense list of coefficient polynomials in the other variable, ascending."""
        idx = 0 if var == "z" else 1
        deg = self.degree_in(var)
        if deg is None:
            return []
        rows = [dict() for _ in range(deg + 1)]
        for (a, b), c in self.terms:
            e = (a, b)[idx]
            rest = (0, b) if idx == 0 else (a, 0)
            rows[e][rest] = c
        return [BiPoly.make(r, self.trunc) for r in rows]

    @staticmethod
    def from_poly_in(var, coeffs, trunc=None):
        d = {}
        for e, p in enumerate(coeffs):
            for (a, b), c in p.terms:
                key = (a + e, b) if var == "z" else (a, b + e)
                d[key] = d.get(key, Fraction(0)) + c
        return BiPoly.make(d, trunc)

    def __str__(self):
        from .parse import render_poly

        return render_poly(self)


Z = BiPoly.monomial(1, 0)
W = BiPoly.monomial(0, 1)
ONE = BiPoly.const(1)


def poly_arith(p, q, op):
    """Spec-surface arithmetic entry point ('add' | 'sub' | 'mul')."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError("unknown operation %r" % (op,))


def jacobian_poly(f, g):
    """det of the Jacobian of (f, g): f_z g_w - f_w g_z, exact."""
    return f.partial("z") * g.partial("w") - f.partial("w") * g.partial("z")


def normalize_sign(p):
    """Flip the sign so the leading (first stored) coefficient is positive.

    AlgExt leading coefficients flip on a negative first nonzero coordinate.
    Multiplying a multiplier by -1 changes nothing structural; this pins a
    deterministic representative.
    """
    if not p.terms:
        return p
    c = p.terms[0][1]
    if isinstance(c, Fraction):
        return -p if c < 0 else p
    for coord in c.coords:
        if coord != 0:
            return -p if coord < 0 else p
    return p
