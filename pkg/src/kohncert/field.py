"""Coefficient fields: exact rationals and one simple algebraic extension.

A coefficient is either a ``fractions.Fraction`` or an ``AlgExt`` element of
Q(theta) for a single monic irreducible minimal polynomial.  Degree-1
extensions and extension elements whose non-constant coordinates vanish are
demoted to plain ``Fraction``, so a coefficient equal to a rational number is
always *stored* as a rational number.  Mixing elements of two different
extensions raises ``FieldTowerError`` (no towers, by design).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldTowerError

Rat = Fraction


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_divmod(num, den):
    """Dense univariate divmod over Q, coefficients ascending."""
    num = _trim(num)
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    r = list(num)
    dlc = den[-1]
    while len(r) >= len(den) and any(c != 0 for c in r):
        r = _trim(r)
        if len(r) < len(den):
            break
        shift = len(r) - len(den)
        factor = r[-1] / dlc
        q[shift] = factor
        for i, dc in enumerate(den):
            r[shift + i] -= factor * dc
        r = r[:-1]
    return _trim(q), _trim(r)


def _poly_xgcd(a, b):
    """Extended gcd over Q[x]; returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    if not r0:
        return [], [], []
    lc = r0[-1]
    return ([c / lc for c in r0], [c / lc for c in s0], [c / lc for c in t0])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


@dataclass(frozen=True)
class AlgExt:
    """Element of Q(theta), theta a root of the monic irreducible ``minpoly``.

    ``minpoly`` is stored ascending including the leading 1; ``coords`` are the
    residue coordinates (length == degree), also ascending in theta.
    """

    minpoly: tuple[Fraction, ...]
    coords: tuple[Fraction, ...]

    @staticmethod
    def make(minpoly, coords):
        mp = minpoly if isinstance(minpoly, tuple) else tuple(Fraction(c) for c in minpoly)
        if len(mp) < 2 or mp[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        deg = len(mp) - 1
        cs = [Fraction(0)] * deg
        for i, c in enumerate(coords):
            if i >= deg:
                raise ValueError("residue coordinates exceed extension degree")
            cs[i] = c if isinstance(c, Fraction) else Fraction(c)
        if deg == 1 or all(c == 0 for c in cs[1:]):
            return cs[0] if cs else Fraction(0)
        return AlgExt(mp, tuple(cs))

    @staticmethod
    def generator(minpoly):
        """theta itself, for a monic irreducible minpoly of degree >= 2."""
        mp = tuple(Fraction(c) for c in minpoly)
        deg = len(mp) - 1
        if deg < 2:
            raise ValueError("degree-1 extensions normalize to rationals")
        coords = [Fraction(0)] * deg
        coords[1] = Fraction(1)
        return AlgExt(mp, tuple(coords))

    @property
    def degree(self):
        return len(self.minpoly) - 1

    def _coerce(self, other):
        if isinstance(other, AlgExt):
            if other.minpoly != self.minpoly:
                raise FieldTowerError(
                    "incompatible extensions: %s vs %s" % (self.minpoly, other.minpoly)
                )
            return other.coords
        if isinstance(other, (int, Fraction)):
            cs = [Fraction(0)] * self.degree
            cs[0] = Fraction(other)
            return tuple(cs)
        return None

    def _reduce(self, dense):
        # monic modulus: fold top coefficients directly, no division needed
        deg = len(self.minpoly) - 1
        cs = list(dense)
        for i in range(len(cs) - 1, deg - 1, -1):
            c = cs[i]
            if c:
                for j in range(deg):
                    cs[i - deg + j] -= c * self.minpoly[j]
        return AlgExt.make(self.minpoly, cs[:deg])

    def __add__(self, other):
        cs = self._coerce(other)
        if cs is None:
            return NotImplemented
        return AlgExt.make(self.minpoly, [a + b for a, b in zip(self.coords, cs)])

    __radd__ = __add__

    def __sub__(self, other):
        cs = self._coerce(other)
        if cs is None:
            return NotImplemented
        return AlgExt.make(self.minpoly, [a - b for a, b in zip(self.coords, cs)])

    def __rsub__(self, other):
        cs = self._coerce(other)
        if cs is None:
            return NotImplemented
        return AlgExt.make(self.minpoly, [b - a for a, b in zip(self.coords, cs)])

    def __neg__(self):
        return AlgExt(self.minpoly, tuple(-c for c in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return Fraction(0)
            return AlgExt.make(self.minpoly, [c * q for c in self.coords])
        cs = self._coerce(other)
        if cs is None:
            return NotImplemented
        return self._reduce(_poly_mul(list(self.coords), list(cs)))

    __rmul__ = __mul__

    def inverse(self):
        g, s, _ = _poly_xgcd(list(self.coords), list(self.minpoly))
        if len(g) != 1:
            # minpoly irreducible => gcd is 1 unless self == 0
            raise ZeroDivisionError("inverse of zero extension element")
        inv = [c / g[0] for c in s]
        return self._reduce(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        cs = self._coerce(other)
        if cs is None:
            return NotImplemented
        o = AlgExt(self.minpoly, tuple(cs)) if not isinstance(other, AlgExt) else other
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = base * result if isinstance(result, Fraction) else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, AlgExt):
            return self.minpoly == other.minpoly and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            # demotion keeps rational values out of AlgExt, so never equal
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.minpoly, self.coords))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("%s*r" % c)
            else:
                parts.append("%s*r^%d" % (c, i))
        return " + ".join(parts) if parts else "0"


def minpoly_of(c):
    """The extension minpoly used by coefficient c, or None for rationals."""
    return c.minpoly if isinstance(c, AlgExt) else None


def common_minpoly(*coeffs):
    """The single extension shared by the coefficients; FieldTowerError on a mix."""
    mp = None
    for c in coeffs:
        m = minpoly_of(c)
        if m is None:
            continue
        if mp is None:
            mp = m
        elif mp != m:
            raise FieldTowerError("coefficients live in different extensions")
    return mp


def conj_degree(c):
    return c.degree if isinstance(c, AlgExt) else 1
