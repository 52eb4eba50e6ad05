"""Vanishing orders, normalized orders along curves, jets, curve normalization.

Every order computation lands in an ``ExtOrder``: an exact nonnegative
rational, a truncation-limited lower bound ("at least q"), or infinity.
Comparisons that the working precision cannot decide raise PrecisionError
instead of guessing; callers may retry with a larger truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bipoly import BiPoly
from .errors import PrecisionError
from .series import TSeries, compose_series

EXACT = "exact"
AT_LEAST = "at_least"
INFINITE = "infinite"


@dataclass(frozen=True)
class ExtOrder:
    kind: str
    value: Fraction | None = None

    @staticmethod
    def exact(v):
        v = Fraction(v)
        if v < 0:
            raise ValueError("orders are nonnegative")
        return ExtOrder(EXACT, v)

    @staticmethod
    def at_least(v):
        v = Fraction(v)
        if v < 0:
            raise ValueError("orders are nonnegative")
        return ExtOrder(AT_LEAST, v)

    @staticmethod
    def infinite():
        return ExtOrder(INFINITE, None)

    @property
    def is_exact(self):
        return self.kind == EXACT

    @property
    def is_infinite(self):
        return self.kind == INFINITE

    def lo(self):
        """Certified lower bound (None encodes +infinity)."""
        return None if self.is_infinite else self.value

    def hi(self):
        """Certified upper bound (None encodes +infinity)."""
        return self.value if self.is_exact else None

    # -- arithmetic ---------------------------------------------------------

    def add(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExtOrder.exact(other) if other >= 0 else ExtOrder(EXACT, Fraction(other))
        if self.is_infinite or other.is_infinite:
            return ExtOrder.infinite()
        kind = EXACT if self.is_exact and other.is_exact else AT_LEAST
        return ExtOrder(kind, self.value + other.value)

    def add_int(self, k):
        if self.is_infinite:
            return self
        v = self.value + k
        if v < 0:
            raise ValueError("order would become negative")
        return ExtOrder(self.kind, v)

    def sub_clamped(self, k):
        """max(self - k, 0), the jet-order shift."""
        if self.is_infinite:
            return self
        return ExtOrder(self.kind, max(self.value - k, Fraction(0)))

    def div(self, r):
        if r <= 0:
            raise ValueError("can only divide by a positive order")
        if self.is_infinite:
            return self
        return ExtOrder(self.kind, self.value / Fraction(r))

    def mul_int(self, k):
        if self.is_infinite:
            return self
        return ExtOrder(self.kind, self.value * k)

    # -- comparisons (raise PrecisionError when undecidable) ------------------

    def gt(self, other):
        other = _coerce(other)
        if self.is_infinite:
            return not other.is_infinite
        if other.is_infinite:
            return False
        if other.hi() is not None and self.lo() > other.hi():
            return True
        if self.hi() is not None and self.hi() <= other.lo():
            return False
        raise PrecisionError(
            "cannot decide %s > %s at this precision" % (self, other)
        )

    def ge(self, other):
        other = _coerce(other)
        if self.is_infinite:
            return True
        if other.is_infinite:
            return False
        if other.hi() is not None and self.lo() >= other.hi():
            return True
        if self.hi() is not None and self.hi() < other.lo():
            return False
        raise PrecisionError(
            "cannot decide %s >= %s at this precision" % (self, other)
        )

    def lt(self, other):
        return _coerce(other).gt(self)

    def le(self, other):
        return _coerce(other).ge(self)

    def eq_exact(self, other):
        other = _coerce(other)
        if self.is_exact and other.is_exact:
            return self.value == other.value
        if self.is_infinite and other.is_infinite:
            return True
        if self.is_infinite != other.is_infinite and (self.is_infinite or other.is_infinite):
            # an at_least vs infinite or exact vs infinite cannot be proven equal
            return False
        raise PrecisionError("equality undecidable for %s vs %s" % (self, other))

    def require_exact(self, what="order"):
        if not self.is_exact:
            raise PrecisionError("%s did not resolve to an exact value: %s" % (what, self))
        return self.value

    def __str__(self):
        if self.is_infinite:
            return "inf"
        if self.is_exact:
            return str(self.value)
        return ">=%s" % self.value


def _coerce(x):
    if isinstance(x, ExtOrder):
        return x
    return ExtOrder.exact(x)


def order_min(orders):
    """min with the spec's exactness-propagation rule."""
    orders = list(orders)
    if not orders:
        raise ValueError("min of no orders")
    if all(o.is_infinite for o in orders):
        return ExtOrder.infinite()
    finite = [o for o in orders if not o.is_infinite]
    lo = min(o.lo() for o in finite)
    exacts = [o for o in finite if o.is_exact]
    if exacts:
        e = min(o.value for o in exacts)
        if all(e <= o.lo() for o in finite):
            return ExtOrder.exact(e)
    return ExtOrder.at_least(lo)


def order_max(orders):
    orders = list(orders)
    if not orders:
        raise ValueError("max of no orders")
    if any(o.is_infinite for o in orders):
        return ExtOrder.infinite()
    if all(o.is_exact for o in orders):
        return ExtOrder.exact(max(o.value for o in orders))
    return ExtOrder.at_least(max(o.lo() for o in orders))


# -- germ and curve types ----------------------------------------------------


@dataclass(frozen=True)
class Germ:
    poly: BiPoly
    label: str = "f"

    def relabel(self, label):
        return Germ(self.poly, label)

    def __str__(self):
        return "%s = %s" % (self.label, self.poly)


@dataclass(frozen=True)
class JetSpec:
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("jet order must be nonnegative")


def _jet_k(k):
    return k.order if isinstance(k, JetSpec) else int(k)


@dataclass(frozen=True)
class CurveGerm:
    alpha: TSeries
    beta: TSeries

    def __post_init__(self):
        if not (self.alpha.vanishes_at_origin() and self.beta.vanishes_at_origin()):
            raise ValueError("curve germ must vanish at t=0")
        if self.alpha.known_zero and self.beta.known_zero:
            raise ValueError("curve components are both zero to precision")

    def precision(self):
        return min(self.alpha.precision, self.beta.precision)

    def __str__(self):
        return "(%s, %s)" % (self.alpha, self.beta)


@dataclass(frozen=True)
class CoordinateChange:
    """Linear change used for curve normalization: identity, swap, or z -> z - c*w."""

    kind: str  # "identity" | "swap" | "shear"
    shear: object = None  # coefficient c for the shear case

    def apply_germ(self, g: Germ) -> Germ:
        if self.kind == "identity":
            return g
        if self.kind == "swap":
            return Germ(g.poly.swap_vars(), g.label)
        return Germ(g.poly.shear_z(self.shear), g.label)

    def apply_curve(self, c: CurveGerm) -> CurveGerm:
        if self.kind == "identity":
            return c
        if self.kind == "swap":
            return CurveGerm(c.beta, c.alpha)
        return CurveGerm(c.alpha - c.beta.scale(self.shear), c.beta)


# -- order operations ---------------------------------------------------------


def nu(f) -> ExtOrder:
    """Vanishing order of a germ (or raw BiPoly): lowest total degree present."""
    p = f.poly if isinstance(f, Germ) else f
    d = p.lowest_degree()
    if d is not None:
        return ExtOrder.exact(d)
    if p.trunc is None:
        return ExtOrder.infinite()
    return ExtOrder.at_least(p.trunc)


def nu_series(s: TSeries) -> ExtOrder:
    if s.coeffs:
        return ExtOrder.exact(s.coeffs[0][0])
    return ExtOrder.at_least(s.precision)


def nu_curve(gamma: CurveGerm) -> ExtOrder:
    return order_min([nu_series(gamma.alpha), nu_series(gamma.beta)])


@lru_cache(maxsize=65536)
def _compose_cached(poly, alpha, beta):
    return compose_series(poly, alpha, beta)


# Order computations rarely need the full branch precision; capping the curve
# before composing keeps the at_least semantics sound and the kernels fast.
WORK_PRECISION = 128


def compose_on_curve(f, gamma: CurveGerm) -> TSeries:
    p = f.poly if isinstance(f, Germ) else f
    alpha, beta = gamma.alpha, gamma.beta
    if alpha.precision > WORK_PRECISION:
        alpha = alpha.truncate(WORK_PRECISION)
    if beta.precision > WORK_PRECISION:
        beta = beta.truncate(WORK_PRECISION)
    return _compose_cached(p, alpha, beta)


def nu_gamma(f, gamma: CurveGerm) -> ExtOrder:
    """Normalized vanishing order along a curve: nu(f o gamma) / nu(gamma)."""
    p = f.poly if isinstance(f, Germ) else f
    r = nu_curve(gamma).require_exact("curve order")
    if p.is_zero and p.trunc is None:
        return ExtOrder.infinite()
    return nu_series(compose_on_curve(p, gamma)).div(r)


def jet(f: Germ, k) -> list:
    """All partials d_z^a d_w^b f with a+b <= k, labeled by (a, b)."""
    k = _jet_k(k)
    base = f if isinstance(f, Germ) else Germ(f, "f")
    out = [base]
    row = {(0, 0): base.poly}
    for total in range(1, k + 1):
        new_row = {}
        for (a, b), p in row.items():
            for var, (da, db) in (("z", (1, 0)), ("w", (0, 1))):
                key = (a + da, b + db)
                if key in new_row:
                    continue
                new_row[key] = p.partial(var)
        row = new_row
        for (a, b) in sorted(row, key=lambda ab: (-ab[0],)):
            out.append(Germ(row[(a, b)], "d^(%d,%d)[%s]" % (a, b, base.label)))
    return out


def nu_k(f, k) -> ExtOrder:
    """Jet vanishing order: max(nu(f) - k, 0), with at_least propagation."""
    return nu(f).sub_clamped(_jet_k(k))


def nu_k_jet_direct(f, k) -> ExtOrder:
    """Oracle form of nu_k: minimum of nu over the jet members."""
    return order_min([nu(g) for g in jet(f, k)])


def nu_k_gamma(f, k, gamma: CurveGerm) -> ExtOrder:
    """Jet vanishing order along a curve: min of nu_gamma over the k-jet."""
    return order_min([nu_gamma(g, gamma) for g in jet(f, k)])


def nu_set(germs) -> ExtOrder:
    return order_min([nu(g) for g in germs])


def nu_gamma_set(germs, gamma) -> ExtOrder:
    return order_min([nu_gamma(g, gamma) for g in germs])


def normalize_curve(gamma: CurveGerm, context=()):
    """Coordinate change making nu(alpha) > nu(beta) >= 1.

    Tries identity, swap, then the one shear z -> z - c*w whose coefficient
    cancels the leading terms (computed, not sampled: it is unique).  Returns
    (gamma', change, transformed context germs).
    """
    oa, ob = nu_series(gamma.alpha), nu_series(gamma.beta)
    try:
        if oa.gt(ob):
            change = CoordinateChange("identity")
            return gamma, change, list(context)
    except PrecisionError:
        raise PrecisionError("cannot resolve curve component orders within precision")
    try:
        swapped_gt = ob.gt(oa)
    except PrecisionError:
        raise PrecisionError("cannot resolve curve component orders within precision")
    if swapped_gt:
        change = CoordinateChange("swap")
        return change.apply_curve(gamma), change, [change.apply_germ(g) for g in context]
    # equal exact orders: shear with the unique cancelling coefficient
    r = oa.require_exact("component order")
    ca = gamma.alpha.coeff(int(r))
    cb = gamma.beta.coeff(int(r))
    change = CoordinateChange("shear", ca / cb)
    gamma2 = change.apply_curve(gamma)
    if not nu_series(gamma2.alpha).gt(nu_series(gamma2.beta)):
        raise PrecisionError("shear failed to raise the order of the first component")
    return gamma2, change, [change.apply_germ(g) for g in context]
