"""Exact gcd/squarefree/resultant kernels for BiPoly.

Bivariate gcds run a primitive-part Euclidean remainder sequence on the
w-view (coefficients are univariate polynomials in z over the coefficient
field); contents are univariate gcds.  Everything is deterministic: gcds are
normalized monic in their leading (graded-max) term.
"""

from __future__ import annotations

from fractions import Fraction

from .bipoly import BiPoly
from .errors import KohncertError


# -- univariate layer (dense coefficient lists over the field) -------------


def uni_trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def uni_deg(cs):
    return len(cs) - 1


def uni_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return uni_trim(out)


def uni_divmod(num, den):
    num, den = uni_trim(num), uni_trim(den)
    if not den:
        raise ZeroDivisionError("univariate division by zero")
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    r = list(num)
    while uni_trim(r) and len(uni_trim(r)) >= len(den):
        r = uni_trim(r)
        shift = len(r) - len(den)
        factor = r[-1] / den[-1]
        q[shift] = factor
        for i, dc in enumerate(den):
            r[shift + i] = r[shift + i] - factor * dc
        r = r[:-1]
    return uni_trim(q), uni_trim(r)


def uni_gcd(a, b):
    """Monic gcd over the coefficient field."""
    a, b = uni_trim(a), uni_trim(b)
    while b:
        _, r = uni_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def uni_diff(a):
    return uni_trim([a[i] * i for i in range(1, len(a))])


def uni_squarefree(a):
    g = uni_gcd(a, uni_diff(a))
    if uni_deg(g) < 1:
        return uni_trim(a)
    q, r = uni_divmod(a, g)
    assert not r
    return q


def uni_eval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# -- bivariate helpers -------------------------------------------------------


def is_univariate_in(p, var):
    idx = 1 if var == "z" else 0
    return all(ab[idx] == 0 for ab, _ in p.terms)


def uni_from_bipoly(p, var):
    idx = 0 if var == "z" else 1
    if not is_univariate_in(p, var):
        raise ValueError("polynomial is not univariate in %s" % var)
    deg = p.degree_in(var)
    out = [Fraction(0)] * ((deg or 0) + 1)
    for ab, c in p.terms:
        out[ab[idx]] = c
    return uni_trim(out)


def bipoly_from_uni(cs, var, trunc=None):
    d = {}
    for e, c in enumerate(cs):
        if c == 0:
            continue
        d[(e, 0) if var == "z" else (0, e)] = c
    return BiPoly.make(d, trunc)


def divexact_bi(p, q):
    """Exact division in the polynomial ring; raises if q does not divide p."""
    if q.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero:
        return BiPoly.zero(p.trunc)
    # graded-max leading term of q
    (qa, qb), qc = max(q.terms, key=lambda t: (t[0][0] + t[0][1], t[0][0]))
    quotient = {}
    rem = p
    while not rem.is_zero:
        (pa, pb), pc = max(rem.terms, key=lambda t: (t[0][0] + t[0][1], t[0][0]))
        if pa < qa or pb < qb:
            raise KohncertError("inexact polynomial division")
        key = (pa - qa, pb - qb)
        coeff = pc / qc
        quotient[key] = quotient.get(key, Fraction(0)) + coeff
        rem = rem - BiPoly.monomial(key[0], key[1], coeff) * q
    return BiPoly.make(quotient, p.trunc)


def _content_primitive(p, var="w"):
    """p = content(z) * primitive_part, content monic univariate in the other var."""
    coeffs = p.as_poly_in(var)
    other = "z" if var == "w" else "w"
    cont = []
    for c in coeffs:
        if c.is_zero:
            continue
        cont = uni_gcd(cont, uni_from_bipoly(c, other))
    cont_poly = bipoly_from_uni(cont, other, p.trunc)
    if uni_deg(cont) < 1 and cont and cont[0] == 1:
        return cont_poly, p
    return cont_poly, divexact_bi(p, cont_poly)


def _prem(a_coeffs, b_coeffs):
    """Pseudo-remainder of w-views (lists of z-polys, ascending in w)."""
    a = list(a_coeffs)
    b = list(b_coeffs)
    db = len(b) - 1
    lc_b = b[-1]
    while a and len(a) - 1 >= db:
        lc_a = a[-1]
        shift = len(a) - 1 - db
        a = [c * lc_b for c in a]
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - lc_a * bc
        a = a[:-1]
        while a and a[-1].is_zero:
            a = a[:-1]
    return a


def gcd_bi(p, q):
    """gcd in the bivariate ring, deterministic normalization (monic leading term)."""
    if p.is_zero:
        return _normalize_gcd(q)
    if q.is_zero:
        return _normalize_gcd(p)
    if is_univariate_in(p, "z") and is_univariate_in(q, "z"):
        return bipoly_from_uni(uni_gcd(uni_from_bipoly(p, "z"), uni_from_bipoly(q, "z")), "z")
    if is_univariate_in(p, "w") and is_univariate_in(q, "w"):
        return bipoly_from_uni(uni_gcd(uni_from_bipoly(p, "w"), uni_from_bipoly(q, "w")), "w")
    cp, pp = _content_primitive(p)
    cq, pq = _content_primitive(q)
    cont = bipoly_from_uni(
        uni_gcd(uni_from_bipoly(cp, "z"), uni_from_bipoly(cq, "z")), "z"
    )
    if _coprime_by_evaluation(pp, pq):
        return _normalize_gcd(cont)
    a, b = pp.as_poly_in("w"), pq.as_poly_in("w")
    if len(a) < len(b):
        a, b = b, a
    while True:
        b = [c for c in b]
        while b and b[-1].is_zero:
            b = b[:-1]
        if not b:
            g = BiPoly.from_poly_in("w", a, None)
            break
        if len(b) == 1:
            # primitive parts share no w-free factor beyond a unit
            g = BiPoly.const(1)
            break
        r = _prem(a, b)
        # primitive part each step, or coefficients explode (classic PRS growth)
        r_poly = BiPoly.from_poly_in("w", r, None)
        if not r_poly.is_zero and r_poly.degree_in("w"):
            _, r_poly = _content_primitive(r_poly)
            r = r_poly.as_poly_in("w")
        elif not r_poly.is_zero:
            r = [_normalize_gcd(r_poly)]
        a, b = b, r
    if g.degree_in("w"):
        _, g = _content_primitive(g)
    return _normalize_gcd(cont * g)


def _coprime_by_evaluation(pp, pq):
    """Prove w-primitive polynomials coprime via one univariate specialization.

    deg_w gcd(pp, pq) <= deg gcd(pp(z0), pq(z0)) whenever neither leading
    w-coefficient vanishes at z0, and a w-degree-0 gcd of primitive parts is a
    unit.  Cheap certificate for the (common) squarefree/coprime case.
    """
    ca, cb = pp.as_poly_in("w"), pq.as_poly_in("w")
    if len(ca) < 2 or len(cb) < 2:
        return False
    lca, lcb = ca[-1], cb[-1]
    if any(not isinstance(c, Fraction) for p in (pp, pq) for _, c in p.terms):
        return False
    for z0 in (Fraction(1), Fraction(2), Fraction(3), Fraction(5), Fraction(7)):
        if uni_eval(uni_from_bipoly(lca, "z"), z0) == 0:
            continue
        if uni_eval(uni_from_bipoly(lcb, "z"), z0) == 0:
            continue
        ua = [uni_eval(uni_from_bipoly(c, "z"), z0) for c in ca]
        ub = [uni_eval(uni_from_bipoly(c, "z"), z0) for c in cb]
        return uni_deg(uni_gcd(ua, ub)) == 0
    return False


def _normalize_gcd(p):
    if p.is_zero:
        return p
    _, lc = max(
        ((ab, c) for ab, c in p.terms), key=lambda t: (t[0][0] + t[0][1], t[0][0])
    )
    return p * (Fraction(1) / lc if isinstance(lc, Fraction) else lc.inverse())


def squarefree_part(p):
    """Product of the distinct irreducible factors of p (up to a unit).

    Accepts bivariate or univariate input; zero input is an error.
    """
    if p.is_zero:
        raise KohncertError("squarefree part of the zero polynomial")
    if is_univariate_in(p, "z"):
        return bipoly_from_uni(uni_squarefree(uni_from_bipoly(p, "z")), "z", p.trunc)
    if is_univariate_in(p, "w"):
        return bipoly_from_uni(uni_squarefree(uni_from_bipoly(p, "w")), "w", p.trunc)
    cont, pp = _content_primitive(p)
    cont_sf = bipoly_from_uni(uni_squarefree(uni_from_bipoly(cont, "z")), "z")
    g = gcd_bi(pp, pp.partial("w"))
    pp_sf = divexact_bi(pp, g) if not g.is_zero and g.total_degree() else pp
    return cont_sf * pp_sf


def _yun_uni(cs, var):
    """Yun decomposition of a univariate poly; [(monic factor as BiPoly, mult)]."""
    out = []
    a = uni_trim(cs)
    if uni_deg(a) < 1:
        return out
    lc = a[-1]
    a = [c / lc for c in a]
    g = uni_gcd(a, uni_diff(a))
    c, _ = uni_divmod(a, g)
    d, _ = uni_divmod(uni_diff(a), g)
    d = uni_sub(d, uni_diff(c))
    i = 1
    while uni_deg(c) >= 1:
        p = uni_gcd(c, d)
        if uni_deg(p) >= 1:
            out.append((bipoly_from_uni(p, var), i))
        c, _ = uni_divmod(c, p)
        d, _ = uni_divmod(d, p)
        d = uni_sub(d, uni_diff(c))
        i += 1
    return out


def uni_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return uni_trim(out)


def squarefree_decompose(p):
    """p = unit * prod(f_i^{e_i}) with f_i squarefree pairwise coprime.

    Returns [(f_i, e_i)] sorted deterministically; monomial factors included.
    """
    if p.is_zero:
        raise KohncertError("decomposition of the zero polynomial")
    out = []
    # monomial factors first
    a_min = min(ab[0] for ab, _ in p.terms)
    b_min = min(ab[1] for ab, _ in p.terms)
    if a_min:
        out.append((BiPoly.monomial(1, 0), a_min))
    if b_min:
        out.append((BiPoly.monomial(0, 1), b_min))
    if a_min or b_min:
        p = divexact_bi(p, BiPoly.monomial(a_min, b_min))
    if is_univariate_in(p, "z"):
        out.extend(_yun_uni(uni_from_bipoly(p, "z"), "z"))
        return out
    if is_univariate_in(p, "w"):
        out.extend(_yun_uni(uni_from_bipoly(p, "w"), "w"))
        return out
    cont, pp = _content_primitive(p)
    out.extend(_yun_uni(uni_from_bipoly(cont, "z"), "z"))
    # Yun on the w-primitive part with bivariate gcds
    a = pp
    g = gcd_bi(a, a.partial("w"))
    c = divexact_bi(a, g)
    d = divexact_bi(a.partial("w"), g) - c.partial("w")
    i = 1
    while c.total_degree():
        f = gcd_bi(c, d)
        if f.total_degree():
            out.append((f, i))
        c = divexact_bi(c, f)
        d = divexact_bi(d, f) - c.partial("w")
        i += 1
    return out


# -- resultants --------------------------------------------------------------


def _det_bareiss(rows):
    """Fraction-free determinant over BiPoly entries (exact divisions)."""
    n = len(rows)
    if n == 0:
        return BiPoly.const(1)
    m = [list(r) for r in rows]
    sign = 1
    prev = BiPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if pivot_row is None:
                return BiPoly.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = divexact_bi(num, prev)
            m[i][k] = BiPoly.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(p, q, var):
    """Sylvester resultant in var; ascending coefficient rows, p's block on top."""
    if p.is_zero and q.is_zero:
        raise KohncertError("resultant of two zero polynomials")
    if p.is_zero or q.is_zero:
        return BiPoly.zero()
    pc = p.as_poly_in(var)
    qc = q.as_poly_in(var)
    n, m = len(pc) - 1, len(qc) - 1
    size = n + m
    if size == 0:
        return BiPoly.const(1)
    rows = []
    for i in range(m):
        row = [BiPoly.zero()] * size
        for j, c in enumerate(pc):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [BiPoly.zero()] * size
        for j, c in enumerate(qc):
            row[i + j] = c
        rows.append(row)
    return _det_bareiss(rows)


# -- rational factorization bridge (sympy) -----------------------------------


def factor_rational_uni(coeffs):
    """Irreducible monic factors over Q of a univariate polynomial.

    Returns [(ascending Fraction list, multiplicity)], deterministically sorted.
    Delegated to sympy; everything downstream of the factors is exact and ours.
    """
    import sympy as sp

    coeffs = uni_trim(coeffs)
    if uni_deg(coeffs) < 1:
        return []
    x = sp.Symbol("x")
    expr = sum(sp.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(coeffs))
    _, factors = sp.factor_list(sp.Poly(expr, x, domain="QQ"))
    out = []
    for fac, mult in factors:
        poly = sp.Poly(fac, x, domain="QQ")
        cs = [Fraction(str(c)) for c in reversed(poly.all_coeffs())]
        lc = cs[-1]
        cs = [c / lc for c in cs]
        out.append((cs, int(mult)))
    out.sort(key=lambda fm: (uni_deg(fm[0]), [str(c) for c in fm[0]]))
    return out
