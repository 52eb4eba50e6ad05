"""Textual polynomial grammar: `3*z^2*w + w^7 - 1/2*z`, variables z and w only."""

from __future__ import annotations

from fractions import Fraction

from .bipoly import BiPoly
from .errors import ParseError


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^":
            tokens.append((ch, i))
            i += 1
            continue
        if ch in "zw":
            tokens.append((ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            if j < n and text[j] == "/":
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise ParseError("expected denominator at position %d" % (j + 1))
                tokens.append((Fraction(num, int(text[j + 1 : k])), i))
                i = k
            else:
                tokens.append((Fraction(num), i))
                i = j
            continue
        raise ParseError("unexpected character %r at position %d" % (ch, i))
    return tokens


def parse_poly(text, trunc=None):
    """Parse the grammar into a BiPoly. Raises ParseError on malformed input."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    terms = {}
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    while pos < len(tokens):
        sign = 1
        while peek() in ("+", "-"):
            if peek() == "-":
                sign = -sign
            pos += 1
        if peek() is None:
            raise ParseError("dangling sign at end of input")
        coeff = Fraction(sign)
        exps = {"z": 0, "w": 0}
        saw_factor = False
        expect_factor = True
        while True:
            tok = peek()
            if isinstance(tok, Fraction):
                if not expect_factor:
                    raise ParseError("missing operator before coefficient")
                coeff *= tok
                pos += 1
                saw_factor = True
                expect_factor = False
            elif tok in ("z", "w"):
                if not expect_factor:
                    raise ParseError("missing '*' between factors")
                var = tok
                pos += 1
                e = 1
                if peek() == "^":
                    pos += 1
                    if not isinstance(peek(), Fraction):
                        raise ParseError("expected integer exponent after '^'")
                    f = tokens[pos][0]
                    if f.denominator != 1 or f < 0:
                        raise ParseError("exponents must be nonnegative integers")
                    e = int(f)
                    pos += 1
                exps[var] += e
                saw_factor = True
                expect_factor = False
            elif tok == "*":
                if expect_factor:
                    raise ParseError("unexpected '*'")
                pos += 1
                expect_factor = True
            else:
                break
        if not saw_factor or expect_factor:
            raise ParseError("malformed term near position %d" % (tokens[pos - 1][1] if pos else 0))
        key = (exps["z"], exps["w"])
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return BiPoly.make(terms, trunc)


def _render_coeff(c):
    return str(c)


def _render_term(ab, c, lead):
    a, b = ab
    factors = []
    cc = c
    neg = False
    if isinstance(c, Fraction) and c < 0:
        neg = True
        cc = -c
    if not (a or b) or cc != 1 or not isinstance(cc, Fraction):
        if isinstance(cc, Fraction):
            factors.append(_render_coeff(cc))
        else:
            factors.append("(%s)" % cc)
    if a:
        factors.append("z" if a == 1 else "z^%d" % a)
    if b:
        factors.append("w" if b == 1 else "w^%d" % b)
    body = "*".join(factors)
    if lead:
        return ("-" + body) if neg else body
    return (" - " + body) if neg else (" + " + body)


def render_poly(p):
    """Canonical string form; parse(render(p)) == p for rational polynomials."""
    if p.is_zero:
        return "0"
    out = []
    for i, (ab, c) in enumerate(p.terms):
        out.append(_render_term(ab, c, i == 0))
    return "".join(out)


def render_series(s, var="t"):
    """Render a truncated series with an O(var^precision) tail marker."""
    parts = []
    for e, c in s.coeffs:
        mono = "1" if e == 0 else (var if e == 1 else "%s^%d" % (var, e))
        if isinstance(c, Fraction):
            if c == 1 and e > 0:
                body = mono
            elif c == -1 and e > 0:
                body = "-" + mono
            else:
                body = "%s*%s" % (c, mono) if e > 0 else str(c)
        else:
            body = "(%s)*%s" % (c, mono) if e > 0 else "(%s)" % c
        parts.append(body)
    if not parts:
        return "O(%s^%d)" % (var, s.precision)
    joined = parts[0]
    for p in parts[1:]:
        joined += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return "%s + O(%s^%d)" % (joined, var, s.precision)
