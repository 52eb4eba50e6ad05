"""Certificate and domain files: pretty JSON with pinned key order.

Exact rationals are serialized as "p/q" strings, never floats.  The same
input, seed and truncation produce byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError
from .germs import Germ
from .invariants import GermSet
from .kohn import Certificate, ClassicState, SpecialDomain
from .parse import parse_poly, render_poly


def frac_str(x) -> str:
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator) if f.denominator != 1 else str(f.numerator)


def parse_frac(s) -> Fraction:
    return Fraction(s)


def load_domain(path_or_dict, truncation=64):
    """DomainFile -> SpecialDomain; raises ParseError on malformed input."""
    if isinstance(path_or_dict, dict):
        data = path_or_dict
    else:
        try:
            with open(path_or_dict) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ParseError("cannot read domain file: %s" % e)
    if not isinstance(data, dict) or "premultipliers" not in data:
        raise ParseError("domain file must be an object with a 'premultipliers' list")
    polys = data["premultipliers"]
    if not isinstance(polys, list) or not polys:
        raise ParseError("'premultipliers' must be a nonempty list of polynomial strings")
    trunc = data.get("truncation", truncation)
    germs = [Germ(parse_poly(s, trunc), "F%d" % (i + 1)) for i, s in enumerate(polys)]
    hint = data.get("type_hint")
    if hint is not None and (not isinstance(hint, int) or hint < 1):
        raise ParseError("type_hint must be a positive integer")
    try:
        domain = SpecialDomain(GermSet.of(germs, data.get("label", "S")), type_hint=hint)
    except ValueError as e:
        raise ParseError(str(e))
    return domain, data.get("seed"), trunc


def certificate_payload(cert: Certificate) -> dict:
    chain = []
    for e in cert.chain:
        chain.append(
            {
                "index": e.index,
                "label": e.label,
                "kind": e.kind,
                "poly": render_poly(e.poly),
                "provenance": e.provenance,
                "epsilon": frac_str(e.epsilon),
            }
        )
    checks = [
        {"name": c.name, "bound": c.bound, "realized": c.realized, "pass": c.passed}
        for c in cert.bound_checks
    ]
    logs = []
    for bl in cert.branch_logs:
        logs.append(
            {
                "branch": bl.branch,
                "phi": bl.phi,
                "phi_order": bl.phi_order,
                "steps": [list(s) for s in bl.steps],
                "terminal": bl.terminal,
                "terminal_order": bl.terminal_order,
                "bound": bl.bound,
            }
        )
    return {
        "certificate-version": 1,
        "mode": cert.mode,
        "seed": cert.seed,
        "truncation": cert.truncation,
        "type-bound-T": cert.T,
        "min-order-m": cert.m,
        "chain-length-l": cert.l,
        "first-multiplier-order-d": cert.d,
        "contact-order-t": frac_str(cert.t) if cert.t is not None else None,
        "radical-root-order-a": cert.a,
        "epsilon-lower": frac_str(cert.epsilon_lower),
        "membership-checked": cert.membership_checked,
        "chain": chain,
        "bound-checks": checks,
        "per-branch": logs,
        "warnings": list(cert.warnings),
    }


def classic_payload(state: ClassicState) -> dict:
    levels = []
    for lvl in state.levels:
        levels.append(
            {
                "level": lvl.k,
                "jacobian-ideal": [render_poly(g) for g in lvl.jacobian_generators],
                "multiplier-ideal": [render_poly(g) for g in lvl.ideal_generators],
                "radical-kind": lvl.radical_kind,
                "root-order": lvl.root_order,
            }
        )
    return {
        "certificate-version": 1,
        "mode": "classic",
        "levels": levels,
        "terminated-at": state.terminated_at,
        "max-root-order": state.max_root_order(),
    }


def render_certificate(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=True) + "\n"


def parse_certificate(text: str) -> dict:
    return json.loads(text)
