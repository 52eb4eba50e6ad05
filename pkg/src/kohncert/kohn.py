"""Orchestration of the effective multiplier algorithm and the classic mode.

The standard pipeline is the three-step construction: a first multiplier of
controlled vanishing order, per-branch descents to a multiplier of bounded
contact order along the zero curve of the first, and a final radical of the
pair ideal with an explicit root-order bound.  Domains containing an order-1
premultiplier take the determinant shortcut instead (repeated Jacobians
against the linear premultiplier reach a unit without any radical), which is
what keeps their certificates independent of the high-order parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly, jacobian_poly, normalize_sign
from .config import RunConfig, SeededCoefficients
from .errors import (
    GenericityError,
    InfiniteTypeError,
    InvariantViolationError,
    KohncertError,
    PrecisionError,
)
from .descent import descend_chain, jacobian_det
from .germs import (
    CurveGerm,
    ExtOrder,
    Germ,
    nu,
    nu_gamma,
    nu_gamma_set,
    nu_k_gamma,
    nu_set,
)
from .invariants import (
    GermSet,
    IdealPair,
    dangelo_type,
    generic_combination,
    power_in_ideal_bound,
)
from .kernels import squarefree_decompose, squarefree_part
from .membership import (
    local_basis,
    min_power_in_ideal,
    mora_normal_form,
    reduces_to_zero,
)
from .parse import render_poly
from .puiseux import branches


@dataclass(frozen=True)
class SpecialDomain:
    premultipliers: GermSet
    type_hint: int | None = None

    def __post_init__(self):
        for g in self.premultipliers:
            if g.poly.coeff(0, 0) != 0:
                raise ValueError("premultiplier %s does not vanish at the origin" % g.label)

    def low_order_warnings(self):
        out = []
        for g in self.premultipliers:
            o = nu(g)
            if o.is_exact and o.value < 2:
                out.append("premultiplier %s has order %s < 2" % (g.label, o))
        return out


@dataclass(frozen=True)
class BoundCheck:
    name: str
    bound: str
    realized: str
    passed: bool


@dataclass(frozen=True)
class ChainEntry:
    index: int
    label: str
    kind: str  # "jacobian" | "combination" | "radical" | "unit"
    poly: BiPoly
    provenance: str
    epsilon: Fraction


@dataclass(frozen=True)
class BranchLog:
    branch: str
    phi: str
    phi_order: str
    steps: tuple  # of (label, kind, jet order k, realized order)
    terminal: str
    terminal_order: str
    bound: str


@dataclass(frozen=True)
class Certificate:
    mode: str  # "standard" | "unit_det" | "unit"
    chain: tuple  # of ChainEntry
    l: int
    T: int
    m: int
    d: int
    t: Fraction | None
    a: int
    epsilon_lower: Fraction
    branch_logs: tuple
    bound_checks: tuple
    membership_checked: bool
    warnings: tuple
    seed: int
    truncation: int

    def failed_checks(self):
        return [c for c in self.bound_checks if not c.passed]


@dataclass(frozen=True)
class ClassicLevel:
    k: int
    jacobian_generators: tuple
    ideal_generators: tuple
    radical_kind: str  # "principal_squarefree" | "pure_powers" | "unit"
    root_order: int


@dataclass(frozen=True)
class ClassicState:
    levels: tuple
    terminated_at: int | None

    def max_root_order(self):
        return max((lvl.root_order for lvl in self.levels), default=1)


# -- step 1 -------------------------------------------------------------------


@dataclass(frozen=True)
class Step1Result:
    f1: Germ
    f: Germ
    phi: Germ
    gamma: CurveGerm
    branch_desc: str
    mu: Fraction
    k0: int
    k_star: int
    nu_phi: Fraction
    d_value: int
    checks: tuple
    provenance: str = ""


def step1(S: GermSet, T: int, config: RunConfig) -> Step1Result:
    """First multiplier with certified vanishing-order bound mu + nu_gamma(phi) - 1."""
    m = int(nu_set(list(S)).require_exact("nu(S)"))
    f = next(g for g in S if nu(g).is_exact and nu(g).value == m)
    V = branches(f, config.precision())
    # infinite-type scan: every branch must see some premultiplier at finite order
    for b in V:
        finite = [phi for phi in S if nu_gamma(phi, b.curve).is_exact]
        if not finite:
            raise InfiniteTypeError(
                "every premultiplier vanishes along a zero branch of %s" % f.label,
                witness=str(b.curve),
            )
    chosen = None
    for b in V:
        cands = []
        for i, phi in enumerate(S):
            if not (nu(phi).is_exact and nu(phi).value >= 2):
                continue
            o = nu_gamma(phi, b.curve)
            if o.is_exact:
                cands.append((o.value, i, phi))
        if cands:
            cands.sort(key=lambda c: (c[0], c[1]))
            chosen = (b, cands[0])
            break
    if chosen is None:
        raise KohncertError(
            "no premultiplier of order >= 2 has finite order along a zero branch"
        )
    b, (nu_phi, _, phi) = chosen
    gamma = b.curve
    checks = [
        BoundCheck("nu_gamma(phi) <= T", str(T), str(nu_phi), nu_phi <= T),
    ]
    # mu = min over qualifying k of (k-1) + nu^k_gamma(f); undecidable ks only
    # weaken the reported mu, never the certificate (the lemma is applied at k*)
    mu = None
    k_star = None
    k0 = None
    for k in range(1, m + 1):
        nk = nu_k_gamma(f, k, gamma)
        nk1 = nu_k_gamma(f, k - 1, gamma)
        try:
            qualifies = nk1.gt(nk.add_int(int(nu_phi) - 1))
        except PrecisionError:
            continue
        if qualifies and nk.is_exact:
            value = (k - 1) + nk.value
            if mu is None or value < mu:
                mu = value
                k_star = k
            k0 = k
    if mu is None:
        raise PrecisionError("no decidable qualifying jet level for the first multiplier")
    from .descent import controlled_jacobian

    ctl = controlled_jacobian(f, phi, k_star, gamma)
    if not ctl.applies:
        raise InvariantViolationError("step-1 control hypothesis vanished on re-check")
    f1 = Germ(normalize_sign(ctl.G.poly), "f1")
    d_value = int(nu(f1).require_exact("nu(f1)"))
    bound1 = mu + nu_phi - 1
    bound2 = m * (nu_phi - 1)
    bound3 = m * (T - 1)
    checks.extend(
        [
            BoundCheck("nu(f1) <= mu + nu_gamma(phi) - 1", str(bound1), str(d_value), d_value <= bound1),
            BoundCheck("mu + nu_gamma(phi) - 1 <= m(nu_gamma(phi)-1)", str(bound2), str(bound1), bound1 <= bound2),
            BoundCheck("m(nu_gamma(phi)-1) <= m(T-1)", str(bound3), str(bound2), bound2 <= bound3),
            BoundCheck("m(T-1) <= T(T-1)", str(T * (T - 1)), str(bound3), bound3 <= T * (T - 1)),
        ]
    )
    if not all(c.passed for c in checks):
        raise InvariantViolationError("step-1 bound chain failed: %s" % [c for c in checks if not c.passed])
    return Step1Result(
        f1,
        f,
        phi,
        gamma,
        str(b.curve),
        Fraction(mu),
        k0,
        k_star,
        Fraction(nu_phi),
        d_value,
        tuple(checks),
        "det(d %s, d %s), sign-normalized" % (f.label, phi.label),
    )


# -- step 2 -------------------------------------------------------------------


@dataclass(frozen=True)
class Step2Result:
    Ftilde: Germ
    d: int
    new_entries: tuple  # Germ entries to append to the chain (dets then combo)
    branch_logs: tuple
    used_combo: bool
    terminal_eps_sources: tuple  # labels of terminals feeding Ftilde


def step2(f1: Germ, S: GermSet, T: int, config: RunConfig) -> Step2Result:
    d = int(nu(f1).require_exact("nu(f1)"))
    V = branches(f1, config.precision())
    seeds = SeededCoefficients(config.seed, "step2")
    bound = d * (T - 1)
    logs = []
    terminals = []
    new_entries = []
    for b in V:
        phi = _branch_generic_phi(S, b.curve, T, seeds, config)
        state = descend_chain(f1, phi, b.curve, 0)
        terminal = state.current
        realized = nu_gamma(terminal, b.curve)
        if not realized.le(bound):
            raise InvariantViolationError(
                "descent terminal order %s exceeds d(T-1) = %d on %s" % (realized, bound, b)
            )
        steps = tuple(
            (s.germ.label, s.kind, s.jet_order, str(s.realized)) for s in state.history
        )
        logs.append(
            BranchLog(
                str(b.curve),
                phi.label,
                str(nu_gamma(phi, b.curve)),
                steps,
                terminal.label,
                str(realized),
                str(bound),
            )
        )
        for s in state.history[1:]:
            if s.kind == "jacobian":
                new_entries.append(s.germ)
        terminals.append((terminal, b))
    unique_terminals = []
    seen = set()
    for t, _ in terminals:
        if t.poly not in seen:
            seen.add(t.poly)
            unique_terminals.append(t)
    if len(unique_terminals) == 1:
        ftilde = unique_terminals[0].relabel("Ftilde")
        return Step2Result(ftilde, d, tuple(new_entries), tuple(logs), False, (unique_terminals[0].label,))
    for _ in range(config.max_generic_retries):
        combo, _ = generic_combination(unique_terminals, seeds, "Ftilde")
        ok = True
        for t, b in terminals:
            o = nu_gamma(combo, b.curve)
            try:
                if not o.le(bound):
                    ok = False
                    break
            except PrecisionError:
                ok = False
                break
        if ok and not combo.poly.is_zero:
            ftilde = Germ(combo.poly, "Ftilde")
            return Step2Result(
                ftilde,
                d,
                tuple(new_entries),
                tuple(logs),
                True,
                tuple(t.label for t in unique_terminals),
            )
    raise GenericityError("could not combine branch terminals within the retry budget")


def _branch_generic_phi(S, curve, T, seeds, config):
    target = nu_gamma_set(list(S), curve)
    if not target.is_exact:
        raise InfiniteTypeError(
            "all premultipliers vanish along a branch of f1", witness=str(curve)
        )
    if target.value > T:
        raise InvariantViolationError(
            "set order %s along a branch exceeds the type bound %d" % (target, T)
        )
    for _ in range(config.max_generic_retries):
        combo, _ = generic_combination(list(S), seeds, "phi")
        if combo.poly.is_zero:
            continue
        if not (nu(combo).is_exact and nu(combo).value >= 2):
            continue
        o = nu_gamma(combo, curve)
        if o.is_exact and o.value == target.value:
            return combo
    raise GenericityError("no generic combination realized the set order along a branch")


# -- step 3 -------------------------------------------------------------------


@dataclass(frozen=True)
class Step3Result:
    a: int
    d: int
    t: Fraction
    checks: tuple
    membership_checked: bool


def step3(F: Germ, Ftilde: Germ, T: int, config: RunConfig) -> Step3Result:
    pair = IdealPair(F, Ftilde)
    a, d, t = power_in_ideal_bound(pair, config)
    bound = T * T * (T - 1) ** 3
    checks = [
        BoundCheck("t <= d(T-1)", str(d * (T - 1)), str(t), t <= d * (T - 1)),
        BoundCheck("a <= T^2 (T-1)^3", str(bound), str(a), a <= bound),
    ]
    membership_checked = False
    if config.verify_membership:
        basis = local_basis([F.poly, Ftilde.poly], a + 4)
        za = BiPoly.monomial(a, 0)
        wa = BiPoly.monomial(0, a)
        ok_z = reduces_to_zero(za, basis)
        ok_w = reduces_to_zero(wa, basis)
        checks.append(BoundCheck("z^a, w^a in (F, Ftilde)", "membership", str(ok_z and ok_w), ok_z and ok_w))
        if not (ok_z and ok_w):
            raise InvariantViolationError("membership verification of z^a, w^a failed")
        membership_checked = True
    if not all(c.passed for c in checks):
        raise InvariantViolationError("step-3 bounds failed: %s" % [c for c in checks if not c.passed])
    return Step3Result(a, d, Fraction(t), tuple(checks), membership_checked)


# -- full pipeline ------------------------------------------------------------


def _resolve_type_bound(S: GermSet, hint, config):
    checks = []
    if hint is not None:
        # the hint only needs verifying as an upper bound along tested branches
        from .invariants import type_lower_bound

        lower, wit = type_lower_bound(S, config)
        if lower.is_infinite:
            raise InfiniteTypeError(
                "the premultiplier set has infinite type", witness=_infinite_witness(wit)
            )
        ok = lower.le(ExtOrder.exact(hint))
        checks.append(BoundCheck("type lower bound <= declared hint", str(hint), str(lower), ok))
        if not ok:
            raise InvariantViolationError(
                "declared type hint %s is below the realized lower bound %s" % (hint, lower)
            )
        return int(hint), None, checks
    report = dangelo_type(S, config=config)
    if report.lower.is_infinite:
        raise InfiniteTypeError(
            "the premultiplier set has infinite type",
            witness=_infinite_witness(report.witnesses),
        )
    if report.upper.is_infinite or not report.upper.is_exact:
        raise InfiniteTypeError("no finite certified type upper bound", witness=None)
    if report.upper.value.denominator != 1:
        return int(report.upper.value) + 1, report, checks
    return int(report.upper.value), report, checks


def _infinite_witness(witnesses):
    for label, val in witnesses:
        if val.is_infinite:
            return label
    return witnesses[-1][0] if witnesses else None


def run(domain: SpecialDomain, config: RunConfig | None = None) -> Certificate:
    config = config or RunConfig()
    S = domain.premultipliers
    warnings = tuple(domain.low_order_warnings())
    if len(S) < 2:
        raise InfiniteTypeError("a single premultiplier generates no Jacobian determinant")
    m = int(nu_set(list(S)).require_exact("nu(S)"))
    T, type_report, checks = _resolve_type_bound(S, domain.type_hint, config)
    checks = list(checks)
    try:
        s1 = step1(S, T, config)
        f1, d_value, f1_prov = s1.f1, s1.d_value, s1.provenance
        checks.extend(s1.checks)
    except KohncertError as e:
        if "order >= 2" not in str(e):
            raise
        f1, d_value, f1_prov, fb_checks = _fallback_first_multiplier(S, T)
        s1 = None
        checks.extend(fb_checks)
    eps = {}
    chain_germs = [f1]
    eps[f1.label] = Fraction(1, 4)
    order1 = [g for g in S if nu(g).is_exact and nu(g).value == 1]
    if f1.poly.total_degree() == 0:
        mode = "unit"
        entries, l, eps_final = _finalize_unit_chain([f1], eps)
        d_val, t_val, a_val = 0, None, 1
        branch_logs = ()
        membership_checked = False
    elif order1:
        mode = "unit_det"
        chain_germs, eps = _unit_det_shortcut(chain_germs, eps, order1, d_value)
        entries, l, eps_final = _finalize_unit_chain(chain_germs, eps)
        d_val, t_val, a_val = d_value, None, 1
        branch_logs = ()
        membership_checked = False
    else:
        mode = "standard"
        s2 = step2(f1, S, T, config)
        short_of = {f1.label: "f1"}
        kinds = {f1.label: "jacobian"}
        counter = 2
        for g in s2.new_entries:
            parent = _det_parent(g, chain_germs)
            eps[g.label] = eps[parent] / 2
            short_of[g.label] = "f%d" % counter
            kinds[g.label] = "jacobian"
            counter += 1
            chain_germs.append(g)
        if s2.used_combo:
            eps[s2.Ftilde.label] = min(eps[lbl] for lbl in s2.terminal_eps_sources)
            short_of[s2.Ftilde.label] = "Ftilde"
            kinds[s2.Ftilde.label] = "combination"
            chain_germs.append(s2.Ftilde)
        else:
            terminal = s2.terminal_eps_sources[0]
            eps[s2.Ftilde.label] = eps[terminal]
            short_of[terminal] = "Ftilde"
        s3 = step3(f1, s2.Ftilde, T, config)
        checks.extend(s3.checks)
        checks.append(
            BoundCheck("d <= m(T-1)", str(m * (T - 1)), str(s3.d), s3.d <= m * (T - 1))
        )
        radical_eps = min(eps[f1.label], eps[s2.Ftilde.label]) / s3.a
        entries = []
        for i, g in enumerate(chain_germs, 1):
            prov = f1_prov if g.label == f1.label else g.label
            entries.append(
                ChainEntry(i, short_of[g.label], kinds[g.label], g.poly, prov, eps[g.label])
            )
        n = len(entries)
        entries.append(ChainEntry(n + 1, "z", "radical", BiPoly.monomial(1, 0), "root of z^%d in (f1, Ftilde), order %d" % (s3.a, s3.a), radical_eps))
        entries.append(ChainEntry(n + 2, "w", "radical", BiPoly.monomial(0, 1), "root of w^%d in (f1, Ftilde), order %d" % (s3.a, s3.a), radical_eps))
        entries.append(ChainEntry(n + 3, "1", "unit", BiPoly.const(1), "det(d z, d w)", radical_eps / 2))
        l = len(entries)
        eps_final = radical_eps / 2
        d_val, t_val, a_val = s3.d, s3.t, s3.a
        branch_logs = s2.branch_logs
        membership_checked = s3.membership_checked
    formula_eps = Fraction(1, (2 ** (l - 1)) * a_val)
    epsilon_lower = min(formula_eps, eps_final)
    corollary_floor = Fraction(1, 2 ** (T * (T - 1) + 3) * (T * T * (T - 1) ** 3 or 1))
    checks.append(BoundCheck("l <= T(T-1)+4", str(T * (T - 1) + 4), str(l), l <= T * (T - 1) + 4))
    checks.append(
        BoundCheck(
            "epsilon >= 1 / (2^{T(T-1)+3} T^2 (T-1)^3)",
            str(corollary_floor),
            str(epsilon_lower),
            epsilon_lower >= corollary_floor,
        )
    )
    checks.append(BoundCheck("f_l == 1", "1", render_poly(entries[-1].poly), entries[-1].poly == BiPoly.const(1)))
    cert = Certificate(
        mode=mode,
        chain=tuple(entries),
        l=l,
        T=T,
        m=m,
        d=d_val,
        t=t_val,
        a=a_val,
        epsilon_lower=epsilon_lower,
        branch_logs=branch_logs,
        bound_checks=tuple(checks),
        membership_checked=membership_checked,
        warnings=warnings,
        seed=config.seed,
        truncation=config.truncation,
    )
    failed = cert.failed_checks()
    if failed:
        raise InvariantViolationError("certificate bound checks failed: %s" % failed)
    return cert


def _fallback_first_multiplier(S, T):
    """First multiplier when no order->=2 premultiplier pairs with the jet
    machinery (all premultipliers of order 1, say): any nonzero Jacobian
    determinant of a pair, minimizing the vanishing order."""
    members = list(S)
    best = None
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            det = normalize_sign(jacobian_poly(members[i].poly, members[j].poly))
            if det.is_zero:
                continue
            o = nu(det)
            if not o.is_exact:
                continue
            key = (o.value, i, j)
            if best is None or key < best[0]:
                best = (key, det, members[i].label, members[j].label)
    if best is None:
        raise InfiniteTypeError("no nonzero Jacobian determinant among the premultipliers")
    _, det, la, lb = best
    f1 = Germ(det, "f1")
    d_value = int(nu(f1).require_exact("nu(f1)"))
    checks = [
        BoundCheck("nu(f1) <= T(T-1)", str(max(T * (T - 1), 1)), str(d_value), d_value <= max(T * (T - 1), 1))
    ]
    return f1, d_value, "det(d %s, d %s), sign-normalized" % (la, lb), checks


def _det_parent(g, chain_germs):
    """Branch-chain parent of a descent det: the chain entry its label references."""
    for prev in reversed(chain_germs):
        if "d %s," % prev.label in g.label or "(d %s" % prev.label in g.label:
            return prev.label
    return chain_germs[0].label


def _unit_det_shortcut(chain_germs, eps, order1, d_value):
    """Iterate g -> det(dg, du) against an order-1 premultiplier until a unit."""
    g = chain_germs[-1]
    for _ in range(d_value + 2):
        progressed = False
        for u in order1:
            det = jacobian_det(g, u)
            if det.poly.is_zero:
                continue
            o_prev = nu(g).require_exact("nu in shortcut")
            o_new = nu(det)
            if not o_new.is_exact or o_new.value >= o_prev:
                continue
            det = Germ(normalize_sign(det.poly), det.label)
            eps[det.label] = eps[g.label] / 2
            chain_germs.append(det)
            g = det
            progressed = True
            break
        if g.poly.total_degree() == 0:
            return chain_germs, eps
        if not progressed:
            raise KohncertError("determinant shortcut stalled before reaching a unit")
    raise KohncertError("determinant shortcut exceeded its iteration budget")


def _finalize_unit_chain(chain_germs, eps):
    """Normalize the trailing unit to the constant 1 and build chain entries."""
    entries = []
    for i, g in enumerate(chain_germs, 1):
        poly = g.poly
        label = g.label
        kind = "jacobian"
        e = eps[g.label]
        if i == len(chain_germs):
            if poly.total_degree() != 0:
                raise InvariantViolationError("unit chain does not end in a unit")
            poly = BiPoly.const(1)
            label = "1"
            kind = "unit"
        entries.append(ChainEntry(i, label, kind, poly, g.label, e))
    return entries, len(entries), entries[-1].epsilon


# -- classic mode --------------------------------------------------------------


def classic_kohn(domain: SpecialDomain, max_levels: int = 8, config: RunConfig | None = None) -> ClassicState:
    config = config or RunConfig()
    S = [g.poly for g in domain.premultipliers]
    if len(S) < 2:
        raise InfiniteTypeError("a single premultiplier generates no Jacobian determinant")
    ideal_gens = []
    levels = []
    terminated = None
    for k in range(max_levels):
        pool = _dedup(S + ideal_gens)
        j_gens = []
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                det = normalize_sign(jacobian_poly(pool[i], pool[j]))
                if not det.is_zero:
                    j_gens.append(det)
        j_gens = _dedup(j_gens)
        if not j_gens:
            raise InfiniteTypeError("no nonzero Jacobian determinant at level %d" % k)
        j_reduced = _interreduce(j_gens)
        if any(g.coeff(0, 0) != 0 for g in j_reduced):
            levels.append(ClassicLevel(k, tuple(j_reduced), (BiPoly.const(1),), "unit", 1))
            terminated = k
            break
        radical_gens, kind, root = _restricted_radical(j_reduced, config)
        levels.append(ClassicLevel(k, tuple(j_reduced), tuple(radical_gens), kind, root))
        ideal_gens = _dedup(ideal_gens + radical_gens)
    return ClassicState(tuple(levels), terminated)


def _dedup(polys):
    out = []
    seen = set()
    for p in polys:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _interreduce(gens):
    """Fully interreduce and scale to unit leading coefficients (display form)."""
    work = sorted(_dedup(gens), key=lambda g: (g.lowest_degree(), len(g.terms), render_poly(g)))
    changed = True
    rounds = 0
    while changed and rounds < 32:
        changed = False
        rounds += 1
        for i in range(len(work)):
            others = work[:i] + work[i + 1 :]
            if not others:
                continue
            h = mora_normal_form(work[i], others)
            if h != work[i]:
                changed = True
                if h.is_zero:
                    work = others
                    break
                work[i] = h
        work.sort(key=lambda g: (g.lowest_degree(), len(g.terms), render_poly(g)))
    out = [_primitive_int_form(g) for g in work]
    return out if out else gens[:1]


def _primitive_int_form(p):
    """Scale to integer coefficients with content 1, leading sign positive."""
    from math import gcd, lcm

    if p.is_zero or any(not isinstance(c, Fraction) for _, c in p.terms):
        return normalize_sign(p)
    denom = 1
    for _, c in p.terms:
        denom = lcm(denom, c.denominator)
    num = 0
    for _, c in p.terms:
        num = gcd(num, abs(c.numerator * (denom // c.denominator)))
    return normalize_sign(p * Fraction(denom, num or 1))


def _restricted_radical(gens, config):
    """Radical within the restricted scope: principal -> squarefree part;
    pure powers of both variables -> (z, w) with the recorded root order."""
    if len(gens) == 1:
        g = gens[0]
        sf = normalize_sign(squarefree_part(g))
        root = max((e for _, e in squarefree_decompose(g)), default=1)
        return [sf], "principal_squarefree", root
    budget = max((g.total_degree() or 1) for g in gens) * 2 + 6
    basis = local_basis(gens, budget)
    p = min_power_in_ideal("z", basis)
    q = min_power_in_ideal("w", basis)
    if p is None or q is None:
        raise KohncertError(
            "radical outside the restricted scope; generators: %s"
            % ", ".join(render_poly(g) for g in gens)
        )
    return [BiPoly.monomial(1, 0), BiPoly.monomial(0, 1)], "pure_powers", max(p, q)


# -- mode comparison ------------------------------------------------------------


@dataclass(frozen=True)
class ModeRow:
    label: str
    parameter: int
    classic_root_order: int
    classic_levels: int
    effective_a: int
    effective_epsilon: Fraction
    effective_l: int


@dataclass(frozen=True)
class ModeComparison:
    rows: tuple

    def to_text(self):
        header = "%-18s %6s %14s %12s %12s %12s" % (
            "domain",
            "K",
            "classic root",
            "levels",
            "eff. a",
            "eff. eps",
        )
        lines = [header, "-" * len(header)]
        for r in self.rows:
            lines.append(
                "%-18s %6d %14d %12d %12d %12s"
                % (r.label, r.parameter, r.classic_root_order, r.classic_levels, r.effective_a, r.effective_epsilon)
            )
        return "\n".join(lines)


def compare_modes(entries, config: RunConfig | None = None) -> ModeComparison:
    """entries: iterable of (label, parameter K, SpecialDomain)."""
    config = config or RunConfig()
    rows = []
    for label, k, domain in entries:
        classic = classic_kohn(domain, config=config)
        cert = run(domain, config)
        rows.append(
            ModeRow(
                label,
                k,
                classic.max_root_order(),
                len(classic.levels),
                cert.a,
                cert.epsilon_lower,
                cert.l,
            )
        )
    return ModeComparison(tuple(rows))


# -- canonical example domains ---------------------------------------------------


def heier_domain(K: int) -> SpecialDomain:
    from .parse import parse_poly

    f1 = Germ(parse_poly("z^3 + z*w^%d" % K), "F1")
    f2 = Germ(parse_poly("w"), "F2")
    return SpecialDomain(GermSet.of([f1, f2], "Heier"))


def catlin_dangelo_domain(M: int, N: int, K: int, perturbation=None, type_hint=None) -> SpecialDomain:
    from .parse import parse_poly

    p1 = "z^%d" % M
    p2 = "w^%d + z^%d*w" % (N, K)
    if perturbation:
        p1 += " + " + perturbation[0]
        p2 += " + " + perturbation[1]
    f1 = Germ(parse_poly(p1), "F1")
    f2 = Germ(parse_poly(p2), "F2")
    hint = type_hint if type_hint is not None else max(M, N)
    return SpecialDomain(GermSet.of([f1, f2], "CatlinDAngelo"), type_hint=hint)
