"""Jet-order control under Jacobian determinants and the descent iterations.

Every lemma hypothesis is checked, never assumed, and every asserted
conclusion is re-verified by direct recomputation; a mismatch raises
InvariantViolationError (exit code 7 in the CLI), so the engine doubles as
an empirical test harness for the underlying order identities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bipoly import jacobian_poly
from .errors import InvariantViolationError, KohncertError, PrecisionError
from .germs import (
    CurveGerm,
    ExtOrder,
    Germ,
    nu,
    nu_gamma,
    nu_k_gamma,
    nu_series,
    order_min,
)


def jacobian_det(f: Germ, phi: Germ) -> Germ:
    """det of the Jacobian of (f, phi), labeled with its provenance."""
    return Germ(jacobian_poly(f.poly, phi.poly), "det(d %s, d %s)" % (f.label, phi.label))


@dataclass(frozen=True)
class TransversalReport:
    holds: bool
    value: ExtOrder | None
    jet_order: ExtOrder
    prev_jet_order: ExtOrder


def transversal_min(F: Germ, k: int, gamma: CurveGerm) -> TransversalReport:
    """Check nu^{k-1}_gamma(F) > nu^k_gamma(F) + 1; if so the minimum jet order
    at level k is realized by the k-th z-derivative (gamma must be normalized:
    nu(alpha) > nu(beta) >= 1)."""
    if k < 1:
        raise ValueError("transversality needs k >= 1")
    if not nu_series(gamma.alpha).gt(nu_series(gamma.beta)):
        raise ValueError("curve is not normalized (needs nu(alpha) > nu(beta))")
    prev = nu_k_gamma(F, k - 1, gamma)
    cur = nu_k_gamma(F, k, gamma)
    holds = prev.gt(cur.add_int(1))
    if not holds:
        return TransversalReport(False, None, cur, prev)
    dzk = F.poly
    for _ in range(k):
        dzk = dzk.partial("z")
    transversal = nu_gamma(Germ(dzk, "dz^%d" % k), gamma)
    if cur.is_exact and transversal.is_exact:
        if cur.value != transversal.value:
            raise InvariantViolationError(
                "transversal minimum violated: nu^k=%s but nu(dz^k)=%s" % (cur, transversal)
            )
    return TransversalReport(True, transversal, cur, prev)


@dataclass(frozen=True)
class JacobianControl:
    applies: bool
    G: Germ | None
    asserted: ExtOrder | None
    recomputed: ExtOrder | None


def controlled_jacobian(F: Germ, phi: Germ, k: int, gamma: CurveGerm) -> JacobianControl:
    """When nu^{k-1}_gamma(F) > nu^k_gamma(F) + nu_gamma(phi) - 1, the Jacobian
    determinant G of (F, phi) satisfies nu^{k-1}_gamma(G) = nu^k_gamma(F) +
    nu_gamma(phi) - 1 exactly; the equality is recomputed and enforced."""
    if k < 1:
        raise ValueError("jacobian control needs k >= 1")
    if not nu(phi).ge(2):
        raise KohncertError("nu(phi) >= 2 is required (got %s)" % nu(phi))
    n_phi = nu_gamma(phi, gamma)
    prev = nu_k_gamma(F, k - 1, gamma)
    cur = nu_k_gamma(F, k, gamma)
    try:
        hypothesis = prev.gt(cur.add(n_phi).add_int(-1))
    except PrecisionError:
        raise
    if not hypothesis:
        G = jacobian_det(F, phi)
        recomputed = nu_k_gamma(G, k - 1, gamma)
        return JacobianControl(False, G, None, recomputed)
    cur_v = cur.require_exact("nu^k_gamma(F)")
    phi_v = n_phi.require_exact("nu_gamma(phi)")
    asserted = ExtOrder.exact(cur_v + phi_v - 1)
    G = jacobian_det(F, phi)
    recomputed = nu_k_gamma(G, k - 1, gamma)
    if not recomputed.is_exact or recomputed.value != asserted.value:
        raise InvariantViolationError(
            "jacobian control failed: asserted %s, recomputed %s (k=%d)"
            % (asserted, recomputed, k)
        )
    return JacobianControl(True, G, asserted, recomputed)


def vanishing_order_bound(F: Germ, phi: Germ, k: int, gamma: CurveGerm):
    """Corollary of the control lemma: nu(G) <= nu^k_gamma(F) + nu_gamma(phi) + k - 1."""
    ctl = controlled_jacobian(F, phi, k, gamma)
    if not ctl.applies:
        return None
    bound = ctl.asserted.add_int(k)
    if not nu(ctl.G).le(bound):
        raise InvariantViolationError("vanishing-order corollary violated")
    return ctl.G, bound


@dataclass(frozen=True)
class DescentStep:
    germ: Germ
    kind: str  # "kept" | "jacobian"
    jet_order: int
    realized: ExtOrder


@dataclass(frozen=True)
class DescentState:
    current: Germ
    history: tuple  # of DescentStep
    gamma: CurveGerm
    phi: Germ

    @property
    def jacobian_count(self):
        return sum(1 for s in self.history if s.kind == "jacobian")


def descend_one(F: Germ, phi: Germ, k: int, gamma: CurveGerm):
    """One minor step: keep F or take the Jacobian determinant, so that the
    (k-1)-jet order along gamma is at most nu^k_gamma(F) + nu_gamma(phi) - 1.
    Prefers keeping F (shorter chains)."""
    if not nu(phi).ge(2):
        raise KohncertError("nu(phi) >= 2 is required")
    n_phi = nu_gamma(phi, gamma)
    cur = nu_k_gamma(F, k, gamma)
    bound = cur.add(n_phi).add_int(-1)
    prev = nu_k_gamma(F, k - 1, gamma)
    try:
        keep = prev.le(bound)
    except PrecisionError:
        keep = False
    if keep:
        return F, prev, "kept"
    ctl = controlled_jacobian(F, phi, k, gamma)
    if not ctl.applies:
        raise InvariantViolationError(
            "neither branch of the descent dichotomy applies at k=%d" % k
        )
    return ctl.G, ctl.recomputed, "jacobian"


def descend_chain(f: Germ, phi: Germ, gamma: CurveGerm, target_k: int = 0) -> DescentState:
    """Iterate descend_one from k = nu(f) down to target_k.

    Guarantees nu^{target_k}_gamma(final) <= (nu(f) - target_k) * (nu_gamma(phi) - 1),
    with at most nu(f) - target_k Jacobian steps beyond f itself.
    """
    m = int(nu(f).require_exact("nu(f)"))
    if not (0 <= target_k <= m):
        raise ValueError("target jet order must lie in [0, nu(f)]")
    n_phi = nu_gamma(phi, gamma).require_exact("nu_gamma(phi)")
    current = f
    start = nu_k_gamma(f, m, gamma)
    history = [DescentStep(f, "kept", m, start)]
    for k in range(m, target_k, -1):
        current, realized, kind = descend_one(current, phi, k, gamma)
        history.append(DescentStep(current, kind, k - 1, realized))
    state = DescentState(current, tuple(history), gamma, phi)
    final = nu_k_gamma(current, target_k, gamma)
    bound = ExtOrder.exact((m - target_k) * (n_phi - 1))
    if not final.le(bound):
        raise InvariantViolationError(
            "descent bound violated: nu^%d = %s > %s" % (target_k, final, bound)
        )
    if state.jacobian_count > m - target_k:
        raise InvariantViolationError("descent chain longer than nu(f) - k + 1")
    return state


def set_descent(S0, Phi, d: int, branch_sets=(), cap: int = 256):
    """Level sets S_0 ... S_d with S_{j+1} = S_j U {det(df, dphi)}, plus per-level
    k-jet-type certificates along the supplied branch sets."""
    from .invariants import GermSet, k_jet_type_along

    levels = [GermSet.of(list(S0), "S0")]
    for j in range(d):
        members = list(levels[-1])
        new = list(members)
        seen = {g.poly for g in new}
        for f in list(members) + list(Phi):
            for phi in Phi:
                det = jacobian_det(f, phi)
                if det.poly.is_zero or det.poly in seen:
                    continue
                seen.add(det.poly)
                new.append(det)
                if len(new) > cap:
                    raise KohncertError(
                        "set descent exceeded the %d-germ cap; use descend_chain per branch"
                        % cap
                    )
        levels.append(GermSet.of(new, "S%d" % (j + 1)))
    certificates = []
    for V in branch_sets:
        for k in range(d):
            level = levels[d - k]
            certificates.append((k, level.label, k_jet_type_along(level, k, V)))
    return levels, certificates
