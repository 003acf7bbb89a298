"""Closed-form results for cat-state decoherence, purification and
amplification.

All functions here are pure algebra on the parameters of the mixture
p * rho_css(alpha, phi) + (1 - p) * rho_0(alpha): linear loss keeps the
mixture in that family, a tap-and-homodyne stage conditions the fraction
on the outcome, and the two-copy amplifier maps the family onto itself at
amplitude sqrt(2) alpha. Every formula is cross-validated against the
exact dyad simulation in :mod:`catpurify.dyads` by the test suite and by
``catpurify verify``.
"""

from __future__ import annotations

import math
import warnings

from scipy.integrate import quad

from .errors import DegenerateStateError, PhysicsError, ZeroDensityError
from .states import TWO_PI, ChannelSetting, CssParams, MixedCss, TapSetting

__all__ = [
    "normalization",
    "apply_loss",
    "loss_fraction",
    "effective_loss_fraction",
    "homodyne_density_css",
    "homodyne_density_mix",
    "theta_of_k",
    "detection_ratio",
    "purify",
    "purify_with_inefficiency",
    "success_region",
    "optimal_k",
    "window_acceptance",
    "amplify",
    "amplification_threshold",
    "concat_stages",
    "concatenate",
    "purity_mixed_css",
]

_SQRT_PI = math.sqrt(math.pi)


def normalization(params: CssParams) -> float:
    """Squared norm of |alpha> + e^{i phi}|-alpha>: 2(1 + cos(phi) e^{-2 alpha^2}).

    Returns 0 exactly for the degenerate pair (alpha=0, phi=pi); callers
    that need a normalized state must check for that themselves.
    """
    return 2.0 * (1.0 + math.cos(params.phi) * math.exp(-2.0 * params.alpha**2))


def _require_normalizable(params: CssParams) -> None:
    if params.is_degenerate:
        raise DegenerateStateError(
            "the (alpha=0, phi=pi) superposition has zero norm"
        )


def loss_fraction(eta: float, params: CssParams) -> float:
    """Fraction of the superposition that survives a loss channel of
    transmittance eta, for a pure cat input.

    Equals [1 + cos(phi) e^{-2 eta alpha^2}] e^{-2(1-eta) alpha^2}
    / [1 + cos(phi) e^{-2 alpha^2}]; the surviving amplitude is
    sqrt(eta) alpha with the phase unchanged.
    """
    _require_normalizable(params)
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"transmittance must lie in (0, 1], got {eta!r}")
    a2 = params.alpha**2
    cos_phi = math.cos(params.phi)
    kept = 1.0 + cos_phi * math.exp(-2.0 * eta * a2)
    original = 1.0 + cos_phi * math.exp(-2.0 * a2)
    return kept / original * math.exp(-2.0 * (1.0 - eta) * a2)


def apply_loss(state: MixedCss, ch: ChannelSetting) -> MixedCss:
    """Send the mixture through a lossy line.

    The dephased component rho_0 maps to rho_0(sqrt(eta) alpha), so the
    cat fraction composes multiplicatively with the pure-state fraction.
    """
    factor = loss_fraction(ch.eta, state.params)
    out_params = CssParams(math.sqrt(ch.eta) * state.params.alpha, state.params.phi)
    return MixedCss(out_params, state.p * factor)


def effective_loss_fraction(
    eta: float, params: CssParams, T: float, eta_H: float
) -> float:
    """Heuristic surviving fraction for a lossy line followed by a tap with
    an imperfect detector, obtained by replacing eta with
    eta * (T + eta_H * (1 - T)) in the pure-loss formula.

    This is a rough comparator only; the package's actual imperfect-detector
    model is `purify_with_inefficiency`, which treats the detector loss
    physically (attenuation on the tapped mode before an ideal projection).
    The two do not agree in general.
    """
    if not 0.0 < T <= 1.0:
        raise ValueError(f"transmittance must lie in (0, 1], got {T!r}")
    if not 0.0 < eta_H <= 1.0:
        raise ValueError(f"detector efficiency must lie in (0, 1], got {eta_H!r}")
    return loss_fraction(eta * (T + eta_H * (1.0 - T)), params)


def theta_of_k(k: float, alpha: float, R: float) -> float:
    """Phase shift theta = 2 sqrt(2 R) alpha k imprinted on the kept mode by
    a homodyne outcome k on the reflected arm. Reported unreduced; compare
    phases mod 2 pi."""
    if not 0.0 <= R <= 1.0:
        raise ValueError(f"reflectivity must lie in [0, 1], got {R!r}")
    return 2.0 * math.sqrt(2.0 * R) * alpha * k


def homodyne_density_css(k: float, params: CssParams, T: float) -> float:
    """Outcome density of the pi/2-quadrature on the tapped arm when the
    input is the pure superposition and the tap transmits T."""
    _require_normalizable(params)
    if not 0.0 < T <= 1.0:
        raise ValueError(f"transmittance must lie in (0, 1], got {T!r}")
    theta = theta_of_k(k, params.alpha, 1.0 - T)
    a2 = params.alpha**2
    num = 1.0 + math.cos(params.phi + theta) * math.exp(-2.0 * T * a2)
    den = 1.0 + math.cos(params.phi) * math.exp(-2.0 * a2)
    return max(math.exp(-k * k) / _SQRT_PI * num / den, 0.0)


def homodyne_density_mix(k: float) -> float:
    """Outcome density for the dephased component: a unit Gaussian
    e^{-k^2}/sqrt(pi), independent of alpha, phi and T."""
    return math.exp(-k * k) / _SQRT_PI


def detection_ratio(params: CssParams, T: float, theta: float) -> float:
    """Ratio P_0 / P_C of the dephased and superposition outcome densities
    at the outcome that imprints phase theta.

    Purification succeeds iff the ratio is below 1; over theta it is
    minimized at theta = -phi (mod 2 pi).
    """
    if not 0.0 < T <= 1.0:
        raise ValueError(f"transmittance must lie in (0, 1], got {T!r}")
    a2 = params.alpha**2
    num = 1.0 + math.cos(params.phi) * math.exp(-2.0 * a2)
    den = 1.0 + math.cos(params.phi + theta) * math.exp(-2.0 * T * a2)
    if den <= 0.0:
        raise ZeroDensityError(
            "event of zero density: the superposition never produces this outcome"
        )
    return num / den


def _warn_if_blind_tap(T: float) -> None:
    if T == 1.0:
        warnings.warn(
            "a tap with T=1 reflects nothing; the outcome carries no "
            "information and the fraction is returned unchanged",
            stacklevel=3,
        )


def purify(state: MixedCss, tap: TapSetting) -> tuple[MixedCss, float, float]:
    """Condition the mixture on homodyne outcome k behind a tap of
    transmittance T (ideal detector).

    Returns the output mixture together with the two point densities
    (superposition component, dephased component) at the outcome, so
    callers can report joint acceptance likelihoods. The output amplitude
    is sqrt(T) alpha and the phase picks up theta(k).
    """
    if tap.eta_H != 1.0:
        raise ValueError(
            "purify is the ideal-detector path; use purify_with_inefficiency "
            f"for eta_H={tap.eta_H!r}"
        )
    params = state.params
    _require_normalizable(params)
    _warn_if_blind_tap(tap.T)
    theta = theta_of_k(tap.k, params.alpha, tap.R)
    ratio = detection_ratio(params, tap.T, theta)
    p_out = state.p / (state.p + ratio * (1.0 - state.p))
    out = MixedCss(
        CssParams(math.sqrt(tap.T) * params.alpha, (params.phi + theta) % TWO_PI),
        p_out,
    )
    return out, homodyne_density_css(tap.k, params, tap.T), homodyne_density_mix(tap.k)


def purify_with_inefficiency(state: MixedCss, tap: TapSetting) -> MixedCss:
    """Condition on outcome k with a detector of efficiency eta_H on the
    tapped arm.

    The imperfection is modeled physically: the reflected mode passes a
    loss channel of transmittance eta_H before an ideal quadrature
    projection. The lost fraction carries which-path information, so the
    conditional state keeps exactly the form p' rho_css + (1 - p') rho_0
    at amplitude sqrt(T) alpha, with the cat coherence damped by
    e^{-2 (1 - eta_H) R alpha^2} and the imprinted phase rescaled to
    2 sqrt(2 eta_H R) alpha k.
    """
    if tap.eta_H == 1.0:
        return purify(state, tap)[0]
    params = state.params
    _require_normalizable(params)
    _warn_if_blind_tap(tap.T)
    a2 = params.alpha**2
    R = tap.R
    theta = 2.0 * math.sqrt(2.0 * tap.eta_H * R) * params.alpha * tap.k
    damp = math.exp(-2.0 * (1.0 - tap.eta_H) * R * a2)
    env = math.exp(-2.0 * tap.T * a2)
    cos_out = math.cos(params.phi + theta)
    norm_in = 1.0 + math.cos(params.phi) * math.exp(-2.0 * a2)
    # joint outcome density relative to the Gaussian e^{-k^2}/sqrt(pi)
    rel_css = (1.0 + damp * cos_out * env) / norm_in
    joint = state.p * rel_css + (1.0 - state.p)
    if joint <= 0.0:
        raise ZeroDensityError("event of zero density under the inefficient detector")
    cat_weight = state.p * damp * (1.0 + cos_out * env) / norm_in
    p_out = cat_weight / joint
    return MixedCss(
        CssParams(math.sqrt(tap.T) * params.alpha, (params.phi + theta) % TWO_PI),
        min(max(p_out, 0.0), 1.0),
    )


def success_region(params: CssParams, R: float) -> tuple[tuple[float, float], ...]:
    """Open intervals of theta in [0, 2 pi) where the detection ratio is
    below 1, i.e. where conditioning purifies.

    The condition cos(phi + theta) > cos(phi) e^{-2 R alpha^2} describes a
    single arc centered on theta = -phi; the arc is returned split at the
    wrap-around point when necessary, ordered by lower endpoint. An empty
    tuple means no outcome helps.
    """
    if not 0.0 <= R <= 1.0:
        raise ValueError(f"reflectivity must lie in [0, 1], got {R!r}")
    if params.alpha <= 0.0:
        raise DegenerateStateError(
            "alpha=0 leaves nothing to purify; the region degenerates"
        )
    bound = math.cos(params.phi) * math.exp(-2.0 * R * params.alpha**2)
    if bound >= 1.0:
        return ()
    if bound <= -1.0:
        return ((0.0, TWO_PI),)
    half_width = math.acos(bound)
    center = (-params.phi) % TWO_PI
    lo = center - half_width
    hi = center + half_width
    if lo < 0.0:
        pieces = ((0.0, hi), (lo + TWO_PI, TWO_PI))
    elif hi > TWO_PI:
        pieces = ((0.0, hi - TWO_PI), (lo, TWO_PI))
    else:
        return ((lo, hi),)
    return tuple(sorted(p for p in pieces if p[0] < p[1]))


def optimal_k(params: CssParams, R: float) -> float:
    """Smallest-|k| outcome whose imprinted phase cancels phi.

    Solves theta(k) = -phi (mod 2 pi) with the representative in
    (-pi, pi], which maximizes the Gaussian envelope e^{-k^2}; the sign
    tie at phi = pi resolves to +k.
    """
    if not 0.0 <= R <= 1.0:
        raise ValueError(f"reflectivity must lie in [0, 1], got {R!r}")
    if params.alpha <= 0.0 or R == 0.0:
        raise PhysicsError(
            "no outcome can imprint a phase when alpha=0 or R=0"
        )
    target = (-params.phi) % TWO_PI
    if target > math.pi:
        target -= TWO_PI
    return target / (2.0 * math.sqrt(2.0 * R) * params.alpha)


def window_acceptance(
    state: MixedCss, T: float, center: float, half_width: float
) -> float:
    """Probability that the homodyne outcome lands in
    [center - half_width, center + half_width].

    Reporting plumbing only: the purification results themselves condition
    on exact outcomes (densities), not windows. Integrates the joint
    outcome density p P_C + (1-p) P_0 by adaptive quadrature.
    """
    _require_normalizable(state.params)
    if half_width < 0.0:
        raise ValueError("window half-width must be >= 0")

    def joint(k: float) -> float:
        return state.p * homodyne_density_css(k, state.params, T) + (
            1.0 - state.p
        ) * homodyne_density_mix(k)

    value, _ = quad(joint, center - half_width, center + half_width)
    return min(max(value, 0.0), 1.0)


def amplify(state: MixedCss) -> MixedCss:
    """Two-copy linear amplification conditioned on both comparison
    detectors clicking; closed form for phi in {0, pi}.

    The output is in the (sqrt(2) alpha, phi=0) family with fraction

        p_out = A p^2 / [A p^2 + 2 p (1-p)/(1 +- g2) + (1-p)^2],
        A = (1 + g4) / (1 +- g2)^2,   g2 = e^{-2 alpha^2}, g4 = e^{-4 alpha^2},

    upper signs for phi=0, lower for phi=pi.
    """
    params = state.params
    if params.alpha <= 0.0:
        raise ValueError("amplification needs alpha > 0")
    if params.phi == 0.0:
        sign = 1.0
    elif params.phi == math.pi:
        sign = -1.0
    else:
        raise ValueError(
            "the closed form covers phi in {0, pi} only; simulate other "
            "phases with catpurify.dyads.amplifier_sim"
        )
    g2 = math.exp(-2.0 * params.alpha**2)
    g4 = math.exp(-4.0 * params.alpha**2)
    gate = 1.0 + sign * g2
    coeff = (1.0 + g4) / (gate * gate)
    p = state.p
    den = coeff * p * p + 2.0 * p * (1.0 - p) / gate + (1.0 - p) ** 2
    p_out = coeff * p * p / den if den > 0.0 else 0.0
    return MixedCss(CssParams(math.sqrt(2.0) * params.alpha, 0.0), p_out)


def amplification_threshold(alpha: float) -> float:
    """Input fraction above which the phi=pi amplifier improves the state:
    (e^{2 alpha^2} - 1)^2 / 2. Below 1 iff alpha^2 < ln(1 + sqrt(2))/2."""
    return 0.5 * math.expm1(2.0 * alpha * alpha) ** 2


def concat_stages(p_in: float, alpha: float) -> tuple[float, float]:
    """Fractions after each stage of the purify-then-amplify concatenation:
    (after conditioning two copies at T=1/2, k=0; after amplifying back)."""
    if not 0.0 <= p_in <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1], got {p_in!r}")
    if alpha <= 0.0:
        raise ValueError("concatenation needs alpha > 0")
    ratio = detection_ratio(CssParams(alpha, 0.0), 0.5, 0.0)
    p_mid = p_in / (p_in + ratio * (1.0 - p_in))
    boosted = amplify(MixedCss(CssParams(alpha / math.sqrt(2.0), 0.0), p_mid))
    return p_mid, boosted.p


def concatenate(p_in: float, alpha: float) -> float:
    """Purify two copies (T=1/2, optimal outcome k=0, phi=0), then amplify
    them back to amplitude alpha; returns the final fraction.

    The first stage leaves amplitude alpha/sqrt(2), which the amplifier
    restores. Over the whole admissible grid the net change is negative:
    amplification degrades faster than conditioning repairs.
    """
    return concat_stages(p_in, alpha)[1]


def purity_mixed_css(state: MixedCss) -> float:
    """Tr[rho^2] of the mixture, in closed form from coherent overlaps.

    With g = e^{-2 alpha^2}: the cross term uses the overlap of the
    superposition with the dephased pair, tr[rho_css rho_0] =
    (1 + 2 g cos(phi) + g^2) / (2 (1 + g cos(phi))), and
    tr[rho_0^2] = (1 + g^2)/2.
    """
    _require_normalizable(state.params)
    p = state.p
    g = math.exp(-2.0 * state.params.alpha**2)
    cos_phi = math.cos(state.params.phi)
    cross = (1.0 + 2.0 * g * cos_phi + g * g) / (2.0 * (1.0 + g * cos_phi))
    return p * p + 2.0 * p * (1.0 - p) * cross + (1.0 - p) ** 2 * (1.0 + g * g) / 2.0
