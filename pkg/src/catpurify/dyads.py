"""Exact simulation of cat-state protocols on coherent dyads.

Every state that the protocols here can produce is a finite sum

    rho = sum_i c_i |k_i1 ... k_im><b_i1 ... b_im|

of multimode coherent dyads. Linear loss, beam splitters, quadrature
projections and on/off photodetection each map such sums to such sums,
so the whole pipeline can be evaluated in closed form term by term with
no Fock-space truncation. This module is the brute-force oracle used to
cross-check the formulas in :mod:`catpurify.analytic`; it shares no
derivation with them beyond the coherent-state overlap.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateStateError, StateFamilyError, ZeroDensityError
from .states import TWO_PI, CssParams, MixedCss

__all__ = [
    "DyadTerm",
    "DyadState",
    "overlap",
    "make_coherent",
    "make_incoherent",
    "make_css",
    "make_mixed",
    "tensor",
    "attach_vacuum",
    "trace",
    "normalize",
    "merge_terms",
    "loss_on_dyad",
    "bs_on_product",
    "homodyne_amplitude",
    "hermite_quadrature_amplitude",
    "project_quadrature",
    "project_click",
    "extract_fraction",
    "purity",
    "gram_norm",
    "expect_coherent",
    "hermiticity_defect",
    "amplifier_sim",
]

PRUNE_TOL = 1e-15
_QUARTIC_ROOT_PI = math.pi ** (-0.25)
_MIN_DENSITY = 1e-300


@dataclass(frozen=True)
class DyadTerm:
    """One weighted dyad c * |ket><bra| over a fixed number of modes."""

    coeff: complex
    ket: tuple[complex, ...]
    bra: tuple[complex, ...]

    def __post_init__(self) -> None:
        ket = tuple(complex(a) for a in self.ket)
        bra = tuple(complex(a) for a in self.bra)
        if len(ket) != len(bra) or len(ket) < 1:
            raise ValueError("ket and bra must list the same nonzero number of modes")
        c = complex(self.coeff)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError("dyad coefficient must be finite")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "ket", ket)
        object.__setattr__(self, "bra", bra)


@dataclass(frozen=True)
class DyadState:
    """A finite complex combination of coherent dyads on `mode_count` modes."""

    terms: tuple[DyadTerm, ...]
    mode_count: int

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        for t in terms:
            if len(t.ket) != self.mode_count:
                raise ValueError("term mode count does not match the state")
        object.__setattr__(self, "terms", terms)


def overlap(beta: complex, gamma: complex) -> complex:
    """Coherent overlap <beta|gamma> = exp(-|beta|^2/2 - |gamma|^2/2 + conj(beta)*gamma)."""
    beta = complex(beta)
    gamma = complex(gamma)
    return cmath.exp(
        -0.5 * (beta.real**2 + beta.imag**2)
        - 0.5 * (gamma.real**2 + gamma.imag**2)
        + beta.conjugate() * gamma
    )


def _multi_overlap(left: Sequence[complex], right: Sequence[complex]) -> complex:
    """<left|right> across all modes."""
    out = 1.0 + 0.0j
    for a, b in zip(left, right):
        out *= overlap(a, b)
    return out


def merge_terms(state: DyadState, tol: float = PRUNE_TOL) -> DyadState:
    """Combine terms with identical dyads and drop those below `tol`."""
    acc: dict[tuple[tuple[complex, ...], tuple[complex, ...]], complex] = {}
    for t in state.terms:
        key = (t.ket, t.bra)
        acc[key] = acc.get(key, 0.0 + 0.0j) + t.coeff
    kept = tuple(
        DyadTerm(c, ket, bra) for (ket, bra), c in acc.items() if abs(c) >= tol
    )
    return DyadState(kept, state.mode_count)


def trace(state: DyadState) -> complex:
    """Trace; the trace of c|k><b| is c * prod_j <b_j|k_j>."""
    return sum(
        (t.coeff * _multi_overlap(t.bra, t.ket) for t in state.terms), 0.0 + 0.0j
    )


def normalize(state: DyadState) -> DyadState:
    """Rescale to unit trace. Rejects states of (near-)zero weight, which
    arise when conditioning on an impossible measurement record."""
    tr = trace(state).real
    if tr < _MIN_DENSITY:
        raise ZeroDensityError("cannot normalize a state of vanishing trace")
    scaled = DyadState(
        tuple(DyadTerm(t.coeff / tr, t.ket, t.bra) for t in state.terms),
        state.mode_count,
    )
    return merge_terms(scaled)


def make_coherent(*amplitudes: complex) -> DyadState:
    """Density operator of a product coherent state, one amplitude per mode."""
    if not amplitudes:
        raise ValueError("at least one mode amplitude is required")
    amps = tuple(complex(a) for a in amplitudes)
    return DyadState((DyadTerm(1.0, amps, amps),), len(amps))


def make_incoherent(alpha: float) -> DyadState:
    """The fully dephased pair: equal mixture of |alpha> and |-alpha>."""
    a = complex(alpha)
    state = DyadState(
        (DyadTerm(0.5, (a,), (a,)), DyadTerm(0.5, (-a,), (-a,))), 1
    )
    return merge_terms(state)


def make_css(params: CssParams) -> DyadState:
    """Normalized density of the superposition |alpha> + e^{i phi}|-alpha>."""
    if params.is_degenerate:
        raise DegenerateStateError("the (alpha=0, phi=pi) superposition has zero norm")
    a = complex(params.alpha)
    norm = 2.0 * (1.0 + math.cos(params.phi) * math.exp(-2.0 * params.alpha**2))
    phase = cmath.exp(1j * params.phi)
    inv = 1.0 / norm
    terms = (
        DyadTerm(inv, (a,), (a,)),
        DyadTerm(inv * phase.conjugate(), (a,), (-a,)),
        DyadTerm(inv * phase, (-a,), (a,)),
        DyadTerm(inv, (-a,), (-a,)),
    )
    return merge_terms(DyadState(terms, 1))


def make_mixed(state: MixedCss) -> DyadState:
    """Dyad form of p * rho_css + (1 - p) * rho_0."""
    if state.p == 0.0:
        return make_incoherent(state.params.alpha)
    parts = [
        DyadTerm(state.p * t.coeff, t.ket, t.bra) for t in make_css(state.params).terms
    ]
    if state.p < 1.0:
        parts.extend(
            DyadTerm((1.0 - state.p) * t.coeff, t.ket, t.bra)
            for t in make_incoherent(state.params.alpha).terms
        )
    return merge_terms(DyadState(tuple(parts), 1))


def tensor(left: DyadState, right: DyadState) -> DyadState:
    terms = tuple(
        DyadTerm(a.coeff * b.coeff, a.ket + b.ket, a.bra + b.bra)
        for a in left.terms
        for b in right.terms
    )
    return DyadState(terms, left.mode_count + right.mode_count)


def attach_vacuum(state: DyadState) -> DyadState:
    """Append one vacuum mode."""
    return tensor(state, make_coherent(0.0))


def _check_mode(state: DyadState, mode: int) -> None:
    if not 0 <= mode < state.mode_count:
        raise ValueError(f"mode index {mode} out of range for {state.mode_count} modes")


def loss_on_dyad(state: DyadState, mode: int, eta: float) -> DyadState:
    """Linear loss of transmittance eta on one mode.

    On a single dyad |a1><a2| the environment trace leaves the amplitudes
    scaled by sqrt(eta) and multiplies the coefficient by
    exp[-(1-eta)/2 * (|a1|^2 + |a2|^2 - 2 a1 conj(a2))], which is 1 on the
    diagonal, so the channel is trace preserving.
    """
    _check_mode(state, mode)
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"loss transmittance must lie in (0, 1], got {eta!r}")
    if eta == 1.0:
        return state
    root = math.sqrt(eta)
    lost = 1.0 - eta
    out = []
    for t in state.terms:
        a1 = t.ket[mode]
        a2 = t.bra[mode]
        factor = cmath.exp(
            -0.5
            * lost
            * (abs(a1) ** 2 + abs(a2) ** 2 - 2.0 * a1 * a2.conjugate())
        )
        ket = t.ket[:mode] + (a1 * root,) + t.ket[mode + 1 :]
        bra = t.bra[:mode] + (a2 * root,) + t.bra[mode + 1 :]
        out.append(DyadTerm(t.coeff * factor, ket, bra))
    return DyadState(tuple(out), state.mode_count)


def bs_on_product(state: DyadState, modes: tuple[int, int], T: float) -> DyadState:
    """Beam splitter of transmittance T across two modes.

    Coherent amplitudes mix as (a, b) -> (sqrt(T) a - sqrt(R) b,
    sqrt(R) a + sqrt(T) b) with R = 1 - T, so |alpha>|0> goes to
    |sqrt(T) alpha>|sqrt(R) alpha> and coefficients are unchanged.
    """
    ma, mb = modes
    _check_mode(state, ma)
    _check_mode(state, mb)
    if ma == mb:
        raise ValueError("beam splitter needs two distinct modes")
    if not 0.0 <= T <= 1.0:
        raise ValueError(f"transmittance must lie in [0, 1], got {T!r}")
    ct = math.sqrt(T)
    cr = math.sqrt(1.0 - T)
    out = []
    for t in state.terms:
        ket = list(t.ket)
        bra = list(t.bra)
        for vec in (ket, bra):
            a, b = vec[ma], vec[mb]
            vec[ma] = ct * a - cr * b
            vec[mb] = cr * a + ct * b
        out.append(DyadTerm(t.coeff, tuple(ket), tuple(bra)))
    return DyadState(tuple(out), state.mode_count)


def homodyne_amplitude(beta: complex, x: float, lam: float) -> complex:
    """Amplitude <x_lam|beta> of finding quadrature value x at local
    oscillator phase lam on a coherent state.

    Convention: x_lam = (a e^{-i lam} + a^dagger e^{i lam}) / sqrt(2), so

        <x_lam|beta> = pi^{-1/4} exp(-x^2/2 + sqrt(2) e^{-i lam} x beta
                                     - e^{-2 i lam} beta^2 / 2 - |beta|^2 / 2).

    For real beta this satisfies <x_{pi/2}|-beta> =
    e^{i 2 sqrt(2) x beta} <x_{pi/2}|beta> identically.
    """
    beta = complex(beta)
    rot = cmath.exp(-1j * lam)
    return _QUARTIC_ROOT_PI * cmath.exp(
        -0.5 * x * x
        + math.sqrt(2.0) * rot * x * beta
        - 0.5 * rot * rot * beta * beta
        - 0.5 * (beta.real**2 + beta.imag**2)
    )


def hermite_quadrature_amplitude(
    beta: complex, x: float, lam: float, terms: int = 60
) -> complex:
    """Validation-only evaluation of <x_lam|beta> as a truncated Fock sum.

    Sums e^{-|beta|^2/2} beta^n / sqrt(n!) * e^{-i n lam} h_n(x) over the
    first `terms` number states, with h_n the normalized Hermite functions.
    Converges to homodyne_amplitude for moderate |beta| and |x|; it exists
    purely so tests can check the closed form against an independent
    expansion, and nothing in the package calls it.
    """
    beta = complex(beta)
    h_prev = _QUARTIC_ROOT_PI * math.exp(-0.5 * x * x)
    coef = cmath.exp(-0.5 * (beta.real**2 + beta.imag**2))
    rot = cmath.exp(-1j * lam)
    total = coef * h_prev
    h_curr = math.sqrt(2.0) * x * h_prev
    for n in range(1, terms):
        coef = coef * beta * rot / math.sqrt(n)
        total += coef * h_curr
        h_next = x * math.sqrt(2.0 / (n + 1)) * h_curr - math.sqrt(n / (n + 1.0)) * h_prev
        h_prev, h_curr = h_curr, h_next
    return total


def project_quadrature(
    state: DyadState, mode: int, x: float, lam: float
) -> tuple[DyadState, float]:
    """Condition on a homodyne outcome x (local-oscillator phase lam) on one mode.

    The measured mode collapses to scalar amplitudes on ket and bra sides;
    the function returns the remaining modes renormalized to unit trace,
    together with the outcome density (trace of the unnormalized result).
    """
    _check_mode(state, mode)
    if state.mode_count < 2:
        raise ValueError("projection would leave no modes; keep at least one")
    out = []
    for t in state.terms:
        amp_k = homodyne_amplitude(t.ket[mode], x, lam)
        amp_b = homodyne_amplitude(t.bra[mode], x, lam)
        coeff = t.coeff * amp_k * amp_b.conjugate()
        ket = t.ket[:mode] + t.ket[mode + 1 :]
        bra = t.bra[:mode] + t.bra[mode + 1 :]
        out.append(DyadTerm(coeff, ket, bra))
    reduced = DyadState(tuple(out), state.mode_count - 1)
    density = trace(reduced).real
    if density < _MIN_DENSITY:
        raise ZeroDensityError(f"homodyne density vanishes at x={x!r}")
    return normalize(reduced), density


def project_click(state: DyadState, mode: int) -> tuple[DyadState, float]:
    """Apply the on/off POVM element 1 - |0><0| on a mode and trace it out.

    Per dyad, tr_mode[(1 - |0><0|) |k><b|] = <b|k> - <b|0><0|k>, so the
    result stays a finite dyad combination. Returns the unnormalized
    conditional state (its trace is the click weight relative to the
    input) and the click probability. Probability 0 is a valid return;
    normalizing the conditional state then raises.
    """
    _check_mode(state, mode)
    if state.mode_count < 2:
        raise ValueError("projection would leave no modes; keep at least one")
    out = []
    for t in state.terms:
        kept_ket = t.ket[:mode] + t.ket[mode + 1 :]
        kept_bra = t.bra[:mode] + t.bra[mode + 1 :]
        full = t.coeff * overlap(t.bra[mode], t.ket[mode])
        thru_vacuum = t.coeff * overlap(t.bra[mode], 0.0) * overlap(0.0, t.ket[mode])
        out.append(DyadTerm(full - thru_vacuum, kept_ket, kept_bra))
    reduced = merge_terms(DyadState(tuple(out), state.mode_count - 1))
    probability = trace(reduced).real
    return reduced, max(probability, 0.0)


def gram_norm(state: DyadState) -> float:
    """Hilbert-Schmidt norm sqrt(tr[X^dagger X]) evaluated through coherent
    Gram overlaps, valid for arbitrary (non-Hermitian) dyad combinations."""
    total = 0.0 + 0.0j
    for a in state.terms:
        for b in state.terms:
            total += (
                a.coeff.conjugate()
                * b.coeff
                * _multi_overlap(a.ket, b.ket)
                * _multi_overlap(b.bra, a.bra)
            )
    return math.sqrt(max(total.real, 0.0))


def expect_coherent(state: DyadState, gammas: Sequence[complex]) -> float:
    """Diagonal expectation <gamma_1 ... gamma_m| rho |gamma_1 ... gamma_m>."""
    if len(gammas) != state.mode_count:
        raise ValueError("one probe amplitude per mode is required")
    total = 0.0 + 0.0j
    for t in state.terms:
        total += t.coeff * _multi_overlap(gammas, t.ket) * _multi_overlap(t.bra, gammas)
    return total.real


def hermiticity_defect(state: DyadState) -> float:
    """Largest coefficient mismatch between each dyad and its conjugate."""
    acc: dict[tuple[tuple[complex, ...], tuple[complex, ...]], complex] = {}
    for t in state.terms:
        key = (t.ket, t.bra)
        acc[key] = acc.get(key, 0.0 + 0.0j) + t.coeff
    defect = 0.0
    for (ket, bra), c in acc.items():
        mirror = acc.get((bra, ket), 0.0 + 0.0j)
        defect = max(defect, abs(c - mirror.conjugate()))
    return defect


def purity(state: DyadState) -> float:
    """Tr[rho^2] through the pairwise Gram overlaps of the dyad terms."""
    tr = trace(state).real
    if abs(tr - 1.0) > 1e-8:
        raise StateFamilyError(f"purity expects a unit-trace state, trace was {tr!r}")
    total = 0.0 + 0.0j
    for a in state.terms:
        for b in state.terms:
            total += (
                a.coeff
                * b.coeff
                * _multi_overlap(a.bra, b.ket)
                * _multi_overlap(b.bra, a.ket)
            )
    return total.real


def _css_bra_amplitude(params: CssParams, against: complex) -> complex:
    """<psi(params)|against> for the normalized superposition."""
    norm = 2.0 * (1.0 + math.cos(params.phi) * math.exp(-2.0 * params.alpha**2))
    a = complex(params.alpha)
    phase = cmath.exp(-1j * params.phi)
    return (overlap(a, against) + phase * overlap(-a, against)) / math.sqrt(norm)


def extract_fraction(state: DyadState, params: CssParams) -> float:
    """Recover p from rho = p * rho_css(params) + (1 - p) * rho_0(alpha).

    Inverts the decomposition through the fidelity F = <psi|rho|psi>:
    with F0 the (closed-form) fidelity of rho_0 against the superposition,
    p = (F - F0)/(1 - F0). A residual check in the dyad Gram norm confirms
    the input actually lies in the two-component family; failure signals a
    physics bug upstream rather than a recoverable condition.
    """
    if state.mode_count != 1:
        raise ValueError("fraction extraction expects a single-mode state")
    if params.is_degenerate:
        raise DegenerateStateError("cannot extract against the zero-norm superposition")
    if params.alpha == 0.0:
        raise StateFamilyError(
            "the two-component family collapses at alpha=0; the fraction is undefined"
        )
    g = math.exp(-2.0 * params.alpha**2)
    cos_phi = math.cos(params.phi)
    f0 = (1.0 + 2.0 * g * cos_phi + g * g) / (2.0 * (1.0 + g * cos_phi))
    fid = 0.0 + 0.0j
    for t in state.terms:
        fid += (
            t.coeff
            * _css_bra_amplitude(params, t.ket[0])
            * _css_bra_amplitude(params, t.bra[0]).conjugate()
        )
    p = (fid.real - f0) / (1.0 - f0)

    residual_terms = list(state.terms)
    residual_terms.extend(
        DyadTerm(-p * t.coeff, t.ket, t.bra) for t in make_css(params).terms
    )
    residual_terms.extend(
        DyadTerm(-(1.0 - p) * t.coeff, t.ket, t.bra)
        for t in make_incoherent(params.alpha).terms
    )
    residual = gram_norm(merge_terms(DyadState(tuple(residual_terms), 1), tol=0.0))
    if residual > 1e-9:
        raise StateFamilyError(
            f"state outside model family: residual {residual:.3e} exceeds 1e-9"
        )
    return min(max(p, 0.0), 1.0)


def amplifier_sim(state_fraction: float, params: CssParams) -> float:
    """Simulate the two-copy linear amplifier on dyads and return the
    output CSS fraction.

    Two copies of the input mixture interfere on a balanced beam splitter;
    the difference port is compared against a coherent ancilla of amplitude
    sqrt(2) alpha on a second balanced beam splitter, and both comparison
    ports must register a click. The surviving mode is then a mixture in
    the (sqrt(2) alpha, 2 phi) family, whose fraction is extracted exactly.
    """
    if not 0.0 <= state_fraction <= 1.0:
        raise ValueError(f"state fraction must lie in [0, 1], got {state_fraction!r}")
    if params.alpha <= 0.0:
        raise ValueError("amplification needs alpha > 0")
    copy = make_mixed(MixedCss(params, state_fraction))
    joint = tensor(copy, copy)
    joint = bs_on_product(joint, (0, 1), 0.5)  # mode 0 difference, mode 1 sum
    joint = tensor(joint, make_coherent(math.sqrt(2.0) * params.alpha))
    joint = bs_on_product(joint, (0, 2), 0.5)
    joint, _ = project_click(joint, 2)
    joint, _ = project_click(joint, 0)
    weight = trace(joint).real
    if weight < _MIN_DENSITY:
        raise ZeroDensityError("both-click coincidence has vanishing probability")
    conditioned = normalize(joint)
    out_params = CssParams(math.sqrt(2.0) * params.alpha, (2.0 * params.phi) % TWO_PI)
    return extract_fraction(conditioned, out_params)
