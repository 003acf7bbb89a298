"""Tests for the exact coherent-dyad simulator.

Expected values here are either algebraically trivial (vacuum overlaps,
single-dyad loss factors) or frozen doubles produced by independent
evaluations: direct closed-form arithmetic, a truncated Hermite-function
expansion, and high-precision scans performed while the suite was built.
"""

import cmath
import math

import numpy as np
import pytest

from catpurify import CssParams, MixedCss, analytic
from catpurify import dyads as dy
from catpurify.errors import (
    DegenerateStateError,
    StateFamilyError,
    ZeroDensityError,
)

HALF_PI = math.pi / 2.0


def random_complex(rng, radius=2.0):
    return complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))


def random_mixture(rng, alpha_max=2.0):
    params = CssParams(rng.uniform(0.05, alpha_max), rng.uniform(0.0, 2.0 * math.pi))
    return dy.make_mixed(MixedCss(params, rng.uniform(0.0, 1.0)))


class TestOverlap:
    def test_equal_amplitudes_give_one(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            b = random_complex(rng)
            assert dy.overlap(b, b) == pytest.approx(1.0, abs=1e-15)

    def test_vacuum_overlap(self):
        assert dy.overlap(0.0, 1.5) == pytest.approx(math.exp(-1.125), abs=1e-15)

    def test_opposite_unit_amplitudes(self):
        assert dy.overlap(1.0, -1.0) == pytest.approx(math.exp(-2.0), abs=1e-16)

    def test_modulus_bounded_by_one(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            b, g = random_complex(rng), random_complex(rng)
            assert abs(dy.overlap(b, g)) <= 1.0 + 1e-14


class TestMakeStates:
    @pytest.mark.parametrize(
        "alpha,phi",
        [(1.0, 0.0), (1.0, math.pi), (0.3, 1.7), (2.0, math.pi / 3.0), (0.0, 0.0)],
    )
    def test_css_trace_one(self, alpha, phi):
        state = dy.make_css(CssParams(alpha, phi))
        assert abs(dy.trace(state) - 1.0) <= 1e-14

    def test_css_purity_one(self):
        state = dy.make_css(CssParams(1.0, math.pi / 3.0))
        assert dy.purity(state) == pytest.approx(1.0, abs=1e-12)

    def test_alpha_zero_merges_to_single_vacuum_dyad(self):
        state = dy.make_css(CssParams(0.0, math.pi / 3.0))
        assert len(state.terms) == 1
        term = state.terms[0]
        assert term.ket == (0.0 + 0.0j,) and term.bra == (0.0 + 0.0j,)
        assert term.coeff == pytest.approx(1.0, abs=1e-15)

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateStateError):
            dy.make_css(CssParams(0.0, math.pi))

    def test_mixture_trace_and_hermiticity(self):
        rng = np.random.default_rng(13)
        for _ in range(25):
            state = random_mixture(rng)
            assert abs(dy.trace(state) - 1.0) <= 1e-14
            assert dy.hermiticity_defect(state) <= 1e-14


class TestLoss:
    def test_eta_one_is_identity(self):
        state = dy.make_css(CssParams(1.2, 0.4))
        assert dy.loss_on_dyad(state, 0, 1.0) is state

    def test_single_offdiagonal_dyad(self):
        # exponent -0.5 * 0.5 * (1 + 1 + 2) = -1 for |1><-1| at eta = 1/2
        dyad = dy.DyadState((dy.DyadTerm(1.0, (1.0,), (-1.0,)),), 1)
        out = dy.loss_on_dyad(dyad, 0, 0.5)
        term = out.terms[0]
        assert term.coeff == pytest.approx(math.exp(-1.0), abs=1e-15)
        assert term.ket[0] == pytest.approx(math.sqrt(0.5), abs=1e-16)
        assert term.bra[0] == pytest.approx(-math.sqrt(0.5), abs=1e-16)

    def test_diagonal_dyad_keeps_coefficient(self):
        rng = np.random.default_rng(14)
        for _ in range(10):
            b = random_complex(rng)
            dyad = dy.DyadState((dy.DyadTerm(0.7, (b,), (b,)),), 1)
            out = dy.loss_on_dyad(dyad, 0, 0.3)
            assert out.terms[0].coeff == pytest.approx(0.7, abs=1e-15)

    def test_trace_and_hermiticity_preserved(self):
        rng = np.random.default_rng(15)
        for _ in range(25):
            state = random_mixture(rng)
            out = dy.loss_on_dyad(state, 0, rng.uniform(0.05, 1.0))
            assert abs(dy.trace(out) - 1.0) <= 1e-14
            assert dy.hermiticity_defect(out) <= 1e-14

    def test_semigroup_composition(self):
        # both paths keep the term order of the input, so compare term data;
        # amplitudes differ by sqrt rounding only
        rng = np.random.default_rng(16)
        for _ in range(20):
            state = random_mixture(rng)
            e1, e2 = rng.uniform(0.1, 1.0, size=2)
            twice = dy.loss_on_dyad(dy.loss_on_dyad(state, 0, e2), 0, e1)
            once = dy.loss_on_dyad(state, 0, e1 * e2)
            for a, b in zip(twice.terms, once.terms):
                assert abs(a.coeff - b.coeff) <= 1e-12
                assert abs(a.ket[0] - b.ket[0]) <= 1e-12
                assert abs(a.bra[0] - b.bra[0]) <= 1e-12

    def test_bad_mode_rejected(self):
        with pytest.raises(ValueError):
            dy.loss_on_dyad(dy.make_coherent(1.0), 1, 0.5)


class TestBeamSplitter:
    def test_splits_coherent_against_vacuum(self):
        state = dy.attach_vacuum(dy.make_coherent(1.3))
        out = dy.bs_on_product(state, (0, 1), 0.7)
        term = out.terms[0]
        assert term.ket[0] == pytest.approx(math.sqrt(0.7) * 1.3, abs=1e-15)
        assert term.ket[1] == pytest.approx(math.sqrt(0.3) * 1.3, abs=1e-15)

    def test_vacuum_fixed_point(self):
        state = dy.attach_vacuum(dy.make_coherent(0.0))
        out = dy.bs_on_product(state, (0, 1), 0.42)
        assert out.terms[0].ket == (0.0 + 0.0j, 0.0 + 0.0j)

    def test_energy_conservation(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            a, b = random_complex(rng), random_complex(rng)
            state = dy.make_coherent(a, b)
            out = dy.bs_on_product(state, (0, 1), rng.uniform(0.0, 1.0))
            term = out.terms[0]
            before = abs(a) ** 2 + abs(b) ** 2
            after = abs(term.ket[0]) ** 2 + abs(term.ket[1]) ** 2
            assert after == pytest.approx(before, abs=1e-14)

    def test_coefficients_unchanged(self):
        state = dy.make_css(CssParams(0.8, 1.1))
        joint = dy.attach_vacuum(state)
        out = dy.bs_on_product(joint, (0, 1), 0.25)
        assert [t.coeff for t in out.terms] == [t.coeff for t in joint.terms]

    def test_identical_modes_rejected(self):
        with pytest.raises(ValueError):
            dy.bs_on_product(dy.make_coherent(1.0, 0.0), (0, 0), 0.5)


class TestHomodyneAmplitude:
    def test_vacuum_wavefunction(self):
        for x in (-2.0, 0.0, 0.3, 1.7):
            for lam in (0.0, HALF_PI, 1.234):
                expected = math.pi ** -0.25 * math.exp(-0.5 * x * x)
                assert dy.homodyne_amplitude(0.0, x, lam) == pytest.approx(
                    expected, abs=1e-15
                )

    def test_reflection_phase_identity(self):
        # <x_{pi/2}|-b> = e^{i 2 sqrt(2) x b} <x_{pi/2}|b> for real b
        rng = np.random.default_rng(18)
        for _ in range(100):
            b = rng.uniform(-2.0, 2.0)
            x = rng.uniform(-4.0, 4.0)
            lhs = dy.homodyne_amplitude(-b, x, HALF_PI)
            rhs = cmath.exp(2j * math.sqrt(2.0) * x * b) * dy.homodyne_amplitude(
                b, x, HALF_PI
            )
            assert abs(lhs - rhs) <= 1e-14

    def test_phase_identity_at_published_point(self):
        ratio = dy.homodyne_amplitude(-1.0, 0.7, HALF_PI) / dy.homodyne_amplitude(
            1.0, 0.7, HALF_PI
        )
        assert ratio == pytest.approx(cmath.exp(2j * math.sqrt(2.0) * 0.7), abs=1e-14)

    @pytest.mark.parametrize(
        "beta,x,lam",
        [
            (1.0, 0.5, HALF_PI),
            (0.3, -1.0, 0.0),
            (-1.5, 2.0, 1.0),
            (2.0, 4.0, HALF_PI),
            (complex(0.7, -0.6), 1.3, 2.2),
        ],
    )
    def test_matches_hermite_expansion(self, beta, x, lam):
        closed = dy.homodyne_amplitude(beta, x, lam)
        summed = dy.hermite_quadrature_amplitude(beta, x, lam, terms=60)
        assert abs(closed - summed) <= 1e-10


class TestProjectQuadrature:
    def test_vacuum_density(self):
        state = dy.attach_vacuum(dy.make_coherent(0.7))
        out, density = dy.project_quadrature(state, 1, 0.9, HALF_PI)
        assert density == pytest.approx(
            math.exp(-0.81) / math.sqrt(math.pi), abs=1e-15
        )
        assert out.terms[0].ket == (0.7 + 0.0j,)
        assert out.terms[0].coeff == pytest.approx(1.0, abs=1e-14)

    def test_css_pipeline_density_and_conditional_state(self):
        state = dy.attach_vacuum(dy.make_css(CssParams(1.0, 0.0)))
        state = dy.bs_on_product(state, (0, 1), 0.5)
        cond, density = dy.project_quadrature(state, 1, 0.0, HALF_PI)
        assert density == pytest.approx(0.6797492720018076, abs=1e-13)
        assert dy.extract_fraction(cond, CssParams(math.sqrt(0.5), 0.0)) == pytest.approx(
            1.0, abs=1e-12
        )
        assert dy.purity(cond) == pytest.approx(1.0, abs=1e-12)

    def test_mixture_pipeline_reference_fraction(self):
        state = dy.make_mixed(MixedCss(CssParams(1.0, math.pi), 0.5))
        state = dy.attach_vacuum(state)
        state = dy.bs_on_product(state, (0, 1), 0.5)
        cond, _ = dy.project_quadrature(state, 1, HALF_PI, HALF_PI)
        frac = dy.extract_fraction(cond, CssParams(math.sqrt(0.5), 0.0))
        assert frac == pytest.approx(0.6126998367802821, abs=1e-12)

    def test_far_outcome_raises_zero_density(self):
        state = dy.attach_vacuum(dy.make_coherent(0.5))
        with pytest.raises(ZeroDensityError):
            dy.project_quadrature(state, 1, 40.0, HALF_PI)

    def test_single_mode_state_rejected(self):
        with pytest.raises(ValueError):
            dy.project_quadrature(dy.make_coherent(1.0), 0, 0.0, HALF_PI)


class TestProjectClick:
    def test_vacuum_probability_zero(self):
        state = dy.attach_vacuum(dy.make_coherent(0.9))
        reduced, prob = dy.project_click(state, 1)
        assert prob == 0.0
        with pytest.raises(ZeroDensityError):
            dy.normalize(reduced)

    def test_coherent_click_statistics(self):
        state = dy.make_coherent(0.9, 1.3)
        reduced, prob = dy.project_click(state, 1)
        assert prob == pytest.approx(-math.expm1(-1.69), abs=1e-15)
        assert dy.trace(reduced).real == pytest.approx(prob, abs=1e-15)
        kept = dy.normalize(reduced)
        assert kept.terms[0].ket == (0.9 + 0.0j,)
        assert kept.terms[0].coeff == pytest.approx(1.0, abs=1e-14)

    def test_amplifier_cascade_is_pure_for_pure_input(self):
        for phi in (0.0, math.pi, 1.234):
            frac = dy.amplifier_sim(1.0, CssParams(0.7, phi))
            assert frac == pytest.approx(1.0, abs=1e-12)


class TestExtractFraction:
    def test_pure_css_gives_one(self):
        params = CssParams(0.9, 2.4)
        assert dy.extract_fraction(dy.make_css(params), params) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_dephased_gives_zero(self):
        assert dy.extract_fraction(
            dy.make_incoherent(0.9), CssParams(0.9, 2.4)
        ) == pytest.approx(0.0, abs=1e-12)

    def test_loss_on_cat_reference_value(self):
        lossy = dy.loss_on_dyad(dy.make_css(CssParams(1.0, 0.0)), 0, 0.5)
        frac = dy.extract_fraction(lossy, CssParams(math.sqrt(0.5), 0.0))
        assert frac == pytest.approx(0.4432300588540602, abs=1e-12)

    def test_out_of_family_state_rejected(self):
        with pytest.raises(StateFamilyError):
            dy.extract_fraction(dy.make_coherent(1.0), CssParams(1.0, 0.0))

    def test_wrong_amplitude_rejected(self):
        state = dy.make_css(CssParams(1.0, 0.0))
        with pytest.raises(StateFamilyError):
            dy.extract_fraction(state, CssParams(0.8, 0.0))

    def test_degenerate_target_rejected(self):
        with pytest.raises(DegenerateStateError):
            dy.extract_fraction(dy.make_coherent(0.0), CssParams(0.0, math.pi))

    def test_alpha_zero_family_rejected(self):
        with pytest.raises(StateFamilyError):
            dy.extract_fraction(dy.make_coherent(0.0), CssParams(0.0, 0.0))


class TestPurityAndProbes:
    def test_dephased_pair_large_alpha(self):
        assert dy.purity(dy.make_incoherent(3.0)) == pytest.approx(0.5, abs=1e-10)

    def test_matches_closed_form(self):
        state = MixedCss(CssParams(1.0, 0.0), 0.5)
        assert dy.purity(dy.make_mixed(state)) == pytest.approx(
            analytic.purity_mixed_css(state), abs=1e-12
        )

    def test_non_unit_trace_rejected(self):
        bad = dy.DyadState((dy.DyadTerm(2.0, (0.0,), (0.0,)),), 1)
        with pytest.raises(StateFamilyError):
            dy.purity(bad)

    def test_positivity_proxy_on_random_states(self):
        rng = np.random.default_rng(19)
        probes = [random_complex(rng, radius=2.5) for _ in range(32)]
        for _ in range(10):
            state = random_mixture(rng)
            assert dy.purity(state) <= 1.0 + 1e-12
            for g in probes:
                assert dy.expect_coherent(state, (g,)) >= -1e-12

    def test_hermiticity_defect_flags_asymmetry(self):
        lopsided = dy.DyadState((dy.DyadTerm(1.0, (1.0,), (-1.0,)),), 1)
        assert dy.hermiticity_defect(lopsided) > 0.5

    def test_trace_of_single_dyad(self):
        dyad = dy.DyadState((dy.DyadTerm(0.3 + 0.1j, (1.2,), (0.4,)),), 1)
        expected = (0.3 + 0.1j) * dy.overlap(0.4, 1.2)
        assert dy.trace(dyad) == pytest.approx(expected, abs=1e-16)


class TestAmplifierSim:
    def test_reference_points(self):
        assert dy.amplifier_sim(0.5, CssParams(0.5, math.pi)) == pytest.approx(
            0.5922488638743828, abs=1e-9
        )
        assert dy.amplifier_sim(0.8, CssParams(0.9, math.pi)) == pytest.approx(
            0.7019362203839302, abs=1e-9
        )

    def test_large_amplitude_asymptote(self):
        assert dy.amplifier_sim(0.5, CssParams(3.0, 0.0)) == pytest.approx(
            0.25, abs=1e-3
        )

    def test_term_count_stays_bounded(self):
        state = dy.make_mixed(MixedCss(CssParams(1.1, math.pi), 0.37))
        joint = dy.tensor(state, state)
        joint = dy.bs_on_product(joint, (0, 1), 0.5)
        joint = dy.tensor(joint, dy.make_coherent(math.sqrt(2.0) * 1.1))
        joint = dy.bs_on_product(joint, (0, 2), 0.5)
        joint, _ = dy.project_click(joint, 2)
        joint, _ = dy.project_click(joint, 0)
        assert len(joint.terms) <= 64

    def test_invalid_inputs_rejected(self):
        with pytest.raises(ValueError):
            dy.amplifier_sim(1.2, CssParams(0.5, 0.0))
        with pytest.raises(ValueError):
            dy.amplifier_sim(0.5, CssParams(0.0, 0.0))
