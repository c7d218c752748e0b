import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

import kratzerkit as kz
from kratzerkit import correction as corr
from kratzerkit.errors import (
    DegenerateScreening,
    DomainError,
    NotAMinimum,
    NotApplicable,
)


def closed_form_csk(De, re, alpha, r):
    # independent closed form of the corrected screened potential
    b = alpha * re
    return De * ((b + 1) * re**2 / r**2 - (b + 2) * re / r) * np.exp(-alpha * (r - re))


def test_constant_screening_reproduces_kratzer():
    spec = corr.correct_general(kz.constant_screening(1.0), 5.0, 1.0)
    assert spec.coefficients.a == pytest.approx(-10.0, rel=1e-14)
    assert spec.coefficients.b == pytest.approx(5.0, rel=1e-14)
    r = np.geomspace(0.05, 50.0, 200)
    np.testing.assert_allclose(kz.evaluate(spec, r),
                               kz.evaluate(kz.kratzer(5.0, 1.0), r),
                               rtol=1e-13, atol=1e-13)


def test_corrected_screened_kratzer_frozen_coefficients():
    spec = corr.corrected_screened_kratzer(5.0, 1.0, 0.25)
    assert spec.coefficients.a == pytest.approx(-14.445285937737092, rel=1e-13)
    assert spec.coefficients.b == pytest.approx(8.0251588542983843, rel=1e-13)
    assert kz.evaluate(spec, 2.0) == pytest.approx(-3.1638781812275823, rel=1e-12)
    assert kz.evaluate(spec, 1.0) == pytest.approx(-5.0, rel=1e-13)


def test_solve_matches_closed_form_pointwise():
    rng = np.random.default_rng(41)
    r = np.geomspace(0.05, 50.0, 300)
    for _ in range(25):
        De = float(rng.uniform(0.5, 20.0))
        re = float(rng.uniform(0.4, 3.0))
        alpha = float(rng.uniform(0.0, 1.0))
        spec = corr.corrected_screened_kratzer(De, re, alpha)
        grid = r * re
        np.testing.assert_allclose(kz.evaluate(spec, grid),
                                   closed_form_csk(De, re, alpha, grid),
                                   rtol=1e-12, atol=1e-12 * De)


def test_alpha_zero_correction_is_kratzer():
    spec = corr.corrected_screened_kratzer(5.0, 1.0, 0.0)
    r = np.linspace(0.2, 20.0, 100)
    np.testing.assert_allclose(kz.evaluate(spec, r),
                               kz.evaluate(kz.kratzer(5.0, 1.0), r), rtol=1e-13)


def test_validate_correction_on_corrected_and_flawed():
    good = corr.corrected_screened_kratzer(5.0, 1.0, 0.25)
    rep = corr.validate_correction(good, 5.0, 1.0)
    assert rep.passed and rep.slope_ok and rep.depth_ok and rep.curvature_ok
    assert rep.curvature == pytest.approx(15.3125, rel=1e-10)

    bad = corr.validate_correction(kz.screened_kratzer(5.0, 1.0, 0.25), 5.0, 1.0)
    assert not bad.slope_ok
    assert bad.slope_residual == pytest.approx(0.97350097883925609, rel=1e-10)
    assert not bad.depth_ok

    assert corr.validate_correction(kz.kratzer(5.0, 1.0), 5.0, 1.0).passed


def test_validation_reports_divergent_depth():
    hsk = kz.harmonic_screened_kratzer(5.0, 1.0, 0.25, 0.1)
    rep = corr.validate_correction(hsk, 5.0, 1.0)
    assert math.isinf(rep.depth_residual)
    assert not rep.passed


def test_improved_bracket_screening_correction():
    f = kz.improved_bracket_screening(0.25, 0.25, 1)
    spec = corr.correct_general(f, 5.0, 1.0)
    assert corr.validate_correction(spec, 5.0, 1.0).passed


def test_zero_additive_term_reduces_to_general():
    f = kz.exponential_screening(0.25)
    zero = kz.AdditiveTermSpec(value=lambda r: 0.0 * np.asarray(r, dtype=float),
                               derivative=lambda r: 0.0 * np.asarray(r, dtype=float))
    a = corr.correct_general(f, 5.0, 1.0)
    b = corr.correct_with_additive(f, zero, 5.0, 1.0)
    assert b.coefficients.a == pytest.approx(a.coefficients.a, rel=1e-14)
    assert b.coefficients.b == pytest.approx(a.coefficients.b, rel=1e-14)


def test_additive_hulthen_correction():
    # screening and attraction of the Hulthen-screened family, regenerated
    f = kz.damped_cosh_screening(1.0 * 0.25, 0.5)
    g = kz.hulthen_additive(1.0, 0.25)
    spec = corr.correct_with_additive(f, g, 5.0, 1.0)
    assert corr.validate_correction(spec, 5.0, 1.0).passed

    # cross-check the solve with a bounded scalar minimizer
    res = minimize_scalar(lambda r: kz.evaluate(spec, r), bounds=(0.3, 5.0),
                          method="bounded",
                          options={"xatol": 1e-12})
    assert res.x == pytest.approx(1.0, abs=1e-7)
    assert res.fun == pytest.approx(-5.0, rel=1e-10)


def test_random_screening_draws_all_validate():
    rng = np.random.default_rng(2718)
    for _ in range(100):
        De = float(rng.uniform(0.5, 15.0))
        re = float(rng.uniform(0.4, 2.5))
        alpha = float(rng.uniform(0.0, 1.0))
        factors = [
            kz.exponential_screening(alpha),
            kz.damped_cosh_screening(alpha, float(rng.uniform(-1, 1))),
            kz.improved_bracket_screening(alpha, float(rng.uniform(0, 0.8)),
                                          int(rng.choice([-1, 0, 1]))),
            kz.shifted_exponential_screening(alpha, float(rng.uniform(0.1, 2.0)),
                                             float(rng.uniform(0.05, 1.0))),
        ]
        for f in factors:
            spec = corr.correct_general(f, De, re)
            rep = corr.validate_correction(spec, De, re)
            assert rep.passed, (f.form, De, re, rep)


def test_degenerate_screening_is_refused():
    # factor tuned to vanish exactly at re
    lam = -math.exp(-0.25) / 2.0
    f = kz.shifted_exponential_screening(0.25, 1.0, lam)
    with pytest.raises(DegenerateScreening):
        corr.correct_general(f, 5.0, 1.0)


def test_upward_bump_screening_cannot_hold_a_minimum():
    # f(re)=1, f'(re)=0 but f''(re) = +100: the solved coefficients put the
    # well value right, yet curvature flips negative, which must be an error
    bump = kz.ScreeningSpec(
        value=lambda r: 2.0 - 1.0 / (1.0 + 50.0 * (r - 1.0) ** 2),
        derivative=lambda r: 100.0 * (r - 1.0) / (1.0 + 50.0 * (r - 1.0) ** 2) ** 2,
        asymptote=2.0)
    with pytest.raises(NotAMinimum):
        corr.correct_general(bump, 5.0, 1.0)


def test_correct_spec_per_family():
    specs = [
        kz.kratzer(5.0, 1.0),
        kz.screened_kratzer(5.0, 1.0, 0.25),
        kz.screened_cosine_kratzer(5.0, 1.0, 0.25, 0.5),
        kz.hulthen_screened_cosine_kratzer(5.0, 1.0, 0.25, 0.8, 0.5, 1.0),
        kz.improved_screened_kratzer(5.0, 1.0, 0.25, 0.25, 1),
        kz.shifted_screened_kratzer(5.0, 1.0, 0.25, 0.3, 1.0),
        kz.harmonic_screened_kratzer(5.0, 1.0, 0.25, 0.0),
    ]
    for spec in specs:
        fixed = corr.correct_spec(spec)
        assert fixed.family == "corrected"
        assert corr.validate_correction(fixed, 5.0, 1.0).passed, spec.family


def test_correct_spec_rejects_harmonic_confinement():
    with pytest.raises(NotApplicable):
        corr.correct_spec(kz.harmonic_screened_kratzer(5.0, 1.0, 0.25, 0.1))


def test_correct_spec_is_idempotent():
    first = corr.correct_spec(kz.screened_kratzer(5.0, 1.0, 0.25))
    again = corr.correct_spec(first)
    assert again.coefficients.a == pytest.approx(first.coefficients.a, rel=1e-14)
    assert again.coefficients.b == pytest.approx(first.coefficients.b, rel=1e-14)


def test_bad_parameters_rejected():
    with pytest.raises(DomainError):
        corr.correct_general(kz.exponential_screening(0.25), -5.0, 1.0)
    with pytest.raises(DomainError):
        corr.corrected_screened_kratzer(5.0, 0.0, 0.25)
