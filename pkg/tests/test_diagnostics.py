import math

import numpy as np
import pytest

import kratzerkit as kz
from kratzerkit.diagnostics import (
    MinimumReport,
    apparent_dissociation,
    closed_form_flaw,
    find_minimum,
    flaw_report,
)
from kratzerkit.errors import (
    DomainError,
    NoMinimumInBracket,
    NotAMinimum,
    NotApplicable,
)


def test_kratzer_minimum_is_exact():
    rep = find_minimum(kz.kratzer(5.0, 1.0), bracket=(0.5, 2.0))
    assert rep.r_min == pytest.approx(1.0, rel=1e-12)
    assert rep.V_min == pytest.approx(-5.0, rel=1e-12)
    assert rep.curvature == pytest.approx(10.0, rel=1e-10)


def test_monotone_bracket_has_no_minimum():
    with pytest.raises(NoMinimumInBracket):
        find_minimum(kz.kratzer(5.0, 1.0), bracket=(3.0, 5.0))


def test_bad_bracket_rejected():
    with pytest.raises(DomainError):
        find_minimum(kz.kratzer(5.0, 1.0), bracket=(-1.0, 2.0))
    with pytest.raises(DomainError):
        find_minimum(kz.kratzer(5.0, 1.0), bracket=(2.0, 0.5))


def test_screened_kratzer_minimum_sits_left_of_re():
    spec = kz.screened_kratzer(5.0, 1.0, 0.25)
    rep = find_minimum(spec)
    assert rep.r_min == pytest.approx(0.90753645318366235, rel=1e-10)
    assert rep.V_min == pytest.approx(-3.9436992342429264, rel=1e-10)
    assert rep.r_min < 1.0


def test_minimum_report_rejects_nonpositive_curvature():
    with pytest.raises(NotAMinimum):
        MinimumReport(r_min=1.0, V_min=-5.0, curvature=0.0)


def test_apparent_dissociation():
    k = kz.kratzer(5.0, 1.0)
    assert apparent_dissociation(k, find_minimum(k)) == pytest.approx(5.0, rel=1e-12)

    # measured from the claimed re instead of the true minimum, the screened
    # well is shallower than De by exactly exp(-alpha*re)
    sk = kz.screened_kratzer(5.0, 1.0, 0.25)
    at_re = MinimumReport(1.0, kz.evaluate(sk, 1.0), kz.derivative2(sk, 1.0))
    assert apparent_dissociation(sk, at_re) == pytest.approx(
        3.8940039153570243, rel=1e-12)

    hsk = kz.harmonic_screened_kratzer(5.0, 1.0, 0.25, 0.1)
    assert apparent_dissociation(hsk, find_minimum(hsk)) is None


FROZEN_FLAWS = [
    (kz.screened_kratzer(5.0, 1.0, 0.25),
     0.97350097883925609, 3.8940039153570243),
    (kz.screened_cosine_kratzer(5.0, 1.0, 0.25, 0.5),
     0.9201139809242225, 3.924465453438919),
    (kz.hulthen_screened_cosine_kratzer(5.0, 1.0, 0.25, 0.8, 0.5, 1.0),
     0.84335654070467788, 4.5519625959083955),
    (kz.improved_screened_kratzer(5.0, 1.0, 0.25, 0.25, 1),
     0.75816332464079178, 9.0163266492815836),
    (kz.shifted_screened_kratzer(5.0, 1.0, 0.25, 0.3, 1.0),
     0.97350097883925609, 6.8940039153570243),
    (kz.harmonic_screened_kratzer(5.0, 1.0, 0.25, 0.1),
     1.1735009788392561, None),
]


@pytest.mark.parametrize("spec,slope,depth", FROZEN_FLAWS,
                         ids=lambda v: v.family if hasattr(v, "family") else "")
def test_closed_form_flaw_frozen_values(spec, slope, depth):
    got_slope, got_depth = closed_form_flaw(spec)
    assert got_slope == pytest.approx(slope, rel=1e-12)
    if depth is None:
        assert got_depth is None
    else:
        assert got_depth == pytest.approx(depth, rel=1e-12)


def test_closed_form_flaw_not_applicable():
    with pytest.raises(NotApplicable):
        closed_form_flaw(kz.kratzer(5.0, 1.0))
    corr = kz.corrected_potential(
        5.0, 1.0, screening=kz.exponential_screening(0.25),
        coefficients=kz.CorrectionCoefficients(-14.445285937737092,
                                               8.0251588542983843))
    with pytest.raises(NotApplicable):
        closed_form_flaw(corr)


def test_flaw_report_screened_kratzer():
    rep = flaw_report(kz.screened_kratzer(5.0, 1.0, 0.25))
    assert rep.slope_at_claimed_re == pytest.approx(rep.closed_form_slope,
                                                    rel=1e-9)
    assert rep.slope_at_claimed_re == pytest.approx(0.97350097883925609,
                                                    rel=1e-10)
    assert rep.actual_re < rep.claimed_re
    assert rep.actual_De == pytest.approx(3.9436992342429264, rel=1e-10)
    assert rep.actual_De < rep.claimed_De
    assert rep.is_flawed


def test_flaw_report_trivial_screening_is_clean():
    rep = flaw_report(kz.screened_kratzer(5.0, 1.0, 0.0))
    assert rep.slope_at_claimed_re == pytest.approx(0.0, abs=1e-12)
    assert rep.actual_re == pytest.approx(1.0, rel=1e-10)
    assert rep.actual_De == pytest.approx(5.0, rel=1e-10)
    assert not rep.is_flawed


def test_flaw_report_corrected_potential_is_clean():
    spec = kz.corrected_potential(
        5.0, 1.0, screening=kz.exponential_screening(0.25),
        coefficients=kz.CorrectionCoefficients(-14.445285937737092,
                                               8.0251588542983843))
    rep = flaw_report(spec)
    assert rep.closed_form_slope is None
    assert rep.closed_form_depth is None
    assert abs(rep.slope_at_claimed_re) < 1e-8
    assert not rep.is_flawed


def test_flaw_report_harmonic_family():
    rep = flaw_report(kz.harmonic_screened_kratzer(5.0, 1.0, 0.25, 0.1))
    assert rep.actual_De is None  # no dissociation limit at all
    assert rep.closed_form_depth is None
    assert rep.closed_form_slope == pytest.approx(1.1735009788392561, rel=1e-12)
    assert rep.is_flawed


def test_improved_family_tau_minus_one_has_no_well():
    # tau = -1 flips the screening bracket negative: the potential climbs
    # from an attractive hole straight over a barrier, no minimum anywhere
    spec = kz.improved_screened_kratzer(5.0, 1.0, 0.25, 0.25, -1)
    with pytest.raises(NoMinimumInBracket):
        flaw_report(spec)


def test_numeric_slope_matches_closed_form_on_random_draws():
    rng = np.random.default_rng(715)
    for _ in range(60):
        De = float(rng.uniform(1.0, 15.0))
        re = float(rng.uniform(0.5, 2.5))
        alpha = float(rng.uniform(0.02, 0.7))
        specs = [
            kz.screened_kratzer(De, re, alpha),
            kz.screened_cosine_kratzer(De, re, alpha, float(rng.uniform(-1, 1))),
            kz.hulthen_screened_cosine_kratzer(
                De, re, alpha, float(rng.uniform(0.1, 1.5)),
                float(rng.uniform(-1, 1)), float(rng.uniform(0, 2))),
            kz.improved_screened_kratzer(De, re, alpha,
                                         float(rng.uniform(0, 0.8)),
                                         int(rng.choice([-1, 0, 1]))),
            kz.shifted_screened_kratzer(De, re, alpha,
                                        float(rng.uniform(-0.5, 1.0)),
                                        float(rng.uniform(0.1, 2.0))),
            kz.harmonic_screened_kratzer(De, re, alpha,
                                         float(rng.uniform(0, 0.4))),
        ]
        for spec in specs:
            slope, _ = closed_form_flaw(spec)
            numeric = kz.derivative1(spec, re)
            assert numeric == pytest.approx(slope, rel=1e-9), spec.family


def test_apparent_depth_never_exceeds_De_for_screened_kratzer():
    rng = np.random.default_rng(99)
    for _ in range(50):
        De = float(rng.uniform(0.5, 20.0))
        re = float(rng.uniform(0.3, 3.0))
        alpha = float(rng.uniform(0.0, 1.0))
        _, depth = closed_form_flaw(kz.screened_kratzer(De, re, alpha))
        assert depth <= De + 1e-12 * De
        if alpha > 0:
            assert depth < De


def test_flaw_report_serializes():
    rep = flaw_report(kz.screened_kratzer(5.0, 1.0, 0.25))
    d = rep.to_dict()
    assert d["family"] == "screened_kratzer"
    assert d["is_flawed"] is True
    assert set(d) == {"family", "claimed_De", "claimed_re", "actual_re",
                      "actual_De", "slope_at_claimed_re", "closed_form_slope",
                      "closed_form_depth", "is_flawed"}
