"""Unit tests for the kernel-hypothesis verification module."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stochwave import hypcheck as H
from stochwave import kernels as K


@pytest.mark.parametrize("spec", [K.riesz(3, 1.0), K.riesz(2, 0.5),
                                  K.fractional(0.75, 0.75)])
def test_h3_rate_two_sided(spec):
    fit = H.fit_h3_rate(spec)
    assert not fit.one_sided
    assert abs(fit.fitted_nu - fit.expected_nu) < 0.05


def test_h3_rate_bessel_one_sided():
    fit = H.fit_h3_rate(K.bessel(3, 3.5))
    assert fit.one_sided
    assert fit.fitted_nu <= fit.expected_nu + 0.05


def test_h4_exponents_riesz_d3():
    fit = H.fit_h4_exponents(K.riesz(3, 1.5))
    assert abs(fit.b_fitted - 0.5) < 0.05
    assert abs(fit.bbar_fitted - 0.5) < 0.05
    assert not fit.inconclusive


def test_h4_exponents_riesz_d2():
    fit = H.fit_h4_exponents(K.riesz(2, 0.5), h_exponents=range(18, 25, 3))
    # b sits at the endpoint of its admissible range -> flagged inconclusive
    assert fit.inconclusive
    assert fit.bbar_fitted > 1.3


def test_h4_requires_dimension_2_or_3():
    with pytest.raises(ValueError):
        H.fit_h4_exponents(K.white_noise())


def test_critical_exponents_examples():
    e = H.critical_exponents(K.riesz(2, 1.0), 1.0, 1.0, gamma=0.4)
    assert e["nu1"] == pytest.approx(0.4, abs=1e-9)
    assert e["nu2"] == pytest.approx(0.4, abs=1e-9)
    assert e["nu"] == pytest.approx(1.0)
    e3 = H.critical_exponents(K.fractional(0.9, 0.9, 0.9), 1.0, 1.0)
    assert e3["nu"] == pytest.approx(1.4)
    assert e3["nu2"] <= e3["nu1"]


def test_conclusion_exponent_per_family():
    assert H.conclusion_exponent(K.white_noise(), 1.0, 1.0) == pytest.approx(0.5)
    assert H.conclusion_exponent(K.white_noise(), 0.3, 1.0) == pytest.approx(0.3)
    assert H.conclusion_exponent(K.riesz(2, 1.0), 1.0, 1.0) == pytest.approx(0.5)
    assert H.conclusion_exponent(K.riesz(3, 0.5), 1.0, 1.0) == pytest.approx(0.75)
    assert H.conclusion_exponent(K.bessel(3, 3.0), 1.0, 1.0) == pytest.approx(1.0)
    assert H.conclusion_exponent(K.fractional(0.9, 0.9, 0.9), 1.0, 1.0) == \
        pytest.approx(0.4)


@settings(max_examples=15, deadline=None)
@given(beta=st.floats(0.2, 1.8), g1=st.floats(0.1, 1.0),
       g2=st.floats(0.1, 1.0))
def test_exponent_ordering_invariant(beta, g1, g2):
    spec = K.riesz(3, beta)
    e = H.critical_exponents(spec, g1, g2)
    assert e["nu2"] <= e["nu1"] + 1e-12
    assert e["nu1"] <= min(g1, g2) + 1e-12
    assert 0 < e["nu2"] <= 1.0 + 1e-12


def test_integral_divergence_probe():
    spec = K.riesz(2, 1.0)
    assert H.integral_diverges(spec, lambda r: 1.0 / (1 + r * r) ** 0.2)
    assert not H.integral_diverges(spec, lambda r: 1.0 / (1 + r * r))


def test_hypothesis_report_structure():
    rep = H.hypothesis_report(K.riesz(2, 1.0), gamma_grid=[0.2, 0.4],
                              include_h4=False)
    assert not rep["h0"]["diverges"]
    assert rep["h0"]["c_mu"] == pytest.approx(np.pi / 2, rel=1e-6)
    rows = rep["h2"]["grid"]
    assert [r["gamma"] for r in rows] == [0.2, 0.4]
    assert all(not r["diverges"] for r in rows)  # both below gamma_max = 0.5
    assert rep["h2"]["gamma_max"] == pytest.approx(0.5)
    assert abs(rep["h3"]["fitted_nu"] - 1.0) < 0.05
    assert "conclusion_exponent" in rep


def test_hypothesis_report_skips_h4_in_d1():
    rep = H.hypothesis_report(K.white_noise(), include_h4=True,
                              gamma_grid=[0.25])
    assert "skipped" in str(rep["h4"]).lower() or rep["h4"] is None
