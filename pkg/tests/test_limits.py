import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from erglab.limits import AlphaLaw, cdf, pdf, reg_inc_beta, sample
from erglab.stats import dkw_bound, ks_distance

KINDS = ("xi", "kacx", "kacy")


def law(kind, a):
    return getattr(AlphaLaw, kind)(a)


def test_incomplete_beta_examples():
    assert reg_inc_beta(0.5, 0.5, 0.5) == pytest.approx(0.5, abs=1e-14)
    assert reg_inc_beta(0.5, 0.5, 0.25) == pytest.approx(1 / 3, abs=1e-13)
    for x in (0.1, 0.9):
        assert reg_inc_beta(1.0, 1.0, x) == pytest.approx(x, abs=1e-14)


def test_incomplete_beta_endpoints_and_domain():
    assert reg_inc_beta(0.3, 0.7, 0.0) == 0.0
    assert reg_inc_beta(0.3, 0.7, 1.0) == 1.0
    with pytest.raises(ValueError):
        reg_inc_beta(-1.0, 0.5, 0.5)
    with pytest.raises(ValueError):
        reg_inc_beta(0.5, 0.5, 1.5)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 5), st.floats(0.05, 5), st.floats(1e-6, 1 - 1e-6))
def test_incomplete_beta_matches_scipy(a, b, x):
    assert reg_inc_beta(a, b, x) == pytest.approx(special.betainc(a, b, x), abs=1e-12)


def test_pdf_examples():
    assert pdf(AlphaLaw.xi(0.5), 0.5) == pytest.approx(2 / np.pi, abs=1e-14)
    assert pdf(AlphaLaw.kacx(0.5), 0.0) == pytest.approx(2 / np.pi, abs=1e-14)
    assert pdf(AlphaLaw.kacy(0.5), 0.0) == pytest.approx(2 / np.pi, abs=1e-14)
    assert np.all(pdf(AlphaLaw.uniform(), np.linspace(0, 1, 7)) == 1.0)


def test_kac_arcsine_special_case():
    x = np.linspace(0.01, 0.99, 50)
    ref = 2 / np.pi / np.sqrt(1 - x**2)
    np.testing.assert_allclose(pdf(AlphaLaw.kacx(0.5), x), ref, rtol=1e-12)
    np.testing.assert_allclose(pdf(AlphaLaw.kacy(0.5), x), ref, rtol=1e-12)


def test_cdf_examples():
    assert cdf(AlphaLaw.xi(0.5), 0.5) == pytest.approx(0.5, abs=1e-14)
    assert cdf(AlphaLaw.kacy(0.5), 0.5) == pytest.approx(1 / 3, abs=1e-13)
    # numeric-integration oracle for the derived KacY cdf
    for a in (0.2, 0.5, 0.8):
        lw = AlphaLaw.kacy(a)
        ref, _ = integrate.quad(lambda t: pdf(lw, t), 0, 0.6, limit=200)
        assert cdf(lw, 0.6) == pytest.approx(ref, abs=1e-8)
    for kind in KINDS:
        assert cdf(law(kind, 0.3), 1.0) == 1.0
    assert cdf(AlphaLaw.uniform(), 1.0) == 1.0


def test_dirac_and_parse():
    d = AlphaLaw.dirac(0.3)
    assert cdf(d, 0.29) == 0.0 and cdf(d, 0.3) == 1.0
    with pytest.raises(ValueError):
        pdf(d, 0.5)
    assert AlphaLaw.parse("xi:0.25") == AlphaLaw.xi(0.25)
    assert AlphaLaw.parse("uniform") == AlphaLaw.uniform()


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("a", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_density_matches_differentiated_cdf(kind, a):
    lw = law(kind, a)
    x = np.linspace(0.001, 0.999, 1000)
    h = 1e-4 * np.minimum(x, 1 - x)
    d = (-cdf(lw, x + 2 * h) + 8 * cdf(lw, x + h) - 8 * cdf(lw, x - h) + cdf(lw, x - 2 * h)) / (12 * h)
    p = pdf(lw, x)
    assert np.max(np.abs(d - p) / np.maximum(1.0, p)) < 1e-6


@pytest.mark.parametrize("kind", KINDS)
def test_kac_identity_and_symmetry(kind):
    x = np.linspace(0, 1, 101)
    for a in (0.2, 0.6):
        if kind == "kacx":
            np.testing.assert_allclose(cdf(AlphaLaw.kacx(a), x), cdf(AlphaLaw.xi(a), x ** (1 / (1 - a))), atol=1e-12)
        elif kind == "kacy":
            # Y = (1 - xi)^(1-a) with 1 - xi_a ~ xi_{1-a}
            np.testing.assert_allclose(cdf(AlphaLaw.kacy(a), x), cdf(AlphaLaw.xi(1 - a), x ** (1 / (1 - a))), atol=1e-12)
        else:
            np.testing.assert_allclose(cdf(AlphaLaw.xi(a), x) + cdf(AlphaLaw.xi(1 - a), 1 - x), 1.0, atol=1e-12)


def test_kacy_tends_to_uniform():
    x = np.linspace(0, 1, 1001)
    assert np.max(np.abs(cdf(AlphaLaw.kacy(0.97), x) - x)) < 0.05


def test_sampling_consistency():
    rng = np.random.default_rng(11)
    lw = AlphaLaw.xi(0.5)
    draws = sample(lw, rng, 10**6)
    assert ks_distance(draws, lw) <= dkw_bound(10**6)
    a = sample(AlphaLaw.kacx(0.5), np.random.default_rng(3), 1000)
    b = sample(AlphaLaw.xi(0.5), np.random.default_rng(3), 1000) ** 0.5
    np.testing.assert_allclose(a, b, rtol=1e-15)
    u = sample(AlphaLaw.uniform(), rng, 10**6)
    assert abs(u.mean() - 0.5) < 0.002
