import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from erglab import regvar as rv


def test_evaluate_examples():
    assert rv.evaluate(rv.power_log(0, 1), math.e) == pytest.approx(1.0, rel=1e-14)
    assert rv.evaluate(rv.power_log(2, 0), 3.0) == pytest.approx(9.0, rel=1e-14)
    assert rv.evaluate(rv.power_log(1, -1), math.e**2) == pytest.approx(math.e**2 / 2, rel=1e-13)
    assert rv.evaluate(rv.power_log(1, -1), math.e**2) == pytest.approx(3.6945, abs=1e-4)


def test_evaluate_domain_and_distort():
    F = rv.power_log(0.5, 1)
    with pytest.raises(ValueError):
        rv.evaluate(F, 1.0)
    np.testing.assert_array_equal(rv.distort(F, np.array([0.0, 1.0, 2.0])), 0.0)
    assert rv.distort(F, 100.0) == pytest.approx(rv.evaluate(F, 100.0))
    with pytest.raises(ValueError):
        rv.power_log(0, 1, x0=1.0)


def test_karamata_form_reproduces_log():
    # ln x = x^0 * 1 * exp(int_e^x dt/(t ln t))
    spec = rv.karamata(0.0, lambda x: 1.0, lambda t: 1.0 / math.log(t), math.e)
    for x in (10.0, 1e3, 1e6):
        assert rv.evaluate(spec, x) == pytest.approx(math.log(x), rel=1e-9)
    ll = rv.log_loglog()
    assert rv.evaluate(ll, 1e6) == pytest.approx(math.log(1e6) * math.log(math.log(1e6)), rel=1e-8)


def test_inverse_examples():
    assert rv.asymptotic_inverse(rv.power_log(2), 9.0) == pytest.approx(3.0, rel=1e-11)
    assert rv.asymptotic_inverse(rv.power_log(0, 1), 3.0) == pytest.approx(math.e**3, rel=1e-11)
    x = rv.asymptotic_inverse(rv.power_log(1, -1), 100.0)
    assert x / math.log(x) == pytest.approx(100.0, rel=1e-10)
    assert x == pytest.approx(647.278, abs=1e-3)


def test_inverse_range_exhausted():
    with pytest.raises(ValueError, match="range exhausted"):
        rv.asymptotic_inverse(rv.power_log(0, -1), 10.0)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([0.0, 0.5, 1.0, 2.0]), st.floats(0.1, 2), st.floats(1.5, 8))
def test_inverse_consistency(beta, gamma, logx):
    # strictly increasing specs only
    spec = rv.power_log(beta, gamma)
    x = 10.0 * spec.x0 * 10**logx
    assert rv.asymptotic_inverse(spec, rv.evaluate(spec, x)) / x == pytest.approx(1.0, abs=1e-6)


def test_erickson_examples():
    L = rv.power_log(0, 1)
    assert rv.erickson_scale(L, 1e4, 0.5) == pytest.approx(100.0, rel=1e-10)
    assert rv.erickson_scale(L, 1e6, 1 / 3) == pytest.approx(100.0, rel=1e-10)
    a = rv.erickson_scale(rv.log_loglog(), 1e6, 0.5)
    assert a / 1e6 < 0.02
    with pytest.raises(ValueError):
        rv.erickson_scale(rv.power_log(1), 1e4, 0.5)


@pytest.mark.parametrize("x", [0.25, 0.5, 0.75])
def test_erickson_property(x):
    L = rv.power_log(0, 1)
    ns = [10.0**j for j in range(2, 10)]
    a = np.array([rv.erickson_scale(L, n, x) for n in ns])
    assert np.all(np.diff(a) > 0)
    assert np.all(np.diff(a / np.array(ns)) < 0)


@pytest.mark.parametrize("spec", [rv.power_log(0, 1), rv.power_log(0, -2), rv.power_log(0, 0.5), rv.log_loglog()])
@pytest.mark.parametrize("lam", [2.0, 10.0])
def test_slow_variation(spec, lam):
    xs = np.array([10.0**j for j in range(2, 10)])
    dev = np.abs(rv.variation_ratio(spec, lam, xs) - 1)
    assert np.all(np.diff(dev) < 0)


def test_regular_variation_index():
    xs = np.array([1e4, 1e8, 1e12])
    r = rv.variation_ratio(rv.power_log(1.5, 2), 3.0, xs)
    assert abs(r[-1] - 3**1.5) < abs(r[0] - 3**1.5)


def test_uniform_asymptotic_ratio():
    L = rv.power_log(0, 1)
    q = np.array([10.0**j for j in range(2, 12)])
    k = 5.0
    r = rv.uniform_asymptotic_ratio(L, k * q, q, k)
    assert np.all(np.diff(np.abs(r - 1)) < 0)
    with pytest.raises(ValueError):
        rv.uniform_asymptotic_ratio(L, 10 * q, q, k)


def test_tauberian_constant_sequence():
    partial, laplace = rv.karamata_tauberian_ratio(lambda k: np.ones(k.shape), 1.0, None, [10, 1000], [1e-3])
    assert all(r == pytest.approx(1.0, rel=1e-12) for _, r in partial)
    assert laplace[0][1] == pytest.approx(1.0005, abs=1e-6)
    assert rv.laplace_sum(lambda k: np.ones(k.shape), 1e-3) == pytest.approx(1 / (1 - math.exp(-1e-3)), rel=1e-10)


def test_tauberian_inverse_sqrt():
    # b_k = (k+1)^(-1/2): both sides tend to Gamma(1/2) = sqrt(pi) when L == 1;
    # the next-order term is zeta(1/2) s^(1/2), about 1.5% at s = 1e-4
    partial, laplace = rv.karamata_tauberian_ratio(lambda k: (k + 1.0) ** -0.5, 0.5, None, [10**3, 10**5, 10**6], [1e-2, 1e-3, 1e-4])
    for side in (partial, laplace):
        err = [abs(r - math.sqrt(math.pi)) for _, r in side]
        assert err == sorted(err, reverse=True)
        assert err[-1] < 0.02


def test_karamata_lemma_examples():
    assert rv.karamata_lemma_ratio(lambda k: np.ones(k.shape), 0, 0, [5, 50]) == [(5, 1.0), (50, 1.0)]
    n, r = rv.karamata_lemma_ratio(lambda k: k.astype(float), 0, 1, [10**5])[0]
    assert r == pytest.approx(2 * n / (n + 1), rel=1e-12)
    assert rv.karamata_lemma_ratio(lambda k: k.astype(float) ** 2, 1, 2, [10**5])[0][1] == pytest.approx(4.0, abs=1e-3)
    with pytest.raises(ValueError):
        rv.karamata_lemma_ratio(lambda k: k, -3, 0, [10])
