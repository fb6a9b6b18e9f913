import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qscissors import analytic as cf
from qscissors.report import QUANTITIES, merit_report

NBARS = (0.0, 0.2, 0.5, 1.0, 1.2)
TS = tuple(round(0.1 * k, 10) for k in range(11))
GRID = [(n, T) for n in NBARS for T in TS if not (n == 0 and T == 1)]

params = st.tuples(st.floats(0, 5), st.floats(0, 1)).filter(lambda p: not (p[0] == 0 and p[1] == 1))


def test_population_examples():
    assert cf.cf_populations(0, 0.3) == (1, 0)
    assert cf.cf_populations(0.7, 1) == (0, 1)
    assert cf.cf_populations(0.5, 0.9) == pytest.approx((0.25, 0.75), abs=1e-15)
    with pytest.raises(cf.DomainError):
        cf.cf_populations(0, 1)
    assert cf.cf_populations(1e-300, 1) == (0, 1)


@given(params)
def test_populations_sum_to_one(p):
    p0, p1 = cf.cf_populations(*p)
    assert abs(p0 + p1 - 1) <= 1e-15


@given(st.floats(0, 1))
def test_pd_lines(T):
    assert cf.cf_pd(1, T) == pytest.approx(0.25 - 0.125 * T, abs=1e-16)
    assert cf.cf_pd(0, T) == pytest.approx(0.5 - 0.5 * T, abs=1e-16)


def test_pd_point():
    assert cf.cf_pd(0.5, 0.9) == pytest.approx(0.6 / 4.5, abs=1e-16)


@given(params)
def test_pd_range_and_mean_range(p):
    pd = cf.cf_pd(*p)
    assert 0 <= pd <= 0.5
    # strictly positive unless the true value is below the smallest double
    assert pd > 0 or p[0] + (1 - p[1]) < 1e-300
    assert 0 <= cf.cf_mean(*p) <= 1


def test_other_forms():
    assert cf.cf_mean(0.8, 1) == 1
    assert cf.cf_gain(0.5, 0.75) == pytest.approx(1, abs=1e-15)
    assert cf.cf_parity(1, 2 / 3) == pytest.approx(0, abs=1e-15)
    for T in TS:
        assert cf.cf_parity(1, T) == pytest.approx((2 - 3 * T) / (2 - T), abs=1e-15)
    with pytest.raises(cf.DomainError):
        cf.cf_gain(0, 0.5)
    with pytest.raises(cf.DomainError):
        cf.cf_snr(0.5, 1)


@given(params.filter(lambda p: p[1] < 1))
def test_snr_rearrangement(p):
    nbar, T = p
    s = cf.cf_snr(nbar, T)
    assert s**2 * (1 - T) * (nbar + 1) == pytest.approx(nbar * T, abs=1e-14 * max(1, nbar * T))


def test_thresholds():
    assert cf.cf_thresholds(1) == pytest.approx((1.0, 2 / 3, 2 / 3), abs=1e-15)
    assert cf.cf_thresholds(0.5) == pytest.approx((0.75, 0.75, 0.75), abs=1e-15)
    assert cf.cf_thresholds(1.2)[0] == pytest.approx(1.1, abs=1e-15)


def test_wigner_out():
    for n, T in GRID:
        assert cf.cf_wigner_out(n, T, 0) == pytest.approx(2 / math.pi * cf.cf_parity(n, T), abs=1e-15)
    assert cf.cf_wigner_out(0.5, 0.9, 0) == pytest.approx(-1 / math.pi, abs=1e-15)
    beta = (np.linspace(-4, 4, 81)[:, None] + 1j * np.linspace(-4, 4, 81)[None, :]) / math.sqrt(2)
    assert cf.cf_wigner_out(0.5, 0.4, beta).min() >= 0


def test_thermal_forms():
    assert cf.cf_parity_thermal(1) == pytest.approx(1 / 3)
    assert cf.cf_wigner_thermal(0.5, 0) == pytest.approx(1 / math.pi)
    assert cf.cf_thermal_snr(0) == 0


@pytest.mark.parametrize("nbar, T", GRID)
def test_oracle_agreement(nbar, T):
    rep = merit_report(nbar, T)
    for q in QUANTITIES:
        err = rep.error(q)
        if err is not None:
            assert err <= 10 * 1e-12, q
