import math

import pytest
from hypothesis import given, strategies as st

from wignerpacs import (NotNonclassicalError, PacsSpec, asymptotic_thresholds, pnw_curve,
                        threshold_analytic, threshold_map, threshold_numeric)
from wignerpacs.negativity import METHOD_ANALYTIC, METHOD_MAP, METHOD_NUMERIC


def test_pnw_curve_fock1_start():
    (t, v), = pnw_curve(PacsSpec(0, 1), 0.0, [0.0])
    assert t == 0.0
    assert abs(v - (2 * math.exp(-0.5) - 1)) < 1e-4


def test_pnw_curve_zero_beyond_threshold():
    t_c = math.log(1.5)
    curve = pnw_curve(PacsSpec(1.5, 1), 0.5, [t_c + 1e-6, 0.5, 0.8])
    assert all(v == 0.0 for _, v in curve)


def test_pnw_curve_monotone_spacs():
    times = [0.02 * k for k in range(20)]
    vals = [v for _, v in pnw_curve(PacsSpec(1.0 + 0.5j, 1), 0.3, times)]
    assert len(vals) == len(times)
    assert all(b <= a + 1e-6 for a, b in zip(vals, vals[1:]))


def test_pnw_curve_rejects_unsorted():
    with pytest.raises(ValueError):
        pnw_curve(PacsSpec(0.5, 1), 0.5, [0.2, 0.1])
    with pytest.raises(ValueError):
        pnw_curve(PacsSpec(0.5, 1), 0.5, [-0.1])


def test_threshold_analytic_values():
    assert threshold_analytic(0).gamma_t_c == pytest.approx(math.log(2), abs=1e-15)
    assert threshold_analytic(1).gamma_t_c == pytest.approx(math.log(4 / 3), abs=1e-15)
    assert threshold_analytic(1).method == METHOD_ANALYTIC
    big = threshold_analytic(50).gamma_t_c
    assert big == pytest.approx(math.log(102 / 101), abs=1e-15)
    assert abs(big - 0.5 / 50) / big < 0.02


def test_threshold_map_values():
    assert threshold_map(math.log(2), 1).gamma_t_c == pytest.approx(math.log(4 / 3), abs=1e-15)
    assert threshold_map(math.log(2), 0).gamma_t_c == pytest.approx(math.log(2), abs=1e-15)
    r = threshold_map(math.log(2), 100)
    assert r.method == METHOD_MAP
    assert r.gamma_t_c == pytest.approx(math.log(202 / 201), abs=1e-15)
    assert abs(r.gamma_t_c - 0.005) / r.gamma_t_c < 0.01


@given(st.floats(1e-3, 5), st.floats(0, 50), st.floats(1e-3, 10))
def test_threshold_map_monotone(t0, n, dn):
    base = threshold_map(t0, n).gamma_t_c
    assert threshold_map(t0, n + dn).gamma_t_c < base
    assert threshold_map(t0 * 1.1, n).gamma_t_c > base


@given(st.floats(0, 100))
def test_threshold_map_reproduces_analytic_spacs(n):
    assert threshold_map(math.log(2), n).gamma_t_c == pytest.approx(threshold_analytic(n).gamma_t_c, rel=1e-12)


def test_asymptotics():
    t0 = math.log(2)
    large, _ = asymptotic_thresholds(t0, 100)
    assert large == pytest.approx(0.005)
    exact = threshold_map(t0, 100).gamma_t_c
    assert abs(exact - large) / exact < 0.01
    _, small = asymptotic_thresholds(t0, 0.01)
    assert small == pytest.approx(0.68315, abs=1e-5)
    # second-order term 3/2 n^2 dominates the remainder
    assert threshold_map(t0, 0.01).gamma_t_c - small == pytest.approx(1.5e-4, rel=0.02)
    assert asymptotic_thresholds(t0, 1e-12)[1] == pytest.approx(t0)


@pytest.mark.parametrize("alpha,n", [(0.5, 1.0), (1.5, 0.0), (0.3 + 0.3j, 0.7)])
def test_threshold_numeric_spacs(alpha, n):
    r = threshold_numeric(PacsSpec(alpha, 1), n)
    assert r.method == METHOD_NUMERIC
    assert r.bisection_width <= 1e-6
    assert abs(r.gamma_t_c - threshold_analytic(n).gamma_t_c) < 1e-3


def test_threshold_numeric_tpacs():
    r = threshold_numeric(PacsSpec(0.5, 2), 1.0)
    assert abs(r.gamma_t_c - math.log(4 / 3)) < 2e-3


def test_threshold_numeric_coherent_rejected():
    with pytest.raises(NotNonclassicalError, match="state not nonclassical"):
        threshold_numeric(PacsSpec(0.5, 0), 1.0)
