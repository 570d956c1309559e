import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_laguerre

from wignerpacs import (ChannelParams, GridSpec, InvalidChannelError, PacsSpec, PacsWigner,
                        UnsupportedOrderError, integrate, laguerre, pacs_norm, spacs_evolved,
                        wigner_pacs_initial, wigner_spacs_evolved, wigner_thermal)
from wignerpacs.states import in_spacs_negative_disc, spacs_negative_disc


def test_laguerre_values():
    assert laguerre(1, 0) == 1
    assert laguerre(1, -0.25) == 1.25
    assert abs(laguerre(2, 2 - math.sqrt(2))) < 1e-12
    assert laguerre(0, 3.7) == 1


@pytest.mark.parametrize("m", [-1, 3, 1.5, None])
def test_laguerre_unsupported(m):
    with pytest.raises(UnsupportedOrderError):
        laguerre(m, 0.0)


@given(st.sampled_from([0, 1, 2]), st.floats(-50, 50))
def test_laguerre_matches_scipy(m, x):
    assert laguerre(m, x) == pytest.approx(eval_laguerre(m, x), rel=1e-12, abs=1e-12)


def test_pacs_norm():
    assert pacs_norm(PacsSpec(0.5, 1)) == pytest.approx(1.25)
    assert pacs_norm(PacsSpec(0, 2)) == 2
    assert pacs_norm(PacsSpec(1.5, 2)) == pytest.approx(16.0625)


@given(st.complex_numbers(max_magnitude=5), st.sampled_from([0, 1, 2]))
def test_pacs_norm_positive(alpha, m):
    assert pacs_norm(PacsSpec(alpha, m)) > 0


def test_pacs_spec_validation():
    with pytest.raises(UnsupportedOrderError):
        PacsSpec(0.5, 3)
    with pytest.raises(ValueError):
        PacsSpec(complex(float("inf"), 0), 1)


def test_channel_validation():
    with pytest.raises(InvalidChannelError):
        ChannelParams(-0.1, 0)
    with pytest.raises(InvalidChannelError):
        ChannelParams(0.1, -1)
    with pytest.raises(InvalidChannelError):
        ChannelParams(51, 0)


def test_thermal_values():
    g = GridSpec(-1, 1, -1, 1, 3, 3)
    assert wigner_thermal(1.0, g).values[1, 1] == pytest.approx(2 / (3 * math.pi))
    assert wigner_thermal(0.0, g).values[1, 1] == pytest.approx(2 / math.pi)
    wide = GridSpec(-8, 8, -8, 8, 641, 641)
    assert abs(integrate(wigner_thermal(1.0, wide)) - 1) < 1e-9


def test_pacs_initial_point_values():
    w1 = PacsWigner(PacsSpec(0, 1))
    assert w1(0.0, 0.0) == pytest.approx(-2 / math.pi, abs=1e-15)
    w = PacsWigner(PacsSpec(0.5, 1))
    assert w(0.25, 0.0) == pytest.approx(-2 * math.exp(-1 / 8) / (1.25 * math.pi), abs=1e-12)
    coh = PacsWigner(PacsSpec(1 + 1j, 0))
    assert coh(1.0, 1.0) == pytest.approx(2 / math.pi)


def test_tpacs_vacuum_seed_ring(grid):
    field = wigner_pacs_initial(PacsSpec(0, 2), grid)
    qq, pp = grid.mesh()
    r2 = qq ** 2 + pp ** 2
    lo, hi = (2 - math.sqrt(2)) / 4, (2 + math.sqrt(2)) / 4
    away = (np.abs(r2 - lo) > 1e-9) & (np.abs(r2 - hi) > 1e-9)
    ring = (r2 > lo) & (r2 < hi)
    np.testing.assert_array_equal((field.values < 0)[away], ring[away])
    assert field.values[240, 240] > 0


@pytest.mark.parametrize("spec", [PacsSpec(a, m) for a in (0, 0.5, 1.5, 1 - 0.7j) for m in (0, 1, 2)])
def test_initial_fields_normalised_and_bounded(grid, spec):
    f = wigner_pacs_initial(spec, grid)
    assert abs(integrate(f) - 1) < 1e-6
    assert f.within_bound()


@pytest.mark.parametrize("alpha", [0.5, 1.5, 0.3 + 0.4j])
@pytest.mark.parametrize("n", [0.0, 1.0])
def test_evolved_spacs_at_zero_time_matches_initial(grid, alpha, n):
    a = wigner_spacs_evolved(alpha, ChannelParams(0.0, n), grid).values
    b = wigner_pacs_initial(PacsSpec(alpha, 1), grid).values
    assert np.max(np.abs(a - b)) < 1e-12


def test_evolved_spacs_vanishes_at_threshold(grid):
    ch = ChannelParams(math.log(4 / 3), 1.0)
    vals = wigner_spacs_evolved(0.5, ch, grid).values
    assert abs(vals.min()) < 1e-6


def test_evolved_spacs_long_time_is_vacuum(grid):
    a = wigner_spacs_evolved(0.8 + 0.3j, ChannelParams(50.0, 0.0), grid).values
    assert np.max(np.abs(a - wigner_thermal(0.0, grid).values)) < 1e-6


@pytest.mark.parametrize("alpha,n,t", [(0.5, 1, 0.1), (1.5, 0.5, 0.2), (0.1, 2, 0.05), (0.4 - 0.6j, 0.3, 0.3)])
def test_evolved_spacs_normalised_bounded(grid, alpha, n, t):
    f = wigner_spacs_evolved(alpha, ChannelParams(t, n), grid)
    assert abs(integrate(f) - 1) < 1e-6
    assert f.within_bound()


@pytest.mark.parametrize("alpha,n,t", [(0.5, 1, 0.1), (1.5, 0.5, 0.2), (1 + 1j, 0, 0.4), (0.5, 1, 0.3)])
def test_negative_set_is_predicted_disc(grid, alpha, n, t):
    ch = ChannelParams(t, n)
    qq, pp = grid.mesh()
    vals = spacs_evolved(alpha, ch, qq, pp)
    pred = in_spacs_negative_disc(alpha, ch, qq, pp)
    clear = np.abs(vals) > 1e-14
    np.testing.assert_array_equal((vals < 0)[clear], pred[clear])
    disc = spacs_negative_disc(alpha, ch)
    assert (disc is None) == (ch.c_squared >= 1)


@given(st.floats(0, 20))
def test_disc_closes_exactly_at_threshold(n):
    t = math.log((2 + 2 * n) / (1 + 2 * n))
    assert ChannelParams(t, n).c_squared == pytest.approx(1.0, rel=1e-12)
