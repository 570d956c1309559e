import io
import math

import numpy as np
import pytest
from scipy.optimize import brentq

from wignerpacs import (GridSpec, NonFiniteFieldError, PacsSpec, WignerField, integrate,
                        min_location, negative_volume, read_field_csv, wigner_pacs_initial,
                        wigner_thermal, write_field_csv)

FOCK1_PNW = 2 * math.exp(-0.5) - 1


def test_gridspec_validation():
    with pytest.raises(ValueError):
        GridSpec(1, 0, 0, 1, 5, 5)
    with pytest.raises(ValueError):
        GridSpec(0, 1, 0, 1, 1, 5)
    g = GridSpec.default()
    assert g.hq == pytest.approx(0.025) and g.hp == pytest.approx(0.025)


def test_centred_grid_has_exact_middle_node():
    g = GridSpec.centred(0.3, -0.2, 0.05, 0.005)
    assert g.nq == 21
    assert g.q[10] == pytest.approx(0.3, abs=1e-15)
    assert g.p[10] == pytest.approx(-0.2, abs=1e-15)


@pytest.mark.parametrize("n", [2, 3, 17])
def test_integrate_constant_is_exact(n):
    g = GridSpec(0, 1, 0, 1, n, n)
    assert integrate(WignerField(g, np.ones((n, n)))) == pytest.approx(1.0, abs=1e-15)


def test_integrate_vacuum(grid):
    vac = wigner_thermal(0.0, grid)
    assert abs(integrate(vac) - 1.0) < 1e-9
    assert abs(integrate(-vac) + 1.0) < 1e-9


def test_integrate_rejects_non_finite():
    g = GridSpec(0, 1, 0, 1, 3, 3)
    vals = np.zeros((3, 3))
    vals[1, 1] = np.nan
    with pytest.raises(NonFiniteFieldError, match="non-finite field"):
        integrate(WignerField(g, vals))
    with pytest.raises(NonFiniteFieldError):
        negative_volume(WignerField(g, vals))


def test_field_is_read_only(grid):
    f = wigner_thermal(0.0, grid)
    with pytest.raises(ValueError):
        f.values[0, 0] = 1.0


def test_negative_volume_vacuum_is_zero(grid):
    r = negative_volume(wigner_thermal(0.0, grid))
    assert r.p_nw == 0.0 and r.negative_cells == 0


def test_negative_volume_fock1(grid):
    r = negative_volume(wigner_pacs_initial(PacsSpec(0, 1), grid))
    assert abs(r.p_nw - FOCK1_PNW) < 1e-4
    assert r.negative_cells > 0
    assert r.grid == grid


def test_negative_volume_sign_flip(grid):
    vac = wigner_thermal(0.0, grid)
    assert negative_volume(-vac).p_nw == pytest.approx(abs(integrate(vac)), abs=1e-12)


def test_negative_volume_translation_invariant(grid):
    f0 = negative_volume(wigner_pacs_initial(PacsSpec(0.5, 1), grid)).p_nw
    f1 = negative_volume(wigner_pacs_initial(PacsSpec(0.5, 1), grid.shifted(dq=0.5))).p_nw
    assert abs(f0 - f1) < 1e-5


@pytest.mark.parametrize("spec", [PacsSpec(0, 1), PacsSpec(0.5, 1), PacsSpec(1.5, 1),
                                  PacsSpec(0.5, 2), PacsSpec(1.5, 2)])
def test_refinement_changes_pnw_little(grid, spec):
    coarse = negative_volume(wigner_pacs_initial(spec, grid)).p_nw
    fine = negative_volume(wigner_pacs_initial(spec, grid.refined())).p_nw
    assert abs(coarse - fine) < 1e-5


def test_refinement_estimate_reported(grid):
    r = negative_volume(wigner_pacs_initial(PacsSpec(0, 1), grid))
    assert 0 < r.refinement_estimate < 1e-4


def test_negativity_zero_iff_no_negative_cells(grid):
    for spec in (PacsSpec(1.0, 0), PacsSpec(0.3, 1)):
        r = negative_volume(wigner_pacs_initial(spec, grid))
        assert (r.p_nw == 0) == (r.negative_cells == 0)


def test_min_location_fock1(grid):
    q, p, v = min_location(wigner_pacs_initial(PacsSpec(0, 1), grid))
    assert (q, p) == (pytest.approx(0, abs=1e-12), pytest.approx(0, abs=1e-12))
    assert v == pytest.approx(-2 / math.pi, abs=1e-9)


def test_min_location_vacuum_positive(grid):
    assert min_location(wigner_thermal(0.0, grid))[2] > 0


def test_min_location_spacs_half():
    # continuous argmin along the real axis: d/dq [((2q-a)^2 - 1) e^{-2(q-a)^2}] = 0
    a = 0.5
    q_star = brentq(lambda q: (2 * q - a) - ((2 * q - a) ** 2 - 1) * (q - a), 0.2, 0.45)
    w_star = 2 * ((2 * q_star - a) ** 2 - 1) * math.exp(-2 * (q_star - a) ** 2) / (math.pi * 1.25)
    g = GridSpec.default()
    q, p, v = min_location(wigner_pacs_initial(PacsSpec(a, 1), g))
    assert p == pytest.approx(0, abs=1e-12)
    assert abs(q - q_star) <= g.hq / 2
    assert w_star <= v < w_star + 1e-3
    # the point where the Laguerre factor vanishes is not the minimum
    assert v < -2 * math.exp(-1 / 8) / (1.25 * math.pi)


def test_min_location_tie_breaks_row_major():
    g = GridSpec(0, 1, 0, 1, 3, 3)
    vals = np.zeros((3, 3))
    vals[2, 0] = vals[1, 2] = -1.0
    q, p, v = min_location(WignerField(g, vals))
    assert (q, p, v) == (0.5, 1.0, -1.0)


def test_csv_roundtrip():
    g = GridSpec(-1, 1, -2, 2, 5, 7)
    f = wigner_pacs_initial(PacsSpec(0.3 + 0.2j, 2), g)
    buf = io.StringIO()
    write_field_csv(f, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == "q,p,w"
    assert len(text.splitlines()) == 1 + 5 * 7
    # q-major order
    assert text.splitlines()[1].startswith("-1,-2,")
    assert text.splitlines()[2].startswith("-1,-1.33")
    back = read_field_csv(io.StringIO(text))
    assert back.spec == g
    np.testing.assert_array_equal(back.values, f.values)
