import math

import numpy as np
import pytest
from scipy.linalg import eigvalsh_tridiagonal

from ltbounds import verify
from ltbounds.constants import CONJECTURED_1D_L_RATIO

PT1 = verify.PotentialSpec(kind="poschl_teller", nu=1.0)
PT2 = verify.PotentialSpec(kind="poschl_teller", nu=2.0)
GRID = verify.GridSpec(half_width=20.0, n_points=4001)


def _tridiag(pot, grid):
    h = 2.0 * grid.half_width / (grid.n_points + 1)
    x = -grid.half_width + h * np.arange(1, grid.n_points + 1)
    V = verify.potential_values(pot, x)
    diag = 2.0 / h**2 + V
    off = np.full(grid.n_points - 1, -1.0 / h**2)
    return diag, off, float(V.min())


def test_potential_spec_validation():
    with pytest.raises(ValueError):
        verify.PotentialSpec(kind="poschl_teller", nu=-1.0)
    with pytest.raises(ValueError):
        verify.PotentialSpec(kind="poschl_teller", nu=1.0, depth=2.0)
    with pytest.raises(ValueError):
        verify.PotentialSpec(kind="square_well", nu=1.0)
    with pytest.raises(ValueError):
        verify.PotentialSpec(kind="gaussian_well", depth=-2.0)
    with pytest.raises(ValueError):
        verify.PotentialSpec(kind="morse", depth=1.0)
    with pytest.raises(ValueError):
        verify.GridSpec(half_width=0.0, n_points=101)
    with pytest.raises(ValueError):
        verify.GridSpec(half_width=5.0, n_points=2)


def test_potential_values_shapes():
    x = np.linspace(-3.0, 3.0, 7)
    pt = verify.potential_values(PT1, x)
    assert pt.shape == x.shape
    assert np.all(pt <= 0.0)
    np.testing.assert_allclose(pt[3], -2.0, rtol=1e-14)  # -nu(nu+1) sech^2(0)
    sq = verify.potential_values(verify.PotentialSpec(kind="square_well", depth=3.0, width=2.0), x)
    np.testing.assert_array_equal(sq, np.where(np.abs(x) <= 1.0, -3.0, 0.0))


def test_potential_integral_closed_forms():
    # int |V|^(3/2): sech gives (nu(nu+1))^(3/2) pi / (2 w^2)
    got = verify.potential_integral(PT2)
    np.testing.assert_allclose(got, 6.0**1.5 * math.pi / 2.0, rtol=1e-10)
    g = verify.PotentialSpec(kind="gaussian_well", depth=5.0, width=2.0)
    np.testing.assert_allclose(verify.potential_integral(g),
                               5.0**1.5 * 2.0 * math.sqrt(math.pi / 1.5), rtol=1e-10)
    s = verify.PotentialSpec(kind="square_well", depth=3.0, width=2.0)
    np.testing.assert_allclose(verify.potential_integral(s), 2.0 * 3.0**1.5, rtol=1e-13)


def test_poschl_teller_exact_spectra():
    """nu = 1 binds exactly {-1}; nu = 2 binds {-4, -1}."""
    res1 = verify.discretize_and_solve(PT1, verify.GridSpec(half_width=20.0, n_points=8001))
    assert len(res1.negative_eigenvalues) == 1
    np.testing.assert_allclose(res1.negative_eigenvalues[0], -1.0, atol=1e-3)
    np.testing.assert_allclose(res1.sum_negative, 1.0, atol=1e-3)

    res2 = verify.discretize_and_solve(PT2, verify.GridSpec(half_width=20.0, n_points=8001))
    assert len(res2.negative_eigenvalues) == 2
    np.testing.assert_allclose(res2.negative_eigenvalues, (-1.0, -4.0), atol=1e-3)
    np.testing.assert_allclose(res2.sum_negative, 5.0, atol=1e-3)
    np.testing.assert_allclose(res2.sum_negative, -sum(res2.negative_eigenvalues), rtol=1e-15)


def test_eigenvalues_match_dense_solver():
    diag, off, vmin = _tridiag(PT2, GRID)
    dense = eigvalsh_tridiagonal(diag, off, select="v", select_range=(vmin - 1.0, 0.0))
    ours = verify.discretize_and_solve(PT2, GRID).negative_eigenvalues
    np.testing.assert_allclose(sorted(ours), np.sort(dense), atol=5e-9)


def test_sturm_count_against_dense_solver():
    diag, off, _ = _tridiag(PT2, GRID)
    all_eigs = eigvalsh_tridiagonal(diag, off)
    for shift in (-5.0, -3.9, -1.5, -0.5, 0.0, 1.0):
        want = int(np.sum(all_eigs < shift))
        assert verify.sturm_count_below(diag, off, shift) == want


def test_zero_potential_has_empty_spectrum():
    res = verify.discretize_and_solve(
        verify.PotentialSpec(kind="square_well", depth=0.0, width=1.0),
        verify.GridSpec(half_width=5.0, n_points=201))
    assert res.negative_eigenvalues == ()
    assert res.sum_negative == 0.0
    chk = verify.check_inequality(res, 1.456)
    assert chk.holds and chk.lhs == 0.0


def test_second_order_grid_convergence():
    sums = []
    for n in (1001, 2001, 4001):
        res = verify.discretize_and_solve(PT1, verify.GridSpec(half_width=20.0, n_points=n))
        sums.append(res.sum_negative)
    ratio = abs(sums[0] - sums[1]) / abs(sums[1] - sums[2])
    assert 3.5 < ratio < 4.5  # h^2 scheme halves h -> error / 4


def test_grid_warnings():
    with pytest.warns(verify.GridTooCoarseWarning):
        verify.discretize_and_solve(
            verify.PotentialSpec(kind="poschl_teller", nu=3.0),
            verify.GridSpec(half_width=20.0, n_points=51), check_grid=True)
    # tail truncation advisory: gaussian still sizable at the box edge
    with pytest.warns(verify.GridTooCoarseWarning):
        verify.discretize_and_solve(
            verify.PotentialSpec(kind="gaussian_well", depth=5.0, width=3.0),
            verify.GridSpec(half_width=4.0, n_points=801))


def test_check_inequality_margins():
    res = verify.discretize_and_solve(PT2, GRID)
    ok = verify.check_inequality(res, 1.456)
    assert ok.holds and ok.margin > 0.0
    np.testing.assert_allclose(ok.rhs, 1.456 * 2.0 / (3.0 * math.pi) * res.potential_integral,
                               rtol=1e-14)
    bad = verify.check_inequality(res, 1.0)
    assert not bad.holds and bad.margin < 0.0
    # the conjectured sharp ratio still clears the sharpest test case
    sharp = verify.check_inequality(res, CONJECTURED_1D_L_RATIO)
    assert sharp.holds


def test_scaling_collapses_the_ratio():
    # V_lam(x) = lam^2 V(lam x) multiplies both sides by lam^2
    ratios = []
    for lam in (0.5, 1.0, 2.0):
        pot = verify.PotentialSpec(kind="gaussian_well", depth=2.0 * lam, width=1.0 / math.sqrt(lam))
        grid = verify.GridSpec(half_width=14.0 / math.sqrt(lam), n_points=6001)
        res = verify.discretize_and_solve(pot, grid)
        ratios.append(res.sum_negative / res.potential_integral)
    np.testing.assert_allclose(ratios, ratios[1], rtol=1e-7)


def test_default_suite_composition():
    suite = verify.default_suite()
    kinds = [pot.kind for pot, _ in suite]
    assert kinds.count("poschl_teller") == 2
    assert "gaussian_well" in kinds and "square_well" in kinds
    for pot, grid in suite:
        assert grid.n_points >= 4001
        chk = verify.check_inequality(verify.discretize_and_solve(pot, grid), 1.456)
        assert chk.holds


def test_json_round_trips():
    pot = verify.PotentialSpec(kind="gaussian_well", depth=5.0, width=2.0)
    assert verify.potential_from_json(pot.to_json()) == pot
    grid = verify.GridSpec(half_width=14.0, n_points=4001)
    assert verify.grid_from_json(grid.to_json()) == grid
    res = verify.discretize_and_solve(PT1, verify.GridSpec(half_width=16.0, n_points=301))
    blob = res.to_json()
    assert blob["potential"]["kind"] == "poschl_teller"
    assert blob["sum_negative"] == res.sum_negative
    with pytest.raises(ValueError):
        verify.potential_from_json({"kind": "morse", "depth": 1.0})
    with pytest.raises(ValueError):
        verify.grid_from_json({"half_width": 5.0, "n_points": 101, "spacing": 0.1})
