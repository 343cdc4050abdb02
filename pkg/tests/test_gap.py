"""Gap extraction: closed form against a bisection oracle, and the
mean-field equation against a brute-force scan oracle."""

import math

import numpy as np
import pytest

from pairgap import (
    CouplingEstimate,
    ModelParams,
    PairingModel,
    estimate_coupling,
    excitation_energy,
    gap_from_levels,
    gap_from_spectrum,
    make_model,
    rescale,
    solve_gap_equation,
    sub1_eigenvalues,
)
from pairgap.gap import METHOD_EQN, METHOD_SUB1


def bisect_gap_oracle(xi1, xi2, d, iters=200):
    """Solve the defining two-level equation by plain bisection.

    Shares nothing with the closed form: picks the branch from the size
    of |d|, brackets the monotone branch function, and halves.  Returns
    None when no real solution exists.
    """
    if d >= 0:
        return None
    if -d <= xi2 - xi1:
        f = lambda x: (math.hypot(xi1, x) - math.hypot(xi2, x)) - d
    elif -d >= xi1 + xi2:
        f = lambda x: (math.hypot(xi1, x) + math.hypot(xi2, x)) + d
    else:
        return None
    lo, hi = 0.0, max(1e3, 2.0 * abs(d))
    if f(lo) > 0 or f(hi) < 0:
        return None
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# excitation energy and coupling estimate
# ---------------------------------------------------------------------------

def test_excitation_energy_basics():
    assert excitation_energy(0.0, 2.5) == 2.5
    assert excitation_energy(3.0, 4.0) == 5.0
    assert excitation_energy(-3.0, 4.0) == 5.0
    assert excitation_energy(7.0, 0.0) == 7.0
    assert excitation_energy(-7.0, 0.0) == 7.0
    with pytest.raises(ValueError):
        excitation_energy(1.0, -0.1)


def test_estimate_coupling():
    assert estimate_coupling(CouplingEstimate(g0=1e5, r=0.2, debye_ev=0.03)) \
        == pytest.approx(2e-6, rel=1e-15)
    assert estimate_coupling(CouplingEstimate(g0=1e5, r=0.3, debye_ev=0.03)) \
        == pytest.approx(3e-6, rel=1e-15)
    assert estimate_coupling(CouplingEstimate(g0=1.0, r=0.5, debye_ev=1.0)) \
        == 0.5


def test_coupling_estimate_validation():
    with pytest.raises(ValueError):
        CouplingEstimate(g0=0.0, r=0.2, debye_ev=0.03)
    with pytest.raises(ValueError):
        CouplingEstimate(g0=1e5, r=-0.1, debye_ev=0.03)
    with pytest.raises(ValueError):
        CouplingEstimate(g0=1e5, r=1.0, debye_ev=0.03)
    with pytest.raises(ValueError):
        CouplingEstimate(g0=1e5, r=0.2, debye_ev=0.0)


# ---------------------------------------------------------------------------
# two-level closed form
# ---------------------------------------------------------------------------

def test_gap_round_trip_unit():
    d = math.sqrt(2.0) - math.sqrt(5.0)
    r = gap_from_levels(1.0, 2.0, d)
    assert r.ok and r.method == METHOD_SUB1
    assert r.delta == pytest.approx(1.0, rel=1e-12)
    assert abs(r.residual) <= 1e-10 * abs(d)


def test_gap_window_has_no_real_root():
    r = gap_from_levels(1.0, 2.0, -1.5)
    assert r.outcome == "no-real-root"
    assert r.delta is None


def test_gap_frozen_quarter_case():
    r = gap_from_levels(1.0, 2.0, -0.5)
    assert r.ok
    assert r.delta == pytest.approx(math.sqrt(6.5625), rel=1e-12)
    oracle = bisect_gap_oracle(1.0, 2.0, -0.5)
    assert r.delta == pytest.approx(oracle, rel=1e-9)


def test_gap_zero_at_difference_boundary():
    r = gap_from_levels(1.0, 2.0, -1.0)
    assert r.ok
    assert r.delta == 0.0


def test_gap_zero_at_sum_boundary():
    r = gap_from_levels(1.0, 2.0, -3.0)
    assert r.ok
    assert r.delta == 0.0


def test_gap_strong_coupling_branch():
    delta_true = 3.0
    d = -(math.hypot(1.0, delta_true) + math.hypot(2.0, delta_true))
    r = gap_from_levels(1.0, 2.0, d)
    assert r.ok
    assert r.delta == pytest.approx(delta_true, rel=1e-12)
    assert r.delta == pytest.approx(bisect_gap_oracle(1.0, 2.0, d), rel=1e-9)


def test_gap_rejects_nonnegative_d():
    assert gap_from_levels(1.0, 2.0, 0.0).outcome == "no-real-root"
    assert gap_from_levels(1.0, 2.0, 0.3).outcome == "no-real-root"


def test_gap_window_edges():
    assert gap_from_levels(1.0, 2.0, -1.0 - 1e-9).outcome == "no-real-root"
    assert gap_from_levels(1.0, 2.0, -3.0 + 1e-9).outcome == "no-real-root"


def test_gap_input_validation():
    with pytest.raises(ValueError):
        gap_from_levels(0.0, 2.0, -0.5)
    with pytest.raises(ValueError):
        gap_from_levels(-1.0, 2.0, -0.5)
    with pytest.raises(ValueError):
        gap_from_levels(2.0, 1.0, -0.5)
    with pytest.raises(ValueError):
        gap_from_levels(1.0, 2.0, float("nan"))


def test_gap_round_trip_random_difference_branch():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        xi1 = rng.uniform(0.5, 10.0)
        xi2 = xi1 + rng.uniform(0.1, 10.0)
        delta_true = rng.uniform(0.01, 10.0)
        d = math.hypot(xi1, delta_true) - math.hypot(xi2, delta_true)
        r = gap_from_levels(xi1, xi2, d)
        assert r.ok
        assert r.delta == pytest.approx(delta_true, rel=1e-9)


def test_gap_round_trip_random_sum_branch():
    rng = np.random.default_rng(43)
    for _ in range(200):
        xi1 = rng.uniform(0.5, 10.0)
        xi2 = xi1 + rng.uniform(0.1, 10.0)
        delta_true = rng.uniform(0.01, 10.0)
        d = -(math.hypot(xi1, delta_true) + math.hypot(xi2, delta_true))
        r = gap_from_levels(xi1, xi2, d)
        assert r.ok
        assert r.delta == pytest.approx(delta_true, rel=1e-9)


def test_gap_closed_form_matches_bisection_oracle():
    rng = np.random.default_rng(44)
    for _ in range(300):
        xi1 = rng.uniform(0.5, 5.0)
        xi2 = xi1 + rng.uniform(0.1, 5.0)
        if rng.random() < 0.5:
            d = -rng.uniform(0.0, xi2 - xi1)
        else:
            d = -(xi1 + xi2) - rng.uniform(0.0, 10.0)
        oracle = bisect_gap_oracle(xi1, xi2, d)
        r = gap_from_levels(xi1, xi2, d)
        assert r.ok == (oracle is not None)
        if r.ok and oracle > 1e-6:
            assert r.delta == pytest.approx(oracle, rel=1e-9, abs=1e-9)


# ---------------------------------------------------------------------------
# spectrum route
# ---------------------------------------------------------------------------

def _model(n, lam, b=0):
    return make_model(ModelParams(n_levels=n, delta=1.0, lam=lam, b=b))


def test_spectrum_route_agrees_with_equation_n20():
    m = _model(20, 10.0)
    spectral = gap_from_spectrum(m, sub1_eigenvalues(m))
    meanfield = solve_gap_equation(m)
    assert spectral.ok and meanfield.ok
    assert abs(spectral.delta - meanfield.delta) / meanfield.delta <= 0.05


def test_spectrum_route_no_root_beyond_critical_offset():
    m = _model(10, 10.0, b=60)
    r = gap_from_spectrum(m, sub1_eigenvalues(m))
    assert r.outcome == "no-real-root"


def test_spectrum_route_zero_coupling_boundary():
    m = PairingModel(xi=np.array([1.0, 2.0, 3.0]), v=0.0)
    r = gap_from_spectrum(m, sub1_eigenvalues(m))
    assert r.ok
    assert r.delta == 0.0


def test_spectrum_route_needs_two_levels():
    m = PairingModel(xi=np.array([3.0]), v=1.0)
    with pytest.raises(ValueError):
        gap_from_spectrum(m, sub1_eigenvalues(m))


def test_spectrum_route_rejects_mismatched_spectrum():
    m = _model(5, 2.0)
    other = sub1_eigenvalues(_model(4, 2.0))
    with pytest.raises(ValueError):
        gap_from_spectrum(m, other)


# ---------------------------------------------------------------------------
# mean-field gap equation
# ---------------------------------------------------------------------------

def test_gap_equation_single_level_closed_form():
    r = solve_gap_equation(PairingModel(xi=np.array([3.0]), v=10.0))
    assert r.ok and r.method == METHOD_EQN
    assert r.delta == pytest.approx(4.0, rel=1e-12)


def test_gap_equation_no_solution():
    r = solve_gap_equation(PairingModel(xi=np.array([3.0]), v=2.0))
    assert r.outcome == "no-solution"
    assert r.delta is None


def test_gap_equation_zero_gap_boundary():
    r = solve_gap_equation(PairingModel(xi=np.array([3.0]), v=6.0))
    assert r.ok
    assert r.delta == 0.0


def test_gap_equation_rejects_zero_level():
    m = PairingModel(xi=np.array([0.0, 1.0]), v=1.0)
    with pytest.raises(ValueError):
        solve_gap_equation(m)


def test_gap_equation_scan_oracle_n20():
    m = _model(20, 10.0)
    r = solve_gap_equation(m)
    assert r.ok

    # 1e7-point scan of the strictly decreasing right side over [0, n*v/2]
    xi2 = m.xi ** 2
    hi = 0.5 * m.v * m.n
    points = 10_000_000
    grid_step = hi / (points - 1)
    last_above = -1
    chunk = 1_000_000
    for start in range(0, points, chunk):
        x = (start + np.arange(min(chunk, points - start))) * grid_step
        rhs = 0.5 * m.v * np.sum(1.0 / np.sqrt(xi2[:, None] + x * x), axis=0)
        above = np.nonzero(rhs >= 1.0)[0]
        if above.size:
            last_above = start + above[-1]
    assert last_above >= 0
    scan_delta = last_above * grid_step
    assert abs(r.delta - scan_delta) <= grid_step


@pytest.mark.parametrize("n,lam,b", [(20, 10.0, 0), (10, 10.0, 30), (50, 5.0, 0)])
def test_gap_equation_residual_bound(n, lam, b):
    m = _model(n, lam, b)
    r = solve_gap_equation(m)
    assert r.ok
    rhs = 0.5 * m.v * np.sum(1.0 / np.sqrt(m.xi ** 2 + r.delta ** 2))
    assert abs(rhs - 1.0) <= 1e-10


@pytest.mark.parametrize("c", [1e-7, 1e3])
def test_gap_methods_homogeneous(c):
    m = _model(20, 10.0)
    base_eqn = solve_gap_equation(m).delta
    base_sub1 = gap_from_spectrum(m, sub1_eigenvalues(m)).delta
    scaled = rescale(m, c)
    assert solve_gap_equation(scaled).delta \
        == pytest.approx(c * base_eqn, rel=1e-9)
    assert gap_from_spectrum(scaled, sub1_eigenvalues(scaled)).delta \
        == pytest.approx(c * base_sub1, rel=1e-9)


def test_gap_equation_deterministic():
    m = _model(30, 8.0, b=3)
    assert solve_gap_equation(m).delta == solve_gap_equation(m).delta
