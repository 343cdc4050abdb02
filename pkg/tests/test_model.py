"""Model construction, unit conversion, and config parsing."""

import numpy as np
import pytest

from pairgap import (
    ModelParams,
    PairingModel,
    Spectrum,
    epsilon,
    make_model,
    params_from_config,
    rescale,
)


def test_make_model_small():
    m = make_model(ModelParams(n_levels=3, delta=1.0, lam=2.0, b=0))
    assert np.array_equal(m.xi, [1.0, 2.0, 3.0])
    assert m.v == 2.0
    assert m.n == 3


def test_make_model_ev_scale():
    m = make_model(ModelParams(n_levels=10, delta=2e-7, lam=10.0, b=0))
    assert m.v == pytest.approx(2e-6, rel=1e-15)
    assert m.xi[0] == pytest.approx(2e-7, rel=1e-15)
    assert m.xi[-1] == pytest.approx(2e-6, rel=1e-15)


def test_make_model_offset():
    m = make_model(ModelParams(n_levels=2, delta=1.0, lam=1.0, b=5))
    assert np.array_equal(m.xi, [6.0, 7.0])
    assert m.v == 1.0


def test_make_model_rejects_bad_params():
    with pytest.raises(ValueError):
        ModelParams(n_levels=0, delta=1.0, lam=1.0, b=0)
    with pytest.raises(ValueError):
        ModelParams(n_levels=2, delta=0.0, lam=1.0, b=0)
    with pytest.raises(ValueError):
        ModelParams(n_levels=2, delta=1.0, lam=-1.0, b=0)
    with pytest.raises(ValueError):
        ModelParams(n_levels=2, delta=1.0, lam=1.0, b=-1)


def test_epsilon_values():
    m = PairingModel(xi=np.array([1.0, 2.0, 3.0]), v=2.0)
    assert epsilon(m, 1) == -1.0
    assert epsilon(m, 2) == 0.0
    assert epsilon(m, 3) == 1.0


def test_epsilon_zero_coupling():
    m = PairingModel(xi=np.array([4.0, 7.0]), v=0.0)
    assert epsilon(m, 1) == 4.0
    assert epsilon(m, 2) == 7.0


def test_epsilon_index_bounds():
    m = PairingModel(xi=np.array([1.0, 2.0]), v=1.0)
    with pytest.raises(IndexError):
        epsilon(m, 0)
    with pytest.raises(IndexError):
        epsilon(m, 3)


def test_epsilon_closed_identity():
    # epsilon(m) = (b + m - lambda) * delta; exact when delta = 1
    for lam in (2.0, 7.0):
        for b in (0, 4):
            m = make_model(ModelParams(n_levels=6, delta=1.0, lam=lam, b=b))
            for k in range(1, 7):
                assert epsilon(m, k) == (b + k) - lam


def test_rescale_identity_and_products():
    m = PairingModel(xi=np.array([1.0, 2.0]), v=1.0)
    same = rescale(m, 1.0)
    assert np.array_equal(same.xi, m.xi) and same.v == m.v
    small = rescale(m, 2e-7)
    assert np.array_equal(small.xi, [2e-7, 4e-7])
    assert small.v == 2e-7


def test_rescale_round_trip():
    m = PairingModel(xi=np.array([1.0, 2.0, 5.0]), v=0.7)
    back = rescale(rescale(m, 3.7e-5), 1.0 / 3.7e-5)
    assert np.allclose(back.xi, m.xi, rtol=1e-15)
    assert back.v == pytest.approx(m.v, rel=1e-15)


def test_rescale_group_action():
    m = PairingModel(xi=np.array([1.0, 3.0]), v=2.0)
    one = rescale(m, 6e-4)
    two = rescale(rescale(m, 2e-2), 3e-2)
    assert np.allclose(one.xi, two.xi, rtol=1e-15)
    assert one.v == pytest.approx(two.v, rel=1e-15)


def test_rescale_rejects_nonpositive():
    m = PairingModel(xi=np.array([1.0, 2.0]), v=1.0)
    with pytest.raises(ValueError):
        rescale(m, 0.0)
    with pytest.raises(ValueError):
        rescale(m, -2.0)


def test_model_requires_strictly_ascending_levels():
    with pytest.raises(ValueError):
        PairingModel(xi=np.array([2.0, 1.0]), v=1.0)
    with pytest.raises(ValueError):
        PairingModel(xi=np.array([1.0, 1.0]), v=1.0)


def test_model_degenerate_escape_hatch():
    m = PairingModel(xi=np.array([5.0, 5.0, 5.0]), v=1.0, allow_degenerate=True)
    assert m.n == 3
    # still rejects decreasing sequences
    with pytest.raises(ValueError):
        PairingModel(xi=np.array([5.0, 4.0]), v=1.0, allow_degenerate=True)


def test_model_rejects_negative_coupling():
    with pytest.raises(ValueError):
        PairingModel(xi=np.array([1.0, 2.0]), v=-0.5)


def test_model_levels_immutable():
    m = PairingModel(xi=np.array([1.0, 2.0]), v=1.0)
    with pytest.raises(ValueError):
        m.xi[0] = 9.0


def test_spectrum_validation():
    Spectrum(values=np.array([1.0, 1.0, 2.0]), solver="oracle")  # ties fine
    with pytest.raises(ValueError):
        Spectrum(values=np.array([2.0, 1.0]), solver="oracle")
    with pytest.raises(ValueError):
        Spectrum(values=np.array([1.0, 2.0]), solver="lapack")


def test_params_from_config_v_ev():
    params, delta_ev = params_from_config({"n": 20, "lambda": 10.0, "v_ev": 2e-6})
    assert params.n_levels == 20
    assert params.lam == 10.0
    assert params.b == 0
    assert params.delta == 1.0
    assert delta_ev == pytest.approx(2e-7, rel=1e-15)


def test_params_from_config_delta_ev():
    params, delta_ev = params_from_config(
        {"n": 3, "lambda": 2.0, "delta_ev": 1e-6, "b": 4})
    assert params.b == 4
    assert delta_ev == 1e-6


def test_params_from_config_rejects_bad_shapes():
    with pytest.raises(ValueError):
        params_from_config({"n": 3, "lambda": 2.0})
    with pytest.raises(ValueError):
        params_from_config(
            {"n": 3, "lambda": 2.0, "delta_ev": 1e-6, "v_ev": 2e-6})
    with pytest.raises(ValueError):
        params_from_config(
            {"n": 3, "lambda": 2.0, "v_ev": 2e-6, "spacing": 1.0})
