"""Unit tests for TOML configuration parsing and validation."""
import copy

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stochwave import config as C


def test_defaults_validate():
    cfg = C.validate({})
    assert cfg.dim == 1
    assert cfg.kernel.family == "white"
    assert cfg.coeff_kind == "lipschitz"
    assert cfg.grid.n == 256
    assert cfg.T == 1.0
    assert cfg.levels == (4.0, 8.0, 16.0, 32.0)


def test_normalize_idempotent():
    raw = {"dimension": 2, "kernel": {"family": "riesz", "beta": 1.0},
           "grid": {"n": 64}}
    once = C.normalize(raw)
    twice = C.normalize(copy.deepcopy(once))
    assert once == twice


@settings(max_examples=30, deadline=None)
@given(dim=st.sampled_from([1, 2, 3]), n=st.sampled_from([16, 64, 256]),
       T=st.floats(0.25, 2.0))
def test_normalize_idempotent_property(dim, n, T):
    raw = {"dimension": dim, "grid": {"n": n, "T": T}}
    once = C.normalize(raw)
    assert C.normalize(copy.deepcopy(once)) == once


def test_light_cone_rejection():
    raw = {"grid": {"L": 4.0, "T": 2.0}, "observation": {"radius": 1.0}}
    with pytest.raises(C.ConfigError, match="light-cone"):
        C.validate(raw)


def test_white_noise_needs_d1():
    raw = {"dimension": 2}          # default kernel is white
    with pytest.raises(C.ConfigError):
        C.validate(raw)


def test_unknown_kernel_family_rejected():
    with pytest.raises(C.ConfigError):
        C.validate({"kernel": {"family": "cauchy"}})


def test_levels_must_increase():
    with pytest.raises(C.ConfigError, match="levels"):
        C.validate({"experiment": {"levels": [4.0, 4.0, 8.0]}})
    with pytest.raises(C.ConfigError, match="levels"):
        C.validate({"experiment": {"levels": [8.0, 4.0]}})


def test_moment_orders_must_be_at_least_two():
    with pytest.raises(C.ConfigError, match="p"):
        C.validate({"experiment": {"p": [1.0]}})


def test_coverage_advisory_d1_large_delta():
    raw = {"coeff": {"kind": "superlinear", "delta": 2.5, "a": 0.1}}
    cfg = C.validate(raw)
    assert any("requires delta < 2: NOT covered" in a for a in cfg.advisories)


def test_coverage_advisory_d2_satisfied():
    raw = {"dimension": 2,
           "kernel": {"family": "riesz", "beta": 1.0},
           "coeff": {"kind": "superlinear", "delta": 0.4, "a": 0.05}}
    cfg = C.validate(raw)
    assert any("domination" in a and "satisfied" in a for a in cfg.advisories)
    assert any("delta < 1/2" in a for a in cfg.advisories)


def test_lipschitz_advisory():
    cfg = C.validate({})
    assert any("Lipschitz" in a for a in cfg.advisories)


def test_lag_advisory():
    cfg = C.validate({"grid": {"n": 16},
                      "experiment": {"lags": [1, 2, 4, 8]}})
    assert any("lags" in a for a in cfg.advisories)


def test_reference_config_round_trips(tmp_path):
    text = C.reference_config()
    p = tmp_path / "ref.toml"
    p.write_text(text)
    raw = C.load_config(p)
    cfg = C.validate(raw)
    assert cfg.dim in (1, 2, 3)
