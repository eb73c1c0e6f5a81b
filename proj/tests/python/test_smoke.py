"""Smoke tests for the python bindings."""

import json
import math

import pytest

import secbeam as sb


@pytest.fixture
def fading():
    return sb.FadingConfig(m=5, sigma_g=2.0, sigma_h=2.0, sigma_z=2.0, n0=1.0, seed=7)


def test_sampling_is_deterministic(fading):
    a = sb.sample_channel(fading, 0)
    b = sb.sample_channel(fading, 0)
    c = sb.sample_channel(fading, 1)
    assert a.h == b.h
    assert a.h != c.h
    assert a.m == 5
    assert a.seed_tag == "seed=7;draw=0"


def test_pencil_solver_on_orthogonal_channels():
    spec = sb.PencilSpec(h=[1, 0], z=[0, 1], a=1.0, b=1.0, n0=1.0)
    result = sb.pencil_eigmax(spec)
    assert result.lambda_max == pytest.approx(2.0, rel=1e-12)
    assert abs(result.eigvec[0]) == pytest.approx(1.0, rel=1e-12)
    searched = sb.brute_force_oracle(spec, 5000, 1)
    assert searched <= result.lambda_max + 1e-9
    assert sb.rayleigh_quotient([1, 0], spec) == pytest.approx(2.0)


def test_achievable_rates_example():
    wts = sb.BeamformingWeights(w=[1, 0], u=[0, 1], alpha=0.5)
    p = sb.achievable_rates([1, 0], [0, 1], wts, 1.0)
    assert p.r_d == pytest.approx(1.0)
    assert p.r_e == pytest.approx(1.0)


def test_region_and_frontier(fading):
    r = sb.sample_channel(fading, 0)
    curve = sb.build_region(
        sb.Scheme.outer, r.h, r.z, 1.0, 1.0, sb.uniform_alpha_grid(21)
    )
    assert len(curve.samples) == 21
    assert len(curve.frontier) >= 1
    csv = sb.region_to_csv([curve])
    assert csv.startswith("scheme,alpha,R_d,R_e,on_frontier\n")

    capped = sb.apply_first_hop_cap(curve, 0.5)
    for s in capped.samples:
        assert s.rates.r_d + s.rates.r_e <= 0.5 + 1e-12


def test_scheme_points_are_consistent(fading):
    r = sb.sample_channel(fading, 3)
    rates, wts = sb.single_null_point(r.h, r.z, 1.0, 1.0, 0.5, sb.ProtectedUser.E)
    again = sb.achievable_rates(r.h, r.z, wts, 1.0)
    assert again.r_d == pytest.approx(rates.r_d, rel=1e-9)
    assert again.r_e == pytest.approx(rates.r_e, rel=1e-9)
    outer = sb.outer_bound_point(r.h, r.z, 1.0, 1.0, 0.5)
    assert outer.r_d == rates.r_d


def test_asymptotic_diagnostics(fading):
    r = sb.sample_channel(fading, 1)
    c_d, c_e = sb.high_snr_constants(r.h, r.z)
    assert c_d > 0 and c_e > 0
    slopes = sb.low_snr_slopes(r.h, r.z, 0.5, 1.0, 1e-4)
    assert slopes.tdma_d == slopes.outer_d
    assert sb.lambda_max_difference([1, 0], [0, 1]) == pytest.approx(1.0)
    gap = sb.large_m_gap(r.h, r.z, 0.5, 2.0, 1.0)
    assert 0.0 <= gap <= 1.0


def test_ensemble_and_summary_json(fading):
    cfg = sb.EnsembleConfig(
        fading=fading,
        n_draws=2,
        p_r=1.0,
        alpha_grid=sb.uniform_alpha_grid(11),
        schemes_enabled=[sb.Scheme.outer, sb.Scheme.double_null],
    )
    summary = sb.run_ensemble(cfg)
    assert summary.n_draws == 2
    doc = json.loads(sb.summary_to_json(summary))
    assert doc["n_draws"] == 2
    assert doc["unit"] == "bits"
    assert len(doc["mean_frontier"]) == 2


def test_unit_conversion(fading):
    r = sb.sample_channel(fading, 2)
    bits = sb.outer_bound_point(r.h, r.z, 1.0, 1.0, 0.5, sb.RateUnit.bits)
    nats = sb.outer_bound_point(r.h, r.z, 1.0, 1.0, 0.5, sb.RateUnit.nats)
    assert nats.r_d == pytest.approx(bits.r_d * math.log(2), rel=1e-12)


def test_json_round_trip(fading):
    r = sb.sample_channel(fading, 4)
    text = sb.realization_to_json(r)
    back = sb.realization_from_json(text)
    assert back.h == r.h
    assert sb.realization_to_json(back) == text


def test_errors_become_python_exceptions():
    with pytest.raises(ValueError):
        sb.FadingConfig(m=0, sigma_g=1, sigma_h=1, sigma_z=1, n0=1, seed=0)
    with pytest.raises(ValueError):
        sb.single_null_point([1], [1], 1.0, 1.0, 0.5, sb.ProtectedUser.E)
    with pytest.raises(ValueError):
        sb.realization_from_json("nonsense")
