"""Radial panel rules, spherical pairings, ball and region integrators."""

import math

import numpy as np
import pytest

from bergman_lab import geometry, holo, quadrature
from bergman_lab.errors import ConfigError, DegenerateRegionError, DomainError
from bergman_lab.weights import RadialWeight


def test_gauss_legendre_cache_basics():
    x, w = quadrature.gauss_legendre(16)
    assert abs(w.sum() - 2.0) < 1e-14
    assert abs((w @ x ** 2) - 2 / 3) < 1e-14
    x2, w2 = quadrature.gauss_legendre(16)
    assert x2 is x and w2 is w


def test_radial_weighted_constant_weight_gives_interval_length():
    w = RadialWeight.power(0.0)
    for a in (0.0, 0.3, 1 - 2.0 ** -20):
        assert abs(quadrature.radial_weighted(w, None, a) - (1 - a)) < 1e-12


def test_radial_weighted_polynomial_oracle():
    # Int_0^1 t^2 (1 - t^2) dt = 1/3 - 1/5
    w = RadialWeight.power(1.0)
    got = quadrature.radial_weighted(w, lambda t: t ** 2)
    assert abs(got - 2 / 15) < 1e-13


def test_radial_weighted_agrees_with_exact_tail_mass():
    # body panels plus the anchored sliver must reproduce the closed form
    w = RadialWeight.power(2.5)
    for a in (0.0, 0.5, 0.99):
        got = quadrature.radial_weighted(w, None, a)
        assert abs(got - w.tail_mass(a)) < 1e-10 * max(w.tail_mass(a), 1)
    # the logpower family is singular at 1; on deep lower endpoints the
    # mapped nodes t = a + (1-a) u round onto the absolute float grid, so
    # the implied 1 - t (hence the weight value) carries a small relative
    # perturbation in the deepest panels. Tight where nodes are exact,
    # honestly looser at a = 0.99.
    w = RadialWeight.logpower(2.0)
    for a, tol in ((0.0, 2e-9), (0.5, 1e-9), (0.99, 2e-5)):
        got = quadrature.radial_weighted(w, None, a)
        assert abs(got - w.tail_mass(a)) < tol * w.tail_mass(a)


def test_radial_weighted_error_estimate():
    # the reported error is the coarse/fine disagreement, conservative by
    # design (it is dominated by the coarse run)
    w = RadialWeight.logpower(1.5)
    val, err = quadrature.radial_weighted(w, lambda t: t, 0.2, with_error=True)
    assert 0 <= err < 1e-5 * val
    # t in [0.2, 1) brackets the integral between 0.2 and 1 tail masses
    assert 0.2 * w.tail_mass(0.2) < val < w.tail_mass(0.2)


def test_radial_weighted_degenerate_endpoint():
    w = RadialWeight.power(0.0)
    assert quadrature.radial_weighted(w, None, 1.0) == 0.0
    with pytest.raises(DomainError):
        quadrature.radial_weighted(w, None, 1.5)


def test_integrate_radial_log_singularity():
    # Int_0^1 log(1/t) dt = 1; the dyadic refinement handles the endpoint
    got = quadrature.integrate_radial(lambda t: np.log(1 / t))
    assert abs(got - 1.0) < 1e-6
    assert abs(quadrature.integrate_radial(lambda t: t ** 3) - 0.25) < 1e-10


def test_sphere_monomial_pairing_oracles():
    assert quadrature.sphere_monomial_pairing((1, 1), (1, 1), 2) == pytest.approx(1 / 6, abs=1e-15)
    assert quadrature.sphere_monomial_pairing((2, 0), (2, 0), 2) == pytest.approx(1 / 3, abs=1e-15)
    assert quadrature.sphere_monomial_pairing((1, 0), (0, 1), 2) == 0.0
    # on the circle every |zeta^k|^2 averages to 1
    assert quadrature.sphere_monomial_pairing((5,), (5,), 1) == 1.0
    with pytest.raises(DomainError):
        quadrature.sphere_monomial_pairing((1,), (1, 0), 2)


def test_seeded_directions_are_deterministic_and_prefix_stable():
    a = quadrature.seeded_directions(2, 16, 7)
    b = quadrature.seeded_directions(2, 16, 7)
    assert np.array_equal(a, b)
    lo = quadrature.seeded_directions(3, 8, 5, low_discrepancy=True)
    hi = quadrature.seeded_directions(3, 16, 5, low_discrepancy=True)
    assert np.array_equal(hi[:8], lo)
    assert np.allclose(np.linalg.norm(hi, axis=1), 1.0, atol=1e-12)


def test_integrate_ball_exact_monomial_mode():
    # Int_B |z1|^2 dV = 1/3 in C^2
    f = holo.Monomial((1, 0))
    spec = quadrature.QuadratureSpec(
        spherical=quadrature.SphericalRule(mode="exact_monomial"))
    est = quadrature.integrate_ball(f, None, spec)
    assert abs(est.value - 1 / 3) < 1e-12
    assert est.error == 0.0


def test_integrate_ball_monte_carlo_matches_exact():
    spec = quadrature.QuadratureSpec(
        spherical=quadrature.SphericalRule(mode="monte_carlo", samples=4096, seed=11))
    w = RadialWeight.power(1.0)
    est = quadrature.integrate_ball(
        lambda Z: np.abs(Z[:, 0]) ** 2, w, spec, n=2)
    # exact value: 2n Int t^(2n+1) (1-t^2) dt * mean|zeta_1|^2 = 1/2 * (1/4 - 1/6) * ...
    f = holo.Monomial((1, 0))
    exact = quadrature.integrate_ball(
        f, w, quadrature.QuadratureSpec(
            spherical=quadrature.SphericalRule(mode="exact_monomial"))).value
    assert abs(est.value - exact) < 5 * est.error + 1e-12
    assert est.seed == 11


def test_integrate_ball_mode_mismatch_raises():
    spec = quadrature.QuadratureSpec(
        spherical=quadrature.SphericalRule(mode="exact_monomial"))
    with pytest.raises(ConfigError):
        quadrature.integrate_ball(lambda Z: np.abs(Z[:, 0]), None, spec)
    with pytest.raises(ConfigError):
        quadrature.integrate_ball(lambda Z: np.abs(Z[:, 0]), None,
                                  quadrature.DEFAULT_SPEC)  # no dimension


def test_integrate_region_block_against_exact_mass():
    from bergman_lab.weights import block_mass
    w = RadialWeight.power(0.5)
    for n, amag in ((1, 0.6), (2, 0.8)):
        a = np.zeros(n, dtype=complex)
        a[0] = amag
        block = geometry.Block(a, 0.0)
        spec = quadrature.QuadratureSpec(
            region=quadrature.RegionRule(samples=60000, seed=3))
        est = quadrature.integrate_region(lambda Z: np.ones(len(Z)), block, w, spec)
        exact = block_mass(w, block)
        assert abs(est.value - exact) < 5 * est.error + 1e-12
        assert est.error < 0.05 * exact


def test_integrate_region_is_bit_deterministic():
    tube = geometry.Tube(np.array([1.0 + 0j, 0.0]), 0.4)
    spec = quadrature.QuadratureSpec(region=quadrature.RegionRule(samples=8000, seed=9))
    w = RadialWeight.power(0.0)
    e1 = quadrature.integrate_region(lambda Z: np.abs(Z[:, 0]), tube, w, spec)
    e2 = quadrature.integrate_region(lambda Z: np.abs(Z[:, 0]), tube, w, spec)
    assert e1.value == e2.value and e1.error == e2.error


def test_integrate_region_rejects_zero_volume_regions():
    cap = geometry.Cap(np.array([1.0 + 0j]), 0.5)
    with pytest.raises(DegenerateRegionError):
        quadrature.integrate_region(lambda Z: np.ones(len(Z)), cap, None)


def test_region_rule_floor_on_samples():
    with pytest.raises(ConfigError):
        quadrature.RegionRule(samples=500)


def test_admissible_sample_set_weights_integrate_volume():
    # with F = 1 the weighted sum estimates vol(Gamma_{e1}) which must be
    # positive and below the ball volume 1
    pts, wgt = quadrature.admissible_sample_set(2, 4.0, 20000, seed=2)
    reg = geometry.Admissible(np.array([1.0 + 0j, 0.0]), 4.0)
    assert geometry.contains_many(reg, pts).all()
    vol = wgt.sum()
    assert 0 < vol < 1


def test_tube_sample_set_membership():
    pts, wgt = quadrature.tube_sample_set(1, 0.3, 5000, seed=4)
    tube = geometry.Tube(np.array([1.0 + 0j]), 0.3)
    assert geometry.contains_many(tube, pts).all()
    assert np.all(wgt > 0)


def test_quadrature_spec_round_trip_and_digest():
    spec = quadrature.QuadratureSpec(
        radial=quadrature.RadialRule(order=8, depth_zero=12, depth_one=20),
        spherical=quadrature.SphericalRule(mode="monte_carlo", samples=512, seed=1),
        region=quadrature.RegionRule(samples=2000, seed=1, boundary_bias=0.25),
    )
    back = quadrature.QuadratureSpec.from_json(spec.to_json())
    assert back == spec
    assert back.digest() == spec.digest()
    assert spec.with_seed(9).spherical.seed == 9
    assert spec.with_seed(9).radial == spec.radial
