"""Bergman norms, the derivative identity, area and maximal function norms."""

import math

import numpy as np
import pytest

from bergman_lab import holo, norms, quadrature
from bergman_lab.errors import DomainError, UnsupportedRegimeError
from bergman_lab.norms import (NormReport, area_norm, bergman_norm_p,
                               hardy_means, lp_equiv, lp_identity_rhs,
                               maxfun_norm, maximal_function,
                               nontangential_max, subtract_value_at_zero)
from bergman_lab.weights import RadialWeight

CONST = RadialWeight.power(0.0)


def test_norm_of_coordinate_function():
    # ||z||_2^2 = 2 Int t^3 dt = 1/2 on the disk with the flat weight
    rep = bergman_norm_p(holo.Monomial((1,)), CONST, 2.0)
    assert rep.value == pytest.approx(0.5, rel=1e-12)
    assert rep.formula_id == "bergman_p"


def test_norm_of_constants_is_the_weighted_volume():
    rep = bergman_norm_p(holo.Monomial((0, 0), 2.0), RadialWeight.power(1.0), 4.0)
    # |2|^4 * 2n Int t^(2n-1) (1-t^2) dt = 16 * 4 * (1/4 - 1/6)
    assert rep.value == pytest.approx(16 * 4 * (1 / 4 - 1 / 6), rel=1e-11)


def test_norm_odd_exponent_radial_symmetry():
    # |z(t zeta)|^3 = t^3 on the circle, so the Monte Carlo spherical factor
    # is exact here: ||z||_3^3 = 2 Int t^4 dt = 2/5
    rep = bergman_norm_p(holo.Monomial((1,)), CONST, 3.0)
    assert rep.value == pytest.approx(0.4, rel=1e-9)


def test_hardy_means():
    f = holo.Monomial((1,))
    assert hardy_means(f, 2.0, 0.75) == pytest.approx(0.75, rel=1e-14)
    assert hardy_means(f, 4.0, 0.5) == pytest.approx(0.5, rel=1e-14)
    with pytest.raises(DomainError):
        hardy_means(f, 2.0, 1.0)


def test_subtract_value_at_zero():
    f = holo.Monomial((0,), 3.0) + holo.Monomial((2,), 1.0)
    g = subtract_value_at_zero(f)
    assert complex(g.evaluate(np.zeros((1, 1), dtype=complex))[0]) == 0
    # already vanishing: returned unchanged
    h = holo.Monomial((1,))
    assert subtract_value_at_zero(h) is h


def test_identity_anchor_case():
    # f = z, p = 2, flat weight: both sides equal 1/2 exactly
    f = holo.Monomial((1,))
    lhs = bergman_norm_p(subtract_value_at_zero(f), CONST, 2.0)
    rhs = lp_identity_rhs(f, CONST, 2.0)
    assert lhs.value == pytest.approx(0.5, abs=1e-12)
    assert rhs.value == pytest.approx(0.5, abs=1e-8)


def test_identity_p4_radially_symmetric_case():
    # f = z, p = 4: ||z||_4^4 = 1/3 and the right side reduces to
    # 32 Int t^3 omega*(t) dt = 32/96 with zero spherical variance
    f = holo.Monomial((1,))
    lhs = bergman_norm_p(f, CONST, 4.0)
    rhs = lp_identity_rhs(f, CONST, 4.0)
    assert lhs.value == pytest.approx(1 / 3, rel=1e-10)
    assert rhs.value == pytest.approx(1 / 3, rel=1e-6)


def test_identity_on_random_polynomials():
    rng = np.random.default_rng(21)
    for n in (1, 2):
        for _ in range(3):
            f = holo.random_polynomial(n, 5, rng)
            lhs = bergman_norm_p(subtract_value_at_zero(f), CONST, 2.0)
            rhs = lp_identity_rhs(f, CONST, 2.0)
            assert rhs.value == pytest.approx(lhs.value, rel=1e-6)


def test_identity_rejects_small_exponents():
    with pytest.raises(UnsupportedRegimeError):
        lp_identity_rhs(holo.Monomial((1,)), CONST, 1.5)
    with pytest.raises(UnsupportedRegimeError):
        lp_equiv(holo.Monomial((1,)), CONST, 1.0, "star")


def test_identity_of_constant_function_is_zero():
    rep = lp_identity_rhs(holo.Monomial((0,), 5.0), CONST, 2.0)
    assert rep.value == 0.0 and rep.error == 0.0


def test_comparable_square_function_oracles():
    # f = z, flat weight: star variant 2 Int t^3 omega* = 1/48,
    # hat variant 2 Int t^3 (1-t)^2 = 1/30
    f = holo.Monomial((1,))
    star = lp_equiv(f, CONST, 2.0, "star")
    hat = lp_equiv(f, CONST, 2.0, "hat")
    assert star.value == pytest.approx(1 / 48, rel=1e-8)
    assert hat.value == pytest.approx(1 / 30, rel=1e-8)
    assert star.formula_id == "lp_equiv_star"
    with pytest.raises(DomainError):
        lp_equiv(f, CONST, 2.0, "median")


def test_comparable_square_functions_track_the_norm():
    # equivalence, not identity: ratios stay within a fixed window across
    # a small suite
    rng = np.random.default_rng(33)
    ratios_star, ratios_hat = [], []
    for _ in range(4):
        f = holo.random_polynomial(1, 6, rng)
        lhs = bergman_norm_p(subtract_value_at_zero(f), CONST, 2.0).value
        if lhs < 1e-12:
            continue
        ratios_star.append(lp_equiv(f, CONST, 2.0, "star").value / lhs)
        ratios_hat.append(lp_equiv(f, CONST, 2.0, "hat").value / lhs)
    for rs in (ratios_star, ratios_hat):
        assert all(1 / 50 < r < 50 for r in rs)


def test_area_norm_of_coordinate_function():
    spec = quadrature.QuadratureSpec(
        spherical=quadrature.SphericalRule(samples=32, seed=1))
    rep = area_norm(holo.Monomial((1,)), CONST, 2.0, spec=spec,
                    inner_samples=2048)
    # grid-checked value of the double integral is about 0.0470
    assert 0.040 < rep.value < 0.053
    assert rep.error < 0.1 * rep.value


def test_nontangential_max_of_coordinate():
    # Gamma_u lies inside {|xi| < |u|} and the ray candidates approach the
    # vertex, so N(z)(u) = |u| up to the ray resolution
    f = holo.Monomial((1,))
    u = np.array([0.8 + 0j])
    got = nontangential_max(f, u)
    assert got <= 0.8 + 1e-15
    assert abs(got - 0.8) < 1e-12


def test_nontangential_max_is_monotone_in_budget():
    rng = np.random.default_rng(3)
    f = holo.random_polynomial(2, 4, rng)
    u = np.array([0.5 + 0.2j, 0.3 + 0j])
    small = nontangential_max(f, u, candidates=64)
    large = nontangential_max(f, u, candidates=512)
    assert small <= large + 1e-15


def test_maxfun_norm_coordinate_oracle():
    # N(z)(u) = |u| gives Int N^2 omega dV = ||z||^2 = 1/2
    rep = maxfun_norm(holo.Monomial((1,)), CONST, 2.0)
    assert rep.value == pytest.approx(0.5, rel=1e-6)
    # left inequality of the norm comparison at its equality case
    lhs = bergman_norm_p(holo.Monomial((1,)), CONST, 2.0)
    assert lhs.value <= rep.value * (1 + 3e-8) + 3 * rep.error


def test_maximal_function_of_one_is_one():
    w = RadialWeight.power(1.0)
    z = np.array([0.6 + 0.1j])
    got = maximal_function(lambda Z: np.ones(np.atleast_2d(Z).shape[0]), w, z,
                           candidates=16, samples_per_block=2000)
    assert got == pytest.approx(1.0, abs=1e-12)


def test_maximal_function_scales_linearly():
    w = CONST
    z = np.array([0.4 + 0.2j, 0.1 + 0j])
    phi = lambda Z: np.abs(np.atleast_2d(Z)[:, 0]) ** 2

    def scaled(c):
        return maximal_function(lambda Z: c * phi(Z), w, z, candidates=8,
                                samples_per_block=1500)

    m1, m2 = scaled(1.0), scaled(2.0)
    assert m2 == 2.0 * m1  # multiplication by 2 is exact in floats
    assert m1 > 0


def test_norm_report_validation():
    with pytest.raises(DomainError):
        NormReport(1.0, "no_such_formula", 0.0, "ff")
    with pytest.raises(DomainError):
        NormReport(1.0, "bergman_p", math.inf, "ff")
    rep = NormReport(1.0, "bergman_p", 0.0, "ff")
    assert rep.to_json()["formula_id"] == "bergman_p"
