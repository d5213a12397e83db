"""Acceptance suite: ten numbered end-to-end contracts for the laboratory.

Each test covers one criterion and prints a single PASS line with the
measured margin when it succeeds; a failure surfaces through pytest with
the offending quantity in the assertion. Tolerances are part of the
contract and are pinned in place, not computed."""

import json

import numpy as np
import pytest

from bergman_lab import (carleson, cli, geometry, holo, norms, quadrature,
                         reporting, volterra, weights)
from bergman_lab.weights import RadialWeight

FLAT = RadialWeight.power(0.0)


def announce(num: int, text: str) -> None:
    print(f"PASS criterion {num}: {text}")


def disguise(g):
    """Force the ray-quadrature path by hiding the polynomial symbol in a
    sum with a zero kernel node."""
    zero = holo.KernelPower(np.zeros(g.dim, dtype=complex), 1.0, 0.0)
    return holo.Sum([g, zero])


def random_index(n, degree, rng):
    beta = [0] * n
    for _ in range(int(degree)):
        beta[int(rng.integers(0, n))] += 1
    return tuple(beta)


def test_criterion_01_square_function_identity():
    # || f - f(0) ||_2^2 equals the square-function side exactly; both sides
    # are independent quadratures, so agreement is evidence, not tautology
    rng = np.random.default_rng(101)
    ws = [FLAT, RadialWeight.power(1.0), RadialWeight.logpower(2.0)]
    worst = 0.0
    for i in range(20):
        n = 1 + (i % 2)
        w = ws[i % 3]
        f = holo.random_polynomial(n, 6, rng)
        lhs = norms.bergman_norm_p(norms.subtract_value_at_zero(f),
                                   w, 2.0).value
        rhs = norms.lp_identity_rhs(f, w, 2.0).value
        rel = abs(lhs - rhs) / lhs
        worst = max(worst, rel)
        assert rel <= 1e-6
    # closed-form anchor: f = z on the disk against the flat weight gives
    # exactly 1/2 on both sides
    z = holo.Monomial((1,), 1.0)
    assert norms.bergman_norm_p(z, FLAT, 2.0).value == pytest.approx(
        0.5, abs=1e-12)
    assert norms.lp_identity_rhs(z, FLAT, 2.0).value == pytest.approx(
        0.5, abs=1e-12)
    announce(1, f"square-function identity, worst rel err {worst:.2e}")


def test_criterion_02_block_volume_comparability():
    # omega(S_a) stays two-sided comparable to (1-|a|)^n omega_hat(|a|)
    # down to 1 - |a| = 2^-20, with no boundary trend
    grid = 1 - 2.0 ** -np.linspace(0.0, 26.0, 400)
    tab = RadialWeight.tabulated(grid, 1.0 + grid, label="ramp")
    panels = [(RadialWeight.power(1.0), 1), (RadialWeight.power(1.0), 2),
              (RadialWeight.logpower(2.0), 1), (tab, 1)]
    worst_ratio, worst_slope = 1.0, 0.0
    for w, n in panels:
        rs, qs = [], []
        for k in range(1, 21):
            r = 1 - 2.0 ** -k
            a = np.zeros(n, dtype=complex)
            a[0] = r
            mass = weights.block_mass(w, geometry.Block(a, 0.0))
            hat = float(weights.omega_hat(w, r))
            rs.append(r)
            qs.append(mass / ((1 - r) ** n * hat))
        chk = reporting.bracket_check(rs, qs, 50.0, 0.1)
        assert chk["passed"], (w.family, n, chk)
        worst_ratio = max(worst_ratio, chk["max_min_ratio"])
        worst_slope = max(worst_slope, abs(chk["slope"]))
    announce(2, f"block comparability, worst max/min {worst_ratio:.2f}, "
                f"worst |slope| {worst_slope:.3f}")


def test_criterion_03_cap_measure_power_law():
    # sigma(Q(xi, r)) / r^(2n) admits a two-sided bracket whose endpoints
    # move by less than 1e-3 relative under r-grid refinement
    assert abs(geometry.cap_measure(1.0, 1) - 1 / 3) <= 1e-10
    spans = {}
    for n in (1, 2, 3):
        coarse = 2.0 ** -(np.arange(0, 11) / 2)
        fine = 2.0 ** -(np.arange(0, 21) / 4)
        qc = [geometry.cap_measure(r, n) / r ** (2 * n) for r in coarse]
        qf = [geometry.cap_measure(r, n) / r ** (2 * n) for r in fine]
        lo_c, hi_c = min(qc), max(qc)
        lo_f, hi_f = min(qf), max(qf)
        # the fine grid contains the coarse one, so its bracket can only
        # widen, and stability means it barely does
        assert lo_f <= lo_c and hi_f >= hi_c
        assert lo_c - lo_f <= 1e-3 * lo_c
        assert hi_f - hi_c <= 1e-3 * hi_c
        assert hi_c / lo_c <= 50
        spans[n] = hi_f / lo_f
    announce(3, "cap-measure law, bracket spans "
                + ", ".join(f"n={n}: {spans[n]:.3f}" for n in spans))


def test_criterion_04_test_function_norms_track_block_mass():
    # || F_{a,p} ||^p / omega(S_a) bounded two-sided and trend-free down to
    # 1 - |a| = 2^-14 for p in {1, 2, 4}
    worst_ratio, worst_slope = 1.0, 0.0
    for w in (RadialWeight.power(1.0), RadialWeight.logpower(2.0)):
        for p in (1.0, 2.0, 4.0):
            rs, qs = [], []
            for k in range(1, 15):
                r = 1 - 2.0 ** -k
                a = np.array([r + 0j])
                F = holo.test_function(a, p, w)
                num = norms.bergman_norm_p(F, w, p).value
                den = weights.block_mass(w, geometry.Block(a, 0.0))
                rs.append(r)
                qs.append(num / den)
            chk = reporting.bracket_check(rs, qs, 100.0, 0.15)
            assert chk["passed"], (w.family, p, chk)
            worst_ratio = max(worst_ratio, chk["max_min_ratio"])
            worst_slope = max(worst_slope, abs(chk["slope"]))
    announce(4, f"test-function norms, worst max/min {worst_ratio:.2f}, "
                f"worst |slope| {worst_slope:.3f}")


def test_criterion_05_carleson_exactness_and_vanishing_profile():
    # d mu = omega dV with p = q runs numerator and denominator through the
    # same block-mass path, so every lattice quotient is 1 to 1e-12
    for n, w in ((1, FLAT), (2, RadialWeight.logpower(2.0))):
        mu = carleson.Measure.weighted_volume(w, n)
        rep = carleson.carleson_quotient(mu, w, 2.0, 2.0, levels=10,
                                         directions=8 if n == 1 else 12)
        assert abs(rep.sup_estimate - 1.0) <= 1e-12
        assert all(abs(row["quotient"] - 1.0) <= 1e-12
                   for row in rep.quotient_samples)

    # d mu = (1 - |z|) omega dV must show vanishing quotients with a clear
    # decay trend toward the boundary
    mu = carleson.Measure.weighted_volume(
        FLAT, 1, factor_json={"form": "power_of_one_minus_r",
                              "exponent": 1.0, "scale": 1.0})
    rep = carleson.carleson_quotient(mu, FLAT, 2.0, 2.0, levels=12,
                                     directions=8)
    rs, vs = rep.profile_arrays()
    deep = slice(len(rs) // 2, None)
    slope = reporting.fit_log_slope(rs[deep], vs[deep])
    assert slope <= -0.8
    announce(5, f"Carleson quotients exact at p=q, vanishing-measure "
                f"profile slope {slope:+.3f}")


def test_criterion_06_volterra_quadrature_matches_symbolic():
    # 50 random monomial pairs: the cumulative ray quadrature reproduces
    # the exact coefficient rule to 1e-10 relative
    rng = np.random.default_rng(606)
    worst = 0.0
    for i in range(50):
        n = 1 + (i % 2)
        bg = random_index(n, rng.integers(1, 6), rng)
        bf = random_index(n, rng.integers(0, 6), rng)
        cg = complex(rng.standard_normal(), rng.standard_normal())
        cf = complex(rng.standard_normal(), rng.standard_normal())
        g, f = holo.Monomial(bg, cg), holo.Monomial(bf, cf)
        theta = rng.uniform(0, 2 * np.pi)
        if n == 1:
            z = 0.7 * np.array([np.exp(1j * theta)])
        else:
            z = 0.7 * np.array([1.0, np.exp(1j * theta)]) / np.sqrt(2)
        sym = volterra.apply_Tg(g, f, z)
        quad = volterra.apply_Tg(disguise(g), f, z)
        rel = abs(quad - sym) / abs(sym)
        worst = max(worst, rel)
        assert rel <= 1e-10

    # linearity is exact coefficient arithmetic on disjoint monomials
    g = holo.Monomial((2,), 0.75 - 0.5j)
    f1, f2 = holo.Monomial((1,), 0.5), holo.Monomial((4,), 0.25j)
    joint = dict(volterra.tg_polynomial(g, holo.Sum([f1, f2])).terms)
    split = dict(volterra.tg_polynomial(g, f1).terms)
    split.update(dict(volterra.tg_polynomial(g, f2).terms))
    assert joint == split

    # T_g f never carries a constant term, so the value at 0 is exactly 0
    origin = np.zeros(1, dtype=complex)
    assert volterra.apply_Tg(g, f1, origin) == 0
    assert volterra.apply_Tg(disguise(g), f1, origin) == 0
    announce(6, f"operator quadrature vs symbolic, worst rel err "
                f"{worst:.2e}")


def test_criterion_07_volterra_trichotomy_verdicts():
    # the three regimes on their canonical symbols: critical indices force
    # unboundedness for a nonconstant symbol, the other two accept z, and
    # the direct operator panel's slope sign must agree each time
    crit = volterra.tg_verdict(holo.Monomial((1, 0), 1.0), FLAT, 1.0, 2.0,
                               seed=0)
    assert crit.verdicts["regime"] == "critical"
    assert crit.verdicts["bounded"] is False
    assert crit.verdicts["consistent"] is True

    sub = volterra.tg_verdict(holo.Monomial((1,), 1.0), FLAT, 2.0, 4.0,
                              seed=0)
    assert sub.verdicts["regime"] == "subcritical"
    assert sub.verdicts["bounded"] is True
    assert sub.verdicts["consistent"] is True

    bal = volterra.tg_verdict(holo.Monomial((1,), 1.0), FLAT, 2.0, 2.0,
                              seed=0)
    assert bal.verdicts["regime"] == "balanced"
    assert bal.verdicts["bounded"] is True
    assert bal.verdicts["consistent"] is True
    announce(7, "trichotomy verdicts, operator slopes "
                f"{crit.verdicts['operator_slope']:+.3f} / "
                f"{sub.verdicts['operator_slope']:+.3f} / "
                f"{bal.verdicts['operator_slope']:+.3f}")


def test_criterion_08_maximal_function_norm_bounds():
    # left inequality: ||f||_p^p never exceeds the maximal-function norm
    # beyond three combined error bars (the candidate set contains every
    # point's own ray, so the true inequality is pointwise)
    rng = np.random.default_rng(808)
    for w in (FLAT, RadialWeight.power(1.0)):
        for _ in range(3):
            f = holo.random_polynomial(1, 4, rng)
            lhs = norms.bergman_norm_p(f, w, 2.0)
            rhs = norms.maxfun_norm(f, w, 2.0, 4.0)
            tol = 3 * (lhs.error + rhs.error) + 1e-9 * rhs.value
            assert lhs.value <= rhs.value + tol

    # right inequality: the ratio stays bounded and trend-free along a
    # dilation ladder pushing mass toward the boundary
    f = holo.Sum([holo.Monomial((1,), 1.0), holo.Monomial((3,), 0.5)])
    rs, ratios = [], []
    for k in range(1, 7):
        r = 1 - 2.0 ** -k
        fr = holo.dilate(f, r)
        num = norms.maxfun_norm(fr, FLAT, 2.0, 4.0).value
        den = norms.bergman_norm_p(fr, FLAT, 2.0).value
        rs.append(r)
        ratios.append(num / den)
    chk = reporting.bracket_check(rs, ratios, 50.0, 0.15)
    assert chk["passed"], chk
    announce(8, f"maximal-function bounds, ratio panel max/min "
                f"{chk['max_min_ratio']:.2f}, slope {chk['slope']:+.3f}")


def test_criterion_09_geometry_predicates_hold():
    # 1e5 seeded samples per predicate, zero counterexamples
    eq = geometry.admissible_equivariance_check(2, samples=100000, seed=9)
    assert eq["counterexamples"] == 0
    tb = geometry.tube_block_comparison_check(2, cases=100, samples=1000,
                                              seed=9)
    assert tb["tube_in_block_ok"] and tb["block_in_tube_ok"]
    tent = geometry.tent_in_block_check(2, cases=100, samples=1000, seed=9)
    assert tent["ok"]
    announce(9, "geometry predicates, zero counterexamples at 1e5 samples")


def test_criterion_10_reports_replay_byte_identically(tmp_path):
    flat_json = FLAT.to_json()
    eq_cfg = {"weight": flat_json, "n": 1, "p": 2.0, "count": 6,
              "max_degree": 5, "seed": 3}
    carl_cfg = {"measure": carleson.Measure.weighted_volume(FLAT, 1).to_json(),
                "weight": flat_json, "p": 2.0, "q": 2.0,
                "sampling": {"levels": 6, "seed": 0}}
    jobs = [("equivalence-report", eq_cfg,
             ["equivalence-report.json", "equivalence.csv"]),
            ("carleson", carl_cfg,
             ["carleson.json", "carleson-profile.csv"])]
    for command, cfg, files in jobs:
        blobs = []
        for tag, threads in (("a", 1), ("b", 2), ("c", 4)):
            out = tmp_path / f"{command}-{tag}"
            assert cli.run(command, json.loads(json.dumps(cfg)), str(out),
                           threads=threads) == 0
            blobs.append(tuple((out / name).read_bytes() for name in files))
        assert blobs[0] == blobs[1] == blobs[2], command
    announce(10, "byte-identical replays across thread counts 1, 2, 4")
