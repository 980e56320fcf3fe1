"""Sphere-case tests: extension formulas, Hessian weights, the perturbed
constant family, the modulated two-peak family, and the minimizer search."""

import math

import numpy as np
import pytest

from strichartz_stab.optimize import SearchSpec
from strichartz_stab.paraboloid import OnManifoldError
from strichartz_stab.quad import QuadratureSpec
from strichartz_stab.specfun import spherical_bessel, y20
from strichartz_stab.sphere import (
    EPS_WINDOW,
    SPHERE,
    AxisymCoeffs,
    ck_closed,
    ck_quadrature,
    deficit_hessian_sphere,
    extension_axisym,
    extension_constant,
    m_constant_distance,
    minimize_rayleigh_sphere,
    quartic_norm_axisym,
    rayleigh_f_epsilon,
    two_peak_quotient_sphere,
)

GAP = 8.0 * math.pi**2 / 5.0
TP = (2.0 - math.sqrt(2.0)) * 4.0 * math.pi**2


def test_sphere_constants():
    assert SPHERE.M == pytest.approx(2.0 * math.pi, rel=1e-15)
    assert SPHERE.sphere_area == pytest.approx(4.0 * math.pi, rel=1e-15)
    assert SPHERE.q == 4.0
    assert EPS_WINDOW == pytest.approx(
        2.0 * (1.0 - math.sin(1.0)) * math.sqrt(5.0 * math.pi) / 35.0, rel=1e-14
    )
    assert EPS_WINDOW == pytest.approx(0.0359, abs=2e-4)


# ---------------------------------------------------------------------------
# extension formulas
# ---------------------------------------------------------------------------

def test_extension_constant_values():
    assert extension_constant([0.0, 0.0, 0.0]) == pytest.approx(4.0 * math.pi, rel=1e-14)
    assert abs(extension_constant([math.pi, 0.0, 0.0])) < 1e-12
    assert extension_constant([0.0, 1.0, 0.0]) == pytest.approx(
        4.0 * math.pi * math.sin(1.0), rel=1e-14
    )


def test_extension_constant_against_sphere_quadrature():
    # oracle: int_{S^2} e^{-i x.theta} dsigma = 2 pi int_{-1}^1 e^{-i r c} dc
    from strichartz_stab.quad import integrate_finite

    for r in (1.0, 2.7):
        spec = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-12)
        re = integrate_finite(lambda c: math.cos(r * c), -1.0, 1.0, spec).require()
        im = integrate_finite(lambda c: -math.sin(r * c), -1.0, 1.0, spec).require()
        assert abs(im) < 1e-12
        assert extension_constant([r, 0.0, 0.0]) == pytest.approx(
            2.0 * math.pi * re, rel=1e-11
        )


def test_extension_axisym_mode2():
    f = AxisymCoeffs.unit(2)
    got = extension_axisym(f, 1.0, 1.0)
    expected = -4.0 * math.pi * spherical_bessel(2, 1.0) * math.sqrt(5.0 / (4.0 * math.pi))
    assert got.real == pytest.approx(expected, rel=1e-13)
    assert abs(got.imag) < 1e-15


def test_extension_axisym_at_origin():
    f = AxisymCoeffs.from_real([2.0, 0.3, -0.4])
    got = extension_axisym(f, 0.0, 0.5)
    assert got == pytest.approx(2.0 * 4.0 * math.pi / math.sqrt(4.0 * math.pi), rel=1e-14)


def _extension_direct_oracle(coeffs, r, costheta):
    """Tensor quadrature of int f(theta) e^{-i x.theta} dsigma over the full
    sphere, x = r*(sin g, 0, cos g) with cos g = costheta."""
    from strichartz_stab.specfun import axisym_harmonic

    n_t, n_p = 120, 120
    tt, wt = np.polynomial.legendre.leggauss(n_t)
    sing = math.sqrt(1.0 - costheta * costheta)
    phis = 2.0 * math.pi * (np.arange(n_p) + 0.5) / n_p
    total = 0.0 + 0.0j
    for ct, w in zip(tt, wt):
        st = math.sqrt(1.0 - ct * ct)
        fval = sum(
            a * axisym_harmonic(k, float(ct)) for k, a in enumerate(coeffs) if a
        )
        dots = r * (sing * st * np.cos(phis) + costheta * ct)
        total += w * fval * np.sum(np.exp(-1j * dots)) * (2.0 * math.pi / n_p)
    return total


def test_extension_axisym_matches_direct_quadrature():
    coeffs = (0.3, -0.2, 0.5, 0.1)
    f = AxisymCoeffs.from_real(coeffs)
    got = extension_axisym(f, 2.0, 0.3)
    ref = _extension_direct_oracle(coeffs, 2.0, 0.3)
    assert got.real == pytest.approx(ref.real, abs=1e-8)
    assert got.imag == pytest.approx(ref.imag, abs=1e-8)


def test_extension_axisym_rejects_bad_args():
    f = AxisymCoeffs.unit(2)
    with pytest.raises(ValueError):
        extension_axisym(f, 1.0, 1.5)
    with pytest.raises(ValueError):
        extension_axisym(f, -1.0, 0.5)


# ---------------------------------------------------------------------------
# c_k
# ---------------------------------------------------------------------------

def test_ck_closed_values():
    assert ck_closed(0) == pytest.approx(1.0 / math.pi, rel=1e-15)
    assert ck_closed(2) == pytest.approx(1.0 / (5.0 * math.pi), rel=1e-15)
    assert ck_closed(5) == pytest.approx(1.0 / (11.0 * math.pi), rel=1e-15)


def test_ck_decreasing():
    assert all(ck_closed(k + 1) < ck_closed(k) for k in range(40))


@pytest.mark.parametrize("k", [0, 2, 5])
def test_ck_quadrature_matches_closed(k):
    res = ck_quadrature(k)
    assert res.value == pytest.approx(ck_closed(k), abs=1e-8)
    assert abs(res.bk) < 1e-6


# ---------------------------------------------------------------------------
# deficit Hessian
# ---------------------------------------------------------------------------

def test_hessian_mode2_real():
    form = deficit_hessian_sphere(AxisymCoeffs.unit(2))
    assert form.quotient == pytest.approx(GAP, rel=1e-12)
    assert form.norm_sq == pytest.approx(1.0, rel=1e-15)


def test_hessian_mode2_imaginary():
    form = deficit_hessian_sphere(AxisymCoeffs((0, 0, 1j)))
    assert form.quotient == pytest.approx(0.6 * 4.0 * math.pi**2, rel=1e-12)


def test_hessian_mode3_above_mode2():
    q3 = deficit_hessian_sphere(AxisymCoeffs.unit(3)).quotient
    assert q3 == pytest.approx(4.0 * math.pi**2 * 6.0 / 7.0, rel=1e-12)
    assert q3 > GAP


def test_hessian_single_mode_scan_minimum_at_two():
    quots = [deficit_hessian_sphere(AxisymCoeffs.unit(k)).quotient for k in range(2, 11)]
    assert min(quots) == quots[0]
    assert quots[0] == pytest.approx(GAP, rel=1e-10)


def test_hessian_re_conventions():
    real = AxisymCoeffs.unit(2)
    a = deficit_hessian_sphere(real, "re_then_square").quotient
    b = deficit_hessian_sphere(real, "square_then_re").quotient
    assert a == b
    mixed = AxisymCoeffs((0, 0, 1.0 + 1.0j))
    qa = deficit_hessian_sphere(mixed, "re_then_square").hessian_value
    qb = deficit_hessian_sphere(mixed, "square_then_re").hessian_value
    # (Re a)^2 = 1 while Re(a^2) = 0 for a = 1+i
    M2 = SPHERE.M**2
    assert qa - qb == pytest.approx(-M2 * math.pi * ck_closed(2) * 2.0, rel=1e-12)
    with pytest.raises(ValueError):
        deficit_hessian_sphere(real, "bogus")


def test_hessian_rejects_tangent_components():
    with pytest.raises(ValueError):
        deficit_hessian_sphere(AxisymCoeffs((1.0, 0, 1.0)))


# ---------------------------------------------------------------------------
# quartic norm
# ---------------------------------------------------------------------------

def test_quartic_norm_constant():
    f = AxisymCoeffs((complex(math.sqrt(4.0 * math.pi)),))
    got = quartic_norm_axisym(f)
    assert got == pytest.approx(256.0 * math.pi**6, rel=1e-9)


def _quartic_tensor_oracle(coeffs, r_max=600.0, nr=120001, n_ang=64):
    """Doubled-resolution tensor quadrature (Simpson radial x Gauss angular)
    of the quartic norm, with a crude tail allowance returned separately."""
    from strichartz_stab.specfun import spherical_bessel_table

    deg = len(coeffs) - 1
    cnodes, cweights = np.polynomial.legendre.leggauss(n_ang)
    yk = np.empty((deg + 1, n_ang))
    yk[0] = 1.0
    if deg >= 1:
        yk[1] = cnodes
    for n in range(1, deg):
        yk[n + 1] = ((2 * n + 1) * cnodes * yk[n] - n * yk[n - 1]) / (n + 1)
    scale = np.sqrt((2 * np.arange(deg + 1) + 1) / (4.0 * math.pi))
    yk *= scale[:, None]
    phases = np.array([(-1j) ** k * c for k, c in enumerate(coeffs)])

    rs = np.linspace(1e-9, r_max, nr)
    radial = np.empty(nr)
    for i, r in enumerate(rs):
        js = np.asarray(spherical_bessel_table(deg, float(r)))
        fld = 4.0 * math.pi * ((phases * js) @ yk)
        radial[i] = 2.0 * math.pi * r * r * float((np.abs(fld) ** 4) @ cweights)
    h = rs[1] - rs[0]
    w = np.ones(nr)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    value = h / 3.0 * float(w @ radial)
    # the a/r^2 envelope beyond r_max integrates to a/R; estimate a from the
    # oscillation-averaged integrand over the last full period
    n_window = int(math.ceil(2.0 * math.pi / h))
    tail = float(np.mean(radial[-n_window:])) * r_max
    return value, tail


def test_quartic_norm_pure_mode2_positive_and_matches_tensor():
    f = AxisymCoeffs.unit(2)
    got = quartic_norm_axisym(f)
    assert got > 0
    oracle, tail = _quartic_tensor_oracle((0.0, 0.0, 1.0))
    assert got == pytest.approx(oracle + tail, abs=0.2 * tail + 1e-6 * oracle)


# ---------------------------------------------------------------------------
# perturbed-constant family
# ---------------------------------------------------------------------------

def test_rayleigh_on_manifold_guard():
    with pytest.raises(OnManifoldError):
        rayleigh_f_epsilon(0.0)
    with pytest.raises(ValueError):
        rayleigh_f_epsilon(-0.1)


def test_rayleigh_norm_and_distance_exact_in_window():
    res = rayleigh_f_epsilon(0.02)
    assert res.norm_sq == pytest.approx(4.0 * math.pi + 4.0e-4, rel=1e-15)
    assert res.dist_exact
    assert res.dist_sq == 4.0e-4


def test_rayleigh_quartic_expansion_at_002():
    # coefficient values of the quartic expansion in eps
    I0 = 256.0 * math.pi**6
    I2 = 384.0 * math.pi**5 / 5.0
    I3 = 256.0 * math.sqrt(5.0) * math.pi**4.5 / 49.0
    res = rayleigh_f_epsilon(0.02)
    predicted = I0 + I2 * 4e-4 + I3 * 8e-6
    # the eps^4 term (~3e-5) is the dominant allowance
    assert res.quartic_norm == pytest.approx(predicted, abs=1e-3)


def test_rayleigh_quotient_assembly():
    res = rayleigh_f_epsilon(0.01)
    manual = (SPHERE.M**2 * res.norm_sq - math.sqrt(res.quartic_norm)) / res.dist_sq
    assert res.quotient == pytest.approx(manual, rel=1e-15)
    assert res.quotient < GAP


def test_rayleigh_outside_window_falls_back():
    res = rayleigh_f_epsilon(0.05)
    assert not res.dist_exact
    assert res.dist_sq == pytest.approx(0.0025, rel=1e-6)


def test_rayleigh_quotient_decreasing_along_mode2_ray():
    # the linear term of the expansion makes the quotient fall as eps grows
    quots = [rayleigh_f_epsilon(e).quotient for e in (0.01, 0.02, 0.03)]
    assert quots[0] > quots[1] > quots[2]


# ---------------------------------------------------------------------------
# distance supremum
# ---------------------------------------------------------------------------

def test_m_constant_distance_on_manifold():
    f = AxisymCoeffs((complex(math.sqrt(4.0 * math.pi)),))
    m, x_star = m_constant_distance(f)
    assert m == pytest.approx(4.0 * math.pi, rel=1e-12)
    assert x_star[0] == 0.0
    assert f.norm_sq() - m == pytest.approx(0.0, abs=1e-12)


def test_m_constant_distance_perturbed_family():
    f = AxisymCoeffs.perturbed_constant(0.03)
    m, x_star = m_constant_distance(f)
    assert m == pytest.approx(4.0 * math.pi, rel=1e-12)
    assert x_star[0] == 0.0


def test_m_constant_distance_pure_mode2():
    f = AxisymCoeffs.unit(2)
    m, x_star = m_constant_distance(f)
    # dense-grid oracle over (r, costheta)
    from strichartz_stab.specfun import spherical_bessel_table

    rs = np.linspace(1e-6, 30.0, 4001)
    cs = np.linspace(-1.0, 1.0, 201)
    best = 0.0
    yconst = math.sqrt(5.0 / (16.0 * math.pi))
    for r in rs:
        j2 = spherical_bessel_table(2, float(r))[2]
        vals = (4.0 * math.pi * j2 * yconst * (3.0 * cs**2 - 1.0)) ** 2
        best = max(best, float(np.max(vals)))
    oracle = best / (4.0 * math.pi)
    assert x_star[0] > 1.0
    assert m >= oracle - 1e-9
    assert m == pytest.approx(oracle, rel=1e-4)


# ---------------------------------------------------------------------------
# modulated two-peak family
# ---------------------------------------------------------------------------

def test_two_peak_norm_exact_at_pi():
    res = two_peak_quotient_sphere(math.pi)
    assert res.norm_sq == pytest.approx(8.0 * math.pi, rel=1e-15)


def test_two_peak_rejects_nonpositive_separation():
    with pytest.raises(ValueError):
        two_peak_quotient_sphere(0.0)


def test_two_peak_quotient_limit():
    res = two_peak_quotient_sphere(100.0)
    assert abs(res.quotient - TP) / TP < 0.05


# ---------------------------------------------------------------------------
# minimizer search
# ---------------------------------------------------------------------------

def test_minimize_budget_one_returns_seed_quotient():
    out = minimize_rayleigh_sphere(6, seed_epsilon=0.03, budget=1)
    seed_ref = rayleigh_f_epsilon(0.03).quotient
    assert out.quotient == pytest.approx(seed_ref, abs=2e-3)
    assert out.evaluations == 1
    assert len(out.trace) == 1


def test_minimize_trace_monotone_and_below_thresholds():
    out = minimize_rayleigh_sphere(6, seed_epsilon=0.03, budget=200)
    quots = [row["quotient"] for row in out.trace]
    assert all(b <= a for a, b in zip(quots[:-1], quots[1:]))
    assert out.quotient < GAP - 0.01
    assert out.quotient < TP
    assert out.quotient == quots[-1]


def test_minimize_determinism():
    a = minimize_rayleigh_sphere(4, seed_epsilon=0.02, budget=80)
    b = minimize_rayleigh_sphere(4, seed_epsilon=0.02, budget=80)
    assert a.quotient == b.quotient
    assert np.array_equal(a.coeffs, b.coeffs)


def test_minimize_nested_bases():
    small = minimize_rayleigh_sphere(3, seed_epsilon=0.03, budget=400)
    large = minimize_rayleigh_sphere(6, seed_epsilon=0.03, budget=400)
    assert large.quotient <= small.quotient + 1e-9


def test_minimize_rejects_bad_arguments():
    with pytest.raises(ValueError):
        minimize_rayleigh_sphere(2)
    with pytest.raises(ValueError):
        minimize_rayleigh_sphere(4, seed_epsilon=0.2)
