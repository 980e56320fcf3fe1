"""Paraboloid-case quantities: the Hessian eigenvalue sequence c_d(m) by
several independent routes, the spectral-gap and two-peak constants, the
deficit Hessian quadratic form on the radial Hermite-Gaussian basis, Gaussian
two-peak asymptotics, and deficit / manifold-distance evaluation for radial
Gaussian superpositions.

Conventions.  The free Schroedinger evolution of the standard Gaussian
G(x) = exp(-pi |x|^2) at scale lam is

    u_lam(t, x) = lam^{d/2} / z^{d/2} * exp(-pi lam^2 |x|^2 / z),
    z = 1 + 4 pi i t lam^2,

with |u_lam| decaying like t^{-d/2} and the space-time q-norm
(q = 2 + 4/d) independent of lam.  The deficit is

    deficit(f) = S_d^2 ||f||_2^2 - ||u||_q^2,

with both terms squared, matching the Rayleigh-quotient arithmetic used for
the stability constants.  Distances to the Gaussian manifold are computed via
dist^2 = ||f||^2 - m(f), m(f) = 2^{d/2} sup_mu (integral of f * G_mu)^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .quad import (
    QuadratureSpec,
    integrate_finite,
    integrate_semi_infinite_decay,
)
from .optimize import SearchSpec, maximize_scalar
from .specfun import binomial, jacobi, laguerre_at_zero

__all__ = [
    "Dim",
    "GaussianSuperposition",
    "RadialHermiteCoeffs",
    "ConstantRecord",
    "Provenance",
    "OnManifoldError",
    "HessianForm",
    "cdm_sum",
    "cdm_closed2",
    "cdm_jacobi",
    "c1m_integral",
    "jacobi_ratio_rm",
    "spectral_gap_paraboloid",
    "two_peak_paraboloid",
    "check_tp_vanishing",
    "deficit_hessian_paraboloid",
    "overlap_H",
    "optimal_mu",
    "two_peak_norm_sq",
    "qnorm_gaussian",
    "qnorm_superposition_d2",
    "qnorm_superposition_d1",
    "dist_to_gaussians",
    "two_peak_quotient_paraboloid",
]


class Provenance(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    OPTIMIZATION = "optimization"


class OnManifoldError(Exception):
    """Raised when a Rayleigh quotient is requested at a maximizer (0/0)."""


@dataclass(frozen=True)
class Dim:
    """Spatial dimension with the derived Strichartz exponent q = 2 + 4/d
    and, for d in {1, 2}, the known sharp constant."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")

    @property
    def q(self) -> float:
        return 2.0 + 4.0 / self.d

    @property
    def sharp_constant(self) -> float:
        """Sharp constant of the L^2 -> L^q extension bound; known only in
        dimensions 1 and 2."""
        if self.d == 1:
            return 12.0 ** (-1.0 / 12.0)
        if self.d == 2:
            return 2.0 ** (-0.5)
        raise ValueError(f"sharp constant unknown for d={self.d}")


@dataclass(frozen=True)
class GaussianSuperposition:
    """f(x) = sum_i a_i lam_i^{d/2} exp(-pi lam_i^2 |x|^2), as (a_i, lam_i)."""

    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("superposition needs at least one term")
        for a, lam in self.terms:
            if not lam > 0:
                raise ValueError(f"scales must be > 0, got {lam}")

    @classmethod
    def two_peak(cls, lam: float) -> "GaussianSuperposition":
        """The two-bubble family G + G_lam."""
        return cls(((1.0, 1.0), (1.0, float(lam))))

    @property
    def scales(self) -> tuple[float, ...]:
        return tuple(lam for _, lam in self.terms)

    def norm_sq(self, dim: Dim) -> float:
        h = dim.d / 2.0
        s = 0.0
        for a, la in self.terms:
            for b, mu in self.terms:
                s += a * b * (la * mu / (la * la + mu * mu)) ** h
        return s


@dataclass(frozen=True)
class RadialHermiteCoeffs:
    """Coefficients a(m) over the radial Hermite-Gaussian basis
    L_m^{d/2-1}(2 pi |x|^2) exp(-pi |x|^2)."""

    a: tuple[complex, ...]

    @classmethod
    def unit(cls, m: int, size: int | None = None) -> "RadialHermiteCoeffs":
        size = size if size is not None else m + 1
        coeffs = [0.0 + 0.0j] * size
        coeffs[m] = 1.0 + 0.0j
        return cls(tuple(coeffs))

    def require_normal_to_gaussians(self) -> None:
        """Membership in the orthogonal complement of the manifold tangent
        space requires a(0) = a(1) = 0."""
        for m in (0, 1):
            if m < len(self.a) and self.a[m] != 0:
                raise ValueError(
                    f"coefficient a({m}) must vanish off the tangent space, got {self.a[m]}"
                )


@dataclass(frozen=True)
class ConstantRecord:
    """A named constant with its exact expression and numeric value."""

    name: str
    exact_expression: str
    value: float
    provenance: Provenance

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"constant {self.name} is not finite: {self.value}")


@dataclass(frozen=True)
class HessianForm:
    """Deficit Hessian evaluated on a coefficient vector."""

    hessian_value: float
    norm_sq: float
    quotient: float


# ---------------------------------------------------------------------------
# the eigenvalue sequence c_d(m)
# ---------------------------------------------------------------------------

def cdm_sum(dim: Dim, m: int) -> float:
    """c_d(m) by its defining binomial sum,

        c_d(m) = (q/2) * sum_j binom(m+d/2-1, m-j) binom(m, j)
                 (1-2/q)^(2m-2j) (2/q)^(2j).

    All summands are positive; half-integer binomials go through log-gamma,
    so the sum stays accurate for m in the hundreds.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    d = dim.d
    q = dim.q
    u = 1.0 - 2.0 / q
    v = 2.0 / q
    total = 0.0
    for j in range(m + 1):
        total += (
            binomial(m + d / 2.0 - 1.0, m - j)
            * binomial(float(m), j)
            * u ** (2 * m - 2 * j)
            * v ** (2 * j)
        )
    return q / 2.0 * total


def cdm_closed2(dim: Dim) -> float:
    """c_d(2) in closed form: (d^3 + 4 d^2 + 10 d + 4) / (d+2)^3."""
    d = dim.d
    return (d**3 + 4 * d**2 + 10 * d + 4) / float((d + 2) ** 3)


def _jacobi_xy(d: int) -> tuple[float, float]:
    y = (d - 2.0) / (d + 2.0)
    x = (d * d + 4.0) / (d * d - 4.0)
    return x, y


def cdm_jacobi(dim: Dim, m: int) -> float:
    """c_d(m) by the Jacobi-polynomial route (d >= 3):

        c_d(m) = (1 + 2/d) y^m P_m^(0, d/2-1)(x),
        y = (d-2)/(d+2),  x = (d^2+4)/(d^2-4).
    """
    if dim.d <= 2:
        raise ValueError(f"Jacobi route needs d >= 3, got d={dim.d}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    x, y = _jacobi_xy(dim.d)
    return (1.0 + 2.0 / dim.d) * y**m * jacobi(m, 0.0, dim.d / 2.0 - 1.0, x)


def c1m_integral(m: int, spec: QuadratureSpec | None = None) -> float:
    """c_1(m) by its trigonometric integral representation,

        c_1(m) = (3/2pi) int_0^pi [((2cos+1)/3)^(2m) + ((2cos-1)/3)^(2m)] dtheta.

    Equivalently 3^(1-2m) S_m with S_m = sum_j (2m)! / ((2j)! ((m-j)!)^2); the
    leading factor 3 is pinned by c_1(0) = q/2 = 3.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    spec = spec or QuadratureSpec()

    def f(theta: float) -> float:
        c = math.cos(theta)
        return ((2 * c + 1) / 3.0) ** (2 * m) + ((2 * c - 1) / 3.0) ** (2 * m)

    return 3.0 * integrate_finite(f, 0.0, math.pi, spec).require() / (2.0 * math.pi)


def jacobi_ratio_rm(dim: Dim, m: int) -> float:
    """Ratio r_m = P_{m+1}/P_m of consecutive Jacobi polynomials at the c_d
    evaluation point, by the forward ratio recurrence

        r_m = a_m x + b_m - c_m / r_{m-1},
        r_0 = y^{-1} - 2/(d-2).

    Falls back to direct polynomial quotients if the recurrence hits a
    near-zero denominator (it does not for these parameters).
    """
    if dim.d <= 2:
        raise ValueError(f"ratio recurrence needs d >= 3, got d={dim.d}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    d = dim.d
    x, y = _jacobi_xy(d)
    r = 1.0 / y - 2.0 / (d - 2.0)
    for n in range(1, m + 1):
        h = d / 2.0
        a_n = (2 * n + h) * (2 * n + h + 1) / (2.0 * (n + 1) * (n + h))
        b_n = -(2 * n + h) * (h - 1) ** 2 / (2.0 * (n + 1) * (n + h) * (2 * n + h - 1))
        c_n = n * (n + h - 1) * (2 * n + h + 1) / ((n + 1) * (n + h) * (2 * n + h - 1))
        if abs(r) < 1e-12:
            beta = h - 1.0
            return jacobi(m + 1, 0.0, beta, x) / jacobi(m, 0.0, beta, x)
        r = a_n * x + b_n - c_n / r
    return r


# ---------------------------------------------------------------------------
# closed-form constants
# ---------------------------------------------------------------------------

def spectral_gap_paraboloid(dim: Dim) -> ConstantRecord:
    """Spectral-gap constant

        C_SG(d) = (d^2+d+2)/(d+2)^3 * 2^(2/(d+2)) * (d/(d+2))^(d^2/(2d+4)).
    """
    d = dim.d
    value = (
        (d * d + d + 2)
        / float((d + 2) ** 3)
        * 2.0 ** (2.0 / (d + 2))
        * (d / (d + 2.0)) ** (d * d / (2.0 * d + 4.0))
    )
    expr = f"(d^2+d+2)/(d+2)^3 * 2^(2/(d+2)) * (d/(d+2))^(d^2/(2d+4)), d={d}"
    return ConstantRecord(f"C_SG({d})", expr, value, Provenance.CLOSED_FORM)


def two_peak_paraboloid(dim: Dim) -> ConstantRecord:
    """Two-peak constant C_TP(d) = (2^(2/(d+2)) - 1) (d/(d+2))^(d^2/(2d+4))."""
    d = dim.d
    value = (2.0 ** (2.0 / (d + 2)) - 1.0) * (d / (d + 2.0)) ** (d * d / (2.0 * d + 4.0))
    expr = f"(2^(2/(d+2)) - 1) * (d/(d+2))^(d^2/(2d+4)), d={d}"
    return ConstantRecord(f"C_TP({d})", expr, value, Provenance.CLOSED_FORM)


def check_tp_vanishing(dim: Dim) -> tuple[bool, float]:
    """Verify 1 - 2^(-2/(d+2)) > (d^2+d+2)/(d+2)^3, which makes the
    spectral-gap constant the smaller of the two thresholds.

    Returns (holds, margin)."""
    d = dim.d
    lhs = 1.0 - 2.0 ** (-2.0 / (d + 2))
    rhs = (d * d + d + 2) / float((d + 2) ** 3)
    return lhs > rhs, lhs - rhs


# ---------------------------------------------------------------------------
# deficit Hessian on the radial Hermite-Gaussian basis
# ---------------------------------------------------------------------------

def deficit_hessian_paraboloid(dim: Dim, f: RadialHermiteCoeffs) -> HessianForm:
    """Deficit Hessian at the Gaussian, diagonal over the radial basis:

        H[f,f]   = 2^((2-d)/(2+d)) q^(-d^2/(2d+4))
                   * sum_{m>=2} (1 - c_d(m)) |a(m)|^2 L_m^{d/2-1}(0),
        ||f||^2  = 2^(-d/2) sum_m |a(m)|^2 L_m^{d/2-1}(0),
        quotient = H[f,f] / (2 ||f||^2).

    The quotient at a single mode m=2 equals the spectral-gap constant.
    """
    f.require_normal_to_gaussians()
    d = dim.d
    q = dim.q
    alpha = d / 2.0 - 1.0
    pref = 2.0 ** ((2.0 - d) / (2.0 + d)) * q ** (-d * d / (2.0 * d + 4.0))
    hess = 0.0
    norm = 0.0
    for m, am in enumerate(f.a):
        w = abs(am) ** 2
        if w == 0.0:
            continue
        lm0 = laguerre_at_zero(m, alpha)
        norm += w * lm0
        if m >= 2:
            hess += (1.0 - cdm_sum(dim, m)) * w * lm0
    hess *= pref
    norm *= 2.0 ** (-d / 2.0)
    if norm == 0.0:
        raise ValueError("zero coefficient vector")
    return HessianForm(hess, norm, hess / (2.0 * norm))


# ---------------------------------------------------------------------------
# two-peak family and Gaussian distances
# ---------------------------------------------------------------------------

def overlap_H(dim: Dim, lam: float, mu: float) -> float:
    """Overlap of the two-peak function with a unit-scale probe Gaussian:

        H_lam(mu) = (mu/(1+mu^2))^(d/2) + (lam mu/(lam^2+mu^2))^(d/2),

    maximal value 2^(1-d/2), attained only at lam = mu = 1.
    """
    if not (lam > 0 and mu > 0):
        raise ValueError("scales must be > 0")
    h = dim.d / 2.0
    return (mu / (1 + mu * mu)) ** h + (lam * mu / (lam * lam + mu * mu)) ** h


def optimal_mu(dim: Dim, lam: float, spec: SearchSpec | None = None) -> tuple[float, float]:
    """Maximize H_lam over [sqrt(lam), 1], where the maximizer lives.

    For small lam the maximizer sits at 1 - 2^{d/2} lam^{d/2} + o(lam^{d/2}):
    the secondary bump pulls it slightly below 1.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lam must lie in (0, 1), got {lam}")
    spec = spec or SearchSpec(
        box=((math.sqrt(lam), 1.0),), multistart_count=2001, x_tol=1e-13
    )
    lo, hi = spec.box[0]
    mu_star, h_val = maximize_scalar(lambda mu: overlap_H(dim, lam, mu), lo, hi, spec)
    return mu_star, h_val


def two_peak_norm_sq(dim: Dim, lam: float) -> float:
    """||G + G_lam||_2^2 = 2^(1-d/2) + 2 lam^(d/2) (1+lam^2)^(-d/2), exactly."""
    if not lam > 0:
        raise ValueError(f"lam must be > 0, got {lam}")
    h = dim.d / 2.0
    return 2.0 ** (1.0 - h) + 2.0 * lam**h * (1.0 + lam * lam) ** (-h)


def qnorm_gaussian(dim: Dim) -> float:
    """Space-time q-norm of an evolved Gaussian at any scale:

        ||u_lam||_q^q = 1 / (4 (2+4/d)^(d/2)),

    independent of lam by scaling symmetry.
    """
    return 1.0 / (4.0 * dim.q ** (dim.d / 2.0))


def qnorm_superposition_d2(
    f: GaussianSuperposition, spec: QuadratureSpec | None = None
) -> float:
    """||u||_4^4 over space-time for a superposition at d = 2, where q = 4 is
    an even integer and the spatial integral collapses in closed form.

    Expanding |u|^4 into the quadruple sum over term indices, each summand is
    a product of complex Gaussians whose spatial integral is A(t)/g(t) with

        A = prod lam_s / z_s(t)   (conjugated for the barred pair),
        g = sum lam_s^2 / z_s(t)  (ditto),  z_s = 1 + 4 pi i t lam_s^2.

    The remaining time integral of the (real, even) summand total decays like
    t^-2 with internal scales 1/(4 pi lam_s^2); those scales are passed to the
    smooth-decay integrator as breakpoints.
    """
    spec = spec or QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12)
    terms = f.terms
    n = len(terms)
    amps = [a for a, _ in terms]
    lams = [lam for _, lam in terms]

    quads = [
        (i, j, k, l)
        for i in range(n)
        for j in range(n)
        for k in range(n)
        for l in range(n)
    ]

    def F(t: float) -> float:
        zs = [complex(1.0, 4.0 * math.pi * t * lam * lam) for lam in lams]
        pref = [lam / z for lam, z in zip(lams, zs)]
        widths = [lam * lam / z for lam, z in zip(lams, zs)]
        total = 0.0 + 0.0j
        for i, j, k, l in quads:
            A = pref[i] * pref[j] * pref[k].conjugate() * pref[l].conjugate()
            g = widths[i] + widths[j] + widths[k].conjugate() + widths[l].conjugate()
            total += amps[i] * amps[j] * amps[k] * amps[l] * A / g
        return total.real

    breakpoints = tuple(1.0 / (4.0 * math.pi * lam * lam) for lam in set(lams))
    res = integrate_semi_infinite_decay(F, spec, breakpoints=breakpoints)
    return 2.0 * res.require()


def qnorm_superposition_d1(
    f: GaussianSuperposition, spec: QuadratureSpec | None = None
) -> float:
    """||u||_6^6 over space-time at d = 1 by direct quadrature (odd powers of
    moduli admit no finite Gaussian-sum closed form).

    The spatial profile is integrated on a scaled grid x = (1 + 4 pi t) s /
    lam_min, the time integral uses the smooth-decay integrator.
    """
    spec = spec or QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9)
    terms = f.terms
    lams = [lam for _, lam in terms]
    lam_max = max(lams)
    x_spec = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-10, max_panels=400)
    # component j contributes a Gaussian of x-width ~ sqrt(1+16 pi^2 t^2 l^4)/l;
    # rescaling by the widest keeps every component O(1) or narrower, with the
    # narrow ones pinned by explicit split points
    s_splits = sorted({min(lam / lam_max, 1.0) for lam in lams} | {1.0})
    edges = [0.0] + [0.3 * s for s in s_splits] + [1.0, 8.0]
    edges = sorted(set(edges))

    def space_integral(t: float) -> float:
        scale = max(
            math.sqrt(1.0 + (4.0 * math.pi * t * lam * lam) ** 2) / lam for lam in lams
        )
        zs = [complex(1.0, 4.0 * math.pi * t * lam * lam) for _, lam in terms]

        def profile(s: float) -> float:
            x = scale * s
            u = 0.0 + 0.0j
            for (a, lam), z in zip(terms, zs):
                u += a * cmath.sqrt(lam / z) * cmath.exp(-math.pi * lam * lam * x * x / z)
            return abs(u) ** 6

        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            total += integrate_finite(profile, a, b, x_spec).require()
        return 2.0 * scale * total

    breakpoints = tuple(1.0 / (4.0 * math.pi * lam * lam) for _, lam in terms)
    res = integrate_semi_infinite_decay(space_integral, spec, breakpoints=breakpoints)
    return 2.0 * res.require()


def dist_to_gaussians(
    dim: Dim, f: GaussianSuperposition, spec: SearchSpec | None = None
) -> tuple[float, float]:
    """Squared distance to the Gaussian manifold for a positive superposition:

        dist^2 = ||f||^2 - 2^{d/2} sup_mu (sum_i a_i ovl(lam_i, mu))^2,
        ovl(lam, mu) = (lam mu / (lam^2 + mu^2))^(d/2).

    Each overlap term increases up to mu = lam_i and decreases beyond, so the
    supremum lies in [min lam_i, max lam_i]; the search runs over log mu.
    Returns (dist_sq, mu_star).
    """
    h = dim.d / 2.0
    terms = f.terms
    if any(a <= 0 for a, _ in terms):
        raise ValueError("distance reduction requires positive amplitudes")
    lo = math.log(min(f.scales))
    hi = math.log(max(f.scales))

    def projection(logmu: float) -> float:
        mu = math.exp(logmu)
        return sum(a * (la * mu / (la * la + mu * mu)) ** h for a, la in terms)

    if hi - lo < 1e-14:
        mu_star, best = math.exp(lo), projection(lo)
    else:
        spec = spec or SearchSpec(box=((lo, hi),), multistart_count=512, x_tol=1e-13)
        logmu_star, best = maximize_scalar(projection, lo, hi, spec)
        mu_star = math.exp(logmu_star)
    m_value = 2.0**h * best * best
    return f.norm_sq(dim) - m_value, mu_star


def two_peak_quotient_paraboloid(
    dim: Dim,
    lam: float,
    spec: QuadratureSpec | None = None,
    search: SearchSpec | None = None,
) -> float:
    """Rayleigh quotient deficit/dist^2 at the two-peak function G + G_lam.

    Converges to the two-peak constant as lam -> 0.  Only d in {1, 2} are
    supported (the sharp constant is known there); d = 2 uses the closed-form
    quadruple-sum quartic norm, d = 1 direct space-time quadrature.
    """
    if dim.d not in (1, 2):
        raise ValueError("two-peak quotient needs d in {1, 2}")
    if not lam > 0:
        raise ValueError(f"lam must be > 0, got {lam}")
    f = GaussianSuperposition.two_peak(lam)
    norm_sq = two_peak_norm_sq(dim, lam)
    dist_sq, _ = dist_to_gaussians(dim, f, search)
    if dist_sq <= 1e-12 * norm_sq:
        raise OnManifoldError(
            f"two-peak function at lam={lam} lies on the Gaussian manifold"
        )
    if dim.d == 2:
        qq = qnorm_superposition_d2(f, spec)
    else:
        qq = qnorm_superposition_d1(f, spec)
    qnorm_sq = qq ** (2.0 / dim.q)
    deficit = dim.sharp_constant**2 * norm_sq - qnorm_sq
    return deficit / dist_sq
