"""Stable evaluation of the orthogonal polynomials and Bessel-type functions
used throughout the constant computations.

Covers generalized Laguerre polynomials L_m^alpha (three-term recurrence),
Jacobi polynomials P_m^(alpha,beta) (three-term recurrence, plus the explicit
binomial-sum form as an independent route), spherical Bessel functions j_k
(series / upward / downward-normalized branches), Legendre polynomials, and
the axisymmetric real spherical harmonics Y_k^0 on the unit 2-sphere.

All functions are pure and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PolynomialIndex",
    "laguerre",
    "laguerre_at_zero",
    "jacobi",
    "jacobi_sum",
    "spherical_bessel",
    "spherical_bessel_table",
    "legendre",
    "y20",
    "axisym_harmonic",
]


@dataclass(frozen=True)
class PolynomialIndex:
    """Index of an orthogonal-polynomial evaluation: degree plus parameters.

    ``beta`` is only meaningful for the Jacobi family.  Both parameters must
    exceed -1 for the weight functions to be integrable.
    """

    degree: int
    alpha: float
    beta: float | None = None

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be >= 0, got {self.degree}")
        _check_param("alpha", self.alpha)
        if self.beta is not None:
            _check_param("beta", self.beta)


def _check_param(name: str, value: float) -> None:
    if not value > -1.0:
        raise ValueError(f"{name} must be > -1, got {value}")


def laguerre(m: int, alpha: float, x: float) -> float:
    """Generalized Laguerre polynomial L_m^alpha(x) by the standard recurrence.

    (m+1) L_{m+1} = (2m+1+alpha-x) L_m - (m+alpha) L_{m-1},
    seeded with L_0 = 1 and L_1 = 1+alpha-x.  Exact for m in {0, 1}.
    """
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    _check_param("alpha", alpha)
    if m == 0:
        return 1.0
    prev, cur = 1.0, 1.0 + alpha - x
    for n in range(1, m):
        prev, cur = cur, ((2 * n + 1 + alpha - x) * cur - (n + alpha) * prev) / (n + 1)
    return cur


def laguerre_at_zero(m: int, alpha: float) -> float:
    """L_m^alpha(0) = binomial(m+alpha, m), via log-gamma for large m."""
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    _check_param("alpha", alpha)
    # all gamma arguments are positive for alpha > -1
    return math.exp(
        math.lgamma(m + alpha + 1) - math.lgamma(alpha + 1) - math.lgamma(m + 1)
    )


def binomial(a: float, k: int) -> float:
    """Generalized binomial coefficient binom(a, k) for real a > k - 1 >= -1.

    Computed through log-gamma so that half-integer upper arguments stay
    accurate up to degrees of a few hundred.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return 1.0
    return math.exp(
        math.lgamma(a + 1) - math.lgamma(k + 1) - math.lgamma(a - k + 1)
    )


def jacobi(m: int, alpha: float, beta: float, x: float) -> float:
    """Jacobi polynomial P_m^(alpha,beta)(x) by the three-term recurrence.

    Seeded with P_0 = 1 and P_1 = (alpha+1) + (alpha+beta+2)(x-1)/2.  The
    forward recurrence is stable for x > 1, where the dominant solution grows.
    """
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    _check_param("alpha", alpha)
    _check_param("beta", beta)
    if m == 0:
        return 1.0
    prev = 1.0
    cur = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0
    for n in range(1, m):
        ab = alpha + beta
        c1 = 2.0 * (n + 1) * (n + ab + 1) * (2 * n + ab)
        c2 = (2 * n + ab + 1) * (alpha * alpha - beta * beta)
        c3 = (2 * n + ab + 1) * (2 * n + ab) * (2 * n + ab + 2)
        c4 = 2.0 * (n + alpha) * (n + beta) * (2 * n + ab + 2)
        prev, cur = cur, ((c2 + c3 * x) * cur - c4 * prev) / c1
    return cur


def jacobi_sum(m: int, alpha: float, beta: float, x: float) -> float:
    """Jacobi polynomial by the explicit binomial sum (independent route).

    P_m^(alpha,beta)(x) = 2^-m sum_k binom(m+alpha, k) binom(m+beta, m-k)
                          (x-1)^(m-k) (x+1)^k.

    All summands are positive for x > 1, so the sum is cancellation-free
    there; used to cross-check the recurrence.
    """
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    _check_param("alpha", alpha)
    _check_param("beta", beta)
    total = 0.0
    for k in range(m + 1):
        total += (
            binomial(m + alpha, k)
            * binomial(m + beta, m - k)
            * (x - 1.0) ** (m - k)
            * (x + 1.0) ** k
        )
    return total / 2.0**m


# ---------------------------------------------------------------------------
# spherical Bessel functions
# ---------------------------------------------------------------------------

def _bessel_series(k: int, r: float) -> float:
    # ascending series: j_k(r) = sum_s (-1)^s r^(k+2s) / (2^s s! (2k+2s+1)!!)
    term = 1.0
    for i in range(1, k + 1):
        term *= r / (2 * i + 1)
    if k == 0:
        term = 1.0
    total = term
    for s in range(1, 400):
        term *= -r * r / (2 * s * (2 * (k + s) + 1))
        total += term
        if abs(term) <= 1e-18 * abs(total):
            break
    return total


def _bessel_upward(k: int, r: float) -> float:
    j0 = math.sin(r) / r
    if k == 0:
        return j0
    j1 = math.sin(r) / (r * r) - math.cos(r) / r
    for n in range(1, k):
        j0, j1 = j1, (2 * n + 1) / r * j1 - j0
    return j1


def _bessel_downward(k: int, r: float) -> float:
    # Miller's algorithm: recur down from a padded start order, normalize on j_0
    k_start = k + int(math.ceil(10.0 + r))
    jp = 0.0
    jc = 1.0
    target = None
    for n in range(k_start, 0, -1):
        jp, jc = jc, (2 * n + 1) / r * jc - jp
        if n - 1 == k:
            target = jc
        if abs(jc) > 1e250:
            jp *= 1e-250
            jc *= 1e-250
            if target is not None:
                target *= 1e-250
    if k == k_start:
        target = 1.0  # unreachable with the padding above, kept for safety
    return target * (math.sin(r) / r) / jc


def spherical_bessel(k: int, r: float) -> float:
    """Spherical Bessel function j_k(r) for r > 0.

    Branch selection: ascending series below r = max(1, k/2) (avoids the
    sin/cos cancellation near the origin), upward recurrence from the closed
    forms j_0, j_1 when k <= r (stable there), and downward-normalized
    recurrence otherwise (upward is unstable for k > r).
    """
    if k < 0:
        raise ValueError(f"order must be >= 0, got {k}")
    if not r > 0.0:
        raise ValueError(f"argument must be > 0, got {r}")
    if r < max(1.0, 0.5 * k):
        return _bessel_series(k, r)
    if k <= r or k <= 2:
        return _bessel_upward(k, r)
    return _bessel_downward(k, r)


def spherical_bessel_table(k_max: int, r: float) -> list[float]:
    """All of j_0(r) .. j_kmax(r) in one pass, same branch policy as above."""
    if k_max < 0:
        raise ValueError(f"order must be >= 0, got {k_max}")
    if not r > 0.0:
        raise ValueError(f"argument must be > 0, got {r}")
    if k_max <= r:
        out = [math.sin(r) / r]
        if k_max >= 1:
            out.append(math.sin(r) / (r * r) - math.cos(r) / r)
        for n in range(1, k_max):
            out.append((2 * n + 1) / r * out[n] - out[n - 1])
        return out
    return [spherical_bessel(k, r) for k in range(k_max + 1)]


# ---------------------------------------------------------------------------
# Legendre polynomials and axisymmetric spherical harmonics
# ---------------------------------------------------------------------------

def legendre(k: int, x: float) -> float:
    """Legendre polynomial P_k(x) by the Bonnet recurrence."""
    if k < 0:
        raise ValueError(f"degree must be >= 0, got {k}")
    if k == 0:
        return 1.0
    prev, cur = 1.0, x
    for n in range(1, k):
        prev, cur = cur, ((2 * n + 1) * x * cur - n * prev) / (n + 1)
    return cur


def axisym_harmonic(k: int, costheta: float) -> float:
    """Real axisymmetric spherical harmonic Y_k^0 on the unit 2-sphere.

    Y_k^0(theta) = sqrt((2k+1)/(4 pi)) P_k(cos theta), orthonormal with
    respect to the surface measure (total mass 4 pi).
    """
    if abs(costheta) > 1.0:
        raise ValueError(f"|costheta| must be <= 1, got {costheta}")
    return math.sqrt((2 * k + 1) / (4.0 * math.pi)) * legendre(k, costheta)


def y20(costheta: float) -> float:
    """Y_2^0(theta) = sqrt(5/(16 pi)) (3 cos^2 theta - 1), unit L^2 norm."""
    if abs(costheta) > 1.0:
        raise ValueError(f"|costheta| must be <= 1, got {costheta}")
    return math.sqrt(5.0 / (16.0 * math.pi)) * (3.0 * costheta * costheta - 1.0)
