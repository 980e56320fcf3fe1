"""Adaptive quadrature for finite intervals and semi-infinite integrals of
oscillatory Bessel/trigonometric products.

The finite integrator is globally adaptive bisection with a 15-point
Gauss-Kronrod rule per panel (embedded 7-point Gauss error estimate).

The semi-infinite integrator sums length-pi panels out to the truncation
radius R and removes the remaining tail by extrapolation: partial sums are
recorded at checkpoints spaced by multiples of 2 pi, where every integer
trigonometric harmonic of the integrand has the same phase, so the truncated
tail behaves like a smooth power series in 1/R and a small Vandermonde fit
recovers the limit.  Plain truncation at the default R = 400 pi would leave
~1e-4 of mass for integrands with a slowly decaying mean (such as products of
two Bessel factors); the extrapolated result is accurate to ~1e-12.

A separate compactified integrator handles smooth monotone-decay integrands
with widely separated internal timescales (the evolved-Gaussian overlap
integrals): it splits at caller-supplied breakpoints and maps the far tail to
a finite interval through t -> T/v, which removes truncation error entirely.

All routines are deterministic: panel order, summation order and refinement
order are fixed.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "QuadratureSpec",
    "QuadResult",
    "QuadratureError",
    "integrate_finite",
    "integrate_semi_infinite_oscillatory",
    "integrate_semi_infinite_decay",
    "integrate_radial_3d",
]

# 15-point Kronrod abscissae (positive half) with embedded 7-point Gauss rule.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_EPS = 2.220446049250313e-16


class QuadratureError(Exception):
    """Raised when an integral cannot be brought below its tolerance."""

    def __init__(self, message: str, value: float = math.nan, error: float = math.nan):
        super().__init__(message)
        self.value = value
        self.error = error


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances, panel budget, and tail policy for the integrators.

    ``tail_radius`` is the truncation radius R; beyond it the integrand is
    assumed O(r^-tail_exponent) with tail_exponent > 1.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_panels: int = 4000
    tail_radius: float = 400.0 * math.pi
    tail_exponent: float = 2.0

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be > 0")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be > 0")
        if self.max_panels < 1:
            raise ValueError("max_panels must be >= 1")
        if not self.tail_radius > 0:
            raise ValueError("tail_radius must be > 0")
        if not self.tail_exponent > 1:
            raise ValueError("tail_exponent must be > 1 (tail bound diverges)")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass
class QuadResult:
    """Integral value with an error estimate and convergence diagnostics."""

    value: float
    error_estimate: float
    converged: bool
    panels: int = 0
    message: str = ""

    def require(self) -> float:
        if not self.converged:
            raise QuadratureError(
                f"quadrature failed: {self.message} "
                f"(best estimate {self.value!r}, error bound {self.error_estimate:.3e})",
                value=self.value,
                error=self.error_estimate,
            )
        return self.value


def _gk15(f, a: float, b: float) -> tuple[float, float, float]:
    """One Gauss-Kronrod 7-15 panel: (value, error estimate, resabs)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    resk = _WGK[7] * fc
    resg = _WG[3] * fc
    resabs = _WGK[7] * abs(fc)
    fv = [0.0] * 15
    fv[7] = fc
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(center - dx)
        f2 = f(center + dx)
        fv[j] = f1
        fv[14 - j] = f2
        resk += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    reskh = 0.5 * resk
    resasc = _WGK[7] * abs(fc - reskh)
    for j in range(7):
        resasc += _WGK[j] * (abs(fv[j] - reskh) + abs(fv[14 - j] - reskh))
    value = resk * half
    resabs *= abs(half)
    resasc *= abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > 2.2250738585072014e-305 / (50.0 * _EPS):
        err = max(err, 50.0 * _EPS * resabs)
    return value, err, resabs


def _adaptive(f, a: float, b: float, abs_tol: float, rel_tol: float,
              max_panels: int) -> tuple[float, float, int, bool]:
    """Globally adaptive GK15 bisection on [a, b]."""
    v, e, _ = _gk15(f, a, b)
    if not math.isfinite(v):
        raise QuadratureError(f"non-finite integrand on [{a}, {b}]")
    total_v, total_e = v, e
    heap = [(-e, a, b, v)]
    n = 1
    while total_e > max(abs_tol, rel_tol * abs(total_v)) and n < max_panels:
        neg_e, pa, pb, pv = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        if mid <= pa or mid >= pb:
            # interval at machine resolution; put it back and stop
            heapq.heappush(heap, (neg_e, pa, pb, pv))
            break
        v1, e1, _ = _gk15(f, pa, mid)
        v2, e2, _ = _gk15(f, mid, pb)
        if not (math.isfinite(v1) and math.isfinite(v2)):
            raise QuadratureError(f"non-finite integrand near [{pa}, {pb}]")
        total_v += v1 + v2 - pv
        total_e += e1 + e2 + neg_e
        heapq.heappush(heap, (-e1, pa, mid, v1))
        heapq.heappush(heap, (-e2, mid, pb, v2))
        n += 1
    # re-sum in position order so the result is independent of refinement path
    segs = sorted(heap, key=lambda s: s[1])
    value = math.fsum(s[3] for s in segs)
    error = math.fsum(-s[0] for s in segs)
    ok = error <= max(abs_tol, rel_tol * abs(value))
    return value, error, n, ok


def integrate_finite(f, a: float, b: float, spec: QuadratureSpec | None = None) -> QuadResult:
    """Adaptive integral of f over [a, b] with error below the spec tolerance.

    On panel exhaustion the best estimate and its error bound are returned
    with ``converged=False``.
    """
    spec = spec or QuadratureSpec()
    if not a < b:
        raise ValueError(f"interval must satisfy a < b, got [{a}, {b}]")
    value, error, n, ok = _adaptive(f, a, b, spec.abs_tol, spec.rel_tol, spec.max_panels)
    msg = "" if ok else f"max_panels={spec.max_panels} exhausted on [{a}, {b}]"
    return QuadResult(value, error, ok, panels=n, message=msg)


def _tail_fit(radii: np.ndarray, partials: np.ndarray, p: float) -> float:
    """Extrapolate partial integrals S(R_i) = I - tail(R_i) to R = infinity.

    The tail is modelled as a combination of R^(1-p), R^-p, R^(-p-1), ...;
    the fit is solved in the scaled variable R_max/R for conditioning.
    """
    k = len(radii)
    u = radii[-1] / radii
    cols = [np.ones_like(u)]
    for j in range(k - 1):
        cols.append(u ** (p - 1.0 + j))
    A = np.column_stack(cols)
    coef = np.linalg.solve(A, partials)
    return float(coef[0])


def integrate_semi_infinite_oscillatory(
    f,
    spec: QuadratureSpec | None = None,
    panel_offset: float = 0.0,
    tail_fit_from: float = 0.0,
) -> QuadResult:
    """Integral of f over (0, inf) for integrands that decay like r^-p with
    trigonometric/Bessel oscillation.

    Length-pi panels (each refined adaptively) are summed to the truncation
    radius; the remaining tail is removed by the phase-coherent checkpoint
    extrapolation described in the module docstring.  ``panel_offset`` shifts
    the panel grid (used to verify phase independence); ``tail_fit_from``
    pushes the extrapolation checkpoints past any non-asymptotic structure
    (secondary bumps) of the integrand.

    The integrand is never evaluated at 0; callers supply series limits for
    removable singularities.
    """
    spec = spec or QuadratureSpec()
    if not 0.0 <= panel_offset < math.pi:
        raise ValueError("panel_offset must lie in [0, pi)")

    n_panels = int(round(spec.tail_radius / math.pi))
    n_panels = max(n_panels - n_panels % 8, 16)
    n_checkpoints = 5
    first = min(int(math.ceil(tail_fit_from / math.pi)), n_panels - 2 * n_checkpoints)
    first = max(first, 0)
    # checkpoints at even panel counts: spacing multiple of 2 pi keeps every
    # integer harmonic at a fixed phase across the fit points
    marks = sorted({max(2, (first + (n_panels - first) * (i + 1) // n_checkpoints)
                        // 2 * 2) for i in range(n_checkpoints)})
    panel_tol = spec.abs_tol / n_panels

    partial = 0.0
    panel_err = 0.0
    radii, partials = [], []
    n_used = 0
    lo = 0.0
    for n in range(n_panels):
        hi = panel_offset + (n + 1) * math.pi
        v, e, used, _ = _adaptive(f, lo, hi, panel_tol, spec.rel_tol, 64)
        partial += v
        panel_err += e
        n_used += used
        lo = hi
        if (n + 1) in marks:
            radii.append(hi)
            partials.append(partial)

    radii = np.asarray(radii)
    partials = np.asarray(partials)
    value = _tail_fit(radii, partials, spec.tail_exponent)
    value_low = _tail_fit(radii[1:], partials[1:], spec.tail_exponent)
    tail_err = abs(value - value_low) + 4.0 * _EPS * abs(value)
    error = panel_err + tail_err
    ok = error <= spec.tolerance(value)
    msg = "" if ok else (
        f"tail bound {tail_err:.3e} + panel error {panel_err:.3e} exceeds "
        f"tolerance {spec.tolerance(value):.3e} at R={radii[-1]:.6g}"
    )
    return QuadResult(value, error, ok, panels=n_used, message=msg)


def integrate_semi_infinite_decay(
    f,
    spec: QuadratureSpec | None = None,
    breakpoints: tuple[float, ...] = (),
) -> QuadResult:
    """Integral of f over (0, inf) for smooth integrands decaying at least
    like 1/t^2, possibly with structure at widely separated scales.

    Integrates adaptively between 0, the sorted breakpoints, and
    T = 20 * max(breakpoints, 1); the tail is mapped to (0, 1] by t = T/v and
    integrated exactly (no truncation term), assuming f smooth there.
    """
    spec = spec or QuadratureSpec()
    points = sorted({b for b in breakpoints if b > 0.0})
    T = 20.0 * max(points[-1] if points else 1.0, 1.0)
    points = [0.0] + [b for b in points if b < T] + [T]

    total_v, total_e, total_n = 0.0, 0.0, 0
    seg_tol = spec.abs_tol / (len(points) + 1)
    ok = True
    for a, b in zip(points[:-1], points[1:]):
        v, e, n, seg_ok = _adaptive(f, a, b, seg_tol, spec.rel_tol, spec.max_panels)
        total_v += v
        total_e += e
        total_n += n
        ok = ok and seg_ok

    def tail(v: float) -> float:
        return f(T / v) * T / (v * v)

    v, e, n, seg_ok = _adaptive(tail, 0.0, 1.0, seg_tol, spec.rel_tol, spec.max_panels)
    total_v += v
    total_e += e
    total_n += n
    ok = ok and seg_ok and total_e <= spec.tolerance(total_v)
    msg = "" if ok else f"error {total_e:.3e} above tolerance {spec.tolerance(total_v):.3e}"
    return QuadResult(total_v, total_e, ok, panels=total_n, message=msg)


def integrate_radial_3d(
    g,
    spec: QuadratureSpec | None = None,
    angular_order: int = 32,
    vectorized: bool = False,
) -> QuadResult:
    """Azimuthally symmetric integral over R^3 in spherical coordinates:

        int_0^inf int_{-1}^{1} g(r, c) * 2 pi r^2 dc dr.

    The 2 pi r^2 Jacobian is applied here; the caller supplies bare g.  The
    angular integral uses a fixed Gauss-Legendre rule (exact for the
    polynomial-in-cos-theta integrands arising from spherical harmonics up to
    degree ~2*order); the radial integral uses the oscillatory semi-infinite
    strategy with effective tail exponent ``tail_exponent - 2`` (the r^2
    Jacobian acting on a g = O(r^-p) envelope).

    With ``vectorized=True``, g is called as g(r, c_array) -> array.
    """
    spec = spec or QuadratureSpec()
    if spec.tail_exponent <= 3.0:
        raise ValueError(
            "radial integration needs tail_exponent > 3 (envelope of g itself)"
        )
    nodes, weights = np.polynomial.legendre.leggauss(angular_order)

    if vectorized:
        def radial(r: float) -> float:
            return 2.0 * math.pi * r * r * float(np.dot(weights, g(r, nodes)))
    else:
        def radial(r: float) -> float:
            acc = 0.0
            for c, w in zip(nodes, weights):
                acc += w * g(r, float(c))
            return 2.0 * math.pi * r * r * acc

    inner_spec = QuadratureSpec(
        abs_tol=spec.abs_tol,
        rel_tol=spec.rel_tol,
        max_panels=spec.max_panels,
        tail_radius=spec.tail_radius,
        tail_exponent=spec.tail_exponent - 2.0,
    )
    return integrate_semi_infinite_oscillatory(radial, inner_spec)
