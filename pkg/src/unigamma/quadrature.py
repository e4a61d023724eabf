"""Truncated-line trapezoid quadrature and the closed-contour segments.

The improper integrals over t in (-inf, inf) are replaced by [-T, T] with T
chosen from an analytic majorant of the integrand, then summed with the
composite trapezoid rule and refined by step halving.  The integrands are
analytic in a strip around the real t-axis and Gaussian-decaying, so the
trapezoid rule converges spectrally; the Richardson difference between
successive halvings is an honest (if slightly conservative) error estimate.

Summation uses ``math.fsum`` (exactly rounded), which has two consequences
worth relying on: results are bit-reproducible regardless of evaluation
order, and exactly antisymmetric node contributions cancel exactly.

Convergence bookkeeping distinguishes the requested tolerance from the
*effective* tolerance ``max(tol, 16*eps*int |f|)``.  For heavily cancelling
integrands (deep left half-plane z) the requested absolute tolerance may lie
below what double precision can represent of the summand mass; converging to
the roundoff floor is then reported as convergence against the recorded
effective tolerance rather than a silent failure or a fake success at the
unreachable one.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from math import fsum
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import integrands
from .errors import DomainError, QuadratureNodeError

__all__ = [
    "ContourSpec",
    "QuadratureResult",
    "ContourLoopReport",
    "SegmentPath",
    "Truncation",
    "TRUNCATION_CAP",
    "tail_bound",
    "select_truncation",
    "trapezoid_line",
    "integrate_segment",
    "contour_loop",
]

_EPS = math.ulp(1.0)
# Multiplier on eps * int|f| when attributing summand mass to roundoff.
_CANCEL_FLOOR = 16.0
# Accept a halving when the Richardson difference sits comfortably below tol.
_RICHARDSON_MARGIN = 0.75
TRUNCATION_CAP = 200.0
_T_GRID = 0.5


@dataclass(frozen=True)
class ContourSpec:
    """Quadrature configuration: abscissa, truncation, step, tolerance."""

    sigma: float = 1.0
    half_width: float = 6.0
    step: float = 0.25
    tol: float = 1e-12
    max_refinements: int = 12

    def __post_init__(self):
        if not (0.0 < self.sigma <= 8.0) or not math.isfinite(self.sigma):
            raise DomainError(
                f"sigma must lie in (0, 8], got {self.sigma!r} "
                "(exp(sigma**2) must stay far from double overflow)"
            )
        if not math.isfinite(self.half_width) or self.half_width < self.sigma:
            raise DomainError(
                f"half_width must be finite and >= sigma, got {self.half_width!r}"
            )
        if not (0.0 < self.step <= self.half_width):
            raise DomainError(f"step must lie in (0, half_width], got {self.step!r}")
        if not (self.tol > 0.0) or not math.isfinite(self.tol):
            raise DomainError(f"tol must be a positive finite real, got {self.tol!r}")
        if int(self.max_refinements) != self.max_refinements or self.max_refinements < 1:
            raise DomainError(
                f"max_refinements must be an integer >= 1, got {self.max_refinements!r}"
            )


@dataclass(frozen=True)
class QuadratureResult:
    """One line integral: value, error estimate, and convergence diagnostics.

    ``step_used`` and ``tol_effective`` record the step after refinement and
    the tolerance actually enforced (the requested one, raised to the
    cancellation floor when roundoff dominates); ``node_peak`` is the largest
    integrand magnitude seen on the final grid, the raw ingredient of the
    cancellation estimate.
    """

    value: complex
    err_estimate: float
    evaluations: int
    converged: bool
    step_used: float
    tol_effective: float
    node_peak: float


@dataclass(frozen=True)
class ContourLoopReport:
    """The five segment integrals of the closed contour and their sum."""

    i_ab: complex
    i_bc: complex
    i_cd: complex
    i_de: complex
    i_ea: complex
    loop_sum: complex
    big_r: float
    big_theta: float


class SegmentPath(enum.Enum):
    """Segments of the closed contour, named by their endpoints.

    A = (sigma, -T), B = (sigma, T), C = iR, D = 0, E = -iR with
    R = sqrt(sigma^2 + T^2); the loop runs A->B->C->D->E->A.
    """

    LINE_AB = "line_ab"
    ARC_BC = "arc_bc"
    RAY_CD = "ray_cd"
    RAY_DE = "ray_de"
    ARC_EA = "arc_ea"


class Truncation(NamedTuple):
    """Selected half-width plus a flag for hitting the search cap."""

    half_width: float
    capped: bool


def _log_majorant(z: complex, sigma: float, t: float, *, log_weight: bool) -> float:
    """log of the pointwise bound (sigma^2+t^2)^p e^{pi|Im z|} e^{sigma^2-t^2}."""
    p = 0.5 * (1.0 - 2.0 * z.real)
    u = sigma * sigma + t * t
    lm = p * math.log(u) + math.pi * abs(z.imag) + sigma * sigma - t * t
    if log_weight:
        # |2 Log w| <= ln(sigma^2+t^2) + pi on the line.
        lm += math.log(abs(math.log(u)) + math.pi)
    return lm


def tail_bound(z, sigma: float, half_width: float, *, log_weight: bool = False) -> float:
    """Rigorous bound on the |t| > half_width tail of the G-line integral.

    For p <= 0 the majorant is dominated by e^{T^2 - t^2} <= e^{-2T(t-T)} on
    the tail, giving majorant(T)/(2T); for p > 0 the polynomial factor is
    folded into a half-Gaussian decay, giving majorant(T)/T provided T sits
    beyond the majorant's crest (select_truncation's search floor enforces
    that).
    """
    z = complex(z)
    p = 0.5 * (1.0 - 2.0 * z.real)
    lm = _log_majorant(z, sigma, half_width, log_weight=log_weight)
    if lm > 700.0:
        return math.inf
    return math.exp(lm) / ((2.0 * half_width) if p <= 0 else half_width)


def select_truncation(z, sigma: float, tol: float, *, log_weight: bool = False) -> Truncation:
    """Smallest half-width T on a 0.5-grid whose tail bound is <= tol.

    ``tol`` is the tail budget itself; callers that split an overall target
    between tail and discretization pass their tail share here.  The search
    starts at max(sigma + 3, crest + 1) so the p > 0 branch of tail_bound is
    valid, and caps at T = 200 (flagged) for pathological inputs.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"z must be finite, got {z!r}")
    if not (0.0 < sigma <= 8.0):
        raise DomainError(f"sigma must lie in (0, 8], got {sigma!r}")
    if not (tol > 0.0) or not math.isfinite(tol):
        raise DomainError(f"tol must be a positive finite real, got {tol!r}")
    p = 0.5 * (1.0 - 2.0 * z.real)
    crest = math.sqrt(max(2.0 * p - sigma * sigma, 0.0))
    start = max(sigma + 3.0, crest + 1.0)
    half_width = math.ceil(start / _T_GRID) * _T_GRID
    while half_width < TRUNCATION_CAP and tail_bound(
        z, sigma, half_width, log_weight=log_weight
    ) > tol:
        half_width += _T_GRID
    if tail_bound(z, sigma, half_width, log_weight=log_weight) > tol:
        return Truncation(TRUNCATION_CAP, True)
    return Truncation(half_width, False)


def _fsum_trapezoid(values: np.ndarray, step: float) -> complex:
    re = values.real.copy()
    im = values.imag.copy()
    re[0] *= 0.5
    re[-1] *= 0.5
    im[0] *= 0.5
    im[-1] *= 0.5
    return complex(step * fsum(re.tolist()), step * fsum(im.tolist()))


def _trapezoid_joint(
    fs: Sequence[Callable[[np.ndarray], np.ndarray]], spec: ContourSpec
) -> list[QuadratureResult]:
    """Trapezoid-with-halving on several integrands over shared nodes.

    All integrands see identical node sets each level and the refinement
    stops only when every one of them meets its effective tolerance; sharing
    nodes lets ratio-type consumers (digamma) cancel common error.
    """
    half_width = spec.half_width
    n = max(2, math.ceil(half_width / spec.step))
    count = len(fs)
    sums = [0j] * count
    prev: list[complex | None] = [None] * count
    diffs = [math.inf] * count
    abs_ints = [0.0] * count
    peaks = [0.0] * count
    tol_eff = [spec.tol] * count
    evaluations = 0
    step = half_width / n

    for _ in range(spec.max_refinements + 1):
        step = half_width / n
        # Nodes are built as k*step over symmetric integer k, so t and -t
        # are exact negatives and conjugate symmetry survives bit-for-bit.
        nodes = np.arange(-n, n + 1, dtype=float) * step
        evaluations += nodes.size
        for i, f in enumerate(fs):
            values = np.asarray(f(nodes), dtype=complex)
            finite = np.isfinite(values.real) & np.isfinite(values.imag)
            if not finite.all():
                bad = float(nodes[np.argmin(finite)])
                raise QuadratureNodeError(
                    f"integrand returned a non-finite value at node t={bad!r}",
                    node=bad,
                )
            sums[i] = _fsum_trapezoid(values, step)
            magnitudes = np.abs(values)
            peaks[i] = float(magnitudes.max())
            magnitudes[0] *= 0.5
            magnitudes[-1] *= 0.5
            abs_ints[i] = step * float(np.sum(magnitudes))
        if all(p is not None for p in prev):
            diffs = [abs(s - p) for s, p in zip(sums, prev)]
            tol_eff = [
                max(spec.tol, _CANCEL_FLOOR * _EPS * a) for a in abs_ints
            ]
            if all(d <= _RICHARDSON_MARGIN * te for d, te in zip(diffs, tol_eff)):
                break
        prev = list(sums)
        n *= 2

    results = []
    for i in range(count):
        err = max(diffs[i], _EPS * abs_ints[i])
        ok = diffs[i] <= _RICHARDSON_MARGIN * tol_eff[i]
        results.append(
            QuadratureResult(
                value=sums[i],
                err_estimate=err,
                evaluations=evaluations,
                converged=ok,
                step_used=step,
                tol_effective=tol_eff[i],
                node_peak=peaks[i],
            )
        )
    return results


def trapezoid_line(f: Callable[[np.ndarray], np.ndarray], spec: ContourSpec) -> QuadratureResult:
    """Composite trapezoid over t in [-T, T] with step-halving refinement."""
    return _trapezoid_joint((f,), spec)[0]


def _lower_gamma_series(a: complex, x: float) -> complex:
    """Lower incomplete gamma(a, x) via its power series; needs x <= ~1.

    gamma(a, x) = x^a * sum_k (-x)^k / (k! (a+k)); with x <= 1 the series is
    alternating with rapidly shrinking terms, so ~40 terms reach eps.
    """
    total = 0j
    term = 1.0 + 0j
    for k in range(120):
        total += term / (a + k)
        term *= -x / (k + 1)
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
    return cmath.exp(a * math.log(x)) * total


def _ray_radial(y: complex, big_r: float, spec: ContourSpec) -> complex:
    """J(y, R) = int_0^R r^{-y} e^{-r^2} dr, shared by both rays.

    The endpoint r = 0 carries the r^{-y} weight, so a head cell [0, H] is
    integrated analytically after the proof-style substitution v = r^2:
    int_0^H r^{-y} e^{-r^2} dr = (1/2) * lower_gamma((1-y)/2, H^2).  H is
    *fixed* at min(1, R/2) rather than shrinking with the step — a moving
    head cell reintroduces an O(h^2 * f'(H)) endpoint term that blows up for
    oscillatory pure-imaginary y.  The remaining smooth piece [H, R] gets the
    usual trapezoid-with-halving treatment.
    """
    a = (1.0 - y) / 2.0
    head_end = min(1.0, 0.5 * big_r)
    head = 0.5 * _lower_gamma_series(a, head_end * head_end)

    n = max(4, math.ceil((big_r - head_end) / spec.step))
    prev = None
    total = head
    diff = math.inf
    for _ in range(spec.max_refinements + 1):
        h = (big_r - head_end) / n
        r = head_end + np.arange(n + 1, dtype=float) * h
        vals = np.exp(-y * np.log(r) - r * r)
        total = head + _fsum_trapezoid(vals, h)
        if prev is not None:
            diff = abs(total - prev)
            if diff <= _RICHARDSON_MARGIN * spec.tol:
                break
        prev = total
        n *= 2
    return total


def _arc(y: complex, big_r: float, theta0: float, theta1: float, spec: ContourSpec) -> complex:
    """int f(w) dw over the arc w = R e^{i theta}, theta in [theta0, theta1]."""
    span = theta1 - theta0
    # e^{i R^2 sin 2theta} oscillates with frequency ~2R^2; start with about
    # one node per radian of that phase so refinement never aliases.
    n = max(8, math.ceil(span / spec.step), math.ceil(span * big_r * big_r))
    log_r = math.log(big_r)
    prev = None
    total = 0j
    for _ in range(spec.max_refinements + 1):
        theta = theta0 + np.arange(n + 1, dtype=float) * (span / n)
        w_sq = (big_r * big_r) * np.exp(2j * theta)
        vals = np.exp(-y * (log_r + 1j * theta) + w_sq) * (1j * big_r * np.exp(1j * theta))
        total = _fsum_trapezoid(vals, span / n)
        if prev is not None and abs(total - prev) <= _RICHARDSON_MARGIN * spec.tol:
            break
        prev = total
        n *= 2
    return total


def integrate_segment(y, path: SegmentPath, spec: ContourSpec) -> complex:
    """Path integral of w^{-y} e^{w^2} along one contour segment.

    The vertical segment reuses trapezoid_line (dw = i dt); the arcs are
    parametrized by angle; the two rays reduce to the shared radial integral
    J(y, R) with the constant phases e^{-+ i pi y / 2} split off:

        I_CD = -i e^{-i pi y/2} J(y, R)      (C = iR down to the origin)
        I_DE = -i e^{+i pi y/2} J(y, R)      (origin down to E = -iR)

    Rays pass through the origin, so Re(y) <= 0 is required for
    integrability there; the arcs and the vertical line have no such
    restriction.
    """
    y = complex(y)
    if not (math.isfinite(y.real) and math.isfinite(y.imag)):
        raise DomainError(f"y must be finite, got {y!r}")
    path = SegmentPath(path)
    big_r = math.hypot(spec.sigma, spec.half_width)
    big_theta = math.acos(spec.sigma / big_r)

    if path is SegmentPath.LINE_AB:
        z_equiv = (y + 1.0) / 2.0
        quad = trapezoid_line(
            lambda t: integrands.g_integrand(z_equiv, spec.sigma, t), spec
        )
        return 1j * quad.value
    if path is SegmentPath.ARC_BC:
        return _arc(y, big_r, big_theta, 0.5 * math.pi, spec)
    if path is SegmentPath.ARC_EA:
        return _arc(y, big_r, -0.5 * math.pi, -big_theta, spec)

    if y.real > 0.0:
        raise DomainError(
            f"ray through the origin requires Re(y) <= 0 for integrability, got y={y!r}"
        )
    radial = _ray_radial(y, big_r, spec)
    if path is SegmentPath.RAY_CD:
        return -1j * cmath.exp(-0.5j * math.pi * y) * radial
    return -1j * cmath.exp(0.5j * math.pi * y) * radial


def contour_loop(y, spec: ContourSpec) -> ContourLoopReport:
    """All five segment integrals of w^{-y} e^{w^2} around the closed loop.

    The integrand is entire for Re(y) <= 0 (the origin is regular or an
    integrable singularity on the rays), so the exact loop sum is zero and
    the reported ``loop_sum`` measures accumulated quadrature error.
    """
    y = complex(y)
    if y.real > 0.0:
        raise DomainError(
            f"contour_loop requires Re(y) <= 0 (analyticity inside the loop), got y={y!r}"
        )
    i_ab = integrate_segment(y, SegmentPath.LINE_AB, spec)
    i_bc = integrate_segment(y, SegmentPath.ARC_BC, spec)
    i_cd = integrate_segment(y, SegmentPath.RAY_CD, spec)
    i_de = integrate_segment(y, SegmentPath.RAY_DE, spec)
    i_ea = integrate_segment(y, SegmentPath.ARC_EA, spec)
    big_r = math.hypot(spec.sigma, spec.half_width)
    return ContourLoopReport(
        i_ab=i_ab,
        i_bc=i_bc,
        i_cd=i_cd,
        i_de=i_de,
        i_ea=i_ea,
        loop_sum=i_ab + i_bc + i_cd + i_de + i_ea,
        big_r=big_r,
        big_theta=math.acos(spec.sigma / big_r),
    )
