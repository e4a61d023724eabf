"""Pointwise integrand kernels on the vertical line w = sigma + i*t.

Everything here reduces to one primitive: w**c times an exponential weight
(e^{w^2} for the contour kernels, e^w for the half-plane kernel).  The naive
assembly ``exp(c*log(w) + w**2)`` is not good enough: for strongly negative
Re(c) the phase ``c*arg(w) + 2*sigma*t`` and the real exponent
``sigma^2 - t^2`` are both O(100) while the integral they feed cancels down
to O(1e-10), so every bit lost in building the argument of ``exp`` surfaces
as absolute error far above the target tolerance.  The kernels therefore
assemble magnitude and phase separately and carry the phase (and the real
exponent) as an unevaluated double-double — classic TwoSum / Dekker-split
arithmetic — folding the low-order parts back in as first-order corrections
to ``cos``/``sin``/``exp``.  That keeps the pointwise relative error at a
few ulp over the whole supported box.

All kernels are pure, stateless, and accept ``t`` as a scalar or ndarray;
scalars come back as built-in ``complex``.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

__all__ = [
    "principal_power",
    "g_integrand",
    "g_log_integrand",
    "laplace_integrand",
]

# Dekker's splitter for 53-bit doubles: 2**27 + 1.
_SPLITTER = 134217729.0

# sigma beyond this makes e^{sigma^2} meaningless in double precision;
# callers validate earlier (ContourSpec), this is a hard backstop.
_SIGMA_LIMIT = 26.0


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def _dd_add(ah, al, bh, bl):
    sh, sl = _two_sum(ah, bh)
    return _two_sum(sh, sl + (al + bl))


def _check_complex(name: str, value) -> complex:
    z = complex(value)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return z


def _check_sigma(sigma) -> float:
    s = float(sigma)
    if not np.isfinite(s) or s <= 0.0:
        raise DomainError(f"sigma must be a positive finite real, got {sigma!r}")
    if s > _SIGMA_LIMIT:
        raise DomainError(f"sigma={s} overflows exp(sigma**2) in double precision")
    return s


def _check_t(t):
    arr = np.asarray(t, dtype=float)
    if not np.isfinite(arr).all():
        raise DomainError("t must be finite")
    return arr if arr.ndim else float(arr)


def _wpow_parts(cr: float, ci: float, sigma, t):
    """Magnitude of w**c (plain double) and its phase as a double-double.

    w = sigma + i*t; the |w|**cr factor leans on the libm ``pow``, whose
    internal extended precision beats any explicit exp(cr*log) assembly.
    """
    u = sigma * sigma + t * t
    theta = np.arctan2(t, sigma)
    mag = np.power(u, 0.5 * cr)
    ph, pl = _two_prod(cr, theta)
    if ci != 0.0:
        mag = mag * np.exp(-ci * theta)
        lh, ll = _two_prod(0.5 * ci, np.log(u))
        ph, pl = _dd_add(ph, pl, lh, ll)
    return mag, ph, pl


def _assemble(mag, ph, pl):
    # e^{i(ph+pl)} ~= (cos(ph) - pl*sin(ph)) + i(sin(ph) + pl*cos(ph)):
    # pl is ulp-sized relative to ph, so first order is exact to O(pl^2).
    c = np.cos(ph)
    s = np.sin(ph)
    return (mag * (c - pl * s)) + 1j * (mag * (s + pl * c))


def principal_power(w, a) -> complex:
    """w**a on the principal branch, requiring Re(w) > 0.

    The half-plane restriction keeps arg(w) inside (-pi/2, pi/2), so the
    branch cut of the logarithm is never approached.
    """
    w = _check_complex("w", w)
    a = _check_complex("a", a)
    if w.real <= 0.0:
        raise DomainError(
            f"principal_power requires Re(w) > 0 (branch-cut hazard), got w={w!r}"
        )
    mag, ph, pl = _wpow_parts(a.real, a.imag, w.real, w.imag)
    return complex(_assemble(mag, ph, pl))


def g_integrand(z, sigma, t):
    """w**(1-2z) * e^{w^2} with w = sigma + i*t; vectorized over t."""
    z = _check_complex("z", z)
    sigma = _check_sigma(sigma)
    t = _check_t(t)
    mag, ph, pl = _wpow_parts(1.0 - 2.0 * z.real, -2.0 * z.imag, sigma, t)
    # e^{w^2}: real exponent sigma^2 - t^2 in double-double, phase 2*sigma*t.
    sh, sl = _two_prod(sigma, sigma)
    th, tl = _two_prod(t, t)
    dh, dl = _dd_add(sh, sl, -th, -tl)
    mag = mag * np.exp(dh) * (1.0 + dl)
    qh, ql = _two_prod(2.0 * sigma, t)
    ph, pl = _dd_add(ph, pl, qh, ql)
    out = _assemble(mag, ph, pl)
    return out if np.ndim(t) else complex(out)


def g_log_integrand(z, sigma, t):
    """g_integrand weighted by 2*Log(w) — the log-derivative kernel.

    ``log(w**2)`` is always realized as ``2*Log(w)``: Re(w) = sigma > 0 puts
    arg(w) in (-pi/2, pi/2), hence arg(w^2) in (-pi, pi), and doubling the
    principal logarithm is the unambiguous reading.
    """
    base = g_integrand(z, sigma, t)
    sigma = float(sigma)
    t = np.asarray(t, dtype=float) if np.ndim(t) else float(t)
    u = sigma * sigma + t * t
    log2w = np.log(u) + 2j * np.arctan2(t, sigma)
    out = base * log2w
    return out if np.ndim(t) else complex(out)


def laplace_integrand(z, sigma, t):
    """w**(-z) * e^{w} with w = sigma + i*t; vectorized over t."""
    z = _check_complex("z", z)
    sigma = _check_sigma(sigma)
    t = _check_t(t)
    mag, ph, pl = _wpow_parts(-z.real, -z.imag, sigma, t)
    # e^{w}: magnitude e^{sigma}, phase t (exact, so a plain dd add-in).
    mag = mag * np.exp(sigma)
    ph, pl = _dd_add(ph, pl, t, np.zeros_like(t) if np.ndim(t) else 0.0)
    out = _assemble(mag, ph, pl)
    return out if np.ndim(t) else complex(out)
