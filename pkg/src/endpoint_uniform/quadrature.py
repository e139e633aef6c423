"""Adaptive panel quadrature on ray and segment contours.

The direct ("oracle") evaluations of the integral and its companions all reduce
to one-dimensional integrals along straight contours in the complex plane:
either a finite segment or a ray truncated at a radius r_max chosen from the
decay of exp(i t F).  Panels are 15-point Gauss-Kronrod with the embedded
7-point Gauss rule supplying the error estimate.  Two refinement triggers:

  * panel error above its share of the tolerance (ordinary adaptivity);
  * the complex phase t F advancing by more than 2*pi across a panel that
    still contributes (oscillation/decay resolution; without it a panel much
    wider than the decay scale can look converged while missing everything).

Panel evaluation is batched through numpy, and the final sum runs over panels
sorted by position, so results are reproducible run to run.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import phase as phase_mod
from .errors import NonConvergence, NumericalError, SigmaUnsupported
from .params import DerivedParams, ProblemParams, derive

# 15-point Kronrod nodes on [-1,1] and weights; Gauss-7 weights sit on the odd
# indexed nodes.  Values as tabulated for the classical QUADPACK pair.
_XGK = np.array(
    [
        -0.9914553711208126,
        -0.9491079123427585,
        -0.8648644233597691,
        -0.7415311855993944,
        -0.5860872354676911,
        -0.4058451513773972,
        -0.2077849550078985,
        0.0,
        0.2077849550078985,
        0.4058451513773972,
        0.5860872354676911,
        0.7415311855993944,
        0.8648644233597691,
        0.9491079123427585,
        0.9914553711208126,
    ]
)
_WGK = np.array(
    [
        0.0229353220105292,
        0.0630920926299786,
        0.1047900103222502,
        0.1406532597155259,
        0.1690047266392679,
        0.1903505780647854,
        0.2044329400752989,
        0.2094821410847278,
        0.2044329400752989,
        0.1903505780647854,
        0.1690047266392679,
        0.1406532597155259,
        0.1047900103222502,
        0.0630920926299786,
        0.0229353220105292,
    ]
)
_WG = np.array(
    [
        0.1294849661688697,
        0.2797053914892767,
        0.3818300505051189,
        0.4179591836734694,
        0.3818300505051189,
        0.2797053914892767,
        0.1294849661688697,
    ]
)

PANEL_CAP_DEFAULT = 20000
PHASE_ADVANCE_CAP = 2.0 * math.pi


@dataclass(frozen=True)
class RayContour:
    """Ray origin + s*exp(i*angle), s in [0, r_max]."""

    origin: complex
    angle: float
    r_max: float


@dataclass
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    panels: int
    truncation_bound: float

    def as_dict(self):
        return {
            "re": self.value.real,
            "im": self.value.imag,
            "abs_err": self.abs_error_estimate,
            "panels": self.panels,
            "truncation_bound": self.truncation_bound,
        }


def _gk_batch(f, lo, hi):
    """Evaluate GK15 on each [lo_i, hi_i].  Returns (integral, err, absint)."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    s = mid[:, None] + half[:, None] * _XGK[None, :]
    y = np.asarray(f(s.ravel()), dtype=complex).reshape(s.shape)
    if not np.all(np.isfinite(y)):
        raise NumericalError("integrand returned a non-finite value")
    ik = (y @ _WGK) * half
    ig = (y[:, 1::2] @ _WG) * half
    err = np.abs(ik - ig)
    absint = (np.abs(y) @ _WGK) * half
    return ik, err, absint


def _adaptive(f, a, b, tol, phase=None, breaks=None, panel_cap=PANEL_CAP_DEFAULT):
    """Adaptive GK15 of f over [a, b] (real parameter line).

    phase, when given, maps parameter arrays to the complex oscillation
    exponent t*F; panels with more than 2*pi of phase advance and a
    non-negligible modulus are split regardless of their error estimate.
    """
    if breaks is None:
        breaks = np.array([a, b])
    lo = np.asarray(breaks[:-1], dtype=float)
    hi = np.asarray(breaks[1:], dtype=float)
    vals, errs, absints = _gk_batch(f, lo, hi)
    if phase is not None:
        wends = np.asarray(phase(np.concatenate([lo, [hi[-1]]])), dtype=complex)
        wlo, whi = wends[:-1].copy(), wends[1:].copy()
    min_width = 1e-14 * (b - a)
    neglect = 1e-3 * tol

    for _ in range(200):
        n = len(lo)
        if n > panel_cap:
            break
        total_err = float(np.sum(errs))
        if phase is not None:
            adv = np.abs(whi - wlo)
            must = (adv > PHASE_ADVANCE_CAP) & (absints > neglect)
        else:
            must = np.zeros(n, dtype=bool)
        if total_err <= tol and not np.any(must):
            break
        want = errs > max(0.5 * tol / n, 0.0)
        split = (must | want) & (hi - lo > min_width)
        if not np.any(split):
            break
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[~split], lo[split], mid])
        new_hi = np.concatenate([hi[~split], mid, hi[split]])
        keep_vals = vals[~split]
        keep_errs = errs[~split]
        keep_abs = absints[~split]
        m = int(np.sum(split))
        child_lo = np.concatenate([lo[split], mid])
        child_hi = np.concatenate([mid, hi[split]])
        cvals, cerrs, cabs = _gk_batch(f, child_lo, child_hi)
        lo = new_lo
        hi = new_hi
        vals = np.concatenate([keep_vals, cvals])
        errs = np.concatenate([keep_errs, cerrs])
        absints = np.concatenate([keep_abs, cabs])
        if phase is not None:
            wmid = np.asarray(phase(mid), dtype=complex)
            wlo = np.concatenate([wlo[~split], wlo[split], wmid])
            whi = np.concatenate([whi[~split], wmid, whi[split]])

    order = np.argsort(lo, kind="stable")
    value = complex(np.sum(vals[order]))
    err = float(np.sum(errs))
    n = len(lo)
    if err > tol * 1.0000001 or (n > panel_cap):
        result = QuadratureResult(value, err, n, 0.0)
        raise NonConvergence(
            f"adaptive quadrature stalled at {n} panels, error {err:.3e} > tol {tol:.3e}",
            result=result,
        )
    return value, err, n


def _geometric_breaks(r_max, levels=52):
    """Panel edges 0, r_max*2^-levels, ..., r_max/2, r_max.

    The integrand often lives on a scale many orders below r_max (sharp decay
    of exp(i t F) at large t); plain bisection from one panel can miss it.
    """
    g = r_max * 2.0 ** (-np.arange(levels, -1, -1.0))
    return np.concatenate([[0.0], g])


def integrate_ray(integrand, contour: RayContour, tol: float, phase=None,
                  panel_cap=PANEL_CAP_DEFAULT, truncation_bound=0.0):
    """Integrate along contour.origin + s e^(i angle), s in [0, contour.r_max].

    integrand and phase take numpy arrays of complex z.  tol is an absolute
    tolerance on the value; the per-panel error estimates must sum below it.
    Raises NonConvergence (with the partial result attached) past panel_cap.
    """
    rot = cmath.exp(1j * contour.angle)
    z0 = contour.origin

    def f(s):
        return integrand(z0 + s * rot) * rot

    ph = None
    if phase is not None:
        def ph(s):
            return phase(z0 + s * rot)

    breaks = _geometric_breaks(contour.r_max)
    value, err, n = _adaptive(f, 0.0, contour.r_max, tol, phase=ph,
                              breaks=breaks, panel_cap=panel_cap)
    return QuadratureResult(value, err, n, truncation_bound)


def integrate_segment(integrand, z_from, z_to, tol: float, phase=None,
                      panel_cap=PANEL_CAP_DEFAULT):
    """Integrate along the straight segment from z_from to z_to."""
    z0 = complex(z_from)
    dz = complex(z_to) - z0
    length = abs(dz)
    if length == 0.0:
        return QuadratureResult(0.0 + 0.0j, 0.0, 0, 0.0)
    rot = dz / length

    def f(s):
        return integrand(z0 + s * rot) * rot

    ph = None
    if phase is not None:
        def ph(s):
            return phase(z0 + s * rot)

    value, err, n = _adaptive(f, 0.0, length, tol, phase=ph, panel_cap=panel_cap)
    return QuadratureResult(value, err, n, 0.0)


def ray_truncation(phase, amplitude, origin, angle, tol,
                   j_lo=-120, j_hi=40):
    """Truncation radius by the decay rule, searched on a doubling grid.

    Picks the smallest r = 2^j with

        Im[t F(z(r))] >= log(1/tol) + log(1 + r * A(r)),

    A(r) the running max of the amplitude modulus on the grid, so the
    discarded tail is bounded (to leading order) by tol.  Returns
    (r_max, truncation_bound).
    """
    rot = cmath.exp(1j * angle)
    r = 2.0 ** np.arange(j_lo, j_hi + 1, dtype=float)
    z = origin + r * rot
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        imw = np.asarray(phase(z), dtype=complex).imag
        amp = np.abs(np.asarray(amplitude(z), dtype=complex))
    amp = np.where(np.isfinite(amp), amp, 0.0)
    imw = np.where(np.isfinite(imw), imw, np.inf)
    ampmax = np.maximum.accumulate(amp)
    need = math.log(1.0 / tol) + np.log1p(r * ampmax)
    ok = imw >= need
    if not np.any(ok):
        raise NonConvergence("no truncation radius found: phase decay too slow")
    i = int(np.argmax(ok))
    with np.errstate(over="ignore"):
        bound = float(np.exp(-imw[i]) * (1.0 + r[i] * ampmax[i]))
    if not math.isfinite(bound):
        bound = 0.0
    return float(r[i]), bound


# ---------------------------------------------------------------------------
# Oracles: direct quadrature of the integral and its companions.
# ---------------------------------------------------------------------------


def endpoint_prefactor(d: DerivedParams) -> complex:
    """Factor relating the offset-frame integral to the original one:

    J = (lambda_c/(1+lambda_c))^(1/2) (1+lambda_c)^(1/2-sigma)
        * exp(i t f0/(1+lambda_c)) * J_tilde
    """
    lc = d.lambda_c
    mod = math.sqrt(lc / (1.0 + lc)) * (1.0 + lc) ** (0.5 - d.sigma)
    ph = d.t * phase_mod.f0(d.Lambda, lc) / (1.0 + lc)
    return mod * cmath.exp(1j * ph)


def _jb_amplitude(sigma):
    def amp(z):
        return (1.0 - z) ** -0.5 * z ** (sigma - 0.5)

    return amp


def jb_oracle(p: ProblemParams, tol: float = 1e-10,
              panel_cap=PANEL_CAP_DEFAULT) -> QuadratureResult:
    """Direct adaptive quadrature of J(t; lambda) from the left endpoint.

    Contour: the ray 1 - t^(delta-1) + s e^(i phi) with phi = select_phi(lambda),
    truncated by the decay rule.  tol is absolute.
    """
    d = derive(p)
    z0 = 1.0 - p.t ** (p.delta - 1.0)
    amp = _jb_amplitude(p.sigma)

    def w(z):
        return p.t * phase_mod.big_f(z, p.lam)

    def f(z):
        return amp(z) * np.exp(1j * w(z))

    r_max, tb = ray_truncation(w, amp, z0, d.phi, tol)
    contour = RayContour(z0, d.phi, r_max)
    res = integrate_ray(f, contour, tol, phase=w, panel_cap=panel_cap,
                        truncation_bound=tb)
    return res


def jb1_oracle(p: ProblemParams, k: float, tol: float = 1e-10,
               panel_cap=PANEL_CAP_DEFAULT) -> QuadratureResult:
    """Real-segment piece: integral over [1 - t^(delta-1), 1 - k].

    Only sigma = 1/2 (the split analysis drops z^(sigma-1/2)).
    """
    if p.sigma != 0.5:
        raise SigmaUnsupported("split pieces are defined for sigma = 1/2 only")
    if not (0.0 < k < p.t ** (p.delta - 1.0)):
        raise NumericalError(f"split point k={k} must lie in (0, t^(delta-1))")
    z0 = 1.0 - p.t ** (p.delta - 1.0)
    z1 = 1.0 - k

    def w(z):
        return p.t * phase_mod.big_f(z, p.lam)

    def f(z):
        return (1.0 - z) ** -0.5 * np.exp(1j * w(z))

    return integrate_segment(f, z0, z1, tol, phase=w, panel_cap=panel_cap)


def jb2_oracle(p: ProblemParams, k: float, tol: float = 1e-10,
               panel_cap=PANEL_CAP_DEFAULT) -> QuadratureResult:
    """Ray piece: integral from 1 - k out to infinity at angle select_phi."""
    if p.sigma != 0.5:
        raise SigmaUnsupported("split pieces are defined for sigma = 1/2 only")
    if not (0.0 < k < p.t ** (p.delta - 1.0)):
        raise NumericalError(f"split point k={k} must lie in (0, t^(delta-1))")
    d = derive(p)
    z0 = 1.0 - k

    def w(z):
        return p.t * phase_mod.big_f(z, p.lam)

    def amp(z):
        return (1.0 - z) ** -0.5

    def f(z):
        return amp(z) * np.exp(1j * w(z))

    r_max, tb = ray_truncation(w, amp, z0, d.phi, tol)
    contour = RayContour(z0, d.phi, r_max)
    return integrate_ray(f, contour, tol, phase=w, panel_cap=panel_cap,
                         truncation_bound=tb)


def jtilde_oracle(p: ProblemParams, tol: float = 1e-10,
                  panel_cap=PANEL_CAP_DEFAULT) -> QuadratureResult:
    """Offset-frame integral J_tilde = int_0^(inf e^(i phi)) g e^(i t h) dzeta."""
    d = derive(p)
    lc = d.lambda_c

    def w(zeta):
        return p.t * phase_mod.f1(zeta, lc, d.Lambda) / (1.0 + lc)

    def amp(zeta):
        return phase_mod.amp_g(zeta, lc, p.sigma)

    def f(zeta):
        return amp(zeta) * np.exp(1j * w(zeta))

    r_max, tb = ray_truncation(w, amp, 0.0, d.phi, tol)
    contour = RayContour(0.0, d.phi, r_max)
    return integrate_ray(f, contour, tol, phase=w, panel_cap=panel_cap,
                         truncation_bound=tb)


def phi_oracle(u, d: DerivedParams, tol: float = 1e-10,
               panel_cap=PANEL_CAP_DEFAULT) -> QuadratureResult:
    """Direct quadrature of the incomplete Gaussian-phase tail

        Phi(u) = int_u^(inf e^(i pi/4)) exp(i (lambda_c t/2)(v^2 + beta v)) dv,

    beta = 2 log(1+Lambda)/(1+lambda_c).  u may be 0 or any point from which
    the pi/4 ray stays in the decay sector (in practice: on that ray).
    """
    lc = d.lambda_c
    half = 0.5 * lc * d.t
    beta = 2.0 * math.log1p(d.Lambda) / (1.0 + lc)

    def w(v):
        return half * (v * v + beta * v)

    def amp(v):
        return np.ones_like(np.asarray(v, dtype=complex))

    def f(v):
        return np.exp(1j * w(v))

    angle = math.pi / 4.0
    r_max, tb = ray_truncation(w, amp, complex(u), angle, tol)
    contour = RayContour(complex(u), angle, r_max)
    return integrate_ray(f, contour, tol, phase=w, panel_cap=panel_cap,
                         truncation_bound=tb)
