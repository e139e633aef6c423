"""Problem parameters and derived quantities.

The integral under study is

    J(t; lambda) = int_{1-t^(delta-1)}^{inf e^(i phi)}
                   (1-z)^(-1/2) z^(sigma-1/2) exp(i t F(z; lambda)) dz

with F(z; lambda) = (1-z) log(1-z) + z log z + z log lambda.  A stationary
point of F sits at z = 1/(1+lambda); it coalesces with the left endpoint when
lambda equals the critical value lambda_c = t^(delta-1) / (1 - t^(delta-1)).
Everything downstream is phrased in the offset Lambda = lambda/lambda_c - 1
and the coalescence parameter

    omega = sqrt(lambda_c t / 2) * log(1+Lambda) / (1+lambda_c),

which measures how far the stationary point is from the endpoint in units of
the local Fresnel scale.  This module validates raw inputs and computes these
derived quantities, plus the contour split (k, a, D, D_minus) used by the
integration-by-parts expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .errors import InvalidParam, InvalidSplit, OutOfRange

# Sweeps are capped at this omega by default; beyond it the large-omega branch
# is accurate to ~1e-4 relative and the uniform question is moot.
OMEGA_CAP_DEFAULT = 20.0


@dataclass(frozen=True)
class ProblemParams:
    """Raw problem inputs, validated on construction."""

    t: float
    delta: float
    sigma: float
    lam: float

    def __post_init__(self):
        if not (self.t > 1.0) or not math.isfinite(self.t):
            raise InvalidParam(f"t must be finite and > 1, got {self.t}")
        if not (0.0 < self.delta < 1.0):
            raise InvalidParam(f"delta must lie in (0,1), got {self.delta}")
        if not (0.5 <= self.sigma < 1.0):
            raise InvalidParam(f"sigma must lie in [1/2,1), got {self.sigma}")
        if not (self.lam > 0.0) or not math.isfinite(self.lam):
            raise InvalidParam(f"lambda must be finite and > 0, got {self.lam}")
        lo, hi = admissible_lambda_range(self.t, self.delta)
        # Closed interval: both endpoints are admissible.
        if not (lo <= self.lam <= hi):
            raise OutOfRange(
                f"lambda={self.lam} outside admissible [{lo}, {hi}] "
                f"for t={self.t}, delta={self.delta}",
                lower=lo,
                upper=hi,
            )


@dataclass(frozen=True)
class DerivedParams:
    """Derived quantities; split fields stay None until choose_split is called."""

    t: float
    delta: float
    sigma: float
    lam: float
    lambda_c: float
    Lambda: float
    omega: float
    phi: float
    k: Optional[float] = None
    a: Optional[float] = None
    D: Optional[float] = None
    D_minus: Optional[float] = None


def admissible_lambda_range(t: float, delta: float):
    """Closed admissible window [lambda_c, t^(1-delta) - 1]."""
    p = t ** (delta - 1.0)
    lo = p / (1.0 - p)
    hi = t ** (1.0 - delta) - 1.0
    return lo, hi


def critical_lambda(t: float, delta: float) -> float:
    """lambda_c = t^(delta-1)/(1 - t^(delta-1)), the endpoint-coalescence value."""
    p = t ** (delta - 1.0)
    return p / (1.0 - p)


def select_phi(lam: float) -> float:
    """Contour angle for the ray to infinity.

    pi/4 once log(lambda) >= 0; for log(lambda) < 0 the decay condition
    pi*cos(phi) + sin(phi)*log(lambda) > 0 restricts phi below
    arctan(pi/|log lambda|), and we take half that bound.
    """
    if lam <= 0.0:
        raise InvalidParam(f"lambda must be > 0, got {lam}")
    loglam = math.log(lam)
    if loglam >= 0.0:
        return math.pi / 4.0
    return 0.5 * math.atan(math.pi / abs(loglam))


def derive(p: ProblemParams) -> DerivedParams:
    """Compute lambda_c, Lambda, omega and the contour angle for p."""
    lc = critical_lambda(p.t, p.delta)
    Lambda = (p.lam - lc) / lc
    if Lambda < 0.0 and Lambda > -1e-14:
        # Guard against rounding right at the coalescence point.
        Lambda = 0.0
    omega = math.sqrt(lc * p.t / 2.0) * math.log1p(Lambda) / (1.0 + lc)
    return DerivedParams(
        t=p.t,
        delta=p.delta,
        sigma=p.sigma,
        lam=p.lam,
        lambda_c=lc,
        Lambda=Lambda,
        omega=omega,
        phi=select_phi(p.lam),
    )


def from_offset(t: float, delta: float, sigma: float, Lambda: float) -> ProblemParams:
    """Construct params from the offset Lambda >= 0 instead of lambda itself."""
    if Lambda < 0.0:
        raise OutOfRange(f"Lambda must be >= 0, got {Lambda}", lower=0.0)
    lc = critical_lambda(t, delta)
    return ProblemParams(t=t, delta=delta, sigma=sigma, lam=lc * (1.0 + Lambda))


def from_omega(t: float, delta: float, sigma: float, omega: float) -> ProblemParams:
    """Construct params hitting a target omega >= 0 exactly."""
    if omega < 0.0:
        raise OutOfRange(f"omega must be >= 0, got {omega}", lower=0.0)
    lc = critical_lambda(t, delta)
    Lambda = math.expm1(omega * (1.0 + lc) * math.sqrt(2.0 / (lc * t)))
    return from_offset(t, delta, sigma, Lambda)


def default_split_exponent(m: int) -> float:
    """Balanced cutoff b = 1/2 - 1/(4m) for the order-m expansion."""
    return 0.5 - 1.0 / (4 * m)


def choose_split(d: DerivedParams, m: int, b: Optional[float] = None) -> DerivedParams:
    """Fix the contour split point for the order-m two-piece expansion.

    The split z = 1-k with k = t^(delta-1)(1-a) and a = t^(-b*delta) must keep
    the retained boundary terms above the discarded remainder, which pins b to
    the open sandwich

        1/2 - 1/(4m-2)  <  b  <  1/2 - 1/(4m+2).

    Returns a copy of d with k, a, D = F'(1-k) and D_minus = -log(1-a) filled in.
    """
    if m < 4:
        raise InvalidSplit(f"split requires m >= 4, got m={m}")
    lo = 0.5 - 1.0 / (4 * m - 2)
    hi = 0.5 - 1.0 / (4 * m + 2)
    if b is None:
        b = default_split_exponent(m)
    if not (lo < b < hi):
        raise InvalidSplit(
            f"b={b} violates the order-{m} sandwich ({lo:.6f}, {hi:.6f})"
        )
    a = d.t ** (-b * d.delta)
    k = d.t ** (d.delta - 1.0) * (1.0 - a)
    D = math.log(d.lam * (1.0 - k) / k)
    D_minus = -math.log1p(-a)
    return replace(d, k=k, a=a, D=D, D_minus=D_minus)


def split_from_a(d: DerivedParams, a: float) -> DerivedParams:
    """Fill split fields for an explicitly chosen a in (0,1)."""
    if not (0.0 < a < 1.0):
        raise InvalidSplit(f"a must lie in (0,1), got {a}")
    k = d.t ** (d.delta - 1.0) * (1.0 - a)
    D = math.log(d.lam * (1.0 - k) / k)
    D_minus = -math.log1p(-a)
    return replace(d, k=k, a=a, D=D, D_minus=D_minus)
