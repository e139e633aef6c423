"""Tail integral of exp(i xi^2) along the angle-pi/4 ray.

The tail FT(w) = int_w^{inf e^{i pi/4}} e^{i xi^2} dxi shows up as the
universal local model near a stationary point that sits close to an endpoint
of integration.  Substituting xi = w + e^{i pi/4} s turns it into a
Gaussian-damped real integral,

    FT(w) = e^{i pi/4} e^{i w^2} int_0^inf exp(-s^2 + 2 i w e^{i pi/4} s) ds,

whose integrand modulus is e^{-s^2 - sqrt(2) w s} for real w >= 0, so plain
adaptive panels on a short interval give full accuracy uniformly in w.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import NegativeArgument, OrderViolation, ZeroArgument
from .quadrature import _adaptive

_ROT = cmath.exp(1j * math.pi / 4.0)
# FT(0) = (sqrt(pi)/2) e^{i pi/4}; full-line integral is twice this.
FT_ZERO = 0.5 * math.sqrt(math.pi) * _ROT
FT_FULL_LINE = math.sqrt(math.pi) * _ROT

_TOL = 1e-13
# e^{-40} ~ 4e-18: tail cut below double precision.
_DECAY_TARGET = 40.0


def _tail_general(w: complex) -> complex:
    """FT at a general complex lower limit.

    Written as the ray integral from w in direction e^{i pi/4}: with
    anchor = Re w - Im w (where that ray crosses the real axis) and
    r = sqrt(2) Im w, the integral is the [r, s_max] piece of the rotated
    representation anchored at the real crossing point.
    """
    w = complex(w)
    if w.real + w.imag < 0.0:
        # integrand grows before it decays; reflect through the full-line value
        return FT_FULL_LINE - _tail_general(-w)
    anchor = w.real - w.imag
    r = w.imag * math.sqrt(2.0)
    beta = (w.real + w.imag) / math.sqrt(2.0)
    s_max = -beta + math.sqrt(beta * beta + _DECAY_TARGET)
    if s_max <= r:
        s_max = r + 1.0
    c = 2j * complex(anchor) * _ROT

    def f(s):
        return np.exp(-s * s + c * s)

    breaks = np.linspace(r, s_max, 17)
    value, _err, _n = _adaptive(f, r, s_max, _TOL, breaks=breaks)
    return _ROT * cmath.exp(1j * anchor * anchor) * value


def fresnel_tail(w: float) -> complex:
    """int_w^{inf e^{i pi/4}} e^{i xi^2} dxi for real w >= 0."""
    w = float(w)
    if w < 0.0:
        raise NegativeArgument(f"fresnel_tail requires w >= 0, got {w}")
    return _tail_general(w)


def fresnel_tail_general(w) -> complex:
    """Tail from a complex lower limit (used for Phi on the pi/4 ray)."""
    return _tail_general(complex(w))


def fresnel_segment(w1: float, w2: float) -> complex:
    """int_{w1}^{w2} e^{i xi^2} dxi for 0 <= w1 <= w2 (w2 = inf allowed)."""
    w1 = float(w1)
    w2 = float(w2)
    if w2 < w1:
        raise OrderViolation(f"segment requires w1 <= w2, got ({w1}, {w2})")
    if w1 < 0.0:
        raise NegativeArgument(f"fresnel_segment requires w1 >= 0, got {w1}")
    if math.isinf(w2):
        return fresnel_tail(w1)
    if w1 == w2:
        return 0.0 + 0.0j
    return fresnel_tail(w1) - fresnel_tail(w2)


def fresnel_tail_asymptotic(w: float, n_terms: int = 1) -> complex:
    """Large-w expansion e^{iw^2} (-1/(2iw)) (1 + sum_k (2k-1)!!/(2i w^2)^k).

    n_terms = 1 is the leading term; the remainder is O(w^{-(2 n_terms + 1)}).
    """
    w = float(w)
    if w == 0.0:
        raise ZeroArgument("asymptotic form undefined at w = 0")
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    w2 = w * w
    for k in range(n_terms):
        total += term
        term *= (2 * k + 1) / (2j * w2)
    return cmath.exp(1j * w2) * (-1.0 / (2j * w)) * total
