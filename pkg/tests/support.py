"""Independent numerical oracles shared by the test modules.

Everything here deliberately avoids the code paths under test: the
truncated-exponential oracle integrates the defining contour integral
directly, and the crossing counter does raw segment/ray geometry.
"""

import math

import numpy as np
from scipy.integrate import quad


def f_contour(zeta, c, r=None):
    """Contour-integral evaluation of the truncated exponential.

    Collapses the hairpin around the negative axis onto a real-line
    integral (with the phase jump factored out) plus a small circle
    around the origin.  Valid for zeta at distance >> quadrature
    resolution from the closed negative real axis.
    """
    zeta = complex(zeta)
    if r is None:
        r = min(0.5, abs(zeta) / 2)

    def integrand(t):
        return math.exp(-t) * t ** (-c) * ((t + zeta).conjugate() / abs(t + zeta) ** 2)

    re = quad(lambda t: integrand(t).real, r, 300, limit=600)[0]
    im = quad(lambda t: integrand(t).imag, r, 300, limit=600)[0]
    line = math.sin(c * math.pi) / math.pi * complex(re, im)
    xs, ws = np.polynomial.legendre.leggauss(600)
    th = xs * math.pi
    s = r * np.exp(1j * th)
    vals = np.exp(s) * s ** (-c) / (s - zeta) * 1j * s
    circle = -(1 / (2j * math.pi)) * np.sum(ws * math.pi * vals)
    return line + circle


def crossing_sign(q0, q1, origin, direction):
    """Signed crossing of the open segment q0->q1 with a ray.

    Returns +1 when the segment passes from the right (-) side of the
    oriented ray to its left (+) side, -1 for the opposite direction,
    0 when there is no proper crossing.
    """
    d1 = q1 - q0
    d2 = direction
    denom = d1.real * d2.imag - d1.imag * d2.real
    if abs(denom) < 1e-14:
        return 0
    w = origin - q0
    t = (w.real * d2.imag - w.imag * d2.real) / denom
    p = q0 + t * d1
    s = ((p - origin) / d2).real
    if 1e-9 < t < 1 - 1e-9 and s > 1e-9:
        cr = d2.real * d1.imag - d2.imag * d1.real
        return 1 if cr > 0 else -1
    return 0


def ray_product(ctx, q0, q1, skip=()):
    """Product of monodromy factors collected along q0->q1.

    Each crossing of the outward cut of point m multiplies by
    eta_m^(-sign); cuts listed in ``skip`` are ignored.
    """
    cfg = ctx.config
    eta = ctx.eta
    out = 1.0 + 0j
    for m in range(1, cfg.nu + 1):
        if m in skip:
            continue
        s = crossing_sign(q0, q1, cfg.a[m - 1], cfg.a[m - 1])
        out *= eta[m - 1] ** (-s)
    return out
