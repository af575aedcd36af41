import cmath
import math

import numpy as np
import pytest
from scipy.special import gamma

from mszego.specfun import (ContourThroughZero, E_c, FcEvaluator,
                            OnNegativeAxis, alpha, f_c, f_c_sides, zeros_E_c)

from support import f_contour

# frozen independent values: contour-integral quadrature cross-checked
# against a 40-digit arbitrary-precision incomplete-gamma evaluation
FROZEN_F = {
    (10.0 + 0j, 0.5): 0.05394141079847177 + 0j,
    (5 + 4j, 0.5): 0.06693641504597948 - 0.04951340626628176j,
    (-8 + 0.5j, 1.3): -0.1329823572429439 - 0.007877043724872053j,
    (20j, -0.4): -0.0009219539940190672 + 0.01332118747372534j,
    (6.0 + 0j, 2.5): 0.1591532408747593 + 0j,
    (9.5 + 0j, 0.5): 0.05665949210271228 + 0j,
    (14 + 3j, 1.5): 0.0794989960981477 - 0.0175900062803182j,
}
# one-sided boundary values on the negative axis at -3 (upper side)
FROZEN_F_UPPER = {
    0.5: -0.2371983414394262 - 0.02874457821103059j,
    1.3: -0.32087023072697723 + 0.009656428472967651j,
    -0.4: 0.1401859288659647 + 0.07348037831498494j,
}
# measured remainder of the 10-term inverse-power sum at zeta=10, c=0.5;
# the true asymptotic-series tail, not an evaluator artifact
S10_REMAINDER = 1.8026237693508085e-06


def test_integer_closed_forms():
    assert abs(f_c(2.0, 1.0) - 0.5) < 1e-12
    assert abs(f_c(1.0, 2.0) - 2.0) < 1e-12
    rng = np.random.default_rng(0)
    for _ in range(30):
        z = complex(rng.uniform(-20, 20), rng.uniform(0.5, 20))
        assert abs(f_c(z, 1.0) - 1.0 / z) < 1e-12 * abs(1 / z)
        ref2 = (1.0 + z) / z ** 2
        assert abs(f_c(z, 2.0) - ref2) < 1e-12 * abs(ref2)


def test_alpha_values():
    assert abs(alpha(1, 0.5) - 1 / math.sqrt(math.pi)) < 1e-15
    assert abs(alpha(2, 0.5) + 1 / (2 * math.sqrt(math.pi))) < 1e-15
    assert alpha(4, 3.0) == 0.0
    assert alpha(5, 2.0) == 0.0
    for c in (-0.5, 0.5, 1.5, 2.5):
        assert abs(alpha(1, c) - 1.0 / gamma(c)) < 1e-12 * abs(1 / gamma(c))


def test_alpha_matches_reflection_form():
    for i, c in ((2, 0.7), (3, 0.5), (5, 1.3), (2, -0.4), (7, 2.2)):
        ref = math.sin(c * math.pi) * gamma(i - c) / (math.pi * (-1) ** (i - 1))
        assert abs(alpha(i, c) - ref) < 1e-12 * abs(ref)


def test_frozen_values():
    for (zeta, c), want in FROZEN_F.items():
        got = f_c(zeta, c)
        tol = 2e-4 if abs(abs(zeta) - (8 + 2 * abs(c))) < 2.0 else 1e-7
        assert abs(got - want) <= tol * abs(want), (zeta, c, got, want)


def test_against_live_contour_oracle():
    rng = np.random.default_rng(1)
    for c in (0.5, 1.3, -0.4, 2.5):
        for _ in range(4):
            zeta = complex(rng.uniform(-6, 6), rng.uniform(1.0, 6))
            want = f_contour(zeta, c)
            assert abs(f_c(zeta, c) - want) < 1e-9 * abs(want)


def test_negative_axis_raises():
    with pytest.raises(OnNegativeAxis):
        f_c(-3.0, 0.5)
    with pytest.raises(OnNegativeAxis):
        f_c(0.0, 0.5)


def test_one_sided_values():
    up, dn = f_c_sides(-3.0, 0.5)
    want = FROZEN_F_UPPER[0.5]
    assert abs(up - want) < 1e-7
    assert abs(dn - want.conjugate()) < 1e-7


def test_general_routes_collapse_for_integer_exponents():
    # drive the non-integer machinery at integer exponents directly; the
    # series route carries a cancellation floor of eps * exp(|z|), so
    # its 1e-12 claim is sampled inside |z| <= 8, while the terminating
    # inverse-power route is exact and sampled far out
    rng = np.random.default_rng(2)
    for c in (1.0, 2.0, 3.0):
        ev = FcEvaluator(c)
        for _ in range(50):
            r = rng.uniform(0.3, 8.0)
            th = rng.uniform(0.06, 1.94) * cmath.pi
            z = r * cmath.exp(1j * th)
            closed = ev.f(z)
            general = cmath.exp(z) * z ** (-c) - ev._entire_series(z)
            assert abs(general - closed) < 1e-12 * abs(closed)
        for _ in range(50):
            r = rng.uniform(ev.r_switch + 2, 25.0)
            th = rng.uniform(0.06, 1.94) * cmath.pi
            z = r * cmath.exp(1j * th)
            closed = ev.f(z)
            assert abs(ev._asymptotic(z) - closed) < 1e-12 * abs(closed)


def test_asymptotic_series_consistency_at_20():
    # against the 8-term partial sum, within the next-coefficient bound
    for c in (-0.5, 0.5, 1.5):
        bound = 2 * abs(alpha(9, c)) / 20.0 ** 9 * 10
        for k in range(16):
            th = 2 * math.pi * k / 16
            if abs(th - math.pi) < 0.25:
                continue
            z = 20 * cmath.exp(1j * th)
            s8 = sum(alpha(i, c) / z ** i for i in range(1, 9))
            assert abs(f_c(z, c) - s8) <= bound


def test_ten_term_series_remainder_at_10():
    # the evaluator must sit closer to the truth than the series tail
    z, c = 10.0, 0.5
    s10 = sum(alpha(i, c) / z ** i for i in range(1, 11))
    truth = FROZEN_F[(10.0 + 0j, 0.5)].real
    assert abs(truth - s10) == pytest.approx(S10_REMAINDER, rel=1e-6)
    # the evaluator sits within ~1x the tail of the truth at the
    # crossover, hence within ~2x of the partial sum
    assert abs(f_c(z, c) - truth) < 1.2 * S10_REMAINDER
    assert abs(f_c(z, c) - s10) < 2.5 * S10_REMAINDER


def test_entire_series_values():
    assert abs(E_c(2j * math.pi, 1.0)) < 1e-12
    assert abs(E_c(0.0, 0.5) - 1 / gamma(1.5)) < 1e-14
    # large positive axis: the exponential part dominates
    z = 30.0
    assert abs(E_c(z, 0.5) - math.exp(z) * z ** -0.5) < 1e-6 * math.exp(z)


def test_entirety_one_sided_limits():
    # built from the frozen one-sided f values: the jump of exp(z)/z^c
    # cancels the jump of f, and the package value agrees with both
    z = -3.0
    for c, f_up in FROZEN_F_UPPER.items():
        up = cmath.exp(complex(z, 1e-8)) * complex(z, 1e-8) ** (-c) - f_up
        dn = cmath.exp(complex(z, -1e-8)) * complex(z, -1e-8) ** (-c) \
            - f_up.conjugate()
        assert abs(up - dn) < 1e-6 * abs(up)
        assert abs(E_c(z, c) - up) < 1e-6 * abs(up)


def test_entirety_along_negative_axis():
    # one-sided definition-route limits across (-10, 0), 50 points
    for c in (0.5, 1.3):
        ev = FcEvaluator(c)
        for x in np.linspace(-9.9, -0.2, 50):
            zp, zm = complex(x, 1e-8), complex(x, -1e-8)
            up = cmath.exp(zp) * zp ** (-c) - ev.f(zp)
            dn = cmath.exp(zm) * zm ** (-c) - ev.f(zm)
            assert abs(up - dn) < 1e-6 * abs(up)
            assert abs(ev.entire(complex(x, 0.0)) - up) < 1e-6 * abs(up)


# -- zeros -------------------------------------------------------------------


def test_zeros_unit_exponent_box():
    zs = zeros_E_c(1.0, (-0.5, 1.0, 5.0, 8.0))
    assert len(zs) == 1
    assert abs(zs[0] - 2j * math.pi) < 1e-9


def test_zeros_unit_exponent_ladder():
    zs = zeros_E_c(1.0, (-3.0, 3.0, -20.0, 20.0))
    want = sorted((2j * math.pi * k for k in (-3, -2, -1, 1, 2, 3)),
                  key=lambda v: v.imag)
    assert len(zs) == 6
    for z, w in zip(sorted(zs, key=lambda v: v.imag), want):
        assert abs(z - w) < 1e-7  # noise floor grows with exp(|z|)


def test_zeros_match_winding_count():
    zs = zeros_E_c(2.0, (-10.5, 10.5, -10.5, 10.5))
    assert len(zs) == 2  # the function validates the count internally
    frozen = 2.088843015613044 + 7.461489285654254j
    got = sorted(zs, key=lambda v: v.imag)[1]
    assert abs(got - frozen) < 1e-9


def test_zeros_negative_exponent_pattern():
    # conjugate-symmetric string with spacing ~ 2 pi; the real parts
    # drift leftward as the exponential must balance a growing algebraic
    # factor, so the locus bends around the zero-free right half plane
    zs = zeros_E_c(-0.5, (-6.0, 20.0, -21.0, 21.0))
    # pairing tolerance reflects the series cancellation floor at |z|~20
    assert all(any(abs(z.conjugate() - w) < 1e-5 for w in zs) for z in zs)
    upper = sorted((z for z in zs if z.imag > 0.1), key=lambda v: v.imag)
    assert len(upper) >= 2
    gaps = np.diff([z.imag for z in upper])
    assert np.all((gaps > 4.5) & (gaps < 8.5))
    assert all(x.real > y.real for x, y in zip(upper, upper[1:]))


def test_contour_through_zero_raises():
    # the unit-exponent zeros sit exactly on the imaginary axis
    with pytest.raises(ContourThroughZero):
        zeros_E_c(1.0, (0.0, 1.0, 5.0, 8.0))
