"""Ground-truth monic orthogonal polynomials from moment matrices.

The oracle never uses asymptotics: moments of the planar weight are
computed either exactly (integer exponents, closed-form Gaussian
moments) or by polar quadrature (any exponents), the monic polynomial
comes from the Hermitian Gram solve, and roots from simultaneous
Aberth-Ehrlich iteration.  Exact moments are carried in double-double
precision so that degrees past ~20 keep usable orthogonality residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import ddnum as dd
from .core import Configuration
from .szego import CurveSet

__all__ = [
    "NonIntegerExponent",
    "QuadratureNotConverged",
    "IllConditioned",
    "NoConvergence",
    "MomentMatrix",
    "MonicPolynomial",
    "RootDistanceSummary",
    "gaussian_moment",
    "exact_moments",
    "quad_moments",
    "monic_op",
    "roots",
    "poly_eval",
    "orthogonality_residuals",
    "root_curve_distance",
    "moments_close",
]


class NonIntegerExponent(Exception):
    """exact_moments requires all exponents to be positive integers."""


class QuadratureNotConverged(Exception):
    """Mesh doubling did not reach the target accuracy."""


class IllConditioned(Exception):
    def __init__(self, message, cond_estimate):
        super().__init__(message)
        self.cond_estimate = cond_estimate


class NoConvergence(Exception):
    """The simultaneous root iteration exhausted its sweep budget."""


@dataclass(frozen=True)
class MomentMatrix:
    """Inner products <z^j, z^k> of monomials under the planar weight.

    ``entries`` is complex128 for the quadrature method; the exact
    method additionally stores ``entries_dd`` (nested lists of
    double-double pairs) used by the high-degree solve.
    """

    entries: np.ndarray
    method: str                    # "exact-integer-c" | "quadrature"
    config: Configuration
    entries_dd: list | None = None
    band: int | None = None

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class MonicPolynomial:
    degree: int
    coeffs: np.ndarray             # ascending, length degree+1, leading 1
    h_n: float
    cond_estimate: float
    coeffs_dd: list | None = None
    roots: tuple | None = None
    root_residuals: tuple | None = None

    def with_roots(self, rts, residuals) -> "MonicPolynomial":
        return replace(self, roots=tuple(rts), root_residuals=tuple(residuals))


@dataclass(frozen=True)
class RootDistanceSummary:
    max: float
    mean: float
    count: int


def gaussian_moment(p: int, q: int, N: float) -> float:
    """Plane integral of z^p conj(z)^q exp(-N|z|^2): pi p!/N^(p+1) if p==q."""
    if p < 0 or q < 0:
        raise ValueError("moment orders must be nonnegative")
    if p != q:
        return 0.0
    return math.pi * math.exp(math.lgamma(p + 1) - (p + 1) * math.log(N))


def _weight_poly_dd(config: Configuration):
    """Coefficients of prod (z - a_i)^(c_i) for integer exponents, in cdd."""
    poly = [dd.CDD_ONE]
    for aj, cj in zip(config.a, config.c):
        ci = int(round(cj))
        if ci != cj or ci < 1:
            raise NonIntegerExponent(f"exponent {cj} is not a positive integer")
        factor = [dd.cdd(-aj), dd.CDD_ONE]
        for _ in range(ci):
            poly = dd.cdd_poly_mul(poly, factor)
    return poly


def exact_moments(config: Configuration) -> MomentMatrix:
    """Moment matrix up to index n by expanding the polynomial weight.

    Exact up to double-double rounding: the Gaussian base moments are
    diagonal factorials, and the weight polynomial contracts against
    them inside the band |j - k| <= sum(c).
    """
    n = config.n
    N = config.N
    alpha = _weight_poly_dd(config)
    C = len(alpha) - 1

    # pi * m! / N^(m+1) in double-double
    g = []
    npow = dd.dd(N)
    fact = 1
    for m in range(n + C + 1):
        if m > 0:
            fact *= m
            npow = dd.dd_mul(npow, dd.dd(N))
        g.append(dd.dd_mul(dd.DD_PI, dd.dd_div(dd.dd(fact), npow)))

    size = n + 1
    M = [[dd.CDD_ZERO] * size for _ in range(size)]
    for j in range(size):
        for k in range(j, min(size, j + C + 1)):
            acc = dd.CDD_ZERO
            for p in range(C + 1):
                q = j + p - k
                if 0 <= q <= C:
                    term = dd.cdd_mul(alpha[p], dd.cdd_conj(alpha[q]))
                    acc = dd.cdd_add(acc, dd.cdd_scale(term, g[j + p]))
            M[j][k] = acc
            M[k][j] = dd.cdd_conj(acc)
    entries = np.array([[dd.cdd_complex(M[j][k]) for k in range(size)]
                        for j in range(size)], dtype=complex)
    return MomentMatrix(entries=entries, method="exact-integer-c",
                        config=config, entries_dd=M, band=C)


# ---------------------------------------------------------------------------
# quadrature moments


def _bump(t: np.ndarray) -> np.ndarray:
    """Smooth cutoff: 1 for t<=0, 0 for t>=1, C-infinity in between."""
    out = np.zeros_like(t)
    out[t <= 0.0] = 1.0
    mid = (t > 0.0) & (t < 1.0)
    tm = t[mid]
    s0 = np.exp(-1.0 / np.clip(1.0 - tm, 1e-300, None))
    s1 = np.exp(-1.0 / np.clip(tm, 1e-300, None))
    out[mid] = s0 / (s0 + s1)
    return out


def _suppression(z: np.ndarray, config, radii) -> np.ndarray:
    out = np.ones(z.shape)
    for aj, rj in zip(config.a, radii):
        rho = np.abs(z - aj)
        out *= 1.0 - _bump(2.0 * rho / rj - 1.0)
    return out


def _vander_accumulate(M, z, w, size):
    V = np.empty((size, z.size), dtype=complex)
    V[0] = 1.0
    for p in range(1, size):
        V[p] = V[p - 1] * z
    M += (V * w) @ V.conj().T


def _moments_mesh(config: Configuration, size, factor: int,
                  R_scale: float = 1.0) -> np.ndarray:
    """One full quadrature pass at a given mesh refinement factor."""
    n = size - 1
    N = config.N
    C = sum(config.c)
    R = math.sqrt((2 * n + 40) / N) * R_scale
    all_integer = all(cj == round(cj) and cj >= 1 for cj in config.c)

    dists = []
    for j, aj in enumerate(config.a):
        others = [abs(aj - ak) for k, ak in enumerate(config.a) if k != j]
        dists.append(min(others) if others else math.inf)
    radii = [min(0.1, 0.45 * d) for d in dists]

    # radial panels: Gauss-Legendre per panel sized to the Gaussian scale,
    # refined through the bump-transition annuli around each |a_j|
    h = min(0.2, 0.7 / math.sqrt(N)) / factor
    if all_integer:
        edges = np.linspace(0.0, R, max(8, int(math.ceil(R / h))) + 1)
    else:
        h_fine = min(rj for rj in radii) / 16.0 / factor
        breaks = {0.0, R}
        spans = []
        for aj, rj in zip(config.a, radii):
            lo = max(0.0, abs(aj) - 1.2 * rj)
            hi = min(R, abs(aj) + 1.2 * rj)
            breaks.update((lo, hi))
            spans.append((lo, hi))
        pts = sorted(breaks)
        edge_list = [0.0]
        for lo, hi in zip(pts[:-1], pts[1:]):
            if hi - lo <= 0:
                continue
            mid = 0.5 * (lo + hi)
            hh = h_fine if any(s0 <= mid <= s1 for s0, s1 in spans) else h
            m = max(1, int(math.ceil((hi - lo) / hh)))
            edge_list.extend(lo + (hi - lo) * (np.arange(m) + 1) / m)
        edges = np.array(edge_list)
    xg, wg = np.polynomial.legendre.leggauss(16)
    mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    r = (mid + half * xg[None, :]).ravel()
    wr = (half * wg[None, :]).ravel()

    if all_integer:
        ntheta = 2 * n + 2 * int(round(C)) + 8
    else:
        ntheta = max(1536, 2 * n + 64) * factor
    theta = 2.0 * math.pi * np.arange(ntheta) / ntheta
    wt = 2.0 * math.pi / ntheta

    M = np.zeros((size, size), dtype=complex)
    # process in radial chunks to keep the node tensor in memory bounds
    chunk = max(1, int(2e6 // ntheta))
    eit = np.exp(1j * theta)
    for i0 in range(0, r.size, chunk):
        rr = r[i0:i0 + chunk]
        z = rr[:, None] * eit[None, :]
        w = (rr * wr[i0:i0 + chunk])[:, None] * np.exp(-N * rr * rr)[:, None] * wt
        w = np.broadcast_to(w, z.shape).copy()
        for aj, cj in zip(config.a, config.c):
            w *= np.abs(z - aj) ** (2.0 * cj)
        if not all_integer:
            w *= _suppression(z, config, radii)
        _vander_accumulate(M, z.ravel(), w.ravel(), size)

    if all_integer:
        return M

    # singular patches in local polar coordinates with Gauss-Jacobi radius
    from scipy.special import roots_jacobi
    nphi = 384 * factor
    phi = 2.0 * math.pi * np.arange(nphi) / nphi
    wphi = 2.0 * math.pi / nphi
    for aj, cj, rj in zip(config.a, config.c, radii):
        nodes = 64 * factor
        xj, wj = roots_jacobi(nodes, 0.0, 2.0 * cj + 1.0)
        rho = rj * 0.5 * (1.0 + xj)
        wrho = wj * (rj * 0.5) ** (2.0 * cj + 2.0)
        z = aj + rho[:, None] * np.exp(1j * phi)[None, :]
        chi = _bump(2.0 * rho / rj - 1.0)
        w = (wrho * chi)[:, None] * np.exp(-N * np.abs(z) ** 2) * wphi
        for am, cm in zip(config.a, config.c):
            if am != aj:
                w *= np.abs(z - am) ** (2.0 * cm)
        _vander_accumulate(M, z.ravel(), w.ravel(), size)
    return M


def moments_close(A: np.ndarray, B: np.ndarray, rtol: float) -> bool:
    return moments_max_reldiff(A, B) <= rtol


def moments_max_reldiff(A: np.ndarray, B: np.ndarray) -> float:
    """Entrywise relative difference with a Cauchy-Schwarz scale floor.

    Every entry is bounded by sqrt(M_jj M_kk); entries far below that
    scale are structural zeros seen through quadrature roundoff, so the
    denominator never drops below 1e-4 of the scale.
    """
    d = np.sqrt(np.abs(np.diag(B)))
    floor = 1e-4 * np.outer(d, d)
    denom = np.maximum(np.abs(B), floor)
    return float(np.max(np.abs(A - B) / denom))


def quad_moments(config: Configuration, target: float = 1e-10) -> MomentMatrix:
    """Moment matrix by polar quadrature, validated by mesh doubling."""
    size = config.n + 1
    coarse = _moments_mesh(config, size, 1)
    best = None
    for factor in (2, 4):
        fine = _moments_mesh(config, size, factor)
        err = moments_max_reldiff(coarse, fine)
        if err <= target:
            best = fine
            break
        coarse = fine
    if best is None:
        raise QuadratureNotConverged(
            f"mesh doubling stalled at relative difference {err:.3e} (target {target:.1e})")
    best = 0.5 * (best + best.conj().T)
    return MomentMatrix(entries=best, method="quadrature", config=config)


# ---------------------------------------------------------------------------
# the Gram solve


def monic_op(moments: MomentMatrix, n: int) -> MonicPolynomial:
    """Monic degree-n polynomial orthogonal to 1, z, ..., z^(n-1).

    Solves sum_k b_k <z^k, z^m> = -<z^n, z^m> and forms the squared
    norm h_n; uses the double-double path whenever the moment matrix
    carries extended-precision entries.
    """
    if n + 1 > moments.size:
        raise ValueError(f"moment matrix of size {moments.size} cannot build degree {n}")
    if n == 0:
        h = float(moments.entries[0, 0].real)
        return MonicPolynomial(0, np.array([1.0 + 0j]), h, 1.0,
                               coeffs_dd=[dd.CDD_ONE])

    if moments.entries_dd is not None:
        Mdd = moments.entries_dd
        A = [[Mdd[k][m] for k in range(n)] for m in range(n)]
        rhs = [dd.cdd_scale(Mdd[n][m], dd.dd(-1.0)) for m in range(n)]
        try:
            x, diag = dd.cholesky_solve_hermitian(A, rhs, band=moments.band)
        except ArithmeticError as exc:
            raise IllConditioned(str(exc), math.inf) from exc
        cond = (max(diag) / min(diag)) ** 2
        coeffs_dd = x + [dd.CDD_ONE]
        acc = dd.CDD_ZERO
        for k in range(n + 1):
            acc = dd.cdd_add(acc, dd.cdd_mul(coeffs_dd[k], Mdd[k][n]))
        h = dd.cdd_complex(acc).real
        coeffs = np.array([dd.cdd_complex(ck) for ck in coeffs_dd])
    else:
        M = moments.entries
        A = M[:n, :n].T.copy()
        rhs = -M[n, :n]
        cond = float(np.linalg.cond(A))
        if cond > 1e13:
            raise IllConditioned(
                f"double-precision Gram solve at degree {n} has condition ~{cond:.2e}; "
                "use the extended-precision exact-moment path", cond)
        b = np.linalg.solve(A, rhs)
        coeffs = np.concatenate([b, [1.0 + 0j]])
        coeffs_dd = [dd.cdd(ck) for ck in coeffs]
        h = float(np.real(np.sum(coeffs * M[: n + 1, n])))
    if not (h > 0):
        raise IllConditioned(f"nonpositive norm h_n = {h}", cond)
    return MonicPolynomial(n, coeffs, h, cond, coeffs_dd=coeffs_dd)


def poly_eval(poly: MonicPolynomial, z: complex) -> complex:
    """Evaluate through the double-double coefficients (cancellation-safe)."""
    if poly.coeffs_dd is not None:
        return dd.cdd_complex(dd.cdd_horner(poly.coeffs_dd, z))
    return complex(np.polyval(poly.coeffs[::-1], z))


def orthogonality_residuals(moments: MomentMatrix, poly: MonicPolynomial) -> np.ndarray:
    """Normalized |<p_n, z^m>| / (sqrt(h_n) sqrt(<z^m,z^m>)) for m < n."""
    n = poly.degree
    out = np.empty(n)
    if moments.entries_dd is not None and poly.coeffs_dd is not None:
        Mdd = moments.entries_dd
        for m in range(n):
            acc = dd.CDD_ZERO
            for k in range(n + 1):
                acc = dd.cdd_add(acc, dd.cdd_mul(poly.coeffs_dd[k], Mdd[k][m]))
            val = abs(dd.cdd_complex(acc))
            out[m] = val / math.sqrt(poly.h_n * dd.cdd_complex(Mdd[m][m]).real)
    else:
        M = moments.entries
        for m in range(n):
            val = abs(np.sum(poly.coeffs * M[: n + 1, m]))
            out[m] = val / math.sqrt(poly.h_n * M[m, m].real)
    return out


# ---------------------------------------------------------------------------
# roots


def roots(poly: MonicPolynomial, max_sweeps: int = 500, tol: float = 1e-10):
    """All roots by Aberth-Ehrlich iteration with double-double polish.

    Returns (roots, residuals) where residuals are Newton steps scaled
    by 1 + |root|; for (near-)multiple roots the backward-error
    criterion |p(r)| <= tol * sum(|b_k| |r|^k) applies instead.
    """
    n = poly.degree
    if n < 1:
        raise ValueError("degree must be >= 1")
    b = poly.coeffs.astype(complex)
    db = b[1:] * np.arange(1, n + 1)

    # Fujiwara-style initial radius around the coefficient centroid
    center = -b[n - 1] / n
    mags = [abs(b[k]) ** (1.0 / (n - k)) for k in range(n) if b[k] != 0]
    radius = 1.0 + (2.0 * max(mags) if mags else 1.0)
    angles = 2.0 * math.pi * (np.arange(n) + 0.35) / n + 0.42
    z = center + radius * np.exp(1j * angles)

    def horner_all(zv):
        p = np.full_like(zv, b[n])
        for k in range(n - 1, -1, -1):
            p = p * zv + b[k]
        q = np.full_like(zv, db[n - 1])
        for k in range(n - 2, -1, -1):
            q = q * zv + db[k]
        return p, q

    converged = False
    for _ in range(max_sweeps):
        p, q = horner_all(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(q != 0, p / q, 0.0)
            S = np.sum(1.0 / (z[:, None] - z[None, :] + np.eye(n)), axis=1) - 1.0
            corr = w / (1.0 - w * S)
        corr = np.where(np.isfinite(corr), corr, 0.1 * (1 + np.abs(z)))
        z = z - corr
        if np.all(np.abs(corr) <= 1e-14 * (1.0 + np.abs(z))):
            converged = True
            break

    # double-double Newton polish (simple roots gain ~6 digits)
    if poly.coeffs_dd is not None:
        dcoeffs = [dd.cdd_scale(ck, dd.dd(float(k)))
                   for k, ck in enumerate(poly.coeffs_dd)][1:]
        for i in range(n):
            for _ in range(2):
                pv = dd.cdd_complex(dd.cdd_horner(poly.coeffs_dd, z[i]))
                qv = dd.cdd_complex(dd.cdd_horner(dcoeffs, z[i]))
                if qv != 0 and abs(pv / qv) < 0.1:
                    z[i] = z[i] - pv / qv

    pv = np.array([poly_eval(poly, zi) for zi in z])
    qv = horner_all(z)[1]
    with np.errstate(divide="ignore", invalid="ignore"):
        newton_resid = np.where(qv != 0, np.abs(pv / qv), np.inf) / (1.0 + np.abs(z))
    backward_scale = np.array(
        [np.sum(np.abs(b) * np.abs(zi) ** np.arange(n + 1)) for zi in z])
    ok = (newton_resid <= tol) | (np.abs(pv) <= 1e-12 * backward_scale)
    if not (converged or np.all(ok)):
        raise NoConvergence(f"{int(np.sum(~ok))} roots failed to converge")
    order = np.lexsort((z.imag, z.real))
    return z[order], np.minimum(newton_resid, np.abs(pv) / backward_scale)[order]


# ---------------------------------------------------------------------------
# curve comparison


def root_curve_distance(rts, curve: CurveSet, exclusion: float,
                        centers=()) -> RootDistanceSummary:
    """Distances from roots to the traced curve, outside exclusion disks.

    Roots within ``exclusion`` of any center (normally the singular
    points) are dropped; the rest are measured against every polyline
    segment of the curve.
    """
    w = np.asarray(rts, dtype=complex).ravel()
    if exclusion > 0:
        keep = np.ones(w.shape, dtype=bool)
        for aj in centers:
            keep &= np.abs(w - aj) > exclusion
        w = w[keep]
    if w.size == 0:
        return RootDistanceSummary(math.nan, math.nan, 0)
    p0 = np.concatenate([arc.points[:-1] for arc in curve.arcs])
    p1 = np.concatenate([arc.points[1:] for arc in curve.arcs])
    d = p1 - p0
    L2 = np.abs(d) ** 2
    t = ((w[:, None] - p0[None, :]) * d.conj()[None, :]).real / L2[None, :]
    t = np.clip(t, 0.0, 1.0)
    proj = p0[None, :] + t * d[None, :]
    dist = np.min(np.abs(w[:, None] - proj), axis=1)
    return RootDistanceSummary(float(dist.max()), float(dist.mean()), int(w.size))
