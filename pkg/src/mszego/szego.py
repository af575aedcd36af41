"""Level constants, plane classification, chains and the curve tracer.

The central object is the continuous max-function

    Phi(z) = max( log|z|, Re(conj(a_1) z) + l_1, ..., Re(conj(a_nu) z) + l_nu )

whose argmax label partitions the disk into regions: label 0 where the
logarithm wins, label j where the j-th plane wins.  The level vector
L = (l_1..l_nu) is the unique one placing every a_j on the boundary of
its own region; it is found by a finite fixed-point iteration (nu
sweeps).  The union of the bounded region boundaries is the curve the
polynomial roots accumulate on; it is extracted here by grid labeling
plus edge bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Configuration

__all__ = [
    "NonGeneric",
    "DegenerateArc",
    "SzegoStructure",
    "Arc",
    "CurveSet",
    "phi_L",
    "solve_levels",
    "levels_iterations",
    "classify",
    "classify_many",
    "compute_chains",
    "compute_ell",
    "solve_structure",
    "trace_curve",
]

TIE_TOL = 1e-12          # relative tie window for argmax label sets
BOUNDARY_TOL = 1e-9      # |Phi(a_j) - |a_j|^2 - l_j| tolerance for membership
GENERIC_CIRCLE_RADIUS = 1e-4
GENERIC_CIRCLE_SAMPLES = 64
EMPTY_SCAN_GRID = 201


class NonGeneric(Exception):
    """A singular point touches more or fewer than two regions.

    Carries the partial structure data available at detection time in
    ``self.report`` (a dict) so callers can still show diagnostics.
    """

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class DegenerateArc(Exception):
    """An extracted arc has fewer than 3 points; raise the grid resolution."""


@dataclass(frozen=True)
class Arc:
    """One labeled component of the curve.

    ``points`` are ordered so that region ``j`` lies on the left (+)
    side when walking along them; region ``k`` is on the right.
    """

    j: int
    k: int
    points: np.ndarray  # complex, ordered

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class CurveSet:
    arcs: tuple[Arc, ...]
    grid_resolution: int
    refine_tol: float
    triple_points: tuple[complex, ...] = ()


@dataclass(frozen=True)
class SzegoStructure:
    """Solved levels plus everything derived from them."""

    config: Configuration
    L: tuple[float, ...]
    ell: tuple[complex, ...]
    chains: tuple[tuple[int, ...], ...]   # chains[j-1] = (j, ..., k_1), implicit 0 at the end
    levels: tuple[int, ...]
    generic: tuple[bool, ...]
    empty_regions: tuple[int, ...] = ()

    @property
    def is_generic(self) -> bool:
        return all(self.generic) and not self.empty_regions

    def arrow(self, j: int) -> int:
        """The label k of the neighboring region at a_j (0 allowed)."""
        ch = self.chains[j - 1]
        return ch[1] if len(ch) > 1 else 0


def _plane_values(z: complex, a, lam):
    vals = [math.log(abs(z)) if z != 0 else -math.inf]
    for aj, lj in zip(a, lam):
        vals.append((aj.conjugate() * z).real + lj)
    return vals


def phi_L(z: complex, a, lam, tie_tol: float = TIE_TOL):
    """Value of the max-function and the set of labels attaining it.

    Labels within ``tie_tol * (|value| + 1)`` of the maximum all count
    as attaining it; label 0 is the logarithm.
    """
    vals = _plane_values(z, a, lam)
    value = max(vals)
    window = tie_tol * (abs(value) + 1.0)
    labels = {i for i, v in enumerate(vals) if value - v <= window}
    return value, labels


def levels_iterations(config: Configuration):
    """All nu+1 successive level vectors of the fixed-point iteration.

    Entry 0 is the initialization ``log|a_j| - |a_j|^2``; entry ``i``
    results from ``i`` sweeps of ``lam_j <- Phi(a_j) - |a_j|^2``.  The
    sweep count equals nu because each sweep settles one more level of
    the arrow hierarchy.
    """
    a = config.a
    lam = [math.log(abs(z)) - abs(z) ** 2 for z in a]
    out = [tuple(lam)]
    for _ in range(config.nu):
        lam = [phi_L(z, a, lam)[0] - abs(z) ** 2 for z in a]
        out.append(tuple(lam))
    return out

def solve_levels(config: Configuration) -> tuple[float, ...]:
    """The unique level vector placing every a_j on its region boundary."""
    return levels_iterations(config)[-1]


def classify(z: complex, structure: SzegoStructure) -> int:
    """Region label of a point; smallest label wins ties, |z|>=1 is 0."""
    if abs(z) >= 1.0:
        return 0
    vals = _plane_values(z, structure.config.a, structure.L)
    return int(np.argmax(vals))


def classify_many(z: np.ndarray, config: Configuration, L) -> np.ndarray:
    """Vectorized :func:`classify` on an arbitrary-shape complex array."""
    z = np.asarray(z, dtype=complex)
    stack = np.empty((config.nu + 1,) + z.shape)
    with np.errstate(divide="ignore"):
        stack[0] = np.log(np.abs(z))
    stack[0] = np.where(np.abs(z) > 0, stack[0], -np.inf)
    for j, (aj, lj) in enumerate(zip(config.a, L), start=1):
        stack[j] = (np.conj(aj) * z).real + lj
    labels = np.argmax(stack, axis=0)
    labels[np.abs(z) >= 1.0] = 0
    return labels


def _attaining_labels(config: Configuration, L, j: int) -> list[int]:
    """Labels attaining Phi at a_j within the boundary tolerance."""
    z = config.a[j - 1]
    vals = _plane_values(z, config.a, L)
    top = max(vals)
    window = BOUNDARY_TOL * (abs(top) + 1.0)
    return [i for i, v in enumerate(vals) if top - v <= window]


def compute_chains(config: Configuration, L):
    """Arrow targets and chains for every singular point.

    For each j the unique other label attaining Phi at a_j gives the
    arrow j -> k; following arrows reaches 0 without repetition.  Raises
    :class:`NonGeneric` when the other label is not unique.
    """
    nu = config.nu
    arrows = {}
    for j in range(1, nu + 1):
        cands = _attaining_labels(config, L, j)
        others = [i for i in cands if i != j]
        if j not in cands:
            raise NonGeneric(
                f"a_{j} does not attain its own plane at the solved levels",
                {"L": tuple(L)},
            )
        if len(others) != 1:
            raise NonGeneric(
                f"a_{j} attains the maximum with labels {sorted(cands)}; "
                "expected exactly one neighbor",
                {"L": tuple(L), "labels": sorted(cands), "point": j},
            )
        arrows[j] = others[0]

    chains = []
    for j in range(1, nu + 1):
        chain = [j]
        k = arrows[j]
        while k != 0:
            if k in chain:
                raise NonGeneric(
                    f"arrow chain starting at a_{j} revisits a_{k}",
                    {"L": tuple(L), "chain": tuple(chain)},
                )
            chain.append(k)
            k = arrows[k]
        chains.append(tuple(chain))
    levels = tuple(len(ch) for ch in chains)
    return tuple(chains), levels


def compute_ell(config: Configuration, chains) -> tuple[complex, ...]:
    """Complex lifts of the levels along each chain.

    The chain tail k_1 points at region 0 and gets
    ``log a_{k_1} - |a_{k_1}|^2`` (principal log); each step up the chain
    adds ``conj(a_target) a_j - |a_j|^2``.  Points shared by several
    chains receive identical values because the recursion only depends
    on the arrows.
    """
    nu = config.nu
    ell: dict[int, complex] = {}
    order = sorted(range(1, nu + 1), key=lambda j: len(chains[j - 1]))
    for j in order:
        ch = chains[j - 1]
        aj = config.a[j - 1]
        if len(ch) == 1:
            ell[j] = complex(np.log(aj)) - abs(aj) ** 2
        else:
            k = ch[1]
            ell[j] = config.a[k - 1].conjugate() * aj - abs(aj) ** 2 + ell[k]
    return tuple(ell[j] for j in range(1, nu + 1))


def _genericity_flags(config: Configuration, L, arrows_ok: bool, chains=None):
    """Per-point circle test: label set around a_j must be exactly {j, k}."""
    flags = []
    theta = 2 * np.pi * np.arange(GENERIC_CIRCLE_SAMPLES) / GENERIC_CIRCLE_SAMPLES
    ring = GENERIC_CIRCLE_RADIUS * np.exp(1j * theta)
    for j in range(1, config.nu + 1):
        labels = set(classify_many(config.a[j - 1] + ring, config, L).tolist())
        if arrows_ok and chains is not None:
            k = chains[j - 1][1] if len(chains[j - 1]) > 1 else 0
            flags.append(labels == {j, k})
        else:
            flags.append(j in labels and len(labels) == 2)
    return tuple(flags)


def _empty_regions(config: Configuration, L, grid: int = EMPTY_SCAN_GRID):
    """Labels never attained on a coarse scan grid (empty-region report)."""
    xs = np.linspace(-1.0, 1.0, grid)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    labels = classify_many(X + 1j * Y, config, L)
    seen = set(np.unique(labels).tolist())
    return tuple(j for j in range(1, config.nu + 1) if j not in seen)


def solve_structure(config: Configuration, require_generic: bool = True) -> SzegoStructure:
    """Solve levels, derive chains/ell, and attach the genericity report."""
    L = solve_levels(config)
    empty = _empty_regions(config, L)
    try:
        chains, levels = compute_chains(config, L)
    except NonGeneric as exc:
        exc.report.setdefault("empty_regions", empty)
        if require_generic:
            raise
        nu = config.nu
        return SzegoStructure(
            config, L, (complex("nan"),) * nu, ((0,),) * nu, (0,) * nu,
            (False,) * nu, empty,
        )
    generic = _genericity_flags(config, L, True, chains)
    if empty:
        generic = tuple(g and (j + 1 not in empty) for j, g in enumerate(generic))
    struct = SzegoStructure(
        config=config,
        L=tuple(L),
        ell=compute_ell(config, chains),
        chains=chains,
        levels=levels,
        generic=generic,
        empty_regions=empty,
    )
    if require_generic and not struct.is_generic:
        raise NonGeneric(
            f"configuration is non-generic: generic={generic}, empty={empty}",
            {"L": tuple(L), "generic": generic, "empty_regions": empty},
        )
    return struct


# ---------------------------------------------------------------------------
# curve extraction


def _bisect_edges(config, L, z1, z2, lab1, lab2, tol):
    """Vectorized bisection of label-changing lattice edges.

    A midpoint showing a third label replaces the far endpoint, so each
    edge converges to some label interface crossing within it.
    """
    z1 = z1.copy()
    z2 = z2.copy()
    lab1 = lab1.copy()
    lab2 = lab2.copy()
    while np.max(np.abs(z2 - z1)) > tol:
        zm = 0.5 * (z1 + z2)
        lm = classify_many(zm, config, L)
        left = lm == lab1
        right = lm == lab2
        other = ~(left | right)
        z1[left] = zm[left]
        z2[right] = zm[right]
        z2[other] = zm[other]
        lab2[other] = lm[other]
    return 0.5 * (z1 + z2), lab1, lab2


def trace_curve(structure: SzegoStructure, grid: int = 400, tol: float = 1e-8) -> CurveSet:
    """Extract the region-boundary curve as label-pair-tagged polylines.

    Lattice nodes over [-1,1]^2 are labeled, every edge whose endpoints
    disagree is bisected down to ``tol``, and the crossing points are
    chained cell by cell.  Arcs end at lattice cells where three or more
    labels meet (recorded in ``triple_points``).  Each arc is oriented
    with its ``j`` region on the left.
    """
    config = structure.config
    L = structure.L
    xs = np.linspace(-1.0, 1.0, grid)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    Z = X + 1j * Y
    labels = classify_many(Z, config, L)

    crossings = {}  # ('h'|'v', i, j) -> (point, la, lb)

    # horizontal edges: (i,j)-(i+1,j); vertical: (i,j)-(i,j+1)
    for axis, key in ((0, "h"), (1, "v")):
        if axis == 0:
            la, lb = labels[:-1, :], labels[1:, :]
            za, zb = Z[:-1, :], Z[1:, :]
        else:
            la, lb = labels[:, :-1], labels[:, 1:]
            za, zb = Z[:, :-1], Z[:, 1:]
        ii, jj = np.nonzero(la != lb)
        if len(ii) == 0:
            continue
        pts, l1, l2 = _bisect_edges(
            config, L, za[ii, jj].astype(complex), zb[ii, jj].astype(complex),
            la[ii, jj], lb[ii, jj], tol,
        )
        for idx in range(len(ii)):
            crossings[(key, int(ii[idx]), int(jj[idx]))] = (
                complex(pts[idx]), int(l1[idx]), int(l2[idx]),
            )

    # cell-by-cell connectivity
    segments = []  # (edge_key_a, edge_key_b, pair)
    triple_cells = []
    for ci in range(grid - 1):
        for cj in range(grid - 1):
            corner_labels = {
                int(labels[ci, cj]), int(labels[ci + 1, cj]),
                int(labels[ci + 1, cj + 1]), int(labels[ci, cj + 1]),
            }
            if len(corner_labels) < 2:
                continue
            edge_keys = [
                ("h", ci, cj), ("v", ci + 1, cj), ("h", ci, cj + 1), ("v", ci, cj),
            ]
            present = [k for k in edge_keys if k in crossings]
            if len(corner_labels) >= 3:
                triple_cells.append(complex(Z[ci, cj] + Z[ci + 1, cj + 1]) / 2)
            by_pair: dict[tuple[int, int], list] = {}
            for k in present:
                _, l1, l2 = crossings[k]
                by_pair.setdefault((min(l1, l2), max(l1, l2)), []).append(k)
            for pair, keys in by_pair.items():
                if len(keys) == 2:
                    segments.append((keys[0], keys[1], pair))
                elif len(keys) == 4:
                    # ambiguous saddle: connect nearest two, then the rest
                    keys = sorted(keys)
                    p = [crossings[k][0] for k in keys]
                    if abs(p[0] - p[1]) + abs(p[2] - p[3]) <= abs(p[0] - p[3]) + abs(p[1] - p[2]):
                        segments.append((keys[0], keys[1], pair))
                        segments.append((keys[2], keys[3], pair))
                    else:
                        segments.append((keys[0], keys[3], pair))
                        segments.append((keys[1], keys[2], pair))
                # a single key happens at triple-point cells: the arc ends here

    arcs = _assemble_arcs(crossings, segments, structure, tol)
    if not arcs:
        raise DegenerateArc("no arcs extracted; raise the grid resolution")
    short = [a for a in arcs if len(a.points) < 3]
    if short:
        raise DegenerateArc(
            f"{len(short)} arc(s) collapsed below 3 points at grid {grid}; "
            "raise the grid resolution"
        )
    return CurveSet(
        arcs=tuple(arcs),
        grid_resolution=grid,
        refine_tol=tol,
        triple_points=tuple(triple_cells),
    )


def _assemble_arcs(crossings, segments, structure, tol):
    adjacency: dict[tuple, list] = {}
    for ka, kb, pair in segments:
        adjacency.setdefault((pair, ka), []).append(kb)
        adjacency.setdefault((pair, kb), []).append(ka)

    visited = set()
    polylines = []  # (pair, [edge keys])
    nodes = sorted(adjacency.keys())
    # open paths first (endpoints have degree 1), then cycles
    for start in [n for n in nodes if len(adjacency[n]) == 1] + nodes:
        if start in visited:
            continue
        pair = start[0]
        path = [start[1]]
        visited.add(start)
        cur = start
        while True:
            nxt = [k for k in adjacency[cur] if (pair, k) not in visited]
            if not nxt:
                break
            cur = (pair, nxt[0])
            visited.add(cur)
            path.append(cur[1])
        if len(path) >= 2:
            polylines.append((pair, path))

    arcs = []
    for pair, path in polylines:
        pts = np.array([crossings[k][0] for k in path], dtype=complex)
        pts = _oriented(pts, pair, structure, tol)
        arcs.append(Arc(j=pair[0], k=pair[1], points=pts))
    arcs.sort(key=lambda a: (a.j, a.k, a.points[0].real, a.points[0].imag))
    return arcs


def _oriented(pts, pair, structure, tol):
    """Order arc points so that region pair[0] sits on the left side.

    Probes both normal sides of a few interior segments.  The offset
    scales with the segment length: chord midpoints sit off the true
    curve by the sagitta (quadratic in the step), so a fixed tiny
    offset would sample the same region on both sides.
    """
    alpha, beta = pair
    votes = 0
    m = len(pts)
    for i in range(0, m - 1, max(1, (m - 1) // 7)):
        d = pts[i + 1] - pts[i]
        if d == 0:
            continue
        nrm = 1j * d / abs(d)
        delta = 0.5 * abs(d)
        mid = 0.5 * (pts[i] + pts[i + 1])
        left = classify(mid + delta * nrm, structure)
        right = classify(mid - delta * nrm, structure)
        if left == alpha and right == beta:
            votes += 1
        elif left == beta and right == alpha:
            votes -= 1
    return pts if votes >= 0 else pts[::-1].copy()
