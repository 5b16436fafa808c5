"""Zeros of the cell-analytic representation: counting, location, and use.

The representation of any state has exactly d zeros per fundamental cell
(multiplicity counted) and their sum is pinned to a lattice:

    sum_i z_i = sqrt(pi/2) d**1.5 (lam + i/lam) + sqrt(2 pi d) (M lam + i N / lam)

for integers M, N.  Counting uses the argument principle with continuous
phase tracking along rectangle boundaries; location uses quadtree subdivision
by winding count plus Newton polishing; the sum constraint classifies sets of
coherent-state labels and gates the reconstruction of a state from its zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import FiniteState
from .theta import theta3
from .zak import SystemParams, coherent_unnormalized
from .analytic import AnalyticState

__all__ = [
    "ZeroSet",
    "CompletenessResult",
    "winding_number",
    "count_zeros",
    "find_zeros",
    "zero_sum_residual",
    "sum_constraint_fit",
    "classify_completeness",
    "coherent_gram_rank",
    "reconstruct_from_zeros",
]

_MAX_PASSES = 48
_MAX_BOUNDARY_POINTS = 400_000
_JITTER_ATTEMPTS = 24
_JITTER_FRAC = 1e-3
_CLUSTER_DIAM = 1e-8
_NEWTON_RESID = 1e-10
_RNG_SEED = 0x5EED


class _BoundaryZero(RuntimeError):
    """A boundary sample sits on (or numerically at) a zero."""


@dataclass
class ZeroSet:
    """Zeros of one state inside the half-open cell, with the lattice fit."""

    positions: np.ndarray
    multiplicities: np.ndarray
    params: SystemParams
    M: int
    N: int
    residual: float

    @property
    def total(self) -> int:
        return int(np.sum(self.multiplicities))

    def weighted_sum(self) -> complex:
        return complex(np.sum(self.positions * self.multiplicities))


@dataclass
class CompletenessResult:
    verdict: str  # 'undercomplete' | 'complete' | 'overcomplete-at-least-complete'
    count: int
    residual: float | None
    M: int | None
    N: int | None
    reduced: bool
    gram_rank: int | None = None


def _boundary_points(ll: complex, ur: complex, per_edge, spacing=None) -> np.ndarray:
    """Counterclockwise closed polyline around the rectangle [ll, ur].

    With `spacing` given, each edge gets enough points to keep samples at
    most that far apart (at least 8 per edge); otherwise `per_edge` is used.
    """
    x0, y0, x1, y1 = ll.real, ll.imag, ur.real, ur.imag

    def n_for(length):
        if spacing is None:
            return per_edge
        return max(8, int(math.ceil(length / spacing)))

    nx = n_for(x1 - x0)
    ny = n_for(y1 - y0)
    tx = np.linspace(0.0, 1.0, nx, endpoint=False)
    ty = np.linspace(0.0, 1.0, ny, endpoint=False)
    bottom = x0 + tx * (x1 - x0) + 1j * y0
    right = x1 + 1j * (y0 + ty * (y1 - y0))
    top = x1 - tx * (x1 - x0) + 1j * y1
    left = x0 + 1j * (y1 - ty * (y1 - y0))
    return np.concatenate([bottom, right, top, left, [ll]])


_MAX_LOG_RATIO = math.log(2.0)


def winding_number(f, lower_left: complex, upper_right: complex, zero_tol: float = 0.0,
                   per_edge: int = 16, spacing: float | None = None) -> int:
    """Winding of f around 0 along the rectangle boundary, by phase tracking.

    A segment is bisected until its wrapped phase step stays below pi/2 AND
    its modulus ratio stays below 2.  The modulus trigger matters: a zero
    lying close to the contour spins the phase by nearly 2 pi between two
    samples, which wraps to almost nothing and would evade a phase-only
    test, but it cannot avoid pulling |f| down sharply on the way.

    Callers must choose `spacing` so that the smooth exponential factors of
    f advance the phase well under pi per initial step; a single simple zero
    near a segment then adds under pi more, keeping every true step out of
    the aliasing window around 2 pi.

    `f` must accept an ndarray of complex points.  Raises _BoundaryZero when
    a sample modulus falls at or below `zero_tol`, vanishes exactly, or dips
    below 1e-13 of its neighbors; |f| ranges over many orders of magnitude
    across one cell, so the dip test is relative to the local level rather
    than any global scale.
    """
    ll, ur = complex(lower_left), complex(upper_right)
    if not (ur.real > ll.real and ur.imag > ll.imag):
        raise ValueError("degenerate rectangle")
    pts = _boundary_points(ll, ur, per_edge, spacing)
    vals = np.asarray(f(pts), dtype=complex)
    total_pts = pts.size
    for _ in range(_MAX_PASSES):
        mags = np.abs(vals)
        if np.min(mags) <= zero_tol or np.any(mags == 0.0):
            raise _BoundaryZero
        neighbor = np.maximum(np.roll(mags, 1), np.roll(mags, -1))
        if np.any(mags <= 1e-13 * neighbor):
            raise _BoundaryZero
        ratio = vals[1:] / vals[:-1]
        dphi = np.angle(ratio)
        bad = (np.abs(dphi) >= 0.5 * np.pi) | (np.abs(np.log(np.abs(ratio))) >= _MAX_LOG_RATIO)
        if not np.any(bad):
            w = np.sum(dphi) / (2 * np.pi)
            wi = int(round(w))
            if abs(w - wi) > 0.25:
                raise RuntimeError(f"winding number not integral: {w}")
            return wi
        mids = 0.5 * (pts[:-1][bad] + pts[1:][bad])
        total_pts += mids.size
        if total_pts > _MAX_BOUNDARY_POINTS:
            break
        mvals = np.asarray(f(mids), dtype=complex)
        idx = np.flatnonzero(bad)
        pts = np.insert(pts, idx + 1, mids)
        vals = np.insert(vals, idx + 1, mvals)
    raise RuntimeError(
        "argument jump above pi/2 persisted after maximum boundary refinement; "
        "a zero may lie on or vanishingly close to the contour"
    )


def _cell_scale(state: AnalyticState, n: int = 48) -> float:
    p = state.params
    xs = p.a + (np.arange(n) + 0.5) / n * p.cell_width
    ys = p.b + (np.arange(n) + 0.5) / n * p.cell_height
    grid = (xs[:, None] + 1j * ys[None, :]).ravel()
    return float(np.max(np.abs(state(grid))))


def count_zeros(state: AnalyticState, lower_left: complex, upper_right: complex) -> int:
    """Number of zeros (with multiplicity) inside a rectangle, via the winding."""
    p = state.params
    spacing = min(p.cell_width, p.cell_height) / (6.0 * p.d)
    ll, ur = complex(lower_left), complex(upper_right)
    size = max(ur.real - ll.real, ur.imag - ll.imag)
    rng = np.random.default_rng(_RNG_SEED)
    for attempt in range(_JITTER_ATTEMPTS):
        try:
            return winding_number(state, ll, ur, spacing=spacing)
        except (_BoundaryZero, RuntimeError):
            shift = (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)) * _JITTER_FRAC * size
            ll = complex(lower_left) + shift
            ur = complex(upper_right) + shift
    raise RuntimeError("zeros persist on the rectangle boundary after jitter attempts")


def _newton_polish(state: AnalyticState, z0: complex, scale: float, box_diam: float):
    """Newton iteration from z0; returns the root or None."""
    z = complex(z0)
    step_tol = 1e-15 * max(state.params.cell_width, state.params.cell_height)
    for _ in range(60):
        fv = state(z)
        dv = state.derivative(z)
        if dv == 0 or not np.isfinite(fv) or not np.isfinite(dv):
            return None
        step = fv / dv
        z -= step
        if abs(z - z0) > 3.0 * box_diam:
            return None  # escaped; distrust
        if abs(step) < step_tol:
            break
    if abs(state(z)) <= _NEWTON_RESID * scale:
        return z
    return None


def _polish_double(state: AnalyticState, z0: complex, box_diam: float):
    """Center of a double zero (or tight pair): the nearby simple zero of f'."""
    cell = max(state.params.cell_width, state.params.cell_height)
    h = 1e-6 * cell
    step_tol = 1e-14 * cell
    z = complex(z0)
    for _ in range(60):
        d1 = state.derivative(z)
        d2 = (state.derivative(z + h) - state.derivative(z - h)) / (2.0 * h)
        if d2 == 0 or not np.isfinite(d1) or not np.isfinite(d2):
            return None
        step = d1 / d2
        z -= step
        if abs(z - z0) > 5.0 * max(box_diam, h):
            return None
        if abs(step) < step_tol:
            return z
    return None


def find_zeros(state: AnalyticState, cluster_diam: float = _CLUSTER_DIAM) -> ZeroSet:
    """Locate all d zeros inside the half-open fundamental cell.

    Quadtree subdivision by winding count; a box of winding 1 is polished by
    Newton with the termwise theta derivative, and a box of winding m that
    stops splitting below diameter `cluster_diam` is declared a zero of
    multiplicity m at its center.  Subdivision lines landing on zeros are
    jittered.  Found positions are reduced into the canonical half-open cell
    by lattice translation and sorted by (Im, Re).

    A state whose exact representation has a multiple zero acquires, through
    float rounding of its amplitudes, a cluster of simple zeros separated by
    about sqrt(machine eps); the default `cluster_diam` resolves such a
    cluster into its simple members, while a larger value reports it as one
    multiple zero.
    """
    p = state.params
    d = p.d
    width, height = p.cell_width, p.cell_height
    scale = _cell_scale(state)
    spacing = min(width, height) / (6.0 * d)
    rng = np.random.default_rng(_RNG_SEED)

    # window of one full period, shifted until no zero sits on (or within
    # float noise of) its boundary; any such window must wind exactly d times
    ll = ur = None
    for attempt in range(_JITTER_ATTEMPTS):
        dx = 0.0 if attempt == 0 else rng.uniform(-1, 1) * _JITTER_FRAC * width
        dy = 0.0 if attempt == 0 else rng.uniform(-1, 1) * _JITTER_FRAC * height
        cand_ll = complex(p.a - dx, p.b - dy)
        cand_ur = cand_ll + complex(width, height)
        try:
            total = winding_number(state, cand_ll, cand_ur, spacing=spacing)
        except (_BoundaryZero, RuntimeError):
            continue
        if total != d:
            continue  # a zero hugs the boundary from outside; shift again
        ll, ur = cand_ll, cand_ur
        break
    if ll is None:
        raise RuntimeError(
            f"could not place a period window winding exactly {d} times; "
            "a zero sits too close to every candidate boundary"
        )

    found: list[tuple[complex, int]] = []
    stack = [(ll, ur, d)]
    guard = 0
    while stack:
        guard += 1
        if guard > 100_000:
            raise RuntimeError(
                f"subdivision budget exhausted; located so far: {found}"
            )
        bll, bur, wind = stack.pop()
        if wind == 0:
            continue
        bw, bh = bur.real - bll.real, bur.imag - bll.imag
        diam = math.hypot(bw, bh)
        if wind == 1 and diam <= 0.05 * min(width, height):
            z = _newton_polish(state, 0.5 * (bll + bur), scale, diam)
            if z is not None:
                found.append((z, 1))
                continue
        if diam < cluster_diam:
            center = 0.5 * (bll + bur)
            if wind == 2:
                polished = _polish_double(state, center, diam)
                if polished is not None:
                    center = polished
            found.append((center, wind))
            continue
        for attempt in range(_JITTER_ATTEMPTS):
            if attempt == 0:
                cx, cy = bll.real + 0.5 * bw, bll.imag + 0.5 * bh
            else:
                cx = bll.real + (0.5 + rng.uniform(-1, 1) * _JITTER_FRAC) * bw
                cy = bll.imag + (0.5 + rng.uniform(-1, 1) * _JITTER_FRAC) * bh
            boxes = [
                (bll, complex(cx, cy)),
                (complex(cx, bll.imag), complex(bur.real, cy)),
                (complex(bll.real, cy), complex(cx, bur.imag)),
                (complex(cx, cy), bur),
            ]
            try:
                winds = [winding_number(state, b0, b1, spacing=spacing)
                         for b0, b1 in boxes]
            except (_BoundaryZero, RuntimeError):
                continue
            if sum(winds) != wind:
                continue  # inconsistent sampling; re-jitter the split
            for (b0, b1), w in zip(boxes, winds):
                stack.append((b0, b1, w))
            break
        else:
            # every split attempt hit a sampling trap: a zero hugs this box's
            # own (unjitterable) boundary.  For a lone zero Newton still
            # converges from the center; a multiple/near-degenerate cluster is
            # declared at the box scale, the honest resolution limit of a
            # zero whose function value grows only quadratically.
            center = 0.5 * (bll + bur)
            if wind == 1:
                z = _newton_polish(state, center, scale, 10.0 * diam)
                if z is not None:
                    found.append((z, 1))
                    continue
            elif wind == 2:
                polished = _polish_double(state, center, diam)
                if polished is not None:
                    center = polished
            found.append((center, wind))

    # merge duplicates, reduce into the canonical half-open cell, sort
    merged: list[tuple[complex, int]] = []
    merge_tol = 1e-9 * max(width, height)
    for z, mult in found:
        for i, (zi, mi) in enumerate(merged):
            if abs(z - zi) < merge_tol:
                merged[i] = (zi, mi + mult)
                break
        else:
            merged.append((z, mult))
    positions, mults = [], []
    for z, mult in merged:
        xr = (z.real - p.a) % width
        yr = (z.imag - p.b) % height
        if width - xr < 1e-9 * width:
            xr = 0.0
        if height - yr < 1e-9 * height:
            yr = 0.0
        positions.append(complex(p.a + xr, p.b + yr))
        mults.append(mult)
    # quantize sort keys so zeros sharing a row/column order stably
    quantum = 1e-8 * max(width, height)
    key_re = np.round(np.real(positions) / quantum)
    key_im = np.round(np.imag(positions) / quantum)
    order = np.lexsort((key_re, key_im))
    positions = np.asarray(positions, dtype=complex)[order]
    mults = np.asarray(mults, dtype=int)[order]
    if int(np.sum(mults)) != d:
        raise RuntimeError(
            f"zero multiplicities sum to {int(np.sum(mults))}, expected {d}; "
            f"positions: {positions}"
        )
    residual, M, N = sum_constraint_fit(complex(np.sum(positions * mults)), p)
    return ZeroSet(positions, mults, p, M, N, residual)


def sum_constraint_fit(total: complex, params: SystemParams):
    """Best lattice fit of a zero sum; returns (residual, M, N).

    Minimizes |total - sqrt(pi/2) d**1.5 (lam + i/lam) - sqrt(2 pi d)(M lam + i N/lam)|
    over integers with |M|, |N| <= d + 2.
    """
    d, lam = params.d, params.lam
    base = math.sqrt(np.pi / 2) * d**1.5 * complex(lam, 1.0 / lam)
    lattice = math.sqrt(2 * np.pi * d)
    rem = total - base
    bound = d + 2
    M = int(np.clip(round(rem.real / (lattice * lam)), -bound, bound))
    N = int(np.clip(round(rem.imag * lam / lattice), -bound, bound))
    residual = abs(rem - lattice * complex(M * lam, N / lam))
    return float(residual), M, N


def zero_sum_residual(zs: ZeroSet):
    """(residual, M, N) of the multiplicity-weighted zero sum of a ZeroSet."""
    return sum_constraint_fit(zs.weighted_sum(), zs.params)


# ---------------------------------------------------------------------------
# completeness of coherent-state label sets


def coherent_gram_rank(points, params: SystemParams, tol: float = 1e-8) -> int:
    """Rank of the Gram matrix of the coherent states at the given labels.

    Computed from the singular values of the amplitude matrix (columns are
    the normalized states); values above tol * largest count toward the rank.
    """
    cols = []
    for z in np.asarray(points, dtype=complex).ravel():
        t = coherent_unnormalized(z, params)
        cols.append(t / np.linalg.norm(t))
    sv = np.linalg.svd(np.column_stack(cols), compute_uv=False)
    return int(np.sum(sv > tol * sv[0]))


def classify_completeness(points, params: SystemParams, residual_tol: float = 1e-6,
                          merge_tol: float = 1e-10, cross_validate: bool = False) -> CompletenessResult:
    """Classify a set of coherent-state labels inside the cell.

    More than d labels (counted with multiplicity after merging duplicates)
    are at least complete; fewer are undercomplete; exactly d labels are
    undercomplete precisely when their sum satisfies the lattice constraint.
    Labels outside the cell are translated back in (the physical ray is
    unchanged by quasi-periodicity) and flagged.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    if pts.size == 0:
        raise ValueError("need at least one point")
    reduced = False
    width, height = params.cell_width, params.cell_height
    canon = []
    for z in pts:
        xr = (z.real - params.a) % width
        yr = (z.imag - params.b) % height
        zc = complex(params.a + xr, params.b + yr)
        if abs(zc - z) > 1e-12 * max(width, height):
            reduced = True
        canon.append(zc)
    merged: list[tuple[complex, int]] = []
    for z in canon:
        for i, (zi, mi) in enumerate(merged):
            if abs(z - zi) < merge_tol:
                merged[i] = (zi, mi + 1)
                break
        else:
            merged.append((z, 1))
    count = sum(m for _, m in merged)
    d = params.d
    if count > d:
        return CompletenessResult("overcomplete-at-least-complete", count, None, None, None, reduced)
    if count < d:
        return CompletenessResult("undercomplete", count, None, None, None, reduced)
    total = complex(sum(z * m for z, m in merged))
    residual, M, N = sum_constraint_fit(total, params)
    verdict = "undercomplete" if residual <= residual_tol else "complete"
    rank = None
    if cross_validate:
        expanded = [z for z, m in merged for _ in range(m)]
        rank = coherent_gram_rank(expanded, params)
    return CompletenessResult(verdict, count, residual, M, N, reduced, rank)


# ---------------------------------------------------------------------------
# reconstruction of a state from its zeros


def _zero_product(z, zero_list, params: SystemParams):
    """Q(z): one theta factor per zero, each with a single zero per cell.

    Q(z) = prod_j theta3[(z - z_j + w0) sqrt(pi/2d) / lam; i / lam^2] with
    w0 = sqrt(pi d / 2)(lam + i / lam) placing the factor's zero at z_j.
    """
    d, lam = params.d, params.lam
    w0 = math.sqrt(np.pi * d / 2) * complex(lam, 1.0 / lam)
    scale = math.sqrt(np.pi / (2 * d)) / lam
    z = np.asarray(z, dtype=complex)
    out = np.ones(z.shape, dtype=complex)
    for zj in zero_list:
        out = out * theta3((z - zj + w0) * scale, 1j / lam**2)
    return out


def reconstruct_from_zeros(zeros, params: SystemParams | None = None,
                           multiplicities=None, residual_tol: float = 1e-6,
                           cond_max: float = 1e10) -> FiniteState:
    """Rebuild the state whose representation vanishes at the given zeros.

    Accepts a ZeroSet, or an array of positions plus `params` (and optional
    multiplicities).  The multiplicity-weighted sum must satisfy the lattice
    constraint to within `residual_tol`, otherwise no state exists and a
    ValueError is raised.  The candidate

        f(z) = exp[-i sqrt(2 pi / d) N z / lam] Q(z)

    is collocated at d points along a horizontal line through the cell and
    the position amplitudes solved from the theta basis; the result is
    normalized (the global phase is not fixed by the zeros).
    """
    if isinstance(zeros, ZeroSet):
        params = zeros.params
        positions = zeros.positions
        multiplicities = zeros.multiplicities
    else:
        if params is None:
            raise ValueError("params required when zeros are given as an array")
        positions = np.asarray(zeros, dtype=complex).ravel()
        if multiplicities is None:
            multiplicities = np.ones(positions.size, dtype=int)
    multiplicities = np.asarray(multiplicities, dtype=int)
    d, lam = params.d, params.lam
    if int(np.sum(multiplicities)) != d:
        raise ValueError(
            f"multiplicities sum to {int(np.sum(multiplicities))}, expected d = {d}"
        )
    total = complex(np.sum(positions * multiplicities))
    residual, M, N = sum_constraint_fit(total, params)
    if residual > residual_tol:
        raise ValueError(
            "no such state exists: the zero sum violates the lattice constraint "
            f"(residual {residual:.3e} > {residual_tol:.1e})"
        )
    zero_list = [z for z, m in zip(positions, multiplicities) for _ in range(m)]
    freq = math.sqrt(2 * np.pi / d) * N / lam

    def candidate(z):
        z = np.asarray(z, dtype=complex)
        return np.exp(-1j * freq * z) * _zero_product(z, zero_list, params)

    spacing = params.cell_width / d
    m = np.arange(d)
    scale = math.sqrt(np.pi / (2 * d)) / lam
    for shift_frac, h_frac in ((0.0, 0.37), (0.31, 0.61), (0.57, 0.23), (0.83, 0.79)):
        zc = (params.a + (m + 0.5) * spacing + shift_frac * spacing
              + 1j * (params.b + h_frac * params.cell_height / d))
        u = np.pi * m[None, :] / d - scale * zc[:, None]
        V = np.pi ** -0.25 * theta3(u, params.tau0)
        if np.linalg.cond(V) > cond_max:
            continue
        y = candidate(zc)
        amps = np.linalg.solve(V, y)
        return FiniteState(amps, normalize=True)
    raise RuntimeError("collocation system remained ill-conditioned after retries")
