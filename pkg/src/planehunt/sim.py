"""Execution engine: run streams against hidden treasures, lower-bound formulas,
and brute-force adversarial placement search.

``run`` is the single source of truth for cost accounting: it consumes a
stream's blocks in order, finds the first point within the vision radius, and
reports the exact arc length walked to that point.  The adversarial search is
deliberately exhaustive over its candidate set; it is the independent oracle
for optimality-ratio claims and must not prune.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .advice import encode_advice
from .errors import PreconditionError, StreamChainError
from .geom import DETECTION_TOL, Point2, as_point, detection_lengths
from .traversal import TrajectoryStream, sweep_cost_bound

# Default cost cap multiplier: caps are mandatory for infinite streams, and a
# hit at 1e4 times the applicable ceiling is a hard failure, not noise.
DEFAULT_CAP_MULTIPLIER = 1e4

MEDIUM_LB_FACTOR = 1.0 / 800.0
SMALL_LB_FACTOR = 1.0 / 256.0
MEDIUM_LB_RADIUS_LIMIT = 0.9  # the 1/800 bound needs r < 0.9 D

MAX_CANDIDATES = 10**6

_CAND_SLAB = 256


@dataclass(frozen=True)
class RunOutcome:
    """Result of one hunt: found flag, exact cost, detection point, segment count.

    ``cost`` is the arc length walked until first detection; unfound runs
    carry the cap (or the total length of an exhausted finite stream).
    """

    found: bool
    cost: float
    detection_point: Optional[Point2]
    segments_executed: int


def run(stream: TrajectoryStream, treasure, r: float, cost_cap: float) -> RunOutcome:
    """Walk the stream until first detection, cap hit, or exhaustion."""
    if not (r > 0.0 and math.isfinite(r)):
        raise PreconditionError("vision radius must be positive and finite")
    if not (cost_cap > 0.0):
        raise PreconditionError("cost cap must be positive (streams may be infinite)")
    q = as_point(treasure)
    start = stream.start
    if start.distance_to(q) <= r + DETECTION_TOL:
        return RunOutcome(True, 0.0, start, 0)
    walked = 0.0
    segments = 0
    last = (start.x, start.y)
    for block in stream.blocks():
        pts = block.points
        if pts[0, 0] != last[0] or pts[0, 1] != last[1]:
            raise StreamChainError(
                f"block starts at ({pts[0, 0]}, {pts[0, 1]}) but previous segment ended at {last}"
            )
        t = detection_lengths(pts, q, r)
        hits = np.flatnonzero(~np.isnan(t))
        cs = np.cumsum(block.lengths)
        if hits.size:
            i = int(hits[0])
            before = float(cs[i - 1]) if i else 0.0
            cost = float(walked + before + float(t[i]))
            if cost <= cost_cap:
                frac_len = float(block.lengths[i])
                a = pts[i]
                b = pts[i + 1]
                if frac_len > 0.0:
                    geo = math.hypot(b[0] - a[0], b[1] - a[1])
                    frac = float(t[i]) / geo if geo > 0.0 else 0.0
                else:
                    frac = 0.0
                point = Point2(
                    float(a[0] + frac * (b[0] - a[0])), float(a[1] + frac * (b[1] - a[1]))
                )
                return RunOutcome(True, cost, point, segments + i + 1)
        total_after = walked + float(cs[-1]) if cs.size else walked
        if total_after > cost_cap:
            over = int(np.searchsorted(cs, cost_cap - walked, side="left"))
            return RunOutcome(False, cost_cap, None, segments + over + 1)
        walked = total_after
        segments += int(block.lengths.size)
        last = (pts[-1, 0], pts[-1, 1])
    return RunOutcome(False, walked, None, segments)


@dataclass(frozen=True)
class LowerBoundReport:
    """The explicit cost floors for advice size z, range D, and vision r.

    ``medium_bound`` is (1/800)(D^2/(2^z r) + D), valid only while
    r < 0.9 D (``medium_applicable``); ``small_bound`` combines the
    (1/256)(D^2/(2^z r)) (log2 D + log2 1/r) floor with the trivial D - r.
    """

    medium_bound: float
    medium_applicable: bool
    small_bound: float
    trivial_bound: float


def medium_regime_lower_bound(z: int, D: float, r: float) -> float:
    return MEDIUM_LB_FACTOR * (D * D / (float(1 << z) * r) + D)


def lower_bounds(z: int, D: float, r: float) -> LowerBoundReport:
    if not (0.0 < r < D):
        raise PreconditionError("lower bounds need 0 < r < D")
    if not isinstance(z, int) or z < 0:
        raise PreconditionError("advice size must be a nonnegative integer")
    trivial = D - r
    small = SMALL_LB_FACTOR * (D * D / (float(1 << z) * r)) * (math.log2(D) + math.log2(1.0 / r))
    return LowerBoundReport(
        medium_bound=medium_regime_lower_bound(z, D, r),
        medium_applicable=r < MEDIUM_LB_RADIUS_LIMIT * D,
        small_bound=max(small, trivial),
        trivial_bound=trivial,
    )


def shaded_tile_candidates(D: float, r: float, start=Point2(0.0, 0.0)) -> np.ndarray:
    """Worst-case seeds: every other tile center of odd rows of a 2r tiling.

    The tiling covers the axis-aligned square of side sqrt(2) D / 2 whose
    south-west corner sits at the start; rows count from the north side.
    """
    side = math.sqrt(2.0) * D / 2.0
    m = int(side // (2.0 * r))
    p = as_point(start)
    out = []
    for b in range(1, m + 1, 2):  # odd rows from the north
        row = m - b
        cy = p.y + (2 * row + 1) * r
        for a in range(1, m + 1, 2):  # every other column from the west
            out.append(((2 * a - 1) * r + p.x, cy))
    return np.array(out, dtype=np.float64).reshape(-1, 2)


def disc_grid_candidates(D: float, grid_step: float, start=Point2(0.0, 0.0)) -> np.ndarray:
    """Uniform grid of the given pitch over the disc of radius D."""
    k = int(D // grid_step)
    coords = np.arange(-k, k + 1, dtype=np.float64) * grid_step
    gx, gy = np.meshgrid(coords, coords, indexing="ij")
    pts = np.column_stack((gx.ravel(), gy.ravel()))
    keep = pts[:, 0] ** 2 + pts[:, 1] ** 2 <= D * D
    p = as_point(start)
    return pts[keep] + np.array([p.x, p.y])


def adversarial_placement(
    strategy_factory: Callable[[str], TrajectoryStream],
    z: int,
    D: float,
    r: float,
    grid_step: float,
    cost_cap: Optional[float] = None,
    max_candidates: int = MAX_CANDIDATES,
) -> tuple[Point2, float]:
    """Worst treasure placement for an advice-indexed strategy, by brute force.

    Candidates are the shaded-tile pattern plus a ``grid_step``-pitch grid over
    the disc of radius D, each simulated with its own canonical advice.
    Returns the placement maximizing the detection cost and that cost; ties
    break toward the lexicographically smallest candidate.  Unfound candidates
    count at the cap.
    """
    if not (0.0 < r < D):
        raise PreconditionError("adversarial search needs 0 < r < D")
    if not (0.0 < grid_step <= r):
        raise PreconditionError("grid step must be positive and at most r")
    start = as_point(strategy_factory(encode_advice((0.0, 0.0), (0.0, 1.0), z)).start)
    cands = np.concatenate(
        [shaded_tile_candidates(D, r, start), disc_grid_candidates(D, grid_step, start)]
    )
    dist = np.hypot(cands[:, 0] - start.x, cands[:, 1] - start.y)
    cands = cands[dist > 0.0]
    cands = np.unique(cands, axis=0)  # sorts lexicographically: the tie-break order
    if cands.shape[0] > max_candidates:
        raise PreconditionError(f"{cands.shape[0]} candidates exceed the budget {max_candidates}")
    if cands.shape[0] == 0:
        raise PreconditionError("no candidate placements (disc too small for the grid)")
    cap = cost_cap if cost_cap is not None else DEFAULT_CAP_MULTIPLIER * 2.0 * sweep_cost_bound(z, D, r)

    dx = cands[:, 0] - start.x
    dy = cands[:, 1] - start.y
    theta = np.arctan2(-dx, dy) % math.tau
    theta[theta == 0.0] = math.tau
    if z == 0:
        sector = np.zeros(cands.shape[0], dtype=np.int64)
    else:
        width = math.tau / float(1 << z)
        sector = np.ceil(theta / width).astype(np.int64) - 1
        np.clip(sector, 0, (1 << z) - 1, out=sector)

    costs = np.full(cands.shape[0], cap)
    found = np.zeros(cands.shape[0], dtype=bool)
    within = np.hypot(dx, dy) <= r + DETECTION_TOL
    costs[within] = 0.0
    found[within] = True

    for j in np.unique(sector):
        group = np.flatnonzero((sector == j) & ~found)
        if group.size == 0:
            continue
        w = format(int(j), f"0{z}b") if z else ""
        stream = strategy_factory(w)
        _search_group(stream, cands, group, r, cap, costs, found)

    best = int(np.argmax(costs))  # first max: lexicographically smallest winner
    return Point2(float(cands[best, 0]), float(cands[best, 1])), float(costs[best])


def _search_group(stream, cands, group, r, cap, costs, found) -> None:
    """First-detection costs for one advice group, walking the stream once."""
    active = group.copy()
    walked = 0.0
    last: Optional[tuple[float, float]] = None
    for block in stream.blocks():
        pts = block.points
        if last is not None and (pts[0, 0] != last[0] or pts[0, 1] != last[1]):
            raise StreamChainError("stream blocks do not chain")
        last = (pts[-1, 0], pts[-1, 1])
        cs = np.cumsum(block.lengths)
        before = np.concatenate(([0.0], cs[:-1]))
        for lo in range(0, active.size, _CAND_SLAB):
            slab = active[lo : lo + _CAND_SLAB]
            if slab.size == 0:
                continue
            t = _detection_matrix(pts, cands[slab], r)
            hit_any = ~np.all(np.isnan(t), axis=0)
            if not hit_any.any():
                continue
            first = np.nanargmin(
                np.where(np.isnan(t), np.inf, before[:, None] + t), axis=0
            )
            sel = slab[hit_any]
            seg = first[hit_any]
            cost = walked + before[seg] + t[seg, np.arange(t.shape[1])[hit_any]]
            ok = cost <= cap
            costs[sel[ok]] = cost[ok]
            found[sel[ok]] = True
        active = active[~found[active]]
        walked += float(cs[-1]) if cs.size else 0.0
        if active.size == 0 or walked > cap:
            break


def _detection_matrix(points: np.ndarray, targets: np.ndarray, r: float) -> np.ndarray:
    """detection_lengths for many targets at once: (segments, targets) of t or NaN."""
    ax = points[:-1, 0][:, None]
    ay = points[:-1, 1][:, None]
    bx = points[1:, 0][:, None]
    by = points[1:, 1][:, None]
    qx = targets[:, 0][None, :]
    qy = targets[:, 1][None, :]
    wx = qx - ax
    wy = qy - ay
    d0sq = wx * wx + wy * wy
    reach = r + DETECTION_TOL
    seg_len = np.hypot(bx - ax, by - ay)
    with np.errstate(invalid="ignore", divide="ignore"):
        ux = (bx - ax) / seg_len
        uy = (by - ay) / seg_len
    proj = wx * ux + wy * uy
    out = np.full(d0sq.shape, np.nan)
    close0 = d0sq <= reach * reach
    out[close0] = 0.0
    active = (~close0) & (seg_len > 0.0) & (proj > 0.0)
    if not active.any():
        return out
    t_close = np.minimum(proj, seg_len)
    cx = ax + t_close * ux - qx
    cy = ay + t_close * uy - qy
    active &= np.hypot(cx, cy) <= reach
    if not active.any():
        return out
    c = d0sq - r * r
    disc = proj * proj - c
    with np.errstate(invalid="ignore", divide="ignore"):
        root = c / (proj + np.sqrt(np.maximum(disc, 0.0)))
    hit = np.where((disc > 0.0) & (root <= seg_len), root, t_close)
    out[active] = hit[active]
    return out
