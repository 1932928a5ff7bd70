"""Entropic-index sweeps and selection of the best binarization.

A sweep fixes the image, walks a grid of entropic indices, and records for
each index the optimal threshold and the edge-pixel count of the resulting
bi-level image. The best row is the one with the most edge pixels; abrupt
threshold jumps between adjacent indices flag a texture transition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import KANIADAKIS, TSALLIS, EntropyFunctional
from .imaging import GrayImage, build_histogram
from .thresholding import binarize, edge_pixel_count, optimize_threshold

# Spans (0, 1) with extra resolution near the endpoints, where the deformed
# entropies depart furthest from Shannon.
DEFAULT_INDEX_GRID = (0.01, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)

# Observed transitions jump by tens of gray levels while ordinary adjacent
# deltas stay below ten; 20 separates the regimes with margin.
DEFAULT_JUMP_TOLERANCE = 20

_MIRROR_MATCH_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SweepRow:
    index: float
    threshold: int
    edge_pixels: int

    def __post_init__(self) -> None:
        if self.edge_pixels < 0:
            raise ValueError("edge_pixels must be non-negative")


@dataclass(frozen=True)
class SweepTable:
    functional_kind: str  # TSALLIS or KANIADAKIS
    rows: tuple[SweepRow, ...]

    def __post_init__(self) -> None:
        if self.functional_kind not in (TSALLIS, KANIADAKIS):
            raise ValueError(f"unsupported sweep kind {self.functional_kind!r}")
        object.__setattr__(self, "rows", tuple(self.rows))
        indices = [row.index for row in self.rows]
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError("row indices must be strictly increasing")

    @property
    def indices(self) -> tuple[float, ...]:
        return tuple(row.index for row in self.rows)


@dataclass(frozen=True)
class ThresholdJump:
    index_before: float
    index_after: float
    threshold_before: int
    threshold_after: int


@dataclass(frozen=True)
class TransitionReport:
    jumps: tuple[ThresholdJump, ...]


def _validated_grid(kind: str, indices, allow_extended: bool) -> list[float]:
    grid = [float(x) for x in indices]
    if not grid:
        raise ValueError("index grid is empty")
    grid.sort()
    if any(b == a for a, b in zip(grid, grid[1:])):
        raise ValueError("index grid contains duplicates")
    for x in grid:
        if not allow_extended and not 0.0 < x < 1.0:
            raise ValueError(
                f"index {x!r} outside (0, 1); pass allow_extended to lift the default policy"
            )
        EntropyFunctional(kind, x)  # raises if outside the functional's domain
    return grid


def sweep(
    img: GrayImage,
    kind: str,
    indices=DEFAULT_INDEX_GRID,
    connectivity: int = 4,
    allow_extended: bool = False,
) -> SweepTable:
    """Optimize, binarize, and count edges at every index of the grid.

    The histogram is computed once and reused; indices are validated against
    the open interval (0, 1) unless allow_extended widens the policy to the
    functional's full domain. Rows come back in ascending index order.
    """
    if kind not in (TSALLIS, KANIADAKIS):
        raise ValueError(f"sweep kind must be Tsallis or Kaniadakis, got {kind!r}")
    grid = _validated_grid(kind, indices, allow_extended)
    hist = build_histogram(img)
    edges_at: dict[int, int] = {}
    rows = []
    for x in grid:
        result = optimize_threshold(hist, EntropyFunctional(kind, x))
        t = result.threshold
        if t not in edges_at:
            edges_at[t] = edge_pixel_count(binarize(img, t), connectivity)
        rows.append(SweepRow(x, t, edges_at[t]))
    return SweepTable(kind, tuple(rows))


def select_best(table: SweepTable) -> SweepRow:
    """Row with the most edge pixels; ties break toward the smallest index."""
    if not table.rows:
        raise ValueError("cannot select from an empty sweep table")
    best = table.rows[0]
    for row in table.rows[1:]:
        if row.edge_pixels > best.edge_pixels:
            best = row
    return best


def detect_transitions(
    table: SweepTable, jump_tolerance: int = DEFAULT_JUMP_TOLERANCE
) -> TransitionReport:
    """Adjacent index pairs whose thresholds differ by more than the tolerance."""
    if len(table.rows) < 2:
        raise ValueError("transition detection needs at least two rows")
    jumps = []
    for before, after in zip(table.rows, table.rows[1:]):
        if abs(after.threshold - before.threshold) > jump_tolerance:
            jumps.append(
                ThresholdJump(before.index, after.index, before.threshold, after.threshold)
            )
    return TransitionReport(tuple(jumps))


def mirror_check(tsallis: SweepTable, kaniadakis: SweepTable) -> list[tuple[float, int]]:
    """Threshold differences threshold_T(x) - threshold_K(1 - x) per index x.

    Both tables must cover the same grid on the same image. Only indices whose
    complement 1 - x is also on the grid contribute a pair; results come back
    ordered by x. Empirically the differences stay within one gray level.
    """
    if tsallis.functional_kind != TSALLIS or kaniadakis.functional_kind != KANIADAKIS:
        raise ValueError("mirror_check expects a Tsallis table and a Kaniadakis table")
    if tsallis.indices != kaniadakis.indices:
        raise ValueError("mirror_check requires both sweeps over the same index grid")
    indices = np.asarray(tsallis.indices)
    by_index = {row.index: row.threshold for row in kaniadakis.rows}
    diffs = []
    for row in tsallis.rows:
        partner = 1.0 - row.index
        match = indices[np.abs(indices - partner) <= _MIRROR_MATCH_TOLERANCE]
        if match.size:
            diffs.append((row.index, row.threshold - by_index[float(match[0])]))
    return diffs
