"""Bi-level threshold selection by entropy maximization.

A candidate threshold t splits the histogram into a dark class A over tones
[0, t] and a bright class B over [t+1, 255]. The optimizer exhaustively
evaluates the total entropy of every feasible split and returns the argmax,
breaking ties toward the smallest t so results are reproducible. Thresholds
that empty a class are excluded from the search: the class entropies are
undefined at zero mass, and excluding them avoids spurious maxima on
near-constant images.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import (
    KANIADAKIS,
    SHANNON,
    TSALLIS,
    Distribution,
    EntropyFunctional,
    coentropy,
    kaniadakis_compose,
    kaniadakis_entropy,
    shannon_entropy,
    tsallis_compose,
    tsallis_entropy,
)
from .imaging import BiLevelImage, GrayImage, Histogram

MAX_THRESHOLD = 254  # class B is never empty by construction at t = 255


class InfeasibleHistogramError(ValueError):
    """No threshold splits the histogram into two non-empty classes."""


@dataclass(frozen=True)
class ClassDistribution:
    """One threshold class: tone range, probability mass, normalized tones."""

    lo: int
    hi: int
    mass: float
    dist: Distribution

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("class range is empty")
        if not 0.0 < self.mass <= 1.0:
            raise ValueError("class mass must lie in (0, 1]")
        if len(self.dist.probs) != self.hi - self.lo + 1:
            raise ValueError("distribution length does not match tone range")


@dataclass(frozen=True)
class ThresholdResult:
    threshold: int
    total_entropy: float
    entropy_a: float
    entropy_b: float


def _check_threshold(t: int) -> int:
    t = int(t)
    if not 0 <= t <= MAX_THRESHOLD:
        raise ValueError(f"threshold must lie in [0, {MAX_THRESHOLD}], got {t}")
    return t


def split(h: Histogram, t: int) -> tuple[ClassDistribution, ClassDistribution] | None:
    """Class distributions (A over [0, t], B over [t+1, 255]) at threshold t.

    Returns None when either class has zero mass (infeasible threshold).
    """
    t = _check_threshold(t)
    count_a = int(h.counts[: t + 1].sum())
    count_b = h.total - count_a
    if count_a == 0 or count_b == 0:
        return None
    # counts / class count equals frequency / class mass, with less rounding
    dist_a = Distribution(h.counts[: t + 1] / count_a)
    dist_b = Distribution(h.counts[t + 1 :] / count_b)
    a = ClassDistribution(0, t, count_a / h.total, dist_a)
    b = ClassDistribution(t + 1, 255, count_b / h.total, dist_b)
    return a, b


def total_entropy(h: Histogram, t: int, f: EntropyFunctional) -> float | None:
    """Total entropy of the split at t under f, or None if t is infeasible."""
    parts = split(h, t)
    if parts is None:
        return None
    a, b = parts
    if f.kind == SHANNON:
        return shannon_entropy(a.dist) + shannon_entropy(b.dist)
    if f.kind == TSALLIS:
        q = f.index
        return tsallis_compose(tsallis_entropy(a.dist, q), tsallis_entropy(b.dist, q), q)
    if f.kind == KANIADAKIS:
        kappa = f.index
        return kaniadakis_compose(
            kaniadakis_entropy(a.dist, kappa),
            coentropy(a.dist, kappa),
            kaniadakis_entropy(b.dist, kappa),
            coentropy(b.dist, kappa),
        )
    raise ValueError(f"unknown entropy kind {f.kind!r}")


def _objective_profile(h: Histogram, f: EntropyFunctional) -> np.ndarray:
    """Total entropy for every threshold 0..254 at once; -inf where infeasible.

    Uses cumulative sums over the histogram so a full scan costs a handful of
    vector operations instead of 255 independent splits.
    """
    counts_a = np.cumsum(h.counts[:MAX_THRESHOLD + 1])
    counts_b = h.total - counts_a
    feasible = (counts_a > 0) & (counts_b > 0)
    freq = h.frequencies
    pos = freq > 0.0

    with np.errstate(divide="ignore", invalid="ignore"):
        mass_a = counts_a / h.total
        mass_b = counts_b / h.total
        if f.kind == SHANNON:
            f_log_f = np.where(pos, freq * np.log(np.where(pos, freq, 1.0)), 0.0)
            head = np.cumsum(f_log_f)[:MAX_THRESHOLD + 1]
            s_a = np.log(mass_a) - head / mass_a
            s_b = np.log(mass_b) - (f_log_f.sum() - head) / mass_b
            objective = s_a + s_b
        elif f.kind == TSALLIS:
            q = f.index
            f_pow = np.where(pos, freq, 1.0) ** q * pos
            head = np.cumsum(f_pow)[:MAX_THRESHOLD + 1]
            s_a = (1.0 - head / mass_a**q) / (q - 1.0)
            s_b = (1.0 - (f_pow.sum() - head) / mass_b**q) / (q - 1.0)
            objective = s_a + s_b + (1.0 - q) * s_a * s_b
        else:
            kappa = f.index
            safe = np.where(pos, freq, 1.0)
            f_hi = safe ** (1.0 + kappa) * pos
            f_lo = safe ** (1.0 - kappa) * pos
            head_hi = np.cumsum(f_hi)[:MAX_THRESHOLD + 1]
            head_lo = np.cumsum(f_lo)[:MAX_THRESHOLD + 1]
            v_a_hi = head_hi / mass_a ** (1.0 + kappa)
            v_a_lo = head_lo / mass_a ** (1.0 - kappa)
            v_b_hi = (f_hi.sum() - head_hi) / mass_b ** (1.0 + kappa)
            v_b_lo = (f_lo.sum() - head_lo) / mass_b ** (1.0 - kappa)
            s_a = -(v_a_hi - v_a_lo) / (2.0 * kappa)
            s_b = -(v_b_hi - v_b_lo) / (2.0 * kappa)
            co_a = (v_a_hi + v_a_lo) / 2.0
            co_b = (v_b_hi + v_b_lo) / 2.0
            objective = s_a * co_b + s_b * co_a

    objective = np.where(feasible, objective, -np.inf)
    return objective


def optimize_threshold(h: Histogram, f: EntropyFunctional) -> ThresholdResult:
    """Exhaustive argmax of total_entropy over t in [0, 254].

    Ties break toward the smallest t. Raises InfeasibleHistogramError when the
    histogram has fewer than two occupied tones, since every split would leave
    one class empty.
    """
    if f.kind not in (SHANNON, TSALLIS, KANIADAKIS):
        raise ValueError(f"unknown entropy kind {f.kind!r}")
    if int(np.count_nonzero(h.counts)) < 2:
        raise InfeasibleHistogramError(
            "histogram needs at least two occupied tones to threshold"
        )
    objective = _objective_profile(h, f)
    t_star = int(np.argmax(objective))  # first occurrence: smallest t wins ties

    parts = split(h, t_star)
    assert parts is not None
    a, b = parts
    if f.kind == SHANNON:
        s_a = shannon_entropy(a.dist)
        s_b = shannon_entropy(b.dist)
        total = s_a + s_b
    elif f.kind == TSALLIS:
        s_a = tsallis_entropy(a.dist, f.index)
        s_b = tsallis_entropy(b.dist, f.index)
        total = tsallis_compose(s_a, s_b, f.index)
    else:
        s_a = kaniadakis_entropy(a.dist, f.index)
        s_b = kaniadakis_entropy(b.dist, f.index)
        total = kaniadakis_compose(
            s_a, coentropy(a.dist, f.index), s_b, coentropy(b.dist, f.index)
        )
    return ThresholdResult(t_star, total, s_a, s_b)


def binarize(img: GrayImage, t: int) -> BiLevelImage:
    """Pixels strictly above t become white; pixels at or below become black."""
    t = _check_threshold(t)
    return BiLevelImage(img.width, img.height, img.pixels > t)


def edge_pixel_count(img: BiLevelImage, connectivity: int = 4) -> int:
    """Number of pixels with at least one opposite-valued neighbor.

    Neighbors outside the image are ignored; connectivity is 4 (edge-sharing)
    or 8 (adds diagonals).
    """
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity!r}")
    px = img.pixels
    edge = np.zeros(px.shape, dtype=bool)
    horiz = px[:, 1:] != px[:, :-1]
    edge[:, 1:] |= horiz
    edge[:, :-1] |= horiz
    vert = px[1:, :] != px[:-1, :]
    edge[1:, :] |= vert
    edge[:-1, :] |= vert
    if connectivity == 8:
        diag = px[1:, 1:] != px[:-1, :-1]
        edge[1:, 1:] |= diag
        edge[:-1, :-1] |= diag
        anti = px[1:, :-1] != px[:-1, 1:]
        edge[1:, :-1] |= anti
        edge[:-1, 1:] |= anti
    return int(edge.sum())
