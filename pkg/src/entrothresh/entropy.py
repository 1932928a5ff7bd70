"""Entropy kernel: deformed logarithms, Shannon/Tsallis/Kaniadakis entropies of
discrete distributions, their composition laws, and exact log-multiplicity.

All functionals skip zero-probability entries, so padding a distribution with
empty outcomes never changes any value. Everything here is pure and operates
on immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SHANNON = "shannon"
TSALLIS = "tsallis"
KANIADAKIS = "kaniadakis"

ENTROPY_KINDS = (SHANNON, TSALLIS, KANIADAKIS)

# Inputs outside this tolerance are rejected rather than renormalized, so
# histogram bugs surface early.
PROB_SUM_TOLERANCE = 1e-9


def check_tsallis_index(q: float) -> float:
    q = float(q)
    if not math.isfinite(q) or q <= 0.0 or q == 1.0:
        raise ValueError(f"Tsallis index must satisfy q > 0 and q != 1, got {q!r}")
    return q


def check_kaniadakis_index(kappa: float) -> float:
    kappa = float(kappa)
    if not math.isfinite(kappa) or not 0.0 < abs(kappa) < 1.0:
        raise ValueError(f"Kaniadakis index must satisfy 0 < |kappa| < 1, got {kappa!r}")
    return kappa


@dataclass(frozen=True, eq=False)
class Distribution:
    """Finite discrete probability distribution. Zero entries are allowed."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty one-dimensional sequence")
        if np.any(probs < 0.0) or not np.all(np.isfinite(probs)):
            raise ValueError("probabilities must be finite and non-negative")
        total = float(probs.sum())
        if abs(total - 1.0) > PROB_SUM_TOLERANCE:
            raise ValueError(
                f"probabilities sum to {total!r}, not 1 within {PROB_SUM_TOLERANCE}"
            )
        probs = probs.copy()
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def positive(self) -> np.ndarray:
        """The non-zero entries, the only ones any entropy functional sees."""
        return self.probs[self.probs > 0.0]


@dataclass(frozen=True)
class EntropyFunctional:
    """Tagged choice of entropy: Shannon, Tsallis(q), or Kaniadakis(kappa).

    The index domains are the mathematically valid ones (q > 0, q != 1;
    0 < |kappa| < 1); sweep policies may restrict them further.
    """

    kind: str
    index: float | None = None

    def __post_init__(self) -> None:
        if self.kind == SHANNON:
            if self.index is not None:
                raise ValueError("Shannon entropy takes no index")
        elif self.kind == TSALLIS:
            if self.index is None:
                raise ValueError("Tsallis entropy requires an index q")
            object.__setattr__(self, "index", check_tsallis_index(self.index))
        elif self.kind == KANIADAKIS:
            if self.index is None:
                raise ValueError("Kaniadakis entropy requires an index kappa")
            object.__setattr__(self, "index", check_kaniadakis_index(self.index))
        else:
            raise ValueError(f"unknown entropy kind {self.kind!r}")

    @classmethod
    def shannon(cls) -> "EntropyFunctional":
        return cls(SHANNON)

    @classmethod
    def tsallis(cls, q: float) -> "EntropyFunctional":
        return cls(TSALLIS, float(q))

    @classmethod
    def kaniadakis(cls, kappa: float) -> "EntropyFunctional":
        return cls(KANIADAKIS, float(kappa))


def q_log(x: float, q: float) -> float:
    """Deformed logarithm ln_q(x) = (x^(1-q) - 1) / (1 - q).

    Converges to ln(x) as q -> 1. Defined for x > 0 and any q != 1.
    """
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"q_log requires x > 0, got {x!r}")
    q = float(q)
    if q == 1.0:
        raise ValueError("q_log is undefined at q = 1; use math.log")
    return (x ** (1.0 - q) - 1.0) / (1.0 - q)


def kappa_log(x: float, kappa: float) -> float:
    """Deformed logarithm ln_k(x) = (x^kappa - x^(-kappa)) / (2 kappa).

    Odd under inversion: kappa_log(1/x) == -kappa_log(x).
    """
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"kappa_log requires x > 0, got {x!r}")
    kappa = check_kaniadakis_index(kappa)
    return (x**kappa - x ** (-kappa)) / (2.0 * kappa)


def shannon_entropy(d: Distribution) -> float:
    """-sum p ln p over positive entries."""
    p = d.positive()
    return float(-np.sum(p * np.log(p)))


def tsallis_entropy(d: Distribution, q: float) -> float:
    """(1 - sum p^q) / (q - 1); recovers Shannon entropy as q -> 1."""
    q = check_tsallis_index(q)
    p = d.positive()
    return float((1.0 - np.sum(p**q)) / (q - 1.0))


def kaniadakis_entropy(d: Distribution, kappa: float) -> float:
    """-(1 / 2 kappa) sum (p^(1+kappa) - p^(1-kappa)); even in kappa."""
    kappa = check_kaniadakis_index(kappa)
    p = d.positive()
    return float(
        -(np.sum(p ** (1.0 + kappa)) - np.sum(p ** (1.0 - kappa))) / (2.0 * kappa)
    )


def coentropy(d: Distribution, kappa: float) -> float:
    """Companion functional (1/2) sum (p^(1+kappa) + p^(1-kappa)).

    Enters the Kaniadakis composition law; tends to 1 as kappa -> 0.
    """
    kappa = check_kaniadakis_index(kappa)
    p = d.positive()
    return float(
        (np.sum(p ** (1.0 + kappa)) + np.sum(p ** (1.0 - kappa))) / 2.0
    )


def tsallis_compose(s_a: float, s_b: float, q: float) -> float:
    """Pseudo-additive total of two independent parts: sA + sB + (1-q) sA sB."""
    q = check_tsallis_index(q)
    return s_a + s_b + (1.0 - q) * s_a * s_b


def kaniadakis_compose(s_a: float, co_a: float, s_b: float, co_b: float) -> float:
    """Generalized sum of two independent parts: sA * coB + sB * coA.

    The co-terms are the parts' coentropies; with them this agrees with the
    Kaniadakis entropy of the product distribution.
    """
    return s_a * co_b + s_b * co_a


def log_multiplicity(counts) -> float:
    """Per-element log of the number of rearrangements with the given counts.

    For counts (N_1, ..., N_n) with N = sum N_i this is
    (ln N! - sum ln N_i!) / N, evaluated exactly through log-Gamma without
    ever forming a factorial. Converges to the Shannon entropy of the
    frequency vector as the counts grow.
    """
    c = np.asarray(counts)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("counts must be a non-empty one-dimensional sequence")
    if c.dtype.kind not in "iu":
        raise ValueError("counts must be integers")
    if np.any(c < 0):
        raise ValueError("counts must be non-negative")
    n = int(c.sum())
    if n == 0:
        raise ValueError("at least one count must be positive")
    log_w = math.lgamma(n + 1) - sum(math.lgamma(int(k) + 1) for k in c if k > 0)
    return log_w / n
