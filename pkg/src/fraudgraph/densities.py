"""Histogram densities of matcher scores on [0, 1].

Match and non-match score statistics are modelled as piecewise-constant
probability densities over equal-width bins. The bin count follows a
cube-root rule, ``round(C * N**(1/3) / sigma)`` for ``N`` samples with
sample standard deviation ``sigma``; histograms are preferred over smooth
kernel estimates because matcher score distributions tend to have sharp
spikes that kernels blur away.

A small pseudocount is added to every bin before normalization so the
density is strictly positive and log-densities stay finite on score
regions never seen in training.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, FitError

#: Hard cap on the bin count; protects against near-zero sigma blowing up
#: the cube-root rule.
MAX_BINS = 100_000


def suggested_bin_count(n_samples: int, sigma: float, bin_constant: float) -> int:
    """Bin count from the cube-root rule, clamped to [1, MAX_BINS].

    Degenerate spreads (``sigma <= 0`` or non-finite, as happens for a
    single sample or identical samples) fall back to a single bin.
    """
    if bin_constant <= 0:
        raise DomainError(f"bin_constant must be > 0, got {bin_constant}")
    if n_samples < 1:
        raise DomainError(f"n_samples must be >= 1, got {n_samples}")
    if not np.isfinite(sigma) or sigma <= 0:
        return 1
    b = round(bin_constant * n_samples ** (1.0 / 3.0) / sigma)
    return int(min(max(b, 1), MAX_BINS))


@dataclass(frozen=True)
class HistogramDensity:
    """Piecewise-constant probability density on [0, 1].

    Parameters
    ----------
    edges : ndarray, shape (B+1,)
        Strictly increasing bin boundaries with ``edges[0] == 0`` and
        ``edges[-1] == 1``. Bins are half-open ``[e_b, e_{b+1})`` except the
        last, which is closed so a score of exactly 1.0 is counted.
    density : ndarray, shape (B,)
        Probability density per unit score; strictly positive and
        integrating to 1.
    n_samples : int
        Sample count used at fit time (0 for synthetic densities).
    pseudocount : float
        Pseudocount added per bin at fit time.
    bin_constant : float
        Constant C of the cube-root bin rule used at fit time.
    """

    edges: np.ndarray
    density: np.ndarray
    n_samples: int
    pseudocount: float
    bin_constant: float

    def __post_init__(self):
        edges = np.ascontiguousarray(self.edges, dtype=np.float64)
        density = np.ascontiguousarray(self.density, dtype=np.float64)
        if edges.ndim != 1 or density.ndim != 1 or edges.size != density.size + 1:
            raise DomainError("edges must have exactly one more entry than density")
        if edges[0] != 0.0 or edges[-1] != 1.0:
            raise DomainError("support must be exactly [0, 1]")
        if np.any(np.diff(edges) <= 0):
            raise DomainError("bin edges must be strictly increasing")
        if np.any(density <= 0) or not np.all(np.isfinite(density)):
            raise FitError(
                "density must be strictly positive in every bin; "
                "fit with a pseudocount > 0 to floor empty bins"
            )
        total = float(np.sum(density * np.diff(edges)))
        if abs(total - 1.0) > 1e-12:
            raise DomainError(f"density must integrate to 1, got {total!r}")
        if self.pseudocount < 0:
            raise DomainError("pseudocount must be >= 0")
        edges.flags.writeable = False
        density.flags.writeable = False
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "density", density)

    @property
    def n_bins(self) -> int:
        return self.density.size

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    def bin_masses(self) -> np.ndarray:
        """Probability mass per bin (density times width)."""
        return self.density * self.widths

    def at(self, score):
        """Density at one score or an array of scores.

        Scores must lie in [0, 1]; 1.0 maps into the last (right-closed) bin.
        """
        s = np.asarray(score, dtype=np.float64)
        if np.any(s < 0.0) or np.any(s > 1.0) or not np.all(np.isfinite(s)):
            raise DomainError("scores must lie in [0, 1]")
        idx = np.searchsorted(self.edges, s, side="right") - 1
        idx = np.clip(idx, 0, self.n_bins - 1)
        out = self.density[idx]
        return float(out) if np.ndim(score) == 0 else out

    def log_at(self, score):
        """Natural log of :meth:`at`; always finite by the positivity invariant."""
        return np.log(self.at(score))

    def sample(self, rng: np.random.Generator, size: int | None = None):
        """Draw scores from the histogram.

        Draws a bin with its probability mass, then a uniform point within
        the bin. Deterministic given the generator state.
        """
        idx = rng.choice(self.n_bins, size=size, p=self.bin_masses())
        u = rng.random(size=size)
        out = self.edges[idx] + u * self.widths[idx]
        return float(out) if size is None else out

    def to_dict(self) -> dict:
        return {
            "kind": "histogram",
            "edges": self.edges.tolist(),
            "density": self.density.tolist(),
            "n_samples": int(self.n_samples),
            "pseudocount": float(self.pseudocount),
            "bin_constant": float(self.bin_constant),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HistogramDensity":
        if data.get("kind") != "histogram":
            raise DomainError(f"unsupported density kind {data.get('kind')!r}")
        return cls(
            edges=np.asarray(data["edges"], dtype=np.float64),
            density=np.asarray(data["density"], dtype=np.float64),
            n_samples=int(data["n_samples"]),
            pseudocount=float(data["pseudocount"]),
            bin_constant=float(data["bin_constant"]),
        )


def fit_histogram(
    values,
    *,
    bin_constant: float = 1.0,
    pseudocount: float = 0.5,
) -> HistogramDensity:
    """Fit a histogram density to scores in [0, 1].

    The bin count is ``round(bin_constant * N**(1/3) / sigma)`` with sigma
    the sample standard deviation (N-1 denominator), clamped to
    [1, MAX_BINS]. Bin b gets density
    ``(count_b + pseudocount) / ((N + B * pseudocount) * width_b)``.

    Raises
    ------
    FitError
        If ``values`` is empty, or if ``pseudocount == 0`` leaves a bin with
        zero density.
    DomainError
        If any value lies outside [0, 1] or a parameter is out of range.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size == 0:
        raise FitError("cannot fit a density from an empty sample set")
    if np.any(v < 0.0) or np.any(v > 1.0) or not np.all(np.isfinite(v)):
        raise DomainError("scores must lie in [0, 1]")
    if pseudocount < 0:
        raise DomainError("pseudocount must be >= 0")
    n = v.size
    sigma = float(np.std(v, ddof=1)) if n > 1 else 0.0
    b = suggested_bin_count(n, sigma, bin_constant)
    edges = np.linspace(0.0, 1.0, b + 1)
    counts, _ = np.histogram(v, bins=edges)
    width = 1.0 / b
    density = (counts + pseudocount) / ((n + b * pseudocount) * width)
    return HistogramDensity(
        edges=edges,
        density=density,
        n_samples=n,
        pseudocount=pseudocount,
        bin_constant=bin_constant,
    )


@dataclass(frozen=True)
class DensityPair:
    """The match (p_M) and non-match (p_N) score densities."""

    match: HistogramDensity
    nonmatch: HistogramDensity

    def to_dict(self) -> dict:
        return {"match": self.match.to_dict(), "nonmatch": self.nonmatch.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "DensityPair":
        return cls(
            match=HistogramDensity.from_dict(data["match"]),
            nonmatch=HistogramDensity.from_dict(data["nonmatch"]),
        )

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "DensityPair":
        return cls.from_dict(json.loads(Path(path).read_text()))


def step_density_pair(
    threshold: float = 0.5,
    high_mass: float = 0.95,
    *,
    pseudocount: float = 0.0,
) -> DensityPair:
    """Synthetic two-bin step densities for simulations and tests.

    The match density puts ``high_mass`` above ``threshold`` (and the rest
    below); the non-match density is mirrored. ``high_mass`` close to 1
    gives well-separated score populations, values near 0.5 give heavily
    overlapping ones.
    """
    if not 0.0 < threshold < 1.0:
        raise DomainError("threshold must be strictly inside (0, 1)")
    if not 0.0 < high_mass < 1.0:
        raise DomainError("high_mass must be strictly inside (0, 1)")
    edges = np.array([0.0, threshold, 1.0])

    def _make(mass_low, mass_high):
        density = np.array([mass_low / threshold, mass_high / (1.0 - threshold)])
        return HistogramDensity(
            edges=edges,
            density=density,
            n_samples=0,
            pseudocount=pseudocount,
            bin_constant=1.0,
        )

    return DensityPair(
        match=_make(1.0 - high_mass, high_mass),
        nonmatch=_make(high_mass, 1.0 - high_mass),
    )
