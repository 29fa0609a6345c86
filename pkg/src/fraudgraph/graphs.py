"""Identity-pair graphs and the seven match/fraud hypotheses.

A probe identity with ``n_p`` images and a gallery identity with ``n_g``
images form a complete weighted graph: vertices are images, edge weights
are matcher scores in [0, 1]. Edges split into three partitions: the
probe-internal edges, the gallery-internal edges, and the cross edges
between the two identities. The total edge count is
``n_p*(n_p-1)/2 + n_g*(n_g-1)/2 + n_p*n_g``.

The classifier distinguishes seven ground-truth hypotheses:

======  =================  ====================================================
 value   name               match-edge structure
======  =================  ====================================================
 1       no fraud           both identities internally complete, no cross links
 2       multi-ID           everything matches (the two IDs are one person)
 3       probe mismatch     a probe subset S is coherent, rest disconnected
 4       probe mixed-ID     probe splits into S plus a part fused with gallery
 5       gallery mismatch   mirror of 3
 6       gallery mixed-ID   mirror of 4
 7       crossed ID         two disjoint linkages straddling the identities
======  =================  ====================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import CompletenessError, ContractError, DomainError


class Hypothesis(IntEnum):
    NO_FRAUD = 1
    MULTI_ID = 2
    PROBE_MISMATCH = 3
    PROBE_MIXED_ID = 4
    GALLERY_MISMATCH = 5
    GALLERY_MIXED_ID = 6
    CROSSED_ID = 7


ALL_HYPOTHESES = tuple(Hypothesis)


def total_edge_count(n_probe: int, n_gallery: int) -> int:
    """Number of edges in the complete graph on a (n_probe, n_gallery) pair."""
    if n_probe < 1 or n_gallery < 1:
        raise DomainError("identity sizes must be >= 1")
    return n_probe * (n_probe - 1) // 2 + n_gallery * (n_gallery - 1) // 2 + n_probe * n_gallery


def condensed_size(n: int) -> int:
    return n * (n - 1) // 2


def condensed_to_matrix(condensed: np.ndarray, n: int) -> np.ndarray:
    """Expand a condensed upper-triangular vector to a symmetric matrix (zero diagonal)."""
    out = np.zeros((n, n), dtype=np.float64)
    iu, ju = np.triu_indices(n, k=1)
    out[iu, ju] = condensed
    out[ju, iu] = condensed
    return out


def matrix_to_condensed(matrix: np.ndarray) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.float64)
    iu, ju = np.triu_indices(m.shape[0], k=1)
    return m[iu, ju]


def _check_scores(arr: np.ndarray, what: str) -> None:
    if arr.size and (np.any(arr < 0.0) or np.any(arr > 1.0) or not np.all(np.isfinite(arr))):
        raise DomainError(f"{what} scores must lie in [0, 1]")


@dataclass(frozen=True)
class IdPairGraph:
    """One probe identity plus one gallery identity with all pairwise scores.

    ``probe_scores`` and ``gallery_scores`` hold the internal edges in
    condensed upper-triangular order (row-major over pairs i < j);
    ``cross_scores`` is the full (n_probe, n_gallery) matrix. Image order
    is preserved as given but never affects likelihoods.
    """

    probe_images: tuple
    gallery_images: tuple
    probe_scores: np.ndarray
    gallery_scores: np.ndarray
    cross_scores: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probe_images", tuple(self.probe_images))
        object.__setattr__(self, "gallery_images", tuple(self.gallery_images))
        n_p, n_g = len(self.probe_images), len(self.gallery_images)
        if n_p < 1 or n_g < 1:
            raise DomainError("both identities must contain at least one image")
        ps = np.ascontiguousarray(self.probe_scores, dtype=np.float64).ravel()
        gs = np.ascontiguousarray(self.gallery_scores, dtype=np.float64).ravel()
        xs = np.ascontiguousarray(self.cross_scores, dtype=np.float64)
        if ps.size != condensed_size(n_p):
            raise DomainError(f"probe_scores must have {condensed_size(n_p)} entries")
        if gs.size != condensed_size(n_g):
            raise DomainError(f"gallery_scores must have {condensed_size(n_g)} entries")
        if xs.shape != (n_p, n_g):
            raise DomainError(f"cross_scores must have shape ({n_p}, {n_g})")
        for arr, what in ((ps, "probe"), (gs, "gallery"), (xs, "cross")):
            _check_scores(arr, what)
        for arr in (ps, gs, xs):
            arr.flags.writeable = False
        object.__setattr__(self, "probe_scores", ps)
        object.__setattr__(self, "gallery_scores", gs)
        object.__setattr__(self, "cross_scores", xs)

    @property
    def n_probe(self) -> int:
        return len(self.probe_images)

    @property
    def n_gallery(self) -> int:
        return len(self.gallery_images)

    @property
    def edge_count(self) -> int:
        return total_edge_count(self.n_probe, self.n_gallery)

    def probe_matrix(self) -> np.ndarray:
        return condensed_to_matrix(self.probe_scores, self.n_probe)

    def gallery_matrix(self) -> np.ndarray:
        return condensed_to_matrix(self.gallery_scores, self.n_gallery)

    def swapped(self) -> "IdPairGraph":
        """The same pair with probe and gallery roles exchanged."""
        return IdPairGraph(
            probe_images=self.gallery_images,
            gallery_images=self.probe_images,
            probe_scores=self.gallery_scores,
            gallery_scores=self.probe_scores,
            cross_scores=self.cross_scores.T,
        )

    def permuted(self, probe_order=None, gallery_order=None) -> "IdPairGraph":
        """Reorder images within either identity (a pure relabeling)."""
        p = np.arange(self.n_probe) if probe_order is None else np.asarray(probe_order)
        g = np.arange(self.n_gallery) if gallery_order is None else np.asarray(gallery_order)
        pm = self.probe_matrix()[np.ix_(p, p)]
        gm = self.gallery_matrix()[np.ix_(g, g)]
        return IdPairGraph(
            probe_images=tuple(self.probe_images[i] for i in p),
            gallery_images=tuple(self.gallery_images[j] for j in g),
            probe_scores=matrix_to_condensed(pm),
            gallery_scores=matrix_to_condensed(gm),
            cross_scores=self.cross_scores[np.ix_(p, g)],
        )

    @classmethod
    def from_matrices(cls, probe_matrix, gallery_matrix, cross_scores,
                      probe_images=None, gallery_images=None) -> "IdPairGraph":
        pm = np.asarray(probe_matrix, dtype=np.float64)
        gm = np.asarray(gallery_matrix, dtype=np.float64)
        xs = np.asarray(cross_scores, dtype=np.float64)
        n_p, n_g = pm.shape[0], gm.shape[0]
        return cls(
            probe_images=tuple(probe_images) if probe_images else tuple(f"p{i}" for i in range(n_p)),
            gallery_images=tuple(gallery_images) if gallery_images else tuple(f"g{j}" for j in range(n_g)),
            probe_scores=matrix_to_condensed(pm),
            gallery_scores=matrix_to_condensed(gm),
            cross_scores=xs,
        )


def build_pair_graph(probe_images, gallery_images, score_of) -> IdPairGraph:
    """Assemble an :class:`IdPairGraph` from a pairwise score source.

    ``score_of(a, b)`` must return the matcher score for any required image
    pair; a KeyError marks the pair as missing. All missing pairs are
    collected and reported together.
    """
    probe_images = tuple(probe_images)
    gallery_images = tuple(gallery_images)
    missing: list[tuple[str, str]] = []

    def fetch(a, b):
        try:
            return score_of(a, b)
        except KeyError:
            missing.append((a, b))
            return 0.0

    n_p, n_g = len(probe_images), len(gallery_images)
    iu, ju = np.triu_indices(n_p, k=1)
    ps = np.array([fetch(probe_images[i], probe_images[j]) for i, j in zip(iu, ju)])
    iu, ju = np.triu_indices(n_g, k=1)
    gs = np.array([fetch(gallery_images[i], gallery_images[j]) for i, j in zip(iu, ju)])
    xs = np.array([[fetch(a, b) for b in gallery_images] for a in probe_images])
    if missing:
        raise CompletenessError(missing)
    return IdPairGraph(
        probe_images=probe_images,
        gallery_images=gallery_images,
        probe_scores=ps.reshape(condensed_size(n_p)),
        gallery_scores=gs.reshape(condensed_size(n_g)),
        cross_scores=xs.reshape(n_p, n_g),
    )


@dataclass(frozen=True)
class EdgeSet:
    """Boolean membership over the three edge partitions of a pair graph."""

    probe: np.ndarray
    gallery: np.ndarray
    cross: np.ndarray

    def count(self) -> int:
        return int(self.probe.sum() + self.gallery.sum() + self.cross.sum())

    def complement(self) -> "EdgeSet":
        return EdgeSet(~self.probe, ~self.gallery, ~self.cross)

    def equals(self, other: "EdgeSet") -> bool:
        return (
            np.array_equal(self.probe, other.probe)
            and np.array_equal(self.gallery, other.gallery)
            and np.array_equal(self.cross, other.cross)
        )


def _indicator(n: int, subset, side: str) -> np.ndarray:
    ind = np.zeros(n, dtype=bool)
    idx = np.asarray(list(subset), dtype=int)
    if idx.size == 0:
        raise ContractError(f"{side} subset must be non-empty")
    if np.any(idx < 0) or np.any(idx >= n) or np.unique(idx).size != idx.size:
        raise ContractError(f"{side} subset must be distinct vertex indices in [0, {n})")
    ind[idx] = True
    if ind.all():
        raise ContractError(f"{side} subset must be a proper subset")
    return ind


def _within(ind: np.ndarray) -> np.ndarray:
    iu, ju = np.triu_indices(ind.size, k=1)
    return ind[iu] & ind[ju]


def term_match_edges(
    h: Hypothesis | int,
    n_probe: int,
    n_gallery: int,
    probe_subset=None,
    gallery_subset=None,
) -> EdgeSet:
    """Match-edge set of one likelihood term under hypothesis ``h``.

    ``probe_subset`` / ``gallery_subset`` are the summation subsets S of the
    per-hypothesis formulas: required for h in {3, 4} (probe side),
    {5, 6} (gallery side) and 7 (both); forbidden for h in {1, 2}. Each must
    be a proper non-empty subset of the corresponding vertex index range.

    The complement of the returned set within the full edge set is the
    non-match side of the term.
    """
    h = Hypothesis(h)
    n_pp, n_gg = condensed_size(n_probe), condensed_size(n_gallery)
    need_probe = h in (Hypothesis.PROBE_MISMATCH, Hypothesis.PROBE_MIXED_ID, Hypothesis.CROSSED_ID)
    need_gallery = h in (Hypothesis.GALLERY_MISMATCH, Hypothesis.GALLERY_MIXED_ID, Hypothesis.CROSSED_ID)
    if (probe_subset is not None) != need_probe or (gallery_subset is not None) != need_gallery:
        raise ContractError(f"hypothesis {int(h)} takes "
                            f"{'a probe subset' if need_probe else 'no probe subset'} and "
                            f"{'a gallery subset' if need_gallery else 'no gallery subset'}")

    probe = np.zeros(n_pp, dtype=bool)
    gallery = np.zeros(n_gg, dtype=bool)
    cross = np.zeros((n_probe, n_gallery), dtype=bool)

    if h is Hypothesis.NO_FRAUD:
        probe[:] = True
        gallery[:] = True
    elif h is Hypothesis.MULTI_ID:
        probe[:] = True
        gallery[:] = True
        cross[:] = True
    elif h is Hypothesis.PROBE_MISMATCH:
        s = _indicator(n_probe, probe_subset, "probe")
        probe = _within(s)
        gallery[:] = True
    elif h is Hypothesis.PROBE_MIXED_ID:
        s = _indicator(n_probe, probe_subset, "probe")
        probe = _within(s) | _within(~s)
        gallery[:] = True
        cross[~s, :] = True
    elif h is Hypothesis.GALLERY_MISMATCH:
        s = _indicator(n_gallery, gallery_subset, "gallery")
        gallery = _within(s)
        probe[:] = True
    elif h is Hypothesis.GALLERY_MIXED_ID:
        s = _indicator(n_gallery, gallery_subset, "gallery")
        gallery = _within(s) | _within(~s)
        probe[:] = True
        cross[:, ~s] = True
    else:  # CROSSED_ID
        s1 = _indicator(n_probe, probe_subset, "probe")
        s2 = _indicator(n_gallery, gallery_subset, "gallery")
        probe = _within(s1) | _within(~s1)
        gallery = _within(s2) | _within(~s2)
        # two disjoint linkages: S1 with V2\S2, and V1\S1 with S2
        cross = np.outer(s1, ~s2) | np.outer(~s1, s2)
    return EdgeSet(probe=probe, gallery=gallery, cross=cross)
