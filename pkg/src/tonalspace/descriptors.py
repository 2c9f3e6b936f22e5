"""Scalar harmonic descriptors and distances over interval vectors.

The single-coefficient qualities (chromaticity, diatonicity,
whole-toneness) normalise one coefficient magnitude to [0, 1]; dissonance
collapses the full weighted magnitude into one indicator.  All four depend
only on magnitudes, so they are invariant under transposition of the
source chroma.  ``harmonic_change`` turns a frame sequence into a novelty
curve whose peaks mark transitions between harmonically stable regions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import N_COEFFS, Tiv, _frozen, _require_same_weights
from .errors import ChromaError, DegenerateInputError, InsufficientInputError

# Coefficient subset matching Harte-style change detection: circles of
# minor thirds (k=3), major thirds (k=4) and fifths (k=5).
HARTE_COEFFS = (3, 4, 5)


def chromaticity(t: Tiv) -> float:
    """Concentration on one region of the chromatic pitch circle, in [0, 1].

    Near 0 for evenly spread sonorities (tonal chords, scales), near 1
    for compact semitone clusters.  Silence reports 0.
    """
    return float(np.abs(t.coeffs[0]) / t.weights[0])


def diatonicity(t: Tiv) -> float:
    """Concentration on one region of the circle of fifths, in [0, 1].
    Silence reports 0."""
    return float(np.abs(t.coeffs[4]) / t.weights[4])


def wholetoneness(t: Tiv) -> float:
    """Proximity to one of the two whole-tone collections, in [0, 1].
    Silence reports 0."""
    return float(np.abs(t.coeffs[5]) / t.weights[5])


def dissonance(t: Tiv) -> float:
    """Intervallic dissonance in [0, 1]: the weighted coefficient norm,
    normalised by the weight norm, subtracted from unity.

    A single pitch class scores 0; the uniform (fully chromatic) profile
    and silence score 1.  The l2 norm is taken over all six complex
    coefficients.
    """
    return float(1.0 - np.linalg.norm(t.coeffs) / np.linalg.norm(t.weights))


def euclid(t1: Tiv, t2: Tiv) -> float:
    """Euclidean distance between two interval vectors.

    Tracks voice-leading proximity: parsimonious moves between pitch
    profiles land close together.
    """
    _require_same_weights(t1, t2)
    return float(np.linalg.norm(t1.coeffs - t2.coeffs))


def cosine_similarity(t1: Tiv, t2: Tiv) -> float:
    """Cosine of the angle between two interval vectors, in [-1, 1].

    Real part of the Hermitian inner product over the six complex
    coefficients divided by the product of norms; identical to the
    12-dimensional real cosine.  Indicates how well two pitch profiles
    fit or mix.  Raises for a zero-norm operand (silence or the uniform
    profile), where the angle is undefined.
    """
    _require_same_weights(t1, t2)
    n1 = np.linalg.norm(t1.coeffs)
    n2 = np.linalg.norm(t2.coeffs)
    if n1 == 0.0 or n2 == 0.0:
        raise DegenerateInputError("cosine is undefined for a zero-norm vector")
    return float(np.real(np.vdot(t1.coeffs, t2.coeffs)) / (n1 * n2))


def cosine_distance(t1: Tiv, t2: Tiv) -> float:
    """1 - cosine_similarity, in [0, 2]."""
    return 1.0 - cosine_similarity(t1, t2)


@dataclass(frozen=True, eq=False)
class HarmonicChangeSeries:
    """Framewise harmonic change values and the picked peak indices.

    ``values`` has one entry per input frame (boundary frames are 0 by
    convention since they lack a neighbour on one side); ``peaks`` holds
    indices of strict local maxima at or above ``threshold``.
    """

    values: np.ndarray
    peaks: np.ndarray
    threshold: float

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(np.asarray(self.values, dtype=float)))
        object.__setattr__(self, "peaks", _frozen(np.asarray(self.peaks, dtype=int)))


def harmonic_change(tivs, threshold="adaptive", coeffs=None) -> HarmonicChangeSeries:
    """Harmonic change curve over a sequence of interval vectors.

    The change value at frame m is the Euclidean distance between frames
    m-1 and m+1, so a single chord change produces one clear maximum
    instead of two.

    Parameters
    ----------
    tivs : sequence of Tiv
        At least three frames, all sharing one weight vector.
    threshold : "adaptive" or float
        Peak floor.  "adaptive" uses mean + 1 std of the curve, which is
        scale-free across chroma sources; a number is used as-is.
    coeffs : iterable of int, optional
        1-based coefficient subset to measure over (e.g. ``HARTE_COEFFS``);
        default uses all six.
    """
    ts = list(tivs)
    if len(ts) < 3:
        raise InsufficientInputError(
            f"harmonic change needs at least 3 frames, got {len(ts)}"
        )
    for t in ts[1:]:
        _require_same_weights(ts[0], t)

    if coeffs is None:
        sel = np.arange(N_COEFFS)
    else:
        sel = np.asarray(sorted(set(int(k) for k in coeffs))) - 1
        if sel.size == 0 or sel.min() < 0 or sel.max() >= N_COEFFS:
            raise ChromaError("coefficient subset must be drawn from 1..6")

    matrix = np.array([t.coeffs for t in ts])[:, sel]
    values = np.zeros(len(ts))
    values[1:-1] = np.sqrt(
        np.sum(np.abs(matrix[2:] - matrix[:-2]) ** 2, axis=1)
    )

    if threshold == "adaptive":
        floor = float(values.mean() + values.std())
    else:
        floor = float(threshold)

    peaks = [
        m
        for m in range(1, len(values) - 1)
        if values[m - 1] < values[m] >= values[m + 1] and values[m] >= floor
    ]
    return HarmonicChangeSeries(
        values=values, peaks=np.array(peaks, dtype=int), threshold=floor
    )
