"""Chroma-to-interval-vector transform and its algebra.

A 12-bin chroma vector is mapped to the six complex coefficients k = 1..6
of the DFT of the L1-normalised chroma, each coefficient scaled by a
perceptual interval weight (coefficients 7..11 are conjugate-symmetric and
carry no extra information).  Magnitudes describe interval content and are
transposition-invariant; phases identify which transposition is at hand.
The discarded DC numerator (the raw chroma sum) is kept as ``energy`` so
vectors can later be mixed in proportion to their loudness.

All values are immutable after construction and all operations are pure,
so they can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ChromaError, DegenerateInputError, WeightMismatchError

N_BINS = 12
N_COEFFS = 6

# Interval weights for audio, one per coefficient k = 1..6, derived from
# empirical dyad-consonance ratings.
DEFAULT_WEIGHTS = np.array([3.0, 8.0, 11.5, 15.0, 14.5, 7.5])
DEFAULT_WEIGHTS.flags.writeable = False

# Coefficient magnitudes below this carry no usable phase information.
PHASE_EPS = 1e-10


def as_chroma(bins) -> np.ndarray:
    """Validate and return a chroma vector as a float array of shape (12,).

    Bin n holds the nonnegative energy of pitch class n, with n = 0 for C
    and ascending in semitones.
    """
    arr = np.asarray(bins, dtype=float)
    if arr.shape != (N_BINS,):
        raise ChromaError(
            f"chroma must have exactly {N_BINS} bins, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ChromaError("chroma bins must be finite (no NaN or infinity)")
    if np.any(arr < 0):
        raise ChromaError("chroma bins must be nonnegative")
    return arr


def as_weights(weights) -> np.ndarray:
    """Validate and return an interval weight vector of shape (6,)."""
    arr = np.asarray(weights, dtype=float)
    if arr.shape != (N_COEFFS,):
        raise ChromaError(
            f"weights must have exactly {N_COEFFS} entries, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ChromaError("weights must be finite and strictly positive")
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class Tiv:
    """Tonal interval vector: six complex coefficients plus source energy.

    ``coeffs[k-1]`` is the weighted DFT coefficient for k = 1..6; ``energy``
    is the sum of the source chroma bins.  ``energy == 0`` marks silence, in
    which case all coefficients are exactly zero.
    """

    coeffs: np.ndarray
    energy: float
    weights: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (N_COEFFS,):
            raise ChromaError(f"coeffs must have shape ({N_COEFFS},)")
        if not (np.all(np.isfinite(coeffs.real)) and np.all(np.isfinite(coeffs.imag))):
            raise ChromaError("coeffs must be finite")
        if not np.isfinite(self.energy) or self.energy < 0:
            raise ChromaError("energy must be finite and nonnegative")
        object.__setattr__(self, "coeffs", _frozen(coeffs))
        object.__setattr__(self, "energy", float(self.energy))
        object.__setattr__(self, "weights", _frozen(as_weights(self.weights)))

    @property
    def is_silent(self) -> bool:
        return self.energy == 0.0

    def to_dict(self) -> dict:
        """JSON-ready form: {"coeffs": [[re, im] x 6], "energy": number}."""
        return {
            "coeffs": [[z.real, z.imag] for z in self.coeffs],
            "energy": self.energy,
        }

    @classmethod
    def from_dict(cls, data: dict, weights=DEFAULT_WEIGHTS) -> "Tiv":
        pairs = data["coeffs"]
        if len(pairs) != N_COEFFS:
            raise ChromaError(f"coeffs must have {N_COEFFS} entries")
        coeffs = np.array([complex(re, im) for re, im in pairs])
        return cls(coeffs=coeffs, energy=float(data["energy"]), weights=weights)


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """Per-coefficient phase in radians, (-pi, pi], with a validity flag.

    Entries whose source coefficient magnitude is below ``PHASE_EPS`` are
    flagged invalid and zeroed: the angle of numerical noise is meaningless.
    """

    values: np.ndarray
    valid: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(np.asarray(self.values, dtype=float)))
        object.__setattr__(self, "valid", _frozen(np.asarray(self.valid, dtype=bool)))


def tiv_from_chroma(chroma, weights=DEFAULT_WEIGHTS) -> Tiv:
    """Build a tonal interval vector from a 12-bin chroma vector.

    The chroma is L1-normalised, its DFT coefficients k = 1..6 are taken
    and scaled by ``weights``.  An all-zero chroma yields the zero vector
    with energy 0 (silence convention) so framewise pipelines stay total
    over real audio.
    """
    c = as_chroma(chroma)
    w = as_weights(weights)
    energy = float(c.sum())
    if energy == 0.0:
        coeffs = np.zeros(N_COEFFS, dtype=complex)
    else:
        spectrum = np.fft.fft(c / energy)
        coeffs = w * spectrum[1 : N_COEFFS + 1]
    return Tiv(coeffs=coeffs, energy=energy, weights=w)


def mag(t: Tiv) -> np.ndarray:
    """Coefficient magnitudes; invariant under transposition and inversion
    of the source chroma."""
    return np.abs(t.coeffs)


def phases(t: Tiv) -> PhaseVector:
    """Coefficient phases; entries with magnitude below ``PHASE_EPS`` are
    flagged invalid."""
    magnitude = np.abs(t.coeffs)
    valid = magnitude >= PHASE_EPS
    values = np.where(valid, np.angle(t.coeffs), 0.0)
    return PhaseVector(values=values, valid=valid)


def _require_same_weights(a: Tiv, b: Tiv) -> None:
    if not np.array_equal(a.weights, b.weights):
        raise WeightMismatchError("operands use different interval weight vectors")


def combine(tivs) -> Tiv:
    """Mix two or more vectors, each weighted by its energy.

    Equivalent to building one vector from the summed raw chromas, computed
    directly in coefficient space.  The result's energy is the sum of the
    operand energies.
    """
    ts = list(tivs)
    if len(ts) < 2:
        raise DegenerateInputError("combine needs at least two operands")
    for t in ts[1:]:
        _require_same_weights(ts[0], t)
    energies = np.array([t.energy for t in ts])
    total = float(energies.sum())
    if total == 0.0:
        raise DegenerateInputError("cannot combine: all operands are silent")
    coeffs = np.zeros(N_COEFFS, dtype=complex)
    for t, a in zip(ts, energies):
        coeffs += t.coeffs * a
    return Tiv(coeffs=coeffs / total, energy=total, weights=ts[0].weights)


def transpose(t: Tiv, semitones: int) -> Tiv:
    """Transpose by an integer number of semitones (reduced mod 12).

    Rotates each coefficient k by -2*pi*k*p/12; exactly equivalent to
    building the vector from the circularly rotated chroma.  Energy and
    magnitudes are unchanged.
    """
    p = int(semitones) % N_BINS
    if p == 0:
        return t
    k = np.arange(1, N_COEFFS + 1)
    rotation = np.exp(-2j * np.pi * k * p / N_BINS)
    return Tiv(coeffs=t.coeffs * rotation, energy=t.energy, weights=t.weights)


def scale(t: Tiv, factor: float) -> Tiv:
    """Multiply all six coefficients by a real scalar; energy is unchanged."""
    return Tiv(coeffs=t.coeffs * float(factor), energy=t.energy, weights=t.weights)
