"""Tonal analysis of chroma vectors in a weighted interval space.

12-bin chroma vectors are mapped to six complex interval coefficients (a
weighted DFT of the L1-normalized chroma) on which the library computes
harmonic qualities (chromaticity, diatonicity, whole-toneness), intervallic
dissonance, energy-weighted mixing, Euclidean/cosine distances, framewise
harmonic-change detection, and 24-key estimation.  ``tonalspace.cli``
provides a batch command-line front end over chroma CSV/JSON files and a
minimal built-in WAV extractor.
"""

from .chroma import (
    ChromaSequence,
    extract_chroma_wav,
    global_chroma,
    load_chroma_csv,
    load_chroma_json,
    save_chroma_csv,
    save_chroma_json,
    window_average,
)
from .core import (
    DEFAULT_WEIGHTS,
    PHASE_EPS,
    PhaseVector,
    Tiv,
    as_chroma,
    as_weights,
    combine,
    mag,
    phases,
    scale,
    tiv_from_chroma,
    transpose,
)
from .descriptors import (
    HARTE_COEFFS,
    HarmonicChangeSeries,
    chromaticity,
    cosine_distance,
    cosine_similarity,
    diatonicity,
    dissonance,
    euclid,
    harmonic_change,
    wholetoneness,
)
from .errors import (
    ChromaError,
    DegenerateInputError,
    InsufficientInputError,
    TonalSpaceError,
    WeightMismatchError,
)
from .key import (
    PITCH_CLASS_NAMES,
    KeyProfileSet,
    KeyResult,
    build_profile_set,
    estimate_key,
)

__version__ = "0.1.0"

__all__ = [
    "ChromaSequence",
    "extract_chroma_wav",
    "global_chroma",
    "load_chroma_csv",
    "load_chroma_json",
    "save_chroma_csv",
    "save_chroma_json",
    "window_average",
    "DEFAULT_WEIGHTS",
    "PHASE_EPS",
    "PhaseVector",
    "Tiv",
    "as_chroma",
    "as_weights",
    "combine",
    "mag",
    "phases",
    "scale",
    "tiv_from_chroma",
    "transpose",
    "HARTE_COEFFS",
    "HarmonicChangeSeries",
    "chromaticity",
    "cosine_distance",
    "cosine_similarity",
    "diatonicity",
    "dissonance",
    "euclid",
    "harmonic_change",
    "wholetoneness",
    "ChromaError",
    "DegenerateInputError",
    "InsufficientInputError",
    "TonalSpaceError",
    "WeightMismatchError",
    "PITCH_CLASS_NAMES",
    "KeyProfileSet",
    "KeyResult",
    "build_profile_set",
    "estimate_key",
    "__version__",
]
