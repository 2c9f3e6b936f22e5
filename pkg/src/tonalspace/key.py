"""24-key estimation by nearest reference vector in interval space.

Reference vectors are the interval vectors of the 12 rotations of a major
and a minor key profile.  Distances to the minor references are measured
after scaling the query by the profile set's ``alpha`` bias, which balances
the systematically different geometry of the major and minor templates.
The winning index r encodes tonic and mode: 0..11 are C..B major, 12..23
are C..B minor.

Profile tables ship as JSON data files (``profiles/``) rather than inline
constants so their provenance stays auditable; ``TONALSPACE_PROFILE_DIR``
points the loader at an alternative directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .core import DEFAULT_WEIGHTS, Tiv, _frozen, as_chroma, scale, tiv_from_chroma
from .descriptors import euclid
from .errors import ChromaError, DegenerateInputError, WeightMismatchError

PROFILE_DIR_ENV = "TONALSPACE_PROFILE_DIR"
BUNDLED_PROFILES = ("temperley", "shaath")

PITCH_CLASS_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")


@dataclass(frozen=True, eq=False)
class KeyProfileSet:
    """A named major/minor profile pair, its bias, and the 24 reference
    vectors (index r: 0..11 major rotations, 12..23 minor rotations)."""

    name: str
    major_profile: np.ndarray
    minor_profile: np.ndarray
    alpha: float
    profile_tivs: tuple[Tiv, ...]

    def __post_init__(self):
        object.__setattr__(self, "major_profile", _frozen(self.major_profile))
        object.__setattr__(self, "minor_profile", _frozen(self.minor_profile))


@dataclass(frozen=True, eq=False)
class KeyResult:
    """Winning key index plus the full 24-entry distance vector."""

    index: int
    tonic: int
    mode: str
    distances: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "distances", _frozen(self.distances))

    @property
    def label(self) -> str:
        return f"{PITCH_CLASS_NAMES[self.tonic]} {self.mode}"

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "tonic": self.tonic,
            "mode": self.mode,
            "label": self.label,
        }


def _profile_path(name: str, profile_dir=None) -> str:
    directory = profile_dir or os.environ.get(PROFILE_DIR_ENV)
    if directory:
        candidate = os.path.join(directory, f"{name}.json")
        # the override directory wins when it has the file; bundled names
        # fall back to package data, unknown names must come from the dir
        if os.path.exists(candidate) or name not in BUNDLED_PROFILES:
            return candidate
    return str(resources.files("tonalspace").joinpath("profiles", f"{name}.json"))


def load_profile_file(path) -> dict:
    """Read and validate a profile data file.

    Schema: {"name": str, "major": [12 numbers], "minor": [12 numbers],
    "alpha": positive number}; extra keys (e.g. "source") are ignored.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ChromaError(f"cannot read profile file {path}: {exc}") from exc
    for field in ("name", "major", "minor", "alpha"):
        if field not in data:
            raise ChromaError(f"profile file {path} is missing field {field!r}")
    as_chroma(data["major"])
    as_chroma(data["minor"])
    if not (isinstance(data["alpha"], (int, float)) and data["alpha"] > 0):
        raise ChromaError(f"profile file {path}: alpha must be a positive number")
    return data


def build_profile_set(
    name: str,
    alpha_override=None,
    *,
    major_profile=None,
    minor_profile=None,
    weights=DEFAULT_WEIGHTS,
    profile_dir=None,
) -> KeyProfileSet:
    """Load (or assemble) a key profile set and precompute its 24 vectors.

    ``name`` is one of the bundled sets ("temperley", alpha 0.2;
    "shaath", alpha 0.55), any ``<name>.json`` under ``profile_dir`` /
    ``TONALSPACE_PROFILE_DIR``, or "custom", which requires
    ``major_profile``, ``minor_profile`` and ``alpha_override``.
    """
    if name == "custom":
        if major_profile is None or minor_profile is None or alpha_override is None:
            raise ChromaError(
                "custom profile set requires major_profile, minor_profile and alpha_override"
            )
        major = as_chroma(major_profile)
        minor = as_chroma(minor_profile)
        alpha = float(alpha_override)
    else:
        data = load_profile_file(_profile_path(name, profile_dir))
        major = as_chroma(data["major"])
        minor = as_chroma(data["minor"])
        alpha = float(data["alpha"] if alpha_override is None else alpha_override)
    if not (np.isfinite(alpha) and alpha > 0):
        raise ChromaError("alpha must be a positive finite number")

    tivs = [tiv_from_chroma(np.roll(major, r), weights) for r in range(12)]
    tivs += [tiv_from_chroma(np.roll(minor, r), weights) for r in range(12)]
    return KeyProfileSet(
        name=name,
        major_profile=major,
        minor_profile=minor,
        alpha=alpha,
        profile_tivs=tuple(tivs),
    )


def estimate_key(t: Tiv, profiles: KeyProfileSet) -> KeyResult:
    """Nearest-reference key estimate for one interval vector.

    The query is compared against all 24 references by Euclidean distance;
    for the minor references (index >= 12) the query's coefficients are
    first scaled by ``profiles.alpha``.  Ties break toward the lowest
    index.  The result is scale-invariant in the source chroma, since the
    coefficients themselves are.
    """
    if t.is_silent:
        raise DegenerateInputError("cannot estimate a key for silence")
    if not np.array_equal(t.weights, profiles.profile_tivs[0].weights):
        raise WeightMismatchError(
            "input and profile set use different interval weight vectors"
        )
    biased = scale(t, profiles.alpha)
    distances = np.array(
        [
            euclid(biased if r >= 12 else t, ref)
            for r, ref in enumerate(profiles.profile_tivs)
        ]
    )
    index = int(np.argmin(distances))
    return KeyResult(
        index=index,
        tonic=index % 12,
        mode="major" if index <= 11 else "minor",
        distances=distances,
    )
