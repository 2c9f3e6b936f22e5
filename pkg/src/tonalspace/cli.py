"""Batch command-line front end.

Subcommands compose the library into file-in/file-out pipelines:

  analyze         chroma (CSV/JSON) or WAV in -> per-frame descriptor table,
                  harmonic-change curve/peaks, global qualities + key estimate
  key             global key estimate, printed as "<index> <label>"
  combine         energy-weighted mix of the inputs' interval vectors
  distance        Euclidean or cosine distance between two inputs
  extract-chroma  minimal WAV -> chroma extraction to CSV/JSON

Every command is a thin composition of library calls -- no descriptor math
lives here.  Output is deterministic: identical inputs and flags produce
byte-identical bytes (full-precision ``repr`` floats, no timestamps).

Exit codes: 0 success, 1 runtime/validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .chroma import (
    DEFAULT_A4,
    DEFAULT_FMAX,
    DEFAULT_FMIN,
    DEFAULT_HOP_SIZE,
    DEFAULT_WINDOW_SIZE,
    ChromaSequence,
    extract_chroma_wav,
    global_chroma,
    load_chroma_csv,
    load_chroma_json,
    window_average,
)
from .core import DEFAULT_WEIGHTS, as_weights, combine, tiv_from_chroma
from .descriptors import (
    HARTE_COEFFS,
    chromaticity,
    cosine_distance,
    cosine_similarity,
    diatonicity,
    dissonance,
    euclid,
    harmonic_change,
    wholetoneness,
)
from .errors import ChromaError, TonalSpaceError
from .key import BUNDLED_PROFILES, PROFILE_DIR_ENV, build_profile_set, estimate_key

ANALYZE_COLUMNS = (
    "frame",
    "time",
    "chromaticity",
    "diatonicity",
    "wholetoneness",
    "dissonance",
    "lambda",
)


class UsageError(Exception):
    """Bad flags or arguments; maps to exit code 2."""


# ---------------------------------------------------------------- plumbing


def _detect_format(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext == ".csv":
        return "csv"
    if ext == ".json":
        return "json"
    if ext in (".wav", ".wave"):
        return "wav"
    raise UsageError(
        f"cannot infer input format from {path!r}; pass --format csv|json|wav"
    )


def _load_sequence(path: str, fmt: str, args) -> tuple[ChromaSequence, str]:
    if fmt == "auto":
        fmt = _detect_format(path)
    if fmt == "csv":
        return load_chroma_csv(path), fmt
    if fmt == "json":
        return load_chroma_json(path), fmt
    return (
        extract_chroma_wav(
            path, window_size=args.window_size, hop_size=args.hop_size
        ),
        fmt,
    )


def _parse_weights(text):
    if text is None:
        return DEFAULT_WEIGHTS
    parts = text.split(",")
    if len(parts) != 6:
        raise UsageError("--weights takes 6 comma-separated positive numbers")
    try:
        values = [float(part) for part in parts]
    except ValueError:
        raise UsageError(f"--weights: non-numeric entry in {text!r}") from None
    try:
        return as_weights(values)
    except ChromaError as exc:
        raise UsageError(f"--weights: {exc}") from None


def _parse_threshold(text):
    if text == "adaptive":
        return "adaptive"
    try:
        value = float(text)
    except ValueError:
        raise UsageError(
            f"--threshold must be 'adaptive' or a number, got {text!r}"
        ) from None
    if not np.isfinite(value):
        raise UsageError("--threshold must be finite")
    return value


def _resolve_profiles(args, weights):
    """Build the key-profile set, classifying unknown names as usage errors."""
    name = args.profile
    if name not in BUNDLED_PROFILES:
        directory = os.environ.get(PROFILE_DIR_ENV)
        candidate = directory and os.path.join(directory, f"{name}.json")
        if not (candidate and os.path.exists(candidate)):
            raise UsageError(
                f"unknown profile {name!r}; use one of {', '.join(BUNDLED_PROFILES)} "
                f"or provide {name}.json in ${PROFILE_DIR_ENV}"
            )
    if args.alpha is not None and not args.alpha > 0:
        raise UsageError("--alpha must be positive")
    return build_profile_set(name, alpha_override=args.alpha, weights=weights)


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tiv_json(t) -> dict:
    return t.to_dict()


def _chroma_text(seq: ChromaSequence, out_format: str) -> str:
    if out_format == "csv":
        return "".join(
            ",".join(repr(float(v)) for v in frame) + "\n" for frame in seq.frames
        )
    data = {}
    if seq.frame_rate is not None:
        data["frame_rate"] = seq.frame_rate
    data["frames"] = [[float(v) for v in frame] for frame in seq.frames]
    return json.dumps(data, indent=2) + "\n"


# ------------------------------------------------------------- subcommands


def cmd_analyze(args) -> int:
    weights = _parse_weights(args.weights)
    threshold = _parse_threshold(args.threshold)
    profiles = _resolve_profiles(args, weights)
    if args.window_avg < 1:
        raise UsageError("--window-avg must be a positive integer")

    seq, fmt = _load_sequence(args.input, args.format, args)
    seq = window_average(seq, args.window_avg)
    tivs = [tiv_from_chroma(frame, weights) for frame in seq.frames]
    n = len(tivs)

    qualities = {
        "chromaticity": [chromaticity(t) for t in tivs],
        "diatonicity": [diatonicity(t) for t in tivs],
        "wholetoneness": [wholetoneness(t) for t in tivs],
        "dissonance": [dissonance(t) for t in tivs],
    }

    if n >= 3:
        subset = HARTE_COEFFS if args.hchange_coeffs == "harte" else None
        series = harmonic_change(tivs, threshold=threshold, coeffs=subset)
        lam = [float(v) for v in series.values]
        peaks = [int(p) for p in series.peaks]
    else:
        lam = [0.0] * n
        peaks = []

    g_tiv = tiv_from_chroma(global_chroma(seq), weights)
    key_result = None if g_tiv.is_silent else estimate_key(g_tiv, profiles)

    rate = seq.frame_rate
    times = [None if rate is None else i / rate for i in range(n)]
    metadata = {
        "command": "analyze",
        "input": args.input,
        "input_format": fmt,
        "frames": n,
        "frame_rate": rate,
        "window_avg": args.window_avg,
        "weights": [float(w) for w in weights],
        "profile": profiles.name,
        "alpha": profiles.alpha,
        "threshold": threshold,
        "hchange_coeffs": args.hchange_coeffs,
    }

    if args.out_format == "json":
        report = {
            "metadata": metadata,
            "global": {
                "tiv": _tiv_json(g_tiv),
                "chromaticity": chromaticity(g_tiv),
                "diatonicity": diatonicity(g_tiv),
                "wholetoneness": wholetoneness(g_tiv),
                "dissonance": dissonance(g_tiv),
                "key": None if key_result is None else key_result.to_dict(),
            },
            "hchange": {"lambda": lam, "peaks": peaks},
            "frames": [
                {
                    "frame": i,
                    "time": times[i],
                    "chromaticity": qualities["chromaticity"][i],
                    "diatonicity": qualities["diatonicity"][i],
                    "wholetoneness": qualities["wholetoneness"][i],
                    "dissonance": qualities["dissonance"][i],
                    "lambda": lam[i],
                }
                for i in range(n)
            ],
        }
        _emit(json.dumps(report, indent=2) + "\n", args.out)
        return 0

    lines = [f"# {key}: {json.dumps(value)}" for key, value in metadata.items()]
    lines.append(f"# global-tiv: {json.dumps(_tiv_json(g_tiv))}")
    for kind in ("chromaticity", "diatonicity", "wholetoneness", "dissonance"):
        value = {
            "chromaticity": chromaticity,
            "diatonicity": diatonicity,
            "wholetoneness": wholetoneness,
            "dissonance": dissonance,
        }[kind](g_tiv)
        lines.append(f"# global-{kind}: {repr(value)}")
    key_json = None if key_result is None else key_result.to_dict()
    lines.append(f"# key: {json.dumps(key_json)}")
    lines.append(f"# hchange-peaks: {json.dumps(peaks)}")
    lines.append(",".join(ANALYZE_COLUMNS))
    for i in range(n):
        time_cell = "" if times[i] is None else repr(times[i])
        lines.append(
            ",".join(
                [
                    str(i),
                    time_cell,
                    repr(qualities["chromaticity"][i]),
                    repr(qualities["diatonicity"][i]),
                    repr(qualities["wholetoneness"][i]),
                    repr(qualities["dissonance"][i]),
                    repr(lam[i]),
                ]
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_key(args) -> int:
    weights = _parse_weights(args.weights)
    profiles = _resolve_profiles(args, weights)
    seq, _ = _load_sequence(args.input, args.format, args)
    t = tiv_from_chroma(global_chroma(seq), weights)
    result = estimate_key(t, profiles)
    sys.stdout.write(f"{result.index} {result.label}\n")
    return 0


def cmd_combine(args) -> int:
    weights = _parse_weights(args.weights)
    tivs = []
    for path in args.inputs:
        seq, _ = _load_sequence(path, args.format, args)
        tivs.append(tiv_from_chroma(global_chroma(seq), weights))
    mixed = tivs[0] if len(tivs) == 1 else combine(tivs)
    _emit(json.dumps(_tiv_json(mixed), indent=2) + "\n", args.out)
    return 0


def cmd_distance(args) -> int:
    weights = _parse_weights(args.weights)
    tivs = []
    for path in (args.a, args.b):
        seq, _ = _load_sequence(path, args.format, args)
        tivs.append(tiv_from_chroma(global_chroma(seq), weights))
    if args.metric == "euclid":
        value = euclid(*tivs)
    elif args.metric == "cosine":
        value = cosine_distance(*tivs)
    else:
        value = cosine_similarity(*tivs)
    sys.stdout.write(repr(float(value)) + "\n")
    return 0


def cmd_extract_chroma(args) -> int:
    seq = extract_chroma_wav(
        args.input,
        window_size=args.window_size,
        hop_size=args.hop_size,
        fmin=args.fmin,
        fmax=args.fmax,
        ref_a4=args.a4,
    )
    _emit(_chroma_text(seq, args.out_format), args.out)
    return 0


# ------------------------------------------------------------------ parser


def _add_input_options(sp, *, out_format_default=None) -> None:
    sp.add_argument(
        "--format",
        choices=("auto", "csv", "json", "wav"),
        default="auto",
        help="input format (default: by file extension)",
    )
    sp.add_argument(
        "--weights",
        default=None,
        metavar="W1,...,W6",
        help="override the 6 interval weights (default 3,8,11.5,15,14.5,7.5)",
    )
    sp.add_argument(
        "--window-size",
        type=int,
        default=DEFAULT_WINDOW_SIZE,
        help="STFT window for WAV input (power of two)",
    )
    sp.add_argument(
        "--hop-size", type=int, default=DEFAULT_HOP_SIZE, help="STFT hop for WAV input"
    )
    if out_format_default:
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument(
            "--out-format",
            choices=("csv", "json"),
            default=out_format_default,
            help=f"output format (default: {out_format_default})",
        )


def _add_profile_options(sp) -> None:
    sp.add_argument(
        "--profile",
        default="temperley",
        help="key profile set: temperley, shaath, or a name resolved via "
        f"${PROFILE_DIR_ENV} (default: temperley)",
    )
    sp.add_argument(
        "--alpha",
        type=float,
        default=None,
        help="override the profile set's minor-mode bias",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tonalspace",
        description="Tonal analysis of chroma sequences in a weighted interval space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", help="per-frame qualities, harmonic change, global key"
    )
    analyze.add_argument("input")
    analyze.add_argument(
        "--window-avg",
        type=int,
        default=1,
        metavar="N",
        help="average N consecutive chroma frames before analysis",
    )
    _add_profile_options(analyze)
    analyze.add_argument(
        "--threshold",
        default="adaptive",
        help="harmonic-change peak threshold: 'adaptive' (mean+std) or a number",
    )
    analyze.add_argument(
        "--hchange-coeffs",
        choices=("all", "harte"),
        default="all",
        help="coefficients for harmonic change: all six, or the 3/4/5 subset",
    )
    _add_input_options(analyze, out_format_default="csv")
    analyze.set_defaults(func=cmd_analyze)

    key = sub.add_parser("key", help="estimate the global key; prints '<index> <label>'")
    key.add_argument("input")
    _add_profile_options(key)
    _add_input_options(key)
    key.set_defaults(func=cmd_key)

    comb = sub.add_parser(
        "combine", help="energy-weighted mix of the inputs' interval vectors"
    )
    comb.add_argument("inputs", nargs="+")
    _add_input_options(comb)
    comb.add_argument("--out", default=None, help="output file (default: stdout)")
    comb.set_defaults(func=cmd_combine)

    dist = sub.add_parser("distance", help="distance between two inputs")
    dist.add_argument("a")
    dist.add_argument("b")
    dist.add_argument(
        "--metric",
        choices=("euclid", "cosine", "cosine-sim"),
        default="euclid",
        help="euclid, cosine (distance, 1 - similarity), or cosine-sim",
    )
    _add_input_options(dist)
    dist.set_defaults(func=cmd_distance)

    extract = sub.add_parser("extract-chroma", help="WAV -> chroma CSV/JSON")
    extract.add_argument("input")
    extract.add_argument(
        "--window-size",
        type=int,
        default=DEFAULT_WINDOW_SIZE,
        help="STFT window (power of two)",
    )
    extract.add_argument("--hop-size", type=int, default=DEFAULT_HOP_SIZE)
    extract.add_argument("--fmin", type=float, default=DEFAULT_FMIN)
    extract.add_argument("--fmax", type=float, default=DEFAULT_FMAX)
    extract.add_argument("--a4", type=float, default=DEFAULT_A4)
    extract.add_argument("--out", default=None, help="output file (default: stdout)")
    extract.add_argument("--out-format", choices=("csv", "json"), default="csv")
    extract.set_defaults(func=cmd_extract_chroma)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if isinstance(code, int):
            return code
        return 0 if code is None else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tonalspace: error: {exc}", file=sys.stderr)
        return 2
    except TonalSpaceError as exc:
        print(f"tonalspace: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"tonalspace: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
