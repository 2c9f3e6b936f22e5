"""Acceptance suite: eleven end-to-end correctness gates.

Each test prints one ``ACCEPTANCE nn <name>: PASS/FAIL`` line (run with
``pytest tests/test_acceptance.py -s`` to see them as they execute) and
asserts the criterion.

Criterion 04 encodes a stated quality ordering whose scale-versus-triad
clause is mathematically false under this transform (the L1-normalised
seven-note scale spreads its spectrum more than the triad, so its
fifths-coefficient magnitude is lower); it is asserted as stated and is
expected to fail.  The module-level descriptor tests cover the orderings
that actually hold.
"""

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.io import wavfile

from tonalspace import (
    build_profile_set,
    chromaticity,
    combine,
    cosine_similarity,
    diatonicity,
    dissonance,
    estimate_key,
    euclid,
    harmonic_change,
    mag,
    phases,
    tiv_from_chroma,
    transpose,
    wholetoneness,
)

from helpers import (
    CLUSTER,
    MAJOR_SCALE,
    MAJOR_TRIAD,
    WHOLE_TONE,
    binary_chroma,
    oracle_coeffs,
    random_chroma,
)

WEIGHTS = np.array([3.0, 8.0, 11.5, 15.0, 14.5, 7.5])
QUALITIES = (chromaticity, diatonicity, wholetoneness, dissonance)


def report(num, name, ok, detail=""):
    status = "PASS" if ok else (f"FAIL ({detail})" if detail else "FAIL")
    print(f"ACCEPTANCE {num:02d} {name}: {status}", flush=True)
    assert ok, f"criterion {num:02d} {name}: {detail}"


def test_01_dft_oracle_equivalence():
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(1000):
        c = random_chroma(rng)
        got = tiv_from_chroma(c).coeffs
        want = np.array(oracle_coeffs(c))
        worst = max(worst, float(np.max(np.abs(got - want))))
    report(1, "dft-oracle-equivalence", worst <= 1e-9, f"max deviation {worst:.3e}")


def test_02_weight_fidelity():
    t = tiv_from_chroma(binary_chroma([0]))
    exact = np.array_equal(t.coeffs.real, WEIGHTS) and np.array_equal(
        t.coeffs.imag, np.zeros(6)
    )
    quality_ok = (
        abs(chromaticity(t) - 1.0) <= 1e-12
        and abs(diatonicity(t) - 1.0) <= 1e-12
        and abs(wholetoneness(t) - 1.0) <= 1e-12
        and abs(dissonance(t)) <= 1e-12
    )
    report(
        2,
        "weight-fidelity",
        exact and quality_ok,
        f"mags {mag(t)}, exact={exact}, qualities_ok={quality_ok}",
    )


def test_03_transposition_suite():
    rng = np.random.default_rng(103)
    k = np.arange(1, 7)
    ok = True
    detail = ""
    for _ in range(100):
        c = random_chroma(rng)
        t = tiv_from_chroma(c)
        base_mag = mag(t)
        base_phase = phases(t)
        base_q = [q(t) for q in QUALITIES]
        for p in range(12):
            rotated = tiv_from_chroma(np.roll(c, p))
            if np.max(np.abs(mag(rotated) - base_mag)) > 1e-9:
                ok, detail = False, f"magnitude deviates at shift {p}"
                break
            rp = phases(rotated)
            both = base_phase.valid & rp.valid
            delta = (rp.values - (base_phase.values - 2 * np.pi * k * p / 12))[both]
            wrapped = np.mod(delta + np.pi, 2 * np.pi) - np.pi
            if both.any() and np.max(np.abs(wrapped)) > 1e-9:
                ok, detail = False, f"phase law deviates at shift {p}"
                break
            for qual, want in zip(QUALITIES, base_q):
                if abs(qual(rotated) - want) > 1e-9:
                    ok, detail = False, f"{qual.__name__} varies at shift {p}"
                    break
            if not ok:
                break
        if not ok:
            break
    report(3, "transposition-suite", ok, detail)


def test_04_quality_ordering():
    dia_scale = diatonicity(tiv_from_chroma(MAJOR_SCALE))
    dia_triad = diatonicity(tiv_from_chroma(MAJOR_TRIAD))
    dia_cluster = diatonicity(tiv_from_chroma(CLUSTER))
    chr_cluster = chromaticity(tiv_from_chroma(CLUSTER))
    chr_triad = chromaticity(tiv_from_chroma(MAJOR_TRIAD))
    chr_scale = chromaticity(tiv_from_chroma(MAJOR_SCALE))
    clauses = {
        "diatonicity scale>triad": dia_scale > dia_triad + 0.05,
        "diatonicity triad>cluster": dia_triad > dia_cluster + 0.05,
        "chromaticity cluster>triad": chr_cluster > chr_triad + 0.05,
        "chromaticity cluster>scale": chr_cluster > chr_scale + 0.05,
    }
    failed = [name for name, holds in clauses.items() if not holds]
    report(
        4,
        "quality-ordering",
        not failed,
        f"failed: {failed}; diatonicity scale={dia_scale:.6f} "
        f"triad={dia_triad:.6f} cluster={dia_cluster:.6f}; the seven-note "
        f"scale necessarily scores below the triad under L1 normalisation",
    )


def test_05_combine_linearity():
    rng = np.random.default_rng(105)
    worst = 0.0
    for _ in range(200):
        c1, c2 = random_chroma(rng), random_chroma(rng)
        mixed = combine([tiv_from_chroma(c1), tiv_from_chroma(c2)])
        direct = tiv_from_chroma(c1 + c2)
        worst = max(worst, float(np.max(np.abs(mixed.coeffs - direct.coeffs))))
    for _ in range(50):
        cs = [random_chroma(rng) for _ in range(3)]
        mixed = combine([tiv_from_chroma(c) for c in cs])
        direct = tiv_from_chroma(cs[0] + cs[1] + cs[2])
        worst = max(worst, float(np.max(np.abs(mixed.coeffs - direct.coeffs))))
    report(5, "combine-linearity", worst <= 1e-12, f"max deviation {worst:.3e}")


def test_06_whole_tone_forcing():
    t = tiv_from_chroma(WHOLE_TONE)
    wt = wholetoneness(t)
    leak = float(np.max(np.abs(t.coeffs[:5])))
    report(
        6,
        "whole-tone-forcing",
        abs(wt - 1.0) <= 1e-12 and leak <= 1e-12,
        f"wholetoneness {wt}, max |T(1..5)| {leak:.3e}",
    )


def test_07_harmonic_change():
    const = [tiv_from_chroma(MAJOR_TRIAD)] * 9
    flat = harmonic_change(const)
    ok = bool(np.all(flat.values == 0.0) and flat.peaks.size == 0)
    detail = "" if ok else "constant sequence not flat"

    a = tiv_from_chroma(MAJOR_TRIAD)
    b = tiv_from_chroma(binary_chroma([2, 5, 9]))
    series = harmonic_change([a, a, a, b, b, b])
    d = euclid(a, b)
    expected = np.array([0.0, 0.0, d, d, 0.0, 0.0])
    if ok and np.max(np.abs(series.values - expected)) > 1e-12:
        ok, detail = False, "straddle values differ from independent euclid"
    if ok and not (
        series.peaks.size > 0 and set(series.peaks.tolist()) <= {2, 3}
    ):
        ok, detail = False, f"peaks {series.peaks.tolist()} not at the straddle"
    report(7, "harmonic-change", ok, detail)


def test_08_key_sanity():
    ps = build_profile_set("temperley")
    ok = True
    detail = ""
    for r in range(24):
        profile = ps.major_profile if r < 12 else ps.minor_profile
        result = estimate_key(tiv_from_chroma(np.roll(profile, r % 12)), ps)
        if result.index != r:
            ok, detail = False, f"rotation {r} classified as {result.index}"
            break
        if r < 12 and result.distances[r] > 1e-9:
            ok, detail = False, f"major self-distance {result.distances[r]:.3e}"
            break
    if ok:
        rng = np.random.default_rng(108)
        for _ in range(20):
            c = 0.6 * ps.major_profile + rng.uniform(0.0, 0.3, 12)
            base = estimate_key(tiv_from_chroma(c), ps)
            for p in range(12):
                shifted = estimate_key(tiv_from_chroma(np.roll(c, p)), ps)
                if (
                    shifted.tonic != (base.tonic + p) % 12
                    or shifted.mode != base.mode
                ):
                    ok, detail = False, f"covariance breaks at shift {p}"
                    break
            if not ok:
                break
    report(8, "key-sanity", ok, detail)


def test_09_metric_axioms():
    rng = np.random.default_rng(109)
    ok = True
    detail = ""
    for _ in range(500):
        a, b, c = (tiv_from_chroma(random_chroma(rng)) for _ in range(3))
        if euclid(a, a) > 1e-9 or abs(euclid(a, b) - euclid(b, a)) > 1e-9:
            ok, detail = False, "identity/symmetry violated"
            break
        if euclid(a, c) > euclid(a, b) + euclid(b, c) + 1e-9:
            ok, detail = False, "triangle inequality violated"
            break
    if ok:
        t = tiv_from_chroma(random_chroma(rng))
        if abs(cosine_similarity(t, t) - 1.0) > 1e-12:
            ok, detail = False, "self-similarity differs from 1"
    if ok:
        one_hot = tiv_from_chroma(binary_chroma([0]))
        got = cosine_similarity(one_hot, transpose(one_hot, 6))
        # closed form: sum_k w(k)^2 cos(pi k) / sum_k w(k)^2
        closed = float(
            np.sum(WEIGHTS**2 * np.cos(np.pi * np.arange(1, 7))) / np.sum(WEIGHTS**2)
        )
        if abs(got - closed) > 1e-9:
            ok, detail = False, f"tritone similarity {got} != closed form {closed}"
    report(9, "metric-axioms", ok, detail)


def test_10_cli_determinism_and_schema(tmp_path):
    fixture = Path(__file__).parent / "data" / "fixture.csv"
    cmd = [sys.executable, "-m", "tonalspace", "analyze", str(fixture)]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    ok = (
        first.returncode == 0
        and second.returncode == 0
        and first.stdout == second.stdout
        and len(first.stdout) > 0
    )
    detail = "" if ok else "analyze output not byte-identical"
    if ok:
        bad = tmp_path / "bad.csv"
        bad.write_text(",".join(["1.0"] * 12) + "\n0.5,0.5\n")
        run = subprocess.run(
            [sys.executable, "-m", "tonalspace", "analyze", str(bad)],
            capture_output=True,
            text=True,
        )
        if run.returncode != 1 or "row 2" not in run.stderr:
            ok = False
            detail = f"malformed CSV: rc={run.returncode}, stderr={run.stderr!r}"
    report(10, "cli-determinism-and-schema", ok, detail)


def test_11_end_to_end_smoke(tmp_path):
    sr = 22050
    t = np.arange(sr) / sr
    sig = (0.5 * np.sin(2 * np.pi * 440.0 * t)).astype(np.float32)
    wav = tmp_path / "a440.wav"
    wavfile.write(wav, sr, sig)
    chroma_out = tmp_path / "a440.json"
    extract = subprocess.run(
        [
            sys.executable,
            "-m",
            "tonalspace",
            "extract-chroma",
            str(wav),
            "--out",
            str(chroma_out),
            "--out-format",
            "json",
        ],
        capture_output=True,
        text=True,
    )
    ok = extract.returncode == 0
    detail = "" if ok else f"extract failed: {extract.stderr}"
    min_share = None
    if ok:
        frames = np.array(json.loads(chroma_out.read_text())["frames"])
        shares = frames[:, 9] / frames.sum(axis=1)
        min_share = float(shares.min())
        if min_share < 0.8:
            ok, detail = False, f"pitch class 9 share {min_share:.4f} < 0.8"
    if ok:
        analyze = subprocess.run(
            [sys.executable, "-m", "tonalspace", "analyze", str(chroma_out)],
            capture_output=True,
        )
        if analyze.returncode != 0:
            ok, detail = False, "analyze failed on extracted chroma"
    report(
        11,
        "end-to-end-smoke",
        ok,
        detail or f"min pitch-class-9 share {min_share:.4f}",
    )
