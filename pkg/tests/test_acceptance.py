"""Acceptance suite: one test per criterion, each at its stated tolerance.

Every test prints a single PASS line with the measured quantity once its
assertions hold (run with -s or -v to see them live).  Expected values
tied to examples were computed with independent oracles (positionwise
counting, string-chopped majority summaries, full enumerations) before
being frozen here.
"""

import hashlib
import math
import time
from functools import lru_cache

import numpy as np
import pytest
from scipy.stats import ks_2samp

from flatkey.bits import BitString
from flatkey.ciphers import (
    decrypt_batch,
    encrypt,
    encrypt_batch,
    encrypt_blocks,
    speck32_64,
    spn_spec,
)
from flatkey.lang import encode_text, load_default_model, sample_english, unicity_distance
from flatkey.metrics import (
    MetricId,
    default_metric_suite,
    hamming,
    metric_eval,
    q_summarize,
    q_summary_distance,
    sphere_size,
)
from flatkey.analysis import (
    generate_analysis_dataset,
    measure_avalanche,
    project_scatter,
    scatter_spearman,
    sphere_size_histogram_ok,
)
from flatkey.search import (
    KnownPlaintextStop,
    PlausibleSet,
    ai2_search,
    blind_bruteforce,
    reverse_avalanche_probe,
    reverse_avalanche_series,
)
from flatkey.rankers import HillClimbRanker, RandomRanker
from flatkey.pdc import (
    bitflip_decode,
    bitflip_encode,
    bitflip_keygen,
    bitflip_noise,
    bitflip_recv,
    bitflip_send,
    decoy_channel_recv,
    decoy_channel_send,
    lattice_decode,
    lattice_encode,
    lattice_keygen,
)
from flatkey.recipes import default_config, run_experiment

MSG = encode_text("HOLD THE BRIDGE ")  # 16 letters, 5 spn blocks
HAM = MetricId("hamming")


def _report(num: int, text: str) -> None:
    print(f"ACCEPTANCE {num:02d}: PASS - {text}")


# -- 1: metric axioms ---------------------------------------------------------


def test_c01_metric_axioms():
    start = time.time()
    rng = np.random.default_rng(101)
    suite = default_metric_suite()
    pairs = 10_000
    for _ in range(pairs):
        n = int(rng.integers(4, 33))
        x = BitString.random(n, rng)
        y = BitString.random(n, rng)
        for m in suite:
            if m.kind == "cosine" and (x.value == 0 or y.value == 0):
                continue
            assert metric_eval(m, x, x).value == 0.0
            dxy = metric_eval(m, x, y)
            assert dxy == metric_eval(m, y, x)
            assert dxy.value >= 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 33))
        a, b, c = (BitString.random(n, rng) for _ in range(3))
        assert hamming(a, c) <= hamming(a, b) + hamming(b, c)
    elapsed = time.time() - start
    assert elapsed < 10.0
    _report(1, f"8 metrics x {pairs} pairs: identity, symmetry, non-negativity exact; "
               f"triangle inequality on 1000 triples ({elapsed:.1f}s)")


# -- 2: q-summary anchor and oracle equivalence ---------------------------------


def _summarize_oracle(s: str, q: int) -> str:
    return "".join(
        "1" if 2 * s[i : i + q].count("1") > len(s[i : i + q]) else "0"
        for i in range(0, len(s), q))


def _q_distance_oracle(x: str, y: str, q: int):
    rounds = 0
    while True:
        if x == y:
            return rounds, True
        if len(x) == 1:
            return rounds + 1, False
        x, y = _summarize_oracle(x, q), _summarize_oracle(y, q)
        rounds += 1


def test_c02_q_summary_anchor_and_oracle():
    start = time.time()
    assert q_summarize(BitString.from_text("101011001"), 3).to01() == "110"
    strings = [format(v, "08b") for v in range(256)]
    bitstrings = [BitString(v, 8) for v in range(256)]
    for i in range(256):
        for j in range(256):
            got = q_summary_distance(bitstrings[i], bitstrings[j], 3)
            value, finite = _q_distance_oracle(strings[i], strings[j], 3)
            assert got.value == value and got.finite == finite
    elapsed = time.time() - start
    assert elapsed < 30.0
    _report(2, f"summary anchor 101011001->110; oracle equal on all 2^8 x 2^8 pairs ({elapsed:.1f}s)")


# -- 3: cipher round trips and the published vector ------------------------------


def test_c03_roundtrips_and_reference_vector():
    spec = speck32_64()
    assert encrypt(spec, BitString(0x6574694C, 32), BitString(0x1918111009080100, 64)).value == 0xA86842F2
    rng = np.random.default_rng(103)
    for family_spec in (spn_spec(rounds=4), speck32_64()):
        n = 10_000
        p = rng.integers(0, 1 << family_spec.block_bits, size=n, dtype=np.uint64)
        if family_spec.key_bits <= 63:
            k = rng.integers(0, 1 << family_spec.key_bits, size=n, dtype=np.uint64)
        else:
            k = (rng.integers(0, 1 << 32, size=n, dtype=np.uint64) << np.uint64(32)) | \
                rng.integers(0, 1 << 32, size=n, dtype=np.uint64)
        back = decrypt_batch(family_spec, encrypt_batch(family_spec, p, k), k)
        assert int((back != p).sum()) == 0
    _report(3, "10^4 round trips per family, zero failures; Speck32/64 matches its published vector")


# -- 4: avalanche band ------------------------------------------------------------


def test_c04_avalanche():
    rep = measure_avalanche(spn_spec(rounds=4), 10_000, seed=104)
    assert 0.48 <= rep.mean_flip_fraction <= 0.52
    assert rep.per_bit.min() >= 0.40 and rep.per_bit.max() <= 0.60
    _report(4, f"spn rounds=4: mean flip {rep.mean_flip_fraction:.4f} in [0.48,0.52], "
               f"per-bit in [{rep.per_bit.min():.3f},{rep.per_bit.max():.3f}] within [0.40,0.60]")


# -- 5 and 6: exhaustive censuses ---------------------------------------------------


@lru_cache(maxsize=2)
def _census(rounds: int):
    return generate_analysis_dataset(spn_spec(rounds=rounds), (HAM,), (1 << 16) - 1, seed=105)


def test_c05_flat_key_space():
    start = time.time()
    ds = _census(4)
    rho = scatter_spearman(project_scatter(ds, HAM, HAM))
    assert abs(rho) < 0.05
    assert sphere_size_histogram_ok(ds)
    counts = np.bincount(ds.dk["hamming"].astype(np.int64), minlength=17)
    for h in range(1, 17):
        assert counts[h] == sphere_size(16, h)
    elapsed = time.time() - start
    assert elapsed < 120.0
    _report(5, f"2^16 census rounds=4: |rho|={abs(rho):.4f} < 0.05, histogram == sphere sizes ({elapsed:.1f}s)")


def test_c06_leakage_knob():
    rho = scatter_spearman(project_scatter(_census(1), HAM, HAM))
    assert abs(rho) > 0.1
    _report(6, f"2^16 census rounds=1: |rho|={abs(rho):.4f} > 0.1 (measurable leak)")


# -- 7: half key space law ------------------------------------------------------------


def test_c07_half_key_space():
    spec = spn_spec(rounds=4)
    rng = np.random.default_rng(107)
    trials = 200
    counts = np.empty(trials)
    for i in range(trials):
        key = BitString.random(16, rng)
        c = encrypt_blocks(spec, MSG, key)
        st = blind_bruteforce(spec, c, KnownPlaintextStop(MSG), "seeded-random", seed=70_000 + i)
        counts[i] = st.found_at
    n = 1 << 16
    expect = (n + 1) / 2
    se = math.sqrt((n * n - 1) / 12 / trials)
    assert abs(counts.mean() - expect) < 3 * se
    _report(7, f"200 blind trials: mean {counts.mean():.0f} vs {expect:.1f} "
               f"(|dev| {abs(counts.mean()-expect):.0f} < 3SE {3*se:.0f})")


# -- 8: null control --------------------------------------------------------------------


def test_c08_null_control():
    spec = spn_spec(rounds=4)
    rng = np.random.default_rng(108)
    trials = 200
    t = 512
    blind_counts = np.empty(trials)
    random_counts = np.empty(trials)
    ps_template = (MSG,)
    for i in range(trials):
        key = BitString.random(16, rng)
        c = encrypt_blocks(spec, MSG, key)
        st = blind_bruteforce(spec, c, KnownPlaintextStop(MSG), "seeded-random", seed=80_000 + i)
        blind_counts[i] = st.found_at
        st2 = ai2_search(spec, c, PlausibleSet(i, ps_template), HAM, RandomRanker(),
                         t=t, max_rounds=(1 << 16) // t, seed=90_000 + i, trace_weights=False)
        assert st2.found is not None
        random_counts[i] = st2.found_at
    stat = ks_2samp(blind_counts, random_counts)
    assert stat.pvalue > 0.01
    _report(8, f"KS blind vs RandomRanker over {trials} paired trials: p={stat.pvalue:.3f} > 0.01")


# -- 9: acceleration on the leaky target ----------------------------------------------


def test_c09_acceleration():
    start = time.time()
    spec = spn_spec(rounds=1)
    rng = np.random.default_rng(109)
    trials = 100
    blind_counts = np.empty(trials)
    hill_counts = np.empty(trials)
    for i in range(trials):
        key = BitString.random(16, rng)
        c = encrypt_blocks(spec, MSG, key)
        st = blind_bruteforce(spec, c, KnownPlaintextStop(MSG), "seeded-random", seed=91_000 + i)
        blind_counts[i] = st.found_at
        st2 = ai2_search(spec, c, PlausibleSet(i, (MSG,)), HAM, HillClimbRanker(),
                         t=32, max_rounds=2048, seed=92_000 + i, trace_weights=False)
        assert st2.found is not None and st2.found[0] == key
        hill_counts[i] = st2.found_at
    ratio = np.median(hill_counts) / np.median(blind_counts)
    elapsed = time.time() - start
    assert ratio < 0.25
    assert elapsed < 300.0
    _report(9, f"hillclimb median {np.median(hill_counts):.0f} vs blind {np.median(blind_counts):.0f}: "
               f"ratio {ratio:.4f} < 0.25 ({elapsed:.1f}s)")


# -- 10: reverse avalanche ----------------------------------------------------------------


def _probe_run(rounds: int, seed: int, n_series: int, h: int = 4):
    spec = spn_spec(rounds=rounds)
    lm = load_default_model()
    rng = np.random.default_rng(seed)
    successes = 0
    null_prob = 0.0
    perms = math.factorial(h + 1)
    for i in range(n_series):
        letters = sample_english(lm, 16, 1, rng)[0]
        bits = 0
        for code in letters:
            bits = (bits << 5) | int(code)
        msg = BitString(bits, 80)
        k0 = BitString.random(16, rng)
        k1 = k0
        for b in rng.choice(16, size=h, replace=False):
            k1 = k1.flip(int(b))
        c = encrypt_blocks(spec, msg, k0)
        series = reverse_avalanche_series(spec, c, k0, k1, seed=seed * 100_000 + i)
        assert series[0][0] == k0 and series[-1][0] == k1
        for (ka, _), (kb, _) in zip(series, series[1:]):
            assert (ka.value ^ kb.value).bit_count() == 1
        rep = reverse_avalanche_probe([p for _, p in series], HAM)
        successes += rep.order_recovered
        null_prob += rep.n_minimizers / perms
    return successes, null_prob / n_series


def test_c10_reverse_avalanche():
    n_series = 1000
    hits1, _ = _probe_run(1, 110, n_series)
    hits4, p_null = _probe_run(4, 111, n_series)
    # leaky target: far above any chance level
    assert hits1 / n_series > 0.5
    # strong target: inside the 99% binomial band around the tie-aware chance rate
    margin = 2.576 * math.sqrt(n_series * p_null * (1 - p_null))
    assert abs(hits4 - n_series * p_null) <= margin
    _report(10, f"order recovery rounds=1 {hits1}/{n_series}; rounds=4 {hits4} vs "
                f"chance {n_series*p_null:.1f}+-{margin:.1f} (99% CI)")


# -- 11: unicity -----------------------------------------------------------------------------


def test_c11_unicity_and_variety(tmp_path):
    assert unicity_distance(128, 2.3) == pytest.approx(55.65, abs=0.01)
    cfg = default_config("unicity-variety", seed=111, out_dir=tmp_path)
    summary = run_experiment(cfg)
    ud = summary["unicity_letters"]
    crossing = summary["spn_crossing_length"]
    assert summary["spn_wrong_at_min_length"] > 1.0
    assert summary["spn_wrong_at_max_length"] < 1.0
    assert crossing > ud
    assert summary["bitflip_viable_at_max_length"] >= summary["bitflip_viable_at_min_length"] * 0.9
    assert summary["bitflip_viable_at_max_length"] > 1000
    _report(11, f"UD(128,2.3)=55.65+-0.01; wrong-plausible keys fall below 1 at L={crossing} "
                f"(> UD {ud:.2f}); bitflip viable books {summary['bitflip_viable_at_min_length']}"
                f"->{summary['bitflip_viable_at_max_length']} (no collapse)")


# -- 12: pdc correctness ------------------------------------------------------------------------


def test_c12_pdc_correctness():
    rng = np.random.default_rng(112)
    book = bitflip_keygen("ABCDEFGHIJKLMNOPQRSTUVWXYZ ", n_bits=32, max_strings_per_letter=3,
                          seed=112, h=8)
    alphabet = book.alphabet
    failures = 0
    for _ in range(10_000):
        sym = alphabet[int(rng.integers(0, len(alphabet)))]
        if bitflip_decode(book, bitflip_encode(book, sym, rng)) != sym:
            failures += 1
    assert failures == 0

    lat = lattice_keygen("ABCDEFGHIJKLMNOPQRSTUVWXYZ ", circles=4, rays=6, seed=112)
    lat_failures = 0
    for _ in range(10_000):
        sym = alphabet[int(rng.integers(0, len(alphabet)))]
        p = lattice_encode(lat, sym, max_len=24, rng=rng)
        if lattice_decode(lat, p) != sym:
            lat_failures += 1
    assert lat_failures == 0

    text = "NOISE SURVIVES ALL RATES"
    for rate in (0.0, 0.3, 0.6, 0.9):
        units = bitflip_send(book, text, np.random.default_rng(int(rate * 10)), noise_rate=rate)
        assert bitflip_recv(book, units) == text

    demo = bitflip_keygen("ABCD", n_bits=8, max_strings_per_letter=2, seed=113)
    for v in range(256):
        s = BitString(v, 8)
        hit = {sym for sym in demo.alphabet
               if any((v ^ ks.value).bit_count() == demo.h for ks in demo.strings[sym])}
        assert bitflip_decode(demo, s) == (hit.pop() if len(hit) == 1 else None)
    for _ in range(500):
        assert bitflip_decode(demo, bitflip_noise(demo, rng)) is None

    _report(12, "bitflip and lattice 10^4 round trips each, zero failures; noise transparency "
                "to rate 0.9; exhaustive no-false-decode on the 8-bit demo book")


# -- 13: decoy channel -----------------------------------------------------------------------------


def test_c13_decoy_channel():
    texts = ("ATTACK AT DAWN", "HOLD THE BRIDGE", "RETREAT AT ONCE", "SEND MORE FOOD")
    runs = 100
    for r in range(runs):
        cc, books = decoy_channel_send(
            {"alphabet": "ABCDEFGHIJKLMNOPQRSTUVWXYZ ", "n_bits": 32,
             "max_strings_per_letter": 3, "h": 8},
            texts, seed=113_000 + r)
        for j, book in enumerate(books):
            assert decoy_channel_recv(book, cc) == texts[j]
    _report(13, f"decoy channel: 4 plaintexts x {runs} seeded runs, every keybook reads exactly "
                f"its own message")


# -- 14: determinism ---------------------------------------------------------------------------------


_DET_BUDGETS = {
    "ai2-vs-blind": {"trials": 4},
    "reverse-avalanche": {"trials": 30},
    "unicity-variety": {"trials": 3},
    "decoy-demo": {"runs": 1},
    "scatter": {"m": 4000},
    "avalanche": {"trials": 2000},
}


def _recipe_checksums(recipe: str, out, workers: int) -> dict:
    cfg = default_config(recipe, seed=114, out_dir=out, workers=workers)
    cfg.budgets.update(_DET_BUDGETS.get(recipe, {}))
    run_experiment(cfg)
    return {f.name: hashlib.sha256(f.read_bytes()).hexdigest() for f in sorted(out.iterdir())}


def test_c14_determinism(tmp_path):
    recipes = [name for name, _ in __import__("flatkey.recipes", fromlist=["list_recipes"]).list_recipes()]
    assert len(recipes) == 8
    for recipe in recipes:
        a = _recipe_checksums(recipe, tmp_path / f"{recipe}-a", workers=1)
        b = _recipe_checksums(recipe, tmp_path / f"{recipe}-b", workers=1)
        w = _recipe_checksums(recipe, tmp_path / f"{recipe}-w", workers=2)
        assert a == b == w, recipe
    _report(14, "all 8 recipes: rerun and worker-count checksums byte-identical")
