"""Distance-suite tests: frozen oracle values plus metric axioms.

Oracles are written independently of the library code paths: positionwise
counting for hamming, recursive edit search for levenshtein, recursive
subsequence search for LCS, literal string chopping for the majority
summary, and full enumeration for sphere sizes.
"""

import math
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flatkey.bits import BitString
from flatkey.metrics import (
    Distance,
    MetricId,
    cosine,
    default_metric_suite,
    euclidean,
    hamming,
    jaccard,
    lcs_distance,
    levenshtein,
    manhattan,
    metric_eval,
    q_summarize,
    q_summary_distance,
    sphere_size,
)

B = BitString.from_text


# -- independent oracles -------------------------------------------------


def hamming_oracle(x: str, y: str) -> int:
    assert len(x) == len(y)
    return sum(a != b for a, b in zip(x, y))


@lru_cache(maxsize=None)
def lev_oracle(x: str, y: str) -> int:
    if not x:
        return len(y)
    if not y:
        return len(x)
    return min(
        lev_oracle(x[1:], y) + 1,
        lev_oracle(x, y[1:]) + 1,
        lev_oracle(x[1:], y[1:]) + (x[0] != y[0]),
    )


@lru_cache(maxsize=None)
def lcs_oracle(x: str, y: str) -> int:
    if not x or not y:
        return 0
    if x[0] == y[0]:
        return 1 + lcs_oracle(x[1:], y[1:])
    return max(lcs_oracle(x[1:], y), lcs_oracle(x, y[1:]))


def summarize_oracle(s: str, q: int) -> str:
    out = []
    for i in range(0, len(s), q):
        group = s[i : i + q]
        out.append("1" if 2 * group.count("1") > len(group) else "0")
    return "".join(out)


def q_distance_oracle(x: str, y: str, q: int):
    rounds = 0
    while True:
        if x == y:
            return rounds, True
        if len(x) == 1:
            return rounds + 1, False
        x, y = summarize_oracle(x, q), summarize_oracle(y, q)
        rounds += 1


# -- hamming -------------------------------------------------------------


def test_hamming_examples():
    assert hamming(B("1010"), B("1010")) == 0
    assert hamming(B("1010"), B("0101")) == 4
    assert hamming(B("0011"), B("1110")) == 3  # positionwise count by hand


def test_hamming_length_mismatch():
    with pytest.raises(ValueError):
        hamming(B("101"), B("1010"))


def test_hamming_against_oracle():
    rng = np.random.default_rng(1)
    for _ in range(300):
        n = int(rng.integers(1, 40))
        x, y = BitString.random(n, rng), BitString.random(n, rng)
        assert hamming(x, y) == hamming_oracle(x.to01(), y.to01())


def test_hamming_triangle_inequality():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        n = int(rng.integers(1, 33))
        x, y, z = (BitString.random(n, rng) for _ in range(3))
        assert hamming(x, z) <= hamming(x, y) + hamming(y, z)


# -- q-summary -----------------------------------------------------------


def test_q_summarize_reference_anchor():
    # the canonical worked value: 101 011 001 -> majorities 1,1,0
    assert q_summarize(B("101011001"), 3).to01() == "110"


def test_q_summarize_unanimous():
    assert q_summarize(B("111"), 3).to01() == "1"


def test_q_summarize_27bit_derived():
    s = B("001000110010101111001100011")
    assert q_summarize(s, 3).to01() == "001011001"
    assert q_summarize(s, 3).to01() == summarize_oracle(s.to01(), 3)


def test_q_summarize_leftover_tie_resolves_zero():
    # leftover group "10" is a tie, so it contributes 0
    assert q_summarize(B("11110"), 3).to01() == "10"


def test_q_summarize_output_length():
    rng = np.random.default_rng(3)
    for _ in range(200):
        n = int(rng.integers(1, 60))
        q = int(rng.choice([3, 5, 7]))
        s = BitString.random(n, rng)
        out = q_summarize(s, q)
        assert out.length == -(-n // q)
        assert out.to01() == summarize_oracle(s.to01(), q)


def test_q_summarize_rejects_bad_inputs():
    with pytest.raises(ValueError):
        q_summarize(BitString(0, 0), 3)
    with pytest.raises(ValueError):
        q_summarize(B("1010"), 4)
    with pytest.raises(ValueError):
        q_summarize(B("1010"), 1)


def test_q_summary_distance_examples():
    rng = np.random.default_rng(4)
    for _ in range(20):
        x = BitString.random(12, rng)
        assert q_summary_distance(x, x, 3) == Distance(0.0)
    d = q_summary_distance(B("111111111"), B("111111110"), 3)
    assert d.finite and d.value == 1
    d = q_summary_distance(B("0"), B("1"), 3)
    assert not d.finite and d.value == 1


def test_q_summary_distance_oracle_sweep():
    rng = np.random.default_rng(5)
    for _ in range(500):
        n = int(rng.integers(1, 30))
        x, y = BitString.random(n, rng), BitString.random(n, rng)
        got = q_summary_distance(x, y, 3)
        value, finite = q_distance_oracle(x.to01(), y.to01(), 3)
        assert got.value == value and got.finite == finite


def test_q_summary_distance_symmetric():
    rng = np.random.default_rng(6)
    for _ in range(200):
        n = int(rng.integers(1, 25))
        x, y = BitString.random(n, rng), BitString.random(n, rng)
        assert q_summary_distance(x, y, 3) == q_summary_distance(y, x, 3)


# -- edit metrics ----------------------------------------------------------


def test_levenshtein_examples():
    assert levenshtein(B("101"), B("111")) == 1  # single substitution
    assert levenshtein(B("101"), B("101")) == 0
    assert levenshtein(B(""), B("1101")) == 4


def test_levenshtein_against_exhaustive_search():
    rng = np.random.default_rng(7)
    for _ in range(200):
        nx, ny = int(rng.integers(0, 10)), int(rng.integers(0, 10))
        x, y = BitString.random(nx, rng), BitString.random(ny, rng)
        assert levenshtein(x, y) == lev_oracle(x.to01(), y.to01())


def test_lcs_distance_against_recursive_oracle():
    rng = np.random.default_rng(8)
    for _ in range(200):
        nx, ny = int(rng.integers(0, 10)), int(rng.integers(0, 10))
        x, y = BitString.random(nx, rng), BitString.random(ny, rng)
        expect = nx + ny - 2 * lcs_oracle(x.to01(), y.to01())
        assert lcs_distance(x, y) == expect


# -- set/vector metrics ------------------------------------------------------


def test_jaccard_examples():
    assert jaccard(B("1100"), B("1100")) == 0.0
    assert jaccard(B("0000"), B("0000")) == 0.0  # identity beats the 0/0 convention
    assert jaccard(B("1100"), B("0011")) == 1.0
    assert jaccard(B("1110"), B("0110")) == pytest.approx(1 / 3)


def test_manhattan_equals_hamming():
    rng = np.random.default_rng(9)
    assert manhattan(B("1010"), B("0101")) == 4
    for _ in range(300):
        n = int(rng.integers(1, 40))
        x, y = BitString.random(n, rng), BitString.random(n, rng)
        h = hamming(x, y)
        assert manhattan(x, y) == h
        assert euclidean(x, y) == math.sqrt(h)
        assert euclidean(x, y) ** 2 == pytest.approx(h, abs=1e-12)


def test_cosine_zero_operand_rejected():
    with pytest.raises(ValueError):
        cosine(B("0000"), B("1010"))
    with pytest.raises(ValueError):
        cosine(B("1010"), B("0000"))


def test_cosine_identical_is_exactly_zero():
    rng = np.random.default_rng(10)
    for _ in range(100):
        x = BitString.random(24, rng)
        if x.value == 0:
            continue
        assert cosine(x, x) == 0.0


# -- dispatch and identifiers -------------------------------------------------


def test_metric_id_parse_and_str():
    assert MetricId.parse("hamming") == MetricId("hamming")
    assert MetricId.parse("q3") == MetricId("q_summary", 3)
    assert str(MetricId("q_summary", 5)) == "q5"
    with pytest.raises(ValueError):
        MetricId("q_summary", 4)
    with pytest.raises(ValueError):
        MetricId("hamming", 3)
    with pytest.raises(ValueError):
        MetricId.parse("nonsense")


def test_default_suite_has_eight_metrics():
    suite = default_metric_suite()
    assert len(suite) == 8
    assert len({str(m) for m in suite}) == 8


def test_metric_eval_dispatch_matches_direct_calls():
    rng = np.random.default_rng(11)
    x, y = BitString.random(20, rng), BitString.random(20, rng)
    assert metric_eval(MetricId("hamming"), x, y).value == hamming(x, y)
    assert metric_eval(MetricId("jaccard"), x, y).value == jaccard(x, y)
    assert metric_eval(MetricId("lcs"), x, y).value == lcs_distance(x, y)


def test_metric_eval_positional_length_check():
    for kind in ("hamming", "cosine", "euclidean", "manhattan"):
        with pytest.raises(ValueError):
            metric_eval(MetricId(kind), B("101"), B("1010"))
    with pytest.raises(ValueError):
        metric_eval(MetricId("q_summary", 3), B("101"), B("1010"))
    # edit metrics accept unequal lengths
    assert metric_eval(MetricId("levenshtein"), B("101"), B("1010")).value == 1


@settings(max_examples=200)
@given(st.integers(min_value=1, max_value=30), st.integers(min_value=0, max_value=2**30 - 1),
       st.integers(min_value=0, max_value=2**30 - 1))
def test_metric_axioms_property(n, a, b):
    x = BitString(a % (1 << n), n)
    y = BitString(b % (1 << n), n)
    for m in default_metric_suite():
        if m.kind == "cosine" and (x.value == 0 or y.value == 0):
            continue
        dxx = metric_eval(m, x, x)
        assert dxx.value == 0.0 and dxx.finite
        dxy = metric_eval(m, x, y)
        dyx = metric_eval(m, y, x)
        assert dxy == dyx
        assert dxy.value >= 0.0


def test_distance_ordering():
    assert Distance(1.0) < Distance(2.0)
    assert Distance(2.0) < Distance(2.0, finite=False)
    assert Distance(3.0) == 3.0
    assert not (Distance(3.0, finite=False) == 3.0)
    with pytest.raises(ValueError):
        Distance(-0.5)


# -- sphere sizes ---------------------------------------------------------------


def test_sphere_size_examples_and_enumeration():
    assert sphere_size(4, 2) == 6
    assert sphere_size(9, 0) == 1
    assert sphere_size(6, 3) == 20
    # enumeration oracle over every 6-bit string
    center = 0b101010
    counts = [0] * 7
    for v in range(64):
        counts[bin(v ^ center).count("1")] += 1
    for h in range(7):
        assert sphere_size(6, h) == counts[h]


def test_sphere_size_errors_and_total():
    with pytest.raises(ValueError):
        sphere_size(4, 5)
    with pytest.raises(ValueError):
        sphere_size(4, -1)
    for n in (1, 5, 16):
        assert sum(sphere_size(n, h) for h in range(n + 1)) == 2**n
    assert sphere_size(16, 8) == math.factorial(16) // math.factorial(8) ** 2
