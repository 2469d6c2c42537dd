"""Distance metrics over fixed-length binary strings.

Eight metrics are provided: hamming, iterated q-bit majority summary,
levenshtein, jaccard, cosine, euclidean, manhattan, and LCS distance.
Positional metrics (hamming, cosine, euclidean, manhattan, q-summary)
require equal lengths; the edit/set metrics do not.

Vector metrics treat a string as a 0/1 real vector; jaccard compares the
sets of positions holding a 1.  Every metric satisfies d(x, x) = 0,
symmetry, and non-negativity.

The q-summary distance is the number of majority-summarization rounds
needed to make two strings identical.  A pair can fail to converge (both
strings shrink to a single, unequal bit); such pairs get a non-finite
Distance whose numeric value is one more than the rounds it took to reach
length 1, which keeps divergent pairs maximal in any same-length ranking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

import numpy as np

from .bits import BitString

__all__ = [
    "Distance",
    "MetricId",
    "POSITIONAL_KINDS",
    "METRIC_KINDS",
    "hamming",
    "levenshtein",
    "jaccard",
    "cosine",
    "euclidean",
    "manhattan",
    "lcs_distance",
    "q_summarize",
    "q_summary_distance",
    "metric_eval",
    "default_metric_suite",
    "sphere_size",
]


@total_ordering
@dataclass(frozen=True, slots=True)
class Distance:
    """A non-negative distance value plus a convergence flag.

    ``finite=False`` only occurs for the q-summary metric, whose value is
    then a sentinel larger than any finite round count for strings of the
    same length.
    """

    value: float
    finite: bool = True

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"negative distance {self.value}")

    def __float__(self) -> float:
        return float(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, Distance):
            return self.value == other.value and self.finite == other.finite
        return self.finite and self.value == other

    def __lt__(self, other) -> bool:
        if isinstance(other, Distance):
            # equal values: finite sorts before the divergence sentinel
            return (self.value, not self.finite) < (other.value, not other.finite)
        return self.value < other


def _require_equal_lengths(x: BitString, y: BitString, name: str) -> None:
    if x.length != y.length:
        raise ValueError(f"{name} undefined across lengths {x.length} and {y.length}")


def hamming(x: BitString, y: BitString) -> int:
    """Count of positions where the two strings disagree."""
    _require_equal_lengths(x, y, "hamming")
    return (x.value ^ y.value).bit_count()


def manhattan(x: BitString, y: BitString) -> int:
    # sum of |x_i - y_i| over 0/1 coordinates, which is exactly hamming
    _require_equal_lengths(x, y, "manhattan")
    return (x.value ^ y.value).bit_count()


def euclidean(x: BitString, y: BitString) -> float:
    _require_equal_lengths(x, y, "euclidean")
    return math.sqrt((x.value ^ y.value).bit_count())


def cosine(x: BitString, y: BitString) -> float:
    """1 - cos(angle) between the strings as 0/1 vectors."""
    _require_equal_lengths(x, y, "cosine")
    nx = x.value.bit_count()
    ny = y.value.bit_count()
    if nx == 0 or ny == 0:
        raise ValueError("cosine distance undefined for an all-zero operand")
    dot = (x.value & y.value).bit_count()
    return 1.0 - dot / math.sqrt(nx * ny)


def jaccard(x: BitString, y: BitString) -> float:
    """1 - |A intersect B| / |A union B| over the sets of 1-positions.

    Two all-zero strings are identical, so their distance is 0 even
    though the union is empty.
    """
    shorter, longer = (x, y) if x.length <= y.length else (y, x)
    a = shorter.value << (longer.length - shorter.length)
    b = longer.value
    union = (a | b).bit_count()
    if union == 0:
        return 0.0
    return 1.0 - (a & b).bit_count() / union


def levenshtein(x: BitString, y: BitString) -> int:
    """Minimum number of single-symbol edits turning x into y."""
    if x.length == 0:
        return y.length
    if y.length == 0:
        return x.length
    if x.value == y.value and x.length == y.length:
        return 0
    src = x.to_array()
    tgt = y.to_array()
    # two-row DP, vectorized over the target row
    prev = np.arange(tgt.size + 1)
    for s in src:
        cur = prev + 1
        np.minimum(cur[1:], prev[:-1] + (tgt != s), out=cur[1:])
        # deletion cascade cur[j] = min(cur[j], cur[j-1] + 1), done in one pass:
        # min over i <= j of cur[i] + (j - i)
        idx = np.arange(cur.size)
        cur = np.minimum.accumulate(cur - idx) + idx
        prev = cur
    return int(prev[-1])


def _lcs_length(x: BitString, y: BitString) -> int:
    if x.length == 0 or y.length == 0:
        return 0
    src = x.to_array()
    tgt = y.to_array()
    prev = np.zeros(tgt.size + 1, dtype=np.int64)
    for s in src:
        cur = prev.copy()
        match = prev[:-1] + (tgt == s)
        np.maximum(cur[1:], match, out=cur[1:])
        cur = np.maximum.accumulate(cur)
        prev = cur
    return int(prev[-1])


def lcs_distance(x: BitString, y: BitString) -> int:
    """len(x) + len(y) - 2 * LCS(x, y)."""
    return x.length + y.length - 2 * _lcs_length(x, y)


# -- q-summary ---------------------------------------------------------


def q_summarize(s: BitString, q: int) -> BitString:
    """Collapse groups of q bits (left to right) to their majority bit.

    The leftover group of r < q bits contributes the majority of its own
    bits; an exact tie (possible only for even r) resolves to 0.  Output
    length is ceil(len/q).
    """
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be an odd integer >= 3, got {q}")
    if s.length == 0:
        raise ValueError("cannot summarize an empty string")
    out_value = 0
    out_len = 0
    pos = 0
    while pos < s.length:
        group = min(q, s.length - pos)
        shift = s.length - pos - group
        ones = ((s.value >> shift) & ((1 << group) - 1)).bit_count()
        out_value = (out_value << 1) | (1 if 2 * ones > group else 0)
        out_len += 1
        pos += group
    return BitString(out_value, out_len)


def q_summary_distance(x: BitString, y: BitString, q: int = 3) -> Distance:
    """Smallest t >= 0 with equal t-fold summaries, or a divergence sentinel.

    Strings of length 1 are fixed points of summarization, so once both
    sides reach a single unequal bit they can never converge; the result
    is then Distance(rounds_taken + 1, finite=False).
    """
    _require_equal_lengths(x, y, "q-summary")
    if x.length == 0:
        raise ValueError("q-summary distance undefined for empty strings")
    rounds = 0
    while True:
        if x.value == y.value:
            return Distance(float(rounds))
        if x.length == 1:
            return Distance(float(rounds + 1), finite=False)
        x = q_summarize(x, q)
        y = q_summarize(y, q)
        rounds += 1


# -- dispatch ----------------------------------------------------------

POSITIONAL_KINDS = frozenset({"hamming", "cosine", "euclidean", "manhattan", "q_summary"})
METRIC_KINDS = ("hamming", "q_summary", "levenshtein", "jaccard", "cosine", "euclidean", "manhattan", "lcs")


@dataclass(frozen=True, slots=True)
class MetricId:
    """Names one metric of the suite; q_summary carries its odd q."""

    kind: str
    q: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in METRIC_KINDS:
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if self.kind == "q_summary":
            if self.q is None or self.q < 3 or self.q % 2 == 0:
                raise ValueError(f"q_summary needs an odd q >= 3, got {self.q}")
        elif self.q is not None:
            raise ValueError(f"{self.kind} takes no q parameter")

    @classmethod
    def parse(cls, name: str) -> "MetricId":
        name = name.strip().lower()
        if name.startswith("q") and name[1:].isdigit():
            return cls("q_summary", int(name[1:]))
        return cls(name)

    def __str__(self) -> str:
        return f"q{self.q}" if self.kind == "q_summary" else self.kind


def default_metric_suite(q: int = 3) -> list[MetricId]:
    """All eight metrics, with the requested q for the summary metric."""
    return [MetricId(k) if k != "q_summary" else MetricId(k, q) for k in METRIC_KINDS]


def metric_eval(m: MetricId, x: BitString, y: BitString) -> Distance:
    """Evaluate one named metric; returns a Distance for a uniform interface."""
    if m.kind in POSITIONAL_KINDS:
        _require_equal_lengths(x, y, m.kind)
    if m.kind == "hamming":
        return Distance(float(hamming(x, y)))
    if m.kind == "q_summary":
        return q_summary_distance(x, y, m.q)
    if m.kind == "levenshtein":
        return Distance(float(levenshtein(x, y)))
    if m.kind == "jaccard":
        return Distance(jaccard(x, y))
    if m.kind == "cosine":
        return Distance(cosine(x, y))
    if m.kind == "euclidean":
        return Distance(euclidean(x, y))
    if m.kind == "manhattan":
        return Distance(float(manhattan(x, y)))
    if m.kind == "lcs":
        return Distance(float(lcs_distance(x, y)))
    raise AssertionError(m.kind)


def sphere_size(n: int, h: int) -> int:
    """Number of n-bit strings at Hamming distance exactly h from any fixed string."""
    if n < 0:
        raise ValueError(f"negative n {n}")
    if not 0 <= h <= n:
        raise ValueError(f"h={h} outside [0, {n}]")
    return math.comb(n, h)
