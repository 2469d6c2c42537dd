"""Key search: plain brute force, ranker-accelerated search, reverse avalanche.

Three layers:

* blind_bruteforce walks the key space in sequential or seeded-random
  order until a stop predicate accepts a decryption or the budget runs
  out.  Random order over n keys finds the target in (n+1)/2 trials on
  average; that half-key-space cost is the baseline every accelerated
  run is compared against.

* ai2_search runs the batched loop: decrypt a batch of trial keys, rank
  them by minimum distance between their decryptions and a supplied list
  of plausible plaintexts, let a pluggable Ranker observe the ranking and
  propose the next batch.  The search stops when some decryption matches
  a plausible candidate exactly (distance 0) and, if a language model is
  supplied, also passes the plausibility threshold.

* reverse_avalanche_series fixes two keys and walks a random one-bit-flip
  path between them, decrypting at every step; reverse_avalanche_probe
  then measures whether the resulting plaintext series betrays its hidden
  order (order recovery by minimum successive distance, and rank
  correlation of distance against series index).

Everything is deterministic given its seed; per-round traces log the
cumulative best distance and the spikedness of the ranker's weights over
the untried keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.stats import spearmanr

from .bits import BitString, join_blocks, split_blocks
from .ciphers import CipherSpec, decrypt_blocks, decrypt_blocks_batch
from .lang import BITS_PER_LETTER, LanguageModel, N_SYMBOLS, is_plausible, plausibility_score_batch
from .metrics import MetricId, metric_eval
from .analysis import spikedness

__all__ = [
    "SearchState",
    "RoundTrace",
    "PlausibleSet",
    "RankedKeys",
    "RankerContractError",
    "KnownPlaintextStop",
    "PlausibleStop",
    "blind_bruteforce",
    "rank_trial_keys",
    "ai2_search",
    "write_trace_csv",
    "reverse_avalanche_series",
    "reverse_avalanche_probe",
    "ProbeReport",
]

_ENUMERABLE_BITS = 22  # materialize orders/weights up to 2^22 keys


class RankerContractError(RuntimeError):
    """A ranker proposed a key that was already tried."""


@dataclass(frozen=True)
class RoundTrace:
    round: int
    keys_tried_cum: int
    best_min_distance: float  # best over everything tried so far
    spikedness: float
    metric_id: str


@dataclass
class SearchState:
    key_bits: int
    tried_keys: np.ndarray  # uint64, in trial order
    scores: np.ndarray  # float64, one per tried key
    found: tuple[BitString, BitString] | None = None
    found_at: int | None = None  # 1-based trial count at the hit
    rounds: list[RoundTrace] = field(default_factory=list)
    remaining_weights: np.ndarray | None = None

    @property
    def keys_tried_count(self) -> int:
        return len(self.tried_keys)


# -- stop predicates ---------------------------------------------------


class KnownPlaintextStop:
    """Accept exactly one known plaintext (calibration mode)."""

    def __init__(self, plaintext: BitString):
        self.plaintext = plaintext

    def __call__(self, p: BitString) -> bool:
        return p == self.plaintext

    def batch(self, block_plains: list[np.ndarray], block_bits: int) -> np.ndarray:
        want = split_blocks(self.plaintext, block_bits)
        mask = np.ones(len(block_plains[0]), dtype=bool)
        for arr, blk in zip(block_plains, want):
            mask &= np.asarray(arr, dtype=np.uint64) == np.uint64(blk.value)
        return mask


class PlausibleStop:
    """Accept any decryption scoring at or above theta."""

    def __init__(self, lm: LanguageModel, theta: float):
        self.lm = lm
        self.theta = theta

    def __call__(self, p: BitString) -> bool:
        return is_plausible(self.lm, p, self.theta)

    def batch(self, block_plains: list[np.ndarray], block_bits: int) -> np.ndarray:
        letters = _blocks_to_letters(block_plains, block_bits)
        return plausibility_score_batch(self.lm, letters) >= self.theta


def _blocks_to_letters(block_plains: list[np.ndarray], block_bits: int,
                       n_letters: int | None = None) -> np.ndarray:
    """(N,) ints per block -> (N, n_letters) 5-bit codes.

    With the default n_letters the whole message must be letter-aligned;
    passing it explicitly reads a letter prefix and ignores trailing pad
    bits in the last block.
    """
    total_bits = block_bits * len(block_plains)
    if n_letters is None:
        if total_bits % BITS_PER_LETTER != 0:
            raise ValueError(f"message of {total_bits} bits is not letter-aligned")
        n_letters = total_bits // BITS_PER_LETTER
    elif n_letters * BITS_PER_LETTER > total_bits:
        raise ValueError(f"{n_letters} letters do not fit in {total_bits} bits")
    cols = []
    # walk letters left to right, pulling 5-bit windows that may straddle blocks
    for letter in range(n_letters):
        start = letter * BITS_PER_LETTER
        end = start + BITS_PER_LETTER
        b0, o0 = divmod(start, block_bits)
        b1 = (end - 1) // block_bits
        if b0 == b1:
            shift = block_bits - (o0 + BITS_PER_LETTER)
            col = (np.asarray(block_plains[b0], dtype=np.uint64) >> np.uint64(shift)) & np.uint64(0x1F)
        else:
            hi_bits = block_bits - o0
            lo_bits = BITS_PER_LETTER - hi_bits
            hi = np.asarray(block_plains[b0], dtype=np.uint64) & np.uint64((1 << hi_bits) - 1)
            lo = np.asarray(block_plains[b1], dtype=np.uint64) >> np.uint64(block_bits - lo_bits)
            col = (hi << np.uint64(lo_bits)) | lo
        cols.append(col.astype(np.int64))
    return np.stack(cols, axis=1)


# -- blind brute force -------------------------------------------------


def _key_order(key_bits: int, order: str, budget: int, rng: np.random.Generator) -> np.ndarray:
    n = 1 << key_bits
    take = min(budget, n)
    if order == "sequential":
        return np.arange(take, dtype=np.uint64)
    if order != "seeded-random":
        raise ValueError(f"order must be 'sequential' or 'seeded-random', got {order!r}")
    if key_bits <= _ENUMERABLE_BITS:
        return rng.permutation(n).astype(np.uint64)[:take]
    # sparse distinct sampling for big spaces
    seen: set[int] = set()
    out = np.empty(take, dtype=np.uint64)
    filled = 0
    while filled < take:
        v = 0
        for _ in range((key_bits + 31) // 32):
            v = (v << 32) | int(rng.integers(0, 1 << 32))
        v &= (1 << key_bits) - 1
        if v not in seen:
            seen.add(v)
            out[filled] = v
            filled += 1
    return out


def blind_bruteforce(spec: CipherSpec, c: BitString, stop, order: str = "seeded-random",
                     budget: int | None = None, seed: int = 0) -> SearchState:
    """Try keys in the given order until stop(decrypt(c, key)) or budget end.

    ``stop`` is a predicate on the decrypted message; predicates offering a
    vectorized ``batch`` method (both shipped stops do) let the scan run in
    numpy chunks.  The tried log's score column is the stop indicator.
    """
    n = 1 << spec.key_bits
    if budget is None:
        budget = n
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = np.random.default_rng(seed)
    keys = _key_order(spec.key_bits, order, budget, rng)

    batch_stop = getattr(stop, "batch", None)
    chunk = 8192
    tried: list[np.ndarray] = []
    scores: list[np.ndarray] = []
    found = None
    found_at = None
    done = 0
    for lo in range(0, len(keys), chunk):
        part = keys[lo : lo + chunk]
        block_plains = decrypt_blocks_batch(spec, c, part)
        if batch_stop is not None:
            mask = batch_stop(block_plains, spec.block_bits)
        else:
            mask = np.fromiter(
                (stop(join_blocks(BitString(int(b[i]), spec.block_bits) for b in block_plains))
                 for i in range(len(part))),
                dtype=bool, count=len(part))
        hits = np.flatnonzero(mask)
        if hits.size:
            cut = int(hits[0]) + 1
            tried.append(part[:cut])
            scores.append(mask[:cut].astype(np.float64))
            key = BitString(int(part[cut - 1]), spec.key_bits)
            found = (key, decrypt_blocks(spec, c, key))
            found_at = done + cut
            done += cut
            break
        tried.append(part)
        scores.append(mask.astype(np.float64))
        done += len(part)

    return SearchState(
        key_bits=spec.key_bits,
        tried_keys=np.concatenate(tried) if tried else np.empty(0, dtype=np.uint64),
        scores=np.concatenate(scores) if scores else np.empty(0),
        found=found,
        found_at=found_at,
    )


# -- plausible-candidate ranking ----------------------------------------


@dataclass(frozen=True)
class PlausibleSet:
    """Operator-supplied plausible plaintexts for one captured ciphertext."""

    ciphertext_id: int
    candidates: tuple[BitString, ...]

    def __post_init__(self) -> None:
        if not self.candidates:
            raise ValueError("need at least one plausible candidate")
        lengths = {c.length for c in self.candidates}
        if len(lengths) != 1:
            raise ValueError("candidates must share one length")
        (length,) = lengths
        if length % BITS_PER_LETTER != 0:
            raise ValueError(f"candidate length {length} is not letter-aligned")
        for c in self.candidates:
            for i in range(0, length, BITS_PER_LETTER):
                if c.substring(i, BITS_PER_LETTER).value >= N_SYMBOLS:
                    raise ValueError("candidates must encode valid letter sequences")

    @property
    def length(self) -> int:
        return self.candidates[0].length


@dataclass(frozen=True)
class RankedKeys:
    """Trial keys sorted ascending by min distance; ties by key value."""

    ordered: tuple[tuple[BitString, float], ...]

    def keys(self) -> list[BitString]:
        return [k for k, _ in self.ordered]

    def best(self) -> tuple[BitString, float]:
        return self.ordered[0]


def _min_distances(spec: CipherSpec, c_q: BitString, key_vals: np.ndarray,
                   plausible: PlausibleSet, metric: MetricId) -> np.ndarray:
    if plausible.length != c_q.length:
        raise ValueError(f"candidates are {plausible.length} bits, ciphertext is {c_q.length}")
    block_plains = decrypt_blocks_batch(spec, c_q, key_vals)
    if metric.kind == "hamming":
        best = np.full(len(key_vals), np.inf)
        for cand in plausible.candidates:
            cand_blocks = split_blocks(cand, spec.block_bits)
            d = np.zeros(len(key_vals))
            for arr, blk in zip(block_plains, cand_blocks):
                d += np.bitwise_count(np.asarray(arr, dtype=np.uint64) ^ np.uint64(blk.value))
            np.minimum(best, d, out=best)
        return best
    # generic metric path
    best = np.full(len(key_vals), np.inf)
    for i in range(len(key_vals)):
        msg = join_blocks(BitString(int(b[i]), spec.block_bits) for b in block_plains)
        best[i] = min(metric_eval(metric, msg, cand).value for cand in plausible.candidates)
    return best


def rank_trial_keys(spec: CipherSpec, c_q: BitString, keys, plausible: PlausibleSet,
                    metric: MetricId) -> RankedKeys:
    """Decrypt each trial key, take its min distance over the candidates, sort."""
    key_list = list(keys)
    if not key_list:
        raise ValueError("need at least one trial key")
    vals = np.array([k.value for k in key_list], dtype=np.uint64)
    dists = _min_distances(spec, c_q, vals, plausible, metric)
    order = sorted(range(len(key_list)), key=lambda i: (dists[i], key_list[i].value))
    return RankedKeys(tuple((key_list[i], float(dists[i])) for i in order))


# -- accelerated search loop --------------------------------------------


def ai2_search(spec: CipherSpec, c_q: BitString, plausible: PlausibleSet, metric: MetricId,
               ranker, t: int, max_rounds: int, seed: int,
               lm: LanguageModel | None = None, theta: float | None = None,
               metric_rotation: list[MetricId] | None = None, rotate_after: int = 5,
               trace_weights: bool = True) -> SearchState:
    """Batched rank-and-propose search.

    Round 0 draws t seeded-random keys; each later round asks the ranker
    for the next batch.  Stops on an exact candidate match (distance 0),
    additionally gated by is_plausible when a language model is given.
    A metric_rotation list switches to the next metric after rotate_after
    rounds without improvement of the best distance.  trace_weights=False
    skips the per-round weight-vector spikedness (worth it for very long
    null-model runs over enumerable spaces).
    """
    if t < 1 or max_rounds < 1:
        raise ValueError("t and max_rounds must be >= 1")
    n = 1 << spec.key_bits
    rng = np.random.default_rng(seed)
    tried_set: set[int] = set()
    tried_order: list[int] = []
    all_scores: list[float] = []
    traces: list[RoundTrace] = []
    enumerable = spec.key_bits <= _ENUMERABLE_BITS
    tried_mask = np.zeros(n, dtype=bool) if enumerable else None

    ranker.attach(key_bits=spec.key_bits, tried=tried_set, seed=int(rng.integers(0, 2**63)))

    rotation = list(metric_rotation) if metric_rotation else [metric]
    if metric not in rotation:
        rotation.insert(0, metric)
    metric_idx = rotation.index(metric)
    stagnant_rounds = 0

    best = float("inf")
    found = None
    found_at = None
    weights = None

    for rnd in range(max_rounds):
        if rnd == 0:
            batch_vals: list[int] = []
            while len(batch_vals) < min(t, n):
                v = int(rng.integers(0, n)) if spec.key_bits <= 63 else int(
                    (int(rng.integers(0, 1 << 32)) << 32) | int(rng.integers(0, 1 << 32)))
                if v not in tried_set and v not in batch_vals:
                    batch_vals.append(v)
            batch = [BitString(v, spec.key_bits) for v in batch_vals]
        else:
            batch = list(ranker.propose(t))
            if not batch:
                break  # ranker has nothing left to suggest
            for k in batch:
                if k.value in tried_set:
                    raise RankerContractError(f"ranker proposed already-tried key {k.hex_annotated()}")

        cur_metric = rotation[metric_idx]
        ranked = rank_trial_keys(spec, c_q, batch, plausible, cur_metric)

        dist_by_val = {k.value: d for k, d in ranked.ordered}
        improved = False
        for k in batch:  # proposal order defines the trial count
            tried_set.add(k.value)
            tried_order.append(k.value)
            all_scores.append(dist_by_val[k.value])
            if tried_mask is not None:
                tried_mask[k.value] = True
            if dist_by_val[k.value] < best:
                best = dist_by_val[k.value]
                improved = True
            if found is None and dist_by_val[k.value] == 0.0:
                key = k
                plain = decrypt_blocks(spec, c_q, key)
                if lm is None or theta is None or is_plausible(lm, plain, theta):
                    found = (key, plain)
                    found_at = len(tried_order)

        if enumerable and trace_weights:
            untried = np.flatnonzero(~tried_mask).astype(np.uint64)
            w = ranker.weights(untried) if len(untried) else np.empty(0)
            spike = spikedness(w) if len(untried) else 0.0
            weights = w
        else:
            spike = float("nan")

        traces.append(RoundTrace(rnd, len(tried_order), best, spike, str(cur_metric)))

        if found is not None:
            break

        ranker.observe(ranked, rnd)

        if improved:
            stagnant_rounds = 0
        else:
            stagnant_rounds += 1
            if len(rotation) > 1 and stagnant_rounds >= rotate_after:
                metric_idx = (metric_idx + 1) % len(rotation)
                stagnant_rounds = 0

        if len(tried_set) >= n:
            break

    return SearchState(
        key_bits=spec.key_bits,
        tried_keys=np.array(tried_order, dtype=np.uint64),
        scores=np.array(all_scores),
        found=found,
        found_at=found_at,
        rounds=traces,
        remaining_weights=weights,
    )


def write_trace_csv(state: SearchState, path, extra_header: list[str] | None = None) -> None:
    """Per-round trace: round, keys_tried_cum, best_min_distance, spikedness, metric_id."""
    with open(path, "w") as fh:
        for line in extra_header or []:
            fh.write(f"# {line}\n")
        fh.write("round,keys_tried_cum,best_min_distance,spikedness,metric_id\n")
        for r in state.rounds:
            fh.write(f"{r.round},{r.keys_tried_cum},{r.best_min_distance:.6g},"
                     f"{r.spikedness:.6g},{r.metric_id}\n")


# -- reverse avalanche ---------------------------------------------------


def reverse_avalanche_series(spec: CipherSpec, c: BitString, k0: BitString, k1: BitString,
                             seed: int) -> list[tuple[BitString, BitString]]:
    """Walk from k0 to k1 one bit flip at a time, decrypting c at every key.

    The h differing bit positions are flipped in a seeded-random order, so
    adjacent keys differ in exactly one bit, the first key is k0 and the
    last is k1; h+1 pairs come back.
    """
    if k0.length != k1.length or k0.length != spec.key_bits:
        raise ValueError("k0 and k1 must both be key-sized")
    diff = [i for i in range(k0.length) if k0[i] != k1[i]]
    rng = np.random.default_rng(seed)
    order = [diff[i] for i in rng.permutation(len(diff))] if diff else []
    series = []
    key = k0
    series.append((key, decrypt_blocks(spec, c, key)))
    for pos in order:
        key = key.flip(pos)
        series.append((key, decrypt_blocks(spec, c, key)))
    assert series[-1][0] == k1
    return series


@dataclass(frozen=True)
class ProbeReport:
    length: int
    exhaustive: bool
    true_score: float
    min_score: float
    n_minimizers: int
    order_recovered: bool
    degenerate: bool
    index_distance_rho: float


@lru_cache(maxsize=8)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def reverse_avalanche_probe(series_plaintexts, metric: MetricId, max_exhaustive: int = 8) -> ProbeReport:
    """Score the series' hidden order against every reordering.

    (a) order recovery: sum of successive distances over each permutation
    (exhaustive up to max_exhaustive points, greedy nearest-neighbor
    chaining beyond); recovered means the true order attains the minimum.
    The reversed order always scores the same as the true one, so with
    all-distinct distances a blind guess attains the minimum with
    probability n_minimizers / L!.
    (b) endpoint regression: Spearman rank correlation between the series
    index and the distance to the first plaintext, over indices >= 1 (the
    index-0 self-distance is identically zero and carries no signal).
    """
    plains = list(series_plaintexts)
    L = len(plains)
    if L < 2:
        raise ValueError("need a series of at least 2 plaintexts")
    D = np.zeros((L, L))
    for i in range(L):
        for j in range(i + 1, L):
            D[i, j] = D[j, i] = metric_eval(metric, plains[i], plains[j]).value

    degenerate = bool((D == 0).all())
    true_score = float(D[np.arange(L - 1), np.arange(1, L)].sum())

    if L <= max_exhaustive:
        perms = _perm_table(L)
        scores = D[perms[:, :-1], perms[:, 1:]].sum(axis=1)
        min_score = float(scores.min())
        n_min = int((scores == min_score).sum())
        recovered = true_score == min_score
        exhaustive = True
    else:
        best = None
        for start in range(L):
            left = set(range(L)) - {start}
            chain = [start]
            total = 0.0
            while left:
                nxt = min(left, key=lambda j: (D[chain[-1], j], j))
                total += D[chain[-1], nxt]
                left.remove(nxt)
                chain.append(nxt)
            if best is None or total < best[0]:
                best = (total, chain)
        min_score = float(min(best[0], true_score))
        n_min = 1
        recovered = true_score <= best[0]
        exhaustive = False

    to_first = D[0, 1:]
    if L < 3 or degenerate or np.allclose(to_first, to_first[0]):
        rho = float("nan")
    else:
        rho, _ = spearmanr(np.arange(1, L), to_first)
        rho = float(rho)

    return ProbeReport(L, exhaustive, true_score, min_score, n_min, bool(recovered), degenerate, rho)
