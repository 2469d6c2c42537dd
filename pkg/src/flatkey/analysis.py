"""Avalanche measurement and key/plaintext distance datasets.

The workbench's empirical substrate: encrypt under a hidden origin pair
(P0, K0), decrypt the resulting ciphertext under many wrong keys, and
tabulate every chosen metric's distance from the origin on both the key
side and the plaintext side.  A flat-key-space cipher shows no usable
relation between the two sides; a leaky one does, and the scatter
projection plus its rank correlation quantify exactly how much.

Datasets keep their ground truth (K0, P0): this is offline study of a
self-generated ciphertext.  The search module never sees ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import spearmanr

from .bits import BitString
from .ciphers import CipherSpec, decrypt_batch, encrypt_batch
from .metrics import Distance, MetricId, metric_eval

__all__ = [
    "AvalancheReport",
    "measure_avalanche",
    "CipherAnalysisRecord",
    "AnalysisDataset",
    "generate_analysis_dataset",
    "ScatterDataset",
    "project_scatter",
    "scatter_spearman",
    "spikedness",
    "spike_ratio",
    "metric_eval_ints",
    "write_records_csv",
    "write_scatter_csv",
]


# -- avalanche ---------------------------------------------------------


@dataclass(frozen=True)
class AvalancheReport:
    family: str
    rounds: int
    trials: int
    seed: int
    per_bit: np.ndarray  # (block_bits,) flip probability per ciphertext bit
    mean_flip_fraction: float
    max_abs_dev: float  # max over bits of |p - 0.5|
    min_abs_dev: float


def measure_avalanche(spec: CipherSpec, trials: int, seed: int) -> AvalancheReport:
    """Single random key-bit flip per trial; per-ciphertext-bit flip rates."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    kb, bb = spec.key_bits, spec.block_bits
    if kb <= 63:
        keys = rng.integers(0, 1 << kb, size=trials, dtype=np.uint64)
    else:
        hi = rng.integers(0, 1 << (kb - 32), size=trials, dtype=np.uint64)
        lo = rng.integers(0, 1 << 32, size=trials, dtype=np.uint64)
        keys = (hi << np.uint64(32)) | lo
    plains = rng.integers(0, 1 << bb, size=trials, dtype=np.uint64)
    flip_pos = rng.integers(0, kb, size=trials).astype(np.uint64)
    flipped = keys ^ (np.uint64(1) << flip_pos)

    diff = encrypt_batch(spec, plains, keys).astype(np.uint64) ^ encrypt_batch(spec, plains, flipped).astype(np.uint64)
    per_bit = np.array([((diff >> np.uint64(b)) & 1).mean() for b in range(bb)])
    dev = np.abs(per_bit - 0.5)
    return AvalancheReport(
        family=spec.family,
        rounds=spec.rounds,
        trials=trials,
        seed=seed,
        per_bit=per_bit,
        mean_flip_fraction=float(per_bit.mean()),
        max_abs_dev=float(dev.max()),
        min_abs_dev=float(dev.min()),
    )


# -- batch metric evaluation -------------------------------------------


def metric_eval_ints(m: MetricId, values: np.ndarray, origin: int, bit_len: int) -> tuple[np.ndarray, np.ndarray]:
    """Distances of each integer-coded string to one origin string.

    Returns (value array, finite mask).  Popcount-expressible metrics are
    vectorized; the iterative/DP metrics fall back to a scalar loop.
    """
    vals = np.asarray(values, dtype=np.uint64)
    o = np.uint64(origin)
    finite = np.ones(len(vals), dtype=bool)
    if m.kind in ("hamming", "manhattan"):
        return np.bitwise_count(vals ^ o).astype(np.float64), finite
    if m.kind == "euclidean":
        return np.sqrt(np.bitwise_count(vals ^ o).astype(np.float64)), finite
    if m.kind == "jaccard":
        inter = np.bitwise_count(vals & o).astype(np.float64)
        union = np.bitwise_count(vals | o).astype(np.float64)
        out = np.zeros(len(vals))
        nz = union > 0
        out[nz] = 1.0 - inter[nz] / union[nz]
        return out, finite
    if m.kind == "cosine":
        na = np.bitwise_count(vals).astype(np.float64)
        nb = float(int(origin).bit_count())
        if nb == 0 or (na == 0).any():
            raise ValueError("cosine distance undefined for an all-zero operand")
        dot = np.bitwise_count(vals & o).astype(np.float64)
        return 1.0 - dot / np.sqrt(na * nb), finite
    # iterative metrics: scalar loop
    ox = BitString(origin, bit_len)
    out = np.empty(len(vals))
    for i, v in enumerate(vals):
        d = metric_eval(m, BitString(int(v), bit_len), ox)
        out[i] = d.value
        finite[i] = d.finite
    return out, finite


# -- analysis dataset --------------------------------------------------


@dataclass(frozen=True)
class CipherAnalysisRecord:
    key_index: int
    key: BitString
    key_distances: dict[str, Distance]
    plaintext_distances: dict[str, Distance]


@dataclass
class AnalysisDataset:
    """Distance coordinates of m wrong keys against the origin (K0, P0).

    Column arrays are keyed by str(MetricId); records are materialized on
    demand so exhaustive censuses stay cheap.
    """

    spec: CipherSpec
    k0: BitString
    p0: BitString
    c0: BitString
    seed: int
    metrics: tuple[MetricId, ...]
    keys: np.ndarray  # (m,) uint64
    plains: np.ndarray  # (m,) uint64
    dk: dict[str, np.ndarray] = field(default_factory=dict)
    dp: dict[str, np.ndarray] = field(default_factory=dict)
    dk_finite: dict[str, np.ndarray] = field(default_factory=dict)
    dp_finite: dict[str, np.ndarray] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.keys)

    def __getitem__(self, i: int) -> CipherAnalysisRecord:
        if not 0 <= i < len(self.keys):
            raise IndexError(i)
        kd = {}
        pd = {}
        for m in self.metrics:
            name = str(m)
            kd[name] = Distance(float(self.dk[name][i]), bool(self.dk_finite[name][i]))
            pd[name] = Distance(float(self.dp[name][i]), bool(self.dp_finite[name][i]))
        return CipherAnalysisRecord(i + 1, BitString(int(self.keys[i]), self.spec.key_bits), kd, pd)

    def records(self):
        return (self[i] for i in range(len(self)))

    def origin_record(self) -> CipherAnalysisRecord:
        """Index-0 record for the true key itself; every distance is 0."""
        zero = {str(m): Distance(0.0) for m in self.metrics}
        return CipherAnalysisRecord(0, self.k0, dict(zero), dict(zero))


def _sample_distinct_wrong_keys(key_bits: int, k0: int, m: int, rng: np.random.Generator) -> np.ndarray:
    n = 1 << key_bits
    if m >= n:
        raise ValueError(f"cannot sample {m} distinct wrong keys from a 2^{key_bits} space")
    if key_bits <= 22:
        pool = np.arange(n, dtype=np.uint64)
        pool = pool[pool != k0]
        if m == len(pool):
            return pool  # exhaustive census keeps counting order
        return pool[rng.permutation(len(pool))[:m]]
    # sparse spaces: rejection sampling, collisions vanishingly rare
    seen = {k0}
    out = np.empty(m, dtype=np.uint64)
    filled = 0
    while filled < m:
        v = 0
        for _ in range((key_bits + 31) // 32):
            v = (v << 32) | int(rng.integers(0, 1 << 32))
        v &= (1 << key_bits) - 1
        if v not in seen:
            seen.add(v)
            out[filled] = v
            filled += 1
    return out


def generate_analysis_dataset(spec: CipherSpec, metrics, m: int, seed: int) -> AnalysisDataset:
    """Draw (P0, K0), compute C0, decrypt under m distinct wrong keys, tabulate distances."""
    metrics = tuple(metrics)
    if m < 1:
        raise ValueError("m must be >= 1")
    if not metrics:
        raise ValueError("need at least one metric")
    rng = np.random.default_rng(seed)
    k0 = BitString.random(spec.key_bits, rng)
    p0 = BitString.random(spec.block_bits, rng)
    c0 = encrypt_batch(spec, np.array([p0.value], dtype=np.uint64), np.array([k0.value], dtype=np.uint64))
    c0 = BitString(int(c0[0]), spec.block_bits)

    keys = _sample_distinct_wrong_keys(spec.key_bits, k0.value, m, rng)
    plains = decrypt_batch(spec, np.full(m, c0.value, dtype=np.uint64), keys).astype(np.uint64)

    ds = AnalysisDataset(spec=spec, k0=k0, p0=p0, c0=c0, seed=seed, metrics=metrics,
                         keys=keys, plains=plains)
    for metric in metrics:
        name = str(metric)
        ds.dk[name], ds.dk_finite[name] = metric_eval_ints(metric, keys, k0.value, spec.key_bits)
        ds.dp[name], ds.dp_finite[name] = metric_eval_ints(metric, plains, p0.value, spec.block_bits)
    return ds


# -- scatter -----------------------------------------------------------


@dataclass(frozen=True)
class ScatterDataset:
    spec: CipherSpec
    k0: BitString
    p0: BitString
    c0: BitString
    metric_x: MetricId
    metric_y: MetricId
    points: np.ndarray  # (m, 2) of (key distance, plaintext distance)
    seed: int


def project_scatter(ds: AnalysisDataset, metric_k: MetricId, metric_p: MetricId) -> ScatterDataset:
    """Pick one key-side and one plaintext-side metric as the (x, y) plane."""
    kx, py = str(metric_k), str(metric_p)
    if kx not in ds.dk or py not in ds.dp:
        raise KeyError(f"metric pair ({kx}, {py}) not present in dataset")
    points = np.column_stack([ds.dk[kx], ds.dp[py]])
    return ScatterDataset(ds.spec, ds.k0, ds.p0, ds.c0, metric_k, metric_p, points, ds.seed)


def scatter_spearman(sc: ScatterDataset) -> float:
    rho, _ = spearmanr(sc.points[:, 0], sc.points[:, 1])
    return float(rho)


# -- spikedness --------------------------------------------------------


def spikedness(weights) -> float:
    """KL divergence from uniform, in bits: sum w * log2(w * n).  0 iff flat."""
    w = np.asarray(weights, dtype=np.float64)
    if (w < 0).any():
        raise ValueError("weights must be non-negative")
    total = float(w.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"weights sum to {total}, not 1")
    n = len(w)
    nz = w > 0
    return float((w[nz] * np.log2(w[nz] * n)).sum())


def spike_ratio(weights) -> float:
    """Secondary flatness view: max weight over mean weight (1.0 = flat)."""
    w = np.asarray(weights, dtype=np.float64)
    return float(w.max() / w.mean())


def sphere_size_histogram_ok(ds: AnalysisDataset) -> bool:
    """Exhaustive-census conservation: key-distance counts match C(n, h) exactly."""
    kb = ds.spec.key_bits
    if len(ds) != (1 << kb) - 1 or "hamming" not in ds.dk:
        raise ValueError("needs an exhaustive census with the hamming metric")
    counts = np.bincount(ds.dk["hamming"].astype(np.int64), minlength=kb + 1)
    return counts[0] == 0 and all(counts[h] == math.comb(kb, h) for h in range(1, kb + 1))


# -- CSV export --------------------------------------------------------


def write_records_csv(ds: AnalysisDataset, path, extra_header: list[str] | None = None) -> None:
    names = [str(m) for m in ds.metrics]
    with open(path, "w") as fh:
        for line in extra_header or []:
            fh.write(f"# {line}\n")
        fh.write(f"# family={ds.spec.family} rounds={ds.spec.rounds} seed={ds.seed}\n")
        fh.write(f"# k0={ds.k0.hex_annotated()} p0={ds.p0.hex_annotated()} c0={ds.c0.hex_annotated()}\n")
        cols = ["key_index", "key_hex"] + [f"{n}_dk" for n in names] + [f"{n}_dp" for n in names]
        fh.write(",".join(cols) + "\n")
        for i in range(len(ds)):
            key_hex = BitString(int(ds.keys[i]), ds.spec.key_bits).hex_annotated()
            row = [str(i + 1), key_hex]
            row += [f"{ds.dk[n][i]:.6g}" for n in names]
            row += [f"{ds.dp[n][i]:.6g}" for n in names]
            fh.write(",".join(row) + "\n")


def write_scatter_csv(sc: ScatterDataset, path, extra_header: list[str] | None = None) -> None:
    with open(path, "w") as fh:
        for line in extra_header or []:
            fh.write(f"# {line}\n")
        fh.write(f"# family={sc.spec.family} rounds={sc.spec.rounds} seed={sc.seed} "
                 f"metric_x={sc.metric_x} metric_y={sc.metric_y}\n")
        fh.write("x,y\n")
        for x, y in sc.points:
            fh.write(f"{x:.6g},{y:.6g}\n")
