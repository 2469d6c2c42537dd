"""Pluggable key-proposal strategies for the accelerated search loop.

A ranker sees each round's ranking of (key, min distance), proposes the
next batch of untried keys, and can report a probability vector over any
given set of untried keys.  Three baselines ship:

* RandomRanker: uniform proposals, the null model every claim of
  acceleration is tested against.
* HillClimbRanker: single-bit neighbors of the best keys seen, widening
  to multi-bit perturbations when progress stalls.
* NeighborhoodRegressionRanker: least-squares fit of rank-transformed
  observed distances on key bits, proposing the untried keys with the
  lowest predicted distance; weights are a softmax of the negated
  predictions.

Rankers are attached by the search loop to the live tried-key set, so a
proposal can never repeat a tried key without breaking the contract.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import rankdata

from .bits import BitString

__all__ = ["RandomRanker", "HillClimbRanker", "NeighborhoodRegressionRanker", "builtin_rankers"]

_ENUMERABLE_BITS = 22


class _BaseRanker:
    def __init__(self) -> None:
        self.key_bits: int | None = None
        self._tried: set[int] | None = None
        self._rng: np.random.Generator | None = None

    def attach(self, key_bits: int, tried: set[int], seed: int) -> None:
        self.key_bits = key_bits
        self._tried = tried
        self._rng = np.random.default_rng(seed)

    # subclasses override observe/propose/weights
    def observe(self, ranked, round_index: int) -> None:  # noqa: ARG002
        pass

    def _random_untried(self, count: int) -> list[BitString]:
        n = 1 << self.key_bits
        out: list[int] = []
        seen = set()
        while len(out) < count and len(self._tried) + len(out) < n:
            v = int(self._rng.integers(0, n)) if self.key_bits <= 63 else int(
                (int(self._rng.integers(0, 1 << 32)) << 32) | int(self._rng.integers(0, 1 << 32)))
            if v not in self._tried and v not in seen:
                seen.add(v)
                out.append(v)
        return [BitString(v, self.key_bits) for v in out]

    def _uniform_weights(self, untried: np.ndarray) -> np.ndarray:
        if len(untried) == 0:
            return np.empty(0)
        return np.full(len(untried), 1.0 / len(untried))


class RandomRanker(_BaseRanker):
    """Uniform untried proposals; flat weights (spikedness 0)."""

    def propose(self, t: int) -> list[BitString]:
        return self._random_untried(t)

    def weights(self, untried: np.ndarray) -> np.ndarray:
        return self._uniform_weights(untried)


class HillClimbRanker(_BaseRanker):
    """Neighbor descent on observed min distances.

    Keeps the best few keys seen, proposes their untried single-bit
    neighbors best-first, and on stagnation perturbs the incumbent with
    progressively more simultaneous bit flips before falling back to
    random exploration.
    """

    def __init__(self, top_k: int = 4, patience: int = 3, frontier_mass: float = 0.9):
        super().__init__()
        self.top_k = top_k
        self.patience = patience
        self.frontier_mass = frontier_mass
        self._best: list[tuple[float, int]] = []  # (distance, key value)
        self._best_score = float("inf")
        self._stagnant = 0
        self._perturb_bits = 2

    def observe(self, ranked, round_index: int) -> None:
        improved = False
        for key, dist in ranked.ordered:
            self._best.append((dist, key.value))
            if dist < self._best_score:
                self._best_score = dist
                improved = True
        self._best.sort()
        del self._best[self.top_k :]
        if improved:
            self._stagnant = 0
            self._perturb_bits = 2
        else:
            self._stagnant += 1
            if self._stagnant >= self.patience:
                self._perturb_bits = min(self.key_bits, self._perturb_bits + 1)
                self._stagnant = 0

    def _frontier(self) -> list[int]:
        out: list[int] = []
        seen = set()
        for _, base in self._best:
            for bit in range(self.key_bits):
                v = base ^ (1 << bit)
                if v not in self._tried and v not in seen:
                    seen.add(v)
                    out.append(v)
        return out

    def _perturbations(self, count: int) -> list[int]:
        if not self._best:
            return []
        base = self._best[0][1]
        out: list[int] = []
        seen = set()
        attempts = 0
        while len(out) < count and attempts < 50 * max(count, 1):
            attempts += 1
            bits = self._rng.choice(self.key_bits, size=self._perturb_bits, replace=False)
            v = base
            for b in bits:
                v ^= 1 << int(b)
            if v not in self._tried and v not in seen:
                seen.add(v)
                out.append(v)
        return out

    def propose(self, t: int) -> list[BitString]:
        vals = self._frontier()[:t]
        if len(vals) < t:
            have = set(vals)
            for v in self._perturbations(t - len(vals)):
                if v not in have:
                    have.add(v)
                    vals.append(v)
        if len(vals) < t:
            have = set(vals)
            for k in self._random_untried(t - len(vals)):
                if k.value not in have:
                    vals.append(k.value)
        return [BitString(v, self.key_bits) for v in vals[:t]]

    def weights(self, untried: np.ndarray) -> np.ndarray:
        if len(untried) == 0:
            return np.empty(0)
        frontier = np.array(self._frontier(), dtype=np.uint64)
        w = np.full(len(untried), (1.0 - self.frontier_mass) / len(untried))
        if len(frontier):
            on = np.isin(untried, frontier)
            hits = int(on.sum())
            if hits:
                w[on] += self.frontier_mass / hits
            else:
                w += self.frontier_mass / len(untried)
        else:
            w += self.frontier_mass / len(untried)
        return w / w.sum()


class NeighborhoodRegressionRanker(_BaseRanker):
    """Monotone rank regression from key bits to observed min distance.

    Observed distances are rank-transformed (so any monotone rescaling of
    the metric fits equally well) and regressed on +-1 bit features; the
    untried keys with the lowest predicted rank are proposed.  Weights
    are softmax(-prediction / tau).
    """

    def __init__(self, tau: float = 0.05, min_observations: int = 16, pool_size: int = 4096):
        super().__init__()
        self.tau = tau
        self.min_observations = min_observations
        self.pool_size = pool_size
        self._keys: list[int] = []
        self._dists: list[float] = []
        self._coef: np.ndarray | None = None

    def observe(self, ranked, round_index: int) -> None:
        for key, dist in ranked.ordered:
            self._keys.append(key.value)
            self._dists.append(dist)
        if len(self._keys) >= self.min_observations:
            self._fit()

    def _bits_matrix(self, vals: np.ndarray) -> np.ndarray:
        shifts = np.arange(self.key_bits, dtype=np.uint64)
        bits = ((vals[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.float64)
        return 2.0 * bits - 1.0

    def _fit(self) -> None:
        vals = np.array(self._keys, dtype=np.uint64)
        X = self._bits_matrix(vals)
        X = np.column_stack([X, np.ones(len(X))])
        y = rankdata(self._dists)
        y = (y - y.mean()) / max(y.std(), 1e-12)
        self._coef, *_ = np.linalg.lstsq(X, y, rcond=None)

    def predict(self, vals: np.ndarray) -> np.ndarray:
        if self._coef is None:
            return np.zeros(len(vals))
        X = self._bits_matrix(np.asarray(vals, dtype=np.uint64))
        return X @ self._coef[:-1] + self._coef[-1]

    def _candidate_pool(self) -> np.ndarray:
        n = 1 << self.key_bits
        if self.key_bits <= _ENUMERABLE_BITS:
            mask = np.zeros(n, dtype=bool)
            tried = np.fromiter(self._tried, dtype=np.uint64, count=len(self._tried))
            mask[tried.astype(np.int64)] = True
            return np.flatnonzero(~mask).astype(np.uint64)
        pool = {k.value for k in self._random_untried(self.pool_size)}
        return np.fromiter(pool, dtype=np.uint64, count=len(pool))

    def propose(self, t: int) -> list[BitString]:
        if self._coef is None:
            return self._random_untried(t)
        pool = self._candidate_pool()
        if len(pool) == 0:
            return []
        pred = self.predict(pool)
        order = np.lexsort((pool, pred))  # prediction, then key value
        return [BitString(int(pool[i]), self.key_bits) for i in order[:t]]

    def weights(self, untried: np.ndarray) -> np.ndarray:
        if len(untried) == 0:
            return np.empty(0)
        if self._coef is None:
            return self._uniform_weights(untried)
        pred = self.predict(untried)
        z = -(pred - pred.min()) / self.tau
        z -= z.max()
        w = np.exp(z)
        return w / w.sum()


def builtin_rankers() -> dict[str, type]:
    """The shipped baselines: null, local search, learned regression."""
    return {
        "random": RandomRanker,
        "hillclimb": HillClimbRanker,
        "regression": NeighborhoodRegressionRanker,
    }
