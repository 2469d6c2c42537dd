"""Plain-language plausibility scoring and unicity distance.

Plaintexts are letter sequences over a 27-symbol alphabet (A-Z plus
space) packed 5 bits per symbol: A=00000 .. Z=11001, space=11010.
Codes 11011..11111 decode to no letter and draw a floor penalty when
scored, which is what makes random bitstrings score badly.

The score of a message is its mean per-letter log2 likelihood under a
smoothed bigram model: the first letter is scored by the unigram table,
every following letter by P(letter | previous).  Higher is more
plausible; the absolute scale is model-dependent, so thresholds are
calibrated rather than fixed (see calibrate_threshold).
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .bits import BitString

__all__ = [
    "ALPHABET",
    "BITS_PER_LETTER",
    "LanguageModel",
    "CalibrationResult",
    "encode_text",
    "decode_text",
    "load_default_model",
    "plausibility_score",
    "plausibility_score_batch",
    "is_plausible",
    "calibrate_threshold",
    "sample_english",
    "unicity_distance",
]

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ "
BITS_PER_LETTER = 5
N_SYMBOLS = 27
_INVALID = N_SYMBOLS  # shared index for the five non-alphabet codes
DEFAULT_REDUNDANCY = 2.3  # bits per letter of English
FLOOR_LOG2 = -12.0  # per-symbol penalty for non-alphabet codes


def encode_text(text: str) -> BitString:
    """Pack A-Z/space text into 5-bit codes (case-insensitive)."""
    v = 0
    n = 0
    for ch in text.upper():
        code = ALPHABET.index(ch) if ch in ALPHABET else None
        if code is None:
            raise ValueError(f"symbol {ch!r} not in the 27-letter alphabet")
        v = (v << BITS_PER_LETTER) | code
        n += BITS_PER_LETTER
    return BitString(v, n)


def decode_text(p: BitString, bad: str = "?") -> str:
    """Unpack 5-bit codes back to text; non-alphabet codes become `bad`."""
    if p.length % BITS_PER_LETTER != 0:
        raise ValueError(f"length {p.length} is not a multiple of {BITS_PER_LETTER}")
    out = []
    for i in range(0, p.length, BITS_PER_LETTER):
        code = p.substring(i, BITS_PER_LETTER).value
        out.append(ALPHABET[code] if code < N_SYMBOLS else bad)
    return "".join(out)


def _letters_array(p: BitString) -> np.ndarray:
    if p.length % BITS_PER_LETTER != 0:
        raise ValueError(f"length {p.length} is not a multiple of {BITS_PER_LETTER}")
    n = p.length // BITS_PER_LETTER
    out = np.empty(n, dtype=np.int64)
    v = p.value
    for i in range(n - 1, -1, -1):
        out[i] = v & 0x1F
        v >>= BITS_PER_LETTER
    return out


@dataclass(frozen=True)
class LanguageModel:
    """Smoothed unigram/bigram tables plus the language redundancy constant.

    ``start_log2`` has shape (28,), ``cond_log2`` shape (28, 28); index 27
    is the non-alphabet bucket, whose entries are the floor penalty as a
    target and the unigram fallback as a context (an invalid previous
    symbol gives no usable bigram context).
    """

    unigram: np.ndarray  # (27,) probabilities, sum 1
    bigram: np.ndarray  # (27, 27) joint probabilities, sum 1
    start_log2: np.ndarray  # (28,)
    cond_log2: np.ndarray  # (28, 28) indexed [prev, cur]
    redundancy_bits_per_letter: float = DEFAULT_REDUNDANCY
    source_note: str = ""

    def __post_init__(self) -> None:
        if abs(float(self.unigram.sum()) - 1.0) > 1e-9:
            raise ValueError("unigram table must sum to 1")
        if abs(float(self.bigram.sum()) - 1.0) > 1e-9:
            raise ValueError("bigram table must sum to 1")
        if self.redundancy_bits_per_letter <= 0:
            raise ValueError("redundancy must be positive")

    @property
    def min_cond_log2(self) -> float:
        return float(self.cond_log2.min())


def _model_from_counts(uni_counts: np.ndarray, bi_counts: np.ndarray,
                       redundancy: float, source_note: str, alpha: float = 0.1) -> LanguageModel:
    uni = (uni_counts + alpha) / (uni_counts + alpha).sum()
    bi = (bi_counts + alpha) / (bi_counts + alpha).sum()
    cond = bi / bi.sum(axis=1, keepdims=True)

    start = np.full(N_SYMBOLS + 1, FLOOR_LOG2)
    start[:N_SYMBOLS] = np.log2(uni)
    cond_l2 = np.full((N_SYMBOLS + 1, N_SYMBOLS + 1), FLOOR_LOG2)
    cond_l2[:N_SYMBOLS, :N_SYMBOLS] = np.log2(cond)
    cond_l2[_INVALID, :N_SYMBOLS] = np.log2(uni)  # lost context: back off to unigram
    return LanguageModel(uni, bi, start, cond_l2, redundancy, source_note)


def load_model(path, redundancy: float = DEFAULT_REDUNDANCY) -> LanguageModel:
    """Read a `token count` frequency file ('_' stands for space)."""
    uni = np.zeros(N_SYMBOLS)
    bi = np.zeros((N_SYMBOLS, N_SYMBOLS))
    note_lines = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                note_lines.append(line[1:].strip())
                continue
            tok, cnt = line.split()
            tok = tok.replace("_", " ")
            if len(tok) == 1:
                uni[ALPHABET.index(tok)] += int(cnt)
            elif len(tok) == 2:
                bi[ALPHABET.index(tok[0]), ALPHABET.index(tok[1])] += int(cnt)
            else:
                raise ValueError(f"bad token {tok!r} in {path}")
    return _model_from_counts(uni, bi, redundancy, "\n".join(note_lines))


_default_model: LanguageModel | None = None


def load_default_model(redundancy: float = DEFAULT_REDUNDANCY) -> LanguageModel:
    global _default_model
    if _default_model is None or _default_model.redundancy_bits_per_letter != redundancy:
        ref = resources.files("flatkey").joinpath("data/english_bigrams.txt")
        with resources.as_file(ref) as path:
            _default_model = load_model(path, redundancy)
    return _default_model


# -- scoring -----------------------------------------------------------


def plausibility_score(lm: LanguageModel, p: BitString) -> float:
    """Mean per-letter log2 likelihood; 0.0 for the empty string."""
    letters = _letters_array(p)
    if letters.size == 0:
        return 0.0
    letters = np.minimum(letters, _INVALID)
    total = lm.start_log2[letters[0]] + lm.cond_log2[letters[:-1], letters[1:]].sum()
    return float(total / letters.size)


def plausibility_score_batch(lm: LanguageModel, letters: np.ndarray) -> np.ndarray:
    """Score rows of an (N, L) array of 5-bit codes in one shot."""
    if letters.ndim != 2 or letters.shape[1] == 0:
        raise ValueError("need a non-empty (N, L) letter array")
    idx = np.minimum(letters, _INVALID)
    total = lm.start_log2[idx[:, 0]] + lm.cond_log2[idx[:, :-1], idx[:, 1:]].sum(axis=1)
    return total / idx.shape[1]


def letters_from_ints(values: np.ndarray, bit_len: int) -> np.ndarray:
    """Split an array of bit_len-bit integers into (N, L) 5-bit codes."""
    if bit_len % BITS_PER_LETTER != 0:
        raise ValueError(f"length {bit_len} is not a multiple of {BITS_PER_LETTER}")
    n_letters = bit_len // BITS_PER_LETTER
    shifts = [(n_letters - 1 - i) * BITS_PER_LETTER for i in range(n_letters)]
    vals = np.asarray(values, dtype=object) if bit_len > 63 else np.asarray(values, dtype=np.uint64)
    cols = [((vals >> np.uint64(s)) & np.uint64(0x1F)).astype(np.int64) if bit_len <= 63
            else np.array([(int(v) >> s) & 0x1F for v in vals], dtype=np.int64)
            for s in shifts]
    return np.stack(cols, axis=1)


def is_plausible(lm: LanguageModel, p: BitString, theta: float) -> bool:
    return plausibility_score(lm, p) >= theta


# -- calibration -------------------------------------------------------


@dataclass(frozen=True)
class CalibrationResult:
    theta: float
    english_mean: float
    english_std: float
    random_mean: float
    random_std: float
    english_pass_rate: float
    random_pass_rate: float
    letters: int
    samples: int


def sample_english(lm: LanguageModel, letters: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw English-like letter rows from the bigram chain, (n, letters)."""
    out = np.empty((n, letters), dtype=np.int64)
    cond = lm.bigram / lm.bigram.sum(axis=1, keepdims=True)
    cum_start = np.cumsum(lm.unigram)
    cum_cond = np.cumsum(cond, axis=1)
    u = rng.random((n, letters))
    out[:, 0] = np.searchsorted(cum_start, u[:, 0])
    for j in range(1, letters):
        rows = cum_cond[out[:, j - 1]]
        out[:, j] = (u[:, j : j + 1] > rows).sum(axis=1)
    return np.minimum(out, N_SYMBOLS - 1)


def calibrate_threshold(lm: LanguageModel, letters: int = 12, samples: int = 10_000,
                        seed: int = 0x5EED) -> CalibrationResult:
    """Fix theta at the midpoint of English-chain and random-string mean scores."""
    rng = np.random.default_rng(seed)
    eng = sample_english(lm, letters, samples, rng)
    rand = rng.integers(0, 32, size=(samples, letters), dtype=np.int64)
    eng_scores = plausibility_score_batch(lm, eng)
    rand_scores = plausibility_score_batch(lm, rand)
    theta = float((eng_scores.mean() + rand_scores.mean()) / 2.0)
    return CalibrationResult(
        theta=theta,
        english_mean=float(eng_scores.mean()),
        english_std=float(eng_scores.std()),
        random_mean=float(rand_scores.mean()),
        random_std=float(rand_scores.std()),
        english_pass_rate=float((eng_scores >= theta).mean()),
        random_pass_rate=float((rand_scores >= theta).mean()),
        letters=letters,
        samples=samples,
    )


# -- unicity -----------------------------------------------------------


def unicity_distance(key_entropy_bits: float, redundancy_bits_per_letter: float = DEFAULT_REDUNDANCY) -> float:
    """Ciphertext length in letters beyond which a trivial ciphertext commits: H(K)/D."""
    if key_entropy_bits <= 0 or redundancy_bits_per_letter <= 0:
        raise ValueError("key entropy and redundancy must both be positive")
    return key_entropy_bits / redundancy_bits_per_letter
