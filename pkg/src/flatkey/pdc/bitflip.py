"""The BitFlip letter cipher.

Every letter owns a random number of random key strings (the keybook).
To send letter a, pick one of its key strings k and transmit any string
s at Hamming distance exactly h from k, subject to the confusion test:
s must NOT sit at distance h from any key string of any other letter.
The receiver decodes by distance: exactly one letter hitting distance h
reads as that letter, anything else is noise and is dropped.  Noise can
therefore be injected unilaterally by the transmitter at any rate.

All strings in one book share a fixed bit length n_bits (Hamming
distance needs equal lengths); the secrecy of the total key material
size survives at the book level because string counts per letter are
random.  h defaults to n_bits/2, which maximizes the sphere of valid
ciphertexts per key string, but small h is the practical choice for
large alphabets: the confusion test must have room to pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..bits import BitString, parse_bitstring

__all__ = [
    "BitFlipKeyBook",
    "bitflip_keygen",
    "bitflip_encode",
    "bitflip_decode",
    "bitflip_noise",
    "bitflip_send",
    "bitflip_recv",
    "write_keybook",
    "read_keybook",
]

RETRY_BUDGET = 10_000


@dataclass(frozen=True)
class BitFlipKeyBook:
    alphabet: tuple[str, ...]
    n_bits: int
    h: int
    strings: dict[str, tuple[BitString, ...]]
    seed: int = 0
    # flat views for vectorized distance checks
    _values: np.ndarray = field(init=False, repr=False, compare=False)
    _letters: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 0 < self.h < self.n_bits:
            raise ValueError(f"h={self.h} must satisfy 0 < h < {self.n_bits}")
        if set(self.strings) != set(self.alphabet):
            raise ValueError("strings must cover exactly the alphabet")
        vals: list[int] = []
        lets: list[int] = []
        for idx, sym in enumerate(self.alphabet):
            if not self.strings[sym]:
                raise ValueError(f"letter {sym!r} has no key strings")
            for s in self.strings[sym]:
                if s.length != self.n_bits:
                    raise ValueError("all key strings must share n_bits")
                vals.append(s.value)
                lets.append(idx)
        if len(set(vals)) != len(vals):
            raise ValueError("key strings must be distinct across the whole book")
        object.__setattr__(self, "_values", np.array(vals, dtype=np.uint64))
        object.__setattr__(self, "_letters", np.array(lets, dtype=np.int64))

    def total_strings(self) -> int:
        return len(self._values)


def bitflip_keygen(alphabet, n_bits: int, max_strings_per_letter: int, seed: int,
                   h: int | None = None) -> BitFlipKeyBook:
    """Random keybook: each letter gets 1..max distinct strings of n_bits."""
    alphabet = tuple(alphabet)
    if n_bits % 2 != 0:
        raise ValueError("n_bits must be even so the default h = n_bits/2 is whole")
    if max_strings_per_letter < 1:
        raise ValueError("max_strings_per_letter must be >= 1")
    if len(alphabet) > (1 << n_bits):
        raise ValueError(f"alphabet of {len(alphabet)} letters exceeds 2^{n_bits} distinct strings")
    if len(set(alphabet)) != len(alphabet):
        raise ValueError("alphabet symbols must be distinct")
    rng = np.random.default_rng(seed)
    counts = [int(rng.integers(1, max_strings_per_letter + 1)) for _ in alphabet]
    if sum(counts) > (1 << n_bits):
        raise ValueError("requested key material exceeds the distinct-string capacity")
    used: set[int] = set()
    strings: dict[str, tuple[BitString, ...]] = {}
    for sym, cnt in zip(alphabet, counts):
        mine: list[BitString] = []
        attempts = 0
        while len(mine) < cnt:
            attempts += 1
            if attempts > RETRY_BUDGET:
                raise RuntimeError("keybook too dense: cannot draw distinct strings")
            v = BitString.random(n_bits, rng)
            if v.value not in used:
                used.add(v.value)
                mine.append(v)
        strings[sym] = tuple(mine)
    return BitFlipKeyBook(alphabet, n_bits, h if h is not None else n_bits // 2, strings, seed)


def _sphere_sample(k: BitString, h: int, rng: np.random.Generator) -> BitString:
    pos = rng.choice(k.length, size=h, replace=False)
    v = k.value
    for p in pos:
        v ^= 1 << (k.length - 1 - int(p))
    return BitString(v, k.length)


def _distances(book: BitFlipKeyBook, s: BitString) -> np.ndarray:
    return np.bitwise_count(book._values ^ np.uint64(s.value))


def bitflip_encode(book: BitFlipKeyBook, sym: str, rng) -> BitString:
    """Transmitter side: a distance-h string passing the confusion test.

    ``rng`` is a numpy Generator or an int seed.  Raises after the retry
    budget if the keybook is too dense for any confusion-free string to
    exist at distance h from the chosen key string.
    """
    if sym not in book.strings:
        raise KeyError(f"{sym!r} not in alphabet")
    rng = np.random.default_rng(rng) if isinstance(rng, (int, np.integer)) else rng
    own = book.strings[sym]
    k = own[int(rng.integers(0, len(own)))]
    sym_idx = book.alphabet.index(sym)
    for _ in range(RETRY_BUDGET):
        s = _sphere_sample(k, book.h, rng)
        d = _distances(book, s)
        confused = ((d == book.h) & (book._letters != sym_idx)).any()
        if not confused:
            return s
    raise RuntimeError(f"confusion test never passed for {sym!r}: keybook too dense")


def bitflip_decode(book: BitFlipKeyBook, s: BitString) -> str | None:
    """Receiver side: the unique letter at distance h, else None (noise)."""
    if s.length != book.n_bits:
        raise ValueError(f"unit is {s.length} bits, book uses {book.n_bits}")
    hits = np.unique(book._letters[_distances(book, s) == book.h])
    if len(hits) == 1:
        return book.alphabet[int(hits[0])]
    return None


def bitflip_noise(book: BitFlipKeyBook, rng) -> BitString:
    """A string at distance h from no key string at all; decodes to None."""
    rng = np.random.default_rng(rng) if isinstance(rng, (int, np.integer)) else rng
    for _ in range(RETRY_BUDGET):
        s = BitString.random(book.n_bits, rng)
        if not (_distances(book, s) == book.h).any():
            return s
    raise RuntimeError("noise generation exhausted retries: keybook too dense")


def bitflip_send(book: BitFlipKeyBook, text, rng, noise_rate: float = 0.0) -> list[BitString]:
    """Encode a letter sequence, interleaving noise units at the given rate."""
    rng = np.random.default_rng(rng) if isinstance(rng, (int, np.integer)) else rng
    if not 0.0 <= noise_rate < 1.0:
        raise ValueError("noise_rate must be in [0, 1)")
    units: list[BitString] = []
    for sym in text:
        while noise_rate > 0 and rng.random() < noise_rate:
            units.append(bitflip_noise(book, rng))
        units.append(bitflip_encode(book, sym, rng))
    if noise_rate > 0:
        while rng.random() < noise_rate:
            units.append(bitflip_noise(book, rng))
    return units


def bitflip_recv(book: BitFlipKeyBook, units) -> str:
    """Decode a unit stream, dropping everything that reads as noise."""
    out = []
    for u in units:
        sym = bitflip_decode(book, u)
        if sym is not None:
            out.append(sym)
    return "".join(out)


# -- keybook file format -------------------------------------------------


def write_keybook(book: BitFlipKeyBook, path) -> None:
    # the space letter is written as '_' so the format survives stripping
    with open(path, "w") as fh:
        fh.write("# bitflip keybook\n")
        fh.write(f"n_bits = {book.n_bits}\n")
        fh.write(f"h = {book.h}\n")
        fh.write(f"alphabet = {''.join(book.alphabet).replace(' ', '_')}\n")
        for sym in book.alphabet:
            hexes = " ".join(s.hex_annotated() for s in book.strings[sym])
            fh.write(f"{sym.replace(' ', '_')}: {hexes}\n")


def read_keybook(path) -> BitFlipKeyBook:
    n_bits = h = None
    alphabet: tuple[str, ...] = ()
    strings: dict[str, tuple[BitString, ...]] = {}
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if "=" in line and ":" not in line.split("=", 1)[0]:
                key, val = (part.strip() for part in line.split("=", 1))
                if key == "n_bits":
                    n_bits = int(val)
                elif key == "h":
                    h = int(val)
                elif key == "alphabet":
                    alphabet = tuple(val.replace("_", " "))
                continue
            sym, rest = line.split(":", 1)
            sym = sym.strip().replace("_", " ")
            strings[sym] = tuple(parse_bitstring(tok) for tok in rest.split())
    if n_bits is None or h is None or not alphabet:
        raise ValueError(f"incomplete keybook header in {path}")
    return BitFlipKeyBook(alphabet, n_bits, h, strings)
