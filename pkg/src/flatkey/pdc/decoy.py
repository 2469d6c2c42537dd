"""Decoy channel: one wire stream, a different full message per key.

n plaintexts are encoded under n independently generated BitFlip
keybooks.  Every unit of every stream is sanitized pairwise: it must
decode to None under every OTHER keybook (re-encoded with fresh
randomness until it does), so each key holder sees their own message and
pure noise everywhere else.  The sanitized streams are then riffled
together in seeded-random order, preserving each stream's internal
order, which is all the receiver needs: decode every unit, drop the
Nones, read the survivors in wire order.

BitFlip is the channel primitive because its decoder already classifies
alien units as noise for free; that silent-ignore property is exactly
what lets decoys coexist.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..bits import BitString
from .bitflip import BitFlipKeyBook, bitflip_decode, bitflip_encode, bitflip_keygen

__all__ = ["CombinedCiphertext", "decoy_channel_send", "decoy_channel_recv"]

SANITIZE_BUDGET = 10_000


@dataclass(frozen=True)
class CombinedCiphertext:
    units: tuple[BitString, ...]
    n_bits: int
    n_streams: int


def _sanitized_unit(books: list[BitFlipKeyBook], i: int, sym: str, rng: np.random.Generator) -> BitString:
    for _ in range(SANITIZE_BUDGET):
        s = bitflip_encode(books[i], sym, rng)
        if all(bitflip_decode(b, s) is None for j, b in enumerate(books) if j != i):
            return s
    raise RuntimeError(f"could not sanitize a unit of stream {i} against the other keybooks")


def decoy_channel_send(books, plaintexts, seed: int) -> CombinedCiphertext:
    """Combine n plaintext streams into one ciphertext, one keybook each.

    ``books`` is either a list of ready keybooks (one per plaintext) or a
    dict of keygen parameters (alphabet, n_bits, max_strings_per_letter,
    optionally h) from which per-stream books are derived off ``seed``.
    The first plaintext is the genuine message by convention, but the
    construction is symmetric: every keybook reads its own plaintext.
    """
    plaintexts = list(plaintexts)
    if len(plaintexts) < 2:
        raise ValueError("a decoy channel needs at least 2 plaintexts")
    rng = np.random.default_rng(seed)
    if isinstance(books, dict):
        params = dict(books)
        books = [bitflip_keygen(seed=int(rng.integers(0, 2**63)), **params) for _ in plaintexts]
    else:
        books = list(books)
    if len(books) != len(plaintexts):
        raise ValueError("need exactly one keybook per plaintext")
    n_bits = {b.n_bits for b in books}
    if len(n_bits) != 1:
        raise ValueError("all keybooks must share one unit size")

    streams: list[list[BitString]] = []
    for i, (book, text) in enumerate(zip(books, plaintexts)):
        streams.append([_sanitized_unit(books, i, sym, rng) for sym in text])

    # riffle: random interleaving that preserves each stream's order
    ids = np.concatenate([np.full(len(s), i) for i, s in enumerate(streams)])
    ids = ids[rng.permutation(len(ids))]
    cursors = [0] * len(streams)
    combined: list[BitString] = []
    for i in ids:
        combined.append(streams[i][cursors[i]])
        cursors[i] += 1
    return CombinedCiphertext(tuple(combined), n_bits.pop(), len(streams)), books


def decoy_channel_recv(book: BitFlipKeyBook, cc: CombinedCiphertext) -> str:
    """Decode the combined stream under one keybook; aliens drop as noise."""
    out = []
    for u in cc.units:
        sym = bitflip_decode(book, u)
        if sym is not None:
            out.append(sym)
    return "".join(out)
