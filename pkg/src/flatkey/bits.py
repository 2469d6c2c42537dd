"""Fixed-length binary strings.

A BitString is an immutable sequence of 0/1 symbols with a definite length,
so leading zeros are significant.  Bit order is most-significant-first in
every textual rendering: position 0 of ``BitString.from_text("100")`` is 1.

Two text forms are accepted on parse:

* plain ASCII '0'/'1', optional whitespace ignored (``"1010 0110"``)
* annotated hex, ``"<bitlen>/<hex>"`` (``"8/a6"``), since bare hex cannot
  express leading zeros.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BitString",
    "parse_bitstring",
    "split_blocks",
    "join_blocks",
]

_HEX_FORM = re.compile(r"^(\d+)/([0-9a-fA-F]*)$")


@dataclass(frozen=True, slots=True)
class BitString:
    """An immutable bit sequence stored as (integer value, bit length)."""

    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError(f"negative length {self.length}")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value {self.value:#x} does not fit in {self.length} bits")

    # -- constructors --------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        bits = "".join(text.split())
        if bits and set(bits) - {"0", "1"}:
            raise ValueError(f"not a binary string: {text!r}")
        return cls(int(bits, 2) if bits else 0, len(bits))

    @classmethod
    def from_hex(cls, hex_digits: str, length: int) -> "BitString":
        value = int(hex_digits, 16) if hex_digits else 0
        return cls(value, length)

    @classmethod
    def from_bits(cls, bits) -> "BitString":
        v = 0
        n = 0
        for b in bits:
            b = int(b)
            if b not in (0, 1):
                raise ValueError(f"bit symbol must be 0 or 1, got {b}")
            v = (v << 1) | b
            n += 1
        return cls(v, n)

    @classmethod
    def zeros(cls, length: int) -> "BitString":
        return cls(0, length)

    @classmethod
    def ones(cls, length: int) -> "BitString":
        return cls((1 << length) - 1, length)

    @classmethod
    def random(cls, length: int, rng: np.random.Generator) -> "BitString":
        if length == 0:
            return cls(0, 0)
        # draw in 32-bit chunks so any length works
        v = 0
        remaining = length
        while remaining > 0:
            take = min(32, remaining)
            v = (v << take) | int(rng.integers(0, 1 << take))
            remaining -= take
        return cls(v, length)

    # -- views ---------------------------------------------------------

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i):
        if isinstance(i, slice):
            idx = range(self.length)[i]
            if idx.step != 1:
                raise ValueError("only contiguous slices are supported")
            return self.substring(idx.start, len(idx))
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> (self.length - 1 - i)) & 1

    def __iter__(self):
        for i in range(self.length):
            yield (self.value >> (self.length - 1 - i)) & 1

    def substring(self, start: int, n: int) -> "BitString":
        if not (0 <= start and start + n <= self.length):
            raise ValueError(f"substring [{start}, {start + n}) out of range")
        shift = self.length - start - n
        return BitString((self.value >> shift) & ((1 << n) - 1), n)

    def to01(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def hex_annotated(self) -> str:
        ndigits = (self.length + 3) // 4
        return f"{self.length}/{self.value:0{ndigits}x}" if self.length else "0/"

    def to_array(self) -> np.ndarray:
        """Bits as a uint8 vector, most significant first."""
        out = np.empty(self.length, dtype=np.uint8)
        v = self.value
        for i in range(self.length - 1, -1, -1):
            out[i] = v & 1
            v >>= 1
        return out

    def __str__(self) -> str:
        return self.to01()

    # -- bit algebra -----------------------------------------------------

    def __xor__(self, other: "BitString") -> "BitString":
        if self.length != other.length:
            raise ValueError("xor of unequal lengths")
        return BitString(self.value ^ other.value, self.length)

    def flip(self, i: int) -> "BitString":
        if not 0 <= i < self.length:
            raise IndexError(i)
        return BitString(self.value ^ (1 << (self.length - 1 - i)), self.length)

    def bit_count(self) -> int:
        return self.value.bit_count()

    def concat(self, other: "BitString") -> "BitString":
        return BitString((self.value << other.length) | other.value, self.length + other.length)


def parse_bitstring(text: str) -> BitString:
    """Parse either plain 0/1 text or annotated hex ``len/hex``."""
    stripped = text.strip()
    m = _HEX_FORM.match(stripped)
    if m:
        return BitString.from_hex(m.group(2), int(m.group(1)))
    return BitString.from_text(stripped)


def split_blocks(s: BitString, block_bits: int) -> list[BitString]:
    if s.length % block_bits != 0:
        raise ValueError(f"length {s.length} not a multiple of block size {block_bits}")
    return [s.substring(i, block_bits) for i in range(0, s.length, block_bits)]


def join_blocks(blocks) -> BitString:
    out = BitString(0, 0)
    for b in blocks:
        out = out.concat(b)
    return out
