"""Binary framing for channel streams.

A stream is a sequence of length-prefixed units.  Each unit is

    u16 payload_length | u8 tag | payload

with tag 0 = bitstring unit, tag 1 = path unit.  A bitstring payload is
a u16 bit length followed by the bits packed most-significant-first; a
path payload is u16 origin ray, u16 origin circle, u16 step count, then
the steps packed 2 bits each (U=00, D=01, L=10, R=11), zero padded.
All integers are big-endian.
"""

from __future__ import annotations

import struct

from ..bits import BitString
from .lattice import Path, Point

__all__ = ["pack_units", "unpack_units", "TAG_BITS", "TAG_PATH"]

TAG_BITS = 0
TAG_PATH = 1

_STEP_CODE = {"U": 0, "D": 1, "L": 2, "R": 3}
_CODE_STEP = {v: k for k, v in _STEP_CODE.items()}


def _pack_bitstring(s: BitString) -> bytes:
    nbytes = (s.length + 7) // 8
    body = (s.value << (nbytes * 8 - s.length)).to_bytes(nbytes, "big") if s.length else b""
    return struct.pack(">H", s.length) + body


def _unpack_bitstring(payload: bytes) -> BitString:
    (bitlen,) = struct.unpack(">H", payload[:2])
    nbytes = (bitlen + 7) // 8
    raw = int.from_bytes(payload[2 : 2 + nbytes], "big")
    return BitString(raw >> (nbytes * 8 - bitlen) if bitlen else 0, bitlen)


def _pack_path(p: Path) -> bytes:
    head = struct.pack(">HHH", p.origin.ray, p.origin.circle, len(p.steps))
    acc = 0
    for s in p.steps:
        acc = (acc << 2) | _STEP_CODE[s]
    nbits = 2 * len(p.steps)
    nbytes = (nbits + 7) // 8
    body = (acc << (nbytes * 8 - nbits)).to_bytes(nbytes, "big") if nbits else b""
    return head + body


def _unpack_path(payload: bytes) -> Path:
    ray, circle, nsteps = struct.unpack(">HHH", payload[:6])
    nbits = 2 * nsteps
    nbytes = (nbits + 7) // 8
    raw = int.from_bytes(payload[6 : 6 + nbytes], "big")
    raw >>= nbytes * 8 - nbits if nbits else 0
    steps = []
    for i in range(nsteps):
        code = (raw >> (2 * (nsteps - 1 - i))) & 0b11
        steps.append(_CODE_STEP[code])
    return Path(Point(ray, circle), tuple(steps))


def pack_units(units) -> bytes:
    """Serialize a mixed sequence of BitString and Path units."""
    out = bytearray()
    for u in units:
        if isinstance(u, BitString):
            payload = _pack_bitstring(u)
            tag = TAG_BITS
        elif isinstance(u, Path):
            payload = _pack_path(u)
            tag = TAG_PATH
        else:
            raise TypeError(f"unit must be BitString or Path, got {type(u).__name__}")
        out += struct.pack(">HB", len(payload), tag)
        out += payload
    return bytes(out)


def unpack_units(data: bytes) -> list:
    units = []
    pos = 0
    while pos < len(data):
        if pos + 3 > len(data):
            raise ValueError("truncated unit header")
        length, tag = struct.unpack(">HB", data[pos : pos + 3])
        pos += 3
        payload = data[pos : pos + length]
        if len(payload) != length:
            raise ValueError("truncated unit payload")
        pos += length
        if tag == TAG_BITS:
            units.append(_unpack_bitstring(payload))
        elif tag == TAG_PATH:
            units.append(_unpack_path(payload))
        else:
            raise ValueError(f"unknown unit tag {tag}")
    return units
