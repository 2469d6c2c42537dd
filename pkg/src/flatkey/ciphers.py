"""Keyed toy block ciphers used as public attack targets.

Two families:

* ``spn`` -- a 16-bit-block / 16-bit-key substitution-permutation network
  in the classic classroom construction: per-round key XOR, four parallel
  4-bit s-boxes, a bit permutation.  The round count is the avalanche
  knob: at 1 round the decryption's final key XOR sits directly against
  the plaintext, so plaintext distance tracks key distance exactly; at
  4+ rounds no measurable correlation survives.  A 2^16 key space makes
  full enumeration a sub-second oracle.

* ``arx`` -- Speck32/64 (add-rotate-xor, 32-bit block, 64-bit key,
  22 rounds at full strength), parameterized by round count.  The full
  round version is checked against the designers' published test vector,
  which gives an external correctness anchor before any round reduction.

Key schedule for the spn: round key i = rotl16(K, i) XOR RC[i] with
RC[i] = 0x9e37 * i mod 2^16.  There is deliberately no key-dependent
output whitening: a whitened last round would push key differences
through the inverse s-layer, which washes out the single-round leak the
workbench needs as its weak target.  RC[0] = 0, so the fully degenerate
cipher (1 round, identity boxes, zero key) is the identity map, which
makes hand verification possible in tests.

Both families also expose vectorized batch encrypt/decrypt over numpy
integer arrays; the scalar operations are thin wrappers.  All functions
are pure, specs are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bits import BitString, join_blocks, parse_bitstring, split_blocks

__all__ = [
    "CipherSpec",
    "KeySpace",
    "DEFAULT_SBOX",
    "DEFAULT_PBOX",
    "spn_spec",
    "speck32_64",
    "encrypt",
    "decrypt",
    "encrypt_blocks",
    "decrypt_blocks",
    "encrypt_batch",
    "decrypt_batch",
    "decrypt_blocks_batch",
    "keyspace_enumerate",
    "spec_to_config",
    "spec_from_config",
    "write_test_vectors",
    "read_test_vectors",
]

# classroom s-box / permutation (Heys' tutorial SPN)
DEFAULT_SBOX = (0xE, 0x4, 0xD, 0x1, 0x2, 0xF, 0xB, 0x8, 0x3, 0xA, 0x6, 0xC, 0x5, 0x9, 0x0, 0x7)
DEFAULT_PBOX = (0, 4, 8, 12, 1, 5, 9, 13, 2, 6, 10, 14, 3, 7, 11, 15)

SPECK_FULL_ROUNDS = 22
_SPECK_ALPHA = 7
_SPECK_BETA = 2
_MASK16 = 0xFFFF


@dataclass(frozen=True)
class CipherSpec:
    family: str
    block_bits: int
    key_bits: int
    rounds: int
    sbox: tuple[int, ...] | None = None
    pbox: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.family not in ("spn", "arx"):
            raise ValueError(f"unknown cipher family {self.family!r}")
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if self.family == "spn":
            if (self.block_bits, self.key_bits) != (16, 16):
                raise ValueError("spn is fixed at 16-bit block and key")
            if self.sbox is None or sorted(self.sbox) != list(range(16)):
                raise ValueError("sbox must be a bijection on 0..15")
            if self.pbox is None or sorted(self.pbox) != list(range(self.block_bits)):
                raise ValueError(f"pbox must be a permutation of 0..{self.block_bits - 1}")
        else:
            if (self.block_bits, self.key_bits) != (32, 64):
                raise ValueError("arx is fixed at 32-bit block and 64-bit key")
            if self.rounds > SPECK_FULL_ROUNDS:
                raise ValueError(f"arx rounds capped at {SPECK_FULL_ROUNDS}")
            if self.sbox is not None or self.pbox is not None:
                raise ValueError("arx takes no sbox/pbox")


def spn_spec(rounds: int = 4, sbox=DEFAULT_SBOX, pbox=DEFAULT_PBOX) -> CipherSpec:
    return CipherSpec("spn", 16, 16, rounds, tuple(sbox), tuple(pbox))


def speck32_64(rounds: int = SPECK_FULL_ROUNDS) -> CipherSpec:
    return CipherSpec("arx", 32, 64, rounds)


@dataclass(frozen=True)
class KeySpace:
    key_bits: int

    @property
    def size(self) -> int:
        return 1 << self.key_bits


def keyspace_enumerate(ks: KeySpace, start: int, count: int) -> list[BitString]:
    """Keys for integer indices [start, start+count) in counting order."""
    if start < 0 or count < 0 or start + count > ks.size:
        raise ValueError(f"range [{start}, {start + count}) overflows 2^{ks.key_bits} keys")
    return [BitString(i, ks.key_bits) for i in range(start, start + count)]


# -- spn internals -----------------------------------------------------


def _rotl16(v: int, r: int) -> int:
    r %= 16
    return ((v << r) | (v >> (16 - r))) & _MASK16


def _spn_round_constant(i: int) -> int:
    return (0x9E37 * i) & _MASK16


def _spn_round_keys(key: int, rounds: int) -> list[int]:
    return [_rotl16(key, i) ^ _spn_round_constant(i) for i in range(rounds)]


@lru_cache(maxsize=16)
def _spn_tables(sbox: tuple[int, ...], pbox: tuple[int, ...]):
    """Precomputed 16-bit lookup tables for the s-layer, p-layer, and inverses."""
    inv_sbox = [0] * 16
    for i, v in enumerate(sbox):
        inv_sbox[v] = i
    s_lut = np.empty(1 << 16, dtype=np.uint16)
    si_lut = np.empty(1 << 16, dtype=np.uint16)
    p_lut = np.zeros(1 << 16, dtype=np.uint16)
    pi_lut = np.zeros(1 << 16, dtype=np.uint16)
    vals = np.arange(1 << 16, dtype=np.uint32)
    sb = np.array(sbox, dtype=np.uint32)
    isb = np.array(inv_sbox, dtype=np.uint32)
    acc_s = np.zeros(1 << 16, dtype=np.uint32)
    acc_si = np.zeros(1 << 16, dtype=np.uint32)
    for nib in range(4):
        shift = 4 * nib
        piece = (vals >> shift) & 0xF
        acc_s |= sb[piece] << shift
        acc_si |= isb[piece] << shift
    s_lut[:] = acc_s
    si_lut[:] = acc_si
    # bit i (MSB-first position) moves to position pbox[i]
    acc_p = np.zeros(1 << 16, dtype=np.uint32)
    acc_pi = np.zeros(1 << 16, dtype=np.uint32)
    for i, j in enumerate(pbox):
        src = (vals >> (15 - i)) & 1
        acc_p |= src << (15 - j)
        back = (vals >> (15 - j)) & 1
        acc_pi |= back << (15 - i)
    p_lut[:] = acc_p
    pi_lut[:] = acc_pi
    return s_lut, si_lut, p_lut, pi_lut


def _spn_round_key_batch(k: np.ndarray, i: int) -> np.ndarray:
    k32 = k.astype(np.uint32)
    rot = ((k32 << (i % 16)) | (k32 >> ((16 - i) % 16))) & _MASK16
    return (rot ^ _spn_round_constant(i)).astype(np.uint16)


def _spn_encrypt_batch(spec: CipherSpec, p: np.ndarray, k: np.ndarray) -> np.ndarray:
    s_lut, _, p_lut, _ = _spn_tables(spec.sbox, spec.pbox)
    state = p.astype(np.uint16, copy=True)
    for i in range(spec.rounds):
        state ^= _spn_round_key_batch(k, i)
        state = s_lut[state]
        state = p_lut[state]
    return state


def _spn_decrypt_batch(spec: CipherSpec, c: np.ndarray, k: np.ndarray) -> np.ndarray:
    _, si_lut, _, pi_lut = _spn_tables(spec.sbox, spec.pbox)
    state = c.astype(np.uint16, copy=True)
    for i in range(spec.rounds - 1, -1, -1):
        state = pi_lut[state]
        state = si_lut[state]
        state ^= _spn_round_key_batch(k, i)
    return state


# -- speck internals ---------------------------------------------------


def _ror16(x: np.ndarray, r: int) -> np.ndarray:
    return ((x >> r) | (x << (16 - r))) & np.uint32(_MASK16)


def _rol16(x: np.ndarray, r: int) -> np.ndarray:
    return ((x << r) | (x >> (16 - r))) & np.uint32(_MASK16)


def _speck_round_keys(key: np.ndarray, rounds: int) -> list[np.ndarray]:
    """Per-key round keys; key is a uint64 array of master keys."""
    key = key.astype(np.uint64)
    k = (key & np.uint64(_MASK16)).astype(np.uint32)
    l = [((key >> np.uint64(16 * (i + 1))) & np.uint64(_MASK16)).astype(np.uint32) for i in range(3)]
    rks = [k]
    for i in range(rounds - 1):
        new_l = ((_ror16(l[0], _SPECK_ALPHA) + rks[-1]) & np.uint32(_MASK16)) ^ np.uint32(i)
        new_k = _rol16(rks[-1], _SPECK_BETA) ^ new_l
        l = [l[1], l[2], new_l]
        rks.append(new_k)
    return rks


def _speck_encrypt_batch(spec: CipherSpec, p: np.ndarray, k: np.ndarray) -> np.ndarray:
    rks = _speck_round_keys(k, spec.rounds)
    p = p.astype(np.uint32)
    x = (p >> 16) & np.uint32(_MASK16)
    y = p & np.uint32(_MASK16)
    for rk in rks:
        x = ((_ror16(x, _SPECK_ALPHA) + y) & np.uint32(_MASK16)) ^ rk
        y = _rol16(y, _SPECK_BETA) ^ x
    return (x << np.uint32(16)) | y


def _speck_decrypt_batch(spec: CipherSpec, c: np.ndarray, k: np.ndarray) -> np.ndarray:
    rks = _speck_round_keys(k, spec.rounds)
    c = c.astype(np.uint32)
    x = (c >> 16) & np.uint32(_MASK16)
    y = c & np.uint32(_MASK16)
    for rk in reversed(rks):
        y = _ror16(y ^ x, _SPECK_BETA)
        x = _rol16(((x ^ rk) - y) & np.uint32(_MASK16), _SPECK_ALPHA)
    return (x << np.uint32(16)) | y


# -- public surface ----------------------------------------------------


def encrypt_batch(spec: CipherSpec, p: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Vectorized single-block encryption of plaintext/key integer arrays."""
    if spec.family == "spn":
        return _spn_encrypt_batch(spec, np.asarray(p), np.asarray(k))
    return _speck_encrypt_batch(spec, np.asarray(p), np.asarray(k))


def decrypt_batch(spec: CipherSpec, c: np.ndarray, k: np.ndarray) -> np.ndarray:
    if spec.family == "spn":
        return _spn_decrypt_batch(spec, np.asarray(c), np.asarray(k))
    return _speck_decrypt_batch(spec, np.asarray(c), np.asarray(k))


def _check_block(spec: CipherSpec, s: BitString, what: str) -> None:
    if s.length != spec.block_bits:
        raise ValueError(f"{what} is {s.length} bits, block size is {spec.block_bits}")


def _check_key(spec: CipherSpec, k: BitString) -> None:
    if k.length != spec.key_bits:
        raise ValueError(f"key is {k.length} bits, key size is {spec.key_bits}")


def encrypt(spec: CipherSpec, p: BitString, k: BitString) -> BitString:
    _check_block(spec, p, "plaintext")
    _check_key(spec, k)
    out = encrypt_batch(spec, np.array([p.value], dtype=np.uint64), np.array([k.value], dtype=np.uint64))
    return BitString(int(out[0]), spec.block_bits)


def decrypt(spec: CipherSpec, c: BitString, k: BitString) -> BitString:
    _check_block(spec, c, "ciphertext")
    _check_key(spec, k)
    out = decrypt_batch(spec, np.array([c.value], dtype=np.uint64), np.array([k.value], dtype=np.uint64))
    return BitString(int(out[0]), spec.block_bits)


def encrypt_blocks(spec: CipherSpec, p: BitString, k: BitString) -> BitString:
    """ECB over a message that is a whole number of blocks."""
    return join_blocks(encrypt(spec, b, k) for b in split_blocks(p, spec.block_bits))


def decrypt_blocks(spec: CipherSpec, c: BitString, k: BitString) -> BitString:
    return join_blocks(decrypt(spec, b, k) for b in split_blocks(c, spec.block_bits))


def decrypt_blocks_batch(spec: CipherSpec, c: BitString, keys: np.ndarray) -> list[np.ndarray]:
    """Decrypt every block of c under every key; one integer array per block."""
    return [decrypt_batch(spec, np.full(len(keys), b.value, dtype=np.uint64), keys)
            for b in split_blocks(c, spec.block_bits)]


# -- serialization -----------------------------------------------------


def spec_to_config(spec: CipherSpec) -> dict[str, str]:
    cfg = {"family": spec.family, "rounds": str(spec.rounds)}
    if spec.family == "spn":
        cfg["sbox"] = "".join(f"{v:x}" for v in spec.sbox)
        cfg["pbox"] = ",".join(str(v) for v in spec.pbox)
    return cfg


def spec_from_config(cfg: dict[str, str]) -> CipherSpec:
    family = cfg["family"].strip().lower()
    rounds = int(cfg["rounds"])
    if family == "spn":
        sbox = tuple(int(ch, 16) for ch in cfg.get("sbox", "").strip()) if cfg.get("sbox") else DEFAULT_SBOX
        pbox = tuple(int(v) for v in cfg["pbox"].split(",")) if cfg.get("pbox") else DEFAULT_PBOX
        return CipherSpec("spn", 16, 16, rounds, sbox, pbox)
    if family == "arx":
        return speck32_64(rounds)
    raise ValueError(f"unknown cipher family {family!r}")


def write_test_vectors(path, spec: CipherSpec, triples) -> None:
    """Lines of key,plaintext,ciphertext in annotated hex."""
    with open(path, "w") as fh:
        fh.write(f"# {spec.family} rounds={spec.rounds} test vectors\n")
        for k, p, c in triples:
            fh.write(f"{k.hex_annotated()},{p.hex_annotated()},{c.hex_annotated()}\n")


def read_test_vectors(path) -> list[tuple[BitString, BitString, BitString]]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            k, p, c = (parse_bitstring(part) for part in line.split(","))
            out.append((k, p, c))
    return out
