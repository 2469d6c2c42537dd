"""Pattern-devoid defense ciphers.

BitFlip and the polar lattice hide letters behind transmitter-side
randomness: many ciphertexts encode the same letter, noise units are
indistinguishable from content to anyone without the key material, and
the total key size is not derivable from the wire.  The decoy channel
layers several BitFlip streams so every key holder reads a different,
complete message out of one combined ciphertext.

All algorithms here are public; only keybooks and letter maps are
secret.
"""

from .bitflip import (
    BitFlipKeyBook,
    bitflip_decode,
    bitflip_encode,
    bitflip_keygen,
    bitflip_noise,
    bitflip_recv,
    bitflip_send,
    read_keybook,
    write_keybook,
)
from .lattice import (
    Path,
    Point,
    PolarLattice,
    lattice_decode,
    lattice_encode,
    lattice_keygen,
    read_lattice,
    replay_path,
    write_lattice,
)
from .decoy import CombinedCiphertext, decoy_channel_recv, decoy_channel_send
from .wire import pack_units, unpack_units

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
    "PolarLattice",
    "Point",
    "Path",
    "lattice_keygen",
    "lattice_encode",
    "lattice_decode",
    "replay_path",
    "write_lattice",
    "read_lattice",
    "CombinedCiphertext",
    "decoy_channel_send",
    "decoy_channel_recv",
    "pack_units",
    "unpack_units",
]
