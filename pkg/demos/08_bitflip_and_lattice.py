"""The pattern-devoid side: BitFlip and the polar lattice.

Both ciphers refuse the attacker every handle the search half of this
workbench exploits: the key material has secret size, each letter has
unboundedly many valid ciphertexts, and noise units are legitimate
traffic that only the keyholder can discard.  Watch the same message
survive a 70 percent noise channel untouched.
"""

import numpy as np

from flatkey.pdc import (
    bitflip_decode,
    bitflip_encode,
    bitflip_keygen,
    bitflip_noise,
    bitflip_recv,
    bitflip_send,
    lattice_decode,
    lattice_encode,
    lattice_keygen,
)

ALPHA = "ABCDEFGHIJKLMNOPQRSTUVWXYZ "
book = bitflip_keygen(ALPHA, n_bits=32, max_strings_per_letter=3, seed=41, h=8)
per_letter = sorted({len(v) for v in book.strings.values()})
print(f"bitflip keybook: {book.total_strings()} strings total, "
      f"{per_letter} strings per letter (counts are secret, sizes random)")

rng = np.random.default_rng(42)
enc1 = bitflip_encode(book, "E", rng)
enc2 = bitflip_encode(book, "E", rng)
print(f"two encodings of 'E': {enc1.hex_annotated()} and {enc2.hex_annotated()} "
      f"(never the same wire bytes)")
print(f"both decode to: {bitflip_decode(book, enc1)}, {bitflip_decode(book, enc2)}")

noise = bitflip_noise(book, rng)
print(f"a noise unit {noise.hex_annotated()} decodes to: {bitflip_decode(book, noise)}")

msg = "MEET AT THE OLD BRIDGE"
units = bitflip_send(book, msg, rng, noise_rate=0.7)
print(f"\nsent {msg!r} as {len(units)} units ({len(units) - len(msg)} of them pure noise)")
print(f"receiver reads: {bitflip_recv(book, units)!r}")

print("\npolar lattice: random walks between secret endpoint pairs")
lat = lattice_keygen(ALPHA, circles=4, rays=6, seed=43)
print(f"  geometry: {lat.circles} circles, {lat.rays} rays, extents {lat.extent}")
for _ in range(3):
    p = lattice_encode(lat, "K", max_len=20, rng=rng)
    print(f"  'K' as {''.join(p.steps):22} from ray {p.origin.ray}, circle {p.origin.circle}"
          f" -> decodes {lattice_decode(lat, p)}")
word = "SECRET"
paths = [lattice_encode(lat, ch, 20, rng) for ch in word]
print(f"  {word!r} round trips: {''.join(lattice_decode(lat, p) for p in paths)!r}")
