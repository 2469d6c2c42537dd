"""One wire stream, four complete messages, one per keybook.

Every plaintext is encrypted under its own independently generated
keybook, every unit is scrubbed until it reads as noise under all the
other books, and the streams are riffled together.  Whoever holds book j
decodes message j and sees everything else as channel noise; an attacker
who wrote down all four candidate messages in advance learns nothing
from the wire that was not on their list already.
"""

from flatkey.pdc import bitflip_decode, decoy_channel_recv, decoy_channel_send

MESSAGES = [
    "ATTACK AT DAWN",
    "HOLD THE BRIDGE",
    "RETREAT AT ONCE",
    "SEND MORE FOOD",
]

cc, books = decoy_channel_send(
    {"alphabet": "ABCDEFGHIJKLMNOPQRSTUVWXYZ ", "n_bits": 32,
     "max_strings_per_letter": 3, "h": 8},
    MESSAGES, seed=51)

print(f"combined ciphertext: {len(cc.units)} units of {cc.n_bits} bits, "
      f"{cc.n_streams} interleaved streams\n")

for j, book in enumerate(books):
    got = decoy_channel_recv(book, cc)
    marker = "genuine" if j == 0 else f"decoy {j}"
    print(f"  holder of book {j} ({marker:8s}) reads: {got!r}  "
          f"{'ok' if got == MESSAGES[j] else 'MISMATCH'}")

print("\nper-unit view for the genuine book (first 12 units):")
for i, unit in enumerate(cc.units[:12]):
    sym = bitflip_decode(books[0], unit)
    print(f"  unit {i:2d} {unit.hex_annotated():12} -> {sym if sym is not None else '(noise)'}")
