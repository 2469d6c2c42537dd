"""Bitstrings and the distance-metric suite.

BitString is the substrate everything else works on: fixed length, so
leading zeros count, most-significant bit first.  Eight distances are
available; the iterated majority summary is the interesting one, since
two strings can converge to the same summary after a few rounds (a small
round count meaning "close") or never converge at all.
"""

import numpy as np

from flatkey import BitString, default_metric_suite, metric_eval, q_summarize, sphere_size
from flatkey.metrics import q_summary_distance

x = BitString.from_text("0011 1010 0110 1001")
y = BitString.from_text("1011 1010 0110 1000")
print(f"x = {x}  ({x.hex_annotated()})")
print(f"y = {y}  ({y.hex_annotated()})")

print("\ndistances under the full suite:")
for metric in default_metric_suite():
    d = metric_eval(metric, x, y)
    tag = "" if d.finite else "  (never converges)"
    print(f"  {str(metric):12s} {d.value:8.4f}{tag}")

print("\niterated 3-bit majority summary:")
s = BitString.from_text("101011001")
print(f"  {s} -> {q_summarize(s, 3)} -> {q_summarize(q_summarize(s, 3), 3)}")

a, b = BitString.from_text("111111111"), BitString.from_text("111111110")
print(f"  summary distance({a}, {b}) = {q_summary_distance(a, b, 3)}")
a, b = BitString.from_text("0"), BitString.from_text("1")
print(f"  summary distance({a}, {b}) = {q_summary_distance(a, b, 3)}  <- divergence sentinel")

print("\nhow many 16-bit strings sit at each Hamming distance from a fixed string:")
for h in (0, 1, 2, 4, 8, 12, 16):
    print(f"  h={h:2d}: {sphere_size(16, h):6d}")
print(f"  total over all h: {sum(sphere_size(16, h) for h in range(17))} = 2^16")

rng = np.random.default_rng(1)
trip = [BitString.random(24, rng) for _ in range(3)]
from flatkey import hamming
d01, d12, d02 = hamming(trip[0], trip[1]), hamming(trip[1], trip[2]), hamming(trip[0], trip[2])
print(f"\ntriangle inequality spot check: {d02} <= {d01} + {d12}")
