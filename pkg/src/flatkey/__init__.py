"""flatkey: a desk-scale cryptanalysis workbench.

Measures how far toy ciphers are from the flat-key-space ideal (distance
metrics, avalanche statistics, key-scatter datasets), runs plain and
ranker-accelerated brute-force key searches against them, and implements
pattern-devoid defense channels (BitFlip, polar lattice, decoy streams)
so attack and defense can be compared on one bench.
"""

from .bits import BitString, join_blocks, parse_bitstring, split_blocks
from .metrics import (
    Distance,
    MetricId,
    default_metric_suite,
    hamming,
    metric_eval,
    q_summarize,
    q_summary_distance,
    sphere_size,
)
from .ciphers import (
    CipherSpec,
    KeySpace,
    decrypt,
    decrypt_blocks,
    encrypt,
    encrypt_blocks,
    keyspace_enumerate,
    speck32_64,
    spn_spec,
)

__version__ = "0.1.0"
