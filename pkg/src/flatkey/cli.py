"""Command-line front end.

Exit codes: 0 success, 1 configuration error, 2 runtime failure.
The output directory may also come from the FLATKEY_OUT environment
variable; no other setting has an environment override.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

import numpy as np

from .bits import BitString, parse_bitstring
from .ciphers import spn_spec, speck32_64, encrypt_blocks
from .lang import calibrate_threshold, encode_text, decode_text, load_default_model, unicity_distance
from .metrics import MetricId
from .recipes import ConfigError, default_config, derive_seed, list_recipes, load_config, run_experiment
from .search import (
    KnownPlaintextStop,
    PlausibleSet,
    PlausibleStop,
    ai2_search,
    blind_bruteforce,
    reverse_avalanche_series,
    write_trace_csv,
)
from .rankers import builtin_rankers
from .pdc import (
    bitflip_keygen,
    bitflip_recv,
    bitflip_send,
    decoy_channel_recv,
    decoy_channel_send,
    lattice_decode,
    lattice_encode,
    lattice_keygen,
    pack_units,
    read_keybook,
    read_lattice,
    unpack_units,
    write_keybook,
    write_lattice,
)
from .pdc.decoy import CombinedCiphertext

ALPHABET27 = "ABCDEFGHIJKLMNOPQRSTUVWXYZ "


def _cipher_from_args(args) -> object:
    if args.cipher == "spn":
        return spn_spec(rounds=args.rounds if args.rounds else 4)
    if args.cipher == "arx":
        return speck32_64(rounds=args.rounds if args.rounds else 22)
    raise ConfigError(f"cipher: unknown family {args.cipher!r}")


def _add_cipher_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cipher", default="spn", choices=["spn", "arx"])
    p.add_argument("--rounds", type=int, default=None)
    p.add_argument("--seed", type=int, default=1)


def _cmd_list_recipes(_args) -> int:
    for name, doc in list_recipes():
        print(f"{name:20s} {doc}")
    return 0


def _cmd_run(args) -> int:
    out = args.out or os.environ.get("FLATKEY_OUT")
    if args.config:
        cfg = load_config(args.config, seed=args.seed, out_dir=out,
                          workers=args.workers, recipe=args.recipe)
    else:
        if not args.recipe:
            raise ConfigError("recipe: pass --recipe NAME or --config PATH")
        cfg = default_config(args.recipe, seed=args.seed if args.seed is not None else 1,
                             out_dir=out or "out", workers=args.workers or 1)
    t0 = time.time()
    summary = run_experiment(cfg)
    wall = time.time() - t0
    for k, v in summary.items():
        print(f"{k} = {v}")
    print(f"wall_time_s = {wall:.2f}")
    print(f"artifacts in {cfg.out_dir}")
    return 0


def _cmd_unicity(args) -> int:
    ud = unicity_distance(args.key_bits, args.redundancy)
    print(f"unicity_distance_letters = {ud:.4f}")
    return 0


def _cmd_bruteforce(args) -> int:
    spec = _cipher_from_args(args)
    known = encode_text(args.known_plaintext)
    key = parse_bitstring(args.key) if args.key else BitString.random(
        spec.key_bits, np.random.default_rng(derive_seed(args.seed, "cli-bf-key")))
    c = encrypt_blocks(spec, known, key)
    if args.stop == "known-plaintext":
        stop = KnownPlaintextStop(known)
    else:
        lm = load_default_model()
        theta = args.theta if args.theta is not None else calibrate_threshold(lm).theta
        stop = PlausibleStop(lm, theta)
    t0 = time.time()
    st = blind_bruteforce(spec, c, stop, args.order, budget=args.budget, seed=args.seed)
    wall = time.time() - t0
    print(f"keys_tried = {st.keys_tried_count}")
    print(f"found = {st.found[0].hex_annotated() if st.found else 'none'}")
    if st.found:
        print(f"plaintext = {decode_text(st.found[1])!r}")
    print(f"wall_time_s = {wall:.3f}")
    return 0


def _cmd_ai2(args) -> int:
    spec = _cipher_from_args(args)
    texts = [t for t in args.candidates.split(",") if t]
    candidates = tuple(encode_text(t) for t in texts)
    rng = np.random.default_rng(derive_seed(args.seed, "cli-ai2-key"))
    key = parse_bitstring(args.key) if args.key else BitString.random(spec.key_bits, rng)
    true_plain = candidates[0]
    ciphertexts = [encrypt_blocks(spec, p, key) for p in (true_plain,)] if not args.ciphertext else [
        parse_bitstring(args.ciphertext)]
    rankers = builtin_rankers()
    if args.ranker not in rankers:
        raise ConfigError(f"ranker: unknown {args.ranker!r} (have {', '.join(rankers)})")
    rotation = [MetricId.parse(tok) for tok in args.metrics.split(",")] if args.metrics else None
    t0 = time.time()
    total_tried = 0
    found = None
    for i, c in enumerate(ciphertexts):
        ps = PlausibleSet(i, candidates)
        st = ai2_search(spec, c, ps, MetricId.parse(args.metric), rankers[args.ranker](),
                        t=args.t, max_rounds=args.max_rounds,
                        seed=derive_seed(args.seed, f"cli-ai2-{i}"),
                        metric_rotation=rotation, rotate_after=args.rotate_after)
        total_tried += st.keys_tried_count
        if args.trace:
            write_trace_csv(st, args.trace, [f"ciphertext={i} seed={args.seed}"])
        if st.found:
            found = st.found
            break
    wall = time.time() - t0
    print(f"keys_tried = {total_tried}")
    print(f"found = {found[0].hex_annotated() if found else 'none'}")
    if found:
        print(f"plaintext = {decode_text(found[1])!r}")
    print(f"wall_time_s = {wall:.3f}")
    return 0


def _cmd_reverse_avalanche(args) -> int:
    spec = _cipher_from_args(args)
    rng = np.random.default_rng(derive_seed(args.seed, "cli-rev"))
    msg = encode_text(args.message)
    k0 = parse_bitstring(args.k0) if args.k0 else BitString.random(spec.key_bits, rng)
    if args.k1:
        k1 = parse_bitstring(args.k1)
    else:
        k1 = k0
        for b in rng.choice(spec.key_bits, size=args.h, replace=False):
            k1 = k1.flip(int(b))
    c = encrypt_blocks(spec, msg, k0)
    series = reverse_avalanche_series(spec, c, k0, k1, args.seed)
    print("index,key_hex,plaintext_hex")
    for i, (k, p) in enumerate(series):
        print(f"{i},{k.hex_annotated()},{p.hex_annotated()}")
    return 0


# -- pdc subcommands -----------------------------------------------------


def _cmd_bitflip(args) -> int:
    if args.action == "keygen":
        book = bitflip_keygen(args.alphabet, args.n_bits, args.max_strings, args.seed,
                              h=args.h)
        write_keybook(book, args.book)
        print(f"wrote {args.book} ({book.total_strings()} key strings)")
        return 0
    book = read_keybook(args.book)
    if args.action == "encode":
        rng = np.random.default_rng(args.seed)
        units = bitflip_send(book, args.message, rng, noise_rate=args.noise_rate)
        Path(args.stream).write_bytes(pack_units(units))
        print(f"wrote {args.stream} ({len(units)} units)")
        return 0
    units = unpack_units(Path(args.stream).read_bytes())
    print(bitflip_recv(book, units))
    return 0


def _cmd_lattice(args) -> int:
    if args.action == "keygen":
        lat = lattice_keygen(args.alphabet, args.circles, args.rays, args.seed)
        write_lattice(lat, args.map)
        print(f"wrote {args.map}")
        return 0
    lat = read_lattice(args.map)
    if args.action == "encode":
        rng = np.random.default_rng(args.seed)
        paths = [lattice_encode(lat, sym, args.max_len, rng) for sym in args.message]
        Path(args.stream).write_bytes(pack_units(paths))
        print(f"wrote {args.stream} ({len(paths)} units)")
        return 0
    units = unpack_units(Path(args.stream).read_bytes())
    out = []
    for u in units:
        sym = lattice_decode(lat, u)
        if sym is not None:
            out.append(sym)
    print("".join(out))
    return 0


def _cmd_decoy(args) -> int:
    if args.action == "send":
        texts = [t for t in args.messages.split(",") if t]
        cc, books = decoy_channel_send(
            {"alphabet": ALPHABET27, "n_bits": args.n_bits,
             "max_strings_per_letter": args.max_strings, "h": args.h},
            texts, args.seed)
        Path(args.stream).write_bytes(pack_units(list(cc.units)))
        for j, book in enumerate(books):
            write_keybook(book, f"{args.book_prefix}{j}.txt")
        print(f"wrote {args.stream} ({len(cc.units)} units) and {len(books)} keybooks")
        return 0
    book = read_keybook(args.book)
    units = unpack_units(Path(args.stream).read_bytes())
    cc = CombinedCiphertext(tuple(units), book.n_bits, 0)
    print(decoy_channel_recv(book, cc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="flatkey", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list-recipes", help="names and one-line docs of all recipes")
    p.set_defaults(fn=_cmd_list_recipes)

    p = sub.add_parser("run", help="run a named experiment recipe")
    p.add_argument("--recipe", default=None)
    p.add_argument("--config", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(fn=_cmd_run)

    p = sub.add_parser("unicity", help="H(K)/D in letters")
    p.add_argument("key_bits", type=float)
    p.add_argument("redundancy", type=float, nargs="?", default=2.3)
    p.set_defaults(fn=_cmd_unicity)

    p = sub.add_parser("bruteforce", help="blind key search against an encrypted message")
    _add_cipher_flags(p)
    p.add_argument("--known-plaintext", required=True, help="message text; also the stop target")
    p.add_argument("--key", default=None, help="annotated hex key; random if omitted")
    p.add_argument("--stop", choices=["known-plaintext", "plausible"], default="known-plaintext")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--order", choices=["sequential", "seeded-random"], default="seeded-random")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=_cmd_bruteforce)

    p = sub.add_parser("ai2", help="ranker-accelerated search over plausible candidates")
    _add_cipher_flags(p)
    p.add_argument("--candidates", required=True, help="comma-separated candidate texts; first is true")
    p.add_argument("--key", default=None)
    p.add_argument("--ciphertext", default=None, help="annotated hex; derived from key otherwise")
    p.add_argument("--ranker", default="hillclimb")
    p.add_argument("--metric", default="hamming")
    p.add_argument("--metrics", default=None, help="rotation list, e.g. hamming,q3,jaccard")
    p.add_argument("--rotate-after", type=int, default=5)
    p.add_argument("--t", type=int, default=32)
    p.add_argument("--max-rounds", type=int, default=600)
    p.add_argument("--trace", default=None, help="write the per-round trace CSV here")
    p.set_defaults(fn=_cmd_ai2)

    p = sub.add_parser("reverse-avalanche", help="one-bit key walk and its plaintext series")
    _add_cipher_flags(p)
    p.add_argument("--message", default="HOLD THE BRIDGE ")
    p.add_argument("--k0", default=None)
    p.add_argument("--k1", default=None)
    p.add_argument("--h", type=int, default=4)
    p.set_defaults(fn=_cmd_reverse_avalanche)

    p = sub.add_parser("bitflip", help="bitflip keygen/encode/decode")
    p.add_argument("action", choices=["keygen", "encode", "decode"])
    p.add_argument("--book", default="bitflip_keybook.txt")
    p.add_argument("--alphabet", default=ALPHABET27)
    p.add_argument("--n-bits", type=int, default=32)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--max-strings", type=int, default=3)
    p.add_argument("--message", default="")
    p.add_argument("--noise-rate", type=float, default=0.0)
    p.add_argument("--stream", default="bitflip_stream.bin")
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=_cmd_bitflip)

    p = sub.add_parser("lattice", help="polar lattice keygen/encode/decode")
    p.add_argument("action", choices=["keygen", "encode", "decode"])
    p.add_argument("--map", default="lattice_map.txt")
    p.add_argument("--alphabet", default=ALPHABET27)
    p.add_argument("--circles", type=int, default=4)
    p.add_argument("--rays", type=int, default=6)
    p.add_argument("--max-len", type=int, default=24)
    p.add_argument("--message", default="")
    p.add_argument("--stream", default="lattice_stream.bin")
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=_cmd_lattice)

    p = sub.add_parser("decoy", help="decoy channel send/recv")
    p.add_argument("action", choices=["send", "recv"])
    p.add_argument("--messages", default=",".join(("ATTACK AT DAWN", "HOLD THE BRIDGE",
                                                   "RETREAT AT ONCE", "SEND MORE FOOD")))
    p.add_argument("--book", default="decoy_keybook_0.txt")
    p.add_argument("--book-prefix", default="decoy_keybook_")
    p.add_argument("--stream", default="decoy_stream.bin")
    p.add_argument("--n-bits", type=int, default=32)
    p.add_argument("--h", type=int, default=8)
    p.add_argument("--max-strings", type=int, default=3)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=_cmd_decoy)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # runtime failure
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
