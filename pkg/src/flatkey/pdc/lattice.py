"""Polar lattice letter cipher.

The lattice is a set of concentric circles crossed by rays from a shared
center; rays extend to different circles, and every ray/circle crossing
is an addressable point.  Each letter secretly owns a (start, terminal)
point pair.  A letter is transmitted as an arbitrary legal walk from its
start to its terminal: U/D move along the ray, L/R move along the
current circle to the cyclically adjacent ray (legal only if that ray
reaches this circle).  The receiver replays the walk; a path that stays
legal and connects exactly one letter's pair reads as that letter,
anything else is noise.  Walk randomness is unilateral: infinitely many
paths encode the same letter.

The wire carries the origin in clear plus the step sequence; without the
letter map, endpoints carry no letter information.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Point",
    "Path",
    "PolarLattice",
    "lattice_keygen",
    "lattice_encode",
    "lattice_decode",
    "replay_path",
    "shortest_path_len",
    "write_lattice",
    "read_lattice",
]

RETRY_BUDGET = 10_000
STEPS = ("U", "D", "L", "R")


@dataclass(frozen=True)
class Point:
    ray: int
    circle: int


@dataclass(frozen=True)
class Path:
    origin: Point
    steps: tuple[str, ...]

    def __post_init__(self) -> None:
        for s in self.steps:
            if s not in STEPS:
                raise ValueError(f"bad step symbol {s!r}")


@dataclass(frozen=True)
class PolarLattice:
    circles: int
    rays: int
    extent: tuple[int, ...]  # per ray: highest circle index it reaches
    letter_map: dict[str, tuple[Point, Point]]

    def __post_init__(self) -> None:
        if self.circles < 1 or self.rays < 2:
            raise ValueError("need at least 1 circle and 2 rays")
        if len(self.extent) != self.rays:
            raise ValueError("one extent per ray required")
        if any(not 0 <= e < self.circles for e in self.extent):
            raise ValueError("extents must lie in [0, circles)")
        pairs = set()
        for sym, (a, b) in self.letter_map.items():
            for p in (a, b):
                if not self.valid_point(p):
                    raise ValueError(f"letter {sym!r} uses point off the lattice: {p}")
            if a == b:
                raise ValueError(f"letter {sym!r} has start == terminal")
            if (a, b) in pairs:
                raise ValueError(f"duplicate endpoint pair for {sym!r}")
            pairs.add((a, b))

    def valid_point(self, p: Point) -> bool:
        return 0 <= p.ray < self.rays and 0 <= p.circle <= self.extent[p.ray]

    def step(self, p: Point, s: str) -> Point | None:
        """The point one step away, or None if the move is illegal."""
        if s == "U":
            q = Point(p.ray, p.circle + 1)
            return q if q.circle <= self.extent[p.ray] else None
        if s == "D":
            return Point(p.ray, p.circle - 1) if p.circle > 0 else None
        ray = (p.ray - 1) % self.rays if s == "L" else (p.ray + 1) % self.rays
        # lateral moves ride the current circle: both rays must reach it
        return Point(ray, p.circle) if self.extent[ray] >= p.circle else None

    def legal_steps(self, p: Point) -> list[str]:
        return [s for s in STEPS if self.step(p, s) is not None]


def replay_path(lat: PolarLattice, path: Path) -> Point | None:
    """Walk the steps from the origin; None as soon as anything is illegal."""
    if not lat.valid_point(path.origin):
        return None
    cur = path.origin
    for s in path.steps:
        cur = lat.step(cur, s)
        if cur is None:
            return None
    return cur


def shortest_path_len(lat: PolarLattice, a: Point, b: Point) -> int:
    """BFS distance; every ray reaches circle 0, so the lattice is connected."""
    if a == b:
        return 0
    seen = {a}
    frontier = deque([(a, 0)])
    while frontier:
        p, d = frontier.popleft()
        for s in STEPS:
            q = lat.step(p, s)
            if q is not None and q not in seen:
                if q == b:
                    return d + 1
                seen.add(q)
                frontier.append((q, d + 1))
    raise RuntimeError("lattice is disconnected, which should be impossible")


def lattice_keygen(alphabet, circles: int, rays: int, seed: int) -> PolarLattice:
    """Random extents plus a random injective letter -> endpoint-pair map."""
    alphabet = tuple(alphabet)
    rng = np.random.default_rng(seed)
    for _ in range(RETRY_BUDGET):
        extent = tuple(int(rng.integers(0, circles)) for _ in range(rays))
        points = [Point(r, c) for r in range(rays) for c in range(extent[r] + 1)]
        n_pairs = len(points) * (len(points) - 1)
        if n_pairs < len(alphabet):
            continue
        pairs: set[tuple[Point, Point]] = set()
        letter_map: dict[str, tuple[Point, Point]] = {}
        ok = True
        for sym in alphabet:
            for _ in range(RETRY_BUDGET):
                a = points[int(rng.integers(0, len(points)))]
                b = points[int(rng.integers(0, len(points)))]
                if a != b and (a, b) not in pairs:
                    pairs.add((a, b))
                    letter_map[sym] = (a, b)
                    break
            else:
                ok = False
                break
        if ok:
            return PolarLattice(circles, rays, extent, letter_map)
    raise RuntimeError("could not place the alphabet on this lattice geometry")


def lattice_encode(lat: PolarLattice, sym: str, max_len: int, rng) -> Path:
    """A random legal walk from the letter's start to its terminal.

    The walk wanders while the remaining budget allows it and switches to
    strictly distance-decreasing moves once the budget equals the BFS
    distance to the terminal, so arrival within max_len is guaranteed.
    """
    if sym not in lat.letter_map:
        raise KeyError(f"{sym!r} not in letter map")
    rng = np.random.default_rng(rng) if isinstance(rng, (int, np.integer)) else rng
    start, term = lat.letter_map[sym]
    dist = {}  # BFS field toward the terminal

    seen = {term}
    frontier = deque([(term, 0)])
    dist[term] = 0
    while frontier:
        p, d = frontier.popleft()
        for s in STEPS:
            q = lat.step(p, s)
            if q is not None and q not in seen:
                seen.add(q)
                dist[q] = d + 1
                frontier.append((q, d + 1))

    if max_len < dist[start]:
        raise ValueError(f"max_len={max_len} below the shortest path {dist[start]}")

    # re-check the book invariant on the transmit side
    for other, (a, b) in lat.letter_map.items():
        if other != sym and (a, b) == (start, term):
            raise RuntimeError("endpoint collision between letters")

    cur = start
    steps: list[str] = []
    while cur != term:
        remaining = max_len - len(steps)
        legal = lat.legal_steps(cur)
        closing = [s for s in legal if dist[lat.step(cur, s)] < dist[cur]]
        if remaining <= dist[cur]:
            choices = closing
        elif remaining == dist[cur] + 1:
            # an equal-or-closer move keeps arrival reachable
            choices = [s for s in legal if dist[lat.step(cur, s)] <= dist[cur]]
        else:
            choices = legal
        s = choices[int(rng.integers(0, len(choices)))]
        steps.append(s)
        cur = lat.step(cur, s)
    return Path(start, tuple(steps))


def lattice_decode(lat: PolarLattice, path: Path) -> str | None:
    """Replay; the unique letter whose (start, terminal) matches, else None."""
    final = replay_path(lat, path)
    if final is None:
        return None
    matches = [sym for sym, (a, b) in lat.letter_map.items()
               if a == path.origin and b == final]
    if len(matches) == 1:
        return matches[0]
    return None


# -- lattice file format --------------------------------------------------


def write_lattice(lat: PolarLattice, path) -> None:
    with open(path, "w") as fh:
        fh.write("# polar lattice\n")
        fh.write(f"circles = {lat.circles}\n")
        fh.write(f"rays = {lat.rays}\n")
        for r, e in enumerate(lat.extent):
            fh.write(f"extent {r}={e}\n")
        for sym, (a, b) in lat.letter_map.items():
            fh.write(f"letter {sym} start=({a.ray},{a.circle}) terminal=({b.ray},{b.circle})\n")


def _parse_point(tok: str) -> Point:
    tok = tok.strip().lstrip("(").rstrip(")")
    r, c = tok.split(",")
    return Point(int(r), int(c))


def read_lattice(path) -> PolarLattice:
    circles = rays = None
    extent: dict[int, int] = {}
    letter_map: dict[str, tuple[Point, Point]] = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("circles"):
                circles = int(line.split("=", 1)[1])
            elif line.startswith("rays"):
                rays = int(line.split("=", 1)[1])
            elif line.startswith("extent"):
                body = line[len("extent"):].strip()
                r, e = body.split("=")
                extent[int(r)] = int(e)
            elif line.startswith("letter"):
                parts = line.split()
                sym = parts[1]
                kv = dict(p.split("=", 1) for p in parts[2:])
                letter_map[sym] = (_parse_point(kv["start"]), _parse_point(kv["terminal"]))
    if circles is None or rays is None:
        raise ValueError(f"incomplete lattice header in {path}")
    ext = tuple(extent[r] for r in range(rays))
    return PolarLattice(circles, rays, ext, letter_map)
