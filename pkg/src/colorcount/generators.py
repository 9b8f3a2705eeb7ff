"""Named graphs, seeded random subcubic instances and small-graph enumeration.

Randomness comes from SplitMix64 (Steele, Lea and Flood) so a corpus can be
reproduced bit-for-bit in any language:

    state += 0x9E3779B97F4A7C15                        (mod 2**64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9           (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB           (mod 2**64)
    return z ^ (z >> 31)

``below(k)`` draws uniformly from ``range(k)`` by rejection on the top of
the 64-bit range.  ``shuffle`` is Fisher-Yates from the last index down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import networkx as nx

from .errors import InputError
from .instance import ColorLists, Graph, Instance

_MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        if k <= 0:
            raise InputError("below() needs a positive bound")
        limit = (1 << 64) - (1 << 64) % k
        while True:
            r = self.next_u64()
            if r < limit:
                return r % k

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def shuffle(self, xs: list) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]


# -- named graphs -------------------------------------------------------------

def complete_k4() -> list[tuple[int, int]]:
    return list(combinations(range(4), 2))


def cycle_edges(n: int) -> list[tuple[int, int]]:
    if n < 3:
        raise InputError("a cycle needs n >= 3")
    return [(i, (i + 1) % n) if i + 1 < n else (0, n - 1) for i in range(n)]


def path_edges(n: int) -> list[tuple[int, int]]:
    if n < 1:
        raise InputError("a path needs n >= 1")
    return [(i, i + 1) for i in range(n - 1)]


def star3() -> list[tuple[int, int]]:
    return [(0, 1), (0, 2), (0, 3)]


def petersen() -> list[tuple[int, int]]:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return [tuple(sorted(e)) for e in outer + spokes + inner]


def kp33() -> list[tuple[int, int]]:
    return [(a, b) for a in range(3) for b in range(3, 6)]


def random_cubic_edges(n: int, rng: SplitMix64, max_tries: int = 10_000) -> list[tuple[int, int]]:
    """Pairing model: shuffle 3n half-edges, pair consecutively, reject loops and multi-edges."""
    if n < 4 or n % 2:
        raise InputError("random_cubic needs even n >= 4")
    points = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        ok = True
        for k in range(0, len(points), 2):
            u, v = points[k], points[k + 1]
            e = (min(u, v), max(u, v))
            if u == v or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return sorted(edges)
    raise InputError(f"no simple cubic pairing found for n={n}")


def random_subcubic_edges(n: int, p: float, rng: SplitMix64) -> list[tuple[int, int]]:
    """Visit vertex pairs in random order; keep each with probability p while both degrees are < 3."""
    if n < 1:
        raise InputError("n must be positive")
    if not 0 <= p <= 1:
        raise InputError("p must lie in [0, 1]")
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < 3 and deg[v] < 3 and rng.random() < p:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return sorted(edges)


def random_valid_lists(graph: Graph, rng: SplitMix64) -> ColorLists:
    """Start from the full palette and drop a random number (at most 3 - deg) of random colours."""
    masks = []
    for v in range(graph.n):
        cols = [1, 2, 3, 4]
        rng.shuffle(cols)
        drop = rng.below(3 - graph.degree(v) + 1)
        m = 0
        for c in cols[drop:]:
            m |= 1 << (c - 1)
        masks.append(m)
    return ColorLists(tuple(masks))


# -- corpus specs -------------------------------------------------------------

FAMILIES = ("complete_k4", "cycle", "path", "star3", "petersen", "kp33", "random_cubic", "random_subcubic")


@dataclass(frozen=True)
class CorpusSpec:
    family: str
    n: int = 0
    p: float = 0.5
    seed: int = 0
    lists: str = "full"  # or "random_valid"
    list_seed: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}")
        if self.lists not in ("full", "random_valid"):
            raise InputError(f"unknown list policy {self.lists!r}")


def generate(spec: CorpusSpec) -> Instance:
    rng = SplitMix64(spec.seed)
    fam = spec.family
    if fam == "complete_k4":
        n, edges = 4, complete_k4()
    elif fam == "cycle":
        n, edges = spec.n, cycle_edges(spec.n)
    elif fam == "path":
        n, edges = spec.n, path_edges(spec.n)
    elif fam == "star3":
        n, edges = 4, star3()
    elif fam == "petersen":
        n, edges = 10, petersen()
    elif fam == "kp33":
        n, edges = 6, kp33()
    elif fam == "random_cubic":
        n, edges = spec.n, random_cubic_edges(spec.n, rng)
    else:
        n, edges = spec.n, random_subcubic_edges(spec.n, spec.p, rng)
    g = Graph.from_edges(n, edges)
    if spec.lists == "full":
        return Instance(g, ColorLists.full(n))
    lseed = spec.seed if spec.list_seed is None else spec.list_seed
    return Instance(g, random_valid_lists(g, SplitMix64(lseed ^ 0x5DEECE66D)))


# -- exhaustive small graphs --------------------------------------------------

def _canonical_graphs(n_max: int) -> dict[int, list[nx.Graph]]:
    by_n: dict[int, list[nx.Graph]] = {1: [nx.empty_graph(1)]}
    for n in range(2, n_max + 1):
        buckets: dict[str, list[nx.Graph]] = {}
        out = []
        for g in by_n[n - 1]:
            open_slots = [v for v in g if g.degree(v) < 3]
            new = n - 1
            for k in (1, 2, 3):
                for nbrs in combinations(open_slots, k):
                    h = g.copy()
                    h.add_node(new)
                    h.add_edges_from((new, u) for u in nbrs)
                    sig = nx.weisfeiler_lehman_graph_hash(h)
                    bucket = buckets.setdefault(sig, [])
                    if any(nx.is_isomorphic(h, o) for o in bucket):
                        continue
                    bucket.append(h)
                    out.append(h)
        # complete: deleting a spanning-tree leaf from any connected subcubic
        # graph leaves a connected subcubic graph on n-1 vertices
        by_n[n] = out
    return by_n


def enumerate_small(n_max: int) -> Iterator[Instance]:
    """All connected graphs of maximum degree 3 on 1..n_max vertices, one per isomorphism class, full lists."""
    if not 1 <= n_max <= 8:
        raise InputError("enumerate_small supports 1 <= n_max <= 8")
    for n, graphs in sorted(_canonical_graphs(n_max).items()):
        for g in graphs:
            yield Instance(Graph.from_edges(n, sorted(tuple(sorted(e)) for e in g.edges())), None)
