"""List-coloring instances over the fixed palette {1, 2, 3, 4}.

Vertices keep their original ids for the lifetime of an instance family:
removing a vertex marks it absent instead of renumbering, so caches and test
oracles can key on ids.  Colour lists are stored as 4-bit masks (bit ``c-1``
set iff colour ``c`` is allowed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InputError

PALETTE = (1, 2, 3, 4)
FULL_MASK = 0b1111
MAX_DEGREE = 3

POPCOUNT = tuple(bin(m).count("1") for m in range(16))


def color_bit(c: int) -> int:
    if c not in PALETTE:
        raise InputError(f"colour {c!r} outside palette {{1,2,3,4}}")
    return 1 << (c - 1)


def mask_of(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        m |= color_bit(c)
    return m


def colors_of(mask: int) -> frozenset[int]:
    return frozenset(c for c in PALETTE if mask >> (c - 1) & 1)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with maximum degree 3.

    ``base`` is the adjacency of the original graph (ascending neighbour ids)
    and ``present`` a bitmask of the vertices that have not been removed.
    """

    base: tuple[tuple[int, ...], ...]
    present: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise InputError(f"parallel edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        for v, nb in enumerate(adj):
            if len(nb) > MAX_DEGREE:
                raise InputError(f"vertex {v} has degree {len(nb)} > {MAX_DEGREE}")
        return cls(tuple(tuple(sorted(nb)) for nb in adj), (1 << n) - 1)

    @property
    def n(self) -> int:
        """Size of the id range (removed vertices included)."""
        return len(self.base)

    @property
    def num_vertices(self) -> int:
        return bin(self.present).count("1")

    def has_vertex(self, v: int) -> bool:
        return 0 <= v < len(self.base) and bool(self.present >> v & 1)

    def vertices(self) -> list[int]:
        p = self.present
        return [v for v in range(len(self.base)) if p >> v & 1]

    def neighbors(self, v: int) -> tuple[int, ...]:
        p = self.present
        return tuple(u for u in self.base[v] if p >> u & 1)

    def degree(self, v: int) -> int:
        p = self.present
        return sum(1 for u in self.base[v] if p >> u & 1)

    @property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        return {v: self.neighbors(v) for v in self.vertices()}

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices() for v in self.neighbors(u) if u < v]

    def remove(self, v: int) -> "Graph":
        if not self.has_vertex(v):
            raise InputError(f"vertex {v} is not in the graph")
        return Graph(self.base, self.present & ~(1 << v))


@dataclass(frozen=True)
class ColorLists:
    """Per-vertex colour lists as 4-bit masks, indexed by vertex id."""

    masks: tuple[int, ...]

    @classmethod
    def full(cls, n: int) -> "ColorLists":
        return cls((FULL_MASK,) * n)

    @classmethod
    def from_mapping(cls, n: int, lists: Mapping[int, Iterable[int]]) -> "ColorLists":
        masks = [FULL_MASK] * n
        for v, cols in lists.items():
            if not 0 <= v < n:
                raise InputError(f"list given for unknown vertex {v}")
            masks[v] = mask_of(cols)
        return cls(tuple(masks))

    def __getitem__(self, v: int) -> frozenset[int]:
        return colors_of(self.masks[v])

    def size(self, v: int) -> int:
        return POPCOUNT[self.masks[v]]

    def without(self, v: int, c: int) -> "ColorLists":
        m = self.masks
        return ColorLists(m[:v] + (m[v] & ~color_bit(c),) + m[v + 1:])


@dataclass(frozen=True)
class ReachabilityWitness:
    target: int
    satisfied: bool
    violated_condition: str | None = None


@dataclass(frozen=True)
class Instance:
    graph: Graph
    lists: ColorLists = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.lists is None:
            object.__setattr__(self, "lists", ColorLists.full(self.graph.n))
        if len(self.lists.masks) != self.graph.n:
            raise InputError("colour lists do not match the vertex range")
        for m in self.lists.masks:
            if not 0 <= m <= FULL_MASK:
                raise InputError("colour list outside palette {1,2,3,4}")

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        lists: Mapping[int, Iterable[int]] | Sequence[Iterable[int]] | None = None,
    ) -> "Instance":
        """Convenience constructor; ``lists`` may be a mapping or a per-vertex sequence."""
        g = Graph.from_edges(n, edges)
        if lists is None:
            return cls(g, ColorLists.full(n))
        if not isinstance(lists, Mapping):
            lists = dict(enumerate(lists))
        return cls(g, ColorLists.from_mapping(n, lists))

    # -- queries -----------------------------------------------------------
    def vertices(self) -> list[int]:
        return self.graph.vertices()

    def degree(self, v: int) -> int:
        return self.graph.degree(v)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.graph.neighbors(v)

    def colors(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def list_size(self, v: int) -> int:
        return self.lists.size(v)

    @property
    def num_vertices(self) -> int:
        return self.graph.num_vertices

    def validity_violation(self) -> str | None:
        """Return a description of the first vertex with |L(v)| < deg(v)+1, or None."""
        for v in self.vertices():
            d = self.degree(v)
            if self.list_size(v) < d + 1:
                return f"vertex {v}: |L|={self.list_size(v)} < deg+1={d + 1}"
        return None

    def is_valid(self) -> bool:
        return self.validity_violation() is None

    def _check_vertex(self, v: int) -> None:
        if not self.graph.has_vertex(v):
            raise InputError(f"vertex {v} is not in the instance")

    # -- surgery -----------------------------------------------------------
    def remove_vertex(self, v: int) -> "Instance":
        self._check_vertex(v)
        return Instance(self.graph.remove(v), self.lists)

    def restrict_lists(self, ordered_neighbors: Sequence[int], k: int, i: int) -> "Instance":
        """Drop colour ``i`` from the first ``k-1`` vertices of ``ordered_neighbors``.

        ``k`` is 1-based, so ``k == 1`` leaves every list unchanged.
        """
        if not 1 <= k <= len(ordered_neighbors):
            raise InputError(f"index k={k} outside 1..{len(ordered_neighbors)}")
        bit = color_bit(i)
        masks = list(self.lists.masks)
        for u in ordered_neighbors[: k - 1]:
            self._check_vertex(u)
            masks[u] &= ~bit
        return Instance(self.graph, ColorLists(tuple(masks)))

    def with_list(self, v: int, colors: Iterable[int]) -> "Instance":
        self._check_vertex(v)
        m = self.lists.masks
        return Instance(self.graph, ColorLists(m[:v] + (mask_of(colors),) + m[v + 1:]))

    def describe(self) -> str:
        parts = [f"{v}:{sorted(self.colors(v))}" for v in self.vertices()]
        return f"Instance(edges={self.graph.edges()}, lists={{{', '.join(parts)}}})"


def check_reachable(inst: Instance, v: int) -> ReachabilityWitness:
    """Check the conditions met by every non-root query of the marginal recursion."""
    inst._check_vertex(v)
    for u in inst.vertices():
        d = inst.degree(u)
        if d > MAX_DEGREE:
            return ReachabilityWitness(v, False, f"deg({u}) <= 3")
        if inst.list_size(u) < d + 1:
            return ReachabilityWitness(v, False, f"|L({u})| >= deg({u})+1")
    d = inst.degree(v)
    if d > 2:
        return ReachabilityWitness(v, False, "deg(target) <= 2")
    if inst.list_size(v) < d + 2:
        return ReachabilityWitness(v, False, "|L(target)| >= deg(target)+2")
    return ReachabilityWitness(v, True)


def remove_vertex(inst: Instance, v: int) -> Instance:
    return inst.remove_vertex(v)


def restrict_lists(inst: Instance, ordered_neighbors: Sequence[int], k: int, i: int) -> Instance:
    return inst.restrict_lists(ordered_neighbors, k, i)
