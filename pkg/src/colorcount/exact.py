"""Brute-force ground truth: exact list-colouring counts and marginals.

Depth-first assignment with forward checking.  The next vertex is the one
with the fewest remaining colours (lowest id on ties); connected components
are counted independently and multiplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, UnsatisfiableError
from .instance import POPCOUNT, Instance, color_bit

DEFAULT_SIZE_CAP = 26


@dataclass(frozen=True)
class ExactCount:
    value: int


@dataclass(frozen=True)
class ExactMarginal:
    numerator: int
    denominator: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


def _components(adj: dict[int, tuple[int, ...]]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _count(adj: dict[int, tuple[int, ...]], dom: dict[int, int]) -> int:
    if not dom:
        return 1
    v = min(dom, key=lambda u: (POPCOUNT[dom[u]], u))
    m = dom[v]
    rest = {u: d for u, d in dom.items() if u != v}
    total = 0
    while m:
        bit = m & -m
        m ^= bit
        child = dict(rest)
        dead = False
        for w in adj[v]:
            if w in child:
                nd = child[w] & ~bit
                if not nd:
                    dead = True
                    break
                child[w] = nd
        if not dead:
            total += _count(adj, child)
    return total


def _count_masks(inst: Instance, masks: dict[int, int]) -> int:
    adj = inst.graph.adjacency
    total = 1
    for comp in _components(adj):
        if any(masks[u] == 0 for u in comp):
            return 0
        total *= _count(adj, {u: masks[u] for u in comp})
        if total == 0:
            return 0
    return total


def _guard(inst: Instance, cap: int) -> None:
    if inst.num_vertices > cap:
        raise CapacityError(f"instance has {inst.num_vertices} vertices; oracle cap is {cap}")


def count_colorings(inst: Instance, cap: int = DEFAULT_SIZE_CAP) -> ExactCount:
    _guard(inst, cap)
    masks = {v: inst.lists.masks[v] for v in inst.vertices()}
    return ExactCount(_count_masks(inst, masks))


def color_counts(inst: Instance, v: int, cap: int = DEFAULT_SIZE_CAP) -> dict[int, int]:
    """Z(c(v)=i) for every colour i of the palette."""
    _guard(inst, cap)
    inst._check_vertex(v)
    base = {u: inst.lists.masks[u] for u in inst.vertices()}
    out = {}
    for i in (1, 2, 3, 4):
        bit = color_bit(i)
        if not base[v] & bit:
            out[i] = 0
            continue
        masks = dict(base)
        masks[v] = bit
        out[i] = _count_masks(inst, masks)
    return out


def exact_marginal(inst: Instance, v: int, i: int, cap: int = DEFAULT_SIZE_CAP) -> ExactMarginal:
    color_bit(i)
    counts = color_counts(inst, v, cap)
    z = sum(counts.values())
    if z == 0:
        raise UnsatisfiableError("marginal undefined: the instance has no proper colouring")
    return ExactMarginal(counts[i], z)


def exact_marginals(inst: Instance, v: int, cap: int = DEFAULT_SIZE_CAP) -> tuple[Fraction, ...]:
    """All four marginals of ``v`` as exact fractions (colour order 1..4)."""
    counts = color_counts(inst, v, cap)
    z = sum(counts.values())
    if z == 0:
        raise UnsatisfiableError("marginal undefined: the instance has no proper colouring")
    return tuple(Fraction(counts[i], z) for i in (1, 2, 3, 4))
