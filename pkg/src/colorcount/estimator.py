"""Depth-bounded recursive estimation of colouring marginals.

``P(G, L, v, i, D)`` is evaluated for all four colours at once: the
sub-queries issued at a vertex do not depend on the queried colour, so one
node of the computation tree yields a 4-vector (index ``c-1`` holds colour
``c``).

Internally a sub-instance is a pair ``(alive, lists)``: ``alive`` is a vertex
bitmask over the estimator's base adjacency and ``lists`` a tuple of 4-bit
colour masks.  Degree-2 vertices use the partial two-layer expansion through
their first neighbour; degree-3 vertices only ever occur at the root and keep
the depth unchanged.

Memoisation keys a node by the breadth-first listing of every live vertex
within distance ``2d`` of the target together with its colour mask.  A
depth-``d`` query never reads anything farther out (each depth unit moves at
most two steps away), so nodes with equal keys have bitwise-equal values.
When the whole component fits inside the ball, depths beyond its size are
folded together, since the recursion is exact there.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import ContractError, InputError, UnsatisfiableError
from .instance import POPCOUNT, ColorLists, Graph, Instance, check_reachable, color_bit

Number = Union[float, Fraction]
Vec = tuple  # 4 numbers, colour c at index c-1
ChildFn = Callable[[int, tuple, int, int], Vec]

BACKENDS = ("float", "rational")


@dataclass(frozen=True)
class EstimatorConfig:
    depth: int
    backend: str = "float"
    memoize: bool = True
    threads: int = 1

    def __post_init__(self):
        if self.depth < 0:
            raise InputError("depth must be nonnegative")
        if self.backend not in BACKENDS:
            raise InputError(f"unknown backend {self.backend!r}")
        if self.threads < 1:
            raise InputError("threads must be >= 1")


def _leaf_table(one: Number) -> tuple[Vec, ...]:
    zero = one - one
    table = []
    for m in range(16):
        k = POPCOUNT[m]
        table.append(tuple(one / k if m >> c & 1 else zero for c in range(4)))
    return tuple(table)


_COLOR_IDX = tuple(tuple(c for c in range(4) if m >> c & 1) for m in range(16))


class Estimator:
    """Marginal estimator bound to one base graph.

    Instances passed in must share ``graph.base`` with the estimator (any
    instance obtained from the original by vertex removal and list edits
    does), which lets the cache carry over between related queries, such as
    the successive steps of the counting self-reduction.
    """

    def __init__(self, graph: Graph, backend: str = "float", memoize: bool = True, threads: int = 1):
        if backend not in BACKENDS:
            raise InputError(f"unknown backend {backend!r}")
        self.base = graph.base
        self.backend = backend
        self.one: Number = Fraction(1) if backend == "rational" else 1.0
        self.zero: Number = self.one - self.one
        self._leaf = _leaf_table(self.one)
        self._cache: dict | None = {} if memoize else None
        self.threads = threads
        self._pool: concurrent.futures.ProcessPoolExecutor | None = None
        self.expansions = 0
        self.hits = 0

    @classmethod
    def from_config(cls, graph: Graph, cfg: EstimatorConfig) -> "Estimator":
        return cls(graph, cfg.backend, cfg.memoize, cfg.threads)

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def clear_cache(self) -> None:
        if self._cache is not None:
            self._cache.clear()

    # -- public entry points -------------------------------------------------
    def _state(self, inst: Instance) -> tuple[int, tuple]:
        if inst.graph.base is not self.base and inst.graph.base != self.base:
            raise InputError("instance does not share this estimator's base graph")
        return inst.graph.present, inst.lists.masks

    def marginals(self, inst: Instance, v: int, depth: int) -> Vec:
        """Estimates of Pr[c(v)=c] for c = 1..4 at the given depth."""
        if depth < 0:
            raise InputError("depth must be nonnegative")
        inst._check_vertex(v)
        alive, lists = self._state(inst)
        if self.threads > 1:
            return self._node_parallel(alive, lists, v, depth)
        return self._node(alive, lists, v, depth)

    def estimate(self, inst: Instance, v: int, i: int, depth: int) -> Number:
        color_bit(i)
        return self.marginals(inst, v, depth)[i - 1]

    def one_step(self, inst: Instance, v: int, depth: int, child: Callable[[Instance, int, int], Vec]) -> Vec:
        """Apply a single level of the recursion with caller-supplied child values.

        ``child(sub_instance, u, d)`` must return the 4-vector for vertex
        ``u`` of ``sub_instance`` at depth ``d``.  With exact marginals as
        children the result is the exact marginal vector.
        """
        inst._check_vertex(v)
        alive, lists = self._state(inst)
        lv = lists[v]
        if depth <= 0 or lv == 0:
            return self._leaf[lv]
        nb = [u for u in self.base[v] if alive >> u & 1]
        if not nb:
            return self._leaf[lv]
        base = self.base

        def wrapped(a: int, ls: tuple, u: int, d: int) -> Vec:
            return child(Instance(Graph(base, a), ColorLists(ls)), u, d)

        return self._expand(alive, lists, v, depth, nb, wrapped)

    # -- recursion -----------------------------------------------------------
    def _node(self, alive: int, lists: tuple, v: int, d: int) -> Vec:
        lv = lists[v]
        if d <= 0 or lv == 0:
            return self._leaf[lv]
        base = self.base
        nb = [u for u in base[v] if alive >> u & 1]
        if not nb:
            return self._leaf[lv]
        cache = self._cache
        if cache is None or len(nb) == 3:
            self.expansions += 1
            return self._expand(alive, lists, v, d, nb, self._node)
        key = self._key(alive, lists, v, d)
        hit = cache.get(key)
        if hit is not None:
            self.hits += 1
            return hit
        self.expansions += 1
        val = self._expand(alive, lists, v, d, nb, self._node)
        cache[key] = val
        return val

    def _key(self, alive: int, lists: tuple, v: int, d: int) -> tuple:
        base = self.base
        radius = 2 * d
        seen = 1 << v
        out = [v, lists[v]]
        frontier = [v]
        for _ in range(radius):
            nxt = []
            for u in frontier:
                for w in base[u]:
                    bit = 1 << w
                    if alive & bit and not seen & bit:
                        seen |= bit
                        nxt.append(w)
                        out.append(w)
                        out.append(lists[w])
            if not nxt:
                # whole component inside the ball: depth >= size is exact
                size = len(out) // 2
                if d > size:
                    d = size
                break
            frontier = nxt
        out.append(-1 - d)
        return tuple(out)

    def _expand(self, alive: int, lists: tuple, v: int, d: int, nb: list, child: ChildFn) -> Vec:
        k = len(nb)
        if k == 1:
            return self._p1(alive, lists, v, d, nb[0], child)
        if k == 2:
            return self._p2(alive, lists, v, d, nb, child)
        if k == 3:
            return self._p3(alive, lists, v, d, nb, child)
        raise ContractError(f"vertex {v} has degree {k} > 3")

    def _p1(self, alive: int, lists: tuple, v: int, d: int, v1: int, child: ChildFn) -> Vec:
        lv = lists[v]
        size = POPCOUNT[lv]
        x = child(alive & ~(1 << v), lists, v1, d - 1)
        zero = self.zero
        out = [zero] * 4
        if size == 4:
            for c in range(4):
                out[c] = (1 - x[c]) / 3
        elif size == 3:
            j = (~lv & 0b1111).bit_length() - 1
            den = 2 + x[j]
            for c in _COLOR_IDX[lv]:
                out[c] = (1 - x[c]) / den
        elif size == 2:
            a, b = _COLOR_IDX[lv]
            xa, xb = x[a], x[b]
            den = 2 - xa - xb
            if den == 0:
                raise UnsatisfiableError(f"zero denominator at degree-1 vertex {v}")
            out[a] = (1 - xa) / den
            out[b] = (1 - xb) / den
        else:
            raise ContractError(f"degree-1 vertex {v} needs 2 <= |L(v)| <= 4, got {size}")
        return tuple(out)

    def _p2(self, alive: int, lists: tuple, v: int, d: int, nb: list, child: ChildFn) -> Vec:
        base = self.base
        a, b = nb
        da = sum(1 for u in base[a] if alive >> u & 1)
        db = sum(1 for u in base[b] if alive >> u & 1)
        if da < db:
            a, b = b, a
        lv = lists[v]
        out = self._p2_ordered(alive, lists, v, d, a, b, child)
        if da == db == 1:
            la, lb = lists[a], lists[b]
            flip = [c for c in _COLOR_IDX[lv] if not la >> c & 1 and lb >> c & 1]
            if flip:
                other = self._p2_ordered(alive, lists, v, d, b, a, child)
                out = tuple(other[c] if c in flip else out[c] for c in range(4))
        return out

    def _inner_weights(self, alive: int, lists: tuple, v: int, d: int, v1: int, child: ChildFn) -> list:
        """Colour weights f_j of the first neighbour, expanded one more layer."""
        base = self.base
        one, zero = self.one, self.zero
        lv = lists[v]
        l1 = lists[v1]
        av = alive & ~(1 << v)
        f = [zero] * 4
        if not lv & l1:
            return f
        us = [u for u in base[v1] if av >> u & 1]
        avv1 = av & ~(1 << v1)
        prods = {}
        if not us:
            for w in _COLOR_IDX[l1]:
                prods[w] = one
        else:
            x1 = child(avv1, lists, us[0], d - 1)
            if len(us) == 1:
                for w in _COLOR_IDX[l1]:
                    prods[w] = 1 - x1[w]
            else:
                u1, u2 = us
                lu1, lu2 = lists[u1], lists[u2]
                for w in _COLOR_IDX[l1]:
                    if lu2 >> w & 1:
                        lw = lists[:u1] + (lu1 & ~(1 << w),) + lists[u1 + 1:]
                        x2 = child(avv1, lw, u2, d - 1)[w]
                        prods[w] = (1 - x1[w]) * (1 - x2)
                    else:
                        prods[w] = 1 - x1[w]
        den = sum(prods.values(), zero)
        if den == 0:
            raise UnsatisfiableError(f"zero denominator expanding neighbour {v1} of {v}")
        for w, p in prods.items():
            f[w] = p / den
        return f

    def _p2_ordered(self, alive: int, lists: tuple, v: int, d: int, v1: int, v2: int, child: ChildFn) -> Vec:
        zero = self.zero
        lv = lists[v]
        av = alive & ~(1 << v)
        f = self._inner_weights(alive, lists, v, d, v1, child)
        l1 = lists[v1]
        l2 = lists[v2]
        num = [zero] * 4
        for j in _COLOR_IDX[lv]:
            if l2 >> j & 1:
                lj = lists[:v1] + (l1 & ~(1 << j),) + lists[v1 + 1:]
                y = child(av, lj, v2, d - 1)[j]
                num[j] = (1 - f[j]) * (1 - y)
            else:
                num[j] = 1 - f[j]
        tot = sum(num, zero)
        if tot == 0:
            raise UnsatisfiableError(f"zero denominator at degree-2 vertex {v}")
        return tuple(num[c] / tot if lv >> c & 1 else zero for c in range(4))

    def _p3(self, alive: int, lists: tuple, v: int, d: int, nb: list, child: ChildFn) -> Vec:
        zero = self.zero
        v1, v2, v3 = nb
        lv = lists[v]
        av = alive & ~(1 << v)
        x = child(av, lists, v1, d)
        l1, l2, l3 = lists[v1], lists[v2], lists[v3]
        num = [zero] * 4
        for j in _COLOR_IDX[lv]:
            bit = 1 << j
            t = 1 - x[j]
            if l2 & bit:
                lj = lists[:v1] + (l1 & ~bit,) + lists[v1 + 1:]
                t = t * (1 - child(av, lj, v2, d)[j])
            if l3 & bit:
                lj = list(lists)
                lj[v1] = l1 & ~bit
                lj[v2] = l2 & ~bit
                t = t * (1 - child(av, tuple(lj), v3, d)[j])
            num[j] = t
        tot = sum(num, zero)
        if tot == 0:
            raise UnsatisfiableError(f"zero denominator at degree-3 vertex {v}")
        return tuple(num[c] / tot if lv >> c & 1 else zero for c in range(4))

    # -- parallel dispatch of the root's children ----------------------------
    def _node_parallel(self, alive: int, lists: tuple, v: int, d: int) -> Vec:
        lv = lists[v]
        nb = [u for u in self.base[v] if alive >> u & 1]
        if d <= 0 or lv == 0 or not nb:
            return self._node(alive, lists, v, d)
        requests: list[tuple] = []
        dummy = (self.one / 4,) * 4

        def record(a: int, ls: tuple, u: int, dd: int) -> Vec:
            requests.append((a, ls, u, dd))
            return dummy

        self._expand(alive, lists, v, d, nb, record)
        if self._pool is None:
            self._pool = concurrent.futures.ProcessPoolExecutor(
                max_workers=self.threads,
                initializer=_worker_init,
                initargs=(self.base, self.backend, self._cache is not None),
            )
        results = dict(zip(requests, self._pool.map(_worker_node, requests)))
        return self._expand(alive, lists, v, d, nb, lambda a, ls, u, dd: results[(a, ls, u, dd)])


_WORKER: Estimator | None = None


def _worker_init(base: tuple, backend: str, memoize: bool) -> None:
    global _WORKER
    _WORKER = Estimator(Graph(base, (1 << len(base)) - 1), backend, memoize)


def _worker_node(req: tuple) -> Vec:
    assert _WORKER is not None
    return _WORKER._node(*req)


# -- functional surface -------------------------------------------------------

def estimate_marginal(inst: Instance, v: int, i: int, cfg: EstimatorConfig) -> Number:
    """Estimate Pr[c(v)=i] on ``inst`` with recursion depth ``cfg.depth``."""
    color_bit(i)
    est = Estimator.from_config(inst.graph, cfg)
    try:
        return est.estimate(inst, v, i, cfg.depth)
    finally:
        est.close()


def _prepare(inst: Instance, v: int, i: int, cfg: EstimatorConfig, degree: int) -> tuple[Estimator, int, tuple, list]:
    color_bit(i)
    inst._check_vertex(v)
    nb = list(inst.neighbors(v))
    if len(nb) != degree:
        raise ContractError(f"vertex {v} has degree {len(nb)}, expected {degree}")
    if i not in inst.colors(v):
        raise ContractError(f"colour {i} is not in L({v})")
    if cfg.depth < 1:
        raise ContractError("degree procedures need depth >= 1")
    est = Estimator.from_config(inst.graph, cfg)
    alive, lists = est._state(inst)
    return est, alive, lists, nb


def p1(inst: Instance, v: int, i: int, cfg: EstimatorConfig) -> Number:
    est, alive, lists, nb = _prepare(inst, v, i, cfg, 1)
    if not 2 <= inst.list_size(v) <= 4:
        raise ContractError("p1 needs 2 <= |L(v)| <= 4")
    return est._p1(alive, lists, v, cfg.depth, nb[0], est._node)[i - 1]


def p2(inst: Instance, v: int, i: int, cfg: EstimatorConfig) -> Number:
    est, alive, lists, nb = _prepare(inst, v, i, cfg, 2)
    return est._p2(alive, lists, v, cfg.depth, nb, est._node)[i - 1]


def inner_weights(inst: Instance, v: int, cfg: EstimatorConfig) -> Vec:
    """The weights f_1..f_4 that a degree-2 vertex puts on its first (expanded) neighbour.

    They are zero everywhere when L(v) and L(v1) are disjoint, and sum to 1
    otherwise.
    """
    inst._check_vertex(v)
    nb = list(inst.neighbors(v))
    if len(nb) != 2:
        raise ContractError(f"vertex {v} has degree {len(nb)}, expected 2")
    if cfg.depth < 1:
        raise ContractError("degree procedures need depth >= 1")
    est = Estimator.from_config(inst.graph, cfg)
    alive, lists = est._state(inst)
    a, b = nb
    if inst.degree(a) < inst.degree(b):
        a = b
    return tuple(est._inner_weights(alive, lists, v, cfg.depth, a, est._node))


def p3(inst: Instance, v: int, i: int, cfg: EstimatorConfig) -> Number:
    est, alive, lists, nb = _prepare(inst, v, i, cfg, 3)
    if inst.list_size(v) != 4:
        raise ContractError("p3 needs |L(v)| = 4")
    return est._p3(alive, lists, v, cfg.depth, nb, est._node)[i - 1]


# -- boundary structure -------------------------------------------------------

ZERO = "Zero"
HALF_CASE1 = "HalfCase1"
HALF_CASE2 = "HalfCase2"
HALF_CASE3 = "HalfCase3"
INTERIOR = "Interior"


@dataclass(frozen=True)
class BoundaryClass:
    kind: str
    witness: dict

    @property
    def is_half(self) -> bool:
        return self.kind in (HALF_CASE1, HALF_CASE2, HALF_CASE3)


def classify_boundary(inst: Instance, v: int, i: int) -> BoundaryClass:
    """Decide from local structure whether P(v, i) is pinned at 0 or 1/2 for D >= 2."""
    color_bit(i)
    w = check_reachable(inst, v)
    if not w.satisfied:
        raise ContractError(f"({v}) is not reachable: {w.violated_condition}")
    lv = inst.colors(v)
    if i not in lv:
        return BoundaryClass(ZERO, {"vertex": v, "color": i})
    nb = inst.neighbors(v)
    others = {1, 2, 3, 4} - {i}
    if not nb:
        missing = sorted(others - lv)
        if len(missing) >= 2:
            return BoundaryClass(HALF_CASE1, {"vertex": v, "color": i, "absent": missing})
    elif len(nb) == 1:
        u = nb[0]
        lu = inst.colors(u)
        if i not in lu:
            js = sorted(j for j in others if j not in lu and j not in lv)
            if js:
                return BoundaryClass(HALF_CASE2, {"vertex": v, "neighbor": u, "color": i, "absent": js})
    else:
        u1, u2 = nb
        if u2 in inst.neighbors(u1) and i not in inst.colors(u1) and i not in inst.colors(u2):
            return BoundaryClass(HALF_CASE3, {"vertex": v, "triangle": [u1, u2], "color": i})
    return BoundaryClass(INTERIOR, {"vertex": v, "color": i})
