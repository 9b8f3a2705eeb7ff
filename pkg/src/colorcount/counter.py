"""Counting proper list colourings by self-reduction over estimated marginals.

Vertices are eliminated in ascending id order.  At each step the marginals of
the current vertex are estimated, the most likely colour is fixed, and
``1/p`` enters the product; with exact marginals the product telescopes to Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from .errors import ContractError, InputError, InvalidInstanceError, UnsatisfiableError
from .estimator import Estimator
from .instance import POPCOUNT, ColorLists, Instance, colors_of

Number = Union[float, Fraction]

LAMBDA = Fraction(9996, 10000)


@dataclass(frozen=True)
class FixedDepth:
    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise InputError("depth must be nonnegative")


@dataclass(frozen=True)
class TargetEpsilon:
    epsilon: float
    constant: float = 1.0

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise InputError("epsilon must lie in (0, 1)")
        if self.constant <= 0:
            raise InputError("the decay constant C must be positive")


@dataclass(frozen=True)
class DepthPolicy:
    mode: Union[FixedDepth, TargetEpsilon]
    lam: Fraction = LAMBDA


@dataclass(frozen=True)
class CountResult:
    estimate: Number
    factors: tuple[tuple[int, int, Number], ...] = field(default=())
    depth_used: int = 0
    epsilon_claimed: float | None = None
    forced: tuple[tuple[int, int], ...] = field(default=())

    @property
    def is_zero(self) -> bool:
        return self.estimate == 0


def fix_vertex(inst: Instance, v: int, c: int) -> Instance:
    """Colour ``v`` with ``c``: delete ``v`` and remove ``c`` from its neighbours' lists."""
    inst._check_vertex(v)
    if c not in inst.colors(v):
        raise ContractError(f"colour {c} is not in L({v})")
    bit = 1 << (c - 1)
    masks = list(inst.lists.masks)
    for u in inst.neighbors(v):
        masks[u] &= ~bit
    return Instance(inst.graph.remove(v), ColorLists(tuple(masks)))


def choose_pivot_color(estimates: Mapping[int, Number], lists: Sequence[int] | frozenset) -> int:
    best, best_p = None, None
    for c in sorted(lists):
        p = estimates[c]
        if best_p is None or p > best_p:
            best, best_p = c, p
    if best is None or best_p <= 0:
        raise UnsatisfiableError("every colour of the pivot vertex has estimate 0")
    return best


def depth_for_epsilon(policy: DepthPolicy, n: int) -> int:
    """Smallest t with C * lam**(t-3) <= eps'/25, where eps' = eps/(2n)."""
    mode = policy.mode
    if not isinstance(mode, TargetEpsilon):
        raise ContractError("depth_for_epsilon needs a TargetEpsilon policy")
    if n < 1:
        raise InputError("n must be positive")
    lam = float(policy.lam)
    target = mode.epsilon / (2 * n) / 25
    t = 3 + math.log(target / mode.constant) / math.log(lam)
    t = max(0, math.ceil(t - 1e-12))
    # guard against rounding at the boundary
    while t > 0 and mode.constant * lam ** (t - 1 - 3) <= target:
        t -= 1
    while mode.constant * lam ** (t - 3) > target:
        t += 1
    return t


def propagate_forced(inst: Instance) -> tuple[Instance, list[tuple[int, int]]] | None:
    """Fix every vertex whose list is a singleton, repeatedly.

    Returns None when some list becomes empty (no proper colouring exists).
    Fixing a forced colour contributes a factor of exactly 1.
    """
    forced = []
    while True:
        masks = inst.lists.masks
        todo = [v for v in inst.vertices() if POPCOUNT[masks[v]] <= 1]
        if not todo:
            return inst, forced
        v = todo[0]
        if masks[v] == 0:
            return None
        (c,) = colors_of(masks[v])
        forced.append((v, c))
        inst = fix_vertex(inst, v, c)


def _resolve_depth(policy: DepthPolicy | FixedDepth | TargetEpsilon | int, n: int) -> tuple[int, float | None]:
    if isinstance(policy, int):
        policy = FixedDepth(policy)
    if isinstance(policy, (FixedDepth, TargetEpsilon)):
        policy = DepthPolicy(policy)
    if isinstance(policy.mode, FixedDepth):
        return policy.mode.depth, None
    return depth_for_epsilon(policy, max(n, 1)), policy.mode.epsilon


def approx_count(
    inst: Instance,
    policy: DepthPolicy | FixedDepth | TargetEpsilon | int,
    backend: str = "float",
    memoize: bool = True,
    threads: int = 1,
    source: Callable[[Instance, int], Sequence[Number]] | None = None,
) -> CountResult:
    """Estimate the number of proper list colourings of ``inst``.

    ``source(inst, v)``, when given, supplies the 4-vector of marginals in
    place of the estimator (used to plug in exact or perturbed values).
    """
    depth, eps = _resolve_depth(policy, inst.num_vertices)
    one = Fraction(1) if backend == "rational" else 1.0
    prop = propagate_forced(inst)
    if prop is None:
        return CountResult(one - one, (), depth, eps)
    inst, forced = prop
    bad = inst.validity_violation()
    if bad is not None:
        raise InvalidInstanceError(bad)
    est = None
    if source is None:
        est = Estimator(inst.graph, backend, memoize, threads)
        source = lambda g, u: est.marginals(g, u, depth)  # noqa: E731
    factors = []
    total = one
    try:
        for v in inst.vertices():
            vec = source(inst, v)
            cols = inst.colors(v)
            c = choose_pivot_color({k: vec[k - 1] for k in cols}, cols)
            p = vec[c - 1]
            factors.append((v, c, p))
            total = total / p
            inst = fix_vertex(inst, v, c)
    except UnsatisfiableError:
        return CountResult(one - one, tuple(factors), depth, eps, tuple(forced))
    finally:
        if est is not None:
            est.close()
    return CountResult(total, tuple(factors), depth, eps, tuple(forced))
