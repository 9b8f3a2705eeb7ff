from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from _corpus import boundary_triple, reachable_instances, reachable_triples
from colorcount.errors import ContractError, InputError
from colorcount.estimator import (
    HALF_CASE1,
    HALF_CASE2,
    HALF_CASE3,
    INTERIOR,
    ZERO,
    Estimator,
    EstimatorConfig,
    classify_boundary,
    estimate_marginal,
    inner_weights,
    p1,
    p2,
    p3,
)
from colorcount.exact import exact_marginal
from colorcount.generators import SplitMix64, complete_k4, petersen, star3
from colorcount.instance import ColorLists, Graph, Instance, check_reachable

Q = Fraction
TRIANGLE = [(0, 1), (1, 2), (0, 2)]


def rational(d: int) -> EstimatorConfig:
    return EstimatorConfig(depth=d, backend="rational")


def test_colour_outside_list_is_zero():
    inst = Instance.build(2, [(0, 1)], [[2, 3, 4], [1, 2, 3, 4]])
    assert estimate_marginal(inst, 0, 1, rational(3)) == 0


def test_isolated_full_list():
    assert estimate_marginal(Instance.build(1, []), 0, 1, rational(0)) == Q(1, 4)
    assert estimate_marginal(Instance.build(1, []), 0, 1, rational(5)) == Q(1, 4)


def test_single_edge():
    assert estimate_marginal(Instance.build(2, [(0, 1)]), 0, 1, rational(5)) == Q(1, 4)


@pytest.mark.parametrize("d", [2, 3, 6])
def test_triangle_with_missing_colour(d):
    inst = Instance.build(3, TRIANGLE, [[1, 2, 3, 4], [2, 3, 4], [2, 3, 4]])
    assert estimate_marginal(inst, 0, 1, rational(d)) == Q(1, 2)
    assert estimate_marginal(inst, 0, 2, rational(d)) == Q(1, 6)


def test_depth_zero_is_uniform_on_list():
    inst = Instance.build(3, [(0, 1), (1, 2)], [[1, 2, 3], [1, 2, 3, 4], [1, 2]])
    assert estimate_marginal(inst, 1, 4, rational(0)) == Q(1, 4)
    assert estimate_marginal(inst, 0, 1, rational(0)) == Q(1, 3)


def test_p1_pendant_pair():
    inst = Instance.build(2, [(0, 1)], [[1, 3, 4], [3, 4]])
    for d in (1, 2, 5):
        assert p1(inst, 0, 1, rational(d)) == Q(1, 2)


def test_p1_contracts():
    with pytest.raises(ContractError):
        p1(Instance.build(3, [(0, 1), (0, 2)]), 0, 1, rational(2))
    with pytest.raises(ContractError):
        p1(Instance.build(2, [(0, 1)], [[2, 3], [1, 2, 3]]), 0, 1, rational(2))
    with pytest.raises(ContractError):
        p1(Instance.build(2, [(0, 1)]), 0, 1, rational(0))


def test_p2_path_matches_oracle():
    # u1 - v1 - v - v2 as 0 - 1 - 2 - 3
    inst = Instance.build(4, [(0, 1), (1, 2), (2, 3)])
    for i in range(1, 5):
        assert p2(inst, 2, i, rational(3)) == exact_marginal(inst, 2, i).value


def test_p3_star_center():
    inst = Instance.build(4, star3())
    for d in (1, 2, 4):
        assert p3(inst, 0, 1, rational(d)) == Q(1, 4)


def test_p3_k4():
    inst = Instance.build(4, complete_k4())
    assert p3(inst, 0, 1, rational(4)) == Q(1, 4) == exact_marginal(inst, 0, 1).value


def test_p3_needs_full_list():
    inst = Instance.build(4, star3(), [[1, 2, 3]])
    with pytest.raises(ContractError):
        p3(inst, 0, 1, rational(2))


def test_petersen_full_lists_are_pinned_by_symmetry():
    # a cubic graph admits only full lists, so every estimate is 1/4 at every depth
    inst = Instance.build(10, petersen())
    truth = exact_marginal(inst, 0, 1).value
    assert truth == Q(1, 4)
    for d in (2, 4):
        assert estimate_marginal(inst, 0, 1, rational(d)) == truth


def test_error_shrinks_with_depth_on_perturbed_petersen():
    edges = [e for e in petersen() if e != (0, 1)]
    inst = Instance.build(10, edges, {0: [1, 2, 3], 1: [2, 3, 4]})
    for v, i in [(0, 1), (4, 1), (5, 4)]:
        truth = exact_marginal(inst, v, i).value
        e2 = abs(estimate_marginal(inst, v, i, rational(2)) - truth)
        e4 = abs(estimate_marginal(inst, v, i, rational(4)) - truth)
        assert 0 < e4 < e2


def test_config_validation():
    with pytest.raises(InputError):
        EstimatorConfig(depth=-1)
    with pytest.raises(InputError):
        EstimatorConfig(depth=1, backend="decimal")
    with pytest.raises(InputError):
        EstimatorConfig(depth=1, threads=0)


def test_foreign_instance_rejected():
    est = Estimator(Graph.from_edges(2, [(0, 1)]))
    with pytest.raises(InputError):
        est.marginals(Instance.build(3, TRIANGLE), 0, 2)


# -- boundary classes ---------------------------------------------------------

def test_classify_isolated_two_colours():
    inst = Instance.build(1, [], [[1, 3]])
    assert classify_boundary(inst, 0, 1).kind == HALF_CASE1


def test_classify_pendant():
    inst = Instance.build(2, [(0, 1)], [[1, 3, 4], [3, 4]])
    assert classify_boundary(inst, 0, 1).kind == HALF_CASE2
    assert classify_boundary(inst, 0, 3).kind == INTERIOR


def test_classify_triangle():
    inst = Instance.build(3, TRIANGLE, [[1, 2, 3, 4], [2, 3, 4], [2, 3, 4]])
    cls = classify_boundary(inst, 0, 1)
    assert cls.kind == HALF_CASE3 and cls.is_half
    assert sorted(cls.witness["triangle"]) == [1, 2]


def test_classify_zero_and_contract():
    inst = Instance.build(2, [(0, 1)], [[2, 3, 4], [1, 2, 3, 4]])
    assert classify_boundary(inst, 0, 1).kind == ZERO
    with pytest.raises(ContractError):
        classify_boundary(Instance.build(4, star3()), 0, 1)


@pytest.mark.parametrize("seed", range(30))
def test_constructed_boundaries_hit_one_half(seed):
    inst, v, i = boundary_triple(SplitMix64(seed), seed % 6)
    assert classify_boundary(inst, v, i).is_half
    for d in (2, 3, 5):
        assert estimate_marginal(inst, v, i, rational(d)) == Q(1, 2)


# -- properties ---------------------------------------------------------------

_REACH = reachable_instances(300, seed=31)
_TRIPLES = reachable_triples(300, seed=32)


@given(st.sampled_from(_REACH), st.integers(0, 7))
def test_sum_to_one(pair, d):
    inst, v = pair
    est = Estimator(inst.graph, "rational")
    assert sum(est.marginals(inst, v, d)) == 1
    flt = Estimator(inst.graph, "float")
    assert abs(sum(flt.marginals(inst, v, d)) - 1) <= 1e-12


@given(st.sampled_from(_REACH), st.integers(1, 6))
def test_inner_weights_sum_to_one(pair, d):
    inst, v = pair
    if inst.degree(v) != 2:
        return
    f = inner_weights(inst, v, rational(d))
    assert all(x >= 0 for x in f)
    assert sum(f) in (0, 1)
    a, b = inst.neighbors(v)
    first = a if inst.degree(a) >= inst.degree(b) else b
    if inst.colors(v) & inst.colors(first):
        assert sum(f) == 1


class CheckingEstimator(Estimator):
    """Asserts that every query below the root is at a reachable vertex."""

    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        self.at_root = True
        self.checked = 0

    def _node(self, alive, lists, v, d):
        if self.at_root:
            self.at_root = False
        else:
            sub = Instance(Graph(self.base, alive), ColorLists(lists))
            w = check_reachable(sub, v)
            assert w.satisfied, (sub.describe(), v, w.violated_condition)
            self.checked += 1
        return super()._node(alive, lists, v, d)


@settings(max_examples=200)
@given(st.sampled_from(_REACH + [(Instance.build(10, petersen()), 0)]), st.integers(1, 5))
def test_recursive_children_are_reachable(pair, d):
    inst, v = pair
    est = CheckingEstimator(inst.graph, "float", memoize=False)
    est.marginals(inst, v, d)


@settings(max_examples=60)
@given(st.sampled_from(_TRIPLES), st.integers(0, 6))
def test_memo_and_parallel_agree(triple, d):
    inst, v, _ = triple
    base = Estimator(inst.graph, "rational", memoize=False).marginals(inst, v, d)
    assert Estimator(inst.graph, "rational", memoize=True).marginals(inst, v, d) == base
    flt = Estimator(inst.graph, "float", memoize=False).marginals(inst, v, d)
    assert Estimator(inst.graph, "float", memoize=True).marginals(inst, v, d) == flt


def test_parallel_is_bitwise_identical():
    inst = Instance.build(10, petersen())
    serial = Estimator(inst.graph, "float").marginals(inst, 0, 5)
    par = Estimator(inst.graph, "float", threads=2)
    try:
        assert par.marginals(inst, 0, 5) == serial
    finally:
        par.close()
    for inst, v, _ in _TRIPLES[:20]:
        serial = Estimator(inst.graph, "rational").marginals(inst, v, 4)
        par = Estimator(inst.graph, "rational", threads=2)
        try:
            assert par.marginals(inst, v, 4) == serial
        finally:
            par.close()


def test_memo_reuses_work():
    inst = Instance.build(10, petersen())
    est = Estimator(inst.graph, "float")
    est.marginals(inst, 0, 6)
    assert est.hits > 0
    bare = Estimator(inst.graph, "float", memoize=False)
    bare.marginals(inst, 0, 6)
    assert bare.expansions > est.expansions


def test_one_step_with_exact_children_is_exact():
    inst = Instance.build(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    est = Estimator(inst.graph, "rational")

    def truth(sub, u, d):
        return tuple(exact_marginal(sub, u, c).value if c in sub.colors(u) else Q(0) for c in range(1, 5))

    got = est.one_step(inst, 0, 3, truth)
    assert got == tuple(exact_marginal(inst, 0, c).value for c in range(1, 5))
