import random

import pytest

from jumpconvex import ops
from jumpconvex.core import DimensionError, EmptyDomainError, IntBox
from jumpconvex.functions import DiscreteFunction, check_jm_exc, check_jmnat_exc, minimize
from jumpconvex.generators import FIXTURE_SETS, unit_square_fn, gen_point_set, standard_pool
from jumpconvex.ops import Partition, SplitFamily, UnivariateConvex
from jumpconvex.systems import PointSet

import oracle


def ind(*pts):
    return DiscreteFunction.indicator(PointSet(pts))


@pytest.fixture
def ind23():
    return DiscreteFunction.indicator(FIXTURE_SETS["triangle"])


def test_univariate_convex():
    sq = UnivariateConvex.from_callable(-2, 2, lambda t: t * t)
    assert sq(2) == 4 and sq(3) == float("inf")
    with pytest.raises(ValueError, match="not convex"):
        UnivariateConvex(0, 2, [0, 1, 0])
    with pytest.raises(ValueError):
        UnivariateConvex(1, 0, [])
    with pytest.raises(ValueError):
        UnivariateConvex(0, 1, [0])


def test_partition_and_split_family():
    with pytest.raises(ValueError):
        Partition([[1], [1, 2]])
    with pytest.raises(ValueError):
        Partition([[1], [3]])
    assert Partition.singletons(3).blocks == ((1,), (2,), (3,))
    F = SplitFamily.from_sizes([2, 1])
    assert F.groups == ((1, 2), (3,)) and F.size == 3 and F.n == 2
    assert F.merging_partition().blocks == ((1, 2), (3,))
    with pytest.raises(ValueError):
        SplitFamily([["a"], ["a", "b"]])


def test_translate(ind02, square_fn):
    assert ops.translate(ind02, (1,)) == ind((1,), (3,))
    assert set(ops.translate(square_fn, (1, 1))) == {(1, 1), (2, 1), (1, 2), (2, 2)}
    assert ops.translate(square_fn, (0, 0)) == square_fn
    with pytest.raises(DimensionError):
        ops.translate(square_fn, (1,))


def test_flip(ind02, square_fn):
    assert ops.flip_signs(square_fn, (1, 1)) == square_fn
    assert ops.flip_signs(ind02, (-1,)) == ind((0,), (-2,))
    assert ops.flip_signs(ops.flip_signs(square_fn, (-1, 1)), (-1, 1)) == square_fn
    with pytest.raises(ValueError):
        ops.flip_signs(square_fn, (2, 1))


def test_permute(square_fn, ind23):
    assert ops.permute(square_fn, (1, 2)) == square_fn
    assert ops.permute(ind23, (2, 1, 3)) == ind23
    g = DiscreteFunction({(1, 2, 3): 5, (0, 0, 1): 1})
    assert ops.permute(ops.permute(g, (2, 3, 1)), (3, 1, 2)) == g
    assert ops.permute(g, (2, 3, 1))((3, 1, 2)) == 5  # g(x) = f(x2, x3, x1)
    with pytest.raises(ValueError):
        ops.permute(g, (1, 1, 2))


def test_scale_value(square_fn):
    assert ops.scale_value(square_fn, 0) == ops.indicator_values(square_fn)
    assert ops.scale_value(square_fn, 1) == square_fn
    assert sorted(ops.scale_value(square_fn, 2).values.values()) == [0, 0, 2, 2]
    with pytest.raises(ValueError):
        ops.scale_value(square_fn, -1)


def test_add_linear(ind02, square_fn):
    assert ops.add_linear(square_fn, (0, 0)) == square_fn
    assert dict(ops.add_linear(ind02, (1,)).values) == {(0,): 0, (2,): 2}
    # tilting towards the first coordinate moves the minimiser to (1,0)
    assert minimize(ops.add_linear(square_fn, ("-1/2", 0)))[0] == (1, 0)


def test_add_separable(ind02, square_fn):
    z = UnivariateConvex.zero(-5, 5)
    assert ops.add_separable(square_fn, [z, z]) == square_fn
    sq = UnivariateConvex.from_callable(-3, 3, lambda t: t * t)
    assert dict(ops.add_separable(ind02, [sq]).values) == {(0,): 0, (2,): 4}
    pin = UnivariateConvex(0, 0, [0])
    assert set(ops.add_separable(square_fn, [pin, z])) == {(0, 0), (0, 1)}
    with pytest.raises(EmptyDomainError):
        ops.add_separable(square_fn, [UnivariateConvex(5, 5, [0]), z])


def test_restrict(square_fn, ind23):
    assert ops.restrict(square_fn, [1, 2]) == square_fn
    assert dict(ops.restrict(square_fn, [1]).values) == {(0,): 1, (1,): 0}
    assert ops.restrict(ind23, [1]) == ind((0,))
    with pytest.raises(EmptyDomainError):
        ops.restrict(ops.translate(square_fn, (1, 1)), [1])


def test_project(square_fn, ind23):
    assert ops.project(square_fn, [1, 2]) == square_fn
    assert dict(ops.project(square_fn, [1]).values) == {(0,): 0, (1,): 0}
    assert ops.project(ind23, [1, 2]) == ind((0, 0), (1, 1), (1, 0), (0, 1))


def test_aggregate(square_fn, ind23):
    assert ops.aggregate(square_fn, Partition.singletons(2)) == square_fn
    assert ops.aggregate(ind23, [[1], [2, 3]]) == ind((0, 0), (1, 1), (0, 2), (1, 2))
    assert dict(ops.aggregate(square_fn, [[1, 2]]).values) == {(0,): 1, (1,): 0, (2,): 1}


def test_split(ind02, square_fn):
    assert ops.split(square_fn, [1, 1]) == square_fn
    box = IntBox.cube(2, -1, 3)
    g = ops.split(ind02, [2], box)
    want = {y for y in box if sum(y) in (0, 2)}
    assert set(g) == want
    with pytest.raises(ValueError, match="bounding box"):
        ops.split(ind02, [2])


def test_split_then_aggregate_round_trip():
    rng = random.Random(5)
    for _ in range(20):
        inst = standard_pool(rng.randint(0, 10**6), 1)[0]
        f = inst.fn
        if f.dim > 2:
            continue
        sizes = [rng.randint(1, 2) for _ in range(f.dim)]
        F = SplitFamily.from_sizes(sizes)
        g = ops.split(f, F, oracle.split_box(f, sizes, pad=1))
        back = ops.aggregate(g, F.merging_partition())
        # every value of f is reached once the box covers the fibres
        assert back == f


def test_convolve(ind02, square_fn):
    zero = ind((0, 0))
    assert ops.convolve(square_fn, zero) == square_fn
    assert ops.convolve(ind02, ind02) == ind((0,), (2,), (4,))
    with pytest.raises(DimensionError):
        ops.convolve(ind02, square_fn)


def test_convolve_matches_oracle_and_algebra():
    pool = [inst.fn for inst in standard_pool(3, 30)]
    by_dim = {}
    for f in pool:
        by_dim.setdefault(f.dim, []).append(f)
    for fs in by_dim.values():
        for f, g in zip(fs, fs[1:]):
            h = ops.convolve(f, g)
            assert dict(h.values) == oracle.convolve(dict(f.values), dict(g.values))
            assert h == ops.convolve(g, f)
        for f, g, k in zip(fs, fs[1:], fs[2:]):
            if len(f) * len(g) * len(k) < 20000:
                assert ops.convolve(ops.convolve(f, g), k) == ops.convolve(f, ops.convolve(g, k))


def test_compose():
    f1 = ind((0, 0), (1, 1))
    g, labels = ops.compose(f1, ["a", "b"], f1, ["b", "c"])
    assert labels == ("a", "c") and g == ind((0, 0), (1, 1))
    h, labels = ops.compose(f1, ["a", "b"], ind((2,)), ["c"])
    assert labels == ("a", "b", "c") and h == ops.direct_sum(f1, ind((2,)))
    with pytest.raises(EmptyDomainError):
        ops.compose(f1, ["a", "b"], ind((5,)), ["b"])


def test_compose_with_free_coordinate_is_projection():
    for inst in standard_pool(4, 24):
        f = inst.fn
        if f.dim < 2:
            continue
        labels = [f"x{k}" for k in range(1, f.dim + 1)]
        vals = [x[-1] for x in f]
        free = DiscreteFunction({(t,): 0 for t in range(min(vals), max(vals) + 1)})
        g, out = ops.compose(f, labels, free, [labels[-1]])
        assert out == tuple(labels[:-1])
        assert g == ops.project(f, range(1, f.dim))
        # convolving with the cylinder {0}^(n-1) x Z and then restricting
        cyl = DiscreteFunction({(0,) * (f.dim - 1) + (-t,): 0 for t in range(min(vals), max(vals) + 1)})
        assert ops.restrict(ops.convolve(f, cyl), range(1, f.dim)) == g


def test_pointwise_sum(square_fn):
    assert ops.pointwise_sum(square_fn, ops.indicator_values(square_fn)) == square_fn
    with pytest.raises(EmptyDomainError):
        ops.pointwise_sum(square_fn, ind((5, 5)))


def test_scaling_var():
    assert ops.scale_variables(ind((0,), (2,)), 2) == ind((0,), (1,))
    with pytest.raises(EmptyDomainError):
        ops.scale_variables(ind((1,)), 2)


def test_set_operations(ind23):
    S = PointSet([(0,), (2,)])
    assert ops.minkowski_sum(S, S) == PointSet([(0,), (2,), (4,)])
    tri_set = FIXTURE_SETS["triangle"]
    assert ops.project_set(tri_set, [1, 2]) == PointSet([(0, 0), (1, 1), (1, 0), (0, 1)])
    assert ops.aggregate_set(tri_set, [[1], [2, 3]]) == PointSet([(0, 0), (1, 1), (0, 2), (1, 2)])
    assert ops.restrict_set(tri_set, [1]) == PointSet([(0,)])
    with pytest.raises(EmptyDomainError):
        ops.restrict_set(PointSet([(1, 1)]), [1])


@pytest.mark.parametrize("seed", range(30))
def test_indicator_commutation(seed):
    rng = random.Random(seed)
    S = gen_point_set(seed, max_points=15, max_dim=3)
    fS = DiscreteFunction.indicator(S)
    n = S.dim
    U = sorted(rng.sample(range(1, n + 1), rng.randint(1, n)))
    assert DiscreteFunction.indicator(ops.project_set(S, U)) == ops.project(fS, U)
    try:
        R = ops.restrict_set(S, U)
    except EmptyDomainError:
        with pytest.raises(EmptyDomainError):
            ops.restrict(fS, U)
    else:
        assert DiscreteFunction.indicator(R) == ops.restrict(fS, U)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    cut = rng.randint(1, n)
    P = [perm[:cut]] + ([perm[cut:]] if perm[cut:] else [])
    assert DiscreteFunction.indicator(ops.aggregate_set(S, P)) == ops.aggregate(fS, P)
    T = gen_point_set(seed + 1000, max_points=10, max_dim=3)
    if T.dim == n:
        assert DiscreteFunction.indicator(ops.minkowski_sum(S, T)) == ops.convolve(
            fS, DiscreteFunction.indicator(T)
        )
    if n <= 2:
        F = SplitFamily.from_sizes([1] * (n - 1) + [2])
        lo = min(min(x) for x in S)
        hi = max(max(x) for x in S)
        box = IntBox.cube(F.size, lo, hi)
        try:
            sp = ops.split_set(S, F, box)
        except EmptyDomainError:
            return
        assert DiscreteFunction.indicator(sp) == ops.split(fS, F, box)


def test_counterexample_search_edges():
    assert ops.find_scaling_counterexample([], 2) is None
    assert ops.find_sum_counterexample([]) is None
    boxes = [ops.indicator_values(DiscreteFunction.indicator(PointSet(IntBox.cube(n, 0, k))))
             for n in (1, 2) for k in (1, 2, 3)]
    assert ops.find_scaling_counterexample(boxes, 2) is None
    with pytest.raises(ValueError):
        ops.find_scaling_counterexample(boxes, 1)


SCALE_SET = [
    (0, 0, 1), (0, 0, 2), (0, 1, 0), (0, 1, 1), (0, 1, 2), (0, 2, 0), (0, 2, 1), (0, 2, 2),
    (1, 0, 0), (1, 0, 1), (1, 0, 2), (1, 1, 0), (1, 1, 1), (1, 1, 2), (1, 2, 0), (1, 2, 1),
    (1, 2, 2), (2, 0, 1), (2, 0, 2), (2, 1, 1), (2, 1, 2), (2, 2, 1),
]


def test_scaling_counterexample():
    assert ops.find_scaling_counterexample([ind((0,), (2,))], 2) is None
    f = DiscreteFunction.indicator(PointSet(SCALE_SET))
    assert oracle.holds(f.values.keys(), oracle.jnat_exc)
    hit = ops.find_scaling_counterexample([f], 2)
    assert hit is not None
    assert set(hit.result) == {(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 1)}
    assert not oracle.fn_holds(dict(hit.result.values), oracle.jmnat_exc)


def test_sum_counterexample():
    diag = ind((0, 0), (1, 1), (2, 2))
    corners = ind((0, 0), (0, 2), (2, 0), (2, 2))
    hit = ops.find_sum_counterexample([diag, corners])
    assert hit is not None and set(hit.result) == {(0, 0), (2, 2)}
    assert not oracle.fn_holds(dict(hit.result.values), oracle.jmnat_exc)
    f = unit_square_fn(0, 1)
    assert ops.find_sum_counterexample([f, ops.indicator_values(f)]) is None


def test_jm_closure_analogue():
    for inst in standard_pool(8, 30):
        f = inst.fn
        if not check_jm_exc(f).holds:
            continue
        assert check_jm_exc(ops.aggregate(f, [list(range(1, f.dim + 1))])).holds
        assert check_jm_exc(ops.convolve(f, f)).holds
        if f.dim <= 2:
            sizes = [2] + [1] * (f.dim - 1)
            g = ops.split(f, sizes, oracle.split_box(f, sizes))
            assert check_jm_exc(g).holds
