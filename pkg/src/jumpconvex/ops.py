"""Operations on discrete functions and point sets.

Coordinates are named 1..n in every positional argument (index subsets,
partitions, permutations), mirroring the usual mathematical notation; the
underlying tuples remain 0-indexed.  All infima are exact minima over finite
candidate sets, so no operation here can produce -infinity.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

from .core import DimensionError, EmptyDomainError, IntBox, IntVector, add, vec
from .functions import INF, DiscreteFunction, check_jmnat_exc, to_fraction
from .systems import AxiomVerdict, PointSet


def _result(values: dict, what: str) -> DiscreteFunction:
    if not values:
        raise EmptyDomainError(f"{what}: result has empty effective domain")
    return DiscreteFunction(values)


def _index_set(U: Iterable[int], n: int) -> list[int]:
    idx = sorted(set(U))
    if not idx:
        raise ValueError("index subset must be nonempty")
    for i in idx:
        if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= n:
            raise ValueError(f"index {i!r} not in 1..{n}")
    return [i - 1 for i in idx]


def _put_min(out: dict, key, v) -> None:
    cur = out.get(key)
    if cur is None or v < cur:
        out[key] = v


@dataclass(frozen=True)
class Partition:
    """Ordered partition of {1..n} into nonempty blocks."""

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[int]]):
        bl = tuple(tuple(b) for b in blocks)
        if not bl or any(not b for b in bl):
            raise ValueError("partition blocks must be nonempty")
        flat = [i for b in bl for i in b]
        if len(flat) != len(set(flat)):
            raise ValueError("partition blocks overlap")
        n = len(flat)
        if set(flat) != set(range(1, n + 1)):
            raise ValueError(f"blocks must cover exactly 1..{n}, got {sorted(flat)}")
        object.__setattr__(self, "blocks", bl)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls([[i] for i in range(1, n + 1)])


@dataclass(frozen=True)
class SplitFamily:
    """Disjoint nonempty label groups, one per original coordinate.

    The split function's coordinates are the labels of group 1, then group 2,
    and so on.
    """

    groups: tuple[tuple[Hashable, ...], ...]

    def __init__(self, groups: Iterable[Iterable[Hashable]]):
        gs = tuple(tuple(g) for g in groups)
        if not gs or any(not g for g in gs):
            raise ValueError("split groups must be nonempty")
        flat = [u for g in gs for u in g]
        if len(flat) != len(set(flat)):
            raise ValueError("split groups must be disjoint")
        object.__setattr__(self, "groups", gs)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "SplitFamily":
        groups, k = [], 1
        for m in sizes:
            groups.append(tuple(range(k, k + m)))
            k += m
        return cls(groups)

    @property
    def n(self) -> int:
        return len(self.groups)

    @property
    def size(self) -> int:
        return sum(len(g) for g in self.groups)

    @property
    def labels(self) -> tuple:
        return tuple(u for g in self.groups for u in g)

    def merging_partition(self) -> Partition:
        """The partition of the split coordinates that undoes the split."""
        blocks, k = [], 1
        for g in self.groups:
            blocks.append(list(range(k, k + len(g))))
            k += len(g)
        return Partition(blocks)


class UnivariateConvex:
    """Discretely convex function on a finite integer interval; +inf outside."""

    __slots__ = ("lo", "hi", "values")

    def __init__(self, lo: int, hi: int, values: Sequence[object]):
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        vals = tuple(to_fraction(v) for v in values)
        if len(vals) != hi - lo + 1:
            raise ValueError(f"need {hi - lo + 1} values for [{lo}, {hi}], got {len(vals)}")
        for k in range(1, len(vals) - 1):
            if vals[k - 1] + vals[k + 1] < 2 * vals[k]:
                raise ValueError(f"not convex at t={lo + k}")
        self.lo, self.hi, self.values = lo, hi, vals

    @classmethod
    def from_callable(cls, lo: int, hi: int, fn: Callable[[int], object]) -> "UnivariateConvex":
        return cls(lo, hi, [fn(t) for t in range(lo, hi + 1)])

    @classmethod
    def zero(cls, lo: int, hi: int) -> "UnivariateConvex":
        return cls(lo, hi, [0] * (hi - lo + 1))

    def __call__(self, t: int):
        if self.lo <= t <= self.hi:
            return self.values[t - self.lo]
        return INF

    def __eq__(self, other):
        if not isinstance(other, UnivariateConvex):
            return NotImplemented
        return (self.lo, self.hi, self.values) == (other.lo, other.hi, other.values)

    def __hash__(self):
        return hash((self.lo, self.hi, self.values))

    def __repr__(self):
        vs = " ".join(str(v) for v in self.values)
        return f"UnivariateConvex([{self.lo}, {self.hi}]: {vs})"


# -- coordinate transformations -------------------------------------------


def translate(f: DiscreteFunction, b: Sequence[int]) -> DiscreteFunction:
    """g(x) = f(x - b)."""
    b = vec(b)
    if len(b) != f.dim:
        raise DimensionError(f"shift has dim {len(b)}, function has dim {f.dim}")
    return DiscreteFunction({add(x, b): v for x, v in f.items()})


def flip_signs(f: DiscreteFunction, tau: Sequence[int]) -> DiscreteFunction:
    """g(x) = f(tau_1 x_1, ..., tau_n x_n) with every tau_i in {+1, -1}."""
    if len(tau) != f.dim:
        raise DimensionError(f"sign vector has dim {len(tau)}, function has dim {f.dim}")
    if any(t not in (1, -1) for t in tau):
        raise ValueError(f"sign entries must be +1 or -1, got {tuple(tau)}")
    return DiscreteFunction({tuple(t * c for t, c in zip(tau, x)): v for x, v in f.items()})


def permute(f: DiscreteFunction, sigma: Sequence[int]) -> DiscreteFunction:
    """g(x_1, ..., x_n) = f(x_sigma(1), ..., x_sigma(n)); sigma is 1-based."""
    n = f.dim
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of 1..{n}")
    out = {}
    for z, v in f.items():
        x = [0] * n
        for k, s in enumerate(sigma):
            x[s - 1] = z[k]
        out[tuple(x)] = v
    return DiscreteFunction(out)


def scale_variables(f: DiscreteFunction, alpha: int) -> DiscreteFunction:
    """g(x) = f(alpha * x).  Not closure-preserving; used to hunt counterexamples."""
    if alpha < 1:
        raise ValueError("alpha must be a positive integer")
    out = {
        tuple(c // alpha for c in x): v for x, v in f.items() if all(c % alpha == 0 for c in x)
    }
    return _result(out, "variable scaling")


# -- value transformations ------------------------------------------------


def scale_value(f: DiscreteFunction, a) -> DiscreteFunction:
    a = to_fraction(a)
    if a < 0:
        raise ValueError("scale factor must be nonnegative")
    return DiscreteFunction({x: a * v for x, v in f.items()})


def add_linear(f: DiscreteFunction, c: Sequence[object]) -> DiscreteFunction:
    """g(x) = f(x) + <c, x>."""
    if len(c) != f.dim:
        raise DimensionError(f"linear form has dim {len(c)}, function has dim {f.dim}")
    cs = [to_fraction(ci) for ci in c]
    return DiscreteFunction({x: v + sum(ci * xi for ci, xi in zip(cs, x)) for x, v in f.items()})


def add_separable(f: DiscreteFunction, phis: Sequence[UnivariateConvex]) -> DiscreteFunction:
    """g(x) = f(x) + sum_i phi_i(x_i); the domain shrinks to where every phi_i is finite."""
    if len(phis) != f.dim:
        raise DimensionError(f"need {f.dim} univariate terms, got {len(phis)}")
    for p in phis:
        if not isinstance(p, UnivariateConvex):
            raise TypeError("separable terms must be UnivariateConvex")
    out = {}
    for x, v in f.items():
        if all(p.lo <= xi <= p.hi for p, xi in zip(phis, x)):
            out[x] = v + sum(p(xi) for p, xi in zip(phis, x))
    return _result(out, "separable addition")


def pointwise_sum(f1: DiscreteFunction, f2: DiscreteFunction) -> DiscreteFunction:
    """(f1 + f2)(x) on the intersection of the domains."""
    if f1.dim != f2.dim:
        raise DimensionError(f"dimension mismatch: {f1.dim} vs {f2.dim}")
    out = {x: v + f2.values[x] for x, v in f1.items() if x in f2.values}
    return _result(out, "pointwise sum")


# -- restriction, projection, aggregation, splitting ----------------------


def restrict(f: DiscreteFunction, U: Iterable[int]) -> DiscreteFunction:
    """f_U(y) = f(y, 0): keep coordinates in U (ascending), pin the rest to 0."""
    keep = _index_set(U, f.dim)
    ks = set(keep)
    drop = [i for i in range(f.dim) if i not in ks]
    out = {}
    for x, v in f.items():
        if all(x[i] == 0 for i in drop):
            out[tuple(x[i] for i in keep)] = v
    return _result(out, "restriction")


def project(f: DiscreteFunction, U: Iterable[int]) -> DiscreteFunction:
    """f^U(y) = min over the dropped coordinates of f(y, z)."""
    keep = _index_set(U, f.dim)
    out: dict = {}
    for x, v in f.items():
        _put_min(out, tuple(x[i] for i in keep), v)
    return DiscreteFunction(out)


def aggregate(f: DiscreteFunction, P: Partition | Iterable[Iterable[int]]) -> DiscreteFunction:
    """g(y) = min { f(x) : x(N_j) = y_j for every block N_j }."""
    P = P if isinstance(P, Partition) else Partition(P)
    if P.n != f.dim:
        raise DimensionError(f"partition covers 1..{P.n}, function has dim {f.dim}")
    blocks = [[i - 1 for i in b] for b in P.blocks]
    out: dict = {}
    for x, v in f.items():
        _put_min(out, tuple(sum(x[i] for i in b) for b in blocks), v)
    return DiscreteFunction(out)


def _split_buckets(F: SplitFamily, box: IntBox | None) -> list[dict[int, list[tuple]]] | None:
    if box is None:
        return None
    if box.dim != F.size:
        raise DimensionError(f"box has dim {box.dim}, split has dim {F.size}")
    buckets = []
    k = 0
    for g in F.groups:
        ranges = [range(box.lower[k + r], box.upper[k + r] + 1) for r in range(len(g))]
        b: dict[int, list[tuple]] = defaultdict(list)
        for y in product(*ranges):
            b[sum(y)].append(y)
        buckets.append(b)
        k += len(g)
    return buckets


def split(f: DiscreteFunction, F: SplitFamily | Sequence[int], box: IntBox | None = None) -> DiscreteFunction:
    """g(y_1, ..., y_n) = f(y_1(U_1), ..., y_n(U_n)), materialised inside ``box``.

    ``F`` may be a :class:`SplitFamily` or a list of group sizes.  The
    bounding box (in the split coordinates) is mandatory whenever some group
    has more than one label, since the split domain is then infinite.
    """
    if not isinstance(F, SplitFamily):
        F = SplitFamily.from_sizes(F)
    if F.n != f.dim:
        raise DimensionError(f"split has {F.n} groups, function has dim {f.dim}")
    buckets = _split_buckets(F, box)
    if buckets is None:
        if any(len(g) > 1 for g in F.groups):
            raise ValueError("split with a group of size > 1 needs a bounding box")
        return f
    out = {}
    for x, v in f.items():
        parts = [buckets[i].get(c, ()) for i, c in enumerate(x)]
        for combo in product(*parts):
            out[tuple(c for part in combo for c in part)] = v
    return _result(out, "split")


# -- convolution and composition ------------------------------------------


def convolve(f1: DiscreteFunction, f2: DiscreteFunction) -> DiscreteFunction:
    """Infimal convolution (f1 box f2)(x) = min { f1(x1) + f2(x2) : x1 + x2 = x }."""
    if f1.dim != f2.dim:
        raise DimensionError(f"dimension mismatch: {f1.dim} vs {f2.dim}")
    out: dict = {}
    items2 = list(f2.items())
    for x1, v1 in f1.items():
        for x2, v2 in items2:
            _put_min(out, add(x1, x2), v1 + v2)
    return DiscreteFunction(out)


def direct_sum(f1: DiscreteFunction, f2: DiscreteFunction) -> DiscreteFunction:
    """f(x1, x2) = f1(x1) + f2(x2) on Z^(n1 + n2)."""
    items2 = list(f2.items())
    return DiscreteFunction({x1 + x2: v1 + v2 for x1, v1 in f1.items() for x2, v2 in items2})


def compose(
    f1: DiscreteFunction,
    labels1: Sequence[Hashable],
    f2: DiscreteFunction,
    labels2: Sequence[Hashable],
) -> tuple[DiscreteFunction, tuple]:
    """Compose two labelled functions over their shared labels.

    g(y1, y2) = min { f1(y1, z) + f2(y2, z) : z over the shared labels }.
    Returns ``(g, labels)`` where ``labels`` lists the private labels of
    ``f1`` (in its order) followed by those of ``f2``.
    """
    for f, lab in ((f1, labels1), (f2, labels2)):
        if len(lab) != f.dim:
            raise DimensionError(f"{len(lab)} labels for a function of dim {f.dim}")
        if len(set(lab)) != len(lab):
            raise ValueError(f"duplicate labels in {tuple(lab)}")
    shared = [u for u in labels1 if u in set(labels2)]
    own1 = [k for k, u in enumerate(labels1) if u not in set(shared)]
    own2 = [k for k, u in enumerate(labels2) if u not in set(shared)]
    if not own1 and not own2:
        raise DimensionError("composition over all labels leaves no coordinates")
    z1 = [list(labels1).index(u) for u in shared]
    z2 = [list(labels2).index(u) for u in shared]
    by_z: dict = defaultdict(list)
    for x2, v2 in f2.items():
        by_z[tuple(x2[k] for k in z2)].append((tuple(x2[k] for k in own2), v2))
    out: dict = {}
    for x1, v1 in f1.items():
        y1 = tuple(x1[k] for k in own1)
        for y2, v2 in by_z.get(tuple(x1[k] for k in z1), ()):
            _put_min(out, y1 + y2, v1 + v2)
    labels = tuple(labels1[k] for k in own1) + tuple(labels2[k] for k in own2)
    return _result(out, "composition"), labels


# -- set-level analogues ---------------------------------------------------


def minkowski_sum(S1: PointSet, S2: PointSet) -> PointSet:
    if S1.dim != S2.dim:
        raise DimensionError(f"dimension mismatch: {S1.dim} vs {S2.dim}")
    return PointSet({add(a, b) for a in S1 for b in S2})


def restrict_set(S: PointSet, U: Iterable[int]) -> PointSet:
    keep = _index_set(U, S.dim)
    ks = set(keep)
    pts = {
        tuple(x[i] for i in keep)
        for x in S
        if all(x[i] == 0 for i in range(S.dim) if i not in ks)
    }
    if not pts:
        raise EmptyDomainError("restriction: result is empty")
    return PointSet(pts)


def project_set(S: PointSet, U: Iterable[int]) -> PointSet:
    keep = _index_set(U, S.dim)
    return PointSet({tuple(x[i] for i in keep) for x in S})


def aggregate_set(S: PointSet, P: Partition | Iterable[Iterable[int]]) -> PointSet:
    P = P if isinstance(P, Partition) else Partition(P)
    if P.n != S.dim:
        raise DimensionError(f"partition covers 1..{P.n}, set has dim {S.dim}")
    return PointSet({tuple(sum(x[i - 1] for i in b) for b in P.blocks) for x in S})


def split_set(S: PointSet, F: SplitFamily | Sequence[int], box: IntBox) -> PointSet:
    """Points of ``box`` whose group sums land in ``S``."""
    if not isinstance(F, SplitFamily):
        F = SplitFamily.from_sizes(F)
    if F.n != S.dim:
        raise DimensionError(f"split has {F.n} groups, set has dim {S.dim}")
    if box.dim != F.size:
        raise DimensionError(f"box has dim {box.dim}, split has dim {F.size}")
    bounds = []
    k = 0
    for g in F.groups:
        bounds.append((k, k + len(g)))
        k += len(g)
    pts = {y for y in box if tuple(sum(y[a:b]) for a, b in bounds) in S}
    if not pts:
        raise EmptyDomainError("split: no point of the box maps into the set")
    return PointSet(pts)


# -- negative results -----------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    """A jump M-natural-convex input whose transformed output is not."""

    kind: str
    inputs: tuple[DiscreteFunction, ...]
    result: DiscreteFunction
    verdict: AxiomVerdict
    alpha: int | None = None


def find_scaling_counterexample(pool: Iterable[DiscreteFunction], alpha: int) -> Counterexample | None:
    """First f in ``pool`` with f(alpha * x) failing (JM-natural-EXC).

    Members that are not themselves jump M-natural-convex are skipped.
    """
    if alpha < 2:
        raise ValueError("alpha must be at least 2")
    for f in pool:
        if not check_jmnat_exc(f).holds:
            continue
        try:
            g = scale_variables(f, alpha)
        except EmptyDomainError:
            continue
        v = check_jmnat_exc(g)
        if not v.holds:
            return Counterexample("scaling", (f,), g, v, alpha)
    return None


def find_sum_counterexample(pool: Iterable[DiscreteFunction]) -> Counterexample | None:
    """First pair (f1, f2) of distinct pool members whose sum fails (JM-natural-EXC)."""
    members = [f for f in pool if check_jmnat_exc(f).holds]
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            f1, f2 = members[a], members[b]
            if f1.dim != f2.dim:
                continue
            try:
                h = pointwise_sum(f1, f2)
            except EmptyDomainError:
                continue
            v = check_jmnat_exc(h)
            if not v.holds:
                return Counterexample("sum", (f1, f2), h, v)
    return None


def indicator_values(f: DiscreteFunction) -> DiscreteFunction:
    """Indicator of the effective domain (every finite value replaced by 0)."""
    return DiscreteFunction({x: Fraction(0) for x in f})
