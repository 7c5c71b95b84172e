"""Finitely supported functions Z^n -> Q with implicit +infinity elsewhere."""

from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .core import DimensionError, EmptyDomainError, IntVector, l1, shift, step_vector, steps, vec
from .systems import AxiomVerdict, PointSet, Witness, scan_pairs

INF = math.inf

Value = Union[Fraction, float]  # float only ever for +inf


def to_fraction(v) -> Fraction:
    """Exact rational from an int, Fraction, or decimal/``p/q`` string.

    Floats are converted through their shortest decimal repr so that
    ``0.1`` means one tenth, not the nearest binary double.
    """
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not values")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError("stored values must be finite")
        return Fraction(repr(v))
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot interpret {v!r} as a rational value")


class DiscreteFunction:
    """Map from a nonempty finite domain to exact rationals; +inf elsewhere.

    Instances are immutable and hashable.
    """

    __slots__ = ("dim", "values", "_sorted", "_hash")

    def __init__(self, values: Mapping[Iterable[int], object], dim: int | None = None):
        vals: dict[IntVector, Fraction] = {}
        for k, v in values.items():
            fv = to_fraction(v)
            vals[vec(k)] = fv
        if not vals:
            raise EmptyDomainError("effective domain is empty")
        dims = {len(p) for p in vals}
        if len(dims) != 1:
            raise DimensionError(f"points of mixed dimension {sorted(dims)}")
        (d,) = dims
        if dim is not None and dim != d:
            raise DimensionError(f"declared dim={dim} but points have dim={d}")
        self.dim: int = d
        self.values: Mapping[IntVector, Fraction] = MappingProxyType(vals)
        self._sorted = tuple(sorted(vals))
        self._hash = None

    @classmethod
    def indicator(cls, S: PointSet | Iterable[Iterable[int]]) -> "DiscreteFunction":
        pts = S if isinstance(S, PointSet) else PointSet(S)
        return cls({p: 0 for p in pts})

    def __call__(self, x: IntVector) -> Value:
        return self.values.get(x, INF)

    def __contains__(self, x: object) -> bool:
        return x in self.values

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self._sorted)

    def items(self):
        return ((p, self.values[p]) for p in self._sorted)

    @property
    def sorted_points(self) -> tuple[IntVector, ...]:
        return self._sorted

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DiscreteFunction):
            return dict(self.values) == dict(other.values)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.values.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{p}: {v}" for p, v in self.items())
        return f"DiscreteFunction({{{body}}})"


def domain(f: DiscreteFunction) -> PointSet:
    return PointSet(f.values.keys())


def _jm_cond(f: DiscreteFunction):
    vals = f.values

    def cond(x, y, st):
        i, d = st
        xs = shift(x, i, d)
        ys = shift(y, i, -d)
        base = vals[x] + vals[y]
        cands = steps(xs, y)
        for j, e in cands:
            a = vals.get(shift(xs, j, e))
            if a is None:
                continue
            b = vals.get(shift(ys, j, -e))
            if b is not None and base >= a + b:
                return True, ()
        return False, cands

    return cond


def _jmnat_cond(f: DiscreteFunction):
    vals = f.values
    two = _jm_cond(f)

    def cond(x, y, st):
        i, d = st
        a = vals.get(shift(x, i, d))
        if a is not None:
            b = vals.get(shift(y, i, -d))
            if b is not None and vals[x] + vals[y] >= a + b:
                return True, ()
        return two(x, y, st)

    return cond


def _mnat_cond(f: DiscreteFunction):
    vals = f.values

    def cond(x, y, st):
        i, d = st
        xs = shift(x, i, d)
        ys = shift(y, i, -d)
        base = vals[x] + vals[y]
        a, b = vals.get(xs), vals.get(ys)
        if a is not None and b is not None and base >= a + b:
            return True, ()
        cands = [(j, e) for j, e in steps(x, y) if e == 1]
        for j, e in cands:
            a = vals.get(shift(xs, j, e))
            b = vals.get(shift(ys, j, -e))
            if a is not None and b is not None and base >= a + b:
                return True, ()
        return False, cands

    return cond


def check_jm_exc(f: DiscreteFunction) -> AxiomVerdict:
    """Exchange axiom of jump M-convex functions, checked exhaustively."""
    return scan_pairs("jm-exc", f.sorted_points, _jm_cond(f))


def check_jmnat_exc(f: DiscreteFunction) -> AxiomVerdict:
    """Two-clause exchange axiom of jump M-natural-convex functions."""
    return scan_pairs("jmnat-exc", f.sorted_points, _jmnat_cond(f))


def _loc_ok(f: DiscreteFunction, x: IntVector, y: IntVector):
    vals = f.values
    base = vals[x] + vals[y]
    tried = []
    for i, d in steps(x, y):
        xs = shift(x, i, d)
        ys = shift(y, i, -d)
        for j, e in steps(xs, y):
            a = vals.get(shift(xs, j, e))
            b = vals.get(shift(ys, j, -e))
            if a is not None and b is not None and base >= a + b:
                return True, ()
            tried.append(((i, d), (j, e)))
    return False, tried


def check_mnat_exc(f: DiscreteFunction) -> AxiomVerdict:
    """Exchange axiom of ordinary M-natural-convex functions.

    For ``x_i > y_i``: f(x) + f(y) >= f(x - e_i) + f(y + e_i), or the same
    with an extra ``+e_j`` / ``-e_j`` for some ``j`` with ``x_j < y_j``.
    """
    return scan_pairs("mnat-exc", f.sorted_points, _mnat_cond(f), lambda st: st[1] == -1)


def check_jm_exc_loc(f: DiscreteFunction) -> AxiomVerdict:
    """Local exchange over pairs at l1-distance exactly 4.

    Together with a constant-parity jump-system domain this is equivalent
    to the global jump M-convex exchange axiom.
    """
    pts = f.sorted_points
    n = f.dim
    for x in pts:
        for y in pts:
            if l1(x, y) != 4:
                continue
            ok, tried = _loc_ok(f, x, y)
            if not ok:
                cands = tuple((step_vector(n, s), step_vector(n, t)) for s, t in tried)
                return AxiomVerdict("jm-exc-loc", False, Witness(x, y, None, cands))
    return AxiomVerdict("jm-exc-loc", True)


def is_jump_m_convex(f: DiscreteFunction) -> bool:
    return check_jm_exc(f).holds


def is_jump_mnat_convex(f: DiscreteFunction) -> bool:
    return check_jmnat_exc(f).holds


FUNCTION_CHECKS = {
    "jm-exc": check_jm_exc,
    "jmnat-exc": check_jmnat_exc,
    "jm-exc-loc": check_jm_exc_loc,
    "mnat-exc": check_mnat_exc,
}


def replay_fn(f: DiscreteFunction, verdict: AxiomVerdict) -> bool:
    """True iff a failing verdict's witness is a genuine violation for ``f``."""
    if verdict.holds:
        return False
    w = verdict.witness
    if w.x not in f or w.y not in f:
        return False
    if verdict.axiom == "jm-exc-loc":
        return l1(w.x, w.y) == 4 and not _loc_ok(f, w.x, w.y)[0]
    cond = {"jm-exc": _jm_cond, "jmnat-exc": _jmnat_cond, "mnat-exc": _mnat_cond}[verdict.axiom](f)
    if w.s is None:
        return False
    nz = [(i, c) for i, c in enumerate(w.s) if c != 0]
    if len(nz) != 1 or nz[0] not in steps(w.x, w.y):
        return False
    if verdict.axiom == "mnat-exc" and nz[0][1] != -1:
        return False
    return not cond(w.x, w.y, nz[0])[0]


def minimize(f: DiscreteFunction) -> tuple[IntVector, Fraction]:
    """Global minimum by full scan; ties go to the lexicographically least point."""
    best = None
    for p in f.sorted_points:
        v = f.values[p]
        if best is None or v < best[1]:
            best = (p, v)
    return best


def neighbours(x: IntVector, radius: int = 2):
    """All points at l1-distance 1..radius from ``x`` (radius <= 2)."""
    n = len(x)
    seen = set()
    for i in range(n):
        for d in (1, -1):
            xi = shift(x, i, d)
            if xi not in seen:
                seen.add(xi)
                yield xi
            if radius < 2:
                continue
            for j in range(n):
                for e in (1, -1):
                    xij = shift(xi, j, e)
                    if xij != x and xij not in seen:
                        seen.add(xij)
                        yield xij


def local_search_minimize(
    f: DiscreteFunction, trace: list | None = None
) -> tuple[IntVector, Fraction]:
    """Steepest descent over the l1-ball of radius 2 inside the domain.

    Starts at the lexicographically least domain point and moves to the best
    strictly improving neighbour (lex-least among equals) until none exists.
    If ``trace`` is given, visited ``(point, value)`` pairs are appended.
    """
    vals = f.values
    x = f.sorted_points[0]
    fx = vals[x]
    if trace is not None:
        trace.append((x, fx))
    while True:
        best = None
        for z in neighbours(x):
            v = vals.get(z)
            if v is None or v >= fx:
                continue
            if best is None or v < best[1] or (v == best[1] and z < best[0]):
                best = (z, v)
        if best is None:
            return x, fx
        x, fx = best
        if trace is not None:
            trace.append((x, fx))
