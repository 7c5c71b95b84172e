"""Parity lift: prepend the coordinate ``x0 = parity(x)``.

The lift maps sets and functions in n variables to constant-parity objects in
n + 1 variables.  A set satisfies the simultaneous exchange axiom exactly when
its lift satisfies (J-EXC), and likewise for (JM-natural-EXC) versus (JM-EXC).
"""

from __future__ import annotations

from .core import JumpConvexError, format_vector, parity
from .functions import DiscreteFunction
from .systems import PointSet


class MalformedLiftError(JumpConvexError, ValueError):
    def __init__(self, point):
        self.point = point
        super().__init__(
            f"point {format_vector(point)} is not a lift: x0={point[0]} but "
            f"parity of the rest is {parity(point[1:])}"
        )


def lift_point(x):
    return (parity(x),) + tuple(x)


def _unlift_point(p):
    if len(p) < 2 or p[0] != parity(p[1:]):
        raise MalformedLiftError(p)
    return p[1:]


def tilde_set(S: PointSet) -> PointSet:
    return PointSet(lift_point(x) for x in S)


def untilde_set(T: PointSet) -> PointSet:
    return PointSet(_unlift_point(p) for p in T)


def tilde_fn(f: DiscreteFunction) -> DiscreteFunction:
    return DiscreteFunction({lift_point(x): v for x, v in f.items()})


def untilde_fn(g: DiscreteFunction) -> DiscreteFunction:
    return DiscreteFunction({_unlift_point(p): v for p, v in g.items()})


def is_lift(T: PointSet) -> bool:
    return T.dim >= 2 and all(p[0] == parity(p[1:]) for p in T)
