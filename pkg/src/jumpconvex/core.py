"""Integer-vector primitives: points of Z^n, integer boxes, increments.

Points are plain tuples of Python ints. Every coordinate is kept inside the
signed 64-bit range; arithmetic that would leave it raises
:class:`OverflowError` instead of silently widening.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple

IntVector = Tuple[int, ...]

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class JumpConvexError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(JumpConvexError, ValueError):
    pass


class EmptyDomainError(JumpConvexError, ValueError):
    """An operation produced a function or set with no finite point."""


def _checked(c: int) -> int:
    if not INT64_MIN <= c <= INT64_MAX:
        raise OverflowError(f"coordinate {c} outside signed 64-bit range")
    return c


def vec(coords: Iterable[int]) -> IntVector:
    """Build a validated integer vector from any iterable of integers."""
    out = []
    for c in coords:
        if isinstance(c, bool) or not isinstance(c, int):
            # accept numpy integers and the like, reject floats
            if hasattr(c, "__index__"):
                c = c.__index__()
            else:
                raise TypeError(f"coordinate {c!r} is not an integer")
        out.append(_checked(int(c)))
    if not out:
        raise DimensionError("vectors must have positive dimension")
    return tuple(out)


def _same_dim(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise DimensionError(f"dimension mismatch: {len(x)} vs {len(y)}")


def add(x: IntVector, y: IntVector) -> IntVector:
    _same_dim(x, y)
    return tuple(_checked(a + b) for a, b in zip(x, y))


def sub(x: IntVector, y: IntVector) -> IntVector:
    _same_dim(x, y)
    return tuple(_checked(a - b) for a, b in zip(x, y))


def neg(x: IntVector) -> IntVector:
    return tuple(_checked(-a) for a in x)


def unit(n: int, i: int, sign: int = 1) -> IntVector:
    """Signed unit vector ``sign * e_i`` in dimension ``n`` (``i`` is 0-based)."""
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for dimension {n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return tuple(sign if k == i else 0 for k in range(n))


def component_sum(x: Sequence[int]) -> int:
    return sum(x)


def parity(x: Sequence[int]) -> int:
    """Parity bit of the component sum: 0 if even, 1 if odd."""
    return sum(x) % 2


def l1(x: Sequence[int], y: Sequence[int]) -> int:
    _same_dim(x, y)
    return sum(abs(a - b) for a, b in zip(x, y))


def meet(x: IntVector, y: IntVector) -> IntVector:
    _same_dim(x, y)
    return tuple(min(a, b) for a, b in zip(x, y))


def join(x: IntVector, y: IntVector) -> IntVector:
    _same_dim(x, y)
    return tuple(max(a, b) for a, b in zip(x, y))


@dataclass(frozen=True)
class IntBox:
    """Integer box ``[lower, upper]_Z``, closed on both sides."""

    lower: IntVector
    upper: IntVector

    def __post_init__(self) -> None:
        _same_dim(self.lower, self.upper)
        if any(a > b for a, b in zip(self.lower, self.upper)):
            raise ValueError(f"box lower {self.lower} exceeds upper {self.upper}")

    @classmethod
    def spanned(cls, x: IntVector, y: IntVector) -> "IntBox":
        """Smallest integer box containing both ``x`` and ``y``."""
        return cls(meet(x, y), join(x, y))

    @classmethod
    def cube(cls, dim: int, lo: int, hi: int) -> "IntBox":
        return cls((lo,) * dim, (hi,) * dim)

    @property
    def dim(self) -> int:
        return len(self.lower)

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, tuple) or len(x) != self.dim:
            return False
        return all(a <= c <= b for a, c, b in zip(self.lower, x, self.upper))

    def __iter__(self) -> Iterator[IntVector]:
        from itertools import product

        ranges = [range(a, b + 1) for a, b in zip(self.lower, self.upper)]
        return iter(product(*ranges))

    def size(self) -> int:
        out = 1
        for a, b in zip(self.lower, self.upper):
            out *= b - a + 1
        return out


# Increments are carried internally as (index, direction) pairs; the public
# functions below expand them to unit vectors.


def steps(x: Sequence[int], y: Sequence[int]) -> list[tuple[int, int]]:
    """``(i, d)`` for every (x, y)-increment ``d * e_i``, ascending ``i``.

    At most one direction is admissible per coordinate, so ascending index
    order already realises the "+e_i before -e_i" convention.
    """
    out = []
    for i, (a, b) in enumerate(zip(x, y)):
        if a < b:
            out.append((i, 1))
        elif a > b:
            out.append((i, -1))
    return out


def shift(x: IntVector, i: int, d: int) -> IntVector:
    """``x + d * e_i`` (overflow checked)."""
    return x[:i] + (_checked(x[i] + d),) + x[i + 1 :]


def step_vector(n: int, step: tuple[int, int]) -> IntVector:
    i, d = step
    return unit(n, i, d)


def increments(x: IntVector, y: IntVector) -> list[IntVector]:
    """All (x, y)-increments in deterministic order."""
    _same_dim(x, y)
    n = len(x)
    return [unit(n, i, d) for i, d in steps(x, y)]


def increment_pairs(x: IntVector, y: IntVector) -> list[tuple[IntVector, IntVector]]:
    """All (s, t) with s an (x, y)-increment and t an (x+s, y)-increment."""
    _same_dim(x, y)
    n = len(x)
    out = []
    for i, d in steps(x, y):
        xs = shift(x, i, d)
        for j, e in steps(xs, y):
            out.append((unit(n, i, d), unit(n, j, e)))
    return out


def format_vector(x: Sequence[int]) -> str:
    """Render a point; one-dimensional points print as bare integers."""
    if len(x) == 1:
        return str(x[0])
    return "(" + ",".join(str(c) for c in x) + ")"


def format_step(s: Sequence[int]) -> str:
    """Render a signed unit vector as ``+e1`` / ``-e3`` (1-based index)."""
    nz = [(i, c) for i, c in enumerate(s) if c != 0]
    if len(nz) != 1 or abs(nz[0][1]) != 1:
        return format_vector(s)
    i, c = nz[0]
    return f"{'+' if c > 0 else '-'}e{i + 1}"
