"""Finite point sets and exhaustive verifiers for the set exchange axioms.

Every verifier scans ``x`` and ``y`` over the set in lexicographic order and
the (x, y)-increments in the order fixed by :func:`jumpconvex.core.steps`, and
reports the first violation it meets.  A failed verdict always carries a
:class:`Witness` that :func:`replay` can re-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .core import (
    DimensionError,
    EmptyDomainError,
    IntVector,
    format_step,
    format_vector,
    shift,
    step_vector,
    steps,
    vec,
)

AXIOM_LABELS = {
    "two-step": "(2-step axiom)",
    "j-exc": "(J-EXC)",
    "j-exc+": "(J-EXC+)",
    "jnat-exc": "(J♮-EXC)",
    "bexc+": "(B-EXC+)",
    "bexc-": "(B-EXC-)",
    "bnat-exc": "(B♮-EXC)",
    "jm-exc": "(JM-EXC)",
    "jmnat-exc": "(JM♮-EXC)",
    "jm-exc-loc": "(JM-EXC_loc)",
    "mnat-exc": "(M♮-EXC)",
}


class PointSet:
    """A nonempty finite subset of Z^n.

    Iteration yields the points in lexicographic order.
    """

    __slots__ = ("dim", "points", "_sorted")

    def __init__(self, points: Iterable[Iterable[int]], dim: int | None = None):
        pts = frozenset(vec(p) for p in points)
        if not pts:
            raise EmptyDomainError("point set is empty")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise DimensionError(f"points of mixed dimension {sorted(dims)}")
        (d,) = dims
        if dim is not None and dim != d:
            raise DimensionError(f"declared dim={dim} but points have dim={d}")
        self.dim: int = d
        self.points: frozenset[IntVector] = pts
        self._sorted: tuple[IntVector, ...] = tuple(sorted(pts))

    def __contains__(self, x: object) -> bool:
        return x in self.points

    def __iter__(self) -> Iterator[IntVector]:
        return iter(self._sorted)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PointSet):
            return self.points == other.points
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        body = ", ".join(format_vector(p) for p in self._sorted)
        return f"PointSet({{{body}}})"

    @property
    def sorted_points(self) -> tuple[IntVector, ...]:
        return self._sorted

    def in_unit_cube(self) -> bool:
        return all(c in (0, 1) for p in self.points for c in p)


@dataclass(frozen=True)
class Witness:
    """A violation of an exchange axiom.

    ``candidates`` lists every ``t`` that was tried and rejected (for the
    local axiom, every ``(s, t)`` pair); ``s`` is ``None`` only for the local
    axiom, which quantifies over pairs ``(x, y)`` alone.
    """

    x: IntVector
    y: IntVector
    s: IntVector | None
    candidates: tuple = ()

    def describe(self) -> str:
        parts = [f"x={format_vector(self.x)}", f"y={format_vector(self.y)}"]
        if self.s is not None:
            parts.append(f"s={format_step(self.s)}")
        return " ".join(parts)

    def as_dict(self) -> dict:
        def enc(c):
            if isinstance(c[0], tuple):
                return [list(v) for v in c]
            return list(c)

        return {
            "x": list(self.x),
            "y": list(self.y),
            "s": None if self.s is None else list(self.s),
            "candidates": [enc(c) for c in self.candidates],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Witness":
        def dec(c):
            if c and isinstance(c[0], list):
                return tuple(tuple(v) for v in c)
            return tuple(c)

        return cls(
            x=tuple(d["x"]),
            y=tuple(d["y"]),
            s=None if d.get("s") is None else tuple(d["s"]),
            candidates=tuple(dec(c) for c in d.get("candidates", [])),
        )


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    holds: bool
    witness: Witness | None = field(default=None)

    def __post_init__(self) -> None:
        if not self.holds and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @property
    def label(self) -> str:
        return AXIOM_LABELS.get(self.axiom, self.axiom)

    def describe(self) -> str:
        if self.holds:
            return f"{self.label} holds"
        return f"{self.label} fails: {self.witness.describe()}"

    def as_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.as_dict(),
        }


# A condition receives (x, y, step) and returns (satisfied, tried candidates).
Condition = Callable[[IntVector, IntVector, tuple], tuple]


def scan_pairs(axiom: str, points: tuple[IntVector, ...], cond, step_filter=None) -> AxiomVerdict:
    """Run ``cond`` over every (x, y, s) and stop at the first failure."""
    for x in points:
        for y in points:
            if x is y:
                continue
            for st in steps(x, y):
                if step_filter is not None and not step_filter(st):
                    continue
                ok, cands = cond(x, y, st)
                if not ok:
                    n = len(x)
                    w = Witness(x, y, step_vector(n, st), tuple(step_vector(n, c) for c in cands))
                    return AxiomVerdict(axiom, False, w)
    return AxiomVerdict(axiom, True)


def _two_step_cond(pts):
    def cond(x, y, st):
        i, d = st
        xs = shift(x, i, d)
        if xs in pts:
            return True, ()
        cands = steps(xs, y)
        return any(shift(xs, j, e) in pts for j, e in cands), cands

    return cond


def _jexc_cond(pts):
    def cond(x, y, st):
        i, d = st
        xs = shift(x, i, d)
        ys = shift(y, i, -d)
        cands = steps(xs, y)
        for j, e in cands:
            if shift(xs, j, e) in pts and shift(ys, j, -e) in pts:
                return True, ()
        return False, cands

    return cond


def _jexc_plus_cond(pts):
    def cond(x, y, st):
        i, d = st
        xs = shift(x, i, d)
        cands = steps(xs, y)
        return any(shift(xs, j, e) in pts for j, e in cands), cands

    return cond


def _jnat_cond(pts):
    both = _jexc_cond(pts)

    def cond(x, y, st):
        i, d = st
        if shift(x, i, d) in pts and shift(y, i, -d) in pts:
            return True, ()
        return both(x, y, st)

    return cond


def _bexc_cond(pts, sign):
    # s = sign*e_i, t = -sign*e_j with j moving against s
    def cond(x, y, st):
        i, d = st
        xs = shift(x, i, d)
        cands = [(j, e) for j, e in steps(x, y) if e == -sign]
        return any(shift(xs, j, e) in pts for j, e in cands), cands

    return cond


def _bnat_cond(pts):
    def cond(x, y, st):
        i, d = st
        xs = shift(x, i, d)
        ys = shift(y, i, -d)
        if xs in pts and ys in pts:
            return True, ()
        cands = [(j, e) for j, e in steps(x, y) if e == 1]
        for j, e in cands:
            if shift(xs, j, e) in pts and shift(ys, j, -e) in pts:
                return True, ()
        return False, cands

    return cond


def check_two_step(S: PointSet) -> AxiomVerdict:
    """Bouchet-Cunningham 2-step axiom: S is a jump system."""
    return scan_pairs("two-step", S.sorted_points, _two_step_cond(S.points))


def check_jexc(S: PointSet) -> AxiomVerdict:
    return scan_pairs("j-exc", S.sorted_points, _jexc_cond(S.points))


def check_jexc_plus(S: PointSet) -> AxiomVerdict:
    return scan_pairs("j-exc+", S.sorted_points, _jexc_plus_cond(S.points))


def check_jnat_exc(S: PointSet) -> AxiomVerdict:
    return scan_pairs("jnat-exc", S.sorted_points, _jnat_cond(S.points))


def check_bexc(S: PointSet, sign: str | int = "+") -> AxiomVerdict:
    """Signed basis exchange.

    ``+``: for ``x_i < y_i`` some ``j`` with ``x_j > y_j`` has
    ``x + e_i - e_j`` in S.  ``-`` is the mirror image.  The witness stores
    ``s = +-e_i`` and the rejected ``t = -+e_j``.
    """
    sgn = _sign(sign)
    axiom = "bexc+" if sgn > 0 else "bexc-"
    return scan_pairs(axiom, S.sorted_points, _bexc_cond(S.points, sgn), lambda st: st[1] == sgn)


def check_bnat_exc(S: PointSet) -> AxiomVerdict:
    """Exchange axiom of M-natural-convex sets (used by :func:`classify`)."""
    return scan_pairs("bnat-exc", S.sorted_points, _bnat_cond(S.points), lambda st: st[1] == -1)


def _sign(sign: str | int) -> int:
    if sign in ("+", 1, "plus"):
        return 1
    if sign in ("-", -1, "minus"):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def is_constant_sum(S: PointSet) -> bool:
    return len({sum(p) for p in S.points}) == 1


def is_constant_parity(S: PointSet) -> bool:
    return len({sum(p) % 2 for p in S.points}) == 1


SET_CHECKS: dict[str, Callable[[PointSet], AxiomVerdict]] = {
    "two-step": check_two_step,
    "j-exc": check_jexc,
    "j-exc+": check_jexc_plus,
    "jnat-exc": check_jnat_exc,
    "bexc+": lambda S: check_bexc(S, "+"),
    "bexc-": lambda S: check_bexc(S, "-"),
    "bnat-exc": check_bnat_exc,
}

_SET_CONDITIONS = {
    "two-step": (_two_step_cond, None),
    "j-exc": (_jexc_cond, None),
    "j-exc+": (_jexc_plus_cond, None),
    "jnat-exc": (_jnat_cond, None),
    "bexc+": (lambda pts: _bexc_cond(pts, 1), 1),
    "bexc-": (lambda pts: _bexc_cond(pts, -1), -1),
    "bnat-exc": (_bnat_cond, -1),
}


def replay_set(S: PointSet, verdict: AxiomVerdict) -> bool:
    """True iff a failing verdict's witness is a genuine violation in ``S``."""
    if verdict.holds:
        return False
    w = verdict.witness
    make, sgn = _SET_CONDITIONS[verdict.axiom]
    if w.x not in S or w.y not in S or w.s is None:
        return False
    st = _as_step(w.s)
    if st is None or st not in steps(w.x, w.y):
        return False
    if sgn is not None and st[1] != sgn:
        return False
    ok, _ = make(S.points)(w.x, w.y, st)
    return not ok


def _as_step(s: IntVector) -> tuple[int, int] | None:
    nz = [(i, c) for i, c in enumerate(s) if c != 0]
    if len(nz) != 1 or nz[0][1] not in (1, -1):
        return None
    return nz[0]


@dataclass(frozen=True)
class ClassReport:
    """Membership of a set in each class of the inclusion chain."""

    jump_system: bool
    se_jump_system: bool
    cp_jump_system: bool
    mnat_convex_set: bool
    m_convex_set: bool
    constant_sum: bool
    constant_parity: bool
    in_unit_cube: bool
    delta_matroid: bool
    even_delta_matroid: bool
    simultaneous_delta_matroid: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)

    def tightest(self) -> list[str]:
        if self.m_convex_set:
            return ["M-convex set"]
        pair = []
        if self.cp_jump_system:
            pair.append("constant-parity jump system")
        if self.mnat_convex_set:
            pair.append("M♮-convex set")
        if pair:
            return pair
        if self.se_jump_system:
            return ["simultaneous-exchange jump system"]
        if self.jump_system:
            return ["jump system"]
        return []

    def summary(self) -> str:
        parts = self.tightest()
        if not parts:
            return "not a jump system"
        if self.even_delta_matroid:
            parts.append("even delta-matroid")
        elif self.simultaneous_delta_matroid:
            parts.append("simultaneous delta-matroid")
        elif self.delta_matroid:
            parts.append("delta-matroid")
        if self.m_convex_set:
            return "; ".join(parts)
        if self.cp_jump_system or self.mnat_convex_set:
            if not self.cp_jump_system:
                parts.append("not constant-parity")
            if not self.mnat_convex_set:
                parts.append("not M♮-convex set")
        elif self.se_jump_system:
            parts.append("not constant-parity")
        else:
            parts.append("not simultaneous-exchange")
        return "; ".join(parts)


def classify(S: PointSet) -> ClassReport:
    jump = check_two_step(S).holds
    jnat = check_jnat_exc(S).holds
    cp = check_jexc(S).holds
    cs = is_constant_sum(S)
    mnat = check_bnat_exc(S).holds
    cube = S.in_unit_cube()
    return ClassReport(
        jump_system=jump,
        se_jump_system=jump and jnat,
        cp_jump_system=cp,
        mnat_convex_set=mnat,
        m_convex_set=cs and jump,
        constant_sum=cs,
        constant_parity=is_constant_parity(S),
        in_unit_cube=cube,
        delta_matroid=cube and jump,
        even_delta_matroid=cube and cp,
        simultaneous_delta_matroid=cube and jump and jnat,
    )
