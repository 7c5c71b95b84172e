"""Transformation of a function by a network with convex arc costs.

Given f on the entrance vertices, the induced function on the exits is

    g(y) = min { f(x) + sum_a phi_a(xi(a)) : boundary(xi) = (x, -y, 0) }

Every arc cost lives on a finite interval, so the minimum ranges over a
finite set of flows.  :func:`induce` runs a dynamic programme over the arcs;
:func:`induce_bruteforce` enumerates every flow and serves as its oracle.
Both return the lexicographically least optimal flow (in arc order).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .core import DimensionError, EmptyDomainError, IntVector
from .functions import DiscreteFunction
from .ops import UnivariateConvex


@dataclass(frozen=True)
class Arc:
    id: str
    tail: str
    head: str
    cost: UnivariateConvex

    @property
    def lo(self) -> int:
        return self.cost.lo

    @property
    def hi(self) -> int:
        return self.cost.hi


class FlowNetwork:
    """Digraph (V, A; S, T) with disjoint entrance and exit vertex lists.

    Parallel arcs are allowed; arcs are identified by their ``id``.  The
    order of ``entrances`` fixes which coordinate of f belongs to which
    vertex, and the order of ``exits`` fixes the coordinates of the result.
    """

    def __init__(
        self,
        vertices: Iterable[str],
        arcs: Iterable[Arc],
        entrances: Sequence[str],
        exits: Sequence[str],
    ):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        vs = set(self.vertices)
        self.arcs = tuple(arcs)
        ids = [a.id for a in self.arcs]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate arc ids")
        for a in self.arcs:
            if a.tail not in vs or a.head not in vs:
                raise ValueError(f"arc {a.id} has an endpoint outside the vertex set")
            if not isinstance(a.cost, UnivariateConvex):
                raise TypeError(f"arc {a.id} cost must be UnivariateConvex")
        self.entrances = tuple(entrances)
        self.exits = tuple(exits)
        for v in self.entrances + self.exits:
            if v not in vs:
                raise ValueError(f"terminal {v} is not a vertex")
        if set(self.entrances) & set(self.exits):
            raise ValueError("entrance and exit sets must be disjoint")
        if not self.entrances or not self.exits:
            raise ValueError("need at least one entrance and one exit")
        if len(set(self.entrances)) != len(self.entrances) or len(set(self.exits)) != len(self.exits):
            raise ValueError("duplicate terminal vertex")

    @property
    def internal(self) -> tuple[str, ...]:
        t = set(self.entrances) | set(self.exits)
        return tuple(v for v in self.vertices if v not in t)

    def arc(self, arc_id: str) -> Arc:
        for a in self.arcs:
            if a.id == arc_id:
                return a
        raise KeyError(arc_id)

    def __eq__(self, other):
        if not isinstance(other, FlowNetwork):
            return NotImplemented
        return (self.vertices, self.arcs, self.entrances, self.exits) == (
            other.vertices,
            other.arcs,
            other.entrances,
            other.exits,
        )

    def __repr__(self):
        return (
            f"FlowNetwork(|V|={len(self.vertices)}, |A|={len(self.arcs)}, "
            f"S={list(self.entrances)}, T={list(self.exits)})"
        )


def boundary(G: FlowNetwork, xi: Mapping[str, int]) -> dict[str, int]:
    """Net supply at every vertex: outflow minus inflow."""
    known = {a.id for a in G.arcs}
    for k in xi:
        if k not in known:
            raise KeyError(f"unknown arc id {k!r}")
    out = {v: 0 for v in G.vertices}
    for a in G.arcs:
        if a.id not in xi:
            raise KeyError(f"no flow given for arc {a.id!r}")
        q = xi[a.id]
        out[a.tail] += q
        out[a.head] -= q
    return out


@dataclass(frozen=True)
class Decomposition:
    """An optimal (flow, entrance supply) pair realising g(y)."""

    flow: dict
    supply: IntVector
    cost: object


def _check_labels(f: DiscreteFunction, G: FlowNetwork) -> None:
    if f.dim != len(G.entrances):
        raise DimensionError(
            f"function has dim {f.dim} but network has {len(G.entrances)} entrance vertices"
        )


def induce_with_flows(f: DiscreteFunction, G: FlowNetwork) -> tuple[DiscreteFunction, dict]:
    """Induced exit function plus an optimal decomposition for each exit vector."""
    _check_labels(f, G)
    index = {v: k for k, v in enumerate(G.vertices)}
    internal = {index[v] for v in G.internal}
    ent = [index[v] for v in G.entrances]
    ext = [index[v] for v in G.exits]
    last = {}
    for k, a in enumerate(G.arcs):
        last[index[a.tail]] = k
        last[index[a.head]] = k
    ent_values = [set() for _ in ent]
    for x in f:
        for r, c in enumerate(x):
            ent_values[r].add(c)
    ent_pos = {v: r for r, v in enumerate(ent)}

    def admissible(state, vs):
        for v in vs:
            if v in internal and state[v] != 0:
                return False
            if v in ent_pos and state[v] not in ent_values[ent_pos[v]]:
                return False
        return True

    zero = (0,) * len(G.vertices)
    untouched = [v for v in range(len(G.vertices)) if v not in last]
    if not admissible(zero, untouched):
        raise EmptyDomainError("network induction: result has empty effective domain")

    # state -> (partial cost, partial flow)
    states = {zero: (0, ())}
    for k, a in enumerate(G.arcs):
        t, h = index[a.tail], index[a.head]
        closing = [v for v in {t, h} if last[v] == k]
        nxt: dict = {}
        for st, (c, flow) in states.items():
            for q in range(a.lo, a.hi + 1):
                s2 = list(st)
                s2[t] += q
                s2[h] -= q
                s2 = tuple(s2)
                if not admissible(s2, closing):
                    continue
                c2 = c + a.cost(q)
                fl2 = flow + (q,)
                cur = nxt.get(s2)
                if cur is None or c2 < cur[0] or (c2 == cur[0] and fl2 < cur[1]):
                    nxt[s2] = (c2, fl2)
        states = nxt

    best: dict = {}
    for st, (c, flow) in states.items():
        x = tuple(st[v] for v in ent)
        fx = f.values.get(x)
        if fx is None:
            continue
        y = tuple(-st[v] for v in ext)
        total = c + fx
        cur = best.get(y)
        if cur is None or total < cur[0] or (total == cur[0] and flow < cur[1]):
            best[y] = (total, flow, x)
    return _finish(best, G)


def _finish(best: dict, G: FlowNetwork):
    if not best:
        raise EmptyDomainError("network induction: result has empty effective domain")
    g = DiscreteFunction({y: v[0] for y, v in best.items()})
    decomps = {
        y: Decomposition({a.id: q for a, q in zip(G.arcs, flow)}, x, total)
        for y, (total, flow, x) in best.items()
    }
    return g, decomps


def induce(f: DiscreteFunction, G: FlowNetwork) -> DiscreteFunction:
    return induce_with_flows(f, G)[0]


def induce_bruteforce_with_flows(f: DiscreteFunction, G: FlowNetwork) -> tuple[DiscreteFunction, dict]:
    """Enumerate the full product of arc intervals; exponential, for testing."""
    _check_labels(f, G)
    internal = set(G.internal)
    best: dict = {}
    for flow in product(*[range(a.lo, a.hi + 1) for a in G.arcs]):
        xi = {a.id: q for a, q in zip(G.arcs, flow)}
        bd = boundary(G, xi)
        if any(bd[v] != 0 for v in internal):
            continue
        x = tuple(bd[v] for v in G.entrances)
        fx = f.values.get(x)
        if fx is None:
            continue
        y = tuple(-bd[v] for v in G.exits)
        total = fx + sum(a.cost(q) for a, q in zip(G.arcs, flow))
        cur = best.get(y)
        # product() yields flows in lex order, so strict < keeps the lex-least optimum
        if cur is None or total < cur[0]:
            best[y] = (total, flow, x)
    return _finish(best, G)


def induce_bruteforce(f: DiscreteFunction, G: FlowNetwork) -> DiscreteFunction:
    return induce_bruteforce_with_flows(f, G)[0]
