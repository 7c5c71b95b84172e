"""Line-oriented text formats for sets (.jset), functions (.jfn), networks (.jnet).

::

    jset dim=2            jfn dim=2               jnet
    0 0                   0 0 1                   vertex s entrance
    1 1                   1 0 1/2                 vertex t exit
                                                  arc a1 s t lo=0 hi=2 cost=0 1 4

``#`` starts a comment.  Values are written as reduced ``p/q`` (integers
without the denominator); decimals are accepted on input and read exactly.
Serialisation sorts points lexicographically, so writing a parsed canonical
file reproduces it byte for byte.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Union

from .core import JumpConvexError
from .functions import DiscreteFunction
from .netflow import Arc, FlowNetwork
from .ops import UnivariateConvex
from .systems import PointSet

Loadable = Union[PointSet, DiscreteFunction, FlowNetwork]

_HEADER = re.compile(r"^(jset|jfn)\s+dim=(\d+)$")
_VALUE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?$")


class ParseError(JumpConvexError, ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str | None = None):
        self.msg = msg
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + msg)


def format_value(v: Fraction) -> str:
    return str(Fraction(v))


def parse_value(tok: str, line: int | None = None) -> Fraction:
    if not _VALUE.match(tok):
        raise ParseError(f"bad value {tok!r}", line)
    if "/" in tok and "." in tok:
        raise ParseError(f"decimal numerator in {tok!r}", line)
    try:
        v = Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad value {tok!r}: {exc}", line) from None
    return v


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line) from None


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield k, body


def loads(text: str, source: str | None = None) -> Loadable:
    """Parse any of the three formats, dispatching on the header line."""
    try:
        it = _lines(text)
        try:
            k, head = next(it)
        except StopIteration:
            raise ParseError("empty input: missing header") from None
        if head == "jnet":
            return _parse_jnet(it)
        m = _HEADER.match(head)
        if not m:
            raise ParseError(f"unrecognised header {head!r}", k)
        kind, dim = m.group(1), int(m.group(2))
        if dim < 1:
            raise ParseError("dim must be positive", k)
        if kind == "jset":
            return _parse_jset(it, dim)
        return _parse_jfn(it, dim)
    except ParseError as exc:
        if source and exc.source is None:
            raise ParseError(exc.msg, exc.line, source) from None
        raise


def _parse_jset(it, dim: int) -> PointSet:
    pts, seen = [], {}
    for k, body in it:
        toks = body.split()
        if len(toks) != dim:
            raise ParseError(f"expected {dim} integers, got {len(toks)}", k)
        p = tuple(_int(t, k) for t in toks)
        if p in seen:
            raise ParseError(f"duplicate point (first on line {seen[p]})", k)
        seen[p] = k
        pts.append(p)
    if not pts:
        raise ParseError("set has no points")
    return PointSet(pts)


def _parse_jfn(it, dim: int) -> DiscreteFunction:
    vals, seen = {}, {}
    for k, body in it:
        toks = body.split()
        if len(toks) != dim + 1:
            raise ParseError(f"expected {dim} integers and a value, got {len(toks)} fields", k)
        p = tuple(_int(t, k) for t in toks[:dim])
        if p in seen:
            raise ParseError(f"duplicate point (first on line {seen[p]})", k)
        seen[p] = k
        vals[p] = parse_value(toks[dim], k)
    if not vals:
        raise ParseError("function has empty domain")
    return DiscreteFunction(vals)


def _parse_jnet(it) -> FlowNetwork:
    vertices, entrances, exits, arcs = [], [], [], []
    for k, body in it:
        toks = body.split()
        if toks[0] == "vertex":
            if len(toks) not in (2, 3):
                raise ParseError("vertex line is 'vertex <name> [entrance|exit]'", k)
            name = toks[1]
            if name in vertices:
                raise ParseError(f"duplicate vertex {name!r}", k)
            vertices.append(name)
            if len(toks) == 3:
                if toks[2] == "entrance":
                    entrances.append(name)
                elif toks[2] == "exit":
                    exits.append(name)
                else:
                    raise ParseError(f"vertex role must be entrance or exit, got {toks[2]!r}", k)
        elif toks[0] == "arc":
            arcs.append(_parse_arc(toks, k, vertices))
        else:
            raise ParseError(f"unknown directive {toks[0]!r}", k)
    try:
        return FlowNetwork(vertices, arcs, entrances, exits)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _parse_arc(toks, k, vertices) -> Arc:
    if len(toks) < 7:
        raise ParseError("arc line is 'arc <id> <from> <to> lo=<int> hi=<int> cost=<v> ...'", k)
    _, aid, u, v = toks[:4]
    for w in (u, v):
        if w not in vertices:
            raise ParseError(f"arc endpoint {w!r} not declared", k)
    if not toks[4].startswith("lo=") or not toks[5].startswith("hi=") or not toks[6].startswith("cost="):
        raise ParseError("expected lo=, hi=, cost= fields in that order", k)
    lo = _int(toks[4][3:], k)
    hi = _int(toks[5][3:], k)
    first = toks[6][5:]
    costs = ([first] if first else []) + toks[7:]
    vals = [parse_value(c, k) for c in costs]
    try:
        cost = UnivariateConvex(lo, hi, vals)
    except ValueError as exc:
        raise ParseError(f"arc {aid}: {exc}", k) from None
    return Arc(aid, u, v, cost)


def dumps(obj: Loadable) -> str:
    if isinstance(obj, PointSet):
        lines = [f"jset dim={obj.dim}"]
        lines += [" ".join(str(c) for c in p) for p in obj]
    elif isinstance(obj, DiscreteFunction):
        lines = [f"jfn dim={obj.dim}"]
        lines += [" ".join(str(c) for c in p) + " " + format_value(v) for p, v in obj.items()]
    elif isinstance(obj, FlowNetwork):
        lines = ["jnet"]
        for v in obj.vertices:
            role = " entrance" if v in obj.entrances else " exit" if v in obj.exits else ""
            lines.append(f"vertex {v}{role}")
        for a in obj.arcs:
            cs = " ".join(format_value(c) for c in a.cost.values)
            lines.append(f"arc {a.id} {a.tail} {a.head} lo={a.lo} hi={a.hi} cost={cs}")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def load(path: str | Path) -> Loadable:
    p = Path(path)
    return loads(p.read_text(encoding="utf-8"), source=str(p))


def dump(obj: Loadable, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
