"""Seeded instance generators for the property suites.

Everything here is a pure function of an integer seed (and a profile name),
so any failing instance can be regenerated from the pair alone.  Generated
functions are checked against the exchange axiom before release; an
instance that fails is discarded, counted as a rejection and redrawn.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core import IntBox, JumpConvexError
from .embed import tilde_fn, untilde_fn
from .functions import DiscreteFunction, check_jm_exc, check_jmnat_exc
from .netflow import Arc, FlowNetwork
from .ops import UnivariateConvex, add_separable, convolve, project
from .systems import PointSet, check_jexc, classify, is_constant_parity


class GeneratorError(JumpConvexError, RuntimeError):
    """A generator produced an object outside the class it promises."""


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# -- structured point sets -------------------------------------------------


def random_multigraph(rng, n_vertices: int, n_edges: int) -> list[tuple[int, int]]:
    """Loopless multigraph on 1..n_vertices given as an edge list."""
    rng = _rng(rng)
    edges = []
    for _ in range(n_edges):
        u, v = rng.sample(range(1, n_vertices + 1), 2)
        edges.append((min(u, v), max(u, v)))
    return edges


def gen_degree_system(edges: Sequence[tuple[int, int]], n: int | None = None) -> PointSet:
    """Degree sequences of all edge subsets of a multigraph on vertices 1..n.

    Loops count twice towards their vertex.  The result is checked to be a
    constant-parity jump system.
    """
    if n is None:
        n = max(max(e) for e in edges) if edges else 1
    if n > 8 or len(edges) > 12:
        raise ValueError("degree systems are limited to 8 vertices and 12 edges")
    degs = {(0,) * n}
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge {(u, v)} has an endpoint outside 1..{n}")
        bumped = set()
        for d in degs:
            d2 = list(d)
            d2[u - 1] += 1
            d2[v - 1] += 1
            bumped.add(tuple(d2))
        degs |= bumped
    S = PointSet(degs)
    if not check_jexc(S).holds:
        raise GeneratorError(f"degree system of {edges} is not a c.p. jump system")
    return S


def _det_nonzero_rational(M: list[list[int]]) -> bool:
    A = [[Fraction(c) for c in row] for row in M]
    n = len(A)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return False
        A[col], A[piv] = A[piv], A[col]
        for r in range(col + 1, n):
            if A[r][col]:
                m = A[r][col] / A[col][col]
                A[r] = [a - m * b for a, b in zip(A[r], A[col])]
    return True


def _det_nonzero_gf2(M: list[list[int]]) -> bool:
    rows = [sum((c & 1) << k for k, c in enumerate(row)) for row in M]
    n = len(rows)
    for col in range(n):
        bit = 1 << col
        piv = next((r for r in range(col, n) if rows[r] & bit), None)
        if piv is None:
            return False
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(col + 1, n):
            if rows[r] & bit:
                rows[r] ^= rows[col]
    return True


def gen_principal_minor_dm(A: Sequence[Sequence[int]], field: str = "rational") -> PointSet:
    """Characteristic vectors of index sets with a nonsingular principal submatrix.

    The empty index set is always included.  ``field`` selects where the
    determinant is evaluated: ``"rational"`` (exact, default) or ``"gf2"``.
    """
    n = len(A)
    if n == 0 or n > 6 or any(len(r) != n for r in A):
        raise ValueError("need a square matrix of size 1..6")
    if any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise ValueError("matrix must be symmetric")
    test = {"rational": _det_nonzero_rational, "gf2": _det_nonzero_gf2}[field]
    pts = [(0,) * n]
    for k in range(1, n + 1):
        for I in combinations(range(n), k):
            if test([[A[i][j] for j in I] for i in I]):
                pts.append(tuple(1 if i in I else 0 for i in range(n)))
    return PointSet(pts)


def random_symmetric_01(rng, n: int, density: float = 0.5) -> list[list[int]]:
    rng = _rng(rng)
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            A[i][j] = A[j][i] = 1 if rng.random() < density else 0
    return A


def plank_set(box: IntBox, lo: int, hi: int) -> PointSet:
    """Box points with component sum in [lo, hi]: an M-natural-convex set."""
    return PointSet(p for p in box if lo <= sum(p) <= hi)


SET_PROFILES = ("random", "cube", "degree", "projected-degree", "principal-minor", "plank", "perturbed")


def gen_point_set(seed, profile: str = "mixed", max_points: int = 40, max_dim: int = 5) -> PointSet:
    """One point set from the named family (``"mixed"`` picks a family at random)."""
    rng = _rng(seed)
    for _ in range(1000):
        prof = rng.choice(SET_PROFILES) if profile == "mixed" else profile
        S = _draw_set(rng, prof, max_dim)
        if S is not None and len(S) <= max_points and S.dim <= max_dim:
            return S
    raise GeneratorError(f"could not draw a set for profile {profile!r}")


def _draw_set(rng, prof, max_dim):
    n = rng.randint(1, max_dim)
    if prof == "random":
        hi = rng.choice((1, 2, 3)) if n <= 3 else 1
        box = list(IntBox.cube(n, 0, hi))
        k = rng.randint(1, min(len(box), 12))
        return PointSet(rng.sample(box, k))
    if prof == "cube":
        box = list(IntBox.cube(n, 0, 1))
        return PointSet(rng.sample(box, rng.randint(1, len(box))))
    if prof == "degree":
        nv = rng.randint(2, min(max_dim, 5))
        return gen_degree_system(random_multigraph(rng, nv, rng.randint(1, 5)), nv)
    if prof == "projected-degree":
        nv = rng.randint(3, min(max_dim + 1, 6))
        S = gen_degree_system(random_multigraph(rng, nv, rng.randint(2, 6)), nv)
        keep = sorted(rng.sample(range(1, nv + 1), rng.randint(1, nv - 1)))
        return PointSet({tuple(x[i - 1] for i in keep) for x in S})
    if prof == "principal-minor":
        m = rng.randint(1, min(max_dim, 5))
        return gen_principal_minor_dm(random_symmetric_01(rng, m), rng.choice(("rational", "gf2")))
    if prof == "plank":
        m = rng.randint(1, min(max_dim, 3))
        hi = rng.randint(1, 2)
        a = rng.randint(0, m * hi)
        b = rng.randint(a, m * hi)
        return plank_set(IntBox.cube(m, 0, hi), a, b)
    if prof == "perturbed":
        base = _draw_set(rng, rng.choice(("degree", "projected-degree", "plank")), max_dim)
        pts = set(base.points)
        if len(pts) > 1 and rng.random() < 0.5:
            pts.discard(rng.choice(sorted(pts)))
        else:
            p = rng.choice(sorted(pts))
            i = rng.randrange(len(p))
            pts.add(p[:i] + (p[i] + rng.choice((1, -1, 2)),) + p[i + 1 :])
        return PointSet(pts)
    raise ValueError(f"unknown set profile {prof!r}")


# -- functions ------------------------------------------------------------


def random_convex_sequence(rng, lo: int, hi: int, max_step: int = 3) -> UnivariateConvex:
    """Random integer-valued convex function on [lo, hi] (nondecreasing slopes)."""
    rng = _rng(rng)
    slopes = sorted(rng.randint(-max_step, max_step) for _ in range(hi - lo))
    vals = [rng.randint(-2, 2)]
    for s in slopes:
        vals.append(vals[-1] + s)
    return UnivariateConvex(lo, hi, vals)


def random_separable(rng, S: PointSet) -> list[UnivariateConvex]:
    out = []
    for i in range(S.dim):
        cs = [p[i] for p in S]
        out.append(random_convex_sequence(rng, min(cs), max(cs)))
    return out


def square_sum(S: PointSet) -> DiscreteFunction:
    return DiscreteFunction({x: sum(c * c for c in x) for x in S})


def noisy_values(rng, S: PointSet, spread: int = 2) -> DiscreteFunction:
    """Separable convex values on S plus small random integer noise."""
    f = add_separable(DiscreteFunction.indicator(S), random_separable(rng, S))
    return DiscreteFunction({x: v + rng.randint(0, spread) for x, v in f.items()})


@dataclass
class Instance:
    """A generated object with its verified class labels."""

    fn: DiscreteFunction
    profile: str
    seed: object
    labels: dict = field(default_factory=dict)
    rejections: int = 0


FN_PROFILES = ("degree+square", "untilde", "convolution", "plank+separable", "cube-valuated", "projection")


def _se_domain(rng):
    prof = rng.choice(("degree", "projected-degree", "plank", "principal-minor"))
    for _ in range(100):
        S = _draw_set(rng, prof, 4)
        if len(S) <= 30 and check_jmnat_on_set(S):
            return S
    return plank_set(IntBox.cube(2, 0, 1), 0, 2)


def check_jmnat_on_set(S: PointSet) -> bool:
    from .systems import check_jnat_exc

    return check_jnat_exc(S).holds


def _plank_fn(rng, m):
    hi = rng.randint(1, 2)
    a = rng.randint(0, m * hi)
    S = plank_set(IntBox.cube(m, 0, hi), a, rng.randint(a, m * hi))
    return add_separable(DiscreteFunction.indicator(S), random_separable(rng, S))


def _draw_fn(rng, prof):
    if prof == "degree+square":
        nv = rng.randint(2, 4)
        S = gen_degree_system(random_multigraph(rng, nv, rng.randint(1, 5)), nv)
        f = square_sum(S)
        if rng.random() < 0.5:
            f = add_separable(f, random_separable(rng, S))
        return f
    if prof == "untilde":
        S = _se_domain(rng)
        # noisy values are accepted only if the lift is jump M-convex
        for _ in range(20):
            f = noisy_values(rng, S)
            if check_jm_exc(tilde_fn(f)).holds:
                return untilde_fn(tilde_fn(f))
        return None
    if prof == "convolution":
        a = _draw_fn(rng, rng.choice(("degree+square", "plank+separable")))
        b = _plank_fn(rng, a.dim)
        g = convolve(a, b)
        return g if len(g) <= 40 else None
    if prof == "plank+separable":
        return _plank_fn(rng, rng.randint(1, 3))
    if prof == "cube-valuated":
        m = rng.randint(2, 4)
        S = gen_principal_minor_dm(random_symmetric_01(rng, m))
        return noisy_values(rng, S, spread=3)
    if prof == "projection":
        nv = rng.randint(3, 5)
        S = gen_degree_system(random_multigraph(rng, nv, rng.randint(2, 5)), nv)
        f = add_separable(square_sum(S), random_separable(rng, S))
        return project(f, sorted(rng.sample(range(1, nv + 1), rng.randint(1, nv - 1))))
    raise ValueError(f"unknown function profile {prof!r}")


def generate(seed, profile: str = "mixed", max_points: int = 40) -> Instance:
    """Draw a verified jump M-natural-convex function.

    Draws that fail the exchange check (or exceed ``max_points``) are
    rejected and redrawn from the same stream.
    """
    rng = _rng(seed)
    rejections = 0
    for _ in range(500):
        prof = rng.choice(FN_PROFILES) if profile == "mixed" else profile
        f = _draw_fn(rng, prof)
        if f is None or len(f) > max_points or not check_jmnat_exc(f).holds:
            rejections += 1
            continue
        labels = {
            "jump_mnat_convex": True,
            "jump_m_convex": check_jm_exc(f).holds,
            "domain_constant_parity": is_constant_parity(PointSet(f.values.keys())),
        }
        return Instance(f, prof, seed, labels, rejections)
    raise GeneratorError(f"profile {profile!r} kept failing verification")


def gen_jump_mnat_fn(seed, profile: str = "mixed") -> DiscreteFunction:
    return generate(seed, profile).fn


def standard_pool(seed: int = 0, size: int = 100) -> list[Instance]:
    """The reproducible mixed pool used by the closure and search suites.

    Profiles rotate so every construction route is represented.
    """
    rng = random.Random(seed)
    out = []
    for k in range(size):
        prof = FN_PROFILES[k % len(FN_PROFILES)]
        out.append(generate(random.Random(rng.getrandbits(64)), prof))
    return out


def gen_function(seed, profile: str = "mixed") -> DiscreteFunction:
    """Unverified function for equivalence suites: passes or fails the axioms."""
    rng = _rng(seed)
    prof = rng.choice(("mnat", "noisy-se", "noisy-any")) if profile == "mixed" else profile
    if prof == "mnat":
        return generate(rng).fn
    if prof == "noisy-se":
        return noisy_values(rng, _se_domain(rng), spread=rng.randint(1, 4))
    if prof == "noisy-any":
        S = gen_point_set(rng, "mixed", max_points=25, max_dim=4)
        return noisy_values(rng, S, spread=rng.randint(0, 3))
    raise ValueError(f"unknown profile {prof!r}")


def gen_cp_domain_function(seed) -> DiscreteFunction:
    """Function whose domain is a verified constant-parity jump system."""
    rng = _rng(seed)
    route = rng.choice(("degree", "lift", "principal-minor"))
    if route == "degree":
        nv = rng.randint(2, 4)
        S = gen_degree_system(random_multigraph(rng, nv, rng.randint(1, 5)), nv)
    elif route == "lift":
        from .embed import tilde_set

        S = tilde_set(_se_domain(rng))
    else:
        S = None
        for _ in range(50):
            cand = gen_principal_minor_dm(random_symmetric_01(rng, rng.randint(2, 4)))
            if check_jexc(cand).holds:
                S = cand
                break
        if S is None:
            S = gen_degree_system([(1, 2), (2, 3)], 3)
    if not check_jexc(S).holds:
        raise GeneratorError("domain is not a c.p. jump system")
    return noisy_values(rng, S, spread=rng.randint(0, 3))


def random_network(seed, n_entrances: int, max_vertices: int = 6, max_arcs: int = 8) -> FlowNetwork:
    """Small random network with arc bounds inside [-3, 3] and convex costs."""
    rng = _rng(seed)
    n_exit = rng.randint(1, 2)
    n_int = rng.randint(0, max(0, max_vertices - n_entrances - n_exit))
    S = [f"s{k + 1}" for k in range(n_entrances)]
    T = [f"t{k + 1}" for k in range(n_exit)]
    W = [f"v{k + 1}" for k in range(n_int)]
    V = S + T + W
    n_arcs = rng.randint(1, max_arcs)
    arcs = []
    # make every exit reachable from some entrance or internal vertex
    sources = S + W
    for k in range(n_arcs):
        if k < len(T):
            u, v = rng.choice(sources), T[k]
        else:
            u, v = rng.sample(V, 2)
        lo = rng.randint(-3, 1)
        hi = rng.randint(max(lo, 0), min(lo + 3, 3))
        arcs.append(Arc(f"a{k + 1}", u, v, random_convex_sequence(rng, lo, hi, max_step=2)))
    return FlowNetwork(V, arcs, S, T)


def unit_square_fn(a, b) -> DiscreteFunction:
    """f = a on (0,0),(1,1) and b on (1,0),(0,1)."""
    return DiscreteFunction({(0, 0): a, (1, 1): a, (1, 0): b, (0, 1): b})


FIXTURE_SETS = {
    "even-pair": PointSet([(0,), (2,)]),
    "gap": PointSet([(0,), (2,), (3,)]),
    "triangle": PointSet([(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]),
}

TRIANGLE_MATRIX = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def class_labels(S: PointSet) -> dict:
    return classify(S).as_dict()
