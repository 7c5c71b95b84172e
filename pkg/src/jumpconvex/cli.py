"""Command-line interface.

Exit codes: 0 success (axiom holds), 1 usage or parse error, 2 mathematical
failure (axiom fails, malformed lift, empty result domain, failed --verify).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import embed, formats, ops
from .core import EmptyDomainError, IntBox, JumpConvexError, format_vector
from .functions import (
    FUNCTION_CHECKS,
    DiscreteFunction,
    check_jm_exc,
    check_jmnat_exc,
    check_mnat_exc,
    domain,
    local_search_minimize,
    minimize,
    replay_fn,
)
from .generators import gen_jump_mnat_fn, gen_point_set, standard_pool
from .netflow import FlowNetwork, induce
from .systems import AXIOM_LABELS, SET_CHECKS, PointSet, check_jnat_exc, classify

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _ints(s: str) -> list[int]:
    try:
        return [int(t) for t in s.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {s!r}") from None


# -- check / classify -----------------------------------------------------


def cmd_check(args) -> int:
    obj = formats.load(args.path)
    axiom = args.axiom
    if axiom in SET_CHECKS:
        S = domain(obj) if isinstance(obj, DiscreteFunction) else obj
        if not isinstance(S, PointSet):
            raise UsageError("check needs a .jset or .jfn file")
        verdict = SET_CHECKS[axiom](S)
    elif axiom in FUNCTION_CHECKS:
        f = DiscreteFunction.indicator(obj) if isinstance(obj, PointSet) else obj
        if not isinstance(f, DiscreteFunction):
            raise UsageError("check needs a .jset or .jfn file")
        verdict = FUNCTION_CHECKS[axiom](f)
    else:
        raise UsageError(f"unknown axiom {axiom!r}; choose from {', '.join(AXIOM_LABELS)}")
    if args.json:
        print(json.dumps(verdict.as_dict()))
    else:
        print(verdict.describe())
        if not verdict.holds and verdict.witness.candidates:
            print("rejected candidates: " + " ".join(_fmt_cand(c) for c in verdict.witness.candidates))
    return EXIT_OK if verdict.holds else EXIT_MATH


def _fmt_cand(c) -> str:
    from .core import format_step

    if c and isinstance(c[0], tuple):
        return "(" + ",".join(format_step(v) for v in c) + ")"
    return format_step(c)


def cmd_classify(args) -> int:
    obj = formats.load(args.path)
    if isinstance(obj, PointSet):
        rep = classify(obj)
        table = rep.as_dict()
        summary = rep.summary()
    elif isinstance(obj, DiscreteFunction):
        m = check_jm_exc(obj).holds
        mn = check_jmnat_exc(obj).holds
        if m:
            summary = "jump M-convex; jump M♮-convex"
        elif mn:
            summary = "jump M♮-convex; not jump M-convex"
        else:
            summary = "not jump M♮-convex"
        drep = classify(domain(obj))
        table = {"jump_m_convex": m, "jump_mnat_convex": mn, "mnat_convex": check_mnat_exc(obj).holds}
        table.update({f"domain_{k}": v for k, v in drep.as_dict().items()})
        summary += f" (domain: {drep.summary()})"
    else:
        raise UsageError("classify needs a .jset or .jfn file")
    if args.json:
        print(json.dumps({"summary": summary, "classes": table}))
    else:
        print(summary)
        width = max(len(k) for k in table)
        for k, v in table.items():
            print(f"  {k:<{width}}  {'yes' if v else 'no'}")
    return EXIT_OK


# -- embed ----------------------------------------------------------------


def cmd_embed(args) -> int:
    obj = formats.load(args.path)
    if isinstance(obj, PointSet):
        res = embed.tilde_set(obj) if args.direction == "lift" else embed.untilde_set(obj)
    elif isinstance(obj, DiscreteFunction):
        res = embed.tilde_fn(obj) if args.direction == "lift" else embed.untilde_fn(obj)
    else:
        raise UsageError("embed needs a .jset or .jfn file")
    text = formats.dumps(res)
    if args.direction == "lift":
        # coordinate 0 is the parity coordinate
        text = text.replace("\n", "  # x0 x1..xn\n", 1)
    _emit(text, args.output)
    return EXIT_OK


# -- op -------------------------------------------------------------------

SET_OPS = {"restrict", "project", "aggregate", "split", "convolve", "minkowski"}
ARITY = {"convolve": 2, "minkowski": 2, "compose": 2, "induce": 2, "sum": 2}


def _as_fn(obj):
    if isinstance(obj, PointSet):
        return DiscreteFunction.indicator(obj)
    if isinstance(obj, DiscreteFunction):
        return obj
    raise UsageError("expected a .jset or .jfn input")


def _phi(spec: str) -> ops.UnivariateConvex:
    parts = spec.split(":")
    try:
        lo, hi = int(parts[0]), int(parts[1])
        vals = parts[2].split(",")
    except (ValueError, IndexError):
        raise UsageError(f"--phi expects lo:hi:v1,v2,..., got {spec!r}") from None
    return ops.UnivariateConvex(lo, hi, [formats.parse_value(v) for v in vals])


def _box(spec: str, dim: int) -> IntBox:
    parts = spec.split(",")
    try:
        bounds = [tuple(int(t) for t in p.split(":")) for p in parts]
    except ValueError:
        raise UsageError(f"--box expects lo:hi[,lo:hi...], got {spec!r}") from None
    if len(bounds) == 1:
        bounds = bounds * dim
    if len(bounds) != dim or any(len(b) != 2 for b in bounds):
        raise UsageError(f"--box needs 1 or {dim} lo:hi ranges")
    return IntBox(tuple(b[0] for b in bounds), tuple(b[1] for b in bounds))


def _blocks(spec: str) -> list[list[int]]:
    return [_ints(b) for b in spec.split("|")]


def _apply_op(name: str, inputs: list, args):
    want = ARITY.get(name, 1)
    if len(inputs) != want:
        raise UsageError(f"op {name} takes {want} input file(s), got {len(inputs)}")
    sets = all(isinstance(o, PointSet) for o in inputs)
    a = inputs[0]
    if name == "induce":
        if not isinstance(inputs[1], FlowNetwork):
            raise UsageError("op induce takes a function and a .jnet network")
        return induce(_as_fn(a), inputs[1])
    if name in SET_OPS and sets:
        if name == "restrict":
            return ops.restrict_set(a, _need(args.keep, "--keep"))
        if name == "project":
            return ops.project_set(a, _need(args.keep, "--keep"))
        if name == "aggregate":
            return ops.aggregate_set(a, _need(args.blocks, "--blocks"))
        if name == "split":
            F = ops.SplitFamily.from_sizes(_need(args.sizes, "--sizes"))
            return ops.split_set(a, F, _box(_need(args.box, "--box"), F.size))
        return ops.minkowski_sum(a, inputs[1])
    fs = [_as_fn(o) for o in inputs]
    f = fs[0]
    if name == "translate":
        return ops.translate(f, _need(args.by, "--by"))
    if name == "flip":
        return ops.flip_signs(f, _need(args.tau, "--tau"))
    if name == "permute":
        return ops.permute(f, _need(args.sigma, "--sigma"))
    if name == "scale":
        return ops.scale_value(f, formats.parse_value(_need(args.factor, "--factor")))
    if name == "linear":
        return ops.add_linear(f, [formats.parse_value(c) for c in _need(args.c, "--c").split(",")])
    if name == "separable":
        return ops.add_separable(f, [_phi(p) for p in _need(args.phi, "--phi")])
    if name == "restrict":
        return ops.restrict(f, _need(args.keep, "--keep"))
    if name == "project":
        return ops.project(f, _need(args.keep, "--keep"))
    if name == "aggregate":
        return ops.aggregate(f, _need(args.blocks, "--blocks"))
    if name == "split":
        F = ops.SplitFamily.from_sizes(_need(args.sizes, "--sizes"))
        box = _box(args.box, F.size) if args.box else None
        return ops.split(f, F, box)
    if name in ("convolve", "minkowski"):
        return ops.convolve(f, fs[1])
    if name == "sum":
        return ops.pointwise_sum(f, fs[1])
    if name == "scale-vars":
        return ops.scale_variables(f, int(_need(args.alpha, "--alpha")))
    if name == "compose":
        l1 = _need(args.labels1, "--labels1").split(",")
        l2 = _need(args.labels2, "--labels2").split(",")
        g, labels = ops.compose(f, l1, fs[1], l2)
        print("labels: " + " ".join(labels), file=sys.stderr)
        return g
    raise UsageError(f"unknown op {name!r}")


OP_NAMES = (
    "translate flip permute scale linear separable restrict project aggregate "
    "split convolve minkowski compose sum scale-vars induce"
).split()


def _need(v, flag):
    if v is None:
        raise UsageError(f"this op requires {flag}")
    return v


def cmd_op(args) -> int:
    inputs = [formats.load(p) for p in args.inputs]
    res = _apply_op(args.name, inputs, args)
    _emit(formats.dumps(res), args.output)
    if args.verify:
        v = check_jnat_exc(res) if isinstance(res, PointSet) else check_jmnat_exc(res)
        print("verify: " + v.describe(), file=sys.stderr)
        if not v.holds:
            return EXIT_MATH
    return EXIT_OK


# -- minimize -------------------------------------------------------------


def cmd_minimize(args) -> int:
    f = _as_fn(formats.load(args.path))
    x, v = minimize(f)
    report = {"minimizer": list(x), "minimum": formats.format_value(v)}
    lines = [f"min {formats.format_value(v)} at {format_vector(x)}"]
    if args.local:
        trace: list = []
        lx, lv = local_search_minimize(f, trace)
        agree = lv == v
        report.update(
            local_minimizer=list(lx),
            local_minimum=formats.format_value(lv),
            trace=[[list(p), formats.format_value(q)] for p, q in trace],
            agree=agree,
        )
        for k, (p, q) in enumerate(trace):
            lines.append(f"step {k}: {format_vector(p)} -> {formats.format_value(q)}")
        lines.append(f"local min {formats.format_value(lv)} at {format_vector(lx)}: {'agree' if agree else 'disagree'}")
    if args.json:
        print(json.dumps(report))
    else:
        print("\n".join(lines))
    return EXIT_OK


# -- generate / search / replay -------------------------------------------


def cmd_generate(args) -> int:
    if args.kind == "set":
        obj = gen_point_set(args.seed, args.profile)
    else:
        obj = gen_jump_mnat_fn(args.seed, args.profile)
    _emit(formats.dumps(obj), args.output)
    return EXIT_OK


def run_search(kind: str, seed: int, pool_size: int, alpha: int = 2) -> dict:
    """Run a counterexample search and return a JSON-ready verdict record."""
    pool = [inst.fn for inst in standard_pool(seed, pool_size)]
    if kind == "scaling":
        hit = ops.find_scaling_counterexample(pool, alpha)
    elif kind == "sum":
        hit = ops.find_sum_counterexample(pool)
    else:
        raise UsageError(f"unknown search {kind!r}")
    rec = {"search": kind, "seed": seed, "pool_size": pool_size, "found": hit is not None}
    if kind == "scaling":
        rec["alpha"] = alpha
    if hit is not None:
        rec["inputs"] = [formats.dumps(f) for f in hit.inputs]
        rec["result"] = formats.dumps(hit.result)
        rec["verdict"] = hit.verdict.as_dict()
        rec["replays"] = replay_fn(hit.result, hit.verdict)
    return rec


def replay_record(rec: dict) -> bool:
    """True iff a search record is consistent with a fresh recomputation."""
    from .systems import AxiomVerdict, Witness

    if rec["found"]:
        inputs = [formats.loads(t) for t in rec["inputs"]]
        if rec["search"] == "scaling":
            expect = ops.scale_variables(inputs[0], rec["alpha"])
        else:
            expect = ops.pointwise_sum(*inputs)
        result = formats.loads(rec["result"])
        if expect != result or not all(check_jmnat_exc(f).holds for f in inputs):
            return False
        vd = rec["verdict"]
        verdict = AxiomVerdict(vd["axiom"], vd["holds"], Witness.from_dict(vd["witness"]))
        return replay_fn(result, verdict)
    fresh = run_search(rec["search"], rec["seed"], rec["pool_size"], rec.get("alpha", 2))
    return not fresh["found"]


def cmd_search(args) -> int:
    rec = run_search(args.kind, args.seed, args.pool_size, args.alpha)
    _emit(json.dumps(rec, indent=2, sort_keys=True) + "\n", args.output)
    if args.output:
        status = "counterexample found" if rec["found"] else "no counterexample in pool"
        print(f"{args.kind} search: {status}")
    return EXIT_OK


def cmd_replay(args) -> int:
    rec = json.loads(Path(args.path).read_text(encoding="utf-8"))
    ok = replay_record(rec)
    if rec["found"]:
        print("witness replays to a genuine (JM♮-EXC) violation" if ok else "witness does NOT replay")
    else:
        print("no counterexample; recomputation agrees" if ok else "recomputation disagrees")
    return EXIT_OK if ok else EXIT_MATH


# -- wiring ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jumpconvex", description="Jump systems and jump M/M♮-convex functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="verify one exchange axiom")
    c.add_argument("path")
    c.add_argument("axiom", help=", ".join(AXIOM_LABELS))
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify", help="report class membership")
    c.add_argument("path")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("embed", help="parity lift / unlift")
    c.add_argument("path")
    c.add_argument("direction", choices=("lift", "unlift"))
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_embed)

    c = sub.add_parser("op", help="apply an operation")
    c.add_argument("name", choices=OP_NAMES)
    c.add_argument("inputs", nargs="+")
    c.add_argument("-o", "--output")
    c.add_argument("--verify", action="store_true", help="re-check (JM♮-EXC) on the output")
    c.add_argument("--keep", type=_ints_arg, help="1-based coordinates, e.g. 1,3")
    c.add_argument("--blocks", type=_blocks_arg, help="partition, e.g. '1|2,3'")
    c.add_argument("--sizes", type=_ints_arg, help="split group sizes, e.g. 2,1")
    c.add_argument("--box", help="split bounding box: lo:hi or lo:hi,lo:hi,... (use --box=-1:2 for negative bounds)")
    c.add_argument("--by", type=_ints_arg, help="translation vector")
    c.add_argument("--tau", type=_ints_arg, help="sign vector of +1/-1")
    c.add_argument("--sigma", type=_ints_arg, help="1-based permutation")
    c.add_argument("--factor", help="nonnegative value multiplier")
    c.add_argument("--c", help="linear coefficients, comma separated")
    c.add_argument("--phi", action="append", help="lo:hi:v1,v2,... per coordinate, repeated; --phi=-1:1:1,0,1 for negative lo")
    c.add_argument("--alpha", type=int, help="variable scaling factor")
    c.add_argument("--labels1")
    c.add_argument("--labels2")
    c.set_defaults(func=cmd_op)

    c = sub.add_parser("minimize", help="global (and optionally local-search) minimum")
    c.add_argument("path")
    c.add_argument("--local", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_minimize)

    c = sub.add_parser("generate", help="draw a seeded instance")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--profile", default="mixed")
    c.add_argument("--kind", choices=("fn", "set"), default="fn")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_generate)

    c = sub.add_parser("search", help="counterexample search for scaling or sums")
    c.add_argument("kind", choices=("scaling", "sum"))
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--pool-size", type=int, default=60)
    c.add_argument("--alpha", type=int, default=2)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("replay", help="re-check a search verdict file")
    c.add_argument("path")
    c.set_defaults(func=cmd_replay)
    return p


def _ints_arg(s: str) -> list[int]:
    try:
        return _ints(s)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _blocks_arg(s: str) -> list[list[int]]:
    try:
        return _blocks(s)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (formats.ParseError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (embed.MalformedLiftError, EmptyDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (JumpConvexError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
