"""``sy-lab`` command line.

Exit codes: 0 when a verdict or object was produced (whatever it says), 1 for
usage or input errors, 2 when an internal invariant check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import atlas, cfrac, treesmith
from .counting import ConstraintSpec, count_profile, mason_verdict_from_profile, sy_verdict_from_profile
from .equality import (
    build_combination_example,
    build_double_matroid,
    build_linear_example,
    equality_criterion,
    total_equality_report,
)
from .errors import InvariantViolation, PreconditionUnmet, SyLabError
from .matroid import BinaryMatroid, from_graph, mask, members
from .multigraph import complete, tau, tree_ratio
from .reductions import SYInstance, cdc_instance, cdcr_identities, cdcr_to_cdc, pad_k
from .suite import SuiteConfig, replay, run_suite
from .textio import emit_graph, emit_matroid, jsonable, parse_index_list, read_any
from .vanishing import feasible, partition_from_blocks, witness

VERIFY_LIMIT = 10 ** 6
MAX_BLOCK_FLAGS = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _out(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _matroid(args) -> BinaryMatroid:
    return read_any(args.matroid)


def _spec(args, M: BinaryMatroid) -> ConstraintSpec:
    R = mask(parse_index_list(getattr(args, "R", None)))
    S, c = [], []
    for i in range(1, MAX_BLOCK_FLAGS + 1):
        s = getattr(args, f"S{i}", None)
        ci = getattr(args, f"c{i}", None)
        if s is None and ci is None:
            continue
        if s is None or ci is None:
            raise UsageError(f"--S{i} and --c{i} go together")
        S.append(mask(parse_index_list(s)))
        c.append(int(ci))
    for m in [R, *S]:
        if m >> M.n:
            raise UsageError("subset refers to an element outside the ground set")
    return ConstraintSpec(R, tuple(S), tuple(c))


def _profile_json(prof) -> dict:
    return {
        "counts": jsonable(prof.counts),
        "normalized": jsonable(prof.normalized),
        "mode": prof.mode,
        "r": prof.r,
        **({"m": prof.m} if prof.m is not None else {}),
    }


# -- handlers -----------------------------------------------------------------

def cmd_count(args) -> int:
    M = _matroid(args)
    prof = count_profile(M, _spec(args, M), args.mode)
    _out(_profile_json(prof))
    return 0


def cmd_sy(args) -> int:
    M = _matroid(args)
    prof = count_profile(M, _spec(args, M))
    v = sy_verdict_from_profile(prof, args.a)
    a = args.a
    _out({"verdict": v.value, "P": jsonable({a - 1: prof.P(a - 1), a: prof.P(a), a + 1: prof.P(a + 1)})})
    return 0


def cmd_equality(args) -> int:
    M = _matroid(args)
    R = mask(parse_index_list(args.R))
    _out(equality_criterion(M, R, args.a).to_json())
    return 0


def cmd_total(args) -> int:
    M = _matroid(args)
    R = mask(parse_index_list(args.R))
    _out(total_equality_report(M, R).to_json())
    return 0


def cmd_vanishing(args) -> int:
    M = _matroid(args)
    blocks = [parse_index_list(b) for b in args.blocks.split("|")]
    c = parse_index_list(args.c)
    p = partition_from_blocks(M.n, blocks, c)
    w = witness(M, p)
    _out({"feasible": feasible(M, p), "witness": None if w is None else members(w)})
    return 0


def cmd_atlas(args) -> int:
    M = _matroid(args)
    R = mask(parse_index_list(args.R))
    t = Fraction(args.t)
    ctx = atlas.atlas_context(M, R, args.a, t=t)
    _, Mt = ctx.mixed()
    hyp = atlas.hyperbolic_check(ctx, spot=not args.no_spot)
    cfg = atlas.cfg_identities(ctx)
    try:
        battery: dict = atlas.property_battery(ctx)
    except PreconditionUnmet as e:
        battery = {"skipped": e.hypothesis}
    _out(
        {
            "inertia": list(atlas.inertia(Mt)),
            "inertia_by_t": {f"{k.numerator}/{k.denominator}": list(v) for k, v in hyp.inertia.items()},
            "hyp": hyp.ok,
            "cfg": all(cfg.values()),
            "battery": battery,
        }
    )
    return 0


def cmd_cf(args) -> int:
    e = cfrac.cf_expand(args.p, args.q)
    print(f"{args.p}/{args.q} = {e}")
    print(f"qsum {e.qsum}")
    return 0


def _verify_flag(args, size: int) -> bool:
    if args.verify is None:
        if size >= VERIFY_LIMIT:
            print(f"warning: skipping matrix-tree verification for input >= {VERIFY_LIMIT}", file=sys.stderr)
            return False
        return True
    return args.verify


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_tree(args) -> int:
    if args.tree_cmd == "exact":
        tc = treesmith.exact_tree_graph(args.N)
        if _verify_flag(args, args.N) and tau(tc.graph) != args.N:
            raise InvariantViolation("matrix-tree count differs from N")
        extra = [f"quotients {','.join(map(str, tc.quotients))}"] if tc.quotients else []
        _emit(emit_graph(tc.graph, tau=args.N, extra=extra), args.out)
        return 0
    if args.tree_cmd == "ratio":
        rc = treesmith.ratio_graph(args.A, args.B)
        if _verify_flag(args, max(args.A, args.B)) and tree_ratio(rc.graph, rc.edge) != Fraction(args.A, args.B):
            raise InvariantViolation("matrix-tree ratio differs from A/B")
        _emit(emit_graph(rc.graph, extra=[f"ratio {rc.A}/{rc.B}"]), args.out)
        return 0
    q = parse_index_list(args.quotients)
    term = treesmith.from_cf(q)
    G = treesmith.realize(term)
    if _verify_flag(args, term.T) and tree_ratio(G, G.marked) != term.ratio:
        raise InvariantViolation("matrix-tree ratio differs from the expansion")
    _emit(emit_graph(G, extra=[f"ratio {term.T}/{term.F}"]), args.out)
    return 0


def _write_instance(M: BinaryMatroid, sidecar: dict, out: str | None) -> None:
    text = emit_matroid(M)
    side = json.dumps(sidecar, sort_keys=True)
    if out:
        Path(out).write_text(text)
        Path(out + ".json").write_text(side + "\n")
    else:
        sys.stdout.write(text + "# " + side + "\n")


def cmd_reduce(args) -> int:
    if args.reduce_cmd == "cdc":
        M = _matroid(args)
        inst = cdc_instance(M, args.x, args.y)
        _write_instance(inst.M, {**inst.to_json(), "verdict": inst.verdict().value}, args.out)
        return 0
    if args.reduce_cmd == "cdcr":
        M = _matroid(args)
        N = read_any(args.other)
        D, x, y = cdcr_to_cdc(M, args.x, N, args.y)
        coincide = cdcr_identities(M, args.x, N, args.y)
        _write_instance(D, {"x": x, "y": y, "coincide": coincide}, args.out)
        return 0
    M = _matroid(args)
    spec = _spec(args, M)
    inst = SYInstance(M, spec.R, args.a, spec.S, spec.c)
    padded = pad_k(inst, args.k)
    v0 = sy_verdict_from_profile(inst.profile(), args.a)
    v1 = sy_verdict_from_profile(padded.profile(), args.a)
    _out({**padded.to_json(), "verdict": v1.value, "unchanged": v0 == v1})
    return 0


def cmd_mason(args) -> int:
    M = _matroid(args)
    spec = _spec(args, M)
    prof = count_profile(M, spec, "independent")
    out = _profile_json(prof)
    out["verdict"] = mason_verdict_from_profile(prof, args.a).value
    _out(out)
    return 0


def cmd_suite(args) -> int:
    if args.replay:
        dump = json.loads(Path(args.replay).read_text())
        o = replay(dump)
        _out({"key": dump["key"], "criterion": dump["criterion"], "checked": o.checked, "failures": o.failures})
        return 0
    crit = tuple(parse_index_list(args.criteria)) if args.criteria else SuiteConfig.criteria
    cfg = SuiteConfig(
        max_n=args.max_n,
        max_d=args.max_d,
        max_vertices=args.max_vertices,
        max_edges=args.max_edges,
        seed=args.seed,
        shards=args.shards,
        out=args.out,
        criteria=crit,
        spot=not args.no_spot,
    )
    report = run_suite(cfg)
    summary = {k: v["passed"] for k, v in report["criteria"].items()}
    if args.out:
        _out({"passed": summary, "report": args.out})
    else:
        _out(report)
    return 0


def _fixtures() -> list[tuple[str, BinaryMatroid, int]]:
    M1, R1 = build_linear_example(3)
    M2, R2 = build_combination_example(3, 1)
    M3, R3 = build_double_matroid(from_graph(complete(3)))
    return [("linear_r3", M1, R1), ("combination_r3", M2, R2), ("double_K3", M3, R3)]


def cmd_fixtures(args) -> int:
    for name, M, R in _fixtures():
        text = emit_matroid(M) + f"# R {','.join(map(str, members(R)))}\n"
        if args.out_dir:
            d = Path(args.out_dir)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"{name}.txt").write_text(text)
        else:
            sys.stdout.write(f"# fixture {name}\n{text}\n")
    return 0


# -- parser -------------------------------------------------------------------

def _add_spec(p: argparse.ArgumentParser, with_R: bool = True) -> None:
    if with_R:
        p.add_argument("--R", default="", help="comma-separated element indices")
    for i in range(1, MAX_BLOCK_FLAGS + 1):
        p.add_argument(f"--S{i}", default=None)
        p.add_argument(f"--c{i}", type=int, default=None)


def _add_verify(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--verify", dest="verify", action="store_true", default=None)
    g.add_argument("--no-verify", dest="verify", action="store_false")
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sy-lab", description="Exact matroid counting and spanning-tree constructions.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="constrained basis or independent-set counts")
    p.add_argument("--matroid", required=True)
    _add_spec(p)
    p.add_argument("--mode", choices=("bases", "independent"), default="bases")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sy", help="log-concavity verdict at one level")
    p.add_argument("--matroid", required=True)
    _add_spec(p)
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(func=cmd_sy)

    p = sub.add_parser("equality", help="local equality criterion (no blocks)")
    p.add_argument("--matroid", required=True)
    p.add_argument("--R", default="")
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(func=cmd_equality)

    p = sub.add_parser("total", help="total equality flags")
    p.add_argument("--matroid", required=True)
    p.add_argument("--R", default="")
    p.set_defaults(func=cmd_total)

    p = sub.add_parser("vanishing", help="rank conditions for a partition")
    p.add_argument("--matroid", required=True)
    p.add_argument("--blocks", required=True, help='e.g. "0,1|2,3"')
    p.add_argument("--c", required=True)
    p.set_defaults(func=cmd_vanishing)

    p = sub.add_parser("atlas", help="atlas matrices and checks")
    p.add_argument("--matroid", required=True)
    p.add_argument("--R", default="")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--t", default="1/2")
    p.add_argument("--no-spot", action="store_true")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("cf", help="continued fraction of p/q")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("tree", help="graphs with prescribed tree counts")
    tsub = p.add_subparsers(dest="tree_cmd", required=True, parser_class=_Parser)
    q = tsub.add_parser("exact")
    q.add_argument("N", type=int)
    _add_verify(q)
    q = tsub.add_parser("ratio")
    q.add_argument("A", type=int)
    q.add_argument("B", type=int)
    _add_verify(q)
    q = tsub.add_parser("fromcf")
    q.add_argument("quotients")
    _add_verify(q)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("reduce", help="instance reductions")
    rsub = p.add_subparsers(dest="reduce_cmd", required=True, parser_class=_Parser)
    q = rsub.add_parser("cdc")
    q.add_argument("--matroid", required=True)
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--y", type=int, required=True)
    q.add_argument("--out", default=None)
    q = rsub.add_parser("cdcr")
    q.add_argument("--matroid", required=True)
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--other", required=True)
    q.add_argument("--y", type=int, required=True)
    q.add_argument("--out", default=None)
    q = rsub.add_parser("pad")
    q.add_argument("--matroid", required=True)
    _add_spec(q)
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("mason", help="generalized Mason verdict")
    p.add_argument("--matroid", required=True)
    _add_spec(p, with_R=False)
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(func=cmd_mason)

    p = sub.add_parser("suite", help="run the exhaustive suite")
    d = SuiteConfig()
    p.add_argument("--max-n", type=int, default=d.max_n)
    p.add_argument("--max-d", type=int, default=d.max_d)
    p.add_argument("--max-vertices", type=int, default=d.max_vertices)
    p.add_argument("--max-edges", type=int, default=d.max_edges)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--criteria", default=None, help="e.g. 1,2,7")
    p.add_argument("--out", default=None)
    p.add_argument("--no-spot", action="store_true")
    p.add_argument("--replay", default=None, help="dumped instance JSON")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("fixtures", help="write the fixed example matroids")
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=cmd_fixtures)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as e:
        print(f"sy-lab: invariant violated: {e}", file=sys.stderr)
        return 2
    except (SyLabError, UsageError, ValueError, KeyError, OSError) as e:
        print(f"sy-lab: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
