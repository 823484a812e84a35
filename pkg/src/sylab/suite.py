"""Exhaustive small-instance suite.

The universe is every binary matroid given by a multiset of at most ``max_n``
columns in F2^max_d, the graphic matroids of connected loopless multigraphs on
at most ``max_vertices`` vertices and ``max_edges`` edges (one per isomorphism
class), and a few fixed constructions.  Each numbered criterion is a function
of one instance, so any failure can be replayed from its dump.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import comb
from pathlib import Path
from typing import Callable, Iterator

from . import atlas, cfrac, treesmith
from .counting import (
    ConstraintSpec,
    Verdict,
    count_profile,
    count_via_ratio_product,
    mason_verdict_from_profile,
    ratio_bound_ok,
    sy_verdict_from_profile,
    truncated_sum_counts,
)
from .equality import (
    build_combination_example,
    build_double_matroid,
    build_linear_example,
    equality_criterion,
    total_equality_report,
)
from .errors import InvariantViolation, PreconditionUnmet, SizeLimit
from .matroid import (
    BinaryMatroid,
    brute_limit,
    count_bases,
    enumerate_bases,
    from_columns,
    from_graph,
    is_independent,
    iter_independent,
    loops,
    mask,
    members,
    nonloops,
    popcount,
)
from .multigraph import Multigraph, bundle, complete, cycle, is_connected, tau, tree_ratio
from .reductions import SYInstance, cdc_identities, cdcr_identities, cdcr_to_cdc, pad_k
from .textio import emit_matroid, parse_matroid
from .vanishing import PartitionSpec, feasible, nonvanishing_range, range_formula, witness

MAX_EXAMPLES = 20

CRITERIA = {
    1: "log-concavity over all constraint choices",
    2: "local equality criterion agrees with the profile",
    3: "vanishing: rank conditions vs witnesses",
    4: "total equality flags and fixtures",
    5: "atlas matrices: inertia, identities, battery",
    6: "tree constructions",
    7: "reductions and ratio products",
    8: "generalized Mason inequality",
}


@dataclass(frozen=True)
class SuiteConfig:
    max_n: int = 5
    max_d: int = 3
    max_vertices: int = 4
    max_edges: int = 6
    seed: int = 20240607
    shards: int = 1
    out: str | None = None
    criteria: tuple[int, ...] = tuple(CRITERIA)
    fixtures: bool = True
    spot: bool = True
    chain_max_n: int = 4
    mason_identity_max_n: int = 4
    cf_lists: int = 1000
    exact_lo: int = 3
    exact_hi: int = 2000
    exact_random: int = 100
    exact_random_max: int = 10 ** 9
    ratio_pairs: int = 500
    ratio_max: int = 10 ** 6

    def validate(self) -> None:
        cap = brute_limit()
        if self.max_n > cap or self.max_edges > cap:
            raise SizeLimit(f"suite limits exceed the enumeration cap {cap}")
        if min(self.max_n, self.max_d, self.max_vertices, self.max_edges) < 0 or self.shards < 1:
            raise ValueError("suite limits must be nonnegative and shards positive")
        unknown = set(self.criteria) - set(CRITERIA)
        if unknown:
            raise ValueError(f"unknown criteria {sorted(unknown)}")


@dataclass(frozen=True)
class SuiteInstance:
    key: str
    M: BinaryMatroid
    source: str


# -- universe -----------------------------------------------------------------

def binary_universe(max_d: int, max_n: int) -> Iterator[SuiteInstance]:
    """All column multisets; smaller ``d`` is covered by zero-padding the top coordinates."""
    for n in range(1, max_n + 1):
        for cols in combinations_with_replacement(range(1 << max_d), n):
            bits = ",".join(format(c, f"0{max_d}b") for c in cols)
            yield SuiteInstance(f"bin/{max_d}/{bits}", BinaryMatroid(max_d, cols), "binary")


def _canonical(v: int, pairs: tuple[tuple[int, int], ...]) -> tuple:
    best = None
    for perm in permutations(range(v)):
        img = tuple(sorted(tuple(sorted((perm[u], perm[w]))) for u, w in pairs))
        if best is None or img < best:
            best = img
    return best


def graph_universe(max_vertices: int, max_edges: int) -> Iterator[SuiteInstance]:
    for v in range(2, max_vertices + 1):
        slots = [(u, w) for u in range(v) for w in range(u + 1, v)]
        seen = set()
        for m in range(v - 1, max_edges + 1):
            for pairs in combinations_with_replacement(slots, m):
                G = Multigraph.from_pairs(v, pairs)
                if not is_connected(G):
                    continue
                canon = _canonical(v, pairs)
                if canon in seen:
                    continue
                seen.add(canon)
                key = "gr/{}/{}".format(v, ",".join(f"{u}-{w}" for u, w in canon))
                yield SuiteInstance(key, from_graph(Multigraph.from_pairs(v, canon)), "graphic")


def fixture_universe() -> Iterator[SuiteInstance]:
    M, _ = build_linear_example(3)
    yield SuiteInstance("fix/linear/3", M, "fixture")
    M, _ = build_combination_example(3, 1)
    yield SuiteInstance("fix/combination/3/1", M, "fixture")
    for name, G in (("K3", complete(3)), ("C4", cycle(4))):
        D, _ = build_double_matroid(from_graph(G))
        yield SuiteInstance(f"fix/double/{name}", D, "fixture")


def universe(config: SuiteConfig) -> list[SuiteInstance]:
    out = list(binary_universe(config.max_d, config.max_n))
    out += graph_universe(config.max_vertices, config.max_edges)
    if config.fixtures:
        out += fixture_universe()
    return out


# -- constraint schemes -------------------------------------------------------

def scheme_blocks(outside: int, k: int) -> tuple[int, ...]:
    """Fixed split of ``outside`` into ``k`` blocks by position (k = 1: even
    positions; k = 2: positions 0 and 1 mod 3)."""
    pos = members(outside)
    if k == 0:
        return ()
    if k == 1:
        return (mask(pos[0::2]),)
    return (mask(pos[0::3]), mask(pos[1::3]))


def scheme_specs(M: BinaryMatroid, R: int, r: int) -> Iterator[ConstraintSpec]:
    outside = M.ground & ~R
    for k in (0, 1, 2):
        S = scheme_blocks(outside, k)
        for c in product(range(r + 1), repeat=k):
            yield ConstraintSpec(R, S, c)


def set_partitions(items: list[int], max_blocks: int) -> Iterator[list[list[int]]]:
    """Unordered partitions via restricted growth strings."""
    n = len(items)

    def rec(i: int, blocks: list[list[int]]):
        if i == n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(items[i])
            yield from rec(i + 1, blocks)
            b.pop()
        if len(blocks) < max_blocks:
            blocks.append([items[i]])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


# -- per-instance checks ------------------------------------------------------

@dataclass
class Outcome:
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    def fail(self, inst: SuiteInstance, **detail) -> None:
        self.failures.append({"key": inst.key, **{k: _plain(v) for k, v in detail.items()}})

    def merge(self, other: "Outcome") -> None:
        self.checked += other.checked
        self.failures += other.failures


def _plain(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, Verdict):
        return v.value
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


def check_sy(inst: SuiteInstance, config: SuiteConfig) -> Outcome:
    M, out = inst.M, Outcome()
    r = M.rank
    bases = enumerate_bases(M)
    for R in range(1 << M.n):
        for spec in scheme_specs(M, R, r):
            prof = count_profile(M, spec, bases=bases)
            for a in range(1, r):
                out.checked += 1
                try:
                    sy_verdict_from_profile(prof, a)
                except InvariantViolation as e:
                    out.fail(inst, R=members(R), S=[members(s) for s in spec.S], c=spec.c, a=a, error=str(e))
    return out


def check_equality(inst: SuiteInstance, config: SuiteConfig) -> Outcome:
    M, out = inst.M, Outcome()
    r = M.rank
    bases = enumerate_bases(M)
    for R in range(1 << M.n):
        prof = count_profile(M, ConstraintSpec(R), bases=bases)
        P = prof.P
        for a in range(1, r):
            if P(a) == 0:
                continue
            out.checked += 1
            v = equality_criterion(M, R, a, prof)
            if (v.kind is Verdict.EQUAL) != (P(a) ** 2 == P(a + 1) * P(a - 1)):
                out.fail(inst, R=members(R), a=a, verdict=v.kind)
    return out


def check_vanishing(inst: SuiteInstance, config: SuiteConfig) -> Outcome:
    M, out = inst.M, Outcome()
    r = M.rank
    bases = enumerate_bases(M)
    for blocks in set_partitions(list(range(M.n)), 3):
        sizes = [min(len(b), r) for b in blocks]
        S = tuple(mask(b) for b in blocks)
        for c in product(*(range(s + 1) for s in sizes)):
            if sum(c) > r + 1:
                continue
            p = PartitionSpec(S, c)
            out.checked += 1
            f = feasible(M, p)
            w = witness(M, p)
            if f != (w is not None):
                out.fail(inst, blocks=blocks, c=c, feasible=f, witness=None if w is None else members(w))
            elif w is not None and not (
                is_independent(M, w) and all(popcount(w & s) == ci for s, ci in zip(S, c))
            ):
                out.fail(inst, blocks=blocks, c=c, bad_witness=members(w))
    for R in range(1 << M.n):
        out.checked += 1
        prof = count_profile(M, ConstraintSpec(R), bases=bases)
        pos = [a for a in range(r + 1) if prof.B(a) > 0]
        lo, hi = nonvanishing_range(M, R)
        if pos != list(range(lo, hi + 1)) or (lo, hi) != range_formula(M, R):
            out.fail(inst, R=members(R), positive=pos, range=[lo, hi])
    return out


def check_total(inst: SuiteInstance, config: SuiteConfig) -> Outcome:
    M, out = inst.M, Outcome()
    r = M.rank
    if loops(M) or r < 2:
        return out
    bases = enumerate_bases(M)
    for R in range(1 << M.n):
        rep = total_equality_report(M, R, count_profile(M, ConstraintSpec(R), bases=bases))
        if not rep.preconditions:
            continue
        out.checked += 1
        if not rep.i == rep.ii == rep.iv:
            out.fail(inst, R=members(R), flags=[rep.i, rep.ii, rep.iii, rep.iv])
    if M.n <= 5:
        D, R = build_double_matroid(M)
        rep = total_equality_report(D, R)
        out.checked += 1
        if not (rep.preconditions and rep.ii and rep.s == 1):
            out.fail(inst, double=True, flags=[rep.i, rep.ii, rep.iii, rep.iv], s=rep.s)
    return out


def check_atlas(inst: SuiteInstance, config: SuiteConfig) -> Outcome:
    M, out = inst.M, Outcome()
    r = M.rank
    if r < 2:
        return out
    bases = enumerate_bases(M)
    nl = nonloops(M)
    for R in range(1 << M.n):
        prof = count_profile(M, ConstraintSpec(R), bases=bases)
        P = prof.P
        eb = atlas.check_equ_base(M, R)
        if eb is False:
            out.fail(inst, R=members(R), lemma="equ-base")
        for a in range(1, r):
            if P(a) == 0:
                continue
            out.checked += 1
            ctx = atlas.atlas_context(M, R, a, bases=bases)
            tag = {"R": members(R), "a": a}
            hyp = atlas.hyperbolic_check(ctx, spot=config.spot)
            if not hyp.ok:
                out.fail(inst, **tag, inertia={str(t): i for t, i in hyp.inertia.items()}, spot=hyp.spot)
            cfg = atlas.cfg_identities(ctx)
            if not all(cfg.values()):
                out.fail(inst, **tag, cfg=cfg)
            if atlas.support(ctx.C_a) != nl or not atlas.support_connected(ctx.C_a):
                out.fail(inst, **tag, support=members(atlas.support(ctx.C_a)))
            try:
                bat = atlas.property_battery(ctx)
            except PreconditionUnmet:
                bat = None
            if bat is not None and not all(bat.values()):
                out.fail(inst, **tag, battery=bat)
            if P(a + 1) > 0:
                s = P(a + 1) / P(a)
                chain, kernel = atlas.kernel_equality_check(ctx, s)
                equal = P(a) ** 2 == P(a + 1) * P(a - 1)
                if not chain == kernel == equal:
                    out.fail(inst, **tag, chain=chain, kernel=kernel, equal=equal)
            for name, res in (("center", atlas.check_center(M, R, a)), ("transfer", atlas.check_transfer(M, R, a))):
                if res is False:
                    out.fail(inst, **tag, lemma=name)
    return out


def _panel() -> list[tuple[str, BinaryMatroid]]:
    return [
        ("K3", from_graph(complete(3))),
        ("bundle2", from_graph(bundle(2))),
        ("C4", from_graph(cycle(4))),
        ("free1", from_columns(["1"])),
    ]


def check_reductions(inst: SuiteInstance, config: SuiteConfig) -> Outcome:
    M, out = inst.M, Outcome()
    r = M.rank
    out.checked += 1
    if count_via_ratio_product(M) != count_bases(M) or not ratio_bound_ok(M):
        out.fail(inst, ratio_product=count_via_ratio_product(M), direct=count_bases(M))
    nl = members(nonloops(M))
    for x in nl:
        for y in nl:
            if x == y or M.vec(x) == M.vec(y):
                continue
            out.checked += 1
            chk = cdc_identities(M, x, y)
            if (chk.verdict in (Verdict.EQUAL, Verdict.VANISHING)) != chk.coincide:
                out.fail(inst, x=x, y=y, verdict=chk.verdict, counts=chk.counts)
    if M.n <= config.chain_max_n:
        for x in nl:
            for name, N in _panel() + [("self", M)]:
                for y in members(nonloops(N)):
                    out.checked += 1
                    coincide = cdcr_identities(M, x, N, y)
                    D, xs, ys = cdcr_to_cdc(M, x, N, y)
                    chk = cdc_identities(D, xs, ys)
                    if chk.coincide != coincide or (chk.verdict in (Verdict.EQUAL, Verdict.VANISHING)) != coincide:
                        out.fail(inst, x=x, N=name, y=y, coincide=coincide, verdict=chk.verdict)
    if r >= 2:
        for R in range(1 << M.n):
            for k in (0, 1):
                S = scheme_blocks(M.ground & ~R, k)
                for c in product(range(r + 1), repeat=k):
                    base = SYInstance(M, R, 1, S, c)
                    padded = pad_k(base, 2)
                    out.checked += 1
                    p0, p1 = base.profile(), padded.profile()
                    for a in range(1, r):
                        if sy_verdict_from_profile(p0, a) != sy_verdict_from_profile(p1, a):
                            out.fail(inst, R=members(R), k=k, c=c, a=a, padding=True)
    return out


def check_mason(inst: SuiteInstance, config: SuiteConfig) -> Outcome:
    M, out = inst.M, Outcome()
    r = M.rank
    indep = list(iter_independent(M))
    small = M.n <= config.mason_identity_max_n
    for U in range(1 << M.n):
        for k in ((0,) if U == 0 else (1, 2)):
            S = scheme_blocks(U, k)
            for c in product(*(range(min(r, popcount(s)) + 1) for s in S)):
                spec = ConstraintSpec(M.ground & ~U, S, c)
                prof = count_profile(M, spec, "independent", independents=indep)
                m = prof.m
                for a in range(1, min(r - 1, m - 1) + 1):
                    out.checked += 1
                    try:
                        mason_verdict_from_profile(prof, a)
                    except InvariantViolation as e:
                        out.fail(inst, U=members(U), c=c, a=a, error=str(e))
                if small and k <= 1:
                    out.checked += 1
                    mm, counts = truncated_sum_counts(M, spec)
                    expect = {a: prof.B(a) * comb(mm, a + spec.csum) for a in counts}
                    if counts != expect:
                        out.fail(inst, U=members(U), c=c, truncated=counts, expected=expect)
    return out


CHECKS: dict[int, Callable[[SuiteInstance, SuiteConfig], Outcome]] = {
    1: check_sy,
    2: check_equality,
    3: check_vanishing,
    4: check_total,
    5: check_atlas,
    7: check_reductions,
    8: check_mason,
}


# -- global checks ------------------------------------------------------------

GLOBAL = SuiteInstance("global", BinaryMatroid(0, ()), "global")


def check_fixture_flags() -> Outcome:
    """Combination fixture: some equality but not all; double fixtures: total equality with s = 1."""
    out = Outcome()
    M, R = build_combination_example(3, 1)
    rep = total_equality_report(M, R)
    out.checked += 1
    if not (rep.iii and not rep.ii):
        out.fail(GLOBAL, fixture="combination", flags=[rep.i, rep.ii, rep.iii, rep.iv])
    for name, G in (("K3", complete(3)), ("C4", cycle(4)), ("K4", complete(4))):
        D, R = build_double_matroid(from_graph(G))
        rep = total_equality_report(D, R)
        out.checked += 1
        if not (rep.ii and rep.s == 1):
            out.fail(GLOBAL, fixture=f"double/{name}", flags=[rep.i, rep.ii, rep.iii, rep.iv], s=rep.s)
    return out


def _fail_tree(out: Outcome, **detail) -> None:
    out.failures.append({"key": "trees", **{k: _plain(v) for k, v in detail.items()}})


def check_trees(config: SuiteConfig) -> tuple[Outcome, dict]:
    out = Outcome()
    rng = random.Random(config.seed)
    for _ in range(config.cf_lists):
        q = [rng.randint(1, 9) for _ in range(rng.randint(1, 8))]
        if len(q) > 1 and q[-1] == 1:
            q[-1] = 2
        t = treesmith.from_cf(q)
        out.checked += 1
        if t.ratio != cfrac.evaluate(q) or t.leaves != sum(q):
            _fail_tree(out, quotients=q, ratio=t.ratio)
        elif sum(q) <= 40:
            G = treesmith.realize(t)
            if tree_ratio(G, G.marked) != t.ratio or G.m != sum(q) + 1:
                _fail_tree(out, quotients=q, realized=True)
    for _ in range(config.cf_lists // 10):
        t1 = treesmith.random_term(rng, 8)
        t2 = treesmith.random_term(rng, 8)
        s = treesmith.sum_terms(t1, t2)
        G = treesmith.realize(s)
        out.checked += 1
        if s.ratio != t1.ratio + t2.ratio or tree_ratio(G, G.marked) != s.ratio:
            _fail_tree(out, sum_of=[t1.ratio, t2.ratio])

    quality: dict[str, list] = {"exact": [], "ratio": []}
    Ns = list(range(config.exact_lo, config.exact_hi + 1))
    Ns += [rng.randint(config.exact_lo, config.exact_random_max) for _ in range(config.exact_random)]
    for N in Ns:
        tc = treesmith.exact_tree_graph(N)
        out.checked += 1
        if tau(tc.graph) != N:
            _fail_tree(out, N=N, tau=tau(tc.graph))
        qv = cfrac.tree_quality(N, tc.edges)
        if qv is not None and N > config.exact_hi:
            quality["exact"].append([N, tc.edges, round(qv, 4)])

    for i in range(config.ratio_pairs):
        regime = i % 3
        if regime == 0:
            A, B = rng.randint(1, config.ratio_max), 1
        elif regime == 1:
            B = rng.randint(2, config.ratio_max)
            A = rng.randint(1, B - 1)
        else:
            B = rng.randint(2, config.ratio_max - 1)
            A = rng.randint(B + 1, config.ratio_max)
        rc = treesmith.ratio_graph(A, B)
        out.checked += 1
        got = tree_ratio(rc.graph, rc.edge)
        if got != Fraction(A, B) or rc.reported_edges != rc.graph.m:
            _fail_tree(out, A=A, B=B, got=got, edges=[rc.reported_edges, rc.graph.m])
        qv = cfrac.tree_quality(max(A, B), rc.graph.m)
        if qv is not None and i < 30:
            quality["ratio"].append([A, B, rc.graph.m, round(qv, 4)])
    return out, quality


# -- driver -------------------------------------------------------------------

def _run_shard(insts: list[SuiteInstance], criteria: tuple[int, ...], config: SuiteConfig) -> dict[int, Outcome]:
    res = {k: Outcome() for k in criteria}
    for inst in insts:
        for k in criteria:
            res[k].merge(CHECKS[k](inst, config))
    return res


def run_criteria(config: SuiteConfig, criteria: tuple[int, ...] | None = None) -> dict:
    config.validate()
    criteria = tuple(sorted(criteria if criteria is not None else config.criteria))
    per_instance = tuple(k for k in criteria if k in CHECKS)
    insts = sorted(universe(config), key=lambda i: i.key) if per_instance else []
    results = {k: Outcome() for k in criteria}
    if per_instance:
        shards = [insts[i :: config.shards] for i in range(config.shards)]
        with ThreadPoolExecutor(max_workers=config.shards) as pool:
            parts = list(pool.map(lambda chunk: _run_shard(chunk, per_instance, config), shards))
        for part in parts:
            for k, o in part.items():
                results[k].merge(o)
    extra = {}
    if 4 in criteria:
        results[4].merge(check_fixture_flags())
    if 6 in criteria:
        o, quality = check_trees(config)
        results[6].merge(o)
        extra["tree_quality"] = quality

    report = {
        "config": {k: v for k, v in asdict(config).items() if k != "out"},
        "universe": _universe_counts(insts),
        "criteria": {},
    }
    by_key = {i.key: i for i in insts}
    for k in criteria:
        o = results[k]
        fails = sorted(o.failures, key=lambda f: json.dumps(f, sort_keys=True))
        bad = sorted({f["key"] for f in fails if f["key"] in by_key})
        report["criteria"][str(k)] = {
            "name": CRITERIA[k],
            "passed": not fails,
            "checked": o.checked,
            "failures": len(fails),
            "examples": fails[:MAX_EXAMPLES],
            "dumps": [dump_instance(by_key[key], k) for key in bad[:MAX_EXAMPLES]],
        }
    report.update(extra)
    return report


def _universe_counts(insts: list[SuiteInstance]) -> dict[str, int]:
    out: dict[str, int] = {}
    for i in insts:
        out[i.source] = out.get(i.source, 0) + 1
    return dict(sorted(out.items()))


def run_suite(config: SuiteConfig) -> dict:
    """Run the configured criteria; write the JSON report when ``config.out`` is set."""
    report = run_criteria(config)
    if config.out:
        Path(config.out).write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return report


# -- replay -------------------------------------------------------------------

def dump_instance(inst: SuiteInstance, criterion: int) -> dict:
    return {"criterion": criterion, "key": inst.key, "source": inst.source, "matroid": emit_matroid(inst.M)}


def replay(dump: dict, config: SuiteConfig | None = None) -> Outcome:
    """Re-run one criterion on one dumped instance."""
    config = config or SuiteConfig()
    inst = SuiteInstance(dump["key"], parse_matroid(dump["matroid"]), dump.get("source", "replay"))
    return CHECKS[int(dump["criterion"])](inst, config)


def find_instance(config: SuiteConfig, key: str) -> SuiteInstance:
    for inst in universe(config):
        if inst.key == key:
            return inst
    raise KeyError(key)
