"""Command-line surface: enumeration, intersections, complexes, verification.

Exit codes are a stable contract: 0 for success (or a nonempty result),
1 for a definitive negative (empty intersection, non-flag complex), 2 for
usage errors, 3 for resource overflows.  With ``--format json`` errors are
emitted as machine-readable JSON on stderr.

All output is ordered by canonical key and is independent of ``--threads``;
the flag is validated and recorded but execution is sequential.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from . import __version__
from .complexes import (
    boundary_complex,
    check_theorem,
    flag_verdict,
    high_genus_pair_components,
    high_genus_triple,
    pinwheel_family,
    pinwheel_pair_component,
    universal_degeneration,
)
from .enumeration import (
    DEFAULT_MAX_GRAPHS,
    BudgetExceededError,
    StratumStore,
)
from .graphs import (
    DualGraph,
    GnSignature,
    InvalidSignatureError,
    canonical_key,
    is_degeneration,
    key_to_hex,
    one_vertex,
    two_vertex_divisor,
    chain,
)
from .lattice import DivisorSet, divisor_set, intersection_components

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

FORMATS = ("text", "json", "dot")


@dataclass(frozen=True)
class RunConfig:
    cache_dir: Path | None
    max_graphs: int
    max_dim: int | None
    format: str
    threads: int

    def __post_init__(self) -> None:
        if self.max_graphs < 1:
            raise ValueError("--max-graphs must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"--format must be one of {FORMATS}")
        if self.threads < 1:
            raise ValueError("--threads must be positive")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cache = args.cache_dir or os.environ.get("STRATA_CACHE_DIR") or None
    if args.threads == "auto":
        threads = os.cpu_count() or 1
    else:
        threads = int(args.threads)
    return RunConfig(
        cache_dir=Path(cache) if cache else None,
        max_graphs=args.max_graphs,
        max_dim=args.max_dim,
        format=args.format,
        threads=threads,
    )


def _store(config: RunConfig) -> StratumStore:
    return StratumStore(cache_dir=config.cache_dir, max_graphs=config.max_graphs)


def _emit_error(config: RunConfig | None, code: str, message: str) -> None:
    if config is not None and config.format == "json":
        payload = {"error": {"code": code, "message": message}}
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")), file=sys.stderr)
    else:
        print(f"error: {message}", file=sys.stderr)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _graph_dot(G: DualGraph, name: str) -> str:
    lines = [f'graph "{name}" {{']
    for v, g in enumerate(G.genus):
        lines.append(f'  v{v} [label="g={g}"];')
    for i, j in sorted(G.edges):
        lines.append(f"  v{i} -- v{j};")
    for m, v in enumerate(G.legs):
        lines.append(f'  leg{m + 1} [shape=plaintext, label="{m + 1}"];')
        lines.append(f"  leg{m + 1} -- v{v};")
    lines.append("}")
    return "\n".join(lines)


def _require_text_or_json(config: RunConfig, command: str) -> None:
    if config.format == "dot":
        raise ValueError(f"--format dot is not supported by {command}")


# -- commands -----------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace, config: RunConfig) -> int:
    sig = GnSignature(args.g, args.n)
    if not 1 <= args.k <= sig.dim:
        raise ValueError(f"k={args.k} out of range 1..{sig.dim} for {sig}")
    store = _store(config)
    level = store.level(sig, args.k)
    if config.format == "json":
        print(_dumps(level.to_json_obj()))
    elif config.format == "dot":
        for t, G in enumerate(level):
            print(_graph_dot(G, f"g{sig.g}n{sig.n}k{args.k}_{t}"))
    else:
        for key, G in level.graphs.items():
            print(f"{key_to_hex(key)}  {G.describe()}")
        print(f"total: {len(level)}", file=sys.stderr)
    return EXIT_OK


def _resolve_divisor_inputs(
    args: argparse.Namespace, store: StratumStore
) -> DivisorSet:
    graphs: list[DualGraph] = []
    keys: list[str] = []
    for item in args.divisors:
        path = Path(item)
        if item.endswith(".json") or path.is_file():
            graphs.append(DualGraph.from_json(path.read_text(encoding="utf-8")))
        else:
            keys.append(item)
    signatures = {G.signature for G in graphs}
    if len(signatures) > 1:
        raise ValueError(f"mixed signatures among inputs: {sorted(map(str, signatures))}")
    if args.g is not None and args.n is not None:
        sig = GnSignature(args.g, args.n)
        if signatures and {sig} != signatures:
            raise ValueError("inputs do not match the requested signature")
    elif signatures:
        sig = signatures.pop()
    else:
        raise ValueError("bare keys need --g and --n to fix the signature")
    return divisor_set(sig, graphs + keys, store)


def cmd_intersect(args: argparse.Namespace, config: RunConfig) -> int:
    store = _store(config)
    S = _resolve_divisor_inputs(args, store)
    report = intersection_components(S, store)
    if config.format == "json":
        print(_dumps(report.to_json_obj()))
    elif config.format == "dot":
        for t, G in enumerate(report.components):
            print(_graph_dot(G, f"component_{t}"))
    else:
        print(f"signature {S.signature}, {len(S)} divisors")
        for G in report.components:
            print(f"  component {key_to_hex(canonical_key(G))}  {G.describe()}")
        print("nonempty" if report.nonempty else "empty")
    return EXIT_OK if report.nonempty else EXIT_NEGATIVE


def cmd_complex(args: argparse.Namespace, config: RunConfig) -> int:
    sig = GnSignature(args.g, args.n)
    store = _store(config)
    C = boundary_complex(sig, max_dim=config.max_dim, store=store)
    if config.format == "json":
        print(_dumps(C.to_json_obj()))
    elif config.format == "dot":
        print(C.to_dot(), end="")
    else:
        print(f"boundary complex of {sig}")
        print(f"f-vector: {C.f_vector()}")
        for i, key in enumerate(C.vertices):
            print(f"  v{i} {key_to_hex(key)}  {C.divisor_graphs[i].describe()}")
        print(f"facets: {[list(f) for f in C.facets()]}")
    return EXIT_OK


def cmd_flag_check(args: argparse.Namespace, config: RunConfig) -> int:
    _require_text_or_json(config, "flag-check")
    sig = GnSignature(args.g, args.n)
    store = _store(config)
    verdict = flag_verdict(sig, store)
    if config.format == "json":
        obj = {
            "g": sig.g,
            "n": sig.n,
            "is_flag": verdict.is_flag,
            "witness": verdict.witness.to_json_obj() if verdict.witness else None,
        }
        print(_dumps(obj))
    else:
        print(f"{sig}: {'flag' if verdict.is_flag else 'not a flag complex'}")
        if verdict.witness:
            for key in verdict.witness.clique:
                print(f"  witness divisor {key_to_hex(key)}")
    return EXIT_OK if verdict.is_flag else EXIT_NEGATIVE


def cmd_witness(args: argparse.Namespace, config: RunConfig) -> int:
    _require_text_or_json(config, "witness")
    sig = GnSignature(args.g, args.n)
    store = _store(config)
    verdict = flag_verdict(sig, store)
    if verdict.witness is None:
        if config.format == "json":
            print(_dumps({"g": sig.g, "n": sig.n, "witness": None}))
        else:
            print(f"{sig} is a flag complex; no witness")
        return EXIT_NEGATIVE
    if config.format == "json":
        print(_dumps({"g": sig.g, "n": sig.n, "witness": verdict.witness.to_json_obj()}))
    else:
        table = store.divisors(sig)
        print(f"minimal non-face clique of size {len(verdict.witness.clique)} in {sig}:")
        for key in verdict.witness.clique:
            print(f"  {key_to_hex(key)}  {table.graphs[key].describe()}")
    return EXIT_OK


def _parse_range(text: str) -> range:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return range(int(lo), int(hi) + 1)
    value = int(text)
    return range(value, value + 1)


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    _require_text_or_json(config, "verify")
    store = _store(config)
    rows = []
    budget_hit = False
    for g in _parse_range(args.g):
        for n in _parse_range(args.n):
            try:
                sig = GnSignature(g, n)
            except InvalidSignatureError:
                continue
            start = time.perf_counter()
            verdict = check_theorem(sig, store)
            elapsed = time.perf_counter() - start
            budget_hit = budget_hit or verdict.skipped
            rows.append((sig, verdict, elapsed))
    if config.format == "json":
        out = []
        for sig, verdict, elapsed in rows:
            out.append(
                {
                    "g": sig.g,
                    "n": sig.n,
                    "predicted": verdict.predicted,
                    "computed": verdict.computed,
                    "agree": verdict.agree,
                    "skipped": verdict.skipped,
                    "witness": [key_to_hex(k) for k in verdict.witness.clique]
                    if verdict.witness
                    else None,
                    "seconds": round(elapsed, 3),
                }
            )
        print(_dumps(out))
    else:
        print(f"{'sig':>8} {'predicted':>9} {'computed':>9} {'agree':>6} {'time':>8}  witness")
        for sig, verdict, elapsed in rows:
            computed = "skipped" if verdict.skipped else str(verdict.computed)
            agree = "-" if verdict.agree is None else str(verdict.agree)
            witness = (
                ",".join(key_to_hex(k)[:12] for k in verdict.witness.clique)
                if verdict.witness
                else ""
            )
            print(
                f"{str(sig):>8} {str(verdict.predicted):>9} {computed:>9}"
                f" {agree:>6} {elapsed:7.2f}s  {witness}"
            )
    if budget_hit and not args.skip_over_budget:
        return EXIT_BUDGET
    if any(verdict.agree is False for _, verdict, _ in rows):
        return EXIT_NEGATIVE
    return EXIT_OK


def _paper_suite_checks(store: StratumStore):
    """The curated reproduction set; yields (name, passed, detail)."""

    def m22_divisors():
        return len(store.divisors(GnSignature(2, 2))) == 4, ""

    def m22_fvector():
        fv = boundary_complex(GnSignature(2, 2), store=store).f_vector()
        return fv == (4, 5, 2), f"f-vector {fv}"

    def m22_flag():
        return flag_verdict(GnSignature(2, 2), store).is_flag, ""

    def m22_nonedge():
        C = boundary_complex(GnSignature(2, 2), store=store)
        adj = C.adjacency()
        missing = [
            (i, j)
            for i, j in combinations(range(len(C.vertices)), 2)
            if j not in adj[i]
        ]
        detail = "; ".join(
            f"{C.divisor_graphs[i].describe()} | {C.divisor_graphs[j].describe()}"
            for i, j in missing
        )
        return len(missing) == 1, f"non-edges: {detail}"

    def m23_union_of_two():
        sig = GnSignature(2, 3)
        d_irr = one_vertex(1, 3, loops=1)
        d_split = two_vertex_divisor(1, (1, 2), 1, (3,))
        S = divisor_set(sig, [d_irr, d_split], store)
        report = intersection_components(S, store)
        shown = {
            canonical_key(chain([(1, (3,)), (0, (1, 2))], loop_at_end=True)),
            canonical_key(chain([(1, (1, 2)), (0, (3,))], loop_at_end=True)),
        }
        got = {canonical_key(G) for G in report.components}
        return got == shown and len(report.components) == 2, f"{len(report.components)} components"

    def m12_parallel_edges():
        G = DualGraph((0, 0), ((0, 1), (0, 1)), (0, 1))
        support = G.delta_support()
        return len(G.delta_multiset()) == 2 and len(support) == 1, ""

    def universal_degenerations():
        for g, n in [(2, 0), (3, 0), (1, 1), (2, 1), (3, 1)]:
            sig = GnSignature(g, n)
            U = universal_degeneration(sig)
            for D in store.divisors(sig):
                if not is_degeneration(U, D):
                    return False, f"fails at {sig}"
        return True, ""

    def pinwheel(n):
        sig = GnSignature(2, n)
        family = pinwheel_family(n, store)
        for (i, a), (j, b) in combinations(enumerate(family.keys, start=1), 2):
            report = intersection_components(DivisorSet(sig, (a, b)), store)
            shape = canonical_key(pinwheel_pair_component(n, i, j))
            if {canonical_key(G) for G in report.components} != {shape}:
                return False, f"pair {i},{j} mismatch"
        if intersection_components(family, store).nonempty:
            return False, "total intersection not empty"
        return True, ""

    def pinwheel_flag_23():
        return not flag_verdict(GnSignature(2, 3), store).is_flag, ""

    def high_genus_triple_check(g, n):
        sig = GnSignature(g, n)
        all_marks = tuple(range(1, n + 1))
        rest = tuple(range(2, n + 1))
        D = {
            1: chain([(g - 1, ()), (1, all_marks)]),
            2: chain([(g - 1, (1,)), (1, rest)]),
            3: chain([(g - 1, rest), (1, (1,))]),
        }
        shown = high_genus_pair_components(g, n)
        for (i, j), displayed in shown.items():
            S = divisor_set(sig, [D[i], D[j]], store)
            report = intersection_components(S, store)
            if {canonical_key(G) for G in report.components} != {canonical_key(displayed)}:
                return False, f"pair {i},{j} mismatch"
        S = high_genus_triple(g, n, store)
        if intersection_components(S, store).nonempty:
            return False, "triple not empty"
        return True, ""

    def theorem_spots():
        for g, n in [(2, 2), (2, 3), (1, 3), (0, 5), (3, 2)]:
            verdict = check_theorem(GnSignature(g, n), store)
            if verdict.agree is not True:
                return False, f"disagreement at ({g},{n})"
        return True, ""

    yield "M22 four boundary divisors", m22_divisors
    yield "M22 f-vector (4,5,2)", m22_fvector
    yield "M22 flag complex", m22_flag
    yield "M22 single non-edge pair", m22_nonedge
    yield "M23 union of two strata", m23_union_of_two
    yield "M12 parallel-edge remark", m12_parallel_edges
    yield "universal degenerations for zero or one mark", universal_degenerations
    yield "pinwheel family (2,3)", lambda: pinwheel(3)
    yield "pinwheel family (2,4)", lambda: pinwheel(4)
    yield "pinwheel breaks flagness at (2,3)", pinwheel_flag_23
    yield "high-genus triple (3,2)", lambda: high_genus_triple_check(3, 2)
    yield "high-genus triple (4,2)", lambda: high_genus_triple_check(4, 2)
    yield "classification spot grid", theorem_spots


def cmd_paper_suite(args: argparse.Namespace, config: RunConfig) -> int:
    _require_text_or_json(config, "paper-suite")
    store = _store(config)
    results = []
    for name, check in _paper_suite_checks(store):
        passed, detail = check()
        results.append({"name": name, "passed": passed, "detail": detail})
    if config.format == "json":
        print(_dumps(results))
    else:
        for row in results:
            mark = "PASS" if row["passed"] else "FAIL"
            suffix = f"  ({row['detail']})" if row["detail"] else ""
            print(f"{mark}  {row['name']}{suffix}")
        total = sum(r["passed"] for r in results)
        print(f"{total}/{len(results)} checks passed")
    return EXIT_OK if all(r["passed"] for r in results) else EXIT_NEGATIVE


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strata",
        description="Stable dual graphs, boundary strata, and boundary complexes.",
    )
    parser.add_argument("--version", action="version", version=f"strata {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None, help="stratum cache directory")
    common.add_argument(
        "--max-graphs", type=int, default=DEFAULT_MAX_GRAPHS,
        help="hard per-level graph budget",
    )
    common.add_argument("--max-dim", type=int, default=None, help="complex build depth")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--threads", default="auto", help="worker count (informational)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list strata of one level")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("intersect", parents=[common], help="intersect boundary divisors")
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("divisors", nargs="+", help="hex keys or dualgraph JSON files")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("complex", parents=[common], help="build the boundary complex")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("flag-check", parents=[common], help="decide the flag property")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_flag_check)

    p = sub.add_parser("witness", parents=[common], help="minimal non-face clique")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="classification over a grid")
    p.add_argument("--g", required=True, help="genus or range lo:hi")
    p.add_argument("--n", required=True, help="marks or range lo:hi")
    p.add_argument("--skip-over-budget", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paper-suite", parents=[common], help="curated reproduction set")
    p.set_defaults(func=cmd_paper_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config: RunConfig | None = None
    try:
        config = _config_from_args(args)
        return args.func(args, config)
    except BudgetExceededError as exc:
        _emit_error(config, "budget", str(exc))
        return EXIT_BUDGET
    except InvalidSignatureError as exc:
        _emit_error(config, "usage", str(exc))
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        _emit_error(config, "usage", str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
