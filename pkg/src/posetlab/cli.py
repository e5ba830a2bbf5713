"""Command-line interface.

Exit codes: 0 when every re-verification passed, 1 when a check failed,
2 on malformed input or usage, 3 when a budget was exceeded. Budgets
default to the ``POSETLAB_BUDGET_*`` environment variables.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
import time
from pathlib import Path

from . import bounds, formats, generators, reversibility, wcol
from .errors import (BudgetExceededError, ColorCollisionError, DomainError,
                     InternalProofViolation, ParseError, PosetlabError,
                     SizeLimitError)
from .graph import Graph
from .poset import Poset, random_poset
from .realizer import theorem2_partition
from .reversibility import find_alternating_cycle, verify_realizer
from .support import find_support_element

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code, message=""):
        self.code = code
        super().__init__(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def _load_poset(path: str) -> Poset:
    return formats.parse_poset(_read(path))


def _kv(out, key, value):
    print(f"{key}: {value}", file=out)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(text: str, dest: str | None):
    if dest and dest != "-":
        Path(dest).write_text(text)
    else:
        sys.stdout.write(text)


def check_certificate(P: Poset, text: str) -> list[str]:
    """Independent re-check of a written certificate; returns the problems found."""
    d, partition, exts = formats.parse_certificate(text)
    problems = []
    inc = set(P.incomparable_pairs())
    seen = [pair for cls in partition for pair in cls]
    if set(seen) != inc or len(seen) != len(inc):
        problems.append("classes do not partition the incomparable pairs")
    if inc and d != len(partition):
        problems.append(f"declared dimension {d}, found {len(partition)} classes")
    for k, cls in enumerate(partition):
        if find_alternating_cycle(P, cls) is not None:
            problems.append(f"class {k} is not reversible")
    if len(exts) != d or not verify_realizer(P, exts):
        problems.append("linear extensions do not form a realizer of the declared size")
    return problems


# -- gen ---------------------------------------------------------------------


def cmd_gen(args) -> int:
    td = None
    if args.family == "standard":
        P, _ = generators.gen_standard_example(args.m)
    elif args.family == "kelly":
        P, _, _ = generators.gen_kelly(args.m)
    elif args.family == "subdiv":
        P, _ = generators.gen_subdivided_standard(args.m, args.r)
    elif args.family == "pht":
        P, td, _ = generators.gen_pht(args.height, args.t)
    elif args.family == "thm11":
        P, td = generators.theorem11_instance(args.height, args.t)
    else:
        rng = random.Random(args.seed)
        P = random_poset(args.n, args.height, args.density, rng)
    if args.emit == "td":
        if td is None:
            raise _Exit(EXIT_PARSE, f"family {args.family!r} has no tree decomposition")
        text = formats.format_td(td, P.n)
    elif args.emit == "dot":
        text = formats.format_dot(P)
    else:
        text = formats.format_poset(P)
    _emit(text, args.output)
    return EXIT_OK


# -- dim ---------------------------------------------------------------------


def _budget_report(exc: BudgetExceededError):
    print(f"budget exceeded: {exc}", file=sys.stderr)
    _kv(sys.stdout, "status", "BUDGET")
    _kv(sys.stdout, "lower", exc.lower if exc.lower is not None else 1)
    _kv(sys.stdout, "upper", exc.upper if exc.upper is not None else "unknown")


def cmd_dim(args) -> int:
    P = _load_poset(args.file)
    try:
        res = reversibility.dim_exact(P, max_pairs=args.max_pairs, max_nodes=args.max_nodes)
    except BudgetExceededError as exc:
        try:
            res2 = theorem2_partition(P, mode="heuristic")
            exc.upper = min(exc.upper or res2.num_classes, res2.num_classes)
        except PosetlabError:
            pass
        _budget_report(exc)
        return EXIT_BUDGET
    exts = reversibility.partition_to_realizer(P, res.partition).extensions
    cert = formats.format_certificate(res.partition, exts)
    problems = check_certificate(P, cert)
    dest = args.certificate
    if dest is None and args.file != "-":
        dest = args.file + ".cert"
    if dest:
        Path(dest).write_text(cert)
    print(f"dim {res.dim}")
    if dest:
        print(f"certificate {dest}")
    for p in problems:
        print(f"certificate check failed: {p}", file=sys.stderr)
    return EXIT_FAIL if problems else EXIT_OK


# -- wcol --------------------------------------------------------------------


def _load_graph(path: str):
    text = _read(path)
    for line in text.splitlines():
        tok = line.split("#", 1)[0].split()
        if tok:
            if tok[:2] == ["p", "graph"]:
                return formats.parse_graph(text)
            break
    return formats.parse_poset(text).cover_graph


def cmd_wcol(args) -> int:
    G = _load_graph(args.file)
    if args.order_strategy == "exact":
        value, pi = wcol.wcol_exact(G, args.radius, limit=args.max_n)
    else:
        value, pi = wcol.wcol_heuristic(G, args.radius, args.order_strategy, seed=args.seed)
    check = wcol.wcol_under_order(G, pi, args.radius)
    out = sys.stdout
    _kv(out, "n", G.n)
    _kv(out, "m", G.m)
    _kv(out, "radius", args.radius)
    _kv(out, "strategy", args.order_strategy)
    _kv(out, "seed", args.seed)
    _kv(out, "wcol", value)
    _kv(out, "order", " ".join(map(str, pi.order)))
    return EXIT_OK if check == value else EXIT_FAIL


# -- realizer ----------------------------------------------------------------


def cmd_realizer(args) -> int:
    P = _load_poset(args.file)
    try:
        res = theorem2_partition(P, mode=args.order, radius=args.radius_override, seed=args.seed)
    except (ColorCollisionError, InternalProofViolation) as exc:
        _kv(sys.stdout, "status", "FAIL")
        print(f"realizer construction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ok = verify_realizer(P, res.realizer)
    for key, value in res.stats().items():
        _kv(sys.stdout, key, value)
    _kv(sys.stdout, "4^c", res.bound)
    _kv(sys.stdout, "classes<=4^c", "PASS" if res.num_classes <= res.bound else "FAIL")
    _kv(sys.stdout, "realizer", "PASS" if ok else "FAIL")
    if args.extensions:
        for L in res.realizer.extensions:
            print("L " + " ".join(map(str, L)))
    return EXIT_OK if ok and res.num_classes <= res.bound else EXIT_FAIL


# -- support -----------------------------------------------------------------


def cmd_support(args) -> int:
    P = _load_poset(args.file)
    try:
        rep = find_support_element(P, mode=args.order, seed=args.seed,
                                   max_pairs=args.max_pairs, max_nodes=args.max_nodes)
    except BudgetExceededError as exc:
        _budget_report(exc)
        return EXIT_BUDGET
    for key, value in rep.as_dict().items():
        _kv(sys.stdout, key, value)
    return EXIT_OK if rep.holds and rep.claim7_ok else EXIT_FAIL


# -- bounds ------------------------------------------------------------------


def _parse_params(items) -> dict[str, int]:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise _Exit(EXIT_PARSE, f"parameter {item!r} is not of the form key=value")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise _Exit(EXIT_PARSE, f"parameter {key!r} needs an integer") from None
    return out


_CLASS_PARAM = {"genus": "g", "treewidth": "t", "minor_free": "t"}


def cmd_bounds(args) -> int:
    p = _parse_params(args.params)
    lim = args.digits_limit
    out = sys.stdout

    def need(*keys):
        missing = [k for k in keys if k not in p]
        if missing:
            raise _Exit(EXIT_PARSE, f"class {args.cls} needs parameters {', '.join(missing)}")
        return [p[k] for k in keys]

    def show(name, bv):
        _kv(out, name, bounds.format_int(bv.value, lim))

    if args.cls == "topological_minor":
        _kv(out, "wcol_bound", bounds.TOPOLOGICAL_MINOR_NOTE)
    elif args.cls in _CLASS_PARAM:
        (param,) = need(_CLASS_PARAM[args.cls])
        if "r" not in p and "h" not in p:
            raise _Exit(EXIT_PARSE, "give r=<radius> and/or h=<height>")
        if "r" in p:
            show("wcol_bound", bounds.wcol_bound(args.cls, param, p["r"]))
        if "h" in p:
            e = bounds.dim_upper_exponent(args.cls, param, p["h"])
            _kv(out, "dim_upper_exponent", e)
            show("dim_upper_bound", bounds.dim_upper_bound(args.cls, param, p["h"]))
    elif args.cls == "wcol":
        (c,) = need("c")
        show("dim_upper_bound", bounds.dim_upper_bound("wcol", c))
    elif args.cls == "pht":
        h, t = need("h", "t")
        show("dim_lower_bound", bounds.dim_lower_bound_construction(h, t))
    elif args.cls == "thm3":
        h, t, c = need("h", "t", "c")
        _kv(out, "f", bounds.format_int(bounds.theorem3_exponent(h, t), lim))
        show("threshold", bounds.theorem3_threshold(h, t, c, digits_limit=args.budget_digits))
    return EXIT_OK


# -- verify-td ---------------------------------------------------------------


def cmd_verify_td(args) -> int:
    G = _load_graph(args.file)
    td, n = formats.parse_td(_read(args.td))
    if n != G.n:
        print(f"decomposition is for {n} vertices, graph has {G.n}", file=sys.stderr)
        return EXIT_FAIL
    width, diagnostics = generators.verify_tree_decomposition(G, td)
    _kv(sys.stdout, "width", width)
    _kv(sys.stdout, "valid", "PASS" if not diagnostics else "FAIL")
    for msg in diagnostics:
        print(msg, file=sys.stderr)
    return EXIT_OK if not diagnostics else EXIT_FAIL


# -- pipeline ----------------------------------------------------------------

PIPELINE_COLUMNS = ["name", "seed", "n", "height", "inc_pairs", "dim", "c", "colors", "classes",
                    "bound_4c", "realizer", "certificate", "support_q", "support", "verdict"]


def run_pipeline(P: Poset, name: str, seed: int = 0, order: str = "auto",
                 max_pairs: int | None = None, max_nodes: int | None = None) -> dict:
    """Exact dimension, signature realizer and support element, all re-verified."""
    kw = {"max_pairs": max_pairs or reversibility.DEFAULT_MAX_PAIRS,
          "max_nodes": max_nodes or reversibility.DEFAULT_MAX_NODES}
    res = reversibility.dim_exact(P, **kw)
    exts = reversibility.partition_to_realizer(P, res.partition).extensions
    cert_ok = not check_certificate(P, formats.format_certificate(res.partition, exts))
    t2 = theorem2_partition(P, mode=order, seed=seed)
    real_ok = (verify_realizer(P, t2.realizer)
               and all(find_alternating_cycle(P, cls) is None for cls in t2.partition))
    sup = find_support_element(P, mode=order, seed=seed, **kw)
    chain_ok = res.dim <= t2.num_classes <= t2.bound
    ok = cert_ok and real_ok and chain_ok and sup.holds and sup.claim7_ok
    return {
        "name": name, "seed": seed, "n": P.n, "height": P.height(),
        "inc_pairs": len(P.incomparable_pairs()), "dim": res.dim, "c": t2.c,
        "colors": t2.coloring.palette, "classes": t2.num_classes, "bound_4c": t2.bound,
        "realizer": "PASS" if real_ok else "FAIL",
        "certificate": "PASS" if cert_ok else "FAIL",
        "support_q": sup.q, "support": "PASS" if sup.holds else "FAIL",
        "verdict": "PASS" if ok else "FAIL",
    }


def cmd_pipeline(args) -> int:
    name = "stdin" if args.file == "-" else Path(args.file).stem
    P = _load_poset(args.file)
    try:
        row = run_pipeline(P, name, seed=args.seed, order=args.order,
                           max_pairs=args.max_pairs, max_nodes=args.max_nodes)
    except BudgetExceededError as exc:
        _budget_report(exc)
        return EXIT_BUDGET
    for key in PIPELINE_COLUMNS:
        _kv(sys.stdout, key, row[key])
    _kv(sys.stdout, "dim<=classes<=4^c",
        "PASS" if row["dim"] <= row["classes"] <= row["bound_4c"] else "FAIL")
    text = _csv_text(PIPELINE_COLUMNS, [[row[k] for k in PIPELINE_COLUMNS]])
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        print()
        sys.stdout.write(text)
    return EXIT_OK if row["verdict"] == "PASS" else EXIT_FAIL


# -- bench -------------------------------------------------------------------


def _bench_standard(seed):
    header = ["m", "n", "inc_pairs", "dim", "expected"]
    for m in range(2, 6):
        P, _ = generators.gen_standard_example(m)
        yield header, [m, P.n, len(P.incomparable_pairs()), reversibility.dim_exact(P).dim, m]


def _bench_pht(seed):
    header = ["h", "t", "n", "height", "k", "k_formula", "td_width", "dim"]
    for h in (1, 2):
        for t in (1, 2):
            P, td, vp = generators.gen_pht(h, t)
            try:
                d = reversibility.dim_exact(P, max_pairs=500).dim
            except BudgetExceededError:
                d = ""
            yield header, [h, t, P.n, P.height(), len(vp), generators.pht_k_formula(h, t),
                           td.width, d]


def _random_connected_graph(rng, n):
    edges = {(i, rng.randrange(i)) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.2:
                edges.add((v, u))
    return Graph(n, edges)


def _bench_wcol(seed):
    header = ["graph", "n", "m", "r", "exact", "smallest_last", "bfs", "random_restart"]
    rng = random.Random(seed)
    for i in range(8):
        G = _random_connected_graph(rng, rng.randint(4, 8))
        for r in (1, 2, 3):
            row = [i, G.n, G.m, r, wcol.wcol_exact(G, r)[0]]
            for strat in ("smallest-last", "bfs", "random-restart"):
                row.append(wcol.wcol_heuristic(G, r, strat, seed=seed)[0])
            yield header, row


def _bench_random(seed):
    rng = random.Random(seed)
    for i in range(10):
        while True:
            P = random_poset(rng.randint(5, 12), rng.randint(2, 4), rng.uniform(0.2, 0.6), rng)
            if len(P.incomparable_pairs()) <= 40:
                break
        row = run_pipeline(P, f"random_{i}", seed=seed)
        yield PIPELINE_COLUMNS, [row[k] for k in PIPELINE_COLUMNS]


BENCH_SUITES = {"standard": _bench_standard, "pht": _bench_pht, "wcol": _bench_wcol,
                "random": _bench_random}


def bench_csv(suite: str, seed: int = 0, timing: bool = False) -> str:
    header, rows = None, []
    gen = BENCH_SUITES[suite](seed)
    while True:
        start = time.perf_counter()
        try:
            header, row = next(gen)
        except StopIteration:
            break
        if timing:
            row = row + [f"{time.perf_counter() - start:.4f}"]
        rows.append(row)
    if header is None:
        header = []
    if timing:
        header = header + ["seconds"]
    return _csv_text(header, rows)


def cmd_bench(args) -> int:
    _emit(bench_csv(args.suite, args.seed, args.timing), args.output)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="posetlab",
                                     description="Poset dimension and weak coloring toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def budgets(p):
        p.add_argument("--max-pairs", type=int, default=reversibility.DEFAULT_MAX_PAIRS,
                       help="incomparable-pair budget for exact dimension")
        p.add_argument("--max-nodes", type=int, default=reversibility.DEFAULT_MAX_NODES,
                       help="search-node budget for exact dimension")

    def order_flags(p):
        p.add_argument("--order", choices=["auto", "exact", "heuristic"], default="auto",
                       help="how the vertex order is chosen")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="generate a poset family")
    p.add_argument("family", choices=["standard", "kelly", "subdiv", "pht", "thm11", "random"])
    p.add_argument("-m", type=int, default=3, help="standard example size")
    p.add_argument("-r", type=int, default=1, help="subdivisions per cover edge")
    p.add_argument("-H", "--height", type=int, default=2, help="h for pht/thm11, height bound for random")
    p.add_argument("-t", type=int, default=1, help="t for pht/thm11")
    p.add_argument("-n", type=int, default=10, help="elements of a random poset")
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit", choices=["poset", "dot", "td"], default="poset")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("dim", help="exact dimension with certificate")
    p.add_argument("file")
    p.add_argument("-c", "--certificate", help="certificate path (default FILE.cert)")
    budgets(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("wcol", help="weak coloring number of a graph or cover graph")
    p.add_argument("file")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--order-strategy", default="smallest-last",
                   choices=["exact", "smallest-last", "bfs", "random-restart"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=wcol.EXACT_LIMIT,
                   help="largest graph the exact solver accepts")
    p.set_defaults(func=cmd_wcol)

    p = sub.add_parser("realizer", help="signature-class realizer")
    p.add_argument("file")
    order_flags(p)
    p.add_argument("--radius-override", type=int,
                   help="coloring radius instead of 3h-3 (experimental)")
    p.add_argument("--extensions", action="store_true", help="print the linear extensions")
    p.set_defaults(func=cmd_realizer)

    p = sub.add_parser("support", help="support element for Inc(P)")
    p.add_argument("file")
    order_flags(p)
    budgets(p)
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("bounds", help="evaluate closed-form bounds")
    p.add_argument("--class", dest="cls", required=True,
                   choices=["genus", "treewidth", "minor_free", "topological_minor", "wcol",
                            "pht", "thm3"])
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE",
                   help="e.g. g=0 r=2 h=3, t=2 h=2, c=2, h=1 t=2 c=2")
    p.add_argument("--digits-limit", type=int, help="print longer values in scientific notation")
    p.add_argument("--budget-digits", type=int, default=bounds.DIGITS_LIMIT,
                   help="refuse to materialize values with more digits")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-td", help="check a PACE tree decomposition")
    p.add_argument("file", help="poset or graph file")
    p.add_argument("td")
    p.set_defaults(func=cmd_verify_td)

    p = sub.add_parser("pipeline", help="dimension, realizer and support report")
    p.add_argument("file")
    order_flags(p)
    budgets(p)
    p.add_argument("--csv", help="write the CSV row here instead of stdout")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("bench", help="benchmark suites as CSV")
    p.add_argument("--suite", choices=sorted(BENCH_SUITES), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="append a wall-clock column")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _Exit as exc:
        if str(exc):
            print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (BudgetExceededError, SizeLimitError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PosetlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
