"""Command-line interface: ``python -m ribbonhopf <command> ...``.

Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .enumeration import (
    CACHE_ENV,
    EnumKey,
    Filter,
    ResourceGuardError,
    cache_file_text,
    enumerate_graphs,
    verify_counts,
)
from .ribbon import parse, serialize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- output

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def render(report, fmt: str) -> str:
    if isinstance(report, str):
        return report
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "tsv" and isinstance(report, dict) and report.get("rows"):
        rows = report["rows"]
        cols = [c for c in rows[0] if not isinstance(rows[0][c], (list, dict))]
        lines = ["\t".join(cols)] + ["\t".join(str(r.get(c, "")) for c in cols) for r in rows]
        return "\n".join(lines) + "\n"
    return "".join(f"{k}: {v}\n" for k, v in _flatten(report))


def emit(report, args) -> None:
    text = render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- inputs

def read_graphs(path: str):
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    graphs = []
    for i, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#") or line.startswith("key="):
            continue
        try:
            graphs.append(parse(line))
        except Exception as e:
            raise UsageError(f"{path}:{i}: malformed graph ({e})")
    if not graphs:
        raise UsageError(f"{path}: no graphs")
    return graphs


def read_spectrum(path: str):
    from .amplitudes import Spectrum
    try:
        return Spectrum.from_json(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"{path}: malformed spectrum ({e})")


def parse_labels(text: str | None):
    if not text:
        raise UsageError("--labels is required")
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed labels {text!r}")


def _filter(args) -> Filter:
    return Filter.ONE_PI if args.onepi else Filter.CONNECTED


# ---------------------------------------------------------------- commands

def cmd_enumerate(args) -> int:
    key = EnumKey(args.npoint, args.loops, _filter(args))
    graphs = enumerate_graphs(key, workers=args.workers, cache_dir=args.cache_dir)
    if args.format == "json":
        emit({"key": key.text(), "count": len(graphs), "graphs": [serialize(g) for g in graphs]}, args)
    else:
        emit(cache_file_text(key, graphs), args)
    return EXIT_OK


def cmd_counts(args) -> int:
    rep = verify_counts(args.max_order, workers=args.workers, cache_dir=args.cache_dir)
    rep = {"check": "counts", "params": {"max_order": args.max_order},
           "verdict": "FAIL" if rep["mismatches"] else "PASS", **rep}
    emit(rep, args)
    return EXIT_FAIL if rep["mismatches"] else EXIT_OK


def cmd_coproduct(args) -> int:
    from .hopf import GraphPoly, coaction, coproduct, is_generator, reduced_coproduct
    graphs = read_graphs(args.graph_file)
    if not all(is_generator(G) for G in graphs):
        raise UsageError("every input graph must be connected, bridgeless, planar with 2 or 4 legs")
    x = GraphPoly.from_graphs(graphs, rooted=args.rooted)
    full = coaction(x) if args.rooted else coproduct(x)
    red = reduced_coproduct(x, rooted_right=args.rooted)
    emit({"check": "coproduct", "params": {"rooted": args.rooted, "graphs": len(graphs)},
          "coproduct": full.to_json(), "reduced": red.to_json()}, args)
    return EXIT_OK


def cmd_antipode(args) -> int:
    from .hopf import GraphPoly, antipode, convolution_check, is_generator
    graphs = read_graphs(args.graph_file)
    if not all(is_generator(G) for G in graphs):
        raise UsageError("every input graph must be connected, bridgeless, planar with 2 or 4 legs")
    x = GraphPoly.from_graphs(graphs, rooted=False)
    left, right = convolution_check(x)
    ok = left and right
    emit({"check": "antipode", "params": {"graphs": len(graphs)}, "antipode": antipode(x).to_json(),
          "verdict": "PASS" if ok else "FAIL"}, args)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dse(args) -> int:
    from .dse import dse_solve
    rep = dse_solve(args.order, args.order_v, per_place=not args.literal)
    emit(rep.to_json(with_graphs=args.graphs), args)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_hochschild(args) -> int:
    from .subalgebra import cograph_spectrum_scan, hochschild_check
    kinds = ("e", "v") if args.kind == "both" else (args.kind,)
    reports = [hochschild_check(k, args.order, per_loop=args.per_loop, per_place=not args.literal)
               for k in kinds]
    out = {"check": "hochschild", "params": {"order": args.order, "per_loop": args.per_loop},
           "reports": reports}
    if args.per_loop:
        out["verdict"] = "REPORT"
        out["cograph_spectrum"] = cograph_spectrum_scan(args.spectrum_loops)
        emit(out, args)
        return EXIT_OK
    ok = all(r["verdict"] == "PASS" for r in reports)
    out["verdict"] = "PASS" if ok else "FAIL"
    emit(out, args)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_amplitude(args) -> int:
    from .amplitudes import amplitude
    graphs = read_graphs(args.graph_file)
    spec = read_spectrum(args.spectrum)
    labels = parse_labels(args.labels)
    rows = []
    for G in graphs:
        try:
            a = amplitude(G, labels, spec)
        except ValueError as e:
            raise UsageError(str(e))
        rows.append({"graph": serialize(G), "coefficient": str(a.coefficient),
                     "vertices": a.vertices, "internal_faces": a.internal_faces,
                     "value": str(a.value(spec.N))})
    total = sum((Fraction(r["value"]) for r in rows), Fraction(0))
    emit({"check": "amplitude", "params": {"spectrum": spec.to_json(), "labels": [str(x) for x in labels]},
          "rows": rows, "total": str(total)}, args)
    return EXIT_OK


def cmd_analytic(args) -> int:
    from .amplitudes import analytic_report
    try:
        rep = analytic_report(args.lam, args.mu2, args.cutoff)
    except ValueError as e:
        raise UsageError(str(e))
    ok = rep["residual"] < args.tol and rep["slope_error"] < args.slope_tol
    rep["verdict"] = "PASS" if ok else "FAIL"
    rep["params"].update({"tol": args.tol, "slope_tol": args.slope_tol})
    emit(rep, args)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser

def _add_common(s: argparse.ArgumentParser, fmt: str = "json") -> argparse.ArgumentParser:
    # added per subcommand: argparse parents share action objects, so a shared
    # parent would leak one subcommand's format default into the others
    s.add_argument("--format", choices=("json", "tsv", "text"), default=fmt,
                   help=f"output format (default {fmt})")
    s.add_argument("--out", help="write output to this file instead of stdout")
    s.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV),
                   help=f"enumeration cache directory (default ${CACHE_ENV})")
    s.add_argument("--workers", type=int, default=1, help="worker processes for enumeration")
    s.add_argument("--seed", type=int, default=0, help="seed for randomized checks (unused by exact commands)")
    return s


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbonhopf",
                                description="Quartic ribbon graphs, their Hopf algebra and DSE checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fmt="json", **kw):
        return _add_common(sub.add_parser(name, **kw), fmt)

    e = add("enumerate", "text", help="list rooted planar graphs")
    e.add_argument("--npoint", type=int, choices=(2, 4), required=True)
    e.add_argument("--loops", type=int, required=True)
    g = e.add_mutually_exclusive_group()
    g.add_argument("--onepi", action="store_true", help="bridgeless graphs only")
    g.add_argument("--connected", action="store_true", help="all connected graphs (default)")
    e.set_defaults(func=cmd_enumerate)

    c = add("counts", "text", help="compare enumeration with the counting series")
    c.add_argument("--max-order", type=int, default=3, help="highest lambda order (default 3)")
    c.set_defaults(func=cmd_counts)

    for name, func, hlp in (("coproduct", cmd_coproduct, "coproduct of the graphs in a file"),
                            ("antipode", cmd_antipode, "antipode of the graphs in a file")):
        s = add(name, help=hlp)
        s.add_argument("graph_file", help="one serialized graph per line")
        if name == "coproduct":
            s.add_argument("--rooted", action="store_true",
                           help="keep roots on the right legs (coaction on rooted graphs)")
        s.set_defaults(func=func)

    d = add("dse", help="solve the combinatorial DSE and compare with enumeration")
    d.add_argument("--order", type=int, default=3, help="2-point truncation order (default 3)")
    d.add_argument("--order-v", type=int, default=None, help="4-point truncation order (default --order)")
    d.add_argument("--literal", action="store_true",
                   help="sum bivalent refinements without the per-place weight")
    d.add_argument("--graphs", action="store_true", help="include graph lists in the report")
    d.set_defaults(func=cmd_dse)

    h = add("hochschild", help="Hochschild cocycle check of the grafting operator")
    h.add_argument("--order", type=int, default=2, help="truncation order (default 2)")
    h.add_argument("--kind", choices=("e", "v", "both"), default="both")
    h.add_argument("--per-loop", action="store_true",
                   help="test each fixed-loop grafting operator and scan cograph spectra (report only)")
    h.add_argument("--spectrum-loops", type=int, default=3, help="loop bound of the cograph spectrum scan")
    h.add_argument("--literal", action="store_true",
                   help="sum bivalent refinements without the per-place weight")
    h.set_defaults(func=cmd_hochschild)

    a = add("amplitude", help="Feynman amplitudes on a finite spectrum")
    a.add_argument("graph_file", help="one serialized graph per line")
    a.add_argument("--spectrum", required=True, help='JSON file {"eigenvalues": [...], "multiplicities": [...]}')
    a.add_argument("--labels", required=True, help="comma-separated external face values in boundary order")
    a.set_defaults(func=cmd_amplitude)

    n = add("analytic", help="2F1 oracle, gamma and spectral dimension")
    n.add_argument("--lambda", dest="lam", type=float, default=0.1, help="coupling (default 0.1)")
    n.add_argument("--mu2", type=float, default=1.0, help="mass scale mu^2 (default 1)")
    n.add_argument("--cutoff", type=float, default=1e4, help="quadrature cutoff Lambda^2 (default 1e4)")
    n.add_argument("--tol", type=float, default=1e-3, help="residual tolerance (default 1e-3)")
    n.add_argument("--slope-tol", type=float, default=1e-3, help="log-slope tolerance (default 1e-3)")
    n.set_defaults(func=cmd_analytic)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"ribbonhopf: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as e:
        print(f"ribbonhopf: resource guard: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"ribbonhopf: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
