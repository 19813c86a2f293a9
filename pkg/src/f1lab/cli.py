"""Command-line front end.

Every subcommand emits one report with the fixed shape
{command, config, results, warnings} (json, csv or text), writes it to
standard output, and maps outcomes to exit codes:

    0  success
    1  a computed refutation (e.g. classify found a counterexample)
    2  usage or parse errors
    3  evaluation-budget errors

The evaluation budget defaults to 10^8 points and can be overridden with
--budget or the F1LAB_BUDGET environment variable; a JSON config file
passed via --config supplies defaults for any flag of the same name.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings

from . import congruences as cong
from . import f1core, frames, graphmodels, loosegraphs, parsing, zeta
from .counting import (
    REFUTED,
    CountPoly,
    TypeVerdict,
    classify_f1ell_type,
    divisibility_upgrade,
    euler_characteristic,
    fit_counting_polynomial,
    system_counter,
)
from .finitefield import (
    DEFAULT_BUDGET,
    BudgetError,
    IntPolySystem,
    active_backend,
    count_tower,
)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=["json", "csv", "text"], default=None, dest="fmt"
    )
    parser.add_argument("--budget", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--config", default=None, help="JSON file with flag defaults")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="f1lab",
        description="Exact computations over cyclotomic extensions of the "
        "one-element field: frames, spectra, congruences, counting, zeta.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("frames", help="enumerate affine/projective frames")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--affine", type=int, metavar="D")
    group.add_argument("--projective", type=int, metavar="D")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--orbits", action="store_true")
    p.add_argument("--group", action="store_true")
    p.add_argument("--fix", action="append", default=[], metavar="I=VAL")
    p.add_argument("--ratio", action="store_true", help="points per closed point")
    _add_common(p)

    p = sub.add_parser("spec", help="prime spectra as finite posets")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--proj", action="store_true")
    p.add_argument("--compare-ell", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("congruences", help="congruences on the polynomial monoid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--bound", type=int, default=5)
    p.add_argument("--maximal", action="store_true")
    p.add_argument("--rees", default=None, metavar="VARS", help="e.g. 1,2")
    p.add_argument("--proj-closed", action="store_true")
    _add_common(p)

    p = sub.add_parser("graph", help="digraph models and automorphisms")
    p.add_argument(
        "--model",
        default=None,
        metavar="SPEC",
        help="complete:N | cycle:N | blowup:N,L",
    )
    p.add_argument("--file", default=None, help="edge list: 'u v' lines")
    p.add_argument("--undirected", action="store_true")
    p.add_argument("--automorphisms", action="store_true")
    p.add_argument("--cap", type=int, default=12)
    p.add_argument("--cover-target", default=None)
    p.add_argument("--cover-map", default=None, help="JSON object source->target")
    _add_common(p)

    p = sub.add_parser("count", help="exhaustive point counts over finite fields")
    p.add_argument("--file", default=None)
    p.add_argument("--system", default=None, help="inline system text")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--degrees", required=True, help="e.g. 1,2,3")
    _add_common(p)

    p = sub.add_parser("fit", help="fit a counting polynomial to samples")
    p.add_argument("--samples", required=True, help="q:count,q:count,...")
    _add_common(p)

    p = sub.add_parser("classify", help="classify against cyclotomic towers")
    p.add_argument("--file", default=None)
    p.add_argument("--system", default=None)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--primes", required=True, help="e.g. 3,5,7")
    p.add_argument("--mmax", type=int, default=2)
    p.add_argument("--allow-exceptions", action="store_true")
    p.add_argument("--upgrade", type=int, default=None, metavar="R")
    _add_common(p)

    p = sub.add_parser("zeta", help="zeta factor data and series checks")
    p.add_argument("--poly", required=True, help="counting polynomial, e.g. 'Y+1'")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--series-q", type=int, default=None)
    p.add_argument("--truncation", type=int, default=8)
    p.add_argument("--limit-s", default=None, help="complex sample, e.g. 2.5 or 3+2j")
    p.add_argument("--limit-h", type=float, default=1e-6)
    p.add_argument("--euler-s", default=None)
    p.add_argument("--euler-bound", type=int, default=1000)
    _add_common(p)

    p = sub.add_parser("loosetree", help="loose-tree class and zeta function")
    p.add_argument("--file", required=True)
    p.add_argument("--ell", type=int, default=1)
    _add_common(p)

    return parser


def _load_config(args) -> dict:
    config = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    fmt = args.fmt or config.get("format", "json")
    budget = args.budget or config.get("budget")
    if budget is None:
        budget = int(os.environ.get("F1LAB_BUDGET", DEFAULT_BUDGET))
    workers = args.workers or config.get("workers", 1)
    return {"format": fmt, "budget": int(budget), "workers": int(workers)}


def _read_system(args) -> IntPolySystem:
    if getattr(args, "system", None):
        return parsing.parse_poly_system(args.system)
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return parsing.parse_poly_system(fh.read())
    raise ParserUsage("one of --file or --system is required")


class ParserUsage(Exception):
    pass


def _parse_cyc(text: str, ell: int) -> f1core.CycElt:
    text = text.strip()
    if text == "0":
        return f1core.CycElt.zero(ell)
    if text == "1":
        return f1core.CycElt.one(ell)
    if text.startswith("w^"):
        return f1core.CycElt.root(ell, int(text[2:]))
    if text == "w":
        return f1core.CycElt.root(ell, 1)
    raise ParserUsage(f"cannot read field element {text!r} (use 0, 1, w, w^k)")


def _point_str(point) -> str:
    return "(" + ",".join(str(c) for c in point) + ")"


def cmd_frames(args, config) -> tuple[dict, list[dict], int]:
    projective = args.projective is not None
    dim = args.projective if projective else args.affine
    ell = args.ell
    fixes = []
    for item in args.fix:
        if "=" not in item:
            raise ParserUsage(f"--fix needs I=VAL, got {item!r}")
        idx, val = item.split("=", 1)
        fixes.append((int(idx), _parse_cyc(val, ell)))
    if fixes:
        points = frames.subframe(dim, ell, fixes, projective=projective)
    elif projective:
        points = frames.enumerate_projective(dim, ell)
    else:
        points = frames.enumerate_affine(dim, ell)
    results = {
        "kind": "projective" if projective else "affine",
        "dim": dim,
        "ell": ell,
        "count": len(points),
        "points": [_point_str(pt) for pt in points],
    }
    rows = [{"point": _point_str(pt), "support": frames.support_size(pt)} for pt in points]
    if args.orbits:
        results["orbits"] = [
            {"support": r, "size": len(part)}
            for r, part in frames.orbit_decomposition(dim, ell, projective)
        ]
    if args.group:
        group = frames.automorphism_group(dim, ell, projective)
        results["group_order"] = group.order
    if args.ratio:
        ratio = frames.points_per_closed_point(
            "projective" if projective else "affine", dim, ell
        )
        results["points_per_closed_point"] = str(ratio)
    return results, rows, EXIT_OK


def cmd_spec(args, config) -> tuple[dict, list[dict], int]:
    build = f1core.proj_points if args.proj else f1core.spec_points
    primes = build(args.m, args.ell)
    closed = [
        p
        for p in primes
        if (p.is_proj_closed if args.proj else p.is_maximal)
    ]
    results = {
        "m": args.m,
        "ell": args.ell,
        "projective": args.proj,
        "count": len(primes),
        "closed_count": len(closed),
        "points": [str(p) for p in primes],
        "closed_points": [str(p) for p in closed],
    }
    if args.compare_ell is not None:
        results["homeomorphic_to_ell"] = args.compare_ell
        results["homeomorphic"] = f1core.topology_homeomorphic(
            args.ell, args.compare_ell, args.m, args.proj
        )
    rows = [{"prime": str(p), "size": len(p.variables)} for p in primes]
    return results, rows, EXIT_OK


def cmd_congruences(args, config) -> tuple[dict, list[dict], int]:
    results: dict = {"m": args.m, "ell": args.ell, "bound": args.bound}
    rows = []
    if args.maximal:
        maximal = cong.maximal_congruences(args.m, args.ell)
        frame = frames.enumerate_affine(args.m, args.ell)
        entries = []
        for point, ev in zip(frame, maximal):
            kernel = ev.kernel_congruence(args.bound)
            entries.append(
                {
                    "frame_point": _point_str(point),
                    "values": _point_str(ev.values),
                    "classes": len(kernel.classes()),
                }
            )
        results["maximal"] = entries
        results["count"] = len(entries)
        rows = entries
    elif args.rees is not None:
        variables = frozenset(
            int(tok) for tok in args.rees.split(",") if tok.strip()
        )
        prime = f1core.MonoidPrime(args.m, variables)
        congruence = cong.rees_congruence(prime, args.ell, args.bound)
        verdict = cong.is_prime_congruence(congruence)
        results["rees"] = {
            "prime": str(prime),
            "classes": len(congruence.classes()),
            "is_prime_congruence": verdict.is_prime,
        }
        rows = [results["rees"]]
    elif args.proj_closed:
        points = cong.proj_c_closed_points(args.m, args.ell)
        results["proj_closed_points"] = [_point_str(pt) for pt in points]
        results["count"] = len(points)
        rows = [{"point": _point_str(pt)} for pt in points]
    else:
        raise ParserUsage("choose one of --maximal, --rees, --proj-closed")
    return results, rows, EXIT_OK


def _graph_from_args(args) -> graphmodels.DiGraph:
    if args.model:
        kind, _, rest = args.model.partition(":")
        if kind == "complete":
            return graphmodels.complete_graph(int(rest))
        if kind == "cycle":
            return graphmodels.cayley_cycle(int(rest))
        if kind == "blowup":
            n, ell = (int(tok) for tok in rest.split(","))
            return graphmodels.cyclotomic_blowup(n, ell)
        raise ParserUsage(f"unknown model {args.model!r}")
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            return _parse_edge_list(fh.read(), args.undirected)
    raise ParserUsage("one of --model or --file is required")


def _parse_edge_list(text: str, undirected: bool) -> graphmodels.DiGraph:
    vertices: list = []
    seen = set()
    edges = []
    for line_no, body in parsing._logical_lines(text):
        tokens = body.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise parsing.ParseError("'vertex' takes one label", line_no, 1)
            if tokens[1] not in seen:
                seen.add(tokens[1])
                vertices.append(tokens[1])
            continue
        if len(tokens) != 2:
            raise parsing.ParseError("edge line must be 'u v'", line_no, 1)
        for v in tokens:
            if v not in seen:
                seen.add(v)
                vertices.append(v)
        edges.append((tokens[0], tokens[1]))
    build = graphmodels.DiGraph.undirected if undirected else graphmodels.DiGraph.directed
    return build(vertices, edges)


def cmd_graph(args, config) -> tuple[dict, list[dict], int]:
    graph = _graph_from_args(args)
    results: dict = {
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "symmetric": graph.is_symmetric(),
    }
    if args.automorphisms:
        results["automorphisms"] = graphmodels.automorphism_count(graph, cap=args.cap)
    if args.cover_target:
        with open(args.cover_target, "r", encoding="utf-8") as fh:
            target = _parse_edge_list(fh.read(), args.undirected)
        if not args.cover_map:
            raise ParserUsage("--cover-target needs --cover-map")
        with open(args.cover_map, "r", encoding="utf-8") as fh:
            mapping = json.load(fh)
        morphism = graphmodels.GraphMorphism.from_dict(graph, target, mapping)
        fibers = {}
        for v in graph.vertices:
            image = morphism(v)
            fibers[image] = fibers.get(image, 0) + 1
        sizes = sorted(set(fibers.values()))
        fold = sizes[0] if len(sizes) == 1 else None
        results["cover"] = {
            "is_cover": graphmodels.is_cover(morphism),
            "fold": fold if graphmodels.is_cover(morphism, fold) else None,
        }
    rows = [results]
    return results, rows, EXIT_OK


def cmd_count(args, config) -> tuple[dict, list[dict], int]:
    system = _read_system(args)
    degrees = [int(tok) for tok in args.degrees.split(",") if tok.strip()]
    counts = count_tower(
        system, args.p, degrees, budget=config["budget"], workers=config["workers"]
    )
    rows = [{"q": q, "count": c} for q, c in counts]
    results = {
        "system": parsing.format_poly_system(system).strip().split("\n"),
        "p": args.p,
        "counts": rows,
        "backend": active_backend(),
    }
    return results, rows, EXIT_OK


def _parse_samples(text: str) -> list[tuple[int, int]]:
    samples = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise ParserUsage(f"sample {chunk!r} is not q:count")
        q, c = chunk.split(":", 1)
        samples.append((int(q), int(c)))
    return samples


def cmd_fit(args, config) -> tuple[dict, list[dict], int]:
    samples = _parse_samples(args.samples)
    poly = fit_counting_polynomial(samples)
    results = {
        "samples": [{"q": q, "count": c} for q, c in samples],
        "poly": str(poly),
        "coefficients": list(poly.coeffs),
        "euler_characteristic": euler_characteristic(poly),
    }
    return results, [{"poly": str(poly)}], EXIT_OK


def _verdict_dict(verdict: TypeVerdict) -> dict:
    out = {
        "ell": verdict.ell,
        "status": verdict.status,
        "poly": None if verdict.poly is None else str(verdict.poly),
        "coefficients": None if verdict.poly is None else list(verdict.poly.coeffs),
        "samples": [
            {"p": p, "q": q, "count": c} for p, q, c in verdict.samples
        ],
        "exceptions": list(verdict.exceptions),
    }
    if verdict.witness is not None:
        q, c, predicted = verdict.witness
        out["witness"] = {"q": q, "count": c, "predicted": str(predicted)}
    if verdict.note:
        out["note"] = verdict.note
    return out


def cmd_classify(args, config) -> tuple[dict, list[dict], int]:
    system = _read_system(args)
    primes = [int(tok) for tok in args.primes.split(",") if tok.strip()]
    verdict = classify_f1ell_type(
        system,
        args.ell,
        primes,
        args.mmax,
        budget=config["budget"],
        workers=config["workers"],
        allow_exceptions=args.allow_exceptions,
    )
    results = {"verdict": _verdict_dict(verdict)}
    exit_code = EXIT_REFUTED if verdict.status == REFUTED else EXIT_OK
    if args.upgrade is not None and verdict.poly is not None:
        upgraded = divisibility_upgrade(
            verdict,
            args.upgrade,
            system_counter(system, config["budget"], config["workers"]),
            primes,
            args.mmax,
            allow_exceptions=args.allow_exceptions,
        )
        results["upgrade"] = _verdict_dict(upgraded)
        if upgraded.status == REFUTED:
            exit_code = EXIT_REFUTED
    rows = [
        {"status": results["verdict"]["status"], "poly": results["verdict"]["poly"]}
    ]
    return results, rows, exit_code


def cmd_zeta(args, config) -> tuple[dict, list[dict], int]:
    poly = parsing.parse_count_poly(args.poly)
    zf = zeta.f1ell_zeta(poly, args.ell)
    results: dict = {
        "poly": str(poly),
        "ell": zf.ell,
        "factors": [[k, a, zf.ell] for k, a in zf.factors],
        "display": str(zf),
        "euler_characteristic": euler_characteristic(poly),
    }
    exit_code = EXIT_OK
    if args.series_q is not None:
        series = zeta.product_form_series(poly, args.series_q, args.truncation)
        results["series"] = {
            "q": args.series_q,
            "truncation": args.truncation,
            "coefficients": [str(c) for c in series.coeffs],
        }
    if args.limit_s is not None:
        s = complex(args.limit_s)
        error = zeta.limit_relative_error(poly, args.ell, s, args.limit_h)
        results["limit_check"] = {
            "s": str(s),
            "h": args.limit_h,
            "relative_error": error,
        }
    if args.euler_s is not None:
        s = complex(args.euler_s)
        comparison = zeta.euler_product_comparison(poly, args.ell, s, args.euler_bound)
        results["euler_product"] = {
            "s": str(s),
            "prime_bound": comparison.prime_bound,
            "deviation": comparison.deviation,
            "truncation_deviation": comparison.truncation_deviation,
        }
    rows = [{"k": k, "a_k": a, "ell": zf.ell} for k, a in zf.factors]
    return results, rows, exit_code


def cmd_loosetree(args, config) -> tuple[dict, list[dict], int]:
    with open(args.file, "r", encoding="utf-8") as fh:
        graph = parsing.parse_loose_graph(fh.read())
    stats = loosegraphs.tree_stats(graph)
    poly = loosegraphs.tree_class(graph)
    zf = loosegraphs.tree_zeta(graph, args.ell)
    results = {
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "stats": {
            "degrees": list(stats.degrees),
            "multiplicities": list(stats.multiplicities),
            "excess": stats.excess,
            "leaves": stats.leaves,
            "convention": stats.convention,
        },
        "class": str(poly),
        "coefficients": list(poly.coeffs),
        "zeta_factors": [[k, a, zf.ell] for k, a in zf.factors],
        "zeta": str(zf),
    }
    rows = [{"k": k, "a_k": a, "ell": zf.ell} for k, a in zf.factors]
    return results, rows, EXIT_OK


HANDLERS = {
    "frames": cmd_frames,
    "spec": cmd_spec,
    "congruences": cmd_congruences,
    "graph": cmd_graph,
    "count": cmd_count,
    "fit": cmd_fit,
    "classify": cmd_classify,
    "zeta": cmd_zeta,
    "loosetree": cmd_loosetree,
}


def _emit(report: dict, fmt: str, rows: list[dict], out) -> None:
    if fmt == "json":
        json.dump(report, out, indent=2, default=str)
        out.write("\n")
    elif fmt == "csv":
        buffer = io.StringIO()
        if rows:
            fieldnames = []
            for row in rows:
                for key in row:
                    if key not in fieldnames:
                        fieldnames.append(key)
            writer = csv.DictWriter(buffer, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(rows)
        out.write(buffer.getvalue())
    else:
        out.write(f"command: {report['command']}\n")
        for key, value in report["results"].items():
            out.write(f"{key}: {value}\n")
        for warning in report["warnings"]:
            out.write(f"warning: {warning}\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = _load_config(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    handler = HANDLERS[args.command]
    captured: list[str] = []
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            results, rows, exit_code = handler(args, config)
            captured = [str(w.message) for w in caught]
    except parsing.ParseError as exc:
        report = {
            "command": args.command,
            "config": config,
            "results": {"error": f"parse error at {exc}"},
            "warnings": [],
        }
        _emit(report, config["format"], [], sys.stdout)
        return EXIT_USAGE
    except BudgetError as exc:
        report = {
            "command": args.command,
            "config": config,
            "results": {
                "error": str(exc),
                "required": exc.required,
                "budget": exc.budget,
            },
            "warnings": [],
        }
        _emit(report, config["format"], [], sys.stdout)
        return EXIT_BUDGET
    except (ParserUsage, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "command": args.command,
        "config": config,
        "results": results,
        "warnings": captured,
    }
    _emit(report, config["format"], rows, sys.stdout)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
