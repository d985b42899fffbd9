"""``pierce2d`` command line.

Exit codes: 0 success, 1 a checked claim failed, 2 precondition failure,
3 search budget or grid resolution exhausted, 4 I/O or schema error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import geometry
from .config_space import chord_system
from .generators import GeneratorError, random_family, regular_gon_edges
from .geometry import Family, GeometryError, Line2, Point2, num, point_in_set
from .intervals import verify_point_transversal
from .io import SchemaError, dumps, encode_line, encode_point, family_to_dict, load_family, save_family
from .line_solver import (
    InfeasibleK,
    RainbowViolation,
    SearchExhausted,
    solve_colorful,
    solve_lines,
    verify_line_transversal,
)
from .matching import has_pq_property, intersection_graph, isolated_sets, matching_witness, pairwise_intersections
from .oracles import OracleCapExceeded, exact_min_lines, exact_min_points, point_candidates
from .pipeline import IsolatedSetsError, PipelineCheckFailed, theorem1_pierce
from .render import render_svg
from .setcover import BudgetExhausted, min_set_cover
EXIT_OK = 0
EXIT_CLAIM = 1
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_IO = 4

log = logging.getLogger("pierce2d")


def _emit(report: dict, out: str | None) -> None:
    text = dumps(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _lines_report(res) -> dict:
    return {
        "size": len(res.lines),
        "source": res.source,
        "x_star": list(res.x_star) if res.x_star is not None else None,
        "grid_points": res.grid_points,
        "lines": [encode_line(ln) for ln in res.lines],
        "certificate": res.assignment,
    }


# -- subcommands -------------------------------------------------------------


def cmd_gen(args) -> int:
    mode = geometry.get_mode()
    if args.regular_gon is not None:
        fam = regular_gon_edges(args.regular_gon, mode)
    else:
        seed, n = args.random
        fam = random_family(
            seed,
            n,
            radius=tuple(args.radius),
            no_isolated=args.no_isolated,
            pairwise=args.pairwise,
            common_point=args.common_point,
            rainbow=args.rainbow,
            mode=mode,
        )
    if args.out:
        save_family(fam, args.out)
    else:
        sys.stdout.write(dumps(family_to_dict(fam)))
    return EXIT_OK


def cmd_lines(args) -> int:
    fam = load_family(args.family)
    k = "auto" if args.k == "auto" else int(args.k)
    t0 = time.perf_counter()
    res = solve_lines(fam, k=k, method=args.method, n_max=args.nmax)
    report = {"command": "lines", "n": len(fam), "nu": res.nu, "k": res.k, "bound": res.k + 1}
    report.update(_lines_report(res))
    report["elapsed_s"] = round(time.perf_counter() - t0, 4)
    _emit(report, args.out)
    return EXIT_OK


def cmd_colorful(args) -> int:
    fam = load_family(args.family)
    if fam.colors is None:
        raise GeometryError("colorful needs a family file with 'colors'")
    classes = fam.color_classes()
    t0 = time.perf_counter()
    j, res, checked = solve_colorful(classes, check_rainbow=not args.no_rainbow_check, n_max=args.nmax)
    report = {
        "command": "colorful",
        "n": len(fam),
        "classes": len(classes),
        "k": len(classes) // 2,
        "bound": len(classes) // 2,
        "color": sorted(set(fam.colors.values()))[j - 1],
        "class_index": j,
        "rainbow_checked": checked,
    }
    report.update(_lines_report(res))
    report["elapsed_s"] = round(time.perf_counter() - t0, 4)
    _emit(report, args.out)
    return EXIT_OK


def _min_points(fam: Family) -> list[Point2]:
    fam = fam.exact()
    pts = point_candidates(fam)
    masks = []
    for p in pts:
        m = 0
        for i, s in enumerate(fam.sets):
            if point_in_set(p, s):
                m |= 1 << i
        masks.append(m)
    return [pts[i] for i in min_set_cover(len(fam), masks)]


def cmd_points(args) -> int:
    fam = load_family(args.family)
    t0 = time.perf_counter()
    if args.pipeline:
        rep = theorem1_pierce(fam)
        report = {
            "command": "points",
            "method": "pipeline",
            "n": len(fam),
            "nu": rep.p,
            "r": rep.r,
            "k": rep.k,
            "bound": rep.bound,
            "bound_satisfied": rep.bound_satisfied,
            "lines": _lines_report(rep.lines),
            "trace_nu": rep.trace_nu,
            "d_interval_bound": rep.points.bound,
            "size": rep.tau,
            "points": [encode_point(p) for p in rep.planar_points],
            "certificate": rep.certificate,
        }
    else:
        pts = _min_points(fam)
        cert = verify_point_transversal(fam, pts)
        report = {
            "command": "points",
            "method": "exact",
            "n": len(fam),
            "size": len(pts),
            "points": [encode_point(p) for p in pts],
            "certificate": cert.assignment,
        }
    report["elapsed_s"] = round(time.perf_counter() - t0, 4)
    _emit(report, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    fam = load_family(args.family)
    t0 = time.perf_counter()
    if args.kind == "lines":
        size, lines = exact_min_lines(fam, cap=args.cap)
        report = {"command": "oracle", "kind": "lines", "n": len(fam), "size": size, "lines": [encode_line(ln) for ln in lines]}
    else:
        size, pts = exact_min_points(fam, cap=args.cap)
        report = {"command": "oracle", "kind": "points", "n": len(fam), "size": size, "points": [encode_point(p) for p in pts]}
    report["elapsed_s"] = round(time.perf_counter() - t0, 4)
    _emit(report, args.out)
    return EXIT_OK


def run_checks(fam: Family) -> list[tuple[str, bool, str]]:
    """Invariant checks on one family; each entry is ``(name, ok, detail)``."""
    out = []
    fam = fam.exact()
    graph = intersection_graph(fam)
    witness = matching_witness(graph)
    nu = len(witness)
    disjoint = all(not graph.adjacent(fam.ids.index(a), fam.ids.index(b)) for a in witness for b in witness if a < b)
    out.append(("matching witness pairwise disjoint", disjoint, f"nu={nu}"))
    if nu >= 1:
        ok = has_pq_property(fam, nu + 1, nu=nu) and (nu < 2 or not has_pq_property(fam, nu, nu=nu))
        out.append(("(nu+1,2) holds and (nu,2) fails", ok, ""))
    inter = pairwise_intersections(fam)
    inside = True
    for s in inter.sets:
        a, b = (fam.by_id(pid) for pid in s.parents)
        inside &= all(point_in_set(v, a) and point_in_set(v, b) for v in s.vertices)
    out.append(("pairwise intersections inside both parents", inside, f"|F'|={len(inter)}"))
    if len(fam):
        res = solve_lines(fam, nu=nu)
        cert = verify_line_transversal(fam, res.lines)
        out.append(("line transversal within nu//2 + 1", cert.ok and len(res.lines) <= nu // 2 + 1, f"{len(res.lines)} lines via {res.source}"))
    if len(fam) and not isolated_sets(graph):
        rep = theorem1_pierce(fam)
        out.append(("point transversal within bound", rep.bound_satisfied, f"{rep.tau} points, bound {rep.bound}"))
    return out


def cmd_check(args) -> int:
    fam = load_family(args.family)
    results = run_checks(fam)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_CLAIM


def _parse_x(text: str):
    return [num(t.strip(), "exact") for t in text.split(",")]


def cmd_render(args) -> int:
    fam = load_family(args.family)
    chords = chord_system(_parse_x(args.x), exact=True) if args.x else None
    lines, points = [], []
    if args.report:
        try:
            rep = json.loads(Path(args.report).read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{args.report}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        raw_lines = rep.get("lines", [])
        if isinstance(raw_lines, dict):  # pipeline report nests the line solution
            raw_lines = raw_lines.get("lines", [])
        try:
            lines = [Line2(Point2(*(num(v) for v in ln["a"])), Point2(*(num(v) for v in ln["b"]))) for ln in raw_lines]
            points = [Point2(num(p[0]), num(p[1])) for p in rep.get("points", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"{args.report}: malformed lines or points ({exc})") from None
    render_svg(fam, args.out, chords=chords, lines=lines, points=points)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pierce2d", description="Line and point transversals of planar convex families.")
    p.add_argument("--mode", choices=["exact", "float"], default="exact", help="arithmetic for parsed coordinates")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a family file")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--regular-gon", type=int, metavar="P", help="edges of the regular (2P+1)-gon")
    src.add_argument("--random", type=int, nargs=2, metavar=("SEED", "N"))
    g.add_argument("--radius", type=float, nargs=2, default=[0.1, 0.45], metavar=("LO", "HI"))
    g.add_argument("--no-isolated", action="store_true")
    g.add_argument("--pairwise", action="store_true")
    g.add_argument("--common-point", action="store_true")
    g.add_argument("--rainbow", type=int, default=0, metavar="2K")
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen)

    ln = sub.add_parser("lines", help="line transversal with at most nu//2 + 1 lines")
    ln.add_argument("family")
    ln.add_argument("--k", default="auto")
    ln.add_argument("--method", choices=["kkm", "combinatorial", "both"], default="both")
    ln.add_argument("--nmax", type=int, default=512)
    ln.add_argument("-o", "--out")
    ln.set_defaults(func=cmd_lines)

    c = sub.add_parser("colorful", help="k lines piercing one colour class")
    c.add_argument("family")
    c.add_argument("--nmax", type=int, default=512)
    c.add_argument("--no-rainbow-check", action="store_true")
    c.add_argument("-o", "--out")
    c.set_defaults(func=cmd_colorful)

    pt = sub.add_parser("points", help="point transversal")
    pt.add_argument("family")
    pt.add_argument("--pipeline", action="store_true", help="use the line/d-interval reduction")
    pt.add_argument("-o", "--out")
    pt.set_defaults(func=cmd_points)

    o = sub.add_parser("oracle", help="exhaustive minimum for small families")
    o.add_argument("kind", choices=["lines", "points"])
    o.add_argument("family")
    o.add_argument("--cap", type=int, default=16)
    o.add_argument("-o", "--out")
    o.set_defaults(func=cmd_oracle)

    ch = sub.add_parser("check", help="run the invariant checks on a family file")
    ch.add_argument("family")
    ch.set_defaults(func=cmd_check)

    r = sub.add_parser("render", help="SVG drawing")
    r.add_argument("family")
    r.add_argument("-o", "--out", required=True)
    r.add_argument("--x", help="simplex point for the chord system, e.g. 1/4,1/4,1/4,1/4")
    r.add_argument("--report", help="lines/points JSON report to overlay")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    geometry.set_mode(args.mode)
    try:
        return args.func(args)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (BudgetExhausted, SearchExhausted, OracleCapExceeded) as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PipelineCheckFailed as exc:
        print(f"claim failed: {exc}", file=sys.stderr)
        return EXIT_CLAIM
    except (IsolatedSetsError, RainbowViolation, InfeasibleK, GeometryError, GeneratorError, ValueError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    finally:
        geometry.set_mode("exact")


if __name__ == "__main__":
    sys.exit(main())
