"""Command-line front end.

Verbs: info, kh, rkh, qtrees, jones, dual, move, check.  Input is a file
path or '-' for stdin; PD codes are detected by an `X[` prefix and arrow
presentations by a `circle:` prefix, overridable with --format.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .complexes import build_complex, build_reduced_complex, random_edge_assignment
from .homology import (BigradedGroup, check_duality, check_grading_theorems,
                       graded_euler_characteristic, homology, shift)
from .links import PDCode, all_A_ribbon_graph, kauffman_state, parse_pd
from .moves import MoveSite, apply_move
from .quasitree import jones_expansion, quasi_trees
from .ribbon import (ArrowPresentation, ParseError, RibbonGraph,
                     RibbonGraphError, emit_arrow_presentation,
                     parse_arrow_presentation, to_arrow_presentation,
                     to_ribbon_graph)


class CliError(Exception):
    pass


def _read_input(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(str(exc)) from None


def _detect_format(text: str, forced: str | None) -> str:
    if forced:
        return forced
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("X[") or stripped.startswith("X ["):
            return "pd"
        if stripped.startswith("circle:"):
            return "arrows"
        break
    raise CliError("cannot detect input format; use --format {pd,arrows}")


def _load(args) -> tuple[RibbonGraph, PDCode | None, ArrowPresentation]:
    text = _read_input(args.input)
    fmt = _detect_format(text, args.format)
    if fmt == "pd":
        pd = parse_pd(text)
        ap, _ = all_A_ribbon_graph(pd)
        return to_ribbon_graph(ap), pd, ap
    ap = parse_arrow_presentation(text)
    return to_ribbon_graph(ap), None, ap


def _pd_shift(pd: PDCode) -> tuple[int, int]:
    s = pd.signs()
    return -s.n_minus, s.n_plus - 2 * s.n_minus


def _group_table(group: BigradedGroup) -> str:
    if group.is_trivial():
        return "(trivial)\n"
    ii = sorted({i for (i, _) in group.entries})
    jj = sorted({j for (_, j) in group.entries}, reverse=True)

    def cell(i, j):
        r = group.rank(i, j)
        tor = group.torsion(i, j)
        parts = []
        if r == 1:
            parts.append("Z")
        elif r > 1:
            parts.append(f"Z^{r}")
        parts.extend(f"Z/{t}" for t in tor)
        return "+".join(parts)

    head = ["j\\i"] + [str(i) for i in ii]
    rows = [[str(j)] + [cell(i, j) for i in ii] for j in jj]
    widths = [max(len(r[c]) for r in [head] + rows) for c in range(len(head))]
    lines = []
    for r in [head] + rows:
        lines.append("  ".join(s.rjust(w) for s, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def _cmd_info(args, out):
    g, pd, ap = _load(args)
    data = {
        "vertices": g.n_vertices,
        "edges": g.n_edges,
        "faces": g.face_count(),
        "genus": g.genus(),
        "components": g.n_components(),
        "loops": sum(1 for e in range(g.n_edges) if g.is_loop(e)),
    }
    if g.is_connected():
        data["adequate"] = g.is_adequate()
    if pd is not None:
        s = pd.signs()
        data["n_plus"], data["n_minus"] = s.n_plus, s.n_minus
    if args.json:
        out.write(json.dumps(data) + "\n")
    else:
        out.write(" ".join(f"{k}={v}" for k, v in data.items()) + "\n")
    return 0


def _homology_cmd(args, out, reduced: bool):
    g, pd, _ = _load(args)
    basepoint = tuple(args.basepoint)
    build = build_reduced_complex if reduced else build_complex
    kwargs = {"max_edges": args.max_edges}
    if reduced:
        kwargs["basepoint"] = basepoint
    group = homology(build(g, **kwargs))
    if pd is not None and not args.raw:
        group = shift(group, *_pd_shift(pd))
    if args.json:
        out.write(group.to_json() + "\n")
    else:
        out.write(_group_table(group))
    return 0


def _cmd_qtrees(args, out):
    g, pd, _ = _load(args)
    order = None
    if args.edge_order:
        order = tuple(int(x) - 1 for x in args.edge_order.split(","))
    records = quasi_trees(g, order)
    if args.json:
        rows = [{"edges": [e + 1 for e in range(g.n_edges) if r.edges >> e & 1],
                 "genus": r.genus, "ia": r.ia, "ea": r.ea,
                 "i": r.i_grading, "j": r.j_grading} for r in records]
        out.write(json.dumps(rows) + "\n")
        return 0
    head = ["k", "edges", "g", "ia", "ea", "i", "j"]
    rows = []
    for k, r in enumerate(records, start=1):
        edges = "{" + ",".join(str(e + 1) for e in range(g.n_edges)
                               if r.edges >> e & 1) + "}"
        rows.append([str(k), edges, str(r.genus), str(r.ia), str(r.ea),
                     str(r.i_grading), str(r.j_grading)])
    widths = [max(len(r[c]) for r in [head] + rows) for c in range(len(head))]
    for r in [head] + rows:
        out.write("  ".join(s.rjust(w) for s, w in zip(r, widths)) + "\n")
    return 0


def _cmd_jones(args, out):
    text = _read_input(args.input)
    fmt = _detect_format(text, args.format)
    if fmt != "pd":
        raise CliError("jones needs a PD code (classical diagram)")
    poly = jones_expansion(parse_pd(text))
    if args.json:
        out.write(json.dumps({str(e): c for e, c in sorted(poly.coeffs.items())})
                  + "\n")
    else:
        out.write(str(poly) + "\n")
    return 0


def _cmd_dual(args, out):
    g, _, _ = _load(args)
    if not g.is_connected():
        raise CliError("dual needs a connected graph")
    out.write(emit_arrow_presentation(to_arrow_presentation(g.dual())))
    return 0


_MOVE_KINDS = {"R1a": ("R1a", False), "-R1a": ("R1a", True),
               "R1b": ("R1b", False), "-R1b": ("R1b", True),
               "R2": ("R2", False), "-R2": ("R2", True),
               "R3": ("R3", False), "-R3": ("R3", True)}


def parse_move_script(text: str) -> list[MoveSite]:
    sites = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] not in _MOVE_KINDS:
            raise CliError(f"line {lineno}: unknown move {toks[0]!r}")
        kind, inverse = _MOVE_KINDS[toks[0]]
        circles, positions = [], []
        for tok in toks[1:]:
            if tok.startswith("c"):
                circles.append(int(tok[1:]))
            elif tok.startswith("p"):
                positions.append(int(tok[1:]))
            else:
                raise CliError(f"line {lineno}: bad site token {tok!r}")
        sites.append(MoveSite(kind, tuple(circles), tuple(positions),
                              inverse=inverse))
    return sites


def _cmd_move(args, out):
    text = _read_input(args.input)
    fmt = _detect_format(text, args.format)
    if fmt != "arrows":
        raise CliError("move operates on arrow presentations")
    ap = parse_arrow_presentation(text)
    script = _read_input(args.script)
    for site in parse_move_script(script):
        ap = apply_move(ap, site)
    out.write(emit_arrow_presentation(ap))
    return 0


def _cmd_check(args, out):
    g, pd, ap = _load(args)
    rng = random.Random(args.seed)
    ok = True

    def report(name, passed, detail=""):
        nonlocal ok
        ok = ok and passed
        out.write(f"{'PASS' if passed else 'FAIL'} {name}"
                  + (f": {detail}" if detail and not passed else "") + "\n")

    if g.is_connected():
        rep = check_duality(g, max_edges=args.max_edges)
        report("duality", rep.passed, "; ".join(rep.details))
        rep = check_grading_theorems(g, max_edges=args.max_edges)
        report("grading-theorems", rep.passed, "; ".join(rep.details))
    else:
        out.write("SKIP duality (disconnected input)\n")
        out.write("SKIP grading-theorems (disconnected input)\n")
    base = homology(build_complex(g, max_edges=args.max_edges))
    trials = 8
    same = True
    for _ in range(trials):
        eps = random_edge_assignment(g.n_edges, rng)
        if homology(build_complex(g, eps, max_edges=args.max_edges)) != base:
            same = False
            break
    report(f"edge-assignment-independence({trials} random)", same)
    if pd is not None:
        good = True
        for mask in range(1 << pd.n_crossings):
            state = kauffman_state(pd, mask)
            if state.circle_count != g.boundary_walks(mask).count:
                good = False
                break
        report("state-circles-vs-boundaries", good)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ribbonkh",
        description="Khovanov homology of oriented ribbon graphs")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="input file or '-' for stdin")
        p.add_argument("--format", choices=["pd", "arrows"], default=None)
        p.add_argument("--json", action="store_true")
        p.add_argument("--max-edges", type=int, default=14)

    p = sub.add_parser("info", help="vertex/edge/face/genus summary")
    common(p)
    p = sub.add_parser("kh", help="Khovanov homology table")
    common(p)
    p.add_argument("--raw", action="store_true",
                   help="skip the link-diagram grading shift on PD input")
    p.add_argument("--basepoint", nargs=2, type=int, default=(0, 0),
                   metavar=("V", "G"))
    p = sub.add_parser("rkh", help="reduced Khovanov homology table")
    common(p)
    p.add_argument("--raw", action="store_true",
                   help="skip the link-diagram grading shift on PD input")
    p.add_argument("--basepoint", nargs=2, type=int, default=(0, 0),
                   metavar=("V", "G"))
    p = sub.add_parser("qtrees", help="spanning quasi-tree table")
    common(p)
    p.add_argument("--edge-order", default=None,
                   help="comma-separated 1-based edge labels, e.g. '3,1,2'")
    p = sub.add_parser("jones", help="quasi-tree Jones expansion (PD input)")
    common(p)
    p = sub.add_parser("dual", help="emit the dual graph's arrow presentation")
    common(p)
    p = sub.add_parser("move", help="apply a Reidemeister move script")
    common(p)
    p.add_argument("script", help="move script file or '-'")
    p = sub.add_parser("check", help="run the property suites")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    return parser


_DISPATCH = {
    "info": _cmd_info,
    "qtrees": _cmd_qtrees,
    "jones": _cmd_jones,
    "dual": _cmd_dual,
    "move": _cmd_move,
    "check": _cmd_check,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "kh":
            return _homology_cmd(args, out, reduced=False)
        if args.verb == "rkh":
            return _homology_cmd(args, out, reduced=True)
        return _DISPATCH[args.verb](args, out)
    except (CliError, ParseError, RibbonGraphError) as exc:
        print(f"ribbonkh: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
