"""Command-line front end.

Exit codes: 0 success, 1 negative verdict under ``--expect``, 2 input
errors, 3 budget or cap overruns.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import diagram as dg
from . import extgraph, stability, subgroup
from .classify import classify, is_conjugate_into_star
from .graph import DefiningGraph, GraphParseError, parse_graph
from .word import (ShuffleOverflow, WordParseError, format_word, normal_form, parse_word,
                   reduced, star_length)

EXIT_OK, EXIT_VERDICT, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def load_graph(path: str) -> DefiningGraph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read graph {path}: {exc.strerror}") from None
    if path.endswith(".json"):
        try:
            return DefiningGraph.from_json(text)
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{path}: bad graph JSON: {exc}") from None
    try:
        return parse_graph(text)
    except GraphParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(out, fmt: str, text: str, data=None):
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _formats(p, *extra):
    p.add_argument("--format", choices=("text", "json") + extra, default="text")


def _graph_arg(p, required=True):
    p.add_argument("--graph", required=required, help="graph file (line format or .json)")


# -- handlers -------------------------------------------------------------------


def cmd_graph_check(args, out):
    g = load_graph(args.graph)
    data = g.to_json()
    lines = [f"vertices: {' '.join(g.vertices)}",
             "edges: " + " ".join(f"{g.name(i)}{g.name(j)}" for i, j in g.edges)]
    if len(g):
        data["connected"] = g.is_connected()
        data["anti_connected"] = g.is_anti_connected()
        join = g.is_join()
        data["join"] = None if join is None else [g.names(join.left), g.names(join.right)]
        lines.append(f"connected: {str(data['connected']).lower()}")
        lines.append(f"anti-connected: {str(data['anti_connected']).lower()}")
        if join is not None:
            lines.append(f"join: {{{','.join(data['join'][0])}}} * {{{','.join(data['join'][1])}}}")
    _emit(out, args.format, "\n".join(lines), data)
    return EXIT_OK


def _word(args):
    g = load_graph(args.graph)
    return g, parse_word(g, args.word)


def cmd_word_reduce(args, out):
    g, w = _word(args)
    r = reduced(w)
    _emit(out, args.format, format_word(r), {"word": r.to_json(), "length": len(r)})
    return EXIT_OK


def cmd_word_nf(args, out):
    g, w = _word(args)
    r = normal_form(w)
    _emit(out, args.format, format_word(r), {"word": r.to_json(), "length": len(r)})
    return EXIT_OK


def cmd_word_classify(args, out):
    g, w = _word(args)
    v = classify(w)
    data = v.to_json(g)
    star = is_conjugate_into_star(w)
    data["star"] = None if star is None else g.name(star)
    text = v.kind
    if v.witness is not None:
        text += f" (join {{{','.join(g.names(v.witness.vertices))}}})"
    _emit(out, args.format, text, data)
    return EXIT_OK


def cmd_word_starlen(args, out):
    g, w = _word(args)
    sl = star_length(w, args.cap)
    data = {"star_length": sl.length, "exact": sl.exact,
            "factors": [format_word(f) for f in sl.factors]}
    text = f"{sl.length}" + ("" if sl.exact else " (greedy upper bound)")
    if sl.factors:
        text += "\n" + " | ".join(format_word(f) for f in sl.factors)
    _emit(out, args.format, text, data)
    return EXIT_OK


def _diagram_out(out, fmt, d: dg.DiskDiagram, text: str, extra=None):
    if fmt == "dot":
        out.write(d.to_dot())
    elif fmt == "svg":
        out.write(d.to_svg())
    elif fmt == "json":
        data = d.to_json()
        data.update(extra or {})
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(text + "\n")


def _diagram_text(d: dg.DiskDiagram) -> str:
    g = d.graph
    rep = d.validate()
    lines = [f"boundary: {d.word}", f"arcs: {len(d.arcs)}"]
    for i, j in d.arcs:
        lines.append(f"  {i}-{j} {g.name(d.label((i, j)))}")
    lines.append(f"crossings: {len(d.crossings())}")
    lines.append("valid" if rep.ok else "invalid: " + "; ".join(rep.violations))
    return "\n".join(lines)


def cmd_diagram_build(args, out):
    g, w = _word(args)
    try:
        d = dg.build_diagram(w)
    except dg.NotIdentityError as exc:
        raise InputError(str(exc)) from None
    _diagram_out(out, args.format, d, _diagram_text(d), {"valid": d.validate().ok})
    return EXIT_OK


def cmd_diagram_comb(args, out):
    g, w = _word(args)
    try:
        d = dg.build_diagram(w)
        res = dg.comb(d, args.start, args.stop)
    except dg.DiagramError as exc:
        raise InputError(str(exc)) from None
    text = "\n".join([_diagram_text(res.combed), f"rearranged: {res.rearranged}",
                      f"pruned: {res.pruned}", f"swaps: {res.swaps}"])
    extra = {"rearranged": res.rearranged.to_json(), "pruned": res.pruned.to_json(),
             "swaps": res.swaps}
    _diagram_out(out, args.format, res.combed, text, extra)
    return EXIT_OK


def _subgroup(args) -> subgroup.Subgroup:
    if args.subgroup:
        try:
            with open(args.subgroup) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read subgroup {args.subgroup}: {exc.strerror}") from None
        graph = load_graph(args.graph) if args.graph else None
        base = os.path.dirname(os.path.abspath(args.subgroup))
        try:
            return subgroup.parse_subgroup(text, base, graph, args.basis)
        except OSError as exc:
            raise InputError(f"cannot read graph: {exc.strerror}") from None
    if not args.graph or not args.gens:
        raise InputError("give --subgroup FILE or --graph with --gens")
    try:
        return subgroup.parse_gens(load_graph(args.graph), args.gens, args.basis)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _subgroup_args(p):
    _graph_arg(p, required=False)
    p.add_argument("--subgroup", help="subgroup file with graph and gen lines")
    p.add_argument("--gens", nargs="+", help='generators such as "x=a z" "y=b"')
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--budget", type=int, default=subgroup.DEFAULT_BUDGET)
    p.add_argument("--basis", action="store_true", help="assume S is a free basis")


EXPECT = {"purely-loxodromic": "lox", "star-free": "star"}


def cmd_subgroup_analyze(args, out):
    H = _subgroup(args)
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    for p in props:
        if p not in subgroup.PROPS:
            raise InputError(f"unknown property {p!r}")
    if args.expect and EXPECT[args.expect] not in props:
        props.append(EXPECT[args.expect])
    report = subgroup.analyze(H, args.depth, props, args.cap, args.budget)
    data = report.to_json(H)
    lines = [f"depth: {args.depth}"]
    for key, res in data.items():
        if key == "depth":
            continue
        lines.append(f"{key}: " + ", ".join(f"{k}={_short(v)}" for k, v in res.items()))
    _emit(out, args.format, "\n".join(lines), data)
    if args.expect and not data[EXPECT[args.expect]]["holds"]:
        return EXIT_VERDICT
    return EXIT_OK


def _short(v):
    if isinstance(v, dict):
        return v.get("sword", v)
    if isinstance(v, bool):
        return str(v).lower()
    return v


def cmd_subgroup_intersect(args, out):
    H = _subgroup(args)
    lam = [x.strip() for x in args.lam.split(",") if x.strip()]
    try:
        res = subgroup.intersect_with_subgraph(H, lam, args.depth, args.budget)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    basis = [{"sword": H.format_sword(b), "normal_form": str(nf)} for b, nf in res.basis]
    data = {"depth": res.depth, "basis": basis, "sizes": [list(s) for s in res.sizes],
            "truncated": res.truncated}
    lines = [f"basis of size {len(basis)} (truncated=true: only S-length <= {res.depth} searched)"]
    lines += [f"  {b['sword']}  =  {b['normal_form']}" for b in basis]
    lines.append("sizes by depth: " + " ".join(f"{d}:{n}" for d, n in res.sizes))
    _emit(out, args.format, "\n".join(lines), data)
    return EXIT_OK


def cmd_ext_ball(args, out):
    g = load_graph(args.graph)
    centers = [x.strip() for x in args.centers.split(",") if x.strip()]
    try:
        ball = extgraph.ext_ball(g, centers, args.radius, args.cap)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    if args.format == "dot":
        out.write(ball.to_dot())
    elif args.format == "svg":
        out.write(ball.to_svg())
    else:
        lines = [f"vertices ({len(ball.vertices)}): " + " ".join(v.label(g) for v in ball.vertices),
                 f"edges: {len(ball.edges)}",
                 f"truncated: {str(ball.truncated).lower()}"]
        _emit(out, args.format, "\n".join(lines), ball.to_json())
    return EXIT_OK


def cmd_stability_constants(args, out):
    c = stability.constants(args.K, args.N)
    data = {k: str(getattr(c, k)) for k in ("K", "N", "B", "M", "L", "S")}
    text = " ".join(f"{k}={data[k]}" for k in ("B", "M", "L", "S"))
    _emit(out, args.format, text, data)
    return EXIT_OK


def cmd_stability_check(args, out):
    g, w = _word(args)
    w = reduced(w)
    rep = stability.stability_check(w, args.K, args.trials, args.cap, args.seed)
    data = rep.to_json()
    text = (f"N={rep.N} bound S={rep.bound} (M={rep.constants.M}) observed max={rep.observed_max} "
            f"violations={rep.violations} trials={rep.trials}")
    if rep.degenerate:
        text += "\nnote: g is elliptic, so N grows with word length and the bound is not uniform"
    _emit(out, args.format, text, data)
    return EXIT_VERDICT if args.expect and rep.violations else EXIT_OK


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="raagkit", description="Right-angled Artin group toolkit")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, name, handler, word=True, extra_formats=()):
        p = group.add_parser(name)
        p.set_defaults(handler=handler)
        _formats(p, *extra_formats)
        if word:
            _graph_arg(p)
            p.add_argument("--word", required=True)
        return p

    gp = top.add_parser("graph").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(gp, "check", cmd_graph_check, word=False)
    _graph_arg(p)

    wp = top.add_parser("word").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sub(wp, "reduce", cmd_word_reduce)
    sub(wp, "nf", cmd_word_nf)
    sub(wp, "classify", cmd_word_classify)
    p = sub(wp, "starlen", cmd_word_starlen)
    p.add_argument("--cap", type=_positive, default=200_000)

    dp = top.add_parser("diagram").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sub(dp, "build", cmd_diagram_build, extra_formats=("dot", "svg"))
    p = sub(dp, "comb", cmd_diagram_comb, extra_formats=("dot", "svg"))
    p.add_argument("--start", type=int, required=True, help="first position of b (0-based)")
    p.add_argument("--stop", type=int, required=True, help="position after b")

    sp = top.add_parser("subgroup").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(sp, "analyze", cmd_subgroup_analyze, word=False)
    _subgroup_args(p)
    p.add_argument("--props", default="lox,star")
    p.add_argument("--expect", choices=sorted(EXPECT))
    p.add_argument("--cap", type=_positive, default=100_000)
    p = sub(sp, "intersect", cmd_subgroup_intersect, word=False)
    _subgroup_args(p)
    p.add_argument("--lambda", dest="lam", required=True, help="comma-separated vertices")

    ep = top.add_parser("ext").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(ep, "ball", cmd_ext_ball, word=False, extra_formats=("dot", "svg"))
    _graph_arg(p)
    p.add_argument("--centers", required=True, help="comma-separated vertices")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--cap", type=int, default=1, help="conjugator length cap")

    tp = top.add_parser("stability").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(tp, "constants", cmd_stability_constants, word=False)
    p.add_argument("--K", type=_fraction, required=True)
    p.add_argument("--N", type=int, required=True)
    p = sub(tp, "check", cmd_stability_check)
    p.add_argument("--K", type=_fraction, default=Fraction(1))
    p.add_argument("--trials", type=_positive, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=_positive, default=100_000)
    p.add_argument("--expect", action="store_true", help="exit 1 if any trial breaks the bound")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (WordParseError, GraphParseError, subgroup.SubgroupParseError,
            subgroup.BasisViolation) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (subgroup.BudgetExceeded, ShuffleOverflow) as exc:
        err.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET


def main():
    sys.exit(run())
