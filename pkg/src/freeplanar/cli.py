"""Command line front end.

Exit codes: 0 success, 1 usage, 2 invalid input, 3 numeric failure.
Output is deterministic: no timestamps, fixed key order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import diagrams as dg
from . import factors as fc
from . import laws
from .errors import DomainError, NumericFailure
from .formatting import json_value, value_str
from .scalars import ScalarPoly
from .surd import QuadraticSurd, parse_exact

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- values

def number(text: str):
    """Exact for integers, fractions and radicals; float for decimal literals."""
    s = text.strip()
    try:
        if any(ch in s for ch in ".eE") and "sqrt" not in s and "√" not in s:
            return float(s)
        return parse_exact(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def mode_of(*values) -> str:
    return "float" if any(isinstance(v, float) for v in values) else "exact"


def render(value) -> str:
    if isinstance(value, ScalarPoly):
        return str(value)
    if isinstance(value, (list, tuple)):
        return " ".join(render(v) for v in value) if value else "none"
    if isinstance(value, dict):
        return ", ".join(f"{k}={render(v)}" for k, v in value.items()) or "∅"
    if isinstance(value, (Fraction, QuadraticSurd, float, int)):
        return value_str(value)
    return str(value)


def to_json(value):
    if isinstance(value, ScalarPoly):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    return json_value(value)


class Report:
    def __init__(self, command: str):
        self.rows: list[tuple[str, object]] = [("command", command)]

    def add(self, key: str, value) -> "Report":
        self.rows.append((key, value))
        return self

    def text(self) -> str:
        width = max(len(k) for k, _ in self.rows)
        lines = []
        for k, v in self.rows:
            if isinstance(v, list) and v and isinstance(v[0], list):
                lines.append(f"{k}:")
                lines.extend("  " + " ".join(render(x) for x in row) for row in v)
            else:
                lines.append(f"{k.ljust(width)}  {render(v)}")
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        return json.dumps({k: to_json(v) for k, v in self.rows}, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- diagrams

def _word(args) -> dg.ShadedWord:
    return dg.ShadedWord(args.word, args.npm)


def _deltas(pairs) -> dict:
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise UsageError(f"--delta expects color=value, got {item!r}")
        color, value = item.split("=", 1)
        try:
            out[color.strip()] = number(value)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from exc
    return out


def cmd_diagrams(args) -> Report:
    word = _word(args)
    if not dg.validate_word(word):
        raise dg.InvalidWord(f"inconsistent shading for word {word}")
    deltas = _deltas(args.delta)
    rep = Report(f"diagrams {args.action}").add("mode", mode_of(*deltas.values()) if deltas else "exact")
    rep.add("word", str(word))
    if args.action == "count":
        rep.add("count", dg.count_pairings(word))
    elif args.action == "list":
        rep.add("diagrams", [str(p) for p in dg.enumerate_pairings(word)])
    elif args.action == "gram":
        g = dg.gram_matrix(word)
        if deltas:
            g = [[e.evaluate(deltas) for e in row] for row in g]
        rep.add("matrix", g)
    elif args.action == "psd":
        missing = sorted(set(word.letters) - set(deltas))
        if missing:
            raise UsageError(f"psd needs --delta for colors {', '.join(missing)}")
        ok, low = dg.psd_check(word, deltas)
        rep.add("psd", ok).add("min_eigenvalue", float(low))
    return rep


# ---------------------------------------------------------------- graphs

def cmd_graph(args) -> Report:
    exact = not args.float
    rep = Report(f"graph {args.action}").add("mode", "exact" if exact else "float")
    if args.action == "truncate":
        if args.family not in fc.FAMILIES:
            raise DomainError(f"unknown family {args.family!r}")
        delta = args.delta if exact else float(args.delta)
        seq = fc.truncation_sequence(fc.FAMILIES[args.family](delta), args.kmax)
        rep.add("family", args.family).add("delta", delta).add("k", f"2..{args.kmax}")
        rep.add("t_prime", seq)
        return rep
    if args.file is None:
        raise UsageError(f"graph {args.action} needs a graph file")
    graph = fc.load_graph(args.file, exact=exact)
    if args.exact and args.exact not in ("rational",):
        _check_field(graph, args.exact)
    if args.action == "pf":
        res = fc.perron_frobenius(graph)
        rep.rows[1] = ("mode", "float")
        rep.add("eigenvalue", res.eigenvalue).add("weights", res.weights)
        rep.add("residual", res.residual).add("iterations", res.iterations)
        return rep
    report = fc.analyze_graph(graph)
    if args.action == "analyze":
        rep.add("decomposition", report.decomposition.describe())
        rep.add("t", report.t if report.t is not None else "n/a")
        rep.add("B", report.atoms)
        rep.add("fdim_additive", report.fdim_additive)
        rep.add("fdim_formula", report.fdim_formula)
        rep.add("alpha", report.alpha)
        if report.single_edge:
            rep.add("warning", "single edge: edge algebra returned")
    else:
        vertex = args.vertex if args.vertex is not None else graph.marked
        rep.add("vertex", vertex).add("t_prime", fc.cutdown(report, vertex))
    return rep


def _check_field(graph: fc.WeightedGraph, spec: str) -> None:
    if not spec.startswith("sqrt"):
        raise UsageError(f"--exact expects 'rational' or 'sqrtD', got {spec!r}")
    try:
        d = QuadraticSurd.sqrt(int(spec[4:])).d
    except ValueError as exc:
        raise UsageError(f"bad field {spec!r}") from exc
    for v, w in graph.vertices.items():
        if isinstance(w, QuadraticSurd) and not w.is_rational() and w.d != d:
            raise DomainError(f"weight of {v!r} lies outside Q(sqrt {d})")


# ---------------------------------------------------------------- parameters

def cmd_param(args) -> Report:
    graph = fc.load_graph(args.graph, exact=True) if args.graph else None
    if args.action == "gjs":
        values = (args.delta, args.index)
        out = fc.gjs_comparison(args.delta, args.index, args.k, graph)
        rep = Report("param gjs").add("mode", mode_of(*values))
        rep.add("delta", args.delta).add("index", args.index).add("k", args.k)
    else:
        values = (args.delta_a, args.delta_b, args.index, args.delta_alpha)
        out = fc.fc_parameter(args.delta_a, args.delta_b, args.index, args.delta_alpha, graph)
        rep = Report("param fc").add("mode", mode_of(*values))
        rep.add("delta_a", args.delta_a).add("delta_b", args.delta_b)
        rep.add("index", args.index).add("delta_alpha", args.delta_alpha)
    rep.add("printed", out.printed)
    if graph is not None:
        rep.add("engine", out.engine).add("flag", out.flag)
    return rep


# ---------------------------------------------------------------- laws

def cmd_law(args) -> Report:
    if args.action == "poisson":
        rep = Report("law poisson").add("mode", mode_of(args.alpha)).add("alpha", args.alpha)
        if args.density:
            law = laws.fp_law(args.alpha)
            if args.step <= 0 or args.xmax < args.xmin:
                raise UsageError("need step > 0 and xmax >= xmin")
            count = int(round((args.xmax - args.xmin) / args.step)) + 1
            xs = [args.xmin + i * args.step for i in range(count)]
            if args.method == "stieltjes":
                G = laws.cauchy_from_mgf(laws.free_poisson_mgf(args.alpha))
                rows = [(x, laws.stieltjes_density(G, x)) for x in xs]
            else:
                rows = law.sample(xs)
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["x", "density"])
            for x, d in rows:
                writer.writerow([f"{x:.9g}", f"{d:.12g}"])
            if args.csv:
                with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                    fh.write(buf.getvalue())
                rep.add("csv", args.csv)
            rep.add("method", args.method).add("rows", len(rows)).add("mass", law.total_mass()).add("mean", law.mean())
            rep.add("support", list(law.support)).add("atoms", [m for _, m in law.atoms])
            rep.csv_text = buf.getvalue()
        else:
            if args.moments is None:
                raise UsageError("law poisson needs --moments N or --density")
            rep.add("order", args.moments).add("moments", list(laws.fp_moments(args.alpha, args.moments)))
        return rep
    n = args.moments
    enum = laws.fc_cup_moments(args.delta_a, args.delta_b, n)
    s_route = laws.fc_cup_moments_s_route(args.delta_a, args.delta_b, n)
    rep = Report("law cup").add("mode", mode_of(args.delta_a, args.delta_b))
    rep.add("delta_a", args.delta_a).add("delta_b", args.delta_b).add("order", n)
    rep.add("enumeration", list(enum)).add("s_transform", list(s_route))
    tol = 1e-9
    agree = all(abs(float(a) - float(b)) <= tol * max(1.0, abs(float(a))) for a, b in zip(enum, s_route))
    rep.add("agree", agree)
    return rep


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--format", choices=("text", "json"), default=None)
    fmt.add_argument("--json", action="store_const", const="json", dest="format_flag")
    fmt.add_argument("--text", action="store_const", const="text", dest="format_flag")
    common.add_argument("--output", "-o", help="write the report to this file")

    parser = _Parser(prog="freeplanar", description="Planar diagram and free dimension calculator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("diagrams", parents=[common], help="enumerate and pair diagrams")
    p.add_argument("action", choices=("count", "list", "gram", "psd"))
    p.add_argument("--word", required=True)
    p.add_argument("--npm", choices=dg.SHADES, help="N-P-M shading of the first region")
    p.add_argument("--delta", action="append", metavar="COLOR=VALUE")
    p.set_defaults(func=cmd_diagrams)

    p = sub.add_parser("graph", parents=[common], help="graph algebra engine")
    p.add_argument("action", choices=("analyze", "cutdown", "pf", "truncate"))
    p.add_argument("file", nargs="?")
    p.add_argument("--vertex")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", metavar="FIELD", help="rational or sqrtD")
    mode.add_argument("--float", action="store_true", help="use floating point weights")
    p.add_argument("--family", default="a_inf")
    p.add_argument("--delta", type=number, default=Fraction(2))
    p.add_argument("--kmax", type=int, default=12)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("param", parents=[common], help="free group parameter formulas")
    psub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    g = psub.add_parser("gjs", parents=[common])
    g.add_argument("--delta", type=number, required=True)
    g.add_argument("--index", type=number, required=True)
    g.add_argument("--k", type=int, default=0)
    g.add_argument("--graph")
    g.set_defaults(func=cmd_param)
    f = psub.add_parser("fc", parents=[common])
    f.add_argument("--delta-a", type=number, required=True)
    f.add_argument("--delta-b", type=number, required=True)
    f.add_argument("--index", type=number, required=True)
    f.add_argument("--delta-alpha", type=number, default=Fraction(1))
    f.add_argument("--graph")
    f.set_defaults(func=cmd_param)

    p = sub.add_parser("law", parents=[common], help="spectral laws")
    lsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = lsub.add_parser("poisson", parents=[common])
    q.add_argument("--alpha", type=number, required=True)
    q.add_argument("--moments", type=int)
    q.add_argument("--density", action="store_true")
    q.add_argument("--xmin", type=float, default=0.0)
    q.add_argument("--xmax", type=float, default=4.0)
    q.add_argument("--step", type=float, default=0.04)
    q.add_argument("--csv")
    q.add_argument("--method", choices=("closed", "stieltjes"), default="closed",
                   help="closed-form density or Stieltjes inversion of the Cauchy transform")
    q.set_defaults(func=cmd_law)
    c = lsub.add_parser("cup", parents=[common])
    c.add_argument("--delta-a", type=number, required=True)
    c.add_argument("--delta-b", type=number, required=True)
    c.add_argument("--moments", type=int, default=4)
    c.set_defaults(func=cmd_law)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or getattr(args, "format_flag", None) or "text"
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"freeplanar: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (DomainError, OSError) as exc:
        print(f"freeplanar: invalid input: {exc}", file=stderr)
        return EXIT_DOMAIN
    except NumericFailure as exc:
        print(f"freeplanar: numeric failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    text = report.json() if fmt == "json" else report.text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
