"""Command line interface.

Exit codes: 0 success, 1 a "no" answer where the command asks a yes/no
question (``--expect-unknot``, ``hard check``, ``search`` without success),
2 usage or input errors, 3 an internal limit was hit (search budget).
Flags and output schemas are listed in INTERFACE.md.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .cfrac import (
    CFrac, Fraction, canonical_cf, cf_matrix, convergent, eval_cf, expand_cf, parse_cf,
    parse_fraction,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
INTERFACE_VERSION = "1"
FORMATS = ("text", "json", "tsv", "svg")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(args, payload: dict, text: str | None = None) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        if text is None:
            text = "\n".join(f"{k}={_plain(v)}" for k, v in sorted(payload.items()))
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _plain(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _cf(text: str) -> CFrac:
    try:
        return parse_cf(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _frac(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _tangle_fraction(text: str) -> Fraction:
    """A CF literal, a fraction literal or a tangle expression."""
    from .tangle import NonRational, TangleSyntaxError, fraction_of, parse_tangle
    s = text.strip()
    try:
        if s.lstrip("-").lstrip().startswith("[") and "]" == s[-1] and s.count("[") == 1:
            return eval_cf(parse_cf(s))
        return parse_fraction(s)
    except ValueError:
        pass
    try:
        return fraction_of(parse_tangle(s))
    except (TangleSyntaxError, NonRational, ValueError) as e:
        raise UsageError(str(e)) from None


# -- diagram inputs --------------------------------------------------------

def _add_diagram_input(p) -> None:
    g = p.add_argument_group("diagram input (one of)")
    g.add_argument("--fixture", help="a shipped fixture by name")
    g.add_argument("--pd", metavar="FILE", help="a PD JSON file ('-' for stdin)")
    g.add_argument("--a", help="left tangle of N(A + B), as a CF or tangle expression")
    g.add_argument("--b", help="right tangle of N(A + B)")
    g.add_argument("--flip-b", action="store_true", help="use the vertical flip of B")
    g.add_argument("--tangle", help="numerator closure of one tangle expression")
    g.add_argument("--tuck", action="store_true", help="apply the tucking construct to N(A + B)")
    g.add_argument("--mirror", action="store_true", help="mirror the diagram")


def _tangle_arg(text: str):
    s = text.strip()
    if s.lstrip("-").lstrip().startswith("[") and s.count("[") == 1:
        return list(_cf(s).terms)
    return s


def _diagram(args):
    from .diagram import DiagramError, PlanarDiagram, build_expr, closure, sum_diagram, tuck
    from .tangle import TangleSyntaxError
    from . import fixtures
    chosen = [x for x in ("fixture", "pd", "tangle") if getattr(args, x)]
    if args.a is not None or args.b is not None:
        chosen.append("sum")
    if len(chosen) != 1:
        raise UsageError("give exactly one of --fixture, --pd, --tangle or --a/--b")
    try:
        if args.fixture:
            try:
                d = fixtures.load(args.fixture)
            except KeyError as e:
                raise UsageError(str(e.args[0])) from None
        elif args.pd:
            text = sys.stdin.read() if args.pd == "-" else Path(args.pd).read_text()
            d = PlanarDiagram.from_json(text)
        elif args.tangle:
            d = closure(build_expr(args.tangle))
        else:
            if args.a is None or args.b is None:
                raise UsageError("--a and --b go together")
            d = sum_diagram(_tangle_arg(args.a), _tangle_arg(args.b), flip_b=args.flip_b)
        if getattr(args, "tuck", False):
            d = tuck(d)
    except (DiagramError, TangleSyntaxError, OSError, ValueError, KeyError) as e:
        if isinstance(e, UsageError):
            raise
        raise UsageError(f"cannot build diagram: {e}") from None
    if args.mirror:
        d = d.mirror()
    return d


# -- commands --------------------------------------------------------------

def cmd_cf(args) -> int:
    if args.op == "eval":
        cf = _cf(args.value)
        v = eval_cf(cf)
        _emit(args, {"cf": str(cf), "fraction": str(v)}, str(v))
    elif args.op == "canon":
        if "[" in args.value:
            cf = _cf(args.value)
            out = canonical_cf(cf)
        else:
            f = _frac(args.value)
            if f.is_infinite:
                raise UsageError("inf has no finite continued fraction")
            out = expand_cf(f)
        _emit(args, {"canonical": str(out), "fraction": str(eval_cf(out))}, str(out))
    elif args.op == "matrix":
        m = cf_matrix(_cf(args.value))
        _emit(args, {"matrix": m.rows(), "det": m.det}, str(m))
    else:
        cf = _cf(args.value)
        if len(cf) < 2:
            raise UsageError("a convergent needs at least two terms")
        c = convergent(cf)
        _emit(args, {"convergent": str(c), "fraction": str(eval_cf(c))},
              f"{c} = {eval_cf(c)}")
    return EXIT_OK


def cmd_tangle(args) -> int:
    from .tangle import NonRational, TangleSyntaxError, fraction_of, is_rational, parse_tangle
    try:
        expr = parse_tangle(args.expr)
    except TangleSyntaxError as e:
        raise UsageError(str(e)) from None
    if args.op == "parse":
        rational = is_rational(expr)
        _emit(args, {"expr": str(expr), "rational": rational})
        return EXIT_OK
    try:
        f = fraction_of(expr, strict=args.strict)
    except NonRational as e:
        _emit(args, {"expr": str(expr), "rational": False, "error": str(e)})
        return EXIT_NO
    _emit(args, {"expr": str(expr), "fraction": str(f)}, str(f))
    return EXIT_OK


def cmd_sum(args) -> int:
    from .tangle import classify_fraction, numerator_closure_fraction, sharp
    if args.op == "sharp":
        s = sharp(_cf(args.a), _cf(args.b))
        _emit(args, {"sharp": str(s), "fraction": str(eval_cf(s))}, f"{s} = {eval_cf(s)}")
        return EXIT_OK
    fa, fb = _tangle_fraction(args.a), _tangle_fraction(args.b)
    rep = classify_fraction(numerator_closure_fraction(fa, fb))
    payload = rep.to_dict()
    payload["unknot"] = rep.is_unknot
    _emit(args, payload, rep.to_text().replace("is_unknot=", "unknot="))
    if args.expect_unknot and not rep.is_unknot:
        return EXIT_NO
    return EXIT_OK


def _moves_payload(d) -> list:
    from .diagram import available_moves
    return [m.to_dict() for m in available_moves(d)]


def cmd_hard(args) -> int:
    from .diagram import enumerate_hard_sums, is_hard
    if args.op == "enumerate":
        if args.max < 1:
            raise UsageError("--max must be at least 1")
        rows = enumerate_hard_sums(args.max, mirrors=args.mirrors)
        items = [{"a": str(h.a), "b": str(h.b), "flip_b": h.flip_b, "mirrored": h.mirrored,
                  "crossings": h.diagram.n_crossings, "label": h.label()} for h in rows]
        _emit(args, {"max_crossings": args.max, "count": len(items), "diagrams": items},
              "\n".join(f"{i['crossings']}\t{i['label']}" for i in items) or "(none)")
        return EXIT_OK
    if args.op == "tuck":
        args.tuck = True
    d = _diagram(args)
    hard = is_hard(d)
    payload = {"crossings": d.n_crossings, "hard": hard, "moves": _moves_payload(d)}
    if args.op == "tuck":
        payload["pd"] = d.to_pd_dict()
    text = f"crossings={d.n_crossings}\nhard={_plain(hard)}"
    if args.op == "tuck":
        text += "\npd=" + d.to_json()
    _emit(args, payload, text)
    if args.op == "check" and not hard:
        return EXIT_NO
    return EXIT_OK


def cmd_diagram(args) -> int:
    from .diagram import growing_moves, render_svg
    d = _diagram(args)
    if args.op == "build":
        if args.format == "json":
            sys.stdout.write(d.to_json() + "\n")
        else:
            sys.stdout.write(json.dumps(d.to_pd_dict(), indent=1, sort_keys=True) + "\n")
    elif args.op == "render":
        svg = render_svg(d)
        if args.format == "json":
            _emit(args, {"svg": svg})
        else:
            sys.stdout.write(svg)
    else:
        moves = _moves_payload(d)
        if args.grow:
            moves += [m.to_dict() for m in growing_moves(d)]
        _emit(args, {"crossings": d.n_crossings, "moves": moves},
              "\n".join(f"{m['kind']}\tface={m['face']}\tcrossings={m['crossings']}"
                        for m in moves) or "(none)")
    return EXIT_OK


def cmd_search(args) -> int:
    from .rsearch import CAP_HIT, FOUND, SearchError, unknot_search
    d = _diagram(args)
    cap = args.cap if args.cap is not None else d.n_crossings + 2

    def progress(rec):
        sys.stderr.write(json.dumps(rec, sort_keys=True) + "\n")
        sys.stderr.flush()

    try:
        out = unknot_search(d, cap, args.budget, progress if args.progress else None)
    except SearchError as e:
        raise UsageError(str(e)) from None
    payload = out.to_dict()
    payload["crossings"] = d.n_crossings
    if args.op == "recalcitrance" and out.status == FOUND:
        from .cfrac import normalize
        ratio = Fraction(1, 1) if d.n_crossings == 0 else normalize(out.top, d.n_crossings)
        payload["recalcitrance"] = str(ratio)
    text = f"status={out.status}\ntop={_plain(out.top)}\ncertified={_plain(out.certified)}"
    if "recalcitrance" in payload:
        text += f"\nrecalcitrance={payload['recalcitrance']}"
    text += f"\nstates_visited={out.states_visited}\npath={json.dumps([list(m) for m in out.path])}"
    _emit(args, payload, text)
    if out.status == FOUND:
        return EXIT_OK
    return EXIT_LIMIT if out.status == CAP_HIT else EXIT_NO


def _n_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return 0, int(text)
    except ValueError:
        raise UsageError(f"--n expects N or LO..HI, got {text!r}") from None


def cmd_recomb(args) -> int:
    from .recomb import run_series
    lo, hi = _n_range(args.n)
    if lo < 0 or hi < lo:
        raise UsageError("--n needs 0 <= LO <= HI")
    run = run_series(_cf(args.O), _cf(args.I), hi)
    run.rows = [r for r in run.rows if r.n >= lo]
    if args.format == "json":
        sys.stdout.write(run.to_json() + "\n")
    else:
        sys.stdout.write(run.to_tsv())
    return EXIT_OK


def cmd_farey(args) -> int:
    from . import farey
    if args.op == "series":
        x = args.args[0]
        try:
            s = farey.farey_series(x)
        except ValueError as e:
            raise UsageError(str(e)) from None
        _emit(args, {"x": x, "series": [str(f) for f in s]}, " ".join(str(f) for f in s))
    elif args.op == "franel":
        try:
            v = farey.franel_landau_sum(args.args[0])
        except ValueError as e:
            raise UsageError(str(e)) from None
        _emit(args, {"x": args.args[0], "sum": str(v)}, str(v))
    elif args.op == "path":
        a = args.args[0]
        if set(a.upper()) <= {"R", "L"} and "/" not in a:
            f = farey.fraction_of_path(a)
            _emit(args, {"path": a.upper(), "fraction": str(f)}, str(f))
        else:
            try:
                p = farey.sb_path_of(_frac(a))
            except ValueError as e:
                raise UsageError(str(e)) from None
            _emit(args, {"fraction": a, "path": p}, p)
    elif args.op == "ford":
        if len(args.args) == 1:
            c = farey.ford_circle(_frac(args.args[0]))
            _emit(args, c.to_dict())
        else:
            f1, f2 = _frac(args.args[0]), _frac(args.args[1])
            if f1.is_infinite or f2.is_infinite:
                raise UsageError("Ford circles need finite fractions")
            t = farey.ford_tangent(f1, f2)
            _emit(args, {"f1": str(f1), "f2": str(f2), "tangent": t,
                         "determinant": f1.num * f2.den - f1.den * f2.num})
    else:
        try:
            poly = farey.read_polygon(Path(args.args[0]).read_text())
            area, I, B = farey.pick_counts(poly)
            farey.pick_area(poly)
        except (OSError, farey.PolygonError) as e:
            raise UsageError(str(e)) from None
        _emit(args, {"area": str(area), "interior": I, "boundary": B,
                     "pick": f"{I} + {B}/2 - 1"})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--format", choices=FORMATS, default="text")
    top.add_argument("--seed", type=int, default=None, help="accepted and ignored")
    # repeated on every subcommand; SUPPRESS keeps a value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="accepted and ignored")
    ap = _Parser(prog="hardunknots", description="Rational tangles and hard unknot diagrams.",
                 parents=[top])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("cf", help="continued fractions", parents=[common])
    p.add_argument("op", choices=("eval", "canon", "matrix", "convergent"))
    p.add_argument("value")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("tangle", help="tangle expressions", parents=[common])
    p.add_argument("op", choices=("frac", "parse"))
    p.add_argument("expr")
    p.add_argument("--strict", action="store_true", help="reject non-integral tangles under rotation")
    p.set_defaults(func=cmd_tangle)

    p = sub.add_parser("sum", help="closures of N(A + B)", parents=[common])
    p.add_argument("op", choices=("classify", "sharp"))
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--expect-unknot", action="store_true", help="exit 1 unless the closure is the unknot")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("hard", help="hard unknot diagrams", parents=[common])
    p.add_argument("op", choices=("enumerate", "check", "tuck"))
    p.add_argument("--max", type=int, default=9, help="crossing bound for enumerate")
    p.add_argument("--mirrors", action="store_true", help="also list mirror images")
    _add_diagram_input(p)
    p.set_defaults(func=cmd_hard)

    p = sub.add_parser("diagram", help="diagram construction and inspection", parents=[common])
    p.add_argument("op", choices=("build", "render", "moves"))
    p.add_argument("--grow", action="store_true", help="also list crossing-adding moves")
    _add_diagram_input(p)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("search", help="bounded Reidemeister search", parents=[common])
    p.add_argument("op", choices=("unknot", "recalcitrance"))
    p.add_argument("--cap", type=int, default=None, help="crossing cap (default C + 2)")
    p.add_argument("--budget", type=int, default=10_000_000, help="states per cap")
    p.add_argument("--progress", action="store_true", help="stream progress records to stderr")
    _add_diagram_input(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("recomb", help="processive recombination series", parents=[common])
    p.add_argument("op", nargs="?", choices=("run",), default="run")
    p.add_argument("--O", required=True, help="outer tangle CF")
    p.add_argument("--I", required=True, help="site tangle CF")
    p.add_argument("--n", default="0..6", help="N or LO..HI")
    p.set_defaults(func=cmd_recomb)

    p = sub.add_parser("farey", help="Farey series, Stern-Brocot, Ford, Pick", parents=[common])
    p.add_argument("op", choices=("series", "path", "ford", "pick", "franel"))
    p.add_argument("args", nargs="+")
    p.set_defaults(func=cmd_farey)
    return ap


def _glue_negative_values(argv: list[str]) -> list[str]:
    """``--b -[1,3]`` would read ``-[1,3]`` as an option; turn it into ``--b=-[1,3]``."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and argv[i + 1][:1] == "-" and argv[i + 1][1:2] in "[(0123456789 "):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = ap.parse_args(argv)
        if not getattr(args, "command", None):
            ap.print_help(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"hardunknots: error: {e}\n")
        return EXIT_USAGE


def run(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
