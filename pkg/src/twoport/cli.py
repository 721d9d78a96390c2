"""Command-line front end.

Exit codes: 0 success, 1 negative decision, 2 input error, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import jsonio
from .jsonio import SchemaError
from .network import NetworkError, classify_shape, validate
from .reduction import BUDGET_ENV, BudgetExhausted, default_budget, reduce, reduce_rational_floor
from .response import pi_equivalent, response_equivalent, summarize
from .scalars import FieldMismatchError, ScalarParseError, get_field, parse_scalar, set_field
from .solver import solve_terminal, solve_two_port
from .tiling import (
    GeometryError,
    HexagonError,
    TilingError,
    circuit_from_tiling,
    classify_octagon,
    dehn_check,
    hexagon_square_tileable,
    render_svg,
    tile_octagon,
)
from .transforms import KINDS, MoveError, ReplayError, do_move, replay

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    output: str | None
    d: int | None
    budget: int


class _Ctx:
    """Tracks the field discriminant shared by every file of one invocation."""

    def __init__(self, d: int | None):
        self.d = d
        if d is not None:
            try:
                set_field(d)
            except ValueError as exc:
                raise InputError(str(exc)) from exc

    def load(self, path: str):
        doc = jsonio.load_file(path)
        if isinstance(doc, dict):
            try:
                self.d = jsonio.apply_field(doc, f"{path}: d", current=self.d)
            except SchemaError as exc:
                raise InputError(str(exc)) from exc
        return doc

    def network(self, path: str, two_port: bool | None = None):
        doc = self.load(path)
        try:
            net = jsonio.network_from_json(doc, two_port=two_port)
            validate(net)
        except (SchemaError, NetworkError) as exc:
            raise InputError(f"{path}: {exc}") from exc
        return net

    def scalar(self, text: str, what: str):
        try:
            return parse_scalar(text)
        except (ScalarParseError, FieldMismatchError) as exc:
            raise InputError(f"{what}: {exc}") from exc


def _emit(doc, output: str | None):
    text = doc if isinstance(doc, str) else jsonio.dumps(doc)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -----------------------------------------------------------------------

def cmd_solve(args, ctx: _Ctx, cfg: RunConfig) -> int:
    net = ctx.network(args.network)
    if args.voltages is not None:
        vs = [ctx.scalar(v, "--voltages") for v in args.voltages.split(",")]
        if len(vs) != net.t:
            raise InputError(f"--voltages: expected {net.t} values, got {len(vs)}")
        sol = solve_terminal(net, vs)
    else:
        if net.t != 4:
            raise InputError("two-port mode needs 4 terminals; pass --voltages for a t-terminal circuit")
        sol = solve_two_port(net, ctx.scalar(args.du14, "--du14"), ctx.scalar(args.du23, "--du23"))
    _emit(jsonio.solution_to_json(sol), cfg.output)
    return EXIT_OK


def _summary_json(s) -> dict:
    return {
        "d": get_field(),
        "M": [[str(x) for x in row] for row in s.M],
        "D": [str(x) for x in s.drop],
        "D2": [str(x) for x in s.second_drop],
        "symmetric": s.is_symmetric(),
    }


def cmd_response(args, ctx, cfg) -> int:
    net = ctx.network(args.network, two_port=True)
    _emit(_summary_json(summarize(net)), cfg.output)
    return EXIT_OK


def cmd_equiv(args, ctx, cfg) -> int:
    a = ctx.network(args.first, two_port=True)
    b = ctx.network(args.second, two_port=True)
    same = pi_equivalent(a, b) if args.mode == "pi" else response_equivalent(a, b)
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_NO


def _replay_log(args, ctx, cfg, net) -> int:
    doc = ctx.load(args.replay)
    try:
        moves = jsonio.moves_from_json(doc.get("moves") if isinstance(doc, dict) else doc)
    except SchemaError as exc:
        raise InputError(f"{args.replay}: {exc}") from exc
    try:
        out = replay(net, moves)
    except (MoveError, ReplayError) as exc:
        print(f"replay failed: {exc}", file=sys.stderr)
        return EXIT_NO
    _emit(jsonio.network_to_json(out), cfg.output)
    return EXIT_OK


def cmd_apply(args, ctx, cfg) -> int:
    net = ctx.network(args.network)
    if args.replay:
        if args.move:
            raise InputError("give either --move or --replay, not both")
        return _replay_log(args, ctx, cfg, net)
    if not args.move:
        raise InputError("apply needs --move (or --replay LOG)")
    try:
        at = tuple(int(x) for item in args.at for x in item.split(",") if x)
    except ValueError as exc:
        raise InputError(f"--at: expected integers, got {' '.join(args.at)!r}") from exc
    try:
        out, mv = do_move(net, args.move, at)
    except MoveError as exc:
        print(f"move not applicable: {exc}", file=sys.stderr)
        return EXIT_NO
    except TypeError as exc:
        raise InputError(f"--at: wrong number of vertices for {args.move}") from exc
    _emit(jsonio.network_to_json(out), cfg.output)
    if args.log:
        _emit({"d": get_field(), "moves": [mv.to_json()]}, args.log)
    return EXIT_OK


def cmd_reduce(args, ctx, cfg) -> int:
    net = ctx.network(args.network, two_port=True)
    try:
        if args.require_rational:
            if not net.is_rational():
                raise InputError("--require-rational: the network has an irrational resistance")
            res = reduce_rational_floor(net, cfg.budget)
        else:
            res = reduce(net, cfg.budget)
    except BudgetExhausted as exc:
        print(str(exc), file=sys.stderr)
        best = exc.best
        _emit({"network": jsonio.network_to_json(best.final), "moves": [m.to_json() for m in best.moves],
               "status": "budget exhausted"}, cfg.output)
        return EXIT_BUDGET
    doc = {
        "network": jsonio.network_to_json(res.final),
        "shape": classify_shape(res.final).tag,
        "moves": [m.to_json() for m in res.moves],
        "stats": {"states": res.states, "depth": res.depth, "stage": res.stage},
    }
    _emit(doc, cfg.output)
    return EXIT_OK


def _load_tiling(ctx, path, polygon_path=None):
    doc = ctx.load(path)
    try:
        tiling, poly = jsonio.tiling_from_json(doc)
        if polygon_path:
            poly = jsonio.polygon_from_json(ctx.load(polygon_path))
    except SchemaError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if poly is None:
        raise InputError(f"{path}: no polygon given (embed one under 'polygon' or pass --polygon)")
    return tiling, poly


def cmd_tile(args, ctx, cfg) -> int:
    squares, poly = _load_tiling(ctx, args.tiling, args.polygon)
    res = tile_octagon(poly, squares, cfg.budget)
    doc = jsonio.tiling_to_json(res.tiling, poly)
    doc["shape"] = res.shape.tag
    doc["ratios"] = [str(r.ratio) for r in res.tiling]
    _emit(doc, cfg.output)
    return EXIT_OK


def cmd_untile(args, ctx, cfg) -> int:
    tiling, poly = _load_tiling(ctx, args.tiling, args.polygon)
    circ = circuit_from_tiling(poly, tiling)
    doc = jsonio.network_to_json(circ.network)
    doc["voltages"] = [str(v) for v in circ.voltages]
    _emit(doc, cfg.output)
    return EXIT_OK


def cmd_classify(args, ctx, cfg) -> int:
    doc = ctx.load(args.file)
    if isinstance(doc, dict) and "vertices" in doc:
        try:
            poly = jsonio.polygon_from_json(doc)
        except SchemaError as exc:
            raise InputError(f"{args.file}: {exc}") from exc
        shape = classify_octagon(poly)
        _emit({"kind": "octagon", "tag": shape.tag, "witness": shape.witness}, cfg.output)
    else:
        net = ctx.network(args.file)
        shape = classify_shape(net)
        _emit({"kind": "network", "tag": shape.tag, "witness": shape.witness}, cfg.output)
    return EXIT_NO if shape.tag == "Other" else EXIT_OK


def cmd_hexagon(args, ctx, cfg) -> int:
    if len(args.sides) != 6:
        raise InputError("hexagon: give six sides A1A2 A2A3 A3A4 A4A5 A5A6 A6A1 ('-' for an unknown A4A5)")
    sides = [None if s == "-" else ctx.scalar(s, f"side {i + 1}") for i, s in enumerate(args.sides)]
    sol = hexagon_square_tileable(sides, check_closure=not args.no_closure_check)
    if sol is None:
        print("no nonnegative rational solution")
        return EXIT_NO
    x, y, z = (str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}" for v in sol)
    _emit({"x": x, "y": y, "z": z}, cfg.output)
    return EXIT_OK


def cmd_dehn(args, ctx, cfg) -> int:
    w, h = ctx.scalar(args.width, "width"), ctx.scalar(args.height, "height")
    ok = dehn_check(w, h)
    print(f"ratio {w / h} is {'rational' if ok else 'irrational'}")
    return EXIT_OK if ok else EXIT_NO


def cmd_render(args, ctx, cfg) -> int:
    doc = ctx.load(args.tiling)
    try:
        tiling, poly = jsonio.tiling_from_json(doc)
    except SchemaError as exc:
        raise InputError(f"{args.tiling}: {exc}") from exc
    _emit(render_svg(tiling, poly), cfg.output)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def add_globals(parser, default):
        parser.add_argument("--d", type=int, default=default,
                            help="field discriminant (default: taken from the input, else 2)")
        parser.add_argument("-o", "--output", default=default, help="write the result here instead of stdout")
        parser.add_argument("--budget", type=int, default=default,
                            help=f"search budget for reduce/tile (default {BUDGET_ENV} or 100000)")

    p = argparse.ArgumentParser(prog="twoport", description="Exact two-port network and tiling tools.")
    add_globals(p, None)
    # the same options are accepted after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    add_globals(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = command("solve", help="solve a circuit")
    s.add_argument("network")
    s.add_argument("--du14", default="1")
    s.add_argument("--du23", default="0")
    s.add_argument("--voltages", default=None, help="comma-separated terminal voltages (t-terminal mode)")
    s.set_defaults(func=cmd_solve)

    s = command("response", help="print the response matrix and voltage drops")
    s.add_argument("network")
    s.set_defaults(func=cmd_response)

    s = command("equiv", help="compare two networks; exit 1 when not equivalent")
    s.add_argument("--mode", choices=("pi", "response"), default="pi")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_equiv)

    s = command("apply", help="apply one move")
    s.add_argument("network")
    s.add_argument("--move", choices=KINDS)
    s.add_argument("--at", nargs="*", default=[], help="vertices (edge indices for Parallel), space- or comma-separated")
    s.add_argument("--log", default=None, help="write the move record here")
    s.add_argument("--replay", default=None, metavar="LOG", help="replay every move of a log (apply or reduce output)")
    s.set_defaults(func=cmd_apply)

    s = command("reduce", help="reduce to at most 4 edges or an H-network")
    s.add_argument("network")
    s.add_argument("--require-rational", action="store_true")
    s.set_defaults(func=cmd_reduce)

    s = command("tile", help="retile a square-tiled octagon with at most 5 rectangles")
    s.add_argument("tiling")
    s.add_argument("--polygon", default=None)
    s.set_defaults(func=cmd_tile)

    s = command("untile", help="circuit of a tiling")
    s.add_argument("tiling")
    s.add_argument("--polygon", default=None)
    s.set_defaults(func=cmd_untile)

    s = command("classify", help="classify an octagon (polygon file) or a network shape")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = command("hexagon", help="square-tileability of a right-angled hexagon")
    s.add_argument("sides", nargs="+")
    s.add_argument("--no-closure-check", action="store_true")
    s.set_defaults(func=cmd_hexagon)

    s = command("dehn", help="square-tileability of a rectangle; exit 1 when not tileable")
    s.add_argument("width")
    s.add_argument("height")
    s.set_defaults(func=cmd_dehn)

    s = command("render", help="SVG of a tiling (display only)")
    s.add_argument("tiling")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    saved = get_field()
    cfg = RunConfig(args.command, args.output, args.d, args.budget if args.budget is not None else default_budget())
    try:
        ctx = _Ctx(args.d)
        return args.func(args, ctx, cfg)
    except (InputError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GeometryError, TilingError, HexagonError, NetworkError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        set_field(saved)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
