"""``reptiler`` command line.

Exit codes: 0 success / true, 1 falsified or not found, 2 usage error,
3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exactfield import format_num, parse_num
from .geom import Polygon, polygon, rectangle, region_of, square
from .localdeduce import (
    PatchProblem,
    edge_fill_solutions,
    enumerate_patches,
    enumerate_vertex_fills,
    named_angle,
    side_length,
)
from .quadmodel import QuadSpec, check_invariants, classify, lemma1_holds, lemma2_holds, parse_instance
from .render import render_svg
from .serialize import dumps_tiling, load_tiling, tiling_to_json
from .tileengine import (
    Mode,
    NodeBudgetExceeded,
    ReptileStatus,
    SearchConfig,
    f0_square_tiling,
    reptile_search,
    tile_region,
    trivial_quadrant_tiling,
    verify_tiling,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

GRAMMAR = """\
reptiler classify  --proto INST [--details]
reptiler tile      --proto SHAPE (--region REG | --construct f0|quadrant [--n N])
                   [--mode all|first|count] [--max-tiles N] [--max-nodes N]
                   [--no-reflect] [--workers N] [--out FILE]
reptiler reptile   --proto SHAPE --k K [--max-nodes N] [--no-reflect] [--out FILE]
reptiler verify    --tiling FILE
reptiler render    --tiling FILE --svg FILE [--scale S]
reptiler patches   --proto INST --base LEN --left ANGLE --right ANGLE
reptiler fills     --proto INST --target ANGLE
reptiler edgefills --proto INST --base LEN [--bound N]

INST   f1:<d> | f2:<a> | f3:<b> | f3ab:<a>,<b>      e.g. f3:1/5
SHAPE  INST | poly:x,y;x,y;...                        e.g. poly:0,0;1,0;0,1
REG    square:LEN | rect:LEN,LEN | file.json           LEN may use a, b, c, d
ANGLE  pi | 2pi | hpi | alpha | beta | gamma | delta
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"reptiler: error: {message}\n\n{GRAMMAR}")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reptiler", description="Exact tiling search for cyclic quadrilaterals.",
                epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def search_flags(sp):
        sp.add_argument("--mode", choices=["all", "first", "count"], default="all")
        sp.add_argument("--max-tiles", type=int, default=10_000)
        sp.add_argument("--max-nodes", type=int, default=10_000_000)
        sp.add_argument("--no-reflect", action="store_true")
        sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("classify")
    sp.add_argument("--proto", required=True)
    sp.add_argument("--details", action="store_true", help="also print invariants and lemma checks")

    sp = sub.add_parser("tile")
    sp.add_argument("--proto", required=True)
    sp.add_argument("--region")
    sp.add_argument("--construct", choices=["f0", "quadrant"])
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--out")
    search_flags(sp)

    sp = sub.add_parser("reptile")
    sp.add_argument("--proto", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out")
    search_flags(sp)

    sp = sub.add_parser("verify")
    sp.add_argument("--tiling", required=True)

    sp = sub.add_parser("render")
    sp.add_argument("--tiling", required=True)
    sp.add_argument("--svg", required=True)
    sp.add_argument("--scale", default="100")

    sp = sub.add_parser("patches")
    sp.add_argument("--proto", required=True)
    sp.add_argument("--base", required=True)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)

    sp = sub.add_parser("fills")
    sp.add_argument("--proto", required=True)
    sp.add_argument("--target", default="2pi")

    sp = sub.add_parser("edgefills")
    sp.add_argument("--proto", required=True)
    sp.add_argument("--base", "--length", dest="base", required=True)
    sp.add_argument("--bound", type=int)
    return p


# -- argument conversion -----------------------------------------------------

def _quad(text: str) -> QuadSpec:
    try:
        return parse_instance(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _shape(text: str):
    if text.startswith("poly:"):
        try:
            pts = []
            for pair in text[5:].split(";"):
                x, y = pair.split(",")
                pts.append((parse_num(x), parse_num(y)))
            return polygon(*pts)
        except (ValueError, SyntaxError) as exc:
            raise UsageError(f"bad polygon {text!r}: {exc}") from exc
    return _quad(text)


def _region(text: str, q):
    names = q.sides if isinstance(q, QuadSpec) else {}
    try:
        if text.startswith("square:"):
            return region_of(square(parse_num(text[7:], names)))
        if text.startswith("rect:"):
            w, h = text[5:].split(",")
            return region_of(rectangle(parse_num(w, names), parse_num(h, names)))
    except (ValueError, SyntaxError) as exc:
        raise UsageError(f"bad region {text!r}: {exc}") from exc
    path = Path(text)
    if not path.exists():
        raise UsageError(f"region {text!r} is neither square:/rect: nor an existing file")
    from .serialize import region_from_json

    return region_from_json(json.loads(path.read_text()))


def _config(args, mode=None) -> SearchConfig:
    for name in ("max_tiles", "max_nodes", "workers"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 1")
    return SearchConfig(
        mode=Mode(mode or args.mode),
        max_tiles=args.max_tiles,
        max_nodes=args.max_nodes,
        allow_reflection=not args.no_reflect,
        workers=args.workers,
    )


def _angle(q, name):
    try:
        return named_angle(q, name.replace("π", "pi"))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(obj, out=None):
    text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------

def _cmd_classify(args) -> int:
    q = _quad(args.proto)
    print(classify(q).value)
    if args.details:
        _emit({
            "sides": {k: format_num(v) for k, v in q.sides.items()},
            "invariant_failures": check_invariants(q),
            "lemma1": lemma1_holds(q),
            "lemma2": lemma2_holds(q),
        })
    return EXIT_OK


def _cmd_tile(args) -> int:
    shape = _shape(args.proto)
    if args.construct:
        if not isinstance(shape, QuadSpec):
            raise UsageError("--construct needs a quadrilateral instance")
        t = f0_square_tiling(shape) if args.construct == "f0" else trivial_quadrant_tiling(shape, args.n)
        text = dumps_tiling(t)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if not args.region:
        raise UsageError("tile needs --region or --construct")
    proto = shape.polygon() if isinstance(shape, QuadSpec) else shape
    region = _region(args.region, shape)
    cfg = _config(args)
    try:
        res = tile_region(region, proto, cfg)
    except NodeBudgetExceeded as exc:
        print(f"BUDGET exceeded after {exc.nodes} nodes", file=sys.stderr)
        return EXIT_BUDGET
    if cfg.mode is Mode.COUNT:
        print(res.count)
    elif args.out and cfg.mode is Mode.FIRST and res.tilings:
        Path(args.out).write_text(dumps_tiling(res.tilings[0]))
    else:
        _emit([tiling_to_json(t) for t in res.tilings], args.out)
    print(f"{res.count} tilings, {res.nodes} nodes", file=sys.stderr)
    return EXIT_OK if res.count else EXIT_FALSE


def _cmd_reptile(args) -> int:
    shape = _shape(args.proto)
    res = reptile_search(shape, args.k, _config(args, "first"))
    print(res.status.value)
    if res.tiling is not None and args.out:
        Path(args.out).write_text(dumps_tiling(res.tiling))
    return {ReptileStatus.FOUND: EXIT_OK, ReptileStatus.EXHAUSTED: EXIT_FALSE, ReptileStatus.BUDGET: EXIT_BUDGET}[res.status]


def _load(path):
    try:
        return load_tiling(path)
    except FileNotFoundError as exc:
        raise UsageError(f"no such tiling file: {path}") from exc
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed tiling file {path}: {exc}") from exc


def _cmd_verify(args) -> int:
    rep = verify_tiling(_load(args.tiling))
    if rep.ok:
        print("OK")
        return EXIT_OK
    print("FAIL")
    for f in rep.failures:
        print(f"  {f}")
    return EXIT_FALSE


def _cmd_render(args) -> int:
    t = _load(args.tiling)
    try:
        svg = render_svg(t, args.scale)
    except (ValueError, SyntaxError) as exc:
        raise UsageError(f"bad --scale {args.scale!r}") from exc
    Path(args.svg).write_text(svg)
    return EXIT_OK


def _fill_json(f) -> dict:
    return {tag: n for tag, n in f.counts}


def _cmd_patches(args) -> int:
    q = _quad(args.proto)
    prob = PatchProblem(side_length(q, args.base), _angle(q, args.left), _angle(q, args.right))
    cands = enumerate_patches(q, prob)
    _emit([
        {
            "sides": [[label, rev] for label, rev in c.sides],
            "lengths": [format_num(x) for x in c.lengths],
            "end_angles": [list(e) for e in c.end_angles],
            "joints": [[_fill_json(f) for f in j] for j in c.joints],
        }
        for c in cands
    ])
    return EXIT_OK if cands else EXIT_FALSE


def _cmd_fills(args) -> int:
    q = _quad(args.proto)
    fills = enumerate_vertex_fills(q, _angle(q, args.target))
    _emit([_fill_json(f) for f in fills])
    return EXIT_OK if fills else EXIT_FALSE


def _cmd_edgefills(args) -> int:
    q = _quad(args.proto)
    sols = edge_fill_solutions(q, side_length(q, args.base), args.bound)
    _emit([[s.p, s.q, s.r, s.s] for s in sols])
    return EXIT_OK if sols else EXIT_FALSE


_COMMANDS = {
    "classify": _cmd_classify,
    "tile": _cmd_tile,
    "reptile": _cmd_reptile,
    "verify": _cmd_verify,
    "render": _cmd_render,
    "patches": _cmd_patches,
    "fills": _cmd_fills,
    "edgefills": _cmd_edgefills,
}


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.cmd](args)
    except UsageError as exc:
        sys.stderr.write(f"reptiler: error: {exc}\n\n{GRAMMAR}")
        return EXIT_USAGE
    except (ValueError, SyntaxError) as exc:
        # bad parameter values that only surface once parsed (ranges, fields)
        sys.stderr.write(f"reptiler: error: {exc}\n")
        return EXIT_USAGE


def main(argv=None) -> None:
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    sys.exit(code)


if __name__ == "__main__":
    main()
