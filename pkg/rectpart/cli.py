"""
Command line for rectpart.

Commands:
- ink / thick / approx-holes: solve a polygon and print the JSON result.
- oracle: exhaustive ground truth (ink, thick or TH) for small polygons.
- gadget: TH instance from a DIMACS formula (or one standalone gadget), with
  an optional witness partition for a satisfying assignment.
- verify: check a partition file against a polygon.
- render: SVG of a polygon and, optionally, a partition.
- corpus: seeded random polygons solved and cross-checked against the oracle.

Exit codes: 0 success, 1 failed verification or internal error,
2 invalid input, 3 size or capacity limit.
"""

import argparse
import json
import sys
from pathlib import Path
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import get_logger, load_settings, load_shapes
from .errors import InvalidInput, RectPartError
from .gadgets import GADGET_KINDS, build_gadget
from .geometry import load_polygon, polygon_from_json, result_from_json
from .ink import ink_partition
from .instances import (
    approx_ink_with_holes,
    assignment_to_partition,
    generate_th_instance,
    parse_assignment,
    parse_dimacs,
    random_polygon,
)
from .oracle import oracle_min_ink, oracle_th, oracle_thick
from .svg import write_svg
from .thick import at_partition, vt_partition
from .verify import verify

logger = get_logger(__name__)


@dataclass
class RunConfig:
    command: str
    input: str = None
    shape: str = None
    incidence: str = "vertex"
    delta: int = None
    k: int = None
    json_path: str = None
    svg_path: str = None
    oracle_cells: int = None
    max_vertices: int = None
    assertions: bool = False

    def __post_init__(self):
        if self.incidence not in ("vertex", "boundary"):
            raise InvalidInput(f"incidence must be vertex or boundary, got {self.incidence!r}")
        if self.delta is not None and self.delta <= 0:
            raise InvalidInput("--delta must be positive")
        for name in ("k", "oracle_cells", "max_vertices"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise InvalidInput(f"--{name.replace('_', '-')} must be positive")


def _run_config(args):
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        shape=getattr(args, "shape", None),
        incidence=getattr(args, "incidence", None) or "vertex",
        delta=getattr(args, "delta", None),
        k=getattr(args, "k", None),
        json_path=getattr(args, "json", None),
        svg_path=getattr(args, "svg", None),
        oracle_cells=getattr(args, "limit", None),
        max_vertices=getattr(args, "max_vertices", None),
        assertions=args.assertions or load_settings().assertions,
    )


#############################
# INPUT AND OUTPUT
#############################

def _polygon(cfg):
    if cfg.shape:
        shapes = load_shapes()
        if cfg.shape not in shapes:
            raise InvalidInput(f"unknown shape {cfg.shape!r}; known: {', '.join(sorted(shapes))}")
        return polygon_from_json(shapes[cfg.shape])
    if not cfg.input:
        raise InvalidInput("give a polygon file or --shape NAME")
    return load_polygon(cfg.input)


def _emit(payload, cfg):
    text = json.dumps(payload, indent=2)
    if cfg.json_path:
        with open(cfg.json_path, "w") as file:
            file.write(text + "\n")
    print(text)


def _fraction(value):
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def _result_payload(result, poly, cfg):
    if cfg.svg_path:
        write_svg(poly, result, cfg.svg_path)
    payload = result.to_json()
    payload["stats"] = dict(result.stats)
    return payload


#############################
# COMMANDS
#############################

def cmd_ink(cfg, args):
    poly = _polygon(cfg)
    return _result_payload(ink_partition(poly, assertions=cfg.assertions), poly, cfg)


def cmd_thick(cfg, args):
    poly = _polygon(cfg)
    if cfg.incidence == "boundary":
        result = at_partition(poly, cfg.max_vertices, assertions=cfg.assertions)
    else:
        result = vt_partition(poly, assertions=cfg.assertions)
    return _result_payload(result, poly, cfg)


def cmd_approx_holes(cfg, args):
    poly = _polygon(cfg)
    if len(poly.outer) != 4 or poly.holes:
        raise InvalidInput("approx-holes needs a rectangle with point holes")
    rect = poly.bounding_rect()
    return _result_payload(approx_ink_with_holes(rect, poly.point_holes, assertions=cfg.assertions), poly, cfg)


def cmd_oracle(cfg, args):
    poly = _polygon(cfg)
    if args.problem == "ink":
        return {"problem": "ink", "value": _fraction(oracle_min_ink(poly, args.filter, cfg.oracle_cells))}
    if args.problem == "thick":
        best = oracle_thick(poly, cfg.incidence, cfg.oracle_cells)
        return {"problem": "thick", "width": _fraction(best.width), "count": best.count}
    if cfg.delta is None or cfg.k is None:
        raise InvalidInput("oracle th needs --delta and --k")
    return {"problem": "th", "delta": cfg.delta, "k": cfg.k, "answer": oracle_th(poly, cfg.delta, cfg.k, cfg.oracle_cells)}


def cmd_gadget(cfg, args):
    if args.kind:
        layout = build_gadget(args.kind, cfg.delta or 2, args.steps, args.arm)
    else:
        if not cfg.input:
            raise InvalidInput("give a DIMACS formula file or --kind")
        try:
            with open(cfg.input, "r") as file:
                formula = parse_dimacs(file.read())
        except OSError as e:
            raise InvalidInput(f"cannot read formula {cfg.input}: {e}") from e
        layout = generate_th_instance(formula, cfg.delta or 2)
    if args.out:
        with open(args.out, "w") as file:
            json.dump(layout.polygon.to_json(), file, indent=2)
    payload = {
        "delta": layout.delta,
        "k": layout.k,
        "vertices": layout.polygon.n,
        "holes": len(layout.polygon.holes),
        "tiles": len(layout.board.tiles),
        "polygon": layout.polygon.to_json(),
    }
    if args.witness:
        if layout.formula is None:
            raise InvalidInput("--witness needs a formula")
        witness = assignment_to_partition(layout, parse_assignment(_witness_text(args.witness), layout.formula.num_vars))
        payload["witness"] = witness.to_json()
        if cfg.svg_path:
            write_svg(layout.polygon, witness, cfg.svg_path)
    elif cfg.svg_path:
        write_svg(layout.polygon, None, cfg.svg_path)
    return payload


def _witness_text(value):
    """Literal list given inline or as the path of a file holding it."""
    path = Path(value)
    if path.is_file():
        try:
            return path.read_text()
        except OSError as e:
            raise InvalidInput(f"cannot read witness {value}: {e}") from e
    return value


def _load_result(path):
    try:
        with open(path, "r") as file:
            data = json.load(file)
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidInput(f"cannot read partition {path}: {e}") from e
    return result_from_json(data)


def cmd_verify(cfg, args):
    poly = _polygon(cfg)
    result = _load_result(args.partition)
    incidence = args.incidence
    report = verify(poly, result, incidence, cfg.delta, cfg.k)
    return {
        "ok": report["ok"],
        "failures": report["failures"],
        "count": report["count"],
        "width": _fraction(report["width"]),
        "ink": _fraction(report["ink"]),
    }


def cmd_render(cfg, args):
    poly = _polygon(cfg)
    result = _load_result(args.partition) if args.partition else None
    out = cfg.svg_path or "out.svg"
    write_svg(poly, result, out)
    return {"svg": out}


def _corpus_case(seed, cells, board, assertions=False):
    """Solve one seeded random polygon and compare against the oracle."""
    rng = np.random.default_rng(seed)
    poly = random_polygon(rng, cells, board)
    ink = ink_partition(poly, assertions=assertions)
    thick = vt_partition(poly, assertions=assertions)
    expected_ink = oracle_min_ink(poly)
    expected_thick = oracle_thick(poly, "vertex")
    checks = {
        "ink": Fraction(ink.value) == expected_ink,
        "thick": (Fraction(thick.value), thick.count) == (expected_thick.width, expected_thick.count),
        "verify": verify(poly, ink, "vertex")["ok"] and verify(poly, thick, "vertex")["ok"],
    }
    return {
        "seed": seed,
        "vertices": poly.n,
        "ok": all(checks.values()),
        "checks": checks,
        "ink": str(ink.value),
        "oracle_ink": str(expected_ink),
        "thick": [str(thick.value), thick.count],
        "oracle_thick": [str(expected_thick.width), expected_thick.count],
    }


def cmd_corpus(cfg, args):
    seeds = [args.seed + s for s in range(args.count)]
    jobs = [(s, args.cells, args.board, cfg.assertions) for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            cases = list(pool.map(_corpus_case, *zip(*jobs)))
    else:
        cases = [_corpus_case(*job) for job in jobs]
    mismatches = [c for c in cases if not c["ok"]]
    summary = {
        "total": len(cases),
        "agree": len(cases) - len(mismatches),
        "mismatches": mismatches,
    }
    logger.info("corpus: %d/%d agree", summary["agree"], summary["total"])
    return summary


COMMANDS = {
    "ink": cmd_ink,
    "thick": cmd_thick,
    "approx-holes": cmd_approx_holes,
    "oracle": cmd_oracle,
    "gadget": cmd_gadget,
    "verify": cmd_verify,
    "render": cmd_render,
    "corpus": cmd_corpus,
}


#############################
# PARSER
#############################

def _add_polygon_args(parser):
    parser.add_argument("input", nargs="?", help="polygon JSON file")
    parser.add_argument("--shape", help="named polygon from shapes.yaml")


def build_parser():
    parser = argparse.ArgumentParser(prog="rectpart", description="Rectangular partitions of rectilinear polygons")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    parser.add_argument("--assert", dest="assertions", action="store_true", help="check internal invariants")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("ink", "minimum-ink partition"), ("approx-holes", "rectangle with point holes, 3-approximation")):
        p = sub.add_parser(name, help=text)
        _add_polygon_args(p)
        p.add_argument("--json", help="also write the result here")
        p.add_argument("--svg", help="render the result here")

    p = sub.add_parser("thick", help="thick partition (vt or at)")
    _add_polygon_args(p)
    p.add_argument("--incidence", choices=("vertex", "boundary"), default="vertex")
    p.add_argument("--max-vertices", type=int, help="at-partition size guard")
    p.add_argument("--json")
    p.add_argument("--svg")

    p = sub.add_parser("oracle", help="exhaustive ground truth for small polygons")
    p.add_argument("problem", choices=("ink", "thick", "th"))
    _add_polygon_args(p)
    p.add_argument("--filter", choices=("none", "v-cut", "a-cut"), default="none")
    p.add_argument("--incidence", choices=("vertex", "boundary"), default="vertex")
    p.add_argument("--delta", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--limit", type=int, help="cell bound")
    p.add_argument("--json")

    p = sub.add_parser("gadget", help="TH instance from a DIMACS formula")
    p.add_argument("input", nargs="?", help="DIMACS CNF file")
    p.add_argument("--kind", choices=GADGET_KINDS, help="build one standalone gadget instead")
    p.add_argument("--steps", type=int, default=2)
    p.add_argument("--arm", type=int, default=1)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--out", help="write the polygon JSON here")
    p.add_argument("--witness", help="assignment as literals (e.g. '1,-2,3') or a file holding them")
    p.add_argument("--json")
    p.add_argument("--svg")

    p = sub.add_parser("verify", help="check a partition against a polygon")
    p.add_argument("partition", help="partition JSON file")
    _add_polygon_args(p)
    p.add_argument("--incidence", choices=("vertex", "boundary"))
    p.add_argument("--delta", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--json")

    p = sub.add_parser("render", help="SVG of a polygon and a partition")
    _add_polygon_args(p)
    p.add_argument("--partition", help="partition JSON file")
    p.add_argument("--svg", help="output path (default out.svg)")

    p = sub.add_parser("corpus", help="random polygons checked against the oracle")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--cells", type=int, default=8)
    p.add_argument("--board", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json")
    return parser


def _attach_option_values(argv):
    """Glue a value that starts with a negative literal to its option (--witness -1,2 -> --witness=-1,2)."""
    out = []
    for token in argv:
        if out and out[-1] == "--witness" and token.startswith("-") and token[1:2].isdigit():
            out[-1] = f"--witness={token}"
        else:
            out.append(token)
    return out


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(_attach_option_values(sys.argv[1:] if argv is None else argv))
    if args.verbose:
        get_logger("rectpart", "DEBUG" if args.verbose > 1 else "INFO")
    else:
        get_logger("rectpart", load_settings().log_level)
    try:
        cfg = _run_config(args)
        payload = COMMANDS[cfg.command](cfg, args)
    except InvalidInput as e:
        print(f"error: {e}", file=sys.stderr)
        for detail in e.errors:
            print(f"  - {detail}", file=sys.stderr)
        return e.exit_code
    except RectPartError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _emit(payload, cfg)
    if cfg.command == "verify" and not payload["ok"]:
        return 1
    if cfg.command == "corpus" and payload["mismatches"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
