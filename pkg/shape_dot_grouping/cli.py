# Copyright 2026 Shape Dot Grouping contributors
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl.html).
"""``shape-dot-grouping`` command line.

Exit codes: 0 success, 2 usage or invalid value, 3 input/output failure,
4 geometry failure.
"""

import argparse
import logging
import sys

from .exceptions import DuplicateName, GeometryError, MalformedFile, UserError
from .models.config_settings import DEFAULT_SETTINGS, ShapeGroupingSettings
from .models.grouping import METHODS, SURFACE
from .models.shapes import DEFAULT_DB_KINDS, builtin_names
from .report.svg_render import MODES, POINTS
from .wizards.group import PointSetGroup
from .wizards.make_db import BuiltinDbExport
from .wizards.render import ShapeRender
from .wizards.retrieve import ShapeRetrieve
from .wizards.sample import ShapeSample
from .wizards.sweep import ShapeSweep

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_GEOMETRY = 4

LOG_LEVELS = ("debug", "info", "warning", "error")


def _csv_list(value):
    return tuple(item.strip() for item in value.split(",") if item.strip())


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shape-dot-grouping",
        description="Group sampled dots into shape boundaries, score and "
        "retrieve them.",
    )
    parser.add_argument("--config", help="INI file with a [shape_dot_grouping] section")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default="warning")
    commands = parser.add_subparsers(dest="command", required=True)

    sample = commands.add_parser("sample", help="sample K dots from a shape")
    sample.add_argument("--shape", required=True, help="shape file or builtin:NAME")
    sample.add_argument("--k", type=int, required=True)
    sample.add_argument("--out", required=True)

    group = commands.add_parser("group", help="group the dots of a point-set file")
    group.add_argument("--points", required=True)
    group.add_argument("--method", choices=METHODS, default=SURFACE)
    group.add_argument("--stop-flatness", type=float, dest="stop_flatness")
    group.add_argument("--out", required=True)

    sweep = commands.add_parser("sweep", help="grouping scores over a K grid")
    sweep.add_argument("--db", required=True)
    sweep.add_argument("--methods", type=_csv_list, default=METHODS)
    sweep.add_argument("--kmin", type=int)
    sweep.add_argument("--kmax", type=int)
    sweep.add_argument("--kstep", type=int)
    sweep.add_argument("--jobs", type=int, default=1)
    sweep.add_argument(
        "--timing", action="store_true", help="fill runtime_ms (varies per run)"
    )
    sweep.add_argument("--out", required=True)

    retrieve = commands.add_parser("retrieve", help="retrievable sample size")
    retrieve.add_argument("--db", required=True)
    retrieve.add_argument("--id", required=True, dest="name")
    retrieve.add_argument("--cap", type=int)
    retrieve.add_argument("--log")

    render = commands.add_parser("render", help="SVG of dots, triangles or grouping")
    source = render.add_mutually_exclusive_group(required=True)
    source.add_argument("--points")
    source.add_argument("--shape", help="shape file or builtin:NAME")
    render.add_argument("--k", type=int)
    render.add_argument("--outline", help="source outline of a point-set file")
    render.add_argument("--mode", choices=MODES, default=POINTS)
    render.add_argument("--method", choices=METHODS, default=SURFACE)
    render.add_argument("--out", required=True)

    make_db = commands.add_parser("make-db", help="write builtin shapes as a db")
    make_db.add_argument("--out", required=True)
    make_db.add_argument(
        "--shapes",
        type=_csv_list,
        default=DEFAULT_DB_KINDS,
        help="comma separated, among {}".format(",".join(builtin_names())),
    )
    make_db.add_argument("--n", type=int)
    return parser


def _configure_logging(level):
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _run(args, settings, stdout):
    if args.command == "sample":
        shape = ShapeSample(args.shape, args.k, args.out, settings).run()
        print("wrote {} points to {}".format(shape.k, args.out), file=stdout)
    elif args.command == "group":
        result, xi = PointSetGroup(
            args.points, args.method, args.out, args.stop_flatness, settings
        ).run()
        print(
            "hamiltonian={}".format("true" if result.hamiltonian else "false"),
            file=stdout,
        )
        if xi is not None:
            print("xi={:.6f}".format(xi), file=stdout)
    elif args.command == "sweep":
        ShapeSweep(
            args.db,
            args.out,
            args.methods,
            args.kmin,
            args.kmax,
            args.kstep,
            args.jobs,
            args.timing,
            settings,
        ).run()
    elif args.command == "retrieve":
        outcome = ShapeRetrieve(args.db, args.name, args.cap, args.log, settings).run()
        if outcome.succeeded:
            print("n={}".format(outcome.n), file=stdout)
        else:
            print("NO-TERMINATION", file=stdout)
    elif args.command == "render":
        ShapeRender(
            args.out,
            args.mode,
            args.points,
            args.shape,
            args.k,
            args.outline,
            args.method,
            settings,
        ).run()
    elif args.command == "make-db":
        db = BuiltinDbExport(args.out, args.shapes, args.n, settings).run()
        print("wrote {} shape(s) to {}".format(len(db), args.out), file=stdout)


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.log_level)
    try:
        settings = (
            ShapeGroupingSettings.from_file(args.config)
            if args.config
            else DEFAULT_SETTINGS
        )
        _run(args, settings, stdout)
    except (MalformedFile, DuplicateName, OSError) as err:
        print("{}: {}".format(type(err).__name__, err), file=stderr)
        return EXIT_IO
    except GeometryError as err:
        print("{}: {}".format(type(err).__name__, err), file=stderr)
        return EXIT_GEOMETRY
    except UserError as err:
        print("{}: {}".format(type(err).__name__, err), file=stderr)
        return EXIT_USAGE
    return EXIT_OK


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
