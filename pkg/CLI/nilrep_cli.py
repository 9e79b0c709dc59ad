# Compilation instructions
# nuitka-project: --standalone
# nuitka-project: --include-windows-runtime-dlls=yes
# nuitka-project-if: {OS} == "Windows":
#     nuitka-project: --output-filename=nilrep
# nuitka-project-if: {OS} == "Linux":
#     nuitka-project: --output-filename=nilrep.bin

# Windows-specific metadata for the executable
# nuitka-project-if: {OS} == "Windows":
#     nuitka-project-set: APP_VERSION = (__import__("sys").path.insert(0, "..") or __import__("_version").__version__)
#     nuitka-project: --file-description="nilrep CLI"
#     nuitka-project: --file-version={APP_VERSION}
#     nuitka-project: --product-name="nilrep"
#     nuitka-project: --product-version={APP_VERSION}

from __future__ import annotations

import argparse
import os
import sys
import traceback
from contextlib import nullcontext
from fractions import Fraction
from typing import Callable

from wakepy import keep

from nilrep import api, utils
from nilrep.config import load_settings
from nilrep.corpus import FAMILY_NAMES
from nilrep.errors import NilrepError, ParseError
from nilrep.linalg import parse_rational


# custom validators for argparse
def valid_algebra_path(arg: str) -> str:
    if not os.path.isfile(arg):
        raise argparse.ArgumentTypeError(f"Algebra file does not exist or is not a valid file: '{arg}'")
    return arg


def valid_output_path(arg: str) -> str:
    dir_name = os.path.dirname(arg) or '.'
    if not os.path.isdir(dir_name):
        raise argparse.ArgumentTypeError(f"Output directory does not exist: '{dir_name}'")
    if not os.access(dir_name, os.W_OK):
        raise argparse.ArgumentTypeError(f"Output directory is not writable: '{dir_name}'")
    return arg


def restricted_int(min_val: int | None = None, max_val: int | None = None) -> Callable[[str], int]:
    def validator(arg: str) -> int:
        try:
            value = int(arg)
        except ValueError:
            raise argparse.ArgumentTypeError(f"Must be an integer. Got '{arg}'") from None

        if min_val is not None and value < min_val:
            raise argparse.ArgumentTypeError(f"Value must be >= {min_val}")
        if max_val is not None and value > max_val:
            raise argparse.ArgumentTypeError(f"Value must be <= {max_val}")
        return value
    return validator


def rational_list(arg: str) -> list[Fraction]:
    try:
        return [parse_rational(part.strip()) for part in arg.split(',')]
    except ParseError as e:
        raise argparse.ArgumentTypeError(f"Expected comma-separated rationals such as '1,-1/2,0': {e}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='nilrep', description='Faithful unipotent representations of nilpotent Lie algebras, in exact arithmetic.')
    parser.add_argument('--quiet', action='store_true', help='Suppress progress messages on stderr')
    commands = parser.add_subparsers(dest='command', required=True)

    validate = commands.add_parser('validate', help='Check antisymmetry, Jacobi identity and nilpotency of an algebra file')
    validate.add_argument('path', type=valid_algebra_path, help='Algebra JSON file')

    analyze = commands.add_parser('analyze', help='Lower central series, nilpotency degree and center')
    analyze.add_argument('path', type=valid_algebra_path, help='Algebra JSON file')

    bch = commands.add_parser('bch', help='Group product x*y given by the Baker-Campbell-Hausdorff series')
    bch.add_argument('path', type=valid_algebra_path, help='Algebra JSON file')
    bch.add_argument('--x', type=rational_list, required=True, help='Coordinates of x, comma-separated')
    bch.add_argument('--y', type=rational_list, required=True, help='Coordinates of y, comma-separated')

    represent = commands.add_parser('represent', help='Build F_G and dump the generator matrices')
    represent.add_argument('path', type=valid_algebra_path, help='Algebra JSON file')
    represent.add_argument('--out', type=valid_output_path, default=None, help='Output JSON path (default: stdout)')

    verify = commands.add_parser('verify', help='Run every exact check on one algebra')
    verify.add_argument('path', type=valid_algebra_path, help='Algebra JSON file')
    verify.add_argument('--out', type=valid_output_path, default=None, help='Output JSON path (default: stdout)')

    corpus = commands.add_parser('corpus', help='Write a standard algebra document')
    corpus.add_argument('family', choices=FAMILY_NAMES, help='Algebra family')
    corpus.add_argument('param', type=int, nargs='?', default=None, help='Family size parameter')
    corpus.add_argument('--out', type=valid_output_path, default=None, help='Output JSON path (default: stdout)')

    report = commands.add_parser('report', help='Verify several algebras and print a summary table')
    report.add_argument('paths', type=valid_algebra_path, nargs='+', help='Algebra JSON files')
    report.add_argument('--out', type=valid_output_path, default=None, help='Write the JSON report to this path and print the table on stdout (default: JSON on stdout, table on stderr)')
    report.add_argument('--jobs', type=restricted_int(min_val=1), default=None, help='Number of worker processes (default: 1)')

    for sub in (verify, report):
        sub.add_argument('--samples', type=restricted_int(min_val=1), default=None, help='Samples per identity check (default: 100)')
        sub.add_argument('--seed', type=restricted_int(min_val=0), default=None, help='Seed of the deterministic sampler (default: 0)')
        sub.add_argument('--height', type=restricted_int(min_val=1), default=None, help='Bound on sampled numerators and denominators (default: 3)')
        sub.add_argument('--allow_system_sleep', type=lambda x: x.lower() == 'true', default=False, help='Allow the system to sleep during processing (default: false)')
    return parser


def emit(doc: object, out: str | None) -> None:
    if out:
        api.write_output(doc, out)
    else:
        sys.stdout.write(api.dump_json(doc))


def run(args: argparse.Namespace) -> int:
    settings = load_settings({
        'samples': getattr(args, 'samples', None),
        'seed': getattr(args, 'seed', None),
        'height': getattr(args, 'height', None),
        'jobs': getattr(args, 'jobs', None),
    })

    if args.command == 'corpus':
        emit(api.corpus_document(args.family, args.param), args.out)
        return 0

    if args.command == 'report':
        keep_awake_manager = nullcontext() if args.allow_system_sleep else keep.running()
        with keep_awake_manager:
            reports = api.report(args.paths, settings, quiet=args.quiet)
        table = api.render_table([r.to_row() for r in reports])
        if args.out:
            sys.stdout.write(table)
            api.write_output(api.report_document(reports), args.out)
        else:
            sys.stderr.write(table)
            sys.stdout.write(api.dump_json(api.report_document(reports)))
        return 0 if all(r.passed for r in reports) else 1

    g = api.load(args.path, settings)
    if args.command == 'validate':
        emit(api.validate(g), None)
    elif args.command == 'analyze':
        emit(api.analyze(g), None)
    elif args.command == 'bch':
        emit(api.bch_document(g, args.x, args.y), None)
    elif args.command == 'represent':
        emit(api.represent(g).to_json(), args.out)
    elif args.command == 'verify':
        keep_awake_manager = nullcontext() if args.allow_system_sleep else keep.running()
        with keep_awake_manager:
            result = api.verify(g, settings)
        emit(result.to_json(), args.out)
        return 0 if result.passed else 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    utils.set_quiet(args.quiet)

    try:
        return run(args)
    except NilrepError as e:
        sys.stdout.write(api.dump_json(e.to_dict()))
        return 1
    except Exception:
        log_path = utils.log_error(traceback.format_exc())
        print(f"Error: unexpected failure. See the log file for technical details: {log_path}", file=sys.stderr, flush=True)
        return 1


if __name__ == '__main__':
    sys.exit(main())
