#!/usr/bin/env python

"""
command line program of the shuttle fleet simulator

    shuttleswarm gen-city --rows 8 --cols 8 --block 150 --seed 7 --out city.geojson
    shuttleswarm run scenario.json --seed 3 --out run1 --trace
    shuttleswarm sweep fleet.json --out suite --jobs 4
    shuttleswarm sweep --preset workplace --seeds 5 --out suite
    shuttleswarm report run1
    shuttleswarm validate run1

exit codes:

    0   ok
    2   bad arguments, bad configuration or missing input
    3   the run hit max_ticks with persons still on their way
    4   validation found violations
"""

from __future__ import absolute_import, print_function

import sys
import os
import argparse
import logging

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INCOMPLETE = 3
EXIT_VIOLATIONS = 4


def cmd_gen_city(args):
    from shuttleswarm.geodata.city_model import generate_grid_city, dump_city
    city = generate_grid_city(args.rows, args.cols, args.block, seed=args.seed)
    dump_city(city, args.out)
    print("wrote %s to %s" % (city, args.out))
    return EXIT_OK


def cmd_run(args):
    from shuttleswarm.harness.scenario import load_scenario
    from shuttleswarm.harness.runner import run_scenario
    from shuttleswarm.metrics.report import format_table

    config = load_scenario(args.config, seed=args.seed)
    if args.print_config:
        print(config.to_json())
        return EXIT_OK

    out_dir = args.out or os.path.join("runs", config.fingerprint())
    report, world = run_scenario(config, out_dir=out_dir, trace=args.trace, formats=args.format)
    print(format_table(report))
    print("run written to %s" % out_dir)
    return EXIT_INCOMPLETE if report.incomplete else EXIT_OK


def cmd_sweep(args):
    from shuttleswarm.harness.suite import SweepSpec, load_sweep, run_experiment_suite

    if (args.spec is None) == (args.preset is None):
        raise ValueError("give either a sweep file or --preset")
    if args.preset is not None:
        spec = SweepSpec.preset(args.preset, seeds=args.seeds)
    else:
        spec = load_sweep(args.spec, seeds=args.seeds)
    if args.jobs < 1:
        raise ValueError("--jobs should be >= 1")

    res = run_experiment_suite(spec, out_dir=args.out, jobs=args.jobs, formats=args.format)
    for row in res.rows:
        print("%s = %s: served %s %%, waiting %s min, %s incomplete" % (
            row["parameter"], row["value"], _short(row["served_pct_mean"]),
            _short(row["avg_waiting_minutes_mean"]), row["incomplete"]))
    print("summary written to %s" % res.summary_path)
    return EXIT_OK


def _short(val):
    return "-" if val is None else "%.2f" % val


def cmd_report(args):
    from shuttleswarm.metrics.report import read_report, emit, format_table

    fName = os.path.join(args.run_dir, "report.json")
    if not os.path.exists(fName):
        raise IOError("no report.json in '%s'" % args.run_dir)
    report = read_report(fName)
    emit(report, args.run_dir, args.format)
    print(format_table(report))
    return EXIT_OK


def cmd_validate(args):
    from shuttleswarm.validation.validators import validate_run

    if not os.path.isdir(args.run_dir):
        raise IOError("run directory '%s' does not exist" % args.run_dir)
    violations = validate_run(args.run_dir)
    for v in violations:
        print(v)
    if violations:
        print("%s violation(s) in %s" % (len(violations), args.run_dir))
        return EXIT_VIOLATIONS
    print("%s: all checks passed" % args.run_dir)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="shuttleswarm",
                                     formatter_class=argparse.RawTextHelpFormatter,
                                     description="self-organizing autonomous shuttle fleet simulator")
    parser.add_argument("-d", "--debug", action="store_true",
                        help="output DEBUG messages")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("gen-city", help="writes a synthetic grid city as GeoJSON")
    p.add_argument("--rows", type=int, default=8)
    p.add_argument("--cols", type=int, default=8)
    p.add_argument("--block", type=float, default=150., help="block size in meters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", "-o", required=True, help="output file")
    p.set_defaults(func=cmd_gen_city)

    p = sub.add_parser("run", help="runs one scenario")
    p.add_argument("config", help="scenario JSON file")
    p.add_argument("--seed", type=int, default=None,
                   help="overrides the scenario seed and $SHUTTLESWARM_SEED")
    p.add_argument("--out", "-o", default=None, help="run directory (default runs/<fingerprint>)")
    p.add_argument("--trace", action="store_true", help="write events.jsonl")
    p.add_argument("--format", nargs="+", choices=("csv", "json"), default=["csv", "json"])
    p.add_argument("--print-config", action="store_true",
                   help="print the fully defaulted scenario and exit")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="runs a seed swept experiment suite")
    p.add_argument("spec", nargs="?", default=None, help="sweep JSON file")
    p.add_argument("--preset", default=None, help="workplace, fixed-fleet, fleet-size or angle")
    p.add_argument("--seeds", type=int, default=None, help="number of seeds per point")
    p.add_argument("--jobs", "-j", type=int, default=1, help="parallel runs")
    p.add_argument("--out", "-o", default="suite", help="suite directory")
    p.add_argument("--format", nargs="+", choices=("csv", "json"), default=["csv", "json"])
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="prints and re-emits the report of a finished run")
    p.add_argument("run_dir")
    p.add_argument("--format", nargs="+", choices=("csv", "json"), default=["csv", "json"])
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("validate", help="checks a traced run directory")
    p.add_argument("run_dir")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK

    logger = logging.getLogger("shuttleswarm")
    if args.debug:
        logger.setLevel(logging.DEBUG)

    try:
        return args.func(args)
    except (ValueError, IOError) as e:
        # ConfigurationError and the geodata errors are ValueErrors
        parser.print_usage(sys.stderr)
        print("shuttleswarm %s: error: %s" % (args.command, e), file=sys.stderr)
        return EXIT_CONFIG


if __name__ == '__main__':
    sys.exit(main())
