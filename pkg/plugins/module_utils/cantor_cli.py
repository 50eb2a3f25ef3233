#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Command line front end of the collection.

    python -m ansible_collections.community.cantor.plugins.module_utils.cantor_cli \\
        synthesize --f "max(1/2, 1 - sqrt(x))" --depth 14 --output lambda.json

Exit codes: 0 success, 2 synthesis, 3 certificate, 4 indeterminate, 5 curve,
64 usage, 66 missing input.
"""

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import argparse
import json
import os
import sys

from ansible.utils.display import Display

from ansible_collections.community.cantor.plugins.module_utils.cantor_config import (
    PRECISION_ENV,
    RunConfig,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    CantorException,
    UsageError,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_runs import (
    run_curve,
    run_levels,
    run_synthesize,
    run_verify,
)

display = Display()

DEFAULT_SEQUENCE_FILE = "lambda.json"
EXIT_OK = 0


class UsageParser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError("{0}: {1}".format(self.prog, message))


def _add_target_options(parser):
    parser.add_argument("--f", "--target", dest="target", help="target expression in x, e.g. 'max(1/2, 1 - sqrt(x))'")
    parser.add_argument("--table", dest="target_table", help="YAML or JSON file of (x, f(x)) points")
    parser.add_argument(
        "--monotone", action="store_const", const=True,
        help="assert the target is non-increasing and skip its decreasing envelope",
    )


def build_parser():
    parser = UsageParser(
        prog="cantor",
        description="Fat Cantor sets with a prescribed maximal density, and curve functions built from them.",
        epilog="{0} overrides the default precision; --config reads option values from a JSON or YAML file.".format(
            PRECISION_ENV),
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more progress output (-vvv for most)")
    parser.add_argument("--config", help="JSON or YAML file of option values")
    parser.add_argument("--precision", help="working precision 2^-p given as p, 2^-p or 2**-p (32 <= p <= 256)")
    parser.add_argument("--result", help="write the result (or error) document as JSON to this file")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    synthesize = subparsers.add_parser("synthesize", help="build lambda for a target function")
    _add_target_options(synthesize)
    synthesize.add_argument("--depth", type=int, help="number of explicit lambda terms N")
    synthesize.add_argument("--headroom", help="headroom constant c (rational)")
    synthesize.add_argument("-o", "--output", help="sequence file, {0} by default".format(DEFAULT_SEQUENCE_FILE))

    verify = subparsers.add_parser("verify", help="certify a sequence file against a target")
    verify.add_argument("-s", "--sequence", help="sequence file written by synthesize")
    _add_target_options(verify)
    verify.add_argument("--samples", type=int, help="uniform samples of the target check")
    verify.add_argument("--seed", type=int, help="add seeded random samples")
    verify.add_argument("--oracle-samples", dest="oracle_samples", type=int, help="samples of the sliding window oracle")
    verify.add_argument("--oracle-cap", dest="oracle_cap", type=int, help="deepest level the oracle enumerates")
    verify.add_argument("--samples-per-band", dest="samples_per_band", type=int, help="samples in each [r_n, r_{n-1})")
    verify.add_argument("--budget", type=int, help="escalations of indeterminate comparisons")
    verify.add_argument("--profile", help="CSV of phi against the target on the samples")
    verify.add_argument("-o", "--output", help="certificate JSON file")
    verify.add_argument("--records", action="store_const", const=True, help="keep per-sample records")

    levels = subparsers.add_parser("levels", help="draw C_0..C_n as SVG and CSV")
    levels.add_argument("-s", "--sequence", help="sequence file written by synthesize")
    levels.add_argument("-n", "--levels", type=int, help="deepest level drawn")
    levels.add_argument("--svg", help="SVG output file")
    levels.add_argument("--csv", help="CSV output file")

    curve = subparsers.add_parser("curve", help="F and H on a curve and their Lipschitz quotient scans")
    curve.add_argument("--name", dest="curve", help="builtin curve")
    curve.add_argument("--poly", help="polynomial curve, e.g. '(t, t^2/2)'")
    curve.add_argument("--param", dest="params", action="append", metavar="KEY=VALUE", help="builtin curve parameter")
    curve.add_argument("--domain", nargs=2, type=float, metavar=("T0", "T1"), help="parameter interval")
    curve.add_argument("-s", "--sequence", help="sequence file; synthesised from the curve when absent")
    curve.add_argument("--depth", type=int, help="synthesis depth when no sequence file is given")
    curve.add_argument("--headroom", help="synthesis headroom when no sequence file is given")
    curve.add_argument("--coarse-grid", dest="coarse_grid", type=int, help="points of the coarse pair grid")
    curve.add_argument("--refine-rounds", dest="refine_rounds", type=int, help="local refinement rounds")
    curve.add_argument("--quotient-levels", dest="quotient_levels", type=int, nargs="+", help="n of the pairs (0, rho r_n)")
    curve.add_argument(
        "--control", "--distance", dest="control", action="store_const", const=True,
        help="also scan the distance to alpha(0), which attains its Lipschitz constant",
    )
    curve.add_argument("--scan-csv", dest="scan_csv", help="CSV prefix of the scan samples, one file per function")
    return parser


def _cli_values(args):
    values = dict(vars(args))
    params = values.pop("params", None)
    if params:
        curve_params = {}
        for item in params:
            key, sep, value = item.partition("=")
            if not sep or not key:
                raise UsageError("curve parameter '{0}' is not KEY=VALUE".format(item))
            try:
                curve_params[key.strip()] = float(value)
            except ValueError:
                raise UsageError("curve parameter '{0}' is not numeric".format(item))
        values["curve_params"] = curve_params
    return values


def _show_warnings(result):
    for warning in result.get("warnings", []):
        display.warning(warning)


def cmd_synthesize(config):
    if not config.get("output"):
        config.params["output"] = DEFAULT_SEQUENCE_FILE
    display.v("synthesizing depth {0} for {1}".format(config["depth"], config.get("target") or config.get("target_table")))
    result, sequence = run_synthesize(config)

    display.display("{0:>4}  {1:>16}  {2:>16}  {3:>16}".format("n", "L_n (upper)", "l_n", "lambda_n"))
    for row in result["schedule"]:
        display.display("{0:>4}  {1:>16}  {2:>16}  {3:>16}".format(row["n"], row["L_up"], row["ell"], row["lam"]["decimal"]))
    measure = result["measure"]
    display.display("tail ratio q = {0}, depth {1}".format(result["tail_ratio"]["decimal"], sequence.depth))
    display.display("measure in [{0}, {1}]".format(measure["lo_decimal"], measure["hi_decimal"]))
    display.display("sequence written to {0}".format(result["output"]))
    return result


def cmd_verify(config):
    display.v("verifying {0}".format(config["sequence"]))
    result, certificate = run_verify(config)
    for check in result["checks"]:
        display.vv("{name}: {passed} passed, {failed} failed, {indeterminate} indeterminate".format(**check))
    display.display("certificate holds at level {0} after {1} escalations".format(certificate.level, certificate.escalations))
    display.display("minimum margin {0}".format(result["min_margin"]["decimal"] if result["min_margin"] else "n/a"))
    display.display("measure in [{0}, {1}]".format(result["measure"]["lo_decimal"], result["measure"]["hi_decimal"]))
    return result


def cmd_levels(config):
    display.v("drawing levels 0..{0} of {1}".format(config["levels"], config["sequence"]))
    result, rectangles = run_levels(config)
    for row in result["summary"]:
        display.vv("level {level}: {components} components".format(**row))
    for key in ("svg", "csv"):
        if result[key]:
            display.display("{0} written to {1}".format(key.upper(), result[key]))
    display.display("{0} rectangles on {1} levels".format(len(rectangles), result["levels"] + 1))
    return result


def cmd_curve(config):
    display.v("curve {0}".format(config.get("poly") or config["curve"]))
    result, scans = run_curve(config)
    display.display("arc length {0:.6f}, rho {1:.6f}".format(result["length"], result["rho"]))
    for row in result["chord_ratio"]:
        display.display("g({0:.6g}) = {1:.9f}".format(row["x"], row["g"]))
    for scan in scans:
        display.display("{0}: sup quotient {1:.9f}, attained {2}".format(scan["name"], scan["sup_estimate"], scan["attained"]))
        for row in scan["quotients"]:
            display.vv("  n={n}: quotient at (0, {t:.3g}) = {quotient}".format(**row))
    return result


COMMANDS = dict(
    synthesize=cmd_synthesize,
    verify=cmd_verify,
    levels=cmd_levels,
    curve=cmd_curve,
)


def _write_result(path, document):
    if path:
        with open(path, "w") as f:
            json.dump(document, f, indent=2, sort_keys=True)
            f.write("\n")


def main(argv=None, environ=None):
    parser = build_parser()
    result_path = None
    try:
        args = parser.parse_args(argv)
        result_path = args.result
        display.verbosity = args.verbose
        config = RunConfig.from_sources(args.command, _cli_values(args), args.config, environ)
        display.vvv("options: {0}".format(json.dumps(config.params, sort_keys=True, default=str)))
        result = COMMANDS[args.command](config)
        _show_warnings(result)
    except CantorException as e:
        document = e.to_dict()
        certificate = getattr(e, "certificate", None)
        if certificate is not None:
            document["certificate"] = certificate.to_dict()
            for warning in certificate.warnings:
                display.warning(warning)
        display.error("{0}: {1}".format(type(e).__name__, e.msg), wrap_text=False)
        _write_result(result_path, document)
        return e.exit_code
    _write_result(result_path, result)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main(environ=os.environ))
