#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import copy
import json
import os
import re

from ansible.module_utils.common.arg_spec import ArgumentSpecValidator

from ansible_collections.community.cantor.plugins.module_utils.cantor_curves import BUILTIN_CURVES
from ansible_collections.community.cantor.plugins.module_utils.cantor_density import (
    DEFAULT_ESCALATION_BUDGET,
    DEFAULT_ORACLE_CAP,
    DEFAULT_SAMPLE_COUNT,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    MissingInput,
    UsageError,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_figure import MAX_FIGURE_LEVELS
from ansible_collections.community.cantor.plugins.module_utils.cantor_rational import (
    DEFAULT_PRECISION,
    to_fraction,
)

try:
    import yaml
    HAS_YAML = True
except ImportError:
    HAS_YAML = False


PRECISION_ENV = "CANTOR_PRECISION"
MIN_PRECISION = 32
MAX_PRECISION = 256
MAX_SYNTHESIS_DEPTH = 64
ORACLE_CAP_LIMIT = 24

PRECISION_RE = re.compile(r"^\s*(?:2\s*(?:\^|\*\*)\s*-\s*)?(\d+)\s*$")

SUBCOMMANDS = ("synthesize", "verify", "levels", "curve")

COMMON_ARG_SPEC = dict(
    precision=dict(type='str', default=str(DEFAULT_PRECISION)),
)

TARGET_ARG_SPEC = dict(
    target=dict(type='str'),
    target_table=dict(type='path'),
    monotone=dict(type='bool', default=False),
)

SYNTHESIZE_ARG_SPEC = dict(
    depth=dict(type='int', default=14),
    headroom=dict(type='str', default='1/16'),
    output=dict(type='path'),
)

VERIFY_ARG_SPEC = dict(
    sequence=dict(type='path', required=True),
    samples=dict(type='int', default=DEFAULT_SAMPLE_COUNT),
    seed=dict(type='int'),
    oracle_samples=dict(type='int', default=16),
    oracle_cap=dict(type='int', default=DEFAULT_ORACLE_CAP),
    samples_per_band=dict(type='int', default=100),
    budget=dict(type='int', default=DEFAULT_ESCALATION_BUDGET),
    profile=dict(type='path'),
    output=dict(type='path'),
    records=dict(type='bool', default=False),
)

LEVELS_ARG_SPEC = dict(
    sequence=dict(type='path', required=True),
    levels=dict(type='int', default=4),
    svg=dict(type='path'),
    csv=dict(type='path'),
)

CURVE_ARG_SPEC = dict(
    curve=dict(type='str', default='circle', choices=sorted(BUILTIN_CURVES)),
    poly=dict(type='str'),
    curve_params=dict(type='dict'),
    domain=dict(type='list', elements='float'),
    sequence=dict(type='path'),
    depth=dict(type='int', default=14),
    headroom=dict(type='str', default='1/16'),
    coarse_grid=dict(type='int', default=400),
    refine_rounds=dict(type='int', default=6),
    quotient_levels=dict(type='list', elements='int', default=list(range(4, 13))),
    control=dict(type='bool', default=False),
    scan_csv=dict(type='path'),
)

SUBCOMMAND_ARG_SPECS = dict(
    synthesize=[TARGET_ARG_SPEC, SYNTHESIZE_ARG_SPEC],
    verify=[TARGET_ARG_SPEC, VERIFY_ARG_SPEC],
    levels=[LEVELS_ARG_SPEC],
    curve=[CURVE_ARG_SPEC],
)

SUBCOMMAND_CONSTRAINTS = dict(
    synthesize=dict(
        mutually_exclusive=[('target', 'target_table')],
        required_one_of=[('target', 'target_table')],
    ),
    verify=dict(
        mutually_exclusive=[('target', 'target_table')],
        required_one_of=[('target', 'target_table')],
    ),
    levels=dict(),
    curve=dict(),
)


def argument_spec(subcommand):
    if subcommand not in SUBCOMMAND_ARG_SPECS:
        raise UsageError("unknown subcommand '{0}'".format(subcommand))
    args = copy.deepcopy(COMMON_ARG_SPEC)
    for spec in SUBCOMMAND_ARG_SPECS[subcommand]:
        args.update(copy.deepcopy(spec))
    return args


def module_constraints(subcommand):
    return copy.deepcopy(SUBCOMMAND_CONSTRAINTS[subcommand])


def parse_precision(value):
    """Bits p of the precision 2**-p, from 64, "64", "2^-64" or "2**-64"."""
    if isinstance(value, bool):
        raise ValueError("invalid precision {0!r}".format(value))
    if isinstance(value, int):
        bits = value
    else:
        m = PRECISION_RE.match(str(value))
        if not m:
            raise ValueError("invalid precision '{0}', expected 64, 2^-64 or 2**-64".format(value))
        bits = int(m.group(1))
    if not MIN_PRECISION <= bits <= MAX_PRECISION:
        raise ValueError("precision 2^-{0} is outside [2^-{1}, 2^-{2}]".format(bits, MAX_PRECISION, MIN_PRECISION))
    return bits


def load_config_file(path):
    """Mapping of option values from a JSON or YAML document."""
    if not os.path.exists(path):
        raise MissingInput("config file {0} does not exist".format(path), path=path)
    with open(path, "r") as f:
        content = f.read()
    if not content.strip():
        raise MissingInput("config file {0} is empty".format(path), path=path)
    # JSON is a subset of YAML
    if HAS_YAML:
        try:
            data = yaml.safe_load(content)
        except yaml.YAMLError as e:
            raise UsageError("config file {0} cannot be parsed: {1}".format(path, e), path=path)
    else:
        try:
            data = json.loads(content)
        except ValueError as e:
            raise UsageError("config file {0} cannot be parsed: {1}".format(path, e), path=path)
    if not isinstance(data, dict):
        raise UsageError("config file {0} must hold a mapping".format(path), path=path)
    return data


def validate_run_config(subcommand, params):
    """Domain rules on top of the argument spec; an error message or None."""
    try:
        parse_precision(params.get("precision"))
    except ValueError as e:
        return str(e)

    depth = params.get("depth")
    if depth is not None and not 1 <= depth <= MAX_SYNTHESIS_DEPTH:
        return "depth must be in [1, {0}], got {1}".format(MAX_SYNTHESIS_DEPTH, depth)

    headroom = params.get("headroom")
    if headroom is not None:
        try:
            if to_fraction(headroom) <= 0:
                return "headroom must be positive, got {0}".format(headroom)
        except (ValueError, ZeroDivisionError):
            return "headroom must be a rational number, got {0}".format(headroom)

    if subcommand == "verify":
        for name in ("samples", "oracle_samples", "samples_per_band"):
            if params[name] < 1:
                return "{0} must be positive, got {1}".format(name, params[name])
        if params["budget"] < 0:
            return "budget must not be negative, got {0}".format(params["budget"])
        if not 1 <= params["oracle_cap"] <= ORACLE_CAP_LIMIT:
            return "oracle_cap must be in [1, {0}], got {1}".format(ORACLE_CAP_LIMIT, params["oracle_cap"])

    if subcommand == "levels":
        levels = params["levels"]
        if not 0 <= levels <= MAX_FIGURE_LEVELS:
            return "levels must be in [0, {0}], got {1}".format(MAX_FIGURE_LEVELS, levels)

    if subcommand == "curve":
        if params["coarse_grid"] < 3:
            return "coarse_grid must be at least 3, got {0}".format(params["coarse_grid"])
        if params["refine_rounds"] < 0:
            return "refine_rounds must not be negative, got {0}".format(params["refine_rounds"])
        domain = params.get("domain")
        if domain is not None and (len(domain) != 2 or not domain[0] < domain[1]):
            return "domain must be two increasing numbers, got {0}".format(domain)
        if params.get("poly") and params.get("curve_params"):
            return "curve_params only apply to builtin curves"
        if any(n < 1 for n in params["quotient_levels"]):
            return "quotient_levels must be positive"

    return None


class RunConfig(object):
    """Validated options of one subcommand, merged from every configuration source."""

    def __init__(self, subcommand, params):
        self.subcommand = subcommand
        self.params = params

    def __getitem__(self, key):
        return self.params[key]

    def get(self, key, default=None):
        return self.params.get(key, default)

    @property
    def precision(self):
        return parse_precision(self.params["precision"])

    @property
    def headroom(self):
        return to_fraction(self.params["headroom"])

    @classmethod
    def from_params(cls, subcommand, params):
        error = validate_run_config(subcommand, params)
        if error:
            raise UsageError(error, subcommand=subcommand)
        return cls(subcommand, params)

    @classmethod
    def from_sources(cls, subcommand, cli_values=None, config_file=None, environ=None):
        """
            Merge in increasing priority: argument spec defaults, the config file, the
            CANTOR_PRECISION environment variable, explicit command line values.
        """
        spec = argument_spec(subcommand)
        merged = {}
        if config_file:
            data = load_config_file(config_file)
            unknown = sorted(set(data) - set(spec))
            if unknown:
                raise UsageError("config file {0} has unsupported options: {1}".format(config_file, ", ".join(unknown)))
            merged.update(data)
        environ = os.environ if environ is None else environ
        if environ.get(PRECISION_ENV):
            merged["precision"] = environ[PRECISION_ENV]
        for key, value in (cli_values or {}).items():
            if key in spec and value is not None:
                merged[key] = value

        validator = ArgumentSpecValidator(spec, **module_constraints(subcommand))
        result = validator.validate(merged)
        if result.error_messages:
            raise UsageError("; ".join(result.error_messages), subcommand=subcommand)
        return cls.from_params(subcommand, result.validated_parameters)
