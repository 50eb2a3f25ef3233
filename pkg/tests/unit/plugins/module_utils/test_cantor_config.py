from __future__ import absolute_import, division, print_function

__metaclass__ = type

from fractions import Fraction

import pytest

from ansible_collections.community.cantor.plugins.module_utils.cantor_config import (
    RunConfig,
    argument_spec,
    load_config_file,
    module_constraints,
    parse_precision,
    validate_run_config,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    MissingInput,
    UsageError,
)


def defaults(subcommand, **overrides):
    params = dict((k, v.get("default")) for k, v in argument_spec(subcommand).items())
    params.update(overrides)
    return params


testdata = [
    ("value", "expected"),
    [
        ("64", 64),
        (" 2^-80 ", 80),
        ("2**-128", 128),
        ("2 ^ - 32", 32),
        (256, 256),
    ],
]


@pytest.mark.parametrize(*testdata)
def test_parse_precision(value, expected):
    assert parse_precision(value) == expected


@pytest.mark.parametrize("value", ["31", "2^-257", "2^64", "0.5", "", None, True, 16])
def test_parse_precision_rejects(value):
    with pytest.raises(ValueError):
        parse_precision(value)


def test_argument_spec():
    spec = argument_spec("verify")
    assert spec["sequence"]["required"] is True
    assert "target" in spec and "precision" in spec
    assert "target" not in argument_spec("levels")
    assert module_constraints("synthesize")["required_one_of"] == [("target", "target_table")]
    with pytest.raises(UsageError):
        argument_spec("draw")


testdata_validate = [
    ("subcommand", "overrides", "expected"),
    [
        ("synthesize", {}, None),
        ("synthesize", {"precision": "12"}, "precision 2^-12 is outside [2^-256, 2^-32]"),
        ("synthesize", {"depth": 0}, "depth must be in [1, 64], got 0"),
        ("synthesize", {"depth": 65}, "depth must be in [1, 64], got 65"),
        ("synthesize", {"headroom": "-1/8"}, "headroom must be positive, got -1/8"),
        ("synthesize", {"headroom": "1/0"}, "headroom must be a rational number, got 1/0"),
        ("verify", {"sequence": "lambda.json"}, None),
        ("verify", {"samples": 0}, "samples must be positive, got 0"),
        ("verify", {"samples_per_band": -3}, "samples_per_band must be positive, got -3"),
        ("verify", {"budget": -1}, "budget must not be negative, got -1"),
        ("verify", {"oracle_cap": 25}, "oracle_cap must be in [1, 24], got 25"),
        ("levels", {"levels": 11}, "levels must be in [0, 10], got 11"),
        ("levels", {"levels": 0}, None),
        ("curve", {"coarse_grid": 2}, "coarse_grid must be at least 3, got 2"),
        ("curve", {"refine_rounds": -1}, "refine_rounds must not be negative, got -1"),
        ("curve", {"domain": [1.0, 0.0]}, "domain must be two increasing numbers, got [1.0, 0.0]"),
        ("curve", {"domain": [0.0]}, "domain must be two increasing numbers, got [0.0]"),
        ("curve", {"poly": "(t, t)", "curve_params": {"radius": 2}}, "curve_params only apply to builtin curves"),
        ("curve", {"quotient_levels": [0, 4]}, "quotient_levels must be positive"),
        ("curve", {"domain": [0.0, 1.5], "curve_params": {"radius": 2}}, None),
    ],
]


@pytest.mark.parametrize(*testdata_validate)
def test_validate_run_config(subcommand, overrides, expected):
    assert validate_run_config(subcommand, defaults(subcommand, **overrides)) == expected


def test_run_config_properties():
    config = RunConfig.from_params("synthesize", defaults("synthesize", precision="2^-96", target="x"))
    assert config.precision == 96
    assert config.headroom == Fraction(1, 16)
    assert config["target"] == "x"
    assert config.get("missing", 3) == 3
    with pytest.raises(UsageError):
        RunConfig.from_params("synthesize", defaults("synthesize", depth=0))


def test_from_sources_priority(tmp_path):
    path = tmp_path / "cantor.yml"
    path.write_text("depth: 10\nprecision: '80'\nheadroom: 1/8\ntarget: max(1/2, 1 - sqrt(x))\n")

    config = RunConfig.from_sources("synthesize", config_file=str(path), environ={})
    assert config["depth"] == 10
    assert config.precision == 80
    assert config.headroom == Fraction(1, 8)
    assert config["monotone"] is False

    config = RunConfig.from_sources("synthesize", config_file=str(path), environ={"CANTOR_PRECISION": "2^-96"})
    assert config.precision == 96

    config = RunConfig.from_sources(
        "synthesize",
        cli_values={"depth": "12", "precision": None, "levels": 3},
        config_file=str(path),
        environ={"CANTOR_PRECISION": "2^-96"},
    )
    assert config["depth"] == 12
    assert config.precision == 96
    assert "levels" not in config.params


def test_from_sources_json(tmp_path):
    path = tmp_path / "cantor.json"
    path.write_text('{"sequence": "lambda.json", "levels": 2}')
    config = RunConfig.from_sources("levels", config_file=str(path), environ={})
    assert config["levels"] == 2
    assert config["sequence"].endswith("lambda.json")


@pytest.mark.parametrize(
    "subcommand,cli_values",
    [
        ("synthesize", {}),
        ("synthesize", {"target": "x", "target_table": "t.yml"}),
        ("levels", {}),
        ("levels", {"sequence": "lambda.json", "levels": "many"}),
        ("curve", {"curve": "torus"}),
        ("synthesize", {"target": "x", "depth": 0}),
        ("verify", {"target": "x", "sequence": "lambda.json", "precision": "2^-8"}),
    ],
)
def test_from_sources_rejects(subcommand, cli_values):
    with pytest.raises(UsageError):
        RunConfig.from_sources(subcommand, cli_values=cli_values, environ={})


def test_from_sources_rejects_unknown_file_options(tmp_path):
    path = tmp_path / "cantor.yml"
    path.write_text("depth: 10\ncolour: red\n")
    with pytest.raises(UsageError) as e:
        RunConfig.from_sources("synthesize", cli_values={"target": "x"}, config_file=str(path), environ={})
    assert "colour" in e.value.msg


def test_load_config_file(tmp_path):
    with pytest.raises(MissingInput):
        load_config_file(str(tmp_path / "missing.yml"))

    empty = tmp_path / "empty.yml"
    empty.write_text("  \n")
    with pytest.raises(MissingInput):
        load_config_file(str(empty))

    listing = tmp_path / "list.yml"
    listing.write_text("- depth\n- 10\n")
    with pytest.raises(UsageError):
        load_config_file(str(listing))

    broken = tmp_path / "broken.yml"
    broken.write_text("depth: [10\n")
    with pytest.raises(UsageError):
        load_config_file(str(broken))
