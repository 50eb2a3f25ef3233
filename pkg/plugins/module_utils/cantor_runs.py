#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import io
import json
import os

from ansible_collections.community.cantor.plugins.module_utils.cantor_construction import (
    CantorApproximation,
    read_sequence_file,
    synthesize_lambda,
)
from ansible_collections.community.cantor.plugins.module_utils import cantor_curves as curves
from ansible_collections.community.cantor.plugins.module_utils.cantor_density import (
    check_density_limit,
    check_lemma2,
    check_lemma4,
    default_samples,
    density_profile,
    rational_dict,
    sample_grid,
    verify_target,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    CertificateFailed,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_figure import (
    level_rectangles,
    render_svg,
    write_levels_csv,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_rational import (
    to_decimal_string,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_target import (
    build_target,
    default_envelope_grid,
    monotone_violations,
)


CHORD_TABLE_EXPONENTS = 9


def write_text(path, content, check_mode=False):
    """Write ``content`` unless the file already holds it; whether it changed."""
    if os.path.exists(path):
        with open(path, "r") as f:
            if f.read() == content:
                return False
    if not check_mode:
        with open(path, "w") as f:
            f.write(content)
    return True


def sequence_document(sequence):
    return json.dumps(sequence.to_dict(), indent=2, sort_keys=True) + "\n"


def _csv_text(writer, *args):
    stream = io.StringIO()
    writer(stream, *args)
    return stream.getvalue()


def _target(config, depth):
    original, target = build_target(
        expression=config.get("target"),
        table=config.get("target_table"),
        monotone=config["monotone"],
        depth=depth,
        bits=config.precision,
    )
    warnings = []
    if not original.monotone_flag:
        violations = monotone_violations(original, default_envelope_grid(depth))
        if violations:
            x, y = violations[0]
            warnings.append(
                "target increases between x={0} and x={1}, synthesis uses its decreasing envelope".format(x, y))
    return original, target, warnings


def schedule_rows(sequence):
    return [
        dict(
            n=row["n"],
            L_up=to_decimal_string(row["L_up"]),
            ell=to_decimal_string(row["ell"]),
            lam=rational_dict(row["lam"]),
        )
        for row in sequence.schedule or []
    ]


def run_synthesize(config, check_mode=False):
    bits = config.precision
    depth = config["depth"]
    original, target, warnings = _target(config, depth)
    sequence = synthesize_lambda(target, depth, config.headroom, bits)
    approx = CantorApproximation(sequence, bits=bits)

    changed = False
    output = config.get("output")
    if output:
        changed = write_text(output, sequence_document(sequence), check_mode)

    return dict(
        changed=changed,
        output=output,
        target=original.description,
        depth=depth,
        precision=bits,
        sequence=sequence.to_dict(),
        schedule=schedule_rows(sequence),
        tail_ratio=rational_dict(sequence.tail_ratio),
        measure=approx.measure().to_dict(),
        warnings=warnings,
    ), sequence


def _strip_records(report, keep):
    data = report.to_dict()
    if not keep:
        data.pop("records")
    return data


def run_verify(config, check_mode=False):
    """
        Sliding window oracle, monotonicity in each band, density limit and the target
        certificate. A failed structural check raises CertificateFailed like the target check.
    """
    bits = config.precision
    sequence = read_sequence_file(config["sequence"])
    approx = CantorApproximation(sequence, bits=bits)
    original, _, warnings = _target(config, sequence.depth)
    seed = config.get("seed")

    cap = config["oracle_cap"]
    oracle_approx = approx
    if approx.level > cap:
        oracle_approx = CantorApproximation(sequence, cap, bits)
        warnings.append("sliding window oracle runs on level {0} instead of {1}".format(cap, approx.level))

    reports = [
        check_lemma2(oracle_approx, sample_grid(config["oracle_samples"], seed), cap),
        check_lemma4(approx, config["samples_per_band"], seed),
        check_density_limit(approx),
    ]
    for report in reports:
        warnings.extend(report.warnings)
    checks = [_strip_records(report, config["records"]) for report in reports]
    failed = [report.name for report in reports if not report.ok]
    if failed:
        raise CertificateFailed("structural checks failed: {0}".format(", ".join(failed)), checks=checks)

    samples = default_samples(config["samples"], sequence.depth)
    if seed is not None:
        samples = sorted(set(samples) | set(sample_grid(config["samples"], seed)))
    certificate = verify_target(approx, original, samples, config["budget"])
    warnings.extend(certificate.warnings)
    document = certificate.to_dict()
    if not config["records"]:
        for name in ("structural", "sampled"):
            document[name].pop("records")

    changed = False
    profile = config.get("profile")
    if profile:
        text = _csv_text(density_profile(approx, original, samples).write_csv)
        changed = write_text(profile, text, check_mode) or changed
    output = config.get("output")
    result = dict(
        holds=certificate.holds,
        target=original.description,
        checks=checks,
        certificate=document,
        min_margin=document["min_margin"],
        measure=document["measure"],
    )
    if output:
        changed = write_text(output, json.dumps(result, indent=2, sort_keys=True) + "\n", check_mode) or changed
    result.update(changed=changed, warnings=warnings)
    return result, certificate


def run_levels(config, check_mode=False):
    sequence = read_sequence_file(config["sequence"])
    levels = config["levels"]
    rectangles = level_rectangles(sequence, levels)

    changed = False
    if config.get("svg"):
        changed = write_text(config["svg"], render_svg(rectangles, levels), check_mode) or changed
    if config.get("csv"):
        changed = write_text(config["csv"], _csv_text(write_levels_csv, rectangles), check_mode) or changed

    per_level = [
        dict(level=level, components=sum(1 for rect in rectangles if rect.level == level))
        for level in range(levels + 1)
    ]
    return dict(
        changed=changed,
        levels=levels,
        svg=config.get("svg"),
        csv=config.get("csv"),
        summary=per_level,
        rectangles=[
            dict(level=rect.level, index=rect.index, left=rational_dict(rect.left), right=rational_dict(rect.right),
                 x=rect.x, width=rect.width)
            for rect in rectangles
        ],
        warnings=[],
    ), rectangles


def _scan_path(prefix, name):
    root, ext = os.path.splitext(prefix)
    return "{0}_{1}{2}".format(root, name, ext or ".csv")


def run_curve(config, check_mode=False):
    """
        Unit speed reparametrisation, rho, the chord ratio table, then the attainment scans of
        F and H (and of the distance control when asked). Without a sequence file the set is
        synthesised from the chord ratio of the curve itself.
    """
    curves.require_numeric()
    bits = config.precision
    raw = curves.curve_from_spec(config["curve"], config.get("poly"), config.get("curve_params"), config.get("domain"))
    unit = curves.arclength_reparametrize(raw)
    rho = curves.find_rho(unit)

    warnings = []
    if config.get("sequence"):
        sequence = read_sequence_file(config["sequence"])
    else:
        target = curves.chord_ratio_target(unit, rho, config["depth"])
        sequence = synthesize_lambda(target, config["depth"], config.headroom, bits)
        warnings.append("no sequence file given, synthesised depth {0} from the chord ratio of {1}".format(
            config["depth"], raw.name))
    approx = CantorApproximation(sequence, bits=bits)

    chord_table = []
    for k in range(CHORD_TABLE_EXPONENTS):
        x = rho / 2 ** k
        chord_table.append(dict(x=x, g=curves.chord_ratio_inf(unit, x)))

    handles = [curves.build_F(approx, unit, rho), curves.build_H(approx, unit, rho)]
    if config["control"]:
        handles.append(curves.distance_handle(unit, rho))

    levels = [n for n in config["quotient_levels"] if n <= approx.level]
    if len(levels) < len(config["quotient_levels"]):
        warnings.append("quotient levels beyond {0} were skipped".format(approx.level))

    changed = False
    scans = []
    for handle in handles:
        scan = curves.attainment_scan(handle, unit, config["coarse_grid"], config["refine_rounds"])
        entry = scan.to_dict()
        entry["quotients"] = [
            dict(n=n, t=t, quotient=q) for n, t, q in curves.quotient_sequence(handle, unit, approx, levels)
        ]
        if config.get("scan_csv"):
            path = _scan_path(config["scan_csv"], handle.name)
            changed = write_text(path, _csv_text(scan.write_csv), check_mode) or changed
            entry["csv"] = path
        scans.append(entry)

    return dict(
        changed=changed,
        curve=raw.name,
        length=unit.length,
        rho=rho,
        chord_ratio=chord_table,
        sequence_depth=sequence.depth,
        measure=approx.measure().to_dict(),
        scans=scans,
        attained=dict((entry["name"], entry["attained"]) for entry in scans),
        warnings=warnings,
    ), scans


RUNNERS = dict(
    synthesize=run_synthesize,
    verify=run_verify,
    levels=run_levels,
    curve=run_curve,
)
