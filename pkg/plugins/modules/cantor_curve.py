#!/usr/bin/python
# -*- coding: utf-8 -*-

# Copyright (c) 2026, community.cantor contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import absolute_import, division, print_function
__metaclass__ = type

DOCUMENTATION = r'''

module: cantor_curve

short_description: Lipschitz functions on a curve that do not attain their Lipschitz constant

version_added: "1.0.0"

author:
  - community.cantor contributors

description:
  - Reparametrizes a C^1 curve by arc length, finds the arc [0, rho] on which the chord is at least half
    the arc, and builds F (the integral of the indicator of the scaled Cantor set) and H = F - (t - F)/8
    along it.
  - Scans the difference quotients of F and H over pairs of points and reports whether the supremum is
    approached only by pairs collapsing together (not attained) or by a pair of distinct points.
  - Without I(sequence) the Cantor set is synthesized from the chord ratio of the curve itself.
  - Analogous to C(cantor curve).

options:
  curve:
    description:
    - Builtin curve. Ignored when I(poly) is set.
    type: str
    default: circle
    choices: [circle, ellipse, line, parabola, spiral]
  poly:
    description:
    - Polynomial curve in C(t), as a tuple of components, e.g. C((t, t^2/2)).
    type: str
  curve_params:
    description:
    - Keyword parameters of the builtin curve, e.g. C(radius) for the circle or C(length) for the line.
    type: dict
  domain:
    description:
    - Parameter interval C([t0, t1]) of the curve.
    type: list
    elements: float
  sequence:
    description:
    - Sequence file written by M(community.cantor.cantor_synthesize).
    type: path
  depth:
    description:
    - Synthesis depth used when I(sequence) is not set.
    type: int
    default: 14
  headroom:
    description:
    - Synthesis headroom used when I(sequence) is not set.
    type: str
    default: '1/16'
  coarse_grid:
    description:
    - Number of points of the coarse grid on [0, rho] whose pairs are all scanned.
    type: int
    default: 400
  refine_rounds:
    description:
    - Rounds of local refinement around the best pairs, each at a quarter of the previous step.
    type: int
    default: 6
  quotient_levels:
    description:
    - Levels n of the pairs (0, rho r_n) whose quotients are reported.
    type: list
    elements: int
    default: [4, 5, 6, 7, 8, 9, 10, 11, 12]
  control:
    description:
    - Also scan the distance to the starting point of the curve, a function that attains its Lipschitz constant.
    type: bool
    default: False
  scan_csv:
    description:
    - Prefix of the CSV files of scanned pairs, one file per function with the function name appended.
    type: path
  precision:
    description:
    - Working precision 2^-p, given as C(p), C(2^-p) or C(2**-p) with 32 <= p <= 256.
    type: str
    default: '64'

requirements:
  - python >= 3.6
  - numpy
  - scipy
'''

EXAMPLES = r'''
- name: Scan F and H on the unit circle
  community.cantor.cantor_curve:
    curve: circle
    sequence: /tmp/lambda.json
    scan_csv: /tmp/scan.csv

- name: Arc length of a parabola arc, with the attaining control function
  community.cantor.cantor_curve:
    poly: "(t, t^2/2)"
    control: true
    coarse_grid: 200
'''

RETURN = r'''
curve:
  description: Name of the curve.
  returned: success
  type: str
length:
  description: Arc length of the curve.
  returned: success
  type: float
rho:
  description: Length of the arc the functions are built on.
  returned: success
  type: float
chord_ratio:
  description: Infimum g(x) of chord over arc at x = rho 2^-k.
  returned: success
  type: list
  elements: dict
scans:
  description: Per function, the supremum estimate, the supremum over separated pairs, the best pairs and the quotients at (0, rho r_n).
  returned: success
  type: list
  elements: dict
attained:
  description: Mapping of function name to whether its Lipschitz constant is attained by a pair of distinct points.
  returned: success
  type: dict
  sample: {"F": false, "H": false, "distance": true}
'''

from ansible_collections.community.cantor.plugins.module_utils.cantor_common import AnsibleCantorModule
from ansible_collections.community.cantor.plugins.module_utils.cantor_config import argument_spec
from ansible_collections.community.cantor.plugins.module_utils.cantor_runs import run_curve


class CantorCurve(AnsibleCantorModule):

    subcommand = "curve"
    requires_numeric = True

    def execute_module(self):
        result, _ = run_curve(self.config, check_mode=self.check_mode)
        self.exit_with(result)


def main():
    module = CantorCurve(argument_spec=argument_spec("curve"), supports_check_mode=True)
    module.run_module()


if __name__ == '__main__':
    main()
