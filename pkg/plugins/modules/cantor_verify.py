#!/usr/bin/python
# -*- coding: utf-8 -*-

# Copyright (c) 2026, community.cantor contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import absolute_import, division, print_function
__metaclass__ = type

DOCUMENTATION = r'''

module: cantor_verify

short_description: Certify that a Cantor set stays below a target maximal density

version_added: "1.0.0"

author:
  - community.cantor contributors

description:
  - Loads a sequence file and runs three structural checks on the level N approximation of its
    Cantor set, the sliding window oracle, the monotonicity of the prefix density inside each band
    [r_n, r_{n-1}) and the growth of the density towards 1.
  - Then certifies phi(r_n) < f(2^(-n+1)) for every level n and phi(s) < f(s) on the samples with rational
    enclosures, deepening the approximation when a comparison cannot be decided.
  - The module fails when a check fails or stays undecided after I(budget) escalations; the failure
    carries the certificate.
  - Analogous to C(cantor verify).

options:
  sequence:
    description:
    - Sequence file written by M(community.cantor.cantor_synthesize).
    type: path
    required: True
  target:
    description:
    - Target expression in C(x). Mutually exclusive with I(target_table).
    type: str
  target_table:
    description:
    - YAML or JSON file of C([x, f(x)]) points. Mutually exclusive with I(target).
    type: path
  monotone:
    description:
    - Assert that the target is non-increasing.
    type: bool
    default: False
  samples:
    description:
    - Number of uniform samples k/samples of the target check, the dyadics 2^-k are always added.
    type: int
    default: 128
  seed:
    description:
    - When set, seeded random samples are added to every check.
    type: int
  oracle_samples:
    description:
    - Number of samples of the sliding window oracle.
    type: int
    default: 16
  oracle_cap:
    description:
    - Deepest level the sliding window oracle enumerates. Deeper sequences are checked at this level.
    type: int
    default: 20
  samples_per_band:
    description:
    - Samples inside each band [r_n, r_{n-1}) of the monotonicity check.
    type: int
    default: 100
  budget:
    description:
    - Number of escalations (two more levels and one more bit each) for undecided comparisons.
    type: int
    default: 3
  profile:
    description:
    - CSV file of phi against the target on the samples.
    type: path
  output:
    description:
    - JSON file receiving the certificate.
    type: path
  records:
    description:
    - Keep the per-sample records in the result.
    type: bool
    default: False
  precision:
    description:
    - Working precision 2^-p, given as C(p), C(2^-p) or C(2**-p) with 32 <= p <= 256.
    type: str
    default: '64'

requirements:
  - python >= 3.6
'''

EXAMPLES = r'''
- name: Certify a synthesized sequence
  community.cantor.cantor_verify:
    sequence: /tmp/lambda.json
    target: "max(1/2, 1 - sqrt(x))"
    output: /tmp/certificate.json
    profile: /tmp/profile.csv

- name: Expect a failure below the measure of the set
  community.cantor.cantor_verify:
    sequence: /tmp/lambda.json
    target: "1/20"
    monotone: true
  register: result
  ignore_errors: true
'''

RETURN = r'''
holds:
  description: Whether the certificate holds.
  returned: success
  type: bool
  description: Reports of the structural checks with pass, fail and indeterminate counts, the number of secondary enclosure comparisons left open, and the facts checked.
  description: Reports of the structural checks with pass, fail and indeterminate counts and the facts checked.
  returned: success
  type: list
  elements: dict
certificate:
  description: The target certificate, with level, precision, escalations, tail factor and measure enclosures.
  returned: success, and on failure of the target check
  type: dict
min_margin:
  description: Smallest f.lo - phi.hi over all comparisons.
  returned: success
  type: dict
measure:
  description: Rational enclosure of the measure of the set.
  returned: success
  type: dict
error:
  description: Class of the error on failure, e.g. C(CertificateFailed) or C(IndeterminateResult).
  returned: failed
  type: str
'''

from ansible_collections.community.cantor.plugins.module_utils.cantor_common import AnsibleCantorModule
from ansible_collections.community.cantor.plugins.module_utils.cantor_config import argument_spec
from ansible_collections.community.cantor.plugins.module_utils.cantor_runs import run_verify


class CantorVerify(AnsibleCantorModule):

    subcommand = "verify"

    def execute_module(self):
        result, _ = run_verify(self.config, check_mode=self.check_mode)
        self.exit_with(result)


def main():
    module = CantorVerify(argument_spec=argument_spec("verify"), supports_check_mode=True)
    module.run_module()


if __name__ == '__main__':
    main()
