#!/usr/bin/python
# -*- coding: utf-8 -*-

# Copyright (c) 2026, community.cantor contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import absolute_import, division, print_function
__metaclass__ = type

DOCUMENTATION = r'''

module: cantor_synthesize

short_description: Build a fat Cantor set whose maximal density stays below a target function

version_added: "1.0.0"

author:
  - community.cantor contributors

description:
  - Computes a non-increasing sequence I(lambda) such that the Cantor set it generates has positive
    measure and satisfies prod_{j > n} (1 - lambda_j) < f(2^(-n + 1)) for every level n up to I(depth).
  - The target is given as an expression in C(x) or as a table of points. Unless I(monotone) is set
    the synthesis runs against the decreasing envelope of the target.
  - All arithmetic is exact or rigorously enclosed; the result is verified before it is returned.
  - Analogous to C(cantor synthesize).

options:
  target:
    description:
    - Target expression in C(x) built from rationals, C(+ - * /), integer powers, C(sqrt), C(min), C(max).
    - Mutually exclusive with I(target_table).
    type: str
  target_table:
    description:
    - YAML or JSON file holding a list of C([x, f(x)]) points, or a mapping with a C(points) key.
    - Mutually exclusive with I(target).
    type: path
  monotone:
    description:
    - Assert that the target is non-increasing and use it directly instead of its decreasing envelope.
    type: bool
    default: False
  depth:
    description:
    - Number of explicit terms N of the sequence, between 1 and 64.
    type: int
    default: 14
  headroom:
    description:
    - Positive rational headroom constant c added to every term, as C(1/16) or C(0.0625).
    type: str
    default: '1/16'
  output:
    description:
    - Sequence file to write. The file is only rewritten when its content changes.
    type: path
  precision:
    description:
    - Working precision 2^-p of the enclosures, given as C(p), C(2^-p) or C(2**-p) with 32 <= p <= 256.
    type: str
    default: '64'

requirements:
  - python >= 3.6
  - PyYAML (for I(target_table))
'''

EXAMPLES = r'''
- name: Synthesize lambda for max(1/2, 1 - sqrt(x))
  community.cantor.cantor_synthesize:
    target: "max(1/2, 1 - sqrt(x))"
    depth: 14
    output: /tmp/lambda.json

- name: Synthesize from a table of points at higher precision
  community.cantor.cantor_synthesize:
    target_table: /tmp/target.yml
    precision: "2^-96"
  register: synthesis
'''

RETURN = r'''
sequence:
  description: The sequence document, as written to I(output).
  returned: success
  type: dict
  contains:
    prefix:
      description: lambda_1..lambda_N as C([numerator, denominator]) string pairs.
      returned: success
      type: list
    tail_ratio:
      description: Ratio q of the geometric tail of -log(1 - lambda_j) past N.
      returned: success
      type: list
    tail_base:
      description: Value of -log(1 - lambda_N) the tail starts from.
      returned: success
      type: list
    depth:
      description: Number N of explicit terms.
      returned: success
      type: int
schedule:
  description: Per level n, the upper bound of L_n = -log f(2^(-n+1)), the term l_n and lambda_n.
  returned: success
  type: list
  elements: dict
measure:
  description: Rational enclosure of the measure of the Cantor set.
  returned: success
  type: dict
tail_ratio:
  description: Ratio q of the geometric tail.
  returned: success
  type: dict
output:
  description: Path of the sequence file, when I(output) is set.
  returned: success
  type: str
'''

from ansible_collections.community.cantor.plugins.module_utils.cantor_common import AnsibleCantorModule
from ansible_collections.community.cantor.plugins.module_utils.cantor_config import argument_spec
from ansible_collections.community.cantor.plugins.module_utils.cantor_runs import run_synthesize


class CantorSynthesize(AnsibleCantorModule):

    subcommand = "synthesize"

    def execute_module(self):
        result, _ = run_synthesize(self.config, check_mode=self.check_mode)
        self.exit_with(result)


def main():
    module = CantorSynthesize(argument_spec=argument_spec("synthesize"), supports_check_mode=True)
    module.run_module()


if __name__ == '__main__':
    main()
