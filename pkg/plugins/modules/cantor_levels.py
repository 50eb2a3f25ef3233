#!/usr/bin/python
# -*- coding: utf-8 -*-

# Copyright (c) 2026, community.cantor contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import absolute_import, division, print_function
__metaclass__ = type

DOCUMENTATION = r'''

module: cantor_levels

short_description: Draw the first levels of a Cantor set

version_added: "1.0.0"

author:
  - community.cantor contributors

description:
  - Draws the level sets C_0..C_n of the Cantor set of a sequence file, one horizontal row per level
    and one filled rectangle per component, at exact rational positions scaled to an 800 pixel canvas.
  - Writes an SVG picture and a CSV listing of the rectangles.
  - Analogous to C(cantor levels).

options:
  sequence:
    description:
    - Sequence file written by M(community.cantor.cantor_synthesize).
    type: path
    required: True
  levels:
    description:
    - Deepest level drawn, between 0 and 10 and at most the depth of the sequence.
    type: int
    default: 4
  svg:
    description:
    - SVG file to write.
    type: path
  csv:
    description:
    - CSV file to write, one row per rectangle with exact endpoints and pixel positions.
    type: path
  precision:
    description:
    - Working precision 2^-p, given as C(p), C(2^-p) or C(2**-p) with 32 <= p <= 256.
    type: str
    default: '64'

requirements:
  - python >= 3.6
'''

EXAMPLES = r'''
- name: Draw the first five levels
  community.cantor.cantor_levels:
    sequence: /tmp/lambda.json
    levels: 5
    svg: /tmp/levels.svg
    csv: /tmp/levels.csv
'''

RETURN = r'''
levels:
  description: Deepest level drawn.
  returned: success
  type: int
summary:
  description: Number of components drawn on every level.
  returned: success
  type: list
  elements: dict
  sample: [{"level": 0, "components": 1}, {"level": 1, "components": 2}]
rectangles:
  description: The rectangles with their level, index, exact endpoints, pixel offset and pixel width.
  returned: success
  type: list
  elements: dict
'''

from ansible_collections.community.cantor.plugins.module_utils.cantor_common import AnsibleCantorModule
from ansible_collections.community.cantor.plugins.module_utils.cantor_config import argument_spec
from ansible_collections.community.cantor.plugins.module_utils.cantor_runs import run_levels


class CantorLevels(AnsibleCantorModule):

    subcommand = "levels"

    def execute_module(self):
        result, _ = run_levels(self.config, check_mode=self.check_mode)
        self.exit_with(result)


def main():
    module = CantorLevels(argument_spec=argument_spec("levels"), supports_check_mode=True)
    module.run_module()


if __name__ == '__main__':
    main()
