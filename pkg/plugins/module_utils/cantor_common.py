#!/usr/bin/env python

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import traceback
from abc import abstractmethod

from ansible.module_utils.basic import AnsibleModule, missing_required_lib
from ansible.module_utils._text import to_native

from ansible_collections.community.cantor.plugins.module_utils.cantor_config import (
    RunConfig,
    argument_spec,
    module_constraints,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    CantorException,
)

try:
    import numpy  # noqa: F401
    import scipy  # noqa: F401
    HAS_NUMERIC = True
    NUMERIC_IMPORT_ERROR = None
except ImportError:
    HAS_NUMERIC = False
    NUMERIC_IMPORT_ERROR = traceback.format_exc()


class AnsibleCantorModule(object):
    """
        Wraps AnsibleModule for one subcommand: the argument spec and its constraints come
        from cantor_config, library errors are turned into fail_json.
    """

    subcommand = None
    requires_numeric = False

    def __init__(self, **kwargs):
        kwargs.setdefault("argument_spec", argument_spec(self.subcommand))
        for key, value in module_constraints(self.subcommand).items():
            kwargs.setdefault(key, value)
        kwargs.setdefault("supports_check_mode", True)
        self._module = AnsibleModule(**kwargs)
        self.fail = self.fail_json

        if self.requires_numeric and not HAS_NUMERIC:
            self.fail_json(msg=missing_required_lib("numpy and scipy"), exception=NUMERIC_IMPORT_ERROR)

    def __getattr__(self, name):
        if name == "_module":
            raise AttributeError(name)
        return getattr(self._module, name)

    @property
    def module(self):
        return self._module

    @property
    def config(self):
        return RunConfig.from_params(self.subcommand, self.params)

    @abstractmethod
    def execute_module(self):
        pass

    def exit_with(self, result):
        for warning in result.pop("warnings", []):
            self.warn(warning)
        self.exit_json(**result)

    def fail_from_exception(self, e):
        details = dict(e.details)
        certificate = getattr(e, "certificate", None)
        if certificate is not None:
            details["certificate"] = certificate.to_dict()
        self.fail_json(msg=to_native(e.msg), error=type(e).__name__, **details)

    def run_module(self):

        try:
            self.execute_module()
        except CantorException as e:
            self.fail_from_exception(e)
