#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type


class CantorException(Exception):
    """Base error of the collection.

    ``details`` is merged into the ``fail_json`` payload by the modules and into the
    JSON error document written by the command line front end.
    """

    exit_code = 1

    def __init__(self, msg, **details):
        super(CantorException, self).__init__(msg)
        self.msg = msg
        self.details = details

    def to_dict(self):
        result = dict(error=type(self).__name__, msg=self.msg)
        result.update(self.details)
        return result


class InvalidSequence(CantorException):
    exit_code = 64


class IndexOutOfRange(CantorException):
    exit_code = 64


class DomainError(CantorException):
    exit_code = 64


class ResourceLimit(CantorException):
    exit_code = 64


class InvalidTarget(CantorException):
    exit_code = 2


class SynthesisUnverified(CantorException):
    exit_code = 2


class CertificateFailed(CantorException):

    exit_code = 3

    def __init__(self, msg, certificate=None, **details):
        super(CertificateFailed, self).__init__(msg, **details)
        self.certificate = certificate


class IndeterminateResult(CantorException):

    exit_code = 4

    def __init__(self, msg, certificate=None, **details):
        super(IndeterminateResult, self).__init__(msg, **details)
        self.certificate = certificate


class DegenerateDerivative(CantorException):
    exit_code = 5


class NumericalInconsistency(CantorException):
    exit_code = 5


class MissingInput(CantorException):
    exit_code = 66


class UsageError(CantorException):
    exit_code = 64
