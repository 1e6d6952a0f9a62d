# Copyright (c) 2026  tsrisk Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License"
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Errors raised by tsrisk."""

__all__ = [
    'TSRiskError', 'ParameterError', 'ArgumentError', 'ConsistencyError',
    'UnsupportedError', 'InsufficientHistoryError', 'InsufficientDataError',
    'DegenerateBoundError'
]


class TSRiskError(Exception):
    """Base class of every error raised on purpose by tsrisk."""


class ParameterError(TSRiskError, ValueError):
    """A model parameter (process law, loss, class) is invalid."""


class ArgumentError(TSRiskError, ValueError):
    """An operation received an invalid argument."""


class ConsistencyError(TSRiskError, ValueError):
    """Two inputs that must describe the same object do not."""


class UnsupportedError(TSRiskError, NotImplementedError):
    """The operation is not defined for this variant."""


class InsufficientHistoryError(ArgumentError):
    """A prefix is shorter than the predictor order."""


class InsufficientDataError(ArgumentError):
    """A path has no evaluable index for the requested horizon."""


class DegenerateBoundError(ArgumentError):
    """All difference constants vanish, the bound is undefined."""
