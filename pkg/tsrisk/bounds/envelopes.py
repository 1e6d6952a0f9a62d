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
"""Predictable envelopes for the sample mean Z_n = (1/n) sum Y_i."""

import math
import logging
from enum import Enum
from dataclasses import dataclass

import numpy as np

from ..common import get_logger, ArgumentError, ConsistencyError, UnsupportedError
from ..process import ProcessSpec, SamplePath, IID, COPY, AR1

__all__ = [
    'BoundFormula', 'ForecastBoundSeq', 'forecast_bounds', 'conditional_mean',
    'cn2_closed_form', 'cn2_rational_form', 'cn2_upper_bound',
    'effective_sample_factor', 'iid_tail_bound', 'ar1_tail_bound'
]

_logger = get_logger(__name__, level=logging.INFO)


class BoundFormula(Enum):
    """Which AR1 envelope is used. IID and Copy envelopes do not depend on it.

    PAPER_PRINTED: widths ((b-a)/n)(1-theta^(n-i))/(1-theta) around
        (1/n) sum_{k<i} Y_k + theta Y_{i-1}, reproduced as printed.
    DERIVED_EXACT: widths ((b-a)/n)(1-theta^(n-i+1))/(1-theta) around the
        exact conditional expectation of the known part.
    """
    PAPER_PRINTED = 'paper'
    DERIVED_EXACT = 'derived'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace('_', '').replace('-', '')
        aliases = {
            'paper': cls.PAPER_PRINTED,
            'paperprinted': cls.PAPER_PRINTED,
            'derived': cls.DERIVED_EXACT,
            'derivedexact': cls.DERIVED_EXACT,
        }
        if key not in aliases:
            raise ArgumentError("unknown bound formula '{}', expected 'paper' "
                                "or 'derived'".format(value))
        return aliases[key]


@dataclass(frozen=True, eq=False)
class ForecastBoundSeq(object):
    """
    Envelopes L_i <= E[Z_n | F_1^i] <= U_i with F_1^{i-1}-measurable bounds.
    Args:
        lower(numpy.ndarray): L_1..L_n.
        upper(numpy.ndarray): U_1..U_n.
        c2(float): sum_i (U_i - L_i)^2.
        formula(BoundFormula): Variant that produced the AR1 envelopes.
    """
    lower: np.ndarray
    upper: np.ndarray
    c2: float
    formula: BoundFormula = BoundFormula.DERIVED_EXACT

    @property
    def widths(self):
        return self.upper - self.lower

    def to_rows(self):
        """Rows (i, lower, upper, width) for CSV export."""
        widths = self.widths
        return [[i + 1, float(self.lower[i]), float(self.upper[i]),
                 float(widths[i])] for i in range(self.lower.size)]

    def summary(self):
        return {"c2": self.c2, "formula": self.formula.value}


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ArgumentError("n must be a positive integer, got {}".format(n))
    return int(n)


def _check_spec(spec):
    if not isinstance(spec, ProcessSpec):
        raise ArgumentError("expected a ProcessSpec, got {}".format(
            type(spec).__name__))


def forecast_bounds(spec, path, formula=BoundFormula.DERIVED_EXACT):
    """
    Predictable envelopes of the sample mean along one path.
    Args:
        spec(ProcessSpec): The law the path was generated under.
        path(SamplePath): The realized path Y_1..Y_n.
        formula(BoundFormula|str): AR1 envelope variant. Default: DERIVED_EXACT.
    Returns:
        ForecastBoundSeq: The envelopes and their accumulated squared range.
    """
    _check_spec(spec)
    formula = BoundFormula.parse(formula)
    if not isinstance(path, SamplePath) or path.spec != spec:
        raise ConsistencyError("path was not generated under {}".format(
            spec.to_dict()))
    y = path.values
    n = y.size
    i = np.arange(1, n + 1, dtype=np.float64)
    # S_{i-1}: sum of the strictly earlier values
    known_sum = np.concatenate([[0.0], np.cumsum(y)[:-1]])
    mu = spec.innovation_mean

    if spec.kind == IID:
        base = (known_sum + (n - i) * mu) / n
        lower = base + spec.a / n
        upper = base + spec.b / n
    elif spec.kind == COPY:
        lower = np.full(n, y[0])
        upper = np.full(n, y[0])
        lower[0], upper[0] = spec.a, spec.b
    else:
        theta = spec.theta
        prev = np.concatenate([[path.anchor], y[:-1]])
        ahead = n - i
        if formula is BoundFormula.PAPER_PRINTED:
            gain = (1.0 - theta**ahead) / (1.0 - theta)
            base = known_sum / n + theta * prev
        else:
            gain = (1.0 - theta**(ahead + 1)) / (1.0 - theta)
            base = (known_sum + theta * prev * gain + mu *
                    ((ahead + 1) - gain) / (1.0 - theta)) / n
        lower = base + spec.a * gain / n
        upper = base + spec.b * gain / n

    c2 = float(np.sum((upper - lower)**2))
    _logger.debug("forecast_bounds - kind: {}; n: {}; formula: {}; c2: {}".
                  format(spec.kind, n, formula.value, c2))
    return ForecastBoundSeq(lower, upper, c2, formula)


def conditional_mean(spec, path, i):
    """
    Exact E[Z_n | F_1^i] for the sample mean of `path`.
    Args:
        spec(ProcessSpec): The law of the path.
        path(SamplePath): Y_1..Y_n; for AR1 the anchor Y_0 is part of F_1^0.
        i(int): Number of observed values, 0 <= i <= n.
    Returns:
        float: The conditional expectation.
    """
    _check_spec(spec)
    y = path.values
    n = y.size
    if not 0 <= i <= n:
        raise ArgumentError("i must be in [0, {}], got {}".format(n, i))
    mu = spec.innovation_mean
    known = float(np.sum(y[:i]))
    ahead = n - i
    if spec.kind == IID:
        return (known + ahead * mu) / n
    if spec.kind == COPY:
        return float(y[0]) if i >= 1 else mu
    theta = spec.theta
    last = float(y[i - 1]) if i >= 1 else path.anchor
    tail = theta * (1.0 - theta**ahead) / (1.0 - theta)
    drift = mu / (1.0 - theta) * (ahead - tail)
    return (known + last * tail + drift) / n


def cn2_closed_form(spec, n, formula=BoundFormula.DERIVED_EXACT):
    """
    Closed-form C_n^2 of the sample-mean envelopes, no path needed.
    Args:
        spec(ProcessSpec): The law.
        n(int): Sample size.
        formula(BoundFormula|str): AR1 envelope variant.
    Returns:
        float: C_n^2.
    """
    _check_spec(spec)
    n = _check_n(n)
    formula = BoundFormula.parse(formula)
    width2 = spec.width**2
    if spec.kind == IID:
        return width2 / n
    if spec.kind == COPY:
        return width2
    theta = spec.theta
    # sum_k (1 - theta^k)^2 over k = 0..n-1 (printed) or k = 1..n (derived)
    lead = 1.0 if formula is BoundFormula.PAPER_PRINTED else theta
    total = (n - 2.0 * lead * (1.0 - theta**n) / (1.0 - theta) + lead**2 *
             (1.0 - theta**(2 * n)) / (1.0 - theta**2))
    return width2 * total / (n**2 * (1.0 - theta)**2)


def cn2_rational_form(spec, n):
    """
    The printed rational-polynomial expression of the PAPER_PRINTED AR1 sum.
    Numerically less stable than `cn2_closed_form`; kept for cross-checks.
    """
    _check_spec(spec)
    n = _check_n(n)
    if spec.kind != AR1:
        raise UnsupportedError("rational form is only defined for ar1")
    t = spec.theta
    poly = (t**(2 * n) - 2 * t**(n + 1) - 2 * t**n + n * t**2 + 2 * t - n + 1)
    return spec.width**2 * poly / (n**2 * (1.0 - t)**2 * (t**2 - 1.0))


def cn2_upper_bound(spec, n):
    """
    (b-a)^2 / (n (1-theta)^2), dominating both AR1 envelope variants.
    """
    _check_spec(spec)
    n = _check_n(n)
    if spec.kind != AR1:
        raise UnsupportedError("cn2_upper_bound is only defined for ar1, got "
                               "'{}'".format(spec.kind))
    return spec.width**2 / (n * (1.0 - spec.theta)**2)


def effective_sample_factor(theta):
    """
    (1 - theta)^2: the AR1 tail exponent relative to the IID exponent.
    """
    theta = float(theta)
    if not 0.0 <= theta < 1.0:
        raise ArgumentError("theta must lie in [0, 1), got {}".format(theta))
    return (1.0 - theta)**2


def iid_tail_bound(spec, n, epsilon):
    """Classical Hoeffding bound exp(-2 n eps^2 / (b-a)^2) for the mean."""
    n = _check_n(n)
    return math.exp(-2.0 * n * epsilon**2 / spec.width**2)


def ar1_tail_bound(spec, n, epsilon):
    """exp(-2 n eps^2 (1-theta)^2 / (b-a)^2), the AR1 mean bound."""
    n = _check_n(n)
    if spec.kind != AR1:
        raise UnsupportedError("ar1_tail_bound needs an ar1 spec")
    return math.exp(-2.0 * n * epsilon**2 * effective_sample_factor(
        spec.theta) / spec.width**2)
