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
"""Exponential tail bounds with predictable ranges."""

import math
from enum import Enum
from dataclasses import dataclass

import numpy as np

from ..common import ArgumentError, DegenerateBoundError
from ..bounds import BoundFormula, cn2_closed_form

__all__ = [
    'DifferenceInterpretation', 'DifferenceConstants', 'hoeffding_bound',
    'mcdiarmid_bound', 'predictable_bound'
]


class DifferenceInterpretation(Enum):
    """Where the constants k_i come from.

    PREDICTABLE_K: F_1^{i-1}-measurable bounds on the martingale increments.
    FUTURE_SUP_B: sup over the whole future Y_i..Y_n (dependent data).
    IID_SUP_D: classical bounded differences in one coordinate.
    """
    PREDICTABLE_K = 'predictable_k'
    FUTURE_SUP_B = 'future_sup_b'
    IID_SUP_D = 'iid_sup_d'


@dataclass(frozen=True)
class DifferenceConstants(object):
    """
    User-supplied difference constants k_1..k_n.
    Args:
        ks(tuple<float>): Non-negative finite constants.
        interpretation(DifferenceInterpretation): Their meaning. Default: PREDICTABLE_K.
    """
    ks: tuple
    interpretation: DifferenceInterpretation = DifferenceInterpretation.PREDICTABLE_K

    def __post_init__(self):
        ks = tuple(float(k) for k in np.asarray(self.ks, dtype=np.float64).reshape(-1))
        if len(ks) == 0:
            raise ArgumentError("at least one difference constant is needed")
        if not all(math.isfinite(k) and k >= 0 for k in ks):
            raise ArgumentError("difference constants must be finite and >= 0")
        object.__setattr__(self, 'ks', ks)
        object.__setattr__(self, 'interpretation',
                           DifferenceInterpretation(self.interpretation))

    @property
    def c2(self):
        return math.fsum(k * k for k in self.ks)


def _check_epsilon(epsilon):
    epsilon = float(epsilon)
    if not epsilon > 0 or not math.isfinite(epsilon):
        raise ArgumentError("epsilon must be positive, got {}".format(epsilon))
    return epsilon


def hoeffding_bound(epsilon, c2):
    """
    exp(-2 eps^2 / c2) for a sum with predictable ranges C_n^2 <= c2.
    Args:
        epsilon(float): Deviation, > 0.
        c2(float): Bound on the accumulated squared range, >= 0. Zero-width
                   envelopes give a point mass, so c2 = 0 returns 0.
    Returns:
        float: The tail bound.
    """
    epsilon = _check_epsilon(epsilon)
    c2 = float(c2)
    if not c2 >= 0 or not math.isfinite(c2):
        raise ArgumentError("c2 must be finite and >= 0, got {}".format(c2))
    if c2 == 0.0:
        return 0.0
    return math.exp(-2.0 * epsilon**2 / c2)


def mcdiarmid_bound(ks, epsilon):
    """
    exp(-2 eps^2 / sum k_i^2) for a function with predictable differences.
    Args:
        ks(DifferenceConstants|list<float>): The constants k_i.
        epsilon(float): Deviation, > 0.
    Returns:
        float: The tail bound.
    """
    if not isinstance(ks, DifferenceConstants):
        ks = DifferenceConstants(tuple(ks))
    c2 = ks.c2
    if c2 == 0.0:
        raise DegenerateBoundError("all difference constants are zero")
    return hoeffding_bound(epsilon, c2)


def predictable_bound(spec, n, epsilon, formula=BoundFormula.DERIVED_EXACT):
    """Tail bound of the sample mean using the closed-form C_n^2 of `spec`."""
    return hoeffding_bound(epsilon, cn2_closed_form(spec, n, formula))
