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
"""Bounded losses l(y, y_hat) for scoring predictors."""

import math
from dataclasses import dataclass

import numpy as np

from ..common import ParameterError

__all__ = ['LossSpec', 'ABSOLUTE', 'SQUARED_CLIPPED']

ABSOLUTE = 'absolute'
SQUARED_CLIPPED = 'squared_clipped'


@dataclass(frozen=True)
class LossSpec(object):
    """
    Loss l(y, y_hat) >= 0.
    Args:
        kind(str): 'absolute' for |y - y_hat|, or 'squared_clipped' for
                   (y - clip(y_hat, lo - clip, hi + clip))^2 where [lo, hi] is
                   the support of the process.
        clip(float): Margin M > 0 of the prediction clipping, squared_clipped only.
    """
    kind: str = ABSOLUTE
    clip: float = None

    def __post_init__(self):
        kind = str(self.kind).lower()
        if kind not in (ABSOLUTE, SQUARED_CLIPPED):
            raise ParameterError("loss kind must be '{}' or '{}', got '{}'".
                                 format(ABSOLUTE, SQUARED_CLIPPED, self.kind))
        clip = None
        if kind == SQUARED_CLIPPED:
            if self.clip is None or not math.isfinite(float(
                    self.clip)) or float(self.clip) <= 0:
                raise ParameterError(
                    "squared_clipped needs a finite clip > 0, got {}".format(
                        self.clip))
            clip = float(self.clip)
        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'clip', clip)

    def evaluate(self, y, y_hat, support):
        """
        Elementwise loss.
        Args:
            y(numpy.ndarray): Targets.
            y_hat(numpy.ndarray): Predictions, broadcast against `y`.
            support(tuple): (lo, hi) range of the data.
        Returns:
            numpy.ndarray: Losses.
        """
        if self.kind == ABSOLUTE:
            return np.abs(y - y_hat)
        lo, hi = support
        clipped = np.clip(y_hat, lo - self.clip, hi + self.clip)
        return (y - clipped)**2

    def lipschitz(self, support=None):
        """
        Lipschitz constant phi of l(y, .) on the clipped domain.
        The squared loss needs the data support: phi = 2 (hi - lo + M).
        """
        if self.kind == ABSOLUTE:
            return 1.0
        if support is None:
            raise ParameterError("squared_clipped lipschitz needs the support")
        lo, hi = support
        return 2.0 * (hi - lo + self.clip)

    def loss_max(self, support, prediction_range):
        """
        Largest possible loss for targets in `support` and predictions in
        `prediction_range`.
        """
        lo, hi = support
        p_lo, p_hi = prediction_range
        if self.kind == SQUARED_CLIPPED:
            p_lo = min(max(p_lo, lo - self.clip), hi + self.clip)
            p_hi = max(min(p_hi, hi + self.clip), lo - self.clip)
            return max((hi - p_lo)**2, (p_hi - lo)**2)
        return max(abs(hi - p_lo), abs(p_hi - lo))

    def to_dict(self):
        d = {"kind": self.kind}
        if self.clip is not None:
            d["clip"] = self.clip
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(kind=d.get("kind", ABSOLUTE), clip=d.get("clip"))
