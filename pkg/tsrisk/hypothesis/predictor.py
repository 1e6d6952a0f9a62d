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
"""Fixed-window autoregressive predictors."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..common import (ParameterError, ArgumentError, InsufficientHistoryError,
                      InsufficientDataError)

__all__ = ['Predictor', 'predict', 'design_matrix', 'evaluable_count']


@dataclass(frozen=True)
class Predictor(object):
    """
    y_hat = intercept + sum_j w_j * Y_{i-j+1}, j = 1..p.
    Args:
        weights(tuple<float>): w_1..w_p, w_1 multiplies the latest value.
        intercept(float): Constant term. Default: 0.
    """
    weights: tuple
    intercept: float = 0.0

    def __post_init__(self):
        weights = tuple(
            float(w) for w in np.asarray(self.weights, dtype=np.float64)
            .reshape(-1))
        if len(weights) < 1:
            raise ParameterError("a predictor needs order >= 1")
        if not all(math.isfinite(w) for w in weights) or not math.isfinite(
                float(self.intercept)):
            raise ParameterError("predictor parameters must be finite")
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'intercept', float(self.intercept))

    @property
    def order(self):
        return len(self.weights)

    @classmethod
    def constant(cls, value, order=1):
        return cls((0.0, ) * order, value)

    @classmethod
    def persistence(cls):
        return cls((1.0, ), 0.0)

    def to_dict(self):
        return {
            "weights": list(self.weights),
            "intercept": self.intercept,
            "order": self.order
        }

    @classmethod
    def from_dict(cls, d):
        predictor = cls(tuple(d["weights"]), d.get("intercept", 0.0))
        if "order" in d and int(d["order"]) != predictor.order:
            raise ParameterError("order {} does not match {} weights".format(
                d["order"], predictor.order))
        return predictor


def predict(g, prefix):
    """
    Prediction of `g` from a history prefix Y_1..Y_i.
    Args:
        g(Predictor): The predictor.
        prefix(sequence<float>): History, at least g.order values.
    Returns:
        float: The prediction.
    """
    prefix = np.asarray(prefix, dtype=np.float64).reshape(-1)
    if prefix.size < g.order:
        raise InsufficientHistoryError(
            "order {} predictor needs {} values, got {}".format(
                g.order, g.order, prefix.size))
    latest = prefix[::-1][:g.order]
    return g.intercept + float(np.dot(np.asarray(g.weights), latest))


def evaluable_count(n, order, horizon):
    """Number of indices i = order..n-horizon."""
    return n - horizon - order + 1


def design_matrix(values, order, horizon):
    """
    Lags and targets of every evaluable index.
    Args:
        values(numpy.ndarray): Paths with shape (..., n).
        order(int): History length p.
        horizon(int): Prediction horizon h >= 1.
    Returns:
        tuple: lags with shape (..., m, p) holding (Y_i, .., Y_{i-p+1}) and
               targets with shape (..., m) holding Y_{i+h}, for i = p..n-h.
    """
    values = np.asarray(values, dtype=np.float64)
    if int(horizon) != horizon or horizon < 1:
        raise ArgumentError("horizon must be a positive integer, got {}".
                            format(horizon))
    n = values.shape[-1]
    m = evaluable_count(n, order, horizon)
    if m < 1:
        raise InsufficientDataError(
            "path of length {} has no evaluable index for order {} and "
            "horizon {}".format(n, order, horizon))
    windows = sliding_window_view(values, order, axis=-1)
    lags = windows[..., :m, ::-1]
    targets = values[..., order - 1 + horizon:]
    return lags, targets
