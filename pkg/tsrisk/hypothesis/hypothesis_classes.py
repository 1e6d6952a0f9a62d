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
"""Finite and norm-ball classes of autoregressive predictors."""

import math
import itertools

import numpy as np

from ..core import Registry
from ..common import ParameterError
from .loss import LossSpec
from .predictor import Predictor

__all__ = [
    'HYPOTHESIS_CLASSES', 'HypothesisClassBase', 'FiniteClass',
    'LinearBallClass', 'L1', 'L2', 'class_from_dict'
]

HYPOTHESIS_CLASSES = Registry('hypothesis class')

L1 = 'l1'
L2 = 'l2'

# per-axis points of the ball grid when order > 2
COARSE_POINTS = 9


class HypothesisClassBase(object):
    """
    A set of predictors sharing one loss.
    Args:
        loss(LossSpec): Loss of the induced class H = {l(., g(.))}.
    """
    KIND = None

    def __init__(self, loss=None):
        if loss is None:
            loss = LossSpec()
        if isinstance(loss, dict):
            loss = LossSpec.from_dict(loss)
        if not isinstance(loss, LossSpec):
            raise ParameterError("loss must be a LossSpec")
        self.loss = loss

    @property
    def order(self):
        raise NotImplementedError('Abstract method.')

    @property
    def is_finite(self):
        return False

    def member_arrays(self):
        """
        Enumerated members as arrays.
        Returns:
            tuple: weights with shape (K, order) and intercepts with shape (K,).
        """
        raise NotImplementedError('Abstract method.')

    def members(self):
        weights, intercepts = self.member_arrays()
        return [Predictor(tuple(w), c) for w, c in zip(weights, intercepts)]

    def prediction_range(self, support):
        """Interval holding every member's prediction on support-valued lags."""
        raise NotImplementedError('Abstract method.')

    def loss_max(self, support):
        return self.loss.loss_max(support, self.prediction_range(support))

    def to_dict(self):
        raise NotImplementedError('Abstract method.')


@HYPOTHESIS_CLASSES.register
class FiniteClass(HypothesisClassBase):
    """
    Explicit list of predictors. Members of lower order are padded with zero
    weights to the largest order, which leaves their predictions unchanged.
    Args:
        members(list<Predictor>): Non-empty list.
        loss(LossSpec): The loss.
    """
    KIND = 'finite'

    def __init__(self, members, loss=None):
        super(FiniteClass, self).__init__(loss)
        members = [
            m if isinstance(m, Predictor) else Predictor.from_dict(m)
            for m in members
        ]
        if len(members) == 0:
            raise ParameterError("a finite class needs at least one member")
        self._members = tuple(members)
        p = max(m.order for m in members)
        self._weights = np.zeros((len(members), p))
        for k, m in enumerate(members):
            self._weights[k, :m.order] = m.weights
        self._intercepts = np.array([m.intercept for m in members])
        self._weights.setflags(write=False)
        self._intercepts.setflags(write=False)

    def __len__(self):
        return len(self._members)

    @property
    def order(self):
        return self._weights.shape[1]

    @property
    def is_finite(self):
        return True

    def member_arrays(self):
        return self._weights, self._intercepts

    def members(self):
        return list(self._members)

    def prediction_range(self, support):
        lo, hi = support
        w = self._weights
        low = np.minimum(w * lo, w * hi).sum(axis=1) + self._intercepts
        high = np.maximum(w * lo, w * hi).sum(axis=1) + self._intercepts
        return float(low.min()), float(high.max())

    @classmethod
    def ar_coefficients(cls, coefficients, loss=None, intercept=0.0):
        """Order-1 class {y_hat = theta * Y_i + intercept : theta in coefficients}."""
        return cls([Predictor((t, ), intercept) for t in coefficients], loss)

    @classmethod
    def constants(cls, values, loss=None):
        return cls([Predictor.constant(v) for v in values], loss)

    def to_dict(self):
        return {
            "type": self.KIND,
            "members": [m.to_dict() for m in self._members],
            "loss": self.loss.to_dict()
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["members"], d.get("loss"))


@HYPOTHESIS_CLASSES.register
class LinearBallClass(HypothesisClassBase):
    """
    {y_hat = intercept + w . x : ||w|| <= radius} for order-p lag vectors x.
    Args:
        order(int): Number of lags p >= 1.
        radius(float): Ball radius B > 0.
        norm(str): 'l1' or 'l2'. Default: 'l1'.
        intercept(float): Fixed intercept. Default: 0.
        loss(LossSpec): The loss.
        grid_points(int): Points per axis of the enumeration grid used for
                          p <= 2. Default: 64.
    """
    KIND = 'linear_ball'

    def __init__(self,
                 order,
                 radius,
                 norm=L1,
                 intercept=0.0,
                 loss=None,
                 grid_points=64):
        super(LinearBallClass, self).__init__(loss)
        if isinstance(order, bool) or int(order) != order or order < 1:
            raise ParameterError("order must be a positive integer, got {}".
                                 format(order))
        radius = float(radius)
        if not math.isfinite(radius) or radius <= 0:
            raise ParameterError("radius must be finite and > 0, got {}".
                                 format(radius))
        norm = str(norm).lower()
        if norm not in (L1, L2):
            raise ParameterError("norm must be '{}' or '{}', got '{}'".format(
                L1, L2, norm))
        if int(grid_points) < 2:
            raise ParameterError("grid_points must be >= 2")
        self._order = int(order)
        self.radius = radius
        self.norm = norm
        self.intercept = float(intercept)
        self.grid_points = int(grid_points)
        self._grid = None

    @property
    def order(self):
        return self._order

    def norm_of(self, weights):
        weights = np.asarray(weights, dtype=np.float64)
        if self.norm == L1:
            return np.abs(weights).sum(axis=-1)
        return np.sqrt((weights**2).sum(axis=-1))

    def grid(self):
        """
        Deterministic grid of the ball: the product of `points` evenly spaced
        values in [-B, B] per axis, restricted to the ball, in lexicographic
        order. `points` is grid_points for p <= 2 and 9 otherwise.
        Returns:
            numpy.ndarray: Weights with shape (K, order).
        """
        if self._grid is None:
            points = self.grid_points if self._order <= 2 else COARSE_POINTS
            axis = np.linspace(-self.radius, self.radius, points)
            cube = np.array(
                list(itertools.product(axis, repeat=self._order)),
                dtype=np.float64).reshape(-1, self._order)
            keep = self.norm_of(cube) <= self.radius * (1.0 + 1e-12)
            self._grid = cube[keep]
            self._grid.setflags(write=False)
        return self._grid

    def member_arrays(self):
        grid = self.grid()
        return grid, np.full(grid.shape[0], self.intercept)

    def dual_norm(self, vectors):
        """Dual norm along the last axis: L-inf for an L1 ball, L2 for an L2 ball."""
        vectors = np.asarray(vectors, dtype=np.float64)
        if self.norm == L1:
            return np.abs(vectors).max(axis=-1)
        return np.sqrt((vectors**2).sum(axis=-1))

    def prediction_range(self, support):
        lo, hi = support
        x = np.full(self._order, max(abs(lo), abs(hi)))
        reach = self.radius * float(self.dual_norm(x))
        return self.intercept - reach, self.intercept + reach

    def to_dict(self):
        return {
            "type": self.KIND,
            "order": self._order,
            "radius": self.radius,
            "norm": self.norm,
            "intercept": self.intercept,
            "grid_points": self.grid_points,
            "loss": self.loss.to_dict()
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            d["order"],
            d["radius"],
            norm=d.get("norm", L1),
            intercept=d.get("intercept", 0.0),
            loss=d.get("loss"),
            grid_points=d.get("grid_points", 64))


def class_from_dict(d):
    """
    Build a hypothesis class from its JSON object.
    Args:
        d(dict): Object with a "type" key naming a registered class.
    Returns:
        HypothesisClassBase: The class.
    """
    if not isinstance(d, dict) or "type" not in d:
        raise ParameterError("a hypothesis class needs a 'type' field")
    return HYPOTHESIS_CLASSES.lookup(d["type"]).from_dict(d)
