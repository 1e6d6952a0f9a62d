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
"""Training error, Monte Carlo prediction risk and empirical risk minimization."""

import math
import logging
from dataclasses import dataclass

import numpy as np

from ..common import get_logger, trial_map, ArgumentError, InsufficientHistoryError
from ..process import SamplePath, simulate_batch, continue_batch
from .predictor import Predictor, design_matrix
from .hypothesis_classes import HypothesisClassBase, LinearBallClass, L1

__all__ = [
    'RiskEstimate', 'training_error', 'training_errors', 'member_risk_samples',
    'true_risk_mc', 'erm_fit', 'erm_indices', 'MIN_RISK_TRIALS'
]

_logger = get_logger(__name__, level=logging.INFO)

MIN_RISK_TRIALS = 100
_CHUNK_VALUES = 1 << 21


@dataclass(frozen=True)
class RiskEstimate(object):
    """
    Monte Carlo estimate of E[l(Y_{n+h}, g(Y_1^n))].
    Args:
        value(float): Mean loss over trials.
        stderr(float): Sample standard deviation / sqrt(trials).
        trials(int): Number of trials.
    """
    value: float
    stderr: float
    trials: int

    def to_dict(self):
        return {
            "value": self.value,
            "stderr": self.stderr,
            "trials": self.trials
        }


def _as_arrays(g):
    return (np.asarray(g.weights, dtype=np.float64)[None, :],
            np.array([g.intercept]))


def training_errors(weights, intercepts, loss, values, horizon, support):
    """
    Training errors of several predictors on one or many paths.
    Args:
        weights(numpy.ndarray): Member weights, shape (K, p).
        intercepts(numpy.ndarray): Member intercepts, shape (K,).
        loss(LossSpec): The loss.
        values(numpy.ndarray): Paths, shape (..., n).
        horizon(int): Prediction horizon.
        support(tuple): Data range passed to the loss.
    Returns:
        numpy.ndarray: Mean loss over the evaluable indices, shape (..., K).
    """
    weights = np.asarray(weights, dtype=np.float64)
    lags, targets = design_matrix(values, weights.shape[1], horizon)
    preds = np.matmul(lags, weights.T) + intercepts
    losses = loss.evaluate(targets[..., None], preds, support)
    return losses.mean(axis=-2)


def training_error(g, loss, path, horizon=1):
    """
    (1/m) sum_i l(Y_{i+h}, g(Y_1^i)) over the m evaluable indices i = p..n-h.
    Args:
        g(Predictor): The predictor.
        loss(LossSpec): The loss.
        path(SamplePath): Observed path.
        horizon(int): Prediction horizon. Default: 1.
    Returns:
        float: The training error.
    """
    if not isinstance(path, SamplePath):
        raise ArgumentError("expected a SamplePath")
    weights, intercepts = _as_arrays(g)
    errors = training_errors(weights, intercepts, loss, path.values, horizon,
                             path.spec.support())
    return float(errors[0])


def _risk_chunk_size(spec, n, members):
    width = (n + spec.burn_in) * max(members, 1)
    return max(1, min(4096, _CHUNK_VALUES // width))


def member_risk_samples(weights,
                        intercepts,
                        loss,
                        spec,
                        n,
                        horizon,
                        trials,
                        root_seed,
                        threads=1):
    """
    Per-trial losses l(Y_{n+h}, g(Y_1^n)) of several predictors on shared paths.
    Trial t simulates its path on stream t and the continuation on the
    continuation substream of the same stream.
    Returns:
        numpy.ndarray: Losses with shape (trials, K).
    """
    weights = np.asarray(weights, dtype=np.float64)
    intercepts = np.asarray(intercepts, dtype=np.float64)
    p = weights.shape[1]
    if n < p:
        raise InsufficientHistoryError(
            "order {} predictors need n >= {}, got {}".format(p, p, n))
    if int(horizon) != horizon or horizon < 1:
        raise ArgumentError("horizon must be a positive integer")
    support = spec.support()

    def chunk_losses(indices):
        _, values = simulate_batch(spec, n, root_seed, indices)
        future = continue_batch(spec, values[:, -1], int(horizon), root_seed,
                                indices)
        lags = values[:, ::-1][:, :p]
        preds = np.matmul(lags, weights.T) + intercepts
        return loss.evaluate(future[:, -1:], preds, support)

    return trial_map(
        chunk_losses,
        int(trials),
        threads,
        chunk_size=_risk_chunk_size(spec, n, weights.shape[0]))


def true_risk_mc(g,
                 loss,
                 spec,
                 n,
                 horizon=1,
                 trials=10000,
                 root_seed=0,
                 threads=1):
    """
    Estimate the prediction risk R(g) = E[l(Y_{n+h}, g(Y_1^n))].
    Args:
        g(Predictor): The predictor.
        loss(LossSpec): The loss.
        spec(ProcessSpec): The law of the data.
        n(int): Observed length.
        horizon(int): Prediction horizon. Default: 1.
        trials(int): Number of trials, >= 100. Default: 10000.
        root_seed(int): Experiment seed. Default: 0.
        threads(int): Worker threads. Default: 1.
    Returns:
        RiskEstimate: The estimate.
    """
    if int(trials) != trials or trials < MIN_RISK_TRIALS:
        raise ArgumentError("trials must be an integer >= {}, got {}".format(
            MIN_RISK_TRIALS, trials))
    weights, intercepts = _as_arrays(g)
    samples = member_risk_samples(weights, intercepts, loss, spec, n, horizon,
                                  trials, root_seed, threads)[:, 0]
    estimate = RiskEstimate(
        value=float(samples.mean()),
        stderr=float(samples.std(ddof=1) / math.sqrt(samples.size)),
        trials=int(samples.size))
    _logger.info("risk - kind: {}; n: {}; h: {}; trials: {}; risk: {}".format(
        spec.kind, n, horizon, trials, estimate.value))
    return estimate


def erm_indices(weights, intercepts, loss, values, horizon, support):
    """
    Index of the training-error minimizer per path; ties go to the first member.
    Returns:
        tuple: indices with shape (...) and the full error table (..., K).
    """
    errors = training_errors(weights, intercepts, loss, values, horizon,
                             support)
    return np.argmin(errors, axis=-1), errors


def _coordinate_descent(hclass, values, horizon, support):
    """
    Projected coordinate search over the ball for order > 2, started from the
    best point of the coarse grid.
    """
    p = hclass.order

    def errors_of(candidates):
        return training_errors(candidates, np.full(candidates.shape[0],
                                                   hclass.intercept),
                               hclass.loss, values, horizon, support)

    grid = hclass.grid()
    grid_errors = errors_of(grid)
    start = int(np.argmin(grid_errors))
    w = np.array(grid[start])
    best = float(grid_errors[start])
    for sweep in range(100):
        improved = False
        for j in range(p):
            others = np.delete(w, j)
            if hclass.norm == L1:
                limit = hclass.radius - np.abs(others).sum()
            else:
                limit = math.sqrt(max(hclass.radius**2 - (others**2).sum(),
                                      0.0))
            limit = max(limit, 0.0)
            candidates = np.repeat(w[None, :], hclass.grid_points, axis=0)
            candidates[:, j] = np.linspace(-limit, limit, hclass.grid_points)
            errors = errors_of(candidates)
            k = int(np.argmin(errors))
            if errors[k] < best - 1e-15:
                w = candidates[k]
                best = float(errors[k])
                improved = True
        if not improved:
            break
    _logger.debug("coordinate search - sweeps: {}; error: {}".format(
        sweep + 1, best))
    return Predictor(tuple(w), hclass.intercept)


def erm_fit(hclass, path, horizon=1):
    """
    Empirical risk minimizer of `hclass` on `path`.
    Finite classes are searched exhaustively, linear balls of order <= 2 over
    their grid. Larger linear balls start from the best coarse-grid point and
    refine it by projected coordinate search.
    Args:
        hclass(HypothesisClassBase): The class.
        path(SamplePath): Training path.
        horizon(int): Prediction horizon. Default: 1.
    Returns:
        Predictor: The minimizer; ties go to the first enumerated member.
    """
    if not isinstance(hclass, HypothesisClassBase):
        raise ArgumentError("expected a hypothesis class")
    if not isinstance(path, SamplePath):
        raise ArgumentError("expected a SamplePath")
    support = path.spec.support()
    if isinstance(hclass, LinearBallClass) and hclass.order > 2:
        return _coordinate_descent(hclass, path.values, horizon, support)
    weights, intercepts = hclass.member_arrays()
    k, errors = erm_indices(weights, intercepts, hclass.loss, path.values,
                            horizon, support)
    k = int(k)
    _logger.debug("erm - members: {}; selected: {}; error: {}".format(
        len(intercepts), k, errors[k]))
    if hclass.is_finite:
        return hclass.members()[k]
    return Predictor(tuple(weights[k]), intercepts[k])
