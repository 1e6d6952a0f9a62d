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
"""Monte Carlo estimates of E[sup_h (R(h) - R_n(h))] for finite classes."""

import math
import logging
from dataclasses import dataclass

import numpy as np

from ..common import (get_logger, trial_map, derive_seed, ArgumentError,
                      UnsupportedError)
from ..process import simulate_batch, tangent_batch
from ..hypothesis import (HypothesisClassBase, member_risk_samples,
                          training_errors, design_matrix)

__all__ = [
    'QnEstimate', 'RiskOracle', 'risk_oracle', 'expected_qn_mc',
    'tangent_qn_check', 'require_finite', 'MIN_QN_TRIALS', 'ORACLE_TRIALS'
]

_logger = get_logger(__name__, level=logging.INFO)

MIN_QN_TRIALS = 500
ORACLE_TRIALS = 10**5


@dataclass(frozen=True)
class QnEstimate(object):
    """
    Args:
        mean(float): Estimated E[sup_h (R(h) - R_n(h))].
        stderr(float): Combined standard error, oracle uncertainty included.
        trials(int): Training paths.
        risk_oracle_trials(int): Samples behind each member risk, 0 when no
                                 oracle is involved.
    """
    mean: float
    stderr: float
    trials: int
    risk_oracle_trials: int

    def to_dict(self):
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "trials": self.trials,
            "risk_oracle_trials": self.risk_oracle_trials
        }


@dataclass(frozen=True)
class RiskOracle(object):
    """Per-member Monte Carlo risks R(g) on shared paths."""
    risks: np.ndarray
    stderrs: np.ndarray
    trials: int
    seed: int

    def to_dict(self):
        return {
            "risks": self.risks.tolist(),
            "stderrs": self.stderrs.tolist(),
            "trials": self.trials,
            "seed": self.seed
        }


def require_finite(hclass):
    if not isinstance(hclass, HypothesisClassBase):
        raise ArgumentError("expected a hypothesis class")
    if not hclass.is_finite:
        raise UnsupportedError(
            "exact suprema need a finite class, got '{}'".format(hclass.KIND))


def risk_oracle(hclass,
                spec,
                n,
                horizon=1,
                trials=ORACLE_TRIALS,
                root_seed=0,
                threads=1):
    """
    Estimate R(g) for every member of a finite class. The draws use
    derive_seed(root_seed, "oracle"), independent of the training paths.
    Returns:
        RiskOracle: Risks and standard errors, one per member.
    """
    require_finite(hclass)
    if int(trials) != trials or trials < 2:
        raise ArgumentError("oracle trials must be an integer >= 2")
    seed = derive_seed(root_seed, "oracle")
    weights, intercepts = hclass.member_arrays()
    samples = member_risk_samples(weights, intercepts, hclass.loss, spec, n,
                                  horizon, int(trials), seed, threads)
    risks = samples.mean(axis=0)
    stderrs = samples.std(axis=0, ddof=1) / math.sqrt(samples.shape[0])
    _logger.info("risk oracle - members: {}; trials: {}; risks: {}".format(
        risks.size, trials, np.round(risks, 6).tolist()))
    return RiskOracle(risks, stderrs, int(trials), seed)


def _gap_estimate(gaps, trials, oracle_trials, oracle_stderr=0.0):
    se = float(gaps.std(ddof=1) / math.sqrt(gaps.size))
    return QnEstimate(
        mean=float(gaps.mean()),
        stderr=math.sqrt(se**2 + oracle_stderr**2),
        trials=int(trials),
        risk_oracle_trials=int(oracle_trials))


def expected_qn_mc(hclass,
                   spec,
                   n,
                   trials,
                   risk_oracle_trials=ORACLE_TRIALS,
                   root_seed=0,
                   horizon=1,
                   threads=1,
                   oracle=None):
    """
    Estimate E[Q_n] = E[sup_g (R(g) - R_n(g))] for a finite class.
    Member risks come from `risk_oracle`; each trial then simulates a
    training path and takes the exact supremum over members.
    Args:
        hclass(FiniteClass): The class.
        spec(ProcessSpec): The law.
        n(int): Training length.
        trials(int): Training paths, >= 500.
        risk_oracle_trials(int): Samples per member risk. Default: 10**5.
        root_seed(int): Experiment seed. Default: 0.
        horizon(int): Prediction horizon. Default: 1.
        threads(int): Worker threads. Default: 1.
        oracle(RiskOracle|None): Precomputed member risks. Default: None.
    Returns:
        QnEstimate: Mean gap; its stderr adds the largest oracle stderr in quadrature.
    """
    require_finite(hclass)
    if int(trials) != trials or trials < MIN_QN_TRIALS:
        raise ArgumentError("trials must be an integer >= {}, got {}".format(
            MIN_QN_TRIALS, trials))
    if oracle is None:
        oracle = risk_oracle(hclass, spec, n, horizon, risk_oracle_trials,
                             root_seed, threads)
    weights, intercepts = hclass.member_arrays()
    seed = derive_seed(root_seed, "paths")
    support = spec.support()

    def chunk_gaps(indices):
        _, values = simulate_batch(spec, n, seed, indices)
        errors = training_errors(weights, intercepts, hclass.loss, values,
                                 horizon, support)
        return (oracle.risks[None, :] - errors).max(axis=1)

    gaps = trial_map(chunk_gaps, int(trials), threads, chunk_size=1024)
    estimate = _gap_estimate(gaps, trials, oracle.trials,
                             float(oracle.stderrs.max()))
    _logger.info("E[Q_n] - kind: {}; n: {}; trials: {}; mean: {}; stderr: {}".
                 format(spec.kind, n, trials, estimate.mean, estimate.stderr))
    return estimate


def tangent_qn_check(hclass, spec, n, trials, root_seed=0, horizon=1,
                     threads=1):
    """
    Estimate E[sup_g ((1/m) sum_i h(z'_i) - (1/m) sum_i h(z_i))] with z'_i
    built from the tangent sequence: the target Y_{i+h} is replaced by Y'_{i+h}
    drawn from its law given Y_1..Y_{i+h-1}, the inputs stay the same.
    It bounds `expected_qn_mc` from above when every member risk equals the
    path average of its conditional risks, as for IID data. For dependent laws
    R(g) is the risk at step n + h and the order can reverse.
    Returns:
        QnEstimate: with risk_oracle_trials = 0.
    """
    require_finite(hclass)
    if int(trials) != trials or trials < 2:
        raise ArgumentError("trials must be an integer >= 2")
    weights, intercepts = hclass.member_arrays()
    seed = derive_seed(root_seed, "paths")
    support = spec.support()
    p = hclass.order

    def chunk_gaps(indices):
        anchors, values = simulate_batch(spec, n, seed, indices)
        tangent = tangent_batch(spec, anchors, values, seed, indices)
        lags, targets = design_matrix(values, p, horizon)
        ghost = tangent[:, p - 1 + horizon:]
        preds = np.matmul(lags, weights.T) + intercepts
        diff = (hclass.loss.evaluate(ghost[..., None], preds, support) -
                hclass.loss.evaluate(targets[..., None], preds, support))
        return diff.mean(axis=1).max(axis=1)

    gaps = trial_map(chunk_gaps, int(trials), threads, chunk_size=1024)
    estimate = _gap_estimate(gaps, trials, 0)
    _logger.info("tangent gap - kind: {}; n: {}; trials: {}; mean: {}".format(
        spec.kind, n, trials, estimate.mean))
    return estimate
