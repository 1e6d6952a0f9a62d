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
"""Rademacher complexity of predictor classes and of their loss classes."""

import math
import logging
from dataclasses import dataclass

import numpy as np

from ..common import get_logger, trial_map, RngStream, ArgumentError
from ..common.rng import SUBSTREAM_SIGMA
from ..process import SamplePath, simulate_batch
from ..hypothesis import (HypothesisClassBase, LinearBallClass, design_matrix,
                          evaluable_count)

__all__ = [
    'RademacherEstimate', 'TARGET_G', 'TARGET_H', 'EXHAUSTIVE_LIMIT',
    'sign_vectors', 'member_evaluations', 'sup_correlation',
    'empirical_rademacher', 'expected_rademacher', 'lipschitz_contract'
]

_logger = get_logger(__name__, level=logging.INFO)

TARGET_G = 'G'
TARGET_H = 'H'

# largest number of sign vectors enumerated instead of sampled
EXHAUSTIVE_LIMIT = 4096


@dataclass(frozen=True)
class RademacherEstimate(object):
    """
    Args:
        mean(float): Estimated complexity, >= 0.
        stderr(float): Monte Carlo standard error, 0 for an exhaustive sign average
                       on one path.
        sigma_draws(int): Sign vectors per path (2**m when enumerated).
        path_draws(int): Paths averaged over; 0 means conditional on one path.
        exhaustive(bool): Whether the signs were enumerated.
    """
    mean: float
    stderr: float
    sigma_draws: int
    path_draws: int = 0
    exhaustive: bool = False

    def to_dict(self):
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "sigma_draws": self.sigma_draws,
            "path_draws": self.path_draws,
            "exhaustive": self.exhaustive
        }


def _check_target(target):
    target = str(target).upper()
    if target not in (TARGET_G, TARGET_H):
        raise ArgumentError("target must be 'G' or 'H', got '{}'".format(
            target))
    return target


def sign_vectors(m):
    """
    All 2**m vectors in {-1, +1}^m, row k holding the binary digits of k.
    Returns:
        numpy.ndarray: shape (2**m, m)
    """
    if m < 1:
        raise ArgumentError("m must be positive")
    codes = np.arange(1 << m, dtype=np.int64)[:, None]
    bits = (codes >> np.arange(m - 1, -1, -1, dtype=np.int64)) & 1
    return (bits * 2 - 1).astype(np.float64)


def member_evaluations(hclass, values, horizon, target, support):
    """
    v_i(g) for every evaluable index and enumerated member: the prediction
    g(Y_1^i) for the G target, the loss l(Y_{i+h}, g(Y_1^i)) for the H target.
    Returns:
        numpy.ndarray: shape (m, K)
    """
    weights, intercepts = hclass.member_arrays()
    lags, targets = design_matrix(values, hclass.order, horizon)
    preds = np.matmul(lags, weights.T) + intercepts
    if target == TARGET_G:
        return preds
    return hclass.loss.evaluate(targets[..., None], preds, support)


def _linear_ball_sup(hclass, lags, sigma):
    # sup_w |c a + w.s| = |c a| + B ||s||_*, a = mean(sigma), s = sigma X / m
    m = lags.shape[0]
    s = np.matmul(sigma, lags) / m
    a = sigma.sum(axis=-1) / m
    return np.abs(hclass.intercept * a) + hclass.radius * hclass.dual_norm(s)


def _sup_many(hclass, values, sigma, horizon, target, support):
    """sup_correlation for a (S, m) sign matrix on one path, shape (S,)."""
    if target == TARGET_G and isinstance(hclass, LinearBallClass):
        lags, _ = design_matrix(values, hclass.order, horizon)
        return _linear_ball_sup(hclass, lags, sigma)
    v = member_evaluations(hclass, values, horizon, target, support)
    corr = np.matmul(sigma, v) / v.shape[0]
    return np.abs(corr).max(axis=-1)


def sup_correlation(hclass, path, sigma, horizon=1, target=TARGET_G):
    """
    sup over the class of |(1/m) sum_i sigma_i v_i(g)|.
    Args:
        hclass(HypothesisClassBase): The class.
        path(SamplePath): The conditioning path.
        sigma(sequence<float>): Signs, one per evaluable index. A (S, m) matrix
                                evaluates S sign vectors at once.
        horizon(int): Prediction horizon. Default: 1.
        target(str): 'G' for predictions, 'H' for losses. Default: 'G'.
    Returns:
        float|numpy.ndarray: The supremum, one per sign vector for a matrix.
    """
    if not isinstance(hclass, HypothesisClassBase):
        raise ArgumentError("expected a hypothesis class")
    if not isinstance(path, SamplePath):
        raise ArgumentError("expected a SamplePath")
    target = _check_target(target)
    sigma = np.asarray(sigma, dtype=np.float64)
    single = sigma.ndim == 1
    sigma = np.atleast_2d(sigma)
    m = evaluable_count(path.n, hclass.order, horizon)
    if sigma.shape[-1] != m:
        raise ArgumentError("sigma has length {}, expected {} evaluable "
                            "indices".format(sigma.shape[-1], m))
    sups = _sup_many(hclass, path.values, sigma, horizon, target,
                     path.spec.support())
    return float(sups[0]) if single else sups


def _use_exhaustive(m, exhaustive):
    if exhaustive is None:
        return (1 << min(m, 63)) <= EXHAUSTIVE_LIMIT
    if exhaustive and (1 << min(m, 63)) > EXHAUSTIVE_LIMIT:
        raise ArgumentError("cannot enumerate 2**{} sign vectors".format(m))
    return bool(exhaustive)


def _draw_signs(stream, draws, m):
    gen = stream.child(SUBSTREAM_SIGMA).generator()
    return (gen.integers(0, 2, size=(draws, m)) * 2 - 1).astype(np.float64)


def _path_complexity(hclass, values, signs, horizon, target, support):
    """2 * sign-average of the sup, and its standard error."""
    sups = 2.0 * _sup_many(hclass, values, signs, horizon, target, support)
    if sups.size > 1:
        return float(sups.mean()), float(sups.std(ddof=1) / math.sqrt(
            sups.size))
    return float(sups.mean()), 0.0


def empirical_rademacher(hclass,
                         path,
                         sigma_draws,
                         stream,
                         horizon=1,
                         target=TARGET_G,
                         exhaustive=None):
    """
    2 E_sigma[sup_g |(1/m) sum_i sigma_i v_i(g)| | path].
    Args:
        hclass(HypothesisClassBase): The class.
        path(SamplePath): The conditioning path.
        sigma_draws(int): Sign vectors to sample, >= 1.
        stream(RngStream): Source of the signs (its sign substream is used).
        horizon(int): Prediction horizon. Default: 1.
        target(str): 'G' or 'H'. Default: 'G'.
        exhaustive(bool|None): Enumerate all 2**m sign vectors. None enumerates
                               when 2**m <= 4096. Default: None.
    Returns:
        RademacherEstimate: The conditional complexity (path_draws = 0).
    """
    if int(sigma_draws) != sigma_draws or sigma_draws < 1:
        raise ArgumentError("sigma_draws must be a positive integer")
    if not isinstance(path, SamplePath):
        raise ArgumentError("expected a SamplePath")
    target = _check_target(target)
    m = evaluable_count(path.n, hclass.order, horizon)
    if m < 1:
        # raises the insufficient-data error
        design_matrix(path.values, hclass.order, horizon)
    enumerate_all = _use_exhaustive(m, exhaustive)
    if enumerate_all:
        signs = sign_vectors(m)
    else:
        signs = _draw_signs(stream, int(sigma_draws), m)
    mean, stderr = _path_complexity(hclass, path.values, signs, horizon,
                                    target, path.spec.support())
    if enumerate_all:
        stderr = 0.0
    return RademacherEstimate(
        mean=mean,
        stderr=stderr,
        sigma_draws=signs.shape[0],
        path_draws=0,
        exhaustive=enumerate_all)


def expected_rademacher(hclass,
                        spec,
                        n,
                        path_draws,
                        sigma_draws,
                        root_seed,
                        horizon=1,
                        target=TARGET_G,
                        threads=1,
                        exhaustive=None):
    """
    Average of `empirical_rademacher` over independently simulated paths.
    Path t is simulated on stream t and its signs come from the sign
    substream of the same stream.
    Returns:
        RademacherEstimate: mean and standard error across path draws.
    """
    if int(path_draws) != path_draws or path_draws < 1:
        raise ArgumentError("path_draws must be a positive integer")
    if int(sigma_draws) != sigma_draws or sigma_draws < 1:
        raise ArgumentError("sigma_draws must be a positive integer")
    target = _check_target(target)
    m = evaluable_count(n, hclass.order, horizon)
    if m < 1:
        design_matrix(np.zeros(n), hclass.order, horizon)
    enumerate_all = _use_exhaustive(m, exhaustive)
    fixed_signs = sign_vectors(m) if enumerate_all else None
    support = spec.support()

    def chunk_complexity(indices):
        _, values = simulate_batch(spec, n, root_seed, indices)
        out = np.empty((indices.size, 2))
        for r, index in enumerate(indices.tolist()):
            signs = fixed_signs
            if signs is None:
                signs = _draw_signs(
                    RngStream(root_seed, index), int(sigma_draws), m)
            out[r] = _path_complexity(hclass, values[r], signs, horizon,
                                      target, support)
        return out

    per_path = trial_map(
        chunk_complexity, int(path_draws), threads, chunk_size=256)
    means = per_path[:, 0]
    if means.size > 1:
        stderr = float(means.std(ddof=1) / math.sqrt(means.size))
    else:
        stderr = float(per_path[0, 1])
    estimate = RademacherEstimate(
        mean=float(means.mean()),
        stderr=stderr,
        sigma_draws=(1 << m) if enumerate_all else int(sigma_draws),
        path_draws=int(path_draws),
        exhaustive=enumerate_all)
    _logger.info("rademacher - target: {}; kind: {}; n: {}; paths: {}; "
                 "mean: {}; stderr: {}".format(target, spec.kind, n,
                                               path_draws, estimate.mean,
                                               estimate.stderr))
    return estimate


def lipschitz_contract(r_g, phi):
    """
    Upper bound 2 phi R(G) on the complexity of the loss class of a
    phi-Lipschitz loss.
    """
    r_g, phi = float(r_g), float(phi)
    if r_g < 0 or not math.isfinite(r_g):
        raise ArgumentError("r_g must be finite and >= 0, got {}".format(r_g))
    if phi <= 0 or not math.isfinite(phi):
        raise ArgumentError("phi must be finite and > 0, got {}".format(phi))
    return 2.0 * phi * r_g
