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
"""Seedable simulators, conditional continuation and tangent sequences.

All laws work on 2-D innovation arrays (one row per trial) so the single-path
operations and the batch operations used by Monte Carlo share one code path:
row t of a batch is bitwise identical to the single-path result on
RngStream(root_seed, t, substream).
"""

import logging

import numpy as np

from ..core import Registry
from ..common import (get_logger, RngStream, stream_generators, ArgumentError,
                      ConsistencyError)
from ..common.rng import SUBSTREAM_PATH, SUBSTREAM_CONTINUATION, SUBSTREAM_TANGENT
from .process_spec import ProcessSpec, SamplePath, IID, COPY, AR1

__all__ = [
    'PROCESSES', 'ProcessBase', 'IIDProcess', 'CopyProcess', 'AR1Process',
    'get_process', 'simulate', 'continue_path', 'tangent_sequence',
    'draw_innovations', 'simulate_batch', 'continue_batch', 'tangent_batch'
]

_logger = get_logger(__name__, level=logging.INFO)

PROCESSES = Registry('process')


def _check_count(name, value):
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ArgumentError("{} must be a positive integer, got {}".format(
            name, value))
    return int(value)


def ar_recursion(theta, start, innovations):
    """
    Iterate Y_t = theta * Y_{t-1} + eta_t along axis 1.
    Args:
        theta(float): AR coefficient.
        start(numpy.ndarray): Y_0 per row, shape (rows,).
        innovations(numpy.ndarray): eta, shape (rows, steps).
    Returns:
        numpy.ndarray: Y_1..Y_steps, shape (rows, steps).
    """
    out = np.empty_like(innovations)
    prev = np.asarray(start, dtype=np.float64)
    for t in range(innovations.shape[1]):
        prev = theta * prev + innovations[:, t]
        out[:, t] = prev
    return out


class ProcessBase(object):
    """Vectorized law of one process kind.
    """
    KIND = None
    MEANS_DEPEND_ON_N = True

    def __init__(self, spec):
        assert spec.kind == self.KIND, "{} cannot simulate '{}'".format(
            self.__class__.__name__, spec.kind)
        self.spec = spec

    def path_draws(self, n):
        """Innovations consumed by a path of length n."""
        raise NotImplementedError('Abstract method.')

    def build(self, innovations, n):
        """
        Turn innovations into paths.
        Returns:
            tuple: anchors with shape (rows,) and values with shape (rows, n).
        """
        raise NotImplementedError('Abstract method.')

    def sample_means(self, innovations, n):
        """Sample means of the paths built from `innovations`, shape (rows,)."""
        return self.build(innovations, n)[1].mean(axis=1)

    def continuation_draws(self, m):
        raise NotImplementedError('Abstract method.')

    def extend(self, last, innovations, m):
        """Values n+1..n+m given the last observed values, shape (rows, m)."""
        raise NotImplementedError('Abstract method.')

    def tangent_draws(self, n):
        raise NotImplementedError('Abstract method.')

    def tangent(self, anchors, values, innovations):
        """Draw Y'_i from the law of Y_i given the original Y_1..Y_{i-1}."""
        raise NotImplementedError('Abstract method.')


@PROCESSES.register
class IIDProcess(ProcessBase):
    KIND = IID

    def path_draws(self, n):
        return n

    def build(self, innovations, n):
        return np.zeros(innovations.shape[0]), innovations

    def continuation_draws(self, m):
        return m

    def extend(self, last, innovations, m):
        return innovations

    def tangent_draws(self, n):
        return n

    def tangent(self, anchors, values, innovations):
        return innovations


@PROCESSES.register
class CopyProcess(ProcessBase):
    KIND = COPY
    # the sample mean of a constant path is Y_1 for every n
    MEANS_DEPEND_ON_N = False

    def path_draws(self, n):
        return 1

    def build(self, innovations, n):
        return np.zeros(innovations.shape[0]), np.repeat(
            innovations[:, :1], n, axis=1)

    def sample_means(self, innovations, n):
        return innovations[:, 0].copy()

    def continuation_draws(self, m):
        return 0

    def extend(self, last, innovations, m):
        return np.repeat(np.asarray(last, dtype=np.float64)[:, None], m, axis=1)

    def tangent_draws(self, n):
        return 1

    def tangent(self, anchors, values, innovations):
        # Y'_1 is a fresh draw, Y'_i for i >= 2 is the point mass at Y_{i-1}
        out = np.repeat(values[:, :1], values.shape[1], axis=1)
        out[:, 0] = innovations[:, 0]
        return out


@PROCESSES.register
class AR1Process(ProcessBase):
    KIND = AR1

    def path_draws(self, n):
        return self.spec.burn_in + n

    def build(self, innovations, n):
        rows = innovations.shape[0]
        full = ar_recursion(self.spec.theta, np.zeros(rows), innovations)
        burn_in = self.spec.burn_in
        if burn_in > 0:
            anchors = full[:, burn_in - 1].copy()
        else:
            anchors = np.zeros(rows)
        return anchors, full[:, burn_in:]

    def continuation_draws(self, m):
        return m

    def extend(self, last, innovations, m):
        return ar_recursion(self.spec.theta, last, innovations)

    def tangent_draws(self, n):
        return n

    def tangent(self, anchors, values, innovations):
        prev = np.concatenate([anchors[:, None], values[:, :-1]], axis=1)
        return self.spec.theta * prev + innovations


def get_process(spec):
    """Instantiate the registered law for `spec.kind`."""
    if not isinstance(spec, ProcessSpec):
        raise ArgumentError("expected a ProcessSpec, got {}".format(
            type(spec).__name__))
    return PROCESSES.lookup(spec.kind)(spec)


def draw_innovations(spec, count, root_seed, indices, substream):
    """
    U(a, b) innovations, row r drawn from RngStream(root_seed, indices[r], substream).
    Returns:
        numpy.ndarray: shape (len(indices), count)
    """
    indices = np.asarray(indices, dtype=np.int64).reshape(-1)
    out = np.empty((indices.size, count), dtype=np.float64)
    if count == 0:
        return out
    gens = stream_generators(root_seed, indices.tolist(), substream)
    for r, gen in enumerate(gens):
        out[r] = gen.uniform(spec.a, spec.b, count)
    return out


def _row_innovations(spec, count, stream):
    if count == 0:
        return np.empty((1, 0))
    return stream.generator().uniform(spec.a, spec.b, count)[None, :]


def simulate(spec, n, stream):
    """
    Simulate Y_1..Y_n.
    Args:
        spec(ProcessSpec): The law.
        n(int): Path length, n >= 1.
        stream(RngStream): Variate source.
    Returns:
        SamplePath: The realized path.
    """
    n = _check_count("n", n)
    process = get_process(spec)
    innovations = _row_innovations(spec, process.path_draws(n), stream)
    anchors, values = process.build(innovations, n)
    return SamplePath(values[0], spec, stream.root_seed, stream.stream_index,
                      anchors[0])


def continue_path(path, m, stream):
    """
    Draw Y_{n+1}..Y_{n+m} from their law given the path.
    Args:
        path(SamplePath): The observed path.
        m(int): Number of further values, m >= 1.
        stream(RngStream): Variate source.
    Returns:
        SamplePath: The m new values; its anchor is Y_n.
    """
    m = _check_count("m", m)
    if not isinstance(path, SamplePath):
        raise ArgumentError("expected a SamplePath")
    process = get_process(path.spec)
    last = path.values[-1:]
    innovations = _row_innovations(path.spec,
                                   process.continuation_draws(m), stream)
    values = process.extend(last, innovations, m)
    return SamplePath(values[0], path.spec, stream.root_seed,
                      stream.stream_index, last[0], path.start + path.n)


def tangent_sequence(path, stream):
    """
    Y'_1..Y'_n where Y'_i follows the law of Y_i given the original Y_1..Y_{i-1},
    independently across i given the path.
    Args:
        path(SamplePath): The original path.
        stream(RngStream): Variate source for the tangent draws.
    Returns:
        SamplePath: The tangent sequence (same anchor).
    """
    if not isinstance(path, SamplePath):
        raise ArgumentError("expected a SamplePath")
    process = get_process(path.spec)
    innovations = _row_innovations(path.spec, process.tangent_draws(path.n),
                                   stream)
    values = process.tangent(
        np.array([path.anchor]), path.values[None, :], innovations)
    return SamplePath(values[0], path.spec, stream.root_seed,
                      stream.stream_index, path.anchor, path.start)


def simulate_batch(spec, n, root_seed, indices, substream=SUBSTREAM_PATH):
    """
    Batch form of `simulate`, one row per stream index.
    Returns:
        tuple: anchors with shape (rows,) and values with shape (rows, n).
    """
    n = _check_count("n", n)
    process = get_process(spec)
    innovations = draw_innovations(spec, process.path_draws(n), root_seed,
                                   indices, substream)
    return process.build(innovations, n)


def continue_batch(spec,
                   last,
                   m,
                   root_seed,
                   indices,
                   substream=SUBSTREAM_CONTINUATION):
    """Batch form of `continue_path` from the last values, shape (rows, m)."""
    m = _check_count("m", m)
    process = get_process(spec)
    innovations = draw_innovations(spec, process.continuation_draws(m),
                                   root_seed, indices, substream)
    return process.extend(np.asarray(last, dtype=np.float64), innovations, m)


def tangent_batch(spec,
                  anchors,
                  values,
                  root_seed,
                  indices,
                  substream=SUBSTREAM_TANGENT):
    """Batch form of `tangent_sequence`, shape like `values`."""
    process = get_process(spec)
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ConsistencyError("values must be a (rows, n) array")
    innovations = draw_innovations(spec,
                                   process.tangent_draws(values.shape[1]),
                                   root_seed, indices, substream)
    return process.tangent(
        np.asarray(anchors, dtype=np.float64), values, innovations)
