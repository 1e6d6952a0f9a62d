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

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .log_helper import get_logger
from .errors import ArgumentError

__all__ = ['trial_map', 'DEFAULT_CHUNK']

_logger = get_logger(__name__, level=logging.INFO)

DEFAULT_CHUNK = 2048


def trial_map(func, num_trials, threads=1, chunk_size=DEFAULT_CHUNK):
    """
    Evaluate `func` over trial indices 0..num_trials-1 in fixed chunks.
    The chunk boundaries do not depend on `threads`, and the per-chunk
    results are concatenated by trial index, so the output is bitwise the
    same for any thread count.
    Args:
        func(callable): Maps a 1-D int64 array of trial indices to an array
                        whose first axis has the same length.
        num_trials(int): Number of trials.
        threads(int): Worker threads. 1 runs inline. Default: 1.
        chunk_size(int): Trials per chunk. Default: 2048.
    Returns:
        numpy.ndarray: Concatenated results in trial order.
    """
    if num_trials < 1:
        raise ArgumentError("num_trials must be positive, got {}".format(
            num_trials))
    if threads is None or threads < 1:
        raise ArgumentError("threads must be >= 1, got {}".format(threads))
    chunks = [
        np.arange(
            start, min(start + chunk_size, num_trials), dtype=np.int64)
        for start in range(0, num_trials, chunk_size)
    ]
    _logger.debug("trial_map - trials: {}; chunks: {}; threads: {}".format(
        num_trials, len(chunks), threads))
    if threads == 1 or len(chunks) == 1:
        results = [func(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(func, chunks))
    return np.concatenate(results, axis=0)
