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
"""Counter-based random streams.

Every stream is a Philox bit generator whose 128-bit key packs
(root_seed, stream_index). Trial i of a Monte Carlo experiment draws from
stream_index = i, so the variates of a trial never depend on how trials are
scheduled over threads. The top 64-bit word of the Philox counter selects a
substream, giving disjoint blocks inside one stream for the path, its
continuation, its tangent sequence and the sign vectors.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError

__all__ = [
    'RngStream', 'derive_seed', 'stream_generators', 'SUBSTREAM_PATH',
    'SUBSTREAM_CONTINUATION', 'SUBSTREAM_TANGENT', 'SUBSTREAM_SIGMA'
]

_MASK64 = (1 << 64) - 1

SUBSTREAM_PATH = 0
SUBSTREAM_CONTINUATION = 1
SUBSTREAM_TANGENT = 2
SUBSTREAM_SIGMA = 3


@dataclass(frozen=True)
class RngStream(object):
    """
    Address of one reproducible variate sequence.
    Args:
        root_seed(int): 64-bit experiment seed. Negative values wrap modulo 2**64.
        stream_index(int): Non-negative stream number, usually the trial index.
        substream(int): Non-negative block inside the stream. Default: 0.
    """
    root_seed: int
    stream_index: int = 0
    substream: int = 0

    def __post_init__(self):
        if int(self.stream_index) < 0 or int(self.stream_index) > _MASK64:
            raise ArgumentError("stream_index must be in [0, 2**64), got {}".
                                format(self.stream_index))
        if int(self.substream) < 0 or int(self.substream) > _MASK64:
            raise ArgumentError("substream must be in [0, 2**64), got {}".
                                format(self.substream))
        object.__setattr__(self, 'root_seed', int(self.root_seed) & _MASK64)
        object.__setattr__(self, 'stream_index', int(self.stream_index))
        object.__setattr__(self, 'substream', int(self.substream))

    def child(self, substream):
        """Same stream, another substream."""
        return RngStream(self.root_seed, self.stream_index, substream)

    def generator(self):
        """
        Build a fresh generator positioned at the start of this stream.
        Returns:
            numpy.random.Generator: Identical variates for identical addresses.
        """
        key = self.root_seed | (self.stream_index << 64)
        counter = self.substream << 192
        return np.random.Generator(np.random.Philox(counter=counter, key=key))


def stream_generators(root_seed, indices, substream=0):
    """
    Generators of RngStream(root_seed, i, substream) for i in `indices`, in
    order. One Philox is re-keyed per index, so a yielded generator is only
    valid until the next one is requested.
    Args:
        root_seed(int): 64-bit experiment seed.
        indices(iterable<int>): Stream indices.
        substream(int): Block inside every stream. Default: 0.
    Yields:
        numpy.random.Generator: Same variates as RngStream(...).generator().
    """
    gen = None
    for index in indices:
        index = int(index)
        if gen is None:
            gen = RngStream(root_seed, index, substream).generator()
            bit_generator = gen.bit_generator
            state = bit_generator.state
        elif index < 0 or index > _MASK64:
            raise ArgumentError("stream_index must be in [0, 2**64), got {}".
                                format(index))
        state["state"]["key"][1] = index
        bit_generator.state = state
        yield gen


def derive_seed(root_seed, label):
    """
    Derive an independent 64-bit root seed for a named experiment stage.
    Args:
        root_seed(int): The experiment seed.
        label(str): Stage name, e.g. "oracle".
    Returns:
        int: A seed in [0, 2**64).
    """
    key = "{}:{}".format(int(root_seed) & _MASK64, label)
    digest = hashlib.md5(key.encode("utf-8")).hexdigest()
    return int(digest[:16], 16)
