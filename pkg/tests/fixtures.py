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
import math

import numpy as np

from tsrisk.process import ProcessSpec, IID, COPY, AR1
from tsrisk.hypothesis import FiniteClass, LossSpec, Predictor

AR_COEFFICIENTS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def unit_spec(kind, theta=None, burn_in=0):
    return ProcessSpec(kind, 0.0, 1.0, theta, burn_in)


def iid_spec():
    return unit_spec(IID)


def copy_spec():
    return unit_spec(COPY)


def ar1_spec(theta=0.5, burn_in=0):
    return unit_spec(AR1, theta, burn_in)


def ar_class(loss=None, coefficients=AR_COEFFICIENTS, intercept=0.0):
    return FiniteClass.ar_coefficients(coefficients, loss or LossSpec(),
                                       intercept)


def pm_class(c, loss=None):
    """The two constants {+c, -c}."""
    return FiniteClass([Predictor.constant(c), Predictor.constant(-c)], loss)


def within_stderr(value, target, stderr, k=3.0):
    return abs(value - target) <= k * stderr


def mean_stderr(x):
    x = np.asarray(x, dtype=np.float64)
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))
