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
"""Monte Carlo tail probabilities of the sample mean and their verification."""

import math
import logging
from dataclasses import dataclass

import numpy as np

from ..common import get_logger, trial_map, derive_seed, ArgumentError
from ..process import ProcessSpec, AR1, get_process, draw_innovations
from ..common.rng import SUBSTREAM_PATH
from ..bounds import BoundFormula, cn2_closed_form
from .inequalities import hoeffding_bound

__all__ = [
    'HOLDS', 'VIOLATED', 'TailEstimate', 'VerificationReport',
    'tail_probability_mc', 'verify_inequality', 'tail_grid', 'path_means'
]

_logger = get_logger(__name__, level=logging.INFO)

HOLDS = "HOLDS"
VIOLATED = "VIOLATED"

MIN_TRIALS = 100
CENTER_DRAWS = 10**6
# bounds the memory of one simulated chunk, independent of the thread count
_CHUNK_VALUES = 1 << 21


def _chunk_size(process, n):
    width = max(process.path_draws(n), n)
    return max(1, min(4096, _CHUNK_VALUES // width))


@dataclass(frozen=True)
class TailEstimate(object):
    """
    Empirical P(Z_n - E[Z_n] >= epsilon) next to its theoretical bound.
    Args:
        p_hat(float): Fraction of trials exceeding epsilon.
        stderr(float): sqrt(p_hat (1 - p_hat) / trials).
        trials(int): Number of simulated paths.
        epsilon(float): Deviation.
        bound(float): exp(-2 eps^2 / c2).
        spec(ProcessSpec): The simulated law.
        n(int): Path length.
        c2(float): C_n^2 used for the bound.
        center(float): The value E[Z_n] was taken to be.
        center_method(str): 'exact' or 'prerun' (grand mean of pre-run draws).
        exceedances(int): p_hat * trials.
        seed(int): Root seed.
    """
    p_hat: float
    stderr: float
    trials: int
    epsilon: float
    bound: float
    spec: ProcessSpec = None
    n: int = 0
    c2: float = 0.0
    center: float = 0.0
    center_method: str = 'exact'
    exceedances: int = 0
    seed: int = 0


@dataclass(frozen=True)
class VerificationReport(object):
    """
    Verdict of one bound-dominance check.
    Args:
        estimate(TailEstimate): The checked estimate.
        verdict(str): HOLDS if p_hat <= bound + tolerance * stderr, else VIOLATED.
        slack(float): bound - p_hat.
        tolerance(float): Number of binomial standard errors allowed.
    """
    estimate: TailEstimate
    verdict: str
    slack: float
    tolerance: float = 3.0

    @property
    def holds(self):
        return self.verdict == HOLDS

    def to_dict(self):
        e = self.estimate
        return {
            "spec": e.spec.to_dict() if e.spec is not None else None,
            "epsilon": e.epsilon,
            "n": e.n,
            "trials": e.trials,
            "p_hat": e.p_hat,
            "stderr": e.stderr,
            "bound": e.bound,
            "verdict": self.verdict,
            "slack": self.slack,
            "c2": e.c2,
            "center": e.center,
            "center_method": e.center_method,
            "exceedances": e.exceedances,
            "seed": e.seed,
            "tolerance": self.tolerance,
        }


def path_means(spec, n, trials, root_seed, threads=1):
    """
    Sample means of `trials` paths, trial t on stream index t.
    Returns:
        numpy.ndarray: shape (trials,)
    """
    process = get_process(spec)
    count = process.path_draws(n)

    def chunk_means(indices):
        innovations = draw_innovations(spec, count, root_seed, indices,
                                       SUBSTREAM_PATH)
        return process.sample_means(innovations, n)

    return trial_map(
        chunk_means, trials, threads, chunk_size=_chunk_size(process, n))


def _center(spec, n, root_seed, center_draws, threads):
    if spec.kind != AR1:
        return spec.innovation_mean, 'exact'
    rows = int(math.ceil(float(center_draws) / n))
    seed = derive_seed(root_seed, "center")
    means = path_means(spec, n, rows, seed, threads)
    center = float(np.mean(means))
    _logger.info("AR1 center - {} pre-run draws; grand mean: {}".format(
        rows * n, center))
    return center, 'prerun'


def _estimate(spec, epsilon, n, means, center, method, root_seed, formula):
    trials = means.size
    exceed = int(np.count_nonzero(means - center >= epsilon))
    p_hat = exceed / float(trials)
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    c2 = cn2_closed_form(spec, n, formula)
    return TailEstimate(
        p_hat=p_hat,
        stderr=stderr,
        trials=trials,
        epsilon=float(epsilon),
        bound=hoeffding_bound(epsilon, c2),
        spec=spec,
        n=int(n),
        c2=c2,
        center=center,
        center_method=method,
        exceedances=exceed,
        seed=int(root_seed))


def _check_tail_args(spec, epsilon, n, trials):
    if not isinstance(spec, ProcessSpec):
        raise ArgumentError("expected a ProcessSpec")
    if not float(epsilon) > 0:
        raise ArgumentError("epsilon must be positive, got {}".format(epsilon))
    if int(n) != n or n < 1:
        raise ArgumentError("n must be a positive integer, got {}".format(n))
    if int(trials) != trials or trials < MIN_TRIALS:
        raise ArgumentError("trials must be an integer >= {}, got {}".format(
            MIN_TRIALS, trials))


def tail_probability_mc(spec,
                        epsilon,
                        n,
                        trials,
                        root_seed,
                        threads=1,
                        formula=BoundFormula.DERIVED_EXACT,
                        center=None,
                        center_draws=CENTER_DRAWS):
    """
    Estimate P((1/n) sum Y_i - E[Z_n] >= epsilon) by simulation.
    Args:
        spec(ProcessSpec): The law.
        epsilon(float): Deviation, > 0.
        n(int): Path length.
        trials(int): Number of independent paths, >= 100.
        root_seed(int): Experiment seed; trial t uses stream index t.
        threads(int): Worker threads; the result does not depend on it. Default: 1.
        formula(BoundFormula): Variant of the closed-form C_n^2. Default: DERIVED_EXACT.
        center(float|None): E[Z_n]. None uses (a+b)/2 for IID and Copy and
                            the grand mean of `center_draws` pre-run values for AR1.
        center_draws(int): Pre-run size for AR1 centering. Default: 10**6.
    Returns:
        TailEstimate: The estimate with its bound.
    """
    _check_tail_args(spec, epsilon, n, trials)
    n, trials = int(n), int(trials)
    if center is None:
        center, method = _center(spec, n, root_seed, center_draws, threads)
    else:
        center, method = float(center), 'given'
    means = path_means(spec, n, trials, root_seed, threads)
    estimate = _estimate(spec, epsilon, n, means, center, method, root_seed,
                         BoundFormula.parse(formula))
    _logger.info("tail - kind: {}; n: {}; eps: {}; trials: {}; p_hat: {}; "
                 "bound: {}".format(spec.kind, n, epsilon, trials,
                                    estimate.p_hat, estimate.bound))
    return estimate


def verify_inequality(estimate, tolerance=3.0):
    """
    Check p_hat <= bound + tolerance * stderr.
    Args:
        estimate(TailEstimate): The Monte Carlo estimate.
        tolerance(float): Standard errors of slack allowed. Default: 3.
    Returns:
        VerificationReport: Verdict and slack = bound - p_hat.
    """
    ok = estimate.p_hat <= estimate.bound + tolerance * estimate.stderr
    return VerificationReport(
        estimate=estimate,
        verdict=HOLDS if ok else VIOLATED,
        slack=estimate.bound - estimate.p_hat,
        tolerance=float(tolerance))


def tail_grid(spec,
              epsilons,
              ns,
              trials,
              root_seed,
              threads=1,
              tolerance=3.0,
              formula=BoundFormula.DERIVED_EXACT,
              center_draws=CENTER_DRAWS):
    """
    Verify every (epsilon, n) cell. Cells sharing n reuse the same sample
    means, as do all cells of a law whose means do not depend on n (Copy), so
    each cell equals `tail_probability_mc` called with the same seed.
    Returns:
        list<VerificationReport>: One report per cell, n-major order.
    """
    formula = BoundFormula.parse(formula)
    process = get_process(spec)
    reports = []
    cache = {}
    for n in ns:
        for epsilon in epsilons:
            _check_tail_args(spec, epsilon, n, trials)
        center, method = _center(spec, int(n), root_seed, center_draws,
                                 threads)
        key = int(n) if process.MEANS_DEPEND_ON_N else None
        if key not in cache:
            cache[key] = path_means(spec, int(n), int(trials), root_seed,
                                    threads)
        means = cache[key]
        for epsilon in epsilons:
            estimate = _estimate(spec, epsilon, int(n), means, center, method,
                                 root_seed, formula)
            report = verify_inequality(estimate, tolerance)
            _logger.info("grid cell - n: {}; eps: {}; p_hat: {}; bound: {}; "
                         "{}".format(n, epsilon, estimate.p_hat,
                                     estimate.bound, report.verdict))
            reports.append(report)
    return reports
