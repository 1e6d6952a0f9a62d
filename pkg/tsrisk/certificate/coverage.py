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
"""Empirical coverage of ERM risk certificates."""

import math
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binom

from ..common import get_logger, trial_map, derive_seed, ArgumentError
from ..process import simulate_batch
from ..hypothesis import erm_indices
from ..rademacher import (expected_rademacher, risk_oracle, require_finite,
                          TARGET_H, ORACLE_TRIALS)
from .risk_certificate import build_certificate, certificate_c2

__all__ = ['CoverageReport', 'coverage_mc', 'coverage_threshold']

_logger = get_logger(__name__, level=logging.INFO)

HOLDS = "HOLDS"
VIOLATED = "VIOLATED"


def coverage_threshold(delta, trials, tolerance=3.0):
    """delta + tolerance * sqrt(delta (1 - delta) / trials)."""
    return delta + tolerance * math.sqrt(delta * (1.0 - delta) / trials)


@dataclass(frozen=True)
class CoverageReport(object):
    """
    How often the ERM predictor's true risk exceeded its certificate.
    Args:
        trials(int): Training paths.
        violations(int): Trials with R(g_hat) > total.
        delta(float): Nominal failure probability.
        verdict(str): HOLDS iff violations / trials <= delta + 3 binomial stderr.
        p_value(float): P(Binomial(trials, delta) >= violations).
        rate(float): violations / trials.
        threshold(float): The HOLDS threshold.
        summary(dict): Mean ERM training error and true risk with stderrs.
        provenance(dict): Seeds, trial counts and recipes behind the terms.
    """
    trials: int
    violations: int
    delta: float
    verdict: str
    p_value: float = 1.0
    rate: float = 0.0
    threshold: float = 0.0
    summary: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @property
    def holds(self):
        return self.verdict == HOLDS

    def to_dict(self):
        return {
            "trials": self.trials,
            "violations": self.violations,
            "delta": self.delta,
            "verdict": self.verdict,
            "p_value": self.p_value,
            "rate": self.rate,
            "threshold": self.threshold,
            "summary": self.summary,
            "provenance": self.provenance
        }


def _mean_and_stderr(x):
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))


def coverage_mc(hclass,
                spec,
                n,
                delta,
                trials,
                root_seed=0,
                horizon=1,
                threads=1,
                risk_oracle_trials=ORACLE_TRIALS,
                path_draws=2000,
                sigma_draws=200,
                c2=None,
                complexity_term=None,
                tolerance=3.0,
                oracle=None):
    """
    Per trial: simulate a path, fit ERM, certify it and compare the fitted
    member's oracle risk with the certificate total.
    Args:
        hclass(FiniteClass): The class.
        spec(ProcessSpec): The law.
        n(int): Training length.
        delta(float): Confidence level in (0, 1].
        trials(int): Training paths, >= 2.
        root_seed(int): Experiment seed. Default: 0.
        horizon(int): Prediction horizon. Default: 1.
        threads(int): Worker threads. Default: 1.
        risk_oracle_trials(int): Samples per member risk. Default: 10**5.
        path_draws(int): Paths of the loss-class Rademacher estimate. Default: 2000.
        sigma_draws(int): Sign vectors per path. Default: 200.
        c2(float|None): C_n^2 bound; None uses `certificate_c2`. Default: None.
        complexity_term(float|None): E[Q_n] bound; None estimates the
                        loss-class Rademacher complexity. Default: None.
        tolerance(float): Binomial standard errors allowed. Default: 3.
        oracle(RiskOracle|None): Precomputed member risks. Default: None.
    Returns:
        CoverageReport: The verdict.
    """
    require_finite(hclass)
    if int(trials) != trials or trials < 2:
        raise ArgumentError("trials must be an integer >= 2")
    delta = float(delta)
    if not 0 < delta <= 1:
        raise ArgumentError("delta must be in (0, 1], got {}".format(delta))
    provenance = {"root_seed": int(root_seed), "trials": int(trials)}
    if oracle is None:
        oracle = risk_oracle(hclass, spec, n, horizon, risk_oracle_trials,
                             root_seed, threads)
    provenance["oracle"] = {"seed": oracle.seed, "trials": oracle.trials}
    if complexity_term is None:
        seed = derive_seed(root_seed, "complexity")
        estimate = expected_rademacher(hclass, spec, n, path_draws,
                                       sigma_draws, seed, horizon, TARGET_H,
                                       threads)
        complexity_term = estimate.mean
        provenance["complexity"] = dict(
            estimate.to_dict(), source="expected_rademacher", target=TARGET_H,
            seed=seed)
    else:
        provenance["complexity"] = {"source": "given"}
    if c2 is None:
        c2, recipe = certificate_c2(hclass, spec, n, horizon)
        provenance["c2"] = recipe
    else:
        provenance["c2"] = {"recipe": "given"}
    # total = train_error + offset on every trial
    template = build_certificate(0.0, complexity_term, c2, delta, provenance)
    offset = template.complexity_term + template.confidence_term

    weights, intercepts = hclass.member_arrays()
    seed = derive_seed(root_seed, "coverage")
    provenance["paths_seed"] = seed
    support = spec.support()

    def chunk_trials(indices):
        _, values = simulate_batch(spec, n, seed, indices)
        k, errors = erm_indices(weights, intercepts, hclass.loss, values,
                                horizon, support)
        train = errors[np.arange(k.size), k]
        risk = oracle.risks[k]
        return np.stack([train, risk, (risk > train + offset)], axis=1)

    table = trial_map(chunk_trials, int(trials), threads, chunk_size=1024)
    violations = int(table[:, 2].sum())
    rate = violations / float(trials)
    threshold = coverage_threshold(delta, trials, tolerance)
    train_mean, train_se = _mean_and_stderr(table[:, 0])
    risk_mean, risk_se = _mean_and_stderr(table[:, 1])
    report = CoverageReport(
        trials=int(trials),
        violations=violations,
        delta=delta,
        verdict=HOLDS if rate <= threshold else VIOLATED,
        p_value=float(binom.sf(violations - 1, int(trials), delta)),
        rate=rate,
        threshold=threshold,
        summary={
            "erm_train_error": train_mean,
            "erm_train_error_stderr": train_se,
            "erm_true_risk": risk_mean,
            "erm_true_risk_stderr": risk_se,
            "complexity_term": template.complexity_term,
            "confidence_term": template.confidence_term,
            "c2": template.c2
        },
        provenance=provenance)
    _logger.info("coverage - kind: {}; n: {}; delta: {}; trials: {}; "
                 "violations: {}; {}".format(spec.kind, n, delta, trials,
                                             violations, report.verdict))
    return report
