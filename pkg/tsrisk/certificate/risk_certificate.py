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
"""High-probability upper bounds on the true risk of a trained predictor."""

import math
from dataclasses import dataclass, field

from ..common import ArgumentError
from ..bounds import BoundFormula, cn2_closed_form
from ..hypothesis import evaluable_count, design_matrix

__all__ = ['RiskCertificate', 'build_certificate', 'certificate_c2']


@dataclass(frozen=True)
class RiskCertificate(object):
    """
    With probability >= 1 - delta, R(h) <= total whenever C_n^2 <= c2.
    Args:
        train_error(float): Training error of the certified predictor.
        complexity_term(float): Bound on E[Q_n].
        confidence_term(float): sqrt(c2) * sqrt(ln(1/delta) / 2).
        c2(float): Deterministic bound on C_n^2.
        delta(float): Confidence level in (0, 1].
        total(float): Sum of the three terms.
        provenance(dict): Where each term came from.
    """
    train_error: float
    complexity_term: float
    confidence_term: float
    c2: float
    delta: float
    total: float
    provenance: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "train_error": self.train_error,
            "complexity_term": self.complexity_term,
            "confidence_term": self.confidence_term,
            "c2": self.c2,
            "delta": self.delta,
            "total": self.total,
            "provenance": self.provenance
        }


def build_certificate(train_error, complexity_term, c2, delta,
                      provenance=None):
    """
    Assemble R_n(h) + E[Q_n] + sqrt(c2) sqrt(ln(1/delta) / 2).
    Args:
        train_error(float): Training error, >= 0.
        complexity_term(float|RademacherEstimate): E[Q_n] bound, >= 0. An
                        estimate contributes its mean and its stderr is recorded.
        c2(float): Deterministic C_n^2 bound, > 0.
        delta(float): In (0, 1].
        provenance(dict|None): Extra provenance entries. Default: None.
    Returns:
        RiskCertificate: The certificate.
    """
    record = dict(provenance or {})
    if hasattr(complexity_term, "mean") and hasattr(complexity_term, "stderr"):
        record.setdefault("complexity", {}).update({
            "source": "rademacher_estimate",
            "stderr": complexity_term.stderr
        })
        complexity_term = complexity_term.mean
    train_error = float(train_error)
    complexity_term = float(complexity_term)
    c2 = float(c2)
    delta = float(delta)
    if not (train_error >= 0 and math.isfinite(train_error)):
        raise ArgumentError("train_error must be finite and >= 0, got {}".
                            format(train_error))
    if not (complexity_term >= 0 and math.isfinite(complexity_term)):
        raise ArgumentError("complexity_term must be finite and >= 0, got {}".
                            format(complexity_term))
    if not (c2 > 0 and math.isfinite(c2)):
        raise ArgumentError("c2 must be finite and > 0, got {}".format(c2))
    if not 0 < delta <= 1:
        raise ArgumentError("delta must be in (0, 1], got {}".format(delta))
    confidence = math.sqrt(c2) * math.sqrt(math.log(1.0 / delta) / 2.0)
    return RiskCertificate(
        train_error=train_error,
        complexity_term=complexity_term,
        confidence_term=confidence,
        c2=c2,
        delta=delta,
        total=train_error + complexity_term + confidence,
        provenance=record)


def certificate_c2(hclass, spec, n, horizon=1):
    """
    C^2 for the training error of a bounded loss class: the loss range
    loss_max rescales the DERIVED_EXACT sample-mean C_m^2 of the process,
    m being the number of evaluable indices.
    Returns:
        tuple: c2 and a dict describing the recipe.
    """
    m = evaluable_count(n, hclass.order, horizon)
    if m < 1:
        design_matrix([0.0] * n, hclass.order, horizon)
    loss_max = hclass.loss_max(spec.support())
    base = cn2_closed_form(spec, m, BoundFormula.DERIVED_EXACT)
    c2 = (loss_max / spec.width)**2 * base
    recipe = {
        "recipe": "(loss_max / (b - a))^2 * C_m^2",
        "formula": BoundFormula.DERIVED_EXACT.value,
        "loss_max": loss_max,
        "m": m,
        "cn2": base
    }
    return c2, recipe
