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
import os
import sys
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), ".."))
import unittest
import math
import time

import numpy as np

from tsrisk.common import ArgumentError, DegenerateBoundError
from tsrisk.process import ProcessSpec, AR1, simulate_batch
from tsrisk.bounds import BoundFormula, iid_tail_bound, cn2_closed_form
from tsrisk.concentration import (
    DifferenceConstants, DifferenceInterpretation, hoeffding_bound,
    mcdiarmid_bound, predictable_bound, TailEstimate, tail_probability_mc,
    verify_inequality, tail_grid, path_means, HOLDS, VIOLATED)
from fixtures import iid_spec, copy_spec, ar1_spec, within_stderr


class TestInequalities(unittest.TestCase):
    def test_hoeffding(self):
        self.assertAlmostEqual(hoeffding_bound(0.1, 0.01), math.exp(-2.0))
        self.assertEqual(hoeffding_bound(0.3, 0.0), 0.0)
        for eps, c2 in ((0.0, 1.0), (-0.1, 1.0), (0.1, -1.0)):
            with self.assertRaises(ArgumentError):
                hoeffding_bound(eps, c2)

    def test_hoeffding_decreasing(self):
        bounds = [hoeffding_bound(e / 10.0, 0.5) for e in range(1, 10)]
        self.assertTrue(all(b < a for a, b in zip(bounds, bounds[1:])))
        self.assertLess(hoeffding_bound(0.2, 0.1), hoeffding_bound(0.2, 0.2))

    def test_mcdiarmid_scaling(self):
        ks = [0.1, 0.2, 0.05, 0.3]
        base = mcdiarmid_bound(ks, 0.2)
        doubled = mcdiarmid_bound([2 * k for k in ks], 0.4)
        self.assertAlmostEqual(base, doubled, places=14)
        self.assertEqual(base, mcdiarmid_bound(list(reversed(ks)), 0.2))
        self.assertAlmostEqual(base, hoeffding_bound(0.2, 0.01 + 0.04 +
                                                     0.0025 + 0.09))

    def test_mcdiarmid_recovers_iid(self):
        for n in (10, 100):
            self.assertTrue(
                math.isclose(
                    mcdiarmid_bound([1.0 / n] * n, 0.1),
                    iid_tail_bound(iid_spec(), n, 0.1),
                    rel_tol=1e-12))

    def test_mcdiarmid_errors(self):
        with self.assertRaises(DegenerateBoundError):
            mcdiarmid_bound([0.0, 0.0], 0.1)
        with self.assertRaises(ArgumentError):
            mcdiarmid_bound([0.1, -0.1], 0.1)
        with self.assertRaises(ArgumentError):
            mcdiarmid_bound([], 0.1)
        with self.assertRaises(ArgumentError):
            mcdiarmid_bound([0.1, float('nan')], 0.1)

    def test_difference_constants(self):
        ks = DifferenceConstants([0.5, 0.5], 'future_sup_b')
        self.assertIs(ks.interpretation, DifferenceInterpretation.FUTURE_SUP_B)
        self.assertEqual(ks.ks, (0.5, 0.5))
        self.assertEqual(ks.c2, 0.5)
        self.assertAlmostEqual(mcdiarmid_bound(ks, 0.5), math.exp(-1.0))

    def test_predictable_bound(self):
        self.assertAlmostEqual(
            predictable_bound(copy_spec(), 10, 0.25), math.exp(-0.125))
        spec = ar1_spec(0.5)
        self.assertAlmostEqual(
            predictable_bound(spec, 50, 0.1, BoundFormula.PAPER_PRINTED),
            hoeffding_bound(0.1, cn2_closed_form(spec, 50, 'paper')))


def _estimate(p_hat, stderr, bound):
    return TailEstimate(
        p_hat=p_hat, stderr=stderr, trials=1000, epsilon=0.1, bound=bound)


class TestVerify(unittest.TestCase):
    def test_verdicts(self):
        self.assertEqual(verify_inequality(_estimate(0.26, 0.01, 0.25)).verdict,
                         HOLDS)
        report = verify_inequality(_estimate(0.3, 0.01, 0.25))
        self.assertEqual(report.verdict, VIOLATED)
        self.assertAlmostEqual(report.slack, -0.05)
        self.assertFalse(report.holds)
        self.assertEqual(
            verify_inequality(_estimate(0.3, 0.01, 0.25), 6.0).verdict, HOLDS)

    def test_copy(self):
        estimate = tail_probability_mc(copy_spec(), 0.25, 10, 20000, 11)
        self.assertTrue(
            within_stderr(estimate.p_hat, 0.25, estimate.stderr, 4.0))
        self.assertAlmostEqual(estimate.bound, math.exp(-0.125))
        self.assertEqual(estimate.center_method, 'exact')
        self.assertTrue(verify_inequality(estimate).holds)

        none = tail_probability_mc(copy_spec(), 0.6, 10, 1000, 11)
        self.assertEqual(none.p_hat, 0.0)
        self.assertEqual(none.exceedances, 0)

    def test_iid(self):
        estimate = tail_probability_mc(iid_spec(), 0.2, 100, 2000, 3)
        self.assertAlmostEqual(estimate.bound, math.exp(-8.0))
        self.assertEqual(estimate.p_hat, 0.0)
        self.assertTrue(verify_inequality(estimate).holds)

    def test_ar1(self):
        spec = ProcessSpec(AR1, 0.0, 1.0, 0.5, burn_in=200)
        estimate = tail_probability_mc(
            spec, 0.1, 50, 2000, 5, center_draws=10**5)
        self.assertEqual(estimate.center_method, 'prerun')
        self.assertLess(abs(estimate.center - 1.0), 0.01)
        self.assertTrue(verify_inequality(estimate).holds)
        self.assertEqual(verify_inequality(estimate).to_dict()["spec"],
                         spec.to_dict())

    def test_given_center(self):
        estimate = tail_probability_mc(iid_spec(), 0.1, 5, 500, 2, center=0.5)
        self.assertEqual(estimate.center_method, 'given')

    def test_thread_invariance(self):
        one = tail_probability_mc(iid_spec(), 0.05, 20, 5000, 9, threads=1)
        four = tail_probability_mc(iid_spec(), 0.05, 20, 5000, 9, threads=4)
        self.assertEqual(one.exceedances, four.exceedances)
        self.assertEqual(one.p_hat, four.p_hat)

    def test_copy_grid_runtime(self):
        start = time.time()
        reports = tail_grid(copy_spec(), [0.25], [1, 10, 100, 1000], 100000,
                            7)
        self.assertLess(time.time() - start, 10.0)
        self.assertEqual([r.estimate.n for r in reports], [1, 10, 100, 1000])
        for report in reports:
            estimate = report.estimate
            self.assertEqual(estimate.c2, 1.0)
            self.assertAlmostEqual(estimate.bound, math.exp(-0.125))
            self.assertTrue(
                within_stderr(estimate.p_hat, 0.25, estimate.stderr, 4.0))
            self.assertEqual(estimate.p_hat, reports[0].estimate.p_hat)
            self.assertTrue(report.holds)
        single = tail_probability_mc(copy_spec(), 0.25, 100, 100000, 7)
        self.assertEqual(single.p_hat, reports[2].estimate.p_hat)

    def test_copy_means_are_first_values(self):
        means = path_means(copy_spec(), 50, 200, 3)
        _, values = simulate_batch(copy_spec(), 50, 3, np.arange(200))
        self.assertEqual(means.tolist(), values[:, 0].tolist())

    def test_grid(self):
        reports = tail_grid(iid_spec(), [0.05, 0.1], [10, 20], 500, 4)
        self.assertEqual(len(reports), 4)
        cells = [(r.estimate.n, r.estimate.epsilon) for r in reports]
        self.assertEqual(cells, [(10, 0.05), (10, 0.1), (20, 0.05),
                                 (20, 0.1)])
        for report in reports:
            single = tail_probability_mc(iid_spec(), report.estimate.epsilon,
                                         report.estimate.n, 500, 4)
            self.assertEqual(report.estimate.p_hat, single.p_hat)
            self.assertTrue(report.holds)

    def test_errors(self):
        with self.assertRaises(ArgumentError):
            tail_probability_mc(iid_spec(), 0.1, 10, 99, 0)
        with self.assertRaises(ArgumentError):
            tail_probability_mc(iid_spec(), 0.0, 10, 100, 0)
        with self.assertRaises(ArgumentError):
            tail_probability_mc(iid_spec(), 0.1, 0, 100, 0)
        with self.assertRaises(ArgumentError):
            tail_grid(iid_spec(), [0.1], [10], 50, 0)


if __name__ == '__main__':
    unittest.main()
