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

import numpy as np

from tsrisk.common import (RngStream, ArgumentError, ConsistencyError,
                           UnsupportedError)
from tsrisk.process import simulate, simulate_batch, continue_path, SamplePath
from tsrisk.bounds import (BoundFormula, forecast_bounds, conditional_mean,
                           cn2_closed_form, cn2_rational_form, cn2_upper_bound,
                           effective_sample_factor, iid_tail_bound,
                           ar1_tail_bound)
from fixtures import iid_spec, copy_spec, ar1_spec, within_stderr

PAPER = BoundFormula.PAPER_PRINTED
DERIVED = BoundFormula.DERIVED_EXACT


def brute_force_cn2(theta, n, formula):
    shift = 0 if formula is PAPER else 1
    return math.fsum(((1.0 - theta**(n - i + shift)) / (1.0 - theta) / n)**2
                     for i in range(1, n + 1))


class TestForecastBounds(unittest.TestCase):
    def test_copy(self):
        for n in (1, 10, 100, 1000):
            path = simulate(copy_spec(), n, RngStream(n))
            seq = forecast_bounds(copy_spec(), path)
            self.assertEqual(seq.c2, 1.0)
            self.assertEqual(cn2_closed_form(copy_spec(), n), 1.0)
            self.assertTrue(np.all(seq.lower[1:] == seq.upper[1:]))

    def test_iid(self):
        path = simulate(iid_spec(), 4, RngStream(0))
        seq = forecast_bounds(iid_spec(), path)
        self.assertAlmostEqual(seq.c2, 0.25, places=15)
        self.assertTrue(np.allclose(seq.widths, 0.25))

    def test_ar1_zero_theta(self):
        spec = ar1_spec(0.0)
        path = simulate(spec, 10, RngStream(1))
        derived = forecast_bounds(spec, path, DERIVED)
        self.assertAlmostEqual(derived.c2, 0.1, places=14)
        self.assertAlmostEqual(cn2_closed_form(spec, 10, DERIVED), 0.1)
        # PAPER_PRINTED widths vanish at i = n even without dependence
        self.assertAlmostEqual(cn2_closed_form(spec, 10, PAPER), 9.0 / 100)

    def test_lower_not_above_upper(self):
        for spec in (iid_spec(), copy_spec(), ar1_spec(0.5), ar1_spec(0.9)):
            path = simulate(spec, 30, RngStream(2))
            for formula in (PAPER, DERIVED):
                seq = forecast_bounds(spec, path, formula)
                self.assertTrue(np.all(seq.lower <= seq.upper))
                self.assertAlmostEqual(seq.c2, cn2_closed_form(spec, 30, formula),
                                       places=12)

    def test_predictability(self):
        for spec in (iid_spec(), ar1_spec(0.5)):
            path = simulate(spec, 20, RngStream(3))
            seq = forecast_bounds(spec, path)
            for i in (1, 5, 20):
                values = path.values.copy()
                values[i - 1:] = np.random.default_rng(i).uniform(size=21 - i)
                moved = forecast_bounds(spec, path.with_values(values))
                self.assertEqual(seq.lower[:i].tobytes(),
                                 moved.lower[:i].tobytes())
                self.assertEqual(seq.upper[:i].tobytes(),
                                 moved.upper[:i].tobytes())

    def test_spec_mismatch(self):
        path = simulate(iid_spec(), 5, RngStream(0))
        with self.assertRaises(ConsistencyError):
            forecast_bounds(copy_spec(), path)

    def test_rows(self):
        path = simulate(iid_spec(), 3, RngStream(0))
        rows = forecast_bounds(iid_spec(), path).to_rows()
        self.assertEqual([r[0] for r in rows], [1, 2, 3])
        self.assertEqual(len(rows[0]), 4)


class TestEnvelopeValidity(unittest.TestCase):
    def test_conditional_mean_inside_envelopes(self):
        spec = ar1_spec(0.5)
        n = 20
        anchors, values = simulate_batch(spec, n, 99, np.arange(10000))
        inside = 0
        for r in range(values.shape[0]):
            path = SamplePath(values[r], spec, 99, r, anchors[r])
            seq = forecast_bounds(spec, path, DERIVED)
            means = np.array(
                [conditional_mean(spec, path, i) for i in range(1, n + 1)])
            ok = np.all((seq.lower - 1e-12 <= means) &
                        (means <= seq.upper + 1e-12))
            inside += int(ok)
        self.assertEqual(inside, values.shape[0])

    def test_conditional_mean_matches_continuations(self):
        spec = ar1_spec(0.5)
        n = 20
        path = simulate(spec, n, RngStream(5))
        for i in (1, 10, 19):
            prefix = path.prefix(i)
            known = float(prefix.values.sum())
            draws = [(known + continue_path(prefix, n - i, RngStream(
                5, j, 1)).values.sum()) / n for j in range(2000)]
            mean = float(np.mean(draws))
            stderr = float(np.std(draws, ddof=1) / math.sqrt(len(draws)))
            self.assertTrue(
                within_stderr(mean, conditional_mean(spec, path, i), stderr,
                              4.0))

    def test_conditional_mean_ends(self):
        spec = iid_spec()
        path = simulate(spec, 8, RngStream(1))
        self.assertAlmostEqual(conditional_mean(spec, path, 8),
                               path.values.mean())
        self.assertAlmostEqual(conditional_mean(spec, path, 0), 0.5)
        with self.assertRaises(ArgumentError):
            conditional_mean(spec, path, 9)


class TestClosedForm(unittest.TestCase):
    def test_ar1_n8_printed(self):
        expected = math.fsum((1.0 / (64 * 0.25)) * (1 - 0.5**(8 - i))**2
                             for i in range(1, 9))
        self.assertAlmostEqual(
            cn2_closed_form(ar1_spec(0.5), 8, PAPER), expected, places=14)

    def test_ar1_n1_printed_is_zero(self):
        for theta in (0.1, 0.5, 0.9):
            self.assertEqual(cn2_closed_form(ar1_spec(theta), 1, PAPER), 0.0)

    def test_brute_force_grid(self):
        for theta in (0.1, 0.5, 0.9):
            spec = ar1_spec(theta)
            for n in range(1, 201):
                for formula in (PAPER, DERIVED):
                    closed = cn2_closed_form(spec, n, formula)
                    brute = brute_force_cn2(theta, n, formula)
                    self.assertLessEqual(
                        abs(closed - brute), 1e-12 * max(abs(brute), 1e-300))
                rational = cn2_rational_form(spec, n)
                self.assertLessEqual(
                    abs(rational - cn2_closed_form(spec, n, PAPER)), 1e-10)

    def test_upper_bound_dominates(self):
        for theta in (0.1, 0.5, 0.9):
            spec = ar1_spec(theta)
            for n in range(1, 201):
                upper = cn2_upper_bound(spec, n)
                self.assertLessEqual(cn2_closed_form(spec, n, PAPER), upper)
                self.assertLessEqual(cn2_closed_form(spec, n, DERIVED), upper)

    def test_upper_bound_values(self):
        self.assertAlmostEqual(cn2_upper_bound(ar1_spec(0.5), 100), 0.04)
        self.assertAlmostEqual(cn2_upper_bound(ar1_spec(0.0), 10), 0.1)
        with self.assertRaises(UnsupportedError):
            cn2_upper_bound(iid_spec(), 10)

    def test_monotone_in_n(self):
        specs = [iid_spec(), ar1_spec(0.1), ar1_spec(0.5)]
        for spec in specs:
            values = [cn2_closed_form(spec, n, DERIVED) for n in range(1, 200)]
            self.assertTrue(
                all(b <= a + 1e-15 for a, b in zip(values, values[1:])))
        self.assertEqual({cn2_closed_form(copy_spec(), n)
                          for n in range(1, 50)}, {1.0})

    def test_effective_sample_factor(self):
        self.assertEqual(effective_sample_factor(0.5), 0.25)
        self.assertEqual(effective_sample_factor(0.0), 1.0)
        self.assertAlmostEqual(effective_sample_factor(0.9), 0.01)
        with self.assertRaises(ArgumentError):
            effective_sample_factor(1.0)

    def test_tail_bounds(self):
        self.assertAlmostEqual(iid_tail_bound(iid_spec(), 100, 0.2),
                               math.exp(-8.0))
        self.assertAlmostEqual(ar1_tail_bound(ar1_spec(0.5), 100, 0.2),
                               math.exp(-2.0))
        with self.assertRaises(UnsupportedError):
            ar1_tail_bound(iid_spec(), 100, 0.2)

    def test_formula_parse(self):
        self.assertIs(BoundFormula.parse("paper"), PAPER)
        self.assertIs(BoundFormula.parse("DERIVED_EXACT"), DERIVED)
        with self.assertRaises(ArgumentError):
            BoundFormula.parse("exact")


if __name__ == '__main__':
    unittest.main()
