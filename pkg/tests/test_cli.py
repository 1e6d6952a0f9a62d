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
import json
import shutil
import tempfile
from unittest import mock

from tsrisk.cli import run, EXIT_OK, EXIT_ARGUMENT, EXIT_VIOLATED, SEED_ENV
from tsrisk.bounds import cn2_closed_form
from fixtures import ar1_spec

COPY = '{"kind": "copy", "a": 0.0, "b": 1.0}'
IID = '{"kind": "iid", "a": 0.0, "b": 1.0}'
AR1 = '{"kind": "ar1", "a": 0.0, "b": 1.0, "theta": 0.5}'


class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def out(self, name):
        return os.path.join(self.tmp, name)

    def load(self, name):
        with open(self.out(name), encoding='utf-8') as f:
            return json.load(f)

    def test_simulate(self):
        code = run(["simulate", "--spec", COPY, "--n", "5", "--seed", "1",
                    "-o", self.out("path.csv")])
        self.assertEqual(code, EXIT_OK)
        with open(self.out("path.csv"), 'rb') as f:
            lines = f.read().decode('utf-8').split("\r\n")
        self.assertEqual(lines[0], "y")
        self.assertEqual(lines[-1], "")
        self.assertEqual(len(lines[1:-1]), 5)
        self.assertEqual(len(set(lines[1:-1])), 1)

    def test_bounds(self):
        code = run(["bounds", "--spec", AR1, "--n", "8", "--formula", "paper",
                    "-o", self.out("bounds.json"), "--csv",
                    self.out("bounds.csv")])
        self.assertEqual(code, EXIT_OK)
        report = self.load("bounds.json")
        self.assertEqual(report["tool"], "tsrisk")
        self.assertEqual(report["command"], "bounds")
        self.assertEqual(report["result"]["c2"],
                         cn2_closed_form(ar1_spec(0.5), 8, 'paper'))
        self.assertEqual(report["config"]["formula"], "paper")
        self.assertNotIn("output", report["config"])
        self.assertIn("cn2_rational_form", report["result"])
        with open(self.out("bounds.csv"), encoding='utf-8', newline='') as f:
            self.assertEqual(len(f.read().split("\r\n")), 10)

    def test_verify(self):
        code = run(["verify", "--spec", COPY, "--epsilon", "0.25", "--n",
                    "100", "--trials", "2000", "--seed", "7", "-o",
                    self.out("verify.json")])
        self.assertEqual(code, EXIT_OK)
        report = self.load("verify.json")
        self.assertEqual(report["result"]["verdict"], "HOLDS")
        self.assertEqual(report["config"]["seed"], 7)
        self.assertEqual(report["config"]["n"], [100])

    def test_forced_violation(self):
        code = run(["verify", "--spec", COPY, "--epsilon", "0.25", "--n",
                    "10", "--trials", "500", "--tolerance", "-1000"])
        self.assertEqual(code, EXIT_VIOLATED)

    def test_thread_invariance(self):
        for threads in ("1", "3"):
            code = run(["verify", "--spec", IID, "--epsilon", "0.05", "0.1",
                        "--n", "20", "40", "--trials", "5000", "--seed", "3",
                        "--threads", threads, "-o",
                        self.out("v{}.json".format(threads)), "--csv",
                        self.out("v{}.csv".format(threads))])
            self.assertEqual(code, EXIT_OK)
        for ext in ("json", "csv"):
            with open(self.out("v1." + ext), 'rb') as a, \
                    open(self.out("v3." + ext), 'rb') as b:
                self.assertEqual(a.read(), b.read())

    def test_argument_errors(self):
        self.assertEqual(run([]), EXIT_ARGUMENT)
        self.assertEqual(run(["bounds", "--spec", COPY, "--bogus", "1"]),
                         EXIT_ARGUMENT)
        self.assertEqual(run(["fit"]), EXIT_ARGUMENT)
        self.assertEqual(
            run(["bounds", "--spec", '{"kind": "ar1", "theta": 1.5}']),
            EXIT_ARGUMENT)
        self.assertEqual(run(["bounds"]), EXIT_ARGUMENT)
        self.assertEqual(
            run(["bounds", "--spec", self.out("missing.json")]),
            EXIT_ARGUMENT)

    def test_config_merge(self):
        with open(self.out("cfg.json"), 'w', encoding='utf-8') as f:
            json.dump({"spec": json.loads(IID), "n": 7, "seed": 3}, f)
        code = run(["bounds", "--config", self.out("cfg.json"), "--n", "9",
                    "-o", self.out("b.json")])
        self.assertEqual(code, EXIT_OK)
        config = self.load("b.json")["config"]
        self.assertEqual(config["n"], 9)
        self.assertEqual(config["seed"], 3)
        self.assertNotIn("config", config)
        with open(self.out("bad.json"), 'w', encoding='utf-8') as f:
            json.dump({"spec": json.loads(IID), "size": 7}, f)
        self.assertEqual(
            run(["bounds", "--config", self.out("bad.json")]), EXIT_ARGUMENT)

    def write_config(self, name, obj):
        with open(self.out(name), 'w', encoding='utf-8') as f:
            json.dump(obj, f)
        return self.out(name)

    def test_config_types(self):
        spec = json.loads(COPY)
        good = self.write_config("good.json", {
            "spec": spec,
            "n": 4.0,
            "seed": "5",
            "threads": "2"
        })
        self.assertEqual(
            run(["simulate", "--config", good, "-o", self.out("p.csv")]),
            EXIT_OK)
        for bad in ({"seed": "abc"}, {"threads": "two"}, {"n": 2.5},
                    {"n": True}, {"seed": [1]}, {"formula": 1}):
            bad = dict(bad, spec=spec)
            command = "bounds" if "formula" in bad else "simulate"
            path = self.write_config("bad.json", bad)
            self.assertEqual(
                run([command, "--config", path, "-o", self.out("x.out")]),
                EXIT_ARGUMENT)
        path = self.write_config("eps.json", {
            "spec": spec,
            "epsilon": [0.2, "x"],
            "n": [5]
        })
        self.assertEqual(run(["verify", "--config", path, "--trials", "100"]),
                         EXIT_ARGUMENT)

    def test_seed_env(self):
        with mock.patch.dict(os.environ, {SEED_ENV: "42"}):
            run(["bounds", "--spec", IID, "--n", "5", "-o",
                 self.out("env.json")])
            run(["bounds", "--spec", IID, "--n", "5", "--seed", "1", "-o",
                 self.out("flag.json")])
        self.assertEqual(self.load("env.json")["config"]["seed"], 42)
        self.assertEqual(self.load("flag.json")["config"]["seed"], 1)

    def test_certify_given_terms(self):
        code = run(["certify", "--spec", AR1, "--n", "30", "--complexity",
                    "0.1", "--c2", "0.5", "--delta", "0.05", "-o",
                    self.out("cert.json")])
        self.assertEqual(code, EXIT_OK)
        result = self.load("cert.json")["result"]
        cert = result["certificate"]
        self.assertAlmostEqual(cert["confidence_term"], 0.8654, delta=1e-4)
        self.assertAlmostEqual(cert["total"],
                               cert["train_error"] + 0.1 +
                               cert["confidence_term"])
        self.assertEqual(cert["provenance"]["c2"], {"recipe": "given"})
        self.assertEqual(result["predictor"]["order"], 1)

    def test_rademacher_csv(self):
        cls = '{"type": "linear_ball", "order": 1, "radius": 1.0}'
        code = run(["rademacher", "--spec", IID, "--class", cls, "--n", "10",
                    "20", "--path_draws", "20", "--sigma_draws", "10", "-o",
                    self.out("r.json"), "--csv", self.out("r.csv")])
        self.assertEqual(code, EXIT_OK)
        report = self.load("r.json")
        self.assertEqual(report["config"]["class"]["type"], "linear_ball")
        estimates = report["result"]["estimates"]
        self.assertEqual([e["n"] for e in estimates], [10, 20])
        self.assertIn("loss_class_bound", estimates[0])
        with open(self.out("r.csv"), encoding='utf-8', newline='') as f:
            lines = f.read().split("\r\n")
        self.assertEqual(lines[0], "n,class_id,mean,stderr")
        self.assertEqual(len(lines), 4)

    def test_qn_and_coverage(self):
        flags = ["--spec", IID, "--n", "20", "--trials", "500",
                 "--oracle_trials", "2000", "--path_draws", "50",
                 "--sigma_draws", "20", "--seed", "5"]
        self.assertEqual(run(["qn"] + flags + ["-o", self.out("qn.json")]),
                         EXIT_OK)
        qn = self.load("qn.json")["result"]
        self.assertEqual(qn["verdict"], "HOLDS")
        self.assertEqual(qn["qn"]["trials"], 500)
        code = run(["coverage"] + flags +
                   ["--delta", "0.1", "1.0", "-o", self.out("cov.json")])
        self.assertEqual(code, EXIT_OK)
        reports = self.load("cov.json")["result"]["reports"]
        self.assertEqual([r["delta"] for r in reports], [0.1, 1.0])

    def test_report_bundle(self):
        target = self.out("bundle")
        code = run(["report", "--trials", "200", "--center_draws", "20000",
                    "-o", target])
        self.assertEqual(code, EXIT_OK)
        with open(os.path.join(target, "index.json"), encoding='utf-8') as f:
            index = json.load(f)
        self.assertEqual(sorted(index["result"]["studies"]),
                         ["ar1", "copy", "iid"])
        for name in ("iid", "copy", "ar1"):
            for suffix in ("_bounds.csv", "_tails.csv", ".json"):
                self.assertTrue(
                    os.path.exists(os.path.join(target, name + suffix)))
        self.assertEqual(run(["report"]), EXIT_ARGUMENT)


if __name__ == '__main__':
    unittest.main()
