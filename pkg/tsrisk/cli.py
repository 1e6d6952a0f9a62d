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
"""Command line entry point: `tsrisk <command> [flags]`.

Every command writes one JSON report (and optionally CSV tables) that embeds
the merged configuration and the tool version, and prints a one-line summary.
Exit codes: 0 on success, 2 on bad arguments, 3 on a VIOLATED verdict.
"""

import os
import sys
import json
import math
import hashlib
import logging
import argparse
import functools

from .version import tsrisk_version
from .common import (get_logger, TSRiskError, ArgumentError, RngStream,
                     derive_seed, read_json, write_json, write_csv, dumps_json)
from .process import ProcessSpec, simulate, IID, COPY, AR1
from .bounds import (BoundFormula, forecast_bounds, cn2_closed_form,
                     cn2_rational_form, cn2_upper_bound,
                     effective_sample_factor, iid_tail_bound)
from .concentration import tail_grid, predictable_bound, HOLDS, VIOLATED
from .hypothesis import (class_from_dict, FiniteClass, LossSpec, erm_fit,
                         training_error)
from .rademacher import (expected_rademacher, expected_qn_mc,
                         tangent_qn_check, risk_oracle, lipschitz_contract,
                         TARGET_G, TARGET_H)
from .certificate import build_certificate, certificate_c2, coverage_mc

__all__ = [
    'run', 'main', 'build_parser', 'add_arguments', 'resolve_config',
    'EXIT_OK', 'EXIT_ARGUMENT', 'EXIT_VIOLATED', 'SEED_ENV'
]

_logger = get_logger(__name__, level=logging.INFO)

EXIT_OK = 0
EXIT_ARGUMENT = 2
EXIT_VIOLATED = 3

SEED_ENV = "TSRISK_SEED"
DEFAULT_AR_COEFFICIENTS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

# these change how a run executes or where it writes, never what it writes
_RUNTIME_FIELDS = ("config", "output", "csv", "threads")

_COMMAND_DEFAULTS = {}
_COMMAND_TYPES = {}
COMMANDS = {}


def _str2bool(value):
    value = str(value).lower()
    if value in ('y', 'yes', 't', 'true', 'on', '1'):
        return True
    if value in ('n', 'no', 'f', 'false', 'off', '0'):
        return False
    raise argparse.ArgumentTypeError("expected a boolean, got '{}'".format(
        value))


def add_arguments(argname, type, default, help, argparser, defaults, types=None,
                  **kwargs):
    """Add `--argname` to a parser.

    The parser itself keeps None as default so that a --config file can fill
    the flags that were not given; `default` is recorded in `defaults` and
    applied when the configuration is merged. `types` records the converter of
    each flag so that --config values are checked like command-line values.

    Usage:

    .. code-block:: python

        defaults = {}
        add_arg = functools.partial(add_arguments, argparser=parser, defaults=defaults)
        add_arg('n', int, 100, "Path length.")
    """
    type = _str2bool if type == bool else type
    multiple = kwargs.get('nargs') is not None
    short = kwargs.pop('short', None)
    names = ["--" + argname] + ([short] if short else [])
    dest = kwargs.pop('dest', argname.replace('-', '_'))
    argparser.add_argument(
        *names,
        dest=dest,
        default=None,
        type=type,
        help=help + ' Default: {}.'.format(default),
        **kwargs)
    defaults[dest] = default
    if types is not None:
        types[dest] = (type, multiple)


def _command(name, help):
    def wrapper(func):
        COMMANDS[name] = (func, help)
        return func

    return wrapper


def _add_common(add_arg):
    add_arg('config', str, None, "JSON file with parameters; flags override it.")
    add_arg('seed', int, None,
            "Root seed; falls back to ${} and then 0.".format(SEED_ENV))
    add_arg('threads', int, 1, "Worker threads; outputs do not depend on it.")
    add_arg('output', str, None, "Output file.", short='-o')


def _add_spec(add_arg):
    add_arg('spec', str, None,
            "Process spec: JSON file path or inline JSON object.")


def _add_class(add_arg):
    add_arg('class', str, None,
            "Hypothesis class: JSON file path or inline JSON object. None "
            "uses the AR(1) coefficients 0.1..0.9 with absolute loss.",
            dest='hclass')


def build_parser():
    """
    Returns:
        argparse.ArgumentParser: Parser with one subcommand per experiment.
    """
    parser = argparse.ArgumentParser(
        prog="tsrisk",
        description="Concentration and risk bounds for time series prediction.")
    parser.add_argument(
        "--version", action="version", version="tsrisk " + tsrisk_version)
    subparsers = parser.add_subparsers(dest="command")
    for name, (_, help) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help, description=help)
        defaults = _COMMAND_DEFAULTS.setdefault(name, {})
        types = _COMMAND_TYPES.setdefault(name, {})
        add_arg = functools.partial(
            add_arguments, argparser=sub, defaults=defaults, types=types)
        _add_common(add_arg)
        _ARGUMENTS[name](add_arg)
    return parser


def _load_object(value, what):
    """A JSON object given as dict, inline JSON text or a file path."""
    if value is None:
        return None
    if isinstance(value, dict):
        return value
    text = str(value).strip()
    try:
        if text.startswith("{"):
            obj = json.loads(text)
        else:
            obj = read_json(text)
    except (IOError, OSError) as e:
        raise ArgumentError("cannot read {} '{}': {}".format(what, value, e))
    except ValueError as e:
        raise ArgumentError("invalid JSON for {}: {}".format(what, e))
    if not isinstance(obj, dict):
        raise ArgumentError("{} must be a JSON object".format(what))
    return obj


def _convert(type, value):
    if type in (int, float) and isinstance(value, bool):
        raise ValueError("booleans are not numbers")
    if type is int and isinstance(value, float) and not value.is_integer():
        raise ValueError("not an integer")
    if type is str and not isinstance(value, str):
        raise ValueError("not a string")
    return type(value)


def _coerce_config(command, config):
    """Convert --config values with the type of the matching flag."""
    types = _COMMAND_TYPES[command]
    out = {}
    for key, value in config.items():
        type, multiple = types[key]
        if value is None or (type is str and isinstance(value, dict)):
            out[key] = value
            continue
        try:
            if multiple and isinstance(value, (list, tuple)):
                out[key] = [_convert(type, v) for v in value]
            else:
                out[key] = _convert(type, value)
        except (TypeError, ValueError, argparse.ArgumentTypeError):
            raise ArgumentError("config field '{}' expects {}, got {!r}".format(
                key, "a boolean" if type is _str2bool else type.__name__, value))
    return out


def resolve_config(command, args):
    """
    Merge command defaults, the --config file and explicit flags, in that
    order of precedence (lowest first).
    Returns:
        dict: The ExperimentConfig of the run.
    """
    defaults = _COMMAND_DEFAULTS[command]
    flags = {k: v for k, v in vars(args).items() if k != "command"}
    config = _load_object(flags.get("config"), "config") or {}
    config = dict(config)
    if "class" in config and "hclass" in defaults:
        config["hclass"] = config.pop("class")
    unknown = set(config) - set(defaults)
    if unknown:
        raise ArgumentError("unknown config fields for '{}': {}".format(
            command, sorted(unknown)))
    config = _coerce_config(command, config)
    merged = dict(defaults)
    merged.update(config)
    merged.update({k: v for k, v in flags.items() if v is not None})
    if merged.get("seed") is None:
        try:
            merged["seed"] = int(os.environ.get(SEED_ENV, 0))
        except ValueError:
            raise ArgumentError("${} must be an integer".format(SEED_ENV))
    if merged.get("threads", 1) < 1:
        raise ArgumentError("--threads must be >= 1")
    return merged


def _as_list(value, type):
    if isinstance(value, (list, tuple)):
        return [type(v) for v in value]
    return [type(value)]


def _spec(cfg):
    obj = _load_object(cfg.get("spec"), "spec")
    if obj is None:
        raise ArgumentError("--spec is required")
    spec = ProcessSpec.from_dict(obj)
    cfg["spec"] = spec.to_dict()
    return spec


def _hclass(cfg):
    obj = _load_object(cfg.get("hclass"), "class")
    if obj is None:
        hclass = FiniteClass.ar_coefficients(DEFAULT_AR_COEFFICIENTS,
                                             LossSpec())
    else:
        hclass = class_from_dict(obj)
    cfg["hclass"] = hclass.to_dict()
    return hclass


def _class_id(hclass):
    digest = hashlib.md5(dumps_json(hclass.to_dict()).encode("utf-8"))
    return digest.hexdigest()[:8]


def _report(command, cfg, result):
    config = {
        k: v
        for k, v in cfg.items() if k not in _RUNTIME_FIELDS
    }
    if "hclass" in config:
        config["class"] = config.pop("hclass")
    return {
        "tool": "tsrisk",
        "version": tsrisk_version,
        "command": command,
        "config": config,
        "result": result
    }


def _emit(command, cfg, result):
    report = _report(command, cfg, result)
    if cfg.get("output"):
        write_json(report, cfg["output"])
    return report


def _target(cfg):
    return str(cfg["target"]).upper()


# ---------------------------------------------------------------- commands


def _simulate_args(add_arg):
    _add_spec(add_arg)
    add_arg('n', int, 100, "Path length.")
    add_arg('stream', int, 0, "Stream index inside the seed.")


@_command("simulate", "Simulate one sample path to CSV.")
def _simulate(cfg):
    spec = _spec(cfg)
    path = simulate(spec, cfg["n"], RngStream(cfg["seed"], cfg["stream"]))
    if cfg.get("output"):
        path.to_csv(cfg["output"])
    return EXIT_OK, "simulate: kind={} n={} seed={} mean={:.6f} -> {}".format(
        spec.kind, path.n, cfg["seed"], float(path.values.mean()),
        cfg.get("output"))


def _bounds_args(add_arg):
    _add_spec(add_arg)
    add_arg('n', int, 100, "Sample size.")
    add_arg('formula', str, 'derived', "AR1 envelope: 'paper' or 'derived'.")
    add_arg('csv', str, None, "CSV of the per-index envelopes.")


@_command("bounds", "Forecast envelopes and the closed-form C_n^2.")
def _bounds(cfg):
    spec = _spec(cfg)
    formula = BoundFormula.parse(cfg["formula"])
    cfg["formula"] = formula.value
    n = cfg["n"]
    path = simulate(spec, n, RngStream(cfg["seed"]))
    seq = forecast_bounds(spec, path, formula)
    result = {
        "n": n,
        "formula": formula.value,
        "c2": cn2_closed_form(spec, n, formula),
        "path_c2": seq.c2
    }
    if spec.kind == AR1:
        result["cn2_upper_bound"] = cn2_upper_bound(spec, n)
        result["effective_sample_factor"] = effective_sample_factor(
            spec.theta)
        if formula is BoundFormula.PAPER_PRINTED:
            result["cn2_rational_form"] = cn2_rational_form(spec, n)
    if cfg.get("csv"):
        write_csv(["i", "lower", "upper", "width"], seq.to_rows(), cfg["csv"])
    _emit("bounds", cfg, result)
    return EXIT_OK, "bounds: kind={} n={} formula={} c2={!r}".format(
        spec.kind, n, formula.value, result["c2"])


def _verify_args(add_arg):
    _add_spec(add_arg)
    add_arg('epsilon', float, [0.1], "Deviations.", nargs='+')
    add_arg('n', int, [100], "Path lengths.", nargs='+')
    add_arg('trials', int, 100000, "Monte Carlo paths per n.")
    add_arg('formula', str, 'derived', "AR1 envelope: 'paper' or 'derived'.")
    add_arg('tolerance', float, 3.0, "Standard errors of slack allowed.")
    add_arg('center_draws', int, 10**6, "AR1 pre-run draws for E[Z_n].")
    add_arg('csv', str, None, "CSV with one row per (n, epsilon) cell.")


_TAIL_HEADER = [
    "n", "epsilon", "trials", "p_hat", "stderr", "bound", "slack", "verdict"
]


def _tail_rows(reports):
    return [[
        r.estimate.n, r.estimate.epsilon, r.estimate.trials, r.estimate.p_hat,
        r.estimate.stderr, r.estimate.bound, r.slack, r.verdict
    ] for r in reports]


def _run_tails(spec, cfg, epsilons, ns):
    formula = BoundFormula.parse(cfg.get("formula", "derived"))
    return tail_grid(
        spec,
        epsilons,
        ns,
        cfg["trials"],
        cfg["seed"],
        threads=cfg["threads"],
        tolerance=cfg["tolerance"],
        formula=formula,
        center_draws=cfg["center_draws"])


@_command("verify", "Monte Carlo check of the tail bound of the mean.")
def _verify(cfg):
    spec = _spec(cfg)
    epsilons = _as_list(cfg["epsilon"], float)
    ns = _as_list(cfg["n"], int)
    cfg["epsilon"], cfg["n"] = epsilons, ns
    reports = _run_tails(spec, cfg, epsilons, ns)
    violated = sum(1 for r in reports if not r.holds)
    verdict = HOLDS if violated == 0 else VIOLATED
    result = {"verdict": verdict, "cells": [r.to_dict() for r in reports]}
    if cfg.get("csv"):
        write_csv(_TAIL_HEADER, _tail_rows(reports), cfg["csv"])
    _emit("verify", cfg, result)
    code = EXIT_OK if violated == 0 else EXIT_VIOLATED
    return code, "verify: kind={} cells={} violated={} -> {}".format(
        spec.kind, len(reports), violated, verdict)


def _rademacher_args(add_arg):
    _add_spec(add_arg)
    _add_class(add_arg)
    add_arg('n', int, [25, 400], "Path lengths.", nargs='+')
    add_arg('path_draws', int, 200, "Simulated paths per n.")
    add_arg('sigma_draws', int, 100, "Sign vectors per path.")
    add_arg('target', str, TARGET_G, "'G' for predictions, 'H' for losses.")
    add_arg('horizon', int, 1, "Prediction horizon.")
    add_arg('csv', str, None, "CSV with columns n, class_id, mean, stderr.")


@_command("rademacher", "Expected Rademacher complexity of a class.")
def _rademacher(cfg):
    spec = _spec(cfg)
    hclass = _hclass(cfg)
    target = _target(cfg)
    cfg["target"] = target
    ns = _as_list(cfg["n"], int)
    cfg["n"] = ns
    class_id = _class_id(hclass)
    estimates = []
    rows = []
    for n in ns:
        est = expected_rademacher(
            hclass,
            spec,
            n,
            cfg["path_draws"],
            cfg["sigma_draws"],
            cfg["seed"],
            horizon=cfg["horizon"],
            target=target,
            threads=cfg["threads"])
        entry = dict(est.to_dict(), n=n)
        if target == TARGET_G:
            phi = hclass.loss.lipschitz(spec.support())
            entry["loss_class_bound"] = lipschitz_contract(est.mean, phi)
        estimates.append(entry)
        rows.append([n, class_id, est.mean, est.stderr])
    if cfg.get("csv"):
        write_csv(["n", "class_id", "mean", "stderr"], rows, cfg["csv"])
    _emit("rademacher", cfg, {
        "class_id": class_id,
        "target": target,
        "estimates": estimates
    })
    return EXIT_OK, "rademacher: class={} target={} {}".format(
        class_id, target, " ".join("n={}:{:.6f}".format(r[0], r[2])
                                   for r in rows))


def _mc_args(add_arg, n=50, trials=2000):
    _add_spec(add_arg)
    _add_class(add_arg)
    add_arg('n', int, n, "Training length.")
    add_arg('trials', int, trials, "Training paths.")
    add_arg('oracle_trials', int, 10**5, "Samples per member risk.")
    add_arg('path_draws', int, 2000, "Paths of the Rademacher estimate.")
    add_arg('sigma_draws', int, 200, "Sign vectors per path.")
    add_arg('horizon', int, 1, "Prediction horizon.")
    add_arg('tolerance', float, 3.0, "Standard errors of slack allowed.")


def _loss_complexity(hclass, spec, cfg):
    seed = derive_seed(cfg["seed"], "complexity")
    est = expected_rademacher(
        hclass,
        spec,
        cfg["n"],
        cfg["path_draws"],
        cfg["sigma_draws"],
        seed,
        horizon=cfg["horizon"],
        target=TARGET_H,
        threads=cfg["threads"])
    return est, seed


@_command("qn", "Compare E[Q_n] with the loss-class Rademacher complexity.")
def _qn(cfg):
    spec = _spec(cfg)
    hclass = _hclass(cfg)
    oracle = risk_oracle(hclass, spec, cfg["n"], cfg["horizon"],
                         cfg["oracle_trials"], cfg["seed"], cfg["threads"])
    qn = expected_qn_mc(
        hclass,
        spec,
        cfg["n"],
        cfg["trials"],
        root_seed=cfg["seed"],
        horizon=cfg["horizon"],
        threads=cfg["threads"],
        oracle=oracle)
    rad, rad_seed = _loss_complexity(hclass, spec, cfg)
    tangent = tangent_qn_check(hclass, spec, cfg["n"], cfg["trials"],
                               cfg["seed"], cfg["horizon"], cfg["threads"])
    combined = math.sqrt(qn.stderr**2 + rad.stderr**2)
    ok = qn.mean <= rad.mean + cfg["tolerance"] * combined
    verdict = HOLDS if ok else VIOLATED
    _emit("qn", cfg, {
        "verdict": verdict,
        "qn": qn.to_dict(),
        "rademacher": dict(rad.to_dict(), seed=rad_seed, target=TARGET_H),
        "tangent": tangent.to_dict(),
        "combined_stderr": combined,
        "oracle": oracle.to_dict()
    })
    return (EXIT_OK if ok else EXIT_VIOLATED), \
        "qn: E[Q_n]={:.6f} rademacher={:.6f} -> {}".format(
            qn.mean, rad.mean, verdict)


def _certify_args(add_arg):
    _add_spec(add_arg)
    _add_class(add_arg)
    add_arg('n', int, 50, "Training length.")
    add_arg('stream', int, 0, "Stream index of the training path.")
    add_arg('delta', float, 0.05, "Confidence level in (0, 1].")
    add_arg('horizon', int, 1, "Prediction horizon.")
    add_arg('path_draws', int, 2000, "Paths of the Rademacher estimate.")
    add_arg('sigma_draws', int, 200, "Sign vectors per path.")
    add_arg('complexity', float, None,
            "Analytic E[Q_n] bound; None estimates it.")
    add_arg('c2', float, None, "C_n^2 bound; None derives it from the class.")


@_command("certify", "Fit ERM on one path and certify its risk.")
def _certify(cfg):
    spec = _spec(cfg)
    hclass = _hclass(cfg)
    path = simulate(spec, cfg["n"], RngStream(cfg["seed"], cfg["stream"]))
    g = erm_fit(hclass, path, cfg["horizon"])
    train = training_error(g, hclass.loss, path, cfg["horizon"])
    provenance = {"path_seed": cfg["seed"], "stream": cfg["stream"]}
    if cfg.get("complexity") is None:
        complexity, seed = _loss_complexity(hclass, spec, cfg)
        provenance["complexity"] = dict(
            complexity.to_dict(), seed=seed, target=TARGET_H)
    else:
        complexity = cfg["complexity"]
        provenance["complexity"] = {"source": "given"}
    if cfg.get("c2") is None:
        c2, recipe = certificate_c2(hclass, spec, cfg["n"], cfg["horizon"])
        provenance["c2"] = recipe
    else:
        c2 = cfg["c2"]
        provenance["c2"] = {"recipe": "given"}
    cert = build_certificate(train, complexity, c2, cfg["delta"], provenance)
    _emit("certify", cfg, {
        "predictor": g.to_dict(),
        "certificate": cert.to_dict()
    })
    return EXIT_OK, "certify: weights={} train={:.6f} total={:.6f} " \
        "delta={}".format(list(g.weights), cert.train_error, cert.total,
                          cert.delta)


def _coverage_args(add_arg):
    _mc_args(add_arg)
    add_arg('delta', float, [0.05, 0.1], "Confidence levels.", nargs='+')
    add_arg('csv', str, None, "CSV with one row per delta.")


@_command("coverage", "Empirical coverage of ERM risk certificates.")
def _coverage(cfg):
    spec = _spec(cfg)
    hclass = _hclass(cfg)
    deltas = _as_list(cfg["delta"], float)
    cfg["delta"] = deltas
    oracle = risk_oracle(hclass, spec, cfg["n"], cfg["horizon"],
                         cfg["oracle_trials"], cfg["seed"], cfg["threads"])
    rad, rad_seed = _loss_complexity(hclass, spec, cfg)
    c2, recipe = certificate_c2(hclass, spec, cfg["n"], cfg["horizon"])
    reports = [
        coverage_mc(
            hclass,
            spec,
            cfg["n"],
            delta,
            cfg["trials"],
            root_seed=cfg["seed"],
            horizon=cfg["horizon"],
            threads=cfg["threads"],
            c2=c2,
            complexity_term=rad.mean,
            tolerance=cfg["tolerance"],
            oracle=oracle) for delta in deltas
    ]
    violated = sum(1 for r in reports if not r.holds)
    if cfg.get("csv"):
        write_csv(
            ["delta", "trials", "violations", "rate", "threshold", "p_value",
             "verdict"],
            [[r.delta, r.trials, r.violations, r.rate, r.threshold,
              r.p_value, r.verdict] for r in reports], cfg["csv"])
    _emit("coverage", cfg, {
        "verdict": HOLDS if violated == 0 else VIOLATED,
        "complexity": dict(rad.to_dict(), seed=rad_seed, target=TARGET_H),
        "c2": dict(recipe, c2=c2),
        "oracle": oracle.to_dict(),
        "reports": [r.to_dict() for r in reports]
    })
    return (EXIT_OK if violated == 0 else EXIT_VIOLATED), \
        "coverage: {}".format(" ".join(
            "delta={}:{}/{}:{}".format(r.delta, r.violations, r.trials,
                                       r.verdict) for r in reports))


def _report_args(add_arg):
    add_arg('trials', int, 100000, "Monte Carlo paths per tail cell.")
    add_arg('tolerance', float, 3.0, "Standard errors of slack allowed.")
    add_arg('center_draws', int, 10**6, "AR1 pre-run draws for E[Z_n].")


def _iid_study(cfg):
    spec = ProcessSpec(IID, 0.0, 1.0)
    epsilons, ns = [0.05, 0.1, 0.2], [50, 500]
    rows = [[
        n, eps,
        cn2_closed_form(spec, n),
        predictable_bound(spec, n, eps),
        iid_tail_bound(spec, n, eps)
    ] for n in ns for eps in epsilons]
    header = ["n", "epsilon", "c2", "predictable_bound", "hoeffding_bound"]
    return spec, header, rows, _run_tails(spec, cfg, epsilons, ns)


def _copy_study(cfg):
    spec = ProcessSpec(COPY, 0.0, 1.0)
    ns = [1, 10, 100, 1000]
    rows = [[n, cn2_closed_form(spec, n),
             predictable_bound(spec, n, 0.25)] for n in ns]
    header = ["n", "c2", "bound"]
    return spec, header, rows, _run_tails(spec, cfg, [0.25], ns)


def _ar1_study(cfg):
    header = [
        "theta", "n", "c2_paper", "c2_rational", "c2_derived", "upper_bound",
        "effective_sample_factor"
    ]
    rows = []
    for theta in (0.1, 0.5, 0.9):
        grid_spec = ProcessSpec(AR1, 0.0, 1.0, theta)
        for n in range(1, 201):
            rows.append([
                theta, n,
                cn2_closed_form(grid_spec, n, BoundFormula.PAPER_PRINTED),
                cn2_rational_form(grid_spec, n),
                cn2_closed_form(grid_spec, n, BoundFormula.DERIVED_EXACT),
                cn2_upper_bound(grid_spec, n),
                effective_sample_factor(theta)
            ])
    spec = ProcessSpec(AR1, 0.0, 1.0, 0.5, burn_in=200)
    return spec, header, rows, _run_tails(spec, cfg, [0.1, 0.2], [50, 500])


@_command("report", "Reproduce the IID, Copy and AR1 studies into a directory.")
def _report_bundle(cfg):
    out_dir = cfg.get("output")
    if not out_dir:
        raise ArgumentError("report needs an output directory (-o)")
    index = {"studies": {}}
    violated = 0
    for name, study in (("iid", _iid_study), ("copy", _copy_study),
                        ("ar1", _ar1_study)):
        spec, header, rows, reports = study(cfg)
        bounds_file = "{}_bounds.csv".format(name)
        tails_file = "{}_tails.csv".format(name)
        write_csv(header, rows, os.path.join(out_dir, bounds_file))
        write_csv(_TAIL_HEADER, _tail_rows(reports),
                  os.path.join(out_dir, tails_file))
        bad = sum(1 for r in reports if not r.holds)
        violated += bad
        study_report = _report("report", cfg, {
            "study": name,
            "spec": spec.to_dict(),
            "verdict": HOLDS if bad == 0 else VIOLATED,
            "cells": [r.to_dict() for r in reports]
        })
        write_json(study_report, os.path.join(out_dir, name + ".json"))
        index["studies"][name] = {
            "bounds": bounds_file,
            "tails": tails_file,
            "report": name + ".json",
            "violated": bad
        }
    index["verdict"] = HOLDS if violated == 0 else VIOLATED
    write_json(_report("report", cfg, index),
               os.path.join(out_dir, "index.json"))
    return (EXIT_OK if violated == 0 else EXIT_VIOLATED), \
        "report: {} -> {} ({} violated)".format(out_dir, index["verdict"],
                                                violated)


_ARGUMENTS = {
    "simulate": _simulate_args,
    "bounds": _bounds_args,
    "verify": _verify_args,
    "rademacher": _rademacher_args,
    "qn": _mc_args,
    "certify": _certify_args,
    "coverage": _coverage_args,
    "report": _report_args,
}


def run(argv=None):
    """
    Execute one command.
    Args:
        argv(list<str>|None): Arguments without the program name. None reads sys.argv.
    Returns:
        int: Exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ARGUMENT
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_ARGUMENT
    func, _ = COMMANDS[args.command]
    try:
        cfg = resolve_config(args.command, args)
        code, summary = func(cfg)
    except TSRiskError as e:
        _logger.error("{}: {}".format(args.command, e))
        return EXIT_ARGUMENT
    print(summary)
    return code


def main():
    sys.exit(run())
