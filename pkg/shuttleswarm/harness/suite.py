#!/usr/bin/env python

"""
seed swept experiment suites

a sweep file is a JSON document

    {"base": {"grid_rows": 8, "grid_cols": 8, "user_count": 200},
     "parameter": "fleet_size",
     "values": [4, 6, 8, 10],
     "seeds": 5}

every (value, seed) pair is an isolated run written to runs/<fingerprint>,
the points are then folded in (value, seed) order into summary.csv
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import os
import csv
import json
import multiprocessing as mp
from collections import OrderedDict

import numpy as np

from shuttleswarm.harness.scenario import ScenarioConfig, ConfigurationError
from shuttleswarm.harness.runner import run_scenario

SWEEPABLE = ("fleet_size", "user_count", "workplace_mode",
             "angle_threshold_deg", "cost_per_km", "wait_timeout")

SUMMARY_FILE = "summary.csv"

AGGREGATED = ("served_pct",
              "late_pct",
              "avg_late_minutes",
              "avg_waiting_minutes",
              "avg_cumulative_lifts",
              "avg_travel_cost",
              "median_travel_cost",
              "total_gain",
              "avg_km_per_shuttle")

COST_PERCENTILES = (25, 50, 75)

# desk scale analogues of the workplace, fixed fleet and fleet size evaluations
# the workplace and angle sweeps use long blocks and a short pickup radius, so that
# a request is seen only from its own intersection and queues can form at workplaces
SPARSE_CITY = dict(grid_rows=8, grid_cols=8, grid_block=400., pickup_radius=150.,
                   fleet_size=10, user_count=120, work_window=["08:00", "09:00"])

PRESETS = {
    "workplace": dict(base=SPARSE_CITY,
                      parameter="workplace_mode", values=["diversified", "two", "one"], seeds=5),
    "fixed-fleet": dict(base=dict(grid_rows=8, grid_cols=8, fleet_size=8),
                        parameter="user_count", values=[50, 100, 150, 200], seeds=5),
    "fleet-size": dict(base=dict(grid_rows=8, grid_cols=8, user_count=200),
                       parameter="fleet_size", values=[4, 6, 8, 10], seeds=5),
    "angle": dict(base=SPARSE_CITY,
                  parameter="angle_threshold_deg", values=[10, 20, 30, 45], seeds=5),
}


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


class SweepSpec(object):
    def __init__(self, base, parameter, values, seeds=5):
        if not parameter in SWEEPABLE:
            raise ConfigurationError("parameter should be one of %s (got '%s')" % (SWEEPABLE, parameter))
        values = list(values)
        if len(values) == 0:
            raise ConfigurationError("the value list of a sweep may not be empty")
        if all(_is_number(v) for v in values):
            if any(b <= a for a, b in zip(values[:-1], values[1:])):
                raise ConfigurationError("sweep values should be strictly increasing (got %s)" % values)
        elif len(set(values)) != len(values):
            raise ConfigurationError("sweep values should be distinct (got %s)" % values)

        if isinstance(seeds, int) and not isinstance(seeds, bool):
            seeds = list(range(seeds))
        seeds = list(seeds)
        if len(seeds) == 0:
            raise ConfigurationError("a sweep needs at least one seed")

        self.base = base if isinstance(base, ScenarioConfig) else ScenarioConfig(**dict(base))
        self.parameter = parameter
        self.values = values
        self.seeds = [int(s) for s in seeds]
        # validates every point up front
        self.points = [self.config(v, s) for v in self.values for s in self.seeds]

    def __repr__(self):
        return "SweepSpec(%s = %s, seeds = %s)" % (self.parameter, self.values, self.seeds)

    def config(self, value, seed):
        return self.base.replace(**{self.parameter: value, "seed": seed})

    @classmethod
    def from_dict(cls, d, base_dir=None, seeds=None):
        if not isinstance(d, dict):
            raise ConfigurationError("a sweep should be a JSON object")
        unknown = sorted(set(d) - set(("base", "parameter", "values", "seeds")))
        if unknown:
            raise ConfigurationError("unknown sweep keys %s" % unknown)
        if not "parameter" in d or not "values" in d:
            raise ConfigurationError("a sweep needs 'parameter' and 'values'")
        base = ScenarioConfig.from_dict(d.get("base", {}), base_dir=base_dir)
        if not isinstance(d["values"], list):
            raise ConfigurationError("'values' should be a list")
        return cls(base, d["parameter"], d["values"],
                   d.get("seeds", 5) if seeds is None else seeds)

    @classmethod
    def preset(cls, name, seeds=None):
        if not name in PRESETS:
            raise ConfigurationError("unknown preset '%s' (one of %s)" % (name, sorted(PRESETS)))
        return cls.from_dict(PRESETS[name], seeds=seeds)


def load_sweep(fName, seeds=None):
    if not os.path.exists(fName):
        raise ConfigurationError("sweep file '%s' does not exist" % fName)
    with open(fName) as f:
        try:
            d = json.load(f)
        except ValueError as e:
            raise ConfigurationError("malformed sweep file '%s': %s" % (fName, e))
    return SweepSpec.from_dict(d, base_dir=os.path.dirname(os.path.abspath(fName)), seeds=seeds)


class SuiteResult(object):
    def __init__(self, spec, rows, reports, summary_path=None):
        self.spec = spec
        self.rows = rows
        self.reports = reports
        self.summary_path = summary_path

    def __repr__(self):
        return "SuiteResult(%s, %s points)" % (self.spec.parameter, len(self.rows))

    def metric(self, name, seed):
        """name over the sweep values for one seed"""
        return [getattr(self.reports[(v, seed)], name) for v in self.spec.values]


def _run_point(args):
    config, run_dir, formats = args
    report, world = run_scenario(config, out_dir=run_dir, formats=formats)
    return report


def _aggregate(values):
    values = [v for v in values if v is not None]
    if len(values) == 0:
        return None, None, None
    return float(np.mean(values)), float(np.min(values)), float(np.max(values))


def summary_columns():
    cols = ["parameter", "value", "seeds", "completed", "incomplete"]
    for name in AGGREGATED:
        cols += ["%s_mean" % name, "%s_min" % name, "%s_max" % name]
    cols += ["cost_p%s" % q for q in COST_PERCENTILES]
    return cols


def aggregate_point(parameter, value, reports):
    """ mean, min and max of every AGGREGATED metric over the completed runs
    of one point, travel cost percentiles pooled over their passengers
    """
    complete = [r for r in reports if not r.incomplete]
    row = OrderedDict([("parameter", parameter),
                       ("value", value),
                       ("seeds", len(reports)),
                       ("completed", len(complete)),
                       ("incomplete", len(reports) - len(complete))])
    for name in AGGREGATED:
        mean, lo, hi = _aggregate([getattr(r, name) for r in complete])
        row["%s_mean" % name] = mean
        row["%s_min" % name] = lo
        row["%s_max" % name] = hi
    costs = [c for r in complete for c in r.travel_costs]
    for q in COST_PERCENTILES:
        row["cost_p%s" % q] = float(np.percentile(costs, q)) if costs else None
    return row


def _cell(val):
    if val is None:
        return ""
    return repr(val) if isinstance(val, float) else str(val)


def write_summary(rows, fName):
    with open(fName, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        cols = summary_columns()
        w.writerow(cols)
        for row in rows:
            w.writerow([_cell(row[c]) for c in cols])


def run_experiment_suite(spec, out_dir=None, jobs=1, formats=("csv", "json")):
    """ runs every (value, seed) point of spec, jobs of them at a time

    incomplete runs flag their point and are left out of its aggregates
    """
    tasks = []
    for value in spec.values:
        for seed in spec.seeds:
            config = spec.config(value, seed)
            run_dir = None if out_dir is None else os.path.join(out_dir, "runs", config.fingerprint())
            tasks.append((config, run_dir, formats))

    logger.info("running %s: %s runs with %s job(s)" % (spec, len(tasks), jobs))
    if jobs > 1 and len(tasks) > 1:
        with mp.get_context("spawn").Pool(processes=jobs) as pool:
            reports = pool.map(_run_point, tasks)
    else:
        reports = [_run_point(t) for t in tasks]

    by_point = OrderedDict()
    for (config, _, _), report in zip(tasks, reports):
        by_point[(getattr(config, spec.parameter), config.seed)] = report

    rows = []
    for value in spec.values:
        point = [by_point[(value, seed)] for seed in spec.seeds]
        row = aggregate_point(spec.parameter, value, point)
        if row["incomplete"] > 0:
            logger.warning("%s = %s: %s of %s runs incomplete" % (
                spec.parameter, value, row["incomplete"], row["seeds"]))
        rows.append(row)

    summary_path = None
    if out_dir is not None:
        if not os.path.exists(out_dir):
            os.makedirs(out_dir)
        summary_path = os.path.join(out_dir, SUMMARY_FILE)
        write_summary(rows, summary_path)
    return SuiteResult(spec, rows, by_point, summary_path)


def _monotone(seq, increasing=True):
    if any(v is None for v in seq):
        return False
    pairs = zip(seq[:-1], seq[1:])
    return all(b >= a for a, b in pairs) if increasing else all(b <= a for a, b in pairs)


def fleet_size_trend(result):
    """seeds over which served % does not drop and waiting does not grow with the fleet"""
    seeds = result.spec.seeds
    return {"served_pct": sum(_monotone(result.metric("served_pct", s), True) for s in seeds),
            "avg_waiting_minutes": sum(_monotone(result.metric("avg_waiting_minutes", s), False) for s in seeds),
            "seeds": len(seeds)}


def user_count_trend(result):
    """seeds over which lifts per shuttle do not drop and served % does not grow with the users"""
    seeds = result.spec.seeds
    return {"avg_cumulative_lifts": sum(_monotone(result.metric("avg_cumulative_lifts", s), True) for s in seeds),
            "served_pct": sum(_monotone(result.metric("served_pct", s), False) for s in seeds),
            "seeds": len(seeds)}


def _greater(a, b):
    return a is not None and b is not None and a > b


def workplace_trend(result):
    """seeds with diversified costlier than one workplace, and one workplace waiting longer"""
    seeds = result.spec.seeds
    reports = result.reports
    return {"avg_travel_cost": sum(_greater(reports[("diversified", s)].avg_travel_cost,
                                            reports[("one", s)].avg_travel_cost) for s in seeds),
            "avg_waiting_minutes": sum(_greater(reports[("one", s)].avg_waiting_minutes,
                                                reports[("diversified", s)].avg_waiting_minutes) for s in seeds),
            "seeds": len(seeds)}
