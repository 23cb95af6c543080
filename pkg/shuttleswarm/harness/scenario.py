#!/usr/bin/env python

"""
scenario configuration

a scenario is a JSON document, every key optional:

    {"grid_rows": 8, "grid_cols": 8, "grid_block": 150,
     "fleet_size": 10, "user_count": 120, "workplace_mode": "diversified",
     "work_window": ["08:00", "10:00"], "seed": 3}

or with a city file instead of the grid ("city": "trento.geojson", relative
to the scenario file). Missing keys are taken from the user defaults in
~/.shuttleswarm (see shuttleswarm.config).
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import os
import re
import json
import hashlib
from collections import OrderedDict

from shuttleswarm.config import config

WORKPLACE_MODES = ("diversified", "two", "one")

SEED_ENV = "SHUTTLESWARM_SEED"


class ConfigurationError(ValueError):
    pass


def parse_clock(s):
    """ "HH:MM" -> seconds since midnight"""
    if isinstance(s, (int, float)) and not isinstance(s, bool):
        return float(s)
    m = re.match(r"^(\d{1,2}):(\d{2})$", str(s))
    if m is None:
        raise ConfigurationError("time should be given as HH:MM (got '%s')" % (s,))
    h, mins = int(m.group(1)), int(m.group(2))
    if h > 24 or mins > 59:
        raise ConfigurationError("invalid time of day '%s'" % s)
    return 3600. * h + 60. * mins


def _integer(name, val):
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigurationError("'%s' should be an integer (got %r)" % (name, val))
    return val


def _number(name, val):
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigurationError("'%s' should be a number (got %r)" % (name, val))
    return float(val)


def _string(name, val):
    if not isinstance(val, str):
        raise ConfigurationError("'%s' should be a string (got %r)" % (name, val))
    return val


def _window(name, val):
    if not isinstance(val, (list, tuple)) or len(val) != 2:
        raise ConfigurationError("'%s' should be a [start, end] pair (got %r)" % (name, val))
    for v in val:
        parse_clock(v)
    return list(val)


def _clock(name, val):
    parse_clock(val)
    return val


# key -> (checker, default, may be null)
SCENARIO_SCHEMA = OrderedDict([
    ("city", (_string, None, True)),
    ("grid_rows", (_integer, config.__DEFAULT_GRID_ROWS__, False)),
    ("grid_cols", (_integer, config.__DEFAULT_GRID_COLS__, False)),
    ("grid_block", (_number, config.__DEFAULT_GRID_BLOCK__, False)),
    ("grid_seed", (_integer, None, True)),
    ("fleet_size", (_integer, 10, False)),
    ("user_count", (_integer, 100, False)),
    ("common_car_count", (_integer, None, True)),
    ("workplace_mode", (_string, "diversified", False)),
    ("cost_per_km", (_number, config.__DEFAULT_COST_PER_KM__, False)),
    ("work_window", (_window, [config.__DEFAULT_WINDOW_START__, config.__DEFAULT_WINDOW_END__], False)),
    ("work_duration", (_number, config.__DEFAULT_WORK_DURATION__, False)),
    ("wait_timeout", (_number, config.__DEFAULT_WAIT_TIMEOUT__, False)),
    ("pickup_radius", (_number, config.__DEFAULT_PICKUP_RADIUS__, False)),
    ("angle_threshold_deg", (_number, config.__DEFAULT_ANGLE_THRESHOLD__, False)),
    ("lookahead", (_number, config.__DEFAULT_LOOKAHEAD__, False)),
    ("step_seconds", (_number, config.__DEFAULT_STEP_SECONDS__, False)),
    ("dwell_seconds", (_number, config.__DEFAULT_DWELL_SECONDS__, False)),
    ("congestion_alpha", (_number, config.__DEFAULT_CONGESTION_ALPHA__, False)),
    ("shuttle_capacity", (_integer, config.__DEFAULT_CAPACITY__, False)),
    ("sample_interval", (_number, config.__DEFAULT_SAMPLE_INTERVAL__, False)),
    ("day_start", (_clock, None, True)),
    ("max_ticks", (_integer, None, True)),
    ("seed", (_integer, None, True)),
])


class ScenarioConfig(object):
    def __init__(self, base_dir=None, **kwargs):
        unknown = sorted(set(kwargs) - set(SCENARIO_SCHEMA))
        if unknown:
            raise ConfigurationError("unknown scenario keys %s" % unknown)
        for name, (check, default, nullable) in SCENARIO_SCHEMA.items():
            val = kwargs.get(name, default)
            if val is None:
                if not nullable:
                    raise ConfigurationError("'%s' may not be null" % name)
            else:
                val = check(name, val)
            setattr(self, name, val)
        self.base_dir = base_dir
        self.validate()

    def __repr__(self):
        return "ScenarioConfig(%s)" % ", ".join("%s = %r" % kv for kv in self.to_dict().items()
                                                 if kv[1] is not None)

    def validate(self):
        def _require(cond, msg):
            if not cond:
                raise ConfigurationError(msg)

        _require(self.fleet_size >= 0, "fleet_size should be >= 0")
        _require(self.user_count >= 0, "user_count should be >= 0")
        _require(self.common_car_count is None or self.common_car_count >= 0, "common_car_count should be >= 0")
        _require(self.workplace_mode in WORKPLACE_MODES,
                 "workplace_mode should be one of %s (got '%s')" % (WORKPLACE_MODES, self.workplace_mode))
        _require(self.window[0] < self.window[1], "work window start should be before its end")
        _require(0 < self.angle_threshold_deg < 180, "angle_threshold_deg should be in (0, 180)")
        _require(self.cost_per_km >= 0, "cost_per_km should be >= 0")
        _require(self.wait_timeout > 0, "wait_timeout should be > 0")
        _require(self.pickup_radius >= 0, "pickup_radius should be >= 0")
        _require(self.lookahead >= 0, "lookahead should be >= 0")
        _require(self.step_seconds > 0, "step_seconds should be > 0")
        _require(self.dwell_seconds >= 0, "dwell_seconds should be >= 0")
        _require(self.work_duration > 0, "work_duration should be > 0")
        _require(self.congestion_alpha >= 0, "congestion_alpha should be >= 0")
        _require(self.shuttle_capacity >= 1, "shuttle_capacity should be >= 1")
        _require(self.sample_interval > 0, "sample_interval should be > 0")
        _require(self.max_ticks is None or self.max_ticks > 0, "max_ticks should be > 0")
        if self.city is None:
            _require(self.grid_rows >= 2 and self.grid_cols >= 2, "grid needs at least 2 x 2 intersections")
            _require(self.grid_block > 0, "grid_block should be > 0")
        return self

    @property
    def window(self):
        return (parse_clock(self.work_window[0]), parse_clock(self.work_window[1]))

    @property
    def cars(self):
        """common cars, a quarter of the users unless given"""
        return self.user_count // 4 if self.common_car_count is None else self.common_car_count

    @property
    def city_path(self):
        if self.city is None:
            return None
        if self.base_dir is None or os.path.isabs(self.city):
            return self.city
        return os.path.join(self.base_dir, self.city)

    def to_dict(self):
        return OrderedDict((name, getattr(self, name)) for name in SCENARIO_SCHEMA)

    def replace(self, **kwargs):
        d = self.to_dict()
        d.update(kwargs)
        return ScenarioConfig(base_dir=self.base_dir, **d)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    def fingerprint(self):
        """content hash naming the run directory of this (config, seed)"""
        d = self.to_dict()
        d["city"] = self.city_path
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode("utf-8")).hexdigest()[:16]

    def simulation_params(self):
        from shuttleswarm.engine.world import SimulationParams
        return SimulationParams(wait_timeout=self.wait_timeout,
                                lookahead=self.lookahead,
                                step_seconds=self.step_seconds,
                                dwell_seconds=self.dwell_seconds,
                                congestion_alpha=self.congestion_alpha,
                                sample_interval=self.sample_interval)

    def build_world(self, trace=False):
        from shuttleswarm.harness.population import build_world
        return build_world(self, trace=trace)

    @classmethod
    def from_dict(cls, d, base_dir=None):
        if not isinstance(d, dict):
            raise ConfigurationError("a scenario should be a JSON object")
        if "base_dir" in d:
            raise ConfigurationError("unknown scenario keys ['base_dir']")
        return cls(base_dir=base_dir, **d)

    @classmethod
    def from_json(cls, s, base_dir=None):
        try:
            d = json.loads(s)
        except ValueError as e:
            raise ConfigurationError("malformed scenario at line %s, column %s: %s" % (
                getattr(e, "lineno", "?"), getattr(e, "colno", "?"), getattr(e, "msg", e)))
        return cls.from_dict(d, base_dir=base_dir)


def resolve_seed(cli_seed=None, file_seed=None, environ=None):
    """--seed, then the scenario file, then $SHUTTLESWARM_SEED, then 0"""
    environ = os.environ if environ is None else environ
    if cli_seed is not None:
        return int(cli_seed)
    if file_seed is not None:
        return int(file_seed)
    if environ.get(SEED_ENV, "") != "":
        try:
            return int(environ[SEED_ENV])
        except ValueError:
            raise ConfigurationError("%s should be an integer (got '%s')" % (SEED_ENV, environ[SEED_ENV]))
    return 0


def load_scenario(fName, seed=None):
    """ reads a scenario file, the seed resolved by resolve_seed"""
    if not os.path.exists(fName):
        raise ConfigurationError("scenario file '%s' does not exist" % fName)
    with open(fName) as f:
        conf = ScenarioConfig.from_json(f.read(), base_dir=os.path.dirname(os.path.abspath(fName)))
    return conf.replace(seed=resolve_seed(seed, conf.seed))
