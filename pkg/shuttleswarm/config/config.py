from __future__ import absolute_import
from __future__ import print_function
import logging

logger = logging.getLogger(__name__)

import os

from .myconfigparser import MyConfigParser

__CONFIGFILE__ = os.environ.get("SHUTTLESWARM_CONFIG",
                                os.path.expanduser("~/.shuttleswarm"))

config_parser = MyConfigParser(__CONFIGFILE__)

# times in simulated seconds, distances in meters, speeds in m/s
defaults = {
    "wait_timeout": 600.,
    "pickup_radius": 300.,
    "lookahead": 1800.,
    "angle_threshold_deg": 20.,
    "step_seconds": 1.,
    "cost_per_km": 1.,
    "dwell_seconds": 10.,
    "solo_speed": 30. / 3.6,
    "vehicle_speed": 50. / 3.6,
    "reroute_speed": 5. / 3.6,
    "reroute_cooldown": 60.,
    "congestion_alpha": 0.25,
    "sample_interval": 60.,
    "shuttle_capacity": 12,
    "work_duration": 8 * 3600.,
    "work_window_start": "08:00",
    "work_window_end": "10:00",
    "grid_rows": 8,
    "grid_cols": 8,
    "grid_block": 150.,
}


for key in config_parser.unknown_keys(defaults):
    logger.warning("unknown key '%s' in %s" % (key, __CONFIGFILE__))


def _get_param(name, dtype):
    return dtype(config_parser.get_typed(name, dtype, defaults[name]))


__DEFAULT_WAIT_TIMEOUT__ = _get_param("wait_timeout", float)
__DEFAULT_PICKUP_RADIUS__ = _get_param("pickup_radius", float)
__DEFAULT_LOOKAHEAD__ = _get_param("lookahead", float)
__DEFAULT_ANGLE_THRESHOLD__ = _get_param("angle_threshold_deg", float)
__DEFAULT_STEP_SECONDS__ = _get_param("step_seconds", float)
__DEFAULT_COST_PER_KM__ = _get_param("cost_per_km", float)
__DEFAULT_DWELL_SECONDS__ = _get_param("dwell_seconds", float)

__DEFAULT_SOLO_SPEED__ = _get_param("solo_speed", float)
__DEFAULT_VEHICLE_SPEED__ = _get_param("vehicle_speed", float)
__DEFAULT_REROUTE_SPEED__ = _get_param("reroute_speed", float)
__DEFAULT_REROUTE_COOLDOWN__ = _get_param("reroute_cooldown", float)

__DEFAULT_CONGESTION_ALPHA__ = _get_param("congestion_alpha", float)
__DEFAULT_SAMPLE_INTERVAL__ = _get_param("sample_interval", float)
__DEFAULT_CAPACITY__ = _get_param("shuttle_capacity", int)
__DEFAULT_WORK_DURATION__ = _get_param("work_duration", float)

__DEFAULT_WINDOW_START__ = _get_param("work_window_start", str)
__DEFAULT_WINDOW_END__ = _get_param("work_window_end", str)

__DEFAULT_GRID_ROWS__ = _get_param("grid_rows", int)
__DEFAULT_GRID_COLS__ = _get_param("grid_cols", int)
__DEFAULT_GRID_BLOCK__ = _get_param("grid_block", float)

# simulated day
__DAY_SECONDS__ = 24 * 3600


if __name__ == '__main__':
    for k in sorted(defaults):
        print(k, config_parser.get(k, defaults[k]))
