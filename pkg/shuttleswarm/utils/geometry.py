#!/usr/bin/env python

"""
planar geometry helpers

all coordinates are planar meters (x, y); geographic input is projected
once by the city loader with a local equirectangular projection
"""

from __future__ import absolute_import, print_function

import numpy as np

EARTH_RADIUS = 6371008.8


class UndefinedBearingError(ValueError):
    pass


def bearing_angle(at, final_target, candidate):
    """ unsigned vertex angle (degrees, in [0, 180]) at `at` between the rays
    at->final_target and at->candidate

    raises UndefinedBearingError if at == final_target
    a candidate lying on `at` itself is on every ray and gives 0.
    """
    at = np.asarray(at, np.float64)
    u = np.asarray(final_target, np.float64) - at
    v = np.asarray(candidate, np.float64) - at

    if not np.any(u):
        raise UndefinedBearingError("bearing undefined: position %s equals final target" % (tuple(at),))
    if not np.any(v):
        return 0.

    cross = u[0] * v[1] - u[1] * v[0]
    dot = u[0] * v[0] + u[1] * v[1]
    return float(np.degrees(np.arctan2(abs(cross), dot)))


def equirectangular(lon0, lat0):
    """ returns a function (lon, lat) -> (x, y) in meters, projected
    about (lon0, lat0)
    """
    k = np.cos(np.radians(lat0))

    def _project(lon, lat, z=None):
        x = EARTH_RADIUS * np.radians(np.asarray(lon) - lon0) * k
        y = EARTH_RADIUS * np.radians(np.asarray(lat) - lat0)
        return x, y

    return _project


if __name__ == '__main__':
    print(bearing_angle((0, 0), (10, 0), (10, 3.64)))
