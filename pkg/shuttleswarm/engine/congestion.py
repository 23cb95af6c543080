#!/usr/bin/env python

"""
congestion: per edge vehicle counts and the speed coefficient derived from them

    speed_coefficient = 1 / (1 + alpha * vehicles / lanes)
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

from collections import Counter

from shuttleswarm.config import config


class CongestionState(object):
    """vehicle counts and coefficients of the occupied edges, every other
    edge has count 0 and coefficient 1"""

    def __init__(self, vehicle_count, speed_coefficient):
        self.vehicle_count = vehicle_count
        self.speed_coefficient = speed_coefficient

    def __repr__(self):
        return "CongestionState(%s occupied edges)" % len(self.vehicle_count)

    def count(self, edge):
        return self.vehicle_count.get(edge, 0)

    def coefficient(self, edge):
        return self.speed_coefficient.get(edge, 1.)


def speed_coefficient(vehicles, lanes, alpha=None):
    alpha = config.__DEFAULT_CONGESTION_ALPHA__ if alpha is None else alpha
    if alpha < 0:
        raise ValueError("alpha should be >= 0 (got %s)" % alpha)
    return 1. / (1. + alpha * float(vehicles) / lanes)


def update_congestion(graph, vehicle_edges, alpha=None, previous=None):
    """ vehicle_edges: iterable of the (u, v) edges occupied by vehicles
    (one entry per vehicle)

    sets vehicle_count and speed_coefficient on the graph edges. With the
    state of the previous tick given only edges occupied then or now are
    touched, otherwise every edge is reset first.
    """
    if previous is None:
        graph.reset_congestion()
    else:
        for (u, v) in previous.vehicle_count:
            d = graph.edge(u, v)
            d["vehicle_count"] = 0
            d["speed_coefficient"] = 1.

    counts = Counter(vehicle_edges)
    coefficients = {}
    for (u, v), n in counts.items():
        d = graph.edge(u, v)
        d["vehicle_count"] = n
        d["speed_coefficient"] = speed_coefficient(n, d["lanes"], alpha)
        coefficients[(u, v)] = d["speed_coefficient"]

    return CongestionState(dict(counts), coefficients)
