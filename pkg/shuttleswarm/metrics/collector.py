#!/usr/bin/env python

"""
per tick collection of the sampled series
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

from shuttleswarm.config import config
from shuttleswarm.agents.states import ShuttleState
from shuttleswarm.metrics.report import SampledSeries

SERIES_NAMES = ("served_users", "shuttles_in_use", "late_users")


def served_late(p):
    """served person who arrived late at work on a shuttle"""
    return any(t.served and t.late for t in p.trips)


class MetricsCollector(object):
    def __init__(self, sample_interval=None):
        self.sample_interval = config.__DEFAULT_SAMPLE_INTERVAL__ if sample_interval is None else sample_interval
        self.series = dict((name, SampledSeries(name, self.sample_interval)) for name in SERIES_NAMES)
        self.last_sample = None

    def __repr__(self):
        return "MetricsCollector(every %s s, %s samples)" % (
            self.sample_interval, len(self.series["served_users"]))

    def due(self, now):
        return self.last_sample is None or now - self.last_sample >= self.sample_interval

    def collect(self, world, now, force=False):
        if not (force or self.due(now)):
            return self
        if self.last_sample is not None and now <= self.last_sample:
            return self
        persons = world.persons.values()
        self.series["served_users"].add(now, sum(1 for p in persons if p.served))
        self.series["late_users"].add(now, sum(1 for p in persons if p.served and served_late(p)))
        self.series["shuttles_in_use"].add(now, sum(1 for s in world.shuttles.values() if s.state != ShuttleState.WANDER))
        self.last_sample = now
        return self


def collect(world, now=None):
    """step (6) of a tick"""
    return world.metrics.collect(world, world.clock if now is None else now)
