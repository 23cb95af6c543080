#!/usr/bin/env python

"""
common cars wander between random intersections and only add to congestion

two reflexes per step:
    time_to_go  without a target, pick a random intersection and route there
    move        drive along the path; below reroute_speed the car turns
                around (when the road has a reverse direction) and reroutes
                to the same target avoiding the slow edge
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

from shuttleswarm.config import config
from shuttleswarm.geodata.road_graph import Path, shortest_path
from shuttleswarm.engine.movement import PathCursor, advance_along_path
from shuttleswarm.agents.shuttle import random_target


class CommonCar(object):
    def __init__(self, car_id, node, speed=None):
        speed = config.__DEFAULT_VEHICLE_SPEED__ if speed is None else speed
        if speed < 0:
            raise ValueError("speed should be >= 0 (got %s)" % speed)
        self.car_id = car_id
        self.node = node
        self.speed = speed
        self.cursor = None
        self.target = None
        self.reroute_after = None
        self.reroutes = 0

    def __repr__(self):
        return "CommonCar(%s, at %s, target = %s)" % (self.car_id, self.node, self.target)

    @property
    def current_path(self):
        return None if self.cursor is None else self.cursor.path

    @property
    def edge(self):
        return None if self.cursor is None else self.cursor.edge


def _upcoming_edge(c):
    if c.cursor is None or c.cursor.finished:
        return None
    return c.cursor.path.edges[c.cursor.index]


def reroute(c, graph):
    """ abandons the current path and routes to the same target avoiding the
    current edge, turning around when standing inside it

    returns True if a new path was found
    """
    edge = _upcoming_edge(c)
    if edge is None:
        return False
    u, v = edge
    avoid = set([edge])

    if c.cursor.offset > 0:
        if not graph.graph.has_edge(v, u):
            return False
        rest = shortest_path(graph, u, c.target, avoid=avoid)
        if rest is None:
            return False
        back_length = graph.edge(v, u)["length"]
        back = Path([(v, u)], v, u, back_length, graph.edge_time(v, u))
        path = Path.join([back, rest])
        offset = min(max(back_length - c.cursor.offset, 0.), back_length)
        c.cursor = PathCursor(path, 0, offset)
    else:
        rest = shortest_path(graph, u, c.target, avoid=avoid)
        if rest is None:
            return False
        c.cursor = PathCursor(rest)

    c.reroutes += 1
    return True


def step_common_car(c, world, now=None):
    graph = world.graph
    if c.cursor is None or c.cursor.finished:
        c.target = random_target(world, c.node)
        c.cursor = PathCursor(shortest_path(graph, c.node, c.target))
        return c

    advance_along_path(c.cursor, graph, c.speed, world.params.step_seconds)
    c.node = c.cursor.node
    if c.cursor.finished:
        c.target = None
        return c

    u, v = _upcoming_edge(c)
    slow = graph.effective_speed(u, v, c.speed) < world.params.reroute_speed
    cooled = c.reroute_after is None or now is None or now >= c.reroute_after
    if slow and cooled:
        if reroute(c, graph):
            logger.debug("car %s reroutes at %s towards %s" % (c.car_id, now, c.target))
            world.log("reroute", car=c.car_id, edge=[u, v], target=c.target)
        if now is not None:
            c.reroute_after = now + world.params.reroute_cooldown
    return c
