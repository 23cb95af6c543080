#!/usr/bin/env python

"""
movement of agents along paths of the road graph

an agent moving along a path holds a PathCursor (edge index + offset in m
on that edge). advance_along_path spends a time budget dt, crossing edges
as needed, at the effective speed min(agent speed, free flow speed *
speed_coefficient) of each edge.
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)


class PathCursor(object):
    def __init__(self, path, index=0, offset=0.):
        self.path = path
        self.index = index
        self.offset = offset

    def __repr__(self):
        return "PathCursor(%s, edge %s, offset %.2f)" % (self.path, self.index, self.offset)

    @property
    def finished(self):
        return self.index >= len(self.path.edges)

    @property
    def node(self):
        """the node the cursor stands on, None when inside an edge"""
        if self.offset > 0:
            return None
        if self.finished:
            return self.path.destination
        return self.path.edges[self.index][0]

    @property
    def edge(self):
        """the edge currently occupied, None at a node"""
        if self.finished or self.offset <= 0:
            return None
        return self.path.edges[self.index]

    @property
    def last_node(self):
        if self.finished:
            return self.path.destination
        return self.path.edges[self.index][0]


class MoveResult(object):
    def __init__(self):
        self.distance = 0.
        self.reached = []
        self.stopped_at = None
        self.arrived = False
        self.min_speed = None
        self.elapsed = 0.

    def __repr__(self):
        return "MoveResult(%.2f m, reached = %s, stopped_at = %s, arrived = %s)" % (
            self.distance, self.reached, self.stopped_at, self.arrived)


def advance_along_path(cursor, graph, speed, dt, stop_at=None):
    """ moves cursor for dt seconds

    stop_at: optional predicate node -> bool; movement ends at the first
    reached node for which it holds (a stop event), the rest of the time
    budget is dropped. The final node of the path always ends the movement.
    """
    if speed < 0:
        raise ValueError("speed should be >= 0 (got %s)" % speed)
    if not dt > 0:
        raise ValueError("dt should be > 0 (got %s)" % dt)

    res = MoveResult()
    edges = cursor.path.edges
    time_left = float(dt)

    if cursor.finished:
        res.arrived = True
        return res

    while time_left > 0 and not cursor.finished:
        u, v = edges[cursor.index]
        d = graph.edge(u, v)
        eff = min(speed, d["speed"] * d["speed_coefficient"])
        res.min_speed = eff if res.min_speed is None else min(res.min_speed, eff)
        if eff <= 0:
            break
        remaining = d["length"] - cursor.offset
        t_needed = remaining / eff
        if t_needed <= time_left:
            time_left -= t_needed
            res.distance += remaining
            cursor.index += 1
            cursor.offset = 0.
            res.reached.append(v)
            if cursor.finished:
                res.arrived = True
                break
            if stop_at is not None and stop_at(v):
                res.stopped_at = v
                break
        else:
            step = eff * time_left
            cursor.offset += step
            res.distance += step
            time_left = 0.

    res.elapsed = dt - time_left
    return res
