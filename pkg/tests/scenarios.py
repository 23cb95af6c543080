"""
small hand traceable worlds shared by the tests
"""

from __future__ import absolute_import, print_function

from shuttleswarm.geodata.city_model import CityModel, Intersection, RoadSegmentSpec
from shuttleswarm.geodata.road_graph import build_road_graph
from shuttleswarm.agents.person import Person
from shuttleswarm.agents.shuttle import Shuttle
from shuttleswarm.engine.world import World, SimulationParams, step

WORK_START = 9 * 3600.


def line_graph(n=3, spacing=500., lanes=1):
    """nodes 0 .. n-1 on the x axis, two way roads between neighbours"""
    city = CityModel([Intersection(i, i * spacing, 0) for i in range(n)],
                     [RoadSegmentSpec(i, i, i + 1, [(i * spacing, 0), ((i + 1) * spacing, 0)], lanes=lanes)
                      for i in range(n - 1)]).validate()
    return build_road_graph(city)


def square_graph(side=100.):
    """0 (0,0), 1 (side,0), 2 (0,side), 3 (side,side) around a block"""
    xy = {0: (0, 0), 1: (side, 0), 2: (0, side), 3: (side, side)}
    roads = [(0, 1), (1, 3), (0, 2), (2, 3)]
    city = CityModel([Intersection(i, x, y) for i, (x, y) in sorted(xy.items())],
                     [RoadSegmentSpec(k, a, b, [xy[a], xy[b]]) for k, (a, b) in enumerate(roads)]).validate()
    return build_road_graph(city)


def params(**kwargs):
    kwargs.setdefault("lookahead", 1800.)
    kwargs.setdefault("wait_timeout", 600.)
    return SimulationParams(**kwargs)


def line_world(persons, shuttles=(), n=3, trace=True, capacity=12, **kwargs):
    """ persons: list of (home, work), all starting work at WORK_START
    shuttles: list of start nodes

    the day starts right when the first request is posted
    """
    graph = line_graph(n)
    p = params(**kwargs)
    ps = [Person(k, home, work, WORK_START) for k, (home, work) in enumerate(persons)]
    ss = [Shuttle(k, node, capacity=capacity) for k, node in enumerate(shuttles)]
    return World(graph, ps, ss, params=p, trace=trace, day_start=WORK_START - p.lookahead)


def step_until(world, cond, max_steps=100000):
    for _ in range(max_steps):
        if cond():
            return world
        step(world)
    raise AssertionError("condition not reached after %s steps" % max_steps)


# the 8 x 8 grid, 10 shuttles and 100 users of a full run, on a shortened working day
COMPACT_DAY = dict(grid_rows=8, grid_cols=8, fleet_size=10, user_count=100,
                   work_window=["08:00", "08:30"], work_duration=3600., step_seconds=5.)
