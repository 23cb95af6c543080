#!/usr/bin/env python

"""
builds persons, shuttles and common cars of a scenario on its city
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import numpy as np

from shuttleswarm.geodata.city_model import read_city, generate_grid_city
from shuttleswarm.geodata.road_graph import build_road_graph
from shuttleswarm.agents.person import Person
from shuttleswarm.agents.shuttle import Shuttle
from shuttleswarm.agents.common_car import CommonCar
from shuttleswarm.engine.world import World
from shuttleswarm.harness.scenario import ConfigurationError, parse_clock

# resampling a home that falls on the workplace intersection
MAX_HOME_DRAWS = 100


def load_scenario_city(config):
    if config.city_path is not None:
        return read_city(config.city_path)
    seed = config.seed if config.grid_seed is None else config.grid_seed
    return generate_grid_city(config.grid_rows, config.grid_cols, config.grid_block,
                              seed=0 if seed is None else seed)


def _nearby(graph, xy, node, radius):
    nodes = graph.nodes_within(xy, radius)
    return nodes if node in nodes else sorted(nodes + [node])


def _workplaces(config, industrial, rng):
    """index into industrial per user"""
    n = config.user_count
    if config.workplace_mode == "one":
        if len(industrial) < 1:
            raise ConfigurationError("workplace mode 'one' needs an industrial building")
        k = rng.randint(len(industrial))
        return [k] * n
    elif config.workplace_mode == "two":
        if len(industrial) < 2:
            raise ConfigurationError("workplace mode 'two' needs 2 industrial buildings (got %s)" % len(industrial))
        pair = rng.choice(len(industrial), 2, replace=False)
        return [int(pair[i % 2]) for i in range(n)]
    else:
        if len(industrial) < 1:
            raise ConfigurationError("the city has no industrial building")
        return [int(k) for k in rng.randint(len(industrial), size=n)]


def build_population(config, city, graph=None, rng=None):
    """ persons and common cars of the scenario

    homes are uniform over the residential buildings, workplaces follow
    workplace_mode, work starts uniform in the window rounded to the minute
    """
    graph = build_road_graph(city) if graph is None else graph
    rng = np.random.RandomState(config.seed or 0) if rng is None else rng

    residential = city.buildings_of("residential")
    industrial = city.buildings_of("industrial")
    if config.user_count > 0 and len(residential) == 0:
        raise ConfigurationError("the city has no residential building")

    persons = []
    if config.user_count > 0:
        work_idx = _workplaces(config, industrial, rng)
        start, end = config.window
        for pid, k in enumerate(work_idx):
            work = industrial[k]
            work_node = graph.nearest_node(work.xy)
            for _ in range(MAX_HOME_DRAWS):
                home = residential[rng.randint(len(residential))]
                home_node = graph.nearest_node(home.xy)
                if home_node != work_node:
                    break
            else:
                raise ConfigurationError("no residential building away from workplace %s" % work.building_id)

            work_start = min(end, 60. * round(rng.uniform(start, end) / 60.))
            persons.append(Person(pid, home_node, work_node, work_start,
                                  work_end=work_start + config.work_duration,
                                  home_nearby=_nearby(graph, home.xy, home_node, config.pickup_radius),
                                  work_nearby=_nearby(graph, work.xy, work_node, config.pickup_radius)))

    cars = [CommonCar(cid, graph.node_ids[rng.randint(len(graph.node_ids))])
            for cid in range(config.cars)]
    return persons, cars


def build_world(config, trace=False):
    """city, road graph, population and fleet of a scenario, ready to run"""
    city = load_scenario_city(config)
    graph = build_road_graph(city)
    seed = 0 if config.seed is None else config.seed
    rng = np.random.RandomState(seed)

    persons, cars = build_population(config, city, graph, rng)
    shuttles = [Shuttle(sid, graph.node_ids[rng.randint(len(graph.node_ids))],
                        capacity=config.shuttle_capacity,
                        cost_per_km=config.cost_per_km,
                        angle_threshold=config.angle_threshold_deg)
                for sid in range(config.fleet_size)]

    day_start = None if config.day_start is None else parse_clock(config.day_start)
    world = World(graph, persons, shuttles, cars,
                  params=config.simulation_params(),
                  seed=seed,
                  trace=trace,
                  day_start=day_start,
                  max_ticks=config.max_ticks,
                  rng=rng)
    logger.debug("built %s on %s" % (world, graph))
    return world
