from __future__ import absolute_import, print_function
from .version import __version__


import logging
logging.basicConfig(format='%(levelname)s:%(name)s | %(message)s')
logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)
#logger.setLevel(logging.DEBUG)


from shuttleswarm.config import config

from shuttleswarm.geodata import (CityModel, load_city, read_city, generate_grid_city, dump_city,
                                  RoadGraph, Path, build_road_graph, shortest_path)

from shuttleswarm.agents import (Person, Shuttle, CommonCar, LiftRequest, Direction,
                                 PersonState, ShuttleState)

from shuttleswarm.selforg import form_initial_group, filter_candidates, insert_destination, try_admit

from shuttleswarm.costing import LegLedger, on_stop_event, passenger_total

from shuttleswarm.engine.world import World, SimulationParams, step, run, run_world

from shuttleswarm.metrics import MetricsReport, summarize, emit, format_table

from shuttleswarm.harness import (ScenarioConfig, ConfigurationError, load_scenario, build_population,
                                  build_world, run_scenario, SweepSpec, run_experiment_suite)
