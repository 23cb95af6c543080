from shuttleswarm.agents.common_car import CommonCar, reroute, step_common_car
from shuttleswarm.geodata.road_graph import Path
from shuttleswarm.engine.movement import PathCursor
from shuttleswarm.engine.world import World

from tests.scenarios import square_graph, params


def _car_on_square(offset):
    graph = square_graph()
    c = CommonCar(0, 0)
    c.target = 3
    c.cursor = PathCursor(Path([(0, 1), (1, 3)], 0, 3, 200., 0.), 0, offset)
    return graph, c


def test_reroute_turns_around():
    graph, c = _car_on_square(10.)
    world = World(graph, cars=[c], params=params())
    graph.edge(0, 1)["speed_coefficient"] = .05

    step_common_car(c, world, 0.)
    assert c.reroutes == 1
    assert c.cursor.path.nodes == [1, 0, 2, 3]
    assert c.cursor.index == 0
    assert 89. < c.cursor.offset < 89.4
    assert c.reroute_after == 60.
    assert len(world.events.of_kind("reroute")) == 0


def test_reroute_cooldown():
    graph, c = _car_on_square(10.)
    world = World(graph, cars=[c], params=params(), trace=True)
    graph.edge(0, 1)["speed_coefficient"] = .05
    graph.edge(1, 0)["speed_coefficient"] = .05

    step_common_car(c, world, 0.)
    step_common_car(c, world, 1.)
    assert c.reroutes == 1
    assert len(world.events.of_kind("reroute")) == 1


def test_no_reroute_when_fast():
    graph, c = _car_on_square(10.)
    world = World(graph, cars=[c], params=params())
    step_common_car(c, world, 0.)
    assert c.reroutes == 0
    assert c.cursor.path.nodes == [0, 1, 3]


def test_reroute_at_node():
    graph, c = _car_on_square(0.)
    assert reroute(c, graph)
    assert c.cursor.path.nodes == [0, 2, 3]
    assert c.cursor.offset == 0


def test_wandering():
    graph = square_graph()
    c = CommonCar(0, 0)
    world = World(graph, cars=[c], params=params(), seed=1)
    step_common_car(c, world, 0.)
    assert c.target != 0 and c.target in graph
    assert c.cursor.path.origin == 0 and c.cursor.path.destination == c.target
    for t in range(1, 200):
        step_common_car(c, world, float(t))
    assert c.cursor is not None


def test_negative_speed():
    try:
        CommonCar(0, 0, speed=-1.)
    except ValueError:
        pass
    else:
        assert False, "expected ValueError"
