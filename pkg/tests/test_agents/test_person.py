from shuttleswarm.agents.person import Person, person_search_path, step_person
from shuttleswarm.agents.states import PersonState
from shuttleswarm.agents.lift_request import LiftRequest, Direction
from shuttleswarm.geodata.city_model import generate_grid_city
from shuttleswarm.geodata.road_graph import build_road_graph

from tests.scenarios import line_world, step_until, WORK_START


def test_lift_request_checks():
    r = LiftRequest(1, 0, 2, 100., 700., Direction.TO_WORK, [0, 1])
    assert r.key == (100., 1)
    assert 1 in r.nearby and not 2 in r.nearby
    assert not r.expired(699.) and r.expired(700.)
    for args in [(1, 0, 2, 100., 100.), (1, 0, 0, 100., 700.)]:
        try:
            LiftRequest(*args)
        except ValueError:
            pass
        else:
            assert False, "expected ValueError for %s" % (args,)


def test_person_checks():
    try:
        Person(0, 3, 3, WORK_START)
    except ValueError:
        pass
    else:
        assert False, "expected ValueError"
    p = Person(0, 0, 2, WORK_START, home_nearby=[1])
    assert p.home_nearby == [0, 1]
    assert p.work_end == WORK_START + 8 * 3600.
    assert p.nearby_intersections == [0, 1]


def test_search_fires_at_lookahead():
    world = line_world([(0, 2)])
    p = world.persons[0]
    step_person(p, world, WORK_START - 1801.)
    assert p.state == PersonState.RESTING

    step_person(p, world, WORK_START - 1800.)
    assert p.state == PersonState.SEARCH_LIFT_TO_WORK
    assert len(world.pending) == 1
    r = world.pending[0]
    assert (r.origin, r.destination, r.direction) == (0, 2, Direction.TO_WORK)
    assert r.expiry_time == WORK_START - 1800. + 600.
    assert p.wait_deadline == r.expiry_time


def test_timeout_goes_solo():
    world = line_world([(0, 2)])
    p = world.persons[0]
    t0 = WORK_START - 1800.
    step_person(p, world, t0)
    step_person(p, world, t0 + 599.)
    assert p.state == PersonState.SEARCH_LIFT_TO_WORK

    step_person(p, world, t0 + 600.)
    assert p.state == PersonState.GO_WORK
    assert p.trip.mode == "solo"
    assert p.current_path.nodes == [0, 1, 2]
    assert p.distance_to_cover == 1000.
    assert len(world.pending) == 0
    assert p.wait_deadline is None


def test_late_arrival():
    # no shuttles, no lookahead: the person leaves after the timeout and arrives late
    world = line_world([(0, 2)], lookahead=0., wait_timeout=60.)
    p = world.persons[0]
    step_until(world, lambda: p.state == PersonState.WORKING)
    assert p.late
    assert p.actual_time_in > WORK_START + 60.
    assert abs(p.dist_covered_alone - 1000.) < 1e-6
    assert p.trip.served is False
    assert p.trip.waiting is None


def test_on_time_arrival():
    world = line_world([(0, 2)], lookahead=1800., wait_timeout=60.)
    p = world.persons[0]
    step_until(world, lambda: p.state == PersonState.WORKING)
    assert not p.late
    assert p.actual_time_in < WORK_START


def test_full_day_solo():
    world = line_world([(0, 2)], wait_timeout=60.)
    p = world.persons[0]
    step_until(world, lambda: p.finished)
    assert p.state == PersonState.RESTING
    assert p.node == 0
    assert [t.direction for t in p.trips] == [Direction.TO_WORK, Direction.TO_HOME]
    assert abs(p.dist_covered_alone - 2000.) < 1e-6
    home_request = [r for r in world.events.of_kind("request") if r["direction"] == Direction.TO_HOME][0]
    assert home_request["origin"] == 2
    assert home_request["tick"] * world.params.step_seconds >= p.work_end


def test_search_path():
    graph = build_road_graph(generate_grid_city(3, 3, 100., seed=0))
    p = Person(0, 0, 8, WORK_START)
    person_search_path(p, 0, graph)
    assert p.time_to_cover == 0 and p.current_path.edges == []

    person_search_path(p, 8, graph)
    assert abs(p.distance_to_cover - 400.) < 1e-9
    before = p.time_to_cover
    for u, v in graph.edges():
        graph.edge(u, v)["speed_coefficient"] = .5
    person_search_path(p, 8, graph)
    assert abs(p.time_to_cover - 2 * before) < 1e-6


def test_location():
    world = line_world([(0, 2)], lookahead=0., wait_timeout=1.)
    p = world.persons[0]
    assert p.location() == ("node", 0)
    step_until(world, lambda: p.state == PersonState.GO_WORK)
    step_until(world, lambda: p.cursor.edge is not None)
    assert p.location() == ("edge", (0, 1))
