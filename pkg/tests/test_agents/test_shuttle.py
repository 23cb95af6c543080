from shuttleswarm.agents.shuttle import Shuttle, random_target, step_shuttle
from shuttleswarm.agents.states import PersonState, ShuttleState
from shuttleswarm.costing.ledger import passenger_total
from shuttleswarm.engine.world import World, step
from shuttleswarm.validation.validators import validate_events, validate_world

from tests.scenarios import line_world, line_graph, step_until, WORK_START


def _shuttle_states(world, sid=0):
    return [rec["new"] for rec in world.events.of_kind("transition")
            if rec["agent"] == "shuttle" and rec["id"] == sid]


def test_minimal_trip():
    world = line_world([(0, 2)], shuttles=[0])
    p, s = world.persons[0], world.shuttles[0]

    step(world)
    assert s.state == ShuttleState.FIRST_STOP
    assert s.targets == [2]
    assert s.cumulative_lifts == 1
    assert p.committed_to == 0 and p.shuttle_id == 0
    assert len(world.pending) == 0

    step_until(world, lambda: s.edge is not None)
    assert abs(world.graph.edge(0, 1)["speed_coefficient"] - .8) < 1e-12

    step_until(world, lambda: p.state == PersonState.WORKING)
    assert not p.late
    assert p.trip.served
    assert p.trip.waiting == 0
    assert p.dist_covered_alone == 0
    assert s.delivered == set([0])
    assert abs(float(passenger_total(s.ledger, 0)) - 1.) < 1e-6
    assert abs(s.ledger.legs[-1].length - 1000.) < 1e-6

    step_until(world, lambda: s.state == ShuttleState.WANDER)
    assert _shuttle_states(world) == [ShuttleState.FIRST_STOP, ShuttleState.MOVING,
                                      ShuttleState.STOP, ShuttleState.WANDER]
    assert s.stops_done == [] and s.targets == []

    assert validate_events(world.events) == []
    assert validate_world(world) == []


def test_person_walks_through_states():
    world = line_world([(0, 2)], shuttles=[0])
    p = world.persons[0]
    step_until(world, lambda: p.state == PersonState.WORKING)
    states = [rec["new"] for rec in world.events.of_kind("transition") if rec["agent"] == "person"]
    assert states == [PersonState.SEARCH_LIFT_TO_WORK, PersonState.WAIT_FOR_LIFT,
                      PersonState.GO_WORK, PersonState.WORKING]


def test_shared_trip():
    world = line_world([(0, 2), (0, 2)], shuttles=[0])
    s = world.shuttles[0]
    step_until(world, lambda: all(p.state == PersonState.WORKING for p in world.persons.values()))
    boards = world.events.of_kind("board")
    assert boards[0]["persons"] == [0, 1]
    assert s.delivered == set([0, 1])
    for pid in (0, 1):
        assert abs(float(passenger_total(s.ledger, pid)) - .5) < 1e-6
    assert validate_events(world.events) == []


def test_admission_on_the_way():
    world = line_world([(0, 3), (1, 3)], shuttles=[0], n=4, capacity=2)
    s = world.shuttles[0]
    step_until(world, lambda: all(p.state == PersonState.WORKING for p in world.persons.values()))

    admissions = world.events.of_kind("admission")
    assert len(admissions) == 1
    assert admissions[0]["node"] == 1
    assert admissions[0]["admitted"] == [1]
    assert admissions[0]["count"] == 1

    assert world.persons[1].trip.served
    assert abs(float(passenger_total(s.ledger, 0)) - 1.) < 1e-6
    assert abs(float(passenger_total(s.ledger, 1)) - .5) < 1e-6
    assert validate_events(world.events) == []
    assert validate_world(world) == []


def test_full_shuttle_drives_by():
    world = line_world([(0, 3), (1, 3)], shuttles=[0], n=4, capacity=1)
    s = world.shuttles[0]
    step_until(world, lambda: all(p.state == PersonState.WORKING for p in world.persons.values()))

    assert world.events.of_kind("admission") == []
    assert all(rec["onboard"] <= 1 for rec in world.events.of_kind("board"))
    assert abs(float(passenger_total(s.ledger, 0)) - 1.5) < 1e-6


def test_wander_without_requests():
    world = line_world([], shuttles=[1])
    s = world.shuttles[0]
    for _ in range(5):
        step(world)
    assert s.state == ShuttleState.WANDER
    assert s.cursor is not None
    assert s.odometer > 0
    assert s.ledger.charges == {}


def test_random_target():
    graph = line_graph(5)
    w1, w2 = World(graph, seed=3), World(graph, seed=3)
    t1 = [random_target(w1, 2) for _ in range(50)]
    t2 = [random_target(w2, 2) for _ in range(50)]
    assert t1 == t2
    assert not 2 in t1
    assert set(t1) == set([0, 1, 3, 4])


def test_open_seats():
    s = Shuttle(0, 0, capacity=3)
    assert s.open_seats == 3
    assert s.first_passenger() is None
    assert s.final_target is None
    assert s.km == 0
