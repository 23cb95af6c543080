import os
import tempfile

from shuttleswarm.agents.lift_request import LiftRequest
from shuttleswarm.agents.person import Person
from shuttleswarm.engine.world import World, EventLog, step, run, run_world
from shuttleswarm.harness.scenario import ScenarioConfig

from tests.scenarios import line_world, line_graph, params, WORK_START


def test_empty_world():
    world = World(line_graph(), params=params())
    assert world.clock == 0
    run_world(world)
    assert world.finished and not world.incomplete
    assert world.ticks_run == 0
    report, events = run(world)
    assert report.users_total == 0
    assert report.served_pct is None
    assert len(events) == 0


def test_default_day_start():
    p = Person(0, 0, 2, WORK_START)
    world = World(line_graph(), [p], params=params())
    assert world.clock == WORK_START - 1800. - 1800.
    world = World(line_graph(), [Person(0, 0, 2, 600.)], params=params())
    assert world.clock == 0


def test_max_ticks():
    world = World(line_graph(), [Person(0, 0, 2, WORK_START)], params=params(),
                  day_start=WORK_START - 1800., max_ticks=10)
    run_world(world)
    assert world.incomplete
    assert world.ticks_run == 10
    report, _ = run(world)
    assert report.incomplete


def test_persons_step_before_shuttles():
    world = line_world([(0, 2)], shuttles=[0])
    step(world)
    kinds = [rec["kind"] for rec in world.events.records]
    assert kinds.index("request") < kinds.index("board")
    assert len(set(rec["tick"] for rec in world.events.records)) == 1


def test_requests():
    world = World(line_graph(), params=params(), trace=True)
    r = LiftRequest(0, 0, 1, 10., 70., nearby=[0, 1])
    world.post_request(r)
    assert world.visible_requests(0) == [r]
    assert world.visible_requests(1) == []
    assert world.has_visible_requests(0) and not world.has_visible_requests(1)
    try:
        world.post_request(LiftRequest(0, 0, 2, 10., 70.))
    except ValueError:
        pass
    else:
        assert False, "expected ValueError"

    assert world.expire_requests(69.) == []
    assert world.expire_requests(70.) == [r]
    assert len(world.pending) == 0
    assert world.visible_requests(0) == []
    assert [rec["kind"] for rec in world.events.records] == ["request", "expire"]


def test_pending_order():
    world = World(line_graph(), params=params())
    reqs = [LiftRequest(2, 0, 1, 5., 50.), LiftRequest(1, 0, 2, 5., 50.), LiftRequest(0, 0, 2, 7., 50.)]
    for r in reqs:
        world.post_request(r)
    assert [r.person_id for r in world.pending] == [1, 2, 0]
    assert [r.person_id for r in world.visible_requests(0)] == [1, 2, 0]
    world.claim_request(reqs[1])
    assert [r.person_id for r in world.pending] == [2, 0]


def _day(seed):
    world = line_world([(0, 2), (1, 2), (2, 0)], shuttles=[0, 2], n=4)
    world.rng.seed(seed)
    run_world(world)
    return world


def test_full_day():
    world = _day(1)
    assert world.done() and not world.incomplete
    assert all(p.finished for p in world.persons.values())
    report, _ = run(world)
    assert report.users_total == 3
    assert report.fleet_size == 2
    assert report.users_served >= 1
    assert abs(report.total_gain - sum(report.travel_costs)) < 1e-9


def test_determinism():
    assert _day(4).events.to_lines() == _day(4).events.to_lines()


def test_event_log_roundtrip():
    world = line_world([(0, 2)], shuttles=[0])
    for _ in range(20):
        step(world)
    fName = os.path.join(tempfile.mkdtemp(), "events.jsonl")
    world.events.dump(fName)
    log = EventLog.read(fName)
    assert [rec["kind"] for rec in log.records] == [rec["kind"] for rec in world.events.records]


def _grid_day(seed, step_everyone=False):
    world = ScenarioConfig(grid_rows=4, grid_cols=4, fleet_size=3, user_count=16,
                           work_window=["08:00", "08:20"], work_duration=1800.,
                           step_seconds=5., seed=seed).build_world(trace=True)
    if step_everyone:
        awake = world.awake_persons

        def everyone(now):
            awake(now)
            return list(world.persons.values())
        world.awake_persons = everyone
    run_world(world)
    return world


def test_sleeping_persons_change_nothing():
    for seed in (0, 1):
        world, reference = _grid_day(seed), _grid_day(seed, step_everyone=True)
        assert not world.incomplete
        assert world.events.to_lines() == reference.events.to_lines()
        assert world.tick == reference.tick


def test_schedule():
    world = line_world([(0, 2), (1, 2)], lookahead=0., wait_timeout=60.)
    assert world.awake_persons(WORK_START - 1.) == []
    assert not world.done()
    assert [p.person_id for p in world.awake_persons(WORK_START)] == [0, 1]
    run_world(world)
    assert world.done() and world.awake_persons(world.clock) == []
