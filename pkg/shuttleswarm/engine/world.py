#!/usr/bin/env python

"""
the simulated world and its clock

one tick of step_seconds runs, in this order:

    (1) expire lift requests
    (2) step persons in id order
    (3) step shuttles in id order
    (4) step common cars in id order
    (5) update congestion from the occupied edges
    (6) collect metrics

    world = build_world(scenario)
    report, events = run(world)
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import json
import numpy as np
from collections import OrderedDict
from sortedcontainers import SortedList, SortedSet

from shuttleswarm.config import config
from shuttleswarm.agents.person import step_person
from shuttleswarm.agents.shuttle import step_shuttle, close_shuttle
from shuttleswarm.agents.common_car import step_common_car
from shuttleswarm.engine.congestion import update_congestion
from shuttleswarm.metrics.collector import MetricsCollector
from shuttleswarm.metrics.report import summarize


class SimulationParams(object):
    """the per run constants agents read from world.params"""

    def __init__(self,
                 wait_timeout=None,
                 lookahead=None,
                 step_seconds=None,
                 dwell_seconds=None,
                 reroute_speed=None,
                 reroute_cooldown=None,
                 congestion_alpha=None,
                 sample_interval=None):
        self.wait_timeout = config.__DEFAULT_WAIT_TIMEOUT__ if wait_timeout is None else wait_timeout
        self.lookahead = config.__DEFAULT_LOOKAHEAD__ if lookahead is None else lookahead
        self.step_seconds = config.__DEFAULT_STEP_SECONDS__ if step_seconds is None else step_seconds
        self.dwell_seconds = config.__DEFAULT_DWELL_SECONDS__ if dwell_seconds is None else dwell_seconds
        self.reroute_speed = config.__DEFAULT_REROUTE_SPEED__ if reroute_speed is None else reroute_speed
        self.reroute_cooldown = config.__DEFAULT_REROUTE_COOLDOWN__ if reroute_cooldown is None else reroute_cooldown
        self.congestion_alpha = config.__DEFAULT_CONGESTION_ALPHA__ if congestion_alpha is None else congestion_alpha
        self.sample_interval = config.__DEFAULT_SAMPLE_INTERVAL__ if sample_interval is None else sample_interval
        if not self.step_seconds > 0:
            raise ValueError("step_seconds should be > 0 (got %s)" % self.step_seconds)

    def __repr__(self):
        return "SimulationParams(%s)" % ", ".join("%s = %s" % kv for kv in sorted(vars(self).items()))


class EventEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, (set, frozenset, tuple)):
            return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        return json.JSONEncoder.default(self, obj)


class EventLog(object):
    """append only list of events, one JSON object per line when written"""

    def __init__(self, enabled=True):
        self.enabled = enabled
        self.records = []

    def __repr__(self):
        return "EventLog(%s records, enabled = %s)" % (len(self.records), self.enabled)

    def __len__(self):
        return len(self.records)

    def append(self, tick, kind, **payload):
        if not self.enabled:
            return
        rec = dict(payload)
        rec["tick"] = tick
        rec["kind"] = kind
        self.records.append(rec)

    def of_kind(self, kind):
        return [rec for rec in self.records if rec["kind"] == kind]

    def to_lines(self):
        return [json.dumps(rec, sort_keys=True, cls=EventEncoder) for rec in self.records]

    def dump(self, fName):
        with open(fName, "w") as f:
            for line in self.to_lines():
                f.write(line)
                f.write("\n")

    @classmethod
    def read(cls, fName):
        log = cls(True)
        with open(fName) as f:
            for line in f:
                line = line.strip()
                if line:
                    log.records.append(json.loads(line))
        return log


def _by_request_key():
    return SortedList(key=lambda r: r.key)


class World(object):
    def __init__(self, graph,
                 persons=(),
                 shuttles=(),
                 cars=(),
                 params=None,
                 seed=0,
                 trace=False,
                 day_start=None,
                 max_ticks=None,
                 rng=None):
        self.graph = graph
        self.params = SimulationParams() if params is None else params
        self.persons = OrderedDict((p.person_id, p) for p in sorted(persons, key=lambda p: p.person_id))
        self.shuttles = OrderedDict((s.shuttle_id, s) for s in sorted(shuttles, key=lambda s: s.shuttle_id))
        self.cars = OrderedDict((c.car_id, c) for c in sorted(cars, key=lambda c: c.car_id))
        self.seed = seed
        self.rng = np.random.RandomState(seed) if rng is None else rng
        self.events = EventLog(trace)

        step = self.params.step_seconds
        if day_start is None:
            day_start = self.default_day_start()
        self.tick = int(day_start // step)
        self.start_tick = self.tick
        self.max_ticks = int(config.__DAY_SECONDS__ // step) if max_ticks is None else int(max_ticks)

        self.pending = _by_request_key()
        self._expiry = SortedList(key=lambda r: (r.expiry_time, r.person_id))
        self._by_node = {}
        self._by_person = {}

        # persons resting before their day or working sleep until their wake time
        self._asleep = SortedList()
        self._awake = SortedSet()
        for p in self.persons.values():
            self.reschedule(p)

        self.congestion = None
        self.metrics = MetricsCollector(self.params.sample_interval)
        self.incomplete = False
        self.finished = False

    def __repr__(self):
        return "World(t = %s, %s persons, %s shuttles, %s cars, %s pending)" % (
            self.clock, len(self.persons), len(self.shuttles), len(self.cars), len(self.pending))

    def default_day_start(self):
        """half an hour before the first lift request of the day"""
        if len(self.persons) == 0:
            return 0
        first = min(p.work_start for p in self.persons.values()) - self.params.lookahead - 1800
        return max(0, first)

    @property
    def clock(self):
        return self.tick * self.params.step_seconds

    @property
    def ticks_run(self):
        return self.tick - self.start_tick

    # lift requests

    def post_request(self, r):
        if r.person_id in self._by_person:
            raise ValueError("person %s already has a pending request" % r.person_id)
        self._by_person[r.person_id] = r
        self.pending.add(r)
        self._expiry.add(r)
        for n in r.nearby:
            self._by_node.setdefault(n, _by_request_key()).add(r)
        self.log("request", person=r.person_id, origin=r.origin, destination=r.destination,
                 direction=r.direction, expiry=r.expiry_time)

    def _remove_request(self, r):
        del self._by_person[r.person_id]
        self.pending.remove(r)
        self._expiry.remove(r)
        for n in r.nearby:
            self._by_node[n].remove(r)

    def claim_request(self, r):
        """a shuttle took the request"""
        if r.person_id in self._by_person:
            self._remove_request(self._by_person[r.person_id])

    def withdraw_request(self, person_id):
        if person_id in self._by_person:
            self._remove_request(self._by_person[person_id])

    def expire_requests(self, now):
        expired = []
        while len(self._expiry) > 0 and self._expiry[0].expired(now):
            r = self._expiry[0]
            self._remove_request(r)
            expired.append(r)
            self.log("expire", person=r.person_id)
        return expired

    def visible_requests(self, node):
        """pending requests visible from node, earliest first, except those going to node"""
        return [r for r in self._by_node.get(node, ()) if r.destination != node]

    def has_visible_requests(self, node):
        return any(r.destination != node for r in self._by_node.get(node, ()))

    # event log

    def log(self, kind, **payload):
        self.events.append(self.tick, kind, **payload)

    def log_transition(self, agent, agent_id, old, new, now):
        self.events.append(self.tick, "transition", agent=agent, id=agent_id,
                           old=old, new=new, time=now)

    # person schedule

    def reschedule(self, p):
        """puts p to sleep until its wake time, keeps it awake or drops it once finished"""
        pid = p.person_id
        self._awake.discard(pid)
        if p.finished:
            return
        wake = p.wake_time(self.params.lookahead)
        if wake is None:
            self._awake.add(pid)
        else:
            self._asleep.add((wake, pid))

    def awake_persons(self, now):
        """the persons step_person may change at now, in id order"""
        while len(self._asleep) > 0 and self._asleep[0][0] <= now:
            _, pid = self._asleep.pop(0)
            self._awake.add(pid)
        return [self.persons[pid] for pid in self._awake]

    def vehicle_edges(self):
        """one entry per shuttle, car and solo travelling person inside an edge"""
        edges = []
        for agent in list(self.shuttles.values()) + list(self.cars.values()):
            if agent.edge is not None:
                edges.append(agent.edge)
        # sleeping persons stand still
        for pid in self._awake:
            p = self.persons[pid]
            if p.shuttle_id is None and p.cursor is not None and p.cursor.edge is not None:
                edges.append(p.cursor.edge)
        return edges

    def done(self):
        return len(self._awake) == 0 and len(self._asleep) == 0


def step(world):
    now = world.clock
    world.expire_requests(now)
    for p in world.awake_persons(now):
        state = p.state
        step_person(p, world, now)
        if p.state != state or p.finished:
            world.reschedule(p)
    for s in world.shuttles.values():
        step_shuttle(s, world, now)
    for c in world.cars.values():
        step_common_car(c, world, now)
    world.congestion = update_congestion(world.graph, world.vehicle_edges(),
                                         world.params.congestion_alpha,
                                         previous=world.congestion)
    world.metrics.collect(world, now)
    world.tick += 1
    return world


def finish(world):
    """closes the trailing legs and takes the last sample"""
    if world.finished:
        return world
    for s in world.shuttles.values():
        close_shuttle(s)
    world.metrics.collect(world, world.clock, force=True)
    world.finished = True
    return world


def run_world(world):
    logger.info("running %s from t = %s" % (world, world.clock))
    while not world.done():
        if world.ticks_run >= world.max_ticks:
            world.incomplete = True
            logger.warning("max_ticks (%s) reached with %s persons still on their way" % (
                world.max_ticks, sum(1 for p in world.persons.values() if not p.finished)))
            break
        step(world)
    finish(world)
    logger.info("finished at t = %s after %s ticks" % (world.clock, world.ticks_run))
    return world


def run(scenario):
    """ runs a scenario (anything with build_world(), or a World) to the end of the day

    returns (MetricsReport, EventLog)
    """
    world = scenario if isinstance(scenario, World) else scenario.build_world()
    run_world(world)
    return summarize(world), world.events
