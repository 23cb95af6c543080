#!/usr/bin/env python

"""
autonomous shuttles

    wander      roams to random intersections until it stands where a lift
                request is visible, then takes the first group on board
    first_stop  dwells while the first group boards
    moving      drives through its targets, stopping where passengers
                alight and where visible requests may be admitted
    stop        dwells for boarding/alighting, back to wander when empty

pickup happens at the intersection the shuttle stands on, persons walk
there from their place (within the pickup radius).
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

from shuttleswarm.config import config
from shuttleswarm.geodata.road_graph import shortest_path, path_prefix, path_through
from shuttleswarm.costing.ledger import LegLedger, on_stop_event, close_ledger
from shuttleswarm.engine.movement import PathCursor, advance_along_path
from shuttleswarm.agents.lift_request import Direction
from shuttleswarm.agents.states import ShuttleState, SHUTTLE_TRANSITIONS, check_transition
from shuttleswarm.selforg.insertion import form_initial_group, try_admit, refresh_estimates


class SeatCapacityError(RuntimeError):
    pass


class Passenger(object):
    def __init__(self, person_id, origin, destination, direction, work_start,
                 board_time, board_seq, board_leg, ride_path):
        self.person_id = person_id
        self.origin = origin
        self.destination = destination
        self.direction = direction
        self.work_start = work_start
        self.board_time = board_time
        self.board_seq = board_seq
        self.board_leg = board_leg
        self.ride_path = ride_path
        self.eta = None

    @property
    def to_work(self):
        return self.direction == Direction.TO_WORK

    def __repr__(self):
        return "Passenger(%s: %s -> %s, boarded %s, eta %s)" % (
            self.person_id, self.origin, self.destination, self.board_time, self.eta)


class StopRecord(object):
    def __init__(self, node, expected, actual, boarded, alighted):
        self.node = node
        self.expected = expected
        self.actual = actual
        self.boarded = boarded
        self.alighted = alighted

    def __repr__(self):
        return "StopRecord(%s, expected %s, actual %s, +%s -%s)" % (
            self.node, self.expected, self.actual, self.boarded, self.alighted)


class Shuttle(object):
    def __init__(self, shuttle_id, node,
                 capacity=None,
                 speed=None,
                 cost_per_km=None,
                 angle_threshold=None):
        self.shuttle_id = shuttle_id
        self.capacity = config.__DEFAULT_CAPACITY__ if capacity is None else capacity
        self.speed = config.__DEFAULT_VEHICLE_SPEED__ if speed is None else speed
        self.angle_threshold = config.__DEFAULT_ANGLE_THRESHOLD__ if angle_threshold is None else angle_threshold
        cost_per_km = config.__DEFAULT_COST_PER_KM__ if cost_per_km is None else cost_per_km

        self.state = ShuttleState.WANDER
        self.node = node
        self.cursor = None
        self.targets = []
        self.stops_done = []
        self.passengers = {}
        self.ledger = LegLedger(cost_per_km, start_node=node)
        self.odometer = 0.
        self.leg_distance = 0.
        self.cumulative_lifts = 0
        self.dwell_until = None
        self.expected_arrival = {}
        self.stop_log = []
        self.delivered = set()
        self._board_seq = 0

    def __repr__(self):
        return "Shuttle(%s, %s, at %s, passengers = %s, targets = %s)" % (
            self.shuttle_id, self.state, self.node, sorted(self.passengers), self.targets)

    @property
    def stops(self):
        """the global stop list of the service episode: visited stops then targets"""
        return self.stops_done + self.targets

    @property
    def visited(self):
        return set(self.stops_done)

    @property
    def open_seats(self):
        return self.capacity - len(self.passengers)

    @property
    def final_target(self):
        return self.targets[-1] if self.targets else None

    @property
    def current_path(self):
        return None if self.cursor is None else self.cursor.path

    @property
    def km(self):
        return self.odometer / 1000.

    @property
    def edge(self):
        return None if self.cursor is None else self.cursor.edge

    def first_passenger(self):
        """the earliest boarded passenger still on board"""
        if len(self.passengers) == 0:
            return None
        return min(self.passengers.values(), key=lambda psg: psg.board_seq)


def _transition(s, world, now, new_state):
    check_transition(SHUTTLE_TRANSITIONS, s.state, new_state)
    world.log_transition("shuttle", s.shuttle_id, s.state, new_state, now)
    s.state = new_state


def _account(s, res):
    s.odometer += res.distance
    s.leg_distance += res.distance


def random_target(world, node):
    """uniform over the intersections other than node"""
    ids = world.graph.node_ids
    k = world.rng.randint(len(ids) - 1)
    if ids.index(node) <= k:
        k += 1
    return ids[k]


def _alight(s, world, now, pids):
    on_stop_event(s.ledger, s.node, alighted=pids, leg_length=s.leg_distance)
    s.leg_distance = 0.
    for pid in pids:
        s.passengers.pop(pid)
        world.persons[pid].alight(s.node, now)
        s.delivered.add(pid)


def _board(s, world, now, requests):
    if len(s.passengers) + len(requests) > s.capacity:
        raise SeatCapacityError("shuttle %s: boarding %s with %s of %s seats taken" % (
            s.shuttle_id, len(requests), len(s.passengers), s.capacity))
    pids = [r.person_id for r in requests]
    on_stop_event(s.ledger, s.node, boarded=pids, leg_length=s.leg_distance)
    s.leg_distance = 0.
    for r in requests:
        world.claim_request(r)
        p = world.persons[r.person_id]
        p.commit(s.shuttle_id, now)
        p.board(s.shuttle_id, now)
        psg = Passenger(r.person_id, s.node, r.destination, r.direction, p.work_start,
                        now, s._board_seq, len(s.ledger.legs),
                        path_prefix(world.graph, s.cursor.path, r.destination))
        s._board_seq += 1
        psg.eta = s.expected_arrival.get(r.destination, None)
        s.passengers[r.person_id] = psg
        s.cumulative_lifts += 1

    degenerate = [r.person_id for r in requests if r.destination == s.node]
    if degenerate:
        _alight(s, world, now, degenerate)

    world.log("board", shuttle=s.shuttle_id, node=s.node, persons=pids,
              onboard=len(s.passengers), capacity=s.capacity)


def _record_stop(s, world, now, boarded, alighted):
    if not (s.stops_done and s.stops_done[-1] == s.node):
        s.stops_done.append(s.node)
    s.stop_log.append(StopRecord(s.node, s.expected_arrival.pop(s.node, None), now,
                                 boarded, alighted))
    s.dwell_until = now + world.params.dwell_seconds


def _start_service(s, world, now, requests):
    grp = form_initial_group(s, requests, world.graph)
    _transition(s, world, now, ShuttleState.FIRST_STOP)
    s.targets = list(grp.targets)
    s.stops_done = []
    s.cursor = PathCursor(grp.initial_path)
    refresh_estimates(s, world.graph, now, world.params.dwell_seconds)

    # the passenger heading to the final target counts as the first one
    boarding = sorted(grp.group, key=lambda r: (r.destination != grp.final_target, r.key))
    _board(s, world, now, boarding)
    _record_stop(s, world, now, [r.person_id for r in boarding], [])

    world.log("initial_group", shuttle=s.shuttle_id, node=s.node, time=now,
              group=[r.person_id for r in boarding],
              rejected=dict((str(r.person_id), reason) for r, reason in grp.rejected),
              final_target=grp.final_target, targets=list(s.targets),
              path_length=grp.initial_path.length)


def _wander(s, world, now, dt):
    if s.node is not None:
        requests = world.visible_requests(s.node)
        if requests:
            _start_service(s, world, now, requests)
            return

    if s.cursor is None or s.cursor.finished:
        target = random_target(world, s.node)
        s.cursor = PathCursor(shortest_path(world.graph, s.node, target))

    res = advance_along_path(s.cursor, world.graph, s.speed, dt,
                             stop_at=world.has_visible_requests)
    _account(s, res)
    s.node = s.cursor.node
    if res.stopped_at is not None or res.arrived:
        requests = world.visible_requests(s.node)
        if requests:
            _start_service(s, world, now + res.elapsed, requests)


def _arrive_at_node(s, world, t):
    v = s.node
    alighting = sorted(pid for pid, psg in s.passengers.items() if psg.destination == v)
    if alighting:
        _alight(s, world, t, alighting)
        s.targets.remove(v)

    boarded = []
    if s.targets and s.open_seats > 0:
        candidates = world.visible_requests(v)
        if candidates:
            decision = try_admit(s, candidates, world, t)
            world.log("admission", **decision.trace)
            if decision.admitted:
                boarded = decision.admitted
                _board(s, world, t, boarded)

    if s.targets and s.cursor.finished:
        s.cursor = PathCursor(path_through(world.graph, v, s.targets))

    if alighting or boarded:
        _record_stop(s, world, t, [r.person_id for r in boarded], alighting)
        _transition(s, world, t, ShuttleState.STOP)


def _move(s, world, now, dt):
    targets = s.targets

    def stop_here(v):
        return v in targets or (s.open_seats > 0 and world.has_visible_requests(v))

    res = advance_along_path(s.cursor, world.graph, s.speed, dt, stop_at=stop_here)
    _account(s, res)
    s.node = s.cursor.node
    if s.node is not None and (res.stopped_at is not None or res.arrived):
        _arrive_at_node(s, world, now + res.elapsed)


def step_shuttle(s, world, now):
    dt = world.params.step_seconds
    if s.state == ShuttleState.WANDER:
        _wander(s, world, now, dt)
    elif s.state == ShuttleState.FIRST_STOP:
        if now >= s.dwell_until:
            _transition(s, world, now, ShuttleState.MOVING)
    elif s.state == ShuttleState.STOP:
        if now >= s.dwell_until:
            if s.targets:
                _transition(s, world, now, ShuttleState.MOVING)
            else:
                _transition(s, world, now, ShuttleState.WANDER)
                s.stops_done = []
                s.cursor = None
                s.expected_arrival = {}
    elif s.state == ShuttleState.MOVING:
        _move(s, world, now, dt)
    return s


def close_shuttle(s):
    """ends the trailing leg, so that the ledger covers the whole odometer"""
    node = s.node if s.node is not None else s.cursor.last_node
    if s.leg_distance > 0:
        close_ledger(s.ledger, node, s.leg_distance)
        s.leg_distance = 0.
    return s
