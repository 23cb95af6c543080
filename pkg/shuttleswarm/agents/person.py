#!/usr/bin/env python

"""
persons commuting between their living and working place

a person rests until `lookahead` seconds before the start of work, then posts
a lift request and waits for a shuttle for `wait_timeout` seconds. If a
shuttle commits it rides along, otherwise it travels alone along the
shortest path. The evening trip home works the same way.

shuttles never change the state of a person directly, they only set the
commit/board/alight marks that the next step_person turns into transitions.
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

from shuttleswarm.config import config
from shuttleswarm.geodata.road_graph import shortest_path
from shuttleswarm.engine.movement import PathCursor, advance_along_path
from shuttleswarm.agents.lift_request import LiftRequest, Direction
from shuttleswarm.agents.states import PersonState, PERSON_TRANSITIONS, WAIT_FOR_LIFT_EXIT, check_transition


class TripRecord(object):
    """one trip of the day (to work or back home)"""

    def __init__(self, direction, request_time):
        self.direction = direction
        self.request_time = request_time
        self.mode = None
        self.shuttle_id = None
        self.commit_time = None
        self.board_time = None
        self.arrival_time = None
        self.late = False
        self.distance_alone = 0.

    @property
    def served(self):
        return self.mode == "shuttle" and self.arrival_time is not None

    @property
    def waiting(self):
        """seconds between request and shuttle commitment, None when not served"""
        if self.commit_time is None:
            return None
        return self.commit_time - self.request_time

    def __repr__(self):
        return "TripRecord(%s, %s, requested %s, arrived %s)" % (
            self.direction, self.mode, self.request_time, self.arrival_time)


class Person(object):
    def __init__(self, person_id, living_place, working_place, work_start,
                 work_end=None,
                 home_nearby=None,
                 work_nearby=None,
                 speed=None):
        if living_place == working_place:
            raise ValueError("person %s lives and works at node %s" % (person_id, living_place))
        self.person_id = person_id
        self.living_place = living_place
        self.working_place = working_place
        self.work_start = work_start
        self.work_end = work_start + config.__DEFAULT_WORK_DURATION__ if work_end is None else work_end
        if not self.work_end > self.work_start:
            raise ValueError("work should end after it starts (%s, %s)" % (self.work_start, self.work_end))
        self.home_nearby = sorted(set([living_place] if home_nearby is None else home_nearby) | set([living_place]))
        self.work_nearby = sorted(set([working_place] if work_nearby is None else work_nearby) | set([working_place]))
        self.speed = config.__DEFAULT_SOLO_SPEED__ if speed is None else speed

        self.state = PersonState.RESTING
        self.node = living_place
        self.cursor = None
        self.current_path = None
        self.shuttle_id = None
        self.request = None
        self.wait_deadline = None
        self.searched_from = None

        self.late = False
        self.actual_time_in = None
        self.time_to_cover = None
        self.distance_to_cover = None
        self.dist_covered_alone = 0.

        self.trips = []
        self.finished = False
        self.committed_to = None
        self.delivered_at = None

    def __repr__(self):
        return "Person(%s, %s, home = %s, work = %s, %s-%s)" % (
            self.person_id, self.state, self.living_place, self.working_place, self.work_start, self.work_end)

    @property
    def trip(self):
        return self.trips[-1] if self.trips else None

    @property
    def direction(self):
        if self.trip is None:
            return Direction.TO_WORK
        return self.trip.direction

    @property
    def nearby_intersections(self):
        """intersections within pickup radius of where the person stands"""
        if self.direction == Direction.TO_HOME and self.state != PersonState.RESTING:
            return self.work_nearby
        return self.home_nearby

    @property
    def served(self):
        return any(t.served for t in self.trips)

    def wake_time(self, lookahead):
        """earliest time step_person can change a resting or working person, None if any tick can"""
        if self.finished:
            return None
        if self.state == PersonState.RESTING and len(self.trips) == 0:
            return self.work_start - lookahead
        if self.state == PersonState.WORKING:
            return self.work_end
        return None

    def location(self):
        """("shuttle", id), ("edge", (u, v)) or ("node", n)"""
        if self.shuttle_id is not None:
            return ("shuttle", self.shuttle_id)
        if self.cursor is not None and self.cursor.edge is not None:
            return ("edge", self.cursor.edge)
        return ("node", self.node)

    # marks set by the shuttle

    def commit(self, shuttle_id, now):
        self.committed_to = shuttle_id
        self.trip.mode = "shuttle"
        self.trip.shuttle_id = shuttle_id
        self.trip.commit_time = now

    def board(self, shuttle_id, now):
        self.shuttle_id = shuttle_id
        self.node = None
        self.cursor = None
        self.trip.board_time = now

    def alight(self, node, now):
        self.shuttle_id = None
        self.node = node
        self.delivered_at = now


def _transition(p, world, now, new_state):
    check_transition(PERSON_TRANSITIONS, p.state, new_state)
    world.log_transition("person", p.person_id, p.state, new_state, now)
    p.state = new_state


def person_search_path(p, target, graph):
    """sets current_path from where the person stands to target"""
    graph.check_node(target)
    path = shortest_path(graph, p.node, target)
    p.current_path = path
    p.time_to_cover = path.travel_time
    p.distance_to_cover = path.length
    return p


def _enter_search(p, world, now, direction):
    if direction == Direction.TO_WORK:
        origin, destination, state = p.living_place, p.working_place, PersonState.SEARCH_LIFT_TO_WORK
    else:
        origin, destination, state = p.working_place, p.living_place, PersonState.SEARCH_LIFT_TO_HOME

    p.trips.append(TripRecord(direction, now))
    p.wait_deadline = now + world.params.wait_timeout
    nearby = p.home_nearby if direction == Direction.TO_WORK else p.work_nearby
    p.request = LiftRequest(p.person_id, origin, destination, now, p.wait_deadline, direction, nearby)
    person_search_path(p, destination, world.graph)
    _transition(p, world, now, state)
    world.post_request(p.request)


def _arrive(p, world, now, t):
    p.trip.arrival_time = t
    p.cursor = None
    p.committed_to = None
    p.delivered_at = None
    if p.state == PersonState.GO_WORK:
        p.node = p.working_place
        p.actual_time_in = t
        p.late = t > p.work_start
        p.trip.late = p.late
        _transition(p, world, now, PersonState.WORKING)
    else:
        p.node = p.living_place
        _transition(p, world, now, PersonState.RESTING)
        p.finished = True


def step_person(p, world, now):
    """ at most one state transition per call"""
    if p.finished:
        return p

    state = p.state
    if state == PersonState.RESTING:
        if len(p.trips) == 0 and now >= p.work_start - world.params.lookahead:
            _enter_search(p, world, now, Direction.TO_WORK)

    elif state in PersonState.SEARCHING:
        going = PersonState.GO_WORK if state == PersonState.SEARCH_LIFT_TO_WORK else PersonState.GO_HOME
        if p.committed_to is not None:
            p.searched_from = state
            _transition(p, world, now, PersonState.WAIT_FOR_LIFT)
        elif now >= p.wait_deadline:
            world.withdraw_request(p.person_id)
            p.request = None
            p.wait_deadline = None
            p.trip.mode = "solo"
            target = p.working_place if going == PersonState.GO_WORK else p.living_place
            person_search_path(p, target, world.graph)
            p.cursor = PathCursor(p.current_path)
            _transition(p, world, now, going)

    elif state == PersonState.WAIT_FOR_LIFT:
        if p.shuttle_id is not None or p.delivered_at is not None:
            p.request = None
            p.wait_deadline = None
            _transition(p, world, now, WAIT_FOR_LIFT_EXIT[p.searched_from])

    elif state in PersonState.TRAVELLING:
        if p.trip.mode == "shuttle":
            if p.delivered_at is not None and p.shuttle_id is None:
                _arrive(p, world, now, p.delivered_at)
        else:
            res = advance_along_path(p.cursor, world.graph, p.speed, world.params.step_seconds)
            p.dist_covered_alone += res.distance
            p.trip.distance_alone += res.distance
            p.node = p.cursor.node
            if p.cursor.finished:
                _arrive(p, world, now, now + res.elapsed)

    elif state == PersonState.WORKING:
        if now >= p.work_end:
            _enter_search(p, world, now, Direction.TO_HOME)

    return p
