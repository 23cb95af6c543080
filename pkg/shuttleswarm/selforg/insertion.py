#!/usr/bin/env python

"""
decentralized admission of new passengers by a single shuttle

every shuttle decides alone, from what it sees at its current intersection:

    form_initial_group   the first group of a service episode and its final target
    filter_candidates    drops candidates by bearing angle and by visited stops
    insert_destination   places one candidate destination into the targets
    try_admit            the whole procedure for a moving shuttle

positions in the insertion scan are 1-based over the targets list: at
position i the shuttle compares the detour to d (t2d) with the direct
path to targets[i] (t2n), both starting at new_origin for i = 1 and at
targets[i-1] afterwards. d goes in front of the first target it beats,
or last when it beats none.

rejections are not errors, they are reasons on the returned decision.
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

from collections import OrderedDict

from shuttleswarm.config import config
from shuttleswarm.utils.geometry import bearing_angle, UndefinedBearingError
from shuttleswarm.geodata.road_graph import shortest_path, path_through, path_travel_time, arrival_offsets
from shuttleswarm.engine.movement import PathCursor

# t2d, t2n, their comparison and d2t
OPERATIONS_PER_POSITION = 4

LATENESS_FACTOR = 1.5

REASON_ANGLE = "angle"
REASON_VISITED = "visited_stop"
REASON_NO_SEATS = "no_seats"
REASON_LATENESS = "lateness_guard"
REASONS = (REASON_ANGLE, REASON_VISITED, REASON_NO_SEATS, REASON_LATENESS)


class InsertionContext(object):
    """ working state of one admission round

    destinations: OrderedDict d -> candidate requests going to d
    targets/stops: copies that get spliced, stops = visited stops + [new_origin] + targets
    original: the first passenger's ride path as computed at boarding
    av_time: the first passenger's remaining time budget, None unless work bound
    """

    def __init__(self, graph, targets, stops, new_origin,
                 original=None,
                 open_seats=None,
                 av_time=None,
                 first_to_work=False,
                 base=None):
        self.graph = graph
        self.targets = list(targets)
        self.stops = list(stops)
        self.new_origin = new_origin
        self.original = original
        self.open_seats = config.__DEFAULT_CAPACITY__ if open_seats is None else open_seats
        self.av_time = av_time
        self.first_to_work = first_to_work
        self.base = len(self.stops) - len(self.targets) if base is None else base
        self.destinations = OrderedDict()

        self.tot_added_passengers = 0
        self.added = False
        self.as_last = False
        # set by the original procedure, never read
        self.up_costs_pass = False
        self.path_changed = False

        self.admitted = []
        self.rejected = []
        self.angles = {}
        self.records = []

        self.n = 0
        self.m = 0
        self.count = 0

    def __repr__(self):
        return "InsertionContext(at %s, targets = %s, open_seats = %s, admitted = %s)" % (
            self.new_origin, self.targets, self.open_seats, self.admitted)

    def reject(self, request, reason):
        self.rejected.append((request, reason))


class AdmissionDecision(object):
    def __init__(self, admitted, rejected, targets, stops, path_changed=False, trace=None):
        self.admitted = list(admitted)
        self.rejected = list(rejected)
        self.targets = list(targets)
        self.stops = list(stops)
        self.path_changed = path_changed
        self.trace = trace or {}

    @property
    def admitted_ids(self):
        return [r.person_id for r in self.admitted]

    def reasons(self):
        return dict((r.person_id, reason) for r, reason in self.rejected)

    def __repr__(self):
        return "AdmissionDecision(admitted = %s, rejected = %s, targets = %s)" % (
            self.admitted_ids, self.reasons(), self.targets)


class InitialGroup(object):
    def __init__(self, group, final_target, initial_path, targets, rejected):
        self.group = group
        self.final_target = final_target
        self.initial_path = initial_path
        self.targets = targets
        self.rejected = rejected

    def __repr__(self):
        return "InitialGroup(%s, final_target = %s, targets = %s)" % (
            [r.person_id for r in self.group], self.final_target, self.targets)


def scan_insertion_index(graph, origin, targets, d):
    """ first 1-based position i at which |t2d| < |t2n|, None if there is none

    returns (i, t2d, t2n, d2t, positions scanned)
    """
    for i in range(1, len(targets) + 1):
        prev = origin if i == 1 else targets[i - 2]
        nxt = targets[i - 1]
        t2d = shortest_path(graph, prev, d)
        t2n = shortest_path(graph, prev, nxt)
        if t2d.length < t2n.length:
            return i, t2d, t2n, shortest_path(graph, d, nxt), i
    return None, None, None, None, len(targets)


def form_initial_group(s, requests, graph):
    """ the first group of a wandering shuttle standing at s.node

    group: up to the open seats, earliest issue time first
    final_target: the group destination farthest away in travel time
    initial_path: visits every group destination, ends at final_target
    """
    if len(requests) == 0:
        raise ValueError("cannot form a group without requests")
    origin = s.node
    graph.check_node(origin)

    ordered = sorted(requests, key=lambda r: r.key)
    seats = s.capacity - len(s.passengers)
    group = ordered[:seats]
    rejected = [(r, REASON_NO_SEATS) for r in ordered[seats:]]

    times = {}
    for r in group:
        if not r.destination in times:
            times[r.destination] = shortest_path(graph, origin, r.destination).travel_time
    final_target = min(times, key=lambda d: (-times[d], d))

    targets = [final_target]
    for r in group:
        d = r.destination
        if d in targets or d == origin:
            continue
        i = scan_insertion_index(graph, origin, targets, d)[0]
        if i is None:
            # final target stays last
            targets.insert(len(targets) - 1, d)
        else:
            targets.insert(i - 1, d)

    initial_path = path_through(graph, origin, targets)
    logger.debug("shuttle %s: initial group %s at %s, targets %s" % (
        s.shuttle_id, [r.person_id for r in group], origin, targets))
    return InitialGroup(group, final_target, initial_path, targets, rejected)


def filter_candidates(ctx, s, candidates):
    """ keeps candidates whose destination deviates at most angle_threshold
    degrees from the direction to the final target and was not visited yet

    returns the kept candidates in their given order, rejections are
    recorded on ctx
    """
    graph = ctx.graph
    threshold = getattr(s, "angle_threshold", config.__DEFAULT_ANGLE_THRESHOLD__)
    final_target = ctx.targets[-1]
    at = graph.coordinates(ctx.new_origin)
    visited = set(s.visited)

    kept = []
    for r in candidates:
        try:
            angle = bearing_angle(at, graph.coordinates(final_target), graph.coordinates(r.destination))
        except UndefinedBearingError:
            ctx.angles[r.person_id] = None
            ctx.reject(r, REASON_ANGLE)
            continue
        ctx.angles[r.person_id] = angle
        if angle > threshold:
            ctx.reject(r, REASON_ANGLE)
        elif r.destination in visited:
            ctx.reject(r, REASON_VISITED)
        else:
            kept.append(r)
    return kept


def _admit(ctx, requests):
    ctx.admitted.extend(requests)
    ctx.open_seats -= len(requests)
    ctx.tot_added_passengers += len(requests)
    ctx.added = True


def _splice(ctx, i, d):
    """d in front of targets[i-1] (1-based position i)"""
    ctx.targets.insert(i - 1, d)
    ctx.stops.insert(ctx.base + i - 1, d)


def insert_destination(ctx, d, group_at_d):
    """ one pass of the destination loop for the candidates going to d

    returns the record of what happened, None when the loop has to stop
    (no open seats or nobody left)
    """
    ctx.added = False
    if ctx.open_seats == 0 or len(group_at_d) == 0:
        return None

    take = list(group_at_d[:ctx.open_seats])
    for r in group_at_d[ctx.open_seats:]:
        ctx.reject(r, REASON_NO_SEATS)
    ctx.n += len(group_at_d)
    ctx.m = max(ctx.m, len(ctx.targets))

    record = OrderedDict(destination=d, persons=[r.person_id for r in take],
                         splice=None, as_last=False, change=None, t_original=None)

    if d == ctx.new_origin:
        # boards and alights at once
        _admit(ctx, take)
    elif d in ctx.targets:
        ctx.count += 1
        _admit(ctx, take)
    else:
        i, t2d, t2n, d2t, scanned = scan_insertion_index(ctx.graph, ctx.new_origin, ctx.targets, d)
        ctx.count += OPERATIONS_PER_POSITION * scanned
        if i is None:
            ctx.targets.append(d)
            ctx.stops.append(d)
            ctx.as_last = True
            record["as_last"] = True
            record["splice"] = len(ctx.targets)
            _admit(ctx, take)
        else:
            check = True
            if ctx.first_to_work:
                t_original = path_travel_time(ctx.original, ctx.graph)
                change = t_original - path_travel_time(t2n, ctx.graph) + \
                         path_travel_time(t2d, ctx.graph) + path_travel_time(d2t, ctx.graph)
                check = change < t_original * LATENESS_FACTOR and ctx.av_time >= change
                record["change"] = change
                record["t_original"] = t_original
            if check:
                _splice(ctx, i, d)
                record["splice"] = i
                _admit(ctx, take)
                if i == 1:
                    ctx.path_changed = True
            else:
                for r in take:
                    ctx.reject(r, REASON_LATENESS)

    record["admitted"] = ctx.added
    ctx.records.append(record)
    return record


def build_context(s, graph, now):
    """the InsertionContext of shuttle s standing at its current node"""
    new_origin = s.node
    stops = list(s.stops_done) + [new_origin] + list(s.targets)
    first = s.first_passenger()
    original, av_time, first_to_work = None, None, False
    if first is not None:
        original = first.ride_path
        if first.to_work:
            first_to_work = True
            av_time = first.work_start - now - (now - first.board_time)
    return InsertionContext(graph, s.targets, stops, new_origin,
                            original=original,
                            open_seats=s.open_seats,
                            av_time=av_time,
                            first_to_work=first_to_work,
                            base=len(s.stops_done) + 1)


def operation_cost_counter(ctx):
    """(n, m, count) of the admission round, count <= OPERATIONS_PER_POSITION * n * m"""
    return ctx.n, ctx.m, ctx.count


def try_admit(s, candidates, world, now):
    """ admission round of a moving shuttle at its current node

    on admission the shuttle's targets, path and the estimated arrival of
    every passenger on board are updated; boarding itself is left to the
    shuttle
    """
    graph = world.graph
    ctx = build_context(s, graph, now)
    open_seats = ctx.open_seats
    visited = sorted(s.visited)

    kept = filter_candidates(ctx, s, sorted(candidates, key=lambda r: r.key))
    for r in kept:
        ctx.destinations.setdefault(r.destination, []).append(r)

    processed = 0
    for d, group in ctx.destinations.items():
        if insert_destination(ctx, d, group) is None:
            break
        processed += 1
    for d, group in list(ctx.destinations.items())[processed:]:
        for r in group:
            ctx.reject(r, REASON_NO_SEATS)

    if ctx.tot_added_passengers == 0:
        idx = ctx.base - 1
        if idx != 0:
            ctx.stops.pop(idx)

    if ctx.tot_added_passengers > 0:
        old_path = s.cursor.path if s.cursor is not None else None
        s.targets = list(ctx.targets)
        new_path = path_through(graph, s.node, s.targets)
        ctx.path_changed = ctx.path_changed or old_path is None or \
                           new_path.edges != old_path.edges[s.cursor.index:]
        s.cursor = PathCursor(new_path)
        refresh_estimates(s, graph, now, world.params.dwell_seconds)

    n, m, count = operation_cost_counter(ctx)
    first = s.first_passenger()
    trace = OrderedDict(
        shuttle=s.shuttle_id,
        node=s.node,
        time=now,
        final_target=ctx.targets[-1] if ctx.targets else None,
        first=first.person_id if first is not None else None,
        first_to_work=ctx.first_to_work,
        av_time=ctx.av_time,
        open_seats=open_seats,
        capacity=s.capacity,
        angle_threshold=getattr(s, "angle_threshold", config.__DEFAULT_ANGLE_THRESHOLD__),
        visited=visited,
        candidates=[dict(person=r.person_id, destination=r.destination,
                         angle=ctx.angles.get(r.person_id, None)) for r in candidates],
        admitted=[r.person_id for r in ctx.admitted],
        rejected=dict((str(r.person_id), reason) for r, reason in ctx.rejected),
        records=[dict(rec) for rec in ctx.records],
        targets=list(ctx.targets),
        stops=list(ctx.stops),
        path_changed=ctx.path_changed,
        n=n, m=m, count=count, C=OPERATIONS_PER_POSITION)

    decision = AdmissionDecision(ctx.admitted, ctx.rejected, ctx.targets, ctx.stops,
                                 path_changed=ctx.path_changed, trace=trace)
    if decision.admitted:
        logger.debug("shuttle %s at %s admits %s" % (s.shuttle_id, s.node, decision.admitted_ids))
    return decision


def refresh_estimates(s, graph, now, dwell):
    """expected arrival at every target and the eta of every passenger on board"""
    offsets = arrival_offsets(s.cursor.path, graph)
    s.expected_arrival = dict((d, now + dwell + offsets[d]) for d in s.targets if d in offsets)
    for psg in s.passengers.values():
        psg.eta = s.expected_arrival.get(psg.destination, None)
