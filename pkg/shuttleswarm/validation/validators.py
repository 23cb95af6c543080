#!/usr/bin/env python

"""
checks a finished run against the rules the agents are supposed to follow

from its files (run directory written with trace = True):

    events.jsonl     angle, visited, seats, lateness, complexity, splice, fsm
    ledger.csv +
    charges.csv      conservation of the billed cost, exact

and, on a World still in memory, conservation of persons and the double
entry of served users.

every check returns a list of Violation, empty when the run is healthy
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import os
from fractions import Fraction

from shuttleswarm.agents.states import (PersonState, PERSON_TRANSITIONS, SHUTTLE_TRANSITIONS, WAIT_FOR_LIFT_EXIT,
                                        is_valid_transition)
from shuttleswarm.selforg.insertion import LATENESS_FACTOR
from shuttleswarm.costing.ledger import read_csv_rows, parse_fraction
from shuttleswarm.engine.world import EventLog
from shuttleswarm.harness.runner import EVENTS_FILE, LEDGER_FILE, CHARGES_FILE

# decimal renderings of the ledger carry 6 digits
DECIMAL_TOLERANCE = 1e-6

ANGLE_TOLERANCE = 1e-9


class MissingRunFileError(IOError):
    pass


class Violation(object):
    def __init__(self, kind, message, **where):
        self.kind = kind
        self.message = message
        self.where = where

    def __repr__(self):
        return "Violation(%s: %s)" % (self.kind, self.message)

    def __str__(self):
        return "%s: %s" % (self.kind, self.message)


def _records(events, kind):
    if isinstance(events, EventLog):
        return events.of_kind(kind)
    return [rec for rec in events if rec["kind"] == kind]


def check_angles(events):
    out = []
    for rec in _records(events, "admission"):
        angles = dict((c["person"], c["angle"]) for c in rec["candidates"])
        for pid in rec["admitted"]:
            angle = angles.get(pid)
            if angle is None or angle > rec["angle_threshold"] + ANGLE_TOLERANCE:
                out.append(Violation("angle", "shuttle %s admitted person %s at tick %s with bearing angle %s > %s" % (
                    rec["shuttle"], pid, rec["tick"], angle, rec["angle_threshold"]),
                                     shuttle=rec["shuttle"], person=pid, tick=rec["tick"]))
    return out


def check_visited(events):
    out = []
    for rec in _records(events, "admission"):
        destinations = dict((c["person"], c["destination"]) for c in rec["candidates"])
        visited = set(rec["visited"])
        for pid in rec["admitted"]:
            if destinations.get(pid) in visited:
                out.append(Violation("visited", "shuttle %s admitted person %s to already visited stop %s at tick %s" % (
                    rec["shuttle"], pid, destinations[pid], rec["tick"]),
                                     shuttle=rec["shuttle"], person=pid, tick=rec["tick"]))
    return out


def check_seats(events):
    out = []
    for rec in _records(events, "board"):
        if rec["onboard"] > rec["capacity"]:
            out.append(Violation("seats", "shuttle %s carries %s of %s at tick %s" % (
                rec["shuttle"], rec["onboard"], rec["capacity"], rec["tick"]),
                                 shuttle=rec["shuttle"], tick=rec["tick"]))
    for rec in _records(events, "admission"):
        if len(rec["admitted"]) > rec["open_seats"]:
            out.append(Violation("seats", "shuttle %s admitted %s with %s open seats at tick %s" % (
                rec["shuttle"], len(rec["admitted"]), rec["open_seats"], rec["tick"]),
                                 shuttle=rec["shuttle"], tick=rec["tick"]))
    return out


def check_lateness(events):
    """spliced insertions must keep change < 1.5 t_original and change <= av_time"""
    out = []
    for rec in _records(events, "admission"):
        if not rec["first_to_work"]:
            continue
        for r in rec["records"]:
            if not r["admitted"] or r["as_last"] or r["change"] is None:
                continue
            if not (r["change"] < LATENESS_FACTOR * r["t_original"] and r["change"] <= rec["av_time"]):
                out.append(Violation("lateness", "shuttle %s spliced %s at tick %s: change %s, original %s, av_time %s" % (
                    rec["shuttle"], r["destination"], rec["tick"], r["change"], r["t_original"], rec["av_time"]),
                                     shuttle=rec["shuttle"], tick=rec["tick"]))
    return out


def check_complexity(events):
    out = []
    for rec in _records(events, "admission"):
        n, m, count, C = rec["n"], rec["m"], rec["count"], rec["C"]
        if count > C * n * m:
            out.append(Violation("complexity", "shuttle %s at tick %s: %s operations > %s * %s * %s" % (
                rec["shuttle"], rec["tick"], count, C, n, m), shuttle=rec["shuttle"], tick=rec["tick"]))
        if m > rec["capacity"] - 1:
            out.append(Violation("complexity", "shuttle %s at tick %s scanned %s targets" % (
                rec["shuttle"], rec["tick"], m), shuttle=rec["shuttle"], tick=rec["tick"]))
    return out


def _is_subsequence(short, long):
    it = iter(long)
    return all(any(x == y for y in it) for x in short)


def check_splice(events):
    out = []
    for rec in _records(events, "admission"):
        targets, stops = rec["targets"], rec["stops"]
        if len(set(targets)) != len(targets):
            out.append(Violation("splice", "shuttle %s at tick %s: duplicate targets %s" % (
                rec["shuttle"], rec["tick"], targets), shuttle=rec["shuttle"], tick=rec["tick"]))
        if not _is_subsequence(targets, stops):
            out.append(Violation("splice", "shuttle %s at tick %s: targets %s out of order in stops %s" % (
                rec["shuttle"], rec["tick"], targets, stops), shuttle=rec["shuttle"], tick=rec["tick"]))
    return out


TRANSITION_TABLES = {"person": PERSON_TRANSITIONS, "shuttle": SHUTTLE_TRANSITIONS}


def check_fsm(events):
    """ transitions outside the tables, out of sequence, or a wait for a lift
    ending in the other trip of the day than the search before it
    """
    out = []
    last = {}
    searched = {}
    for rec in _records(events, "transition"):
        key = (rec["agent"], rec["id"])
        table = TRANSITION_TABLES.get(rec["agent"])
        if table is None or not is_valid_transition(table, rec["old"], rec["new"]):
            out.append(Violation("fsm", "%s %s: %s -> %s at tick %s" % (
                rec["agent"], rec["id"], rec["old"], rec["new"], rec["tick"]),
                                 agent=rec["agent"], id=rec["id"], tick=rec["tick"]))
        elif key in last and last[key] != rec["old"]:
            out.append(Violation("fsm", "%s %s leaves %s but was in %s at tick %s" % (
                rec["agent"], rec["id"], rec["old"], last[key], rec["tick"]),
                                 agent=rec["agent"], id=rec["id"], tick=rec["tick"]))
        elif rec["agent"] == "person" and rec["old"] == PersonState.WAIT_FOR_LIFT and \
                rec["new"] != WAIT_FOR_LIFT_EXIT.get(searched.get(key), rec["new"]):
            out.append(Violation("fsm", "person %s waited for a lift after %s but went on to %s at tick %s" % (
                rec["id"], searched[key], rec["new"], rec["tick"]), agent="person", id=rec["id"], tick=rec["tick"]))
        if rec["new"] == PersonState.WAIT_FOR_LIFT:
            searched[key] = rec["old"]
        last[key] = rec["new"]
    return out


def check_conservation(leg_rows, charge_rows):
    """ per shuttle, the passenger charges sum exactly to the billed leg costs

    rows as read by read_csv_rows from ledger.csv and charges.csv
    """
    out = []
    billed, charged = {}, {}

    for row in leg_rows:
        cost = parse_fraction(row["cost_exact"])
        if abs(float(row["cost"]) - float(cost)) > DECIMAL_TOLERANCE:
            out.append(Violation("conservation", "shuttle %s leg %s: cost %s does not match %s" % (
                row["shuttle"], row["leg"], row["cost"], row["cost_exact"]), shuttle=row["shuttle"]))
        if row["passengers"].strip():
            billed[row["shuttle"]] = billed.get(row["shuttle"], Fraction(0)) + cost

    for row in charge_rows:
        charge = parse_fraction(row["charge_exact"])
        if abs(float(row["charge"]) - float(charge)) > DECIMAL_TOLERANCE:
            out.append(Violation("conservation", "shuttle %s person %s: charge %s does not match %s" % (
                row["shuttle"], row["person"], row["charge"], row["charge_exact"]), shuttle=row["shuttle"]))
        charged[row["shuttle"]] = charged.get(row["shuttle"], Fraction(0)) + charge

    for sid in sorted(set(billed) | set(charged)):
        b, c = billed.get(sid, Fraction(0)), charged.get(sid, Fraction(0))
        if b != c:
            out.append(Violation("conservation", "shuttle %s: charges sum to %s, billed legs to %s" % (
                sid, float(c), float(b)), shuttle=sid))
    return out


def check_person_conservation(world):
    """every person is at exactly one place: a node, an edge or one shuttle"""
    out = []
    riders = {}
    for sid, s in world.shuttles.items():
        for pid in s.passengers:
            if pid in riders:
                out.append(Violation("persons", "person %s rides shuttles %s and %s" % (pid, riders[pid], sid),
                                     person=pid))
            riders[pid] = sid

    for pid, p in world.persons.items():
        kind, where = p.location()
        if kind == "shuttle":
            if riders.get(pid) != where:
                out.append(Violation("persons", "person %s claims shuttle %s, not on board" % (pid, where),
                                     person=pid))
        elif pid in riders:
            out.append(Violation("persons", "person %s on board shuttle %s but at %s %s" % (
                pid, riders[pid], kind, where), person=pid))
        elif kind == "node" and not where in world.graph:
            out.append(Violation("persons", "person %s at unknown node %s" % (pid, where), person=pid))
    return out


def check_double_entry(world):
    """served users counted from persons and from the shuttles agree"""
    by_persons = set(pid for pid, p in world.persons.items()
                     if p.served or p.delivered_at is not None)
    by_shuttles = set()
    for s in world.shuttles.values():
        by_shuttles |= s.delivered
    if by_persons != by_shuttles:
        return [Violation("double_entry", "served users differ, persons only %s, shuttles only %s" % (
            sorted(by_persons - by_shuttles), sorted(by_shuttles - by_persons)))]
    return []


EVENT_CHECKS = (check_angles, check_visited, check_seats, check_lateness,
                check_complexity, check_splice, check_fsm)


def validate_events(events):
    out = []
    for check in EVENT_CHECKS:
        out.extend(check(events))
    return out


def validate_world(world):
    return check_person_conservation(world) + check_double_entry(world)


def validate_run(run_dir):
    """ all file based checks over a run directory

    raises MissingRunFileError when one of its files is missing
    """
    names = dict((name, os.path.join(run_dir, name)) for name in (EVENTS_FILE, LEDGER_FILE, CHARGES_FILE))
    for name, fName in names.items():
        if not os.path.exists(fName):
            raise MissingRunFileError("%s is missing in '%s' (run with --trace)" % (name, run_dir))

    events = EventLog.read(names[EVENTS_FILE])
    violations = validate_events(events)
    violations += check_conservation(read_csv_rows(names[LEDGER_FILE]),
                                     read_csv_rows(names[CHARGES_FILE]))
    logger.debug("%s: %s events, %s violations" % (run_dir, len(events), len(violations)))
    return violations
