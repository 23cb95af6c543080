#!/usr/bin/env python

"""
per shuttle leg accounting and fare splitting

a leg spans from one stop event (boarding and/or alighting) to the next,
whatever the number of road edges in between

    cost_leg            = length(leg) / 1000 * cost_per_km
    cost_path           = sum of cost_leg over the legs of a shuttle
    cost_leg_passenger  = cost_leg / |passengers on board during the leg|

legs with nobody on board (dead running) are recorded but never billed.
Amounts are kept as exact fractions, rounding happens only in reports.
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import csv
from fractions import Fraction


class CostingError(ValueError):
    pass


class AccountingError(RuntimeError):
    pass


class UnknownPassengerError(KeyError):
    pass


def exact(x):
    """the rational value of x as written in decimal (0.1 -> 1/10)"""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(repr(float(x)))


def format_fraction(x):
    x = exact(x)
    return "%s/%s" % (x.numerator, x.denominator)


def parse_fraction(s):
    return Fraction(s)


class Leg(object):
    def __init__(self, index, from_node, to_node, length, passengers, cost):
        self.index = index
        self.from_node = from_node
        self.to_node = to_node
        self.length = length
        self.passengers = tuple(sorted(passengers))
        self.cost = cost

    @property
    def billed(self):
        return len(self.passengers) > 0

    def __repr__(self):
        return "Leg(%s: %s -> %s, %.1f m, passengers = %s, cost = %s)" % (
            self.index, self.from_node, self.to_node, self.length, list(self.passengers), float(self.cost))


class LegLedger(object):
    def __init__(self, cost_per_km=1., start_node=None):
        if cost_per_km < 0:
            raise CostingError("cost per km should be >= 0 (got %s)" % cost_per_km)
        self.cost_per_km = cost_per_km
        self.legs = []
        self.charges = {}
        self.onboard = set()
        self.last_stop = start_node

    def __repr__(self):
        return "LegLedger(%s legs, path cost = %.2f, onboard = %s)" % (
            len(self.legs), float(path_cost(self)), sorted(self.onboard))

    def total_length(self):
        return sum(leg.length for leg in self.legs)

    def billed_cost(self):
        return sum((leg.cost for leg in self.legs if leg.billed), Fraction(0))

    def passengers(self):
        return sorted(self.charges.keys())


def leg_cost(length_m, cost_per_km):
    if length_m < 0 or cost_per_km < 0:
        raise CostingError("leg length and cost per km should be >= 0 (got %s, %s)" % (length_m, cost_per_km))
    return exact(length_m) / 1000 * exact(cost_per_km)


def path_cost(ledger):
    return sum((leg.cost for leg in ledger.legs), Fraction(0))


def split_leg(leg):
    if not leg.billed:
        raise AccountingError("leg %s has no passengers to split its cost among" % leg.index)
    share = leg.cost / len(leg.passengers)
    return dict((pid, share) for pid in leg.passengers)


def on_stop_event(ledger, node, boarded=(), alighted=(), leg_length=0.):
    """ closes the running leg at `node` (if the shuttle moved since the last
    stop event), then applies alighting before boarding
    """
    if leg_length < 0:
        raise CostingError("negative leg length %s" % leg_length)

    if leg_length > 0:
        leg = Leg(len(ledger.legs), ledger.last_stop, node, leg_length,
                  ledger.onboard, leg_cost(leg_length, ledger.cost_per_km))
        ledger.legs.append(leg)
        if leg.billed:
            for pid, share in split_leg(leg).items():
                ledger.charges[pid] += share

    for pid in alighted:
        if not pid in ledger.onboard:
            raise AccountingError("passenger %s alights at %s but is not on board" % (pid, node))
        ledger.onboard.remove(pid)

    for pid in boarded:
        if pid in ledger.onboard:
            raise AccountingError("passenger %s boards at %s but is already on board" % (pid, node))
        ledger.onboard.add(pid)
        ledger.charges.setdefault(pid, Fraction(0))

    ledger.last_stop = node
    return ledger


def close_ledger(ledger, node, leg_length):
    """ends the trailing leg (end of run)"""
    return on_stop_event(ledger, node, (), (), leg_length)


def passenger_total(ledger, pid):
    try:
        return ledger.charges[pid]
    except KeyError:
        raise UnknownPassengerError("passenger %s never rode on this shuttle" % (pid,))


LEG_COLUMNS = ["shuttle", "leg", "from_node", "to_node", "length", "passengers", "cost", "cost_exact"]
CHARGE_COLUMNS = ["shuttle", "person", "charge", "charge_exact"]


def write_ledgers(ledgers, fName):
    """ledgers: dict shuttle id -> LegLedger"""
    with open(fName, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(LEG_COLUMNS)
        for sid in sorted(ledgers):
            for leg in ledgers[sid].legs:
                w.writerow([sid, leg.index, leg.from_node, leg.to_node, repr(leg.length),
                            " ".join(str(p) for p in leg.passengers),
                            "%.6f" % leg.cost, format_fraction(leg.cost)])


def write_charges(ledgers, fName):
    with open(fName, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(CHARGE_COLUMNS)
        for sid in sorted(ledgers):
            charges = ledgers[sid].charges
            for pid in sorted(charges):
                w.writerow([sid, pid, "%.6f" % charges[pid], format_fraction(charges[pid])])


def read_csv_rows(fName):
    with open(fName, newline="") as f:
        return list(csv.DictReader(f))


if __name__ == '__main__':
    ledger = LegLedger(1.)
    on_stop_event(ledger, 0, boarded=["A"])
    on_stop_event(ledger, 1, boarded=["B"], leg_length=2000.)
    on_stop_event(ledger, 2, alighted=["A", "B"], leg_length=2000.)
    print(ledger, ledger.charges)
