#!/usr/bin/env python

"""
a single scenario run and the files it leaves in its run directory

    report.csv, series.csv, report.json   metrics (see shuttleswarm.metrics)
    ledger.csv, charges.csv               per shuttle legs and passenger charges
    scenario.json                         the fully defaulted scenario
    events.jsonl                          event log, only with trace = True
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import os

from shuttleswarm.engine.world import run_world
from shuttleswarm.metrics.report import summarize, emit
from shuttleswarm.costing.ledger import write_ledgers, write_charges

LEDGER_FILE = "ledger.csv"
CHARGES_FILE = "charges.csv"
SCENARIO_FILE = "scenario.json"
EVENTS_FILE = "events.jsonl"


def write_run(world, report, config, out_dir, formats=("csv", "json")):
    """writes every artifact of a finished run, returns the written file names"""
    if not os.path.exists(out_dir):
        os.makedirs(out_dir)

    written = emit(report, out_dir, formats)

    ledgers = dict((sid, s.ledger) for sid, s in world.shuttles.items())
    fName = os.path.join(out_dir, LEDGER_FILE)
    write_ledgers(ledgers, fName)
    written.append(fName)
    fName = os.path.join(out_dir, CHARGES_FILE)
    write_charges(ledgers, fName)
    written.append(fName)

    if config is not None:
        fName = os.path.join(out_dir, SCENARIO_FILE)
        with open(fName, "w") as f:
            f.write(config.to_json())
            f.write("\n")
        written.append(fName)

    if world.events.enabled:
        fName = os.path.join(out_dir, EVENTS_FILE)
        world.events.dump(fName)
        written.append(fName)

    logger.debug("wrote %s" % written)
    return written


def run_scenario(config, out_dir=None, trace=False, formats=("csv", "json")):
    """ builds and runs the world of a scenario

    returns (MetricsReport, World), the run directory is only written when
    out_dir is given
    """
    world = config.build_world(trace=trace)
    run_world(world)
    report = summarize(world)
    if out_dir is not None:
        write_run(world, report, config, out_dir, formats)
    logger.info("seed %s: served %s of %s%s" % (config.seed, report.users_served, report.users_total,
                                                 " (incomplete)" if report.incomplete else ""))
    return report, world
