from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import os
import csv
import json
import numpy as np
import sortedcontainers
from decimal import Decimal, ROUND_HALF_EVEN
from fractions import Fraction


# rounded half even to 2 digits on output, everything else is written raw
CURRENCY_FIELDS = ("avg_travel_cost", "median_travel_cost", "total_gain")
MINUTES_FIELDS = ("avg_late_minutes", "avg_waiting_minutes")

REPORT_FIELDS = ("users_total",
                 "users_served",
                 "served_pct",
                 "trips_served",
                 "served_late_count",
                 "late_pct",
                 "avg_late_minutes",
                 "avg_travel_cost",
                 "median_travel_cost",
                 "avg_waiting_minutes",
                 "avg_cumulative_lifts",
                 "min_cumulative_lifts",
                 "max_cumulative_lifts",
                 "total_gain",
                 "avg_km_per_shuttle",
                 "fleet_size",
                 "incomplete",
                 "ticks")

DISTRIBUTION_FIELDS = ("travel_costs", "waiting_minutes", "late_minutes",
                       "cumulative_lifts", "km_per_shuttle")

SERIES_COLUMNS = ("series", "time", "value")


def round_half_even(x, digits=2):
    if x is None:
        return None
    if isinstance(x, Fraction):
        d = Decimal(x.numerator) / Decimal(x.denominator)
    else:
        d = Decimal(repr(float(x)))
    return float(d.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))


def _mean(values):
    return float(np.mean(values)) if len(values) > 0 else None


class SampledSeries(object):
    """time -> value samples taken every `interval` seconds"""

    def __init__(self, name, interval):
        self.name = name
        self.interval = interval
        self.samples = sortedcontainers.SortedDict()

    def __repr__(self):
        return "SampledSeries(%s, %s samples)" % (self.name, len(self.samples))

    def __len__(self):
        return len(self.samples)

    def add(self, t, value):
        if len(self.samples) > 0 and t <= self.samples.peekitem(-1)[0]:
            raise ValueError("sample at %s is not after %s" % (t, self.samples.peekitem(-1)[0]))
        self.samples[t] = value

    def items(self):
        return list(self.samples.items())

    def last(self):
        return self.samples.peekitem(-1)[1] if len(self.samples) > 0 else None


class MetricsReport(object):
    def __init__(self, **kwargs):
        for name in REPORT_FIELDS:
            setattr(self, name, kwargs.pop(name, None))
        for name in DISTRIBUTION_FIELDS:
            setattr(self, name, list(kwargs.pop(name, [])))
        self.series = kwargs.pop("series", {})
        self.total_gain_exact = kwargs.pop("total_gain_exact", None)
        if kwargs:
            raise TypeError("unknown report fields %s" % sorted(kwargs))

    def __repr__(self):
        return "MetricsReport(served %s of %s, gain %s, incomplete = %s)" % (
            self.users_served, self.users_total, self.total_gain, self.incomplete)

    def scalars(self, rounded=True):
        """the REPORT_FIELDS in order, rounded for output"""
        out = []
        for name in REPORT_FIELDS:
            val = getattr(self, name)
            if rounded and name in CURRENCY_FIELDS + MINUTES_FIELDS:
                val = round_half_even(val, 2)
            out.append((name, val))
        return out

    def to_dict(self):
        d = dict(self.scalars())
        for name in DISTRIBUTION_FIELDS:
            d[name] = getattr(self, name)
        d["series"] = dict((name, s.items()) for name, s in self.series.items())
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        series = {}
        for name, items in d.pop("series", {}).items():
            s = SampledSeries(name, None)
            for t, v in items:
                s.add(t, v)
            series[name] = s
        return cls(series=series, **d)


class ReportEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, MetricsReport):
            return obj.to_dict()
        elif isinstance(obj, Fraction):
            return float(obj)
        elif isinstance(obj, sortedcontainers.SortedDict):
            return list(obj.items())
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        return json.JSONEncoder.default(self, obj)


def person_charges(shuttles):
    """person id -> exact total charge over all shuttles"""
    totals = {}
    for s in shuttles:
        for pid, charge in s.ledger.charges.items():
            totals[pid] = totals.get(pid, Fraction(0)) + charge
    return totals


def summarize(world):
    """ the report of a finished world

    a person counts as served once a shuttle delivered them (at least one
    trip of the day), waiting is counted per served trip and averages over
    nobody are None
    """
    persons = list(world.persons.values())
    shuttles = list(world.shuttles.values())

    served = [p for p in persons if p.served]
    served_trips = [t for p in served for t in p.trips if t.served]
    late = [p for p in served if any(t.served and t.late for t in p.trips)]
    late_minutes = [(t.arrival_time - p.work_start) / 60.
                    for p in late for t in p.trips if t.served and t.late]

    charges = person_charges(shuttles)
    costs = [charges.get(p.person_id, Fraction(0)) for p in served]
    waiting = [t.waiting / 60. for t in served_trips]
    lifts = [s.cumulative_lifts for s in shuttles]
    kms = [s.km for s in shuttles]
    gain = sum((s.ledger.billed_cost() for s in shuttles), Fraction(0))

    n_served = len(served)
    return MetricsReport(
        users_total=len(persons),
        users_served=n_served,
        served_pct=100. * n_served / len(persons) if persons else None,
        trips_served=len(served_trips),
        served_late_count=len(late),
        late_pct=100. * len(late) / n_served if n_served else None,
        avg_late_minutes=_mean(late_minutes),
        avg_travel_cost=float(sum(costs, Fraction(0)) / n_served) if n_served else None,
        median_travel_cost=float(np.median([float(c) for c in costs])) if n_served else None,
        avg_waiting_minutes=_mean(waiting),
        avg_cumulative_lifts=_mean(lifts),
        min_cumulative_lifts=min(lifts) if lifts else None,
        max_cumulative_lifts=max(lifts) if lifts else None,
        total_gain=float(gain),
        total_gain_exact=gain,
        avg_km_per_shuttle=_mean(kms),
        fleet_size=len(shuttles),
        incomplete=bool(world.incomplete),
        ticks=world.ticks_run,
        travel_costs=[float(c) for c in costs],
        waiting_minutes=waiting,
        late_minutes=late_minutes,
        cumulative_lifts=lifts,
        km_per_shuttle=kms,
        series=dict(world.metrics.series))


def _cell(val):
    if val is None:
        return ""
    if isinstance(val, bool):
        return "true" if val else "false"
    return repr(val) if isinstance(val, float) else str(val)


def emit(report, out_dir, formats=("csv", "json")):
    """ writes report.csv / report.json and series.csv into out_dir

    returns the list of written files
    """
    written = []
    for fmt in formats:
        if not fmt in ("csv", "json"):
            raise ValueError("unknown report format '%s'" % fmt)

    if "csv" in formats:
        fName = os.path.join(out_dir, "report.csv")
        with open(fName, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            scalars = report.scalars()
            w.writerow([name for name, _ in scalars])
            w.writerow([_cell(val) for _, val in scalars])
        written.append(fName)

        fName = os.path.join(out_dir, "series.csv")
        with open(fName, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(SERIES_COLUMNS)
            for name in sorted(report.series):
                for t, val in report.series[name].items():
                    w.writerow([name, _cell(t), _cell(val)])
        written.append(fName)

    if "json" in formats:
        fName = os.path.join(out_dir, "report.json")
        with open(fName, "w") as f:
            f.write(json.dumps(report, indent=1, sort_keys=True, cls=ReportEncoder))
            f.write("\n")
        written.append(fName)
    return written


def read_report(fName):
    with open(fName) as f:
        return MetricsReport.from_dict(json.load(f))


def _range(report):
    if report.min_cumulative_lifts is None:
        return ""
    return "%s [%s-%s]" % (int(round(report.avg_cumulative_lifts)),
                           report.min_cumulative_lifts, report.max_cumulative_lifts)


def _fmt(val, unit=""):
    if val is None:
        return "-"
    return ("%.2f" % round_half_even(val, 2)) + unit


def format_table(report):
    """two column text rendering of the headline figures"""
    rows = [("Users served", "%s of %s (%s)" % (report.users_served, report.users_total,
                                                _fmt(report.served_pct, "%"))),
            ("Served users late at work", "%s (%s)" % (report.served_late_count, _fmt(report.late_pct, "%"))),
            ("Avg. late", _fmt(report.avg_late_minutes, " min")),
            ("Avg. travel costs", _fmt(report.avg_travel_cost)),
            ("Median travel costs", _fmt(report.median_travel_cost)),
            ("Avg. waiting time", _fmt(report.avg_waiting_minutes, " min")),
            ("Avg. cumulative user lifts [range]", _range(report) or "-"),
            ("Tot. gain for the AS service", _fmt(report.total_gain)),
            ("Avg. Km traveled by AS", _fmt(report.avg_km_per_shuttle, " km"))]
    if report.incomplete:
        rows.append(("Incomplete", "max_ticks reached"))
    width = max(len(name) for name, _ in rows)
    return "\n".join("%s  %s" % (name.ljust(width), val) for name, val in rows)
