import os
import tempfile
from fractions import Fraction

from shuttleswarm.costing.ledger import (LegLedger, Leg, leg_cost, path_cost, split_leg, on_stop_event,
                                         close_ledger, passenger_total, write_ledgers, write_charges,
                                         read_csv_rows, exact, format_fraction, parse_fraction,
                                         CostingError, AccountingError, UnknownPassengerError)
from shuttleswarm.harness.scenario import ScenarioConfig
from shuttleswarm.harness.runner import run_scenario, LEDGER_FILE, CHARGES_FILE
from shuttleswarm.validation.validators import check_conservation

from tests.scenarios import COMPACT_DAY


def test_leg_cost():
    assert leg_cost(3000, 1.0) == 3
    assert leg_cost(0, 1.0) == 0
    assert leg_cost(1234, 0.5) == Fraction(617, 1000)


def test_leg_cost_negative():
    for args in [(-1, 1.), (100, -1.)]:
        try:
            leg_cost(*args)
        except CostingError:
            pass
        else:
            assert False, "expected CostingError"


def test_path_cost():
    ledger = LegLedger(1.)
    assert path_cost(ledger) == 0
    on_stop_event(ledger, 0, boarded=["A"])
    on_stop_event(ledger, 1, leg_length=3000., boarded=["B"])
    assert path_cost(ledger) == 3
    on_stop_event(ledger, 2, leg_length=2500., alighted=["A", "B"])
    assert path_cost(ledger) == Fraction(11, 2)


def test_split_leg():
    assert split_leg(Leg(0, 0, 1, 3000., ["a", "b", "c"], Fraction(3))) == {"a": 1, "b": 1, "c": 1}
    assert split_leg(Leg(0, 0, 1, 3000., ["a"], Fraction(3))) == {"a": 3}
    shares = split_leg(Leg(0, 0, 1, 5000., ["a", "b", "c", "d"], Fraction(5)))
    assert shares["a"] == Fraction(5, 4)
    assert sum(shares.values()) == 5


def test_split_empty_leg():
    try:
        split_leg(Leg(0, 0, 1, 100., [], Fraction(1, 10)))
    except AccountingError:
        pass
    else:
        assert False, "expected AccountingError"


def test_two_leg_ledger():
    ledger = LegLedger(1.)
    on_stop_event(ledger, 0, boarded=["A"])
    on_stop_event(ledger, 1, boarded=["B"], leg_length=2000.)
    on_stop_event(ledger, 2, alighted=["A", "B"], leg_length=2000.)
    assert passenger_total(ledger, "A") == 3
    assert passenger_total(ledger, "B") == 1
    assert ledger.billed_cost() == 4


def test_dead_running_not_billed():
    ledger = LegLedger(2., start_node=5)
    on_stop_event(ledger, 0, boarded=["A"], leg_length=700.)
    on_stop_event(ledger, 1, alighted=["A"], leg_length=1000.)
    close_ledger(ledger, 3, 400.)
    assert [leg.billed for leg in ledger.legs] == [False, True, False]
    assert ledger.legs[0].from_node == 5
    assert ledger.billed_cost() == 2
    assert path_cost(ledger) == Fraction(21, 5)
    assert ledger.total_length() == 2100.


def test_degenerate_rider():
    ledger = LegLedger(1.)
    on_stop_event(ledger, 0, boarded=["A"])
    on_stop_event(ledger, 0, alighted=["A"])
    assert passenger_total(ledger, "A") == 0
    assert ledger.legs == []


def test_alight_not_on_board():
    ledger = LegLedger(1.)
    try:
        on_stop_event(ledger, 0, alighted=["X"])
    except AccountingError:
        pass
    else:
        assert False, "expected AccountingError"


def test_unknown_passenger():
    try:
        passenger_total(LegLedger(1.), "nobody")
    except UnknownPassengerError:
        pass
    else:
        assert False, "expected UnknownPassengerError"


def test_monotonicity():
    def charge_of_a(others):
        ledger = LegLedger(1.)
        on_stop_event(ledger, 0, boarded=["A"] + others)
        on_stop_event(ledger, 1, alighted=["A"] + others, leg_length=1234.)
        return passenger_total(ledger, "A")

    assert charge_of_a(["B"]) < charge_of_a([])
    assert charge_of_a(["B", "C"]) < charge_of_a(["B"])


def test_conservation_random():
    import numpy as np
    rng = np.random.RandomState(0)
    for _ in range(20):
        ledger = LegLedger(float(rng.uniform(.1, 3.)))
        onboard = set()
        for node in range(30):
            alighted = sorted(p for p in onboard if rng.uniform() < .3)
            onboard -= set(alighted)
            boarded = ["p%s_%s" % (node, k) for k in range(rng.randint(0, 3))]
            onboard |= set(boarded)
            on_stop_event(ledger, node, boarded=boarded, alighted=alighted,
                          leg_length=float(rng.uniform(0, 2000)))
        assert sum(ledger.charges.values(), Fraction(0)) == ledger.billed_cost()
        assert all(c >= 0 for c in ledger.charges.values())


def test_exact():
    assert exact(0.1) == Fraction(1, 10)
    assert exact(3) == 3
    assert format_fraction(Fraction(617, 1000)) == "617/1000"
    assert parse_fraction("617/1000") == Fraction(617, 1000)


def test_export():
    a = LegLedger(1.)
    on_stop_event(a, 0, boarded=[1, 2])
    on_stop_event(a, 1, alighted=[1], leg_length=1000.)
    on_stop_event(a, 2, alighted=[2], leg_length=500.)
    b = LegLedger(1., start_node=4)
    close_ledger(b, 5, 300.)

    out = tempfile.mkdtemp()
    write_ledgers({0: a, 1: b}, os.path.join(out, "ledger.csv"))
    write_charges({0: a, 1: b}, os.path.join(out, "charges.csv"))

    legs = read_csv_rows(os.path.join(out, "ledger.csv"))
    assert [r["shuttle"] for r in legs] == ["0", "0", "1"]
    assert legs[0]["passengers"] == "1 2"
    assert legs[2]["passengers"] == ""
    assert parse_fraction(legs[1]["cost_exact"]) == Fraction(1, 2)

    charges = read_csv_rows(os.path.join(out, "charges.csv"))
    assert dict((r["person"], parse_fraction(r["charge_exact"])) for r in charges) == \
           {"1": Fraction(1, 2), "2": Fraction(1)}


def test_conservation_over_full_runs():
    for seed in range(4):
        out = tempfile.mkdtemp()
        report, world = run_scenario(ScenarioConfig(seed=seed, **COMPACT_DAY), out_dir=out)
        assert not report.incomplete
        assert report.users_total == 100 and report.fleet_size == 10

        riders = set()
        for s in world.shuttles.values():
            ledger = s.ledger
            assert len(ledger.onboard) == 0
            assert sum(ledger.charges.values(), Fraction(0)) == ledger.billed_cost()
            assert abs(ledger.total_length() - s.odometer) <= 1e-6 * max(1., s.odometer)
            riders |= set(ledger.charges)
        assert riders == set(p.person_id for p in world.persons.values() if p.served)

        assert check_conservation(read_csv_rows(os.path.join(out, LEDGER_FILE)),
                                  read_csv_rows(os.path.join(out, CHARGES_FILE))) == []
