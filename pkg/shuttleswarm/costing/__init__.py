from .ledger import (Leg, LegLedger, CostingError, AccountingError, UnknownPassengerError,
                     leg_cost, path_cost, split_leg, on_stop_event, close_ledger, passenger_total,
                     write_ledgers, write_charges, exact, format_fraction)
