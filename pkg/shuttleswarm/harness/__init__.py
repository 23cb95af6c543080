from .scenario import (ScenarioConfig, ConfigurationError, load_scenario, resolve_seed, parse_clock,
                       SCENARIO_SCHEMA, WORKPLACE_MODES, SEED_ENV)
from .population import build_population, build_world, load_scenario_city
from .runner import run_scenario, write_run
from .suite import (SweepSpec, SuiteResult, load_sweep, run_experiment_suite, aggregate_point,
                    fleet_size_trend, user_count_trend, workplace_trend, PRESETS, SWEEPABLE)
