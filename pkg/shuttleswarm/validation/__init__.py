from .validators import (Violation, MissingRunFileError, validate_run, validate_events, validate_world,
                         check_angles, check_visited, check_seats, check_lateness, check_complexity,
                         check_splice, check_fsm, check_conservation, check_person_conservation,
                         check_double_entry)
