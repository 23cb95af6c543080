from .insertion import (InsertionContext, AdmissionDecision, InitialGroup,
                        form_initial_group, filter_candidates, insert_destination,
                        try_admit, operation_cost_counter, scan_insertion_index,
                        OPERATIONS_PER_POSITION, REASONS)
