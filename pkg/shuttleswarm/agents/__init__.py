from .states import (PersonState, ShuttleState, PERSON_TRANSITIONS, SHUTTLE_TRANSITIONS, WAIT_FOR_LIFT_EXIT,
                     InvalidTransitionError, is_valid_transition)
from .lift_request import LiftRequest, Direction
from .person import Person, TripRecord, step_person, person_search_path
from .shuttle import Shuttle, Passenger, SeatCapacityError, step_shuttle, close_shuttle
from .common_car import CommonCar, step_common_car, reroute
