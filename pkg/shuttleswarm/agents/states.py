"""
finite state machines of persons and shuttles
"""

from __future__ import absolute_import, print_function


class InvalidTransitionError(RuntimeError):
    pass


class PersonState(object):
    RESTING = "resting"
    SEARCH_LIFT_TO_WORK = "search_lift_to_work"
    WAIT_FOR_LIFT = "wait_for_lift"
    GO_WORK = "go_work"
    WORKING = "working"
    SEARCH_LIFT_TO_HOME = "search_lift_to_home"
    GO_HOME = "go_home"

    ALL = (RESTING, SEARCH_LIFT_TO_WORK, WAIT_FOR_LIFT, GO_WORK,
           WORKING, SEARCH_LIFT_TO_HOME, GO_HOME)
    SEARCHING = (SEARCH_LIFT_TO_WORK, SEARCH_LIFT_TO_HOME)
    TRAVELLING = (GO_WORK, GO_HOME)


# wait_for_lift is shared by both trips of the day
PERSON_TRANSITIONS = {
    PersonState.RESTING: (PersonState.SEARCH_LIFT_TO_WORK,),
    PersonState.SEARCH_LIFT_TO_WORK: (PersonState.WAIT_FOR_LIFT, PersonState.GO_WORK),
    PersonState.WAIT_FOR_LIFT: (PersonState.GO_WORK, PersonState.GO_HOME),
    PersonState.GO_WORK: (PersonState.WORKING,),
    PersonState.WORKING: (PersonState.SEARCH_LIFT_TO_HOME,),
    PersonState.SEARCH_LIFT_TO_HOME: (PersonState.WAIT_FOR_LIFT, PersonState.GO_HOME),
    PersonState.GO_HOME: (PersonState.RESTING,),
}

# the trip a wait_for_lift ends in follows the search that led into it
WAIT_FOR_LIFT_EXIT = {
    PersonState.SEARCH_LIFT_TO_WORK: PersonState.GO_WORK,
    PersonState.SEARCH_LIFT_TO_HOME: PersonState.GO_HOME,
}


class ShuttleState(object):
    WANDER = "wander"
    FIRST_STOP = "first_stop"
    MOVING = "moving"
    STOP = "stop"

    ALL = (WANDER, FIRST_STOP, MOVING, STOP)


SHUTTLE_TRANSITIONS = {
    ShuttleState.WANDER: (ShuttleState.FIRST_STOP,),
    ShuttleState.FIRST_STOP: (ShuttleState.MOVING,),
    ShuttleState.MOVING: (ShuttleState.STOP,),
    ShuttleState.STOP: (ShuttleState.MOVING, ShuttleState.WANDER),
}


def is_valid_transition(table, old, new):
    return new in table.get(old, ())


def check_transition(table, old, new):
    if not is_valid_transition(table, old, new):
        raise InvalidTransitionError("transition %s -> %s not allowed" % (old, new))
