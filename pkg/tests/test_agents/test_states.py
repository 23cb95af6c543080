from shuttleswarm.agents.states import (PersonState, ShuttleState, PERSON_TRANSITIONS, SHUTTLE_TRANSITIONS, WAIT_FOR_LIFT_EXIT,
                                        is_valid_transition, check_transition, InvalidTransitionError)


def test_person_edges():
    assert set(PERSON_TRANSITIONS) == set(PersonState.ALL)
    assert is_valid_transition(PERSON_TRANSITIONS, PersonState.RESTING, PersonState.SEARCH_LIFT_TO_WORK)
    assert is_valid_transition(PERSON_TRANSITIONS, PersonState.WAIT_FOR_LIFT, PersonState.GO_HOME)
    assert not is_valid_transition(PERSON_TRANSITIONS, PersonState.RESTING, PersonState.GO_WORK)
    assert not is_valid_transition(PERSON_TRANSITIONS, PersonState.WORKING, PersonState.GO_HOME)


def test_wait_for_lift_exit():
    assert sorted(WAIT_FOR_LIFT_EXIT) == sorted(PersonState.SEARCHING)
    for search, going in WAIT_FOR_LIFT_EXIT.items():
        assert is_valid_transition(PERSON_TRANSITIONS, search, PersonState.WAIT_FOR_LIFT)
        assert is_valid_transition(PERSON_TRANSITIONS, PersonState.WAIT_FOR_LIFT, going)
        assert going in PERSON_TRANSITIONS[search]


def test_shuttle_edges():
    assert set(SHUTTLE_TRANSITIONS) == set(ShuttleState.ALL)
    assert is_valid_transition(SHUTTLE_TRANSITIONS, ShuttleState.STOP, ShuttleState.WANDER)
    assert not is_valid_transition(SHUTTLE_TRANSITIONS, ShuttleState.WANDER, ShuttleState.MOVING)


def test_check_transition():
    check_transition(SHUTTLE_TRANSITIONS, ShuttleState.WANDER, ShuttleState.FIRST_STOP)
    try:
        check_transition(SHUTTLE_TRANSITIONS, ShuttleState.MOVING, ShuttleState.WANDER)
    except InvalidTransitionError:
        pass
    else:
        assert False, "expected InvalidTransitionError"
