#!/usr/bin/env python

"""
lift requests posted by persons in a search state
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)


class Direction(object):
    TO_WORK = "to_work"
    TO_HOME = "to_home"


class LiftRequest(object):
    """ a person waiting at origin for a lift to destination until expiry_time

    nearby: the intersections within pickup radius of the person, a shuttle
    standing on one of them sees the request
    """

    def __init__(self, person_id, origin, destination, issue_time, expiry_time,
                 direction=Direction.TO_WORK,
                 nearby=None):
        if not expiry_time > issue_time:
            raise ValueError("expiry (%s) should be after issue time (%s)" % (expiry_time, issue_time))
        if destination == origin:
            raise ValueError("lift request of person %s goes nowhere (%s -> %s)" % (person_id, origin, destination))
        if not direction in (Direction.TO_WORK, Direction.TO_HOME):
            raise ValueError("unknown direction '%s'" % direction)
        self.person_id = person_id
        self.origin = origin
        self.destination = destination
        self.issue_time = issue_time
        self.expiry_time = expiry_time
        self.direction = direction
        self.nearby = frozenset([origin] if nearby is None else nearby)

    @property
    def key(self):
        """earliest issue time first, ties by person id"""
        return (self.issue_time, self.person_id)

    def expired(self, now):
        return now >= self.expiry_time

    def __repr__(self):
        return "LiftRequest(person %s: %s -> %s, %s, issued %s, expires %s)" % (
            self.person_id, self.origin, self.destination, self.direction, self.issue_time, self.expiry_time)
