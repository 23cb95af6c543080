from __future__ import absolute_import
from __future__ import print_function
import os
import logging

logger = logging.getLogger(__name__)

from configparser import ConfigParser, Error as ConfigParserError
from itertools import chain


class MyConfigParser(ConfigParser):
    """reads a sectionless user file of overrides

    wait_timeout = 900
    angle_threshold_deg = 30

    a missing or unreadable file just means no overrides
    """
    SECTION = "shuttleswarm"

    def __init__(self, fName=None):
        ConfigParser.__init__(self)
        self.fName = fName
        if fName and os.path.exists(fName):
            self.read(fName)

    def read(self, fName):
        try:
            with open(fName) as f:
                self.read_file(chain(("[%s]" % self.SECTION,), f), source=fName)
        except (IOError, OSError, ConfigParserError) as e:
            logger.warning("could not read config file %s (%s)" % (fName, e))

    def keys(self):
        if not self.has_section(self.SECTION):
            return []
        return list(self.options(self.SECTION))

    def get(self, key, defaultValue=None):
        if not self.has_option(self.SECTION, key):
            return defaultValue
        val = ConfigParser.get(self, self.SECTION, key, raw=True)
        logger.debug("from config file: %s = %s " % (key, val))
        return val

    def get_typed(self, key, dtype, defaultValue):
        """the value of key converted by dtype, defaultValue if absent or malformed"""
        val = self.get(key, None)
        if val is None:
            return defaultValue
        try:
            return dtype(val)
        except ValueError:
            logger.warning("ignoring %s = %r in %s (expected %s)" % (key, val, self.fName, dtype.__name__))
            return defaultValue

    def unknown_keys(self, known):
        return sorted(set(self.keys()) - set(known))


if __name__ == '__main__':
    import sys
    logging.basicConfig(stream=sys.stdout, level=logging.DEBUG)
    config_parser = MyConfigParser(os.path.expanduser("~/.shuttleswarm"))
    for k in config_parser.keys():
        print(k, config_parser.get(k))
