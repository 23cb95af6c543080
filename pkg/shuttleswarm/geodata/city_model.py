#!/usr/bin/env python

"""
the city description: intersections, roads and buildings

a city is read from a GeoJSON FeatureCollection whose features carry a
"kind" property (intersection | road | building), or generated as a
synthetic grid city

    {"type": "FeatureCollection",
     "properties": {"units": "meters"},
     "features": [
        {"type": "Feature", "geometry": {"type": "Point", "coordinates": [0, 0]},
         "properties": {"kind": "intersection", "id": 0, "type": "plain"}},
        {"type": "Feature", "geometry": {"type": "LineString", "coordinates": [[0, 0], [500, 0]]},
         "properties": {"kind": "road", "id": 0, "from": 0, "to": 1, "lanes": 1,
                        "maxspeed": 13.9, "oneway": false}},
        {"type": "Feature", "geometry": {"type": "Point", "coordinates": [250, 40]},
         "properties": {"kind": "building", "id": 0, "category": "industrial"}}
     ]}

with "units": "degrees" coordinates are lon/lat and get projected to meters
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import json
import numpy as np
from shapely.geometry import shape, mapping, LineString, Point
from shapely.ops import transform

from shuttleswarm.config import config
from shuttleswarm.utils.geometry import equirectangular

INTERSECTION_KINDS = ("plain", "signal", "stop")
BUILDING_CATEGORIES = ("residential", "industrial")


class CityParseError(ValueError):
    pass


class EmptyCityError(ValueError):
    pass


class Intersection(object):
    def __init__(self, node_id, x, y, kind="plain"):
        self.node_id = int(node_id)
        self.x = float(x)
        self.y = float(y)
        self.kind = kind

    def __repr__(self):
        return "Intersection(%s, %.2f, %.2f, %s)" % (self.node_id, self.x, self.y, self.kind)


class Building(object):
    def __init__(self, building_id, x, y, category):
        if not category in BUILDING_CATEGORIES:
            raise ValueError("building category should be one of %s (got '%s')" % (BUILDING_CATEGORIES, category))
        self.building_id = int(building_id)
        self.x = float(x)
        self.y = float(y)
        self.category = category

    @property
    def xy(self):
        return (self.x, self.y)

    def __repr__(self):
        return "Building(%s, %.2f, %.2f, %s)" % (self.building_id, self.x, self.y, self.category)


class RoadSegmentSpec(object):
    """a road between two intersections, given as a polyline in meters"""

    def __init__(self, road_id, start, end, coords,
                 lanes=1,
                 max_speed=None,
                 oneway=False):
        self.road_id = int(road_id)
        self.start = int(start)
        self.end = int(end)
        self.coords = [(float(x), float(y)) for x, y in coords]
        self.lanes = int(lanes)
        self.max_speed = float(config.__DEFAULT_VEHICLE_SPEED__ if max_speed is None else max_speed)
        self.oneway = bool(oneway)

    @property
    def length(self):
        return LineString(self.coords).length

    def __repr__(self):
        return "RoadSegmentSpec(%s, %s -> %s, %.1f m, lanes = %s, oneway = %s)" % (
            self.road_id, self.start, self.end, self.length, self.lanes, self.oneway)


class CityModel(object):
    def __init__(self, intersections=(), roads=(), buildings=(), skipped=0):
        self.intersections = list(intersections)
        self.roads = list(roads)
        self.buildings = list(buildings)
        self.skipped = skipped

    def __repr__(self):
        return "CityModel(%s intersections, %s roads, %s buildings)" % (
            len(self.intersections), len(self.roads), len(self.buildings))

    def intersection_ids(self):
        return set(i.node_id for i in self.intersections)

    def buildings_of(self, category):
        return [b for b in self.buildings if b.category == category]

    def validate(self):
        if len(self.roads) == 0:
            raise EmptyCityError("city has no roads")
        if len(self.intersections) < 2:
            raise EmptyCityError("city needs at least 2 intersections (got %s)" % len(self.intersections))

        ids = self.intersection_ids()
        if len(ids) != len(self.intersections):
            raise CityParseError("duplicate intersection ids")

        for i in self.intersections:
            if not (np.isfinite(i.x) and np.isfinite(i.y)):
                raise CityParseError("intersection %s has non finite coordinates" % i.node_id)
            if not i.kind in INTERSECTION_KINDS:
                raise CityParseError("intersection %s has unknown type '%s'" % (i.node_id, i.kind))

        for r in self.roads:
            for node in (r.start, r.end):
                if not node in ids:
                    raise CityParseError("road %s references missing intersection %s" % (r.road_id, node))
            if len(r.coords) < 2 or not np.all(np.isfinite(r.coords)):
                raise CityParseError("road %s has an invalid polyline" % r.road_id)
            if r.length <= 0:
                raise CityParseError("road %s has zero length" % r.road_id)
            if r.lanes < 1 or r.max_speed <= 0:
                raise CityParseError("road %s needs lanes >= 1 and maxspeed > 0" % r.road_id)

        for b in self.buildings:
            if not (np.isfinite(b.x) and np.isfinite(b.y)):
                raise CityParseError("building %s has non finite coordinates" % b.building_id)
        return self


def _feature_error(idx, feature, msg):
    fid = feature.get("properties", {}).get("id", None) if isinstance(feature, dict) else None
    return CityParseError("feature %s (id = %s): %s" % (idx, fid, msg))


def load_city(document):
    """ builds a CityModel from a GeoJSON FeatureCollection

    document can be the JSON text or the already decoded dict
    """
    if isinstance(document, (bytes, str)):
        try:
            document = json.loads(document)
        except ValueError as e:
            raise CityParseError("malformed city document at line %s, column %s: %s" % (
                getattr(e, "lineno", "?"), getattr(e, "colno", "?"), getattr(e, "msg", e)))

    if not isinstance(document, dict) or not isinstance(document.get("features", None), list):
        raise CityParseError("city document should be a FeatureCollection with a 'features' list")

    units = document.get("properties", {}).get("units", "meters")
    if not units in ("meters", "degrees"):
        raise CityParseError("unknown units '%s' (should be meters or degrees)" % units)

    features = document["features"]
    geoms = []
    for idx, feature in enumerate(features):
        try:
            geoms.append(shape(feature["geometry"]))
        except Exception as e:
            raise _feature_error(idx, feature, "invalid geometry (%s)" % e)

    if units == "degrees":
        points = [g for g, f in zip(geoms, features)
                  if f.get("properties", {}).get("kind") == "intersection"]
        if len(points) == 0:
            raise EmptyCityError("city has no intersections")
        lon0 = np.mean([p.x for p in points])
        lat0 = np.mean([p.y for p in points])
        project = equirectangular(lon0, lat0)
        geoms = [transform(project, g) for g in geoms]

    intersections, roads, buildings = [], [], []
    skipped = 0
    for idx, (feature, geom) in enumerate(zip(features, geoms)):
        props = feature.get("properties", None) or {}
        kind = props.get("kind", None)
        try:
            if kind == "intersection":
                if geom.geom_type != "Point":
                    raise _feature_error(idx, feature, "intersection should be a Point")
                intersections.append(Intersection(props["id"], geom.x, geom.y,
                                                  props.get("type", "plain")))
            elif kind == "road":
                if geom.geom_type != "LineString":
                    raise _feature_error(idx, feature, "road should be a LineString")
                roads.append(RoadSegmentSpec(props["id"], props["from"], props["to"],
                                             list(geom.coords),
                                             lanes=props.get("lanes", 1),
                                             max_speed=props.get("maxspeed", None),
                                             oneway=props.get("oneway", False)))
            elif kind == "building":
                c = geom.centroid
                buildings.append(Building(props["id"], c.x, c.y, props.get("category", None)))
            else:
                skipped += 1
        except CityParseError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise _feature_error(idx, feature, "bad %s properties (%s)" % (kind, e))

    if skipped:
        logger.warning("skipped %s untagged features" % skipped)

    return CityModel(intersections, roads, buildings, skipped=skipped).validate()


def read_city(fName):
    with open(fName) as f:
        return load_city(f.read())


def generate_grid_city(rows, cols, block_m, seed=0):
    """ a rows x cols lattice of intersections, block_m apart, with two way
    roads along the lattice lines and one residential and one industrial
    building per block

    every third lattice line is a two lane arterial
    """
    if int(rows) < 2 or int(cols) < 2:
        raise ValueError("grid needs rows >= 2 and cols >= 2 (got %s x %s)" % (rows, cols))
    if not block_m > 0:
        raise ValueError("block size should be > 0 (got %s)" % block_m)

    rows, cols, block_m = int(rows), int(cols), float(block_m)
    rng = np.random.RandomState(seed)

    def _id(r, c):
        return r * cols + c

    intersections = [Intersection(_id(r, c), c * block_m, r * block_m)
                     for r in range(rows) for c in range(cols)]

    roads = []
    for r in range(rows):
        for c in range(cols - 1):
            roads.append(RoadSegmentSpec(len(roads), _id(r, c), _id(r, c + 1),
                                         [(c * block_m, r * block_m), ((c + 1) * block_m, r * block_m)],
                                         lanes=2 if r % 3 == 0 else 1))
    for c in range(cols):
        for r in range(rows - 1):
            roads.append(RoadSegmentSpec(len(roads), _id(r, c), _id(r + 1, c),
                                         [(c * block_m, r * block_m), (c * block_m, (r + 1) * block_m)],
                                         lanes=2 if c % 3 == 0 else 1))

    buildings = []
    for r in range(rows - 1):
        for c in range(cols - 1):
            for category in BUILDING_CATEGORIES:
                u, v = rng.uniform(.15, .85, 2)
                buildings.append(Building(len(buildings),
                                          round((c + u) * block_m, 2),
                                          round((r + v) * block_m, 2),
                                          category))

    return CityModel(intersections, roads, buildings).validate()


def city_to_geojson(city):
    features = []
    for i in city.intersections:
        features.append({"type": "Feature",
                         "geometry": mapping(Point(i.x, i.y)),
                         "properties": {"kind": "intersection", "id": i.node_id, "type": i.kind}})
    for r in city.roads:
        features.append({"type": "Feature",
                         "geometry": mapping(LineString(r.coords)),
                         "properties": {"kind": "road", "id": r.road_id,
                                        "from": r.start, "to": r.end,
                                        "lanes": r.lanes, "maxspeed": r.max_speed,
                                        "oneway": r.oneway}})
    for b in city.buildings:
        features.append({"type": "Feature",
                         "geometry": mapping(Point(b.x, b.y)),
                         "properties": {"kind": "building", "id": b.building_id, "category": b.category}})

    return {"type": "FeatureCollection",
            "properties": {"units": "meters"},
            "features": features}


def _plain(obj):
    """tuples -> lists, so the canonical text does not depend on shapely's mapping types"""
    if isinstance(obj, dict):
        return dict((k, _plain(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, float):
        return float(repr(obj))
    return obj


def city_to_json(city):
    """canonical serialization (sorted keys, no whitespace variation)"""
    return json.dumps(_plain(city_to_geojson(city)), sort_keys=True, indent=1)


def dump_city(city, fName):
    with open(fName, "w") as f:
        f.write(city_to_json(city))
        f.write("\n")


if __name__ == '__main__':
    city = generate_grid_city(3, 3, 100., seed=0)
    print(city)
    print(city_to_json(city)[:400])
