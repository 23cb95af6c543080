from .city_model import (CityModel, Building, Intersection, RoadSegmentSpec,
                         CityParseError, EmptyCityError,
                         load_city, read_city, generate_grid_city,
                         city_to_geojson, city_to_json, dump_city)
from .road_graph import (RoadGraph, Path, UnknownNodeError, DegenerateGraphError,
                         build_road_graph, shortest_path, path_travel_time,
                         path_through, path_prefix, arrival_offsets)
