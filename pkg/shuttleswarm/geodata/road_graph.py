#!/usr/bin/env python

"""
the road graph agents move on

    city = generate_grid_city(8, 8, 150.)
    graph = build_road_graph(city)
    path = shortest_path(graph, 0, 63)
    print(path.length, path_travel_time(path, graph))

edges carry length (m), free flow speed (m/s), lanes, the live
speed_coefficient in (0,1] and the vehicle_count it is derived from.
Routing minimizes travel time length/(speed*speed_coefficient) under the
coefficients at the time of the call.
"""

from __future__ import absolute_import, print_function

import logging

logger = logging.getLogger(__name__)

import numpy as np
import networkx as nx
from scipy.spatial import cKDTree


class UnknownNodeError(KeyError):
    pass


class DegenerateGraphError(ValueError):
    pass


class Path(object):
    """an ordered edge list from origin to destination

    travel_time is the estimate at computation time, use
    path_travel_time for the live value
    """

    def __init__(self, edges, origin, destination, length=0., travel_time=0.):
        self.edges = list(edges)
        self.origin = origin
        self.destination = destination
        self.length = length
        self.travel_time = travel_time

    @classmethod
    def empty(cls, node):
        return cls([], node, node, 0., 0.)

    @classmethod
    def join(cls, paths):
        paths = list(paths)
        if len(paths) == 0:
            raise ValueError("nothing to join")
        for p1, p2 in zip(paths[:-1], paths[1:]):
            if p1.destination != p2.origin:
                raise ValueError("cannot join paths ending at %s and starting at %s" % (p1.destination, p2.origin))
        return cls([e for p in paths for e in p.edges],
                   paths[0].origin, paths[-1].destination,
                   sum(p.length for p in paths),
                   sum(p.travel_time for p in paths))

    @property
    def nodes(self):
        return [self.origin] + [v for u, v in self.edges]

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        return isinstance(other, Path) and self.edges == other.edges and \
               self.origin == other.origin and self.destination == other.destination

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return "Path(%s -> %s, %s edges, %.1f m, %.1f s)" % (
            self.origin, self.destination, len(self.edges), self.length, self.travel_time)


class RoadGraph(object):
    """directed road graph restricted to its largest strongly connected component"""

    def __init__(self, graph):
        self.graph = graph
        self.node_ids = sorted(graph.nodes)
        self._xy = np.array([(graph.nodes[n]["x"], graph.nodes[n]["y"]) for n in self.node_ids], np.float64)
        self._tree = cKDTree(self._xy)
        # the attribute dicts networkx holds, for lookups in the movement loop
        self._edges = dict(((u, v), d) for u, v, d in graph.edges(data=True))

    def __repr__(self):
        return "RoadGraph(%s nodes, %s edges)" % (self.graph.number_of_nodes(), self.graph.number_of_edges())

    def __contains__(self, node):
        return node in self.graph

    def number_of_nodes(self):
        return self.graph.number_of_nodes()

    def number_of_edges(self):
        return self.graph.number_of_edges()

    def edges(self):
        return sorted(self.graph.edges)

    def edge(self, u, v):
        return self._edges[u, v]

    def check_node(self, node):
        if not node in self.graph:
            raise UnknownNodeError("node %s not in road graph" % (node,))

    def coordinates(self, node):
        self.check_node(node)
        d = self.graph.nodes[node]
        return (d["x"], d["y"])

    def effective_speed(self, u, v, speed=None):
        d = self._edges[u, v]
        free = d["speed"] * d["speed_coefficient"]
        return free if speed is None else min(speed, free)

    def edge_time(self, u, v):
        d = self._edges[u, v]
        return d["length"] / (d["speed"] * d["speed_coefficient"])

    def nearest_node(self, xy):
        _, ind = self._tree.query(np.asarray(xy, np.float64))
        return self.node_ids[int(ind)]

    def nodes_within(self, xy, radius):
        inds = self._tree.query_ball_point(np.asarray(xy, np.float64), radius)
        return sorted(self.node_ids[i] for i in inds)

    def reset_congestion(self):
        for d in self._edges.values():
            d["vehicle_count"] = 0
            d["speed_coefficient"] = 1.


def build_road_graph(city):
    """ one directed edge per direction of travel, restricted to the largest
    strongly connected component
    """
    g = nx.DiGraph()
    for i in sorted(city.intersections, key=lambda i: i.node_id):
        g.add_node(i.node_id, x=i.x, y=i.y, kind=i.kind)

    def _add_edge(u, v, road):
        length = road.length
        if u == v:
            logger.debug("skipping self loop road %s" % road.road_id)
            return
        if g.has_edge(u, v) and g.edges[u, v]["length"] <= length:
            logger.debug("skipping parallel road %s (%s -> %s)" % (road.road_id, u, v))
            return
        g.add_edge(u, v, length=length, speed=road.max_speed, lanes=road.lanes,
                   speed_coefficient=1., vehicle_count=0, road_id=road.road_id)

    for road in sorted(city.roads, key=lambda r: r.road_id):
        _add_edge(road.start, road.end, road)
        if not road.oneway:
            _add_edge(road.end, road.start, road)

    components = list(nx.strongly_connected_components(g))
    largest = max(components, key=lambda comp: (len(comp), -min(comp)))
    if len(largest) < 2:
        raise DegenerateGraphError("largest strongly connected component has %s node(s)" % len(largest))

    if len(largest) < g.number_of_nodes():
        logger.warning("restricting road graph to its largest strongly connected component (%s of %s nodes)" % (
            len(largest), g.number_of_nodes()))

    # rebuilt in sorted order, adjacency order fixes the routing tie-break
    h = nx.DiGraph()
    for n in sorted(largest):
        h.add_node(n, **g.nodes[n])
    for u, v in sorted(g.subgraph(largest).edges):
        h.add_edge(u, v, **g.edges[u, v])

    return RoadGraph(h)


def _time_weight(avoid):
    def weight(u, v, d):
        if avoid and (u, v) in avoid:
            return None
        return d["length"] / (d["speed"] * d["speed_coefficient"])
    return weight


def shortest_path(graph, source, target, avoid=None):
    """ minimum travel time path under the current speed coefficients,
    None if target cannot be reached (only possible with `avoid`)

    avoid: set of (u, v) edges that must not be used
    """
    graph.check_node(source)
    graph.check_node(target)

    if source == target:
        return Path.empty(source)

    try:
        time, nodes = nx.single_source_dijkstra(graph.graph, source, target=target,
                                                weight=_time_weight(avoid))
    except nx.NetworkXNoPath:
        return None

    edges = list(zip(nodes[:-1], nodes[1:]))
    length = sum(graph.edge(u, v)["length"] for u, v in edges)
    return Path(edges, source, target, length, time)


def path_travel_time(path, graph):
    """live estimate of the time to traverse path"""
    return sum(graph.edge_time(u, v) for u, v in path.edges)


def path_through(graph, source, waypoints):
    """ concatenated shortest paths source -> waypoints[0] -> waypoints[1] ..."""
    legs = []
    current = source
    for w in waypoints:
        leg = shortest_path(graph, current, w)
        legs.append(leg)
        current = w
    if len(legs) == 0:
        return Path.empty(source)
    return Path.join(legs)


def path_prefix(graph, path, node):
    """the part of path from its origin to the first occurrence of node"""
    if node == path.origin:
        return Path.empty(node)
    for k, (u, v) in enumerate(path.edges):
        if v == node:
            edges = path.edges[:k + 1]
            return Path(edges, path.origin, node,
                        sum(graph.edge(*e)["length"] for e in edges),
                        sum(graph.edge_time(*e) for e in edges))
    raise ValueError("node %s is not on %s" % (node, path))


def arrival_offsets(path, graph):
    """ dict node -> live estimated time from path.origin to its first
    occurrence on path"""
    offsets = {path.origin: 0.}
    t = 0.
    for u, v in path.edges:
        t += graph.edge_time(u, v)
        offsets.setdefault(v, t)
    return offsets


if __name__ == '__main__':
    from shuttleswarm.geodata.city_model import generate_grid_city

    graph = build_road_graph(generate_grid_city(3, 3, 100.))
    print(graph)
    p = shortest_path(graph, 0, 8)
    print(p, p.nodes)
