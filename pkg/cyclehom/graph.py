# -*- coding: utf-8 -*-

"""Simple undirected graphs with vertex identification.

Every graph is created over dense integer vertex ids ``0 .. n - 1``. These
ids are the *original* vertices. Identifying two vertices merges the second
into the first. The survivor keeps its id and the merge is recorded in a
union-find parent array, so any original vertex can always be resolved to
the live vertex that currently represents it (see :meth:`Graph.find`).

Graphs are values: :meth:`Graph.identify`, :meth:`Graph.add_edge` and the
other transforms return new graphs and leave the receiver untouched.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import collections
import logging

import networkx as nx
import numpy as np
import six


log = logging.getLogger(__name__)
INFINITY = float("inf")


class GraphError(ValueError):
    """Raised for malformed graphs or violated graph preconditions."""


class AdjacentIdentification(GraphError):
    """Raised when identifying two adjacent vertices.

    Identification of adjacent vertices would create a self-loop. The
    reduction layer translates this into a NO answer.

    :ivar u: the vertex that would have survived.
    :ivar v: the vertex that would have been merged into ``u``.
    """

    def __init__(self, u, v):
        super(AdjacentIdentification, self).__init__(
            "Cannot identify adjacent vertices {} and {}".format(u, v))
        self.u = u
        self.v = v


class Graph(object):
    """Simple undirected graph supporting vertex identification.

    :param int vertex_count: number of original vertices.
    :param edges: iterable of two-item vertex pairs. Parallel edges
        collapse into one.

    :raises GraphError: for self-loops or out-of-range vertex ids.
    """

    def __init__(self, vertex_count, edges=()):
        vertex_count = int(vertex_count)
        if vertex_count < 0:
            raise GraphError(
                "Vertex count must be non-negative; got {}".format(
                    vertex_count))
        self._parents = np.arange(vertex_count, dtype=np.intp)
        self._graph = nx.Graph()
        self._graph.add_nodes_from(six.moves.range(vertex_count))
        for edge in edges:
            u, v = (int(vertex) for vertex in edge)
            if u == v:
                raise GraphError("Self-loop at vertex {}".format(u))
            for vertex in (u, v):
                if not 0 <= vertex < vertex_count:
                    raise GraphError(
                        "Vertex {} out of range for {} "
                        "vertices".format(vertex, vertex_count))
            self._graph.add_edge(u, v)

    @classmethod
    def _derive(cls, parents, graph):
        derived = cls.__new__(cls)
        derived._parents = parents
        derived._graph = graph
        return derived

    def __repr__(self):
        return "<{} {} live of {}, {} edges>".format(
            self.__class__.__name__,
            self.order, self.vertex_count, self.edge_count)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (set(self._graph) == set(other._graph)
                and set(self.edges) == set(other.edges)
                and np.array_equal(self._parents, other._parents))

    def __ne__(self, other):
        equal = self.__eq__(other)
        if equal is NotImplemented:
            return equal
        return not equal

    __hash__ = None

    def __contains__(self, vertex):
        return vertex in self._graph

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return self.order

    @property
    def vertex_count(self):
        """Number of original vertex ids, live or merged."""
        return len(self._parents)

    @property
    def order(self):
        """Number of live vertices."""
        return self._graph.number_of_nodes()

    @property
    def edge_count(self):
        return self._graph.number_of_edges()

    @property
    def vertices(self):
        """Sorted list of live vertices."""
        return sorted(self._graph)

    @property
    def edges(self):
        """Sorted list of edges as ``(u, v)`` tuples with ``u < v``."""
        return sorted((min(u, v), max(u, v)) for u, v in self._graph.edges())

    def neighbors(self, vertex):
        """Get the sorted neighbours of a live vertex."""
        return sorted(self._graph[vertex])

    def degree(self, vertex):
        return self._graph.degree(vertex)

    def has_edge(self, u, v):
        return self._graph.has_edge(u, v)

    def find(self, original):
        """Resolve an original vertex id to its live representative.

        The returned vertex may fall outside this graph if the graph is an
        induced subgraph that dropped the representative.
        """
        return int(self._parents[original])

    def members(self, vertex):
        """Get the sorted original ids represented by a live vertex."""
        return [int(original) for original
                in np.flatnonzero(self._parents == vertex)]

    @property
    def merge_map(self):
        """Map every original id whose class is live to its representative."""
        return {original: int(parent)
                for original, parent in enumerate(self._parents)
                if int(parent) in self._graph}

    def _check_live(self, *vertices):
        for vertex in vertices:
            if vertex not in self._graph:
                raise GraphError("{} is not a live vertex".format(vertex))

    def identify(self, u, v):
        """Merge ``v`` into ``u``.

        The survivor ``u`` inherits the union of both neighbourhoods.

        :raises GraphError: if ``u == v`` or either vertex is not live.
        :raises AdjacentIdentification: if ``u`` and ``v`` are adjacent.

        :returns: a new :class:`Graph`.
        """
        self._check_live(u, v)
        if u == v:
            raise GraphError("Cannot identify {} with itself".format(u))
        if self._graph.has_edge(u, v):
            raise AdjacentIdentification(u, v)
        graph = self._graph.copy()
        for neighbor in self._graph[v]:
            graph.add_edge(u, neighbor)
        graph.remove_node(v)
        parents = self._parents.copy()
        parents[parents == v] = u
        return self._derive(parents, graph)

    def add_edge(self, u, v):
        """Get a copy of the graph with the edge ``uv`` added."""
        self._check_live(u, v)
        if u == v:
            raise GraphError("Self-loop at vertex {}".format(u))
        if self._graph.has_edge(u, v):
            return self
        graph = self._graph.copy()
        graph.add_edge(u, v)
        return self._derive(self._parents, graph)

    def add_vertex(self):
        """Get a copy of the graph with one fresh isolated vertex.

        :returns: a two-item tuple of the new graph and the new vertex id,
            which is always the old :attr:`vertex_count`.
        """
        vertex = self.vertex_count
        graph = self._graph.copy()
        graph.add_node(vertex)
        parents = np.append(self._parents, vertex).astype(np.intp)
        return self._derive(parents, graph), vertex

    def subgraph(self, vertices):
        """Get the subgraph induced by a set of live vertices."""
        vertices = list(vertices)
        self._check_live(*vertices)
        return self._derive(self._parents,
                            self._graph.subgraph(vertices).copy())

    def components(self):
        """Get the vertex sets of the connected components.

        :returns: a list of sorted vertex lists, ordered by smallest vertex.
        """
        return sorted(sorted(component) for component
                      in nx.connected_components(self._graph))

    def is_connected(self):
        return self.order == 0 or nx.is_connected(self._graph)

    def as_dict(self):
        """Get the JSON form ``{"n": ..., "edges": [[u, v], ...]}``.

        A ``"merge_map"`` entry listing every original's representative
        is included once identifications have happened.
        """
        data = {
            "n": self.vertex_count,
            "edges": [[u, v] for u, v in self.edges],
        }
        if (self.order != self.vertex_count
                or not np.array_equal(
                    self._parents, np.arange(self.vertex_count))):
            data["merge_map"] = [int(parent) for parent in self._parents]
        return data

    @classmethod
    def from_dict(cls, data):
        """Build a graph from its JSON form.

        :raises GraphError: if the data is malformed.
        """
        try:
            graph = cls(data["n"], data.get("edges", ()))
        except (AttributeError, KeyError, TypeError) as exc:
            six.raise_from(GraphError("Malformed graph: {}".format(exc)), exc)
        if "merge_map" in data:
            parents = np.array(data["merge_map"], dtype=np.intp)
            if len(parents) != graph.vertex_count:
                raise GraphError("Merge map does not cover every vertex")
            graph._graph.remove_nodes_from(
                [vertex for vertex in graph.vertices
                 if parents[vertex] != vertex])
            graph._parents = parents
        return graph


def parse_edge_list(text):
    """Parse the ``n m`` edge-list text format.

    The first line holds the vertex and edge counts, followed by one
    ``u v`` line per edge. Blank lines are ignored.

    :raises GraphError: if the text is malformed.
    """
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 2:
        raise GraphError("Expected 'n m' header line")
    try:
        vertex_count, edge_count = (int(token) for token in lines[0])
        edges = [(int(u), int(v)) for u, v in lines[1:]]
    except ValueError as exc:
        six.raise_from(GraphError("Malformed edge list: {}".format(exc)), exc)
    if len(edges) != edge_count:
        raise GraphError("Header declares {} edges but {} given".format(
            edge_count, len(edges)))
    return Graph(vertex_count, edges)


def format_edge_list(graph):
    """Format a graph in the ``n m`` edge-list text format."""
    edges = graph.edges
    lines = ["{} {}".format(graph.vertex_count, len(edges))]
    lines.extend("{} {}".format(u, v) for u, v in edges)
    return "\n".join(lines) + "\n"


_DistanceTable = collections.namedtuple("_DistanceTable", ("source", "dist"))


class DistanceTable(_DistanceTable):
    """Shortest-path distances from a single source."""

    __slots__ = ()

    def distance(self, vertex):
        """Get the distance to a vertex, :data:`INFINITY` if unreachable."""
        return self.dist.get(vertex, INFINITY)

    def reachable(self):
        """Get the sorted list of reachable vertices."""
        return sorted(self.dist)


def bfs_distances(graph, source, cutoff=None):
    """Compute shortest-path distances from ``source``.

    :param Graph graph: graph to search.
    :param int source: live vertex to start from.
    :param cutoff: optional maximum distance to explore.

    :returns: a :class:`DistanceTable`.
    """
    graph._check_live(source)
    return DistanceTable(
        source,
        dict(nx.single_source_shortest_path_length(
            graph._graph, source, cutoff=cutoff)),
    )


def bfs_parents(graph, source):
    """Build a deterministic breadth-first search tree rooted at ``source``.

    Each reachable vertex other than the source is mapped to its smallest
    neighbour one step closer to the source.
    """
    graph._check_live(source)
    return {vertex: min(predecessors) for vertex, predecessors
            in six.iteritems(nx.predecessor(graph._graph, source))
            if predecessors}


def tree_path(parents, source, target):
    """Walk a :func:`bfs_parents` tree from ``source`` down to ``target``."""
    path = [target]
    while path[-1] != source:
        path.append(parents[path[-1]])
    path.reverse()
    return path


def all_distances(graph):
    """Get all-pairs shortest-path distances as a dict of dicts."""
    return {source: dict(lengths) for source, lengths
            in nx.all_pairs_shortest_path_length(graph._graph)}


def distance_to_set(graph, sources):
    """Get the distance from every reachable vertex to a vertex set."""
    sources = set(sources)
    graph._check_live(*sources)
    if not sources:
        return {}
    return {vertex: int(distance) for vertex, distance in six.iteritems(
        nx.multi_source_dijkstra_path_length(graph._graph, sources))}


def eccentricity(graph, vertex):
    """Get the largest distance from ``vertex`` to any live vertex.

    :returns: a natural number, or :data:`INFINITY` if some vertex is
        unreachable.
    """
    table = bfs_distances(graph, vertex)
    if len(table.dist) < graph.order:
        return INFINITY
    return max(six.itervalues(table.dist))


def diameter(graph):
    """Get the diameter; :data:`INFINITY` iff the graph is disconnected."""
    if graph.order == 0:
        return 0
    return max(eccentricity(graph, vertex) for vertex in graph.vertices)


def radius(graph):
    """Get the radius; :data:`INFINITY` iff the graph is disconnected."""
    if graph.order == 0:
        return 0
    return min(eccentricity(graph, vertex) for vertex in graph.vertices)


def is_bipartite(graph):
    return nx.is_bipartite(graph._graph)


def shortest_odd_cycle(graph):
    """Get the length of a shortest odd cycle.

    Searches the bipartite double cover: a shortest path from ``(v, 0)``
    to ``(v, 1)`` is a shortest closed walk of odd length through ``v``,
    and the shortest of those over all ``v`` is a shortest odd cycle.

    :returns: the length, or ``None`` if the graph is bipartite.
    """
    cover = nx.Graph()
    for u, v in graph._graph.edges():
        cover.add_edge((u, 0), (v, 1))
        cover.add_edge((u, 1), (v, 0))
    shortest = None
    for vertex in graph.vertices:
        if (vertex, 0) not in cover:
            continue
        try:
            length = nx.shortest_path_length(cover, (vertex, 0), (vertex, 1))
        except nx.NetworkXNoPath:
            continue
        if shortest is None or length < shortest:
            shortest = length
    return shortest


def equal_distance_pair(graph, cycle, vertex):
    """Find consecutive cycle vertices equidistant from ``vertex``.

    Every vertex of a connected graph has such a pair on every odd cycle.

    :param cycle: sequence of live vertices ``c_0 .. c_2k`` forming an odd
        cycle.

    :raises GraphError: if ``vertex`` lies on the cycle or no pair exists,
        which means the preconditions were violated.

    :returns: the smallest ``i`` with ``dist(vertex, c_i)`` equal to
        ``dist(vertex, c_{i+1})``.
    """
    if vertex in cycle:
        raise GraphError("{} lies on the cycle".format(vertex))
    table = bfs_distances(graph, vertex)
    length = len(cycle)
    for index in six.moves.range(length):
        here = table.distance(cycle[index])
        if (here != INFINITY
                and here == table.distance(cycle[(index + 1) % length])):
            return index
    raise GraphError(
        "No equidistant pair for {} on {}; is the cycle odd and the "
        "graph connected?".format(vertex, list(cycle)))
