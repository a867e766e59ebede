"""Utilities for testing."""

import networkx as nx

import cyclehom.graph
import cyclehom.instance


def from_networkx(graph):
    """Convert a networkx graph with integer nodes ``0 .. n - 1``."""
    graph = nx.convert_node_labels_to_integers(graph, ordering="sorted")
    return cyclehom.graph.Graph(graph.number_of_nodes(), graph.edges())


def cycle_graph(length):
    return from_networkx(nx.cycle_graph(length))


def path_graph(length):
    """Get the path with ``length`` vertices."""
    return from_networkx(nx.path_graph(length))


def complete_graph(order):
    return from_networkx(nx.complete_graph(order))


def petersen_graph():
    return from_networkx(nx.petersen_graph())


def grotzsch_graph():
    """Get the Grötzsch graph: triangle-free, 11 vertices, diameter 2."""
    return from_networkx(nx.mycielski_graph(4))


def target_from(graph):
    """Use a test graph as a :class:`cyclehom.instance.GeneralTarget`."""
    return cyclehom.instance.GeneralTarget(graph.vertex_count, graph.edges)


def cycle_instance(graph, k, lists=None):
    """Build an instance over ``C_{2k+1}``.

    :param lists: optional mapping of vertex to colours; vertices not
        mentioned get every colour.
    """
    target = cyclehom.instance.CycleTarget(k)
    full = {vertex: target.colors for vertex in graph.vertices}
    if lists:
        full.update({vertex: frozenset(colors)
                     for vertex, colors in lists.items()})
    return cyclehom.instance.LHomInstance(graph, target, full)


def pendant(graph, vertex):
    """Attach a new pendant vertex to ``vertex``.

    :returns: a two-item tuple of the graph and the new vertex.
    """
    graph, new = graph.add_vertex()
    return graph.add_edge(vertex, new), new
