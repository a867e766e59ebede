# -*- coding: utf-8 -*-

"""Targets, list assignments and list-homomorphism instances.

Colours of a :class:`CycleTarget` are the residues ``0 .. 2k`` with
arithmetic modulo ``2k + 1``. A :class:`GeneralTarget` names its colours
with arbitrary integers so that induced subtargets keep the names of the
target they were cut from.

Lists are frozensets of colours. Everything in this module is immutable:
operations on :class:`LHomInstance` return new instances.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import itertools
import json

import six

import cyclehom.graph


class InstanceError(ValueError):
    """Raised for malformed targets, lists or instances."""


class CycleTarget(object):
    """The odd cycle ``C_{2k+1}``.

    :param int k: cycle parameter, at least 1.

    :raises InstanceError: if ``k`` is not a positive integer.
    """

    def __init__(self, k):
        if isinstance(k, bool) or not isinstance(k, six.integer_types):
            raise InstanceError("k must be an integer; got {!r}".format(k))
        if k < 1:
            raise InstanceError("k must be at least 1; got {}".format(k))
        self.k = k
        self.size = 2 * k + 1
        self.colors = frozenset(six.moves.range(self.size))

    def __repr__(self):
        return "<{} C_{}>".format(self.__class__.__name__, self.size)

    def __eq__(self, other):
        if not isinstance(other, CycleTarget):
            return NotImplemented
        return self.k == other.k

    def __ne__(self, other):
        equal = self.__eq__(other)
        return equal if equal is NotImplemented else not equal

    def __hash__(self):
        return hash((CycleTarget, self.k))

    def add(self, color, offset):
        """Shift a colour around the cycle."""
        return (color + offset) % self.size

    def neighbors(self, color):
        return frozenset((self.add(color, -1), self.add(color, 1)))

    def adjacent(self, x, y):
        return (x - y) % self.size in (1, self.size - 1)

    @property
    def edges(self):
        return [(color, self.add(color, 1)) for color in sorted(self.colors)]

    def path_without(self, color):
        """Relabel the cycle minus ``color`` as the path ``0 .. 2k - 1``.

        :returns: a dict of every other colour to its path position;
            ``color + 1`` is 0 and ``color + 2k`` is ``2k - 1``.
        """
        return {self.add(color, position + 1): position
                for position in six.moves.range(self.size - 1)}

    def as_general(self):
        """Get the same cycle as a :class:`GeneralTarget`."""
        return GeneralTarget(self.size, self.edges)

    def as_dict(self):
        return {"k": self.k}


class GeneralTarget(object):
    """A loopless simple target graph given by its edges.

    :param int size: number of colours; colours are ``0 .. size - 1``.
    :param edges: iterable of colour pairs.

    :raises InstanceError: for loops or out-of-range colours.
    """

    def __init__(self, size, edges):
        adjacency = {color: set() for color in six.moves.range(size)}
        for x, y in edges:
            if x == y:
                raise InstanceError("Target loop at {}".format(x))
            if x not in adjacency or y not in adjacency:
                raise InstanceError(
                    "Target edge {}{} out of range".format(x, y))
            adjacency[x].add(y)
            adjacency[y].add(x)
        self._set_adjacency(adjacency)

    def _set_adjacency(self, adjacency):
        self._adjacency = {color: frozenset(neighbors) for color, neighbors
                           in six.iteritems(adjacency)}
        self.colors = frozenset(self._adjacency)
        self.size = len(self.colors)
        self.triangle_free = not any(
            self._adjacency[x] & self._adjacency[y] for x, y in self.edges)
        graph = self.as_graph()
        self.diameter = cyclehom.graph.diameter(graph)
        self.odd_girth = cyclehom.graph.shortest_odd_cycle(graph)

    @classmethod
    def _from_adjacency(cls, adjacency):
        target = cls.__new__(cls)
        target._set_adjacency(adjacency)
        return target

    def __repr__(self):
        return "<{} {} colours, {} edges>".format(
            self.__class__.__name__, self.size, len(self.edges))

    def __eq__(self, other):
        if not isinstance(other, GeneralTarget):
            return NotImplemented
        return self._adjacency == other._adjacency

    def __ne__(self, other):
        equal = self.__eq__(other)
        return equal if equal is NotImplemented else not equal

    __hash__ = None

    def neighbors(self, color):
        return self._adjacency[color]

    def adjacent(self, x, y):
        return y in self._adjacency[x]

    @property
    def edges(self):
        return sorted((x, y) for x in self._adjacency
                      for y in self._adjacency[x] if x < y)

    def induced(self, colors):
        """Get the subtarget induced by a colour subset.

        Colours keep their names.
        """
        colors = frozenset(colors)
        return self._from_adjacency({
            color: self._adjacency[color] & colors for color in colors})

    def as_graph(self):
        """Get the target as a :class:`cyclehom.graph.Graph`.

        Colours are relabelled to ``0 .. size - 1`` in sorted order.
        """
        index = {color: position for position, color
                 in enumerate(sorted(self.colors))}
        return cyclehom.graph.Graph(
            self.size, [(index[x], index[y]) for x, y in self.edges])

    def as_dict(self):
        if self.colors != frozenset(six.moves.range(self.size)):
            raise InstanceError("Only targets over 0 .. h-1 are serialisable")
        return {"n": self.size, "edges": [[x, y] for x, y in self.edges]}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(data["n"], data.get("edges", ()))
        except (AttributeError, KeyError, TypeError, ValueError) as exc:
            six.raise_from(
                InstanceError("Malformed target: {}".format(exc)), exc)


def odd_cycle_maps_to(a, b):
    """Check whether ``C_{2a+1}`` maps homomorphically to ``C_{2b+1}``."""
    return a >= b


def has_type(colors, type_, target):
    """Check a list against a type ``(l_1, ..., l_r)``.

    A list has the type if its colours can be ordered ``c_0 .. c_r`` with
    ``c_{i+1} = c_i + l_{i+1}`` around the cycle.

    :raises InstanceError: if the list does not have ``r + 1`` colours.
    """
    colors = frozenset(colors)
    type_ = tuple(type_)
    if len(colors) != len(type_) + 1:
        raise InstanceError("A type of length {} needs {} colours; "
                            "got {}".format(len(type_), len(type_) + 1,
                                            sorted(colors)))
    for start in sorted(colors):
        sequence = [start]
        for step in type_:
            sequence.append(target.add(sequence[-1], step))
        if len(set(sequence)) == len(sequence) \
                and frozenset(sequence) == colors:
            return True
    return False


def allowed_colors_at_distance(color, distance, target):
    """Get the colours reachable from ``color`` by walks of a given length.

    These are ``color - d, color - d + 2, .., color + d`` around the cycle,
    which is every colour once the range wraps.
    """
    return frozenset(target.add(color, distance - 2 * step)
                     for step in six.moves.range(distance + 1))


def allowed_colors_two_anchors(color, distance, target):
    """Get the colours allowed at equal distance from two adjacent anchors.

    With anchors coloured ``color`` and ``color + 1`` at distance
    ``k + distance``, the allowed colours form the interval
    ``color + k - distance + 1 .. color + k + distance + 1``.
    """
    first = target.k - distance + 1
    return frozenset(target.add(color, first + step)
                     for step in six.moves.range(2 * distance + 1))


def common_neighbor_in_list(colors, list_, target):
    """Find the smallest colour of a list adjacent to every given colour.

    :returns: the colour, or ``None`` if there is none.
    """
    colors = frozenset(colors)
    for candidate in sorted(list_):
        if all(target.adjacent(candidate, color) for color in colors):
            return candidate
    return None


def is_independent(colors, target):
    return not any(target.adjacent(x, y)
                   for x, y in itertools.combinations(colors, 2))


def middle_color(colors, target):
    """Get ``j`` for a list ``{j-1, j, j+1}``, otherwise ``None``."""
    if len(colors) != 3:
        return None
    for color in sorted(colors):
        if target.add(color, -1) in colors and target.add(color, 1) in colors:
            return color
    return None


def center_color(colors, target):
    """Get ``i`` for a list ``{i-2, i, i+2}``, otherwise ``None``."""
    if len(colors) != 3:
        return None
    for color in sorted(colors):
        if target.add(color, -2) in colors and target.add(color, 2) in colors:
            return color
    return None


def gap_color(colors, target):
    """Get ``j`` for a list ``{j-1, j+1}`` of type (2), otherwise ``None``."""
    if len(colors) != 2:
        return None
    for color in sorted(target.colors):
        if colors == frozenset((target.add(color, -1), target.add(color, 1))):
            return color
    return None


class ListAssignment(object):
    """Per-vertex colour lists.

    :param lists: mapping of vertex to an iterable of colours.
    """

    def __init__(self, lists):
        self._lists = {int(vertex): frozenset(colors)
                       for vertex, colors in six.iteritems(dict(lists))}

    def __repr__(self):
        return "<{} {}>".format(self.__class__.__name__, {
            vertex: sorted(colors) for vertex, colors in self.items()})

    def __getitem__(self, vertex):
        return self._lists[vertex]

    def __contains__(self, vertex):
        return vertex in self._lists

    def __iter__(self):
        return iter(sorted(self._lists))

    def __len__(self):
        return len(self._lists)

    def __eq__(self, other):
        if not isinstance(other, ListAssignment):
            return NotImplemented
        return self._lists == other._lists

    def __ne__(self, other):
        equal = self.__eq__(other)
        return equal if equal is NotImplemented else not equal

    __hash__ = None

    def items(self):
        return sorted(six.iteritems(self._lists))

    def replace(self, updates):
        """Get a copy with some lists replaced."""
        lists = dict(self._lists)
        lists.update(updates)
        return ListAssignment(lists)

    def without(self, vertices):
        vertices = set(vertices)
        return ListAssignment({vertex: colors for vertex, colors
                               in six.iteritems(self._lists)
                               if vertex not in vertices})

    def restricted(self, vertices):
        return ListAssignment({vertex: self._lists[vertex]
                               for vertex in vertices})

    def vertices_with_size(self, size):
        """Get the sorted vertices whose list has exactly ``size`` colours."""
        return sorted(vertex for vertex, colors
                      in six.iteritems(self._lists) if len(colors) == size)

    def vertices_with_size_at_least(self, size):
        return sorted(vertex for vertex, colors
                      in six.iteritems(self._lists) if len(colors) >= size)

    @property
    def total_size(self):
        return sum(len(colors) for colors in six.itervalues(self._lists))

    @property
    def budget(self):
        """Sum of list sizes over vertices with at least two colours."""
        return sum(len(colors) for colors in six.itervalues(self._lists)
                   if len(colors) >= 2)


class Witness(dict):
    """Map of original vertex to colour certifying a YES answer."""

    def __repr__(self):
        return "<{} {}>".format(self.__class__.__name__, dict(self))

    def as_json(self):
        return [{"vertex": vertex, "color": color}
                for vertex, color in sorted(self.items())]

    @classmethod
    def from_json(cls, data):
        try:
            return cls((int(entry["vertex"]), int(entry["color"]))
                       for entry in data)
        except (KeyError, TypeError, ValueError) as exc:
            six.raise_from(
                InstanceError("Malformed witness: {}".format(exc)), exc)


class LHomInstance(object):
    """A graph with per-vertex lists over a target.

    :param cyclehom.graph.Graph graph: the input graph.
    :param target: a :class:`CycleTarget` or :class:`GeneralTarget`.
    :param lists: a :class:`ListAssignment` (or mapping) defined on
        exactly the live vertices of ``graph``. If omitted every vertex
        gets every colour.

    :raises InstanceError: if the lists do not match the graph or
        mention colours outside the target.
    """

    def __init__(self, graph, target, lists=None):
        if lists is None:
            lists = {vertex: target.colors for vertex in graph.vertices}
        if not isinstance(lists, ListAssignment):
            lists = ListAssignment(lists)
        if set(lists) != set(graph.vertices):
            raise InstanceError(
                "Lists must be defined on exactly the live vertices")
        for vertex, colors in lists.items():
            if not colors <= target.colors:
                raise InstanceError(
                    "List of {} has colours outside the target: {}".format(
                        vertex, sorted(colors - target.colors)))
        self.graph = graph
        self.target = target
        self.lists = lists

    def __repr__(self):
        return "<{} {!r} -> {!r}>".format(
            self.__class__.__name__, self.graph, self.target)

    def __eq__(self, other):
        if not isinstance(other, LHomInstance):
            return NotImplemented
        return (self.graph == other.graph and self.target == other.target
                and self.lists == other.lists)

    def __ne__(self, other):
        equal = self.__eq__(other)
        return equal if equal is NotImplemented else not equal

    __hash__ = None

    @property
    def vertices(self):
        return self.graph.vertices

    def with_lists(self, updates):
        """Get a copy with some lists replaced."""
        return LHomInstance(self.graph, self.target,
                            self.lists.replace(updates))

    def with_target(self, target, lists=None):
        return LHomInstance(self.graph, target,
                            self.lists if lists is None else lists)

    def identify(self, u, v):
        """Merge ``v`` into ``u``, intersecting their lists.

        :raises cyclehom.graph.AdjacentIdentification: if ``u`` and ``v``
            are adjacent.
        """
        graph = self.graph.identify(u, v)
        lists = self.lists.without((v,)).replace(
            {u: self.lists[u] & self.lists[v]})
        return LHomInstance(graph, self.target, lists)

    def add_edge(self, u, v):
        return LHomInstance(
            self.graph.add_edge(u, v), self.target, self.lists)

    def add_vertex(self, colors):
        """Add a fresh isolated vertex with the given list.

        :returns: a two-item tuple of the new instance and new vertex.
        """
        graph, vertex = self.graph.add_vertex()
        return (LHomInstance(graph, self.target,
                             self.lists.replace({vertex: colors})), vertex)

    def restrict(self, vertices):
        """Get the instance induced by a set of live vertices."""
        vertices = sorted(vertices)
        return LHomInstance(self.graph.subgraph(vertices), self.target,
                            self.lists.restricted(vertices))

    def components(self):
        """Split into one instance per connected component."""
        return [self.restrict(component)
                for component in self.graph.components()]

    def witness(self, coloring):
        """Pull a colouring of live vertices back to original vertices.

        :param coloring: mapping of live vertex to colour.

        :returns: a :class:`Witness` over every original vertex whose
            representative is coloured.
        """
        witness = Witness()
        for original in six.moves.range(self.graph.vertex_count):
            representative = self.graph.find(original)
            if representative in coloring:
                witness[original] = coloring[representative]
        return witness

    def as_dict(self):
        """Get the instance JSON form."""
        if isinstance(self.target, CycleTarget):
            data = {"k": self.target.k}
        else:
            data = {"target": self.target.as_dict()}
        data["graph"] = self.graph.as_dict()
        data["lists"] = [
            sorted(self.lists[vertex]) if vertex in self.lists else None
            for vertex in six.moves.range(self.graph.vertex_count)]
        return data

    @classmethod
    def from_dict(cls, data):
        """Build an instance from its JSON form.

        A missing ``"lists"`` entry means every vertex gets every colour.

        :raises InstanceError: if the data is malformed.
        """
        try:
            if "target" in data:
                target = GeneralTarget.from_dict(data["target"])
            else:
                target = CycleTarget(data["k"])
            graph = cyclehom.graph.Graph.from_dict(data["graph"])
            lists = None
            if data.get("lists") is not None:
                raw_lists = data["lists"]
                if len(raw_lists) != graph.vertex_count:
                    raise InstanceError(
                        "Expected {} lists; got {}".format(
                            graph.vertex_count, len(raw_lists)))
                lists = {vertex: colors for vertex, colors
                         in enumerate(raw_lists) if vertex in graph}
        except (AttributeError, KeyError, TypeError,
                cyclehom.graph.GraphError) as exc:
            six.raise_from(
                InstanceError("Malformed instance: {}".format(exc)), exc)
        return cls(graph, target, lists)


def load_instance(text):
    """Parse instance JSON text.

    :returns: a two-item tuple of the :class:`LHomInstance` and the
        landmark mapping, which is empty if the document has none.
    """
    try:
        data = json.loads(text)
    except ValueError as exc:
        six.raise_from(InstanceError("Invalid JSON: {}".format(exc)), exc)
    if not isinstance(data, dict):
        raise InstanceError("Instance JSON must be an object")
    return LHomInstance.from_dict(data), data.get("landmarks", {})


def dump_instance(instance, landmarks=None):
    """Format an instance as JSON text."""
    data = instance.as_dict()
    if landmarks:
        data["landmarks"] = landmarks
    return json.dumps(data, sort_keys=True)


class BcspInstance(object):
    """A binary constraint satisfaction instance with lists.

    Constraints are stored once per unordered pair. Pairs without an
    entry are unconstrained.

    :param variables: iterable of variables.
    :param domain: iterable of values.
    :param lists: mapping of variable to allowed values.
    """

    def __init__(self, variables, domain, lists):
        self.variables = tuple(sorted(variables))
        self.domain = frozenset(domain)
        self.lists = {variable: frozenset(lists[variable])
                      for variable in self.variables}
        self._constraints = {}

    def __repr__(self):
        return "<{} {} variables, {} constraints>".format(
            self.__class__.__name__,
            len(self.variables), len(self._constraints))

    def copy(self):
        copied = BcspInstance(self.variables, self.domain, self.lists)
        copied._constraints = dict(self._constraints)
        return copied

    @property
    def constraints(self):
        """All constraint entries, in both orientations."""
        constraints = {}
        for (u, v), pairs in six.iteritems(self._constraints):
            constraints[u, v] = pairs
            constraints[v, u] = frozenset((b, a) for a, b in pairs)
        return constraints

    def constrained_pairs(self):
        """Get the sorted ``(u, v)`` pairs, ``u < v``, with an entry."""
        return sorted(self._constraints)

    def allowed(self, u, v):
        """Get ``C(u, v)``, the value pairs allowed for ``(u, v)``."""
        if (u, v) in self._constraints:
            return self._constraints[u, v]
        if (v, u) in self._constraints:
            return frozenset((b, a) for a, b in self._constraints[v, u])
        return frozenset(itertools.product(self.domain, self.domain))

    def _store(self, u, v, pairs):
        if u < v:
            self._constraints[u, v] = frozenset(pairs)
        else:
            self._constraints[v, u] = frozenset((b, a) for a, b in pairs)

    def constrain(self, u, v, pairs):
        """Intersect ``C(u, v)`` with a set of value pairs."""
        self._store(u, v, self.allowed(u, v) & frozenset(pairs))

    def remove_pairs(self, u, v, pairs):
        """Remove value pairs from ``C(u, v)``.

        When ``u == v`` this prunes from the list of ``u`` every value
        ``x`` whose pair ``(x, x)`` is removed.
        """
        pairs = frozenset(pairs)
        if u == v:
            self.remove_values(u, (a for a, b in pairs if a == b))
            return
        self._store(u, v, self.allowed(u, v) - pairs)

    def remove_values(self, variable, values):
        self.lists[variable] = self.lists[variable] - frozenset(values)

    def has_empty_list(self):
        return any(not values for values in six.itervalues(self.lists))

    def satisfied_by(self, assignment):
        """Check an assignment against every list and constraint."""
        if any(assignment.get(variable) not in self.lists[variable]
               for variable in self.variables):
            return False
        return all((assignment[u], assignment[v]) in pairs
                   for (u, v), pairs in six.iteritems(self._constraints))


def bcsp_from_lhom(instance):
    """Build the BCSP of a list-homomorphism instance.

    Variables are the live vertices, the domain is the target colours,
    and every edge is constrained to the target's adjacent colour pairs.
    """
    target = instance.target
    edge_pairs = frozenset(
        (x, y) for x in target.colors for y in target.neighbors(x))
    bcsp = BcspInstance(instance.vertices, target.colors,
                        dict(instance.lists.items()))
    for u, v in instance.graph.edges:
        bcsp.constrain(u, v, edge_pairs)
    return bcsp
