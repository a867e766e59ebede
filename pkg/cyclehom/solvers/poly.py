# -*- coding: utf-8 -*-

"""Polynomial-time list homomorphism to ``C_{2k+1}`` on diameter ``k + 1``.

The solver first tries to avoid each colour in turn, which leaves a list
homomorphism problem into a path. When every colour is needed it guesses
one vertex per colour, precolours that cycle and reduces. What is left
has lists of at most three colours, and the three-colour lists are
settled per component through a middle/non-middle partition so that
everything ends in a width-2 binary CSP.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import collections
import itertools
import logging

import six

import cyclehom.consistency
import cyclehom.graph
import cyclehom.instance
import cyclehom.solvers


log = logging.getLogger(__name__)


def check_color_avoidance(instance, color):
    """Look for a homomorphism that never uses ``color``.

    ``C_{2k+1}`` minus one colour is the path ``color + 1 .. color + 2k``,
    so this is list homomorphism to ``P_{2k}``.

    :returns: a :class:`cyclehom.instance.Witness` or ``None``.
    """
    target = instance.target
    path = cyclehom.consistency.PathTarget(2 * target.k)
    position = target.path_without(color)
    lists = {vertex: frozenset(position[other] for other in colors
                               if other != color)
             for vertex, colors in instance.lists.items()}
    found = cyclehom.consistency.solve_lhom_path(instance.graph, lists, path)
    if found is None:
        return None
    return instance.witness({vertex: target.add(color, value + 1)
                             for vertex, value in six.iteritems(found)})


def cycle_guesses(instance):
    """Enumerate candidate precoloured cycles.

    A guess is a tuple ``(c_0, .., c_2k)`` of distinct live vertices with
    ``i`` in the list of ``c_i``. Guesses whose pairwise distances no
    walk in the target could realise are skipped. Guesses come out in
    lexicographic order.
    """
    target = instance.target
    distances = cyclehom.graph.all_distances(instance.graph)
    candidates = [[vertex for vertex in instance.vertices
                   if color in instance.lists[vertex]]
                  for color in sorted(target.colors)]

    def compatible(prefix, vertex):
        color = len(prefix)
        for other, placed in enumerate(prefix):
            distance = distances[placed].get(vertex)
            if distance is None or color not in \
                    cyclehom.instance.allowed_colors_at_distance(
                        other, distance, target):
                return False
        return True

    def extend(prefix):
        if len(prefix) == target.size:
            yield tuple(prefix)
            return
        for vertex in candidates[len(prefix)]:
            if vertex in prefix or not compatible(prefix, vertex):
                continue
            prefix.append(vertex)
            for guess in extend(prefix):
                yield guess
            prefix.pop()

    return extend([])


def precolor_cycle(instance, guess):
    """Pin ``c_i`` to colour ``i`` and close the cycle with edges."""
    size = len(guess)
    updated = instance.with_lists({vertex: frozenset((color,))
                                   for color, vertex in enumerate(guess)})
    for color, vertex in enumerate(guess):
        following = guess[(color + 1) % size]
        if not updated.graph.has_edge(vertex, following):
            updated = updated.add_edge(vertex, following)
    return updated


class CycleGuessSolver(cyclehom.solvers.BaseSolver):
    """Shared driver of the cycle-target solvers.

    Reduces, tries colour avoidance, then enumerates precoloured cycles
    and hands each reduced guess to :meth:`solve_guess`.
    """

    def check_instance(self, instance):
        if not isinstance(instance.target, cyclehom.instance.CycleTarget):
            raise cyclehom.solvers.UnsupportedInstance(
                "{} needs an odd cycle target; got {!r}".format(
                    self.name, instance.target))
        if instance.target.k < 2:
            raise cyclehom.solvers.UnsupportedInstance(
                "{} needs k >= 2; k = 1 is 3-colouring".format(self.name))

    def solve_connected(self, instance):
        outcome = self.reduce(instance)
        if outcome.is_no:
            return None
        reduced = outcome.instance
        if self.stats.root_mu is None:
            self.stats.root_mu = reduced.lists.budget
        for color in sorted(reduced.target.colors):
            witness = check_color_avoidance(reduced, color)
            if witness is not None:
                log.debug("%s: colour %s can be avoided", self.name, color)
                return witness
        for guess in cycle_guesses(reduced):
            self.stats.guesses_tried += 1
            outcome = self.reduce(precolor_cycle(reduced, guess), guess)
            if outcome.is_no:
                continue
            witness = self.solve_guess(outcome.instance, guess)
            if witness is not None:
                log.debug("%s: guess %s succeeded", self.name, guess)
                return witness
        return None

    def solve_guess(self, instance, guess):
        """Decide a reduced instance with a precoloured cycle.

        :returns: a witness over original vertices, or ``None``.
        """
        raise NotImplementedError


_MiddlePartition = collections.namedtuple(
    "_MiddlePartition", ("vertices", "first", "second"))


class MiddlePartition(_MiddlePartition):
    """A split of a component of three-colour lists.

    In any homomorphism either every vertex of ``first`` gets the middle
    of its list and no vertex of ``second`` does, or the reverse.
    """

    __slots__ = ()

    def __repr__(self):
        return "<{} {} | {}>".format(self.__class__.__name__,
                                     sorted(self.first), sorted(self.second))

    def part(self, index):
        return self.first if index == 0 else self.second


def middle_partition(instance, component):
    """Split a connected set of three-colour vertices into two parts.

    Starting from the smallest vertex in the first part, the smallest
    unplaced vertex with a placed neighbour is placed next. Neighbours
    with the same list must alternate and neighbours with shifted lists
    must agree.

    :returns: a :class:`MiddlePartition`, or ``None`` if no split exists,
        in which case the instance is NO.
    """
    graph = instance.graph
    lists = instance.lists
    members = sorted(component)
    first, second = {members[0]}, set()
    placed = {members[0]}
    while len(placed) < len(members):
        vertex = min(member for member in members if member not in placed
                     and any(neighbor in placed for neighbor
                             in graph.neighbors(member)))
        placed_neighbors = [neighbor for neighbor in graph.neighbors(vertex)
                            if neighbor in placed]
        same = [neighbor for neighbor in placed_neighbors
                if lists[neighbor] == lists[vertex]]
        shifted = [neighbor for neighbor in placed_neighbors
                   if lists[neighbor] != lists[vertex]]
        if all(n in first for n in same) and all(n in second for n in shifted):
            second.add(vertex)
        elif all(n in second for n in same) \
                and all(n in first for n in shifted):
            first.add(vertex)
        else:
            log.debug("No middle partition: %s conflicts", vertex)
            return None
        placed.add(vertex)
    return MiddlePartition(frozenset(members),
                           frozenset(first), frozenset(second))


def component_subinstances(instance, partition):
    """Build the two instances of one partitioned component.

    In the first, vertices of ``first`` get the middle of their list and
    vertices of ``second`` get the two outer colours; the second is the
    reverse.
    """
    target = instance.target
    restricted = instance.restrict(partition.vertices)
    subinstances = []
    for index in (0, 1):
        middle_part = partition.part(index)
        lists = {}
        for vertex in partition.vertices:
            middle = cyclehom.instance.middle_color(
                instance.lists[vertex], target)
            if vertex in middle_part:
                lists[vertex] = frozenset((middle,))
            else:
                lists[vertex] = frozenset((target.add(middle, -1),
                                           target.add(middle, 1)))
        subinstances.append(restricted.with_lists(lists))
    return tuple(subinstances)


def _two_color_neighbors(instance, vertex):
    return [neighbor for neighbor in instance.graph.neighbors(vertex)
            if len(instance.lists[neighbor]) == 2]


def restrict_common_neighbors(bcsp, instance, vertices):
    """Constrain two-colour neighbours of each vertex to compatible pairs.

    For every listed vertex ``v`` and two-colour neighbours ``u, w``, the
    colours of ``u`` and ``w`` must share a neighbour in ``L(v)``.
    """
    target = instance.target
    for vertex in vertices:
        list_ = instance.lists[vertex]
        neighbors = _two_color_neighbors(instance, vertex)
        for u, w in itertools.combinations(neighbors, 2):
            bcsp.constrain(u, w, (
                (x, y) for x in instance.lists[u] for y in instance.lists[w]
                if cyclehom.instance.common_neighbor_in_list(
                    (x, y), list_, target) is not None))


def build_poly_bcsp(instance, partitions, feasibility):
    """Build the width-2 BCSP over vertices with at most two colours.

    :param partitions: one :class:`MiddlePartition` per component of
        three-colour vertices.
    :param feasibility: per partition, a pair of flags telling whether
        each of its two subinstances has a solution.
    """
    target = instance.target
    three = instance.lists.vertices_with_size(3)
    three_set = set(three)
    rest = [vertex for vertex in instance.vertices if vertex not in three_set]
    bcsp = cyclehom.instance.bcsp_from_lhom(instance.restrict(rest))
    restrict_common_neighbors(bcsp, instance, three)

    def middle(vertex):
        return cyclehom.instance.middle_color(instance.lists[vertex], target)

    def around(color):
        return (target.add(color, -1), target.add(color, 1))

    for partition, flags in zip(partitions, feasibility):
        for index, feasible in enumerate(flags):
            if feasible:
                continue
            # The other part holds the middles.
            for vertex in partition.vertices:
                j = middle(vertex)
                if vertex in partition.part(index):
                    removed = around(j)
                else:
                    removed = (j,)
                for neighbor in _two_color_neighbors(instance, vertex):
                    bcsp.remove_values(neighbor, removed)
        for u, v in itertools.product(sorted(partition.vertices), repeat=2):
            j, i = middle(u), middle(v)
            if (u in partition.first) == (v in partition.first):
                pairs = [(j, other) for other in around(i)] \
                    + [(other, i) for other in around(j)]
            else:
                pairs = [(j, i)] + list(itertools.product(around(j),
                                                          around(i)))
            for u_neighbor in _two_color_neighbors(instance, u):
                for v_neighbor in _two_color_neighbors(instance, v):
                    bcsp.remove_pairs(u_neighbor, v_neighbor, pairs)
    return bcsp


def check_poly_structure(instance):
    """Check the list structure left after precolouring and reduction.

    Lists have at most three colours, three-colour lists are
    ``{j-1, j, j+1}``, their neighbours have shifted three-colour lists
    or the two-colour lists ``{j-1, j}`` and ``{j, j+1}``, and none is
    precoloured.

    :raises cyclehom.solvers.StructuralAssertionFailed: otherwise.
    """
    target = instance.target
    lists = instance.lists
    for vertex, colors in lists.items():
        if len(colors) > 3:
            raise cyclehom.solvers.StructuralAssertionFailed(
                "{} keeps {} colours".format(vertex, len(colors)))
        if len(colors) < 3:
            continue
        j = cyclehom.instance.middle_color(colors, target)
        if j is None:
            raise cyclehom.solvers.StructuralAssertionFailed(
                "{} has list {} of the wrong type".format(
                    vertex, sorted(colors)))
        allowed_pairs = (frozenset((target.add(j, -1), j)),
                         frozenset((j, target.add(j, 1))))
        for neighbor in instance.graph.neighbors(vertex):
            other = lists[neighbor]
            if len(other) == 3:
                shift = (cyclehom.instance.middle_color(other, target) - j) \
                    % target.size
                if shift not in (0, 1, target.size - 1):
                    raise cyclehom.solvers.StructuralAssertionFailed(
                        "Neighbours {} and {} have lists {} and {}".format(
                            vertex, neighbor, sorted(colors), sorted(other)))
            elif other not in allowed_pairs:
                raise cyclehom.solvers.StructuralAssertionFailed(
                    "{} next to {} has list {}".format(
                        neighbor, vertex, sorted(other)))


def _solve_small(instance):
    return cyclehom.consistency.solve_bcsp_width2(
        cyclehom.instance.bcsp_from_lhom(instance))


def _realised_side(instance, partition, coloring):
    """Find which subinstance a two-colour colouring commits to."""
    target = instance.target
    for vertex in sorted(partition.vertices):
        neighbors = _two_color_neighbors(instance, vertex)
        if not neighbors:
            continue
        j = cyclehom.instance.middle_color(instance.lists[vertex], target)
        is_middle = coloring[neighbors[0]] != j
        in_first = vertex in partition.first
        return 0 if is_middle == in_first else 1
    return None


class PolySolver(CycleGuessSolver):
    """List homomorphism to ``C_{2k+1}`` on diameter-``(k + 1)`` graphs."""

    name = "poly"

    def max_diameter(self, instance):
        return instance.target.k + 1

    def solve_guess(self, instance, guess):
        check_poly_structure(instance)
        three = instance.lists.vertices_with_size(3)
        partitions = []
        feasibility = []
        solutions = []
        if three:
            components = instance.graph.subgraph(three).components()
        else:
            components = []
        for component in components:
            partition = middle_partition(instance, component)
            if partition is None:
                return None
            found = tuple(_solve_small(subinstance) for subinstance
                          in component_subinstances(instance, partition))
            if found == (None, None):
                return None
            partitions.append(partition)
            feasibility.append(tuple(side is not None for side in found))
            solutions.append(found)
        bcsp = build_poly_bcsp(instance, partitions, feasibility)
        if bcsp.has_empty_list():
            return None
        assignment = cyclehom.consistency.solve_bcsp_width2(bcsp)
        if assignment is None:
            return None
        coloring = dict(assignment)
        for partition, found in zip(partitions, solutions):
            side = _realised_side(instance, partition, assignment)
            if side is None:
                side = 0 if found[0] is not None else 1
            if found[side] is None:
                raise cyclehom.solvers.StructuralAssertionFailed(
                    "BCSP chose the infeasible side of {!r}".format(
                        partition))
            coloring.update(found[side])
        return instance.witness(coloring)


def solve_diameter_k_plus_1(instance):
    """Decide an instance whose components have diameter at most ``k + 1``.

    :raises cyclehom.solvers.DiameterTooLarge: for wider components.

    :returns: a :class:`cyclehom.instance.Witness`, or ``None``.
    """
    return PolySolver().solve(instance)
