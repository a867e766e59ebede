# -*- coding: utf-8 -*-

"""Subexponential list homomorphism to ``C_{2k+1}``.

Covers diameter ``k + 2`` for every ``k >= 2`` and diameter 5 for
``C_5``. After the usual precoloured-cycle guess, a recursion tree
branches in two ways:

* (B1) on a vertex with many neighbours of list size at least two,
  either fixing one colour or removing it;
* (B2) on every proper colouring of a ball around a vertex far from the
  precoloured cycle, restricted to vertices with at least two colours.

Every leaf, once reduced, has lists of at most two colours or of type
``(2, 2)`` and is finished by a width-2 binary CSP.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import collections
import itertools
import json
import logging
import math

import six

import cyclehom.consistency
import cyclehom.graph
import cyclehom.instance
import cyclehom.reductions
import cyclehom.solvers
import cyclehom.solvers.poly


log = logging.getLogger(__name__)


def threshold(mu, depth):
    """Get the B1 degree threshold ``(mu log mu) ** (1 / depth)``."""
    if mu <= 1:
        return 0
    return (mu * math.log(mu)) ** (1 / depth)


def choose_b1(instance, depth):
    """Pick the B1 vertex and colour, if any vertex qualifies.

    The vertex is the smallest one with at least :func:`threshold` many
    neighbours of list size two or more. Its colour avoids the gap of
    the most frequent type-(2) neighbour list, ties going to the smaller
    gap; without type-(2) neighbours the smallest colour is taken.

    :returns: a ``(vertex, colour)`` tuple, or ``None``.
    """
    target = instance.target
    lists = instance.lists
    many = lists.vertices_with_size_at_least(2)
    many_set = set(many)
    bound = threshold(lists.budget, depth)
    for vertex in many:
        neighbors = [neighbor for neighbor in instance.graph.neighbors(vertex)
                     if neighbor in many_set]
        if not neighbors or len(neighbors) < bound:
            continue
        gaps = collections.Counter(
            gap for gap in (cyclehom.instance.gap_color(lists[neighbor], target)
                            for neighbor in neighbors)
            if gap is not None)
        if gaps:
            gap = min(gaps, key=lambda color: (-gaps[color], color))
            remaining = lists[vertex] - {gap}
            return vertex, min(remaining)
        return vertex, min(lists[vertex])
    return None


def branch_b1(instance, vertex, color):
    """Split on ``color``: a child with it fixed and one without it."""
    colors = instance.lists[vertex]
    return (instance.with_lists({vertex: frozenset((color,))}),
            instance.with_lists({vertex: colors - {color}}))


def b2_region(instance, vertex, depth):
    """Get the ball of radius ``depth - 1`` around ``vertex``.

    Distances are taken in the subgraph induced by vertices with at
    least two colours.
    """
    many = instance.lists.vertices_with_size_at_least(2)
    if vertex not in many:
        return []
    subgraph = instance.graph.subgraph(many)
    return cyclehom.graph.bfs_distances(
        subgraph, vertex, cutoff=depth - 1).reachable()


def iter_b2_children(instance, vertex, depth, proper_only=False):
    """Lazily enumerate the B2 children of an instance.

    Children come in lexicographic order over ``(vertex, colour)``. With
    ``proper_only`` colourings that break an edge inside the region are
    skipped.
    """
    region = b2_region(instance, vertex, depth)
    if not region:
        yield instance
        return
    target = instance.target
    graph = instance.graph
    choices = [sorted(instance.lists[member]) for member in region]
    chosen = []

    def extend():
        index = len(chosen)
        if index == len(region):
            yield dict(zip(region, chosen))
            return
        for color in choices[index]:
            if proper_only and any(
                    graph.has_edge(region[index], region[earlier])
                    and not target.adjacent(color, chosen[earlier])
                    for earlier in six.moves.range(index)):
                continue
            chosen.append(color)
            for coloring in extend():
                yield coloring
            chosen.pop()

    for coloring in extend():
        yield instance.with_lists({member: frozenset((color,))
                                   for member, color
                                   in six.iteritems(coloring)})


def branch_b2(instance, vertex, depth):
    """Get one child per colouring of the B2 region around ``vertex``."""
    return list(iter_b2_children(instance, vertex, depth))


def pick_b2_vertex(instance, cycle, depth):
    """Pick a vertex with two or more colours far from the cycle.

    Prefers the smallest vertex at distance at least ``ceil(depth / 2)``
    from the precoloured cycle and falls back to the smallest vertex.

    :param cycle: original ids of the precoloured cycle.

    :raises cyclehom.solvers.PreconditionViolated: if every list is a
        singleton.
    """
    many = instance.lists.vertices_with_size_at_least(2)
    if not many:
        raise cyclehom.solvers.PreconditionViolated(
            "B2 needs a vertex with two or more colours")
    anchors = set(instance.graph.find(vertex) for vertex in cycle)
    distances = cyclehom.graph.distance_to_set(instance.graph, anchors)
    far = (depth + 1) // 2
    for vertex in many:
        if distances.get(vertex, cyclehom.graph.INFINITY) >= far:
            return vertex
    return many[0]


def _is_leaf_list(colors, target):
    return len(colors) <= 2 or (
        len(colors) == 3
        and cyclehom.instance.center_color(colors, target) is not None)


def check_leaf_structure(instance):
    """Check that every list has at most two colours or type ``(2, 2)``.

    :raises cyclehom.solvers.StructuralAssertionFailed: otherwise.
    """
    for vertex, colors in instance.lists.items():
        if not _is_leaf_list(colors, instance.target):
            raise cyclehom.solvers.StructuralAssertionFailed(
                "Leaf vertex {} has list {}".format(vertex, sorted(colors)))


def solve_leaf(instance):
    """Decide a connected reduced leaf with lists of size two or type (2, 2).

    Every type-(2, 2) vertex with list ``{i-2, i, i+2}`` first receives
    pendant neighbours for whichever of ``{i-1, i+1}``, ``{i-3, i+1}``
    and ``{i-1, i+3}`` it lacks among its two-colour neighbours. The
    two-colour part is then a BCSP: pairs of neighbours of one
    three-colour vertex must share a colour of its list, and across an
    edge of three-colour vertices with centres ``i`` and ``i + 1`` three
    forbidden pairs are dropped. Three-colour vertices are coloured last.

    :raises cyclehom.solvers.PreconditionViolated: if a list is too
        large or the graph is disconnected.
    :raises cyclehom.solvers.StructuralAssertionFailed: if the final
        extension fails.

    :returns: a :class:`cyclehom.instance.Witness` over original
        vertices, or ``None``.
    """
    target = instance.target
    for vertex, colors in instance.lists.items():
        if not _is_leaf_list(colors, target):
            raise cyclehom.solvers.PreconditionViolated(
                "Leaf list {} of {} is not allowed".format(
                    sorted(colors), vertex))
    if not instance.graph.is_connected():
        raise cyclehom.solvers.PreconditionViolated(
            "Leaf instance must be connected")
    if any(not colors for _, colors in instance.lists.items()):
        return None
    original_count = instance.graph.vertex_count
    three = instance.lists.vertices_with_size(3)
    three_set = set(three)

    def center(current, vertex):
        return cyclehom.instance.center_color(current.lists[vertex], target)

    augmented = instance
    for vertex in three:
        i = center(augmented, vertex)
        present = set(augmented.lists[neighbor] for neighbor
                      in augmented.graph.neighbors(vertex)
                      if len(augmented.lists[neighbor]) == 2)
        for first, second in ((-1, 1), (-3, 1), (-1, 3)):
            colors = frozenset((target.add(i, first), target.add(i, second)))
            if colors in present:
                continue
            augmented, pendant = augmented.add_vertex(colors)
            augmented = augmented.add_edge(vertex, pendant)
            present.add(colors)
    rest = [vertex for vertex in augmented.vertices
            if vertex not in three_set]
    bcsp = cyclehom.instance.bcsp_from_lhom(augmented.restrict(rest))
    cyclehom.solvers.poly.restrict_common_neighbors(bcsp, augmented, three)

    def two_color_neighbors(vertex):
        return [neighbor for neighbor in augmented.graph.neighbors(vertex)
                if len(augmented.lists[neighbor]) == 2]

    for u, v in augmented.graph.edges:
        if u not in three_set or v not in three_set:
            continue
        center_u, center_v = center(augmented, u), center(augmented, v)
        if center_v == target.add(center_u, 1):
            lower, upper, i = u, v, center_u
        elif center_u == target.add(center_v, 1):
            lower, upper, i = v, u, center_v
        else:
            raise cyclehom.solvers.StructuralAssertionFailed(
                "Adjacent {} and {} have centres {} and {}".format(
                    u, v, center_u, center_v))
        forbidden = [(target.add(i, -3), target.add(i, 2)),
                     (target.add(i, -1), target.add(i, 4)),
                     (target.add(i, 3), target.add(i, -2))]
        for a in two_color_neighbors(lower):
            for b in two_color_neighbors(upper):
                bcsp.remove_pairs(a, b, forbidden)
    if bcsp.has_empty_list():
        return None
    assignment = cyclehom.consistency.solve_bcsp_width2(bcsp)
    if assignment is None:
        return None
    coloring = dict(assignment)
    for vertex in three:
        fixed = [coloring[neighbor] for neighbor
                 in augmented.graph.neighbors(vertex)
                 if neighbor not in three_set]
        candidates = [color for color in sorted(augmented.lists[vertex])
                      if all(target.adjacent(color, other)
                             for other in fixed)]
        if not candidates:
            raise cyclehom.solvers.StructuralAssertionFailed(
                "No colour left for {}".format(vertex))
        coloring[vertex] = candidates[0]
    for u, v in augmented.graph.edges:
        if not target.adjacent(coloring[u], coloring[v]):
            raise cyclehom.solvers.StructuralAssertionFailed(
                "Leaf colouring breaks edge {}{}".format(u, v))
    witness = augmented.witness(coloring)
    return cyclehom.instance.Witness(
        (vertex, color) for vertex, color in six.iteritems(witness)
        if vertex < original_count)


_TreeNode = collections.namedtuple(
    "_TreeNode", ("id", "parent", "rule", "mu", "kind"))


class TreeNode(_TreeNode):
    """One node of a recorded recursion tree.

    :ivar int id: node number in visiting order.
    :ivar parent: id of the parent, ``None`` for the root.
    :ivar str rule: the branch that created the node.
    :ivar mu: list budget of the reduced node, ``None`` for NO nodes.
    :ivar str kind: ``"b1"``, ``"b2"``, ``"leaf"`` or ``"no"``.
    """

    __slots__ = ()

    def as_dict(self):
        return dict(self._asdict())


def recursion_tree(instance, cycle, depth, stats=None, tree=None):
    """Walk the recursion tree depth first and yield its leaves.

    :param instance: a reduced instance with the cycle precoloured.
    :param cycle: original ids ``c_0 .. c_2k`` of the precoloured cycle.
    :param int depth: the diameter bound driving both branching rules.
    :param stats: optional :class:`cyclehom.solvers.SolverStats`.
    :param tree: optional list receiving a :class:`TreeNode` per node.
        Node ids continue from the current length of the list.

    :raises cyclehom.solvers.StructuralAssertionFailed: if a B2 child
        does not have leaf structure once reduced.
    """
    counter = itertools.count(0 if tree is None else len(tree))

    def record(parent, rule, mu, kind):
        node = next(counter)
        if tree is not None:
            tree.append(TreeNode(node, parent, rule, mu, kind))
        return node

    def reduced_child(child):
        outcome = cyclehom.reductions.reduce_exhaustively(child, cycle)
        if stats is not None:
            stats.reductions += len(outcome.changelog)
        return None if outcome.is_no else outcome.instance

    stack = [(instance, None, "root")]
    while stack:
        current, parent, rule = stack.pop()
        if stats is not None:
            stats.nodes_expanded += 1
        mu = current.lists.budget
        choice = choose_b1(current, depth)
        if choice is not None:
            node = record(parent, rule, mu, "b1")
            vertex, color = choice
            log.debug("B1 on %s with colour %s (mu %s)", vertex, color, mu)
            children = []
            for label, child in zip(("B1-fix", "B1-remove"),
                                    branch_b1(current, vertex, color)):
                child = reduced_child(child)
                if child is None:
                    record(node, label, None, "no")
                else:
                    children.append((child, node, label))
            stack.extend(reversed(children))
            continue
        if not current.lists.vertices_with_size_at_least(2):
            record(parent, rule, mu, "leaf")
            yield current
            continue
        node = record(parent, rule, mu, "b2")
        vertex = pick_b2_vertex(current, cycle, depth)
        log.debug("B2 around %s (mu %s)", vertex, mu)
        for child in iter_b2_children(current, vertex, depth,
                                      proper_only=True):
            child = reduced_child(child)
            if child is None:
                record(node, "B2", None, "no")
                continue
            check_leaf_structure(child)
            record(node, "B2", child.lists.budget, "leaf")
            yield child


def dump_tree(tree):
    """Format recorded tree nodes as JSON text."""
    return json.dumps([node.as_dict() for node in tree], sort_keys=True)


class SubexpSolver(cyclehom.solvers.poly.CycleGuessSolver):
    """List homomorphism to ``C_{2k+1}`` on diameter-``(k + 2)`` graphs.

    :ivar tree: list of :class:`TreeNode` recorded over all guesses when
        ``record_tree`` is set, otherwise ``None``.
    """

    name = "subexp"

    def __init__(self, stats=None, record_tree=False):
        super(SubexpSolver, self).__init__(stats)
        self.tree = [] if record_tree else None

    def depth(self, instance):
        return instance.target.k + 2

    def max_diameter(self, instance):
        return self.depth(instance)

    def solve_guess(self, instance, guess):
        for leaf in recursion_tree(instance, guess, self.depth(instance),
                                   self.stats, self.tree):
            witness = cyclehom.instance.Witness()
            for component in leaf.components():
                found = solve_leaf(component)
                if found is None:
                    break
                witness.update(found)
            else:
                return witness
        return None


class C5Solver(SubexpSolver):
    """List homomorphism to ``C_5`` on diameter-5 graphs."""

    name = "c5"

    def check_instance(self, instance):
        super(C5Solver, self).check_instance(instance)
        if instance.target.k != 2:
            raise cyclehom.solvers.UnsupportedInstance(
                "c5 needs k = 2; got k = {}".format(instance.target.k))

    def depth(self, instance):
        return 5


def solve_diameter_k_plus_2(instance):
    """Decide an instance whose components have diameter at most ``k + 2``.

    :returns: a :class:`cyclehom.instance.Witness`, or ``None``.
    """
    return SubexpSolver().solve(instance)


def solve_c5_diameter_5(instance):
    """Decide a ``C_5`` instance whose components have diameter at most 5.

    :returns: a :class:`cyclehom.instance.Witness`, or ``None``.
    """
    return C5Solver().solve(instance)
