# -*- coding: utf-8 -*-

"""List homomorphism to triangle-free targets on diameter-2 graphs.

The image of a connected diameter-2 graph induces a diameter-2 subgraph
``H'`` of the target. For each such ``H'`` one vertex per colour is
guessed, the guessed vertices are joined along the edges of ``H'`` and
the instance is reduced against ``H'``. With a triangle-free target the
reduction either finds NO or collapses the graph onto the guessed copy
of ``H'``.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import collections
import itertools
import logging

import cyclehom.graph
import cyclehom.instance
import cyclehom.reductions
import cyclehom.solvers


log = logging.getLogger(__name__)
MAX_TARGET_SIZE = 16


_SubtargetGuess = collections.namedtuple(
    "_SubtargetGuess", ("colors", "anchors"))


class SubtargetGuess(_SubtargetGuess):
    """A subtarget with one anchor vertex per colour.

    :ivar tuple colors: sorted colours of ``H'``.
    :ivar tuple anchors: ``(colour, vertex)`` pairs in colour order.
    """

    __slots__ = ()

    def __repr__(self):
        return "<{} {}>".format(self.__class__.__name__,
                                ", ".join("{}->{}".format(vertex, color)
                                          for color, vertex in self.anchors))


def enumerate_subtargets(target):
    """List the colour sets inducing a connected subgraph of diameter 2.

    :returns: sorted colour tuples ordered by size, then lexicographically.
    """
    found = []
    colors = sorted(target.colors)
    for size in range(1, len(colors) + 1):
        for subset in itertools.combinations(colors, size):
            if target.induced(subset).diameter <= 2:
                found.append(subset)
    return found


def _anchorings(instance, subtarget):
    """Enumerate injective anchorings with forward checking."""
    colors = sorted(subtarget.colors)
    assigned = []

    def extend(current):
        if len(assigned) == len(colors):
            yield SubtargetGuess(tuple(colors), tuple(assigned)), current
            return
        color = colors[len(assigned)]
        used = set(vertex for _, vertex in assigned)
        for vertex in current.vertices:
            if vertex in used or color not in current.lists[vertex]:
                continue
            if any(current.graph.has_edge(vertex, other)
                   and not subtarget.adjacent(color, placed)
                   for placed, other in assigned):
                continue
            pinned = cyclehom.reductions.arc_consistent(
                current.with_lists({vertex: frozenset((color,))}))
            if pinned is None:
                continue
            assigned.append((color, vertex))
            for found in extend(pinned):
                yield found
            assigned.pop()

    return extend(instance)


def check_guess(instance, guess):
    """Decide one anchored guess.

    :param instance: the instance over the subtarget, anchors pinned.

    :returns: a witness if the reduced instance collapses onto the
        anchors, otherwise ``None``.
    """
    subtarget = instance.target
    current = instance
    for (x, u), (y, v) in itertools.combinations(guess.anchors, 2):
        if subtarget.adjacent(x, y) and not current.graph.has_edge(u, v):
            current = current.add_edge(u, v)
    outcome = cyclehom.reductions.reduce_exhaustively(current)
    if outcome.is_no:
        return None
    reduced = outcome.instance
    if reduced.graph.order != len(guess.anchors):
        log.debug("%r left %s vertices", guess, reduced.graph.order)
        return None
    coloring = {}
    for vertex, colors in reduced.lists.items():
        if len(colors) != 1:
            return None
        coloring[vertex] = next(iter(colors))
    return reduced.witness(coloring)


class TriangleFreeSolver(cyclehom.solvers.BaseSolver):
    """List homomorphism to a triangle-free target on diameter-2 graphs."""

    name = "trifree"

    def check_instance(self, instance):
        target = instance.target
        if not isinstance(target, cyclehom.instance.GeneralTarget):
            raise cyclehom.solvers.UnsupportedInstance(
                "trifree needs a general target; got {!r}".format(target))
        if not target.triangle_free:
            raise cyclehom.solvers.UnsupportedInstance(
                "Target has a triangle")
        if target.size > MAX_TARGET_SIZE:
            raise cyclehom.solvers.UnsupportedInstance(
                "Target has {} colours; at most {} are supported".format(
                    target.size, MAX_TARGET_SIZE))

    def max_diameter(self, instance):
        return 2

    def solve(self, instance):
        if isinstance(instance.target, cyclehom.instance.CycleTarget):
            instance = instance.with_target(instance.target.as_general())
        return super(TriangleFreeSolver, self).solve(instance)

    def solve_connected(self, instance):
        target = instance.target
        girth = cyclehom.graph.shortest_odd_cycle(instance.graph)
        if girth is not None and (target.odd_girth is None
                                  or girth < target.odd_girth):
            log.debug("Odd girth %s is below the target's %s",
                      girth, target.odd_girth)
            return None
        order = instance.graph.order
        for colors in enumerate_subtargets(target):
            if len(colors) > order:
                break
            subtarget = target.induced(colors)
            lists = {vertex: allowed & subtarget.colors
                     for vertex, allowed in instance.lists.items()}
            if not all(lists.values()):
                continue
            restricted = cyclehom.reductions.arc_consistent(
                instance.with_target(subtarget, lists))
            if restricted is None:
                continue
            for guess, pinned in _anchorings(restricted, subtarget):
                self.stats.guesses_tried += 1
                witness = check_guess(pinned, guess)
                if witness is not None:
                    log.debug("trifree: %r succeeded", guess)
                    return witness
        return None


def solve_triangle_free(instance):
    """Decide an instance over a triangle-free target on diameter 2.

    :raises cyclehom.solvers.UnsupportedInstance: if the target has a
        triangle or is too large.
    :raises cyclehom.solvers.DiameterTooLarge: for components of
        diameter above 2.

    :returns: a :class:`cyclehom.instance.Witness`, or ``None``.
    """
    return TriangleFreeSolver().solve(instance)
