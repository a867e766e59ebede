# -*- coding: utf-8 -*-

"""Reduction rules for list homomorphism instances.

Rules, as numbered throughout the package:

* (R1) an odd cycle of length at most ``2k - 1`` means NO.
* (R2) two ``(2k + 1)``-cycles sharing two vertices are either glued
  together (aligned or reflected) or give NO.
* (R3) a colour with no neighbour in an adjacent vertex's list is removed.
* (R4) an empty list means NO.
* (R5) a colour dominated by another colour of the same list is removed.
* (R6) vertices with the same singleton list are identified, or give NO
  if adjacent.

Every rule returns a :class:`Reduced` or :class:`No` outcome. NO is a
value here, never an exception.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import collections
import enum
import logging

import six

import cyclehom.graph
import cyclehom.instance


log = logging.getLogger(__name__)


class Rule(enum.Enum):
    """Identifiers of the reduction rules."""

    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    R6 = "R6"


_Change = collections.namedtuple("_Change", ("rule", "vertices", "colors"))


class Change(_Change):
    """One changelog entry.

    :ivar Rule rule: the rule that fired.
    :ivar tuple vertices: affected vertices. For identifications this is
        ``(survivor, merged)``.
    :ivar tuple colors: removed colours, if any.
    """

    __slots__ = ()

    def __repr__(self):
        return "<{} {} {} {}>".format(self.__class__.__name__,
                                      self.rule.value,
                                      list(self.vertices), list(self.colors))

    def as_dict(self):
        return {
            "rule": self.rule.value,
            "vertices": list(self.vertices),
            "colors": list(self.colors),
        }


_Reduced = collections.namedtuple("_Reduced", ("instance", "changelog"))
_No = collections.namedtuple("_No", ("rule", "changelog"))


class Reduced(_Reduced):
    """An equivalent, possibly smaller, instance and what changed."""

    __slots__ = ()
    is_no = False

    def __repr__(self):
        return "<{} {!r}, {} changes>".format(
            self.__class__.__name__, self.instance, len(self.changelog))


class No(_No):
    """A NO answer, with the rule that produced it."""

    __slots__ = ()
    is_no = True

    def __repr__(self):
        return "<{} by {}>".format(self.__class__.__name__, self.rule.value)


def _require_cycle_target(instance):
    if not isinstance(instance.target, cyclehom.instance.CycleTarget):
        raise cyclehom.instance.InstanceError(
            "Cycle rules need a cycle target; got {!r}".format(
                instance.target))


def apply_r1(instance):
    """Answer NO if the graph has an odd cycle shorter than the target."""
    _require_cycle_target(instance)
    girth = cyclehom.graph.shortest_odd_cycle(instance.graph)
    if girth is not None and girth <= 2 * instance.target.k - 1:
        log.debug("R1: odd cycle of length %s", girth)
        return No(Rule.R1, [])
    return Reduced(instance, [])


def discover_conflicting_cycle(instance, cycle, vertex):
    """Find a short odd cycle through an edge of the precoloured cycle.

    If ``vertex`` is at the same distance ``l <= k`` from ``c_i`` and
    ``c_{i+1}``, two shortest paths from ``vertex`` (taken from one
    breadth-first search tree) together with the edge ``c_i c_{i+1}``
    close an odd cycle of length at most ``2k + 1``.

    :param cycle: live vertices ``c_0 .. c_2k`` of the precoloured cycle.

    :returns: the cycle as a vertex list running from ``c_i`` to
        ``c_{i+1}``, or ``None``.
    """
    if vertex in cycle:
        return None
    k = instance.target.k
    table = cyclehom.graph.bfs_distances(instance.graph, vertex)
    parents = None
    for index, first in enumerate(cycle):
        second = cycle[(index + 1) % len(cycle)]
        distance = table.distance(first)
        if distance > k or distance != table.distance(second):
            continue
        if parents is None:
            parents = cyclehom.graph.bfs_parents(instance.graph, vertex)
        to_first = cyclehom.graph.tree_path(parents, vertex, first)
        to_second = cyclehom.graph.tree_path(parents, vertex, second)
        split = 0
        while to_first[split + 1] == to_second[split + 1]:
            split += 1
        return list(reversed(to_first[split:])) + to_second[split + 1:]
    return None


def _validate_cycle(instance, cycle):
    size = instance.target.size
    if len(cycle) != size or len(set(cycle)) != size:
        raise cyclehom.instance.InstanceError(
            "{} is not a {}-cycle".format(list(cycle), size))
    for index, vertex in enumerate(cycle):
        if not instance.graph.has_edge(vertex, cycle[(index + 1) % size]):
            raise cyclehom.instance.InstanceError(
                "{} is not a cycle of the graph".format(list(cycle)))


def apply_r2(instance, cycle_a, cycle_b):
    """Glue two ``(2k + 1)``-cycles sharing ``c_0`` and one more vertex.

    With ``c_i = c'_j``: if ``i = j`` every ``c_l`` is identified with
    ``c'_l``; if ``i = -j`` every ``c_l`` is identified with ``c'_{-l}``;
    otherwise the instance is NO.

    :raises cyclehom.instance.InstanceError: if the sequences are not
        ``(2k + 1)``-cycles sharing ``c_0`` and another vertex.
    """
    _require_cycle_target(instance)
    _validate_cycle(instance, cycle_a)
    _validate_cycle(instance, cycle_b)
    size = instance.target.size
    if cycle_a[0] != cycle_b[0]:
        raise cyclehom.instance.InstanceError(
            "Cycles must start at the same vertex")
    shared = [(i, list(cycle_b).index(vertex))
              for i, vertex in enumerate(cycle_a)
              if i != 0 and vertex in cycle_b[1:]]
    if not shared:
        raise cyclehom.instance.InstanceError(
            "Cycles share no vertex besides c_0")
    i, j = shared[0]
    if i == j:
        def partner(index):
            return index
    elif (i + j) % size == 0:
        def partner(index):
            return (size - index) % size
    else:
        log.debug("R2: c_%s = c'_%s cannot be realised", i, j)
        return No(Rule.R2, [])
    current = instance
    changes = []
    for index in six.moves.range(1, size):
        survivor = current.graph.find(cycle_a[index])
        merged = current.graph.find(cycle_b[partner(index)])
        if survivor == merged:
            continue
        try:
            current = current.identify(survivor, merged)
        except cyclehom.graph.AdjacentIdentification:
            log.debug("R2: %s and %s are adjacent", survivor, merged)
            return No(Rule.R2, changes)
        changes.append(Change(Rule.R2, (survivor, merged), ()))
    log.debug("R2: %s identifications", len(changes))
    return Reduced(current, changes)


def apply_r3(instance):
    """Make every list arc consistent.

    Stops early once some list is empty; (R4) reports that.
    """
    target = instance.target
    graph = instance.graph
    lists = dict(instance.lists.items())
    queue = collections.deque(
        arc for u, v in graph.edges for arc in ((u, v), (v, u)))
    queued = set(queue)
    removed = collections.defaultdict(list)
    while queue:
        u, v = arc = queue.popleft()
        queued.discard(arc)
        support = frozenset()
        for color in lists[v]:
            support |= target.neighbors(color)
        dead = lists[u] - support
        if not dead:
            continue
        lists[u] = lists[u] - dead
        removed[u].extend(sorted(dead))
        if not lists[u]:
            break
        for neighbor in graph.neighbors(u):
            if neighbor != v and (neighbor, u) not in queued:
                queue.append((neighbor, u))
                queued.add((neighbor, u))
    if not removed:
        return Reduced(instance, [])
    changes = [Change(Rule.R3, (vertex,), tuple(colors))
               for vertex, colors in sorted(six.iteritems(removed))]
    log.debug("R3: %s lists shrank", len(changes))
    return Reduced(instance.with_lists(
        {vertex: lists[vertex] for vertex in removed}), changes)


def apply_r4(instance):
    """Answer NO if some list is empty."""
    for vertex, colors in instance.lists.items():
        if not colors:
            log.debug("R4: empty list at %s", vertex)
            return No(Rule.R4, [])
    return Reduced(instance, [])


def _dominated(instance, lists, vertex, x, y):
    neighbors = instance.target.neighbors
    return all(neighbors(x) & lists[u] <= neighbors(y) & lists[u]
               for u in instance.graph.neighbors(vertex))


def apply_r5(instance):
    """Remove dominated colours.

    Colour ``x`` of ``L(v)`` is dominated by ``y`` if on every neighbour
    ``u`` of ``v`` the neighbours of ``x`` in ``L(u)`` are also neighbours
    of ``y``. Of two mutually dominated colours the smaller is removed.
    """
    lists = dict(instance.lists.items())
    changes = []
    for vertex in instance.vertices:
        removed = []
        while len(lists[vertex]) > 1:
            colors = sorted(lists[vertex])
            victim = next((x for x in colors for y in colors if x != y
                           and _dominated(instance, lists, vertex, x, y)),
                          None)
            if victim is None:
                break
            lists[vertex] = lists[vertex] - {victim}
            removed.append(victim)
        if removed:
            changes.append(Change(Rule.R5, (vertex,), tuple(removed)))
    if not changes:
        return Reduced(instance, [])
    log.debug("R5: %s lists shrank", len(changes))
    return Reduced(instance.with_lists(
        {change.vertices[0]: lists[change.vertices[0]]
         for change in changes}), changes)


def apply_r6(instance):
    """Identify vertices sharing a singleton list.

    The smallest vertex of each group survives. Adjacent vertices with
    the same singleton list mean NO.
    """
    groups = collections.defaultdict(list)
    for vertex, colors in instance.lists.items():
        if len(colors) == 1:
            groups[next(iter(colors))].append(vertex)
    current = instance
    changes = []
    for color in sorted(groups):
        survivor = groups[color][0]
        for merged in groups[color][1:]:
            try:
                current = current.identify(survivor, merged)
            except cyclehom.graph.AdjacentIdentification:
                log.debug("R6: %s and %s both need %s", survivor,
                          merged, color)
                return No(Rule.R6, changes)
            changes.append(Change(Rule.R6, (survivor, merged), ()))
    if changes:
        log.debug("R6: %s identifications", len(changes))
    return Reduced(current, changes)


def arc_consistent(instance):
    """Get the arc-consistent instance, or ``None`` if a list empties."""
    outcome = apply_r3(instance)
    if apply_r4(outcome.instance).is_no:
        return None
    return outcome.instance


def _apply_cycle_rules(instance, cycle):
    size = instance.target.size
    cycle = [instance.graph.find(vertex) for vertex in cycle]
    for vertex in instance.vertices:
        found = discover_conflicting_cycle(instance, cycle, vertex)
        if found is None:
            continue
        if len(found) < size:
            log.debug("R1: discovered %s-cycle %s", len(found), found)
            return No(Rule.R1, [])
        start = cycle.index(found[0])
        log.debug("R2: %s conflicts with the precoloured cycle", found)
        return apply_r2(instance, cycle[start:] + cycle[:start], found)
    return Reduced(instance, [])


def reduce_exhaustively(instance, cycle=None):
    """Apply the rules until none changes the instance.

    Cheap rules run first. (R1) only applies to cycle targets. When a
    precoloured cycle is given, every vertex is also checked for a
    conflicting cycle through it, which feeds (R1) and (R2).

    :param cycle: optional original vertex ids ``c_0 .. c_2k`` of a
        precoloured cycle; they are resolved through identifications as
        the reduction proceeds.

    :returns: a :class:`Reduced` holding the fixpoint and the combined
        changelog, or :class:`No`.
    """
    is_cycle_target = isinstance(instance.target,
                                 cyclehom.instance.CycleTarget)
    current = instance
    changelog = []
    graph_changed = True
    while True:
        if is_cycle_target and graph_changed:
            outcome = apply_r1(current)
            if outcome.is_no:
                return No(outcome.rule, changelog)
        graph_changed = False
        outcome = apply_r3(current)
        current = outcome.instance
        changelog.extend(outcome.changelog)
        outcome = apply_r4(current)
        if outcome.is_no:
            return No(outcome.rule, changelog)
        for rule in (apply_r6, apply_r5):
            outcome = rule(current)
            changelog.extend(outcome.changelog)
            if outcome.is_no:
                return No(outcome.rule, changelog)
            if outcome.changelog:
                current = outcome.instance
                graph_changed = rule is apply_r6
                break
        else:
            if cycle is None:
                return Reduced(current, changelog)
            outcome = _apply_cycle_rules(current, cycle)
            changelog.extend(outcome.changelog)
            if outcome.is_no:
                return No(outcome.rule, changelog)
            if not outcome.changelog:
                return Reduced(current, changelog)
            current = outcome.instance
            graph_changed = True
