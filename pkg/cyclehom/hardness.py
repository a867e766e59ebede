# -*- coding: utf-8 -*-

"""Hard instances of ``Hom(C_{2k+1})`` built from 3-CNF formulas.

The gadget graph of a formula maps to ``C_{2k+1}`` iff the formula is
satisfiable, and every vertex is within ``k + 1`` of the base cycle
vertex ``v1``. Vertices carry landmark names so tests and the CLI can
address them:

* ``v0 .. v{2k}``: the base cycle.
* ``a{j}``, ``b{j}``, ``c{j}.{l}``: the cycle of clause ``j``.
* ``x{i}.{l}``: the cycle of variable ``i``; ``x{i}.0`` is ``v0``.
* ``p{j}.{position}.{t}``: the ``t``-th vertex of the connector path
  from clause ``j`` to the variable at ``position`` (0, 1 or 2).

Clauses and variables are numbered from 1, as in DIMACS.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import collections
import itertools
import logging

import six

import cyclehom.dimacs
import cyclehom.graph
import cyclehom.instance
import cyclehom.reductions


log = logging.getLogger(__name__)


class MalformedFormula(ValueError):
    """Raised for formulas the gadget cannot be built from."""


class CnfFormula(object):
    """A 3-CNF formula.

    :param int variable_count: variables are ``1 .. variable_count``.
    :param clauses: iterable of literal triples; ``-x`` negates ``x``.
        Literal order within a clause is kept.

    :raises MalformedFormula: if a clause does not have exactly three
        literals over distinct, in-range variables.
    """

    def __init__(self, variable_count, clauses):
        self.variable_count = variable_count
        self.clauses = []
        for clause in clauses:
            clause = tuple(clause)
            if len(clause) != 3:
                raise MalformedFormula(
                    "Clause {} does not have 3 literals".format(clause))
            variables = [abs(literal) for literal in clause]
            if len(set(variables)) != 3:
                raise MalformedFormula(
                    "Clause {} repeats a variable".format(clause))
            for variable in variables:
                if not 1 <= variable <= variable_count:
                    raise MalformedFormula(
                        "Variable {} out of range".format(variable))
            self.clauses.append(clause)

    def __repr__(self):
        return "<{} {} variables, {} clauses>".format(
            self.__class__.__name__, self.variable_count, len(self.clauses))

    @classmethod
    def from_dimacs(cls, text):
        """Parse a formula from DIMACS CNF text.

        :raises cyclehom.dimacs.DimacsError: if the text does not parse.
        :raises MalformedFormula: if a clause is not a 3-clause.
        """
        variable_count, clauses = cyclehom.dimacs.loads(text)
        return cls(variable_count, clauses)

    def to_dimacs(self):
        return cyclehom.dimacs.dumps(self.variable_count, self.clauses)

    def satisfied_by(self, assignment):
        """Check an assignment mapping variable to bool."""
        return all(any(assignment[abs(literal)] == (literal > 0)
                       for literal in clause) for clause in self.clauses)

    def satisfiable(self):
        """Decide satisfiability by enumerating every assignment."""
        variables = six.moves.range(1, self.variable_count + 1)
        for values in itertools.product((False, True),
                                        repeat=self.variable_count):
            if self.satisfied_by(dict(zip(variables, values))):
                return True
        return False


_GadgetGraph = collections.namedtuple(
    "_GadgetGraph", ("graph", "landmarks", "k"))


class GadgetGraph(_GadgetGraph):
    """A gadget graph with its landmark vertex names.

    :ivar graph: the :class:`cyclehom.graph.Graph`.
    :ivar dict landmarks: landmark name to vertex id.
    :ivar int k: cycle parameter of the target.
    """

    __slots__ = ()

    def __repr__(self):
        return "<{} {} vertices, k = {}>".format(
            self.__class__.__name__, self.graph.vertex_count, self.k)

    def __getitem__(self, name):
        if isinstance(name, six.string_types):
            return self.landmarks[name]
        return super(GadgetGraph, self).__getitem__(name)

    def instance(self):
        """Get the gadget as an instance with full lists."""
        return cyclehom.instance.LHomInstance(
            self.graph, cyclehom.instance.CycleTarget(self.k))


def expected_vertex_count(variable_count, clause_count, k):
    """Get the number of gadget vertices for a formula of the given size."""
    return (1 + 2 * k + clause_count * (2 * k + 1)
            + 2 * k * variable_count + 3 * k * clause_count)


class _Builder(object):

    def __init__(self):
        self.landmarks = {}
        self.edges = []

    def vertex(self, name):
        self.landmarks[name] = len(self.landmarks)
        return self.landmarks[name]

    def cycle(self, names):
        for first, second in zip(names, names[1:] + names[:1]):
            self.edges.append((self.landmarks[first], self.landmarks[second]))

    def path(self, names):
        for first, second in zip(names, names[1:]):
            self.edges.append((self.landmarks[first], self.landmarks[second]))

    def edge(self, first, second):
        self.edges.append((self.landmarks[first], self.landmarks[second]))


def build_hardness_instance(formula, k):
    """Build the gadget graph of a 3-CNF formula.

    The clause cycle of clause ``j`` runs ``a_j, b_j, c_j^1 .. c_j^{2k-1}``
    and is joined to the base cycle by ``v1 a_j`` and ``b_j v2``. Each
    literal is attached by a connector path:

    * first literal: a path on ``2k + 1`` vertices from ``a_j`` whose
      ``l``-th vertex is adjacent to ``v_l`` for ``l = 2 .. 2k``;
    * second literal: a path on three vertices from ``b_j`` whose middle
      is adjacent to ``v1``;
    * third literal: a path on ``k + 2`` vertices from ``c_j^k`` whose
      ``(k + 1)``-th vertex is adjacent to ``v1``.

    The first path ends at ``x_i^{2k}`` for a positive literal and at
    ``x_i^1`` for a negated one; the other two paths end the other way
    round.

    :raises MalformedFormula: if ``k < 2``.
    """
    if k < 2:
        raise MalformedFormula("Gadgets need k >= 2; got {}".format(k))
    size = 2 * k + 1
    builder = _Builder()
    base = ["v{}".format(position) for position in six.moves.range(size)]
    for name in base:
        builder.vertex(name)
    builder.cycle(base)
    for j in six.moves.range(1, len(formula.clauses) + 1):
        names = ["a{}".format(j), "b{}".format(j)] + [
            "c{}.{}".format(j, position)
            for position in six.moves.range(1, 2 * k)]
        for name in names:
            builder.vertex(name)
        builder.cycle(names)
        builder.edge("v1", "a{}".format(j))
        builder.edge("b{}".format(j), "v2")
    for i in six.moves.range(1, formula.variable_count + 1):
        builder.landmarks["x{}.0".format(i)] = builder.landmarks["v0"]
        names = ["x{}.{}".format(i, position)
                 for position in six.moves.range(size)]
        for name in names[1:]:
            builder.vertex(name)
        builder.cycle(names)
    for j, clause in enumerate(formula.clauses, 1):
        for position, literal in enumerate(clause):
            _connect(builder, k, j, position, literal)
    graph = cyclehom.graph.Graph(len(set(builder.landmarks.values())),
                                 builder.edges)
    log.debug("Built %s-vertex gadget for %r", graph.vertex_count, formula)
    return GadgetGraph(graph, builder.landmarks, k)


def _connect(builder, k, j, position, literal):
    variable = abs(literal)
    positive = literal > 0
    first_end = "x{}.{}".format(variable, 2 * k)
    second_end = "x{}.1".format(variable)
    if position == 0:
        start, length, anchored = "a{}".format(j), 2 * k + 1, \
            {t: "v{}".format(t) for t in six.moves.range(2, 2 * k + 1)}
        end = first_end if positive else second_end
    elif position == 1:
        start, length, anchored = "b{}".format(j), 3, {2: "v1"}
        end = second_end if positive else first_end
    else:
        start, length, anchored = "c{}.{}".format(j, k), k + 2, {k + 1: "v1"}
        end = second_end if positive else first_end
    names = [start]
    for t in six.moves.range(2, length):
        name = "p{}.{}.{}".format(j, position, t)
        builder.vertex(name)
        names.append(name)
        if t in anchored:
            builder.edge(name, anchored[t])
    names.append(end)
    builder.path(names)


def check_radius(gadget, k=None):
    """Check that every vertex is within ``k + 1`` of ``v1``."""
    if k is None:
        k = gadget.k
    return cyclehom.graph.eccentricity(
        gadget.graph, gadget.landmarks["v1"]) <= k + 1


def forced_coloring(gadget, clause, case):
    """Propagate a precolouring of the base cycle and one clause.

    ``v_l`` gets colour ``l`` and ``(a_j, b_j)`` get ``case``; arc
    consistency then narrows every other list.

    :param int clause: clause number ``j``, from 1.
    :param case: two-item tuple of colours for ``a_j`` and ``b_j``.

    :returns: a dict of landmark name to the sorted colours left.
    """
    instance = gadget.instance()
    pinned = {gadget.landmarks["v{}".format(position)]: frozenset((position,))
              for position in six.moves.range(2 * gadget.k + 1)}
    pinned[gadget.landmarks["a{}".format(clause)]] = frozenset((case[0],))
    pinned[gadget.landmarks["b{}".format(clause)]] = frozenset((case[1],))
    outcome = cyclehom.reductions.apply_r3(instance.with_lists(pinned))
    lists = outcome.instance.lists
    return {name: sorted(lists[vertex])
            for name, vertex in six.iteritems(gadget.landmarks)}
