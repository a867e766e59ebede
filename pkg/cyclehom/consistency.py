# -*- coding: utf-8 -*-

"""Polynomial engines: 2-SAT, width-2 BCSP and list homomorphism to paths.

:func:`solve_bcsp_width2` encodes a BCSP whose lists have at most two
values into 2-SAT, one boolean per variable. :func:`solve_lhom_path`
decides list homomorphism into a path by establishing path consistency
and then fixing vertices one at a time; paths admit a conservative
majority polymorphism, which makes this complete.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import logging

import networkx as nx
import numpy as np
import six

import cyclehom.dimacs
import cyclehom.instance


log = logging.getLogger(__name__)


class ContractError(ValueError):
    """Raised when an input violates a solver's precondition."""


class TwoSatFormula(object):
    """A CNF formula whose clauses have at most two literals.

    :param int variable_count: variables are ``1 .. variable_count``.
    :param clauses: iterable of literal pairs; ``-x`` negates ``x``. A
        unit clause is written as a pair with a repeated literal.

    :raises ContractError: if a literal is zero or out of range.
    """

    def __init__(self, variable_count, clauses=()):
        self.variable_count = variable_count
        self.clauses = []
        for clause in clauses:
            clause = tuple(clause)
            if len(clause) not in (1, 2):
                raise ContractError(
                    "Clause {} does not have 1 or 2 literals".format(clause))
            if len(clause) == 1:
                clause = clause * 2
            for literal in clause:
                if literal == 0 or abs(literal) > variable_count:
                    raise ContractError(
                        "Literal {} out of range".format(literal))
            self.clauses.append(clause)

    def __repr__(self):
        return "<{} {} variables, {} clauses>".format(
            self.__class__.__name__, self.variable_count, len(self.clauses))

    def satisfied_by(self, assignment):
        def value(literal):
            return assignment[abs(literal)] == (literal > 0)
        return all(value(a) or value(b) for a, b in self.clauses)

    def to_dimacs(self):
        return cyclehom.dimacs.dumps(
            self.variable_count,
            [sorted(set(clause), key=abs) for clause in self.clauses])


def solve_twosat(formula):
    """Solve a 2-SAT formula through its implication graph.

    Each clause ``(a or b)`` contributes the implications ``-a -> b`` and
    ``-b -> a``. The formula is unsatisfiable iff some variable shares a
    strongly connected component with its negation. Otherwise a variable
    is true iff its component comes after its negation's component in a
    topological order of the condensation. Components holding positive
    literals are ordered first where the order is free, so unconstrained
    variables come out false.

    :returns: a dict of variable to bool, or ``None`` if unsatisfiable.
    """
    implications = nx.DiGraph()
    for variable in six.moves.range(1, formula.variable_count + 1):
        implications.add_node(variable)
        implications.add_node(-variable)
    for a, b in formula.clauses:
        implications.add_edge(-a, b)
        implications.add_edge(-b, a)
    condensation = nx.condensation(implications)
    component = condensation.graph["mapping"]
    for variable in six.moves.range(1, formula.variable_count + 1):
        if component[variable] == component[-variable]:
            return None

    def preference(node):
        return min((0 if literal > 0 else 1, abs(literal))
                   for literal in condensation.nodes[node]["members"])

    position = {node: index for index, node in enumerate(
        nx.lexicographical_topological_sort(condensation, key=preference))}
    return {variable: position[component[variable]]
            > position[component[-variable]]
            for variable in six.moves.range(1, formula.variable_count + 1)}


def encode_bcsp(bcsp):
    """Encode a width-2 BCSP as 2-SAT.

    The boolean of a variable with list ``{a, b}``, ``a < b``, is true
    iff the variable takes ``b``. A singleton list is pinned by a unit
    clause. Every forbidden pair of list values on a constrained pair
    becomes one 2-clause.

    :raises ContractError: if some list is empty or has more than two
        values.

    :returns: a two-item tuple of the :class:`TwoSatFormula` and a
        function decoding a boolean assignment into BCSP values.
    """
    index = {}
    values = {}
    for position, variable in enumerate(bcsp.variables, 1):
        list_ = sorted(bcsp.lists[variable])
        if not 1 <= len(list_) <= 2:
            raise ContractError(
                "List of {} must have 1 or 2 values; got {}".format(
                    variable, list_))
        index[variable] = position
        values[variable] = list_

    def literal(variable, value):
        if len(values[variable]) == 2 and value == values[variable][1]:
            return index[variable]
        return -index[variable]

    clauses = []
    for variable in bcsp.variables:
        if len(values[variable]) == 1:
            clauses.append((-index[variable], -index[variable]))
    for u, v in bcsp.constrained_pairs():
        allowed = bcsp.allowed(u, v)
        for a in values[u]:
            for b in values[v]:
                if (a, b) not in allowed:
                    clauses.append((-literal(u, a), -literal(v, b)))

    def decode(assignment):
        return {variable: values[variable][
                    1 if assignment[index[variable]]
                    and len(values[variable]) == 2 else 0]
                for variable in bcsp.variables}

    return TwoSatFormula(len(index), clauses), decode


def solve_bcsp_width2(bcsp):
    """Solve a BCSP whose lists have one or two values.

    :raises ContractError: if some list is empty or too large.

    :returns: a dict of variable to value, or ``None`` if unsatisfiable.
    """
    formula, decode = encode_bcsp(bcsp)
    assignment = solve_twosat(formula)
    if assignment is None:
        return None
    return decode(assignment)


class PathTarget(object):
    """The path ``P_t`` with colours ``0 .. t - 1``.

    :raises ContractError: if ``t < 1``.
    """

    def __init__(self, t):
        if t < 1:
            raise ContractError("Path needs at least one vertex")
        self.t = t
        self.size = t
        self.colors = frozenset(six.moves.range(t))

    def __repr__(self):
        return "<{} P_{}>".format(self.__class__.__name__, self.t)

    def neighbors(self, color):
        return frozenset(neighbor for neighbor in (color - 1, color + 1)
                         if 0 <= neighbor < self.t)

    def adjacent(self, x, y):
        return abs(x - y) == 1

    @property
    def edges(self):
        return [(color, color + 1) for color in six.moves.range(self.t - 1)]


def _domains(relation):
    return np.array([np.diag(relation[position, position])
                     for position in six.moves.range(relation.shape[0])])


def _path_consistent(relation):
    """Tighten a relation network until it is path consistent.

    ``relation[u, v, a, b]`` says ``u = a, v = b`` is still allowed;
    ``relation[u, u]`` is diagonal and holds the domain of ``u``. Each
    round replaces every ``R(u, v)`` by its intersection with all
    compositions ``R(u, w) . R(w, v)``.

    :returns: the tightened relation, or ``None`` on a domain wipeout.
    """
    while True:
        weights = relation.astype(np.int32)
        composed = np.matmul(weights[:, :, np.newaxis],
                             weights[np.newaxis, :, :]) > 0
        tightened = relation & composed.all(axis=1)
        if not _domains(tightened).any(axis=1).all():
            return None
        if np.array_equal(tightened, relation):
            return tightened
        relation = tightened


def solve_lhom_path(graph, lists, path):
    """Decide list homomorphism from a graph into a path.

    :param cyclehom.graph.Graph graph: the input graph.
    :param lists: mapping of live vertex to colours of ``path``.
    :param PathTarget path: the target path.

    :returns: a :class:`cyclehom.instance.Witness` keyed by live
        vertices, or ``None``.
    """
    vertices = graph.vertices
    if not vertices:
        return cyclehom.instance.Witness()
    if any(not lists[vertex] for vertex in vertices):
        return None
    count, width = len(vertices), path.t
    position = {vertex: index for index, vertex in enumerate(vertices)}
    member = np.zeros((count, width), dtype=bool)
    for vertex in vertices:
        for color in lists[vertex]:
            member[position[vertex], color] = True
    edge = np.zeros((width, width), dtype=bool)
    for x, y in path.edges:
        edge[x, y] = edge[y, x] = True
    relation = member[:, np.newaxis, :, np.newaxis] \
        & member[np.newaxis, :, np.newaxis, :]
    for vertex in vertices:
        index = position[vertex]
        relation[index, index] = np.diag(member[index])
        for neighbor in graph.neighbors(vertex):
            relation[index, position[neighbor]] &= edge
    relation = _path_consistent(relation)
    if relation is None:
        return None
    for index in six.moves.range(count):
        for value in np.flatnonzero(np.diag(relation[index, index])):
            keep = np.zeros(width, dtype=bool)
            keep[value] = True
            trial = relation.copy()
            trial[index] &= keep[np.newaxis, :, np.newaxis]
            trial[:, index] &= keep[np.newaxis, np.newaxis, :]
            trial = _path_consistent(trial)
            if trial is not None:
                relation = trial
                break
        else:
            log.warning("Greedy fixation failed at %s after path "
                        "consistency succeeded", vertices[index])
            return None
    domains = _domains(relation)
    return cyclehom.instance.Witness(
        (vertex, int(np.flatnonzero(domains[position[vertex]])[0]))
        for vertex in vertices)
