# -*- coding: utf-8 -*-

"""Solvers for list homomorphism on bounded-diameter graphs.

Every solver derives from :class:`BaseSolver`, which splits the input
into connected components, checks each against the solver's diameter
bound, solves them independently and verifies the combined witness
against the input before returning it.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import functools
import logging

import monotonic

import cyclehom.graph
import cyclehom.instance
import cyclehom.oracle
import cyclehom.reductions


log = logging.getLogger(__name__)


class SolverError(Exception):
    """Base exception for all solver errors."""


class DiameterTooLarge(SolverError):
    """Raised when a component is outside a solver's diameter bound."""

    def __init__(self, diameter, bound):
        super(DiameterTooLarge, self).__init__(
            "Component has diameter {}, solver accepts at most {}".format(
                diameter, bound))
        self.diameter = diameter
        self.bound = bound


class StructuralAssertionFailed(SolverError):
    """Raised when a proven structural property does not hold.

    This always indicates a bug, never a property of the input.
    """


class PreconditionViolated(SolverError):
    """Raised when a sub-solver is called outside its precondition."""


class UnsupportedInstance(SolverError):
    """Raised for targets or parameters a solver does not handle."""


class SolverStats(object):
    """Counters collected while solving.

    :ivar int guesses_tried: precolourings or anchorings attempted.
    :ivar int nodes_expanded: recursion tree nodes visited.
    :ivar root_mu: list budget after the first root reduction.
    :ivar int reductions: changelog entries over all reductions.
    :ivar float elapsed: seconds spent in :meth:`BaseSolver.solve`.
    """

    def __init__(self):
        self.guesses_tried = 0
        self.nodes_expanded = 0
        self.root_mu = None
        self.reductions = 0
        self.elapsed = 0.0

    def __repr__(self):
        return "<{} {}>".format(self.__class__.__name__, self.as_dict())

    def as_dict(self):
        return {
            "guesses_tried": self.guesses_tried,
            "nodes_expanded": self.nodes_expanded,
            "root_mu": self.root_mu,
            "reductions": self.reductions,
            "elapsed": self.elapsed,
        }


class BaseSolver(object):
    """Base class for component-wise list homomorphism solvers.

    Subclasses implement :meth:`solve_connected` and may override
    :meth:`check_instance` and :meth:`max_diameter`.

    .. code-block:: python

        solver = cyclehom.solvers.poly.PolySolver()
        witness = solver.solve(instance)
        if witness is None:
            ...  # NO
        solver.stats.guesses_tried

    :ivar name: short name used in reports.
    :ivar stats: the :class:`SolverStats` being filled in.
    """

    name = None

    def __init__(self, stats=None):
        self.stats = SolverStats() if stats is None else stats

    def __repr__(self):
        return "<{} {}>".format(self.__class__.__name__, self.name)

    def _timed(function):
        # Accumulate wall time of the wrapped call into stats.

        @functools.wraps(function)
        def wrapper(self, *args, **kwargs):
            start = monotonic.monotonic()
            try:
                return function(self, *args, **kwargs)
            finally:
                self.stats.elapsed += monotonic.monotonic() - start

        return wrapper

    def check_instance(self, instance):
        """Reject instances the solver cannot handle.

        :raises UnsupportedInstance: if the target is not supported.
        """

    def max_diameter(self, instance):
        """Get the largest component diameter accepted, or ``None``."""
        return None

    def reduce(self, instance, cycle=None):
        """Reduce exhaustively, counting the changes."""
        outcome = cyclehom.reductions.reduce_exhaustively(instance, cycle)
        self.stats.reductions += len(outcome.changelog)
        return outcome

    @_timed
    def solve(self, instance):
        """Decide an instance.

        :raises DiameterTooLarge: if some component is too wide.
        :raises StructuralAssertionFailed: if the produced witness does
            not verify.

        :returns: a :class:`cyclehom.instance.Witness` over the original
            vertices, or ``None`` for NO.
        """
        self.check_instance(instance)
        components = instance.components()
        bound = self.max_diameter(instance)
        if bound is not None:
            for component in components:
                width = cyclehom.graph.diameter(component.graph)
                if width > bound:
                    raise DiameterTooLarge(width, bound)
        witness = cyclehom.instance.Witness()
        for component in components:
            found = self.solve_connected(component)
            if found is None:
                log.debug("%s: component of %s vertices is NO",
                          self.name, component.graph.order)
                return None
            witness.update(found)
        if not cyclehom.oracle.verify_instance(instance, witness):
            raise StructuralAssertionFailed(
                "{} produced a witness that does not verify".format(
                    self.name))
        return witness

    def solve_connected(self, instance):
        """Decide a connected instance.

        :returns: a witness over the original vertices of the component,
            or ``None``.
        """
        raise NotImplementedError

    del _timed
