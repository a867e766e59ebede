# -*- coding: utf-8 -*-

"""Ground truth: exhaustive search, witness checking and random instances.

:func:`brute_force_lhom` is the reference every solver is compared with.
It backtracks over list-respecting assignments, branching on a vertex
with fewest remaining colours and maintaining arc consistency on bitmask
domains after every choice.
"""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import collections
import itertools
import logging
import random

import networkx as nx
import six

import cyclehom.graph
import cyclehom.instance


log = logging.getLogger(__name__)
DEFAULT_CAP = 14


class OracleError(Exception):
    """Base exception for oracle and generator errors."""


class CapExceeded(OracleError):
    """Raised when an instance is larger than the oracle's vertex cap."""

    def __init__(self, order, cap):
        super(CapExceeded, self).__init__(
            "{} vertices exceed the oracle cap of {}; force to "
            "override".format(order, cap))
        self.order = order
        self.cap = cap


class GenerationTimeout(OracleError):
    """Raised when no random graph met the requested constraints."""


def _popcount(mask):
    return bin(mask).count("1")


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


class _Search(object):

    def __init__(self, instance):
        self.vertices = instance.vertices
        self.colors = sorted(instance.target.colors)
        bit = {color: 1 << index for index, color in enumerate(self.colors)}
        self._adjacency = {
            bit[color]: sum(bit[neighbor] for neighbor
                            in instance.target.neighbors(color))
            for color in self.colors
        }
        self._support = {}
        index = {vertex: position
                 for position, vertex in enumerate(self.vertices)}
        self.neighbors = [[index[neighbor] for neighbor
                           in instance.graph.neighbors(vertex)]
                          for vertex in self.vertices]
        self.domains = [sum(bit[color] for color in instance.lists[vertex])
                        for vertex in self.vertices]
        self.nodes = 0

    def support(self, mask):
        if mask not in self._support:
            support = 0
            for low in _bits(mask):
                support |= self._adjacency[low]
            self._support[mask] = support
        return self._support[mask]

    def propagate(self, domains, arcs):
        queue = collections.deque(arcs)
        while queue:
            x, y = queue.popleft()
            narrowed = domains[x] & self.support(domains[y])
            if narrowed == domains[x]:
                continue
            if not narrowed:
                return False
            domains[x] = narrowed
            queue.extend((z, x) for z in self.neighbors[x] if z != y)
        return True

    def search(self, domains):
        self.nodes += 1
        open_ = [position for position, domain in enumerate(domains)
                 if domain & (domain - 1)]
        if not open_:
            return domains
        chosen = min(open_, key=lambda position: (
            _popcount(domains[position]), position))
        for low in _bits(domains[chosen]):
            trial = list(domains)
            trial[chosen] = low
            if self.propagate(trial, [(neighbor, chosen) for neighbor
                                      in self.neighbors[chosen]]):
                found = self.search(trial)
                if found is not None:
                    return found
        return None

    def run(self):
        domains = list(self.domains)
        if not all(domains):
            return None
        arcs = [(x, y) for x, neighbors in enumerate(self.neighbors)
                for y in neighbors]
        if not self.propagate(domains, arcs):
            return None
        found = self.search(domains)
        if found is None:
            return None
        return {vertex: self.colors[found[position].bit_length() - 1]
                for position, vertex in enumerate(self.vertices)}


def brute_force_lhom(instance, cap=DEFAULT_CAP, force=False):
    """Decide a list-homomorphism instance exhaustively.

    :param instance: a :class:`cyclehom.instance.LHomInstance`.
    :param cap: largest number of live vertices accepted, or ``None``
        for no limit.
    :param bool force: ignore the cap.

    :raises CapExceeded: if the instance is over the cap.

    :returns: a :class:`cyclehom.instance.Witness`, or ``None``.
    """
    order = instance.graph.order
    if cap is not None and order > cap and not force:
        raise CapExceeded(order, cap)
    search = _Search(instance)
    coloring = search.run()
    log.debug("Oracle explored %s nodes on %s vertices", search.nodes, order)
    if coloring is None:
        return None
    return instance.witness(coloring)


def verify_hom(graph, target, lists, witness):
    """Check that a witness is a list homomorphism.

    :returns: ``True`` iff every live vertex is coloured from its list
        and every edge maps to a target edge.
    """
    for vertex in graph.vertices:
        if vertex not in witness or witness[vertex] not in lists[vertex]:
            return False
    return all(target.adjacent(witness[u], witness[v])
               for u, v in graph.edges)


def verify_instance(instance, witness):
    """Check a witness against an instance."""
    return verify_hom(instance.graph, instance.target,
                      instance.lists, witness)


_GeneratorConfig = collections.namedtuple("_GeneratorConfig", (
    "n",
    "p",
    "k",
    "target",
    "min_diameter",
    "max_diameter",
    "density",
    "seed",
    "planted",
    "noise",
    "allow_empty",
    "max_attempts",
))


class GeneratorConfig(_GeneratorConfig):
    """Parameters for :func:`random_instance`.

    :ivar int n: number of vertices.
    :ivar float p: edge probability.
    :ivar int k: cycle parameter, used unless ``target`` is given.
    :ivar target: optional :class:`cyclehom.instance.GeneralTarget`.
    :ivar int min_diameter: smallest accepted diameter.
    :ivar max_diameter: largest accepted diameter; ``None`` accepts any,
        disconnected graphs included.
    :ivar float density: probability of each colour joining a list.
    :ivar int seed: seed of the only random source used.
    :ivar bool planted: sample a blow-up of the target, so the graph maps
        to it, with each vertex's planted colour kept in its list.
    :ivar float noise: probability of extra edges outside the blow-up.
    :ivar bool allow_empty: keep empty lists instead of refilling them
        with one random colour.
    :ivar int max_attempts: rejection-sampling budget.
    """

    __slots__ = ()

    def __new__(cls, n, p=0.3, k=2, target=None, min_diameter=0,
                max_diameter=None, density=1.0, seed=0, planted=False,
                noise=0.0, allow_empty=False, max_attempts=1000):
        return super(GeneratorConfig, cls).__new__(
            cls, n, p, k, target, min_diameter, max_diameter, density,
            seed, planted, noise, allow_empty, max_attempts)

    @property
    def target_graph(self):
        if self.target is not None:
            return self.target
        return cyclehom.instance.CycleTarget(self.k)


def _sample_graph(config, target, rng):
    if not config.planted:
        sampled = nx.gnp_random_graph(
            config.n, config.p, seed=rng.randrange(2 ** 32))
        return cyclehom.graph.Graph(config.n, sampled.edges()), None
    colors = sorted(target.colors)
    planted = [rng.choice(colors) for _ in six.moves.range(config.n)]
    edges = []
    for u, v in itertools.combinations(six.moves.range(config.n), 2):
        if target.adjacent(planted[u], planted[v]):
            if rng.random() < config.p:
                edges.append((u, v))
        elif rng.random() < config.noise:
            edges.append((u, v))
    return cyclehom.graph.Graph(config.n, edges), planted


def _sample_lists(config, target, graph, planted, rng):
    colors = sorted(target.colors)
    lists = {}
    for vertex in graph.vertices:
        if config.density >= 1:
            lists[vertex] = target.colors
            continue
        chosen = {color for color in colors if rng.random() < config.density}
        if planted is not None:
            chosen.add(planted[vertex])
        if not chosen and not config.allow_empty:
            chosen.add(rng.choice(colors))
        lists[vertex] = frozenset(chosen)
    return lists


def random_instance(config):
    """Sample a random instance.

    Graphs are rejection sampled until their diameter falls inside the
    configured window; lists are then sampled per colour.

    :raises GenerationTimeout: after ``max_attempts`` rejected graphs.
    """
    rng = random.Random(config.seed)
    target = config.target_graph
    for attempt in six.moves.range(config.max_attempts):
        graph, planted = _sample_graph(config, target, rng)
        diameter = cyclehom.graph.diameter(graph)
        if diameter < config.min_diameter:
            continue
        if config.max_diameter is not None \
                and diameter > config.max_diameter:
            continue
        log.debug("Sampled diameter-%s graph after %s attempts",
                  diameter, attempt + 1)
        return cyclehom.instance.LHomInstance(
            graph, target,
            _sample_lists(config, target, graph, planted, rng))
    raise GenerationTimeout(
        "No graph with diameter in [{}, {}] after {} attempts".format(
            config.min_diameter, config.max_diameter, config.max_attempts))
