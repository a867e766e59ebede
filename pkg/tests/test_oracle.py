# -*- coding: utf-8 -*-

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import itertools

import hypothesis
import hypothesis.strategies as st
import pytest

import cyclehom.graph
import cyclehom.instance
import cyclehom.oracle
import cyclehom.testing


@st.composite
def small_instances(draw):
    count = draw(st.integers(0, 6))
    pairs = list(itertools.combinations(range(count), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)
                 if pairs else st.just([]))
    target = cyclehom.instance.CycleTarget(draw(st.integers(1, 3)))
    lists = {vertex: draw(st.sets(st.sampled_from(sorted(target.colors))))
             for vertex in range(count)}
    return cyclehom.instance.LHomInstance(
        cyclehom.graph.Graph(count, edges), target, lists)


def enumerate_homs(instance):
    vertices = instance.vertices
    for values in itertools.product(*(sorted(instance.lists[vertex])
                                      for vertex in vertices)):
        coloring = dict(zip(vertices, values))
        if cyclehom.oracle.verify_instance(instance, coloring):
            return True
    return False


class TestBruteForce(object):

    def test_cycle_onto_itself(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.cycle_graph(5), 2, {0: {3}})
        witness = cyclehom.oracle.brute_force_lhom(instance)
        assert witness[0] == 3
        assert cyclehom.oracle.verify_instance(instance, witness)

    def test_triangle(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.cycle_graph(3), 2)
        assert cyclehom.oracle.brute_force_lhom(instance) is None

    def test_empty_graph(self):
        instance = cyclehom.testing.cycle_instance(cyclehom.graph.Graph(0), 2)
        assert cyclehom.oracle.brute_force_lhom(instance) == {}

    def test_empty_list(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(2), 2, {1: set()})
        assert cyclehom.oracle.brute_force_lhom(instance) is None

    def test_merged_vertices_coloured(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(3), 2, {2: {4}}).identify(0, 2)
        witness = cyclehom.oracle.brute_force_lhom(instance)
        assert witness[0] == witness[2] == 4

    def test_general_target(self, petersen):
        instance = cyclehom.instance.LHomInstance(
            cyclehom.testing.cycle_graph(5), petersen)
        witness = cyclehom.oracle.brute_force_lhom(instance)
        assert cyclehom.oracle.verify_instance(instance, witness)

    def test_cap(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.cycle_graph(6), 2)
        with pytest.raises(cyclehom.oracle.CapExceeded) as excinfo:
            cyclehom.oracle.brute_force_lhom(instance, cap=5)
        assert excinfo.value.order == 6
        assert excinfo.value.cap == 5

    @pytest.mark.parametrize(("cap", "force"), [(5, True), (None, False)])
    def test_cap_overridden(self, cap, force):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.cycle_graph(6), 2)
        assert cyclehom.oracle.brute_force_lhom(
            instance, cap=cap, force=force) is not None

    @hypothesis.given(small_instances())
    def test_agrees_with_enumeration(self, instance):
        witness = cyclehom.oracle.brute_force_lhom(instance)
        assert (witness is not None) == enumerate_homs(instance)
        if witness is not None:
            assert cyclehom.oracle.verify_instance(instance, witness)


class TestVerify(object):

    def test(self, c5):
        graph = cyclehom.testing.path_graph(3)
        lists = {vertex: c5.colors for vertex in graph.vertices}
        assert cyclehom.oracle.verify_hom(
            graph, c5, lists, {0: 0, 1: 1, 2: 0})
        assert not cyclehom.oracle.verify_hom(
            graph, c5, lists, {0: 0, 1: 2, 2: 0})

    def test_missing_vertex(self, c5):
        graph = cyclehom.testing.path_graph(2)
        lists = {vertex: c5.colors for vertex in graph.vertices}
        assert not cyclehom.oracle.verify_hom(graph, c5, lists, {0: 0})

    def test_outside_list(self, c5):
        graph = cyclehom.graph.Graph(1)
        assert not cyclehom.oracle.verify_hom(graph, c5, {0: {1}}, {0: 0})


class TestRandomInstance(object):

    def test_deterministic(self):
        config = cyclehom.oracle.GeneratorConfig(10, density=0.5, seed=7)
        assert cyclehom.oracle.random_instance(config) \
            == cyclehom.oracle.random_instance(config)

    def test_defaults(self):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(6))
        assert instance.target == cyclehom.instance.CycleTarget(2)
        assert all(colors == instance.target.colors
                   for _, colors in instance.lists.items())

    @pytest.mark.parametrize("seed", range(5))
    def test_diameter_window(self, seed):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(
                10, p=0.3, min_diameter=3, max_diameter=4, seed=seed))
        assert 3 <= cyclehom.graph.diameter(instance.graph) <= 4

    @pytest.mark.parametrize("seed", range(5))
    def test_planted_is_yes(self, seed):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(
                12, p=0.6, k=3, density=0.3, seed=seed, planted=True))
        assert cyclehom.oracle.brute_force_lhom(instance) is not None

    def test_planted_general_target(self, petersen):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(
                10, p=0.7, target=petersen, density=0.2, planted=True))
        assert instance.target is petersen
        assert cyclehom.oracle.brute_force_lhom(instance) is not None

    def test_lists_refilled(self):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(20, density=0.0))
        assert all(len(colors) == 1 for _, colors in instance.lists.items())

    def test_allow_empty(self):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(5, density=0.0,
                                            allow_empty=True))
        assert all(not colors for _, colors in instance.lists.items())

    def test_timeout(self):
        with pytest.raises(cyclehom.oracle.GenerationTimeout):
            cyclehom.oracle.random_instance(cyclehom.oracle.GeneratorConfig(
                3, min_diameter=5, max_diameter=6, max_attempts=5))
