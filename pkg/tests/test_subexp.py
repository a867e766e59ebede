# -*- coding: utf-8 -*-

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)

import json
import math
import random

try:
    import mock
except ImportError:
    import unittest.mock as mock
import pytest

import cyclehom.graph
import cyclehom.instance
import cyclehom.oracle
import cyclehom.reductions
import cyclehom.solvers
import cyclehom.solvers.subexp
import cyclehom.testing
from cyclehom.solvers.subexp import TreeNode


def star(leaves, center_list, leaf_list):
    lists = dict((leaf, leaf_list) for leaf in range(1, leaves + 1))
    lists[0] = center_list
    return cyclehom.testing.cycle_instance(
        cyclehom.graph.Graph(leaves + 1, [(0, leaf) for leaf
                                          in range(1, leaves + 1)]),
        2, lists)


def assert_agrees_with_oracle(instance, witness):
    expected = cyclehom.oracle.brute_force_lhom(instance)
    assert (witness is None) == (expected is None)
    if witness is not None:
        assert cyclehom.oracle.verify_instance(instance, witness)


def is_yes(instance):
    return cyclehom.oracle.brute_force_lhom(instance) is not None


def random_star(seed, min_degree=1, max_degree=7, leaf_smallest=1):
    """Star on a centre with at least two colours; ``k`` alternates 2, 3.

    :returns: the instance and the depth ``k + 2``.
    """
    rng = random.Random(seed)
    k = 2 + seed % 2
    size = 2 * k + 1

    def random_list(smallest):
        return set(rng.sample(range(size), rng.randint(smallest, size)))

    degree = rng.randint(min_degree, max_degree)
    lists = dict((leaf, random_list(leaf_smallest))
                 for leaf in range(1, degree + 1))
    lists[0] = random_list(2)
    graph = cyclehom.graph.Graph(
        degree + 1, [(0, leaf) for leaf in range(1, degree + 1)])
    return cyclehom.testing.cycle_instance(graph, k, lists), k + 2


def random_small_instance(seed):
    """Tree plus at most one chord on up to five vertices, over ``C_5``."""
    rng = random.Random(seed)
    count = rng.randint(2, 5)
    edges = [(rng.randrange(vertex), vertex) for vertex in range(1, count)]
    if count > 3 and rng.random() < 0.5:
        edges.append(tuple(rng.sample(range(count), 2)))
    lists = dict((vertex, set(rng.sample(range(5), rng.randint(1, 3))))
                 for vertex in range(count))
    lists[0] = set(rng.sample(range(5), rng.randint(2, 3)))
    return cyclehom.testing.cycle_instance(
        cyclehom.graph.Graph(count, edges), 2, lists)


def centre_edge_leaf(seed):
    """Leaf instance around an edge of two type-(2, 2) vertices.

    Vertex 0 has list ``{i-2, i, i+2}`` and vertex 1 has list
    ``{i-1, i+1, i+3}``. Their other neighbours carry the two-colour
    lists a reduced leaf allows next to such vertices; a few more
    two-colour vertices hang off those.
    """
    rng = random.Random(seed)
    k = 2 + seed % 2
    target = cyclehom.instance.CycleTarget(k)
    add = target.add
    i = rng.randrange(target.size)
    lists = {0: {add(i, -2), i, add(i, 2)},
             1: {add(i, -1), add(i, 1), add(i, 3)}}
    edges = [(0, 1)]
    for anchor, centre in ((0, i), (1, add(i, 1))):
        for _ in range(rng.randint(1, 2)):
            first, second = rng.choice([(-1, 1), (-3, 1), (-1, 3)])
            lists[len(lists)] = {add(centre, first), add(centre, second)}
            edges.append((anchor, len(lists) - 1))
    for _ in range(rng.randint(0, 3)):
        color = rng.randrange(target.size)
        vertex = len(lists)
        lists[vertex] = {color, add(color, rng.choice((1, 2)))}
        edges.append((rng.randrange(2, vertex), vertex))
    for _ in range(rng.randint(0, 3)):
        edges.append(tuple(rng.sample(range(2, len(lists)), 2)))
    return cyclehom.testing.cycle_instance(
        cyclehom.graph.Graph(len(lists), edges), k, lists)


def solve_leaf_components(leaf):
    witness = cyclehom.instance.Witness()
    for component in leaf.components():
        found = cyclehom.solvers.subexp.solve_leaf(component)
        if found is None:
            return None
        witness.update(found)
    return witness


def test_threshold():
    assert cyclehom.solvers.subexp.threshold(25, 4) \
        == pytest.approx(2.995, abs=1e-3)
    assert cyclehom.solvers.subexp.threshold(1, 4) == 0


class TestB1(object):

    def test_low_degree(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.cycle_graph(5), 2)
        assert cyclehom.solvers.subexp.choose_b1(instance, 4) is None

    def test_avoids_common_gap(self):
        instance = star(6, frozenset(range(5)), {0, 2})
        assert cyclehom.solvers.subexp.choose_b1(instance, 4) == (0, 0)

    def test_without_gaps(self):
        instance = star(6, {2, 3, 4}, {0, 1})
        assert cyclehom.solvers.subexp.choose_b1(instance, 4) == (0, 2)

    def test_branch(self):
        instance = star(6, {2, 3, 4}, {0, 1})
        fixed, removed = cyclehom.solvers.subexp.branch_b1(instance, 0, 2)
        assert fixed.lists[0] == {2}
        assert removed.lists[0] == {3, 4}
        assert instance.lists[0] == {2, 3, 4}

    @pytest.oracle_sweep(300)
    def test_progress(self, seed):
        instance, depth = random_star(seed, min_degree=4, leaf_smallest=2)
        mu = instance.lists.budget
        vertex, color = cyclehom.solvers.subexp.choose_b1(instance, depth)
        assert vertex == 0
        assert color in instance.lists[0]
        fixed, removed = cyclehom.solvers.subexp.branch_b1(
            instance, vertex, color)
        assert fixed.lists.budget < mu
        assert removed.lists.budget < mu
        assert is_yes(instance) == (is_yes(fixed) or is_yes(removed))
        narrowed = cyclehom.reductions.arc_consistent(fixed)
        if narrowed is None:
            return
        shrunk = [leaf for leaf in instance.graph.neighbors(0)
                  if len(narrowed.lists[leaf]) < len(instance.lists[leaf])]
        size = instance.target.size
        bound = cyclehom.solvers.subexp.threshold(mu, depth)
        assert len(shrunk) >= max(1, math.ceil(bound / size))
        assert len(shrunk) >= len(instance.graph.neighbors(0)) / 2


class TestB2(object):

    def test_region(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(4), 2)
        assert cyclehom.solvers.subexp.b2_region(instance, 0, 3) == [0, 1, 2]

    def test_region_skips_singletons(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(4), 2, {1: {0}})
        assert cyclehom.solvers.subexp.b2_region(instance, 0, 3) == [0]
        assert cyclehom.solvers.subexp.b2_region(instance, 1, 3) == []

    def test_children(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(2), 2, {0: {0, 2}, 1: {1, 3}})
        children = cyclehom.solvers.subexp.branch_b2(instance, 0, 2)
        assert [(child.lists[0], child.lists[1]) for child in children] == [
            ({0}, {1}), ({0}, {3}), ({2}, {1}), ({2}, {3})]

    def test_proper_children(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(2), 2, {0: {0, 2}, 1: {1, 3}})
        children = list(cyclehom.solvers.subexp.iter_b2_children(
            instance, 0, 2, proper_only=True))
        assert len(children) == 3

    def test_empty_region(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(1), 2, {0: {1}})
        assert list(cyclehom.solvers.subexp.iter_b2_children(
            instance, 0, 3)) == [instance]

    @pytest.mark.parametrize(("depth", "expected"), [(4, 6), (2, 5)])
    def test_pick_far_vertex(self, depth, expected):
        lists = dict((vertex, {vertex}) for vertex in range(5))
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                                     (0, 5), (5, 6), (6, 7)]), 2, lists)
        assert cyclehom.solvers.subexp.pick_b2_vertex(
            instance, range(5), depth) == expected

    @pytest.oracle_sweep(200)
    def test_children_cover(self, seed):
        instance = random_small_instance(seed)
        depth = 2 + seed % 2
        mu = instance.lists.budget
        region = cyclehom.solvers.subexp.b2_region(instance, 0, depth)
        assert 0 in region
        children = cyclehom.solvers.subexp.branch_b2(instance, 0, depth)
        expected_count = 1
        for member in region:
            expected_count *= len(instance.lists[member])
        assert len(children) == expected_count
        for child in children:
            assert child.lists.budget < mu
            for vertex in instance.vertices:
                if vertex in region:
                    assert len(child.lists[vertex]) == 1
                    assert child.lists[vertex] <= instance.lists[vertex]
                else:
                    assert child.lists[vertex] == instance.lists[vertex]
        answers = [is_yes(child) for child in children]
        assert any(answers) == is_yes(instance)
        proper = list(cyclehom.solvers.subexp.iter_b2_children(
            instance, 0, depth, proper_only=True))
        assert all(child in children for child in proper)
        assert any(is_yes(child) for child in proper) == is_yes(instance)
        for child, answer in zip(children, answers):
            if answer:
                assert child in proper

    def test_pick_needs_open_vertex(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(1), 2, {0: {1}})
        with pytest.raises(cyclehom.solvers.PreconditionViolated):
            cyclehom.solvers.subexp.pick_b2_vertex(instance, [0], 4)


class TestLeaf(object):

    def test_structure(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(2), 2, {0: {0, 2, 4}, 1: {1, 3}})
        cyclehom.solvers.subexp.check_leaf_structure(instance)

    def test_bad_structure(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(1), 2, {0: {0, 1, 2}})
        with pytest.raises(cyclehom.solvers.StructuralAssertionFailed):
            cyclehom.solvers.subexp.check_leaf_structure(instance)

    def test_single_center_vertex(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(1), 2, {0: {0, 2, 4}})
        witness = cyclehom.solvers.subexp.solve_leaf(instance)
        assert list(witness) == [0]
        assert witness[0] in {0, 2, 4}

    def test_two_colors(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(2), 2, {0: {0, 2}, 1: {1, 3}})
        witness = cyclehom.solvers.subexp.solve_leaf(instance)
        assert cyclehom.oracle.verify_instance(instance, witness)

    def test_no(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(2), 2, {0: {0, 2}, 1: {0, 2}})
        assert cyclehom.solvers.subexp.solve_leaf(instance) is None

    def test_center_with_neighbors(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(3), 2,
            {0: {1, 3}, 1: {0, 2, 4}, 2: {3, 4}})
        witness = cyclehom.solvers.subexp.solve_leaf(instance)
        assert cyclehom.oracle.verify_instance(instance, witness)

    def test_empty_list(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(2), 2, {0: set(), 1: {1, 3}})
        assert cyclehom.solvers.subexp.solve_leaf(instance) is None

    def test_disconnected(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(2), 2, {0: {1}, 1: {1}})
        with pytest.raises(cyclehom.solvers.PreconditionViolated):
            cyclehom.solvers.subexp.solve_leaf(instance)

    def test_large_list(self):
        instance = cyclehom.testing.cycle_instance(cyclehom.graph.Graph(1), 2)
        with pytest.raises(cyclehom.solvers.PreconditionViolated):
            cyclehom.solvers.subexp.solve_leaf(instance)

    def test_adjacent_centres(self):
        # Centres 0 and 1; on neighbours 2 and 3 the pair (2, 2) leaves
        # no colours for the edge 0 1.
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(4, [(0, 1), (0, 2), (1, 3)]), 2,
            {0: {0, 2, 3}, 1: {1, 3, 4}, 2: {1, 2}, 3: {2, 3}})
        assert cyclehom.reductions.arc_consistent(instance) == instance
        remove_pairs = cyclehom.instance.BcspInstance.remove_pairs
        with mock.patch.object(cyclehom.instance.BcspInstance,
                               "remove_pairs", autospec=True,
                               side_effect=remove_pairs) as spy:
            witness = cyclehom.solvers.subexp.solve_leaf(instance)
        assert sorted(witness) == [0, 1, 2, 3]
        assert cyclehom.oracle.verify_instance(instance, witness)
        assert (witness[2], witness[3]) != (2, 2)
        removed = [set(call[0][3]) for call in spy.call_args_list
                   if call[0][1:3] == (2, 3)]
        assert removed == [{(2, 2), (4, 4), (3, 3)}]

    @pytest.oracle_sweep(500)
    def test_adjacent_centres_random(self, seed):
        instance = centre_edge_leaf(seed)
        expected = cyclehom.oracle.brute_force_lhom(instance)
        if cyclehom.reductions.apply_r1(instance).is_no:
            assert expected is None
            return
        reduced = cyclehom.reductions.arc_consistent(instance)
        if reduced is None:
            assert expected is None
            return
        witness = cyclehom.solvers.subexp.solve_leaf(reduced)
        assert (witness is None) == (expected is None)
        if witness is not None:
            assert cyclehom.oracle.verify_instance(instance, witness)


class TestRecursionTree(object):

    def test_singleton_leaf(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(2), 2, {0: {0}, 1: {1}})
        tree = []
        leaves = list(cyclehom.solvers.subexp.recursion_tree(
            instance, [0], 4, tree=tree))
        assert leaves == [instance]
        assert tree == [TreeNode(0, None, "root", 0, "leaf")]

    def test_ids_continue(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(1), 2, {0: {0}})
        tree = [TreeNode(0, None, "root", 0, "leaf")]
        list(cyclehom.solvers.subexp.recursion_tree(
            instance, [0], 4, tree=tree))
        assert [node.id for node in tree] == [0, 1]

    def test_recorded_by_solver(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.cycle_graph(5), 2)
        solver = cyclehom.solvers.subexp.SubexpSolver(record_tree=True)
        assert solver.solve(instance) is not None
        assert solver.tree == [TreeNode(0, None, "root", 0, "leaf")]
        assert solver.stats.nodes_expanded == 1
        assert json.loads(cyclehom.solvers.subexp.dump_tree(solver.tree)) \
            == [{"id": 0, "parent": None, "rule": "root", "mu": 0,
                 "kind": "leaf"}]

    def test_not_recorded_by_default(self):
        assert cyclehom.solvers.subexp.SubexpSolver().tree is None

    def test_b1_root(self):
        instance = star(6, frozenset(range(5)), {0, 2})
        tree = []
        leaves = list(cyclehom.solvers.subexp.recursion_tree(
            instance, [], 4, tree=tree))
        assert tree == [
            TreeNode(0, None, "root", 17, "b1"),
            TreeNode(1, 0, "B1-fix", None, "no"),
            TreeNode(2, 0, "B1-remove", 0, "leaf"),
        ]
        assert len(leaves) == 1
        assert cyclehom.oracle.verify_instance(
            instance, solve_leaf_components(leaves[0]))

    def test_b2_root(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(2), 2, {0: {0, 2}, 1: {1, 3}})
        tree = []
        leaves = list(cyclehom.solvers.subexp.recursion_tree(
            instance, [], 4, tree=tree))
        assert tree == [TreeNode(0, None, "root", 4, "b2")] + [
            TreeNode(node, 0, "B2", 0, "leaf") for node in (1, 2, 3)]
        assert [(leaf.lists[0], leaf.lists[1]) for leaf in leaves] == [
            ({0}, {1}), ({2}, {1}), ({2}, {3})]

    def test_b2_root_no(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(3), 2,
            {0: {0, 2}, 1: {1, 3}, 2: {1}})
        tree = []
        leaves = list(cyclehom.solvers.subexp.recursion_tree(
            instance, [], 4, tree=tree))
        assert leaves == []
        assert [node.kind for node in tree] == ["b2", "no", "no", "no"]
        assert cyclehom.oracle.brute_force_lhom(instance) is None

    @pytest.oracle_sweep(300)
    def test_soundness(self, seed):
        instance, depth = random_star(seed)
        tree = []
        leaves = list(cyclehom.solvers.subexp.recursion_tree(
            instance, [], depth, tree=tree))
        nodes = json.loads(cyclehom.solvers.subexp.dump_tree(tree))
        assert [node["id"] for node in nodes] == list(range(len(nodes)))
        assert nodes[0]["parent"] is None
        assert nodes[0]["kind"] in ("b1", "b2")
        assert sum(node["kind"] == "leaf" for node in nodes) == len(leaves)
        for node in nodes[1:]:
            parent = nodes[node["parent"]]
            assert parent["kind"] in ("b1", "b2")
            if node["mu"] is not None:
                assert node["mu"] < parent["mu"]
        answers = []
        for leaf in leaves:
            cyclehom.solvers.subexp.check_leaf_structure(leaf)
            witness = solve_leaf_components(leaf)
            assert (witness is None) == (not is_yes(leaf))
            if witness is not None:
                assert cyclehom.oracle.verify_instance(instance, witness)
            answers.append(witness is not None)
        assert any(answers) == is_yes(instance)

    @pytest.oracle_sweep(100)
    def test_tree_shape(self, seed):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(
                10, p=0.3, k=2, min_diameter=3, max_diameter=4,
                density=0.8, seed=seed))
        solver = cyclehom.solvers.subexp.SubexpSolver(record_tree=True)
        solver.solve(instance)
        for position, node in enumerate(solver.tree):
            assert node.id == position
            assert node.parent is None or node.parent < node.id
            assert node.kind in ("b1", "b2", "leaf", "no")
            assert (node.mu is None) == (node.kind == "no")


class TestSubexpSolver(object):

    def test_diameter_too_large(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(6), 2)
        with pytest.raises(cyclehom.solvers.DiameterTooLarge):
            cyclehom.solvers.subexp.solve_diameter_k_plus_2(instance)

    def test_c5_solver_needs_k2(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.graph.Graph(1), 3)
        with pytest.raises(cyclehom.solvers.UnsupportedInstance):
            cyclehom.solvers.subexp.solve_c5_diameter_5(instance)

    def test_c5_solver_accepts_diameter_5(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.path_graph(6), 2, {0: {0}, 5: {1}})
        witness = cyclehom.solvers.subexp.solve_c5_diameter_5(instance)
        assert cyclehom.oracle.verify_instance(instance, witness)

    def test_nine_cycle(self):
        instance = cyclehom.testing.cycle_instance(
            cyclehom.testing.cycle_graph(9), 2, {0: {0}, 3: {0}})
        assert_agrees_with_oracle(
            instance, cyclehom.solvers.subexp.solve_diameter_k_plus_2(
                instance))

    @pytest.oracle_sweep(300)
    def test_random_c5(self, seed):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(
                9, p=0.3, k=2, max_diameter=4, density=0.7, seed=seed,
                planted=bool(seed % 2), noise=0.1))
        assert_agrees_with_oracle(
            instance, cyclehom.solvers.subexp.solve_diameter_k_plus_2(
                instance))

    @pytest.oracle_sweep(100)
    def test_random_c7(self, seed):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(
                9, p=0.3, k=3, max_diameter=5, density=0.6, seed=seed,
                planted=bool(seed % 2), noise=0.05))
        assert_agrees_with_oracle(
            instance, cyclehom.solvers.subexp.solve_diameter_k_plus_2(
                instance))

    @pytest.oracle_sweep(200)
    def test_random_c5_diameter_5(self, seed):
        instance = cyclehom.oracle.random_instance(
            cyclehom.oracle.GeneratorConfig(
                10, p=0.25, k=2, min_diameter=4, max_diameter=5,
                density=0.7, seed=seed, planted=bool(seed % 2),
                noise=0.05))
        assert_agrees_with_oracle(
            instance, cyclehom.solvers.subexp.solve_c5_diameter_5(instance))
