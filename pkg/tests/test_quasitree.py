"""Resolution tree, quasi-tree census, activities, gradings, Jones expansion."""

import random
from fractions import Fraction

import pytest

from ribbonkh import (LaurentPoly, RibbonGraphError, activities,
                      build_reduced_complex, chord_diagram, from_rotation_words,
                      graded_euler_characteristic, gradings_via_activities,
                      homology, is_differential_forced_zero, jones_expansion,
                      parse_pd, quasi_tree_masks_brute_force, quasi_trees,
                      resolution_tree_leaves, shift)
from ribbonkh.quasitree import quasi_tree_euler_characteristic
from conftest import (FIG5_PD, FIGURE8_PD, TREFOIL_LEFT_PD, TREFOIL_RIGHT_PD,
                      fig2_graph, named_graphs, random_connected_graph,
                      sec9_graph)


class TestResolutionTree:
    def test_fig2_three_leaves(self):
        # label normalization maps the paper's edges (1,2,3) to (0,2,1)
        leaves = resolution_tree_leaves(fig2_graph())
        assert len(leaves) == 3
        kept = {leaf.edges_kept for leaf in leaves}
        assert kept == {0b111, 0b100, 0b001}

    def test_sec9_four_leaves(self):
        assert len(resolution_tree_leaves(sec9_graph())) == 4

    def test_single_vertex(self):
        leaves = resolution_tree_leaves(from_rotation_words([[]]))
        assert leaves == [type(leaves[0])(0, 0, 0, 0)]

    def test_counter_invariant(self, corpus):
        for name, g in corpus.items():
            if not g.is_connected():
                continue
            for leaf in resolution_tree_leaves(g):
                kept_skipped = leaf.loop_count + leaf.bridge_count
                in_tree = leaf.edges_kept.bit_count()
                assert in_tree == leaf.bridge_count + leaf.con_count, name
                assert kept_skipped + 0 <= g.n_edges, name

    def test_disconnected_rejected(self):
        with pytest.raises(RibbonGraphError):
            resolution_tree_leaves(from_rotation_words([[], []]))


class TestQuasiTreeCensus:
    def test_matches_brute_force_corpus(self, corpus):
        for name, g in corpus.items():
            if not g.is_connected():
                continue
            masks = {r.edges for r in quasi_trees(g)}
            assert masks == quasi_tree_masks_brute_force(g), name

    def test_matches_brute_force_random(self, rng):
        for _ in range(12):
            g = random_connected_graph(rng, rng.randint(0, 7))
            masks = {r.edges for r in quasi_trees(g)}
            assert masks == quasi_tree_masks_brute_force(g)

    def test_census_independent_of_order(self, rng):
        g = sec9_graph()
        base = {r.edges for r in quasi_trees(g)}
        for _ in range(5):
            order = list(range(3))
            rng.shuffle(order)
            assert {r.edges for r in quasi_trees(g, tuple(order))} == base


class TestTable2:
    def test_rows(self):
        rows = [(r.genus, r.ia, r.ea, r.i_grading, r.j_grading)
                for r in quasi_trees(sec9_graph())]
        assert sorted(rows) == sorted([(0, 0, 1, 1, 2), (1, 1, 0, 1, 0),
                                       (1, 1, 0, 1, 0), (1, 0, 1, 3, 4)])

    def test_differential_forced_zero(self):
        assert is_differential_forced_zero(quasi_trees(sec9_graph()))


class TestChordDiagrams:
    def test_fig16_full_tree(self):
        # the paper's cyclic word 3 1 2 3 2 1 in its labels; with parsed
        # indices (paper 1,2,3 -> 0,2,1) the chords of 0 and 2 cross 1 only
        g = fig2_graph()
        cd = chord_diagram(g, 0b111)
        assert sorted(cd.word) == [0, 0, 1, 1, 2, 2]
        word = list(cd.word)
        target = [0, 2, 1, 2, 0, 1]
        assert any(word == target[s:] + target[:s] for s in range(6))
        assert cd.crossing_pairs() == {(0, 1), (1, 2)}

    def test_single_loop_empty_tree(self):
        g = from_rotation_words([[0, 0]])
        cd = chord_diagram(g, 0)
        assert cd.word == (0, 0)
        assert cd.crossing_pairs() == set()

    def test_sec9_empty_tree(self):
        cd = chord_diagram(sec9_graph(), 0)
        assert cd.word == (0, 1, 2, 0, 1, 2)

    def test_non_quasitree_rejected(self):
        with pytest.raises(RibbonGraphError):
            chord_diagram(sec9_graph(), 0b111)


class TestActivities:
    def test_fig16_values(self):
        # ia/ea for T1={1}, T2={2}, T3={1,2,3} of the Fig. 2 graph under the
        # paper's edge order, which is (0, 2, 1) in parsed indices
        g = fig2_graph()
        expect = {0b001: (1, 0), 0b100: (0, 1), 0b111: (2, 0)}
        for r in quasi_trees(g, (0, 2, 1)):
            assert (r.ia, r.ea) == expect[r.edges]

    def test_sec9_empty_tree(self):
        g = sec9_graph()
        cd = chord_diagram(g, 0)
        assert activities(cd, (0, 1, 2), 0) == (0, 1)

    def test_disjoint_chords_all_active(self):
        g = named_graphs()["two_sep_loops"]
        cd = chord_diagram(g, 0)
        assert activities(cd, (0, 1), 0) == (0, 2)


class TestGradingAgreement:
    def test_corpus_random_orders(self, corpus, rng):
        for name, g in corpus.items():
            if not g.is_connected() or g.n_edges > 8:
                continue
            orders = [tuple(range(g.n_edges))]
            for _ in range(10):
                o = list(range(g.n_edges))
                rng.shuffle(o)
                orders.append(tuple(o))
            for order in orders:
                for r in quasi_trees(g, order):
                    assert gradings_via_activities(g, r) == \
                        (r.i_grading, r.j_grading), (name, order)

    def test_delta_order_independent(self, corpus, rng):
        for name, g in corpus.items():
            if not g.is_connected() or g.n_edges > 8:
                continue
            for _ in range(4):
                o = list(range(g.n_edges))
                rng.shuffle(o)
                for r in quasi_trees(g, tuple(o)):
                    delta = Fraction(r.j_grading, 2) - r.i_grading
                    assert delta == -r.genus - Fraction(g.n_vertices - 1, 2)

    def test_spec_point_values(self):
        bridge = from_rotation_words([[0], [0]])
        (r,) = quasi_trees(bridge)
        assert (r.i_grading, r.j_grading) == (0, -1)
        assert gradings_via_activities(bridge, r) == (0, -1)
        # separating loop: j = 2(g + ea - ia) + |V| - 1 = 2, matching the
        # reduced homology Z at (1,2)
        loop = from_rotation_words([[0, 0]])
        (r,) = quasi_trees(loop)
        assert r.edges == 0
        assert gradings_via_activities(loop, r) == (1, 2)


class TestEulerBridge:
    def test_corpus(self, corpus):
        for name, g in corpus.items():
            if not g.is_connected() or g.n_edges > 8:
                continue
            qt = quasi_tree_euler_characteristic(quasi_trees(g))
            red = graded_euler_characteristic(
                homology(build_reduced_complex(g)))
            assert qt == red, name


class TestChordDeletionCoherence:
    def _orders_agree(self, small, big, dropped):
        relabel = [e if e < dropped else e + 1 for e in small.word]
        want = [e for e in big.word if e != dropped]
        # same cyclic word up to rotation (the basepoint may move)
        k = len(relabel)
        if k == 0:
            return not want
        doubled = want + want
        return any(relabel == doubled[s:s + k] for s in range(k))

    def test_corpus(self, corpus):
        for name, g in corpus.items():
            if not g.is_connected() or not g.n_edges or g.n_edges > 6:
                continue
            for r in quasi_trees(g):
                cd = chord_diagram(g, r.edges)
                for e in range(g.n_edges):
                    if r.edges >> e & 1:
                        smaller = g.contract_edge(e)
                        sub_mask = ((r.edges & ((1 << e) - 1))
                                    | ((r.edges >> (e + 1)) << e))
                    else:
                        smaller = g.delete_edge(e)
                        sub_mask = ((r.edges & ((1 << e) - 1))
                                    | ((r.edges >> (e + 1)) << e))
                    if not smaller.is_connected():
                        continue
                    cd_small = chord_diagram(smaller, sub_mask)
                    assert self._orders_agree(cd_small, cd, e), (name, r.edges, e)


class TestLooplessBound:
    def test_internally_inactive_count(self, corpus, rng):
        # loopless graphs: every positive-genus quasi-tree has at least
        # g(T)+1 internally inactive edges, for any edge order
        for name, g in corpus.items():
            if not g.is_connected() or g.has_loop() or g.n_edges > 8:
                continue
            orders = [tuple(range(g.n_edges))]
            for _ in range(3):
                o = list(range(g.n_edges))
                rng.shuffle(o)
                orders.append(tuple(o))
            for order in orders:
                for r in quasi_trees(g, order):
                    if r.genus == 0:
                        continue
                    internal_count = r.edges.bit_count()
                    inactive_internal = internal_count - r.ia
                    assert inactive_internal >= r.genus + 1, (name, order)


class TestJones:
    def test_unknots(self):
        assert jones_expansion(parse_pd("")) == LaurentPoly({0: 1})
        assert jones_expansion(parse_pd(FIG5_PD)) == LaurentPoly({0: 1})

    def test_trefoils(self):
        assert jones_expansion(parse_pd(TREFOIL_RIGHT_PD)) == LaurentPoly(
            {2: 1, 6: 1, 8: -1})
        assert jones_expansion(parse_pd(TREFOIL_LEFT_PD)) == LaurentPoly(
            {-2: 1, -6: 1, -8: -1})

    def test_figure8(self):
        assert jones_expansion(parse_pd(FIGURE8_PD)) == LaurentPoly(
            {-4: 1, -2: -1, 0: 1, 2: -1, 4: 1})

    def test_matches_shifted_reduced_euler(self):
        from ribbonkh import all_A_ribbon_graph, to_ribbon_graph
        for text in (FIG5_PD, TREFOIL_RIGHT_PD, TREFOIL_LEFT_PD, FIGURE8_PD):
            pd = parse_pd(text)
            ap, s = all_A_ribbon_graph(pd)
            g = to_ribbon_graph(ap)
            red = homology(build_reduced_complex(g))
            red = shift(red, -s.n_minus, s.n_plus - 2 * s.n_minus)
            assert jones_expansion(pd) == graded_euler_characteristic(red), text
