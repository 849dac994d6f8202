"""Reidemeister moves: application, inverses, homology invariance."""

import pytest

from ribbonkh import (MOVE_SHIFTS, MoveError, MoveSite, NonOrientableError,
                      apply_move, check_invariance, find_sites,
                      from_rotation_words, parse_arrow_presentation,
                      to_arrow_presentation, to_ribbon_graph)
from ribbonkh.moves import R1_DOUBLE_ARROW, R1_VERTEX_EDGE, R2, R3
from conftest import SEC9_TEXT, random_connected_graph

BARE = parse_arrow_presentation("circle:")
SEC9 = parse_arrow_presentation(SEC9_TEXT)
R3_PATTERN = parse_arrow_presentation("circle: 1+ 2+ 3+ ; circle: 3+ 1+ ; circle: 2+")


class TestApply:
    def test_r1a_on_bare_circle_gives_bridge(self):
        out = apply_move(BARE, MoveSite(R1_VERTEX_EDGE, (0,), (0,)))
        assert to_ribbon_graph(out).is_isomorphic(from_rotation_words([[0], [0]]))

    def test_r1b_adds_adjacent_pair(self):
        out = apply_move(BARE, MoveSite(R1_DOUBLE_ARROW, (0,), (0,)))
        assert out.circles == (((1, True), (1, True)),)
        assert to_ribbon_graph(out).is_isomorphic(from_rotation_words([[0, 0]]))

    def test_r2_merges_two_circles(self):
        two = parse_arrow_presentation("circle: ; circle:")
        out = apply_move(two, MoveSite(R2, (0, 1), (0, 0)))
        assert len(out.circles) == 1
        assert [l for l, _ in out.circles[0]] == [1, 2, 1, 2]

    def test_r2_splits_one_circle(self):
        out = apply_move(SEC9, MoveSite(R2, (0, 0), (1, 4)))
        assert len(out.circles) == 2

    def test_r3_preserves_label_multiset(self):
        out = apply_move(R3_PATTERN, MoveSite(R3, (0, 1, 2), (0, 0, 0)))
        assert sorted(l for c in out.circles for l, _ in c) == [1, 1, 2, 2, 3, 3]

    def test_inapplicable_sites(self):
        with pytest.raises(MoveError):
            apply_move(BARE, MoveSite(R1_VERTEX_EDGE, (1,), (0,)))
        with pytest.raises(MoveError):
            apply_move(SEC9, MoveSite(R2, (0, 0), (2, 2)))
        with pytest.raises(MoveError):
            apply_move(SEC9, MoveSite(R3, (0, 0, 0), (0, 2, 4)))

    def test_r2_merge_can_be_rejected_nonorientable(self):
        # merging the two circles of a presentation that needed opposite
        # orientation colors creates a Mobius band
        ap = parse_arrow_presentation("circle: 1+ ; circle: 1-")
        with pytest.raises(NonOrientableError):
            apply_move(ap, MoveSite(R2, (0, 1), (0, 0)))


class TestForwardInverse:
    def test_r1a_roundtrip(self):
        mid = apply_move(SEC9, MoveSite(R1_VERTEX_EDGE, (0,), (3,)))
        pendant = [ci for ci, c in enumerate(mid.circles) if len(c) == 1]
        back = apply_move(mid, MoveSite(R1_VERTEX_EDGE, (pendant[0],), (),
                                        inverse=True))
        assert to_ribbon_graph(back).is_isomorphic(to_ribbon_graph(SEC9))

    def test_r1b_roundtrip(self):
        mid = apply_move(SEC9, MoveSite(R1_DOUBLE_ARROW, (0,), (2,)))
        back = apply_move(mid, MoveSite(R1_DOUBLE_ARROW, (0,), (2,),
                                        inverse=True))
        assert to_ribbon_graph(back).is_isomorphic(to_ribbon_graph(SEC9))

    def test_r2_roundtrips(self, rng):
        for _ in range(10):
            g = random_connected_graph(rng, rng.randint(0, 4))
            ap = to_arrow_presentation(g)
            sites = [s for s in find_sites(ap, kinds=(R2,)) if not s.inverse]
            if not sites:
                continue
            site = sites[rng.randrange(len(sites))]
            mid = apply_move(ap, site)
            inv_sites = [s for s in find_sites(mid, kinds=(R2,)) if s.inverse]
            assert inv_sites, "forward R2 must leave an inverse site"
            restored = False
            for inv in inv_sites:
                try:
                    back = apply_move(mid, inv)
                except (MoveError, NonOrientableError):
                    continue
                if to_ribbon_graph(back).is_isomorphic(g):
                    restored = True
                    break
            assert restored

    def test_r3_involution(self):
        mid = apply_move(R3_PATTERN, MoveSite(R3, (0, 1, 2), (0, 0, 0)))
        back = apply_move(mid, MoveSite(R3, (0, 2, 1), (0, 0, 0), inverse=True))
        assert to_ribbon_graph(back).is_isomorphic(to_ribbon_graph(R3_PATTERN))


class TestInvariance:
    def test_shift_table(self):
        assert MOVE_SHIFTS == {R1_VERTEX_EDGE: (0, -1), R1_DOUBLE_ARROW: (1, 2),
                               R2: (1, 1), R3: (0, 0)}

    def test_sec9_examples(self):
        assert check_invariance(SEC9, MoveSite(R1_DOUBLE_ARROW, (0,), (0,)))
        assert check_invariance(SEC9, MoveSite(R1_VERTEX_EDGE, (0,), (1,)))
        assert check_invariance(SEC9, MoveSite(R2, (0, 0), (2, 5)))

    def test_r3_invariance(self):
        assert check_invariance(R3_PATTERN, MoveSite(R3, (0, 1, 2), (0, 0, 0)))

    def test_forward_then_inverse_identity(self):
        mid = apply_move(SEC9, MoveSite(R1_DOUBLE_ARROW, (0,), (1,)))
        rep = check_invariance(mid, MoveSite(R1_DOUBLE_ARROW, (0,), (1,),
                                             inverse=True))
        assert rep.passed and rep.expected_shift == (-1, -2)

    def test_every_site_on_small_random_graphs(self, rng):
        for _ in range(4):
            g = random_connected_graph(rng, rng.randint(1, 3))
            ap = to_arrow_presentation(g)
            for site in find_sites(ap):
                try:
                    rep = check_invariance(ap, site)
                except NonOrientableError:
                    continue
                assert rep.passed, (g.rotations, site, rep.details)


class TestBraidGroundTruth:
    """The braid relation realizes R3 on all-A presentations; inserting a
    canceling generator pair realizes the edge-adding R2."""

    def _allA(self, word, strands=3):
        from ribbonkh import all_A_ribbon_graph, parse_pd
        from conftest import braid_closure_pd
        pd = parse_pd(braid_closure_pd(word, strands))
        ap, signs = all_A_ribbon_graph(pd)
        return ap, signs

    def test_r3_sites_relate_braid_closures(self):
        from ribbonkh.moves import R3
        for suffix in ([2], [1], [2, 2], [1, 1, 2]):
            ap1, _ = self._allA([2, 1, 2] + suffix)
            ap2, _ = self._allA([1, 2, 1] + suffix)
            g2 = to_ribbon_graph(ap2)
            sites = find_sites(ap1, kinds=(R3,))
            assert sites, suffix
            assert any(to_ribbon_graph(apply_move(ap1, s)).is_isomorphic(g2)
                       for s in sites), suffix

    def test_r2_insertion_matches_inverse_site(self):
        from ribbonkh.moves import R2
        base = [2, 1, 1]
        ap1, _ = self._allA(base)
        ap2, _ = self._allA(base + [2, -2])
        g1 = to_ribbon_graph(ap1)
        inv_sites = [s for s in find_sites(ap2, kinds=(R2,)) if s.inverse]
        assert any(to_ribbon_graph(apply_move(ap2, s)).is_isomorphic(g1)
                   for s in inv_sites)
