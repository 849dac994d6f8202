"""Shared fixtures: the named graph corpus and a random-graph generator."""

from __future__ import annotations

import random

import pytest

from ribbonkh import (RibbonGraph, RibbonGraphError, from_rotation_words,
                      parse_arrow_presentation, to_ribbon_graph)

SEC9_TEXT = "circle: 1+ 2+ 3+ 1+ 2+ 3+"
FIG2_TEXT = "circle: 1+ 3+ 2+ 3+ ; circle: 2+ 1+"
FIG5_PD = "X[3,6,4,1], X[1,4,2,5], X[2,6,3,5]"
TREFOIL_RIGHT_PD = "X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]"
TREFOIL_LEFT_PD = "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]"
FIGURE8_PD = "X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]"
HOPF_PD = "X[1,4,2,3], X[3,2,4,1]"
KINK_POS_PD = "X[1,1,2,2]"
KINK_NEG_PD = "X[1,2,2,1]"


def sec9_graph() -> RibbonGraph:
    return to_ribbon_graph(parse_arrow_presentation(SEC9_TEXT))


def fig2_graph() -> RibbonGraph:
    return to_ribbon_graph(parse_arrow_presentation(FIG2_TEXT))


def named_graphs() -> dict[str, RibbonGraph]:
    """Small corpus used across the property suites."""
    return {
        "single_vertex": from_rotation_words([[]]),
        "bridge": from_rotation_words([[0], [0]]),
        "sep_loop": from_rotation_words([[0, 0]]),
        "path3": from_rotation_words([[0], [0, 1], [1]]),
        "double_edge": from_rotation_words([[0, 1], [1, 0]]),
        "bridge_loop": from_rotation_words([[0], [0, 1, 1]]),
        "two_sep_loops": from_rotation_words([[0, 0, 1, 1]]),
        "interleaved_loops": from_rotation_words([[0, 1, 0, 1]]),
        "sec9": sec9_graph(),
        "fig2": fig2_graph(),
        "theta_planar": from_rotation_words([[0, 1, 2], [2, 1, 0]]),
        "theta_twisted": from_rotation_words([[0, 1, 2], [0, 1, 2]]),
        "quad_torus": from_rotation_words([[0, 1, 2, 3], [0, 1, 2, 3]]),
        "genus2": from_rotation_words([[0, 1, 0, 1, 2, 3, 2, 3]]),
        "star3": from_rotation_words([[0, 1, 2], [0], [1], [2]]),
        "cycle4": from_rotation_words([[0, 1], [1, 2], [2, 3], [3, 0]]),
    }


def random_connected_graph(rng: random.Random, n_edges: int,
                           max_vertices: int = 4) -> RibbonGraph:
    while True:
        nv = 1 if n_edges == 0 else rng.randint(1, max_vertices)
        rotations = [[] for _ in range(nv)]
        halves = list(range(2 * n_edges))
        rng.shuffle(halves)
        for h in halves:
            rotations[rng.randrange(nv)].append(h)
        try:
            g = RibbonGraph(tuple(tuple(r) for r in rotations))
        except RibbonGraphError:
            continue
        if g.is_connected():
            return g


def braid_closure_pd(word, n_strands: int, perm: dict | None = None) -> str:
    """PD text for the closure of a braid word (generators +/-i, 1-based).

    The bottom of column j wires to the top of column perm[j] (default the
    identity, the usual closure).  Strands run downward; a positive
    generator crosses the right strand over the left.
    """
    if perm is None:
        perm = {j: j for j in range(1, n_strands + 1)}
    m = len(word)
    cols = [abs(g) for g in word]

    def next_crossing(col, level):
        for k in range(level, m):
            if cols[k] == col or cols[k] + 1 == col:
                return k
        return None

    crossing_slots = [dict() for _ in range(m)]
    next_arc = 1
    seen_pts = set()
    for c0 in range(1, n_strands + 1):
        start = (c0, 0)
        if start in seen_pts:
            continue
        passages = []
        col, level = start
        while True:
            seen_pts.add((col, level))
            k = next_crossing(col, level)
            if k is None:
                col, level = perm[col], 0
                if (col, level) == start:
                    break
                continue
            side = 0 if cols[k] == col else 1
            passages.append((k, side))
            col = cols[k] + (1 if side == 0 else 0)
            level = k + 1
        if not passages:
            raise ValueError("closure contains a crossingless loop")
        base = next_arc
        next_arc += len(passages)
        for t, (k, side) in enumerate(passages):
            arc_in = base + t
            arc_out = base + (t + 1) % len(passages)
            if side == 0:
                crossing_slots[k]["TL"] = arc_in
                crossing_slots[k]["BR"] = arc_out
            else:
                crossing_slots[k]["TR"] = arc_in
                crossing_slots[k]["BL"] = arc_out
    xs = []
    for k, g in enumerate(word):
        s = crossing_slots[k]
        if g > 0:
            xs.append((s["TL"], s["BL"], s["BR"], s["TR"]))
        else:
            xs.append((s["TR"], s["TL"], s["BL"], s["BR"]))
    return ", ".join("X[%d,%d,%d,%d]" % x for x in xs)


@pytest.fixture
def corpus():
    return named_graphs()


@pytest.fixture
def rng():
    return random.Random(20240902)
