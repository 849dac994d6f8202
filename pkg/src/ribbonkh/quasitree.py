"""Spanning quasi-trees: resolution tree, chord-diagram activities, gradings.

The resolution tree of a connected ribbon graph processes edges from the
highest order position down.  A bridge or separating loop is skipped (one
child); any other edge branches into deletion and ribbon contraction.  Each
leaf keeps exactly the skipped edges, all of which are bridges or separating
loops, and corresponds to one spanning quasi-tree: the skipped bridges plus
the contracted edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .homology import LaurentPoly
from .links import PDCode, all_A_ribbon_graph
from .ribbon import RibbonGraph, RibbonGraphError, to_ribbon_graph


@dataclass(frozen=True)
class ResolutionLeaf:
    """A depth-n vertex of the resolution tree.

    edges_kept is the quasi-tree bitmask (original edge ids); the counters
    follow the leaf's own edges (loops/bridges) and the path (contractions).
    """

    edges_kept: int
    loop_count: int
    bridge_count: int
    con_count: int


@dataclass(frozen=True)
class QuasiTreeRecord:
    edges: int
    genus: int
    ia: int
    ea: int
    i_grading: int
    j_grading: int


@dataclass(frozen=True)
class ChordDiagram:
    """Cyclic word of 2n edge labels; equal labels are chord ends."""

    word: tuple[int, ...]

    def positions(self) -> dict[int, tuple[int, int]]:
        pos: dict[int, list[int]] = {}
        for idx, label in enumerate(self.word):
            pos.setdefault(label, []).append(idx)
        out = {}
        for label, pp in pos.items():
            if len(pp) != 2:
                raise RibbonGraphError(f"label {label} does not occur twice")
            out[label] = (pp[0], pp[1])
        return out

    def crossing_pairs(self) -> set[tuple[int, int]]:
        pos = self.positions()
        labels = sorted(pos)
        out = set()
        for x in range(len(labels)):
            a1, a2 = pos[labels[x]]
            for y in range(x + 1, len(labels)):
                b1, b2 = pos[labels[y]]
                if (a1 < b1 < a2) != (a1 < b2 < a2):
                    out.add((labels[x], labels[y]))
        return out


def _default_order(g: RibbonGraph) -> tuple[int, ...]:
    return tuple(range(g.n_edges))


def resolution_tree_leaves(g: RibbonGraph,
                           order: tuple[int, ...] | None = None) -> list[ResolutionLeaf]:
    """All leaves of the deletion / ribbon-contraction resolution tree.

    order lists original edge ids by increasing order position e_1 < ... < e_n;
    the recursion consumes them from e_n downward.
    """
    if not g.is_connected():
        raise RibbonGraphError("resolution tree needs a connected graph")
    if order is None:
        order = _default_order(g)
    if sorted(order) != list(range(g.n_edges)):
        raise RibbonGraphError("order must be a permutation of the edges")
    leaves: list[ResolutionLeaf] = []

    def recurse(h: RibbonGraph, ids: tuple[int, ...], depth: int,
                kept: int, con: int):
        if depth == g.n_edges:
            loops = bridges = 0
            for e in range(h.n_edges):
                kind = h.classify_edge(e)
                if kind == "separating_loop":
                    loops += 1
                elif kind == "bridge":
                    bridges += 1
                else:
                    raise RibbonGraphError(
                        "leaf edge is neither a bridge nor a separating loop")
            leaves.append(ResolutionLeaf(edges_kept=kept, loop_count=loops,
                                         bridge_count=bridges, con_count=con))
            return
        orig = order[g.n_edges - 1 - depth]
        cur = ids.index(orig)
        kind = h.classify_edge(cur)
        if kind == "bridge":
            recurse(h, ids, depth + 1, kept | 1 << orig, con)
        elif kind == "separating_loop":
            recurse(h, ids, depth + 1, kept, con)
        else:
            rest = ids[:cur] + ids[cur + 1:]
            recurse(h.delete_edge(cur), rest, depth + 1, kept, con)
            recurse(h.contract_edge(cur), rest, depth + 1,
                    kept | 1 << orig, con + 1)

    recurse(g, tuple(range(g.n_edges)), 0, 0, 0)
    return leaves


def quasi_tree_masks_brute_force(g: RibbonGraph) -> set[int]:
    """Spanning subgraphs whose neighborhood has one boundary component."""
    return {mask for mask in range(1 << g.n_edges)
            if g.boundary_walks(mask).count == 1}


def chord_diagram(g: RibbonGraph, edges: int) -> ChordDiagram:
    """Traversal order of edge markers along the single boundary walk:
    band midpoints for quasi-tree edges, disk attachment points for the
    rest.  The walk starts at the canonical basepoint gap."""
    bw = g.boundary_walks(edges, start=g.rotations[0][0] if g.rotations
                          and g.rotations[0] else None)
    if bw.count != 1:
        raise RibbonGraphError("not a quasi-tree: boundary is not a single circle")
    if not bw.walks:
        return ChordDiagram(())
    return ChordDiagram(tuple(h >> 1 for h in bw.walks[0]))


def activities(cd: ChordDiagram, order: tuple[int, ...],
               internal: int) -> tuple[int, int]:
    """Counts of internally and externally active edges.

    An edge is active when its chord crosses no chord of lower order
    position; internal means the edge lies in the quasi-tree.
    """
    n = len(cd.word) // 2
    position = {e: p for p, e in enumerate(order)}
    neighbors: dict[int, list[int]] = {e: [] for e in range(n)}
    for a, b in cd.crossing_pairs():
        neighbors[a].append(b)
        neighbors[b].append(a)
    ia = ea = 0
    for e in range(n):
        if all(position[other] > position[e] for other in neighbors[e]):
            if internal >> e & 1:
                ia += 1
            else:
                ea += 1
    return ia, ea


def quasi_trees(g: RibbonGraph,
                order: tuple[int, ...] | None = None) -> list[QuasiTreeRecord]:
    """Quasi-tree records with activities and both grading computations
    (the leaf counters fill i and j; activities fill ia and ea)."""
    if order is None:
        order = _default_order(g)
    records = []
    for leaf in resolution_tree_leaves(g, order):
        mask = leaf.edges_kept
        if g.boundary_walks(mask).count != 1:
            raise RibbonGraphError("resolution leaf is not a quasi-tree")
        k = mask.bit_count()
        two_genus = k - g.n_vertices + 1
        if two_genus < 0 or two_genus % 2:
            raise RibbonGraphError("quasi-tree Euler count is inconsistent")
        cd = chord_diagram(g, mask)
        ia, ea = activities(cd, order, mask)
        records.append(QuasiTreeRecord(
            edges=mask,
            genus=two_genus // 2,
            ia=ia,
            ea=ea,
            i_grading=leaf.loop_count + leaf.con_count,
            j_grading=2 * leaf.loop_count - leaf.bridge_count + leaf.con_count,
        ))
    return records


def gradings_via_activities(g: RibbonGraph, t: QuasiTreeRecord) -> tuple[int, int]:
    """(i, j) from the activity word: i = 2g(T) + ea - ia + |V| - 1 and
    j = 2(g(T) + ea - ia) + |V| - 1."""
    base = g.n_vertices - 1
    i = 2 * t.genus + t.ea - t.ia + base
    j = 2 * (t.genus + t.ea - t.ia) + base
    return i, j


def is_differential_forced_zero(records) -> bool:
    """True when no generator pair sits at (i, j) -> (i+1, j)."""
    support = {(r.i_grading, r.j_grading) for r in records}
    return not any((i + 1, j) in support for (i, j) in support)


def quasi_tree_euler_characteristic(records) -> LaurentPoly:
    coeffs: dict[int, int] = {}
    for r in records:
        c = 1 if r.i_grading % 2 == 0 else -1
        coeffs[r.j_grading] = coeffs.get(r.j_grading, 0) + c
    return LaurentPoly(coeffs)


def jones_expansion(pd: PDCode) -> LaurentPoly:
    """Jones polynomial of the link, evaluated at q squared: the signed sum
    (-1)^(i(T)-n_minus) q^(j(T)+n_plus-2n_minus) over spanning quasi-trees
    of the all-A ribbon graph."""
    ap, signs = all_A_ribbon_graph(pd)
    g = to_ribbon_graph(ap)
    if not g.is_connected():
        raise RibbonGraphError("split diagrams have no single quasi-tree expansion")
    coeffs: dict[int, int] = {}
    for r in quasi_trees(g):
        i = r.i_grading - signs.n_minus
        j = r.j_grading + signs.n_plus - 2 * signs.n_minus
        coeffs[j] = coeffs.get(j, 0) + (1 if i % 2 == 0 else -1)
    return LaurentPoly(coeffs)
