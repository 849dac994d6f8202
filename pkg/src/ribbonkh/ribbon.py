"""Oriented ribbon graphs as rotation systems, and arrow presentations.

A ribbon graph with n edges is stored as a rotation system: every edge k
owns the two half-edges 2k and 2k+1, and each vertex carries a cyclic
(counterclockwise) sequence of half-edges.  The partner of a half-edge h
is h ^ 1.  Boundary components of the regular neighborhood of a spanning
subgraph are traced with the rule: cross the band to the partner side,
then advance to the next half-edge in the rotation of the vertex reached.
Half-edges whose edge is absent from the subgraph are passed as free arcs
of the vertex disk, so the same orbit structure covers every spanning
subgraph at once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property


class RibbonGraphError(ValueError):
    pass


class NonOrientableError(RibbonGraphError):
    """The band gluing described by an arrow presentation contains a Mobius cycle."""


class ParseError(RibbonGraphError):
    pass


@dataclass(frozen=True)
class BoundaryWalkSet:
    """Boundary components of the neighborhood of a spanning subgraph.

    walks: one tuple of half-edge sides per non-trivial boundary walk, in
        traversal order.  A side is just the half-edge id; whether the walk
        crosses the band there or passes a free arc depends on whether the
        edge lies in the subgraph.
    isolated: vertices with empty rotation, each contributing one walk.
    """

    walks: tuple[tuple[int, ...], ...]
    isolated: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.walks) + len(self.isolated)


@dataclass(frozen=True)
class RibbonGraph:
    """An oriented ribbon graph given by vertex rotations of half-edges."""

    rotations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rots = tuple(tuple(r) for r in self.rotations)
        object.__setattr__(self, "rotations", rots)
        seen = sorted(h for rot in rots for h in rot)
        if seen != list(range(len(seen))):
            raise RibbonGraphError("half-edges must be exactly 0..2n-1, each once")
        if len(seen) % 2 != 0:
            raise RibbonGraphError("odd number of half-edges")

    # -- basic structure ------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.rotations)

    @cached_property
    def n_edges(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    @cached_property
    def _vertex_of(self) -> dict[int, int]:
        return {h: v for v, rot in enumerate(self.rotations) for h in rot}

    @cached_property
    def _sigma(self) -> dict[int, int]:
        nxt = {}
        for rot in self.rotations:
            for i, h in enumerate(rot):
                nxt[h] = rot[(i + 1) % len(rot)]
        return nxt

    def vertex_of(self, h: int) -> int:
        return self._vertex_of[h]

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        return self._vertex_of[2 * e], self._vertex_of[2 * e + 1]

    def is_loop(self, e: int) -> bool:
        u, v = self.edge_endpoints(e)
        return u == v

    def full_mask(self) -> int:
        return (1 << self.n_edges) - 1

    # -- connectivity ---------------------------------------------------

    def component_of_vertices(self, mask: int | None = None) -> list[int]:
        """Vertex -> component index, using only edges in mask (default all)."""
        if mask is None:
            mask = self.full_mask()
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(self.n_edges):
            if mask >> e & 1:
                u, v = self.edge_endpoints(e)
                parent[find(u)] = find(v)
        roots = {}
        out = []
        for v in range(self.n_vertices):
            r = find(v)
            out.append(roots.setdefault(r, len(roots)))
        return out

    def n_components(self, mask: int | None = None) -> int:
        if self.n_vertices == 0:
            return 0
        return max(self.component_of_vertices(mask)) + 1

    def is_connected(self) -> bool:
        return self.n_vertices <= 1 or self.n_components() == 1

    # -- boundary walks -------------------------------------------------

    def _step(self, h: int, mask: int) -> int:
        if mask >> (h >> 1) & 1:
            return self._sigma[h ^ 1]
        return self._sigma[h]

    def boundary_walks(self, mask: int | None = None,
                       start: int | None = None) -> BoundaryWalkSet:
        """Trace all boundary walks of the spanning subgraph with edge set mask.

        The walk containing `start` (a half-edge side) is listed first and
        begins there; all other walks begin at their minimal side.
        """
        if mask is None:
            mask = self.full_mask()
        seen = set()
        walks = []

        def trace(h0):
            walk = []
            h = h0
            while True:
                walk.append(h)
                seen.add(h)
                h = self._step(h, mask)
                if h == h0:
                    break
            return tuple(walk)

        if start is not None:
            walks.append(trace(start))
        for h in range(2 * self.n_edges):
            if h not in seen:
                walks.append(trace(h))
        isolated = tuple(v for v, rot in enumerate(self.rotations) if not rot)
        return BoundaryWalkSet(walks=tuple(walks), isolated=isolated)

    def face_count(self, mask: int | None = None) -> int:
        return self.boundary_walks(mask).count

    def genus(self, mask: int | None = None) -> int:
        """Total genus, summed over connected components of the subgraph."""
        if mask is None:
            mask = self.full_mask()
        if self.n_vertices == 0:
            return 0
        comp = self.component_of_vertices(mask)
        n_comp = max(comp) + 1
        e_count = [0] * n_comp
        f_count = [0] * n_comp
        for e in range(self.n_edges):
            if mask >> e & 1:
                e_count[comp[self.edge_endpoints(e)[0]]] += 1
        bw = self.boundary_walks(mask)
        for walk in bw.walks:
            f_count[comp[self.vertex_of(walk[0])]] += 1
        for v in bw.isolated:
            f_count[comp[v]] += 1
        v_count = [0] * n_comp
        for v in range(self.n_vertices):
            v_count[comp[v]] += 1
        total = 0
        for c in range(n_comp):
            two_g = 2 - v_count[c] + e_count[c] - f_count[c]
            if two_g < 0 or two_g % 2:
                raise RibbonGraphError("inconsistent Euler characteristic")
            total += two_g // 2
        return total

    # -- duality ----------------------------------------------------------

    def dual(self) -> "RibbonGraph":
        """Geometric dual: one vertex per face, rotations from the face walks.

        Edge k of the dual crosses edge k of the graph; the two half-edge
        sides of a band become the two dual half-edges.  Applied twice this
        returns the original rotation system on the nose.
        """
        bw = self.boundary_walks()
        rotations = list(bw.walks) + [() for _ in bw.isolated]
        return RibbonGraph(tuple(rotations))

    # -- local operations -------------------------------------------------

    def _renumber_after_removal(self, rotations, e):
        def remap(h):
            return h - 2 if (h >> 1) > e else h

        return tuple(tuple(remap(h) for h in rot) for rot in rotations)

    def delete_edge(self, e: int) -> "RibbonGraph":
        if not 0 <= e < self.n_edges:
            raise RibbonGraphError(f"unknown edge {e}")
        drop = {2 * e, 2 * e + 1}
        rots = tuple(tuple(h for h in rot if h not in drop) for rot in self.rotations)
        return RibbonGraph(self._renumber_after_removal(rots, e))

    def contract_edge(self, e: int) -> "RibbonGraph":
        """Ribbon contraction: merge endpoints for a non-loop, split the
        vertex in two for a loop (the two arcs between the loop's half-edges
        become the rotations of the new vertices)."""
        if not 0 <= e < self.n_edges:
            raise RibbonGraphError(f"unknown edge {e}")
        a, b = 2 * e, 2 * e + 1
        u, v = self._vertex_of[a], self._vertex_of[b]
        rots = [list(r) for r in self.rotations]
        if u == v:
            rot = rots[u]
            ia, ib = rot.index(a), rot.index(b)
            if ia > ib:
                ia, ib = ib, ia
            first = rot[ia + 1:ib]
            second = rot[ib + 1:] + rot[:ia]
            new_rots = rots[:u] + [first, second] + rots[u + 1:]
        else:
            ru, rv = rots[u], rots[v]
            iu, iv = ru.index(a), rv.index(b)
            merged = ru[iu + 1:] + ru[:iu] + rv[iv + 1:] + rv[:iv]
            new_rots = [r for w, r in enumerate(rots) if w not in (u, v)]
            new_rots.insert(min(u, v), merged)
        return RibbonGraph(self._renumber_after_removal(
            tuple(tuple(r) for r in new_rots), e))

    def classify_edge(self, e: int) -> str:
        """One of 'bridge', 'separating_loop', 'nonseparating_loop', 'ordinary'."""
        if not 0 <= e < self.n_edges:
            raise RibbonGraphError(f"unknown edge {e}")
        base = self.n_components()
        if self.is_loop(e):
            if self.contract_edge(e).n_components() > base:
                return "separating_loop"
            return "nonseparating_loop"
        if self.delete_edge(e).n_components() > base:
            return "bridge"
        return "ordinary"

    def has_loop(self) -> bool:
        return any(self.is_loop(e) for e in range(self.n_edges))

    def is_adequate(self) -> bool:
        """Neither the graph nor its dual contains a loop (connected graphs)."""
        if not self.is_connected():
            raise RibbonGraphError("adequacy is defined for connected graphs")
        return not self.has_loop() and not self.dual().has_loop()

    # -- isomorphism ------------------------------------------------------

    @cached_property
    def canonical_form(self) -> tuple:
        """Canonical encoding, equal for two graphs iff they are isomorphic
        as oriented ribbon graphs (vertex/edge relabeling + rotation shifts).

        Exponential in the worst case; intended for small test graphs.
        """
        comp = self.component_of_vertices() if self.n_vertices else []
        n_comp = (max(comp) + 1) if comp else 0
        comp_vertices = [[] for _ in range(n_comp)]
        for v, c in enumerate(comp):
            comp_vertices[c].append(v)
        encodings = []
        n_empty = 0
        for verts in comp_vertices:
            if all(not self.rotations[v] for v in verts):
                n_empty += len(verts)
                continue
            encodings.append(self._canonical_component(verts))
        return (n_empty, tuple(sorted(encodings)))

    def _canonical_component(self, verts: list[int]) -> tuple:
        best = None
        for v0 in verts:
            rot0 = self.rotations[v0]
            for off in range(len(rot0)):
                enc = self._encode_from(v0, off)
                if best is None or enc < best:
                    best = enc
        return best

    def _encode_from(self, v0: int, off: int) -> tuple:
        # Breadth-first over vertices; a vertex's rotation is read starting
        # from the half-edge by which it was discovered.  Edges are renamed
        # in order of first appearance, which makes the label sequence a
        # complete invariant of the rotation system.
        start_rot = self.rotations[v0]
        start_rot = start_rot[off:] + start_rot[:off]
        edge_names: dict[int, int] = {}
        vertex_done = {v0}
        queue = []
        out = []

        def read(rot):
            word = []
            for h in rot:
                e = h >> 1
                if e not in edge_names:
                    edge_names[e] = len(edge_names)
                    queue.append(h ^ 1)
                word.append(edge_names[e])
            return tuple(word)

        out.append(read(start_rot))
        qi = 0
        while qi < len(queue):
            h = queue[qi]
            qi += 1
            v = self._vertex_of[h]
            if v in vertex_done:
                continue
            vertex_done.add(v)
            rot = self.rotations[v]
            i = rot.index(h)
            out.append(read(rot[i:] + rot[:i]))
        return tuple(out)

    def is_isomorphic(self, other: "RibbonGraph") -> bool:
        return self.canonical_form == other.canonical_form


def from_rotation_words(words) -> RibbonGraph:
    """Build a ribbon graph from per-vertex cyclic words of 0-based edge ids.

    The first occurrence of edge k becomes half-edge 2k, the second 2k+1.
    """
    seen: dict[int, int] = {}
    rotations = []
    for word in words:
        rot = []
        for e in word:
            c = seen.get(e, 0)
            if c > 1:
                raise RibbonGraphError(f"edge {e} appears more than twice")
            seen[e] = c + 1
            rot.append(2 * e + c)
        rotations.append(tuple(rot))
    if sorted(seen) != list(range(len(seen))) or any(c != 2 for c in seen.values()):
        raise RibbonGraphError("edge ids must be 0..n-1, each appearing twice")
    return RibbonGraph(tuple(rotations))


# ---------------------------------------------------------------------------
# Arrow presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArrowPresentation:
    """Circles carrying labeled, oriented marking arrows.

    circles: per circle, the cyclic sequence of (label, plus) pairs where
        plus is True when the arrow agrees with the written (ccw) direction
        of its circle.  Labels are exactly 1..n, each on two arrows.
    """

    circles: tuple[tuple[tuple[int, bool], ...], ...]

    def __post_init__(self):
        circles = tuple(tuple((int(l), bool(d)) for l, d in c) for c in self.circles)
        object.__setattr__(self, "circles", circles)
        counts: dict[int, int] = {}
        for circle in circles:
            for label, _ in circle:
                counts[label] = counts.get(label, 0) + 1
        n = len(counts)
        if sorted(counts) != list(range(1, n + 1)) or any(v != 2 for v in counts.values()):
            raise ParseError("labels must be 1..n with each label on exactly two arrows")

    @property
    def n_edges(self) -> int:
        return sum(len(c) for c in self.circles) // 2

    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        """label -> [(circle index, position), (circle index, position)]"""
        occ: dict[int, list[tuple[int, int]]] = {}
        for ci, circle in enumerate(self.circles):
            for pi, (label, _) in enumerate(circle):
                occ.setdefault(label, []).append((ci, pi))
        return occ


_TOKEN_RE = re.compile(r"([0-9]+)([+-])$")


def parse_arrow_presentation(text: str) -> ArrowPresentation:
    """Parse the arrow-presentation text format.

    One `circle:` clause per circle; tokens `<label><dir>` with dir in {+,-};
    `;` or a newline separates circles; `#` starts a comment.  Labels are
    normalized to 1..n in order of first occurrence.
    """
    circles_raw: list[list[tuple[int, bool]]] = []
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0]
        for chunk in line.split(";"):
            current: list[tuple[int, bool]] | None = None
            for token in chunk.split():
                if token == "circle:":
                    current = []
                    circles_raw.append(current)
                    continue
                m = _TOKEN_RE.match(token)
                if not m:
                    raise ParseError(f"malformed token {token!r}")
                if current is None:
                    raise ParseError("arrow token outside a 'circle:' clause")
                current.append((int(m.group(1)), m.group(2) == "+"))
    relabel: dict[int, int] = {}
    for circle in circles_raw:
        for label, _ in circle:
            if label not in relabel:
                relabel[label] = len(relabel) + 1
    circles = tuple(
        tuple((relabel[label], plus) for label, plus in circle)
        for circle in circles_raw
    )
    return ArrowPresentation(circles)


def emit_arrow_presentation(ap: ArrowPresentation) -> str:
    """Render an arrow presentation, relabeling to first-occurrence order."""
    relabel: dict[int, int] = {}
    for circle in ap.circles:
        for label, _ in circle:
            if label not in relabel:
                relabel[label] = len(relabel) + 1
    lines = []
    for circle in ap.circles:
        toks = [f"{relabel[label]}{'+' if plus else '-'}" for label, plus in circle]
        lines.append("circle: " + " ".join(toks) if toks else "circle:")
    return "\n".join(lines) + "\n"


def _orientation_coloring(ap: ArrowPresentation) -> list[int] | None:
    """2-color circles so every band is untwisted, or None if impossible.

    Two arrows of one label glue to an untwisted band exactly when they
    point the same cyclic direction on their (counterclockwise) circles;
    flipping a circle flips the parity of all its arrows.
    """
    n_circ = len(ap.circles)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_circ)]
    for label, occ in ap.occurrences().items():
        (c1, p1), (c2, p2) = occ
        d1 = ap.circles[c1][p1][1]
        d2 = ap.circles[c2][p2][1]
        parity = 0 if d1 == d2 else 1
        adj[c1].append((c2, parity))
        adj[c2].append((c1, parity))
    color = [-1] * n_circ
    for start in range(n_circ):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            c = stack.pop()
            for d, parity in adj[c]:
                want = color[c] ^ parity
                if color[d] == -1:
                    color[d] = want
                    stack.append(d)
                elif color[d] != want:
                    return None
    return color


def check_orientable(ap: ArrowPresentation) -> bool:
    return _orientation_coloring(ap) is not None


def to_ribbon_graph(ap: ArrowPresentation) -> RibbonGraph:
    """Glue vertex disks and bands; vertex rotations are the circle orders.

    Circles flipped by the orientation 2-coloring are reversed first (the
    standard presentation equivalence), so the result is deterministic.
    Edge k of the graph is the label k+1 of the presentation.
    """
    color = _orientation_coloring(ap)
    if color is None:
        raise NonOrientableError("band gluing yields a Mobius cycle")
    words = []
    for ci, circle in enumerate(ap.circles):
        seq = [label for label, _ in circle]
        if color[ci]:
            seq.reverse()
        words.append([label - 1 for label in seq])
    return from_rotation_words(words)


def to_arrow_presentation(g: RibbonGraph) -> ArrowPresentation:
    """Inverse of to_ribbon_graph up to presentation equivalence: every
    rotation becomes a circle with all arrows agreeing with the rotation."""
    circles = tuple(
        tuple((1 + (h >> 1), True) for h in rot) for rot in g.rotations
    )
    return ArrowPresentation(circles)
