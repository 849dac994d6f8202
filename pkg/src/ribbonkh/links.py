"""Classical link diagrams as PD codes and their all-A ribbon graphs.

A crossing X[a,b,c,d] lists the four incident arcs counterclockwise
starting from the incoming under-strand, with arcs numbered 1..2n along
each component.  The A-resolution joins a-b and c-d; the B-resolution
joins a-d and b-c.  Resolving every crossing and replacing each one by a
pair of equally labeled marking arrows (with the orientation choice that
puts both arrows against the a->b and c->d sweeps) turns the all-A state
into an arrow presentation of the all-A ribbon graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ribbon import ArrowPresentation, ParseError

# Slot pairing for the two resolutions, by position 0..3 = (a, b, c, d).
_A_PAIR = {0: 1, 1: 0, 2: 3, 3: 2}
_B_PAIR = {0: 3, 3: 0, 1: 2, 2: 1}


class PDError(ParseError):
    pass


@dataclass(frozen=True)
class SignCount:
    n_plus: int
    n_minus: int

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus


@dataclass(frozen=True)
class KauffmanState:
    resolution: int
    circle_count: int


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "crossings",
                           tuple(tuple(int(x) for x in c) for c in self.crossings))
        counts: dict[int, int] = {}
        for c in self.crossings:
            for a in c:
                counts[a] = counts.get(a, 0) + 1
        n = len(self.crossings)
        if self.crossings:
            if sorted(counts) != list(range(1, 2 * n + 1)):
                raise PDError("arcs must be numbered 1..2n")
            if any(v != 2 for v in counts.values()):
                raise PDError("each arc must appear exactly twice")

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def arc_positions(self) -> dict[int, list[tuple[int, int]]]:
        """arc -> [(crossing index, slot 0..3), ...] (two entries)."""
        pos: dict[int, list[tuple[int, int]]] = {}
        for ci, crossing in enumerate(self.crossings):
            for slot, arc in enumerate(crossing):
                pos.setdefault(arc, []).append((ci, slot))
        return pos

    def components(self) -> list[set[int]]:
        """Partition of arcs into link components (strand continuity)."""
        arcs = sorted({a for c in self.crossings for a in c})
        parent = {a: a for a in arcs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for a, b, c, d in self.crossings:
            union(a, c)
            union(b, d)
        groups: dict[int, set[int]] = {}
        for a in arcs:
            groups.setdefault(find(a), set()).add(a)
        return list(groups.values())

    def next_arc(self) -> dict[int, int]:
        """Successor of each arc along its (consecutively numbered) component."""
        nxt = {}
        for comp in self.components():
            lo, hi = min(comp), max(comp)
            if comp != set(range(lo, hi + 1)):
                raise PDError("arcs of a component must be numbered consecutively")
            for a in comp:
                nxt[a] = lo if a == hi else a + 1
        return nxt

    def signs(self) -> SignCount:
        """Crossing signs from the arc orientations.

        The over-strand of X[a,b,c,d] runs d->b at a positive crossing and
        b->d at a negative one.  Each arc transition x -> next(x) happens at
        exactly one crossing passage, which resolves the two-arc components
        where both readings are locally consistent.
        """
        nxt = self.next_arc()
        used = set()
        for a, b, c, d in self.crossings:
            if nxt.get(a) != c:
                raise PDError(f"under-strand {a}->{c} breaks arc numbering")
            used.add((a, c))
        sign: dict[int, int] = {}
        pending = set(range(len(self.crossings)))
        while pending:
            progressed = False
            for ci in sorted(pending):
                a, b, c, d = self.crossings[ci]
                pos_ok = nxt.get(d) == b and (d, b) not in used
                neg_ok = nxt.get(b) == d and (b, d) not in used
                if pos_ok and neg_ok:
                    continue
                if pos_ok:
                    sign[ci] = 1
                    used.add((d, b))
                elif neg_ok:
                    sign[ci] = -1
                    used.add((b, d))
                else:
                    raise PDError(f"over-strand of crossing {ci} inconsistent")
                pending.discard(ci)
                progressed = True
            if not progressed:
                # A fully symmetric leftover (an all-over two-arc circle);
                # either reading is a valid orientation, pick the positive one.
                ci = min(pending)
                a, b, c, d = self.crossings[ci]
                sign[ci] = 1
                used.add((d, b))
                pending.discard(ci)
        n_plus = sum(1 for s in sign.values() if s > 0)
        return SignCount(n_plus=n_plus, n_minus=len(sign) - n_plus)


def parse_pd(text: str) -> PDCode:
    """Parse `X[a,b,c,d]` tokens, comma/whitespace separated; `#` comments."""
    cleaned = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    crossings = []
    pat = re.compile(r"X\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")
    pos = 0
    for m in pat.finditer(cleaned):
        between = cleaned[pos:m.start()]
        if between.strip(" ,\t\n"):
            raise PDError(f"unexpected text {between.strip()!r} in PD code")
        crossings.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if cleaned[pos:].strip(" ,\t\n"):
        raise PDError(f"unexpected text {cleaned[pos:].strip()!r} in PD code")
    return PDCode(tuple(crossings))


def _trace_state(pd: PDCode, resolution: int):
    """Circles of the Kauffman state, as lists of (crossing, slot_in, slot_out).

    Traversal enters a crossing at slot_in, leaves through the smoothing at
    slot_out, and continues along the outgoing arc to its other endpoint.
    """
    positions = pd.arc_positions()
    other_end = {}
    for arc, pp in positions.items():
        (c1, s1), (c2, s2) = pp
        other_end[(c1, s1)] = (c2, s2)
        other_end[(c2, s2)] = (c1, s1)
    seen = set()
    circles = []
    for ci in range(pd.n_crossings):
        for slot in range(4):
            if (ci, slot) in seen:
                continue
            walk = []
            cur = (ci, slot)
            while cur not in seen:
                seen.add(cur)
                pair = _B_PAIR if (resolution >> cur[0]) & 1 else _A_PAIR
                out_slot = pair[cur[1]]
                seen.add((cur[0], out_slot))
                walk.append((cur[0], cur[1], out_slot))
                cur = other_end[(cur[0], out_slot)]
            circles.append(walk)
    return circles


def kauffman_state(pd: PDCode, resolution: int) -> KauffmanState:
    """Resolve every crossing (bit value 0: A, 1: B) and count closed curves."""
    if not 0 <= resolution < (1 << pd.n_crossings):
        raise PDError("resolution bitmask out of range")
    if pd.n_crossings == 0:
        return KauffmanState(resolution=0, circle_count=1)
    circles = _trace_state(pd, resolution)
    return KauffmanState(resolution=resolution, circle_count=len(circles))


def all_A_ribbon_graph(pd: PDCode) -> tuple[ArrowPresentation, SignCount]:
    """Arrow presentation of the all-A ribbon graph, plus crossing signs.

    Circles are the all-A state components; each passage through crossing k
    adds an arrow labeled k+1, pointing with the traversal exactly when the
    smoothing is crossed from slot b to slot a or from slot d to slot c.
    """
    if pd.n_crossings == 0:
        return ArrowPresentation(((),)), SignCount(0, 0)
    signs = pd.signs()
    circles = []
    for walk in _trace_state(pd, 0):
        circle = []
        for ci, slot_in, slot_out in walk:
            plus = (slot_in, slot_out) in ((1, 0), (3, 2))
            circle.append((ci + 1, plus))
        circles.append(tuple(circle))
    return ArrowPresentation(tuple(circles)), signs
