"""Reidemeister moves on arrow presentations and homology invariance checks.

Moves are specified by sites on the presentation.  Gap p of a circle with k
arrows is the space before the arrow at position p (a bare circle has the
single gap 0).  Applied forward, every move writes its new arrows with the
written (ccw) orientation, matching the defining figures; inverse sites must
therefore exhibit the exact pattern a forward move produces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import build_complex, build_reduced_complex
from .homology import homology, shift
from .ribbon import (ArrowPresentation, NonOrientableError, RibbonGraphError,
                     check_orientable, to_ribbon_graph)

R1_VERTEX_EDGE = "R1a"
R1_DOUBLE_ARROW = "R1b"
R2 = "R2"
R3 = "R3"

# Uniform bigrading shifts (r, s) under the edge-adding / forward direction,
# matching the link-diagram shifts under the move-to-crossing dictionary.
MOVE_SHIFTS = {
    R1_VERTEX_EDGE: (0, -1),
    R1_DOUBLE_ARROW: (1, 2),
    R2: (1, 1),
    R3: (0, 0),
}


class MoveError(RibbonGraphError):
    pass


@dataclass(frozen=True)
class MoveSite:
    """kind + location indices; see apply_move for the per-kind layout."""

    kind: str
    circles: tuple[int, ...]
    positions: tuple[int, ...]
    inverse: bool = False


def _norm_labels(circles) -> ArrowPresentation:
    relabel: dict[int, int] = {}
    for circle in circles:
        for label, _ in circle:
            if label not in relabel:
                relabel[label] = len(relabel) + 1
    return ArrowPresentation(tuple(
        tuple((relabel[label], plus) for label, plus in circle)
        for circle in circles))


def _check_gap(ap: ArrowPresentation, ci: int, gap: int) -> None:
    if not 0 <= ci < len(ap.circles):
        raise MoveError(f"no circle {ci}")
    k = len(ap.circles[ci])
    if not 0 <= gap < max(k, 1):
        raise MoveError(f"no gap {gap} on circle {ci}")


def _insert(circle, gap, arrows):
    return circle[:gap] + tuple(arrows) + circle[gap:]


def apply_move(ap: ArrowPresentation, site: MoveSite) -> ArrowPresentation:
    """Transform the presentation at the site; labels are renormalized to
    1..n afterwards.  Raises MoveError when the site does not match, and
    NonOrientableError when an R2 merge would create a Mobius band."""
    out = _dispatch(ap, site)
    if not check_orientable(out):
        raise NonOrientableError("move result is non-orientable")
    return out


def _dispatch(ap: ArrowPresentation, site: MoveSite) -> ArrowPresentation:
    circles = list(ap.circles)
    n = ap.n_edges
    kind = site.kind
    if kind == R1_VERTEX_EDGE:
        if not site.inverse:
            (ci,), (gap,) = site.circles, site.positions
            _check_gap(ap, ci, gap)
            x = n + 1
            circles[ci] = _insert(circles[ci], gap, [(x, True)])
            circles.append(((x, True),))
            return _norm_labels(circles)
        (ci,) = site.circles
        if not 0 <= ci < len(circles) or len(circles[ci]) != 1:
            raise MoveError("R1a inverse needs a circle with exactly one arrow")
        label = circles[ci][0][0]
        del circles[ci]
        pruned = []
        for circle in circles:
            pruned.append(tuple(a for a in circle if a[0] != label))
        return _norm_labels(pruned)

    if kind == R1_DOUBLE_ARROW:
        (ci,), (pos,) = site.circles, site.positions
        if not site.inverse:
            _check_gap(ap, ci, pos)
            x = n + 1
            circles[ci] = _insert(circles[ci], pos, [(x, True), (x, True)])
            return _norm_labels(circles)
        if not 0 <= ci < len(circles):
            raise MoveError(f"no circle {ci}")
        circle = circles[ci]
        k = len(circle)
        if k < 2:
            raise MoveError("R1b inverse needs two adjacent arrows")
        a, b = circle[pos % k], circle[(pos + 1) % k]
        if a[0] != b[0] or a[1] != b[1]:
            raise MoveError("R1b inverse needs an adjacent same-label, "
                            "same-orientation pair")
        keep = [circle[t % k] for t in range(pos + 2, pos + k)]
        circles[ci] = tuple(keep)
        return _norm_labels(circles)

    if kind == R2:
        if not site.inverse:
            (c1, c2), (g1, g2) = site.circles, site.positions
            _check_gap(ap, c1, g1)
            _check_gap(ap, c2, g2)
            x, y = n + 1, n + 2
            if c1 != c2:
                alpha = circles[c1][g1:] + circles[c1][:g1]
                beta = circles[c2][g2:] + circles[c2][:g2]
                merged = (((x, True), (y, True), (x, True))
                          + beta + ((y, True),) + alpha)
                keep = [c for t, c in enumerate(circles) if t not in (c1, c2)]
                keep.append(merged)
                return _norm_labels(keep)
            if g1 == g2 and circles[c1]:
                raise MoveError("R2 on one circle needs two distinct gaps")
            lo, hi = min(g1, g2), max(g1, g2)
            seg1 = circles[c1][lo:hi]
            seg2 = circles[c1][hi:] + circles[c1][:lo]
            if g1 > g2:
                seg1, seg2 = seg2, seg1
            first = ((x, True), (y, True), (x, True)) + seg2
            second = ((y, True),) + seg1
            keep = [c for t, c in enumerate(circles) if t != c1]
            keep.extend([first, second])
            return _norm_labels(keep)
        (ci,), (pos,) = site.circles, site.positions
        if not 0 <= ci < len(circles):
            raise MoveError(f"no circle {ci}")
        circle = circles[ci]
        k = len(circle)
        if k < 3:
            raise MoveError("R2 inverse pattern needs at least three arrows")
        trio = [circle[(pos + t) % k] for t in range(3)]
        if not (trio[0][0] == trio[2][0] and trio[0][1] == trio[2][1]
                and trio[0][0] != trio[1][0]):
            raise MoveError("R2 inverse needs the pattern x y x with the "
                            "x arrows equally oriented")
        y_label, y_dir = trio[1]
        rest = [circle[(pos + 3 + t) % k] for t in range(k - 3)]
        y_at = [t for t, (lab, _) in enumerate(rest) if lab == y_label]
        if len(y_at) == 1:
            if rest[y_at[0]][1] != y_dir:
                raise MoveError("R2 inverse needs the y arrows equally "
                                "oriented on their circle")
            beta = tuple(rest[:y_at[0]])
            alpha = tuple(rest[y_at[0] + 1:])
            keep = [c for t, c in enumerate(circles) if t != ci]
            keep.extend([alpha, beta])
            return _norm_labels(keep)
        # Second y on another circle: undo the one-circle (split) direction.
        host = None
        for t, other in enumerate(circles):
            if t == ci:
                continue
            labs = [lab for lab, _ in other]
            if y_label in labs:
                host = t
                break
        if host is None:
            raise MoveError("R2 inverse cannot locate the matching y arrow")
        other = circles[host]
        p = [lab for lab, _ in other].index(y_label)
        if other[p][1] != y_dir:
            # reading the host circle the other way aligns the y arrows
            other = tuple((lab, not d) for lab, d in reversed(other))
            p = len(other) - 1 - p
        seg1 = other[p + 1:] + other[:p]
        merged = tuple(seg1) + tuple(rest)
        keep = [c for t, c in enumerate(circles) if t not in (ci, host)]
        keep.append(merged)
        return _norm_labels(keep)

    if kind == R3:
        return _apply_r3(circles, site)

    raise MoveError(f"unknown move kind {site.kind!r}")


# The local sliding pattern, read with a consistent traversal of each arc:
# arcA carries (x-, y+, z-), arcB carries (x+, z+), arcC carries (y-).
# Applying the move flips all six directions and swaps the contents of the
# pair arc and the single arc; doing it twice restores the presentation, so
# the move is its own inverse.  A candidate site matches when some choice of
# circle orientations and whole-label direction flips produces exactly this
# reading; that gauge freedom is what distinguishes legitimate sites from
# patterns that only look right (the same label words with the wrong
# relative directions come from non-orientable configurations).
_R3_DIRS_A = (False, True, False)
_R3_DIRS_B = (True, True)
_R3_DIRS_C = (False,)


def _read_run(circle, pos, length, reverse):
    k = len(circle)
    run = [circle[(pos + t) % k] for t in range(length)]
    if reverse:
        run = [(lab, not d) for lab, d in reversed(run)]
    return run


def _r3_match(circles, site):
    (ca, cb, cc), (pa, pb, pc) = site.circles, site.positions
    for t in (ca, cb, cc):
        if not 0 <= t < len(circles):
            raise MoveError(f"no circle {t}")
    ka, kb, kc = (len(circles[t]) for t in (ca, cb, cc))
    if ka < 3 or kb < 2 or kc < 1:
        raise MoveError("R3 arcs are too short")
    idx_a = [(pa + t) % ka for t in range(3)]
    idx_b = [(pb + t) % kb for t in range(2)]
    idx_c = [pc % kc]
    used = ({(ca, t) for t in idx_a} | {(cb, t) for t in idx_b}
            | {(cc, t) for t in idx_c})
    if len(used) != 6:
        raise MoveError("R3 arcs overlap")
    involved = sorted({ca, cb, cc})
    for bits in range(1 << len(involved)):
        rev = {circ: bool(bits >> i & 1) for i, circ in enumerate(involved)}
        read_a = _read_run(circles[ca], pa, 3, rev[ca])
        read_b = _read_run(circles[cb], pb, 2, rev[cb])
        read_c = _read_run(circles[cc], pc, 1, rev[cc])
        a, b, c = (lab for lab, _ in read_a)
        if len({a, b, c}) != 3:
            raise MoveError("R3 needs three distinct labels")
        if [lab for lab, _ in read_b] != [a, c] or read_c[0][0] != b:
            continue
        flips = {lab: read_a[i][1] != _R3_DIRS_A[i]
                 for i, lab in enumerate((a, b, c))}
        if any((read_b[i][1] != flips[lab]) != _R3_DIRS_B[i]
               for i, lab in enumerate((a, c))):
            continue
        if (read_c[0][1] != flips[b]) != _R3_DIRS_C[0]:
            continue
        return rev, flips, (a, b, c), (idx_a, idx_b, idx_c)
    raise MoveError("R3 arrow pattern does not match")


def _apply_r3(circles, site):
    ca, cb, cc = site.circles
    rev, flips, (a, b, c), (idx_a, idx_b, idx_c) = _r3_match(circles, site)

    def write_back(seq, reverse):
        if reverse:
            return [(lab, not d) for lab, d in reversed(seq)]
        return list(seq)

    new_a = write_back([(a, not flips[a]), (b, flips[b]), (c, not flips[c])],
                       rev[ca])
    new_b = write_back([(b, not flips[b])], rev[cb])
    new_c = write_back([(a, flips[a]), (c, flips[c])], rev[cc])
    out = []
    for t, circle in enumerate(circles):
        rebuilt = []
        pair_done = False
        for s in range(len(circle)):
            if t == ca and s in idx_a:
                rebuilt.append(new_a[idx_a.index(s)])
            elif t == cb and s in idx_b:
                if not pair_done:
                    rebuilt.extend(new_b)
                    pair_done = True
            elif t == cc and s == idx_c[0]:
                rebuilt.extend(new_c)
            else:
                rebuilt.append(circle[s])
        out.append(tuple(rebuilt))
    return _norm_labels(out)


@dataclass(frozen=True)
class InvarianceReport:
    site: MoveSite
    expected_shift: tuple[int, int]
    passed: bool
    details: tuple[str, ...] = ()

    def __bool__(self):
        return self.passed


def _homologies(ap: ArrowPresentation, max_edges: int):
    g = to_ribbon_graph(ap)
    kh = homology(build_complex(g, max_edges=max_edges))
    rkh = homology(build_reduced_complex(g, max_edges=max_edges))
    return kh, rkh


def check_invariance(ap: ArrowPresentation, site: MoveSite,
                     max_edges: int = 12) -> InvarianceReport:
    """Homology before and after the move must agree after the frozen
    per-move shift (inverted for inverse-direction moves)."""
    r, s = MOVE_SHIFTS[site.kind]
    if site.inverse:
        r, s = -r, -s
    after = apply_move(ap, site)
    kh0, rkh0 = _homologies(ap, max_edges)
    kh1, rkh1 = _homologies(after, max_edges)
    failures = []
    if kh1 != shift(kh0, r, s):
        failures.append(f"Kh mismatch: {kh1.entries} vs shifted {kh0.entries}")
    if rkh1 != shift(rkh0, r, s):
        failures.append(f"rKh mismatch: {rkh1.entries} vs shifted {rkh0.entries}")
    return InvarianceReport(site=site, expected_shift=(r, s),
                            passed=not failures, details=tuple(failures))


# -- site enumeration (used by the invariance suites) -----------------------

def find_sites(ap: ArrowPresentation, kinds=(R1_VERTEX_EDGE, R1_DOUBLE_ARROW,
                                             R2, R3)) -> list[MoveSite]:
    sites: list[MoveSite] = []
    n_circ = len(ap.circles)
    gaps = [max(len(c), 1) for c in ap.circles]
    if R1_VERTEX_EDGE in kinds:
        for ci in range(n_circ):
            for g in range(gaps[ci]):
                sites.append(MoveSite(R1_VERTEX_EDGE, (ci,), (g,)))
            if len(ap.circles[ci]) == 1:
                sites.append(MoveSite(R1_VERTEX_EDGE, (ci,), (), inverse=True))
    if R1_DOUBLE_ARROW in kinds:
        for ci in range(n_circ):
            for g in range(gaps[ci]):
                sites.append(MoveSite(R1_DOUBLE_ARROW, (ci,), (g,)))
            circle = ap.circles[ci]
            k = len(circle)
            for p in range(k if k >= 2 else 0):
                a, b = circle[p], circle[(p + 1) % k]
                if a[0] == b[0] and a[1] == b[1]:
                    sites.append(MoveSite(R1_DOUBLE_ARROW, (ci,), (p,),
                                          inverse=True))
    if R2 in kinds:
        for c1 in range(n_circ):
            for g1 in range(gaps[c1]):
                for c2 in range(n_circ):
                    for g2 in range(gaps[c2]):
                        if c1 == c2 and g1 >= g2 and ap.circles[c1]:
                            continue
                        sites.append(MoveSite(R2, (c1, c2), (g1, g2)))
        for ci in range(n_circ):
            circle = ap.circles[ci]
            k = len(circle)
            if k < 3:
                continue
            for p in range(k):
                trio = [circle[(p + t) % k] for t in range(3)]
                if (trio[0][0] == trio[2][0] and trio[0][0] != trio[1][0]
                        and trio[0][1] == trio[2][1]):
                    sites.append(MoveSite(R2, (ci,), (p,), inverse=True))
    if R3 in kinds:
        sites.extend(_find_r3_sites(ap))
    return sites


def _find_r3_sites(ap: ArrowPresentation) -> list[MoveSite]:
    sites = []
    occ = ap.occurrences()
    for ca, circle in enumerate(ap.circles):
        ka = len(circle)
        if ka < 3:
            continue
        for pa in range(ka):
            idx = [(pa + t) % ka for t in range(3)]
            if len(set(idx)) != 3:
                continue
            labels = {lab for lab, _ in (circle[t] for t in idx)}
            if len(labels) != 3:
                continue
            a, b, c = (circle[t][0] for t in idx)
            # candidate pair arcs: either partner of a or of c, with the
            # other one adjacent; candidate singles: partner of b
            pair_starts = set()
            for lab in (a, c):
                for (cb, pb) in occ[lab]:
                    kb = len(ap.circles[cb])
                    pair_starts.add((cb, pb))
                    pair_starts.add((cb, (pb - 1) % kb))
            for (cb, pb) in sorted(pair_starts):
                for (cc, pc) in occ[b]:
                    site = MoveSite(R3, (ca, cb, cc), (pa, pb, pc))
                    try:
                        _r3_match(list(ap.circles), site)
                    except MoveError:
                        continue
                    sites.append(site)
    return sites
