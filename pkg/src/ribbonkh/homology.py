"""Exact integer homology of bigraded complexes via Smith normal form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import BigradedComplex
from .ribbon import RibbonGraph, RibbonGraphError


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _find_pivot(m, t, rows, cols):
    best = None
    for r in range(t, rows):
        row = m[r]
        for c in range(t, cols):
            v = row[c]
            if v:
                a = abs(v)
                if best is None or a < best[0]:
                    best = (a, r, c)
                    if a == 1:
                        return best
    return best


def _sparse_unit_reduce(rows_of: dict[int, dict[int, int]]):
    """Strip unit pivots with sparse row operations; returns (count, rest).

    Eliminating a +-1 pivot contributes a divisor 1 to the Smith form and
    keeps all arithmetic integral, which handles the bulk of cube
    differentials; the leftover core (no unit entries) is densified for the
    general algorithm.  Pivots greedily minimize fill.
    """
    rows_by_col: dict[int, set[int]] = {}
    units: set[tuple[int, int]] = set()
    for r, row in rows_of.items():
        for c, v in row.items():
            rows_by_col.setdefault(c, set()).add(r)
            if v in (1, -1):
                units.add((r, c))
    count = 0
    while units:
        best = None
        for (r, c) in units:
            fill = (len(rows_of[r]) - 1) * (len(rows_by_col[c]) - 1)
            if best is None or fill < best[0]:
                best = (fill, r, c)
                if fill == 0:
                    break
        _, pr, pc = best
        pivot_row = rows_of.pop(pr)
        sign = pivot_row[pc]
        for c in pivot_row:
            rows_by_col[c].discard(pr)
            units.discard((pr, c))
        for r in list(rows_by_col.get(pc, ())):
            row = rows_of[r]
            k = row[pc] * sign
            for c, v in pivot_row.items():
                old = row.get(c, 0)
                new = old - k * v
                if (r, c) in units:
                    units.discard((r, c))
                if new:
                    row[c] = new
                    rows_by_col.setdefault(c, set()).add(r)
                    if new in (1, -1):
                        units.add((r, c))
                elif old:
                    del row[c]
                    rows_by_col[c].discard(r)
            if not row:
                del rows_of[r]
        rows_by_col.pop(pc, None)
        count += 1
    return count, rows_of


def _snf_from_sparse(rows_of: dict[int, dict[int, int]]):
    unit_count, rest = _sparse_unit_reduce(rows_of)
    if rest:
        row_ids = sorted(rest)
        col_ids = sorted({c for row in rest.values() for c in row})
        col_pos = {c: i for i, c in enumerate(col_ids)}
        dense = [[0] * len(col_ids) for _ in row_ids]
        for i, r in enumerate(row_ids):
            for c, v in rest[r].items():
                dense[i][col_pos[c]] = v
        diag, rank = _dense_snf(dense)
    else:
        diag, rank = (), 0
    return (1,) * unit_count + diag, unit_count + rank


def smith_normal_form(matrix) -> tuple[tuple[int, ...], int]:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (diagonal, rank): the nonzero diagonal entries d_1 | d_2 | ...
    (all positive) and their count.  Unit entries are stripped by a sparse
    pass first; the core uses smallest-magnitude pivoting.  Arithmetic is
    exact throughout.
    """
    rows_of: dict[int, dict[int, int]] = {}
    for r, row in enumerate(matrix):
        entries = {c: v for c, v in enumerate(row) if v}
        if entries:
            rows_of[r] = entries
    return _snf_from_sparse(rows_of)


def _dense_snf(matrix) -> tuple[tuple[int, ...], int]:
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    t = 0
    while True:
        piv = _find_pivot(m, t, rows, cols)
        if piv is None:
            break
        _, pr, pc = piv
        m[t], m[pr] = m[pr], m[t]
        if pc != t:
            for row in m:
                row[t], row[pc] = row[pc], row[t]
        # Clear row and column t; reducing may reintroduce entries, so loop.
        while True:
            p = m[t][t]
            done = True
            for r in range(t + 1, rows):
                if m[r][t]:
                    q = m[r][t] // p
                    if q:
                        mr, mt = m[r], m[t]
                        for c in range(t, cols):
                            mr[c] -= q * mt[c]
                    if m[r][t]:
                        m[t], m[r] = m[r], m[t]
                        done = False
            if not done:
                continue
            for c in range(t + 1, cols):
                if m[t][c]:
                    q = m[t][c] // p
                    if q:
                        for r in range(t, rows):
                            m[r][c] -= q * m[r][t]
                    if m[t][c]:
                        for r in range(t, rows):
                            m[r][t], m[r][c] = m[r][c], m[r][t]
                        done = False
            if done:
                break
        # Divisibility fix-up: the pivot must divide the rest of the block.
        p = m[t][t]
        offender = None
        for r in range(t + 1, rows):
            for c in range(t + 1, cols):
                if m[r][c] % p:
                    offender = r
                    break
            if offender is not None:
                break
        if offender is not None:
            mr, mt = m[offender], m[t]
            for c in range(t, cols):
                mt[c] += mr[c]
            continue
        t += 1
    diag = []
    for k in range(t):
        diag.append(abs(m[k][k]))
    return tuple(diag), t


def smith_normal_form_with_transforms(matrix):
    """As smith_normal_form, but also return unimodular U, V with U M V = D."""
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(a, b):
        m[a], m[b] = m[b], m[a]
        u[a], u[b] = u[b], u[a]

    def swap_cols(a, b):
        for row in m:
            row[a], row[b] = row[b], row[a]
        for row in v:
            row[a], row[b] = row[b], row[a]

    def add_row(dst, src, q):
        mdst, msrc = m[dst], m[src]
        udst, usrc = u[dst], u[src]
        for c in range(cols):
            mdst[c] += q * msrc[c]
        for c in range(rows):
            udst[c] += q * usrc[c]

    def add_col(dst, src, q):
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def scale_row(r, s):
        if s == -1:
            m[r] = [-x for x in m[r]]
            u[r] = [-x for x in u[r]]

    t = 0
    while True:
        piv = _find_pivot(m, t, rows, cols)
        if piv is None:
            break
        _, pr, pc = piv
        if pr != t:
            swap_rows(t, pr)
        if pc != t:
            swap_cols(t, pc)
        while True:
            p = m[t][t]
            done = True
            for r in range(t + 1, rows):
                if m[r][t]:
                    add_row(r, t, -(m[r][t] // p))
                    if m[r][t]:
                        swap_rows(t, r)
                        done = False
            if not done:
                continue
            for c in range(t + 1, cols):
                if m[t][c]:
                    add_col(c, t, -(m[t][c] // p))
                    if m[t][c]:
                        swap_cols(t, c)
                        done = False
            if done:
                break
        p = m[t][t]
        offender = None
        for r in range(t + 1, rows):
            if any(m[r][c] % p for c in range(t + 1, cols)):
                offender = r
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if p < 0:
            scale_row(t, -1)
        t += 1
    diag = tuple(m[k][k] for k in range(t))
    return diag, t, u, v


def _matrix_rank(matrix) -> int:
    """Rank over Q by fraction-free Gaussian elimination (used as the fast
    path for free ranks; torsion always goes through the Smith form)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    r = 0
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if m[rr][c]:
                piv = rr
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        for rr in range(r + 1, rows):
            if m[rr][c]:
                f = m[rr][c] * inv
                for cc in range(c, cols):
                    m[rr][cc] -= f * m[r][cc]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


# ---------------------------------------------------------------------------
# Bigraded groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BigradedGroup:
    """Map (i, j) -> (free rank, torsion divisor chain); absent key = 0."""

    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), (rank, torsion) in self.entries.items():
            torsion = tuple(int(t) for t in torsion)
            if any(t < 2 for t in torsion):
                raise ValueError("torsion divisors must be >= 2")
            for a, b in zip(torsion, torsion[1:]):
                if b % a:
                    raise ValueError("torsion divisors must form a chain")
            if rank or torsion:
                clean[(int(i), int(j))] = (int(rank), torsion)
        object.__setattr__(self, "entries", clean)

    def rank(self, i: int, j: int) -> int:
        return self.entries.get((i, j), (0, ()))[0]

    def torsion(self, i: int, j: int) -> tuple[int, ...]:
        return self.entries.get((i, j), (0, ()))[1]

    def total_rank(self) -> int:
        return sum(r for r, _ in self.entries.values())

    def is_trivial(self) -> bool:
        return not self.entries

    def support(self):
        return sorted(self.entries)

    def to_json(self) -> str:
        items = [{"i": i, "j": j, "rank": r, "torsion": list(t)}
                 for (i, j), (r, t) in self.entries.items()]
        items.sort(key=lambda d: (d["j"], d["i"]))
        return json.dumps(items)

    @staticmethod
    def from_json(text: str) -> "BigradedGroup":
        data = json.loads(text)
        return BigradedGroup({(d["i"], d["j"]): (d["rank"], tuple(d["torsion"]))
                              for d in data})


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in q, stored as exponent -> coefficient."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs",
            {int(e): int(c) for e, c in self.coeffs.items() if c})

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}q^{e}" if e != 1 else f"{mag}q"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)


def monomial(exp: int, coeff: int = 1) -> LaurentPoly:
    return LaurentPoly({exp: coeff})


def homology(c: BigradedComplex) -> BigradedGroup:
    """Kernel-mod-image in every bigrading, with the complex's shift applied."""
    c.check_d_squared()
    ranks: dict = {}
    torsions: dict = {}
    for (i, j) in c.generators:
        block = c.differentials.get((i, j))
        if block:
            mat = c.dense(i, j)
            diag, rank = smith_normal_form(mat)
            ranks[(i, j)] = rank
            torsions[(i + 1, j)] = tuple(d for d in diag if d > 1)
        else:
            ranks[(i, j)] = 0
    entries = {}
    r_shift, s_shift = c.shift
    for (i, j), gens in c.generators.items():
        free = len(gens) - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        tor = torsions.get((i, j), ())
        if free < 0:
            raise RibbonGraphError("negative rank: inconsistent complex")
        if free or tor:
            entries[(i + r_shift, j + s_shift)] = (free, tor)
    return BigradedGroup(entries)


def shift(group: BigradedGroup, r: int, s: int) -> BigradedGroup:
    return BigradedGroup({(i + r, j + s): val
                          for (i, j), val in group.entries.items()})


def graded_euler_characteristic(group: BigradedGroup) -> LaurentPoly:
    coeffs: dict[int, int] = {}
    for (i, j), (rank, _) in group.entries.items():
        coeffs[j] = coeffs.get(j, 0) + (rank if i % 2 == 0 else -rank)
    return LaurentPoly(coeffs)


def _deltas(group: BigradedGroup) -> list[Fraction]:
    return [Fraction(j, 2) - i for (i, j) in group.entries]


def homological_width(group: BigradedGroup) -> int:
    """Number of occupied diagonals delta = j/2 - i (inclusive span)."""
    if group.is_trivial():
        raise ValueError("homological width of the trivial group")
    parities = {j % 2 for (_, j) in group.entries}
    if len(parities) > 1:
        raise ValueError("mixed polynomial-grading parity")
    deltas = _deltas(group)
    width = max(deltas) - min(deltas) + 1
    assert width.denominator == 1
    return int(width)


# ---------------------------------------------------------------------------
# Paper-theorem checkers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    details: tuple[str, ...] = ()

    def __bool__(self):
        return self.passed


def _kh_pair(g: RibbonGraph, max_edges: int = 14):
    from .complexes import build_complex, build_reduced_complex
    kh = homology(build_complex(g, max_edges=max_edges))
    rkh = homology(build_reduced_complex(g, max_edges=max_edges))
    return kh, rkh


def check_duality(g: RibbonGraph, max_edges: int = 14) -> CheckReport:
    """Rank and torsion relations between a connected graph and its dual:
    rank^(i,j)(G*) = rank^(n-i,n-j)(G) and
    torsion^(i,j)(G*) = torsion^(n-i+1,n-j)(G), for Kh and reduced Kh.

    The torsion relation keeps the polynomial grading: differentials
    preserve j, so dualizing the complex sends the j-summand to the
    (-j)-summand and universal coefficients only shifts i.
    """
    if not g.is_connected():
        raise RibbonGraphError("duality check needs a connected graph")
    n = g.n_edges
    gd = g.dual()
    kh, rkh = _kh_pair(g, max_edges)
    kh_d, rkh_d = _kh_pair(gd, max_edges)
    failures = []
    for label, h, hd in (("Kh", kh, kh_d), ("rKh", rkh, rkh_d)):
        keys = {(i, j) for (i, j) in hd.entries}
        keys |= {(n - i, n - j) for (i, j) in h.entries}
        keys |= {(n - i + 1, n - j) for (i, j) in h.entries}
        for (i, j) in sorted(keys):
            if hd.rank(i, j) != h.rank(n - i, n - j):
                failures.append(
                    f"{label}: rank at ({i},{j}) of dual is {hd.rank(i, j)}, "
                    f"expected rank at ({n - i},{n - j}) = {h.rank(n - i, n - j)}")
                break
            if hd.torsion(i, j) != h.torsion(n - i + 1, n - j):
                failures.append(
                    f"{label}: torsion at ({i},{j}) of dual is {hd.torsion(i, j)}, "
                    f"expected {h.torsion(n - i + 1, n - j)}")
                break
    return CheckReport("duality", not failures, tuple(failures))


def check_grading_theorems(g: RibbonGraph, max_edges: int = 14) -> CheckReport:
    """Width bound, loopless and adequate extremal gradings, and the
    polynomial-grading spread bound, on reduced homology."""
    if not g.is_connected():
        raise RibbonGraphError("grading checks need a connected graph")
    from .complexes import build_reduced_complex
    rkh = homology(build_reduced_complex(g, max_edges=max_edges))
    genus = g.genus()
    n_v, n_e = g.n_vertices, g.n_edges
    n_f = g.face_count()
    failures = []
    if rkh.is_trivial():
        failures.append("reduced homology is trivial")
        return CheckReport("grading", False, tuple(failures))
    hw = homological_width(rkh)
    if hw > genus + 1:
        failures.append(f"hw {hw} exceeds genus+1 = {genus + 1}")
    j_min = min(j for (_, j) in rkh.entries)
    j_max = max(j for (_, j) in rkh.entries)
    if not g.has_loop():
        if j_min != 1 - n_v:
            failures.append(f"loopless: j_min {j_min} != 1-|V| = {1 - n_v}")
        row = {(i, j): v for (i, j), v in rkh.entries.items() if j == 1 - n_v}
        if row != {(0, 1 - n_v): (1, ())}:
            failures.append(f"loopless: bottom row {row} is not Z at (0,{1 - n_v})")
        if g.is_adequate():
            if j_max != n_e + n_f - 1:
                failures.append(
                    f"adequate: j_max {j_max} != |E|+|F|-1 = {n_e + n_f - 1}")
            top = {(i, j): v for (i, j), v in rkh.entries.items() if j == j_max}
            if top != {(n_e, j_max): (1, ())}:
                failures.append(f"adequate: top row {top} is not Z at ({n_e},{j_max})")
            if hw != genus + 1:
                failures.append(f"adequate: hw {hw} != genus+1 = {genus + 1}")
    if j_max - j_min > 2 * (n_e - genus):
        failures.append(
            f"j spread {j_max - j_min} exceeds 2(|E|-g) = {2 * (n_e - genus)}")
    return CheckReport("grading", not failures, tuple(failures))
