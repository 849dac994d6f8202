"""The bigraded hypercube chain complex of a ribbon graph.

Vertices of the hypercube are spanning subgraphs; each carries one tensor
factor of V = Z v_- + Z v_+ per boundary component of its neighborhood.
Edge maps merge two factors with m or split one with Delta, composed with
a sign assignment that makes every square of the cube anticommute.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .ribbon import RibbonGraph, RibbonGraphError

V_MINUS, V_PLUS = 0, 1


@dataclass(frozen=True)
class EdgeAssignment:
    """Signs on hypercube edges with an odd number of -1 per square.

    The standard assignment gives the edge flipping coordinate k out of the
    vertex `mask` the sign (-1)^(number of set bits below k).  Any valid
    assignment differs from it by a coboundary eta of vertex signs, which is
    how randomized assignments are produced.
    """

    n: int
    eta: tuple[int, ...] | None = None

    def sign(self, mask: int, k: int) -> int:
        s = -1 if (mask & ((1 << k) - 1)).bit_count() % 2 else 1
        if self.eta is not None:
            s *= self.eta[mask] * self.eta[mask | (1 << k)]
        return s

    def as_dict(self) -> dict[tuple[int, int], int]:
        out = {}
        for mask in range(1 << self.n):
            for k in range(self.n):
                if not mask >> k & 1:
                    out[(mask, k)] = self.sign(mask, k)
        return out

    def validate(self) -> None:
        for mask in range(1 << self.n):
            for k in range(self.n):
                if mask >> k & 1:
                    continue
                for l in range(k + 1, self.n):
                    if mask >> l & 1:
                        continue
                    total = (self.sign(mask, k) * self.sign(mask | 1 << k, l)
                             * self.sign(mask, l) * self.sign(mask | 1 << l, k))
                    if total != -1:
                        raise ValueError(f"square at {mask} ({k},{l}) is even")


def standard_edge_assignment(n: int) -> EdgeAssignment:
    return EdgeAssignment(n=n)


def random_edge_assignment(n: int, rng: random.Random) -> EdgeAssignment:
    eta = tuple(rng.choice((1, -1)) for _ in range(1 << n))
    return EdgeAssignment(n=n, eta=eta)


@dataclass(frozen=True)
class BigradedComplex:
    """Free Z-modules per bigrading with integer differentials d: (i,j)->(i+1,j).

    generators[(i, j)] lists (mask, labeling) pairs, states in binary order
    and labelings lexicographic (v_- before v_+) over the canonical component
    order of each subgraph.  differentials[(i, j)] is a sparse integer matrix
    {(row, col): value} whose rows index generators[(i+1, j)].  The (r, s)
    shift is bookkeeping applied when homology is read off.
    """

    generators: dict
    differentials: dict
    shift: tuple[int, int] = (0, 0)
    meta: dict = field(default_factory=dict)

    def gradings(self):
        return sorted(self.generators)

    def dim(self, i: int, j: int) -> int:
        return len(self.generators.get((i, j), ()))

    def dense(self, i: int, j: int) -> list[list[int]]:
        rows, cols = self.dim(i + 1, j), self.dim(i, j)
        mat = [[0] * cols for _ in range(rows)]
        for (r, c), v in self.differentials.get((i, j), {}).items():
            mat[r][c] = v
        return mat

    def check_d_squared(self) -> None:
        for (i, j) in self.generators:
            d1 = self.differentials.get((i, j))
            d2 = self.differentials.get((i + 1, j))
            if not d1 or not d2:
                continue
            by_col: dict[int, list[tuple[int, int]]] = {}
            for (r, c), v in d2.items():
                by_col.setdefault(c, []).append((r, v))
            acc: dict[tuple[int, int], int] = {}
            for (r1, c1), v1 in d1.items():
                for r2, v2 in by_col.get(r1, ()):
                    key = (r2, c1)
                    acc[key] = acc.get(key, 0) + v1 * v2
            if any(v != 0 for v in acc.values()):
                raise RibbonGraphError(f"d o d != 0 at bigrading ({i},{j})")

    def total_dimension(self) -> int:
        return sum(len(g) for g in self.generators.values())


@lru_cache(maxsize=32)
def _all_components(g: RibbonGraph):
    """Per-mask canonical component data, cached per graph (rebuilding the
    same cube with many edge assignments is the common hot path)."""
    return tuple(_components(g, mask) for mask in range(1 << g.n_edges))


def _components(g: RibbonGraph, mask: int):
    """Canonical component list for a subgraph: isolated vertices first
    (by vertex index), then boundary orbits (by minimal side)."""
    bw = g.boundary_walks(mask)
    comps: list = [("v", v) for v in bw.isolated]
    orbit_of: dict[int, int] = {}
    walks = sorted(bw.walks, key=min)
    for w in walks:
        idx = len(comps)
        comps.append(("w", min(w)))
        for h in w:
            orbit_of[h] = idx
    return tuple(comps), orbit_of


def _marked_component(g: RibbonGraph, basepoint, comps, orbit_of) -> int:
    v, gap = basepoint
    if not 0 <= v < g.n_vertices:
        raise RibbonGraphError(f"invalid basepoint vertex {v}")
    rot = g.rotations[v]
    if not rot:
        if gap != 0:
            raise RibbonGraphError("invalid basepoint gap on a bare vertex")
        return comps.index(("v", v))
    if not 0 <= gap < len(rot):
        raise RibbonGraphError(f"invalid basepoint gap {gap}")
    return orbit_of[rot[gap]]


def build_complex(g: RibbonGraph, eps: EdgeAssignment | None = None, *,
                  reduced: bool = False, basepoint: tuple[int, int] = (0, 0),
                  max_edges: int = 14) -> BigradedComplex:
    """Assemble the cube complex (reduced: marked component pinned to v_-,
    with the polynomial shift {1})."""
    n = g.n_edges
    if n > max_edges:
        raise RibbonGraphError(
            f"{n} edges exceeds the {max_edges}-edge cap (2^n states); "
            "raise max_edges to proceed")
    if eps is None:
        eps = standard_edge_assignment(n)
    if eps.n != n:
        raise RibbonGraphError("edge assignment size mismatch")

    comp_data = _all_components(g)
    marked = []
    for mask in range(1 << n):
        comps, orbit_of = comp_data[mask]
        marked.append(_marked_component(g, basepoint, comps, orbit_of)
                      if reduced else -1)

    generators: dict = {}
    index: dict = {}

    def labelings(n_comps: int, fixed: int):
        if n_comps == 0:
            yield ()
            return
        free = [c for c in range(n_comps) if c != fixed]
        for bits in range(1 << len(free)):
            lab = [V_MINUS] * n_comps
            for pos, c in enumerate(reversed(free)):
                if bits >> pos & 1:
                    lab[c] = V_PLUS
            yield tuple(lab)

    labs_of_mask: list[list[tuple]] = []
    for mask in range(1 << n):
        comps, _ = comp_data[mask]
        i = mask.bit_count()
        labs = sorted(labelings(len(comps), marked[mask]))
        labs_of_mask.append(labs)
        for lab in labs:
            j = i + sum(1 if x == V_PLUS else -1 for x in lab)
            key = (i, j)
            block = generators.setdefault(key, [])
            index[(mask, lab)] = len(block)
            block.append((mask, lab))

    differentials: dict = {}
    for mask in range(1 << n):
        comps_i, orbit_i = comp_data[mask]
        i = mask.bit_count()
        for k in range(n):
            if mask >> k & 1:
                continue
            target = mask | 1 << k
            comps_j, orbit_j = comp_data[target]
            sgn = eps.sign(mask, k)
            ca, cb = orbit_i[2 * k], orbit_i[2 * k + 1]
            # Correspondence between components: isolated ones are shared,
            # an orbit maps to the orbit of any of its sides.
            fwd = {}
            for ci, comp in enumerate(comps_i):
                if comp[0] == "v":
                    fwd[ci] = comps_j.index(comp)
            for h in range(2 * n):
                fwd.setdefault(orbit_i[h], orbit_j[h])
            if ca != cb:
                merge, c_new = True, orbit_j[2 * k]
            else:
                merge = False
                c1, c2 = orbit_j[2 * k], orbit_j[2 * k + 1]
            for lab in labs_of_mask[mask]:
                out = [None] * len(comps_j)
                for ci in range(len(comps_i)):
                    if merge and ci in (ca, cb):
                        continue
                    if not merge and ci == ca:
                        continue
                    out[fwd[ci]] = lab[ci]
                terms = []
                if merge:
                    a, b = lab[ca], lab[cb]
                    if a == V_PLUS and b == V_PLUS:
                        terms.append(((c_new, V_PLUS),))
                    elif a == V_MINUS and b == V_MINUS:
                        pass
                    else:
                        terms.append(((c_new, V_MINUS),))
                else:
                    if lab[ca] == V_PLUS:
                        terms.append(((c1, V_PLUS), (c2, V_MINUS)))
                        terms.append(((c1, V_MINUS), (c2, V_PLUS)))
                    else:
                        terms.append(((c1, V_MINUS), (c2, V_MINUS)))
                if not terms:
                    continue
                j = i + sum(1 if x == V_PLUS else -1 for x in lab)
                col = index[(mask, lab)]
                block = differentials.setdefault((i, j), {})
                for assignment in terms:
                    tlab = list(out)
                    for c, val in assignment:
                        tlab[c] = val
                    tkey = (target, tuple(tlab))
                    if tkey not in index:
                        continue  # reduced complex: v_+ on marked side drops out
                    row = index[tkey]
                    rc = (row, col)
                    block[rc] = block.get(rc, 0) + sgn

    for key in list(differentials):
        differentials[key] = {rc: v for rc, v in differentials[key].items() if v}
        if not differentials[key]:
            del differentials[key]
    generators = {k: tuple(v) for k, v in generators.items()}
    shift = (0, 1) if reduced else (0, 0)
    meta = {"n_edges": n, "reduced": reduced}
    if reduced:
        meta["basepoint"] = tuple(basepoint)
    return BigradedComplex(generators=generators, differentials=differentials,
                           shift=shift, meta=meta)


def build_reduced_complex(g: RibbonGraph, basepoint: tuple[int, int] = (0, 0),
                          eps: EdgeAssignment | None = None,
                          max_edges: int = 14) -> BigradedComplex:
    return build_complex(g, eps, reduced=True, basepoint=basepoint,
                         max_edges=max_edges)


def complex_to_json(c: BigradedComplex) -> str:
    """Dump generator counts and row-major differential matrices per (i,j)."""
    blocks = []
    for (i, j) in c.gradings():
        mat = c.dense(i, j)
        blocks.append({
            "i": i, "j": j,
            "generators": c.dim(i, j),
            "d_rows": len(mat),
            "d_cols": c.dim(i, j),
            "d": [v for row in mat for v in row],
        })
    return json.dumps({"shift": list(c.shift), "blocks": blocks}, indent=0)
