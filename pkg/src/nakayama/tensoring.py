"""Tensor products of bimodules over the cyclic Nakayama algebra.

The tensor over the algebra is computed gradedwise: the piece of x (x) y at
a torus vertex (i, l) is the direct sum over middle residues j of
x_{i|j} (x) y_{j|l}, divided by the balancing relations for the arrow
generators,

    (m a_j) (x) y  =  m (x) (a_j y),

with m running over a basis of x at (i, j+1) and y over a basis at (j, l).
Idempotent balancing is absorbed by the grading and squares of arrows
vanish, so these rows span every balancing relation.

Everything is deterministic: pair bases are ordered lexicographically by
(middle residue, left index, right index) and the quotient basis consists
of the non-pivot pairs of a reduced echelon form, so equal inputs always
give equal outputs, and a map produced by ``tensor_map`` has source and
target equal (not merely isomorphic) to the corresponding ``tensor``
results.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .algebras import Vertex, residue
from .bimodules import Bimodule, BimoduleMap
from .linalg import ExactMatrix, ONE, ZERO, sparse_rref

PairKey = Tuple[int, int, int]


class TensorSpace:
    """Pair bases and the balancing quotient of x (x) y, vertex by vertex.

    Holds, for every torus vertex with a nonzero quotient: the ordered pair
    basis, a section of the quotient map (matrix pairdim x qdim) and the
    projection (qdim x pairdim), with projection . section = identity.
    """

    def __init__(self, x: Bimodule, y: Bimodule) -> None:
        if x.n != y.n:
            raise ValueError("tensor of bimodules over different n")
        self.x, self.y = x, y
        n = x.n
        self.n = n
        self.pair_bases: Dict[Vertex, List[PairKey]] = {}
        self.pair_index: Dict[Vertex, Dict[PairKey, int]] = {}
        self.sections: Dict[Vertex, ExactMatrix] = {}
        self.projections: Dict[Vertex, ExactMatrix] = {}
        self.qdims: Dict[Vertex, int] = {}
        for i in range(1, n + 1):
            for l in range(1, n + 1):
                basis: List[PairKey] = []
                for j in range(1, n + 1):
                    for xa in range(x.dim(i, j)):
                        for yb in range(y.dim(j, l)):
                            basis.append((j, xa, yb))
                if not basis:
                    continue
                v = (i, l)
                idx = {p: t for t, p in enumerate(basis)}
                self.pair_bases[v] = basis
                self.pair_index[v] = idx
                rows = []
                for a in range(1, n + 1):
                    ap = residue(a + 1, n)
                    hx = x.hmap(i, ap)
                    vy = y.vmap(a, l)
                    for xa in range(x.dim(i, ap)):
                        for yb in range(y.dim(a, l)):
                            row = {}
                            for s in range(x.dim(i, a)):
                                c = hx.get(s, xa)
                                if c:
                                    t = idx[(a, s, yb)]
                                    row[t] = row.get(t, ZERO) + c
                            for tt in range(y.dim(ap, l)):
                                c = vy.get(tt, yb)
                                if c:
                                    t = idx[(ap, xa, tt)]
                                    row[t] = row.get(t, ZERO) - c
                            row = {t: c for t, c in row.items() if c}
                            if row:
                                rows.append(row)
                rref_rows, pivots = sparse_rref(rows, len(basis))
                pivot_set = set(pivots)
                frees = [c for c in range(len(basis)) if c not in pivot_set]
                if not frees:
                    continue
                qdim = len(frees)
                free_pos = {f: t for t, f in enumerate(frees)}
                sec = [[ZERO] * qdim for _ in basis]
                for t, f in enumerate(frees):
                    sec[f][t] = ONE
                proj = [[ZERO] * len(basis) for _ in range(qdim)]
                for t, f in enumerate(frees):
                    proj[t][f] = ONE
                for rrow, p in zip(rref_rows, pivots):
                    for col, coef in rrow.items():
                        if col != p:
                            proj[free_pos[col]][p] = -coef
                self.sections[v] = ExactMatrix.from_rows(sec)
                self.projections[v] = ExactMatrix.from_rows(proj)
                self.qdims[v] = qdim

    # -- raw (pair-level) maps --------------------------------------------

    def _raw_vertical(self, i: int, l: int) -> ExactMatrix:
        """Left action of a_i on the pair space at (i, l)."""
        n = self.n
        src = self.pair_bases[(i, l)]
        tv = (residue(i + 1, n), l)
        tgt_idx = self.pair_index.get(tv, {})
        tgt_dim = len(self.pair_bases.get(tv, []))
        ent = [[ZERO] * len(src) for _ in range(tgt_dim)]
        for c, (j, xa, yb) in enumerate(src):
            vx = self.x.vmap(i, j)
            for s in range(self.x.dim(i + 1, j)):
                coef = vx.get(s, xa)
                if coef:
                    ent[tgt_idx[(j, s, yb)]][c] += coef
        return ExactMatrix.from_rows(ent) if tgt_dim else \
            ExactMatrix.zeros(0, len(src))

    def _raw_horizontal(self, i: int, l: int) -> ExactMatrix:
        """Right action of a_{l-1} on the pair space at (i, l)."""
        n = self.n
        src = self.pair_bases[(i, l)]
        tv = (i, residue(l - 1, n))
        tgt_idx = self.pair_index.get(tv, {})
        tgt_dim = len(self.pair_bases.get(tv, []))
        ent = [[ZERO] * len(src) for _ in range(tgt_dim)]
        for c, (j, xa, yb) in enumerate(src):
            hy = self.y.hmap(j, l)
            for t in range(self.y.dim(j, l - 1)):
                coef = hy.get(t, yb)
                if coef:
                    ent[tgt_idx[(j, xa, t)]][c] += coef
        return ExactMatrix.from_rows(ent) if tgt_dim else \
            ExactMatrix.zeros(0, len(src))

    def assemble(self) -> Bimodule:
        """The tensor product as a torus representation."""
        n = self.n
        maps = {}
        for (i, l) in self.qdims:
            for kind in ("v", "h"):
                if kind == "v":
                    tv = (residue(i + 1, n), l)
                else:
                    tv = (i, residue(l - 1, n))
                if tv not in self.qdims:
                    continue
                raw = self._raw_vertical(i, l) if kind == "v" \
                    else self._raw_horizontal(i, l)
                mat = self.projections[tv].mul(raw).mul(
                    self.sections[(i, l)])
                if not mat.is_zero():
                    maps[(kind, i, l)] = mat
        return Bimodule(n, dict(self.qdims), maps)


def tensor(x: Bimodule, y: Bimodule) -> Bimodule:
    """x (x) y over the algebra, as a torus representation.

    >>> from nakayama.bimodules import regular_bimodule
    >>> reg = regular_bimodule(2)
    >>> tensor(reg, reg).total_dim
    4
    """
    out = TensorSpace(x, y).assemble()
    out.check_relations()
    return out


def tensor_map(x: Bimodule, f: BimoduleMap) -> BimoduleMap:
    """The induced map x (x) f.source -> x (x) f.target.

    Its source and target coincide on the nose with the bimodules produced
    by ``tensor(x, f.source)`` and ``tensor(x, f.target)``, so the result
    composes directly with any split maps computed against those.
    """
    src_space = TensorSpace(x, f.source)
    tgt_space = TensorSpace(x, f.target)
    src = src_space.assemble()
    tgt = tgt_space.assemble()
    comps = {}
    for v, src_basis in src_space.pair_bases.items():
        if v not in src_space.qdims or v not in tgt_space.qdims:
            continue
        tgt_idx = tgt_space.pair_index[v]
        tgt_dim = len(tgt_space.pair_bases[v])
        ent = [[ZERO] * len(src_basis) for _ in range(tgt_dim)]
        for c, (j, xa, yb) in enumerate(src_basis):
            comp = f.component(j, v[1])
            for cc in range(comp.rows):
                coef = comp.get(cc, yb)
                if coef:
                    ent[tgt_idx[(j, xa, cc)]][c] += coef
        raw = ExactMatrix.from_rows(ent) if tgt_dim else \
            ExactMatrix.zeros(0, len(src_basis))
        mat = tgt_space.projections[v].mul(raw).mul(src_space.sections[v])
        comps[v] = mat
    return BimoduleMap(src, tgt, comps)
