"""Bimodules over the cyclic Nakayama algebra, as torus quiver representations.

A bimodule is stored as one vector space per torus vertex (i, j), namely the
piece e_i X e_j, together with a matrix for every vertical arrow (left action
of a_i) and every horizontal arrow (right action of a_{j-1}); the three torus
relation families must hold.

The named catalog consists of the projective-injectives P_{i|j}, the simples
L_{i|j}, and the string families W/S/N/M with a valley count k.  Each string
is built as a walk on the universal cover of the torus and pushed down, which
makes one code path work uniformly for n = 1 (where walk points collide on a
single vertex) and for long walks wrapping around the torus several times.

Walk shapes, all anchored at i|j and listed in the stored basis order:

  W^(k):  x_0=(i,j), x_1=(i+1,j), x_2=(i+1,j+1), ..., x_{2k}=(i+k,j+k)
          with vertical maps x_{2m} -> x_{2m+1} and horizontal maps
          x_{2m+2} -> x_{2m+1}; k valleys; W^(0) is the simple L.
  S^(k):  W^(k) followed by z=(i+k+1, j+k), reached vertically from x_{2k}.
  N^(k):  y=(i, j-1) then W^(k), with a horizontal map x_0 -> y.
  M^(k):  both extensions, basis order y, x_0, ..., x_{2k}, z.
  P:      the commuting square on (i,j-1), (i,j), (i+1,j-1), (i+1,j) with
          all four maps the identity.
"""

from __future__ import annotations

import itertools
import random
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebras import CoverVertex, Vertex, project, residue
from .linalg import (
    ExactMatrix,
    ONE,
    ZERO,
    rank,
    solve,
    sparse_kernel_with_frees,
)

DEFAULT_SEED = 1729

FAMILIES = ("P", "L", "W", "S", "N", "M")


@dataclass(frozen=True, order=True)
class StringLabel:
    """Catalog key: family, anchor vertex i|j, and valley count k.

    k is None exactly for the P and L families.  Labels are not
    automatically reduced mod n (they do not know n); ``normalized`` does
    that and also folds the alias W^(0) = L.
    """

    family: str
    i: int
    j: int
    k: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in ("P", "L"):
            if self.k is not None:
                raise ValueError(f"{self.family} labels carry no valley count")
        else:
            if self.k is None or self.k < 0:
                raise ValueError(
                    f"{self.family} labels need a valley count k >= 0")

    def normalized(self, n: int) -> "StringLabel":
        fam, k = self.family, self.k
        if fam == "W" and k == 0:
            fam, k = "L", None
        return StringLabel(fam, residue(self.i, n), residue(self.j, n), k)

    def shifted(self, di: int, dj: int, n: int) -> "StringLabel":
        return StringLabel(self.family, residue(self.i + di, n),
                           residue(self.j + dj, n), self.k)

    @property
    def dimension(self) -> int:
        if self.family == "P":
            return 4
        if self.family == "L":
            return 1
        assert self.k is not None
        return {"W": 2 * self.k + 1, "S": 2 * self.k + 2,
                "N": 2 * self.k + 2, "M": 2 * self.k + 3}[self.family]

    def literal(self) -> str:
        """The CLI spelling, e.g. N:1|2:k=1 or P:1|2."""
        base = f"{self.family}:{self.i}|{self.j}"
        return base if self.k is None else f"{base}:k={self.k}"

    def __str__(self) -> str:
        if self.k is None:
            return f"{self.family}_{self.i}|{self.j}"
        return f"{self.family}^({self.k})_{self.i}|{self.j}"


_LITERAL_RE = re.compile(
    r"^([PLWSNM]):(-?\d+)\|(-?\d+)(?::k=(\d+))?$")


def parse_label(text: str) -> StringLabel:
    """Parse a CLI label literal such as ``N:1|2:k=1``.

    >>> parse_label("P:2|1")
    StringLabel(family='P', i=2, j=1, k=None)
    """
    m = _LITERAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse label literal {text!r}")
    fam, i, j, k = m.group(1), int(m.group(2)), int(m.group(3)), m.group(4)
    return StringLabel(fam, i, j, int(k) if k is not None else None)


ArrowKey = Tuple[str, int, int]


class Bimodule:
    """A representation of the torus quiver; immutable by convention."""

    def __init__(self, n: int, dims: Dict[Vertex, int],
                 arrow_maps: Dict[ArrowKey, ExactMatrix]) -> None:
        self.n = n
        self.dims = {v: d for v, d in dims.items() if d}
        maps = {}
        for key, mat in arrow_maps.items():
            kind, i, j = key
            i, j = residue(i, n), residue(j, n)
            src = (i, j)
            tgt = (residue(i + 1, n), j) if kind == "v" \
                else (i, residue(j - 1, n))
            ds, dt = self.dims.get(src, 0), self.dims.get(tgt, 0)
            if mat.rows != dt or mat.cols != ds:
                raise ValueError(
                    f"arrow {key}: expected {dt}x{ds}, got "
                    f"{mat.rows}x{mat.cols}")
            if ds and dt and not mat.is_zero():
                maps[(kind, i, j)] = mat
        self.arrow_maps = maps

    # -- basic geometry ----------------------------------------------------

    def dim(self, i: int, j: int) -> int:
        return self.dims.get((residue(i, self.n), residue(j, self.n)), 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> Dict[Vertex, int]:
        return dict(sorted(self.dims.items()))

    @property
    def support(self) -> List[Vertex]:
        return sorted(self.dims)

    def is_zero(self) -> bool:
        return not self.dims

    def vmap(self, i: int, j: int) -> ExactMatrix:
        n = self.n
        i, j = residue(i, n), residue(j, n)
        mat = self.arrow_maps.get(("v", i, j))
        if mat is None:
            return ExactMatrix.zeros(self.dim(i + 1, j), self.dim(i, j))
        return mat

    def hmap(self, i: int, j: int) -> ExactMatrix:
        n = self.n
        i, j = residue(i, n), residue(j, n)
        mat = self.arrow_maps.get(("h", i, j))
        if mat is None:
            return ExactMatrix.zeros(self.dim(i, j - 1), self.dim(i, j))
        return mat

    # -- validation --------------------------------------------------------

    def check_relations(self) -> None:
        """Raise ValueError if any torus relation fails."""
        n = self.n
        for (i, j) in self.dims:
            vv = self.vmap(i + 1, j).mul(self.vmap(i, j))
            if not vv.is_zero():
                raise ValueError(f"vertical square nonzero at {i}|{j}")
            hh = self.hmap(i, j - 1).mul(self.hmap(i, j))
            if not hh.is_zero():
                raise ValueError(f"horizontal square nonzero at {i}|{j}")
            one_way = self.hmap(i + 1, j).mul(self.vmap(i, j))
            other = self.vmap(i, j - 1).mul(self.hmap(i, j))
            if one_way != other:
                raise ValueError(f"square does not commute at {i}|{j}")

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        dims = {f"{i}|{j}": d for (i, j), d in sorted(self.dims.items())}
        arrows = []
        for (kind, i, j), mat in sorted(self.arrow_maps.items()):
            arrows.append({
                "kind": kind, "i": i, "j": j,
                "matrix": [[str(x) for x in mat.row(r)]
                           for r in range(mat.rows)],
            })
        return {"n": self.n, "dims": dims, "arrows": arrows}

    @classmethod
    def from_json(cls, doc: dict) -> "Bimodule":
        n = doc["n"]
        dims = {}
        for key, d in doc["dims"].items():
            i, j = key.split("|")
            dims[(int(i), int(j))] = d
        maps = {}
        for a in doc["arrows"]:
            rows = [[Fraction(x) for x in row] for row in a["matrix"]]
            maps[(a["kind"], a["i"], a["j"])] = ExactMatrix.from_rows(rows) \
                if rows else ExactMatrix.zeros(0, 0)
        return cls(n, dims, maps)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Bimodule) and self.n == other.n
                and self.dims == other.dims
                and self.arrow_maps == other.arrow_maps)

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.dims.items())),
                     tuple(sorted(self.arrow_maps.items()))))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"Bimodule(n={self.n}, zero)"
        dv = ", ".join(f"{i}|{j}:{d}"
                       for (i, j), d in sorted(self.dims.items()))
        return f"Bimodule(n={self.n}, dim={self.total_dim}, [{dv}])"


def zero_bimodule(n: int) -> Bimodule:
    return Bimodule(n, {}, {})


class BimoduleMap:
    """A homomorphism of bimodules: one matrix per torus vertex."""

    def __init__(self, source: Bimodule, target: Bimodule,
                 components: Dict[Vertex, ExactMatrix]) -> None:
        self.source = source
        self.target = target
        comps = {}
        for v, mat in components.items():
            ds, dt = source.dims.get(v, 0), target.dims.get(v, 0)
            if mat.rows != dt or mat.cols != ds:
                raise ValueError(f"component at {v}: wrong shape")
            if ds and dt and not mat.is_zero():
                comps[v] = mat
        self.components = comps

    def component(self, i: int, j: int) -> ExactMatrix:
        n = self.source.n
        v = (residue(i, n), residue(j, n))
        mat = self.components.get(v)
        if mat is None:
            return ExactMatrix.zeros(self.target.dims.get(v, 0),
                                     self.source.dims.get(v, 0))
        return mat

    def compose(self, other: "BimoduleMap") -> "BimoduleMap":
        """self after other."""
        comps = {}
        for v in other.source.dims:
            if self.target.dims.get(v, 0) and other.source.dims.get(v, 0):
                comps[v] = self.component(*v).mul(other.component(*v))
        return BimoduleMap(other.source, self.target, comps)

    def add(self, other: "BimoduleMap") -> "BimoduleMap":
        comps = {}
        for v in set(self.components) | set(other.components):
            comps[v] = self.component(*v).add(other.component(*v))
        return BimoduleMap(self.source, self.target, comps)

    def scale(self, s) -> "BimoduleMap":
        return BimoduleMap(self.source, self.target,
                           {v: m.scale(s) for v, m in self.components.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def check(self) -> None:
        """Verify the intertwining identities against every arrow."""
        x, y = self.source, self.target
        n = x.n
        verts = set(x.dims) | set(y.dims)
        for (i, j) in verts:
            for kind in ("v", "h"):
                if kind == "v":
                    tv = (residue(i + 1, n), j)
                    xa, ya = x.vmap(i, j), y.vmap(i, j)
                else:
                    tv = (i, residue(j - 1, n))
                    xa, ya = x.hmap(i, j), y.hmap(i, j)
                lhs = self.component(*tv).mul(xa)
                rhs = ya.mul(self.component(i, j))
                if lhs != rhs:
                    raise ValueError(
                        f"not a bimodule map: {kind} arrow at {i}|{j}")

    def is_invertible(self) -> bool:
        x, y = self.source, self.target
        if x.dim_vector() != y.dim_vector():
            return False
        for v, d in x.dims.items():
            if rank(self.component(*v)) != d:
                return False
        return True

    def __repr__(self) -> str:
        return (f"BimoduleMap({self.source!r} -> {self.target!r}, "
                f"{'zero' if self.is_zero() else 'nonzero'})")


def identity_map(x: Bimodule) -> BimoduleMap:
    return BimoduleMap(x, x, {v: ExactMatrix.identity(d)
                              for v, d in x.dims.items()})


def zero_map(x: Bimodule, y: Bimodule) -> BimoduleMap:
    return BimoduleMap(x, y, {})


# ---------------------------------------------------------------------------
# construction of the catalog
# ---------------------------------------------------------------------------

def _walk(label: StringLabel):
    """Cover points and edges of a catalog label, in stored basis order.

    Returns (points, edges); each edge is (src_index, dst_index, kind).
    """
    fam, i, j, k = label.family, label.i, label.j, label.k
    if fam == "P":
        pts = [CoverVertex(i, j - 1), CoverVertex(i, j),
               CoverVertex(i + 1, j - 1), CoverVertex(i + 1, j)]
        edges = [(0, 2, "v"), (1, 3, "v"), (1, 0, "h"), (3, 2, "h")]
        return pts, edges
    if fam == "L":
        return [CoverVertex(i, j)], []
    assert k is not None
    xs = []
    for m in range(2 * k + 1):
        half, odd = divmod(m, 2)
        xs.append(CoverVertex(i + half + odd, j + half))
    edges = []
    for m in range(k):
        edges.append((2 * m, 2 * m + 1, "v"))
        edges.append((2 * m + 2, 2 * m + 1, "h"))
    if fam == "W":
        return xs, edges
    if fam == "S":
        pts = xs + [CoverVertex(i + k + 1, j + k)]
        return pts, edges + [(2 * k, 2 * k + 1, "v")]
    if fam == "N":
        pts = [CoverVertex(i, j - 1)] + xs
        shifted = [(a + 1, b + 1, kind) for a, b, kind in edges]
        return pts, [(1, 0, "h")] + shifted
    # M: both extensions
    pts = [CoverVertex(i, j - 1)] + xs + [CoverVertex(i + k + 1, j + k)]
    shifted = [(a + 1, b + 1, kind) for a, b, kind in edges]
    return pts, [(1, 0, "h")] + shifted + [(2 * k + 1, 2 * k + 2, "v")]


_CONSTRUCT_CACHE: Dict[Tuple[StringLabel, int], Bimodule] = {}


def construct(label: StringLabel, n: int) -> Bimodule:
    """Build the catalog bimodule named by the label, for the given n.

    The walk is laid out on the cover and projected; when several walk
    points land on one torus vertex (small n, long walks) they stack up in
    walk order, so all arrow matrices are 0/1.  Results are cached; treat
    them as immutable, like every other Bimodule.
    """
    lab = label.normalized(n)
    cached = _CONSTRUCT_CACHE.get((lab, n))
    if cached is not None:
        return cached
    pts, edges = _walk(lab)
    verts = [project(p, n) for p in pts]
    local: List[int] = []
    dims: Dict[Vertex, int] = {}
    for v in verts:
        local.append(dims.get(v, 0))
        dims[v] = dims.get(v, 0) + 1
    cells: Dict[ArrowKey, Dict[Tuple[int, int], int]] = {}
    for (a, b, kind) in edges:
        sv = verts[a]
        key = (kind, sv[0], sv[1])
        cells.setdefault(key, {})[(local[b], local[a])] = 1
    maps = {}
    for key, entries in cells.items():
        kind, i, j = key
        tv = (residue(i + 1, n), j) if kind == "v" else (i, residue(j - 1, n))
        mat = [[ONE if (r, c) in entries else ZERO
                for c in range(dims[(i, j)])]
               for r in range(dims[tv])]
        maps[key] = ExactMatrix.from_rows(mat) if mat else \
            ExactMatrix.zeros(dims[tv], dims[(i, j)])
    out = Bimodule(n, dims, maps)
    out.check_relations()
    _CONSTRUCT_CACHE[(lab, n)] = out
    return out


def regular_bimodule(n: int) -> Bimodule:
    """The algebra as a bimodule over itself, the tensor unit.

    Basis item e_j sits at vertex (j, j) and a_j at (j+1, j); left
    multiplication by a_j sends e_j to a_j, right multiplication by a_{j-1}
    sends e_j to a_{j-1}; products of two arrows vanish.
    """
    items: Dict[Vertex, List] = {}

    def put(v: Vertex, tag) -> int:
        items.setdefault(v, [])
        items[v].append(tag)
        return len(items[v]) - 1

    pos = {}
    for j in range(1, n + 1):
        pos[("e", j)] = ((j, j), put((j, j), ("e", j)))
        va = (residue(j + 1, n), j)
        pos[("a", j)] = (va, put(va, ("a", j)))
    dims = {v: len(lst) for v, lst in items.items()}
    cells: Dict[ArrowKey, Dict[Tuple[int, int], int]] = {}
    for j in range(1, n + 1):
        (sv, si) = pos[("e", j)]
        # left action of a_j on e_j
        (tv, ti) = pos[("a", j)]
        cells.setdefault(("v", sv[0], sv[1]), {})[(ti, si)] = 1
        # right action of a_{j-1} on e_j
        jm = residue(j - 1, n)
        (tv2, ti2) = pos[("a", jm)]
        cells.setdefault(("h", sv[0], sv[1]), {})[(ti2, si)] = 1
    maps = {}
    for key, entries in cells.items():
        kind, i, j = key
        tv = (residue(i + 1, n), j) if kind == "v" else (i, residue(j - 1, n))
        mat = [[ONE if (r, c) in entries else ZERO
                for c in range(dims[(i, j)])]
               for r in range(dims[tv])]
        maps[key] = ExactMatrix.from_rows(mat)
    out = Bimodule(n, dims, maps)
    out.check_relations()
    return out


def catalog_labels(n: int, max_valleys: int) -> List[StringLabel]:
    """All catalog labels with up to the given number of valleys, in a fixed
    deterministic order."""
    out = []
    for fam in ("P", "L"):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                out.append(StringLabel(fam, i, j))
    for k in range(max_valleys + 1):
        for fam in ("W", "S", "N", "M"):
            if fam == "W" and k == 0:
                continue  # alias of L
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    out.append(StringLabel(fam, i, j, k))
    return out


# ---------------------------------------------------------------------------
# hom spaces
# ---------------------------------------------------------------------------

class HomSpace:
    """Basis of Hom(x, y) with coordinate bookkeeping.

    The intertwining system's kernel basis has an identity pattern on its
    free unknowns, so coordinates of any other intertwiner in this basis can
    be read off directly; ``coords_of`` does that.
    """

    def __init__(self, x: Bimodule, y: Bimodule):
        if x.n != y.n:
            raise ValueError("hom between bimodules over different n")
        self.x, self.y = x, y
        n = x.n
        offs: Dict[Vertex, int] = {}
        total = 0
        for v in sorted(set(x.dims) & set(y.dims)):
            offs[v] = total
            total += x.dims[v] * y.dims[v]
        self._offsets = offs
        self._total = total
        rows = []
        verts = set(x.dims) | set(y.dims)
        for (i, j) in sorted(verts):
            for kind in ("v", "h"):
                tv = (residue(i + 1, n), j) if kind == "v" \
                    else (i, residue(j - 1, n))
                ds_x = x.dims.get((i, j), 0)
                dt_y = y.dims.get(tv, 0)
                if ds_x == 0 or dt_y == 0:
                    continue
                xa = x.vmap(i, j) if kind == "v" else x.hmap(i, j)
                ya = y.vmap(i, j) if kind == "v" else y.hmap(i, j)
                src_c = offs.get((i, j))
                tgt_c = offs.get(tv)
                dxt = x.dims.get(tv, 0)
                dys = y.dims.get((i, j), 0)
                for p in range(dt_y):
                    for q in range(ds_x):
                        row: Dict[int, Fraction] = {}
                        if tgt_c is not None:
                            for m in range(dxt):
                                coef = xa.get(m, q)
                                if coef:
                                    idx = tgt_c + p * dxt + m
                                    row[idx] = row.get(idx, ZERO) + coef
                        if src_c is not None:
                            for l in range(dys):
                                coef = ya.get(p, l)
                                if coef:
                                    idx = src_c + l * ds_x + q
                                    row[idx] = row.get(idx, ZERO) - coef
                        if row:
                            rows.append(row)
        basis_vecs, frees = sparse_kernel_with_frees(rows, total)
        self.frees = frees
        self.maps = [self._to_map(vec) for vec in basis_vecs]

    def _to_map(self, vec: Dict[int, Fraction]) -> BimoduleMap:
        comps = {}
        for v, off in self._offsets.items():
            dx, dy = self.x.dims[v], self.y.dims[v]
            mat = [[vec.get(off + r * dx + c, ZERO) for c in range(dx)]
                   for r in range(dy)]
            comps[v] = ExactMatrix.from_rows(mat) if dy and dx else \
                ExactMatrix.zeros(dy, dx)
        return BimoduleMap(self.x, self.y, comps)

    @property
    def dim(self) -> int:
        return len(self.maps)

    def flatten(self, f: BimoduleMap) -> List[Fraction]:
        vec = [ZERO] * self._total
        for v, off in self._offsets.items():
            dx = self.x.dims[v]
            mat = f.component(*v)
            for r in range(mat.rows):
                for c in range(mat.cols):
                    vec[off + r * dx + c] = mat.get(r, c)
        return vec

    def coords_of(self, f: BimoduleMap) -> Tuple[Fraction, ...]:
        """Coordinates of an intertwiner in this basis (reads free slots)."""
        vec = self.flatten(f)
        return tuple(vec[fr] for fr in self.frees)

    def combine(self, coeffs: Sequence) -> BimoduleMap:
        out = zero_map(self.x, self.y)
        for c, f in zip(coeffs, self.maps):
            if c:
                out = out.add(f.scale(c))
        return out


def hom_basis(x: Bimodule, y: Bimodule) -> List[BimoduleMap]:
    """A basis of the space of bimodule homomorphisms x -> y."""
    return HomSpace(x, y).maps


# ---------------------------------------------------------------------------
# isomorphism testing
# ---------------------------------------------------------------------------

def is_isomorphic(x: Bimodule, y: Bimodule,
                  seed: int = DEFAULT_SEED) -> bool:
    """Decide x = y up to isomorphism.

    Dimension vectors first; then each hom-basis element is tested for
    invertibility, then a few seeded random combinations, and finally a
    deterministic symbolic fallback decides whether a generic combination
    is invertible (no false negatives).
    """
    if x.dim_vector() != y.dim_vector():
        return False
    if x.is_zero():
        return True
    basis = hom_basis(x, y)
    if not basis:
        return False
    for f in basis:
        if f.is_invertible():
            return True
    rng = random.Random(seed)
    for _ in range(8):
        coeffs = [Fraction(rng.randint(-4, 4)) for _ in basis]
        g = basis[0].scale(coeffs[0])
        for c, f in zip(coeffs[1:], basis[1:]):
            g = g.add(f.scale(c))
        if g.is_invertible():
            return True
    return _generic_combination_invertible(x, basis)


def _generic_combination_invertible(x: Bimodule,
                                    basis: List[BimoduleMap]) -> bool:
    """Symbolic certificate: is some linear combination invertible?

    The combination sum c_t f_t is invertible at a rational point iff the
    product over vertices of det(sum c_t f_t at v) is a nonzero polynomial,
    since the rationals are infinite.
    """
    import sympy

    cs = sympy.symbols(f"c0:{len(basis)}")
    for v in sorted(x.dims):
        d = x.dims[v]
        m = sympy.zeros(d, d)
        for t, f in enumerate(basis):
            comp = f.component(*v)
            for r in range(d):
                for c in range(d):
                    val = comp.get(r, c)
                    if val:
                        m[r, c] += cs[t] * sympy.Rational(val.numerator,
                                                          val.denominator)
        if sympy.expand(m.det()) == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# restriction to the left algebra
# ---------------------------------------------------------------------------

@dataclass
class LeftDecomposition:
    """Multiset of indecomposable left modules: projectives and simples."""

    n: int
    projectives: Counter
    simples: Counter

    @property
    def total_dim(self) -> int:
        return 2 * sum(self.projectives.values()) + sum(self.simples.values())

    def as_multiset(self) -> Tuple:
        out = []
        for i in sorted(self.projectives):
            out.extend([("proj", i)] * self.projectives[i])
        for i in sorted(self.simples):
            out.extend([("simple", i)] * self.simples[i])
        return tuple(out)

    def __str__(self) -> str:
        parts = []
        for i in sorted(self.projectives):
            m = self.projectives[i]
            parts.append(f"(Le_{i})^{m}" if m > 1 else f"Le_{i}")
        for i in sorted(self.simples):
            m = self.simples[i]
            parts.append(f"(S_{i})^{m}" if m > 1 else f"S_{i}")
        return " + ".join(parts) if parts else "0"


def restrict_left(x: Bimodule) -> LeftDecomposition:
    """Forget the right action and decompose the left module.

    Over a radical-square-zero algebra the answer is forced by ranks: the
    arrow action a_i contributes rank(a_i) copies of the projective Le_i,
    and what is left of each vertex space splits into simples.
    """
    n = x.n
    col_dims = {}
    ranks = {}
    for i in range(1, n + 1):
        cols = [j for j in range(1, n + 1) if x.dim(i, j)]
        col_dims[i] = sum(x.dim(i, j) for j in cols)
        # block-diagonal action of a_i over the columns
        r = 0
        for j in cols:
            r += rank(x.vmap(i, j))
        ranks[i] = r
    projs: Counter = Counter()
    simples: Counter = Counter()
    for i in range(1, n + 1):
        if ranks[i]:
            projs[i] = ranks[i]
        s = col_dims[i] - ranks[i] - ranks[residue(i - 1, n)]
        if s < 0:
            raise ValueError("left restriction is not radical-square-zero")
        if s:
            simples[i] = s
    out = LeftDecomposition(n, projs, simples)
    assert out.total_dim == x.total_dim
    return out


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def dualize(x: Bimodule) -> Bimodule:
    """The linear dual with swapped-side actions, as a torus representation.

    The graded piece of the dual at (i, j) is the dual of the piece of x at
    (j, i); vertical arrows of the dual are transposed horizontal arrows of
    x and vice versa:

        v at (i,j) on the dual  =  transpose of h at (j, i+1) on x,
        h at (i,j) on the dual  =  transpose of v at (j-1, i) on x.
    """
    n = x.n
    dims = {}
    for (j, i), d in x.dims.items():
        dims[(i, j)] = d
    maps = {}
    for (i, j) in dims:
        vm = x.hmap(j, i + 1).transpose()
        if not vm.is_zero():
            maps[("v", i, j)] = vm
        hm = x.vmap(j - 1, i).transpose()
        if not hm.is_zero():
            maps[("h", i, j)] = hm
    out = Bimodule(n, dims, maps)
    out.check_relations()
    return out


# ---------------------------------------------------------------------------
# Hom(-, algebra) as a bimodule
# ---------------------------------------------------------------------------

def _left_projective_spaces(n: int, b: int) -> Dict[int, List]:
    """Ordered basis of the left projective Le_b per cyclic-quiver vertex."""
    spaces: Dict[int, List] = {i: [] for i in range(1, n + 1)}
    spaces[b].append(("e", b))
    spaces[residue(b + 1, n)].append(("a", b))
    return spaces


def _left_projective_arrows(n: int, b: int) -> Dict[int, ExactMatrix]:
    """Action of a_i : vertex i -> i+1 on Le_b."""
    spaces = _left_projective_spaces(n, b)
    mats = {}
    for i in range(1, n + 1):
        src, tgt = spaces[i], spaces[residue(i + 1, n)]
        rows = [[ZERO] * len(src) for _ in tgt]
        for c, item in enumerate(src):
            if item == ("e", b) and i == b:
                rows[tgt.index(("a", b))][c] = ONE
        mats[i] = ExactMatrix.from_rows(rows) if tgt else \
            ExactMatrix.zeros(0, len(src))
    return mats


class _ColumnHom:
    """Hom of left modules from a column of x into Le_b, with coordinates."""

    def __init__(self, x: Bimodule, a: int, b: int):
        n = x.n
        self.n = n
        tgt_spaces = _left_projective_spaces(n, b)
        tgt_arrows = _left_projective_arrows(n, b)
        offs = {}
        total = 0
        for i in range(1, n + 1):
            ds, dt = x.dim(i, a), len(tgt_spaces[i])
            if ds and dt:
                offs[i] = total
                total += ds * dt
        rows = []
        for i in range(1, n + 1):
            ip = residue(i + 1, n)
            ds = x.dim(i, a)
            dt_next = len(tgt_spaces[ip])
            if ds == 0 or dt_next == 0:
                continue
            xa = x.vmap(i, a)
            ba = tgt_arrows[i]
            dxt = x.dim(ip, a)
            dys = len(tgt_spaces[i])
            for p in range(dt_next):
                for q in range(ds):
                    row: Dict[int, Fraction] = {}
                    if ip in offs:
                        for m in range(dxt):
                            if xa.get(m, q):
                                idx = offs[ip] + p * dxt + m
                                row[idx] = row.get(idx, ZERO) + xa.get(m, q)
                    if i in offs:
                        for l in range(dys):
                            if ba.get(p, l):
                                idx = offs[i] + l * ds + q
                                row[idx] = row.get(idx, ZERO) - ba.get(p, l)
                    if row:
                        rows.append(row)
        vecs, frees = sparse_kernel_with_frees(rows, total)
        self.offsets = offs
        self.total = total
        self.frees = frees
        self.x, self.a, self.b = x, a, b
        self.tgt_spaces = tgt_spaces
        self.vectors = vecs

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def component(self, vec: Dict[int, Fraction], i: int) -> ExactMatrix:
        """The vertex-i matrix (target dim x source dim) of a hom vector."""
        ds = self.x.dim(i, self.a)
        dt = len(self.tgt_spaces[i])
        if i not in self.offsets:
            return ExactMatrix.zeros(dt, ds)
        off = self.offsets[i]
        return ExactMatrix(dt, ds, [vec.get(off + p * ds + q, ZERO)
                                    for p in range(dt) for q in range(ds)])

    def coords(self, vec: Dict[int, Fraction]) -> Tuple[Fraction, ...]:
        return tuple(vec.get(fr, ZERO) for fr in self.frees)


def hom_to_algebra(x: Bimodule) -> Bimodule:
    """Hom over the algebra from x into the algebra, with the bimodule
    structure (a . phi . b)(m) = phi(m a) b, returned as a torus
    representation.

    The (a, b) piece is the space of left-module maps from the a-th column
    of x into the left projective Le_b; the vertical arrow precomposes with
    the right action of a_a, the horizontal arrow postcomposes with right
    multiplication a_{b-1} : Le_b -> Le_{b-1}.
    """
    n = x.n
    homs = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            homs[(a, b)] = _ColumnHom(x, a, b)
    dims = {(a, b): h.dim for (a, b), h in homs.items() if h.dim}
    maps: Dict[ArrowKey, ExactMatrix] = {}
    for (a, b), h in homs.items():
        if h.dim == 0:
            continue
        # vertical: phi -> phi o (right action of a_a), lands in Hom(col a+1)
        ap = residue(a + 1, n)
        tgt = homs[(ap, b)]
        if tgt.dim:
            cols = []
            for vec in h.vectors:
                comp_vec: Dict[int, Fraction] = {}
                for i in range(1, n + 1):
                    if i not in tgt.offsets:
                        continue
                    phi_i = h.component(vec, i)
                    step = x.hmap(i, ap)  # column a+1 -> column a at vertex i
                    mat = phi_i.mul(step)
                    ds = x.dim(i, ap)
                    for p in range(mat.rows):
                        for q in range(ds):
                            val = mat.get(p, q)
                            if val:
                                comp_vec[tgt.offsets[i] + p * ds + q] = val
                cols.append(tgt.coords(comp_vec))
            maps[("v", a, b)] = ExactMatrix(
                tgt.dim, h.dim,
                [cols[c][r] for r in range(tgt.dim) for c in range(h.dim)])
        # horizontal: phi -> (right mult by a_{b-1}) o phi
        bm = residue(b - 1, n)
        tgt2 = homs[(a, bm)]
        if tgt2.dim:
            rho = _right_mult_projective(n, b)
            cols = []
            for vec in h.vectors:
                comp_vec = {}
                for i in range(1, n + 1):
                    if i not in tgt2.offsets:
                        continue
                    phi_i = h.component(vec, i)
                    mat = rho[i].mul(phi_i)
                    ds = x.dim(i, a)
                    for p in range(mat.rows):
                        for q in range(ds):
                            val = mat.get(p, q)
                            if val:
                                comp_vec[tgt2.offsets[i] + p * ds + q] = val
                cols.append(tgt2.coords(comp_vec))
            maps[("h", a, b)] = ExactMatrix(
                tgt2.dim, h.dim,
                [cols[c][r] for r in range(tgt2.dim) for c in range(h.dim)])
    out = Bimodule(n, dims, maps)
    out.check_relations()
    return out


def _right_mult_projective(n: int, b: int) -> Dict[int, ExactMatrix]:
    """Right multiplication by a_{b-1} as a left-module map Le_b -> Le_{b-1},
    per cyclic-quiver vertex."""
    bm = residue(b - 1, n)
    src = _left_projective_spaces(n, b)
    tgt = _left_projective_spaces(n, bm)
    mats = {}
    for i in range(1, n + 1):
        rows = [[ZERO] * len(src[i]) for _ in tgt[i]]
        for c, item in enumerate(src[i]):
            if item == ("e", b):
                # e_b . a_{b-1} = a_{b-1}, which lives at vertex b
                if ("a", bm) in tgt[i]:
                    rows[tgt[i].index(("a", bm))][c] = ONE
        mats[i] = ExactMatrix.from_rows(rows) if tgt[i] else \
            ExactMatrix.zeros(0, len(src[i]))
    return mats


# ---------------------------------------------------------------------------
# direct sums (artifact plumbing used by tests and the decomposer)
# ---------------------------------------------------------------------------

def direct_sum(*mods: Bimodule) -> Bimodule:
    if not mods:
        raise ValueError("need at least one summand")
    n = mods[0].n
    if any(m.n != n for m in mods):
        raise ValueError("mixed n")
    verts = sorted(set().union(*[set(m.dims) for m in mods]))
    dims = {v: sum(m.dims.get(v, 0) for m in mods) for v in verts}
    maps = {}
    for (i, j) in verts:
        for kind in ("v", "h"):
            tv = (residue(i + 1, n), j) if kind == "v" \
                else (i, residue(j - 1, n))
            dt = dims.get(tv, 0)
            ds = dims[(i, j)]
            if not (dt and ds):
                continue
            rows = [[ZERO] * ds for _ in range(dt)]
            ro = co = 0
            for m in mods:
                blk = m.vmap(i, j) if kind == "v" else m.hmap(i, j)
                for r in range(blk.rows):
                    for c in range(blk.cols):
                        rows[ro + r][co + c] = blk.get(r, c)
                ro += m.dims.get(tv, 0)
                co += m.dims.get((i, j), 0)
            mat = ExactMatrix.from_rows(rows)
            if not mat.is_zero():
                maps[(kind, i, j)] = mat
    return Bimodule(n, dims, maps)
