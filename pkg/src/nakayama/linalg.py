"""Exact linear algebra over the rationals.

Everything downstream (hom spaces, tensor quotients, split pairs) reduces to
rank / kernel / solve questions for smallish matrices with Fraction entries.
Two representations coexist here:

* ``ExactMatrix``, a dense immutable matrix, the public currency of the
  package;
* sparse row-dicts (column index -> scalar), used internally because the
  intertwining and balancing systems are very sparse and are cheaper to
  eliminate without materialising zeros.

Both go through the same reduced-row-echelon routine, so kernel bases and
pivot choices are deterministic everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ExactMatrix:
    """Dense matrix of exact rationals, row-major, immutable after creation."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable) -> None:
        ent = tuple(_frac(x) for x in entries)
        if len(ent) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(ent)}")
        self.rows = rows
        self.cols = cols
        self.entries = ent

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return cls(r, c, flat)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [ONE if i == j else ZERO
                          for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    # -- access ------------------------------------------------------------

    def get(self, r: int, c: int) -> Fraction:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def to_lists(self) -> list:
        return [list(self.row(r)) for r in range(self.rows)]

    # -- algebra -----------------------------------------------------------

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} times "
                f"{other.rows}x{other.cols}")
        out = []
        orows = [other.row(i) for i in range(other.rows)]
        for r in range(self.rows):
            srow = self.row(r)
            acc = [ZERO] * other.cols
            for k, a in enumerate(srow):
                if a:
                    ok = orows[k]
                    for c in range(other.cols):
                        if ok[c]:
                            acc[c] += a * ok[c]
            out.extend(acc)
        return ExactMatrix(self.rows, other.cols, out)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self.mul(other)

    def add(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return ExactMatrix(self.rows, self.cols,
                           [a + b for a, b in zip(self.entries, other.entries)])

    def sub(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in sub")
        return ExactMatrix(self.rows, self.cols,
                           [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, s) -> "ExactMatrix":
        s = _frac(s)
        return ExactMatrix(self.rows, self.cols,
                           [s * a for a in self.entries])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [self.get(r, c)
                            for c in range(self.cols)
                            for r in range(self.rows)])

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        v = [_frac(x) for x in vec]
        return tuple(
            sum((a * b for a, b in zip(self.row(r), v)), ZERO)
            for r in range(self.rows))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self.get(r, c) == (ONE if r == c else ZERO)
                   for r in range(self.rows) for c in range(self.cols))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and rank(self) == self.rows

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        n = self.rows
        cols = []
        for j in range(n):
            e = [ONE if i == j else ZERO for i in range(n)]
            x = solve(self, e)
            if x is None:
                raise ValueError("matrix is singular")
            cols.append(x)
        return ExactMatrix(n, n, [cols[j][i]
                                  for i in range(n) for j in range(n)])

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExactMatrix)
                and self.rows == other.rows
                and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(x) for x in self.row(r)) for r in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"


# ---------------------------------------------------------------------------
# sparse elimination engine
# ---------------------------------------------------------------------------

def sparse_rref(rows: list, ncols: int):
    """Reduced row echelon form of a list of sparse rows.

    Each row is a dict {column index: nonzero Fraction}.  Returns
    (rref_rows, pivot_cols) where rref_rows[i] has leading 1 in column
    pivot_cols[i], pivot columns strictly increasing, and every pivot column
    is cleared from all other rows.  Input rows are not mutated.
    """
    work = [dict(r) for r in rows if r]
    rref: list = []
    pivots: list = []
    for row in work:
        # eliminate existing pivots
        for p, prow in zip(pivots, rref):
            c = row.get(p)
            if c:
                for col, val in prow.items():
                    nv = row.get(col, ZERO) - c * val
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
        if not row:
            continue
        p = min(row)
        inv = row[p]
        if inv != 1:
            row = {col: val / inv for col, val in row.items()}
        # back-clean earlier rows
        for i, prow in enumerate(rref):
            c = prow.get(p)
            if c:
                newr = dict(prow)
                for col, val in row.items():
                    nv = newr.get(col, ZERO) - c * val
                    if nv:
                        newr[col] = nv
                    else:
                        newr.pop(col, None)
                rref[i] = newr
        # insert keeping pivot order
        pos = 0
        while pos < len(pivots) and pivots[pos] < p:
            pos += 1
        pivots.insert(pos, p)
        rref.insert(pos, row)
    return rref, pivots


def sparse_kernel_with_frees(rows: list, ncols: int):
    """Kernel basis plus the list of free columns it was generated from.

    One basis vector per free column f: entry 1 at f and -coefficient at each
    pivot column, read straight off the RREF.  The identity pattern on free
    columns means the f-coordinates of any kernel element ARE its coordinates
    in this basis, which the hom-space code exploits.
    """
    rref, pivots = sparse_rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    frees = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = {f: ONE}
        for p, prow in zip(pivots, rref):
            c = prow.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
        frees.append(f)
    return basis, frees


def sparse_kernel_basis(rows: list, ncols: int) -> list:
    basis, _ = sparse_kernel_with_frees(rows, ncols)
    return basis


def _dense_to_sparse_rows(m: ExactMatrix) -> list:
    out = []
    for r in range(m.rows):
        row = {c: v for c, v in enumerate(m.row(r)) if v}
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def rank(m: ExactMatrix) -> int:
    """Rank over the rationals, computed exactly.

    >>> rank(ExactMatrix.from_rows([[1, 2], [2, 4]]))
    1
    """
    _, pivots = sparse_rref(_dense_to_sparse_rows(m), m.cols)
    return len(pivots)


def kernel_basis(m: ExactMatrix) -> list:
    """Basis of the null space {v : m v = 0}, as tuples of Fractions.

    The count is always cols - rank.  Vectors carry an identity pattern on
    the free columns, which lets callers read off coordinates of any other
    kernel element without solving.
    """
    sparse = sparse_kernel_basis(_dense_to_sparse_rows(m), m.cols)
    return [tuple(v.get(c, ZERO) for c in range(m.cols)) for v in sparse]


def solve(m: ExactMatrix, b: Sequence) -> Optional[tuple]:
    """Some exact solution x of m x = b, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    aug_col = m.cols
    rows = []
    for r in range(m.rows):
        row = {c: v for c, v in enumerate(m.row(r)) if v}
        bv = _frac(b[r])
        if bv:
            row[aug_col] = bv
        rows.append(row)
    rref, pivots = sparse_rref(rows, m.cols + 1)
    if aug_col in pivots:
        return None
    x = [ZERO] * m.cols
    for p, row in zip(pivots, rref):
        x[p] = row.get(aug_col, ZERO)
    return tuple(x)


def kernel_basis_with_frees(m: ExactMatrix):
    """Dense variant of sparse_kernel_with_frees; see that docstring."""
    sparse, frees = sparse_kernel_with_frees(_dense_to_sparse_rows(m), m.cols)
    vecs = [tuple(v.get(c, ZERO) for c in range(m.cols)) for v in sparse]
    return vecs, frees
