"""Left, right, and two-sided cell structure of the string catalog.

The catalog members are partially ordered by divisibility of tensor
products: F lies below G on the left when G is a summand of some H (x) F,
and below on the right when G is a summand of some F (x) H.  H ranges
over the catalog itself, which is closed under taking summands of
products within the computed valley range, so no relation between
catalog members is missed.  Band-type bimodules (the regular bimodule
among them) sit strictly below everything listed here and are excluded.

Mutual comparability carves the catalog into left cells, right cells,
and two-sided cells; the two-sided cells form a chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from .bimodules import DEFAULT_SEED, StringLabel, catalog_labels
from .decomposition import _label_sort_key, cell_name, cell_of, product_summands

BAND_NOTE = "band-type bimodules lie below every listed cell and are not enumerated"


def _close_reachability(adjacency: List[int], count: int) -> List[int]:
    """Reflexive-transitive closure of a bitmask adjacency list."""
    closed = []
    for start in range(count):
        seen = 1 << start
        frontier = adjacency[start] & ~seen
        while frontier:
            seen |= frontier
            step = 0
            rest = frontier
            while rest:
                low = rest & -rest
                step |= adjacency[low.bit_length() - 1]
                rest ^= low
            frontier = step & ~seen
        closed.append(seen)
    return closed


def _mutual_classes(reach: List[int], count: int) -> List[List[int]]:
    """Group indices that reach each other, preserving first appearance."""
    assigned = [False] * count
    classes = []
    for i in range(count):
        if assigned[i]:
            continue
        members = [j for j in range(count)
                   if reach[i] >> j & 1 and reach[j] >> i & 1]
        for j in members:
            assigned[j] = True
        classes.append(members)
    return classes


@dataclass
class CellStructure:
    """Cells of the catalog at a fixed size, with the two-sided order.

    ``two_sided_cells`` is sorted from the greatest cell down when the
    order is total (which it is for every computed instance; the
    ``chain_is_total`` flag records the check).  ``two_sided_order``
    holds every strict comparison as a (greater, lesser) pair of cell
    names.  The computation is catalog-relative: ``H`` in the defining
    divisibility conditions runs over catalog members only.
    """

    n: int
    max_valleys: int
    elements: List[StringLabel]
    left_cells: List[List[StringLabel]]
    right_cells: List[List[StringLabel]]
    two_sided_cells: List[List[StringLabel]]
    two_sided_order: List[Tuple[str, str]]
    chain_is_total: bool
    seed: int = DEFAULT_SEED
    catalog_relative: bool = True
    band_note: str = BAND_NOTE

    @property
    def cell_names(self) -> List[str]:
        return [cell_name(cell_of(cell[0])) for cell in self.two_sided_cells]

    def chain(self) -> List[str]:
        """Cell names from greatest to least; requires a total order."""
        if not self.chain_is_total:
            raise ValueError("two-sided order is not total")
        return self.cell_names

    def cell_with_name(self, name: str) -> List[StringLabel]:
        for cell in self.two_sided_cells:
            if cell_name(cell_of(cell[0])) == name:
                return cell
        raise KeyError(f"no two-sided cell named {name!r}")

    def egg_box(self, name: str):
        """Rows (right cells), columns (left cells), and the grid of a cell.

        Returns ``(rows, cols, grid)`` where ``grid[r][c]`` lists the
        elements in the r-th right cell and the c-th left cell.  For the
        k-valley cells every entry is a singleton.
        """
        members = set(self.cell_with_name(name))
        rows = [c for c in self.right_cells if set(c) <= members]
        cols = [c for c in self.left_cells if set(c) <= members]
        grid = [[[x for x in row if x in set(col)] for col in cols]
                for row in rows]
        placed = sum(len(entry) for line in grid for entry in line)
        if placed != len(members):
            raise RuntimeError(
                f"egg box of {name} misplaces elements "
                f"({placed} placed, {len(members)} expected)")
        return rows, cols, grid

    def to_json(self) -> dict:
        def cell_literals(cell: Sequence[StringLabel]) -> List[str]:
            return [x.literal() for x in cell]

        return {
            "n": self.n,
            "max_valleys": self.max_valleys,
            "elements": [x.literal() for x in self.elements],
            "left_cells": [cell_literals(c) for c in self.left_cells],
            "right_cells": [cell_literals(c) for c in self.right_cells],
            "two_sided_cells": [
                {"name": cell_name(cell_of(c[0])), "members": cell_literals(c)}
                for c in self.two_sided_cells
            ],
            "two_sided_order": [list(pair) for pair in self.two_sided_order],
            "chain": self.cell_names if self.chain_is_total else None,
            "chain_is_total": self.chain_is_total,
            "catalog_relative": self.catalog_relative,
            "band_note": self.band_note,
        }


def compute_cells(n: int, max_valleys: int,
                  seed: int = DEFAULT_SEED) -> CellStructure:
    """Compute the cell structure of the catalog with at most max_valleys valleys.

    Sweeps every ordered pair of catalog members, decomposes the product,
    and records divisibility edges; closures of the edge relations give
    the left, right, and two-sided preorders.
    """
    labels = catalog_labels(n, max_valleys)
    index = {lab: i for i, lab in enumerate(labels)}
    count = len(labels)

    up_left = [1 << i for i in range(count)]
    up_right = [1 << i for i in range(count)]
    for a in labels:
        for b in labels:
            for summand in product_summands(a, b, n, seed=seed):
                gi = index.get(summand)
                if gi is None:
                    # Products can only shed summands below the valley
                    # bound into deeper cells, which carry no information
                    # about the catalog range.
                    continue
                up_left[index[b]] |= 1 << gi
                up_right[index[a]] |= 1 << gi

    reach_left = _close_reachability(up_left, count)
    reach_right = _close_reachability(up_right, count)
    merged = [up_left[i] | up_right[i] for i in range(count)]
    reach_two = _close_reachability(merged, count)

    def as_labels(classes: List[List[int]]) -> List[List[StringLabel]]:
        cells = [sorted((labels[i] for i in cls), key=_label_sort_key)
                 for cls in classes]
        cells.sort(key=lambda cell: _label_sort_key(cell[0]))
        return cells

    left_cells = as_labels(_mutual_classes(reach_left, count))
    right_cells = as_labels(_mutual_classes(reach_right, count))
    two_classes = _mutual_classes(reach_two, count)

    reps = [cls[0] for cls in two_classes]
    above = {}
    total = True
    for ci, ri in enumerate(reps):
        for cj, rj in enumerate(reps):
            if ci == cj:
                continue
            i_above_j = bool(reach_two[rj] >> ri & 1)
            j_above_i = bool(reach_two[ri] >> rj & 1)
            if i_above_j and not j_above_i:
                above[(ci, cj)] = True
            elif not i_above_j and not j_above_i:
                total = False

    order = sorted(range(len(two_classes)),
                   key=lambda ci: sum(above.get((cj, ci), False)
                                      for cj in range(len(two_classes))))
    two_sided = [sorted((labels[i] for i in two_classes[ci]),
                        key=_label_sort_key) for ci in order]
    rank = {ci: pos for pos, ci in enumerate(order)}
    pairs = sorted(
        (cell_name(cell_of(labels[two_classes[ci][0]])),
         cell_name(cell_of(labels[two_classes[cj][0]])))
        for (ci, cj) in above
        if rank[ci] < rank[cj]
    )

    return CellStructure(
        n=n,
        max_valleys=max_valleys,
        elements=list(labels),
        left_cells=left_cells,
        right_cells=right_cells,
        two_sided_cells=two_sided,
        two_sided_order=pairs,
        chain_is_total=total,
        seed=seed,
    )


def is_idempotent_cell(cell: Sequence[StringLabel],
                       structure: CellStructure) -> bool:
    """Whether some member of the cell divides a product of two members."""
    members = set(cell)
    for g in cell:
        for h in cell:
            summands = product_summands(g, h, structure.n, seed=structure.seed)
            if any(s in members for s in summands):
                return True
    return False
