"""Tests for cell birepresentations, localization, and classification."""

from fractions import Fraction
from math import comb

import pytest

from nakayama.bimodules import StringLabel, catalog_labels, construct, parse_label
from nakayama.bireps import (
    FinitaryBirep,
    LocalizationSpec,
    ObjectSlot,
    QuotientHomSpace,
    action_matrix,
    cell_birep,
    classify,
    is_simple_transitive,
    localize,
    verify_adjunction_consequences,
    verify_block_structure,
)
from nakayama.linalg import ExactMatrix, ZERO


def ints(mat):
    return [[int(e) for e in row] for row in mat.to_lists()]


def test_quotient_hom_dims_form_disjoint_a2():
    n = 2
    greater = catalog_labels(n, 0)
    m1 = construct(StringLabel("M", 1, 1, 1), n)
    n1 = construct(StringLabel("N", 1, 1, 1), n)
    n2 = construct(StringLabel("N", 2, 1, 1), n)
    assert QuotientHomSpace(m1, n1, greater).dim == 1
    assert QuotientHomSpace(n1, m1, greater).dim == 0
    assert QuotientHomSpace(n1, n1, greater).dim == 1
    assert QuotientHomSpace(m1, n2, greater).dim == 0


def test_cell_birep_objects_and_rank():
    b = cell_birep(2, 1)
    assert b.rank == 4
    assert [s.name for s in b.objects] == ["N_1", "N_2", "M_1", "M_2"]
    assert b.contracted == frozenset()


def test_rank_one_component_action_matrices():
    b = cell_birep(1, 1)
    assert ints(b.action_obj[StringLabel("N", 1, 1, 1)]) == [[1, 1], [0, 0]]
    assert ints(b.action_obj[StringLabel("M", 1, 1, 1)]) == [[0, 0], [1, 1]]
    assert ints(b.action_obj[StringLabel("W", 1, 1, 1)]) == [[1, 1], [0, 0]]
    assert ints(b.action_obj[StringLabel("S", 1, 1, 1)]) == [[0, 0], [1, 1]]


def test_total_action_matrix_facts():
    b = cell_birep(2, 1)
    f = b.f_matrix()
    assert ints(f) == [[2] * 4 for _ in range(4)]
    assert f.mul(f) == f.scale(Fraction(8))
    assert sum(f.get(i, i) for i in range(4)) == 8


def test_action_matrix_rejects_non_apex_input():
    b = cell_birep(2, 1)
    with pytest.raises(ValueError):
        action_matrix(b, parse_label("P:1|1"))
    with pytest.raises(ValueError):
        action_matrix(b, StringLabel("N", 1, 1, 2))
    got = action_matrix(b, StringLabel("N", 3, 3, 1))
    assert got == b.action_obj[StringLabel("N", 1, 1, 1)]


@pytest.mark.parametrize("r,s", [(1, 1), (2, 2), (1, 2), (2, 1)])
def test_diagonal_generators_idempotent_off_diagonal_nilpotent(r, s):
    b = cell_birep(2, 1)
    for fam in "WSNM":
        mat = b.action_obj[StringLabel(fam, r, s, 1)]
        square = mat.mul(mat)
        if r == s:
            assert square == mat
            assert sum(1 for a in range(4) if mat.get(a, a) == 1) == 1
        else:
            assert square.is_zero()


def test_cell_birep_rejects_zero_valleys():
    with pytest.raises(ValueError):
        cell_birep(2, 0)


def test_other_columns_look_the_same():
    left = cell_birep(2, 1, j=1)
    right = cell_birep(2, 1, j=2)
    assert right.column == 2
    assert ints(left.f_matrix()) == ints(right.f_matrix())


def test_localize_empty_set_is_identity():
    b = cell_birep(2, 1)
    assert localize(b, LocalizationSpec(())) is b


def test_localize_merges_objects():
    b = cell_birep(2, 1)
    loc = localize(b, LocalizationSpec({1}))
    assert loc.rank == 3
    assert [s.name for s in loc.objects] == ["O_1", "N_2", "M_2"]
    assert ints(loc.f_matrix()) == [[4, 4, 4], [2, 2, 2], [2, 2, 2]]


def test_localize_rejects_bad_component():
    b = cell_birep(2, 1)
    with pytest.raises(ValueError):
        localize(b, LocalizationSpec({5}))


def test_localizations_compose_by_union():
    b = cell_birep(2, 1)
    two_step = localize(localize(b, LocalizationSpec({1})),
                        LocalizationSpec({2}))
    one_step = localize(b, LocalizationSpec({1, 2}))
    assert two_step.contracted == one_step.contracted == frozenset({1, 2})
    assert two_step.action_obj == one_step.action_obj
    assert two_step.rank == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rank_drops_by_contracted_count(n):
    b = cell_birep(n, 1)
    import itertools
    for size in range(n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            loc = localize(b, LocalizationSpec(combo))
            assert loc.rank == 2 * n - size


def test_mixed_contraction_block_shapes():
    loc = localize(cell_birep(2, 1), LocalizationSpec({1}))
    act = loc.action_obj
    assert ints(act[StringLabel("N", 1, 1, 1)]) == [
        [1, 0, 0], [0, 0, 0], [0, 0, 0]]
    assert ints(act[StringLabel("N", 2, 2, 1)]) == [
        [0, 0, 0], [0, 1, 1], [0, 0, 0]]
    assert ints(act[StringLabel("N", 1, 2, 1)]) == [
        [0, 1, 1], [0, 0, 0], [0, 0, 0]]
    assert ints(act[StringLabel("N", 2, 1, 1)]) == [
        [0, 0, 0], [1, 0, 0], [0, 0, 0]]
    assert verify_block_structure(loc)["ok"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_block_structure_for_every_subset(n):
    import itertools
    b = cell_birep(n, 1)
    for size in range(n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            loc = localize(b, LocalizationSpec(combo))
            report = verify_block_structure(loc)
            assert report["ok"], report["failures"]
            assert report["f_trace"] == 4 * n
            adj = verify_adjunction_consequences(loc)
            assert adj["ok"], adj["failures"]


def test_fully_contracted_blocks_are_units():
    loc = localize(cell_birep(2, 1), LocalizationSpec({1, 2}))
    for u in loc.generator_labels():
        mat = loc.action_obj[u]
        assert ints(mat)[u.i - 1][u.j - 1] == 1
        assert sum(sum(row) for row in ints(mat)) == 1
    assert ints(loc.f_matrix()) == [[4, 4], [4, 4]]


def test_arrow_scalars_make_the_cell_birep_simple():
    b = cell_birep(1, 1)
    assert b.arrow_scalar(StringLabel("N", 1, 1, 1)) == 1
    assert b.arrow_scalar(StringLabel("M", 1, 1, 1)) == 1
    assert is_simple_transitive(b)


@pytest.mark.parametrize("n,contract", [(1, ()), (1, (1,)), (2, (2,)),
                                        (3, (1, 3))])
def test_localized_bireps_stay_simple_transitive(n, contract):
    loc = localize(cell_birep(n, 1), LocalizationSpec(contract))
    assert is_simple_transitive(loc)


def test_disjoint_double_is_not_simple_transitive():
    base = cell_birep(1, 1)

    def doubled(mat):
        rows = []
        for r in range(2):
            rows.append([mat.get(r, 0), mat.get(r, 1), ZERO, ZERO])
        for r in range(2):
            rows.append([ZERO, ZERO, mat.get(r, 0), mat.get(r, 1)])
        return ExactMatrix.from_rows(rows)

    fixture = FinitaryBirep(
        n=1, k=1, column=1, contracted=frozenset(),
        objects=[ObjectSlot("N", 1), ObjectSlot("M", 1),
                 ObjectSlot("N", 1), ObjectSlot("M", 1)],
        action_obj={lab: doubled(mat)
                    for lab, mat in base.action_obj.items()},
        core=base.core)
    assert not is_simple_transitive(fixture)


def test_classify_rank_one():
    report = classify(1, 1)
    assert len(report.entries) == 2
    assert sorted(e["rank"] for e in report.entries) == [1, 2]
    assert all(e["simple_transitive"] for e in report.entries)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_classify_counts_are_binomial(n):
    report = classify(n, 1)
    assert len(report.entries) == 2 ** n
    for j in range(n + 1):
        assert report.counts.get(n + j, 0) == comb(n, j)


def test_classify_fingerprints_match_contraction_sets():
    report = classify(2, 1)
    prints = {tuple(e["I"]): e["fingerprint"] for e in report.entries}
    for i_set, fingerprint in prints.items():
        assert fingerprint == sorted(i_set)
    assert len({tuple(p) for p in prints.values()}) == 4


def test_classification_json_shape():
    blob = classify(2, 1).to_json()
    assert set(blob) == {"n", "k", "entries", "counts"}
    assert blob["counts"] == {"2": 1, "3": 2, "4": 1}
    for entry in blob["entries"]:
        assert set(entry) == {"I", "rank", "simple_transitive", "fingerprint"}


def test_birep_json_shape():
    blob = localize(cell_birep(2, 1), LocalizationSpec({2})).to_json()
    assert blob["rank"] == 3
    assert blob["contracted"] == [2]
    assert blob["objects"] == ["N_1", "O_2", "M_1"]
    assert len(blob["action"]) == 16
    assert all(isinstance(v, list) for v in blob["action"].values())
    assert blob["cartan"][blob["objects"].index("M_1")][0] == 1


def test_two_valley_cell_birep_builds():
    b = cell_birep(1, 2)
    assert b.rank == 2
    assert ints(b.action_obj[StringLabel("N", 1, 1, 2)]) == [[1, 1], [0, 0]]
    assert verify_block_structure(b)["ok"]
    assert verify_adjunction_consequences(b)["ok"]
