"""Tests for the command line interface and its JSON contracts."""

import json
import os
from pathlib import Path

import jsonschema
import pytest

from nakayama.bimodules import StringLabel, construct
from nakayama.cli import adjunction_command, main

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def load_schema(name):
    with open(SCHEMA_DIR / f"{name}.schema.json", encoding="utf-8") as fh:
        return json.load(fh)


def run_json(capsys, argv):
    status = main(argv)
    out = capsys.readouterr().out
    return status, json.loads(out)


def test_catalog_small_range_lists_the_split_families(capsys):
    status = main(["catalog", "--n", "1", "--max-valleys", "0"])
    out = capsys.readouterr().out
    assert status == 0
    assert "5 bimodules" in out
    for fragment in ("P_1|1", "L_1|1", "S^(0)_1|1", "N^(0)_1|1", "M^(0)_1|1"):
        assert fragment in out


def test_catalog_json_matches_schema(capsys):
    status, blob = run_json(capsys, ["catalog", "--n", "1",
                                     "--max-valleys", "0", "--json"])
    assert status == 0
    jsonschema.validate(blob, load_schema("catalog"))
    assert [e["dim"] for e in blob["entries"]] == [4, 1, 2, 2, 3]


def test_algebra_json_matches_schema(capsys):
    status, blob = run_json(capsys, ["algebra", "--n", "2", "--json"])
    assert status == 0
    jsonschema.validate(blob, load_schema("algebra"))
    assert blob["associative"] is True
    assert blob["nakayama"]["dimension"] == 4
    assert blob["torus"]["dimension"] == 16


def test_bimodule_serialization_matches_schema():
    blob = construct(StringLabel("M", 1, 1, 1), 2).to_json()
    jsonschema.validate(blob, load_schema("bimodule"))


def test_tensor_reports_summands(capsys):
    status, blob = run_json(capsys, ["tensor", "N:1|1:k=1", "S:1|1:k=1",
                                     "--n", "2", "--json"])
    assert status == 0
    jsonschema.validate(blob, load_schema("tensor"))
    families = {(s["family"], s["k"]) for s in blob["report"]["summands"]}
    assert ("W", 1) in families
    assert blob["report"]["residual_dim"] == 0


def test_tensor_of_mismatched_columns_loses_its_valley_part(capsys):
    status, blob = run_json(capsys, ["tensor", "N:1|1:k=1", "N:2|2:k=1",
                                     "--n", "2", "--json"])
    assert status == 0
    assert all(s["k"] == 0 for s in blob["report"]["summands"])
    assert set(blob["report"]["cells"]) == {"J_split"}


def test_multable_passes(capsys):
    status = main(["multable", "--n", "2", "--k", "1"])
    out = capsys.readouterr().out
    assert status == 0
    assert "mismatches: 0" in out


def test_multable_json_matches_schema(capsys):
    status, blob = run_json(capsys, ["multable", "--n", "1", "--k", "1",
                                     "--json"])
    assert status == 0
    jsonschema.validate(blob, load_schema("multable"))
    assert blob["products"] == 16


def test_cells_prints_chain_and_egg_box(capsys):
    status = main(["cells", "--n", "2", "--max-valleys", "1"])
    out = capsys.readouterr().out
    assert status == 0
    assert "J_split >= J_M0 >= J_1" in out
    assert "egg box of J_1 (4x4):" in out


def test_cells_json_matches_schema(capsys):
    status, blob = run_json(capsys, ["cells", "--n", "1",
                                     "--max-valleys", "1", "--json"])
    assert status == 0
    jsonschema.validate(blob, load_schema("cells"))
    assert blob["chain"] == ["J_split", "J_M0", "J_1"]


@pytest.mark.parametrize("n,k", [(2, 1), (1, 2), (3, 0)])
def test_adjunction_command_passes(n, k):
    report = adjunction_command(n, k)
    assert report["ok"]
    assert len(report["pairs"]) == n * n


def test_adjunction_cli_and_schema(capsys):
    status, blob = run_json(capsys, ["adjunction", "--n", "2", "--k", "1",
                                     "--json"])
    assert status == 0
    jsonschema.validate(blob, load_schema("adjunction"))


def test_cellrep_human_and_json(capsys):
    status = main(["cellrep", "--n", "1", "--k", "1"])
    out = capsys.readouterr().out
    assert status == 0
    assert "rank 2" in out and "Cartan matrix:" in out

    status, blob = run_json(capsys, ["cellrep", "--n", "2", "--k", "1",
                                     "--json"])
    assert status == 0
    jsonschema.validate(blob, load_schema("cellrep"))
    assert len(blob["birep"]["action"]) == 16
    assert blob["block_structure"]["ok"] is True


def test_localize_verdict_and_schema(capsys):
    status = main(["localize", "--n", "2", "--k", "1", "--contract", "1"])
    out = capsys.readouterr().out
    assert status == 0
    assert "rank 3" in out and "simple transitive: yes" in out

    status, blob = run_json(capsys, ["localize", "--n", "2", "--k", "1",
                                     "--contract", "1,2", "--json"])
    assert status == 0
    jsonschema.validate(blob, load_schema("localize"))
    assert blob["birep"]["rank"] == 2
    assert blob["simple_transitive"] is True


def test_classify_counts_and_schema(capsys):
    status, blob = run_json(capsys, ["classify", "--n", "2", "--k", "1",
                                     "--json"])
    assert status == 0
    jsonschema.validate(blob, load_schema("classification"))
    assert blob["counts"] == {"2": 1, "3": 2, "4": 1}


def test_json_output_is_deterministic(capsys):
    argv = ["classify", "--n", "2", "--k", "1", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    status = main(["multable", "--n", "1", "--k", "1",
                   "--out", str(target)])
    capsys.readouterr()
    assert status == 0
    blob = json.loads(target.read_text())
    assert blob["ok"] is True


def test_relative_out_resolves_under_env_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NAKAYAMA_OUT", str(tmp_path))
    status = main(["catalog", "--n", "1", "--max-valleys", "0",
                   "--out", "cat.json"])
    capsys.readouterr()
    assert status == 0
    assert (tmp_path / "cat.json").exists()


def test_usage_errors_exit_with_code_two():
    with pytest.raises(SystemExit) as err:
        main(["multable"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["catalog", "--n", "0"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["localize", "--n", "2", "--contract", "one,two"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2
