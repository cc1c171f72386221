import json

import pytest
from click.testing import CliRunner

from lame_monodromy.belyi import power_map_configuration
from lame_monodromy.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _json(runner, args):
    result = runner.invoke(main, ["--format", "json"] + args)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_solids_dump(runner):
    data = _json(runner, ["solids", "dump", "--name", "cube"])
    assert data[0]["name"] == "cube"
    assert data[0]["rotation_order"] == 24


def test_atlas_enumerate_all(runner):
    data = _json(runner, ["atlas", "enumerate"])
    assert len(data) == 22


def test_count(runner):
    data = _json(runner, ["count", "--n", "13/10"])
    assert data["total"] == 6


def test_count_invalid_input_exit_code(runner):
    result = runner.invoke(main, ["count", "--n", "3/2"])
    assert result.exit_code == 2


def test_dahmen_with_oracle(runner):
    result = runner.invoke(
        main, ["dahmen", "--n", "3", "--big-n", "7", "--check-oracle"]
    )
    assert result.exit_code == 0
    result = runner.invoke(
        main, ["dahmen", "--n", "3", "--big-n", "7", "--projective"]
    )
    assert result.exit_code == 0


def test_monodromy_dihedral(runner):
    data = _json(runner, ["monodromy", "--s", "1/3", "--t", "1/3"])
    assert data["Mt"] == "D3"
    result = runner.invoke(main, ["monodromy", "--s", "1", "--t", "1/3"])
    assert result.exit_code == 2


def test_dessin_passport(runner):
    data = _json(runner, [
        "dessin", "passport", "--n", "1/4", "--family", "octahedral",
    ])
    assert data["passports"][0]["degree"] == 3


def test_dessin_enumerate_and_cap(runner):
    passport = json.dumps({"0": [1, 1, 1], "1": [3], "infinity": [3]})
    data = _json(runner, ["dessin", "enumerate", "--passport", passport])
    assert data["classes"] == 1
    big = json.dumps({"0": [2] * 9, "1": [3] * 6, "infinity": [8, 5, 5]})
    result = runner.invoke(main, ["dessin", "enumerate", "--passport", big])
    assert result.exit_code == 3  # degree 18 over the cap


def test_belyi_solve_and_certify(runner):
    init = power_map_configuration(2)
    init.ones[1] = -1.05
    solved = _json(runner, [
        "belyi", "solve", "--initial", json.dumps(init.to_dict()),
    ])
    assert solved["converged"]
    result = runner.invoke(main, [
        "--format", "json", "belyi", "certify", "--result", json.dumps(solved),
    ])
    assert result.exit_code == 0, result.output


@pytest.mark.parametrize("table", ["table1", "table2", "table4", "thm13", "thm14"])
def test_reproduce_fast_targets(runner, table):
    result = runner.invoke(main, ["reproduce", table])
    assert result.exit_code == 0, result.output


def test_reproduce_table4_custom_range(runner):
    result = runner.invoke(main, ["reproduce", "table4", "--k", "0..3"])
    assert result.exit_code == 0


def test_pipeline(runner):
    data = _json(runner, ["pipeline", "--n", "1/4"])
    assert data["total"] == 1
    assert data["groups"]["octahedral"]["M"] == "G12+"
    assert data["dessin_classes"]["octahedral"] == 1
    result = runner.invoke(main, ["pipeline", "--n", "1/2"])
    assert result.exit_code == 2


def test_invalid_tolerance_rejected(runner):
    result = runner.invoke(main, ["--tol-geom", "-1", "count", "--n", "1/4"])
    assert result.exit_code == 2
