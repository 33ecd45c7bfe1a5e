import json

import pytest

from localtest import generate
from localtest.cli import EXIT_BOUND, EXIT_INPUT, EXIT_OK, main
from localtest.io import load_edge_list, save_edge_list
from localtest.testers import default_profile


def test_generate_writes_edge_list(tmp_path):
    out = tmp_path / "g.edges"
    assert main(["generate", "grid(4,5)", "--out", str(out)]) == EXIT_OK
    g = load_edge_list(out)
    assert g.n == 20 and g.num_edges == 31


def test_generate_to_stdout(capsys):
    assert main(["generate", "cycle(4)"]) == EXIT_OK
    assert capsys.readouterr().out.split("\n")[0].startswith("4")


def test_stats_json(tmp_path):
    out = tmp_path / "f.json"
    assert main(["stats", "cycle(9)", "-r", "1", "--out", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert list(data["entries"].values()) == [1.0]


def test_rho_prints_value(capsys):
    assert main(["rho", "cycle(12)", "path(12)", "-r", "1"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("rho_1 = 0.333333333333")


def test_partition_modes(capsys, tmp_path):
    assert main(["partition", "cycle(9)", "-k", "3", "--mode", "exact"]) == EXIT_OK
    assert "cut=3" in capsys.readouterr().out
    out = tmp_path / "cut.txt"
    assert main(["partition", "grid(6,6)", "-k", "4", "--out", str(out)]) == EXIT_OK
    assert out.read_text().strip()


def test_cut_experiment(tmp_path):
    out = tmp_path / "rows.csv"
    code = main(["cut-experiment", "grid(8,8)", "-k", "4", "--trials", "10", "--out", str(out)])
    assert code == EXIT_OK
    assert out.read_text().startswith("trial,cut_size")


def test_cut_experiment_without_radius_exits_2():
    assert main(["cut-experiment", "grid(30,30)", "-k", "9", "--eps", "0.1", "--max-radius", "9", "--trials", "1"]) == EXIT_BOUND


def test_transfer_experiment(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["transfer-experiment", "cycle(12)", "cycle(24)", "-k", "3", "--trials", "20", "--out", str(out)]) == EXIT_OK
    assert out.read_text().count("source") == 20


def test_test_command(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["test", "grid(20,20)", "--trials", "3", "--out", str(out)]) == EXIT_OK
    assert "accepted=3" in capsys.readouterr().err


def test_test_command_with_profile_file(tmp_path):
    prof = tmp_path / "p.json"
    default_profile().save(prof)
    assert main(["test", "grid(10,10)", "--profile", str(prof), "--eps", "0.1", "--trials", "2"]) == EXIT_OK
    assert main(["test", "grid(10,10)", "--profile", str(prof), "--eps", "0.3", "--trials", "2"]) == EXIT_INPUT


def test_config_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"trials": 2}))
    assert main(["test", "grid(10,10)", "--config", str(cfg)]) == EXIT_OK
    assert "trials=2" in capsys.readouterr().err


def test_calibrate_from_directory(tmp_path):
    (tmp_path / "in").mkdir()
    (tmp_path / "far").mkdir()
    save_edge_list(generate("grid(10,10)"), tmp_path / "in" / "g.edges")
    save_edge_list(generate("complete(5)"), tmp_path / "far" / "k.edges")
    out = tmp_path / "prof.json"
    code = main(["calibrate", str(tmp_path), "--calibration-trials", "3", "--out", str(out)])
    assert code == EXIT_OK
    assert json.loads(out.read_text())["eps"] == 0.1


def test_calibrate_unreachable_bar_exits_2(tmp_path):
    (tmp_path / "in").mkdir()
    (tmp_path / "far").mkdir()
    save_edge_list(generate("grid(10,10)"), tmp_path / "in" / "g.edges")
    save_edge_list(generate("grid(11,11)"), tmp_path / "far" / "h.edges")
    assert main(["calibrate", str(tmp_path), "--calibration-trials", "3"]) == EXIT_BOUND


def test_calibrate_empty_directory(tmp_path):
    assert main(["calibrate", str(tmp_path)]) == EXIT_INPUT


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "grid(0,3)"],
        ["generate", "no_such_family(3)"],
        ["stats", "cycle(5)"],
        ["stats", "missing_file.edges", "-r", "1"],
        ["partition", "grid(6,6)", "-k", "3", "--mode", "exact"],
        ["frobnicate"],
        ["test", "grid(5,5)", "--config", "does_not_exist.json"],
    ],
)
def test_input_errors_exit_3(argv):
    assert main(argv) == EXIT_INPUT


def test_malformed_edge_file_exits_3(tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("3 2\n0 1\n1 x\n")
    assert main(["stats", str(bad), "-r", "1"]) == EXIT_INPUT
