import json

import pytest

from confmeasures import cli
from confmeasures.core.validation import ValidationResult


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    rows = {}
    for line in out.splitlines():
        parts = line.split()
        if len(parts) == 2:
            rows[parts[0]] = parts[1]
    return code, out, rows


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch, tmp_path):
    monkeypatch.delenv("CONFMEASURES_CONFIG", raising=False)
    monkeypatch.delenv("CONFMEASURES_LOG_LEVEL", raising=False)
    monkeypatch.chdir(tmp_path)


def test_compute_identity(capsys, write_matrix):
    code, _, rows = run_cli(capsys, "compute", write_matrix("1,0,0\n0,1,0\n0,0,1\n"))
    assert code == cli.EXIT_OK
    assert rows["acc"] == "1"
    assert rows["mcc"] == "1"
    assert rows["cen"] == "0"


def test_compute_all_ones(capsys, write_matrix, tmp_path):
    output = tmp_path / "report.json"
    code, _, rows = run_cli(capsys, "compute", write_matrix("1,1,1\n1,1,1\n1,1,1\n"), "--output", str(output))
    assert code == cli.EXIT_OK
    assert float(rows["mcc"]) == 0.0
    assert float(rows["cen"]) == pytest.approx(0.86165, abs=1e-5)
    assert json.loads(output.read_text())["report"]["n"] == 3


def test_compute_full_precision(capsys, write_matrix):
    _, _, rows = run_cli(capsys, "compute", "--full-precision", write_matrix("1,1,1\n1,1,1\n1,1,1\n"))
    assert len(rows["cen"]) > 12


def test_compute_binary_closed_form(capsys, write_matrix):
    code, _, rows = run_cli(capsys, "compute", write_matrix("5,2\n1,7\n"), "--binary-closed-form")
    assert code == cli.EXIT_OK
    assert rows["mcc_closed"] == rows["mcc_direct"]
    assert rows["cen_closed"] == rows["cen_direct"]
    assert rows["tmcc"] == "undefined"


def test_binary_closed_form_needs_two_classes(capsys, write_matrix):
    code, _, _ = run_cli(capsys, "compute", write_matrix("1,1,1\n1,1,1\n1,1,1\n"), "--binary-closed-form")
    assert code == cli.EXIT_VALIDATION


def test_compute_parse_error(capsys, write_matrix):
    code, _, _ = run_cli(capsys, "compute", write_matrix("1,2\n3,x\n"))
    assert code == cli.EXIT_VALIDATION


def test_compute_missing_file(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "compute", str(tmp_path / "absent.csv"))
    assert code == cli.EXIT_IO


def test_family_za(capsys):
    code, out, _ = run_cli(capsys, "family", "ZA", "--n", "3", "--a", "3")
    assert code == cli.EXIT_OK
    mcc_line = next(line for line in out.splitlines() if line.startswith("mcc "))
    assert mcc_line.split()[1:3] == ["-0.07692308", "-0.07692308"]
    assert "printed-form mcc: -1" in out


def test_family_diag_b(capsys):
    code, out, _ = run_cli(capsys, "family", "DIAG_B", "--n", "3", "--t", "2", "--f", "1")
    assert code == cli.EXIT_OK
    assert "cen_identity" in out


def test_family_uniform(capsys):
    code, out, _ = run_cli(capsys, "family", "UNIFORM", "--n", "4")
    assert code == cli.EXIT_OK
    cen_line = next(line for line in out.splitlines() if line.startswith("cen "))
    assert float(cen_line.split()[1]) == pytest.approx(0.8704188, abs=1e-6)


def test_family_missing_parameter(capsys):
    code, _, _ = run_cli(capsys, "family", "ZA", "--n", "3")
    assert code == cli.EXIT_VALIDATION


def test_enumerate_compare_tiny_domain(capsys):
    code, _, rows = run_cli(capsys, "enumerate-compare", "--rows", "1,1", "--pair", "cen-mcc")
    assert code == cli.EXIT_OK
    assert rows["domain_size"] == "4"
    assert rows["pairs"] == "6"
    assert (rows["P"], rows["Q"], rows["R"], rows["S"]) == ("0", "0", "5", "0")
    assert rows["discriminancy(cen/mcc)"] == "undefined"
    assert rows["consistency(cen,mcc)"] == "1"


def test_enumerate_compare_example(capsys):
    code, _, rows = run_cli(capsys, "enumerate-compare", "--rows", "2,4,3", "--jobs", "2")
    assert code == cli.EXIT_OK
    assert rows["domain_size"] == "900"
    assert 4.0 <= float(rows["discriminancy(cen/mcc)"]) <= 9.0


def test_enumerate_compare_budget(capsys):
    code, _, _ = run_cli(capsys, "enumerate-compare", "--rows", "50,50,50")
    assert code == cli.EXIT_BUDGET


def test_enumerate_compare_bad_pair():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["enumerate-compare", "--rows", "1,1", "--pair", "cen-f1"])
    assert excinfo.value.code == 2


def test_unknown_flag():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["compute", "m.csv", "--colour"])
    assert excinfo.value.code == 2


def experiment_args(tmp_path, tag, *extra):
    return ["experiment", "--n", "60", "--seed", "7", "--bootstrap-resamples", "200",
            "--records", str(tmp_path / f"{tag}.csv"), "--summary", str(tmp_path / f"{tag}.json"), *extra]


def test_experiment_is_deterministic(capsys, tmp_path):
    assert cli.main(experiment_args(tmp_path, "a")) == cli.EXIT_OK
    assert cli.main(experiment_args(tmp_path, "b")) == cli.EXIT_OK
    assert cli.main(experiment_args(tmp_path, "c", "--jobs", "2", "--chunk-size", "25")) == cli.EXIT_OK
    capsys.readouterr()
    records = (tmp_path / "a.csv").read_bytes()
    assert records == (tmp_path / "b.csv").read_bytes() == (tmp_path / "c.csv").read_bytes()
    assert (tmp_path / "a.json").read_text() == (tmp_path / "b.json").read_text()
    assert json.loads((tmp_path / "a.json").read_text())["seed"] == 7


def test_experiment_fixed_dimension(capsys, tmp_path):
    code = cli.main(experiment_args(tmp_path, "d", "--dim-min", "5", "--dim-max", "5"))
    capsys.readouterr()
    assert code == cli.EXIT_OK
    lines = (tmp_path / "d.csv").read_text().splitlines()[1:]
    assert len(lines) == 60
    assert {line.split(",")[1] for line in lines} == {"5"}


def test_experiment_rerun_from_summary(capsys, tmp_path):
    cli.main(experiment_args(tmp_path, "e"))
    code = cli.main(["experiment", "--experiment-config", str(tmp_path / "e.json"),
                     "--records", str(tmp_path / "f.csv")])
    capsys.readouterr()
    assert code == cli.EXIT_OK
    assert (tmp_path / "e.csv").read_bytes() == (tmp_path / "f.csv").read_bytes()


def test_experiment_invalid_config(capsys):
    code, _, _ = run_cli(capsys, "experiment", "--n", "10", "--dim-min", "2")
    assert code == cli.EXIT_VALIDATION


def test_experiment_sanity_band_failure(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr(cli, "check_sanity_band", lambda summary: ValidationResult(valid=False, reason="forced"))
    code = cli.main(experiment_args(tmp_path, "g"))
    capsys.readouterr()
    assert code == cli.EXIT_SANITY
