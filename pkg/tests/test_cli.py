import csv
import io
import json
import math

import pytest

from multifase.main import main


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    # sem config.yaml no diretorio de trabalho
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_fidelity_table(capsys):
    code, out = run(capsys, "fidelity", "--d", "3", "--n-max", "2")
    assert code == 0
    table = rows(out)
    assert table[0] == ["d", "N", "fbar_analytic", "fbar_quadrature", "abs_err"]
    assert table[1][:3] == ["3", "1", "0.555555556"]
    assert table[2][:3] == ["3", "2", "0.690994602"]
    assert float(table[2][3]) == pytest.approx(float(table[2][2]), abs=1e-9)
    assert float(table[2][4]) < 1e-10


def test_fidelity_qubit(capsys):
    code, out = run(capsys, "fidelity", "--d", "2", "--n-max", "1")
    assert code == 0
    assert rows(out)[1][:3] == ["2", "1", "0.75"]


def test_fidelity_over_budget_leaves_quadrature_blank(capsys):
    code, out = run(capsys, "fidelity", "--d", "3", "--n", "1", "--budget", "10")
    assert code == 0
    assert out.splitlines()[1] == "3,1,0.555555556,,"


def test_fidelity_json_notes(capsys):
    code, out = run(capsys, "fidelity", "--d", "3", "--n", "1", "--budget", "10", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["rows"][0]["fbar_quadrature"] is None
    assert payload["notes"]


def test_invalid_dimension_is_usage_error(capsys):
    code, _ = run(capsys, "fidelity", "--d", "1", "--n", "1")
    assert code == 2


def test_unknown_flag_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["fidelity", "--d", "3", "--bogus"])
    assert exc.value.code == 2


def test_variance_table(capsys):
    code, out = run(capsys, "variance", "--d", "3", "--n-max", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"][0]["vbar"] == pytest.approx(4 / 3, abs=1e-8)
    assert payload["rows"][1]["vbar"] == pytest.approx(2 - (2 / 9) * (2 + 2 * math.sqrt(2)), abs=1e-8)


def test_variance_other_dimension(capsys):
    code, out = run(capsys, "variance", "--d", "2", "--n", "1")
    assert code == 0
    # qubit, uma copia: 1 - G_1 = 1/2
    assert rows(out)[1] == ["2", "1", "0.5"]


def test_density_dump(capsys):
    code, out = run(capsys, "density", "--d", "3", "--n", "1", "--grid", "64")
    assert code == 0
    table = rows(out)
    assert table[0] == ["delta1", "delta2", "density"]
    assert len(table) == 1 + 64 * 64
    assert [float(x) for x in table[1][:2]] == [0.0, 0.0]
    assert float(table[1][2]) == pytest.approx(3 / (4 * math.pi**2), rel=1e-8)
    total = sum(float(r[2]) for r in table[1:]) * (2 * math.pi / 64) ** 2
    assert total == pytest.approx(1.0, abs=1e-3)


def test_density_qubit_header(capsys):
    code, out = run(capsys, "density", "--d", "2", "--n", "2", "--grid", "16")
    assert code == 0
    table = rows(out)
    assert table[0] == ["delta1", "density"]
    assert len(table) == 17


def test_density_rejects_three_axes(capsys):
    code, out = run(capsys, "density", "--d", "4")
    assert code == 2
    assert out == ""


def test_simulate_is_deterministic(capsys, tmp_path):
    args = ["simulate", "--d", "3", "--n", "1", "--samples", "20000", "--seed", "5"]
    assert main(args + ["--out", str(tmp_path / "a.json")]) == 0
    assert main(args + ["--out", str(tmp_path / "b.json"), "--workers", "2"]) == 0
    first = (tmp_path / "a.json").read_bytes()
    assert first == (tmp_path / "b.json").read_bytes()
    payload = json.loads(first)
    assert set(payload) == {"mean", "stderr", "samples", "acceptance_rate", "seed", "analytic_reference", "z_score"}
    assert payload["analytic_reference"] == pytest.approx(4 / 9, abs=1e-9)
    assert abs(payload["z_score"]) <= 4
    assert payload["acceptance_rate"] == pytest.approx(1 / 3, abs=0.02)
    assert first.endswith(b"}\n")


def test_simulate_rejects_few_samples(capsys):
    code, _ = run(capsys, "simulate", "--d", "3", "--samples", "10")
    assert code == 2


def test_verify_single_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "completeness", "--d-max", "3", "--n-max", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["passed"] is True
    assert [s["name"] for s in payload["suites"]] == ["completeness"]


def test_verify_negative_control(capsys):
    code, out = run(capsys, "verify", "--suite", "optimality", "--trials", "5", "--inject-offdiag", "1.5")
    payload = json.loads(out)
    assert code == 1
    assert payload["passed"] is False


def test_verify_small_full_run(capsys):
    code, out = run(
        capsys, "verify", "--d-max", "3", "--n-max", "2", "--samples", "4000", "--trials", "20"
    )
    payload = json.loads(out)
    assert code == 0, payload
    assert [s["name"] for s in payload["suites"]] == [
        "completeness",
        "normalization",
        "agreement",
        "optimality",
        "monotonicity",
    ]


def test_baseline(capsys):
    code, out = run(capsys, "baseline", "--d-max", "4")
    assert code == 0
    table = rows(out)
    assert table[0] == ["d", "fbar_single", "fbar_universal", "gain"]
    assert table[2] == ["3", "0.555555556", "0.4", "0.155555556"]
    assert all(float(r[3]) > 0 for r in table[1:])


@pytest.mark.parametrize(
    "argv",
    [
        ("fidelity", "--d", "2", "--n", "70"),
        ("fidelity", "--d", "3", "--n", "45"),
        ("variance", "--d", "3", "--n", "45"),
    ],
)
def test_multinomial_overflow_is_usage_error(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_shared_flags_before_subcommand(capsys):
    code, out = run(capsys, "--debug", "--format", "json", "baseline", "--d-max", "3")
    assert code == 0
    assert [row["d"] for row in json.loads(out)["rows"]] == [2, 3]


def test_top_level_budget_survives_subcommand_defaults(capsys):
    code, out = run(capsys, "--budget", "10", "fidelity", "--d", "3", "--n", "1")
    assert code == 0
    assert out.splitlines()[1] == "3,1,0.555555556,,"
