from pathlib import Path

from multifase.config import AppConfig, load_config


def test_load_config_defaults_when_keys_missing(tmp_path: Path) -> None:
    cfg_path = tmp_path / "config.yaml"
    cfg_path.write_text("seed: 7\n", encoding="utf-8")

    cfg = load_config(cfg_path)

    assert cfg.seed == 7
    assert cfg.samples == 100_000
    assert cfg.quadrature_budget == 10_000_000
    assert cfg.psd_tol == 1e-10


def test_load_config_flattens_tolerances(tmp_path: Path) -> None:
    cfg_path = tmp_path / "config.yaml"
    cfg_path.write_text(
        """\noutput_format: json\nworkers: 4\ntolerances:\n  psd: 1.0e-9\n  bound: 2.0e-10\n  hermitian: 1.0e-11\nchave_estranha: 1\n""",
        encoding="utf-8",
    )

    cfg = load_config(cfg_path)

    assert cfg.output_format == "json"
    assert cfg.workers == 4
    assert cfg.psd_tol == 1e-9
    assert cfg.bound_slack == 2e-10
    assert cfg.hermitian_tol == 1e-11


def test_load_config_invalid_format_falls_back(tmp_path: Path) -> None:
    cfg_path = tmp_path / "config.yaml"
    cfg_path.write_text("output_format: xml\n", encoding="utf-8")

    assert load_config(cfg_path).output_format == "csv"


def test_load_config_missing_or_bad_file(tmp_path: Path) -> None:
    assert load_config(tmp_path / "nao_existe.yaml") == AppConfig()
    bad = tmp_path / "lista.yaml"
    bad.write_text("- a\n- b\n", encoding="utf-8")
    assert load_config(bad) == AppConfig()
