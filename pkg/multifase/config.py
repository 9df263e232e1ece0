"""
Configuracoes centrais da CLI e das verificacoes numericas.

Mantem valores padrao em um unico lugar; flags da CLI sempre vencem o YAML.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import yaml


OutputFormat = Literal["csv", "json"]
DEFAULT_CONFIG_PATHS = (Path("config.yaml"), Path("config.yml"))
log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AppConfig:
    """Valores padrao para todas as rotinas."""

    # Saida
    output_format: OutputFormat = "csv"

    # Monte Carlo
    seed: int = 20031117
    samples: int = 100_000
    mc_block_size: int = 8192
    workers: int = 1
    min_acceptance_warning: float = 0.01

    # Grades
    density_grid: int = 64
    quadrature_budget: int = 10_000_000

    # Suites do verify
    verify_d_max: int = 4
    verify_n_max: int = 4
    verify_samples: int = 20_000
    verify_trials: int = 200

    # Tolerancias
    psd_tol: float = 1e-10
    bound_slack: float = 1e-10
    hermitian_tol: float = 1e-12


def load_config(config_path: str | Path | None = None) -> AppConfig:
    """
    Carrega configuracoes a partir de YAML, com fallback para valores padrao.
    """
    base = AppConfig()

    path: Path | None = None
    if config_path:
        candidate = Path(config_path)
        if candidate.exists():
            path = candidate
        else:
            log.warning("Config %s nao encontrada; usando defaults.", candidate)
    else:
        for candidate in DEFAULT_CONFIG_PATHS:
            if candidate.exists():
                path = candidate
                break

    if path is None:
        return base

    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except FileNotFoundError:
        return base
    except Exception as exc:  # pragma: no cover - I/O edge case
        log.warning("Falha ao ler config %s; usando defaults. Erro: %s", path, exc)
        return base

    if not isinstance(data, dict):
        log.warning("Config %s tem formato inesperado; usando defaults.", path)
        return base

    overrides = {}
    # suporte a bloco tolerances: {psd, bound, hermitian}
    tol_block = data.get("tolerances")
    if isinstance(tol_block, dict):
        if "psd" in tol_block:
            overrides["psd_tol"] = float(tol_block["psd"])
        if "bound" in tol_block:
            overrides["bound_slack"] = float(tol_block["bound"])
        if "hermitian" in tol_block:
            overrides["hermitian_tol"] = float(tol_block["hermitian"])
    for key, value in data.items():
        if key == "tolerances":
            continue
        if key not in base.__dict__:
            log.debug("Chave de config ignorada: %s", key)
            continue
        overrides[key] = value

    merged = {**base.__dict__, **overrides}
    if merged.get("output_format") not in ("csv", "json"):
        log.warning("output_format invalido (%s); usando csv.", merged.get("output_format"))
        merged["output_format"] = "csv"
    return AppConfig(**merged)
