"""
Funcoes utilitarias compartilhadas.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import sys
import time
from pathlib import Path
from typing import Any, Iterable, Sequence, Tuple

import numpy as np

SIG_DIGITS = 9


def setup_logging(level: int = logging.INFO) -> logging.Logger:
    """Configura logging simples para console (stderr, stdout fica para os dados)."""
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger = logging.getLogger("multifase")
    logger.setLevel(level)
    return logger


def ensure_dir(path: Path) -> None:
    """Cria diretorio se nao existir."""
    path.mkdir(parents=True, exist_ok=True)


def write_text(path: Path, content: str, encoding: str = "utf-8") -> None:
    """Escreve texto garantindo diretorio; LF em qualquer plataforma."""
    ensure_dir(path.parent)
    with path.open("w", encoding=encoding, newline="\n") as fh:
        fh.write(content)


def timed(fn, *args, **kwargs) -> Tuple[float, Any]:
    """Executa funcao e retorna (segundos, resultado)."""
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    elapsed = time.perf_counter() - start
    return elapsed, result


def format_number(value: Any) -> str:
    """Formata numeros com 9 algarismos significativos, independente de locale."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), f".{SIG_DIGITS}g")


def round_for_json(value: Any) -> Any:
    """Arredonda floats (recursivamente) para a mesma precisao do CSV."""
    if isinstance(value, dict):
        return {k: round_for_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_for_json(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(format(value, f".{SIG_DIGITS}g"))
    return value


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV com cabecalho, separador virgula e LF."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    return buffer.getvalue()


def render_json(payload: dict) -> str:
    """Um unico objeto JSON por invocacao, bytes reprodutiveis."""
    return json.dumps(round_for_json(payload), ensure_ascii=False, indent=2) + "\n"


def emit(content: str, out: str | Path | None) -> None:
    """Escreve em arquivo (se informado) ou no stdout."""
    if out:
        write_text(Path(out), content)
        return
    sys.stdout.write(content)
    sys.stdout.flush()
