"""
CLI principal: tabelas de fidelidade/variancia, densidade, simulacao e verificacao.

Codigos de saida: 0 sucesso, 1 falha de verificacao, 2 erro de uso.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from typing import Sequence

from .analytic import avg_fidelity_qudit, avg_fidelity_single, avg_variance_qutrit, min_cost, universal_fidelity_single
from .chioptim import chi_optimal
from .config import AppConfig, load_config
from .costs import COST_NAMES, cost_spec_by_name, fidelity_cost_spec, variance_cost_spec
from .errors import GridBudgetError, MultifaseError
from .integrate import avg_cost_quadrature, mc_average_cost, quadrature_points
from .povm import density_grid
from .states import psi0_amplitudes
from .utils import emit, render_csv, render_json, setup_logging
from .verify import SUITE_NAMES, run_suites

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

log = logging.getLogger(__name__)


class UsageError(Exception):
    """Configuracao invalida detectada depois do parse."""


def _common_parser(cfg: AppConfig, with_defaults: bool) -> argparse.ArgumentParser:
    """
    Flags aceitas antes ou depois do subcomando.

    No subparser os defaults ficam suprimidos: valem os do parser principal.
    """

    def default(value):
        return value if with_defaults else argparse.SUPPRESS

    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--debug", action="store_true", default=default(False), help="Ativa logs detalhados.")
    common.add_argument("--config", type=str, default=default(None), help="Caminho para config.yaml (opcional).")
    common.add_argument("--format", choices=["csv", "json"], default=default(None), help="Formato de saida.")
    common.add_argument("--out", type=str, default=default(None), help="Arquivo de saida (padrao: stdout).")
    common.add_argument(
        "--budget",
        type=int,
        default=default(cfg.quadrature_budget),
        help="Maximo de pontos de quadratura (padrao: 10^7).",
    )
    common.add_argument("--workers", type=int, default=default(cfg.workers), help="Threads do Monte Carlo.")
    return common


def build_parser(cfg: AppConfig) -> argparse.ArgumentParser:
    """Constroi o parser com os subcomandos."""
    common = _common_parser(cfg, with_defaults=False)
    parser = argparse.ArgumentParser(
        description="Estimacao otima de multiplas fases com POVM covariante.",
        parents=[_common_parser(cfg, with_defaults=True)],
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_n_range(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--n", type=int, help="Numero de copias N.")
        group.add_argument("--n-max", type=int, help="Tabela para N = 1..n-max.")

    f = sub.add_parser("fidelity", parents=[common], allow_abbrev=False, help="Fidelidade media otima por N.")
    f.add_argument("--d", type=int, required=True, help="Dimensao de cada sistema.")
    add_n_range(f)
    f.add_argument("--grid", type=int, default=None, help="Pontos por eixo da quadratura (padrao: 2N+3).")

    v = sub.add_parser("variance", parents=[common], allow_abbrev=False, help="Variancia periodica media otima.")
    v.add_argument("--d", type=int, default=3, help="Dimensao (padrao: 3).")
    add_n_range(v)

    g = sub.add_parser("density", parents=[common], allow_abbrev=False, help="Densidade de saida numa grade (CSV).")
    g.add_argument("--d", type=int, required=True, help="Dimensao (2 ou 3).")
    g.add_argument("--n", type=int, default=1, help="Numero de copias N.")
    g.add_argument("--grid", type=int, default=cfg.density_grid, help="Pontos por eixo.")

    s = sub.add_parser("simulate", parents=[common], allow_abbrev=False, help="Monte Carlo do experimento.")
    s.add_argument("--d", type=int, required=True, help="Dimensao de cada sistema.")
    s.add_argument("--n", type=int, default=1, help="Numero de copias N.")
    s.add_argument("--samples", type=int, default=cfg.samples, help="Numero de amostras (>= 1000).")
    s.add_argument("--seed", type=int, default=cfg.seed, help="Semente de 64 bits.")
    s.add_argument("--cost", choices=COST_NAMES, default="fidelity", help="Funcao de custo.")

    r = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="Roda as suites de verificacao.")
    r.add_argument("--suite", action="append", choices=SUITE_NAMES, help="Suite especifica (repetivel).")
    r.add_argument("--d-max", type=int, default=cfg.verify_d_max, help="Maior d nas varreduras.")
    r.add_argument("--n-max", type=int, default=cfg.verify_n_max, help="Maior N nas varreduras.")
    r.add_argument("--samples", type=int, default=cfg.verify_samples, help="Amostras por Monte Carlo.")
    r.add_argument("--seed", type=int, default=cfg.seed, help="Semente de 64 bits.")
    r.add_argument("--trials", type=int, default=cfg.verify_trials, help="chi sorteados por caso.")
    r.add_argument("--inject-offdiag", type=float, default=None, help=argparse.SUPPRESS)

    b = sub.add_parser("baseline", parents=[common], allow_abbrev=False, help="Uma copia vs estimacao universal.")
    b.add_argument("--d-max", type=int, default=8, help="Maior d da tabela.")

    return parser


def _n_values(args) -> list[int]:
    if getattr(args, "n", None) is not None:
        return [args.n]
    if getattr(args, "n_max", None) is not None:
        return list(range(1, args.n_max + 1))
    return [1]


def _validate(args) -> None:
    """Invariantes do RunConfig; viola -> UsageError (saida 2)."""
    if getattr(args, "d", None) is not None and args.d < 2:
        raise UsageError(f"--d deve ser >= 2 (recebido {args.d}).")
    if getattr(args, "n", None) is not None and args.n < 1:
        raise UsageError(f"--n deve ser >= 1 (recebido {args.n}).")
    if getattr(args, "n_max", None) is not None and args.n_max < 1:
        raise UsageError(f"--n-max deve ser >= 1 (recebido {args.n_max}).")
    if getattr(args, "samples", None) is not None and args.samples < 1000:
        raise UsageError(f"--samples deve ser >= 1000 (recebido {args.samples}).")
    if getattr(args, "seed", None) is not None and not 0 <= args.seed < 2**64:
        raise UsageError("--seed deve caber em 64 bits sem sinal.")
    if getattr(args, "grid", None) is not None and args.grid < 2:
        raise UsageError(f"--grid deve ser >= 2 (recebido {args.grid}).")
    if getattr(args, "d_max", None) is not None and args.d_max < 2:
        raise UsageError(f"--d-max deve ser >= 2 (recebido {args.d_max}).")
    if getattr(args, "trials", None) is not None and args.trials < 1:
        raise UsageError(f"--trials deve ser >= 1 (recebido {args.trials}).")
    if args.budget < 1:
        raise UsageError("--budget deve ser positivo.")
    if args.workers < 1:
        raise UsageError("--workers deve ser >= 1.")


def _emit_table(command: str, header: list[str], rows: list[list], fmt: str, out, notes: list[str] | None = None) -> None:
    if fmt == "json":
        payload = {"command": command, "rows": [dict(zip(header, row)) for row in rows]}
        if notes:
            payload["notes"] = notes
        emit(render_json(payload), out)
    else:
        for note in notes or []:
            log.warning("%s", note)
        emit(render_csv(header, rows), out)


def cmd_fidelity(args, cfg: AppConfig) -> int:
    """Linhas (d, N, fbar_analytic, fbar_quadrature, abs_err)."""
    header = ["d", "N", "fbar_analytic", "fbar_quadrature", "abs_err"]
    rows, notes = [], []
    spec = fidelity_cost_spec(args.d)
    for N in _n_values(args):
        analytic = avg_fidelity_qudit(args.d, N)
        amps = psi0_amplitudes(args.d, N)
        grid = args.grid or quadrature_points(spec, N)
        try:
            quad = 1.0 - avg_cost_quadrature(spec, amps, chi_optimal(amps.amps.size), grid, args.budget)
        except GridBudgetError:
            notes.append(
                f"quadratura omitida para d={args.d}, N={N}: {grid}^{args.d - 1} pontos excedem --budget {args.budget}"
            )
            rows.append([args.d, N, analytic, None, None])
            continue
        rows.append([args.d, N, analytic, quad, abs(analytic - quad)])
    _emit_table("fidelity", header, rows, args.format or cfg.output_format, args.out, notes)
    return EXIT_OK


def cmd_variance(args, cfg: AppConfig) -> int:
    """Linhas (d, N, vbar): forma fechada em d = 3, soma de Fourier nos demais."""
    rows = []
    spec = variance_cost_spec(args.d - 1)
    for N in _n_values(args):
        if args.d == 3:
            vbar = avg_variance_qutrit(N)
        else:
            vbar = min_cost(spec, psi0_amplitudes(args.d, N))
        rows.append([args.d, N, vbar])
    _emit_table("variance", ["d", "N", "vbar"], rows, args.format or cfg.output_format, args.out)
    return EXIT_OK


def cmd_density(args, cfg: AppConfig) -> int:
    """Grade da densidade condicional, row-major, para ate dois eixos."""
    if args.d - 1 > 2:
        raise UsageError(f"density so aceita d <= 3 (d-1 = {args.d - 1} eixos nao e plotavel).")
    amps = psi0_amplitudes(args.d, args.n)
    points, values = density_grid(amps, args.grid)
    header = [f"delta{j + 1}" for j in range(amps.M)] + ["density"]
    rows = [[*p, v] for p, v in zip(points.tolist(), values.tolist())]
    _emit_table("density", header, rows, args.format or "csv", args.out)
    return EXIT_OK


def cmd_simulate(args, cfg: AppConfig) -> int:
    """McReport em JSON, com referencia analitica e z-score."""
    amps = psi0_amplitudes(args.d, args.n)
    spec = cost_spec_by_name(args.cost, args.d)
    report = mc_average_cost(
        spec, amps, args.samples, args.seed, workers=args.workers, block_size=cfg.mc_block_size
    )
    if report.acceptance_rate < cfg.min_acceptance_warning:
        log.warning(
            "Taxa de aceitacao baixa (%.4f < %.2f); amostragem por rejeicao ficou cara.",
            report.acceptance_rate,
            cfg.min_acceptance_warning,
        )
    reference = min_cost(spec, amps)
    payload = {
        **report.to_dict(),
        "analytic_reference": reference,
        "z_score": (report.mean - reference) / report.stderr if report.stderr > 0 else 0.0,
    }
    fmt = args.format or "json"
    if fmt == "csv":
        emit(render_csv(list(payload), [list(payload.values())]), args.out)
    else:
        emit(render_json(payload), args.out)
    return EXIT_OK


def cmd_verify(args, cfg: AppConfig) -> int:
    """Resumo JSON por suite; saida 1 se qualquer suite falhar."""
    run_cfg = replace(
        cfg,
        verify_d_max=args.d_max,
        verify_n_max=args.n_max,
        verify_samples=args.samples,
        verify_trials=args.trials,
        seed=args.seed,
        quadrature_budget=args.budget,
        workers=args.workers,
    )
    results = run_suites(args.suite, run_cfg, inject_offdiag=args.inject_offdiag)
    passed = all(r.passed for r in results)
    payload = {"passed": passed, "suites": [r.to_dict() for r in results]}
    emit(render_json(payload), args.out)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def cmd_baseline(args, cfg: AppConfig) -> int:
    """Linhas (d, fbar_single, fbar_universal, gain) para d = 2..d-max."""
    rows = []
    for d in range(2, args.d_max + 1):
        single, universal = avg_fidelity_single(d), universal_fidelity_single(d)
        rows.append([d, single, universal, single - universal])
    _emit_table("baseline", ["d", "fbar_single", "fbar_universal", "gain"], rows, args.format or cfg.output_format, args.out)
    return EXIT_OK


COMMANDS = {
    "fidelity": cmd_fidelity,
    "variance": cmd_variance,
    "density": cmd_density,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "baseline": cmd_baseline,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # --config precisa ser lido antes de montar os defaults do parser
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config", type=str)
    known, _ = pre.parse_known_args(argv)
    cfg = load_config(known.config)

    parser = build_parser(cfg)
    args = parser.parse_args(argv)
    setup_logging(logging.DEBUG if args.debug else logging.INFO)

    try:
        _validate(args)
        return COMMANDS[args.command](args, cfg)
    except (UsageError, MultifaseError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
