"""
Suites de verificacao usadas pelo comando `verify`.

Cada suite devolve um SuiteResult com pass/fail, a pior margem observada e os
detalhes por caso; nenhuma levanta excecao por falha numerica.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .analytic import (
    avg_fidelity_qudit,
    avg_fidelity_qutrit,
    avg_fidelity_single,
    avg_variance_qudit,
    avg_variance_qutrit,
    universal_fidelity_single,
)
from .chioptim import ChiMatrix, chi_optimal, mix_chi, random_feasible_chi, verify_bound
from .config import AppConfig
from .costs import cost_spec_by_name
from .errors import GridBudgetError
from .integrate import avg_cost_fourier, avg_cost_quadrature, mc_average_cost, quadrature_points
from .povm import completeness_defect, density_normalization_error, required_points
from .states import psi0_amplitudes
from .symbasis import sym_dim
from .utils import timed

log = logging.getLogger(__name__)

SUITE_NAMES = ("completeness", "normalization", "agreement", "optimality", "monotonicity")
EXACT_TOL = 1e-10
PLATEAU_TOL = 1e-12
CLOSED_FORM_TOL = 1e-12
MC_SIGMAS = 4.0


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    margin: float = 0.0
    cases: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def record(self, ok: bool, **case) -> None:
        case["passed"] = bool(ok)
        self.cases.append(case)
        if not ok:
            self.passed = False

    def to_dict(self) -> dict:
        return asdict(self)


def _grid(d_max: int, n_max: int):
    for d in range(2, d_max + 1):
        for N in range(1, n_max + 1):
            yield d, N


def suite_completeness(cfg: AppConfig, **_) -> SuiteResult:
    result = SuiteResult("completeness")
    for d, N in _grid(cfg.verify_d_max, cfg.verify_n_max):
        defect = completeness_defect(d, N, required_points(N))
        result.margin = max(result.margin, defect)
        result.record(defect < EXACT_TOL, d=d, N=N, defect=defect)
    return result


def suite_normalization(cfg: AppConfig, **_) -> SuiteResult:
    result = SuiteResult("normalization")
    for d, N in _grid(cfg.verify_d_max, cfg.verify_n_max):
        error = density_normalization_error(psi0_amplitudes(d, N), required_points(N))
        result.margin = max(result.margin, error)
        result.record(error < EXACT_TOL, d=d, N=N, error=error)
    return result


def _closed_form(cost: str, d: int, N: int) -> float:
    if cost == "fidelity":
        return 1.0 - avg_fidelity_qudit(d, N)
    return avg_variance_qudit(d, N)


def suite_agreement(cfg: AppConfig, **_) -> SuiteResult:
    """Forma fechada, soma de Fourier, quadratura (duas grades) e Monte Carlo."""
    result = SuiteResult("agreement")
    for d, N in _grid(cfg.verify_d_max, cfg.verify_n_max):
        amps = psi0_amplitudes(d, N)
        chi = chi_optimal(amps.amps.size)
        for cost in ("fidelity", "variance"):
            spec = cost_spec_by_name(cost, d)
            fourier = avg_cost_fourier(spec, amps, chi)
            closed = _closed_form(cost, d, N)
            case = {"d": d, "N": N, "cost": cost, "fourier": fourier, "closed_form": closed}
            ok = abs(fourier - closed) < CLOSED_FORM_TOL
            gap = abs(fourier - closed)
            try:
                coarse = avg_cost_quadrature(spec, amps, chi, quadrature_points(spec, N), cfg.quadrature_budget)
                fine = avg_cost_quadrature(spec, amps, chi, 4 * N + 8, cfg.quadrature_budget)
            except GridBudgetError:
                result.notes.append(f"quadratura omitida para d={d}, N={N}: orcamento excedido")
            else:
                case.update(quadrature=coarse, plateau_gap=abs(coarse - fine))
                ok = ok and abs(fourier - coarse) < EXACT_TOL and abs(coarse - fine) < PLATEAU_TOL
                gap = max(gap, abs(fourier - coarse))
            mc = mc_average_cost(
                spec, amps, cfg.verify_samples, cfg.seed, workers=cfg.workers, block_size=cfg.mc_block_size
            )
            z = (mc.mean - fourier) / mc.stderr if mc.stderr > 0 else 0.0
            case.update(mc_mean=mc.mean, mc_stderr=mc.stderr, z_score=z)
            ok = ok and abs(z) <= MC_SIGMAS
            result.margin = max(result.margin, gap)
            result.record(ok, **case)
    return result


def _offdiag_chi(dim: int, value: float) -> ChiMatrix:
    entries = np.full((dim, dim), value, dtype=complex)
    np.fill_diagonal(entries, 1.0)
    return ChiMatrix(entries)


def suite_optimality(cfg: AppConfig, inject_offdiag: float | None = None, **_) -> SuiteResult:
    """Cota inferior com chi viaveis sorteados e sonda de convexidade."""
    result = SuiteResult("optimality", margin=math.inf)
    for N in (1, 2):
        amps = psi0_amplitudes(3, N)
        dim = sym_dim(3, N)
        extra = [_offdiag_chi(dim, inject_offdiag)] if inject_offdiag is not None else []
        for cost in ("fidelity", "variance"):
            spec = cost_spec_by_name(cost, 3)
            report = verify_bound(
                spec,
                amps,
                cfg.verify_trials,
                cfg.seed,
                extra_chis=extra,
                slack=cfg.bound_slack,
                psd_tol=cfg.psd_tol,
                hermitian_tol=cfg.hermitian_tol,
                raise_on_violation=False,
            )
            result.margin = min(result.margin, report.min_margin)
            ok = report.violations == 0 and abs(report.optimal_margin) < PLATEAU_TOL
            result.record(ok, d=3, N=N, cost=cost, **report.to_dict())

            # custo e afim em chi
            opt = chi_optimal(dim)
            rand = random_feasible_chi(dim, (cfg.seed, N))
            ends = (avg_cost_fourier(spec, amps, rand), avg_cost_fourier(spec, amps, opt))
            worst = 0.0
            for t in (0.0, 0.25, 0.5, 1.0):
                mixed = avg_cost_fourier(spec, amps, mix_chi(t, opt, rand))
                worst = max(worst, abs(mixed - ((1.0 - t) * ends[0] + t * ends[1])))
            result.record(worst < PLATEAU_TOL, d=3, N=N, cost=cost, check="convexity", deviation=worst)
    return result


def suite_monotonicity(cfg: AppConfig, **_) -> SuiteResult:
    """Relacoes de ordem e identidades das formas fechadas."""
    result = SuiteResult("monotonicity", margin=math.inf)
    for N in range(1, 5):
        values = [avg_fidelity_qudit(d, N) for d in range(2, 7)]
        gap = min(a - b for a, b in zip(values, values[1:]))
        result.margin = min(result.margin, gap)
        result.record(gap > 0, check="dimension", N=N, min_gap=gap)
    for N in range(1, 11):
        gap = avg_fidelity_qudit(2, N) - avg_fidelity_qudit(3, N)
        result.margin = min(result.margin, gap)
        result.record(gap > 0, check="qubit_dominance", N=N, gap=gap)
        identity = abs(avg_variance_qutrit(N) - 3.0 * (1.0 - avg_fidelity_qutrit(N)))
        result.record(identity < CLOSED_FORM_TOL, check="variance_identity", N=N, deviation=identity)
    for d in range(2, 9):
        single = avg_fidelity_single(d)
        gap = single - universal_fidelity_single(d)
        result.margin = min(result.margin, gap)
        result.record(gap > 0, check="universal_baseline", d=d, gap=gap)
        deviation = abs(avg_fidelity_qudit(d, 1) - single)
        result.record(deviation < 1e-13, check="single_copy", d=d, deviation=deviation)
    return result


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "completeness": suite_completeness,
    "normalization": suite_normalization,
    "agreement": suite_agreement,
    "optimality": suite_optimality,
    "monotonicity": suite_monotonicity,
}


def run_suites(
    names: list[str] | None,
    cfg: AppConfig,
    inject_offdiag: float | None = None,
) -> list[SuiteResult]:
    """Roda as suites pedidas (todas por padrao) na ordem canonica."""
    selected = [n for n in SUITE_NAMES if not names or n in names]
    results = []
    for name in selected:
        log.info("Suite %s...", name)
        elapsed, result = timed(SUITES[name], cfg, inject_offdiag=inject_offdiag)
        log.info(
            "Suite %s: %s (margem %.3e, %.1fs)", name, "ok" if result.passed else "FALHOU", result.margin, elapsed
        )
        results.append(result)
    return results
