"""
Tres caminhos numericos independentes para o custo medio:

- soma de Fourier (finita) para qualquer chi;
- quadratura na grade uniforme do toro (exata para polinomios trigonometricos);
- Monte Carlo do experimento completo, com amostragem por rejeicao.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, Callable

import numpy as np

from .costs import CostSpec
from .errors import DimensionMismatchError, GridBudgetError, GridTooCoarseError
from .povm import density_peak, density_values, iter_torus_grid, pair_differences
from .states import TWO_PI, AmplitudeVector, PhaseVector
from .symbasis import occupation_matrix

if TYPE_CHECKING:  # pragma: no cover
    from .chioptim import ChiMatrix

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000
DEFAULT_BLOCK_SIZE = 8192
MIN_SAMPLES = 1000
IMAG_TOL = 1e-12
MAX_BATCH = 1 << 20

PointwiseCost = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class McReport:
    """Resultado de um Monte Carlo: media +- erro padrao."""

    mean: float
    stderr: float
    samples: int
    acceptance_rate: float
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def _check_chi(amps: AmplitudeVector, chi: "ChiMatrix") -> np.ndarray:
    entries = np.asarray(chi.entries)
    if entries.shape != (amps.amps.size, amps.amps.size):
        raise DimensionMismatchError(
            f"chi {entries.shape} incompativel com sym_dim={amps.amps.size} (d={amps.d}, N={amps.N})."
        )
    return entries


def _check_spec(spec: CostSpec, amps: AmplitudeVector) -> None:
    if spec.M != amps.M:
        raise DimensionMismatchError(f"Custo com M={spec.M}, estado com M={amps.M}.")


def avg_cost_fourier(spec: CostSpec, amps: AmplitudeVector, chi: "ChiMatrix") -> float:
    """
    C_bar = -c0 - sum_{l != 0} c_l sum_{m - n = l} A_n A_m chi_nm.

    Hermiticidade de chi e paridade de c tornam o resultado real; o residuo
    imaginario e descartado.
    """
    _check_spec(spec, amps)
    entries = _check_chi(amps, chi)
    weights = np.outer(np.conj(amps.amps), amps.amps) * entries
    diffs = pair_differences(amps.d, amps.N)
    total = 0j
    for l, c in spec.coeffs.items():
        mask = np.all(diffs == np.asarray(l), axis=2)
        if mask.any():
            total += c * weights[mask].sum()
    if abs(total.imag) > IMAG_TOL:
        log.warning("Residuo imaginario %.3e descartado na soma de Fourier.", total.imag)
    return -spec.c0 - total.real


def quadrature_points(spec: CostSpec, N: int) -> int:
    """Menor grade por eixo aceita: max(2N + 3, N + grau do custo + 1)."""
    return max(2 * N + 3, N + spec.max_degree + 1)


def avg_cost_quadrature(
    spec: CostSpec,
    amps: AmplitudeVector,
    chi: "ChiMatrix",
    points_per_axis: int,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """
    Media na grade uniforme de [0, 2pi)^M de C(phi) p_chi(phi).

    p_chi(phi) = sum_{n,m} A_n A_m chi_nm exp(i (m - n).phi). A regra do
    retangulo no toro integra exatamente o polinomio trigonometrico.
    """
    _check_spec(spec, amps)
    entries = _check_chi(amps, chi)
    minimum = quadrature_points(spec, amps.N)
    if points_per_axis < minimum:
        raise GridTooCoarseError(f"Grade com {points_per_axis} pontos por eixo; minimo {minimum}.")
    total_points = points_per_axis**amps.M
    if total_points > budget:
        log.warning(
            "Quadratura com %d pontos (M=%d) excede o orcamento %d; use a soma de Fourier ou aumente --budget.",
            total_points,
            amps.M,
            budget,
        )
        raise GridBudgetError(f"{total_points} pontos > orcamento {budget}.")

    excitations = occupation_matrix(amps.d, amps.N)[:, 1:]
    partial = []
    for grid in iter_torus_grid(amps.M, points_per_axis):
        vectors = amps.amps[None, :] * np.exp(1j * (grid @ excitations.T))
        p_chi = np.sum(np.conj(vectors) * (vectors @ entries.T), axis=1).real
        partial.append(math.fsum(spec.evaluate(grid) * p_chi))
    return math.fsum(partial) / total_points


def _draw_deltas(amps: AmplitudeVector, rng: np.random.Generator, count: int) -> tuple[np.ndarray, int]:
    """
    Amostra `count` diferencas delta da densidade condicional por rejeicao.

    Proposta uniforme em [0, 2pi)^M, envelope no pico da densidade. Retorna
    (deltas (count, M), propostas consumidas).
    """
    peak = density_peak(amps)
    # propostas esperadas por aceite: pico / densidade media
    per_hit = peak * TWO_PI**amps.M
    accepted: list[np.ndarray] = []
    have = 0
    proposals = 0
    while have < count:
        need = count - have
        batch = int(min(MAX_BATCH, max(256, math.ceil(need * per_hit * 1.1))))
        candidates = rng.random((batch, amps.M)) * TWO_PI
        u = rng.random(batch)
        values = density_values(amps, candidates)
        keep = u * peak < values
        hits = int(keep.sum())
        if hits >= need:
            last = int(np.flatnonzero(keep)[need - 1])
            accepted.append(candidates[: last + 1][keep[: last + 1]])
            proposals += last + 1
            have = count
        else:
            accepted.append(candidates[keep])
            proposals += batch
            have += hits
    return np.concatenate(accepted, axis=0), proposals


def sample_estimate(amps: AmplitudeVector, rng_state: np.random.Generator) -> PhaseVector:
    """Um resultado da POVM otima: delta = phi_bar - phi, sem vies de discretizacao."""
    deltas, _ = _draw_deltas(amps, rng_state, 1)
    return PhaseVector(deltas[0])


def block_generator(seed: int, block: int) -> np.random.Generator:
    """Gerador Philox com chave `seed` e contador deslocado pelo indice do bloco."""
    return np.random.Generator(np.random.Philox(key=seed, counter=block << 192))


def mc_average_cost(
    cost: CostSpec | PointwiseCost,
    amps: AmplitudeVector,
    samples: int,
    seed: int,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> McReport:
    """
    Monte Carlo do custo medio com amostras i.i.d. de sample_estimate.

    Saida depende so de (seed, samples, block_size): cada bloco tem seu proprio
    fluxo Philox e os blocos sao reduzidos sempre na mesma ordem.
    """
    if samples < MIN_SAMPLES:
        raise ValueError(f"samples deve ser >= {MIN_SAMPLES} (recebido {samples}).")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed deve caber em 64 bits sem sinal (recebido {seed}).")
    if isinstance(cost, CostSpec):
        _check_spec(cost, amps)
        evaluate: PointwiseCost = cost.evaluate
    else:
        evaluate = cost

    sizes = [min(block_size, samples - start) for start in range(0, samples, block_size)]

    def run_block(block: int) -> tuple[np.ndarray, int]:
        deltas, proposals = _draw_deltas(amps, block_generator(seed, block), sizes[block])
        return np.asarray(evaluate(deltas), dtype=float), proposals

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_block, range(len(sizes))))
    else:
        results = [run_block(b) for b in range(len(sizes))]

    values = np.concatenate([r[0] for r in results])
    proposals = sum(r[1] for r in results)
    mean = math.fsum(values) / samples
    variance = math.fsum((values - mean) ** 2) / (samples - 1)
    report = McReport(
        mean=mean,
        stderr=math.sqrt(variance / samples),
        samples=samples,
        acceptance_rate=samples / proposals,
        seed=seed,
    )
    log.debug("Monte Carlo: %s", report)
    return report
