"""
POVM covariante otimo, so no bloco H_par.

Os vetores |e(phi)> = sum_n exp(i n.phi)|n> nunca sao materializados como
continuo: a POVM e representada pela densidade de saida (avaliavel em qualquer
delta) e pelos seus coeficientes de Fourier, que tem suporte |l_j| <= N.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from .errors import GridTooCoarseError
from .states import TWO_PI, AmplitudeVector, PhaseVector
from .symbasis import check_dimensions, occupation_matrix, sym_dim

log = logging.getLogger(__name__)

Lattice = tuple[int, ...]

# pontos avaliados por vez nas grades (limita memoria em M grande)
GRID_CHUNK = 65_536


def _excitations(d: int, N: int) -> np.ndarray:
    return occupation_matrix(d, N)[:, 1:]


def e_overlaps(amps: AmplitudeVector, deltas: np.ndarray) -> np.ndarray:
    """<e(phi_bar)|psi(phi)> para um array (K, M) de diferencas."""
    phases = np.exp(-1j * (deltas @ _excitations(amps.d, amps.N).T))
    return phases @ amps.amps


def e_overlap(amps: AmplitudeVector, deltas: PhaseVector) -> complex:
    """sum_n A_n exp(-i n.delta), delta = phi_bar - phi (so depende da diferenca)."""
    amps.check_phases(deltas)
    return complex(e_overlaps(amps, deltas.angles[None, :])[0])


def density_values(amps: AmplitudeVector, deltas: np.ndarray) -> np.ndarray:
    """Densidade condicional vetorizada em um array (K, M)."""
    values = np.abs(e_overlaps(amps, np.atleast_2d(deltas))) ** 2
    return values / TWO_PI**amps.M


def conditional_density(amps: AmplitudeVector, deltas: PhaseVector) -> float:
    """p(delta) = |<e(delta)|psi_0>|^2 / (2pi)^M."""
    amps.check_phases(deltas)
    return float(density_values(amps, deltas.angles[None, :])[0])


def density_peak(amps: AmplitudeVector) -> float:
    """Maximo da densidade, em delta = 0 quando as amplitudes sao positivas."""
    return float(np.abs(amps.amps).sum() ** 2) / TWO_PI**amps.M


def pair_differences(d: int, N: int) -> np.ndarray:
    """Array (D, D, M) com [n, m] = excitacoes(m) - excitacoes(n)."""
    exc = _excitations(d, N)
    return exc[None, :, :] - exc[:, None, :]


def density_fourier_coefficients(amps: AmplitudeVector) -> dict[Lattice, float]:
    """
    G_l = sum_{m - n = l} A_n A_m para todo l com pelo menos um par.

    Vetores sem nenhum par ficam de fora (G_l = 0). G_0 = 1 e G_l = G_{-l}.
    """
    weights = np.outer(np.conj(amps.amps), amps.amps)
    diffs = pair_differences(amps.d, amps.N).reshape(-1, amps.M)
    flat = weights.reshape(-1)
    acc: dict[Lattice, list[complex]] = {}
    for l, w in zip(map(tuple, diffs.tolist()), flat):
        acc.setdefault(l, []).append(w)
    coeffs = {}
    for l, terms in sorted(acc.items()):
        total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
        coeffs[l] = total.real
    return coeffs


def required_points(N: int) -> int:
    """Menor grade por eixo aceita pelas checagens de completude."""
    return 2 * N + 2


def _check_grid(N: int, points_per_axis: int) -> None:
    if points_per_axis < required_points(N):
        raise GridTooCoarseError(
            f"Grade com {points_per_axis} pontos por eixo; minimo {required_points(N)} para N={N}."
        )


def iter_torus_grid(M: int, points_per_axis: int, chunk: int = GRID_CHUNK):
    """Gera blocos (K, M) da grade uniforme em [0, 2pi)^M, ordem row-major."""
    total = points_per_axis**M
    step = TWO_PI / points_per_axis
    shape = (points_per_axis,) * M
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total))
        idx = np.stack(np.unravel_index(flat, shape), axis=1)
        yield idx * step


def completeness_defect(d: int, N: int, points_per_axis: int) -> float:
    """
    Desvio (norma do maximo) entre a media na grade de |e><e| e a identidade em H_par.

    A media e exata para a grade uniforme quando ela resolve todas as frequencias.
    """
    check_dimensions(d, N, min_copies=1)
    _check_grid(N, points_per_axis)
    M = d - 1
    exc = _excitations(d, N)
    dim = sym_dim(d, N)
    acc = np.zeros((dim, dim), dtype=complex)
    for grid in iter_torus_grid(M, points_per_axis):
        vectors = np.exp(1j * (grid @ exc.T))
        acc += vectors.T @ np.conj(vectors)
    acc /= points_per_axis**M
    defect = float(np.max(np.abs(acc - np.eye(dim))))
    log.debug("completude d=%d N=%d grade=%d: defeito=%.3e", d, N, points_per_axis, defect)
    return defect


def density_normalization_error(amps: AmplitudeVector, points_per_axis: int) -> float:
    """|integral da densidade no toro - 1| pela regra do retangulo (exata aqui)."""
    _check_grid(amps.N, points_per_axis)
    total = 0.0
    for grid in iter_torus_grid(amps.M, points_per_axis):
        total += math.fsum(density_values(amps, grid))
    integral = total * (TWO_PI / points_per_axis) ** amps.M
    return abs(integral - 1.0)


def density_grid(amps: AmplitudeVector, points_per_axis: int) -> tuple[np.ndarray, np.ndarray]:
    """(pontos (K, M), densidade (K,)) na grade uniforme, ordem row-major."""
    points = np.concatenate(list(iter_torus_grid(amps.M, points_per_axis)), axis=0)
    return points, density_values(amps, points)
