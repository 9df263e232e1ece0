"""
Funcoes de custo periodicas: avaliacao pontual e representacao de Fourier.

Convencao: C(phi) = -c0 - sum_l c_l exp(i l.phi), com c_l = c_{-l}. A soma de
Fourier e a que entra em todos os custos medios (vira soma finita).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import DimensionMismatchError, InvalidCostError, InvalidDimensionError
from .states import PhaseVector
from .symbasis import check_dimensions

Lattice = tuple[int, ...]


@dataclass(frozen=True)
class CostSpec:
    """Custo par e 2pi-periodico com suporte de Fourier finito."""

    M: int
    c0: float
    coeffs: Mapping[Lattice, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.M < 1:
            raise InvalidDimensionError(f"CostSpec precisa de M >= 1 (recebido {self.M}).")
        normalized: dict[Lattice, float] = {}
        for l, c in self.coeffs.items():
            key = tuple(int(x) for x in l)
            if len(key) != self.M:
                raise DimensionMismatchError(f"Vetor {key} nao tem {self.M} componentes.")
            if not any(key):
                raise InvalidCostError("O termo l=0 vai em c0, nao em coeffs.")
            normalized[key] = float(c)
        for key, c in normalized.items():
            mirror = tuple(-x for x in key)
            if mirror not in normalized or normalized[mirror] != c:
                raise InvalidCostError(f"Custo nao e par: c{key}={c} sem c{mirror} igual.")
        object.__setattr__(self, "coeffs", dict(sorted(normalized.items())))

    @property
    def max_degree(self) -> int:
        """Maior |l_j| presente (0 para custo constante)."""
        return max((max(abs(x) for x in l) for l in self.coeffs), default=0)

    def evaluate(self, phases: PhaseVector | np.ndarray) -> float | np.ndarray:
        """
        Avalia o custo em um PhaseVector (escalar) ou em um array (K, M) de angulos.
        """
        scalar = isinstance(phases, PhaseVector)
        angles = phases.angles if scalar else np.asarray(phases, dtype=float)
        grid = np.atleast_2d(angles)
        if grid.shape[-1] != self.M:
            raise DimensionMismatchError(f"Esperadas {self.M} fases, recebidas {grid.shape[-1]}.")
        if not self.coeffs:
            values = np.full(grid.shape[0], -self.c0)
        else:
            lattice = np.array(list(self.coeffs.keys()), dtype=float)
            weights = np.array(list(self.coeffs.values()), dtype=float)
            # pares (l, -l) somam 2 c_l cos(l.phi): parte imaginaria cancela
            values = -self.c0 - np.cos(grid @ lattice.T) @ weights
        return float(values[0]) if scalar else values


def fidelity_point(d: int, phases: PhaseVector) -> float:
    """F = (1/d^2)[d + 2 sum_j cos phi_j + 2 sum_{j>k} cos(phi_j - phi_k)]."""
    check_dimensions(d, 1)
    if phases.M != d - 1:
        raise DimensionMismatchError(f"Esperadas {d - 1} fases para d={d}, recebidas {phases.M}.")
    phi = phases.angles
    total = d + 2.0 * np.cos(phi).sum()
    for j, k in itertools.combinations(range(phi.size), 2):
        total += 2.0 * math.cos(phi[j] - phi[k])
    return float(total) / d**2


def variance_point(phases: PhaseVector) -> float:
    """Variancia periodica sum_j 2 sin^2(phi_j/2) = M - sum_j cos phi_j."""
    return float(np.sum(2.0 * np.sin(phases.angles / 2.0) ** 2))


def _unit(M: int, j: int, sign: int = 1) -> Lattice:
    vec = [0] * M
    vec[j] = sign
    return tuple(vec)


def fidelity_cost_spec(d: int) -> CostSpec:
    """Fourier de 1 - F: c0 = -(1 - 1/d), c_l = 1/d^2 em +-e_j e +-(e_j - e_k)."""
    check_dimensions(d, 1)
    M = d - 1
    weight = 1.0 / d**2
    coeffs: dict[Lattice, float] = {}
    for j in range(M):
        coeffs[_unit(M, j)] = weight
        coeffs[_unit(M, j, -1)] = weight
    for j, k in itertools.combinations(range(M), 2):
        diff = [0] * M
        diff[j], diff[k] = 1, -1
        coeffs[tuple(diff)] = weight
        coeffs[tuple(-x for x in diff)] = weight
    return CostSpec(M=M, c0=-(1.0 - 1.0 / d), coeffs=coeffs)


def variance_cost_spec(M: int) -> CostSpec:
    """Fourier de M - sum cos phi_j: c0 = -M, c_{+-e_j} = 1/2."""
    if M < 1:
        raise InvalidDimensionError(f"M deve ser >= 1 (recebido {M}).")
    coeffs: dict[Lattice, float] = {}
    for j in range(M):
        coeffs[_unit(M, j)] = 0.5
        coeffs[_unit(M, j, -1)] = 0.5
    return CostSpec(M=M, c0=-float(M), coeffs=coeffs)


def is_holevo_class(spec: CostSpec) -> bool:
    """Classe de Holevo generalizada: todo c_l (l != 0) e >= 0."""
    return all(c >= 0.0 for c in spec.coeffs.values())


COST_NAMES = ("fidelity", "variance")


def cost_spec_by_name(name: str, d: int) -> CostSpec:
    """Custos embutidos pelo nome usado na CLI."""
    if name == "fidelity":
        return fidelity_cost_spec(d)
    if name == "variance":
        check_dimensions(d, 1)
        return variance_cost_spec(d - 1)
    raise InvalidCostError(f"Custo desconhecido: {name} (opcoes: {', '.join(COST_NAMES)})")
