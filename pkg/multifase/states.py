"""
Amplitudes do estado inicial |psi_0> e das suas imagens com fase, sempre no
subespaco simetrico (nunca no espaco produto de dimensao d^N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, InvalidDimensionError
from .symbasis import check_dimensions, enumerate_occupations, multinomial, occupation_matrix, sym_dim

TWO_PI = 2.0 * math.pi
NORM_TOL = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """M angulos reduzidos a [0, 2pi): fases verdadeiras, estimativas ou diferencas."""

    angles: np.ndarray

    def __post_init__(self) -> None:
        raw = np.asarray(self.angles, dtype=float).reshape(-1)
        if raw.size == 0:
            raise InvalidDimensionError("PhaseVector precisa de pelo menos uma fase.")
        if not np.all(np.isfinite(raw)):
            raise InvalidDimensionError(f"Fases nao finitas: {raw}")
        reduced = np.mod(raw, TWO_PI)
        # np.mod de um negativo minusculo pode devolver exatamente 2pi
        reduced[reduced >= TWO_PI] = 0.0
        object.__setattr__(self, "angles", _frozen(reduced))

    @property
    def M(self) -> int:
        return int(self.angles.size)

    def __neg__(self) -> "PhaseVector":
        return PhaseVector(-self.angles)

    def __add__(self, other: "PhaseVector") -> "PhaseVector":
        _same_phase_count(self, other)
        return PhaseVector(self.angles + other.angles)

    def __sub__(self, other: "PhaseVector") -> "PhaseVector":
        _same_phase_count(self, other)
        return PhaseVector(self.angles - other.angles)


def _same_phase_count(a: PhaseVector, b: PhaseVector) -> None:
    if a.M != b.M:
        raise DimensionMismatchError(f"Numero de fases diferente: {a.M} != {b.M}")


def phase_vector(angles: Sequence[float] | float) -> PhaseVector:
    """Atalho para PhaseVector a partir de uma lista (ou escalar)."""
    return PhaseVector(np.atleast_1d(np.asarray(angles, dtype=float)))


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    """Amplitudes complexas na base de ocupacao canonica."""

    d: int
    N: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        check_dimensions(self.d, self.N)
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        expected = sym_dim(self.d, self.N)
        if amps.size != expected:
            raise DimensionMismatchError(
                f"Esperadas {expected} amplitudes para (d={self.d}, N={self.N}), recebidas {amps.size}."
            )
        object.__setattr__(self, "amps", _frozen(amps))

    @property
    def M(self) -> int:
        return self.d - 1

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amps, self.amps).real))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm**2 - 1.0) <= tol

    def check_phases(self, phases: PhaseVector) -> None:
        if phases.M != self.M:
            raise DimensionMismatchError(f"Esperadas {self.M} fases para d={self.d}, recebidas {phases.M}.")


def psi0_amplitudes(d: int, N: int) -> AmplitudeVector:
    """
    |psi_0> = d^{-N/2} sum sqrt(multinomial) |n>: N copias do estado equatorial sem fase.

    Todas as amplitudes sao reais e estritamente positivas.
    """
    check_dimensions(d, N, min_copies=1)
    total = d**N
    amps = [math.sqrt(multinomial(occ) / total) for occ in enumerate_occupations(d, N)]
    return AmplitudeVector(d, N, np.asarray(amps, dtype=complex))


def apply_phases(amps: AmplitudeVector, phases: PhaseVector) -> AmplitudeVector:
    """Multiplica a amplitude de cada |n> por exp(i sum_j n_j phi_j)."""
    amps.check_phases(phases)
    excitations = occupation_matrix(amps.d, amps.N)[:, 1:]
    factors = np.exp(1j * (excitations @ phases.angles))
    return AmplitudeVector(amps.d, amps.N, amps.amps * factors)


def overlap(a: AmplitudeVector, b: AmplitudeVector) -> complex:
    """<a|b> = sum conj(a) b."""
    if (a.d, a.N) != (b.d, b.N):
        raise DimensionMismatchError(f"Vetores de bases diferentes: (d={a.d}, N={a.N}) vs (d={b.d}, N={b.N}).")
    return complex(np.vdot(a.amps, b.amps))


def equatorial_state(d: int, phases: PhaseVector) -> np.ndarray:
    """Qudit equatorial (1/sqrt d)(|0> + e^{i phi_1}|1> + ...)."""
    check_dimensions(d, 1)
    if phases.M != d - 1:
        raise DimensionMismatchError(f"Esperadas {d - 1} fases para d={d}, recebidas {phases.M}.")
    return np.concatenate(([1.0 + 0j], np.exp(1j * phases.angles))) / math.sqrt(d)
