"""
Base de numeros de ocupacao do subespaco simetrico de N sistemas de d niveis.

A ordem e lexicografica crescente em (n_1, ..., n_{d-1}), com
n_0 = N - sum(n_j). Essa ordem indexa todas as amplitudes e as matrizes chi,
entao nao deve mudar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidDimensionError, MultinomialOverflowError, OccupationNotFoundError

# Amplitudes passam por arrays numpy; acima disso o inteiro nao cabe em int64.
MULTINOMIAL_LIMIT = 2**63 - 1


def check_dimensions(d: int, N: int, min_copies: int = 0) -> None:
    """Valida (d, N); levanta InvalidDimensionError."""
    if int(d) != d or int(N) != N:
        raise InvalidDimensionError(f"d e N devem ser inteiros (d={d}, N={N}).")
    if d < 2:
        raise InvalidDimensionError(f"d deve ser >= 2 (recebido {d}).")
    if N < min_copies:
        raise InvalidDimensionError(f"N deve ser >= {min_copies} (recebido {N}).")


@dataclass(frozen=True)
class OccupationVector:
    """Quantos dos N sistemas estao em cada nivel: (n_0, ..., n_{d-1})."""

    d: int
    N: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        check_dimensions(self.d, self.N)
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) != self.d:
            raise InvalidDimensionError(f"Esperados {self.d} numeros de ocupacao, recebidos {len(counts)}.")
        if any(c < 0 for c in counts):
            raise InvalidDimensionError(f"Ocupacoes negativas: {counts}")
        if sum(counts) != self.N:
            raise OccupationNotFoundError(f"Ocupacoes {counts} nao somam N={self.N}.")


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # lexicografico crescente; cada parte limitada pelo que sobra
    if parts == 0:
        yield ()
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head, *tail)


@lru_cache(maxsize=None)
def _enumerate_cached(d: int, N: int) -> tuple[OccupationVector, ...]:
    out = []
    for excitations in _compositions(N, d - 1):
        n0 = N - sum(excitations)
        out.append(OccupationVector(d, N, (n0, *excitations)))
    return tuple(out)


def enumerate_occupations(d: int, N: int) -> list[OccupationVector]:
    """
    Lista todas as composicoes de N em d partes nao negativas.

    Ordem: lexicografica crescente em (n_1, ..., n_{d-1}); n_0 e o complemento.
    """
    check_dimensions(d, N)
    return list(_enumerate_cached(int(d), int(N)))


def multinomial(occ: OccupationVector) -> int:
    """N! / (n_0! ... n_{d-1}!) em aritmetica inteira exata."""
    value = 1
    remaining = occ.N
    for count in occ.counts:
        value *= math.comb(remaining, count)
        remaining -= count
    if value > MULTINOMIAL_LIMIT:
        raise MultinomialOverflowError(f"Multinomial de {occ.counts} excede 2^63-1.")
    return value


def sym_dim(d: int, N: int) -> int:
    """Dimensao do subespaco simetrico: C(N+d-1, d-1)."""
    check_dimensions(d, N)
    return math.comb(N + d - 1, d - 1)


@lru_cache(maxsize=None)
def _index_map(d: int, N: int) -> dict[tuple[int, ...], int]:
    return {occ.counts: i for i, occ in enumerate(_enumerate_cached(d, N))}


def index_of(occ: OccupationVector | Sequence[int], N: int | None = None) -> int:
    """
    Posicao de `occ` em enumerate_occupations(d, N).

    Aceita um OccupationVector ou uma sequencia crua de contagens (nesse caso N
    e obrigatorio e a soma e conferida).
    """
    if isinstance(occ, OccupationVector):
        d, total, counts = occ.d, occ.N, occ.counts
    else:
        counts = tuple(int(c) for c in occ)
        d = len(counts)
        if N is None:
            raise OccupationNotFoundError("N obrigatorio quando occ nao e OccupationVector.")
        total = int(N)
        check_dimensions(d, total)
        if sum(counts) != total or any(c < 0 for c in counts):
            raise OccupationNotFoundError(f"Ocupacoes {counts} fora da base (d={d}, N={total}).")
    try:
        return _index_map(d, total)[counts]
    except KeyError:  # pragma: no cover - OccupationVector ja valida
        raise OccupationNotFoundError(f"Ocupacoes {counts} fora da base (d={d}, N={total}).") from None


@lru_cache(maxsize=None)
def _occupation_matrix_cached(d: int, N: int) -> np.ndarray:
    mat = np.array([occ.counts for occ in _enumerate_cached(d, N)], dtype=np.int64).reshape(-1, d)
    mat.setflags(write=False)
    return mat


def occupation_matrix(d: int, N: int) -> np.ndarray:
    """Matriz (sym_dim x d) com a enumeracao, somente leitura."""
    check_dimensions(d, N)
    return _occupation_matrix_cached(int(d), int(N))
