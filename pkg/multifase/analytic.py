"""
Formas fechadas: fidelidade e variancia medias otimas, valores de uma copia,
referencia de estimacao universal e custo minimo geral pela soma de Fourier.

Para N = 1 a fidelidade otima coincide com a fidelidade da clonagem otima
1 -> infinito de qudits equatoriais; nada de clonagem e implementado aqui.
"""

from __future__ import annotations

import math

from .costs import CostSpec, is_holevo_class
from .errors import DimensionMismatchError, MultinomialOverflowError, NotHolevoClassError
from .povm import density_fourier_coefficients
from .states import AmplitudeVector
from .symbasis import MULTINOMIAL_LIMIT, check_dimensions, enumerate_occupations, multinomial


def occupation_sum(d: int, N: int) -> float:
    """
    S = sum sobre ocupacoes com n_0 >= 1 de multinomial * sqrt(n_0 / (n_1 + 1)).

    Soma compartilhada pelas formas fechadas de fidelidade e variancia.
    """
    check_dimensions(d, N, min_copies=1)
    terms = []
    for occ in enumerate_occupations(d, N):
        n0, n1 = occ.counts[0], occ.counts[1]
        if n0 < 1:
            continue
        terms.append(multinomial(occ) * math.sqrt(n0 / (n1 + 1)))
    return math.fsum(terms)


def avg_fidelity_qudit(d: int, N: int) -> float:
    """F_bar = 1/d + (d-1)/d^{N+1} * S."""
    check_dimensions(d, N, min_copies=1)
    return 1.0 / d + (d - 1) * occupation_sum(d, N) / d ** (N + 1)


def _qutrit_sum(N: int) -> float:
    # implementacao independente: dupla soma em (j, k) = (n_1, n_2) com fatoriais
    terms = []
    for j in range(N):
        for k in range(N - j):
            weight = math.factorial(N) // (math.factorial(N - j - k) * math.factorial(j) * math.factorial(k))
            if weight > MULTINOMIAL_LIMIT:
                raise MultinomialOverflowError(f"Multinomial de ({N - j - k}, {j}, {k}) excede 2^63-1.")
            terms.append(weight * math.sqrt((N - j - k) / (j + 1)))
    return math.fsum(terms)


def avg_fidelity_qutrit(N: int) -> float:
    """1/3 + (2/3^{N+1}) sum_{j,k} M(N,j,k) sqrt((N-j-k)/(j+1))."""
    check_dimensions(3, N, min_copies=1)
    return 1.0 / 3.0 + 2.0 * _qutrit_sum(N) / 3 ** (N + 1)


def avg_fidelity_single(d: int) -> float:
    """Uma copia: (2d - 1)/d^2."""
    check_dimensions(d, 1)
    return (2 * d - 1) / d**2


def universal_fidelity_single(d: int) -> float:
    """Estimacao de um qudit puro totalmente desconhecido: 2/(d + 2)."""
    check_dimensions(d, 1)
    return 2.0 / (d + 2)


def avg_variance_qutrit(N: int) -> float:
    """2 - (2/3^N) sum_{j,k} M(N,j,k) sqrt((N-j-k)/(j+1))."""
    check_dimensions(3, N, min_copies=1)
    return 2.0 - 2.0 * _qutrit_sum(N) / 3**N


def avg_variance_qudit(d: int, N: int) -> float:
    """Variancia periodica otima para qualquer d: (d-1)(1 - S/d^N)."""
    check_dimensions(d, N, min_copies=1)
    return (d - 1) * (1.0 - occupation_sum(d, N) / d**N)


def min_cost(spec: CostSpec, amps: AmplitudeVector) -> float:
    """
    Custo medio otimo: -c0 - sum_{l != 0} c_l G_l, com chi todo-uns.

    So vale na classe de Holevo; fora dela as condicoes de sinal podem
    conflitar com positividade.
    """
    if not is_holevo_class(spec):
        raise NotHolevoClassError("Custo fora da classe de Holevo: algum c_l < 0.")
    if spec.M != amps.M:
        raise DimensionMismatchError(f"Custo com M={spec.M}, estado com M={amps.M}.")
    pairing = density_fourier_coefficients(amps)
    return -spec.c0 - math.fsum(c * pairing.get(l, 0.0) for l, c in spec.coeffs.items())
