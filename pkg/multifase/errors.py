"""
Excecoes do pacote.

Cada classe herda tambem do builtin equivalente, entao `except ValueError`
continua funcionando para quem nao conhece a hierarquia.
"""

from __future__ import annotations


class MultifaseError(Exception):
    """Raiz de todos os erros do pacote."""


class InvalidDimensionError(MultifaseError, ValueError):
    """d < 2, N < 0 ou N abaixo do minimo exigido pela operacao."""


class DimensionMismatchError(MultifaseError, ValueError):
    """Objetos com (d, N) ou numero de fases incompativeis."""


class OccupationNotFoundError(MultifaseError, LookupError):
    """Vetor de ocupacao fora da base simetrica pedida."""


class GridTooCoarseError(MultifaseError, ValueError):
    """Grade uniforme pequena demais para integrar o polinomio trigonometrico sem aliasing."""


class GridBudgetError(MultifaseError, ValueError):
    """Grade de quadratura acima do orcamento de pontos."""


class NotHolevoClassError(MultifaseError, ValueError):
    """Custo com algum coeficiente de Fourier negativo."""


class NonHermitianError(MultifaseError, ValueError):
    """Matriz que deveria ser hermitiana nao e."""


class OptimalityViolationError(MultifaseError, RuntimeError):
    """Algum chi viavel ficou abaixo do custo minimo: bug de implementacao."""


class MultinomialOverflowError(MultifaseError, OverflowError):
    """Multinomial acima de 2^63-1: N grande demais para a base simetrica."""


class InvalidChiError(MultifaseError, ValueError):
    """chi com diagonal diferente de 1."""


class InvalidCostError(MultifaseError, ValueError):
    """CostSpec mal formado: termo l=0 em coeffs, custo nao par ou nome desconhecido."""
