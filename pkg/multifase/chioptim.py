"""
Certificacao numerica da otimalidade de chi todo-uns dentro das POVMs covariantes.

Em vez de um resolvedor SDP, amostra pontos viaveis (matrizes de Gram de
vetores unitarios) e confere que nenhum fica abaixo do custo minimo.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .analytic import min_cost
from .costs import CostSpec, is_holevo_class
from .errors import (
    DimensionMismatchError,
    InvalidChiError,
    InvalidDimensionError,
    NonHermitianError,
    NotHolevoClassError,
    OptimalityViolationError,
)
from .integrate import avg_cost_fourier
from .povm import pair_differences
from .states import AmplitudeVector
from .symbasis import check_dimensions, sym_dim

log = logging.getLogger(__name__)

PSD_TOL = 1e-10
BOUND_SLACK = 1e-10
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ChiMatrix:
    """Operador semente de uma POVM covariante, na base de ocupacao canonica."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise DimensionMismatchError(f"chi precisa ser quadrada, recebido {entries.shape}.")
        if not np.allclose(entries, entries.conj().T, rtol=0.0, atol=HERMITIAN_TOL):
            raise NonHermitianError("chi nao e hermitiana.")
        # completude da POVM fixa a diagonal em 1
        if not np.allclose(np.diag(entries), 1.0, rtol=0.0, atol=HERMITIAN_TOL):
            raise InvalidChiError("chi precisa ter diagonal unitaria.")
        np.fill_diagonal(entries, 1.0)
        entries = (entries + entries.conj().T) / 2.0
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])


def chi_optimal(dim: int) -> ChiMatrix:
    """Matriz todo-uns: posto 1, PSD, diagonal unitaria."""
    if dim < 1:
        raise InvalidDimensionError(f"dim deve ser >= 1 (recebido {dim}).")
    return ChiMatrix(np.ones((dim, dim), dtype=complex))


def random_feasible_chi(dim: int, seed: int | Sequence[int]) -> ChiMatrix:
    """Gram de `dim` vetores unitarios complexos aleatorios: PSD com diagonal 1."""
    if dim < 1:
        raise InvalidDimensionError(f"dim deve ser >= 1 (recebido {dim}).")
    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
    gram = vectors.conj() @ vectors.T
    gram = (gram + gram.conj().T) / 2.0
    np.fill_diagonal(gram, 1.0)
    return ChiMatrix(gram)


def mix_chi(t: float, a: ChiMatrix, b: ChiMatrix) -> ChiMatrix:
    """t a + (1 - t) b; o conjunto viavel e convexo."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"chi de dimensoes diferentes: {a.dim} != {b.dim}")
    if not 0.0 <= t <= 1.0:
        raise InvalidChiError(f"t fora de [0, 1]: {t}")
    return ChiMatrix(t * a.entries + (1.0 - t) * b.entries)


def sign_rule_chi(spec: CostSpec, d: int, N: int) -> ChiMatrix:
    """
    chi_nm = sign(c_{m-n}), +1 onde o coeficiente e nulo ou ausente.

    Candidato a otimo para qualquer custo par; so e garantidamente PSD na
    classe de Holevo (onde coincide com chi_optimal).
    """
    check_dimensions(d, N, min_copies=1)
    if spec.M != d - 1:
        raise DimensionMismatchError(f"Custo com M={spec.M}, esperado {d - 1}.")
    dim = sym_dim(d, N)
    entries = np.ones((dim, dim), dtype=complex)
    diffs = pair_differences(d, N)
    for l, c in spec.coeffs.items():
        if c < 0:
            entries[np.all(diffs == np.asarray(l), axis=2)] = -1.0
    return ChiMatrix(entries)


def psd_check(chi: ChiMatrix | np.ndarray, tol: float = PSD_TOL, hermitian_tol: float = HERMITIAN_TOL) -> bool:
    """Menor autovalor >= -tol e todo |chi_nm| <= 1 + tol."""
    entries = chi.entries if isinstance(chi, ChiMatrix) else np.asarray(chi, dtype=complex)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise DimensionMismatchError(f"chi precisa ser quadrada, recebido {entries.shape}.")
    if not np.allclose(entries, entries.conj().T, rtol=0.0, atol=hermitian_tol):
        raise NonHermitianError("psd_check recebeu matriz nao hermitiana.")
    smallest = float(np.linalg.eigvalsh(entries)[0])
    largest_entry = float(np.max(np.abs(entries)))
    return smallest >= -tol and largest_entry <= 1.0 + tol


@dataclass
class BoundReport:
    trials: int = 0
    violations: int = 0
    min_margin: float = math.inf
    optimal_margin: float = 0.0
    infeasible: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def verify_bound(
    spec: CostSpec,
    amps: AmplitudeVector,
    trials: int,
    seed: int,
    extra_chis: Iterable[ChiMatrix] = (),
    slack: float = BOUND_SLACK,
    psd_tol: float = PSD_TOL,
    hermitian_tol: float = HERMITIAN_TOL,
    raise_on_violation: bool = True,
) -> BoundReport:
    """
    Para cada chi viavel sorteado, confere avg_cost_fourier(chi) >= min_cost - slack.

    `extra_chis` entra na mesma contagem (gancho para controles negativos);
    candidatos que falham em psd_check contam tambem como violacao.
    """
    if not is_holevo_class(spec):
        raise NotHolevoClassError("verify_bound exige custo da classe de Holevo.")
    if trials < 1:
        raise ValueError(f"trials deve ser >= 1 (recebido {trials}).")
    floor = min_cost(spec, amps)
    dim = amps.amps.size
    report = BoundReport()
    report.optimal_margin = avg_cost_fourier(spec, amps, chi_optimal(dim)) - floor

    candidates = [random_feasible_chi(dim, (seed, i)) for i in range(trials)]
    candidates.extend(extra_chis)
    for chi in candidates:
        report.trials += 1
        margin = avg_cost_fourier(spec, amps, chi) - floor
        report.min_margin = min(report.min_margin, margin)
        feasible = psd_check(chi, psd_tol, hermitian_tol)
        if not feasible:
            report.infeasible += 1
        if margin < -slack or not feasible:
            report.violations += 1
            log.debug("Violacao: margem=%.3e psd=%s", margin, feasible)

    log.info(
        "verify_bound d=%d N=%d: %d tentativas, margem minima %.3e, violacoes %d",
        amps.d,
        amps.N,
        report.trials,
        report.min_margin,
        report.violations,
    )
    if report.violations and raise_on_violation:
        raise OptimalityViolationError(
            f"{report.violations} chi abaixo do custo minimo (margem {report.min_margin:.3e})."
        )
    return report
