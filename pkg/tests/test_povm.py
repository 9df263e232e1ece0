import itertools
import math

import numpy as np
import pytest

from multifase.errors import DimensionMismatchError, GridTooCoarseError
from multifase.povm import (
    completeness_defect,
    conditional_density,
    density_fourier_coefficients,
    density_grid,
    density_normalization_error,
    density_peak,
    e_overlap,
    pair_differences,
    required_points,
)
from multifase.states import TWO_PI, apply_phases, phase_vector, psi0_amplitudes
from multifase.symbasis import occupation_matrix


def test_e_overlap_at_zero_is_amplitude_sum():
    amps = psi0_amplitudes(3, 2)
    assert e_overlap(amps, phase_vector([0, 0])) == pytest.approx(amps.amps.sum().real)


def test_e_overlap_pi_pi():
    value = e_overlap(psi0_amplitudes(3, 1), phase_vector([math.pi, math.pi]))
    assert value == pytest.approx(-1 / math.sqrt(3), abs=1e-15)


def test_e_overlap_triangle_inequality():
    amps = psi0_amplitudes(4, 2)
    rng = np.random.default_rng(2)
    bound = amps.amps.sum().real
    for _ in range(20):
        assert abs(e_overlap(amps, phase_vector(rng.uniform(0, TWO_PI, 3)))) <= bound + 1e-12


def test_density_peak_value():
    amps = psi0_amplitudes(3, 1)
    assert conditional_density(amps, phase_vector([0, 0])) == pytest.approx(3 / (4 * math.pi**2))
    assert density_peak(amps) == pytest.approx(3 / (4 * math.pi**2))


def test_density_is_symmetric():
    amps = psi0_amplitudes(3, 3)
    rng = np.random.default_rng(4)
    for _ in range(20):
        delta = phase_vector(rng.uniform(0, TWO_PI, 2))
        assert conditional_density(amps, delta) == pytest.approx(conditional_density(amps, -delta), abs=1e-12)


def test_density_is_covariant():
    amps = psi0_amplitudes(3, 2)
    exc = occupation_matrix(3, 2)[:, 1:]
    rng = np.random.default_rng(8)
    for _ in range(50):
        phi = phase_vector(rng.uniform(0, TWO_PI, 2))
        estimate = phase_vector(rng.uniform(0, TWO_PI, 2))
        shift = phase_vector(rng.uniform(0, TWO_PI, 2))
        direct = []
        for a, b in ((estimate, phi), (estimate + shift, phi + shift)):
            e_vec = np.exp(1j * (exc @ a.angles))
            direct.append(abs(np.vdot(e_vec, apply_phases(amps, b).amps)) ** 2)
        assert direct[0] == pytest.approx(direct[1], abs=1e-12)
        assert direct[0] == pytest.approx(abs(e_overlap(amps, estimate - phi)) ** 2, abs=1e-12)


def test_fourier_coefficients_examples():
    coeffs = density_fourier_coefficients(psi0_amplitudes(3, 1))
    assert coeffs[(0, 0)] == pytest.approx(1.0)
    assert coeffs[(1, 0)] == pytest.approx(1 / 3)
    assert (2, 0) not in coeffs


def test_fourier_coefficients_are_even_and_bounded():
    coeffs = density_fourier_coefficients(psi0_amplitudes(4, 3))
    for l, g in coeffs.items():
        assert all(abs(x) <= 3 for x in l)
        assert g == pytest.approx(coeffs[tuple(-x for x in l)], abs=1e-15)


def test_fourier_reconstruction():
    amps = psi0_amplitudes(3, 2)
    coeffs = density_fourier_coefficients(amps)
    rng = np.random.default_rng(12)
    for _ in range(20):
        delta = rng.uniform(0, TWO_PI, 2)
        series = sum(g * np.exp(1j * np.dot(l, delta)) for l, g in coeffs.items())
        expected = TWO_PI**2 * conditional_density(amps, phase_vector(delta))
        assert series.real == pytest.approx(expected, abs=1e-12)
        assert abs(series.imag) < 1e-12


def test_completeness_examples():
    assert completeness_defect(2, 1, 8) < 1e-12
    assert completeness_defect(3, 2, 8) < 1e-10
    with pytest.raises(GridTooCoarseError):
        completeness_defect(3, 2, 4)
    with pytest.raises(ValueError):
        completeness_defect(3, 2, 5)


@pytest.mark.parametrize("d, N", list(itertools.product(range(2, 5), range(1, 5))))
def test_completeness_and_normalization(d, N):
    points = required_points(N)
    assert completeness_defect(d, N, points) < 1e-10
    assert density_normalization_error(psi0_amplitudes(d, N), points) < 1e-10


def test_normalization_qutrit_five_copies():
    assert density_normalization_error(psi0_amplitudes(3, 5), 12) < 1e-10


def test_density_grid_row_major():
    amps = psi0_amplitudes(3, 1)
    points, values = density_grid(amps, 8)
    assert points.shape == (64, 2)
    assert values.shape == (64,)
    assert points[0].tolist() == [0.0, 0.0]
    assert points[1].tolist() == pytest.approx([0.0, TWO_PI / 8])
    assert values[0] == pytest.approx(density_peak(amps))
    assert values.sum() * (TWO_PI / 8) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_pair_differences():
    diffs = pair_differences(3, 2)
    assert diffs.shape == (6, 6, 2)
    assert np.all(diffs == -diffs.transpose(1, 0, 2))


def test_conditional_density_mismatch():
    with pytest.raises(DimensionMismatchError):
        conditional_density(psi0_amplitudes(3, 1), phase_vector([0.0]))
