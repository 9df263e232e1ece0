import itertools
import math

import numpy as np
import pytest

from multifase.costs import fidelity_point
from multifase.errors import DimensionMismatchError
from multifase.states import (
    TWO_PI,
    AmplitudeVector,
    apply_phases,
    equatorial_state,
    overlap,
    phase_vector,
    psi0_amplitudes,
)
from multifase.symbasis import enumerate_occupations, index_of


def test_psi0_single_qutrit():
    amps = psi0_amplitudes(3, 1)
    assert np.allclose(amps.amps, 1 / math.sqrt(3), atol=1e-15)


def test_psi0_amplitude_from_multinomial():
    amps = psi0_amplitudes(3, 2)
    assert amps.amps[index_of((0, 1, 1), N=2)].real == pytest.approx(math.sqrt(2) / 3, abs=1e-15)


@pytest.mark.parametrize("d, N", [(2, 1), (2, 7), (3, 4), (4, 3), (5, 2)])
def test_psi0_is_normalized_and_positive(d, N):
    amps = psi0_amplitudes(d, N)
    assert amps.is_normalized()
    assert np.all(amps.amps.real > 0)
    assert np.all(amps.amps.imag == 0)


def test_apply_zero_phases_is_identity():
    amps = psi0_amplitudes(3, 2)
    assert np.allclose(apply_phases(amps, phase_vector([0.0, 0.0])).amps, amps.amps)


def test_apply_pi_phases_single_qutrit():
    out = apply_phases(psi0_amplitudes(3, 1), phase_vector([math.pi, math.pi]))
    assert np.allclose(out.amps, np.array([1, -1, -1]) / math.sqrt(3), atol=1e-15)


def test_apply_phases_preserves_norm():
    rng = np.random.default_rng(7)
    amps = psi0_amplitudes(4, 3)
    for _ in range(10):
        out = apply_phases(amps, phase_vector(rng.uniform(0, TWO_PI, 3)))
        assert out.norm == pytest.approx(1.0, abs=1e-12)


def test_overlap_examples():
    amps = psi0_amplitudes(3, 1)
    assert overlap(amps, amps) == pytest.approx(1.0)
    flipped = apply_phases(amps, phase_vector([math.pi, math.pi]))
    assert overlap(amps, flipped) == pytest.approx(-1 / 3, abs=1e-15)


def test_overlap_matches_fidelity_point():
    rng = np.random.default_rng(11)
    amps = psi0_amplitudes(3, 1)
    for _ in range(20):
        phases = phase_vector(rng.uniform(0, TWO_PI, 2))
        value = abs(overlap(amps, apply_phases(amps, phases))) ** 2
        assert value == pytest.approx(fidelity_point(3, phases), abs=1e-12)


def test_equatorial_state_matches_fidelity_point():
    rng = np.random.default_rng(3)
    for d in (2, 3, 5):
        ref = equatorial_state(d, phase_vector([0.0] * (d - 1)))
        phases = phase_vector(rng.uniform(0, TWO_PI, d - 1))
        value = abs(np.vdot(ref, equatorial_state(d, phases))) ** 2
        assert value == pytest.approx(fidelity_point(d, phases), abs=1e-12)


def test_phase_vector_reduction():
    assert phase_vector([-0.5]).angles[0] == pytest.approx(TWO_PI - 0.5)
    assert phase_vector([TWO_PI]).angles[0] == 0.0
    assert phase_vector(3 * math.pi).angles[0] == pytest.approx(math.pi)
    diff = phase_vector([0.1, 0.2]) - phase_vector([0.3, 0.1])
    assert np.allclose(diff.angles, [TWO_PI - 0.2, 0.1])


def test_mismatches():
    with pytest.raises(DimensionMismatchError):
        phase_vector([0.1]) - phase_vector([0.1, 0.2])
    with pytest.raises(DimensionMismatchError):
        overlap(psi0_amplitudes(3, 1), psi0_amplitudes(3, 2))
    with pytest.raises(DimensionMismatchError):
        apply_phases(psi0_amplitudes(3, 1), phase_vector([0.1]))
    with pytest.raises(DimensionMismatchError):
        AmplitudeVector(3, 2, np.ones(5))
    with pytest.raises(ValueError):
        phase_vector([])


def test_psi0_invariant_under_slot_permutations():
    d, N = 4, 3
    amps = psi0_amplitudes(d, N)
    for occ in enumerate_occupations(d, N):
        reference = amps.amps[index_of(occ)]
        for perm in itertools.permutations(occ.counts):
            assert amps.amps[index_of(perm, N=N)] == pytest.approx(reference, abs=1e-15)
