import itertools

import numpy as np
import pytest
from scipy.linalg import expm

from virtualspin import (DIM, ForbiddenTransitionError, InputError,
                         OverlappingTonesError, PulseParams, Tone,
                         multi_tone_propagator, projector, pulse_duration,
                         pulse_propagator)


def test_projector_algebra_exhaustive():
    mats = [[projector(a, b).matrix for b in range(DIM)] for a in range(DIM)]
    for k, l, m, n in itertools.product(range(DIM), repeat=4):
        product = mats[k][l] @ mats[m][n]
        expected = mats[k][n] if l == m else np.zeros((DIM, DIM))
        assert np.array_equal(product, expected)


def test_projector_adjoint_and_completeness():
    for a, b in itertools.product(range(DIM), repeat=2):
        assert np.array_equal(projector(a, b).matrix.conj().T, projector(b, a).matrix)
    total = sum(projector(a, a).matrix for a in range(DIM))
    assert np.array_equal(total, np.eye(DIM))
    # spelled-out cases
    assert np.array_equal(projector(6, 7).matrix @ projector(7, 6).matrix,
                          projector(6, 6).matrix)
    assert np.abs(projector(0, 1).matrix @ projector(2, 3).matrix).max() == 0


def test_projector_index_range():
    with pytest.raises(InputError):
        projector(-1, 0)
    with pytest.raises(InputError):
        projector(0, 8)


def test_zero_angle_is_identity():
    v = pulse_propagator(Tone(upper=3, lower=5, angle=0.0))
    assert np.abs(v - np.eye(DIM)).max() == 0


def test_pi_pulse_on_67():
    v = pulse_propagator(Tone(upper=6, lower=7, angle=np.pi, phase=0.0, axis="X"))
    expected = np.diag([1, 1, 1, 1, 1, 1, 0, 0]).astype(complex)
    expected[6, 7] = expected[7, 6] = 1j
    assert np.abs(v - expected).max() < 1e-15


def test_y_axis_shifts_phase_by_half_pi():
    v = pulse_propagator(Tone(upper=6, lower=7, angle=np.pi, phase=0.0, axis="Y"))
    assert abs(v[6, 7] - (-1)) < 1e-15
    assert abs(v[7, 6] - 1) < 1e-15
    vx = pulse_propagator(Tone(upper=6, lower=7, angle=np.pi, phase=np.pi / 2, axis="X"))
    assert np.abs(v - vx).max() < 1e-15


def test_matches_two_level_block_exponential():
    # independent oracle: V = exp(i (angle/2) (e^{if'} P_mn + e^{-if'} P_nm))
    rng = np.random.default_rng(17)
    for _ in range(25):
        upper, lower = rng.choice(DIM, size=2, replace=False)
        angle = float(rng.uniform(-2 * np.pi, 4 * np.pi))
        phase = float(rng.uniform(-np.pi, np.pi))
        axis = "X" if rng.random() < 0.5 else "Y"
        f_eff = phase + (np.pi / 2 if axis == "Y" else 0.0)
        generator = (np.exp(1j * f_eff) * projector(upper, lower).matrix
                     + np.exp(-1j * f_eff) * projector(lower, upper).matrix)
        expected = expm(1j * (angle / 2) * generator)
        got = pulse_propagator(Tone(upper=int(upper), lower=int(lower),
                                    angle=angle, phase=phase, axis=axis))
        assert np.abs(got - expected).max() < 1e-12


def test_unitarity_over_random_tones():
    rng = np.random.default_rng(23)
    for _ in range(50):
        upper, lower = rng.choice(DIM, size=2, replace=False)
        tone = Tone(upper=int(upper), lower=int(lower),
                    angle=float(rng.uniform(-10, 10)),
                    phase=float(rng.uniform(-np.pi, np.pi)),
                    axis="X" if rng.random() < 0.5 else "Y")
        u = pulse_propagator(tone)
        assert np.abs(u.conj().T @ u - np.eye(DIM)).max() < 1e-12


def test_periodicity():
    full = pulse_propagator(Tone(upper=2, lower=3, angle=4 * np.pi))
    assert np.abs(full - np.eye(DIM)).max() < 1e-12
    half = pulse_propagator(Tone(upper=2, lower=3, angle=2 * np.pi))
    expected = np.eye(DIM, dtype=complex)
    expected[2, 2] = expected[3, 3] = -1
    assert np.abs(half - expected).max() < 1e-12


def test_composition_additivity():
    rng = np.random.default_rng(29)
    for _ in range(20):
        a, b = rng.uniform(-5, 5, size=2)
        phase = float(rng.uniform(-np.pi, np.pi))
        first = pulse_propagator(Tone(upper=1, lower=4, angle=float(a), phase=phase))
        second = pulse_propagator(Tone(upper=1, lower=4, angle=float(b), phase=phase))
        combined = pulse_propagator(Tone(upper=1, lower=4, angle=float(a + b), phase=phase))
        assert np.abs(second @ first - combined).max() < 1e-12


def test_multi_tone_block_structure():
    tones = (Tone(upper=2, lower=3, angle=np.pi), Tone(upper=6, lower=7, angle=np.pi))
    combined = multi_tone_propagator(tones)
    product = (pulse_propagator(tones[0]) @ pulse_propagator(tones[1]))
    assert np.abs(combined - product).max() < 1e-15


def test_multi_tone_empty_and_commutation():
    assert np.array_equal(multi_tone_propagator(()), np.eye(DIM))
    a = pulse_propagator(Tone(upper=0, lower=4, angle=1.1, phase=0.2))
    b = pulse_propagator(Tone(upper=2, lower=6, angle=2.3, phase=-0.4, axis="Y"))
    assert np.abs(a @ b - b @ a).max() < 1e-14


def test_multi_tone_rejects_overlap():
    with pytest.raises(OverlappingTonesError):
        multi_tone_propagator((Tone(upper=2, lower=3, angle=np.pi),
                               Tone(upper=3, lower=7, angle=np.pi)))


def test_tone_validation():
    with pytest.raises(InputError):
        Tone(upper=2, lower=2, angle=1.0)
    with pytest.raises(InputError):
        Tone(upper=2, lower=9, angle=1.0)
    with pytest.raises(InputError):
        Tone(upper=2, lower=3, angle=np.inf)
    with pytest.raises(InputError):
        Tone(upper=2, lower=3, angle=1.0, axis="Z")


def test_pulse_duration():
    params = PulseParams(gammaHrf=1.0)
    duration = pulse_duration(np.pi, params, np.sqrt(7) / 2)
    assert abs(duration - np.pi / np.sqrt(7)) < 1e-14
    assert abs(duration - 1.18741) < 1e-5
    assert pulse_duration(0.0, params, 2.0) == 0.0
    with pytest.raises(ForbiddenTransitionError):
        pulse_duration(np.pi, params, 0.0)
    with pytest.raises(InputError):
        PulseParams(gammaHrf=0.0)
