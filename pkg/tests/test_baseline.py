import numpy as np
import pytest
from conftest import random_contraction, random_state_vector

from qaffine import (
    AffineSequence,
    AffineStep,
    NormalizationError,
    ShapeError,
    build_augmented,
    classical_affine_compose,
    extract_result,
    run_augmented,
    run_pipeline,
)


def test_augmented_matrix_layout():
    a = 0.5 * np.eye(2)
    b = np.array([0.3, 0.4])
    aug = build_augmented(a, b, [1.0, 0.0])
    at = aug.A_tilde
    assert at.shape == (4, 4)
    assert np.allclose(at[:2, :2], a)
    assert np.allclose(at[:2, 3], b)
    assert np.allclose(at[:2, 2], 0.0)
    assert np.allclose(at[2:, 2:], np.eye(2))
    assert np.allclose(at[2:, :2], 0.0)


def test_augmented_state_layout():
    aug = build_augmented(0.5 * np.eye(2), [0.0, 0.0], [0.6, 0.8])
    pt = aug.psi_tilde
    assert pt[0] == pytest.approx(0.6 / np.sqrt(2))
    assert pt[1] == pytest.approx(0.8 / np.sqrt(2))
    assert pt[2] == 0.0
    assert pt[3] == pytest.approx(1 / np.sqrt(2))
    assert np.linalg.norm(pt) == pytest.approx(1.0, abs=1e-12)


def test_dilation_doubles_augmented_dimension():
    # 2N base -> A~ is 2N x 2N -> dilation unitary is 4N x 4N
    aug = build_augmented(0.5 * np.eye(4), np.zeros(4), np.eye(4)[0])
    assert aug.A_tilde.shape == (8, 8)
    assert aug.enc.U.shape == (16, 16)


def test_run_augmented_computes_affine_image():
    rng = np.random.default_rng(71)
    for _ in range(25):
        dim = int(2 ** rng.integers(1, 4))
        a = random_contraction(rng, dim, high=0.7)
        b = 0.3 * random_state_vector(rng, dim)
        psi = random_state_vector(rng, dim)
        got = run_augmented(build_augmented(a, b, psi))
        assert np.max(np.abs(got - (a @ psi + b))) <= 1e-9


def test_augmented_agrees_with_pipeline():
    rng = np.random.default_rng(72)
    for _ in range(10):
        dim = 4
        a = random_contraction(rng, dim, high=0.6)
        b = random_state_vector(rng, dim)
        psi = random_state_vector(rng, dim)
        seq = AffineSequence(2, psi, (AffineStep(a, b),))
        via_pipeline = extract_result(run_pipeline(seq))
        via_augmented = run_augmented(build_augmented(a, b, psi))
        via_classical = classical_affine_compose(seq)
        assert np.max(np.abs(via_pipeline - via_augmented)) <= 1e-9
        assert np.max(np.abs(via_augmented - via_classical)) <= 1e-9


def test_augmented_zero_translation():
    rng = np.random.default_rng(73)
    a = random_contraction(rng, 2)
    psi = random_state_vector(rng, 2)
    got = run_augmented(build_augmented(a, np.zeros(2), psi))
    assert np.max(np.abs(got - a @ psi)) <= 1e-9


def test_augmented_alpha_absorbs_large_entries():
    # the stacked matrix typically has spectral norm > 1; alpha rescales it
    a = 0.9 * np.eye(2)
    b = np.array([0.9, 0.0])
    aug = build_augmented(a, b, [0.0, 1.0])
    assert aug.enc.alpha > 1.0
    got = run_augmented(aug)
    assert np.max(np.abs(got - (a @ np.array([0.0, 1.0]) + b))) <= 1e-9


def test_build_augmented_validation():
    with pytest.raises(ShapeError):
        build_augmented(np.ones((2, 3)), [0.0, 0.0], [1.0, 0.0])
    with pytest.raises(ShapeError):
        build_augmented(np.eye(3), np.zeros(3), np.eye(3)[0])
    with pytest.raises(ShapeError):
        build_augmented(np.eye(2), [0.0, 0.0, 0.0], [1.0, 0.0])
    with pytest.raises(NormalizationError):
        build_augmented(np.eye(2), [0.0, 0.0], [1.0, 1.0])
