import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lmgmqc.coherence import (
    dicke_labels,
    i0_max,
    mqc_from_amplitudes,
    mqc_from_matrix,
    mqc_from_populations,
    purity,
)
from lmgmqc.errors import DomainError


def random_state(dim, seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


def brute_force(rho, labels):
    out = {}
    for a in range(len(labels)):
        for b in range(len(labels)):
            ell = int(labels[a] - labels[b])
            out[ell] = out.get(ell, 0.0) + abs(rho[a, b]) ** 2
    return out


def test_labels():
    np.testing.assert_array_equal(dicke_labels(3), [-2, 0, 2])


def test_basis_state():
    zeta = np.zeros(5)
    zeta[2] = 1.0
    spec = mqc_from_amplitudes(zeta)
    assert spec.zero_mode == 1.0
    assert spec.total == 1.0 and spec.width == 0.0


def test_two_level_superposition():
    spec = mqc_from_amplitudes(np.array([1, 1]) / np.sqrt(2))
    assert spec[0] == pytest.approx(0.5)
    assert spec[2] == pytest.approx(0.25) and spec[-2] == pytest.approx(0.25)
    assert spec[1] == 0.0
    assert spec.width == pytest.approx(np.sqrt(2))


@pytest.mark.parametrize("dim", [1, 4, 26])
def test_uniform_superposition_zero_mode(dim):
    spec = mqc_from_amplitudes(np.full(dim, 1 / np.sqrt(dim)))
    assert spec.zero_mode == pytest.approx(1 / dim)


@pytest.mark.parametrize("seed", range(4))
def test_pure_state_paths_agree(seed):
    z = random_state(9, seed)
    a = mqc_from_amplitudes(z)
    b = mqc_from_matrix(np.outer(z, z.conj()))
    np.testing.assert_array_equal(a.ells, b.ells)
    np.testing.assert_allclose(a.intensities, b.intensities, atol=1e-15)
    ref = brute_force(np.outer(z, z.conj()), dicke_labels(9))
    for ell, val in ref.items():
        assert a[ell] == pytest.approx(val, abs=1e-15)


def test_maximally_mixed():
    spec = mqc_from_matrix(np.eye(4) / 4)
    assert spec.zero_mode == pytest.approx(0.25)
    assert spec.total == pytest.approx(0.25)
    assert all(spec[l] == 0.0 for l in spec.ells if l != 0)


def test_random_mixed_state_sum_rule():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    spec = mqc_from_matrix(rho)
    assert spec.total == pytest.approx(purity(rho), abs=1e-14)
    ref = brute_force(rho, dicke_labels(6))
    for ell, val in ref.items():
        assert spec[ell] == pytest.approx(val, abs=1e-14)


def test_nonuniform_labels():
    labels = [0, 1, 3]
    z = random_state(3, 11)
    spec = mqc_from_amplitudes(z, labels)
    ref = brute_force(np.outer(z, z.conj()), labels)
    assert set(spec.ells.tolist()) == set(ref)
    for ell, val in ref.items():
        assert spec[ell] == pytest.approx(val, abs=1e-15)


def test_input_validation():
    with pytest.raises(DomainError):
        mqc_from_amplitudes([1.0, 1.0])
    with pytest.raises(DomainError):
        mqc_from_matrix(np.array([[0.5, 0.1], [0.0, 0.5]]))
    with pytest.raises(DomainError):
        mqc_from_matrix(np.eye(2))
    with pytest.raises(DomainError):
        mqc_from_matrix(np.ones(3))
    with pytest.raises(DomainError):
        mqc_from_amplitudes([1.0, 0.0], labels=[0, 0.5])
    with pytest.raises(DomainError):
        mqc_from_amplitudes([1.0, 0.0], labels=[0, 1, 2])
    with pytest.raises(DomainError):
        i0_max([])


def test_i0_max():
    assert i0_max([0.2, 0.7, 0.4]) == 0.7


def test_as_dict():
    spec = mqc_from_amplitudes(np.array([1, 1]) / np.sqrt(2))
    assert spec.as_dict() == pytest.approx({-2: 0.25, 0: 0.5, 2: 0.25})


amplitude_vectors = arrays(
    np.float64, st.integers(1, 20),
    elements=st.floats(-1, 1, allow_nan=False, allow_subnormal=False),
).filter(lambda v: np.linalg.norm(v) > 1e-3)


@settings(max_examples=80, deadline=None)
@given(v=amplitude_vectors)
def test_pure_state_properties(v):
    z = v / np.linalg.norm(v)
    spec = mqc_from_amplitudes(z)
    assert spec.total == pytest.approx(1.0, abs=1e-12)
    assert np.all(spec.intensities >= -1e-15)
    np.testing.assert_allclose(spec.intensities, spec.intensities[::-1], atol=1e-15)
    assert all(spec[l] == 0.0 for l in range(-41, 42, 2))  # odd orders only
    labels = dicke_labels(z.size)
    assert spec.width <= (labels.max() - labels.min()) + 1e-12
    # zero-mode equals the sum of squared populations
    assert spec.zero_mode == pytest.approx(np.sum(z**4), abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(p=arrays(np.float64, st.integers(1, 15), elements=st.floats(0, 1, allow_nan=False)))
def test_width_from_population_variance(p):
    if p.sum() < 1e-6:
        return
    p = p / p.sum()
    labels = dicke_labels(p.size)
    var = np.sum(p * labels**2) - np.sum(p * labels) ** 2
    assert mqc_from_populations(p).second_moment == pytest.approx(2 * var, abs=1e-9)
