import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmgmqc.classical import critical_quench_strength
from lmgmqc.eigensolver import eigh, eigvals, fix_signs
from lmgmqc.errors import NumericalFailure
from lmgmqc.spin import ModelParams, SymTridiagonal, build_dense_oracle, build_hamiltonian


def random_tridiagonal(dim, seed):
    rng = np.random.default_rng(seed)
    return SymTridiagonal(rng.normal(size=dim), rng.normal(size=dim - 1))


def test_already_diagonal():
    dec = eigh(SymTridiagonal(np.array([0.0, 2.0, 4.0]), np.array([0.0, 0.0])))
    np.testing.assert_array_equal(dec.values, [0.0, 2.0, 4.0])
    np.testing.assert_allclose(dec.vectors, np.eye(3), atol=0)


def test_two_by_two():
    dec = eigh(SymTridiagonal(np.array([0.0, 0.0]), np.array([1.0])))
    np.testing.assert_allclose(dec.values, [-1.0, 1.0], atol=1e-15)
    s = 1 / np.sqrt(2)
    # sign convention: largest entry positive, ties resolved at the lowest index
    np.testing.assert_allclose(dec.vectors[:, 0], [s, -s], atol=1e-15)
    np.testing.assert_allclose(dec.vectors[:, 1], [s, s], atol=1e-15)


def test_degenerate_diagonal_values():
    np.testing.assert_array_equal(eigvals(SymTridiagonal(np.array([5.0, 5.0]), np.array([0.0]))), [5.0, 5.0])


def test_one_by_one():
    dec = eigh(SymTridiagonal(np.array([3.0]), np.array([])))
    assert dec.values.tolist() == [3.0]
    assert dec.vectors.tolist() == [[1.0]]


def test_lmg_block_matches_dense_oracle():
    kappa = 2 / 3
    p = ModelParams(kappa, critical_quench_strength(kappa), 8)
    g = kappa + p.chi
    np.testing.assert_allclose(
        eigh(build_hamiltonian(p, g)).values,
        np.linalg.eigvalsh(build_dense_oracle(p, g).even),
        atol=1e-10,
    )


def test_large_trace_identity():
    h = build_hamiltonian(ModelParams(2 / 3, 0.0, 5000))
    vals = eigvals(h)
    assert vals.size == 2501
    assert abs(vals.sum() - h.diag.sum()) <= 1e-8 * abs(h.diag.sum())


def test_values_only_path_matches_full():
    h = build_hamiltonian(ModelParams(1 / 3, 0.0, 50))
    np.testing.assert_allclose(eigvals(h), eigh(h).values, atol=1e-12, rtol=0)


@pytest.mark.parametrize("dim", [2, 3, 17, 401])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_orthonormality_and_residual(dim, seed):
    h = random_tridiagonal(dim, seed)
    dec = eigh(h)
    assert np.all(np.diff(dec.values) >= 0)
    assert np.abs(dec.vectors.T @ dec.vectors - np.eye(dim)).max() <= 1e-10
    resid = h.matvec(dec.vectors) - dec.vectors * dec.values
    bound = 1e-10 * max(1.0, h.max_abs() * dim)
    assert np.linalg.norm(resid, axis=0).max() <= bound
    assert abs(dec.values.sum() - h.diag.sum()) <= 1e-10 * max(1.0, np.abs(h.diag).sum())
    frob = np.sum(h.diag**2) + 2 * np.sum(h.offdiag**2)
    assert abs(np.sum(dec.values**2) - frob) <= 1e-10 * frob


@settings(max_examples=40, deadline=None)
@given(dim=st.integers(3, 50), seed=st.integers(0, 2**31))
def test_cauchy_interlacing(dim, seed):
    h = random_tridiagonal(dim, seed)
    full = eigvals(h)
    sub = eigvals(SymTridiagonal(h.diag[:-1], h.offdiag[:-1]))
    tol = 1e-12 * max(1.0, h.max_abs())
    assert np.all(full[:-1] <= sub + tol)
    assert np.all(sub <= full[1:] + tol)


def test_deterministic_bits():
    h = random_tridiagonal(60, 5)
    a, b = eigh(h), eigh(SymTridiagonal(h.diag.copy(), h.offdiag.copy()))
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(a.vectors, b.vectors)


def test_sign_convention():
    v = np.array([[0.1, -0.9], [-0.9, 0.1]])
    fixed = fix_signs(v)
    assert fixed[1, 0] == 0.9 and fixed[0, 1] == 0.9


def test_failure_surfaces(monkeypatch):
    import lmgmqc.eigensolver as es
    from scipy.linalg import LinAlgError

    def boom(*args, **kwargs):
        raise LinAlgError("no convergence")

    monkeypatch.setattr(es, "eigh_tridiagonal", boom)
    with pytest.raises(NumericalFailure):
        es.eigh(random_tridiagonal(4, 0))
    with pytest.raises(NumericalFailure):
        es.eigvals(random_tridiagonal(4, 0))
