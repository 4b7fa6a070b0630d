import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gatepulse.linalg import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    density,
    embed_pauli,
    embed_unitary,
    expm_hermitian,
    is_unitary,
    ket,
    log_negativity,
    partial_trace,
    partial_transpose,
    trace_norm,
    unitarity_defect,
)


def random_unitary(rng, dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def test_pauli_algebra():
    assert np.allclose(SIGMA_X @ SIGMA_Y - SIGMA_Y @ SIGMA_X, 2j * SIGMA_Z)
    assert np.allclose(SIGMA_X @ SIGMA_X, np.eye(2))


def test_embed_pauli_ordering():
    # qubit 1 is the leftmost factor
    z1 = embed_pauli("z", 1, 2)
    assert np.allclose(z1, np.kron(SIGMA_Z, np.eye(2)))
    z2 = embed_pauli("z", 2, 2)
    assert np.allclose(z2, np.kron(np.eye(2), SIGMA_Z))
    x3 = embed_pauli("x", 3, 3)
    assert np.allclose(x3, np.kron(np.eye(4), SIGMA_X))


def test_embed_pauli_validation():
    with pytest.raises(ValueError):
        embed_pauli("q", 1, 2)
    with pytest.raises(ValueError):
        embed_pauli("x", 3, 2)


def test_embed_unitary_adjacent():
    u = np.kron(SIGMA_X, SIGMA_Y)
    assert np.allclose(embed_unitary(u, (1, 2), 2), u)
    assert np.allclose(embed_unitary(u, (1, 2), 3), np.kron(u, np.eye(2)))
    assert np.allclose(embed_unitary(u, (2, 3), 3), np.kron(np.eye(2), u))


def test_embed_unitary_nonadjacent():
    u = embed_unitary(np.kron(SIGMA_X, SIGMA_Y), (1, 3), 3)
    expect = np.kron(np.kron(SIGMA_X, np.eye(2)), SIGMA_Y)
    assert np.allclose(u, expect)


def test_embed_unitary_reversed_pair():
    cx = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
                  dtype=complex)
    # control on qubit 2, target on qubit 1
    u = embed_unitary(cx, (2, 1), 2)
    expect = np.zeros((4, 4), dtype=complex)
    for a in range(2):
        for b in range(2):
            expect[(a ^ b) * 2 + b, a * 2 + b] = 1
    assert np.allclose(u, expect)


def test_expm_hermitian_rotation():
    u = expm_hermitian(SIGMA_X, np.pi / 2)
    expect = np.cos(np.pi / 2) * np.eye(2) - 1j * np.sin(np.pi / 2) * SIGMA_X
    assert np.allclose(u, expect)
    with pytest.raises(ValueError):
        expm_hermitian(np.array([[0, 1], [0, 0]], dtype=complex), 1.0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_expm_hermitian_group_property(seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = (z + z.conj().T) / 2
    a, b = rng.uniform(-2, 2, 2)
    lhs = expm_hermitian(h, a) @ expm_hermitian(h, b)
    rhs = expm_hermitian(h, a + b)
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_partial_trace_product_state():
    rng = np.random.default_rng(3)
    a, b, c = (random_state(rng, 2) for _ in range(3))
    rho = density(np.kron(np.kron(a, b), c))
    r12 = partial_trace(rho, (1, 2))
    assert np.allclose(r12, density(np.kron(a, b)), atol=1e-12)
    r23 = partial_trace(rho, (2, 3))
    assert np.allclose(r23, density(np.kron(b, c)), atol=1e-12)
    r13 = partial_trace(rho, (1, 3))
    assert np.allclose(r13, density(np.kron(a, c)), atol=1e-12)


def test_partial_trace_validation():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4) / 4, (1, 2))
    with pytest.raises(ValueError):
        partial_trace(np.eye(8) / 8, (1, 1))


def test_trace_norm_known_values():
    assert trace_norm(np.eye(4)) == pytest.approx(4.0)
    m = np.diag([1.0, -2.0, 3.0, 0.0]).astype(complex)
    assert trace_norm(m) == pytest.approx(6.0)
    # non-Hermitian branch: singular values of a Jordan-like block
    j = np.array([[0, 2], [0, 0]], dtype=complex)
    assert trace_norm(j) == pytest.approx(2.0)


def test_partial_transpose_involution():
    rng = np.random.default_rng(5)
    rho = density(random_state(rng, 4))
    assert np.allclose(partial_transpose(partial_transpose(rho)), rho)
    assert np.trace(partial_transpose(rho)) == pytest.approx(1.0)


def test_log_negativity_bell_state():
    bell = (ket("00") + ket("11")) / np.sqrt(2)
    assert log_negativity(density(bell)) == pytest.approx(1.0, abs=1e-12)


def test_log_negativity_product_state():
    rng = np.random.default_rng(7)
    rho = density(np.kron(random_state(rng, 2), random_state(rng, 2)))
    assert log_negativity(rho) == pytest.approx(0.0, abs=1e-12)


def test_log_negativity_partially_entangled():
    # cos(t)|00> + sin(t)|11> has trace norm 1 + sin(2t)
    t = 0.3
    psi = np.cos(t) * ket("00") + np.sin(t) * ket("11")
    expect = np.log2(1 + np.sin(2 * t))
    assert log_negativity(density(psi)) == pytest.approx(expect, abs=1e-12)


def test_log_negativity_validation():
    with pytest.raises(ValueError):
        log_negativity(np.eye(8) / 8)
    with pytest.raises(ValueError):
        log_negativity(np.eye(4))  # trace 4


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_embedded_unitary_stays_unitary(seed):
    rng = np.random.default_rng(seed)
    u = random_unitary(rng, 4)
    assert is_unitary(embed_unitary(u, (1, 3), 3))
    assert unitarity_defect(embed_unitary(u, (3, 2), 3)) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_log_negativity_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = density(random_state(rng, 4))
    local = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
    before = log_negativity(rho)
    after = log_negativity(local @ rho @ local.conj().T)
    assert after == pytest.approx(before, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_log_negativity_bounded(seed):
    rng = np.random.default_rng(seed)
    rho = density(random_state(rng, 4))
    e = log_negativity(rho)
    assert 0.0 <= e <= 1.0 + 1e-12
