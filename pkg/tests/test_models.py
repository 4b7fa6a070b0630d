import numpy as np
import pytest

from gatepulse.linalg import embed_pauli, is_hermitian
from gatepulse.models import (
    CNOT,
    GATE_NAMES,
    ISWAP,
    SWAP,
    build_model,
    gate_target,
)


def test_iswap_matrix_entries():
    expect = np.array(
        [[1, 0, 0, 0], [0, 0, -1j, 0], [0, -1j, 0, 0], [0, 0, 0, 1]]
    )
    assert np.array_equal(ISWAP, expect)
    assert np.allclose(CNOT @ CNOT, np.eye(4))
    assert np.allclose(SWAP @ SWAP, np.eye(4))


def test_drift_is_scaled_xy_coupling():
    model = build_model("ideal2", J=1.0)
    xy = (
        embed_pauli("x", 1, 2) @ embed_pauli("x", 2, 2)
        + embed_pauli("y", 1, 2) @ embed_pauli("y", 2, 2)
    )
    assert np.allclose(model.drift, (np.pi / 2) * xy)
    # scaling in J is linear
    m21 = build_model("ideal2", J=21.0)
    assert np.allclose(m21.drift, 21.0 * model.drift)


def test_ideal3_drift_is_chain():
    model = build_model("ideal3", J=1.0)
    xy12 = (
        embed_pauli("x", 1, 3) @ embed_pauli("x", 2, 3)
        + embed_pauli("y", 1, 3) @ embed_pauli("y", 2, 3)
    )
    xy23 = (
        embed_pauli("x", 2, 3) @ embed_pauli("x", 3, 3)
        + embed_pauli("y", 2, 3) @ embed_pauli("y", 3, 3)
    )
    assert np.allclose(model.drift, (np.pi / 2) * (xy12 + xy23))


def test_channel_counts_and_bounds():
    assert build_model("ideal2").n_channels == 4
    assert build_model("ideal3").n_channels == 6
    r2 = build_model("real2")
    assert [c.label for c in r2.channels] == ["D1", "D2", "O"]
    assert np.array_equal(r2.bounds(), [1000.0, 1000.0, 50.0])
    r3 = build_model("real3")
    assert [c.label for c in r3.channels] == ["Ox12", "Ox23", "Oz1", "Oz2", "Oz3"]
    assert np.array_equal(r3.bounds(), [50.0, 50.0, 1000.0, 1000.0, 1000.0])
    assert np.all(np.isinf(build_model("ideal2").bounds()))


def test_hamiltonian_assembly():
    model = build_model("real2", J=21.0)
    amps = np.array([3.0, -1.0, 2.0])
    h = model.hamiltonian(amps)
    expect = model.drift + sum(
        a * c.operator for a, c in zip(amps, model.channels)
    )
    assert np.allclose(h, expect)
    assert is_hermitian(h)


def test_build_model_validation():
    with pytest.raises(ValueError):
        build_model("ideal4")
    with pytest.raises(ValueError):
        build_model("ideal2", J=0.0)


def test_gate_target_embedding():
    t = gate_target("cnot12", 3)
    assert t.matrix.shape == (8, 8)
    assert np.allclose(t.matrix, np.kron(CNOT, np.eye(2)))
    t13 = gate_target("iswap13", 3)
    # |100> -> -i|001> under iswap between 1 and 3
    v = np.zeros(8)
    v[4] = 1.0
    out = t13.matrix @ v
    assert out[1] == pytest.approx(-1j)
    assert np.linalg.norm(out) == pytest.approx(1.0)


def test_gate_target_validation():
    with pytest.raises(ValueError):
        gate_target("toffoli", 3)
    with pytest.raises(ValueError):
        gate_target("iswap13", 2)
    with pytest.raises(ValueError):
        gate_target("cnot13", 2)
    for name in GATE_NAMES:
        n = 3 if name.endswith("13") else 2
        t = gate_target(name, n)
        assert t.n_qubits == n
