"""Dense complex linear algebra for small multi-qubit systems.

Everything here works on plain numpy arrays of dimension 2, 4 or 8.
Qubit 1 is always the leftmost tensor factor; all other modules rely on
that convention.
"""

import numpy as np

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)

_PAULIS = {
    "x": SIGMA_X,
    "y": SIGMA_Y,
    "z": SIGMA_Z,
    "plus": SIGMA_PLUS,
    "minus": SIGMA_MINUS,
}


def is_hermitian(m, tol=HERMITIAN_TOL):
    return np.max(np.abs(m - m.conj().T)) <= tol


def unitarity_defect(u):
    """Max-entry deviation of U†U from the identity."""
    n = u.shape[0]
    return np.max(np.abs(u.conj().T @ u - np.eye(n)))


def is_unitary(u, tol=UNITARY_TOL):
    return unitarity_defect(u) <= tol


def embed_pauli(axis, qubit, n):
    """Operator acting as the chosen Pauli on `qubit` (1-based) of an
    n-qubit register, identity on the rest."""
    if axis not in _PAULIS:
        raise ValueError(f"unknown Pauli axis {axis!r}")
    if not (1 <= qubit <= n <= 3):
        raise ValueError(f"qubit index {qubit} out of range for n={n}")
    op = np.eye(1, dtype=complex)
    for i in range(1, n + 1):
        factor = _PAULIS[axis] if i == qubit else np.eye(2, dtype=complex)
        op = np.kron(op, factor)
    return op


def embed_unitary(u_small, qubits, n):
    """Embed a unitary on the given 1-based qubit tuple into n qubits.

    `qubits` need not be adjacent or ordered; the first qubit in the tuple
    corresponds to the leftmost factor of u_small.
    """
    k = len(qubits)
    if u_small.shape != (2**k, 2**k):
        raise ValueError("unitary dimension does not match qubit count")
    if len(set(qubits)) != k or not all(1 <= q <= n for q in qubits):
        raise ValueError(f"bad qubit tuple {qubits} for n={n}")
    rest = [q for q in range(1, n + 1) if q not in qubits]
    order = list(qubits) + rest
    full = np.kron(u_small, np.eye(2 ** (n - k), dtype=complex))
    # permute tensor factors from `order` back to 1..n
    perm = [order.index(q) for q in range(1, n + 1)]
    t = full.reshape((2,) * (2 * n))
    t = t.transpose(tuple(perm) + tuple(n + p for p in perm))
    return np.ascontiguousarray(t.reshape(2**n, 2**n))


def expm_hermitian(h, dt):
    """exp(-i h dt) by eigendecomposition of the Hermitian matrix h."""
    if not is_hermitian(h, tol=1e-10):
        raise ValueError("matrix is not Hermitian")
    if not np.isfinite(dt):
        raise ValueError("dt must be finite")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * dt)) @ v.conj().T


def partial_trace(rho, keep):
    """Reduced 2-qubit density matrix of a 3-qubit state.

    keep is an ordered pair from {(1,2), (2,3), (1,3)}; the complementary
    qubit is traced out.
    """
    if rho.shape != (8, 8):
        raise ValueError("partial_trace expects an 8-dimensional density matrix")
    keep = tuple(keep)
    if keep not in {(1, 2), (2, 3), (1, 3)}:
        raise ValueError(f"keep must be an ordered pair of distinct qubits, got {keep}")
    drop = ({1, 2, 3} - set(keep)).pop()
    t = rho.reshape(2, 2, 2, 2, 2, 2)
    d = drop - 1
    reduced = np.trace(t, axis1=d, axis2=d + 3)
    # np.trace leaves remaining axes in original order, which matches the
    # ascending keep pairs used here
    return reduced.reshape(4, 4)


def trace_norm(m):
    """Sum of singular values.

    Hermitian inputs (the partial-transpose case) use their own
    eigenvalues, which is accurate near zero; general matrices fall back
    to the eigenvalues of M†M with negative rounding clamped.
    """
    if is_hermitian(m, tol=1e-10):
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    ev = np.linalg.eigvalsh(m.conj().T @ m)
    return float(np.sum(np.sqrt(np.clip(ev, 0.0, None))))


def partial_transpose(rho):
    """Partial transpose of a 2-qubit density matrix over the first qubit."""
    t = rho.reshape(2, 2, 2, 2)
    return t.transpose(2, 1, 0, 3).reshape(4, 4)


def log_negativity(rho):
    """log2 of the trace norm of the partial transpose (first qubit)."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if rho.shape != (4, 4):
        raise ValueError("log_negativity expects a 2-qubit density matrix")
    if abs(np.trace(rho) - 1.0) > 1e-9:
        raise ValueError("density matrix trace must be 1")
    val = np.log2(trace_norm(partial_transpose(rho)))
    if val < 0.0:
        if val < -1e-12:
            raise ValueError("trace norm below 1 beyond rounding; invalid state")
        return 0.0
    return float(val)


def ket(bits):
    """Computational basis state from a bit string, e.g. '100'."""
    n = len(bits)
    v = np.zeros(2**n, dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def density(psi):
    return np.outer(psi, psi.conj())
