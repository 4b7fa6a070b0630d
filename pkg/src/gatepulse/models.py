"""Control Hamiltonian models and the target-gate library.

Conventions: couplings and control amplitudes are frequencies in MHz (the
pi prefactors are baked into the operators), time is measured in units of
1/J, and physical time in microseconds is obtained by dividing by J.
For the idealized models J = 1 is the natural choice, which makes
amplitudes dimensionless multiples of J.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import embed_pauli, embed_unitary, is_hermitian

MODEL_KINDS = ("ideal2", "ideal3", "real2", "real3")
GATE_NAMES = ("iswap12", "cnot12", "swap12", "iswap13", "cnot13", "swap13")

# control restrictions for the realistic models (MHz)
DELTA_MAX = 1000.0
OMEGA_MAX = 50.0
DEFAULT_J = 21.0


@dataclass(frozen=True)
class Channel:
    label: str
    operator: np.ndarray
    bound: float | None = None  # MHz; None = unbounded


@dataclass(frozen=True)
class ControlModel:
    kind: str
    n_qubits: int
    drift: np.ndarray
    channels: tuple[Channel, ...]
    J: float  # MHz

    @property
    def dim(self):
        return 2**self.n_qubits

    @property
    def n_channels(self):
        return len(self.channels)

    def bounds(self):
        """Per-channel bounds as an array, inf for unbounded channels."""
        return np.array(
            [np.inf if c.bound is None else c.bound for c in self.channels]
        )

    def hamiltonian(self, amplitudes):
        """Drift plus control terms for one vector of channel amplitudes."""
        h = self.drift.copy()
        for u, c in zip(amplitudes, self.channels):
            h += u * c.operator
        return h


def _xy_coupling(i, j, n):
    return embed_pauli("x", i, n) @ embed_pauli("x", j, n) + embed_pauli(
        "y", i, n
    ) @ embed_pauli("y", j, n)


def build_model(kind, J=DEFAULT_J, delta_max=DELTA_MAX, omega_max=OMEGA_MAX):
    """Construct one of the four control models.

    ideal2 / ideal3: unbounded x and y drives on every qubit.
    real2: two z detunings plus one joint x drive, amplitude-bounded.
    real3: two joint x drives (one per cavity) plus three z detunings.
    """
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    if J <= 0:
        raise ValueError("coupling J must be positive")
    n = 2 if kind.endswith("2") else 3
    drift = (np.pi * J / 2) * _xy_coupling(1, 2, n)
    if n == 3:
        drift = drift + (np.pi * J / 2) * _xy_coupling(2, 3, n)

    channels = []
    if kind.startswith("ideal"):
        for i in range(1, n + 1):
            channels.append(Channel(f"Ox{i}", np.pi * embed_pauli("x", i, n)))
            channels.append(Channel(f"Oy{i}", np.pi * embed_pauli("y", i, n)))
    elif kind == "real2":
        channels.append(Channel("D1", np.pi * embed_pauli("z", 1, n), delta_max))
        channels.append(Channel("D2", np.pi * embed_pauli("z", 2, n), delta_max))
        joint = np.pi * (embed_pauli("x", 1, n) + embed_pauli("x", 2, n))
        channels.append(Channel("O", joint, omega_max))
    else:  # real3
        x12 = np.pi * (embed_pauli("x", 1, n) + embed_pauli("x", 2, n))
        x23 = np.pi * (embed_pauli("x", 2, n) + embed_pauli("x", 3, n))
        channels.append(Channel("Ox12", x12, omega_max))
        channels.append(Channel("Ox23", x23, omega_max))
        for i in range(1, n + 1):
            channels.append(
                Channel(f"Oz{i}", np.pi * embed_pauli("z", i, n), delta_max)
            )

    for c in channels:
        assert is_hermitian(c.operator)
    return ControlModel(kind, n, drift, tuple(channels), float(J))


# The natural gate of the XY coupling: free evolution for T = 1/(2J).
ISWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, -1j, 0],
        [0, -1j, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)

CNOT = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)

SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)

_GATES_2Q = {"iswap": ISWAP, "cnot": CNOT, "swap": SWAP}


@dataclass(frozen=True)
class GateTarget:
    name: str
    matrix: np.ndarray
    acting_pair: tuple[int, int]
    n_qubits: int


def gate_target(name, n_qubits):
    """Standard gate matrix embedded with identity on non-acting qubits."""
    if name not in GATE_NAMES:
        raise ValueError(f"unknown gate {name!r}")
    base, pair = name[:-2], (int(name[-2]), int(name[-1]))
    if pair == (1, 3) and n_qubits != 3:
        raise ValueError(f"{name} requires a 3-qubit model")
    if max(pair) > n_qubits:
        raise ValueError(f"{name} does not fit in {n_qubits} qubits")
    matrix = embed_unitary(_GATES_2Q[base], pair, n_qubits)
    return GateTarget(name, matrix, pair, n_qubits)
