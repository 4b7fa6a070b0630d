"""One-time search for the local-gate interleavings used by the
sequential baselines.

Finds single-qubit Clifford layers L_i such that

    CNOT = L2 . iSWAP . L1 . iSWAP . L0
    SWAP = L3 . iSWAP . L2 . iSWAP . L1 . iSWAP . L0

using the -i iSWAP produced by free XY evolution, with the total
x-rotation cost constrained to match the sequential time accounting
(z rotations are free, each 90 degrees of x rotation is charged).
The found layers are printed as (z-x-z Euler angles per qubit) tuples,
which are frozen into gatepulse.baselines.
"""

import itertools
import sys

import numpy as np

sys.path.insert(0, "src")
from gatepulse.models import ISWAP, CNOT, SWAP  # noqa: E402

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)


def canon(u):
    """Phase-canonical bytes key for a matrix defined up to global phase."""
    flat = u.ravel()
    idx = np.argmax(np.abs(flat) > 1e-8)
    v = u / (flat[idx] / abs(flat[idx]))
    return (np.round(v, 8) + 0.0).tobytes()  # +0.0 normalizes -0.0


def single_qubit_cliffords():
    seen = {}
    frontier = [I2]
    seen[canon(I2)] = I2
    while frontier:
        nxt = []
        for u in frontier:
            for g in (H, S):
                w = g @ u
                key = canon(w)
                if key not in seen:
                    seen[key] = w
                    nxt.append(w)
        frontier = nxt
    return list(seen.values())


def euler_zxz(u):
    """Angles (a, theta, b) with u proportional to Rz(a) Rx(theta) Rz(b)."""
    u = u / np.sqrt(np.linalg.det(u))  # project to SU(2)
    c = np.clip(abs(u[0, 0]), 0.0, 1.0)
    theta = 2 * np.arccos(c)
    if abs(np.sin(theta / 2)) < 1e-9:
        return (float(2 * np.angle(u[1, 1] / u[0, 0]) / 2), 0.0, 0.0)
    if abs(np.cos(theta / 2)) < 1e-9:
        a = -2 * np.angle(u[0, 1] / -1j) / 2
        return (float(2 * a), float(np.pi), 0.0)
    p = np.angle(u[0, 0])
    q = np.angle(u[0, 1] / -1j)
    return (float(-p - q), float(theta), float(-p + q))


def rz(a):
    return np.array([[np.exp(-1j * a / 2), 0], [0, np.exp(1j * a / 2)]])


def rx(a):
    return np.cos(a / 2) * I2 - 1j * np.sin(a / 2) * X


def x_cost(u):
    """Quarter-turn count of the29 x part in a ZXZ Euler decomposition."""
    _, theta, _ = euler_zxz(u)
    k = round(theta / (np.pi / 2))
    return min(k, 4 - k) if k else 0


def check_euler():
    for u in CLIFFORDS:
        a, t, b = euler_zxz(u)
        v = rz(a) @ rx(t) @ rz(b)
        f = abs(np.trace(u.conj().T @ v)) / 2
        assert f > 1 - 1e-9, (a, t, b)


CLIFFORDS = single_qubit_cliffords()
assert len(CLIFFORDS) == 24


def layers():
    out = []
    for c1, c2 in itertools.product(CLIFFORDS, CLIFFORDS):
        out.append((np.kron(c1, c2), x_cost(c1) + x_cost(c2), (c1, c2)))
    return out


def search_two(target, want_cost):
    """Layers for target = L2 S L1 S L0 with given total x cost."""
    LAY = layers()
    mids = {}
    for l1, cost1, pair1 in LAY:
        mids.setdefault(canon(ISWAP @ l1 @ ISWAP), []).append((cost1, pair1))
    best = None
    for l2, c2, p2 in LAY:
        left = l2.conj().T @ target
        for l0, c0, p0 in LAY:
            key = canon(left @ l0.conj().T)
            if key in mids:
                for c1, p1 in mids[key]:
                    total = c0 + c1 + c2
                    if total == want_cost:
                        return (p0, p1, p2), total
                    if best is None or total < best[1]:
                        best = ((p0, p1, p2), total)
    return best


def search_three(target, want_cost):
    """Layers for target = L3 S L2 S L1 S L0 with given total x cost."""
    LAY = layers()
    rights = {}
    for l1, c1, p1 in LAY:
        m = ISWAP @ l1 @ ISWAP
        for l0, c0, p0 in LAY:
            rights.setdefault(canon(m @ l0), []).append((c0 + c1, p0, p1))
    best = None
    hits = 0
    for l3, c3, p3 in LAY:
        a = l3.conj().T @ target
        for l2, c2, p2 in LAY:
            key = canon(l2.conj().T @ ISWAP.conj().T @ a)
            if key in rights:
                for c01, p0, p1 in rights[key]:
                    total = c01 + c2 + c3
                    hits += 1
                    if total == want_cost:
                        return (p0, p1, p2, p3), total
                    if best is None or total < best[1]:
                        best = ((p0, p1, p2, p3), total)
    print("three-search exhausted, hits:", hits)
    return best


def report(name, result, n_couplings):
    pairs, cost = result
    print(f"\n{name}: total x cost {cost}")
    angles = []
    for li, (c1, c2) in enumerate(pairs):
        e1, e2 = euler_zxz(c1), euler_zxz(c2)
        angles.append((e1, e2))
        print(f"  L{li}: q1 zxz={tuple(round(v/np.pi,4) for v in e1)}pi "
              f"q2 zxz={tuple(round(v/np.pi,4) for v in e2)}pi")
    # verify
    u = np.eye(4, dtype=complex)
    for li in range(len(pairs)):
        c1, c2 = pairs[li]
        u = np.kron(c1, c2) @ u if li == 0 else u
    u = np.kron(pairs[0][0], pairs[0][1])
    for li in range(1, len(pairs)):
        u = np.kron(pairs[li][0], pairs[li][1]) @ ISWAP @ u
    tgt = CNOT if name == "cnot" else SWAP
    f = abs(np.trace(tgt.conj().T @ u) / 4) ** 2
    print(f"  verify fidelity: {f:.12f}")
    print("  frozen:", [tuple(tuple(round(x, 12) for x in e) for e in la) for la in angles])


if __name__ == "__main__":
    check_euler()
    print("searching cnot (2 iSWAPs, x cost 2)...")
    report("cnot", search_two(CNOT, 2), 2)
    print("searching swap (3 iSWAPs, x cost 3)...")
    report("swap", search_three(SWAP, 3), 3)
    CZ = np.diag([1, 1, 1, -1]).astype(complex)
    print("searching cz (2 iSWAPs, x cost 0)...")
    report("cz", search_two(CZ, 0), 2)
