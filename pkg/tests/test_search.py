import numpy as np
import pytest

from gatepulse.grape import OptimizeOptions, effective_bounds
from gatepulse.linalg import ket
from gatepulse.models import build_model, gate_target
from gatepulse.search import (
    MultiStartProtocol,
    multistart,
    optimized_entanglement,
    random_grid,
    sweep_min_time,
)

FAST = OptimizeOptions(bounds_on=False)


def test_protocol_validation():
    MultiStartProtocol(((4, 10), (2, 20)), 0, 0.2)
    with pytest.raises(ValueError):
        MultiStartProtocol((), 0, 0.2)
    with pytest.raises(ValueError):
        MultiStartProtocol(((4, 10), (4, 20)), 0, 0.2)
    with pytest.raises(ValueError):
        MultiStartProtocol(((2, 10), (5, 20)), 0, 0.2)


def test_random_grid_respects_scale():
    model = build_model("real2")
    rng = np.random.default_rng(0)
    g = random_grid(model, 1.0, 32, 0.3, rng)
    assert g.amplitudes.shape == (32, 3)
    assert np.all(np.abs(g.amplitudes) <= 0.3 * model.bounds())
    ideal = build_model("ideal2", J=1.0)
    gi = random_grid(ideal, 1.0, 32, 0.3, rng)
    assert np.all(np.abs(gi.amplitudes) <= 0.3)


def test_multistart_finds_swap12():
    model = build_model("ideal2", J=1.0)
    target = gate_target("swap12", 2)
    proto = MultiStartProtocol(((6, 40), (2, 200)), 1, 0.2)
    log = []
    res = multistart(model, target, 0.75, 128, proto, FAST, log=log)
    assert res.reached_threshold
    assert res.fidelity_sq >= 1 - 1e-5
    assert log and all("fidelity_sq" in rec for rec in log)


def test_multistart_early_exit_keeps_budget_small():
    model = build_model("ideal2", J=1.0)
    target = gate_target("iswap12", 2)
    proto = MultiStartProtocol(((10, 30), (2, 100)), 0, 0.05)
    log = []
    res = multistart(model, target, 0.5, 64, proto, FAST, log=log)
    assert res.reached_threshold
    # the tournament stops as soon as one candidate converges
    assert len(log) < 10 + 2


def test_multistart_reproducible():
    model = build_model("ideal2", J=1.0)
    target = gate_target("cnot12", 2)
    proto = MultiStartProtocol(((3, 25),), 5, 0.2)
    a = multistart(model, target, 0.6, 48, proto, FAST)
    b = multistart(model, target, 0.6, 48, proto, FAST)
    assert a.fidelity_sq == b.fidelity_sq
    assert np.array_equal(a.final_controls.amplitudes,
                          b.final_controls.amplitudes)


def test_sweep_grid_and_minimal_time():
    model = build_model("ideal2", J=1.0)
    target = gate_target("iswap12", 2)
    proto = MultiStartProtocol(((4, 30), (1, 60)), 2, 0.1)
    curve = sweep_min_time(model, target, 0.4, 0.6, 0.05, 1 - 1e-5,
                           M=64, protocol=proto, options=FAST)
    assert np.allclose(np.diff(curve.durations), 0.05)
    assert curve.durations[0] == pytest.approx(0.4)
    assert curve.minimal_time == pytest.approx(0.5)
    assert curve.minimal_time in curve.durations
    assert np.all((0 <= curve.best_fidelity) & (curve.best_fidelity <= 1))


def test_sweep_fidelities_match_repropagation():
    from gatepulse.grape import fidelity_sq, propagate

    model = build_model("ideal2", J=1.0)
    target = gate_target("cnot12", 2)
    proto = MultiStartProtocol(((2, 15),), 7, 0.2)
    curve = sweep_min_time(model, target, 0.45, 0.55, 0.05, 1 - 1e-5,
                           M=48, protocol=proto, options=FAST)
    for res, f in zip(curve.results, curve.best_fidelity):
        again = fidelity_sq(target, propagate(model, res.final_controls)[0])
        assert abs(again - f) < 1e-12


def test_sweep_threshold_never_reached():
    model = build_model("ideal2", J=1.0)
    target = gate_target("swap12", 2)
    proto = MultiStartProtocol(((2, 10),), 3, 0.1)
    curve = sweep_min_time(model, target, 0.2, 0.3, 0.05, 1 - 1e-5,
                           M=32, protocol=proto, options=FAST)
    assert curve.minimal_time is None


def test_sweep_validation():
    model = build_model("ideal2", J=1.0)
    target = gate_target("iswap12", 2)
    with pytest.raises(ValueError):
        sweep_min_time(model, target, 0.6, 0.4, 0.05, 1 - 1e-5)
    with pytest.raises(ValueError):
        sweep_min_time(model, target, 0.4, 0.6, 0.0, 1 - 1e-5)


def test_multistart_respects_bounds_and_envelope():
    model = build_model("real2")
    target = gate_target("cnot12", 2)
    proto = MultiStartProtocol(((3, 15),), 4, 0.5)
    opts = OptimizeOptions(threshold=1 - 1e-3, bounds_on=True,
                           envelope_on=True, rise_ns=4.0)
    res = multistart(model, target, 0.9, 64, proto, opts)
    box = effective_bounds(model, res.final_controls, 4.0)
    assert np.all(np.abs(res.final_controls.amplitudes) <= box + 1e-12)


def test_optimized_entanglement_endpoints():
    model = build_model("ideal3", J=1.0)
    target = gate_target("iswap13", 3)
    proto = MultiStartProtocol(((4, 60), (1, 300)), 6, 0.2)
    res = multistart(model, target, 1.2, 64, proto, FAST)
    t, e12, e23 = optimized_entanglement(model, res, ket("100"), samples=64)
    assert t[0] == 0.0 and t[-1] == pytest.approx(1.2)
    assert e12[0] == pytest.approx(0.0, abs=1e-10)
    assert e23[0] == pytest.approx(0.0, abs=1e-10)
    # the target maps |100> to a product state again
    tail_tol = max(1e-3, 10 * np.sqrt(1 - res.fidelity_sq))
    assert e12[-1] < tail_tol
    assert e23[-1] < tail_tol


def test_optimized_entanglement_validation():
    model2 = build_model("ideal2", J=1.0)
    target = gate_target("iswap12", 2)
    res = multistart(model2, target, 0.5, 32,
                     MultiStartProtocol(((1, 5),), 0, 0.05), FAST)
    with pytest.raises(ValueError):
        optimized_entanglement(model2, res, ket("10"))
