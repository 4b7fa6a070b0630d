"""Command-line front end: optimize, sweep, baseline, entangle, check."""

import argparse
import os
import sys

import numpy as np

from . import baselines, io
from .config import ConfigError, apply_overrides, load_config
from .grape import OptimizeOptions, PropagationCache, fidelity_sq, gradient
from .linalg import ket, unitarity_defect
from .models import GATE_NAMES, build_model, gate_target
from .search import MultiStartProtocol, multistart, sweep_min_time, optimized_entanglement

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BELOW_THRESHOLD = 2
EXIT_CHECK_FAILED = 3


def _add_common(p):
    p.add_argument("--config", help="run-configuration file (key = value lines)")
    for key in ("model", "gate", "units", "out", "mode", "stages"):
        p.add_argument(f"--{key}")
    for key in ("J", "T", "T_min", "T_max", "resolution", "threshold",
                "rise_ns", "init_scale", "delta_max", "omega_max"):
        p.add_argument(f"--{key}".replace("_", "-"), dest=key)
    for key in ("M", "seed", "jobs", "budget_scale"):
        p.add_argument(f"--{key}".replace("_", "-"), dest=key)
    p.add_argument("--bounds", dest="bounds", choices=["on", "off"])


def _config_from(args):
    cfg = load_config(args.config)
    pairs = []
    for key in ("model", "gate", "units", "out", "mode", "stages", "J", "T",
                "T_min", "T_max", "resolution", "threshold", "rise_ns",
                "init_scale", "delta_max", "omega_max", "M", "seed", "jobs",
                "budget_scale"):
        pairs.append((key, getattr(args, key, None)))
    bounds = getattr(args, "bounds", None)
    if bounds is not None:
        pairs.append(("bounds", bounds == "on"))
    return apply_overrides(cfg, pairs)


def _model_and_target(cfg):
    model = build_model(cfg.model, cfg.J, cfg.delta_max, cfg.omega_max)
    if not cfg.gate:
        raise ConfigError("gate", "no gate name given")
    if cfg.gate not in GATE_NAMES:
        raise ConfigError("gate", f"unknown gate {cfg.gate!r}")
    target = gate_target(cfg.gate, model.n_qubits)
    return model, target


def _options(cfg):
    envelope = cfg.is_realistic() and cfg.bounds and cfg.rise_ns > 0
    return OptimizeOptions(
        threshold=cfg.effective_threshold(),
        bounds_on=cfg.bounds,
        envelope_on=envelope,
        rise_ns=cfg.rise_ns,
        mode=cfg.mode,
    )


def _protocol(cfg):
    stages = tuple(
        (p, it * cfg.budget_scale) for p, it in cfg.stages
    ) if cfg.budget_scale != 1 else cfg.stages
    return MultiStartProtocol(stages, cfg.seed, cfg.init_scale)


def cmd_optimize(cfg):
    model, target = _model_and_target(cfg)
    if cfg.T is None:
        raise ConfigError("T", "optimize needs a single duration")
    T = cfg.duration_in_J(cfg.T)
    log = []
    res = multistart(model, target, T, cfg.M, _protocol(cfg), _options(cfg),
                     log=log)
    io.write_controls_csv(f"{cfg.out}_controls.csv", res.final_controls,
                          [c.label for c in model.channels])
    io.write_fidelity_history_csv(f"{cfg.out}_history.csv", res.fidelity_history)
    record = io.result_record(res, model, extra={
        "threshold": cfg.effective_threshold(),
        "master_seed": cfg.seed,
        "audit": log,
    })
    io.write_result_json(f"{cfg.out}_result.json", record)
    print(f"{cfg.model} {cfg.gate} T={T:g}/J F2={res.fidelity_sq:.10f} "
          f"({res.termination}, winner seed {res.seed})")
    return EXIT_OK if res.reached_threshold else EXIT_BELOW_THRESHOLD


def cmd_sweep(cfg):
    model, target = _model_and_target(cfg)
    if cfg.T_min is None or cfg.T_max is None:
        raise ConfigError("T_min", "sweep needs T_min and T_max")
    t_min = cfg.duration_in_J(cfg.T_min)
    t_max = cfg.duration_in_J(cfg.T_max)
    if t_max < t_min:
        raise ConfigError("T_max", "empty duration range")
    jobs = cfg.jobs if cfg.jobs > 0 else (os.cpu_count() or 1)
    curve = sweep_min_time(
        model, target, t_min, t_max, cfg.duration_in_J(cfg.resolution),
        cfg.effective_threshold(), cfg.M, _protocol(cfg), _options(cfg),
        jobs=jobs,
    )
    io.write_sweep_csv(f"{cfg.out}_sweep.csv", curve)
    if curve.minimal_time is not None:
        print(f"minimal time: {curve.minimal_time:g}/J "
              f"(threshold {curve.threshold:g})")
    else:
        print("threshold not reached on this duration grid")
    return EXIT_OK


def cmd_baseline(cfg):
    if not cfg.gate:
        raise ConfigError("gate", "no gate name given")
    kind = "realistic" if cfg.is_realistic() else "ideal"
    seq = baselines.sequential_gate(cfg.gate, kind, cfg.J, cfg.omega_max)
    io.write_sequence_csv(f"{cfg.out}_sequence.csv", seq)
    print(f"{cfg.gate} sequential ({kind}): T_seq = {seq.total_time:g}/J, "
          f"{len(seq.steps)} steps")
    return EXIT_OK


def cmd_entangle(cfg, scheme="sequential"):
    if cfg.gate != "iswap13":
        raise ConfigError("gate", "entanglement analysis is for iswap13")
    initial = ket("100")
    if scheme == "sequential":
        kind = "realistic" if cfg.is_realistic() else "ideal"
        seq = baselines.sequential_gate(cfg.gate, kind, cfg.J, cfg.omega_max)
        t, e12, e23 = baselines.entanglement_schedule(seq, initial, 256)
    else:
        model, target = _model_and_target(cfg)
        if cfg.T is None:
            raise ConfigError("T", "optimized entanglement needs a duration")
        res = multistart(model, target, cfg.duration_in_J(cfg.T), cfg.M,
                         _protocol(cfg), _options(cfg))
        if not res.reached_threshold:
            print(f"warning: pulse below threshold (F2={res.fidelity_sq:.6f})",
                  file=sys.stderr)
        t, e12, e23 = optimized_entanglement(model, res, initial, 256)
    io.write_negativity_csv(f"{cfg.out}_negativity.csv", t, e12, e23)
    print(f"negativity series written ({scheme}); "
          f"peak E12={e12.max():.4f} E23={e23.max():.4f}")
    return EXIT_OK


def _check_gradient(cfg, rows):
    rng = np.random.default_rng(12345)
    tol = 1e-6 if cfg.mode == "exact" else 1e-3
    M = 16
    worst = 0.0
    for kind in ("ideal2", "ideal3", "real2", "real3"):
        model = build_model(kind, cfg.J if kind.startswith("real") else 1.0)
        gate = "iswap13" if model.n_qubits == 3 else "cnot12"
        target = gate_target(gate, model.n_qubits)
        b = model.bounds()
        amp = np.where(np.isinf(b), 0.5 * model.J, 0.5 * b)
        from .grape import ControlGrid

        grid = ControlGrid(M, 0.8, rng.uniform(-amp, amp, (M, model.n_channels)))
        g = gradient(model, grid, target, cfg.mode)
        for _ in range(5):
            k, j = rng.integers(M), rng.integers(model.n_channels)
            eps = 1e-6 * max(1.0, abs(grid.amplitudes[k, j]))
            a = grid.amplitudes.copy()
            a[k, j] += eps
            fp = fidelity_sq(target, PropagationCache(model, grid.copy_with(a)).total())
            a[k, j] -= 2 * eps
            fm = fidelity_sq(target, PropagationCache(model, grid.copy_with(a)).total())
            fd = (fp - fm) / (2 * eps)
            denom = max(abs(fd), 1e-8)
            worst = max(worst, abs(fd - g[k, j]) / denom)
    rows.append(("gradient_vs_fd", worst < tol, f"max rel err {worst:.2e}"))


def _check_unitarity(cfg, rows):
    rng = np.random.default_rng(99)
    worst = 0.0
    from .grape import ControlGrid

    for kind in ("ideal2", "real3"):
        model = build_model(kind, 21.0)
        b = model.bounds()
        amp = np.where(np.isinf(b), model.J, b)
        for _ in range(3):
            grid = ControlGrid(
                64, 1.0, rng.uniform(-amp, amp, (64, model.n_channels))
            )
            worst = max(worst, unitarity_defect(PropagationCache(model, grid).total()))
    rows.append(("propagator_unitarity", worst < 1e-10, f"max defect {worst:.2e}"))


def _check_baselines(cfg, rows, corrupt=False):
    ok = True
    detail = []
    for name in GATE_NAMES:
        for kind in ("ideal", "realistic"):
            if kind == "realistic" and name == "swap13":
                continue
            try:
                seq = baselines.sequential_gate(name, kind, cfg.J, cfg.omega_max)
                target = gate_target(name, seq.n_qubits)
                f = fidelity_sq(target, seq.realized_unitary)
                if corrupt and name == "cnot12":
                    f -= 1e-3  # test hook: simulate a broken interleaving
                if f < 1 - 1e-9:
                    ok = False
                    detail.append(f"{name}/{kind} F2={f:.9f}")
            except RuntimeError as exc:
                ok = False
                detail.append(str(exc))
    rows.append(("baseline_unitaries", ok, "; ".join(detail) or "all exact"))


def cmd_check(cfg, corrupt_baseline=False):
    rows = []
    _check_gradient(cfg, rows)
    _check_unitarity(cfg, rows)
    _check_baselines(cfg, rows, corrupt=corrupt_baseline)
    rows.append(("local_decomposition", baselines.local_decomposition_check(), ""))
    width = max(len(r[0]) for r in rows)
    all_ok = True
    for name, ok, info in rows:
        print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {info}")
        all_ok &= ok
    if not all_ok:
        failing = ", ".join(r[0] for r in rows if not r[1])
        print(f"failed checks: {failing}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="gatepulse",
        description="Time-optimal multi-qubit gate pulses via gradient "
        "ascent with quasi-Newton updates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("optimize", "sweep", "baseline", "entangle", "check"):
        p = sub.add_parser(name)
        _add_common(p)
        if name == "entangle":
            p.add_argument("--scheme", choices=["sequential", "optimized"],
                           default="sequential")
        if name == "check":
            p.add_argument("--corrupt-baseline", action="store_true",
                           help="test hook: force a baseline failure")
    args = parser.parse_args(argv)
    try:
        cfg = _config_from(args)
        if args.command == "optimize":
            return cmd_optimize(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "baseline":
            return cmd_baseline(cfg)
        if args.command == "entangle":
            return cmd_entangle(cfg, args.scheme)
        return cmd_check(cfg, corrupt_baseline=args.corrupt_baseline)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
