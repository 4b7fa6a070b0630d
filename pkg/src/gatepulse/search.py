"""Staged multi-start optimization, minimal-time sweeps over pulse
duration, and entanglement trajectories of optimized pulses."""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .grape import (
    ControlGrid,
    OptimizeOptions,
    PropagationCache,
    effective_bounds,
    fidelity_sq,
    optimize,
)
from .linalg import density, log_negativity, partial_trace

DEFAULT_STAGES = ((50, 100), (10, 500), (2, 1000))


@dataclass(frozen=True)
class MultiStartProtocol:
    stages: tuple = DEFAULT_STAGES  # (population, iterations) per stage
    rng_seed: int = 0
    init_scale: float = 0.2  # fraction of bound (or of J when unbounded)

    def __post_init__(self):
        if not self.stages:
            raise ValueError("protocol needs at least one stage")
        pops = [p for p, _ in self.stages]
        if any(b >= a for a, b in zip(pops, pops[1:])):
            raise ValueError("stage populations must be strictly decreasing")


@dataclass
class SweepCurve:
    durations: np.ndarray  # units of 1/J, uniformly spaced
    best_fidelity: np.ndarray
    threshold: float
    minimal_time: float | None
    results: list = field(default_factory=list)


def random_grid(model, T, M, scale, rng):
    """Uniform random controls in +-scale*bound (scale*J when unbounded)."""
    b = model.bounds()
    amp = np.where(np.isinf(b), scale * model.J, scale * b)
    return ControlGrid(M, T, rng.uniform(-amp, amp, (M, model.n_channels)))


def _clip_to_box(model, grid, options):
    rise = options.rise_ns if options.envelope_on else 0.0
    if not (options.bounds_on or options.envelope_on):
        return grid
    box = effective_bounds(model, grid, rise)
    return grid.copy_with(np.clip(grid.amplitudes, -box, box))


def multistart(model, target, T, M, protocol=None, options=None,
               duration_index=0, log=None):
    """Appendix-style tournament: optimize a population of random starts,
    keep the best performers, and iterate the survivors further.

    RNG streams are derived from (rng_seed, duration_index, candidate) so
    sweeps are reproducible and candidates independent. Returns the best
    OptimizationResult; an audit trail of (stage, candidate, fidelity)
    records is appended to `log` when given.
    """
    protocol = protocol or MultiStartProtocol()
    options = options or OptimizeOptions()

    pop0, iters0 = protocol.stages[0]
    candidates = []
    for c in range(pop0):
        rng = np.random.default_rng([protocol.rng_seed, duration_index, c])
        init = _clip_to_box(
            model, random_grid(model, T, M, protocol.init_scale, rng), options
        )
        opts = OptimizeOptions(**{**options.__dict__, "max_iters": iters0})
        res = optimize(model, target, T, M, init, opts, seed=c)
        candidates.append(res)
        if log is not None:
            log.append({"stage": 0, "candidate": c, "fidelity_sq": res.fidelity_sq})
        if res.reached_threshold:
            break

    stage1_best = max(r.fidelity_sq for r in candidates)
    for stage, (pop, iters) in enumerate(protocol.stages[1:], start=1):
        best = max(candidates, key=lambda r: r.fidelity_sq)
        if best.reached_threshold:
            break
        candidates.sort(key=lambda r: r.fidelity_sq, reverse=True)
        survivors = candidates[:pop]
        candidates = []
        for res in survivors:
            opts = OptimizeOptions(**{**options.__dict__, "max_iters": iters})
            cont = optimize(
                model, target, T, M, res.final_controls, opts, seed=res.seed
            )
            cont.fidelity_history = res.fidelity_history + cont.fidelity_history[1:]
            candidates.append(cont)
            if log is not None:
                log.append({
                    "stage": stage, "candidate": cont.seed,
                    "fidelity_sq": cont.fidelity_sq,
                })
            if cont.reached_threshold:
                break

    winner = max(candidates, key=lambda r: r.fidelity_sq)
    if winner.fidelity_sq < stage1_best - 1e-12:
        warnings.warn("multistart winner below a stage-1 candidate")
    return winner


def sweep_min_time(model, target, t_min, t_max, resolution, threshold,
                   M=256, protocol=None, options=None, jobs=1, log=None):
    """Run the multi-start protocol on a uniform duration grid and report
    the smallest duration reaching the threshold fidelity."""
    if t_min > t_max:
        raise ValueError("t_min must not exceed t_max")
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    n = int(round((t_max - t_min) / resolution)) + 1
    durations = t_min + resolution * np.arange(n)
    protocol = protocol or MultiStartProtocol()
    options = options or OptimizeOptions()
    options = OptimizeOptions(**{**options.__dict__, "threshold": threshold})

    def run_point(i):
        point_log = [] if log is not None else None
        res = multistart(model, target, float(durations[i]), M, protocol,
                         options, duration_index=i, log=point_log)
        return res, point_log

    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(_sweep_job, [
                (model, target, float(durations[i]), M, protocol, options, i,
                 log is not None)
                for i in range(n)
            ]))
    else:
        outs = [run_point(i) for i in range(n)]

    results = []
    for i, (res, point_log) in enumerate(outs):
        results.append(res)
        if log is not None:
            for rec in point_log:
                log.append({"duration": float(durations[i]), **rec})

    best = np.array([r.fidelity_sq for r in results])
    reached = best >= threshold
    minimal = float(durations[np.argmax(reached)]) if reached.any() else None
    return SweepCurve(durations, best, threshold, minimal, results)


def _sweep_job(args):
    model, target, T, M, protocol, options, idx, want_log = args
    point_log = [] if want_log else None
    res = multistart(model, target, T, M, protocol, options,
                     duration_index=idx, log=point_log)
    return res, point_log


def optimized_entanglement(model, result, initial, samples=200):
    """Pairwise logarithmic negativities of the state driven by an
    optimized pulse, sampled on a uniform time grid over [0, T]."""
    if model.n_qubits != 3:
        raise ValueError("entanglement trajectories require a 3-qubit model")
    if initial.shape != (model.dim,):
        raise ValueError("initial state dimension mismatch")
    grid = result.final_controls
    if grid.n_channels != model.n_channels:
        raise ValueError("result controls do not match the model")
    cache = PropagationCache(model, grid)
    times = np.linspace(0.0, grid.T, samples)
    out = np.zeros((samples, 2))
    psi = initial.copy()
    boundaries = grid.dt * np.arange(grid.M + 1)
    for i, t in enumerate(times):
        k = min(int(np.floor(t / grid.dt + 1e-12)), grid.M - 1) if grid.T > 0 else 0
        # full intervals before k, then a partial interval
        state = psi
        for kk in range(k):
            state = cache.slices[kk] @ state
        rem = (t - boundaries[k]) / grid.dt if grid.T > 0 else 0.0
        if rem > 1e-12:
            w = cache.eigvals[k]
            v = cache.eigvecs[k]
            partial = (v * np.exp(-1j * w * rem * cache.dt_phys)) @ v.conj().T
            state = partial @ state
        rho = density(state)
        out[i, 0] = log_negativity(partial_trace(rho, (1, 2)))
        out[i, 1] = log_negativity(partial_trace(rho, (2, 3)))
    return times, out[:, 0], out[:, 1]
