"""Pulse propagation, trace fidelity, analytic gradients and the
box-bounded LBFGS ascent loop.

Controls are piecewise constant on M uniform intervals. Durations are in
units of 1/J and amplitudes in MHz, so the physical interval length in
microseconds is (T/M)/J.
"""

from dataclasses import dataclass, field

import numpy as np

from .models import ControlModel, GateTarget


@dataclass
class ControlGrid:
    M: int
    T: float  # duration in units of 1/J
    amplitudes: np.ndarray  # (M, K) real, MHz

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=float)
        if self.amplitudes.shape[0] != self.M:
            raise ValueError("amplitude row count must equal M")

    @property
    def n_channels(self):
        return self.amplitudes.shape[1]

    @property
    def dt(self):
        return self.T / self.M

    def t_starts(self):
        return self.dt * np.arange(self.M)

    def copy_with(self, amplitudes):
        return ControlGrid(self.M, self.T, np.array(amplitudes, dtype=float))


def zero_grid(model, T, M):
    return ControlGrid(M, T, np.zeros((M, model.n_channels)))


def rise_envelope_values(M, T, rise_ns, J):
    """Trapezoidal envelope sampled at interval midpoints.

    The ramp spans rise_ns at each end (converted to 1/J units via J in
    MHz). The first and last intervals are forced to exactly zero so that
    enveloped pulses start and end at zero amplitude.
    """
    if rise_ns < 0:
        raise ValueError("rise time must be nonnegative")
    if rise_ns == 0:
        return np.ones(M)
    rise = rise_ns * J / 1000.0  # ns -> units of 1/J
    if rise > T / 2:
        raise ValueError("rise time exceeds half the pulse duration")
    dt = T / M
    mid = dt * (np.arange(M) + 0.5)
    env = np.minimum(np.minimum(mid / rise, (T - mid) / rise), 1.0)
    env = np.clip(env, 0.0, 1.0)
    env[0] = 0.0
    env[-1] = 0.0
    return env


def apply_rise_envelope(grid, rise_ns, J):
    """Scale every interval's amplitudes by the trapezoidal envelope."""
    env = rise_envelope_values(grid.M, grid.T, rise_ns, J)
    return grid.copy_with(grid.amplitudes * env[:, None])


def effective_bounds(model, grid, rise_ns=0.0):
    """(M, K) amplitude bounds; inf where unbounded, envelope-scaled when
    a rise time is active."""
    b = np.broadcast_to(model.bounds(), (grid.M, model.n_channels)).copy()
    if rise_ns > 0:
        env = rise_envelope_values(grid.M, grid.T, rise_ns, model.J)
        with np.errstate(invalid="ignore"):
            b = env[:, None] * b
        b[env == 0, :] = 0.0
    return b


class PropagationCache:
    """Per-interval eigensystems and propagators retained for gradient reuse."""

    def __init__(self, model, grid):
        if grid.n_channels != model.n_channels:
            raise ValueError("grid channel count does not match model")
        self.model = model
        self.grid = grid
        self.dt_phys = grid.dt / model.J  # microseconds
        ops = np.stack([c.operator for c in model.channels])
        h = model.drift[None, :, :] + np.einsum(
            "mk,kij->mij", grid.amplitudes, ops, optimize=True
        )
        self.eigvals, self.eigvecs = np.linalg.eigh(h)
        phases = np.exp(-1j * self.eigvals * self.dt_phys)
        self.slices = np.einsum(
            "mip,mp,mjp->mij", self.eigvecs, phases, self.eigvecs.conj(), optimize=True
        )

    def total(self):
        u = np.eye(self.model.dim, dtype=complex)
        for k in range(self.grid.M):
            u = self.slices[k] @ u
        return u


def propagate(model, grid):
    """Total evolution operator and the cached per-interval propagators."""
    cache = PropagationCache(model, grid)
    return cache.total(), cache


def fidelity_sq(target, u):
    """Squared trace fidelity |tr(target† u) / N|^2."""
    t = target.matrix if isinstance(target, GateTarget) else target
    if t.shape != u.shape:
        raise ValueError("dimension mismatch between target and unitary")
    n = t.shape[0]
    overlap = np.trace(t.conj().T @ u) / n
    return float(np.abs(overlap) ** 2)


def _trace_overlap(target, u):
    t = target.matrix if isinstance(target, GateTarget) else target
    return np.trace(t.conj().T @ u) / t.shape[0]


def _exp_divided_difference(w, dt):
    """Divided-difference table of exp(-i w dt) over eigenvalue pairs."""
    lam = w[..., :, None]
    mu = w[..., None, :]
    diff = lam - mu
    e_lam = np.exp(-1j * lam * dt)
    e_mu = np.exp(-1j * mu * dt)
    small = np.abs(diff) < 1e-9
    safe = np.where(small, 1.0, diff)
    table = (e_lam - e_mu) / safe
    # confluent limit: derivative of exp(-i x dt) at the midpoint
    mid = (lam + mu) / 2
    table = np.where(small, -1j * dt * np.exp(-1j * mid * dt), table)
    return table


def gradient(model, grid, target, mode="exact", cache=None):
    """Gradient of the squared trace fidelity w.r.t. every amplitude.

    exact: directional derivative of each interval exponential from its
    eigendecomposition. first_order: the O(dt) insertion -i dt H_j U_k.
    """
    if mode not in ("exact", "first_order"):
        raise ValueError(f"unknown gradient mode {mode!r}")
    if cache is None:
        cache = PropagationCache(model, grid)
    M, dim = grid.M, model.dim
    slices = cache.slices

    # prefix[k] = U_k ... U_1 (prefix[0] = 1), suffix[k] = U_M ... U_{k+1}
    prefix = np.empty((M + 1, dim, dim), dtype=complex)
    suffix = np.empty((M + 1, dim, dim), dtype=complex)
    prefix[0] = np.eye(dim)
    suffix[M] = np.eye(dim)
    for k in range(M):
        prefix[k + 1] = slices[k] @ prefix[k]
        suffix[M - 1 - k] = suffix[M - k] @ slices[M - 1 - k]

    u_total = prefix[M]
    tmat = target.matrix if isinstance(target, GateTarget) else target
    g = np.trace(tmat.conj().T @ u_total) / dim
    adag = tmat.conj().T

    # lam[k] = prefix[k-1] @ A† @ suffix[k]; d g/d u = tr(lam_k dU_k) / N
    lam = np.einsum(
        "mij,jk,mkl->mil", prefix[:M], adag, suffix[1:], optimize=True
    )
    ops = np.stack([c.operator for c in model.channels])
    dt = cache.dt_phys

    if mode == "first_order":
        ulam = np.einsum("mij,mjk->mik", slices, lam, optimize=True)
        tr = np.einsum("mik,jki->mj", ulam, ops, optimize=True)
        dg = -1j * dt * tr / dim
    else:
        v = cache.eigvecs
        table = _exp_divided_difference(cache.eigvals, dt)
        # channel operators in each interval's eigenbasis
        b = np.einsum("mip,jik,mkq->mjpq", v.conj(), ops, v, optimize=True)
        lam_t = np.einsum("mip,mij,mjq->mpq", v.conj(), lam, v, optimize=True)
        dg = np.einsum("mpq,mqp,mjqp->mj", lam_t, table, b, optimize=True) / dim

    return 2 * np.real(dg * np.conj(g))


@dataclass
class OptimizeOptions:
    max_iters: int = 1000
    threshold: float = 1.0 - 1e-5
    bounds_on: bool = True
    envelope_on: bool = False
    rise_ns: float = 0.0
    lbfgs_memory: int = 20
    mode: str = "exact"  # gradient mode
    method: str = "lbfgs"  # or "steepest"
    armijo_c: float = 1e-4
    shrink: float = 0.5
    max_line_trials: int = 30


@dataclass
class OptimizationResult:
    final_controls: ControlGrid
    fidelity_sq: float
    fidelity_history: list
    iterations: int
    seed: int | None
    termination: str
    model_kind: str = ""
    target_name: str = ""

    @property
    def reached_threshold(self):
        return self.termination == "threshold_reached"


def _two_loop(grad, memory, gamma):
    q = grad.copy()
    alphas = []
    for s, y, rho in reversed(memory):
        a = rho * np.dot(s, q)
        alphas.append(a)
        q -= a * y
    q *= gamma
    for (s, y, rho), a in zip(memory, reversed(alphas)):
        beta = rho * np.dot(y, q)
        q += (a - beta) * s
    return q


def optimize(model, target, T, M, initial=None, options=None, seed=None):
    """Ascend the squared trace fidelity with projected LBFGS.

    After every accepted step the amplitudes are clipped to their
    (envelope-scaled) box bounds; whenever the projection is active the
    LBFGS memory is flushed, since curvature pairs straddling the bound
    are unreliable.
    """
    opts = options or OptimizeOptions()
    if initial is None:
        initial = zero_grid(model, T, M)
    if initial.n_channels != model.n_channels:
        raise ValueError("initial grid channel count does not match model")

    rise = opts.rise_ns if opts.envelope_on else 0.0
    if opts.bounds_on or opts.envelope_on:
        box = effective_bounds(model, initial, rise)
    else:
        box = None

    def project(a):
        if box is None:
            return a
        return np.clip(a, -box, box)

    x = initial.amplitudes.copy()
    if box is not None:
        if np.any(np.abs(x) > box * (1 + 1e-12) + 1e-15):
            raise ValueError("initial controls violate the amplitude bounds")
        x = project(x)

    shape = x.shape

    def evaluate(a):
        grid = initial.copy_with(a)
        cache = PropagationCache(model, grid)
        f = fidelity_sq(target, cache.total())
        if not np.isfinite(f):
            raise FloatingPointError("non-finite fidelity encountered")
        return f, cache

    # Per-channel amplitude scale used to size the first (steepest-descent)
    # step.  The raw gradient norm depends on the time-grid units and can be
    # many orders of magnitude smaller than the control amplitudes, so an
    # unscaled steepest step would barely move the controls and would seed
    # the LBFGS memory with noise-dominated curvature pairs.
    chan_bounds = model.bounds()
    amp_scale = np.where(np.isfinite(chan_bounds), chan_bounds, model.J)
    amp_scale = np.maximum(amp_scale, 1e-30)

    def reduce_grad(grad_min, xflat):
        """Zero gradient entries on the active set of the box constraints.

        A coordinate sitting at a bound whose gradient pushes it outward is
        frozen; the quasi-Newton step then acts only on the free variables,
        so projection (and the memory flush it triggers) only occurs when a
        step runs into a bound that was not active before.
        """
        if box is None:
            return grad_min
        b = box.ravel()
        gr = grad_min.copy()
        at_upper = (xflat >= b - 1e-15) & (gr < 0)
        at_lower = (xflat <= -b + 1e-15) & (gr > 0)
        gr[at_upper | at_lower] = 0.0
        return gr

    def scaled_steepest(grad_min):
        d = -grad_min.reshape(shape)
        for c in range(shape[1]):
            peak = np.max(np.abs(d[:, c]))
            if peak > 0:
                d[:, c] *= 0.05 * amp_scale[c] / peak
        return d.ravel()

    f, cache = evaluate(x)
    history = [f]
    memory = []
    g = None
    grad_f = None
    iterations = 0
    termination = "max_iters"

    for _ in range(opts.max_iters):
        if f >= opts.threshold:
            termination = "threshold_reached"
            break
        if grad_f is None:
            grad_f = gradient(model, initial.copy_with(x), target, opts.mode, cache)
        g_full = -grad_f.ravel()  # minimize -F^2
        g = reduce_grad(g_full, x.ravel())
        gnorm = np.linalg.norm(g)
        if gnorm == 0.0:
            termination = "line_search_failure"
            break

        if opts.method == "steepest" or not memory:
            d = scaled_steepest(g)
        else:
            s0, y0, _ = memory[-1]
            gamma = np.dot(s0, y0) / np.dot(y0, y0)
            d = -_two_loop(g, memory, gamma)
            if np.dot(d, g) >= 0:  # not a descent direction
                memory.clear()
                d = scaled_steepest(g)
        if box is not None:
            # Bend the trial step onto the feasible box before the line
            # search: d <- P(x + d) - x.  The box is convex and x is
            # feasible, so every point x + alpha*d with alpha in [0, 1]
            # stays feasible; the post-step projection is then a no-op and
            # the LBFGS memory is not needlessly flushed by the tiny
            # envelope bounds near the pulse edges.
            d = project((x.ravel() + d).reshape(shape)).ravel() - x.ravel()
            if np.dot(d, g_full) >= 0:
                memory.clear()
                d = scaled_steepest(g)
                d = project((x.ravel() + d).reshape(shape)).ravel() - x.ravel()

        alpha = 1.0
        accepted = None
        for _trial in range(opts.max_line_trials):
            cand = project((x.ravel() + alpha * d).reshape(shape))
            step = cand.ravel() - x.ravel()
            pred = np.dot(g, step)
            if pred >= 0:
                alpha *= opts.shrink
                continue
            f_new, cache_new = evaluate(cand)
            if -f_new <= -f + opts.armijo_c * pred:
                accepted = (cand, f_new, cache_new, step)
                break
            alpha *= opts.shrink
        if accepted is None:
            termination = "line_search_failure"
            break

        cand, f_new, cache_new, step = accepted
        projected = not np.allclose(
            cand.ravel(), x.ravel() + alpha * d, rtol=0.0, atol=1e-14
        )
        grad_new = gradient(model, initial.copy_with(cand), target, opts.mode, cache_new)
        g_new_full = -grad_new.ravel()
        g_new = reduce_grad(g_new_full, cand.ravel())
        if projected:
            memory.clear()
        else:
            s = step
            # Curvature pairs use the unmasked gradients: the reduced
            # gradient jumps whenever the active set changes, which would
            # poison the quasi-Newton curvature estimates.
            y = g_new_full - g_full
            sy = np.dot(s, y)
            if sy > 1e-12 * np.linalg.norm(s) * np.linalg.norm(y):
                memory.append((s, y, 1.0 / sy))
                if len(memory) > opts.lbfgs_memory:
                    memory.pop(0)
        x, f, cache, g = cand, f_new, cache_new, g_new
        grad_f = grad_new
        iterations += 1
        history.append(f)
    else:
        termination = "max_iters"

    if f >= opts.threshold:
        termination = "threshold_reached"

    final = initial.copy_with(x)
    return OptimizationResult(
        final_controls=final,
        fidelity_sq=f,
        fidelity_history=history,
        iterations=iterations,
        seed=seed,
        termination=termination,
        model_kind=model.kind,
        target_name=target.name if isinstance(target, GateTarget) else "",
    )
