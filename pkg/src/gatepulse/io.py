"""CSV and JSON serialization of controls, results, sweeps and
negativity time series.

All floats are written with repr (17 significant digits) so that files
round-trip exactly; CSV always uses '.' decimals and ',' separators.
"""

import csv
import json

import numpy as np

from .grape import ControlGrid


def write_controls_csv(path, grid, channel_labels):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["interval", "t_start"] + list(channel_labels))
        for k in range(grid.M):
            w.writerow(
                [k, repr(k * grid.dt)]
                + [repr(float(a)) for a in grid.amplitudes[k]]
            )


def read_controls_csv(path, T=None):
    """Read a controls CSV back into a ControlGrid.

    The total duration is M * (t_start[1] - t_start[0]) when T is not
    given (exact for the uniform grids written by write_controls_csv).
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    amps = np.array([[float(x) for x in r[2:]] for r in body])
    m = len(body)
    if T is None:
        dt = float(body[1][1]) - float(body[0][1]) if m > 1 else 0.0
        T = dt * m
    return ControlGrid(m, T, amps), header[2:]


def write_fidelity_history_csv(path, history):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["iteration", "fidelity_sq"])
        for i, f in enumerate(history):
            w.writerow([i, repr(float(f))])


def result_record(result, model, extra=None):
    """JSON-ready record of an optimization result (no timestamps, so
    identical runs serialize byte-identically)."""
    rec = {
        "model": model.kind,
        "target": result.target_name,
        "J_MHz": model.J,
        "M": result.final_controls.M,
        "T_over_J": result.final_controls.T,
        "fidelity_sq": result.fidelity_sq,
        "iterations": result.iterations,
        "seed": result.seed,
        "termination": result.termination,
        "channels": [c.label for c in model.channels],
    }
    if extra:
        rec.update(extra)
    return rec


def write_result_json(path, record):
    with open(path, "w") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_sweep_csv(path, curve):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["T_over_J", "best_F2", "reached_threshold"])
        for t, f in zip(curve.durations, curve.best_fidelity):
            w.writerow([repr(float(t)), repr(float(f)),
                        int(f >= curve.threshold)])


def write_negativity_csv(path, times, e12, e23):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "E_N_12", "E_N_23"])
        for t, a, b in zip(times, e12, e23):
            w.writerow([repr(float(t)), repr(float(a)), repr(float(b))])


def write_sequence_csv(path, seq):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["step", "kind", "qubits", "axis", "angle_deg", "duration"])
        for i, s in enumerate(seq.steps):
            w.writerow([
                i, s.kind, "+".join(map(str, s.qubits)), s.axis,
                repr(float(np.degrees(s.angle))), repr(float(s.duration)),
            ])
