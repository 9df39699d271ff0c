"""Angle sweeps and dynamics runs comparing the circuit path with the exact oracle.

Config files are flat ``key = value`` text, one entry per line, ``#`` starts a
comment.  Precedence is flags > file > defaults.
"""
import csv
from dataclasses import dataclass, field
import io
import math
from typing import Optional

import numpy as np

from .errors import IoFailure, ParseError, ValidationError
from .evolution import TrajectoryRecord, run_trajectory
from .model import FieldParams, SINGLET_SHELF, TRIPLET_SHELF
from .oracle import STEADY_TOL, exact_trajectory

FIELD_KEYS = ("Ax", "Ay", "Az", "B0", "phi", "gamma", "hbar", "kd")
FLOAT_KEYS = FIELD_KEYS + ("theta", "theta_min", "theta_max", "dt")
INT_KEYS = ("theta_points", "n_steps", "shots", "seed")
STR_KEYS = ("mode", "out_csv", "out_plot")
KNOWN_KEYS = FLOAT_KEYS + INT_KEYS + STR_KEYS + ("theta_grid",)

DEFAULT_THETA_POINTS = 21


@dataclass(frozen=True)
class ExperimentConfig:
    params: FieldParams = field(default_factory=FieldParams)
    theta_grid: tuple = tuple(np.linspace(0.0, math.pi, DEFAULT_THETA_POINTS))
    theta: float = math.pi / 2
    dt: float = 5e-5
    n_steps: int = 15
    mode: str = "analytic"
    shots: int = 8192
    seed: Optional[int] = 0
    out_csv: Optional[str] = None
    out_plot: Optional[str] = None

    @property
    def t_final(self):
        return self.n_steps * self.dt

    def validate(self):
        if not self.theta_grid:
            raise ValidationError("theta_grid must be non-empty")
        if any(not (0.0 <= t <= math.pi) for t in self.theta_grid):
            raise ValidationError("theta_grid values must lie in [0, pi]")
        if not (self.dt > 0):
            raise ValidationError("dt must be > 0")
        if self.n_steps < 1:
            raise ValidationError("n_steps must be >= 1")
        if self.mode not in ("analytic", "sampled"):
            raise ValidationError(f"mode must be analytic or sampled, got {self.mode!r}")
        if self.shots < 1:
            raise ValidationError("shots must be >= 1")
        if not (0.0 <= self.params.kd * self.dt <= 1.0):
            raise ValidationError("kd*dt must lie in [0, 1]")
        return self


@dataclass
class YieldCurve:
    theta: np.ndarray
    singlet: np.ndarray
    triplet: np.ndarray
    source: str
    converged: Optional[list] = None


def _read_config_file(path):
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise IoFailure(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{lineno}: expected key = value, got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ParseError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = (value, f"{path}:{lineno}")
    return values


def _convert(key, value, where):
    try:
        if key in FLOAT_KEYS:
            return float(value)
        if key in INT_KEYS:
            return int(value)
        if key == "theta_grid":
            if isinstance(value, str):
                return tuple(float(v) for v in value.split(",") if v.strip())
            return tuple(float(v) for v in value)
        return value
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: bad value for {key}: {value!r}") from exc


def parse_config(path=None, flags=None):
    """Build an ExperimentConfig from an optional file and a dict of overrides.

    Unknown keys are rejected.  Setting ``Ax`` alone keeps the axial shape of
    the hyperfine tensor (``Ay = Ax``, ``Az = 2 Ax``).
    """
    raw = _read_config_file(path) if path else {}
    for key, value in (flags or {}).items():
        if value is None:
            continue
        if key not in KNOWN_KEYS:
            raise ParseError(f"--{key.replace('_', '-')}: unknown option")
        raw[key] = (value, f"--{key.replace('_', '-')}")
    vals = {k: _convert(k, v, where) for k, (v, where) in raw.items()}

    field_kw = {k: vals[k] for k in FIELD_KEYS if k in vals}
    if "Ax" in field_kw:
        field_kw.setdefault("Ay", field_kw["Ax"])
        field_kw.setdefault("Az", 2 * field_kw["Ax"])
    params = FieldParams(**field_kw)
    cfg_kw = {}
    if "theta_grid" in vals:
        cfg_kw["theta_grid"] = vals["theta_grid"]
    elif {"theta_min", "theta_max", "theta_points"} & vals.keys():
        cfg_kw["theta_grid"] = tuple(np.linspace(
            vals.get("theta_min", 0.0),
            vals.get("theta_max", math.pi),
            vals.get("theta_points", DEFAULT_THETA_POINTS),
        ))
    for key in ("theta", "dt", "n_steps", "mode", "shots", "seed", "out_csv", "out_plot"):
        if key in vals:
            cfg_kw[key] = vals[key]
    cfg = ExperimentConfig(params=params, **cfg_kw)
    return cfg.validate()


def _oracle_yields(params, t_final, dt):
    diag = exact_trajectory(params, [max(0.0, t_final - dt), t_final])
    converged = bool(np.abs(diag[1] - diag[0]).max() < STEADY_TOL)
    return diag[1, SINGLET_SHELF], diag[1, TRIPLET_SHELF], converged


def run_angle_sweep(cfg):
    """Final yields at ``t = n_steps * dt`` for every angle, from both paths.

    Angles where the oracle has not settled are flagged in
    ``oracle.converged`` rather than raising NotConverged.
    """
    cfg.validate()
    thetas = np.asarray(cfg.theta_grid, dtype=float)
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(thetas))
    q = np.empty((len(thetas), 2))
    o = np.empty((len(thetas), 2))
    converged = []
    for i, theta in enumerate(thetas):
        p = cfg.params.with_angles(theta=theta)
        rec = run_trajectory(p, cfg.n_steps, cfg.dt, cfg.mode, cfg.shots, seeds[i])
        q[i] = rec.singlet_yield[-1], rec.triplet_yield[-1]
        s, t, ok = _oracle_yields(p, cfg.t_final, cfg.dt)
        o[i] = s, t
        converged.append(ok)
    return (
        YieldCurve(thetas, q[:, 0], q[:, 1], "quantum"),
        YieldCurve(thetas.copy(), o[:, 0], o[:, 1], "oracle", converged),
    )


def run_dynamics(cfg, theta=None):
    """Time series at one angle, sampled at every step, from both paths."""
    cfg.validate()
    theta = cfg.theta if theta is None else theta
    p = cfg.params.with_angles(theta=theta)
    quantum = run_trajectory(p, cfg.n_steps, cfg.dt, cfg.mode, cfg.shots, cfg.seed)
    oracle = TrajectoryRecord(quantum.times.copy(), exact_trajectory(p, quantum.times), source="oracle")
    return quantum, oracle


def _fmt(x):
    return f"{float(x):.12g}"


def _rows(obj):
    if isinstance(obj, TrajectoryRecord):
        for t, diag in zip(obj.times, obj.diagonals):
            yield [_fmt(t)] + [_fmt(x) for x in diag] + [
                _fmt(diag[SINGLET_SHELF]), _fmt(diag[TRIPLET_SHELF]), obj.source]
    else:
        for th, s, t in zip(obj.theta, obj.singlet, obj.triplet):
            yield [_fmt(th), _fmt(s), _fmt(t), obj.source]


def csv_header(obj):
    if isinstance(obj, TrajectoryRecord):
        return ["time_s"] + [f"pop_{i}" for i in range(obj.diagonals.shape[1])] + [
            "singlet_yield", "triplet_yield", "source"]
    return ["theta_rad", "singlet_yield", "triplet_yield", "source"]


def emit_csv(objs, path):
    """Write one or more records/curves of the same kind to a CSV file.

    Pass ``path=None`` to get the text back instead.
    """
    if isinstance(objs, (TrajectoryRecord, YieldCurve)):
        objs = [objs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(objs[0]))
    for obj in objs:
        writer.writerows(_rows(obj))
    text = buf.getvalue()
    if path is None:
        return text
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return text


def read_csv(path):
    """Parse a file written by ``emit_csv`` into a list of dicts of floats (``source`` stays text)."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [{k: (v if k == "source" else float(v)) for k, v in r.items()} for r in rows]


def _plot_series(obj):
    if isinstance(obj, TrajectoryRecord):
        return obj.times * 1e3, obj.singlet_yield, obj.triplet_yield
    return np.asarray(obj.theta), np.asarray(obj.singlet), np.asarray(obj.triplet)


def emit_plot(quantum, oracle, path):
    """SVG figure: circuit-path points as markers, oracle as lines.

    Marker groups carry the ids ``quantum-singlet`` and ``quantum-triplet``;
    the oracle lines ``oracle-singlet`` and ``oracle-triplet``.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from scipy.interpolate import CubicSpline

    xq, q_s, q_t = _plot_series(quantum)
    xo, o_s, o_t = _plot_series(oracle)
    xlabel = "time (ms)" if isinstance(quantum, TrajectoryRecord) else "theta (rad)"
    series = [("singlet", q_s, o_s, "tab:blue"), ("triplet", q_t, o_t, "tab:red")]
    with matplotlib.rc_context({"svg.fonttype": "none", "svg.hashsalt": "rpm-dilation"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        for name, yq, yo, color in series:
            if len(xo) >= 4:
                xs = np.linspace(xo[0], xo[-1], 200)
                ys = CubicSpline(xo, yo)(xs)
            else:
                xs, ys = xo, yo
            ax.plot(xs, ys, "-", color=color, label=f"{name} (exact)", gid=f"oracle-{name}")
            ax.plot(xq, yq, "o", color=color, label=f"{name} (circuit)", gid=f"quantum-{name}")
        ax.set_xlabel(xlabel)
        ax.set_ylabel("yield (shelf population)")
        ax.legend(loc="best", fontsize="small")
        fig.tight_layout()
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc}") from exc
        finally:
            plt.close(fig)
