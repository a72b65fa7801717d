"""Parameter sweeps, figure presets, Monte Carlo validation and CSV emission.

A sweep evaluates one MeasureRecord per grid point (coupling, mode, g, p,
tau) on the closed-form averaged states, or per (lam, p, tau) for the
noiseless witness preset.  Evaluation is data-parallel over grid lines;
rows are buffered and emitted in a fixed sort order so worker count never
changes output bytes.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import UsageError
from .evolution import (
    WernerParams,
    averaged_state,
    evolve_deterministic,
    mc_phase_factor_stats,
    werner_state,
)
from .measures import MeasureRecord, concurrence_xstate, measure_state
from .noise import AveragingMode, Coupling, NoiseParams, ou_beta

CSV_HEADER = "config,mode,g,p,lambda,tau,L,R,U,C,EW"
WITNESS_PRESET = "fig2"
NOISELESS_MODE = "Noiseless"
Z_LIMIT = 4.0


@dataclass(frozen=True)
class MCSettings:
    """Trajectory count, step size and base seed for Monte Carlo runs."""

    n_traj: int
    dt: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if self.n_traj < 1:
            raise UsageError(f"n_traj: must be positive, got {self.n_traj}")
        if not self.dt > 0:
            raise UsageError(f"dt: must be positive, got {self.dt}")
        if self.seed < 0:
            raise UsageError(f"seed: must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class SweepConfig:
    """Full description of one sweep run.

    couplings may hold one or both wirings (rows carry the value per line).
    lam_values is only consulted by the noiseless witness preset and by
    validate-mc; ordinary sweeps use the single lam.  tau_values overrides
    the uniform [0, tau_max] grid when present.
    """

    preset: str | None = None
    couplings: tuple[Coupling, ...] = (Coupling.CQN,)
    mode: AveragingMode = AveragingMode.PAPER_LITERAL
    g_values: tuple[float, ...] = (0.4,)
    p_values: tuple[float, ...] = (1.0,)
    lam: float = 1.0
    lam_values: tuple[float, ...] | None = None
    chi: float = 1.0
    tau_max: float = 20.0
    tau_points: int = 400
    tau_values: tuple[float, ...] | None = None
    mc: MCSettings | None = None
    seed: int = 0


PRESETS: dict[str, dict] = {
    "fig2": dict(couplings=(Coupling.CQN,), g_values=(), p_values=(0.4, 0.6, 0.8, 1.0),
                 lam_values=(0.25, 0.5, 1.0, 2.0), tau_max=8.0),
    "fig3": dict(couplings=(Coupling.CQN,), g_values=(0.4,), p_values=(1.0,)),
    "fig4": dict(couplings=(Coupling.CQN,), g_values=(0.01, 0.1, 0.4, 1.0), p_values=(1.0,)),
    "fig5": dict(couplings=(Coupling.CQN,), g_values=(0.1,),
                 p_values=(0.1, 0.3, 0.5, 0.7, 0.9, 0.99)),
    "fig6": dict(couplings=(Coupling.IQN,), g_values=(0.4,), p_values=(1.0,)),
    "fig7": dict(couplings=(Coupling.IQN,), g_values=(0.01, 0.1, 0.4, 1.0), p_values=(1.0,)),
    "fig8": dict(couplings=(Coupling.CQN, Coupling.IQN), g_values=(0.1,),
                 p_values=tuple(np.linspace(0.0, 1.0, 21))),
}


def preset_config(name: str, **overrides) -> SweepConfig:
    """SweepConfig for a named figure preset; keyword overrides win."""
    if name not in PRESETS:
        raise UsageError(f"preset: unknown preset {name!r} "
                         f"(choose from {', '.join(sorted(PRESETS))})")
    fields = dict(PRESETS[name])
    fields.update(overrides)
    return SweepConfig(preset=name, **fields)


def validate_config(cfg: SweepConfig) -> None:
    """Raise UsageError naming the offending field for any invalid grid."""
    if cfg.preset is not None and cfg.preset not in PRESETS:
        raise UsageError(f"preset: unknown preset {cfg.preset!r}")
    if not cfg.couplings:
        raise UsageError("config: at least one of CQN/IQN is required")
    if cfg.tau_points < 2:
        raise UsageError(f"tau_points: must be >= 2, got {cfg.tau_points}")
    if not cfg.tau_max > 0:
        raise UsageError(f"tau_max: must be positive, got {cfg.tau_max}")
    for g in cfg.g_values:
        if not g > 0:
            raise UsageError(f"g: all values must be positive, got {g}")
    for p in cfg.p_values:
        if not 0.0 <= p <= 1.0:
            raise UsageError(f"p: all values must be in [0, 1], got {p}")
    if not cfg.lam > 0:
        raise UsageError(f"lambda: must be positive, got {cfg.lam}")
    for lam in cfg.lam_values or ():
        if not lam > 0:
            raise UsageError(f"lambda: all values must be positive, got {lam}")
    for tau in cfg.tau_values or ():
        if tau < 0:
            raise UsageError(f"tau: values must be >= 0, got {tau}")
    if cfg.preset == WITNESS_PRESET:
        if not (cfg.lam_values and cfg.p_values):
            raise UsageError("lambda: the witness preset needs lambda and p value lists")
    elif not cfg.g_values:
        raise UsageError("g: at least one value is required")
    if cfg.seed < 0:
        raise UsageError(f"seed: must be non-negative, got {cfg.seed}")


@dataclass(frozen=True)
class SweepRow:
    """One CSV row: grid coordinates plus the measured record."""

    config: str
    mode: str
    g: float
    p: float
    lam: float
    record: MeasureRecord


@dataclass(frozen=True)
class SweepResult:
    rows: list[SweepRow]
    metadata: dict


def _tau_grid(cfg: SweepConfig) -> np.ndarray:
    if cfg.tau_values is not None:
        return np.asarray(cfg.tau_values, dtype=float)
    return np.linspace(0.0, cfg.tau_max, cfg.tau_points)


def _averaged_line(task) -> list[SweepRow]:
    coupling_value, mode_value, g, p, lam, taus = task
    noise = NoiseParams(g=g, lam=lam, coupling=Coupling(coupling_value),
                        mode=AveragingMode(mode_value))
    wp = WernerParams(p=p)
    rho_0 = werner_state(p)
    rows = []
    for tau in taus:
        state = averaged_state(wp, noise, tau)
        gamma = 2.0 * state.rho[0, 3].real / p if p > 0 else 1.0
        c_val = concurrence_xstate(p, gamma) if gamma > 0.0 else 0.0
        rec = measure_state(state.rho, tau, rho_0, concurrence=c_val)
        rows.append(SweepRow(config=coupling_value, mode=mode_value,
                             g=g, p=p, lam=lam, record=rec))
    return rows


def _witness_line(task) -> list[SweepRow]:
    coupling_value, lam, p, chi, taus = task
    rho_0 = werner_state(p)
    rows = []
    for tau in taus:
        state = evolve_deterministic(p, tau, kappa=0.0, lam=lam, chi_a=chi, chi_b=chi)
        rec = measure_state(state.rho, tau, rho_0)
        rows.append(SweepRow(config=coupling_value, mode=NOISELESS_MODE,
                             g=0.0, p=p, lam=lam, record=rec))
    return rows


def _row_sort_key(row: SweepRow):
    return (row.g, row.p, row.record.tau, row.lam, row.config, row.mode)


def _metadata(cfg: SweepConfig) -> dict:
    meta = {
        "version": __version__,
        "preset": cfg.preset,
        "config": [c.value for c in cfg.couplings],
        "mode": cfg.mode.value,
        "g_values": list(cfg.g_values),
        "p_values": [float(p) for p in cfg.p_values],
        "lambda": cfg.lam,
        "lambda_values": list(cfg.lam_values) if cfg.lam_values else None,
        "chi": cfg.chi,
        "tau_max": cfg.tau_max,
        "tau_points": cfg.tau_points,
        "tau_values": list(cfg.tau_values) if cfg.tau_values else None,
        "mc": asdict(cfg.mc) if cfg.mc else None,
        "seed": cfg.seed,
    }
    return meta


def run_sweep(cfg: SweepConfig, workers: int = 1) -> SweepResult:
    """Evaluate the full Cartesian grid; deterministic for a given config."""
    validate_config(cfg)
    taus = _tau_grid(cfg)
    if cfg.preset == WITNESS_PRESET:
        worker = _witness_line
        coupling_value = cfg.couplings[0].value
        tasks = [(coupling_value, lam, p, cfg.chi, taus)
                 for lam in cfg.lam_values for p in cfg.p_values]
    else:
        worker = _averaged_line
        tasks = [(c.value, cfg.mode.value, g, p, cfg.lam, taus)
                 for c in cfg.couplings for g in cfg.g_values for p in cfg.p_values]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(worker, tasks))
    else:
        chunks = [worker(t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=_row_sort_key)
    return SweepResult(rows=rows, metadata=_metadata(cfg))


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def csv_text(result: SweepResult) -> str:
    lines = [CSV_HEADER]
    for row in result.rows:
        rec = row.record
        lines.append(",".join((
            row.config, row.mode, _fmt(row.g), _fmt(row.p), _fmt(row.lam),
            _fmt(rec.tau), _fmt(rec.left), _fmt(rec.right), _fmt(rec.tightness),
            _fmt(rec.concurrence), _fmt(rec.witness))))
    return "\n".join(lines) + "\n"


def emit_csv(result: SweepResult, path) -> None:
    """Write the sweep as CSV.  Header is fixed; floats use 12 significant digits."""
    try:
        with open(path, "w", newline="") as fh:
            fh.write(csv_text(result))
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path!r}: {exc}") from exc


def write_metadata(result: SweepResult, path) -> None:
    """Deterministic JSON sidecar echoing the configuration."""
    try:
        with open(path, "w", newline="") as fh:
            json.dump(result.metadata, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write metadata to {path!r}: {exc}") from exc


@dataclass(frozen=True)
class MCCheck:
    """One Monte Carlo vs closed-form comparison of the corner phase factor."""

    config: str
    g: float
    lam: float
    tau: float
    n_traj: int
    mc_real: float
    se_real: float
    target: float
    z: float


@dataclass(frozen=True)
class MCValidationReport:
    checks: list[MCCheck]
    z_limit: float = Z_LIMIT
    metadata: dict = field(default_factory=dict)

    @property
    def max_abs_z(self) -> float:
        return max((abs(c.z) for c in self.checks), default=0.0)

    @property
    def ok(self) -> bool:
        return all(math.isfinite(c.z) for c in self.checks) and self.max_abs_z <= self.z_limit

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "max_abs_z": self.max_abs_z,
            "z_limit": self.z_limit,
            "checks": [asdict(c) for c in self.checks],
            "metadata": self.metadata,
        }


def run_mc_validation(cfg: SweepConfig) -> MCValidationReport:
    """Compare Monte Carlo corner estimates to the Gaussian closed form.

    Per (coupling, g) the trajectories are sampled once and reused across
    all lambda and tau checkpoints (the per-trajectory streams make the
    estimates identical to independent single-tau runs).  The targets are
    exp(-8*lam^2*beta) for CQN and exp(-4*lam^2*beta) for IQN.
    """
    validate_config(cfg)
    if cfg.mc is None:
        raise UsageError("mc: Monte Carlo settings are required for validation")
    if cfg.mc.n_traj < 100:
        raise UsageError(f"n_traj: need at least 100 trajectories, got {cfg.mc.n_traj}")
    taus = tuple(cfg.tau_values) if cfg.tau_values is not None else (1.0, 2.0, 5.0)
    lams = tuple(cfg.lam_values) if cfg.lam_values is not None else (cfg.lam,)
    checks = []
    for coupling in cfg.couplings:
        for g in cfg.g_values:
            stats = mc_phase_factor_stats(coupling, g, lams, taus,
                                          cfg.mc.n_traj, cfg.mc.dt, cfg.mc.seed)
            for st in stats:
                rate = 8.0 * st.lam ** 2 if coupling is Coupling.CQN else 4.0 * st.lam ** 2
                target = math.exp(-rate * ou_beta(g, st.tau))
                err = st.mean.real - target
                if st.se_real > 0.0:
                    z = err / st.se_real
                else:
                    z = 0.0 if err == 0.0 else math.inf
                checks.append(MCCheck(config=coupling.value, g=g, lam=st.lam,
                                      tau=st.tau, n_traj=st.n_traj,
                                      mc_real=st.mean.real, se_real=st.se_real,
                                      target=target, z=z))
    return MCValidationReport(checks=checks, metadata=_metadata(cfg))


_CONFIG_KEYS = {
    "preset", "config", "mode", "g_values", "p_values", "lambda", "lambda_values",
    "chi", "tau_max", "tau_points", "tau_values", "mc", "seed",
}


def parse_couplings(text: str) -> tuple[Coupling, ...]:
    """'CQN', 'IQN' or 'both' -> coupling tuple."""
    if text == "both":
        return (Coupling.CQN, Coupling.IQN)
    try:
        return (Coupling(text),)
    except ValueError:
        raise UsageError(f"config: expected CQN, IQN or both, got {text!r}") from None


def config_from_mapping(data: dict) -> dict:
    """Normalize a JSON mapping mirroring SweepConfig into constructor kwargs."""
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"config file: unknown keys {sorted(unknown)}")
    kwargs: dict = {}
    if "preset" in data and data["preset"] is not None:
        kwargs["preset"] = str(data["preset"])
    if "config" in data:
        kwargs["couplings"] = parse_couplings(str(data["config"]))
    if "mode" in data:
        try:
            kwargs["mode"] = AveragingMode(str(data["mode"]))
        except ValueError:
            raise UsageError(f"mode: expected PaperLiteral or GaussianExact, "
                             f"got {data['mode']!r}") from None
    for key, attr in (("g_values", "g_values"), ("p_values", "p_values"),
                      ("lambda_values", "lam_values"), ("tau_values", "tau_values")):
        if key in data and data[key] is not None:
            kwargs[attr] = tuple(float(v) for v in data[key])
    for key, attr in (("lambda", "lam"), ("chi", "chi"), ("tau_max", "tau_max")):
        if key in data and data[key] is not None:
            kwargs[attr] = float(data[key])
    for key, attr in (("tau_points", "tau_points"), ("seed", "seed")):
        if key in data and data[key] is not None:
            kwargs[attr] = int(data[key])
    if data.get("mc") is not None:
        mc = data["mc"]
        extra = set(mc) - {"n_traj", "dt", "seed"}
        if extra:
            raise UsageError(f"config file: unknown mc keys {sorted(extra)}")
        kwargs["mc"] = MCSettings(n_traj=int(mc.get("n_traj", 0)),
                                  dt=float(mc.get("dt", 0.01)),
                                  seed=int(mc.get("seed", 0)))
    return kwargs


def load_config_file(path) -> dict:
    """Read a JSON config file into SweepConfig kwargs."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise OSError(f"cannot read config file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file {path!r} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config file {path!r} must hold a JSON object")
    return config_from_mapping(data)
