"""Experiment configuration, result tables and the command implementations
behind the command-line interface."""

from __future__ import annotations

import configparser
import csv
import dataclasses
import io
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from . import fv
from .errors import ConfigurationError, DomainError, RiemannError
from .exact import RiemannProblem, WavePattern, sample_profile, solve
from .gas import PolytropicEos
from .pressureless import solve_pressureless
from .vanishing import CriticalKappa, check_schedule, critical_kappa, geometric_schedule

log = logging.getLogger(__name__)

CRITICAL = "critical"
KappaSpec = Union[float, str]

DATA1 = RiemannProblem.from_values(1.0, 0.8, 0.5, 1.0)
DATA2 = RiemannProblem.from_values(0.2, 1.5, 0.7, 1.0)

DESK_DX = 1e-3
REFERENCE_DX = 1e-4
REFERENCE_DT = 2e-5
DESK_SCHEME = fv.SchemeConfig(cfl=0.9, theta=1.0)
REFERENCE_SCHEME = fv.SchemeConfig(dt=REFERENCE_DT, theta=0.5)

PROFILE_COLUMNS = ("x", "rho", "v", "momentum")
SWEEP_COLUMNS = ("kappa", "pattern", "rho_star", "v_star", "max_density")


# ---------------------------------------------------------------- config


@dataclass(frozen=True)
class ExperimentConfig:
    rho_l: float = 1.0
    v_l: float = 0.8
    rho_r: float = 0.5
    v_r: float = 1.0
    gamma: float = 1.4
    kappa: Optional[KappaSpec] = 0.6
    kappa_schedule: Optional[tuple[KappaSpec, ...]] = None
    critical_snap_rtol: float = 1e-2
    x_min: float = -0.5
    x_max: float = 1.5
    nx: int = 2000
    t_final: float = 0.63
    sweep_mode: str = "exact"
    dt: Optional[float] = None
    cfl: Optional[float] = None
    theta: Optional[float] = None
    vacuum_floor: float = 1e-12
    boundary: str = "outflow"
    out: str = "results"

    def __post_init__(self):
        self.validate()

    @property
    def problem(self) -> RiemannProblem:
        return RiemannProblem.from_values(self.rho_l, self.v_l, self.rho_r, self.v_r)

    @property
    def grid(self) -> fv.Grid1D:
        return fv.Grid1D(self.x_min, self.x_max, self.nx)

    def scheme(self, default: fv.SchemeConfig = fv.SchemeConfig()) -> fv.SchemeConfig:
        """Scheme from the configured fields; unset fields come from ``default``."""
        if self.dt is None and self.cfl is None:
            dt, cfl = default.dt, default.cfl
        else:
            dt, cfl = self.dt, self.cfl
        theta = self.theta if self.theta is not None else default.theta
        return fv.SchemeConfig(dt=dt, cfl=cfl, theta=theta, vacuum_floor=self.vacuum_floor, boundary=self.boundary)

    def validate(self) -> None:
        try:
            PolytropicEos(1.0, self.gamma)
            self.problem
            self.grid
            self.scheme()
            for k in ([self.kappa] if self.kappa is not None else []) + list(self.kappa_schedule or ()):
                _check_kappa_spec(k)
        except DomainError as exc:
            raise ConfigurationError(str(exc)) from exc
        if not self.t_final > 0.0:
            raise ConfigurationError("t_final must be positive")
        if self.sweep_mode not in ("exact", "fv"):
            raise ConfigurationError("sweep_mode must be 'exact' or 'fv'")
        if not self.critical_snap_rtol >= 0.0:
            raise ConfigurationError("critical_snap_rtol must be nonnegative")


def _check_kappa_spec(k: KappaSpec) -> None:
    if isinstance(k, str):
        if k != CRITICAL:
            raise ConfigurationError(f"unknown kappa token {k!r}")
    elif not (isinstance(k, (int, float)) and math.isfinite(k) and k > 0.0):
        raise ConfigurationError(f"kappa must be positive, got {k!r}")


# section -> key -> field name
_LAYOUT = {
    "problem": ("rho_l", "v_l", "rho_r", "v_r"),
    "gas": ("gamma", "kappa", "kappa_schedule", "critical_snap_rtol"),
    "grid": ("x_min", "x_max", "nx"),
    "run": ("t_final", "sweep_mode"),
    "scheme": ("dt", "cfl", "theta", "vacuum_floor", "boundary"),
    "output": ("out",),
}
_FLOAT = {"rho_l", "v_l", "rho_r", "v_r", "gamma", "critical_snap_rtol", "x_min", "x_max",
          "t_final", "dt", "cfl", "theta", "vacuum_floor"}
_OPTIONAL = {"kappa", "kappa_schedule", "dt", "cfl", "theta"}


def parse_kappa(token: str) -> KappaSpec:
    token = token.strip()
    if token.lower() == CRITICAL:
        return CRITICAL
    try:
        return float(token)
    except ValueError:
        raise ConfigurationError(f"invalid kappa value {token!r}") from None


def parse_schedule(text: str) -> tuple[KappaSpec, ...]:
    items = [s for s in (t.strip() for t in text.split(",")) if s]
    return tuple(parse_kappa(s) for s in items)


def _parse_value(name: str, raw: str):
    raw = raw.strip()
    if name in _OPTIONAL and raw.lower() in ("", "none"):
        return None
    try:
        if name == "nx":
            return int(raw)
        if name in _FLOAT:
            return float(raw)
    except ValueError:
        raise ConfigurationError(f"invalid value for {name}: {raw!r}") from None
    if name == "kappa":
        return parse_kappa(raw)
    if name == "kappa_schedule":
        return parse_schedule(raw)
    return raw


def parse_config(text: str, base: Optional[ExperimentConfig] = None) -> ExperimentConfig:
    """Parse ``[section]`` / ``key = value`` text; unknown sections or keys are errors."""
    parser = configparser.ConfigParser(interpolation=None, default_section="__none__")
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"malformed config: {exc}") from exc
    values = {}
    for section in parser.sections():
        if section not in _LAYOUT:
            raise ConfigurationError(f"unknown section [{section}]")
        for key, raw in parser.items(section):
            if key not in _LAYOUT[section]:
                raise ConfigurationError(f"unknown key {key!r} in [{section}]")
            values[key] = _parse_value(key, raw)
    return dataclasses.replace(base or ExperimentConfig(), **values)


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def _format_value(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, tuple):
        return ", ".join(_format_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_config(cfg: ExperimentConfig) -> str:
    lines = []
    for section, keys in _LAYOUT.items():
        lines.append(f"[{section}]")
        lines.extend(f"{k} = {_format_value(getattr(cfg, k))}" for k in keys)
        lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------- tables


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if value is None:
        return ""
    return str(value)


@dataclass
class ResultTable:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def validate(self) -> None:
        if "x" in self.columns:
            x = self.column("x")
            if any(b <= a for a, b in zip(x, x[1:])):
                raise DomainError("profile x values must be strictly increasing")
        if "kappa" in self.columns:
            k = self.column("kappa")
            if any(b >= a for a, b in zip(k, k[1:])):
                raise DomainError("sweep kappa values must be strictly decreasing")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def write_csv(self, path: Union[str, Path]) -> Path:
        self.validate()
        path = Path(path)
        path.write_text(self.to_csv())
        return path


def read_csv(path: Union[str, Path]) -> ResultTable:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        columns = tuple(next(reader))
        rows = []
        for raw in reader:
            row = []
            for name, s in zip(columns, raw):
                if name == "pattern":
                    row.append(s)
                else:
                    row.append(float(s) if s != "" else None)
            rows.append(tuple(row))
    return ResultTable(columns, rows)


def profile_table(x: np.ndarray, rho: np.ndarray, v: np.ndarray) -> ResultTable:
    rows = [(float(a), float(b), float(c), float(b * c)) for a, b, c in zip(x, rho, v)]
    return ResultTable(PROFILE_COLUMNS, rows)


# ---------------------------------------------------------------- commands


@dataclass(frozen=True)
class ResolvedKappa:
    value: float
    critical: bool
    requested: KappaSpec


def resolve_kappa(spec: KappaSpec, problem: RiemannProblem, gamma: float, snap_rtol: float) -> ResolvedKappa:
    """Turn a kappa entry into a number.

    ``"critical"`` selects the critical coefficient of the data, and a value
    within ``snap_rtol`` of it (such as a rounded 0.14 or 0.068) is replaced
    by the exact critical value.
    """
    crit = critical_kappa(problem, gamma)
    if spec == CRITICAL:
        if crit is None:
            raise ConfigurationError("these Riemann data have no critical kappa")
        return ResolvedKappa(crit.value, True, spec)
    if crit is not None and abs(spec - crit.value) <= snap_rtol * crit.value:
        log.info("kappa=%r snapped to critical value %r", spec, crit.value)
        return ResolvedKappa(crit.value, True, spec)
    return ResolvedKappa(float(spec), False, spec)


def _critical_meta(crit: Optional[CriticalKappa]) -> Optional[dict]:
    if crit is None:
        return None
    return {"kind": crit.kind.value, "value": crit.value}


def _metadata(cfg: ExperimentConfig, command: str, **extra) -> dict:
    meta = {
        "command": command,
        "config": {k: (list(v) if isinstance(v, tuple) else v) for k, v in dataclasses.asdict(cfg).items()},
        "critical_kappa": _critical_meta(critical_kappa(cfg.problem, cfg.gamma)),
    }
    meta.update(extra)
    return meta


def write_metadata(out: Path, meta: dict, name: str = "metadata.json") -> Path:
    path = out / name
    path.write_text(json.dumps(meta, indent=2, sort_keys=True, default=_json_default) + "\n")
    return path


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, WavePattern):
        return obj.value
    raise TypeError(f"not serialisable: {type(obj)!r}")


def _out_dir(cfg: ExperimentConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _single_kappa(cfg: ExperimentConfig) -> ResolvedKappa:
    if cfg.kappa is None:
        raise ConfigurationError("a single kappa is required for this command")
    return resolve_kappa(cfg.kappa, cfg.problem, cfg.gamma, cfg.critical_snap_rtol)


def cmd_exact(cfg: ExperimentConfig, write: bool = True) -> tuple[ResultTable, dict]:
    """Exact solution: pattern, star state, wave speeds and a sampled profile."""
    k = _single_kappa(cfg)
    problem = cfg.problem
    sol = solve(PolytropicEos(k.value, cfg.gamma), problem)
    x = cfg.grid.centers
    rho, v = sample_profile(sol, x / cfg.t_final)
    table = profile_table(x, rho, v)
    summary = {
        "pattern": sol.pattern.value,
        "degenerate": sol.pattern.is_degenerate,
        "kappa": k.value,
        "kappa_requested": k.requested,
        "kappa_is_critical": k.critical,
        "rho_star": sol.star.rho if sol.star else None,
        "v_star": sol.star.v if sol.star else None,
        "wave_speeds": [[label, list(s) if isinstance(s, tuple) else s] for label, s in sol.wave_speeds],
    }
    pl = solve_pressureless(problem)
    summary["pressureless"] = {
        "tag": pl.tag.value,
        "sigma": pl.delta.sigma if pl.delta else None,
        "weight_rate": pl.delta.weight_rate if pl.delta else None,
        "contact_speeds": list(pl.contact_speeds) if pl.contact_speeds else None,
    }
    meta = _metadata(cfg, "exact", result=summary)
    if write:
        out = _out_dir(cfg)
        table.write_csv(out / "exact_profile.csv")
        write_metadata(out, meta)
    return table, meta


def cmd_fv(cfg: ExperimentConfig, write: bool = True,
           default_scheme: fv.SchemeConfig = fv.SchemeConfig()) -> tuple[ResultTable, dict]:
    """Finite-volume run to ``t_final`` with conservation audit and L1 error."""
    if cfg.kappa_schedule is not None and len(cfg.kappa_schedule) == 0:
        raise ConfigurationError("empty kappa schedule")
    k = _single_kappa(cfg)
    eos = PolytropicEos(k.value, cfg.gamma)
    grid = cfg.grid
    scheme = cfg.scheme(default_scheme)
    field_ = fv.run(grid, cfg.problem, eos, scheme, cfg.t_final)
    table = profile_table(grid.centers, field_.rho, field_.velocity(scheme.vacuum_floor))
    mass_err, mom_err = fv.conservation_errors(field_, grid)
    result = {
        "kappa": k.value,
        "scheme": dataclasses.asdict(scheme),
        "conservation": {
            "relative_mass_error": mass_err,
            "relative_momentum_error": mom_err,
            "boundary_mass": field_.boundary_mass,
            "boundary_momentum": field_.boundary_momentum,
            "floor_mass": field_.floor_mass,
            "floor_momentum": field_.floor_momentum,
        },
        "max_density": fv.max_density(field_),
        "min_density": float(field_.rho.min()),
    }
    try:
        sol = solve(eos, cfg.problem)
        result["pattern"] = sol.pattern.value
        result["l1_error"] = fv.l1_error(field_, grid, sol)
    except RiemannError as exc:
        result["l1_error"] = None
        result["exact_error"] = str(exc)
    meta = _metadata(cfg, "fv", result=result)
    if write:
        out = _out_dir(cfg)
        table.write_csv(out / "fv_profile.csv")
        write_metadata(out, meta)
    return table, meta


def cmd_sweep(cfg: ExperimentConfig, write: bool = True,
              default_scheme: fv.SchemeConfig = DESK_SCHEME) -> tuple[ResultTable, dict]:
    """Exact (optionally also finite-volume) results along a kappa schedule.

    Without an explicit schedule, kappa is halved from ``cfg.kappa`` down to
    1e-4. Schedules are expected to start above the critical coefficient so
    that the sweep crosses the pattern change; a warning is logged otherwise.
    """
    schedule = cfg.kappa_schedule
    if schedule is None:
        start = _single_kappa(cfg).value
        schedule = tuple(geometric_schedule(start))
    if not schedule:
        raise ConfigurationError("sweep needs a non-empty kappa_schedule")
    problem = cfg.problem
    resolved = [resolve_kappa(k, problem, cfg.gamma, cfg.critical_snap_rtol) for k in schedule]
    try:
        check_schedule([r.value for r in resolved])
    except DomainError as exc:
        raise ConfigurationError(str(exc)) from exc
    crit = critical_kappa(problem, cfg.gamma)
    if crit is not None and resolved[0].value <= crit.value:
        log.warning("schedule starts at kappa=%r, not above the critical value %r", resolved[0].value, crit.value)

    rows, errors = [], {}
    for r in resolved:
        eos = PolytropicEos(r.value, cfg.gamma)
        try:
            sol = solve(eos, problem)
            pattern = sol.pattern.value
            rho_star = sol.star.rho if sol.star else 0.0
            v_star = sol.star.v if sol.star else math.nan
        except RiemannError as exc:
            errors[repr(r.value)] = f"{type(exc).__name__}: {exc}"
            pattern, rho_star, v_star = "Error", math.nan, math.nan
        max_rho = None
        if cfg.sweep_mode == "fv":
            try:
                max_rho = fv.max_density(fv.run(cfg.grid, problem, eos, cfg.scheme(default_scheme), cfg.t_final))
            except RiemannError as exc:
                errors[repr(r.value) + ":fv"] = f"{type(exc).__name__}: {exc}"
                max_rho = math.nan
        rows.append((r.value, pattern, rho_star, v_star, max_rho))
    table = ResultTable(SWEEP_COLUMNS, rows)
    meta = _metadata(
        cfg, "sweep",
        resolved_schedule=[{"requested": r.requested, "kappa": r.value, "critical": r.critical} for r in resolved],
        errors=errors,
    )
    if write:
        out = _out_dir(cfg)
        table.write_csv(out / "sweep.csv")
        write_metadata(out, meta)
    return table, meta


FIGURES = {
    "figure1": (DATA1, "Formation of a vacuum state as the pressure vanishes"),
    "figure2": (DATA2, "Formation of a delta-shock wave as the pressure vanishes"),
}
FIGURE_KAPPAS: tuple[KappaSpec, ...] = (0.6, CRITICAL, 0.001)

_PLOT_SCRIPT = '''"""Plot {name}: {title}. Generated file; run with python."""
import csv
from pathlib import Path

import matplotlib.pyplot as plt

HERE = Path(__file__).parent
PANELS = {panels!r}


def read(name):
    with open(HERE / name) as fh:
        rows = list(csv.reader(fh))
    return [float(r[0]) for r in rows[1:]], [float(r[1]) for r in rows[1:]], rows[0][1]


fig, axes = plt.subplots(2, 3, figsize=(12, 6), sharex=True)
for col, (label, files) in enumerate(PANELS):
    for row, name in enumerate(files):
        x, y, q = read(name)
        axes[row][col].plot(x, y, lw=1)
        axes[row][col].set_ylabel(q)
    axes[0][col].set_title(label)
fig.suptitle("{title}")
fig.tight_layout()
fig.savefig(HERE / "{name}.png", dpi=150)
'''


def cmd_figures(cfg: ExperimentConfig, paper_resolution: bool = False,
                names: Sequence[str] = ("figure1", "figure2")) -> list[Path]:
    """Write six panel CSVs (rho and v at three kappa values) and a plot script per figure."""
    try:
        root = _out_dir(cfg)
    except OSError as exc:
        raise OSError(f"cannot create output directory {cfg.out}: {exc}") from exc
    dx = REFERENCE_DX if paper_resolution else DESK_DX
    default_scheme = REFERENCE_SCHEME if paper_resolution else DESK_SCHEME
    written = []
    for name in names:
        problem, title = FIGURES[name]
        fig_cfg = dataclasses.replace(
            cfg,
            rho_l=problem.left.rho, v_l=problem.left.v, rho_r=problem.right.rho, v_r=problem.right.v,
            nx=int(round((cfg.x_max - cfg.x_min) / dx)),
            dt=REFERENCE_DT if paper_resolution else cfg.dt,
            cfl=None if paper_resolution else cfg.cfl,
            theta=0.5 if paper_resolution else cfg.theta,
        )
        scheme = fig_cfg.scheme(default_scheme)
        out = root / name
        out.mkdir(exist_ok=True)
        panels, runs = [], []
        for spec in FIGURE_KAPPAS:
            k = resolve_kappa(spec, problem, cfg.gamma, 0.0)
            field_ = fv.run(fig_cfg.grid, problem, PolytropicEos(k.value, cfg.gamma), scheme, cfg.t_final)
            x = fig_cfg.grid.centers
            tag = "critical" if k.critical else format(k.value, "g")
            files = []
            for q, values in (("rho", field_.rho), ("v", field_.velocity(scheme.vacuum_floor))):
                fname = f"{name}_{q}_kappa_{tag}.csv"
                ResultTable(("x", q), [(float(a), float(b)) for a, b in zip(x, values)]).write_csv(out / fname)
                files.append(fname)
                written.append(out / fname)
            label = f"kappa = {k.value:.4g}" + (" (critical)" if k.critical else "")
            panels.append((label, files))
            runs.append({"kappa": k.value, "critical": k.critical, "max_density": fv.max_density(field_),
                         "min_density": float(field_.rho.min())})
        script = out / f"plot_{name}.py"
        script.write_text(_PLOT_SCRIPT.format(name=name, title=title, panels=panels))
        written.append(script)
        write_metadata(out, _metadata(fig_cfg, "figures", figure=name, scheme=dataclasses.asdict(scheme),
                                      paper_resolution=paper_resolution, runs=runs))
    return written
