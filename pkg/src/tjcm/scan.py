"""Time-series scans, figure presets, verification runs, and CSV output."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np

from . import jcm, oracle
from .blocks import eigen_table, evolve_grid
from .errors import InvalidParameterError, ResourceRefusalError, UsageError
from .observables import BlochVector, bloch, entropy_squeezing, eur_residual, \
    variance_squeezing, von_neumann
from .params import ModelParams, coherent_weights
from .reduced import AtomId, ReducedAtomState, reduce_arrays

ATOM_CHANNELS = ("inv", "sy", "ey", "ex", "fy", "gamma", "eur")
FIELD_CHANNELS = ("jcm_sz", "jcm_sy", "jcm_ey", "harmonic_sy")
CHANNEL_NAMES = tuple(
    f"{kind}{atom}" for kind in ATOM_CHANNELS for atom in (1, 2)
) + FIELD_CHANNELS

DEFAULT_MAX_ORACLE_DIM = 8192
VERIFY_SEED = 0
STATE_DEV_TOL = 1e-8
EUR_TOL = 1e-10


@dataclass(frozen=True)
class ScanConfig:
    """One scan: physics parameters, a uniform time grid, and channels."""

    params: ModelParams
    t_max: float
    steps: int
    channels: tuple[str, ...]
    output_path: str | None = None

    def __post_init__(self) -> None:
        if not (self.t_max > 0.0 and math.isfinite(self.t_max)):
            raise InvalidParameterError(f"t_max must be > 0, got {self.t_max}")
        if not isinstance(self.steps, int) or self.steps < 2:
            raise InvalidParameterError(f"steps must be an integer >= 2, got {self.steps}")
        object.__setattr__(self, "channels", tuple(self.channels))

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)


@dataclass(frozen=True)
class TimeSeries:
    """Named observable channels sampled on a shared uniform time grid."""

    grid: np.ndarray
    channels: dict[str, np.ndarray]

    def __post_init__(self) -> None:
        if self.grid.ndim != 1 or np.any(np.diff(self.grid) <= 0.0):
            raise InvalidParameterError("grid must be strictly increasing")
        for name, values in self.channels.items():
            if values.shape != self.grid.shape:
                raise InvalidParameterError(
                    f"channel {name!r} length {values.size} != grid length {self.grid.size}"
                )


def validate_channels(names: Iterable[str]) -> tuple[str, ...]:
    names = tuple(names)
    unknown = [n for n in names if n not in CHANNEL_NAMES]
    if unknown:
        raise UsageError(
            f"unknown channel(s) {', '.join(unknown)}; "
            f"valid channels: {', '.join(CHANNEL_NAMES)}"
        )
    if not names:
        raise UsageError("at least one channel is required")
    return names


def _atom_channel_arrays(
    kind: str,
    p_plus: np.ndarray,
    p_minus: np.ndarray,
    coh: np.ndarray,
) -> np.ndarray:
    out = np.empty(p_plus.size)
    for i in range(p_plus.size):
        state = ReducedAtomState(float(p_plus[i]), float(p_minus[i]), complex(coh[i]))
        b = bloch(state)
        if kind == "inv":
            out[i] = b.sz
        elif kind == "sy":
            out[i] = b.sy
        elif kind == "ey":
            out[i] = entropy_squeezing(b, "y")
        elif kind == "ex":
            out[i] = entropy_squeezing(b, "x")
        elif kind == "fy":
            out[i] = variance_squeezing(b, "y")
        elif kind == "gamma":
            out[i] = von_neumann(state)
        elif kind == "eur":
            out[i] = eur_residual(b)
        else:  # pragma: no cover - guarded by validate_channels
            raise UsageError(f"unknown atom channel kind {kind!r}")
    return out


def run_scan(cfg: ScanConfig) -> TimeSeries:
    """Evaluate every requested channel on the configured time grid.

    Blocks are diagonalized once and shared read-only across the whole
    grid; single-atom channels come from the analytic reduction, the
    jcm_* and harmonic_sy channels from the closed-form references.
    """
    names = validate_channels(cfg.channels)
    p = cfg.params
    grid = cfg.grid()
    weights = coherent_weights(p.alpha, p.cutoff_eps)
    series: dict[str, np.ndarray] = {}

    atoms_needed = {n[-1] for n in names if n[:-1] in ATOM_CHANNELS}
    if atoms_needed:
        blocks = eigen_table(weights.n_max, p.l, p.g)
        x = evolve_grid(blocks, grid)
        reductions = {}
        for tag in sorted(atoms_needed):
            atom = AtomId.FIRST if tag == "1" else AtomId.SECOND
            reductions[tag] = reduce_arrays(weights, x, p.l, atom)
        for name in names:
            kind, tag = name[:-1], name[-1]
            if kind in ATOM_CHANNELS:
                series[name] = _atom_channel_arrays(kind, *reductions[tag])

    if any(n.startswith("jcm_") for n in names):
        jcm_blochs = [jcm.jcm_bloch(weights, float(t)) for t in grid]
        if "jcm_sz" in names:
            series["jcm_sz"] = np.array([b.sz for b in jcm_blochs])
        if "jcm_sy" in names:
            series["jcm_sy"] = np.array([b.sy for b in jcm_blochs])
        if "jcm_ey" in names:
            series["jcm_ey"] = np.array(
                [entropy_squeezing(b, "y") for b in jcm_blochs]
            )
    if "harmonic_sy" in names:
        series["harmonic_sy"] = np.array(
            [jcm.tjcm_harmonic_sy(weights, float(t)) for t in grid]
        )

    return TimeSeries(grid=grid, channels={n: series[n] for n in names})


# Frozen figure presets.  fig3 spans two transition parameters (l = 1 and
# l = 2 at the same alpha, g), so it is assembled from two scans; see
# run_preset.
PRESET_CONFIGS: dict[str, ScanConfig] = {
    "fig1": ScanConfig(
        params=ModelParams(alpha=5.0, g=0.5, l=1),
        t_max=25.0, steps=2500,
        channels=("inv1", "inv2", "ey1", "ey2", "fy2"),
    ),
    "fig2": ScanConfig(
        params=ModelParams(alpha=5.0, g=0.5, l=2),
        t_max=25.0, steps=2500,
        channels=("inv1", "inv2", "ey1", "ey2", "fy1", "fy2"),
    ),
    "fig4": ScanConfig(
        params=ModelParams(alpha=5.0, g=1.0, l=1),
        t_max=25.0, steps=2500,
        channels=("ey1", "jcm_ey", "sy1", "jcm_sy", "harmonic_sy"),
    ),
}

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4")


def run_preset(name: str, t_max: float | None = None, steps: int | None = None) -> TimeSeries:
    """Run a named figure preset, optionally overriding the grid."""
    if name not in PRESET_NAMES:
        raise UsageError(
            f"unknown preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}"
        )
    if name == "fig3":
        gammas = {}
        for tag, base in (("l1", "fig1"), ("l2", "fig2")):
            cfg = PRESET_CONFIGS[base]
            cfg = replace(
                cfg,
                t_max=t_max if t_max is not None else cfg.t_max,
                steps=steps if steps is not None else cfg.steps,
                channels=("gamma2",),
            )
            gammas[f"gamma2_{tag}"] = run_scan(cfg)
        grid = gammas["gamma2_l1"].grid
        return TimeSeries(
            grid=grid,
            channels={k: ts.channels["gamma2"] for k, ts in gammas.items()},
        )
    cfg = PRESET_CONFIGS[name]
    if t_max is not None or steps is not None:
        cfg = replace(
            cfg,
            t_max=t_max if t_max is not None else cfg.t_max,
            steps=steps if steps is not None else cfg.steps,
        )
    return run_scan(cfg)


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one oracle verification run."""

    times: np.ndarray
    max_state_dev: float
    max_eur_violation: float
    norm_drift: float
    dt: float
    oracle_dim: int
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "passed",
            self.max_state_dev <= STATE_DEV_TOL
            and self.max_eur_violation <= EUR_TOL
            and self.norm_drift <= oracle.NORM_DRIFT_TOL,
        )

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"verify {status}: max state deviation {self.max_state_dev:.3e} "
            f"(tol {STATE_DEV_TOL:.0e}), max EUR violation "
            f"{self.max_eur_violation:.3e} (tol {EUR_TOL:.0e}), norm drift "
            f"{self.norm_drift:.3e} (tol {oracle.NORM_DRIFT_TOL:.0e}), "
            f"dim {self.oracle_dim}, dt {self.dt:.3e}, "
            f"{self.times.size} sample times"
        )


def run_verify(
    cfg: ScanConfig,
    sample_count: int,
    max_oracle_dim: int = DEFAULT_MAX_ORACLE_DIM,
    inject_fault: bool = False,
) -> VerifyReport:
    """Cross-check the analytic pipeline against the brute-force oracle.

    Draws sample_count times from the configured grid (deterministic seed),
    integrates the full product-space trajectory once, and compares the
    reduced states of both atoms entrywise at every sample.  Also scans the
    entropic-uncertainty residual of the analytic states.  inject_fault
    corrupts one analytic coherence, for exercising the failure path.
    """
    if sample_count < 10:
        raise UsageError(f"sample_count must be >= 10, got {sample_count}")
    p = cfg.params
    weights = coherent_weights(p.alpha, p.cutoff_eps)
    n_f = weights.n_max + 2 * p.l
    dim = 4 * (n_f + 1)
    if dim > max_oracle_dim:
        raise ResourceRefusalError(
            f"oracle dimension {dim} exceeds bound {max_oracle_dim}; "
            "lower alpha (or raise --max-dim) to verify this configuration"
        )

    grid = cfg.grid()
    rng = np.random.default_rng(VERIFY_SEED)
    count = min(sample_count, grid.size - 1)
    times = np.sort(rng.choice(grid[1:], size=count, replace=False))

    h = oracle.build_joint_hamiltonian(p.l, p.g, n_f)
    psi0 = oracle.initial_state(weights, h)
    dt = oracle.suggest_dt(weights, h, float(times[-1]))

    blocks = eigen_table(weights.n_max, p.l, p.g)
    x = evolve_grid(blocks, times)
    analytic: dict[AtomId, tuple[np.ndarray, np.ndarray, np.ndarray]] = {
        atom: reduce_arrays(weights, x, p.l, atom) for atom in AtomId
    }

    max_dev = 0.0
    max_eur_violation = 0.0
    norm_drift = 0.0
    for i, (_, psi) in enumerate(oracle.sample_states(h, psi0, times, dt)):
        norm_drift = max(norm_drift, abs(float(np.linalg.norm(psi)) - 1.0))
        for atom in AtomId:
            p_plus, p_minus, coh = (arr[i] for arr in analytic[atom])
            if inject_fault and i == times.size // 2 and atom is AtomId.FIRST:
                coh = coh + 1e-6j
            ref = oracle.partial_trace_atom(psi, n_f, atom)
            max_dev = max(
                max_dev,
                abs(float(p_plus) - ref.p_plus),
                abs(float(p_minus) - ref.p_minus),
                abs(complex(coh) - ref.coh),
            )
            b = BlochVector(
                sx=2.0 * complex(coh).real,
                sy=2.0 * complex(coh).imag,
                sz=float(p_plus) - float(p_minus),
            )
            max_eur_violation = max(max_eur_violation, -eur_residual(b))
    return VerifyReport(
        times=times,
        max_state_dev=max_dev,
        max_eur_violation=max(0.0, max_eur_violation),
        norm_drift=norm_drift,
        dt=dt,
        oracle_dim=dim,
    )


def write_csv(series: TimeSeries, path: str) -> None:
    """Emit the series as UTF-8 CSV: column T first, then each channel, all
    values with 17 significant digits so parsing reproduces the exact
    doubles."""
    names = list(series.channels)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(["T"] + names) + "\n")
        cols = [series.grid] + [series.channels[n] for n in names]
        for row in zip(*cols):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def read_csv(path: str) -> TimeSeries:
    """Parse a CSV produced by write_csv back into a TimeSeries."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if not header or header[0] != "T":
            raise UsageError(f"{path} is not a scan CSV (missing T column)")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    data = np.array([[float(v) for v in row] for row in rows])
    if data.shape[1] != len(header):
        raise UsageError(f"{path}: ragged CSV")
    return TimeSeries(
        grid=data[:, 0],
        channels={name: data[:, j + 1] for j, name in enumerate(header[1:])},
    )
