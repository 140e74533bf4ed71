"""Batch experiment orchestration: config parsing, seeded replication, reports.

Each experiment kind wires the sampling modules to the box-counting
estimator and compares the replica-aggregated estimate against the
closed-form prediction.  Replica r always uses seed + r, aggregation is a
deterministic fold in replica order, and the JSON report is byte-stable
apart from the wall-clock field.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import predictions
from .boxcount import BoxCountResult, WindowPolicy, box_dimension_1d, box_dimension_2d
from .cantor import CantorSpec, discretize
from .chaos import chaos_profile, sample_log_field
from .errors import ConfigError, HorizonError
from .boxcount import pushforward_set
from .formulas import peanosphere_correlation, phi, phi_via_psi
from .loewner import (
    SlitChain,
    densify_polyline,
    sample_driving,
    trace,
    zip_set,
    zipped_window_right_endpoint,
)
from .stochastic import ancestor_free_times, hitting_time_subordinator, stable_subordinator

EXPERIMENTS = (
    "formula-identities",
    "zip-cantor",
    "trace-dim",
    "gmc-kpz",
    "subordinator",
    "ancestor-free",
)

#: window policy for Monte Carlo sample clouds: trim the saturated tail
#: where counts approach the sample size (see WindowPolicy docs)
SAMPLE_POLICY = WindowPolicy.for_samples()

#: identity-suite kappa values (each paired with its 16/kappa dual)
IDENTITY_KAPPAS = (0.5, 1.0, 2.0, 8.0 / 3.0, 3.0, 5.0, 6.0, 7.0, 16.0 / 3.0, 32.0)

#: deterministic seed offset between redraw attempts of a failed replica
REDRAW_OFFSET = 10**9

_DEFAULT_TOLERANCES = {
    "formula-identities": 1e-10,
    "zip-cantor": 0.12,
    "trace-dim": 0.10,
    "gmc-kpz": 0.08,
    "subordinator": 0.08,
    "ancestor-free": 0.10,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated parameters of one experiment run."""

    experiment: str
    kappa: float | None = None
    gamma: float | None = None
    alpha: float | None = None
    sampler: str | None = None          # subordinator: "stable" | "hitting"
    cantor: CantorSpec | None = None
    n_steps: int | None = None
    replicas: int = 1
    seed: int = 0
    t_final: float = 1.0
    resolution: int | None = None       # trace-dim cloud size
    levels: int = 16                    # gmc field levels
    dt: float = 3e-7                    # hitting-subordinator path resolution
    grid_points: int = 1000             # formula-identities d-grid
    tolerance: float | None = None
    workers: int = 1
    out: str | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(
                f"experiment: must be one of {', '.join(EXPERIMENTS)}, got {self.experiment!r}"
            )
        need = {
            "zip-cantor": ("kappa", "cantor", "n_steps"),
            "trace-dim": ("kappa", "n_steps"),
            "gmc-kpz": ("gamma", "cantor"),
            "subordinator": ("alpha", "sampler", "cantor"),
            "ancestor-free": ("kappa", "n_steps"),
        }.get(self.experiment, ())
        for name in need:
            if getattr(self, name) is None:
                raise ConfigError(f"{name}: required for experiment {self.experiment!r}")
        if self.experiment != "formula-identities" and self.replicas < 1:
            raise ConfigError("replicas: must be >= 1")
        if self.sampler is not None and self.sampler not in ("stable", "hitting"):
            raise ConfigError(f"sampler: must be stable|hitting, got {self.sampler!r}")
        if self.workers < 1:
            raise ConfigError("workers: must be >= 1")
        if self.tolerance is None:
            object.__setattr__(self, "tolerance", _DEFAULT_TOLERANCES[self.experiment])

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: invalid JSON ({exc})") from exc
        if not isinstance(obj, dict):
            raise ConfigError("config: top level must be a JSON object")
        if "cantor" in obj and obj["cantor"] is not None:
            c = obj["cantor"]
            try:
                obj["cantor"] = CantorSpec(
                    base=c["b"], digits=tuple(c["K"]), depth=c.get("depth", 10)
                )
            except (KeyError, TypeError) as exc:
                raise ConfigError(f"cantor: expected {{b, K, depth}}, got {c!r}") from exc
        known = set(cls.__dataclass_fields__)
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"config: unknown field(s) {sorted(unknown)}")
        return cls(**obj)

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        return cls.from_json(Path(path).read_text())

    def echo(self) -> dict:
        out = {}
        for name in sorted(self.__dataclass_fields__):
            value = getattr(self, name)
            if isinstance(value, CantorSpec):
                value = json.loads(value.to_json())
            out[name] = value
        return out

    def prediction(self) -> float:
        return predictions.predict(
            self.experiment,
            kappa=self.kappa,
            gamma=self.gamma,
            alpha=self.alpha,
            spec=self.cantor,
        )


@dataclass(frozen=True)
class ExperimentReport:
    """Aggregated outcome of one experiment with its config echo."""

    config: dict
    prediction: float
    estimates: list[float]
    mean: float
    stderr: float
    tolerance: float
    passed: bool
    wall_clock_seconds: float
    extras: dict = field(default_factory=dict)
    regression: BoxCountResult | None = None

    def to_json(self, include_wall_clock: bool = True) -> str:
        obj = {
            "config": self.config,
            "prediction": self.prediction,
            "estimates": self.estimates,
            "mean": self.mean,
            "stderr": self.stderr,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "extras": self.extras,
        }
        if include_wall_clock:
            obj["wall_clock_seconds"] = self.wall_clock_seconds
        return json.dumps(obj, sort_keys=True, indent=2)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{self.config['experiment']}: estimate {self.mean:.4f} "
            f"vs prediction {self.prediction:.4f} "
            f"(tolerance {self.tolerance:g}) {verdict}"
        )


def _replica_seed(seed: int, replica: int, attempt: int = 0) -> int:
    return seed + replica + attempt * REDRAW_OFFSET


def _run_identities(config: ExperimentConfig) -> tuple[list[float], dict, None]:
    """Max deviations of the closed-form identities on a d-grid."""
    d = np.linspace(0.0, 1.0, config.grid_points)
    checks = {}
    dev_dual = 0.0
    dev_comp = 0.0
    for kappa in IDENTITY_KAPPAS:
        p = phi(kappa, d)
        dev_dual = max(dev_dual, float(np.max(np.abs(p - phi(16.0 / kappa, d)))))
        dev_comp = max(dev_comp, float(np.max(np.abs(p - phi_via_psi(kappa, d)))))
    checks["duality"] = dev_dual
    checks["composition"] = dev_comp
    dev_special = 0.0
    for kappa in IDENTITY_KAPPAS:
        dev_special = max(dev_special, abs(phi(kappa, 0.0)))
        expected_1 = 1.0 + kappa / 8.0 if kappa < 4.0 else 1.0 + 2.0 / kappa
        dev_special = max(dev_special, abs(phi(kappa, 1.0) - expected_1))
    for kappa in np.linspace(4.05, 7.95, 40):
        kappa = float(kappa)
        dev_special = max(
            dev_special,
            abs(phi(kappa, 2.0 - 8.0 / kappa) - (2.0 - (12.0 - kappa) * (4.0 + kappa) / (8.0 * kappa))),
            abs(phi(kappa, 5.0 - 8.0 / kappa - kappa / 2.0) - (3.0 - 3.0 * kappa / 8.0)),
        )
    checks["special-values"] = float(dev_special)
    return list(checks.values()), {"checks": checks}, None


def _zip_replica(config: ExperimentConfig, replica: int):
    path = sample_driving(
        config.kappa, config.t_final, config.n_steps, _replica_seed(config.seed, replica)
    )
    chain = SlitChain.from_driving(path, "reverse")
    right = zipped_window_right_endpoint(chain)
    ys = discretize(config.cantor) * (0.9 * right)
    cloud = zip_set(chain, ys)
    result = box_dimension_2d(cloud.points, window_policy=SAMPLE_POLICY)
    extras = {"zipped_fraction": cloud.points.size / ys.size, "window_right_endpoint": right}
    return result.slope, result, extras


def _trace_replica(config: ExperimentConfig, replica: int):
    path = sample_driving(
        config.kappa, config.t_final, config.n_steps, _replica_seed(config.seed, replica)
    )
    chain = SlitChain.from_driving(path, "reverse")
    resolution = config.resolution or min(config.n_steps, 10_000)
    cloud = trace(chain, resolution=resolution)
    pts = cloud.points
    # chord-fill the sampled curve, then count only above the chain's
    # resolved band: below extent/128 the slit-by-slit discretization shows
    max_gap = float(np.percentile(np.abs(np.diff(pts)), 25))
    dense = densify_polyline(pts, max_gap)
    extent = float(
        max(pts.real.max() - pts.real.min(), pts.imag.max() - pts.imag.min())
    )
    window = (extent / 128.0, extent / 8.0)
    result = box_dimension_2d(dense, scale_range=window)
    extras = {"resolution": resolution, "scale_range": list(window), "max_gap": max_gap}
    return result.slope, result, extras


def _gmc_replica(config: ExperimentConfig, replica: int):
    fld = sample_log_field(config.levels, _replica_seed(config.seed, replica))
    profile = chaos_profile(fld, config.gamma)
    image = pushforward_set(profile, discretize(config.cantor))
    result = box_dimension_1d(image, window_policy=SAMPLE_POLICY)
    return result.slope, result, {"image_points": int(image.size)}


def _subordinator_replica(config: ExperimentConfig, replica: int):
    grid = discretize(config.cantor)
    if config.sampler == "stable":
        path = stable_subordinator(config.alpha, grid, _replica_seed(config.seed, replica))
        redraws = 0
    else:
        if abs(config.alpha - 0.5) > 1e-12:
            raise ConfigError("alpha: the hitting sampler realizes index 1/2 only")
        attempt = 0
        while True:
            try:
                path = hitting_time_subordinator(
                    grid,
                    _replica_seed(config.seed, replica, attempt),
                    dt=config.dt,
                    max_time=200.0 * float(grid[-1]) ** 2,
                )
                break
            except HorizonError:
                attempt += 1
                if attempt > 64:
                    raise
        redraws = attempt
    image = np.unique(path.values)
    result = box_dimension_1d(image, window_policy=SAMPLE_POLICY)
    return result.slope, result, {"redraws": redraws, "image_points": int(image.size)}


def _af_replica(config: ExperimentConfig, replica: int):
    times = ancestor_free_times(
        config.kappa, config.n_steps, _replica_seed(config.seed, replica), config.t_final
    )
    result = box_dimension_1d(times, window_policy=SAMPLE_POLICY)
    extras = {
        "n_times": int(times.size),
        "correlation": peanosphere_correlation(config.kappa),
    }
    return result.slope, result, extras


_REPLICA_RUNNERS = {
    "zip-cantor": _zip_replica,
    "trace-dim": _trace_replica,
    "gmc-kpz": _gmc_replica,
    "subordinator": _subordinator_replica,
    "ancestor-free": _af_replica,
}


def _run_one(args):
    config, replica = args
    return _REPLICA_RUNNERS[config.experiment](config, replica)


def run(config: ExperimentConfig) -> ExperimentReport:
    """Execute an experiment and aggregate its replicas into a report."""
    start = time.perf_counter()
    if config.experiment == "formula-identities":
        estimates, extras, regression = _run_identities(config)
        mean = max(estimates)
        stderr = 0.0
        passed = mean <= config.tolerance
        prediction = 0.0
    else:
        jobs = [(config, r) for r in range(config.replicas)]
        if config.workers > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                outcomes = list(pool.map(_run_one, jobs))
        else:
            outcomes = [_run_one(job) for job in jobs]
        estimates = [slope for slope, _, _ in outcomes]
        regression = outcomes[0][1]
        extras = {"replica_0": outcomes[0][2], "policy": SAMPLE_POLICY.to_dict()}
        mean = float(np.mean(estimates))
        stderr = (
            float(np.std(estimates, ddof=1) / math.sqrt(len(estimates)))
            if len(estimates) > 1
            else 0.0
        )
        prediction = config.prediction()
        passed = abs(mean - prediction) <= config.tolerance
    return ExperimentReport(
        config=config.echo(),
        prediction=prediction,
        estimates=[float(e) for e in estimates],
        mean=mean,
        stderr=stderr,
        tolerance=config.tolerance,
        passed=passed,
        wall_clock_seconds=time.perf_counter() - start,
        extras=extras,
        regression=regression,
    )


def emit(report: ExperimentReport, out_dir: str | Path = ".", formats=("json",)) -> list[Path]:
    """Write the report in the requested formats; returns the paths written."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = report.config["experiment"]
    written = []
    for fmt in formats:
        path = out_dir / f"{stem}.{fmt}"
        if fmt == "json":
            path.write_text(report.to_json() + "\n")
        elif fmt == "csv":
            with open(path, "w", newline="") as f:
                writer = csv.writer(f)
                writer.writerow(["replica", "estimate"])
                for r, e in enumerate(report.estimates):
                    writer.writerow([r, repr(e)])
        elif fmt == "svg":
            path.write_text(_render_svg(report))
        else:
            raise ConfigError(f"format: unknown emit format {fmt!r}")
        written.append(path)
    return written


def _render_svg(report: ExperimentReport) -> str:
    """Log-log scatter of replica-0 box counts with fit and prediction lines."""
    width, height, margin = 480, 360, 50
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    reg = report.regression
    if reg is not None and reg.scales.size >= 2:
        lo, hi = reg.window
        xs = np.log10(1.0 / reg.scales[lo:hi])
        ns = np.log10(reg.counts[lo:hi].astype(float))
        x0, x1 = float(xs.min()), float(xs.max())
        y0, y1 = float(ns.min()), float(ns.max())
        xspan = (x1 - x0) or 1.0
        yspan = (y1 - y0) or 1.0

        def sx(x):
            return margin + (x - x0) / xspan * (width - 2 * margin)

        def sy(y):
            return height - margin - (y - y0) / yspan * (height - 2 * margin)

        xm, nm = float(xs.mean()), float(ns.mean())
        for slope, color, dash in (
            (report.mean, "#1f77b4", ""),
            (report.prediction, "#d62728", ' stroke-dasharray="6,4"'),
        ):
            ya, yb = nm + slope * (x0 - xm), nm + slope * (x1 - xm)
            parts.append(
                f'<line x1="{sx(x0):.2f}" y1="{sy(ya):.2f}" x2="{sx(x1):.2f}" '
                f'y2="{sy(yb):.2f}" stroke="{color}" stroke-width="1.5"{dash}/>'
            )
        for x, n in zip(xs, ns):
            parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(n):.2f}" r="3" fill="black"/>')
        parts.append(
            f'<text x="{margin}" y="20" font-family="monospace" font-size="13">'
            f"slope={report.mean:.3f} prediction={report.prediction:.3f}</text>"
        )
        parts.append(
            f'<text x="{width // 2 - 40}" y="{height - 12}" font-family="monospace" '
            f'font-size="11">log10(1/eps)</text>'
        )
        parts.append(
            f'<text x="8" y="{height // 2}" font-family="monospace" font-size="11" '
            f'transform="rotate(-90 12 {height // 2})">log10 N(eps)</text>'
        )
    else:
        parts.append(
            f'<text x="{margin}" y="20" font-family="monospace" font-size="13">'
            f"slope={report.mean:.3f} prediction={report.prediction:.3f}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
