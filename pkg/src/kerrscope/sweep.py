"""Parameter sweeps, peak detection and the nonlinearity estimator.

The mean photon number of the attractive oscillator, scanned against the
pump detuning, peaks at the multi-photon resonances ``delta = -alpha k``.
Measuring the spacing between neighbouring peaks therefore measures alpha.
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from . import analytic, lindblad
from .lindblad import FockConfig, SolverError
from .model import ModelParams, NonlinearSign, scale

WORKERS_ENV = "KERRSCOPE_WORKERS"
DEFAULT_PROMINENCE = 0.02


class Engine(enum.Enum):
    ANALYTIC = "analytic"
    NUMERIC = "numeric"


class InsufficientPeaksError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    """``steps`` evenly spaced values from ``start`` to ``stop`` inclusive."""

    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.steps}")
        if not self.start < self.stop:
            raise ValueError(f"grid start {self.start} must be below stop {self.stop}")

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.steps - 1)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepResult:
    """Observables along one axis. Fidelities are None for the analytic engine.

    ``g2`` holds NaN where the mean photon number vanishes.
    """

    axis_name: str
    axis: np.ndarray
    mean_n: np.ndarray
    g2: np.ndarray
    engine: Engine
    phi_plus: np.ndarray | None = None
    phi_minus: np.ndarray | None = None

    def __post_init__(self):
        if np.any(np.diff(self.axis) <= 0):
            raise ValueError("sweep axis must be strictly increasing")
        n = len(self.axis)
        if len(self.mean_n) != n or len(self.g2) != n:
            raise ValueError("row count does not match axis length")
        has_fid = self.phi_plus is not None and self.phi_minus is not None
        if has_fid != (self.engine is Engine.NUMERIC):
            raise ValueError("fidelities are present exactly for the numeric engine")

    def __len__(self):
        return len(self.axis)

    def rows(self):
        for i, x in enumerate(self.axis):
            fid = (None, None) if self.phi_plus is None else (self.phi_plus[i], self.phi_minus[i])
            yield (x, self.mean_n[i], self.g2[i], *fid)


@dataclass(frozen=True)
class PeakEstimate:
    peak_positions: tuple[float, ...]
    spacings: tuple[float, ...]
    alpha_hat: float
    spread: float


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
        return n
    return os.cpu_count() or 1


def evaluate_point(params: ModelParams, engine: Engine, two_s: int = 50,
                   cfg: FockConfig | None = None) -> tuple[float, float, float, float]:
    """``(mean_n, g2, phi_plus, phi_minus)`` at one parameter point.

    g2 is NaN at zero photon number; the fidelities are NaN for the analytic engine.
    """
    if engine is Engine.ANALYTIC:
        obs = analytic.observables(analytic.photon_distribution(scale(params, two_s)))
        fid = (math.nan, math.nan)
    else:
        if cfg is None:
            raise ValueError("the numeric engine needs a FockConfig")
        rho = lindblad.steady_state(params, cfg)
        obs, pair, _ = lindblad.observables_full(rho)
        fid = (pair.phi_plus, pair.phi_minus)
    g2 = math.nan if obs.g2 is None else obs.g2
    return obs.mean_n, g2, fid[0], fid[1]


def _run_sweep(axis_name, axis, point_params, engine, two_s, cfg, workers):
    engine = Engine(engine)
    if engine is Engine.NUMERIC and cfg is None:
        raise ValueError("the numeric engine needs a FockConfig")
    if workers is None:
        workers = default_workers()

    def work(i):
        try:
            return evaluate_point(point_params[i], engine, two_s, cfg)
        except SolverError as exc:
            raise type(exc)(f"at {axis_name}={float(axis[i])!r}: {exc}") from exc

    indices = range(len(axis))
    if workers <= 1:
        rows = [work(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(work, indices))

    table = np.array(rows, dtype=float).reshape(len(axis), 4)
    fid = {}
    if engine is Engine.NUMERIC:
        fid = dict(phi_plus=table[:, 2], phi_minus=table[:, 3])
    return SweepResult(axis_name=axis_name, axis=np.asarray(axis, dtype=float),
                       mean_n=table[:, 0], g2=table[:, 1], engine=engine, **fid)


def sweep_detuning(params: ModelParams, grid: Grid, engine: Engine | str,
                   cfg: FockConfig | None = None, two_s: int = 50,
                   workers: int | None = None) -> SweepResult:
    """Observables with ``params.delta`` replaced by each grid value.

    ``two_s`` only matters for the analytic engine. Results are assembled in
    grid order and do not depend on ``workers``.
    """
    axis = grid.values()
    points = [params.replace(delta=float(d)) for d in axis]
    return _run_sweep("delta", axis, points, engine, two_s, cfg, workers)


def sweep_drive(params: ModelParams, omega_grid: Grid, engine: Engine | str,
                cfg: FockConfig | None = None, two_s: int = 50,
                workers: int | None = None) -> SweepResult:
    """Observables versus the scaled drive ``omega``; ``epsilon = omega sqrt(2s)``."""
    axis = omega_grid.values()
    if axis[0] < 0:
        raise ValueError("omega values must be >= 0")
    root = math.sqrt(two_s)
    points = [params.replace(epsilon=float(w) * root) for w in axis]
    return _run_sweep("omega", axis, points, engine, two_s, cfg, workers)


def _vertex(x0, x1, x2, y0, y1, y2) -> float:
    # abscissa of the parabola through three points (grid need not be uniform)
    d0 = (x1 - x0) * (y1 - y2)
    d1 = (x1 - x2) * (y1 - y0)
    den = d0 - d1
    if den == 0:
        return x1
    return x1 - 0.5 * ((x1 - x0) * d0 - (x1 - x2) * d1) / den


def find_peak_positions(x, y, min_prominence: float = DEFAULT_PROMINENCE) -> list[float]:
    """Sub-grid positions of local maxima of ``y`` with enough prominence."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 3:
        raise ValueError("need at least 3 samples to find peaks")
    if not min_prominence > 0:
        raise ValueError("min_prominence must be positive")
    idx, _ = find_peaks(y, prominence=min_prominence)
    return [float(_vertex(*x[i - 1:i + 2], *y[i - 1:i + 2])) for i in idx]


def detect_peaks(result: SweepResult, min_prominence: float = DEFAULT_PROMINENCE) -> list[float]:
    """Peaks of ``result.mean_n`` in increasing axis order, refined parabolically."""
    return find_peak_positions(result.axis, result.mean_n, min_prominence)


def estimate_alpha(peaks) -> PeakEstimate:
    """Median spacing of consecutive peaks as the estimate of alpha."""
    positions = np.sort(np.asarray(peaks, dtype=float))
    if positions.size < 2:
        raise InsufficientPeaksError(f"need at least 2 peaks, got {positions.size}")
    spacings = np.diff(positions)
    alpha_hat = float(np.median(spacings))
    spread = float(np.max(np.abs(spacings - alpha_hat)))
    return PeakEstimate(peak_positions=tuple(positions.tolist()),
                        spacings=tuple(spacings.tolist()),
                        alpha_hat=alpha_hat, spread=spread)


def predict_resonances(alpha: float, sign: NonlinearSign | str, max_order: int) -> list[float]:
    """Detunings where ``delta + alpha (m + n - 1) = 0`` for ``0 <= n < m <= max_order``.

    Repulsive interactions give the mirrored set.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    sign = NonlinearSign.parse(sign)
    orders = {m + n - 1 for m in range(1, max_order + 1) for n in range(m)}
    mirror = 1.0 if sign is NonlinearSign.REPULSIVE else -1.0
    return sorted(mirror * alpha * k + 0.0 for k in orders)
