"""Truncated-Fock master-equation solver for the driven Kerr oscillator.

The master equation

    d rho/dt = -i [H, rho] - kappa ([a^dag, a rho] + [rho a^dag, a])

expands to ``-i[H, rho] + kappa (2 a rho a^dag - a^dag a rho - rho a^dag a)``,
i.e. photons are lost at rate ``2 kappa``. This is the convention under
which the harmonic limit gives ``<n> = epsilon^2 / (kappa^2 + delta^2)``.

Density matrices are vectorized by stacking columns (Fortran order), so
``vec(A X B) = (B^T kron A) vec(X)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .analytic import PhotonDistribution, ScalarObservables, observables
from .model import ModelParams


class SolverError(RuntimeError):
    pass


class NoConvergenceError(SolverError):
    """Fock truncation cap reached with too much population near the cutoff."""


class SingularSystemError(SolverError):
    pass


class InstabilityError(SolverError):
    """Time integration drifted off the unit-trace manifold."""


@dataclass(frozen=True)
class FockConfig:
    """Fock-space truncation.

    ``dim`` is the starting truncation; ``steady_state`` doubles it (up to
    ``max_dim``) while the top two levels hold more than ``tail_tol``.
    """

    dim: int = 20
    tail_tol: float = 1e-10
    max_dim: int = 80

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"dim must be an integer >= 2, got {self.dim}")
        if not 0 < self.tail_tol < 1:
            raise ValueError(f"tail_tol must lie in (0, 1), got {self.tail_tol}")
        if self.max_dim < self.dim:
            raise ValueError("max_dim must be >= dim")

    def with_dim(self, dim: int) -> FockConfig:
        return FockConfig(dim=dim, tail_tol=self.tail_tol, max_dim=max(self.max_dim, dim))


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        rho = np.array(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError("density matrix must be square")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def fock(cls, n: int, dim: int) -> DensityMatrix:
        rho = np.zeros((dim, dim), dtype=complex)
        rho[n, n] = 1.0
        return cls(rho)

    @classmethod
    def vacuum(cls, dim: int) -> DensityMatrix:
        return cls.fock(0, dim)

    def validate(self, herm_tol=1e-10, trace_tol=1e-10, eig_tol=1e-8):
        """Raise ValueError unless the matrix is Hermitian, unit-trace and positive."""
        rho = self.entries
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > herm_tol:
            raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3g}")
        tr = np.trace(rho)
        if abs(tr - 1) > trace_tol:
            raise ValueError(f"trace {tr} differs from 1")
        lo = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
        if lo < -eig_tol:
            raise ValueError(f"negative eigenvalue {lo:.3g}")
        return self


@dataclass(frozen=True)
class FidelityPair:
    """Overlaps with ``(|0> + |1>)/sqrt 2`` (plus) and ``(|0> - |1>)/sqrt 2`` (minus)."""

    phi_plus: float
    phi_minus: float


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def build_hamiltonian(params: ModelParams, cfg: FockConfig) -> np.ndarray:
    n = np.arange(cfg.dim, dtype=float)
    diag = -params.delta * n + params.sign.value * params.alpha * n * (n - 1)
    off = params.epsilon * np.sqrt(n[1:])
    return np.diag(diag).astype(complex) + np.diag(off, 1) + np.diag(off, -1)


def build_liouvillian(params: ModelParams, cfg: FockConfig) -> np.ndarray:
    """Dense ``dim^2 x dim^2`` generator acting on column-stacked ``rho``."""
    dim = cfg.dim
    h = build_hamiltonian(params, cfg)
    a = annihilation(dim)
    num = a.conj().T @ a
    eye = np.eye(dim)
    coherent = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    dissipator = 2.0 * np.kron(a.conj(), a) - np.kron(eye, num) - np.kron(num.T, eye)
    return coherent + params.kappa * dissipator


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    return np.asarray(v).reshape(dim, dim, order="F")


def _solve_fixed_dim(params: ModelParams, cfg: FockConfig) -> np.ndarray:
    dim = cfg.dim
    lv = build_liouvillian(params, cfg)
    rhs = np.zeros(dim * dim, dtype=complex)
    # replace the (0,0) equation by tr(rho) = 1
    lv[0, :] = vec(np.eye(dim))
    rhs[0] = 1.0
    try:
        x = scipy.linalg.solve(lv, rhs, check_finite=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise SingularSystemError(f"steady-state solve failed at dim={dim}: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise SingularSystemError(f"steady-state solve returned non-finite values at dim={dim}")
    rho = unvec(x, dim)
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def steady_state(params: ModelParams, cfg: FockConfig = FockConfig()) -> DensityMatrix:
    """Stationary state ``L rho = 0`` by a dense solve with a trace constraint.

    The truncation is doubled until the top two Fock levels hold at most
    ``cfg.tail_tol``; NoConvergenceError if ``cfg.max_dim`` is not enough.
    """
    dim = cfg.dim
    while True:
        rho = _solve_fixed_dim(params, cfg.with_dim(dim))
        tail = float(np.real(rho[-1, -1] + rho[-2, -2]))
        if tail <= cfg.tail_tol:
            return DensityMatrix(rho)
        if dim >= cfg.max_dim:
            raise NoConvergenceError(
                f"population {tail:.3g} in the top Fock levels at dim={dim} "
                f"exceeds tail_tol={cfg.tail_tol:.3g}")
        dim = min(2 * dim, cfg.max_dim)


def evolve(rho0: DensityMatrix, params: ModelParams, cfg: FockConfig,
           dt: float, t_final: float) -> DensityMatrix:
    """Integrate the master equation from ``rho0`` with fixed-step RK4.

    The step must satisfy roughly ``dt * max|eig(L)| < 1`` to be stable.
    The number of steps is ``round(t_final / dt)``. ``cfg.dim`` must equal
    ``rho0.dim``; no truncation escalation happens here.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    if rho0.dim != cfg.dim:
        raise ValueError(f"rho0 has dim {rho0.dim}, cfg has dim {cfg.dim}")
    n_steps = int(round(t_final / dt))
    if n_steps == 0:
        return rho0

    dim = cfg.dim
    h = dt * build_liouvillian(params, cfg)
    # one RK4 step of a linear system is the degree-4 Taylor polynomial of exp(hL)
    step = np.eye(dim * dim, dtype=complex)
    term = np.eye(dim * dim, dtype=complex)
    for k in range(1, 5):
        term = term @ h / k
        step += term
    trace_row = vec(np.eye(dim))

    x = vec(rho0.entries).copy()
    check_every = max(1, n_steps // 100)
    for i in range(1, n_steps + 1):
        x = step @ x
        if i % check_every == 0 or i == n_steps:
            drift = abs(trace_row @ x - 1.0)
            if not drift <= 1e-6:
                raise InstabilityError(f"trace drift {drift:.3g} after {i} steps of dt={dt}")
    rho = unvec(x, dim)
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def fidelities(rho: DensityMatrix) -> FidelityPair:
    r = rho.entries
    base = 0.5 * float(np.real(r[0, 0] + r[1, 1]))
    coherence = float(np.real(r[0, 1]))
    return FidelityPair(phi_plus=base + coherence, phi_minus=base - coherence)


def observables_full(rho: DensityMatrix) -> tuple[ScalarObservables, FidelityPair, PhotonDistribution]:
    """Mean photon number, ``G2(0)``, ``g2(0)``, fidelities and populations."""
    # round-off can leave populations of order -1e-20
    dist = PhotonDistribution(np.clip(np.real(np.diag(rho.entries)), 0.0, None))
    return observables(dist), fidelities(rho), dist
