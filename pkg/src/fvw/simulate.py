"""Time integration: the reaction ODE system, the method-of-lines PDE on a 1D
periodic domain, and the decoupled single-mode linearized system."""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import CFLViolation, CFLWarning, StepFailure, ValidationError
from .model import ModelParams, State, coexistence_state, reaction_rhs
from .stability import mode_matrix

NEGATIVITY_TOL = -1e-9


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step classical RK4 ("rk4") or adaptive Dormand-Prince ("rk45")."""

    method: str = "rk4"
    t_final: float = 10.0
    dt: float = 1e-2
    rtol: float = 1e-8
    atol: float = 1e-10

    def __post_init__(self):
        if self.method not in ("rk4", "rk45"):
            raise ValidationError(f"unknown integrator method {self.method!r}")
        if not self.t_final > 0:
            raise ValidationError("t_final must be positive")
        if self.method == "rk4" and not self.dt > 0:
            raise ValidationError("dt must be positive")
        if self.method == "rk45" and not (self.rtol > 0 and self.atol > 0):
            raise ValidationError("rtol and atol must be positive")


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray  # shape (n,), strictly increasing
    states: np.ndarray  # shape (n, 3), columns f, v, w
    negativity_flag: bool

    def final_state(self) -> State:
        return State(*self.states[-1])

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "f", "v", "w"])
            for t, (f, v, w) in zip(self.times, self.states):
                writer.writerow([f"{x:.17g}" for x in (t, f, v, w)])


def _rhs_array(y: np.ndarray, p: ModelParams) -> np.ndarray:
    return np.asarray(reaction_rhs(State(*y), p))


def integrate_ode(s0: State, p: ModelParams, cfg: IntegratorConfig) -> Trajectory:
    """Integrate the reaction ODE system from s0 up to cfg.t_final."""
    y0 = np.asarray(s0, dtype=float)
    if cfg.method == "rk4":
        n_steps = max(1, math.ceil(cfg.t_final / cfg.dt))
        dt = cfg.t_final / n_steps
        times = np.linspace(0.0, cfg.t_final, n_steps + 1)
        states = np.empty((n_steps + 1, 3))
        states[0] = y0
        y = y0
        for i in range(n_steps):
            k1 = _rhs_array(y, p)
            k2 = _rhs_array(y + 0.5 * dt * k1, p)
            k3 = _rhs_array(y + 0.5 * dt * k2, p)
            k4 = _rhs_array(y + dt * k3, p)
            y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            states[i + 1] = y
    else:
        sol = solve_ivp(
            lambda t, y: _rhs_array(y, p),
            (0.0, cfg.t_final),
            y0,
            method="RK45",
            rtol=cfg.rtol,
            atol=cfg.atol,
        )
        if not sol.success:
            raise StepFailure(f"adaptive integration failed: {sol.message}")
        times = sol.t
        states = sol.y.T
    return Trajectory(times, states, negativity_flag=bool(states.min() < NEGATIVITY_TOL))


@dataclass(frozen=True)
class FieldState:
    """Discretized (f, v, w) on a periodic grid of N points over [0, L)."""

    domain_length: float
    f: np.ndarray
    v: np.ndarray
    w: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        n = len(self.f)
        if n < 8:
            raise ValidationError("grid must have at least 8 points")
        if len(self.v) != n or len(self.w) != n:
            raise ValidationError("f, v, w must have equal length")
        if not self.domain_length > 0:
            raise ValidationError("domain_length must be positive")

    @property
    def grid_points(self) -> int:
        return len(self.f)

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.grid_points) * (self.domain_length / self.grid_points)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "x", "f", "v", "w"])
            for x, f, v, w in zip(self.x, self.f, self.v, self.w):
                writer.writerow([f"{val:.17g}" for val in (self.time, x, f, v, w)])


def uniform_field(s: State, n: int, domain_length: float) -> FieldState:
    return FieldState(
        domain_length,
        np.full(n, s.f),
        np.full(n, s.v),
        np.full(n, s.w),
    )


def single_mode_field(
    p: ModelParams,
    n: int,
    domain_length: float,
    mode: int,
    rho: float,
    sin_amplitudes: Sequence[float] = (1.0, 1.0, 1.0),
    cos_amplitudes: Sequence[float] = (0.0, 0.0, 0.0),
) -> FieldState:
    """Coexistence equilibrium plus a single resolved Fourier mode of amplitude rho.

    The wavenumber is k = 2 pi mode / domain_length, so the discrete and
    continuous modes coincide exactly.
    """
    if not 1 <= mode <= n // 2 - 1:
        raise ValidationError(f"mode must lie in [1, N/2-1], got {mode}")
    eq = coexistence_state(p)
    x = np.arange(n) * (domain_length / n)
    k = 2.0 * math.pi * mode / domain_length
    s_wave, c_wave = np.sin(k * x), np.cos(k * x)
    fields = [
        eq[i] + rho * (sin_amplitudes[i] * s_wave + cos_amplitudes[i] * c_wave)
        for i in range(3)
    ]
    return FieldState(domain_length, *fields)


def _periodic_laplacian(u: np.ndarray, h: float) -> np.ndarray:
    return (np.roll(u, 1) + np.roll(u, -1) - 2.0 * u) / (h * h)


def cfl_bound(h: float, p: ModelParams) -> float:
    """Explicit-stepping stability bound dt <= h^2 / (2 max(c, d))."""
    dmax = max(p.c, p.d)
    return math.inf if dmax == 0.0 else h * h / (2.0 * dmax)


def simulate_pde(
    field0: FieldState,
    p: ModelParams,
    cfg: IntegratorConfig,
    snapshot_times: Sequence[float],
    clamp: bool = True,
) -> list[FieldState]:
    """March the reaction-diffusion system with explicit RK4 steps and
    second-order periodic central differences; returns snapshots at the
    requested times (the initial field is not included unless requested).

    The time step is clamped to the diffusion CFL bound (with a CFLWarning)
    unless clamp=False, in which case violating the bound raises CFLViolation.
    """
    if p.ell != 0.0:
        raise ValidationError("the nonlinear competition PDE (ell != 0) is not simulated")
    if cfg.method != "rk4":
        raise ValidationError("simulate_pde uses fixed-step explicit integration (method 'rk4')")
    times = sorted(float(t) for t in snapshot_times)
    if times and times[0] < 0.0:
        raise ValidationError("snapshot times must be nonnegative")

    h = field0.domain_length / field0.grid_points
    bound = cfl_bound(h, p)
    dt = cfg.dt
    if dt > bound:
        if not clamp:
            raise CFLViolation(f"dt={dt} exceeds the diffusion stability bound {bound:.6g}")
        warnings.warn(f"dt clamped from {dt} to CFL bound {bound:.6g}", CFLWarning)
        dt = bound

    f, v, w = field0.f.copy(), field0.v.copy(), field0.w.copy()

    def rhs(y):
        f_, v_, w_ = y
        df = f_ * (p.alpha * v_ - p.beta * w_) + p.c * _periodic_laplacian(f_, h)
        dv = v_ * (p.zeta * w_ - p.eta * f_)
        dw = p.gamma - p.delta * v_ * w_ - p.epsilon * w_ + p.d * _periodic_laplacian(w_, h)
        return np.array([df, dv, dw])

    snapshots = []
    t = field0.time
    y = np.array([f, v, w])
    for target in times:
        if target < t:
            raise ValidationError("snapshot times must not precede the initial time")
        span = target - t
        n_steps = max(1, math.ceil(span / dt)) if span > 0 else 0
        step = span / n_steps if n_steps else 0.0
        for _ in range(n_steps):
            k1 = rhs(y)
            k2 = rhs(y + 0.5 * step * k1)
            k3 = rhs(y + 0.5 * step * k2)
            k4 = rhs(y + step * k3)
            y = y + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = target
        snapshots.append(
            FieldState(field0.domain_length, y[0].copy(), y[1].copy(), y[2].copy(), time=t)
        )
    return snapshots


def linearized_mode_system(p: ModelParams, mu: float) -> tuple[np.ndarray, np.ndarray]:
    """The sine and cosine amplitude blocks of the linearized single-mode system,
    returned as a pair; both equal the mode matrix A(mu) (the blocks decouple)."""
    A = mode_matrix(p, mu)
    return A, A.copy()


def write_snapshots_csv(snapshots: Sequence[FieldState], path) -> None:
    """Long-form CSV (t, x, f, v, w) across all snapshots."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "x", "f", "v", "w"])
        for snap in snapshots:
            for x, f, v, w in zip(snap.x, snap.f, snap.v, snap.w):
                writer.writerow([f"{val:.17g}" for val in (snap.time, x, f, v, w)])
